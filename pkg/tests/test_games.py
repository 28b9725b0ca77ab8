import random

import pytest
from hypothesis import given, strategies as st

from nashaxioms import (
    BudgetExceededError,
    Flavor,
    GameFormatError,
    Profile,
    SubsetSpec,
    build_game,
    enumerate_reductions,
    is_reduction,
    is_strict_reduction,
    merge,
    reduce_players,
    reduction_flavor,
    restrict,
    strictly_dominates,
)
from nashaxioms.concepts import nash
from nashaxioms.oracles import nash_bruteforce

from conftest import random_game, random_subsets
from naive_checks import naive_is_reduction, naive_is_strict_reduction


# ----------------------------------------------------------------------
# construction and canonical form
# ----------------------------------------------------------------------


def test_build_from_payoffs_matches_expected_ranks(ex2):
    # payoff 2 -> rank 0, payoff 1 -> rank 1, payoff 0 -> rank 2
    assert ex2.ranks[0] == (0, 2, 1, 1)
    assert ex2.ranks[1] == (0, 2, 1, 1)


def test_build_singleton_game():
    g = build_game(1, [["a"]], payoffs=[[0]])
    assert g.num_profiles == 1
    assert g.ranks == ((0,),)


def test_build_duplicate_row_game_ranks(ex5):
    assert ex5.ranks[0] == (0, 2, 2, 1, 0, 2)
    assert ex5.ranks[1] == (1, 2, 2, 0, 1, 2)


def test_build_accepts_nested_tables(ex2):
    nested = build_game(
        2, [["U", "D"], ["L", "R"]], payoffs=[[[2, 0], [1, 1]], [[2, 0], [1, 1]]]
    )
    assert nested == ex2


def test_scaling_payoffs_does_not_change_canonical_id(ex2):
    scaled = build_game(
        2,
        [["U", "D"], ["L", "R"]],
        payoffs=[[20, 0, 10, 10], [7.5, 0.25, 3, 3]],
    )
    assert scaled.canonical_id == ex2.canonical_id
    assert scaled == ex2


def test_build_errors():
    with pytest.raises(GameFormatError):
        build_game(2, [["a", "a"], ["x"]], payoffs=[[1, 1], [1, 1]])
    with pytest.raises(GameFormatError):
        build_game(2, [["a"], []], payoffs=[[1], [1]])
    with pytest.raises(GameFormatError):
        build_game(1, [["a", "b"]], payoffs=[[1, 2, 3]])
    with pytest.raises(GameFormatError):
        build_game(1, [["a", "b"]], payoffs=[[1, 2]], ranks=[[0, 1]])
    with pytest.raises(GameFormatError):
        build_game(1, [["a", "b"]], ranks=[[0, -1]])


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=1))
def test_profile_roundtrip_2x3x2(i, j):
    shape = (4, 2)
    p = Profile((i, j))
    assert Profile.from_linear(shape, p.linear_index(shape)) == p


@given(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=4))
def test_profile_roundtrip_all_linears(shape):
    shape = tuple(shape)
    total = 1
    for k in shape:
        total *= k
    for lin in range(total):
        assert Profile.from_linear(shape, lin).linear_index(shape) == lin


def test_linear_index_contract():
    # profile (i1, i2, i3) sits at ((i1*|S2| + i2)*|S3| + i3)
    shape = (2, 3, 2)
    assert Profile((1, 2, 1)).linear_index(shape) == (1 * 3 + 2) * 2 + 1


# ----------------------------------------------------------------------
# restriction
# ----------------------------------------------------------------------


def test_restrict_column_prefers_safe_row(ex2):
    sub = restrict(ex2, SubsetSpec.from_labels(ex2, [["U", "D"], ["R"]]))
    assert sub.strategies == (("U", "D"), ("R",))
    d_r = sub.profile_from_labels(("D", "R"))
    u_r = sub.profile_from_labels(("U", "R"))
    assert sub.prefers(0, d_r, u_r)


def test_restrict_full_is_identity(ex2):
    assert restrict(ex2, SubsetSpec.full(ex2)) == ex2


def test_restrict_top_rows_nash(ex5):
    sub = restrict(ex5, SubsetSpec.from_labels(ex5, [["U", "C"], ["L", "R"]]))
    got = {sub.labels_of(p) for p in nash_bruteforce(sub)}
    assert got == {("U", "L"), ("C", "R")}
    assert nash(sub) == nash_bruteforce(sub)


def test_restrict_empty_subset_rejected(ex2):
    with pytest.raises(GameFormatError):
        restrict(ex2, ((0,), ()))


# ----------------------------------------------------------------------
# reduction recognition
# ----------------------------------------------------------------------


def test_restrict_output_is_reduction(ex2):
    sub = restrict(ex2, SubsetSpec.from_labels(ex2, [["D"], ["L", "R"]]))
    assert is_reduction(sub, ex2)


def test_every_game_reduces_to_itself(ex2):
    assert is_reduction(ex2, ex2)


def test_inverted_ranks_are_not_a_reduction(ex2):
    flipped = build_game(
        2, [["U", "D"], ["L", "R"]], payoffs=[[0, 2, 1, 1], [2, 0, 1, 1]]
    )
    assert not is_reduction(flipped, ex2)


def test_label_renaming_is_not_tolerated(ex2):
    renamed = build_game(
        2, [["u", "d"], ["L", "R"]], payoffs=[[2, 0, 1, 1], [2, 0, 1, 1]]
    )
    assert not is_reduction(renamed, ex2)


def test_reduction_agrees_with_naive_on_random_pairs():
    rng = random.Random(20240817)
    for _ in range(300):
        g = random_game(rng)
        sub = restrict(g, random_subsets(rng, g))
        assert is_reduction(sub, g)
        assert naive_is_reduction(sub, g)
        other = random_game(rng)
        assert is_reduction(other, g) == naive_is_reduction(other, g)


def test_restriction_transitivity():
    rng = random.Random(99)
    for _ in range(200):
        g = random_game(rng)
        mid = restrict(g, random_subsets(rng, g))
        sub = restrict(mid, random_subsets(rng, mid))
        assert is_reduction(sub, g)


def test_rank_order_preservation_on_many_random_pairs():
    rng = random.Random(7)
    for _ in range(1000):
        g = random_game(rng)
        spec = SubsetSpec.coerce(g, random_subsets(rng, g))
        sub = restrict(g, spec)
        mapping = spec.indices
        for s in sub.profiles():
            for t in sub.profiles():
                ps = Profile(tuple(mapping[i][k] for i, k in enumerate(s.indices)))
                pt = Profile(tuple(mapping[i][k] for i, k in enumerate(t.indices)))
                for i in range(g.player_count):
                    assert (sub.rank(i, s) <= sub.rank(i, t)) == (
                        g.rank(i, ps) <= g.rank(i, pt)
                    )


# ----------------------------------------------------------------------
# flavors
# ----------------------------------------------------------------------


def test_flavor_singleton_column_of_2x2_is_both(ex2):
    # dummy via the singleton column, quasi via the retained pair
    assert reduction_flavor(ex2, ((0, 1), (1,))) == Flavor.DUMMY_AND_QUASI


def test_flavor_singleton_column_of_3x2_is_dummy_only(ex5):
    assert reduction_flavor(ex5, ((0, 1, 2), (0,))) == Flavor.DUMMY


def test_flavor_full_two_by_two_is_quasi(ex2):
    assert reduction_flavor(ex2, ((0, 1), (0, 1))) == Flavor.QUASI_DUMMY


def test_flavor_single_profile_of_wide_game_is_dummy(ex5):
    assert reduction_flavor(ex5, ((0,), (0,))) == Flavor.DUMMY


def test_flavor_both_at_once(ex5):
    # one player cut to a pair, the other to a singleton of a 2-set
    assert reduction_flavor(ex5, ((0, 1), (0,))) == Flavor.QUASI_DUMMY
    cube_spec = ((0,), (0, 1), (0, 1))
    from nashaxioms.fixtures import three_player_cube

    assert reduction_flavor(three_player_cube(), cube_spec) == Flavor.DUMMY_AND_QUASI


def test_flavor_full_3x2_is_quasi(ex5):
    # the width-2 player makes even the full spec quasi-dummy
    assert reduction_flavor(ex5, ((0, 1, 2), (0, 1))) == Flavor.QUASI_DUMMY


def test_flavor_plain_exists():
    wide = build_game(
        2,
        [["a", "b", "c"], ["x", "y", "z"]],
        ranks=[[0] * 9, [0] * 9],
    )
    assert reduction_flavor(wide, ((0, 1, 2), (0, 1, 2))) == Flavor.PLAIN
    assert reduction_flavor(wide, ((0, 1, 2), (0, 2))) == Flavor.QUASI_DUMMY


# ----------------------------------------------------------------------
# dominance and strict reductions
# ----------------------------------------------------------------------


def test_defection_strictly_dominates(pd):
    assert strictly_dominates(pd, 0, 1, 0)
    assert strictly_dominates(pd, 1, 1, 0)


def test_no_dominance_between_rows(ex2):
    assert not strictly_dominates(ex2, 0, 0, 1)
    assert not strictly_dominates(ex2, 0, 1, 0)


def test_dominance_is_irreflexive(pd):
    assert not strictly_dominates(pd, 0, 1, 1)


def test_one_player_dominance_is_pairwise(chain):
    assert strictly_dominates(chain, 0, 0, 1)
    assert not strictly_dominates(chain, 0, 1, 2)  # tie
    assert strictly_dominates(chain, 0, 2, 3)


def test_strict_reduction_gadget(pd):
    pair = restrict(pd, SubsetSpec.from_labels(pd, [["C", "D"], ["C"]]))
    single = restrict(pd, SubsetSpec.from_labels(pd, [["D"], ["C"]]))
    assert is_strict_reduction(single, pair)


def test_no_removal_is_not_strict(ex2):
    assert not is_strict_reduction(ex2, ex2)


def test_weakly_dominated_removal_is_not_strict(ex2):
    top = restrict(ex2, SubsetSpec.from_labels(ex2, [["U"], ["L", "R"]]))
    assert not is_strict_reduction(top, ex2)


def test_strict_reduction_agrees_with_naive():
    rng = random.Random(4242)
    for _ in range(300):
        g = random_game(rng)
        sub = restrict(g, random_subsets(rng, g))
        assert is_strict_reduction(sub, g) == naive_is_strict_reduction(sub, g)


def test_strict_reduction_certificates_reverify():
    # every removed strategy must lose every opponent column to some
    # retained one; re-verified here with a direct loop
    rng = random.Random(11)
    found = 0
    for _ in range(500):
        g = random_game(rng)
        spec = SubsetSpec.coerce(g, random_subsets(rng, g))
        sub = restrict(g, spec)
        if not is_strict_reduction(sub, g):
            continue
        found += 1
        for i in range(g.player_count):
            kept = set(spec.indices[i])
            for k in range(g.shape[i]):
                if k in kept:
                    continue
                assert any(
                    all(
                        g.rank(i, p.replace(i, r)) < g.rank(i, p)
                        for p in g.profiles()
                        if p.indices[i] == k
                    )
                    for r in kept
                )
    assert found > 0


# ----------------------------------------------------------------------
# merge
# ----------------------------------------------------------------------


def test_merge_recovers_parent(ex2):
    a = SubsetSpec.from_labels(ex2, [["U", "D"], ["R"]])
    b = SubsetSpec.from_labels(ex2, [["D"], ["L", "R"]])
    assert merge(ex2, a, b) == ex2


def test_merge_idempotent(ex5):
    a = SubsetSpec.from_labels(ex5, [["U", "C"], ["R"]])
    assert merge(ex5, a, a) == restrict(ex5, a)


def test_merge_needs_parent_profiles(ex5):
    merged = merge(
        ex5,
        SubsetSpec.from_labels(ex5, [["U"], ["L"]]),
        SubsetSpec.from_labels(ex5, [["C"], ["R"]]),
    )
    assert merged.num_profiles == 4
    assert merged == restrict(ex5, SubsetSpec.from_labels(ex5, [["U", "C"], ["L", "R"]]))


def test_merge_random_covers_recover_parent():
    rng = random.Random(5150)
    for _ in range(300):
        g = random_game(rng)
        a = list(random_subsets(rng, g))
        b = []
        for i, size in enumerate(g.shape):
            missing = sorted(set(range(size)) - set(a[i]))
            extra = rng.sample(range(size), rng.randint(0, size))
            b.append(tuple(sorted(set(missing) | set(extra))) or (0,))
        assert merge(g, tuple(a), tuple(b)) == g


# ----------------------------------------------------------------------
# player reduction
# ----------------------------------------------------------------------


def test_reduce_players_column(ex2):
    fixed = ex2.profile_from_labels(("D", "R"))
    reduced = reduce_players(ex2, (0,), fixed)
    assert reduced.strategies == (("U", "D"),)
    assert {reduced.labels_of(p) for p in nash(reduced)} == {("D",)}


def test_reduce_players_row(ex2):
    fixed = ex2.profile_from_labels(("U", "L"))
    reduced = reduce_players(ex2, (1,), fixed)
    assert reduced.strategies == (("L", "R"),)
    l = reduced.profile_from_labels(("L",))
    r = reduced.profile_from_labels(("R",))
    assert reduced.prefers(0, l, r)


def test_reduce_players_indifferent_row(ex2):
    fixed = ex2.profile_from_labels(("D", "L"))
    reduced = reduce_players(ex2, (1,), fixed)
    assert reduced.ranks == ((0, 0),)


def test_reduce_players_guards(ex2):
    fixed = ex2.profile_from_labels(("U", "L"))
    with pytest.raises(GameFormatError):
        reduce_players(ex2, (), fixed)
    with pytest.raises(GameFormatError):
        reduce_players(ex2, (0, 1), fixed)
    with pytest.raises(GameFormatError):
        reduce_players(ex2, (0,), Profile((0, 5)))


def test_reduce_players_never_callable_on_one_player(chain):
    # any non-empty keep is already the full player set
    with pytest.raises(GameFormatError):
        reduce_players(chain, (0,), Profile((0,)))


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------


def test_enumeration_counts(ex2, chain):
    assert len(list(enumerate_reductions(ex2, "all"))) == 9
    three = build_game(1, [["a", "b", "c"]], payoffs=[[3, 2, 1]])
    assert len(list(enumerate_reductions(three, "all"))) == 7
    assert len(list(enumerate_reductions(ex2, "dummy-or-quasi"))) == 9


def test_enumeration_order_is_bitmask_ascending(ex2):
    specs = list(enumerate_reductions(ex2, "all"))
    assert specs[0].indices == ((0,), (0,))
    assert specs[1].indices == ((0,), (1,))
    assert specs[2].indices == ((0,), (0, 1))
    assert specs[-1].indices == ((0, 1), (0, 1))


def test_enumeration_budget(ex2):
    with pytest.raises(BudgetExceededError):
        enumerate_reductions(ex2, "all", budget=8)
    assert len(list(enumerate_reductions(ex2, "all", budget=9))) == 9


def test_enumeration_streams_restart(ex2):
    first = [s.indices for s in enumerate_reductions(ex2, "all")]
    second = [s.indices for s in enumerate_reductions(ex2, "all")]
    assert first == second


def test_strict_filter_matches_predicate():
    rng = random.Random(31337)
    for _ in range(60):
        g = random_game(rng)
        strict_specs = {s.indices for s in enumerate_reductions(g, "strict")}
        for spec in enumerate_reductions(g, "all"):
            expected = is_strict_reduction(restrict(g, spec), g)
            assert (spec.indices in strict_specs) == expected
