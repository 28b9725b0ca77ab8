"""Finite normal-form games with ordinal preferences.

A game stores one integer rank table per player over the full profile
space.  Lower rank means strictly preferred, equal rank means
indifferent, so every table is a complete and transitive preference
relation by construction.  Rank tables are kept dense (the values used
are exactly 0..k), which turns preference-order equality into plain
tuple equality and gives every game a canonical content hash.

All operations here are pure functions over immutable games: they can
be called concurrently from any number of threads and always return
fresh objects.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GameFormatError(ValueError):
    """Malformed game data: bad shapes, duplicate labels, bad tables."""


class BudgetExceededError(RuntimeError):
    """An enumeration or closure would exceed its configured game budget."""


#: Default cap used by closures and subset enumeration.
DEFAULT_BUDGET = 100_000


@dataclass(frozen=True, order=True)
class Profile:
    """One strategy index per player, player 1 first.

    Profiles sort lexicographically, which coincides with their
    mixed-radix linear index (player 1 most significant).
    """

    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))

    def linear_index(self, shape: Sequence[int]) -> int:
        k = 0
        for i, size in zip(self.indices, shape, strict=True):
            k = k * size + i
        return k

    @classmethod
    def from_linear(cls, shape: Sequence[int], linear: int) -> "Profile":
        out = [0] * len(shape)
        for pos in reversed(range(len(shape))):
            out[pos] = linear % shape[pos]
            linear //= shape[pos]
        return cls(tuple(out))

    def replace(self, player: int, value: int) -> "Profile":
        idx = list(self.indices)
        idx[player] = value
        return Profile(tuple(idx))

    def drop(self, player: int) -> tuple[int, ...]:
        return self.indices[:player] + self.indices[player + 1 :]

    def __repr__(self):
        return f"Profile{self.indices}"


def _normalize_ranks(values: Sequence[int]) -> tuple[int, ...]:
    """Remap rank values so the used set is exactly 0..k, order kept."""
    order = {v: r for r, v in enumerate(sorted(set(values)))}
    return tuple(order[v] for v in values)


def _ranks_from_payoffs(values: Sequence[float]) -> tuple[int, ...]:
    """Dense ranks from payoffs: higher payoff maps to lower rank."""
    order = {v: r for r, v in enumerate(sorted(set(values), reverse=True))}
    return tuple(order[v] for v in values)


@dataclass(frozen=True)
class Game:
    """An n-player normal-form game with dense ordinal rank tables.

    Fields:
        player_count: number of players, at least 1.
        strategies: per player, an ordered tuple of distinct labels.
        ranks: per player, a flat rank table in linear-index order
            (player 1 most significant).  Lower rank is preferred.

    Equality is structural equality of the canonical form, so two
    games compare equal exactly when their canonical ids coincide.
    """

    player_count: int
    strategies: tuple[tuple[str, ...], ...]
    ranks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "strategies", tuple(tuple(s) for s in self.strategies)
        )
        object.__setattr__(self, "ranks", tuple(tuple(r) for r in self.ranks))
        if self.player_count < 1:
            raise GameFormatError("a game needs at least one player")
        if len(self.strategies) != self.player_count:
            raise GameFormatError(
                f"expected {self.player_count} strategy lists, "
                f"got {len(self.strategies)}"
            )
        for i, labels in enumerate(self.strategies):
            if not labels:
                raise GameFormatError(f"player {i + 1} has an empty strategy list")
            if len(set(labels)) != len(labels):
                raise GameFormatError(f"player {i + 1} has duplicate strategy labels")
            if not all(isinstance(lab, str) for lab in labels):
                raise GameFormatError(f"player {i + 1} has non-string labels")
        if len(self.ranks) != self.player_count:
            raise GameFormatError(
                f"expected {self.player_count} rank tables, got {len(self.ranks)}"
            )
        total = self.num_profiles
        for i, table in enumerate(self.ranks):
            if len(table) != total:
                raise GameFormatError(
                    f"rank table for player {i + 1} covers {len(table)} profiles, "
                    f"expected {total}"
                )
            if not all(isinstance(r, int) and r >= 0 for r in table):
                raise GameFormatError(
                    f"rank table for player {i + 1} must hold non-negative integers"
                )
            used = set(table)
            if used != set(range(len(used))):
                raise GameFormatError(
                    f"rank table for player {i + 1} is not dense-normalized"
                )

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.strategies)

    @property
    def num_profiles(self) -> int:
        return math.prod(self.shape)

    @cached_property
    def canonical_id(self) -> str:
        payload = json.dumps(
            {
                "players": self.player_count,
                "strategies": [list(s) for s in self.strategies],
                "ranks": [list(r) for r in self.ranks],
            },
            separators=(",", ":"),
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def profiles(self) -> Iterator[Profile]:
        """All profiles in linear-index order."""
        for combo in itertools.product(*(range(k) for k in self.shape)):
            yield Profile(combo)

    def linear_index(self, profile: Profile) -> int:
        return profile.linear_index(self.shape)

    def profile_at(self, linear: int) -> Profile:
        return Profile.from_linear(self.shape, linear)

    def rank(self, player: int, profile: Profile) -> int:
        return self.ranks[player][profile.linear_index(self.shape)]

    def prefers(self, player: int, a: Profile, b: Profile) -> bool:
        """Strict preference of player for profile a over profile b."""
        return self.rank(player, a) < self.rank(player, b)

    def indifferent(self, player: int, a: Profile, b: Profile) -> bool:
        return self.rank(player, a) == self.rank(player, b)

    def labels_of(self, profile: Profile) -> tuple[str, ...]:
        return tuple(
            self.strategies[i][k] for i, k in enumerate(profile.indices)
        )

    def profile_from_labels(self, labels: Sequence[str]) -> Profile | None:
        """The profile carrying these labels, or None if any is absent."""
        if len(labels) != self.player_count:
            return None
        idx = []
        for i, lab in enumerate(labels):
            try:
                idx.append(self.strategies[i].index(lab))
            except ValueError:
                return None
        return Profile(tuple(idx))

    def label_index(self, player: int, label: str) -> int:
        try:
            return self.strategies[player].index(label)
        except ValueError:
            raise KeyError(
                f"player {player + 1} has no strategy labeled {label!r}"
            ) from None

    def __repr__(self):
        dims = "x".join(str(k) for k in self.shape)
        return f"Game({self.player_count}p, {dims}, {self.canonical_id[:8]})"


def build_game(
    player_count: int,
    strategies: Sequence[Sequence[str]],
    payoffs: Sequence | None = None,
    ranks: Sequence | None = None,
) -> Game:
    """Build a game from payoff tables or explicit rank tables.

    Exactly one of ``payoffs`` / ``ranks`` must be given, one table per
    player.  Tables may be flat lists in linear-index order (player 1
    most significant) or nested lists matching the strategy shape.
    Payoffs are converted to dense ordinal ranks per player (higher
    payoff, lower rank) and the numeric values are discarded.  Rank
    input may use any non-negative integers; it is dense-normalized.
    """
    if (payoffs is None) == (ranks is None):
        raise GameFormatError("give exactly one of payoffs or ranks")
    strategies = tuple(tuple(s) for s in strategies)
    if len(strategies) != player_count:
        raise GameFormatError(
            f"expected {player_count} strategy lists, got {len(strategies)}"
        )
    shape = tuple(len(s) for s in strategies)
    tables = payoffs if payoffs is not None else ranks
    if len(tables) != player_count:
        raise GameFormatError(
            f"expected {player_count} tables, got {len(tables)}"
        )
    flat_tables = [_flatten_table(t, shape) for t in tables]
    if payoffs is not None:
        rank_tables = tuple(_ranks_from_payoffs(t) for t in flat_tables)
    else:
        for t in flat_tables:
            if not all(isinstance(v, int) and v >= 0 for v in t):
                raise GameFormatError("ranks must be non-negative integers")
        rank_tables = tuple(_normalize_ranks(t) for t in flat_tables)
    return Game(player_count, strategies, rank_tables)


def _flatten_table(table, shape: tuple[int, ...]) -> list:
    total = math.prod(shape)
    try:
        items = list(table)
    except TypeError:
        raise GameFormatError("table is not a sequence") from None
    if items and not isinstance(items[0], (list, tuple)):
        if len(items) != total:
            raise GameFormatError(
                f"flat table has {len(items)} entries, expected {total}"
            )
        return items
    # nested: outermost axis is player 1
    if len(items) != shape[0]:
        raise GameFormatError(
            f"nested table has {len(items)} rows, expected {shape[0]}"
        )
    if len(shape) == 1:
        raise GameFormatError("one-player tables must be flat")
    out = []
    for sub in items:
        out.extend(_flatten_table(sub, shape[1:]))
    return out


class Flavor(str, Enum):
    """Classification of a reduction by its subset-size pattern."""

    PLAIN = "plain"
    DUMMY = "dummy"
    QUASI_DUMMY = "quasi_dummy"
    DUMMY_AND_QUASI = "dummy_and_quasi"


DUMMYISH = frozenset({Flavor.DUMMY, Flavor.QUASI_DUMMY, Flavor.DUMMY_AND_QUASI})


@dataclass(frozen=True)
class SubsetSpec:
    """Per-player non-empty subsets of strategy indices, sorted ascending."""

    indices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "indices", tuple(tuple(int(k) for k in s) for s in self.indices)
        )

    @classmethod
    def coerce(cls, game: Game, subsets) -> "SubsetSpec":
        if isinstance(subsets, SubsetSpec):
            spec = subsets
        else:
            spec = cls(tuple(tuple(sorted(set(s))) for s in subsets))
        spec.validate_for(game)
        return spec

    @classmethod
    def from_labels(cls, game: Game, label_subsets) -> "SubsetSpec":
        idx = tuple(
            tuple(sorted(game.label_index(i, lab) for lab in set(subset)))
            for i, subset in enumerate(label_subsets)
        )
        return cls.coerce(game, idx)

    @classmethod
    def full(cls, game: Game) -> "SubsetSpec":
        return cls(tuple(tuple(range(k)) for k in game.shape))

    @classmethod
    def singleton(cls, game: Game, profile: Profile) -> "SubsetSpec":
        return cls.coerce(game, tuple((k,) for k in profile.indices))

    def validate_for(self, game: Game) -> None:
        if len(self.indices) != game.player_count:
            raise GameFormatError(
                f"subset spec covers {len(self.indices)} players, "
                f"game has {game.player_count}"
            )
        for i, subset in enumerate(self.indices):
            if not subset:
                raise GameFormatError(f"empty strategy subset for player {i + 1}")
            if list(subset) != sorted(set(subset)):
                raise GameFormatError(
                    f"subset for player {i + 1} must be sorted and duplicate-free"
                )
            if subset[0] < 0 or subset[-1] >= game.shape[i]:
                raise GameFormatError(
                    f"subset for player {i + 1} is out of range"
                )

    def labels(self, game: Game) -> tuple[tuple[str, ...], ...]:
        return tuple(
            tuple(game.strategies[i][k] for k in subset)
            for i, subset in enumerate(self.indices)
        )

    def union(self, other: "SubsetSpec") -> "SubsetSpec":
        if len(self.indices) != len(other.indices):
            raise GameFormatError("subset specs cover different player counts")
        return SubsetSpec(
            tuple(
                tuple(sorted(set(a) | set(b)))
                for a, b in zip(self.indices, other.indices)
            )
        )

    def is_full(self, game: Game) -> bool:
        return all(len(s) == k for s, k in zip(self.indices, game.shape))

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.indices)


def restrict(parent: Game, subsets) -> Game:
    """The reduction of ``parent`` to the given strategy subsets.

    Strategy lists keep their original order; rank tables are the
    parent's tables on the surviving profiles, dense-normalized per
    player.  Restricting to the full subsets returns a game equal to
    the parent.
    """
    spec = SubsetSpec.coerce(parent, subsets)
    strategies = spec.labels(parent)
    sub_shape = spec.sizes()
    parent_linears = []
    for combo in itertools.product(*(range(k) for k in sub_shape)):
        mapped = Profile(
            tuple(spec.indices[i][q] for i, q in enumerate(combo))
        )
        parent_linears.append(mapped.linear_index(parent.shape))
    rank_tables = tuple(
        _normalize_ranks([parent.ranks[i][k] for k in parent_linears])
        for i in range(parent.player_count)
    )
    return Game(parent.player_count, strategies, rank_tables)


def _embedding_spec(candidate: Game, parent: Game) -> SubsetSpec | None:
    """Label-wise order-preserving embedding of candidate into parent."""
    if candidate.player_count != parent.player_count:
        return None
    idx = []
    for i in range(parent.player_count):
        pos = {lab: k for k, lab in enumerate(parent.strategies[i])}
        try:
            ids = tuple(pos[lab] for lab in candidate.strategies[i])
        except KeyError:
            return None
        if any(b <= a for a, b in zip(ids, ids[1:])):
            return None
        idx.append(ids)
    return SubsetSpec(tuple(idx))


def is_reduction(candidate: Game, parent: Game) -> bool:
    """True when candidate is the parent restricted to a label subset.

    Requires identical player counts, label-wise order-preserving
    strategy subsets, and agreement of the preference order on every
    surviving profile pair.  Because both games carry dense rank
    tables, order agreement is exactly equality with the normalized
    restriction.
    """
    spec = _embedding_spec(candidate, parent)
    return spec is not None and restrict(parent, spec) == candidate


def reduction_flavor(parent: Game, subsets) -> Flavor:
    """Classify a reduction spec as plain, dummy, quasi-dummy, or both.

    Dummy: some player is cut to one strategy while every other player
    keeps either their full set or a single strategy.  Quasi-dummy:
    some player is cut to exactly two while every other player keeps
    their full set or at most two strategies.  Both can hold at once.
    """
    spec = SubsetSpec.coerce(parent, subsets)
    sizes = spec.sizes()
    full = [len(s) == k for s, k in zip(spec.indices, parent.shape)]
    n = parent.player_count
    dummy = any(
        sizes[j] == 1
        and all(full[i] or sizes[i] == 1 for i in range(n) if i != j)
        for j in range(n)
    )
    quasi = any(
        sizes[j] == 2
        and all(full[i] or sizes[i] <= 2 for i in range(n) if i != j)
        for j in range(n)
    )
    if dummy and quasi:
        return Flavor.DUMMY_AND_QUASI
    if dummy:
        return Flavor.DUMMY
    if quasi:
        return Flavor.QUASI_DUMMY
    return Flavor.PLAIN


def strictly_dominates(game: Game, player: int, a: int, b: int) -> bool:
    """True when strategy a beats strategy b at every opponent column.

    The quantifier ranges over the game's full opponent profile space.
    With one player there are no opponents and the test is a plain
    pairwise comparison.  Never true for a strategy against itself.
    """
    size = game.shape[player]
    if not (0 <= a < size and 0 <= b < size):
        raise GameFormatError("strategy index out of range")
    if a == b:
        return False
    others = [
        range(k) for i, k in enumerate(game.shape) if i != player
    ]
    for col in itertools.product(*others):
        pa = Profile(col[:player] + (a,) + col[player:])
        pb = Profile(col[:player] + (b,) + col[player:])
        if game.rank(player, pa) >= game.rank(player, pb):
            return False
    return True


def _removals_strictly_dominated(parent: Game, spec: SubsetSpec) -> bool:
    """Every removed strategy has a retained strict dominator; at
    least one strategy is removed.  Dominance is evaluated in the
    parent, over the parent's full opponent sets."""
    proper = False
    for i, keep in enumerate(spec.indices):
        kept = set(keep)
        for k in range(parent.shape[i]):
            if k in kept:
                continue
            proper = True
            if not any(strictly_dominates(parent, i, r, k) for r in keep):
                return False
    return proper


def is_strict_reduction(candidate: Game, parent: Game) -> bool:
    """True when candidate removes only strictly dominated strategies.

    The candidate must be a reduction of the parent with at least one
    strategy removed, and every removed strategy must be strictly
    dominated (against the parent's full opponent sets) by some
    strategy that was retained.
    """
    spec = _embedding_spec(candidate, parent)
    if spec is None or restrict(parent, spec) != candidate:
        return False
    return _removals_strictly_dominated(parent, spec)


def merge(parent: Game, a, b) -> Game:
    """Restrict the parent to the player-wise union of two subsets.

    This is the smallest profile space containing both reductions'
    profiles; profiles outside either input can appear, which is why
    the operation needs the parent.  Commutative and idempotent, and
    merging anything with the full spec returns the parent.
    """
    sa = SubsetSpec.coerce(parent, a)
    sb = SubsetSpec.coerce(parent, b)
    return restrict(parent, sa.union(sb))


def reduce_players(game: Game, keep: Iterable[int], fixed: Profile) -> Game:
    """Project onto a proper subset of players, pinning the rest.

    Kept players (reindexed in original order) retain their full
    strategy sets; departed players are committed to their components
    of ``fixed``.  Rank tables are the original ranks on the pinned
    slice, dense-normalized.
    """
    keep = tuple(sorted(set(int(i) for i in keep)))
    n = game.player_count
    if not keep:
        raise GameFormatError("keep must name at least one player")
    if len(keep) >= n:
        raise GameFormatError("keep must be a proper subset of the players")
    if keep[0] < 0 or keep[-1] >= n:
        raise GameFormatError("keep contains an invalid player index")
    if len(fixed.indices) != n or any(
        not (0 <= k < game.shape[i]) for i, k in enumerate(fixed.indices)
    ):
        raise GameFormatError("fixed profile does not fit the game")
    strategies = tuple(game.strategies[i] for i in keep)
    sub_shape = tuple(game.shape[i] for i in keep)
    linears = []
    for combo in itertools.product(*(range(k) for k in sub_shape)):
        full = list(fixed.indices)
        for pos, i in enumerate(keep):
            full[i] = combo[pos]
        linears.append(Profile(tuple(full)).linear_index(game.shape))
    rank_tables = tuple(
        _normalize_ranks([game.ranks[i][k] for k in linears]) for i in keep
    )
    return Game(len(keep), strategies, rank_tables)


def enumerate_reductions(
    game: Game,
    flavor_filter: str = "all",
    budget: int | None = None,
) -> Iterator[SubsetSpec]:
    """Stream every subset spec of the game in a fixed order.

    The order is player-wise subset bitmask ascending with player 1
    most significant (bit k of a mask selects strategy index k), so
    witnesses and golden tests are reproducible.  ``flavor_filter``
    is one of ``all``, ``dummy-or-quasi`` (reductions with a dummy or
    quasi-dummy player) and ``strict`` (specs whose restriction is a
    strict reduction).  A budget caps the unfiltered stream length and
    raises ``BudgetExceededError`` when the game is too large.
    """
    if flavor_filter not in ("all", "dummy-or-quasi", "strict"):
        raise ValueError(f"unknown flavor filter: {flavor_filter!r}")
    total = math.prod((1 << k) - 1 for k in game.shape)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            f"{total} subset specs exceed the budget of {budget}"
        )

    def _mask_subsets(size: int) -> list[tuple[int, ...]]:
        return [
            tuple(k for k in range(size) if mask >> k & 1)
            for mask in range(1, 1 << size)
        ]

    def gen() -> Iterator[SubsetSpec]:
        per_player = [_mask_subsets(k) for k in game.shape]
        for combo in itertools.product(*per_player):
            spec = SubsetSpec(tuple(combo))
            if flavor_filter == "dummy-or-quasi":
                if reduction_flavor(game, spec) not in DUMMYISH:
                    continue
            elif flavor_filter == "strict":
                if not _removals_strictly_dominated(game, spec):
                    continue
            yield spec

    return gen()
