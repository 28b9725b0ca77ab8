"""Finite game classes and their closure constructions.

A ``GameClass`` is a deduplicated, insertion-ordered set of games with
a provenance record per member saying how it entered.  Closures run a
breadth-first worklist with the frontier sorted by canonical id, so
class contents, insertion order, and provenance are reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from . import fixtures
from .games import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    Game,
    GameFormatError,
    SubsetSpec,
    enumerate_reductions,
    reduce_players,
    restrict,
)
from .gamefiles import game_payload, game_from_payload

#: Provenance kinds a class member can carry.
PROVENANCE_KINDS = (
    "seed",
    "dummy-reduction-of",
    "strict-reduction-of",
    "player-reduction-of",
    "reduction-of",
)


@dataclass(frozen=True)
class Provenance:
    """How a game entered its class.

    For reduction kinds, ``subsets`` holds the per-player label subsets
    applied to the parent.  For player reductions, ``keep`` holds the
    retained player indices and ``fixed`` the pinned profile labels.
    Replaying the record against the parent regenerates the member.
    """

    kind: str
    parent: str | None = None
    subsets: tuple[tuple[str, ...], ...] | None = None
    keep: tuple[int, ...] | None = None
    fixed: tuple[str, ...] | None = None

    def to_payload(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.parent is not None:
            out["parent"] = self.parent
        if self.subsets is not None:
            out["subsets"] = [list(s) for s in self.subsets]
        if self.keep is not None:
            out["keep"] = list(self.keep)
        if self.fixed is not None:
            out["fixed"] = list(self.fixed)
        return out

    @classmethod
    def from_payload(cls, data: dict) -> "Provenance":
        return cls(
            kind=data["kind"],
            parent=data.get("parent"),
            subsets=tuple(tuple(s) for s in data["subsets"])
            if "subsets" in data
            else None,
            keep=tuple(data["keep"]) if "keep" in data else None,
            fixed=tuple(data["fixed"]) if "fixed" in data else None,
        )


class GameClass:
    """A finite, deduplicated set of games with provenance."""

    def __init__(self, params: dict | None = None):
        self._games: dict[str, Game] = {}
        self.provenance: dict[str, Provenance] = {}
        self.params: dict = dict(params or {})

    def add(self, game: Game, provenance: Provenance) -> bool:
        """Insert a game; returns False when it was already present."""
        cid = game.canonical_id
        if cid in self._games:
            return False
        if provenance.kind not in PROVENANCE_KINDS:
            raise ValueError(f"unknown provenance kind: {provenance.kind!r}")
        if provenance.parent is not None and provenance.parent not in self._games:
            raise ValueError("provenance parent is not in the class")
        self._games[cid] = game
        self.provenance[cid] = provenance
        return True

    def get(self, canonical_id: str) -> Game | None:
        return self._games.get(canonical_id)

    def ids(self) -> list[str]:
        return list(self._games)

    def __iter__(self) -> Iterator[Game]:
        return iter(self._games.values())

    def __len__(self) -> int:
        return len(self._games)

    def __contains__(self, item) -> bool:
        if isinstance(item, Game):
            return item.canonical_id in self._games
        return item in self._games

    def content_id(self) -> str:
        import hashlib

        joined = ",".join(sorted(self._games))
        return hashlib.sha256(joined.encode("ascii")).hexdigest()

    def replay_provenance(self, canonical_id: str) -> Game:
        """Regenerate a member from its provenance record."""
        prov = self.provenance[canonical_id]
        member = self._games[canonical_id]
        if prov.kind == "seed":
            return member
        parent = self._games[prov.parent]
        if prov.kind == "player-reduction-of":
            fixed = parent.profile_from_labels(prov.fixed)
            if fixed is None:
                raise ValueError("provenance fixed profile is invalid")
            rebuilt = reduce_players(parent, prov.keep, fixed)
        else:
            rebuilt = restrict(parent, SubsetSpec.from_labels(parent, prov.subsets))
        if rebuilt.canonical_id != canonical_id:
            raise ValueError(
                f"provenance replay for {canonical_id[:12]} produced a "
                f"different game"
            )
        return rebuilt

    # ------------------------------------------------------------------
    # directory serialization: one game file per member plus a manifest
    # ------------------------------------------------------------------

    def write_dir(self, path: str | Path) -> Path:
        path = Path(path)
        path.mkdir(parents=True, exist_ok=True)
        entries = []
        for cid, game in self._games.items():
            fname = f"{cid[:16]}.game"
            (path / fname).write_text(
                json.dumps(game_payload(game), indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
            entries.append(
                {
                    "id": cid,
                    "file": fname,
                    "provenance": self.provenance[cid].to_payload(),
                }
            )
        manifest = {"params": self.params, "games": entries}
        (path / "manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        return path

    @classmethod
    def read_dir(cls, path: str | Path) -> "GameClass":
        path = Path(path)
        manifest_file = path / "manifest.json"
        if not manifest_file.is_file():
            raise GameFormatError(f"{path} has no manifest.json")
        manifest = json.loads(manifest_file.read_text(encoding="utf-8"))
        out = cls(params=manifest.get("params", {}))
        for entry in manifest["games"]:
            data = json.loads(
                (path / entry["file"]).read_text(encoding="utf-8")
            )
            game = game_from_payload(data)
            if game.canonical_id != entry["id"]:
                raise GameFormatError(
                    f"game file {entry['file']} does not match its manifest id"
                )
            out.add(game, Provenance.from_payload(entry["provenance"]))
        return out


def _closure(
    seeds: Iterable[Game],
    flavor_filter: str,
    kind: str,
    mode: str,
    budget: int,
) -> GameClass:
    seed_list = sorted(
        {g.canonical_id: g for g in seeds}.values(),
        key=lambda g: g.canonical_id,
    )
    if not seed_list:
        raise ValueError("closure needs at least one seed game")
    cls = GameClass(params={"mode": mode, "budget": budget})
    for g in seed_list:
        cls.add(g, Provenance("seed"))
    if len(cls) > budget:
        raise BudgetExceededError(
            f"seeds alone exceed the budget of {budget} games"
        )
    frontier = seed_list
    while frontier:
        next_frontier: list[Game] = []
        for parent in sorted(frontier, key=lambda g: g.canonical_id):
            try:
                specs = enumerate_reductions(parent, flavor_filter, budget=budget)
            except BudgetExceededError as exc:
                raise BudgetExceededError(
                    f"{exc}; frontier size {len(frontier)}"
                ) from None
            for spec in specs:
                child = restrict(parent, spec)
                added = cls.add(
                    child,
                    Provenance(
                        kind,
                        parent=parent.canonical_id,
                        subsets=spec.labels(parent),
                    ),
                )
                if added:
                    next_frontier.append(child)
                    if len(cls) > budget:
                        raise BudgetExceededError(
                            f"closure exceeded the budget of {budget} games; "
                            f"frontier size {len(next_frontier)}"
                        )
        frontier = next_frontier
    return cls


def d_closure(seeds: Iterable[Game], budget: int = DEFAULT_BUDGET) -> GameClass:
    """Least class containing the seeds and closed under reductions
    with a dummy or quasi-dummy player."""
    return _closure(seeds, "dummy-or-quasi", "dummy-reduction-of", "d", budget)


def strict_closure(seeds: Iterable[Game], budget: int = DEFAULT_BUDGET) -> GameClass:
    """Least class containing the seeds and all strict reductions of
    every member."""
    return _closure(seeds, "strict", "strict-reduction-of", "strict", budget)


def reduction_closure(seed: Game, budget: int = DEFAULT_BUDGET) -> GameClass:
    """The seed plus every one of its reductions.

    Reductions of reductions are reductions of the seed, so a single
    pass is already the fixpoint.
    """
    cls = GameClass(params={"mode": "reductions", "budget": budget})
    cls.add(seed, Provenance("seed"))
    for spec in enumerate_reductions(seed, "all", budget=budget):
        cls.add(
            seed if spec.is_full(seed) else restrict(seed, spec),
            Provenance(
                "reduction-of",
                parent=seed.canonical_id,
                subsets=spec.labels(seed),
            ),
        )
        if len(cls) > budget:
            raise BudgetExceededError(
                f"reduction closure exceeded the budget of {budget} games"
            )
    return cls


#: Names accepted by build_named_class and the CLI --class flag.
NAMED_CLASSES = ("pd_dclosed", "ex2_dclosed", "ex3_cons", "ex4", "ex5")


def _player_reduced_members(cls: GameClass, seed: Game) -> None:
    for i in range(seed.player_count):
        for s in seed.profiles():
            reduced = reduce_players(seed, (i,), s)
            cls.add(
                reduced,
                Provenance(
                    "player-reduction-of",
                    parent=seed.canonical_id,
                    keep=(i,),
                    fixed=seed.labels_of(s),
                ),
            )


def build_named_class(name: str, budget: int = DEFAULT_BUDGET) -> GameClass:
    """Construct one of the bundled benchmark classes by name."""
    if name == "pd_dclosed":
        return d_closure([fixtures.prisoners_dilemma()], budget=budget)
    if name == "ex2_dclosed":
        return d_closure([fixtures.safe_coordination()], budget=budget)
    if name == "ex3_cons":
        seed = fixtures.safe_coordination()
        cls = GameClass(params={"mode": "named", "name": name})
        cls.add(seed, Provenance("seed"))
        _player_reduced_members(cls, seed)
        return cls
    if name == "ex4":
        seed = fixtures.safe_coordination()
        cls = GameClass(params={"mode": "named", "name": name})
        cls.add(seed, Provenance("seed"))
        for spec in enumerate_reductions(seed, "all", budget=budget):
            if spec.is_full(seed):
                continue
            cls.add(
                restrict(seed, spec),
                Provenance(
                    "reduction-of",
                    parent=seed.canonical_id,
                    subsets=spec.labels(seed),
                ),
            )
        _player_reduced_members(cls, seed)
        return cls
    if name == "ex5":
        return reduction_closure(fixtures.duplicate_row_game(), budget=budget)
    raise ValueError(
        f"unknown class name {name!r}; known names: {', '.join(NAMED_CLASSES)}"
    )
