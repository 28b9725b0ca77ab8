"""Brute-force reference implementations.

These are deliberately naive: plain loops over profiles and unilateral
deviations, sharing no logic with the optimized engine paths they
cross-check.  They exist so that every reported equilibrium set can be
confirmed by an independent route.
"""

from __future__ import annotations

from .games import Game, Profile


def nash_bruteforce(game: Game) -> frozenset[Profile]:
    """All Nash equilibria, by checking every unilateral deviation."""
    found = []
    for profile in game.profiles():
        stable = True
        for player in range(game.player_count):
            for alt in range(game.shape[player]):
                if alt == profile.indices[player]:
                    continue
                deviated = profile.replace(player, alt)
                if game.rank(player, deviated) < game.rank(player, profile):
                    stable = False
                    break
            if not stable:
                break
        if stable:
            found.append(profile)
    return frozenset(found)
