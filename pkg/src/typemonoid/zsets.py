"""Eventually periodic subsets of the integers.

A set is stored as a periodic part (residue classes mod a modulus)
corrected by two finite patches: `patch_add` lists members outside the
periodic part, `patch_remove` lists non-members inside it.  The factory
normalizes every set to a unique form: the modulus is the minimal
period of the eventual behaviour and the patches are exactly the
deviations from it, so dataclass equality is set equality.

The class of such sets is a boolean algebra closed under translation,
which is all the certificate machinery needs: symmetry moves on the
integer line are translations.
"""

from dataclasses import dataclass
from math import lcm
from typing import FrozenSet, Iterable, List

__all__ = [
    "EventuallyPeriodicZSet",
    "ep_set",
    "ep_empty",
    "ep_all",
    "ep_evens",
    "ep_odds",
    "ep_finite",
    "ep_residue",
    "ep_union",
    "ep_intersect",
    "ep_complement",
    "ep_difference",
    "ep_translate",
]


@dataclass(frozen=True)
class EventuallyPeriodicZSet:
    modulus: int
    residues: FrozenSet[int]
    patch_add: FrozenSet[int]
    patch_remove: FrozenSet[int]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if any(not (0 <= r < self.modulus) for r in self.residues):
            raise ValueError("residues out of range")
        # normal form: patches disjoint from / contained in the periodic part
        for n in self.patch_add:
            if n % self.modulus in self.residues:
                raise ValueError("patch_add point already periodic")
        for n in self.patch_remove:
            if n % self.modulus not in self.residues:
                raise ValueError("patch_remove point not periodic")
        if self.patch_add & self.patch_remove:
            raise ValueError("patches overlap")

    def __contains__(self, n: int) -> bool:
        if n in self.patch_add:
            return True
        if n in self.patch_remove:
            return False
        return n % self.modulus in self.residues

    def is_empty(self) -> bool:
        return not self.residues and not self.patch_add

    def window(self, lo: int, hi: int) -> List[int]:
        """Members in the half-open interval [lo, hi)."""
        return [n for n in range(lo, hi) if n in self]

    def __str__(self) -> str:
        if self.is_empty():
            return "{}"
        core = "+".join(f"{r}+{self.modulus}Z" for r in sorted(self.residues))
        parts = [core] if core else []
        if self.patch_add:
            parts.append("+{%s}" % ",".join(map(str, sorted(self.patch_add))))
        if self.patch_remove:
            parts.append("-{%s}" % ",".join(map(str, sorted(self.patch_remove))))
        return " ".join(parts)


def _minimal_period(modulus: int, residues: FrozenSet[int]) -> int:
    for d in range(1, modulus + 1):
        if modulus % d:
            continue
        if all(
            ((r + d) % modulus in residues) == (r in residues)
            for r in range(modulus)
        ):
            return d
    return modulus


def ep_set(
    modulus: int,
    residues: Iterable[int] = (),
    add: Iterable[int] = (),
    remove: Iterable[int] = (),
) -> EventuallyPeriodicZSet:
    """Normalizing factory: accepts any representation of the set."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    res = frozenset(r % modulus for r in residues)
    add = frozenset(add)
    remove = frozenset(remove)

    def member(n: int) -> bool:
        if n in add:
            return True
        if n in remove:
            return False
        return n % modulus in res

    d = _minimal_period(modulus, res)
    res_d = frozenset(r % d for r in res)
    touched = add | remove
    new_add = frozenset(n for n in touched if member(n) and n % d not in res_d)
    new_remove = frozenset(n for n in touched if not member(n) and n % d in res_d)
    return EventuallyPeriodicZSet(d, res_d, new_add, new_remove)


def ep_empty() -> EventuallyPeriodicZSet:
    return ep_set(1)


def ep_all() -> EventuallyPeriodicZSet:
    return ep_set(1, [0])


def ep_evens() -> EventuallyPeriodicZSet:
    return ep_set(2, [0])


def ep_odds() -> EventuallyPeriodicZSet:
    return ep_set(2, [1])


def ep_finite(points: Iterable[int]) -> EventuallyPeriodicZSet:
    return ep_set(1, [], add=points)


def ep_residue(modulus: int, residues: Iterable[int]) -> EventuallyPeriodicZSet:
    return ep_set(modulus, residues)


def _pointwise(x, y, combine):
    # away from the finitely many patch points both sets agree with
    # their periodic parts, so the result's deviations live there too
    mod = lcm(x.modulus, y.modulus)
    res = frozenset(
        r
        for r in range(mod)
        if combine(r % x.modulus in x.residues, r % y.modulus in y.residues)
    )
    touched = x.patch_add | x.patch_remove | y.patch_add | y.patch_remove
    add = [n for n in touched if combine(n in x, n in y)]
    remove = [n for n in touched if not combine(n in x, n in y)]
    return ep_set(mod, res, add=add, remove=remove)


def ep_union(x: EventuallyPeriodicZSet, y: EventuallyPeriodicZSet) -> EventuallyPeriodicZSet:
    return _pointwise(x, y, lambda a, b: a or b)


def ep_intersect(x: EventuallyPeriodicZSet, y: EventuallyPeriodicZSet) -> EventuallyPeriodicZSet:
    return _pointwise(x, y, lambda a, b: a and b)


def ep_difference(x: EventuallyPeriodicZSet, y: EventuallyPeriodicZSet) -> EventuallyPeriodicZSet:
    return _pointwise(x, y, lambda a, b: a and not b)


def ep_complement(x: EventuallyPeriodicZSet) -> EventuallyPeriodicZSet:
    res = frozenset(r for r in range(x.modulus) if r not in x.residues)
    return ep_set(x.modulus, res, add=x.patch_remove, remove=x.patch_add)


def ep_translate(x: EventuallyPeriodicZSet, k: int) -> EventuallyPeriodicZSet:
    return ep_set(
        x.modulus,
        [(r + k) % x.modulus for r in x.residues],
        add=[n + k for n in x.patch_add],
        remove=[n + k for n in x.patch_remove],
    )
