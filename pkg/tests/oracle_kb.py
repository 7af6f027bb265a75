"""Independent equality oracle: completion of the vector rewriting system.

The engine under test decides congruence of multiplicity vectors by
breadth-first class closure plus conserved functionals.  This oracle
answers the same question by a different route: orient the defining
relations into rewrite rules under the degree-lexicographic well-order,
complete them with critical pairs (componentwise max overlap) and
interreduction until confluent, then compare normal forms.  The result
is exact on every query, with no search bound in sight: termination of
completion follows from Dickson's lemma once reducible left-hand sides
are interreduced away, and a rule cap guards against implementation
bugs rather than theory.

Relations are re-derived here from the raw action table, not imported
from the library, so the two routes share nothing but the space itself.
"""

from typing import Dict, List, Sequence, Tuple

Vec = Tuple[int, ...]


class OracleError(Exception):
    """Completion exceeded its guard cap; the oracle refuses to answer."""


def _key(v: Vec):
    return (sum(v), v)


def _reducible(v: Vec, lhs: Vec) -> bool:
    return all(x >= y for x, y in zip(v, lhs))


def relations_from_space(ss) -> Tuple[int, List[Tuple[Vec, Vec]]]:
    """Atomic moves read directly off the action rows.

    For each symmetry s and atom a, the single copy of a is identified
    with the indicator of the atoms s maps into a.  Measurability is
    asserted on the way: all points of an atom must land in one atom.
    """
    n = len(ss.space.atoms)
    atom_of: Dict[int, int] = {}
    for i, block in enumerate(ss.space.atoms):
        for pt in block:
            atom_of[pt] = i
    rels: List[Tuple[Vec, Vec]] = []
    for s in range(ss.monoid.order):
        row = ss.action[s]
        images = []
        for block in ss.space.atoms:
            targets = {atom_of[row[pt]] for pt in block}
            assert len(targets) == 1, "action is not measurable"
            images.append(next(iter(targets)))
        for a in range(n):
            lhs = tuple(1 if i == a else 0 for i in range(n))
            rhs = tuple(1 if images[i] == a else 0 for i in range(n))
            rels.append((lhs, rhs))
    return n, rels


class CongruenceOracle:
    def __init__(self, n: int, relations: Sequence[Tuple[Vec, Vec]],
                 max_rules: int = 4000):
        self.n = n
        self.max_rules = max_rules
        self.rules: List[Tuple[Vec, Vec]] = []
        self._complete(list(relations))

    # -- rewriting ---------------------------------------------------------

    def normal_form(self, v: Vec) -> Vec:
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rules:
                if _reducible(v, lhs):
                    v = tuple(x - l + r for x, l, r in zip(v, lhs, rhs))
                    changed = True
                    break
        return v

    def eq(self, p: Sequence[int], q: Sequence[int]) -> bool:
        return self.normal_form(tuple(p)) == self.normal_form(tuple(q))

    # -- completion --------------------------------------------------------

    def _complete(self, work: List[Tuple[Vec, Vec]]):
        steps = 0
        while work:
            steps += 1
            if steps > 50 * self.max_rules:
                raise OracleError("completion exceeded its step cap")
            l, r = work.pop()
            l = self.normal_form(l)
            r = self.normal_form(r)
            if l == r:
                continue
            if _key(l) < _key(r):
                l, r = r, l
            # interreduce: rules the new rule touches go back to work
            keep = []
            for lhs, rhs in self.rules:
                if _reducible(lhs, l) or _reducible(rhs, l):
                    work.append((lhs, rhs))
                else:
                    keep.append((lhs, rhs))
            keep.append((l, r))
            self.rules = keep
            if len(self.rules) > self.max_rules:
                raise OracleError("completion exceeded its rule cap")
            for lhs, rhs in list(self.rules):
                overlap = tuple(max(a, b) for a, b in zip(l, lhs))
                p1 = tuple(o - a + b for o, a, b in zip(overlap, l, r))
                p2 = tuple(o - a + b for o, a, b in zip(overlap, lhs, rhs))
                if p1 != p2:
                    work.append((p1, p2))

    def confluent_on(self, samples: Sequence[Vec]) -> bool:
        """Spot check: every one-step reduct of a sample has the same
        normal form, whatever rule fired first."""
        for v in samples:
            forms = set()
            for lhs, rhs in self.rules:
                if _reducible(v, lhs):
                    forms.add(
                        self.normal_form(
                            tuple(x - l + r for x, l, r in zip(v, lhs, rhs))
                        )
                    )
            if len(forms) > 1:
                return False
        return True


def oracle_for_space(ss, max_rules: int = 4000) -> CongruenceOracle:
    n, rels = relations_from_space(ss)
    return CongruenceOracle(n, rels, max_rules=max_rules)
