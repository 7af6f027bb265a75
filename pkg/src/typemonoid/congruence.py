"""Decision procedures for finitely presented commutative monoid congruences.

The congruence on N^n is generated by vector pairs (lhs, rhs): u and v are
identified exactly when v is reachable from u by steps u -> u - lhs + rhs
(either orientation, nonnegative intermediates).  Equidecomposability of
finite multiplicity vectors over a finite space reduces to this congruence
for the atomic-move relations, because a pullback distributes over a
disjoint union of atoms: any single move splits into one relation instance
per atom copy, and conversely every relation instance is realized by a two
piece rearrangement.  Chains and sums of realizations are again
realizations, which is precisely closure under transitivity and addition.

Elements may in addition carry omega multiplicities (an omega support),
with saturating arithmetic: omega + k = omega.  These are compared through
bounded absorption: omega copies of atom b are absorbed by omega copies of
a support W as soon as [b] <= k * [W] for some finite k, since an
idempotent swallows everything below it.

Verdicts are three valued.  Positive answers carry replayable rewrite
paths; negative answers carry either a conserved functional (a rational
vector annihilating every relation difference, nonnegative for order
queries, evaluated with saturation on omega coordinates) or a fully
saturated class enumeration; budget exhaustion yields Unknown, never a
guess.  Witnesses are re-checked by assertion before being returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import SpaceMismatchError
from .lp import exact_lp_feasible, rational_kernel_basis

Vec = Tuple[int, ...]

EQUAL = "equal"
NOT_EQUAL = "not_equal"
LEQ = "leq"
NOT_LEQ = "not_leq"
UNKNOWN = "unknown"


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_geq(u: Vec, v: Vec) -> bool:
    return all(a >= b for a, b in zip(u, v))


def vec_scale(k: int, u: Vec) -> Vec:
    return tuple(k * a for a in u)


def zero_vec(n: int) -> Vec:
    return (0,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(n))


def indicator(n: int, support: Iterable[int]) -> Vec:
    s = set(support)
    return tuple(1 if j in s else 0 for j in range(n))


@dataclass(frozen=True)
class ExtVec:
    """Finite multiplicities plus an omega support, disjoint by invariant."""

    finite: Vec
    omega: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if any(self.finite[i] != 0 for i in self.omega):
            raise ValueError("finite multiplicity on an omega coordinate")
        if any(m < 0 for m in self.finite):
            raise ValueError("negative multiplicity")
        if any(not (0 <= i < len(self.finite)) for i in self.omega):
            raise ValueError("omega coordinate out of range")

    @property
    def n(self) -> int:
        return len(self.finite)

    def is_finite(self) -> bool:
        return not self.omega

    def is_zero(self) -> bool:
        return not self.omega and not any(self.finite)

    def add(self, other: "ExtVec") -> "ExtVec":
        if other.n != self.n:
            raise SpaceMismatchError("dimension mismatch")
        om = self.omega | other.omega
        fin = tuple(
            0 if i in om else self.finite[i] + other.finite[i]
            for i in range(self.n)
        )
        return ExtVec(fin, om)

    def scale(self, k: int) -> "ExtVec":
        if k < 0:
            raise ValueError("nonnegative scalars only")
        if k == 0:
            return ExtVec(zero_vec(self.n))
        return ExtVec(vec_scale(k, self.finite), self.omega)

    def total_finite(self) -> int:
        return sum(self.finite)

    @staticmethod
    def from_vec(v: Vec) -> "ExtVec":
        return ExtVec(tuple(v))


@dataclass(frozen=True)
class Budget:
    """Search limits; None coordinate_cap means the per-query default."""

    coordinate_cap: Optional[int] = None
    max_states: int = 40000
    absorption_k: int = 8

    def cap_for(self, cong: "Congruence", inputs: Sequence[Vec]) -> int:
        if self.coordinate_cap is not None:
            return self.coordinate_cap
        total = sum(sum(v) for v in inputs)
        return total + 4 * cong.max_relation_norm * cong.n


@dataclass
class Decision:
    verdict: str
    witness: dict
    budget: Budget

    def is_definite(self) -> bool:
        return self.verdict != UNKNOWN

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": _json_witness(self.witness),
            "budget": {
                "coordinate_cap": self.budget.coordinate_cap,
                "max_states": self.budget.max_states,
                "absorption_k": self.budget.absorption_k,
            },
        }


def _json_witness(w):
    if isinstance(w, dict):
        return {k: _json_witness(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [_json_witness(v) for v in w]
    if isinstance(w, frozenset):
        return sorted(w)
    if isinstance(w, Fraction):
        return f"{w.numerator}/{w.denominator}"
    return w


@dataclass
class ClassRecord:
    members: Dict[Vec, Optional[Tuple[Vec, int, int]]]  # vec -> (parent, rel, dir)
    saturated: bool
    cap: int


class Congruence:
    """The congruence on N^n generated by `relations`, with decision memoes."""

    def __init__(self, n: int, relations: Sequence[Tuple[Vec, Vec]]):
        self.n = n
        self.relations: List[Tuple[Vec, Vec]] = [
            (tuple(l), tuple(r)) for l, r in relations
        ]
        for l, r in self.relations:
            if len(l) != n or len(r) != n:
                raise SpaceMismatchError("relation dimension mismatch")
        self.max_relation_norm = max(
            [max(sum(l), sum(r)) for l, r in self.relations] + [1]
        )
        self._kernel: Optional[List[Tuple[Fraction, ...]]] = None
        self._closures: Dict[Tuple[Vec, int, int], ClassRecord] = {}
        self._normal_memo: Dict[tuple, Tuple[ExtVec, dict]] = {}
        self._decision_memo: Dict[tuple, Decision] = {}

    # ----- conserved functionals -------------------------------------------

    def differences(self) -> List[Vec]:
        return [vec_sub(l, r) for l, r in self.relations if l != r]

    def conserved_basis(self) -> List[Tuple[Fraction, ...]]:
        """Basis of rational y with y.(lhs - rhs) = 0 for every relation."""
        if self._kernel is None:
            rows = [tuple(map(Fraction, d)) for d in self.differences()]
            self._kernel = rational_kernel_basis(rows, self.n)
        return self._kernel

    def functional_value(self, y: Sequence[Fraction], v: ExtVec):
        """Saturating evaluation; returns a Fraction or the string 'inf'."""
        if any(y[i] != 0 for i in v.omega):
            return "inf"
        return sum(
            (y[i] * v.finite[i] for i in range(self.n)), Fraction(0)
        )

    def _nonneg_conserved(
        self,
        positive: Sequence[Fraction],
        zero_coords: Iterable[int] = (),
        strict_coords: Iterable[int] = (),
    ) -> Optional[Tuple[Fraction, ...]]:
        """Find y >= 0 conserved with y.positive >= 1, y zero / positive where asked."""
        eqs = [(d, 0) for d in self.differences()]
        for i in zero_coords:
            eqs.append((unit_vec(self.n, i), 0))
        ges = [(tuple(positive), 1)]
        for i in strict_coords:
            ges.append((unit_vec(self.n, i), Fraction(1, 1000)))
        res = exact_lp_feasible(self.n, equalities=eqs, ge_inequalities=ges)
        return res.point if res.feasible else None

    # ----- bounded class closure -------------------------------------------

    def class_closure(self, start: Vec, cap: int, max_states: int) -> ClassRecord:
        key = (tuple(start), cap, max_states)
        if key in self._closures:
            return self._closures[key]
        # step table precomputed once: (needed, delta, idx, direction)
        if not hasattr(self, "_steps"):
            steps = []
            for idx, (l, r) in enumerate(self.relations):
                if l == r:
                    continue
                delta = tuple(rr - ll for ll, rr in zip(l, r))
                steps.append((l, delta, idx, 1))
                steps.append((r, tuple(-d for d in delta), idx, -1))
            self._steps = tuple(steps)
        members: Dict[Vec, Optional[Tuple[Vec, int, int]]] = {tuple(start): None}
        queue = deque([tuple(start)])
        saturated = True
        overflow = False
        rng = range(self.n)
        while queue and not overflow:
            u = queue.popleft()
            for needed, delta, idx, direction in self._steps:
                applicable = True
                for i in rng:
                    if u[i] < needed[i]:
                        applicable = False
                        break
                if not applicable:
                    continue
                v = tuple(u[i] + delta[i] for i in rng)
                if max(v) > cap:
                    saturated = False
                    continue
                if v not in members:
                    if len(members) >= max_states:
                        saturated = False
                        overflow = True
                        break
                    members[v] = (u, idx, direction)
                    queue.append(v)
        rec = ClassRecord(members=members, saturated=saturated, cap=cap)
        self._closures[key] = rec
        return rec

    def _path_from(self, rec: ClassRecord, target: Vec) -> List[Tuple[int, int]]:
        """Steps (relation index, direction) from the closure root to target."""
        steps: List[Tuple[int, int]] = []
        cur = target
        while rec.members[cur] is not None:
            parent, idx, direction = rec.members[cur]  # type: ignore[misc]
            steps.append((idx, direction))
            cur = parent
        steps.reverse()
        return steps

    def replay_path(self, start: Vec, steps: Sequence[Tuple[int, int]]) -> Vec:
        """Apply steps to start, raising if any step is inapplicable."""
        u = tuple(start)
        for idx, direction in steps:
            l, r = self.relations[idx]
            a, b = (l, r) if direction == 1 else (r, l)
            if not vec_geq(u, a):
                raise ValueError(f"path step {idx} inapplicable at {u}")
            u = vec_add(vec_sub(u, a), b)
        return u

    # ----- finite decisions --------------------------------------------------

    def eq_finite(self, u: Vec, v: Vec, budget: Budget) -> Decision:
        u, v = tuple(u), tuple(v)
        if u == v:
            return Decision(EQUAL, {"kind": "syntactic"}, budget)
        key = ("eqf", u, v, budget.absorption_k, budget.coordinate_cap, budget.max_states)
        hit = self._decision_memo.get(key)
        if hit is None:
            hit = self._eq_finite_impl(u, v, budget)
            self._decision_memo[key] = hit
        return hit

    def _eq_finite_impl(self, u: Vec, v: Vec, budget: Budget) -> Decision:
        diff = vec_sub(u, v)
        for y in self.conserved_basis():
            val = sum(y[i] * diff[i] for i in range(self.n))
            if val != 0:
                dec = Decision(
                    NOT_EQUAL,
                    {"kind": "functional", "y": tuple(y), "separation": val},
                    budget,
                )
                self._assert_functional(dec.witness["y"])
                return dec
        cap = budget.cap_for(self, [u, v])
        rec_u = self.class_closure(u, cap, budget.max_states)
        if v in rec_u.members:
            steps = self._path_from(rec_u, v)
            assert self.replay_path(u, steps) == v
            return Decision(
                EQUAL,
                {"kind": "path", "start": u, "end": v, "steps": steps},
                budget,
            )
        if rec_u.saturated:
            return Decision(
                NOT_EQUAL,
                {
                    "kind": "saturation",
                    "class_size": len(rec_u.members),
                    "cap": cap,
                },
                budget,
            )
        rec_v = self.class_closure(v, cap, budget.max_states)
        if u in rec_v.members:  # only reachable if caps pruned asymmetrically
            steps = self._path_from(rec_v, u)
            rev = [(i, -d) for i, d in reversed(steps)]
            assert self.replay_path(u, rev) == v
            return Decision(
                EQUAL,
                {"kind": "path", "start": u, "end": v, "steps": rev},
                budget,
            )
        if rec_v.saturated:
            return Decision(
                NOT_EQUAL,
                {
                    "kind": "saturation",
                    "class_size": len(rec_v.members),
                    "cap": cap,
                },
                budget,
            )
        return Decision(
            UNKNOWN,
            {"kind": "budget", "cap": cap, "max_states": budget.max_states},
            budget,
        )

    def leq_finite(self, u: Vec, v: Vec, budget: Budget) -> Decision:
        u, v = tuple(u), tuple(v)
        if vec_geq(v, u):
            return Decision(
                LEQ,
                {
                    "kind": "domination",
                    "u": u,
                    "w": v,
                    "gamma": vec_sub(v, u),
                    "path_left": [],
                    "path_right": [],
                },
                budget,
            )
        key = ("leqf", u, v, budget.absorption_k, budget.coordinate_cap, budget.max_states)
        hit = self._decision_memo.get(key)
        if hit is None:
            hit = self._leq_finite_impl(u, v, budget)
            self._decision_memo[key] = hit
        return hit

    def _leq_finite_impl(self, u: Vec, v: Vec, budget: Budget) -> Decision:
        y = self._nonneg_conserved(vec_sub(u, v))
        if y is not None:
            dec = Decision(
                NOT_LEQ, {"kind": "functional", "y": y, "nonnegative": True}, budget
            )
            self._assert_functional(y, nonneg=True)
            return dec
        cap = budget.cap_for(self, [u, v])
        rec_u = self.class_closure(u, cap, budget.max_states)
        rec_v = self.class_closure(v, cap, budget.max_states)
        mins_u = _minimal_elements(rec_u.members)
        for w in rec_v.members:
            for m in mins_u:
                if vec_geq(w, m):
                    dec = Decision(
                        LEQ,
                        {
                            "kind": "domination",
                            "u": m,
                            "w": w,
                            "gamma": vec_sub(w, m),
                            "path_left": self._path_from(rec_u, m),
                            "path_right": self._path_from(rec_v, w),
                        },
                        budget,
                    )
                    assert self.replay_path(u, dec.witness["path_left"]) == m
                    assert self.replay_path(v, dec.witness["path_right"]) == w
                    return dec
        if rec_u.saturated and rec_v.saturated:
            return Decision(
                NOT_LEQ,
                {
                    "kind": "saturation",
                    "class_sizes": (len(rec_u.members), len(rec_v.members)),
                    "cap": cap,
                },
                budget,
            )
        return Decision(
            UNKNOWN,
            {"kind": "budget", "cap": cap, "max_states": budget.max_states},
            budget,
        )

    def _assert_functional(self, y, nonneg: bool = False) -> None:
        for l, r in self.relations:
            s = sum(y[i] * (l[i] - r[i]) for i in range(self.n))
            assert s == 0, "functional does not annihilate a relation"
        if nonneg:
            assert all(c >= 0 for c in y), "order functional not nonnegative"

    # ----- omega machinery ----------------------------------------------------

    def absorbable(self, coord: int, support: FrozenSet[int], budget: Budget) -> Optional[int]:
        """Least k <= absorption_k with [coord] <= k*[support], else None.

        k = 0 asks whether the coordinate is null ([coord] = 0); this is the
        branch that matters when the support is empty.
        """
        e = unit_vec(self.n, coord)
        chi = indicator(self.n, support)
        for k in range(0, budget.absorption_k + 1):
            if not support and k > 0:
                break
            if self.leq_finite(e, vec_scale(k, chi), budget).verdict == LEQ:
                return k
        return None

    def support_closure(
        self, support: FrozenSet[int], budget: Budget
    ) -> Tuple[FrozenSet[int], dict]:
        """Close an omega support under bounded absorption."""
        closed = set(support)
        added: Dict[int, int] = {}
        changed = True
        while changed:
            changed = False
            for b in range(self.n):
                if b in closed:
                    continue
                k = self.absorbable(b, frozenset(closed), budget)
                if k is not None:
                    closed.add(b)
                    added[b] = k
                    changed = True
        return frozenset(closed), {"added": added}

    def normalize(self, v: ExtVec, budget: Budget) -> Tuple[ExtVec, dict]:
        """Omega-support closure followed by absorption of trapped finite mass.

        Identity on purely finite vectors; idempotent by construction.
        """
        if v.is_finite():
            return v, {"kind": "identity"}
        key = (v, budget.absorption_k, budget.coordinate_cap, budget.max_states)
        if key in self._normal_memo:
            return self._normal_memo[key]
        closed, cert = self.support_closure(v.omega, budget)
        fin = tuple(0 if i in closed else v.finite[i] for i in range(self.n))
        absorbed = {
            i: v.finite[i]
            for i in closed
            if v.finite[i] != 0 and i not in v.omega
        }
        out = ExtVec(fin, closed)
        result = (out, {"kind": "normalized", "closure": cert, "absorbed": absorbed})
        self._normal_memo[key] = result
        return result

    def _support_absorbed_in(
        self, support: FrozenSet[int], target: FrozenSet[int], budget: Budget
    ) -> Optional[Dict[int, int]]:
        """Each omega coordinate of `support` swallowed by omega over `target`."""
        ks: Dict[int, int] = {}
        for b in support:
            if b in target:
                ks[b] = 1
                continue
            k = self.absorbable(b, target, budget)
            if k is None:
                return None
            ks[b] = k
        return ks

    # ----- extended decisions --------------------------------------------------

    def decide_eq(self, p: ExtVec, q: ExtVec, budget: Budget = Budget()) -> Decision:
        if p.n != self.n or q.n != self.n:
            raise SpaceMismatchError("dimension mismatch")
        key = ("eq", p, q, budget.absorption_k, budget.coordinate_cap, budget.max_states)
        hit = self._decision_memo.get(key)
        if hit is None:
            hit = self._decide_eq_impl(p, q, budget)
            self._decision_memo[key] = hit
        return hit

    def _decide_eq_impl(self, p: ExtVec, q: ExtVec, budget: Budget) -> Decision:
        pn, pcert = self.normalize(p, budget)
        qn, qcert = self.normalize(q, budget)
        if pn.is_finite() and qn.is_finite():
            return self.eq_finite(pn.finite, qn.finite, budget)
        if pn == qn:
            return Decision(EQUAL, {"kind": "syntactic-normalized"}, budget)
        sep = self._saturating_separation(pn, qn, budget, order=False)
        if sep is not None:
            return sep
        W, V = pn.omega, qn.omega
        into_v = self._support_absorbed_in(W, V, budget)
        into_w = self._support_absorbed_in(V, W, budget)
        if into_v is not None and into_w is not None:
            union = W | V
            chi = indicator(self.n, union)
            for k in range(0, budget.absorption_k + 1):
                shift = vec_scale(k, chi)
                fin = self.eq_finite(
                    vec_add(pn.finite, shift), vec_add(qn.finite, shift), budget
                )
                if fin.verdict == EQUAL:
                    return Decision(
                        EQUAL,
                        {
                            "kind": "omega_equal",
                            "support": union,
                            "k": k,
                            "mutual_absorption": [into_v, into_w],
                            "finite": fin.witness,
                        },
                        budget,
                    )
        return Decision(UNKNOWN, {"kind": "budget", "omega": True}, budget)

    def decide_leq(self, p: ExtVec, q: ExtVec, budget: Budget = Budget()) -> Decision:
        if p.n != self.n or q.n != self.n:
            raise SpaceMismatchError("dimension mismatch")
        key = ("leq", p, q, budget.absorption_k, budget.coordinate_cap, budget.max_states)
        hit = self._decision_memo.get(key)
        if hit is None:
            hit = self._decide_leq_impl(p, q, budget)
            self._decision_memo[key] = hit
        return hit

    def _decide_leq_impl(self, p: ExtVec, q: ExtVec, budget: Budget) -> Decision:
        pn, _ = self.normalize(p, budget)
        qn, _ = self.normalize(q, budget)
        if pn.is_zero():
            return Decision(LEQ, {"kind": "zero-bottom"}, budget)
        if pn.is_finite() and qn.is_finite():
            return self.leq_finite(pn.finite, qn.finite, budget)
        sep = self._saturating_separation(pn, qn, budget, order=True)
        if sep is not None:
            return sep
        into_v = self._support_absorbed_in(pn.omega, qn.omega, budget)
        if into_v is not None:
            chi = indicator(self.n, qn.omega)
            for k in range(0, budget.absorption_k + 1):
                if not qn.omega and k > 0:
                    break
                fin = self.leq_finite(
                    pn.finite, vec_add(qn.finite, vec_scale(k, chi)), budget
                )
                if fin.verdict == LEQ:
                    return Decision(
                        LEQ,
                        {
                            "kind": "omega_leq",
                            "absorption": into_v,
                            "k": k,
                            "finite": fin.witness,
                        },
                        budget,
                    )
        return Decision(UNKNOWN, {"kind": "budget", "omega": True}, budget)

    def _saturating_separation(
        self, pn: ExtVec, qn: ExtVec, budget: Budget, order: bool
    ) -> Optional[Decision]:
        """Nonnegative conserved functional separating under saturation.

        For equality: any of val(p) = inf > val(q), val(q) = inf > val(p),
        or finite values differing.  For order (p <= q refuted): val(p)
        must exceed val(q), so only inf-on-p or finite comparison apply.
        """
        n = self.n
        W, V = pn.omega, qn.omega
        candidates: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = []
        if W:
            candidates.append((indicator(n, W), tuple(V)))
        if not order and V:
            candidates.append((indicator(n, V), tuple(W)))
        for positive, zero_supp in candidates:
            y = self._nonneg_conserved(positive, zero_coords=set(zero_supp))
            if y is not None:
                self._assert_functional(y, nonneg=True)
                lv = self.functional_value(y, pn)
                rv = self.functional_value(y, qn)
                if (lv == "inf") != (rv == "inf"):
                    if not order or lv == "inf":
                        return Decision(
                            NOT_LEQ if order else NOT_EQUAL,
                            {
                                "kind": "functional",
                                "y": y,
                                "nonnegative": True,
                                "value_left": lv,
                                "value_right": rv,
                            },
                            Budget() if budget is None else budget,
                        )
        diffs = [vec_sub(pn.finite, qn.finite)]
        if not order:
            diffs.append(vec_sub(qn.finite, pn.finite))
        for d in diffs:
            y = self._nonneg_conserved(d, zero_coords=set(W | V))
            if y is not None:
                self._assert_functional(y, nonneg=True)
                lv = self.functional_value(y, pn)
                rv = self.functional_value(y, qn)
                if lv != rv and lv != "inf" and rv != "inf":
                    if not order or lv > rv:
                        return Decision(
                            NOT_LEQ if order else NOT_EQUAL,
                            {
                                "kind": "functional",
                                "y": y,
                                "nonnegative": True,
                                "value_left": lv,
                                "value_right": rv,
                            },
                            budget,
                        )
        return None


def _minimal_elements(members: Iterable[Vec]) -> List[Vec]:
    mins: List[Vec] = []
    for v in sorted(members, key=sum):
        if not any(vec_geq(v, m) for m in mins):
            mins.append(v)
    return mins
