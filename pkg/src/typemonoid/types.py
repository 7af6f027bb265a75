"""Formal coproducts of measurable sets, equidecomposability, and types.

A monoid element s moves a measurable set A onto its preimage under the
action; equidecomposability is the equivalence generated by cutting a
formal coproduct into countably many pieces and moving each piece once.
On a finite space with finitely many symmetries this equivalence, on
finite-multiplicity vectors, is exactly the commutative-monoid congruence
generated by the atomic moves

    [atom a]  ~  [preimage of a under s]      (one relation per (s, a)).

Why atomic moves generate everything: preimages preserve disjoint unions,
so a one-piece move of any measurable set is the coproduct of the moves
of its atoms, and a multi-piece realization is a finite sum of one-piece
moves; a move with two nontrivial movers s, t factors through the common
image as a move by s followed by the reverse move by t, so single-mover
relations suffice; sums and chains of realizations are realizations.
Hence the reflexive-transitive-additive closure of the atomic moves and
the full equidecomposability relation agree wherever both are defined.

The order alpha <= beta means beta = alpha + gamma for some type gamma.
On representatives this is equivalent to: some member of beta's class
dominates some member of alpha's class componentwise. (If u + g is
congruent to v then v's class contains the dominating member u + g;
conversely domination w >= m with m ~ u, w ~ v exhibits gamma = [w - m].)

One caveat on semantics: actions here are total point maps, and for
idempotents acting as retractions the preimage of A need not equal the
forward image of A under the weak inverse. Every construction below uses
preimages only, which is what stationarity of measures quantifies over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .congruence import (
    EQUAL,
    LEQ,
    NOT_EQUAL,
    NOT_LEQ,
    UNKNOWN,
    Budget,
    Congruence,
    Decision,
    ExtVec,
    Vec,
    indicator,
    unit_vec,
    vec_add,
    vec_geq,
    vec_sub,
    zero_vec,
)
from .errors import MalformedCertificateError, SpaceMismatchError
from .spaces import AtomSet, StatMorphism, StatSpace, pullback


@dataclass(frozen=True)
class MoveRelation:
    """One atomic move: an atom and the indicator of its preimage."""

    atom: int
    mover: int
    lhs: Vec
    rhs: Vec


def relation_basis(ss: StatSpace) -> List[MoveRelation]:
    """All atomic moves of a space, identity relations included."""
    out: List[MoveRelation] = []
    n = ss.n_atoms
    for s in range(ss.monoid.order):
        amap = ss.atom_map(s)
        for a in range(n):
            pre = indicator(n, [b for b in range(n) if amap[b] == a])
            out.append(MoveRelation(atom=a, mover=s, lhs=unit_vec(n, a), rhs=pre))
    return out


@dataclass(frozen=True)
class AbarElement:
    """A formal coproduct of atoms: finite multiplicities plus omega atoms."""

    space: StatSpace
    vec: ExtVec

    def __post_init__(self):
        if self.vec.n != self.space.n_atoms:
            raise SpaceMismatchError("vector length does not match atom count")

    def __add__(self, other: "AbarElement") -> "AbarElement":
        if other.space != self.space:
            raise SpaceMismatchError("coproduct across different spaces")
        return AbarElement(self.space, self.vec.add(other.vec))

    def scale(self, k: int) -> "AbarElement":
        return AbarElement(self.space, self.vec.scale(k))

    @property
    def is_finite(self) -> bool:
        return self.vec.is_finite()


@dataclass(frozen=True, eq=False)
class TarskiType:
    """An equidecomposability class, held by a normalized representative.

    Syntactic equality of representatives is deliberately not exposed as
    ==; compare through the owning engine's type_eq / type_leq.
    """

    space: StatSpace
    rep: ExtVec


@dataclass(frozen=True)
class Realization:
    """Pieces and movers witnessing one equidecomposition, replayed
    syntactically: piece j moved by the left mover must coincide with
    piece j of the right side moved by the right mover."""

    space: StatSpace
    left_whole: ExtVec
    right_whole: ExtVec
    left_pieces: Tuple[ExtVec, ...]
    right_pieces: Tuple[ExtVec, ...]
    moves: Tuple[Tuple[int, int], ...]


@dataclass
class RealizationReport:
    ok: bool
    problems: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class AuditEntry:
    op: str  # "eq" | "leq"
    left: ExtVec
    right: ExtVec
    decision: Decision


class TypeEngine:
    """Decision procedures for one space, with an audit trail.

    Every definite verdict this engine hands out is remembered so the
    soundness audit can replay positive witnesses through
    verify_realization and re-check negative functionals against the
    relation differences.
    """

    def __init__(self, statspace: StatSpace, budget: Budget = Budget()):
        self.statspace = statspace
        self.n = statspace.n_atoms
        self.relations = relation_basis(statspace)
        self.congruence = Congruence(
            self.n, [(r.lhs, r.rhs) for r in self.relations]
        )
        self.budget = budget
        self.audit_log: List[AuditEntry] = []
        self._atom_maps = tuple(
            statspace.atom_map(s) for s in range(statspace.monoid.order)
        )

    # ----- formal coproducts ------------------------------------------------

    def abar_of_set(self, atoms: AtomSet) -> AbarElement:
        bad = [a for a in atoms if not (0 <= a < self.n)]
        if bad:
            raise SpaceMismatchError(f"unknown atoms {bad}")
        return AbarElement(self.statspace, ExtVec.from_vec(indicator(self.n, atoms)))

    def abar_zero(self) -> AbarElement:
        return AbarElement(self.statspace, ExtVec.from_vec(zero_vec(self.n)))

    def abar(self, finite: Sequence[int], omega: Iterable[int] = ()) -> AbarElement:
        return AbarElement(self.statspace, ExtVec(tuple(finite), frozenset(omega)))

    def abar_coproduct(self, p: AbarElement, q: AbarElement) -> AbarElement:
        return p + q

    def omega_fold(self, p: AbarElement) -> AbarElement:
        """Countably many copies of p: omega on every supported atom."""
        self._check(p)
        supp = frozenset(
            i for i in range(self.n) if p.vec.finite[i] > 0
        ) | p.vec.omega
        return AbarElement(self.statspace, ExtVec(zero_vec(self.n), supp))

    def abar_act(self, s: int, p: AbarElement) -> AbarElement:
        """Transport multiplicities along the preimage of element s."""
        self._check(p)
        amap = self._atom_maps[s]
        fin = tuple(
            0 if amap[b] in p.vec.omega else p.vec.finite[amap[b]]
            for b in range(self.n)
        )
        omega = frozenset(b for b in range(self.n) if amap[b] in p.vec.omega)
        return AbarElement(self.statspace, ExtVec(fin, omega))

    def _check(self, p: AbarElement) -> None:
        if p.space != self.statspace:
            raise SpaceMismatchError("element belongs to a different space")

    def _vec(self, x) -> ExtVec:
        if isinstance(x, TarskiType):
            if x.space != self.statspace:
                raise SpaceMismatchError("type belongs to a different space")
            return x.rep
        if isinstance(x, AbarElement):
            self._check(x)
            return x.vec
        if isinstance(x, ExtVec):
            return x
        raise TypeError(f"cannot interpret {type(x).__name__} as a coproduct")

    # ----- decisions ----------------------------------------------------------

    def conserved_functionals(self) -> List[Tuple]:
        return self.congruence.conserved_basis()

    def decide_equal(self, p, q, budget: Optional[Budget] = None) -> Decision:
        b = budget or self.budget
        u, v = self._vec(p), self._vec(q)
        dec = self.congruence.decide_eq(u, v, b)
        self.audit_log.append(AuditEntry("eq", u, v, dec))
        return dec

    def decide_leq(self, p, q, budget: Optional[Budget] = None) -> Decision:
        b = budget or self.budget
        u, v = self._vec(p), self._vec(q)
        dec = self.congruence.decide_leq(u, v, b)
        self.audit_log.append(AuditEntry("leq", u, v, dec))
        return dec

    def omega_normalize(self, p: AbarElement, budget: Optional[Budget] = None) -> AbarElement:
        self._check(p)
        out, _ = self.congruence.normalize(p.vec, budget or self.budget)
        return AbarElement(self.statspace, out)

    # ----- types ---------------------------------------------------------------

    def type_of(self, atoms: AtomSet) -> TarskiType:
        return self.type_of_abar(self.abar_of_set(atoms))

    def type_of_abar(self, p) -> TarskiType:
        v = self._vec(p)
        out, _ = self.congruence.normalize(v, self.budget)
        return TarskiType(self.statspace, out)

    def type_zero(self) -> TarskiType:
        return TarskiType(self.statspace, ExtVec.from_vec(zero_vec(self.n)))

    def type_add(self, a: TarskiType, b: TarskiType) -> TarskiType:
        return self.type_of_abar(self._vec(a).add(self._vec(b)))

    def type_scale(self, k: int, a: TarskiType) -> TarskiType:
        return self.type_of_abar(self._vec(a).scale(k))

    def type_eq(self, a, b, budget: Optional[Budget] = None) -> Decision:
        return self.decide_equal(a, b, budget)

    def type_leq(self, a, b, budget: Optional[Budget] = None) -> Decision:
        return self.decide_leq(a, b, budget)

    # ----- realizations ---------------------------------------------------------

    def verify_realization(self, r: Realization) -> RealizationReport:
        if r.space != self.statspace:
            raise MalformedCertificateError("realization for a different space")
        if not (len(r.left_pieces) == len(r.right_pieces) == len(r.moves)):
            raise MalformedCertificateError("piece and move counts differ")
        order = self.statspace.monoid.order
        for s, t in r.moves:
            if not (0 <= s < order and 0 <= t < order):
                raise MalformedCertificateError(f"mover ({s},{t}) out of range")
        for v in (r.left_whole, r.right_whole) + r.left_pieces + r.right_pieces:
            if v.n != self.n:
                raise MalformedCertificateError("piece has wrong dimension")
        problems: List[str] = []
        left_sum = ExtVec.from_vec(zero_vec(self.n))
        for p in r.left_pieces:
            left_sum = left_sum.add(p)
        if left_sum != r.left_whole:
            problems.append("left pieces do not sum to the left whole")
        right_sum = ExtVec.from_vec(zero_vec(self.n))
        for q in r.right_pieces:
            right_sum = right_sum.add(q)
        if right_sum != r.right_whole:
            problems.append("right pieces do not sum to the right whole")
        for j, ((s, t), pj, qj) in enumerate(
            zip(r.moves, r.left_pieces, r.right_pieces)
        ):
            lhs = self._act_vec(s, pj)
            rhs = self._act_vec(t, qj)
            if lhs != rhs:
                problems.append(
                    f"move equation fails at piece {j}: "
                    f"{lhs} != {rhs} under movers ({s},{t})"
                )
        return RealizationReport(ok=not problems, problems=problems)

    def _act_vec(self, s: int, v: ExtVec) -> ExtVec:
        amap = self._atom_maps[s]
        fin = tuple(
            0 if amap[b] in v.omega else v.finite[amap[b]] for b in range(self.n)
        )
        omega = frozenset(b for b in range(self.n) if amap[b] in v.omega)
        return ExtVec(fin, omega)

    def step_realization(self, start: Vec, rel_index: int, direction: int) -> Realization:
        """The two-piece realization of a single rewrite step."""
        rel = self.relations[rel_index]
        unit = self.statspace.monoid.unit
        if direction == 1:
            if not vec_geq(start, rel.lhs):
                raise MalformedCertificateError("step does not apply")
            end = vec_add(vec_sub(start, rel.lhs), rel.rhs)
            rest = vec_sub(start, rel.lhs)
            return Realization(
                space=self.statspace,
                left_whole=ExtVec.from_vec(start),
                right_whole=ExtVec.from_vec(end),
                left_pieces=(ExtVec.from_vec(rel.lhs), ExtVec.from_vec(rest)),
                right_pieces=(ExtVec.from_vec(rel.rhs), ExtVec.from_vec(rest)),
                moves=((rel.mover, unit), (unit, unit)),
            )
        if not vec_geq(start, rel.rhs):
            raise MalformedCertificateError("reverse step does not apply")
        end = vec_add(vec_sub(start, rel.rhs), rel.lhs)
        rest = vec_sub(start, rel.rhs)
        return Realization(
            space=self.statspace,
            left_whole=ExtVec.from_vec(start),
            right_whole=ExtVec.from_vec(end),
            left_pieces=(ExtVec.from_vec(rel.rhs), ExtVec.from_vec(rest)),
            right_pieces=(ExtVec.from_vec(rel.lhs), ExtVec.from_vec(rest)),
            moves=((unit, rel.mover), (unit, unit)),
        )

    def realizations_from_path(
        self, start: Vec, steps: Sequence[Tuple[int, int]]
    ) -> List[Realization]:
        """One realization per rewrite step, chained end to end."""
        out: List[Realization] = []
        cur = tuple(start)
        for rel_index, direction in steps:
            r = self.step_realization(cur, rel_index, direction)
            out.append(r)
            cur = r.right_whole.finite
        return out

    # ----- soundness audit --------------------------------------------------------

    def audit_decisions(self) -> Dict[str, int]:
        """Re-verify every logged definite decision; raises on any violation.

        Functional witnesses must annihilate all relation differences and
        separate the inputs; path and domination witnesses must replay
        into realizations that verify syntactically.
        """
        counts = {"functional": 0, "path": 0, "domination": 0, "other": 0}
        for entry in self.audit_log:
            w = entry.decision.witness
            kind = w.get("kind")
            if kind == "functional":
                y = w["y"]
                for rel in self.relations:
                    s = sum(y[i] * (rel.lhs[i] - rel.rhs[i]) for i in range(self.n))
                    assert s == 0, "functional fails to annihilate a relation"
                if w.get("nonnegative"):
                    assert all(c >= 0 for c in y), "order functional has negative entry"
                counts["functional"] += 1
            elif kind == "path":
                self._audit_path(w["start"], w["steps"], w["end"])
                counts["path"] += 1
            elif kind == "domination":
                m = w["u"]
                top = w["w"]
                assert vec_geq(top, m), "dominating member does not dominate"
                assert vec_add(m, w["gamma"]) == tuple(top), "gamma mismatch"
                if w["path_left"]:
                    self._audit_path(entry.left.finite, w["path_left"], m)
                if w["path_right"]:
                    self._audit_path(entry.right.finite, w["path_right"], top)
                counts["domination"] += 1
            elif kind == "omega_equal" and w["finite"].get("kind") == "path":
                inner = w["finite"]
                self._audit_path(inner["start"], inner["steps"], inner["end"])
                counts["path"] += 1
            else:
                counts["other"] += 1
        return counts

    def _audit_path(self, start, steps, end) -> None:
        cur = tuple(start)
        for r in self.realizations_from_path(start, steps):
            rep = self.verify_realization(r)
            assert rep.ok, f"step realization failed: {rep.problems}"
            assert r.left_whole.finite == cur
            cur = r.right_whole.finite
        assert cur == tuple(end), "path does not reach its claimed endpoint"


def morphism_type_map(
    m: StatMorphism,
    source_engine: TypeEngine,
    target_engine: TypeEngine,
) -> Callable[[TarskiType], TarskiType]:
    """The contravariant map on types induced by taking preimages."""
    if m.source != source_engine.statspace or m.target != target_engine.statspace:
        raise SpaceMismatchError("engines do not match the morphism endpoints")
    n_src = source_engine.n
    tgt_atom = tuple(
        m.target.space.atom_of_point(m.point_map[next(iter(m.source.space.atoms[a]))])
        for a in range(n_src)
    )

    def on_types(beta: TarskiType) -> TarskiType:
        v = target_engine._vec(beta)
        fin = tuple(
            0 if tgt_atom[a] in v.omega else v.finite[tgt_atom[a]]
            for a in range(n_src)
        )
        omega = frozenset(a for a in range(n_src) if tgt_atom[a] in v.omega)
        return source_engine.type_of_abar(ExtVec(fin, omega))

    return on_types
