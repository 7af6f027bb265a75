import itertools

import pytest

from typemonoid.congruence import EQUAL, LEQ, NOT_EQUAL, NOT_LEQ, ExtVec
from typemonoid.corpus import (
    collapse_space,
    cyclic4_space,
    one_point_space,
    parity_space,
    random_corpus,
)
from typemonoid.errors import ContractError
from typemonoid.lattice import (
    IdempotentElement,
    IdempotentLattice,
    LatticeError,
    canonical_idempotent,
    check_distributive,
    complete_isotropy,
    embed,
    enumerate_idempotents,
    grothendieck_diff,
    idempotent_of,
    isotropy_decompose,
    join_idempotents,
    m3_fixture,
    meet_by_realizations,
    quantity_add,
    quantity_eq,
    quantity_neg,
    quantity_zero,
)
from typemonoid.types import TypeEngine


def engine_and_lattice(ss):
    eng = TypeEngine(ss)
    return eng, enumerate_idempotents(eng)


def by_support(lat, *atoms):
    return next(e for e in lat if e.omega_support == frozenset(atoms))


class TestEnumerate:
    def test_one_point_chain(self):
        eng, lat = engine_and_lattice(one_point_space())
        assert len(lat) == 2
        assert lat.bottom.omega_support == frozenset()
        assert lat.top.omega_support == frozenset({0})

    def test_parity_diamond(self):
        eng, lat = engine_and_lattice(parity_space())
        assert len(lat) == 4
        supports = {e.omega_support for e in lat}
        assert supports == {
            frozenset(),
            frozenset({0, 2}),
            frozenset({1, 3}),
            frozenset({0, 1, 2, 3}),
        }
        e_even = by_support(lat, 0, 2)
        e_odd = by_support(lat, 1, 3)
        assert not lat.leq(e_even, e_odd) and not lat.leq(e_odd, e_even)

    def test_collapse_chain(self):
        eng, lat = engine_and_lattice(collapse_space())
        assert len(lat) == 2
        assert lat.top.omega_support == frozenset({0, 1})

    def test_cyclic_chain(self):
        eng, lat = engine_and_lattice(cyclic4_space())
        assert len(lat) == 2

    def test_idempotent_laws(self):
        eng, lat = engine_and_lattice(parity_space())
        for e in lat:
            t = eng.type_of_abar(eng.abar((0,) * eng.n, e.omega_support))
            for k in range(2, 5):
                assert eng.decide_equal(eng.type_scale(k, t), t).verdict == EQUAL


class TestMeetJoin:
    def test_bound_laws(self):
        eng, lat = engine_and_lattice(parity_space())
        for e in lat:
            assert lat.meet(e, lat.top) == e
            assert lat.join(e, lat.bottom) == e
            assert lat.meet(e, e) == e

    def test_parity_diamond_ops(self):
        eng, lat = engine_and_lattice(parity_space())
        e_even = by_support(lat, 0, 2)
        e_odd = by_support(lat, 1, 3)
        assert lat.meet(e_even, e_odd) == lat.bottom
        assert lat.join(e_even, e_odd) == lat.top

    def test_join_is_sum(self):
        for ss in (parity_space(), collapse_space(), cyclic4_space()):
            eng, lat = engine_and_lattice(ss)
            for e in lat:
                for f in lat:
                    assert join_idempotents(eng, lat, e, f) == lat.join(e, f)

    def test_meet_universal_property(self):
        eng, lat = engine_and_lattice(parity_space())
        for e in lat:
            for f in lat:
                m = lat.meet(e, f)
                assert lat.leq(m, e) and lat.leq(m, f)
                for g in lat:
                    if lat.leq(g, e) and lat.leq(g, f):
                        assert lat.leq(g, m)

    def test_meet_oracle_agreement(self):
        for ss in (parity_space(), collapse_space(), one_point_space()):
            eng, lat = engine_and_lattice(ss)
            for e in lat:
                for f in lat:
                    got = meet_by_realizations(eng, e, f, lattice=lat)
                    assert got == lat.meet(e, f), (ss.space.atom_labels, e, f)


class TestDistributive:
    def test_parity_and_chains(self):
        for ss in (parity_space(), collapse_space(), cyclic4_space(), one_point_space()):
            eng, lat = engine_and_lattice(ss)
            ok, why = check_distributive(lat)
            assert ok, why

    def test_m3_counterexample(self):
        ok, why = check_distributive(m3_fixture())
        assert not ok
        assert why["law"] in ("meet-over-join", "join-over-meet")

    def test_from_order_rejects_non_lattice(self):
        # two maximal elements: no top, join undefined
        with pytest.raises(LatticeError):
            IdempotentLattice.from_order(["a", "b"], [])

    def test_dot_export(self):
        eng, lat = engine_and_lattice(parity_space())
        dot = lat.to_dot()
        assert dot.count("->") == 4
        assert "w[0,2]" in dot


class TestIdempotentOf:
    def test_finite_vector_scale_zero(self):
        eng, lat = engine_and_lattice(parity_space())
        assert idempotent_of(eng, lat, eng.abar((2, 1, 0, 0))) == lat.bottom

    def test_parity_mixed(self):
        eng, lat = engine_and_lattice(parity_space())
        got = idempotent_of(eng, lat, eng.abar((0, 1, 0, 0), omega={0, 2}))
        assert got == by_support(lat, 0, 2)

    def test_top(self):
        eng, lat = engine_and_lattice(parity_space())
        assert idempotent_of(eng, lat, eng.abar((0,) * 4, omega=range(4))) == lat.top

    def test_null_support_canonicalizes_to_bottom(self):
        eng, lat = engine_and_lattice(collapse_space())
        assert idempotent_of(eng, lat, eng.abar((0, 0), omega={1})) == lat.bottom
        assert canonical_idempotent(eng, lat, frozenset({1})) == lat.bottom


class TestIsotropy:
    def test_zero(self):
        eng, lat = engine_and_lattice(parity_space())
        e, cert = isotropy_decompose(eng, lat, eng.abar_zero())
        assert e == lat.bottom and cert.ok

    def test_parity_cells(self):
        eng, lat = engine_and_lattice(parity_space())
        e_even = by_support(lat, 0, 2)
        e, cert = isotropy_decompose(eng, lat, eng.abar((0, 1, 0, 0), omega={0, 2}))
        assert e == e_even and cert.ok
        e, _ = isotropy_decompose(eng, lat, eng.abar((0,) * 4, omega=range(4)))
        assert e == lat.top

    def test_every_type_lands_in_exactly_one_cell(self):
        eng, lat = engine_and_lattice(parity_space())
        samples = [eng.abar(v) for v in [(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (2, 0, 1, 0)]]
        samples += [eng.abar((0, 1, 0, 0), omega={0}), eng.abar((0,) * 4, omega={1, 3})]
        for p in samples:
            t = eng.type_of_abar(p)
            cells = []
            for e in lat:
                above = eng.decide_leq(
                    eng.abar((0,) * eng.n, e.omega_support), t
                ).verdict == LEQ
                finer = any(
                    eng.decide_leq(eng.abar((0,) * eng.n, f.omega_support), t).verdict == LEQ
                    for f in lat.strictly_above(e)
                )
                if above and not finer:
                    cells.append(e)
            assert len(cells) == 1
            assert cells[0] == isotropy_decompose(eng, lat, p)[0]

    def test_cancellativity_within_cell(self):
        eng, lat = engine_and_lattice(parity_space())
        # all at scale bottom, classes tracked exactly by (evens, odds) counts
        triples = itertools.product([(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0)], repeat=3)
        for a, b, c in triples:
            ac = eng.abar(a) + eng.abar(c)
            bc = eng.abar(b) + eng.abar(c)
            if eng.decide_equal(ac, bc).verdict == EQUAL:
                assert eng.decide_equal(eng.abar(a), eng.abar(b)).verdict == EQUAL

    def test_unit_law_of_cell(self):
        eng, lat = engine_and_lattice(parity_space())
        e_even = by_support(lat, 0, 2)
        a = eng.abar((0, 2, 0, 0), omega={0, 2})  # at scale e_even
        ae = a + eng.abar((0,) * 4, e_even.omega_support)
        assert eng.decide_equal(a, ae).verdict == EQUAL

    def test_idempotent_between_iff_absorbed(self):
        # a + b = b exactly when some idempotent separates a from b
        eng, lat = engine_and_lattice(parity_space())
        vecs = [
            eng.abar((1, 0, 0, 0)),
            eng.abar((0, 2, 0, 0)),
            eng.abar((0, 1, 0, 0), omega={0, 2}),
            eng.abar((0,) * 4, omega={0, 2}),
            eng.abar((0,) * 4, omega=range(4)),
        ]
        for a, b in itertools.product(vecs, repeat=2):
            absorbed = eng.decide_equal(a + b, b).verdict == EQUAL
            ta, tb = eng.type_of_abar(a), eng.type_of_abar(b)
            between = any(
                eng.decide_leq(ta, eng.type_of_abar(eng.abar((0,) * 4, e.omega_support))).verdict == LEQ
                and eng.decide_leq(eng.abar((0,) * 4, e.omega_support), tb).verdict == LEQ
                for e in lat
            )
            assert absorbed == between, (a.vec, b.vec)


class TestCompleteIsotropy:
    def test_one_point(self):
        eng, lat = engine_and_lattice(one_point_space())
        comp = complete_isotropy(lat, lat.bottom)
        assert comp.infinities == (lat.top,)

    def test_parity(self):
        eng, lat = engine_and_lattice(parity_space())
        assert set(complete_isotropy(lat, lat.bottom).infinities) == {
            by_support(lat, 0, 2),
            by_support(lat, 1, 3),
        }
        assert complete_isotropy(lat, by_support(lat, 0, 2)).infinities == (lat.top,)
        assert complete_isotropy(lat, lat.top).infinities == ()


class TestQuantity:
    def test_grothendieck_cancellation(self):
        eng, lat = engine_and_lattice(parity_space())
        x = grothendieck_diff(eng, lat, eng.abar((2, 1, 0, 0)), eng.abar((1, 1, 0, 0)))
        y = grothendieck_diff(eng, lat, eng.abar((1, 0, 0, 0)), eng.abar_zero())
        assert quantity_eq(eng, x, y).verdict == EQUAL

    def test_cross_scale_rejected(self):
        eng, lat = engine_and_lattice(parity_space())
        with pytest.raises(ContractError):
            grothendieck_diff(
                eng, lat, eng.abar((1, 0, 0, 0)), eng.abar((0,) * 4, omega={0, 2})
            )

    def test_scale_mismatch_not_equal(self):
        eng, lat = engine_and_lattice(parity_space())
        x = embed(eng, lat, eng.abar((1, 0, 0, 0)))
        y = embed(eng, lat, eng.abar((0,) * 4, omega={0, 2}))
        d = quantity_eq(eng, x, y)
        assert d.verdict == NOT_EQUAL and d.witness["kind"] == "scale"

    def test_group_axioms_scale_zero(self):
        eng, lat = engine_and_lattice(parity_space())
        vals = [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0)]
        elems = [
            grothendieck_diff(eng, lat, eng.abar(a), eng.abar(b))
            for a, b in itertools.product(vals, repeat=2)
        ]
        zero = quantity_zero(eng, lat.bottom)
        for x in elems[:4]:
            assert quantity_eq(eng, quantity_add(eng, lat, x, zero), x).verdict == EQUAL
            inv = quantity_add(eng, lat, x, quantity_neg(x))
            assert quantity_eq(eng, inv, zero).verdict == EQUAL
        for x, y in itertools.combinations(elems[:4], 2):
            lhs = quantity_add(eng, lat, x, y)
            rhs = quantity_add(eng, lat, y, x)
            assert quantity_eq(eng, lhs, rhs).verdict == EQUAL
        x, y, z = elems[0], elems[3], elems[5]
        lhs = quantity_add(eng, lat, quantity_add(eng, lat, x, y), z)
        rhs = quantity_add(eng, lat, x, quantity_add(eng, lat, y, z))
        assert quantity_eq(eng, lhs, rhs).verdict == EQUAL

    def test_regularity(self):
        eng, lat = engine_and_lattice(parity_space())
        x = grothendieck_diff(eng, lat, eng.abar((2, 0, 0, 0)), eng.abar((0, 1, 0, 0)))
        back = quantity_add(eng, lat, quantity_add(eng, lat, x, quantity_neg(x)), x)
        assert quantity_eq(eng, back, x).verdict == EQUAL

    def test_cross_scale_addition_coarsens(self):
        eng, lat = engine_and_lattice(parity_space())
        x = embed(eng, lat, eng.abar((0, 1, 0, 0), omega={0, 2}))
        y = embed(eng, lat, eng.abar((1, 0, 0, 0), omega={1, 3}))
        s = quantity_add(eng, lat, x, y)
        assert s.scale == lat.top
        assert quantity_eq(eng, s, quantity_zero(eng, lat.top)).verdict == EQUAL

    def test_embed_additive(self):
        eng, lat = engine_and_lattice(parity_space())
        samples = [
            eng.abar((1, 0, 0, 0)),
            eng.abar((0, 2, 0, 0)),
            eng.abar((0, 1, 0, 0), omega={0, 2}),
            eng.abar((0,) * 4, omega={1, 3}),
        ]
        for a, b in itertools.product(samples, repeat=2):
            lhs = embed(eng, lat, a + b)
            rhs = quantity_add(eng, lat, embed(eng, lat, a), embed(eng, lat, b))
            assert quantity_eq(eng, lhs, rhs).verdict == EQUAL

    def test_embed_injective_on_samples(self):
        eng, lat = engine_and_lattice(parity_space())
        samples = [
            eng.abar((0, 0, 0, 0)),
            eng.abar((1, 0, 0, 0)),
            eng.abar((0, 1, 0, 0)),
            eng.abar((1, 1, 0, 0)),
            eng.abar((2, 0, 0, 0)),
            eng.abar((0, 1, 0, 0), omega={0, 2}),
            eng.abar((0,) * 4, omega={0, 2}),
            eng.abar((0,) * 4, omega=range(4)),
        ]
        for a, b in itertools.combinations(samples, 2):
            same_type = eng.decide_equal(a, b).verdict == EQUAL
            same_embed = quantity_eq(
                eng, embed(eng, lat, a), embed(eng, lat, b)
            ).verdict == EQUAL
            assert same_type == same_embed, (a.vec, b.vec)


class TestCorpusLattices:
    def test_small_corpus_lattices_distributive(self):
        entries = [e for e in random_corpus(count=30) if e.statspace.n_atoms <= 4][:12]
        assert len(entries) >= 8
        for entry in entries:
            eng = TypeEngine(entry.statspace)
            lat = enumerate_idempotents(eng)
            ok, why = check_distributive(lat)
            assert ok, (entry.name, why)
            for e in lat:
                for f in lat:
                    assert join_idempotents(eng, lat, e, f) == lat.join(e, f)

    def test_meet_oracle_on_tiny_corpus(self):
        entries = [e for e in random_corpus(count=30) if e.statspace.n_atoms <= 3][:6]
        for entry in entries:
            eng = TypeEngine(entry.statspace)
            lat = enumerate_idempotents(eng)
            for e in lat:
                for f in lat:
                    got = meet_by_realizations(eng, e, f, lattice=lat)
                    assert got == lat.meet(e, f), (entry.name, e, f)
