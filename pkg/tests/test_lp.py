from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from typemonoid.lp import exact_lp_feasible, rational_kernel_basis


F = Fraction


class TestFeasible:
    def test_single_pinned_variable(self):
        res = exact_lp_feasible(1, equalities=[((1,), 1)])
        assert res.feasible
        assert res.point == (F(1),)

    def test_symmetry_forced_half(self):
        res = exact_lp_feasible(
            2, equalities=[((1, 1), 1), ((1, -1), 0)]
        )
        assert res.feasible
        assert res.point == (F(1, 2), F(1, 2))

    def test_infeasible_with_certificate(self):
        res = exact_lp_feasible(
            1, ge_inequalities=[((1,), 1)], le_inequalities=[((1,), 0)]
        )
        assert not res.feasible
        assert res.farkas is not None
        y_ge, y_le = res.farkas
        assert y_ge >= 0 and y_le <= 0
        # aggregated: (y_ge + y_le) x >= y_ge * 1 + y_le * 0 must be absurd
        assert y_ge + y_le <= 0
        assert y_ge * 1 + y_le * 0 > 0

    def test_inequalities_slack(self):
        res = exact_lp_feasible(
            2,
            ge_inequalities=[((1, 0), 2)],
            le_inequalities=[((1, 1), 5)],
        )
        assert res.feasible
        x = res.point
        assert x[0] >= 2 and x[0] + x[1] <= 5 and all(v >= 0 for v in x)

    def test_zero_variables_trivial(self):
        assert exact_lp_feasible(0).feasible

    def test_equality_negative_rhs(self):
        # x >= 0 cannot give a negative sum
        res = exact_lp_feasible(2, equalities=[((1, 1), -1)])
        assert not res.feasible


def fraction_strategy():
    return st.integers(-4, 4).map(F)


@st.composite
def random_system(draw):
    n = draw(st.integers(1, 4))
    n_eq = draw(st.integers(0, 3))
    n_ge = draw(st.integers(0, 3))
    n_le = draw(st.integers(0, 3))
    def rows(k):
        return [
            (
                [draw(fraction_strategy()) for _ in range(n)],
                draw(fraction_strategy()),
            )
            for _ in range(k)
        ]
    return n, rows(n_eq), rows(n_ge), rows(n_le)


class TestRandomSystems:
    @given(random_system())
    @settings(max_examples=120, deadline=None)
    def test_verdict_is_self_certifying(self, sys_):
        n, eq, ge, le = sys_
        res = exact_lp_feasible(n, eq, ge, le)
        if res.feasible:
            x = res.point
            assert all(v >= 0 for v in x)
            for coeffs, b in eq:
                assert sum(c * v for c, v in zip(coeffs, x)) == b
            for coeffs, b in ge:
                assert sum(c * v for c, v in zip(coeffs, x)) >= b
            for coeffs, b in le:
                assert sum(c * v for c, v in zip(coeffs, x)) <= b
        else:
            y = res.farkas
            assert y is not None
            rows = list(eq) + list(ge) + list(le)
            assert len(y) == len(rows)
            for i, yi in enumerate(y[len(eq):len(eq) + len(ge)]):
                assert yi >= 0
            for yi in y[len(eq) + len(ge):]:
                assert yi <= 0
            agg = [F(0)] * n
            agg_rhs = F(0)
            for yi, (coeffs, b) in zip(y, rows):
                for j, c in enumerate(coeffs):
                    agg[j] += yi * F(c)
                agg_rhs += yi * F(b)
            assert all(a <= 0 for a in agg)
            assert agg_rhs > 0


class TestKernelBasis:
    def test_simple_kernel(self):
        basis = rational_kernel_basis([(F(1), F(-1))], 2)
        assert len(basis) == 1
        y = basis[0]
        assert y[0] == y[1] != 0

    def test_full_kernel_when_no_rows(self):
        basis = rational_kernel_basis([], 3)
        assert len(basis) == 3

    def test_zero_kernel(self):
        rows = [(F(1), F(0)), (F(0), F(1))]
        assert rational_kernel_basis(rows, 2) == []

    @given(
        st.lists(
            st.tuples(*[st.integers(-3, 3)] * 3).map(
                lambda t: tuple(F(v) for v in t)
            ),
            max_size=4,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_basis_vectors_annihilate(self, rows):
        basis = rational_kernel_basis(rows, 3)
        for y in basis:
            assert any(v != 0 for v in y)
            for row in rows:
                assert sum(a * b for a, b in zip(row, y)) == 0
        # dimension law: rank + nullity = 3
        rank = 3 - len(basis)
        assert 0 <= rank <= min(3, len(rows)) or not rows
