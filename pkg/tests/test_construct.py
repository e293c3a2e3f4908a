import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsalg.catalog import CatalogId, check_homomorphism, generate, identify
from lsalg.construct import (
    ExtendedSpec,
    NotALieAlgebra,
    PairSpec,
    PairVerdict,
    algebra_from_extended,
    algebra_from_inner_product,
    algebra_from_pair,
    classify_extended,
    identity_violations,
    lie_bracket_from_pair,
    matrix_representation,
    normalized_basis_for_functional,
    spec_from_inner_product,
)
from lsalg.core import SymBilinearForm, basis_vector, is_left_symmetric, multiply
from lsalg.linalg import Matrix, dot
from lsalg.scalar import ONE, ZERO, Scalar

from oracles import identity_oracle
from spec_factory import CASES, mutate, random_case_spec
from strategies import vectors


def e(n, i):
    return basis_vector(n, i)


def products(a):
    return {(i + 1, j + 1, k + 1): v for i, j, k, v in a.nonzero()}


class TestPairRule:
    def test_left_identity_type(self):
        a, verdict = algebra_from_pair(PairSpec(f=(0, 0, 0), g=(1, 0, 0)))
        assert verdict is PairVerdict.LEFT_SYMMETRIC_ASSOCIATIVE
        assert a == generate(CatalogId("AssocL"), 3)

    def test_both_nonzero(self):
        a, verdict = algebra_from_pair(PairSpec(f=(1, 0), g=(1, 0)))
        assert verdict is PairVerdict.NOT_LEFT_SYMMETRIC
        assert not is_left_symmetric(a)

    def test_dimension_one_rejected(self):
        with pytest.raises(ValueError):
            PairSpec(f=(1,), g=(0,))

    def test_zero_pair_is_trivial(self):
        a, verdict = algebra_from_pair(PairSpec(f=(0, 0), g=(0, 0)))
        assert a.is_zero() and verdict is PairVerdict.LEFT_SYMMETRIC_ASSOCIATIVE

    @given(st.integers(2, 4).flatmap(lambda n: st.tuples(vectors(n), vectors(n))), st.booleans(),
           st.booleans())
    def test_verdict_matches_exact_check(self, fg, kill_f, kill_g):
        f, g = fg
        if kill_f:
            f = (ZERO,) * len(f)
        if kill_g:
            g = (ZERO,) * len(g)
        a, verdict = algebra_from_pair(PairSpec(f=f, g=g))
        assert (verdict is PairVerdict.LEFT_SYMMETRIC_ASSOCIATIVE) == is_left_symmetric(a)
        x, y = e(len(f), 1), e(len(f), len(f))
        assert multiply(a, x, y) == tuple(dot(f, y) * p + dot(g, x) * q for p, q in zip(x, y))


class TestNormalizedBasis:
    def test_scaled_first_coordinate(self):
        t = normalized_basis_for_functional((2, 0, 0))
        assert t.col(0) == (Scalar("1/2"), ZERO, ZERO)

    def test_second_coordinate(self):
        assert normalized_basis_for_functional((0, 1)).col(0) == (ZERO, ONE)

    @given(st.integers(1, 5).flatmap(vectors))
    def test_defining_property(self, g):
        if not any(g):
            with pytest.raises(ValueError):
                normalized_basis_for_functional(g)
            return
        t = normalized_basis_for_functional(g)
        assert t.is_invertible()
        assert [dot(g, col) for col in t.columns()] == [ONE] + [ZERO] * (len(g) - 1)

    def test_sum_functional(self):
        t = normalized_basis_for_functional((1, 1))
        assert dot((1, 1), t.col(0)) == ONE and dot((1, 1), t.col(1)) == ZERO


class TestMatrixRepresentation:
    @pytest.mark.parametrize("n", range(2, 9))
    @pytest.mark.parametrize("side, family", [("left", "AssocL"), ("right", "AssocR")])
    def test_products_mirror_algebra(self, n, side, family):
        mats = matrix_representation(n, side)
        a = generate(CatalogId(family), n)
        for i in range(n):
            for j in range(n):
                expected = Matrix.zeros(n)
                for k, v in enumerate(a.c[i][j]):
                    if v:
                        expected = expected + mats[k].scale(v)
                assert mats[i] @ mats[j] == expected

    def test_small_cases(self):
        l11, l12 = matrix_representation(2, "left")
        assert l11 @ l12 == l12
        r11, r21 = matrix_representation(2, "right")
        assert r21 @ r11 == r21
        assert (l12 @ l12).is_zero()

    def test_rejects_n1(self):
        with pytest.raises(ValueError):
            matrix_representation(1)


class TestLieBracketFromPair:
    def test_standard_bracket(self):
        lie = lie_bracket_from_pair((1, 0), (-1, 0))
        assert lie.bracket(e(2, 1), e(2, 2)) == e(2, 2)

    def test_zero(self):
        assert lie_bracket_from_pair((0, 0), (0, 0)).is_abelian()

    def test_failure(self):
        with pytest.raises(NotALieAlgebra):
            lie_bracket_from_pair((1, 0), (1, 0))

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(vectors(n), vectors(n))), st.booleans())
    def test_iff_opposite(self, fg, force):
        f, g = fg
        if force:
            g = tuple(-v for v in f)
        opposite = all(a + b == ZERO for a, b in zip(f, g))
        try:
            lie_bracket_from_pair(f, g)
            ok = True
        except NotALieAlgebra:
            ok = False
        assert ok == opposite


class TestExtended:
    def test_single_square(self):
        spec = ExtendedSpec(f=(0, 0), g=(0, 0), h=SymBilinearForm(Matrix([[1, 0], [0, 0]])), c=(0, 1))
        assert products(algebra_from_extended(spec)) == {(1, 1, 2): ONE}

    def test_zero_form_rejected(self):
        with pytest.raises(ValueError):
            ExtendedSpec(f=(0, 0), g=(0, 0), h=SymBilinearForm.zero(2), c=(1, 0))

    def test_zero_c_rejected(self):
        with pytest.raises(ValueError):
            ExtendedSpec(f=(0, 0), g=(0, 0), h=SymBilinearForm(Matrix.identity(2)), c=(0, 0))

    def case7(self):
        return ExtendedSpec(f=(1, 0), g=(2, 0), h=SymBilinearForm(Matrix([[-1, 0], [0, 0]])), c=(1, 0))

    def test_case7_products(self):
        assert products(algebra_from_extended(self.case7())) == {
            (1, 1, 1): Scalar(2), (1, 2, 2): ONE, (2, 1, 2): Scalar(2)}

    def test_case7_verdict(self):
        v = classify_extended(self.case7())
        assert v.case == 7 and v.alpha == Scalar(2)

    def test_case1_verdict(self):
        spec = ExtendedSpec(f=(0, 0, 0), g=(0, 0, 0),
                            h=SymBilinearForm(Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])), c=(0, 0, 1))
        assert classify_extended(spec).case == 1

    def test_case3_verdict(self):
        h = Matrix([[1, 0, 0], [0, 1, 1], [0, 1, 3]])
        c = (1, 1, 0)
        hc = h @ c
        spec = ExtendedSpec(f=hc, g=(0, 0, 0), h=SymBilinearForm(h), c=c)
        assert classify_extended(spec).case == 3

    @pytest.mark.parametrize("case", CASES)
    def test_random_specs_match_exact_check(self, case):
        rng = random.Random(100 + case)
        for k in range(30):
            spec, _ = random_case_spec(case, 2 + k % 4, rng)
            v = classify_extended(spec)
            assert v.case == case
            assert is_left_symmetric(algebra_from_extended(spec))


@pytest.mark.parametrize("case", CASES)
def test_mutations_rejected_and_oracle_agrees(case):
    rng = random.Random(case)
    oracle_rng = random.Random(1000 + case)
    seen = 0
    for k in range(40):
        spec, _ = random_case_spec(case, 2 + k % 4, rng)
        bad = mutate(spec, rng)
        if bad is None:
            continue
        violated = set(identity_violations(bad))
        assert violated == identity_oracle(bad, oracle_rng, samples=12)
        v = classify_extended(bad)
        assert (v.case is None) == bool(violated)
        assert v.left_symmetric == is_left_symmetric(algebra_from_extended(bad))
        if v.outside_cases:
            assert bad.dim == 2
        seen += bool(violated)
    assert seen > 0


class TestPlaneExceptions:
    """Data violating the identities can still give a left-symmetric product when n = 2."""

    SPEC = ExtendedSpec(f=(0, -2), g=(0, 2), h=SymBilinearForm(Matrix([[0, 2], [2, -8]])), c=(-1, 0))

    def test_product_by_hand(self):
        # e2 e1 = -4 e1, e2 e2 = 8 e1, every other product vanishes
        a = algebra_from_extended(self.SPEC)
        assert products(a) == {(2, 1, 1): Scalar(-4), (2, 2, 1): Scalar(8)}
        assert is_left_symmetric(a)

    def test_verdict(self):
        v = classify_extended(self.SPEC)
        assert v.case is None and v.outside_cases and v.left_symmetric
        assert set(v.violated) == {"g_c_balance", "h_proportionality"}
        assert v.tag == "LeftSymmetricOutsideCases"

    def test_no_normal_form(self):
        with pytest.raises(ValueError):
            identify(self.SPEC)

    def test_only_in_the_plane(self):
        rng = random.Random(77)
        for case in CASES:
            for k in range(60):
                spec, _ = random_case_spec(case, 3 + k % 3, rng)
                bad = mutate(spec, rng)
                if bad is not None:
                    assert not classify_extended(bad).outside_cases


class TestInnerProduct:
    def test_first_basis_vector(self):
        a = algebra_from_inner_product((1, 0))
        assert products(a) == {(1, 1, 1): Scalar(2), (1, 2, 2): ONE, (2, 2, 1): ONE}
        assert a == generate(CatalogId("A3_1"), 2)

    @given(st.integers(2, 5).flatmap(vectors))
    def test_always_left_symmetric(self, a):
        if not any(a):
            return
        alg = algebra_from_inner_product(a)
        assert is_left_symmetric(alg)
        assert alg == algebra_from_extended(spec_from_inner_product(a))

    def test_sum_vector_is_simple_form(self):
        spec = spec_from_inner_product((1, 1))
        ident = identify(spec)
        assert ident.catalog_id == CatalogId("A3_1")
        assert check_homomorphism(algebra_from_extended(spec), generate(CatalogId("A3_1"), 2),
                                  ident.witness)

    @pytest.mark.parametrize("a", [(1, 1j), (1, 0, 0)])
    def test_isotropic_and_not(self, a):
        a = tuple(Scalar(0, 1) if v == 1j else Scalar(v) for v in a)
        spec = spec_from_inner_product(a)
        expected = "A3_3" if dot(a, a) == ZERO else "A3_1"
        assert identify(spec).catalog_id.family == expected
