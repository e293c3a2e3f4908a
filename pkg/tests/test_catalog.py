import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsalg.catalog import (
    EXACT_FIELDS,
    CatalogError,
    CatalogId,
    IsoKind,
    are_isomorphic,
    catalog_ids,
    check_homomorphism,
    exceptional_witness,
    fingerprint,
    first_difference,
    generate,
    identify,
    match_catalog,
    normal_basis,
    parse_catalog_id,
)
from lsalg.construct import ExtendedSpec, algebra_from_extended, algebra_from_inner_product
from lsalg.core import Algebra, NotLeftSymmetricError, SymBilinearForm, is_left_symmetric
from lsalg.linalg import Matrix
from lsalg.scalar import ONE, Scalar

from spec_factory import CASES, random_case_spec, random_invertible
from strategies import invertible_matrices


def products(a):
    return {(i + 1, j + 1, k + 1): v for i, j, k, v in a.nonzero()}


class TestGenerate:
    def test_a31_plane(self):
        assert products(generate(CatalogId("A3_1"), 2)) == {
            (1, 1, 1): Scalar(2), (1, 2, 2): ONE, (2, 2, 1): ONE}

    def test_a2_space(self):
        assert products(generate(CatalogId("A2"), 3)) == {(1, 1, 1): ONE}

    @pytest.mark.parametrize("bad", [("A4_lambda", 2), ("A4_lambda", 1), ("A7_alpha", 0)])
    def test_excluded_parameters(self, bad):
        with pytest.raises(CatalogError):
            CatalogId(bad[0], Scalar(bad[1]))

    @pytest.mark.parametrize("fam, k, n", [("A1", 2, 2), ("A3_2", 1, 2), ("A5", -1, 3), ("A3_3", 3, 4)])
    def test_k_out_of_range(self, fam, k, n):
        with pytest.raises(CatalogError):
            generate(CatalogId(fam, k), n)

    def test_dimension_one(self):
        with pytest.raises(CatalogError):
            generate(CatalogId("A2"), 1)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_all_left_symmetric(self, n):
        for cid in catalog_ids(n, include_a1_zero=True):
            assert is_left_symmetric(generate(cid, n)), cid

    def test_lie_family_is_lie(self):
        lie = generate(CatalogId("Lie24"), 4)
        assert not lie.is_abelian()

    @pytest.mark.parametrize("n", [2, 4])
    def test_cli_name_round_trip(self, n):
        for cid in catalog_ids(n, include_lie=True, include_a1_zero=True):
            assert parse_catalog_id(cid.cli_name) == cid

    @pytest.mark.parametrize("text", ["a9", "a3.2", "a2:1", "a4:x", "a7:0", "a1:one"])
    def test_parse_errors(self, text):
        with pytest.raises(CatalogError):
            parse_catalog_id(text)

    def test_a1_zero_is_trivial(self):
        assert generate(CatalogId("A1", 0), 3) == generate(CatalogId("Trivial"), 3)


class TestFingerprint:
    def test_a4_idempotent_spectrum(self):
        # e = e1/3 is the only idempotent found; L_e = diag(1, 1/3), R_e = diag(1, 0)
        fp = fingerprint(generate(CatalogId("A4_lambda", Scalar(3)), 2))
        assert fp.idempotent_spectra == ((("1", "1/3"), ("0", "1")),)

    def test_trivial(self):
        fp = fingerprint(generate(CatalogId("Trivial"), 3))
        assert fp.dim_product_span == fp.dim_commutator_span == 0
        assert fp.commutative and fp.associative and fp.left_symmetric

    def test_simple_plane_burnside(self):
        assert fingerprint(generate(CatalogId("A3_1"), 2)).mult_algebra_dim == 4

    @settings(max_examples=25)
    @given(st.sampled_from(catalog_ids(3)), invertible_matrices(3))
    def test_exact_fields_basis_free(self, cid, p):
        a = generate(cid, 3)
        assert first_difference(fingerprint(a, idempotents=False),
                                fingerprint(a.change_basis(p), idempotents=False)) is None

    def test_exact_fields_exclude_heuristic(self):
        assert "idempotent_spectra" not in EXACT_FIELDS
        assert EXACT_FIELDS[0] == "dim"


class TestIdentify:
    def test_case2_basis_vector(self):
        spec = ExtendedSpec(f=(0, 0), g=(0, 0), h=SymBilinearForm(Matrix([[1, 0], [0, 0]])), c=(2, 3))
        cid, p, scales = normal_basis(spec)
        assert cid == CatalogId("A2")
        assert p.col(0) == (Scalar("1/2"), Scalar("3/4"))
        assert identify(spec).exact_witness is not None

    def test_case4_parameter(self):
        spec = ExtendedSpec(f=(1, 0), g=(0, 0), h=SymBilinearForm(Matrix([[1, 0], [0, 0]])), c=(2, 0))
        assert identify(spec).catalog_id == CatalogId("A4_lambda", Scalar(3))

    def test_inner_product(self):
        from lsalg.construct import spec_from_inner_product

        assert identify(spec_from_inner_product((1, 2, 0))).catalog_id == CatalogId("A3_1")

    def test_rejects_non_left_symmetric(self):
        spec = ExtendedSpec(f=(1, 0), g=(1, 0), h=SymBilinearForm(Matrix.identity(2)), c=(1, 0))
        with pytest.raises(NotLeftSymmetricError):
            identify(spec)

    @pytest.mark.parametrize("case", CASES)
    def test_round_trip(self, case):
        rng = random.Random(case * 31)
        for k in range(25):
            n = 2 + k % 4
            spec, expected = random_case_spec(case, n, rng)
            ident = identify(spec)
            assert ident.catalog_id == expected
            a, b = algebra_from_extended(spec), generate(expected, n)
            assert check_homomorphism(a, b, ident.witness)
            if ident.exact_witness is not None:
                assert check_homomorphism(a, b, ident.exact_witness)

    @pytest.mark.parametrize("case", [2, 4, 6, 7])
    def test_root_free_cases_exact(self, case):
        rng = random.Random(case)
        for k in range(10):
            spec, _ = random_case_spec(case, 2 + k % 3, rng)
            assert identify(spec).exact_witness is not None


class TestHomomorphism:
    def test_identity(self):
        a = generate(CatalogId("A6"), 3)
        assert check_homomorphism(a, a, Matrix.identity(3))

    def test_zero_map(self):
        a = generate(CatalogId("A6"), 3)
        assert not check_homomorphism(a, a, Matrix.zeros(3))
        assert not check_homomorphism(a, a, np.zeros((3, 3)))

    def test_exceptional_witnesses_exact(self):
        half = Scalar("1/2")
        for src, dst in [(CatalogId("A3_3", 0), CatalogId("A7_alpha", half)),
                         (CatalogId("A5", 0), CatalogId("A4_lambda", Scalar(-1)))]:
            w = exceptional_witness(src, dst)
            assert check_homomorphism(generate(src, 2), generate(dst, 2), w)
            assert check_homomorphism(generate(dst, 2), generate(src, 2), exceptional_witness(dst, src))

    def test_witness_columns(self):
        # e1 -> e2, e2 -> 2 e1
        w = exceptional_witness(CatalogId("A3_3", 0), CatalogId("A7_alpha", Scalar("1/2")))
        assert w.col(0) == (0, 1) and w.col(1) == (2, 0)


class TestIsomorphism:
    def test_exceptional_pairs(self):
        v = are_isomorphic(generate(CatalogId("A3_3", 0), 2), generate(CatalogId("A7_alpha", Scalar("1/2")), 2))
        assert v.kind is IsoKind.ISOMORPHIC and isinstance(v.witness, Matrix)
        v = are_isomorphic(generate(CatalogId("A5", 0), 2), generate(CatalogId("A4_lambda", Scalar(-1)), 2))
        assert v.kind is IsoKind.ISOMORPHIC

    def test_associativity_separates(self):
        v = are_isomorphic(generate(CatalogId("A3_1"), 2), generate(CatalogId("A2"), 2))
        assert v.kind is IsoKind.NON_ISOMORPHIC and v.invariant == "associative"

    def test_dimension(self):
        v = are_isomorphic(generate(CatalogId("A2"), 2), generate(CatalogId("A2"), 3))
        assert v.invariant == "dim"

    @pytest.mark.parametrize("name", ["a3.1", "a3.2:1", "a4:3", "a5:1", "a7:2", "a6", "a1:1"])
    def test_moved_copies(self, name):
        rng = random.Random(hash(name) % 1000)
        a = generate(parse_catalog_id(name), 3)
        b = a.change_basis(random_invertible(rng, 3))
        v = are_isomorphic(a, b)
        assert v.kind is IsoKind.ISOMORPHIC
        assert check_homomorphism(a, b, v.witness)

    def test_never_unverified(self):
        """Non-catalog algebras: Unknown or a verified verdict, never a bare claim."""
        rng = random.Random(3)
        for _ in range(5):
            t = [[[Scalar(rng.randint(-1, 1)) for _ in range(2)] for _ in range(2)] for _ in range(2)]
            a = Algebra(t)
            b = a.change_basis(random_invertible(rng, 2))
            v = are_isomorphic(a, b, use_matching=False)
            assert v.kind is not IsoKind.NON_ISOMORPHIC
            if v.isomorphic:
                assert check_homomorphism(a, b, v.witness)


class TestMatchCatalog:
    def test_a6_round_trip(self):
        m = match_catalog(generate(CatalogId("A6"), 3))
        assert m.catalog_id == CatalogId("A6")

    def test_inner_product_plane(self):
        assert match_catalog(algebra_from_inner_product((1, 0))).catalog_id == CatalogId("A3_1")

    @pytest.mark.parametrize("n", [2, 3])
    def test_direct_sum_unknown(self, n):
        c = [[[Scalar(0)] * n for _ in range(n)] for _ in range(n)]
        c[0][0][0] = c[1][1][1] = ONE
        assert match_catalog(Algebra(c)) is None

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_moved_catalog(self, n):
        rng = random.Random(n)
        for cid in catalog_ids(n):
            a = generate(cid, n).change_basis(random_invertible(rng, n))
            m = match_catalog(a, seed=1)
            assert m is not None, cid
            b = generate(m.catalog_id, n)
            assert check_homomorphism(a, b, m.witness)
            assert are_isomorphic(generate(cid, n), b, use_matching=False).isomorphic
