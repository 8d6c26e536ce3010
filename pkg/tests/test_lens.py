import pytest

from zgdual.complexes import (
    five_complex_report,
    homology,
    is_chain_map,
    validate_complex,
    verify_homotopy,
)
from zgdual.dual_form import is_anti_self_dual, normalize_duality, obstruction_check, recognize_dual_form
from zgdual.group_core import GroupRingElement, cyclic_group, gr_mul, norm_element
from zgdual.gr_linalg import GRMatrix
from zgdual.int_linalg import AbelianGroupInfo
from zgdual.lens import (
    asd_unit,
    lens_asd_transform,
    lens_complex,
    lens_duality_map,
    lens_instance,
)


def tpow(G, e):
    return GroupRingElement.basis(G, e % G.order)


def poly(G, *terms):
    acc = GroupRingElement.zero(G)
    for coeff, e in terms:
        acc = acc + tpow(G, e).scale(coeff)
    return acc


class TestLensComplex:
    def test_differentials(self):
        A = lens_complex(5)
        G = A.group
        omt = poly(G, (1, 0), (-1, 1))
        omti = poly(G, (1, 0), (-1, -1))
        sig = norm_element(G)
        assert A.boundary(1) == GRMatrix.one_by_one(omt)
        assert A.boundary(2) == GRMatrix.one_by_one(sig)
        assert A.boundary(3) == GRMatrix.one_by_one(omti)
        assert A.boundary(4) == GRMatrix.one_by_one(sig)
        assert A.boundary(5) == GRMatrix.one_by_one(omti)

    def test_rejects_small_n(self):
        for n in (0, 1):
            with pytest.raises(ValueError):
                lens_complex(n)

    def test_family_invariants_full_range(self):
        for n in range(2, 102):
            A = lens_complex(n)
            assert validate_complex(A).ok
            view = recognize_dual_form(A)
            assert view is not None
            assert view.j_rank == n - 1
            assert view.j_rank % n == (-1) % n

    def test_alg5_membership_full_range(self):
        # the slowest family sweep in the suite (SNF of 101x101 circulants)
        for n in range(2, 102):
            assert five_complex_report(lens_complex(n)).is_member


class TestLensDualityMap:
    def test_components(self):
        phi = lens_duality_map(7)
        G = phi.target.group
        one = GRMatrix.identity(G, 1)
        assert phi.components == (one, one, one, GRMatrix.one_by_one(tpow(G, 1).scale(-1)), -one, -one)

    def test_central_square_identity(self):
        # 1 . (1 - t) == (1 - t^-1) . (-t) as ring elements
        for n in (2, 3, 5, 12):
            G = cyclic_group(n)
            lhs = poly(G, (1, 0), (-1, 1))
            rhs = gr_mul(poly(G, (1, 0), (-1, -1)), tpow(G, 1).scale(-1))
            assert lhs == rhs

    def test_fourth_square_identity(self):
        # Sigma . (-1) == (-t) . Sigma: the norm absorbs units
        for n in (2, 5, 9):
            G = cyclic_group(n)
            assert norm_element(G).scale(-1) == gr_mul(tpow(G, 1).scale(-1), norm_element(G))

    def test_verifies_for_family(self):
        for n in range(2, 26):
            rep = is_chain_map(lens_duality_map(n))
            assert rep.is_chain_map
            assert rep.end_scalars == (1, -1)

    def test_normalize_end_to_end(self):
        A = lens_complex(5)
        nd = normalize_duality(recognize_dual_form(A), lens_duality_map(5))
        assert nd.psi.components == lens_duality_map(5).components


class TestAsdUnit:
    def test_k1_frozen_values(self):
        unit = asd_unit(5)
        G = cyclic_group(5)
        assert unit.alpha == poly(G, (1, 2), (1, 1), (-1, 4), (-1, 3))
        assert unit.beta == poly(G, (1, 0), (1, 1), (-1, 3))
        # golden inverse, found once by the solver and frozen
        assert unit.beta_inv == poly(G, (1, 1), (-1, 2), (1, 3))
        assert gr_mul(unit.beta, unit.beta_inv) == GroupRingElement.one(G)

    def test_alpha_shift_identity(self):
        # alpha (t^{1+k} + t^{1-k}) == t^2 - 1
        for k in range(1, 7):
            n = 4 * k + 1
            G = cyclic_group(n)
            unit = asd_unit(n)
            shift = tpow(G, 1 + k) + tpow(G, 1 - k)
            assert gr_mul(unit.alpha, shift) == poly(G, (1, 2), (-1, 0))

    def test_identities_for_k_range(self):
        for k in range(1, 7):
            n = 4 * k + 1
            G = cyclic_group(n)
            unit = asd_unit(n)
            assert gr_mul(unit.beta, poly(G, (1, 0), (-1, -1))) == unit.alpha
            assert gr_mul(norm_element(G), unit.beta) == norm_element(G)
            assert gr_mul(unit.beta, unit.beta_inv) == GroupRingElement.one(G)
            assert gr_mul(unit.beta_inv, unit.beta) == GroupRingElement.one(G)

    def test_rejects_wrong_residue(self):
        for n in (4, 7, 8, 11, 3):
            with pytest.raises(ValueError):
                asd_unit(n)


class TestAsdTransform:
    def test_n5_full(self):
        t = lens_asd_transform(5)
        G = t.complex.group
        assert t.complex.boundary(3) == GRMatrix.one_by_one(t.unit.alpha)
        # alpha involutes to its negative
        assert t.unit.alpha.involute() == -t.unit.alpha
        view = recognize_dual_form(t.complex)
        assert is_anti_self_dual(view)
        # golden x: alpha x == beta - 1
        assert t.x == poly(G, (-1, 1), (-1, 3))
        assert gr_mul(t.unit.alpha, t.x) == t.unit.beta - GroupRingElement.one(G)
        assert verify_homotopy(t.homotopy).ok
        assert t.diagonal_sign == 1

    def test_f_components(self):
        t = lens_asd_transform(5)
        G = t.complex.group
        one = GRMatrix.identity(G, 1)
        assert t.f.components == (one, one, GRMatrix.one_by_one(t.unit.beta), one, one, one)
        assert is_chain_map(t.f).is_chain_map

    def test_n13_full(self):
        t = lens_asd_transform(13)
        view = recognize_dual_form(t.complex)
        assert is_anti_self_dual(view)
        assert verify_homotopy(t.homotopy).ok
        assert not obstruction_check(view).obstructed

    def test_homology_unchanged_by_transform(self):
        t = lens_asd_transform(9)
        A = lens_complex(9)
        for coeff in ("integral", "trivial"):
            for d in range(6):
                assert homology(t.complex, d, coeff) == homology(A, d, coeff)

    def test_rejects_other_n(self):
        with pytest.raises(ValueError):
            lens_asd_transform(7)


class TestLensInstance:
    def test_plain(self):
        inst = lens_instance(6)
        assert inst.asd is None
        assert inst.beta is None

    def test_with_asd(self):
        inst = lens_instance(13)
        assert inst.k == 3
        assert inst.asd is not None
        assert gr_mul(inst.beta, inst.beta_inv) == GroupRingElement.one(inst.complex.group)

    def test_three_mod_four_has_no_construction(self):
        inst = lens_instance(7)
        assert inst.asd is None
        with pytest.raises(ValueError):
            lens_instance(7, with_asd=True)

    def test_homology_spec_values(self):
        inst = lens_instance(5)
        zn = AbelianGroupInfo.cyclic(5)
        Z = AbelianGroupInfo.free(1)
        zero = AbelianGroupInfo.trivial()
        assert [homology(inst.complex, d, "trivial") for d in range(6)] == [Z, zn, zero, zn, zero, Z]
        assert [homology(inst.complex, d, "integral") for d in range(6)] == [Z, zero, zero, zero, zero, Z]
