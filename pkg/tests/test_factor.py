import numpy as np
import pytest

from chebotarev import (
    ComplexPoly,
    PathTooClose,
    dist_to_interval,
    factorize,
    find_roots,
    verify_cosh_representation,
)

from conftest import cheb2, cross, star, t3, t4


def _max_coeff_diff(p, q):
    n = max(len(p.coeffs), len(q.coeffs))
    a = list(p.coeffs) + [0] * (n - len(p.coeffs))
    b = list(q.coeffs) + [0] * (n - len(q.coeffs))
    return max(abs(x - y) for x, y in zip(a, b))


def assert_factorization_consistent(T, fac, min_sep=1e-4):
    p2 = T * T - 1.0
    rebuilt = fac.branch_poly * (fac.square_part * fac.square_part)
    scale = 1.0 + max(abs(c) for c in p2.coeffs)
    assert _max_coeff_diff(p2, rebuilt) < 1e-9 * scale

    dT = T.derivative()
    rebuilt_d = T.degree * (fac.cofactor * fac.square_part)
    dscale = 1.0 + max(abs(c) for c in dT.coeffs)
    assert _max_coeff_diff(dT, rebuilt_d) < 1e-9 * dscale

    assert 1 <= fac.min_arcs <= T.degree
    assert fac.branch_poly.degree == 2 * fac.min_arcs
    assert abs(fac.branch_poly.leading - 1.0) < 1e-12
    assert abs(fac.square_part.leading - T.leading) < 1e-9 * (1 + abs(T.leading))
    pts = fac.branch_points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            assert abs(pts[i] - pts[j]) > min_sep


class TestKnownFactorizations:
    def test_monomial(self):
        T = star(5)
        fac = factorize(T)
        assert fac.min_arcs == 5
        assert _max_coeff_diff(fac.branch_poly, ComplexPoly([-1] + [0] * 9 + [1])) < 1e-9
        assert fac.square_part.degree == 0
        assert _max_coeff_diff(fac.cofactor, ComplexPoly([0, 0, 0, 0, 1])) < 1e-9
        assert_factorization_consistent(T, fac)

    def test_segment_polynomial(self):
        T = cheb2()
        fac = factorize(T)
        assert fac.min_arcs == 1
        assert _max_coeff_diff(fac.branch_poly, ComplexPoly([-1, 0, 1])) < 1e-12
        assert _max_coeff_diff(fac.square_part, ComplexPoly([0, 2])) < 1e-12
        assert _max_coeff_diff(fac.cofactor, ComplexPoly([1])) < 1e-12
        assert_factorization_consistent(T, fac)

    def test_cross(self):
        T = cross(1.0)  # z^2
        fac = factorize(T)
        assert fac.min_arcs == 2
        assert _max_coeff_diff(fac.branch_poly, ComplexPoly([-1, 0, 0, 0, 1])) < 1e-9
        assert fac.square_part.degree == 0
        assert _max_coeff_diff(fac.cofactor, ComplexPoly([0, 1])) < 1e-9
        assert_factorization_consistent(T, fac)

    def test_cubic_family_half(self):
        T = t3(0.5)
        fac = factorize(T)
        assert fac.min_arcs == 2
        # branch points: +-1 and 5/8 +- i/2; the double zero -3/8 goes to
        # the square factor, whose leading coefficient is tau = -64/25
        expected_branch = [1.0, -1.0, 0.625 + 0.5j, 0.625 - 0.5j]
        for e in expected_branch:
            assert min(abs(b - e) for b in fac.branch_points) < 1e-9
        u = fac.square_part
        assert u.degree == 1
        assert abs(u.leading - (-2.56)) < 1e-9
        u_root = -u.coeffs[0] / u.coeffs[1]
        assert abs(u_root - (-0.375)) < 1e-9
        # the remaining critical point 13/24 is the cofactor's only zero
        assert fac.cofactor.degree == 1
        assert abs(-fac.cofactor.coeffs[0] - 13.0 / 24.0) < 1e-9
        assert_factorization_consistent(T, fac)

    @pytest.mark.parametrize("T", [star(5), cheb2(), cross(0.5), cross(2.0),
                                   t3(0.5), t3(2.0), t4(2.0)],
                             ids=["star5", "cheb2", "cross05", "cross2",
                                  "t3a05", "t3a2", "t4a2"])
    def test_consistency_suite(self, T):
        assert_factorization_consistent(T, factorize(T))

    @pytest.mark.parametrize("T", [cheb2(), t3(0.5), t3(2.0), t4(2.0)],
                             ids=["cheb2", "t3a05", "t3a2", "t4a2"])
    def test_square_part_zeros_lie_in_the_inverse_image(self, T):
        fac = factorize(T)
        if fac.square_part.degree < 1:
            pytest.skip("constant square factor")
        for u in find_roots(fac.square_part):
            assert dist_to_interval(T(u)) < 1e-8


class TestClassicalSegmentFamily:
    @staticmethod
    def _classical(n):
        import numpy as np

        a = [np.array([1.0]), np.array([0.0, 1.0])]
        for _ in range(2, n + 1):
            nxt = np.zeros(len(a[-1]) + 1)
            nxt[1:] = 2 * a[-1]
            nxt[: len(a[-2])] -= a[-2]
            a.append(nxt)
        return ComplexPoly(a[n])

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 12, 16, 20, 24])
    def test_segment_structure_at_any_degree(self, n):
        # the degree-n polynomial mapping [-1,1] onto itself n-fold: one arc,
        # branch polynomial z^2 - 1, leading coefficient 2**(n-1)
        from chebotarev import capacity

        T = self._classical(n)
        fac = factorize(T)
        assert fac.min_arcs == 1
        assert _max_coeff_diff(fac.branch_poly, ComplexPoly([-1, 0, 1])) < 1e-7
        assert abs(capacity(T) - 0.5) < 1e-12
        assert_factorization_consistent(T, fac)


class TestUniqueness:
    def test_root_order_does_not_matter(self):
        T = t4(2.0)
        reference = None
        for seed in (0, 1, 2):
            fac = factorize(T, seed=seed)
            key = (fac.min_arcs,
                   tuple(sorted(((round(b.real, 9), round(b.imag, 9))
                                 for b in fac.branch_points))))
            if reference is None:
                reference = key
            assert key == reference


class TestCoshRepresentation:
    def test_segment_polynomial_at_two(self):
        # closed form: cosh(2 arccosh 2) = 7
        T = cheb2()
        fac = factorize(T)
        assert verify_cosh_representation(T, fac, 2.0, [1.0, 2.0]) < 1e-7

    def test_monomial_at_two(self):
        # substituting u = w^5 gives cosh(5 Phi(2)) = 2^5 = 32
        T = star(5)
        fac = factorize(T)
        assert verify_cosh_representation(T, fac, 2.0, [1.0, 2.0]) < 1e-6

    def test_near_endpoint_continuity(self):
        T = cheb2()
        fac = factorize(T)
        z = 1.001
        assert verify_cosh_representation(T, fac, z, [1.0, z]) < 1e-5

    def test_path_too_close_rejected(self):
        T = star(5)
        fac = factorize(T)
        waypoint = 0.99 * np.exp(1j * np.pi / 5)
        with pytest.raises(PathTooClose):
            verify_cosh_representation(T, fac, 2.0, [1.0, waypoint, 2.0])

    def test_path_must_start_on_branch_point(self):
        T = cheb2()
        fac = factorize(T)
        with pytest.raises(ValueError):
            verify_cosh_representation(T, fac, 2.0, [0.5, 2.0])


class TestRandomStructuredPolynomials:
    def test_harder_regime(self):
        # wider roots, two triples allowed, degrees up to 12: the coefficient
        # scale inflates the multiple-root smear, which the radius ladder and
        # the split-level rooting must absorb
        rng = np.random.default_rng(777)
        built = 0
        while built < 40:
            n_d = int(rng.integers(0, 3))
            n_z = int(rng.integers(0, 3))
            n_c = int(rng.integers(1, 5))
            n = n_c + 3 * n_d + 2 * n_z
            if n < 2 or n > 12:
                continue
            pts = []
            tries = 0
            while len(pts) < n_c + n_d + n_z and tries < 300:
                tries += 1
                cand = complex(*rng.uniform(-1.6, 1.6, 2))
                if all(abs(cand - p) >= 0.3 for p in pts):
                    pts.append(cand)
            if len(pts) < n_c + n_d + n_z:
                continue
            tau = complex(*rng.uniform(-1.5, 1.5, 2))
            if abs(tau) < 0.2:
                continue
            roots = pts[:n_c] + pts[n_c:n_c + n_d] * 3 + pts[n_c + n_d:] * 2
            T = ComplexPoly.from_roots(roots, tau) + 1.0
            built += 1
            fac = factorize(T)
            assert fac.min_arcs == (n_c + n_d + n) // 2
            assert_factorization_consistent(T, fac, min_sep=1e-8)

    def test_division_cross_check(self):
        # build T = 1 + tau * prod(simple) * prod(triple)^3 * prod(double)^2
        # and confirm the split recovers the multiplicity structure
        rng = np.random.default_rng(42)
        for _ in range(10):
            pts = []
            while len(pts) < 4:
                cand = complex(*rng.uniform(-1.2, 1.2, 2))
                if all(abs(cand - p) >= 0.5 for p in pts):
                    pts.append(cand)
            simple = pts[:2]
            triple = pts[2:3]
            double = pts[3:4]
            tau = complex(*rng.uniform(0.4, 1.5, 2))
            roots = simple + triple * 3 + double * 2
            T = ComplexPoly.from_roots(roots, tau) + 1.0
            fac = factorize(T)
            n = T.degree
            # odd-multiplicity zeros of T^2-1: the 2 simple + 1 triple from
            # the T-1 side plus the n simple zeros of T+1
            assert fac.min_arcs == (2 + 1 + n) // 2
            assert_factorization_consistent(T, fac)
