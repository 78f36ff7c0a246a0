"""The square / square-free splitting of T^2 - 1 and its derivative cofactor.

For any degree-n polynomial T with leading coefficient tau there is a unique
decomposition

    T(z)^2 - 1 = B(z) * U(z)^2

with B monic of even degree 2*ell and simple zeros (exactly the zeros of
T^2 - 1 of odd multiplicity) and U of degree n - ell with leading
coefficient tau.  A monic cofactor R of degree ell - 1 then satisfies
T'(z) = n * R(z) * U(z), and away from the inverse image of [-1, 1]

    T(z) = +-cosh(n * Integral_a^z R(w) / sqrt(B(w)) dw)

for any zero a of B.  The number ell is the minimal number of analytic arcs
the inverse image of [-1, 1] under T consists of.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentFactorization, PathTooClose, RemainderTooLarge
from .poly import ComplexPoly, divide_exact, structured_roots
from .quadrature import QuadraturePath, path_integral, point_segment_distance

#: Clustering radii tried on the roots of T^2 - 1, smallest first.  Triple
#: roots smear over roughly (eps * coefficient scale)**(1/3) in double
#: precision, which can reach 1e-3 for large coefficients; the reproduction
#: checks decide which rung recovered the true multiplicity structure.
CLUSTER_TOL_LADDER = (2e-4, 6e-4, 2e-3)

#: Coefficient-residual tolerance for the reproduction checks.
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class Factorization:
    """The (ell, B, U, R) data of the square / square-free splitting.

    ``branch_poly`` is monic with ``2 * min_arcs`` pairwise distinct zeros
    (``branch_points``); ``square_part`` carries the leading coefficient of
    the input; ``cofactor`` is monic of degree ``min_arcs - 1``.
    """

    min_arcs: int
    branch_poly: ComplexPoly
    square_part: ComplexPoly
    cofactor: ComplexPoly
    branch_points: tuple


def factorize(T: ComplexPoly, seed: int = 0) -> Factorization:
    """Compute the unique splitting T^2 - 1 = B * U^2 and T' = n R U.

    Multiplicities come from clustering the roots of T^2 - 1; cluster
    centers are re-polished on the appropriate derivative so the rebuilt
    products reproduce the inputs to ~1e-12.  The clustering radius climbs
    the ladder until the reproduction checks pass; if no rung works,
    :class:`InconsistentFactorization` propagates, signalling a root-finding
    failure upstream.
    """
    n = T.degree
    if n < 1 or T.is_zero():
        raise ValueError("factorize needs degree >= 1")
    last_exc = None
    for tol in CLUSTER_TOL_LADDER:
        try:
            return _factorize_with_radius(T, seed, tol)
        except InconsistentFactorization as exc:
            last_exc = exc
    raise last_exc


def _factorize_with_radius(T: ComplexPoly, seed: int, cluster_tol: float) -> Factorization:
    n = T.degree
    tau = T.leading
    p2 = T * T - 1.0
    # T^2 - 1 factors exactly into (T - 1)(T + 1), which share no zeros;
    # rooting the halves separately halves the degree and the coefficient
    # scale, which shrinks the multiple-root smear considerably.
    clusters = sorted(
        structured_roots(T - 1.0, seed=seed, tol=cluster_tol)
        + structured_roots(T + 1.0, seed=seed, tol=cluster_tol),
        key=lambda c: (c.center.real, c.center.imag),
    )

    odd = [c for c in clusters if c.multiplicity % 2 == 1]
    if len(odd) % 2 != 0:
        raise InconsistentFactorization("odd-multiplicity zeros did not pair up")
    ell = len(odd) // 2
    if not 1 <= ell <= n:
        raise InconsistentFactorization(f"arc count {ell} out of range 1..{n}")

    branch_points = tuple(c.center for c in odd)
    scale = 1.0 + max(abs(b) for b in branch_points)
    # clusters within one level are separated by construction; only a
    # numerically coincident pair across the two levels (impossible for a
    # true polynomial, since the levels differ by 2) indicates breakage
    for i in range(len(branch_points)):
        for j in range(i + 1, len(branch_points)):
            if abs(branch_points[i] - branch_points[j]) <= 1e-9 * scale:
                raise InconsistentFactorization("branch points are not pairwise distinct")

    branch_poly = ComplexPoly.from_roots(branch_points, 1.0)
    u_roots = []
    for c in clusters:
        u_roots.extend([c.center] * (c.multiplicity // 2))
    if len(u_roots) != n - ell:
        raise InconsistentFactorization(
            f"square factor degree {len(u_roots)} does not match {n - ell}"
        )
    square_part = ComplexPoly.from_roots(u_roots, tau)

    dT = T.derivative()
    try:
        cofactor = divide_exact(dT, n * square_part, tol=RESIDUAL_TOL)
    except RemainderTooLarge as exc:
        raise InconsistentFactorization(f"derivative division failed: {exc}") from exc
    if abs(cofactor.leading - 1.0) > 1e-6:
        raise InconsistentFactorization("derivative cofactor is not monic")
    cofactor = cofactor.monic()

    # cross-check the division against the multiplicity bookkeeping:
    # a zero of T^2-1 of multiplicity k leaves (k-1)//2 zeros in R when k is
    # odd and k//2 - 1 when k is even.
    for c in clusters:
        k = c.multiplicity
        expected = (k - 1) // 2 if k % 2 == 1 else k // 2 - 1
        if expected >= 1:
            mag = abs(cofactor(c.center))
            bound = 1e-6 * (1.0 + max(abs(x) for x in cofactor.coeffs)) * scale ** cofactor.degree
            if mag > bound:
                raise InconsistentFactorization(
                    f"cofactor does not vanish at multiple zero {c.center:.6g}"
                )

    _check_reproduction(p2, branch_poly * (square_part * square_part), "T^2 - 1")
    _check_reproduction(dT, n * (cofactor * square_part), "T'")

    return Factorization(ell, branch_poly, square_part, cofactor, branch_points)


def _check_reproduction(target: ComplexPoly, rebuilt: ComplexPoly, label: str):
    diff = target - rebuilt
    bound = RESIDUAL_TOL * (1.0 + max(abs(c) for c in target.coeffs))
    worst = max(abs(c) for c in diff.coeffs)
    if worst > bound:
        raise InconsistentFactorization(
            f"{label} reproduction residual {worst:.3e} exceeds {bound:.3e}"
        )


def verify_cosh_representation(T: ComplexPoly, fac: Factorization, z: complex,
                               path, quad_tol: float = 1e-9) -> float:
    """Residual of the cosh representation at a point off the inverse image.

    Integrates ``cofactor / sqrt(branch_poly)`` from a branch point along the
    given polyline to ``z`` and returns
    ``min over signs of | +-cosh(n * integral) - T(z) |``.
    The path must start at a branch point and keep every other branch point
    at distance > 0.05, else :class:`PathTooClose` is raised.
    """
    if isinstance(path, QuadraturePath):
        waypoints = path.waypoints
    else:
        waypoints = tuple(complex(w) for w in path)
    start = waypoints[0]
    dists = [abs(start - b) for b in fac.branch_points]
    nearest = int(np.argmin(dists))
    scale = 1.0 + max(abs(b) for b in fac.branch_points)
    if dists[nearest] > 1e-6 * scale:
        raise ValueError("path must start at a zero of the branch polynomial")
    start_root = fac.branch_points[nearest]

    for b in fac.branch_points:
        if b == start_root:
            continue
        for a, c in zip(waypoints, waypoints[1:]):
            if point_segment_distance(b, a, c) <= 0.05:
                raise PathTooClose(f"path passes within 0.05 of branch point {b:.6g}")

    qpath = QuadraturePath(waypoints, singular_start=True)
    phi, _ = path_integral(fac.cofactor, fac.branch_poly, qpath, tol=quad_tol)
    n = T.degree
    target = T(z)
    value = np.cosh(n * phi)
    return float(min(abs(value - target), abs(-value - target)))
