"""Capacity, Green functions, and the stationarity conditions.

For a degree-n polynomial T with leading coefficient tau and connected
inverse image S of [-1, 1]:

* the logarithmic capacity of S is ``(2 |tau|) ** (-1/n)`` and the minimal
  sup-norm of a monic degree-n polynomial on S is ``1 / |tau|``;
* ``g(z) = (1/n) log |T(z) + sqrt(T(z)^2 - 1)|`` (branch with modulus >= 1)
  is the Green function of the complement with pole at infinity;
* the same Green function is the real part of the hyperelliptic integral
  ``Phi(z) = Integral of sqrt(prod(w - d_j)) / sqrt(prod(w - c_j))`` from a
  point of S, and S is the minimal-capacity continuum through the points
  ``c_j`` exactly when Re Phi vanishes at every ``c_j`` and every ``d_j``.

``Re Phi`` is single valued on the whole plane (it is the Green function),
so integration paths only need to stay clear of branch points; they are
routed around them automatically.
"""

from dataclasses import dataclass

import numpy as np

from .connect import is_connected
from .errors import PathTooClose
from .factor import Factorization, factorize
from .poly import ComplexPoly, divide_exact, find_roots, structured_roots
from .quadrature import QuadraturePath, path_integral, point_segment_distance

#: Branch points are kept at least this far from any integration segment.
ROUTE_MARGIN = 0.06


def capacity(T: ComplexPoly) -> float:
    """Logarithmic capacity of the inverse image of [-1, 1] under T."""
    n = T.degree
    if n < 1 or T.is_zero():
        raise ValueError("capacity needs degree >= 1")
    return float((2.0 * abs(T.leading)) ** (-1.0 / n))


def min_deviation(T: ComplexPoly) -> float:
    """Minimal sup-norm of a monic degree-n polynomial on the inverse image.

    Equals ``2 * capacity(T) ** n`` identically; both are read off tau.
    """
    n = T.degree
    if n < 1 or T.is_zero():
        raise ValueError("min_deviation needs degree >= 1")
    return float(1.0 / abs(T.leading))


def green_function(T: ComplexPoly, z) -> float:
    """Green function of the complement of the inverse image, pole at infinity.

    Computed as ``(1/n) log |q|`` where q is the root of ``q^2 - 2 T(z) q + 1``
    with ``|q| >= 1``.  Nonnegative; zero exactly on the inverse image.
    """
    n = T.degree
    if n < 1 or T.is_zero():
        raise ValueError("green function needs degree >= 1")
    w = complex(T(z))
    if abs(w) > 1e100:
        return float((np.log(2.0) + np.log(abs(w))) / n)
    s = np.sqrt(w * w - 1.0)
    q = w + s
    if abs(q) < 1.0:
        q = w - s
    g = float(np.log(max(abs(q), 1.0)) / n)
    return g


def route_path(start: complex, target: complex, obstacles, margin: float = ROUTE_MARGIN,
               depth: int = 8) -> list:
    """Polyline from start to target keeping obstacles at a safe distance.

    Recursively inserts a perpendicular detour waypoint around the obstacle
    closest to the current segment.  Obstacles hugging an endpoint are left
    alone (the endpoints themselves are allowed to be branch points).
    """
    start = complex(start)
    target = complex(target)
    blockers = []
    for o in obstacles:
        o = complex(o)
        if abs(o - start) < 2 * margin or abs(o - target) < 2 * margin:
            continue
        d = point_segment_distance(o, start, target)
        if d < margin:
            blockers.append((d, o))
    if not blockers or depth <= 0:
        return [start, target]
    _, o = min(blockers, key=lambda t: t[0])
    ab = target - start
    unit = ab / abs(ab)
    normal = 1j * unit
    t = ((o - start).real * ab.real + (o - start).imag * ab.imag) / abs(ab) ** 2
    foot = start + min(1.0, max(0.0, t)) * ab
    side = (o - foot).real * normal.real + (o - foot).imag * normal.imag
    direction = -normal if side >= 0 else normal
    waypoint = foot + direction * (3.0 * margin)
    left = route_path(start, waypoint, obstacles, margin, depth - 1)
    right = route_path(waypoint, target, obstacles, margin, depth - 1)
    return left[:-1] + right


def _grouped_multiset(points, tol: float) -> list:
    """Collapse near-duplicates of a point list into (value, multiplicity)."""
    out = []
    for p in sorted((complex(q) for q in points), key=lambda w: (w.real, w.imag)):
        if out and abs(p - out[-1][0]) <= tol:
            out[-1] = (out[-1][0], out[-1][1] + 1)
        else:
            out.append((p, 1))
    return out


def hyperelliptic_integral(cset, dset, path, tol: float = 1e-9):
    """Integrate sqrt(prod(w - d_j)) / sqrt(prod(w - c_j)) along a path.

    Returns ``(value, error_estimate)``.  The integrand is rearranged as a
    polynomial numerator over one tracked square root: even-multiplicity
    ``d`` factors come out of the root entirely, odd ones join the ``c``
    factors under it.  The path must start at a point of ``cset``; when a
    plain waypoint list is given, endpoint singularities are flagged
    automatically.
    """
    cpts = [complex(c) for c in cset]
    scale = 1.0 + max(abs(c) for c in cpts)
    grouped_d = _grouped_multiset(dset, 1e-9 * scale)

    numer_roots = []
    sqrt_roots = list(cpts)
    for value, mult in grouped_d:
        numer_roots.extend([value] * ((mult + 1) // 2))
        if mult % 2 == 1:
            sqrt_roots.append(value)
    numer = ComplexPoly.from_roots(numer_roots, 1.0)
    sqrt_denom = ComplexPoly.from_roots(sqrt_roots, 1.0)

    if isinstance(path, QuadraturePath):
        qpath = path
        waypoints = path.waypoints
    else:
        waypoints = tuple(complex(w) for w in path)
        eps = 1e-8 * scale
        singular = [r for r in sqrt_roots]
        sing_start = any(abs(waypoints[0] - r) <= eps for r in singular)
        sing_end = any(abs(waypoints[-1] - r) <= eps for r in singular)
        qpath = QuadraturePath(waypoints, singular_start=sing_start, singular_end=sing_end)

    if min(abs(waypoints[0] - c) for c in cpts) > 1e-6 * scale:
        raise ValueError("path must start at one of the prescribed points")
    for r in sqrt_roots:
        if abs(r - waypoints[0]) <= 1e-8 * scale or abs(r - waypoints[-1]) <= 1e-8 * scale:
            continue
        for a, b in zip(waypoints, waypoints[1:]):
            if point_segment_distance(r, a, b) <= 1e-3:
                raise PathTooClose(f"path passes through branch point {r:.6g}")

    return path_integral(numer, sqrt_denom, qpath, tol=tol)


def condition_points(fac: Factorization, seed: int = 0):
    """Split the factorization data into prescribed and bifurcation points.

    Returns ``(cset, dset)``: the simple zeros of T^2 - 1 and the zero
    multiset of the bifurcation polynomial ``cofactor^2 / prod(z - b_j)``,
    where the ``b_j`` are the branch points shared with the square factor.
    """
    branch = list(fac.branch_points)
    scale = 1.0 + max(abs(b) for b in branch)
    if fac.square_part.degree >= 1:
        u_roots = find_roots(fac.square_part, seed=seed)
    else:
        u_roots = []
    bset = []
    cset = []
    for a in branch:
        if u_roots and min(abs(a - u) for u in u_roots) <= 1e-6 * scale:
            bset.append(a)
        else:
            cset.append(a)
    cset.sort(key=lambda w: (w.real, w.imag))

    d_poly = divide_exact(fac.cofactor * fac.cofactor, ComplexPoly.from_roots(bset, 1.0))
    dset = []
    if d_poly.degree >= 1:
        for cl in structured_roots(d_poly, seed=seed):
            dset.extend([cl.center] * cl.multiplicity)
    return cset, dset


@dataclass(frozen=True)
class ConditionEntry:
    point: complex
    kind: str              # "prescribed" or "bifurcation"
    re_phi: float
    quad_error: float


@dataclass(frozen=True)
class ConditionReport:
    entries: tuple
    max_abs_re: float
    max_quad_error: float
    threshold: float
    passed: bool

    def to_dict(self):
        return {
            "points": [
                {
                    "point": [e.point.real, e.point.imag],
                    "kind": e.kind,
                    "re_phi": e.re_phi,
                    "quad_error": e.quad_error,
                    "passed": abs(e.re_phi) < self.threshold,
                }
                for e in self.entries
            ],
            "max_abs_re_phi": self.max_abs_re,
            "max_quad_error": self.max_quad_error,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def check_chebotarev_conditions(T: ComplexPoly, seed: int = 0, threshold: float = 1e-6,
                                base_index: int = 0, quad_tol: float = 1e-9) -> ConditionReport:
    """Evaluate Re Phi at every prescribed and bifurcation point.

    The continuum solves the minimal-capacity problem for its prescribed
    points exactly when all these real parts vanish; the report carries the
    measured values and quadrature error estimates.  Requires a connected
    inverse image.
    """
    if not is_connected(T, seed=seed):
        raise ValueError("conditions are only defined for a connected inverse image")
    fac = factorize(T, seed=seed)
    cset, dset = condition_points(fac, seed=seed)
    base = cset[base_index % len(cset)]
    scale = 1.0 + max(abs(b) for b in fac.branch_points)

    distinct_d = [v for v, _ in _grouped_multiset(dset, 1e-9 * scale)]
    targets = [(p, "prescribed") for p in cset if p != base]
    targets += [(p, "bifurcation") for p in distinct_d]

    entries = [ConditionEntry(base, "prescribed", 0.0, 0.0)]
    for point, kind in targets:
        obstacles = [b for b in fac.branch_points
                     if abs(b - base) > 1e-9 and abs(b - point) > 1e-9]
        waypoints = route_path(base, point, obstacles)
        sing_end = any(abs(point - b) <= 1e-8 * scale for b in fac.branch_points)
        qpath = QuadraturePath(tuple(waypoints), singular_start=True, singular_end=sing_end)
        phi, err = path_integral(fac.cofactor, fac.branch_poly, qpath, tol=quad_tol)
        entries.append(ConditionEntry(point, kind, float(phi.real), float(err)))

    max_abs = max(abs(e.re_phi) for e in entries)
    max_err = max(e.quad_error for e in entries)
    return ConditionReport(tuple(entries), max_abs, max_err, threshold, max_abs < threshold)


def green_via_integral(T: ComplexPoly, z: complex, seed: int = 0, quad_tol: float = 1e-9):
    """|Re Phi(z)| by quadrature -- the integral route to the Green function.

    Starts from the first branch point and routes around the others.
    Returns ``(value, error_estimate)`` for cross-checking against
    :func:`green_function`.
    """
    fac = factorize(T, seed=seed)
    base = fac.branch_points[0]
    obstacles = [b for b in fac.branch_points if abs(b - base) > 1e-9]
    waypoints = route_path(base, complex(z), obstacles)
    qpath = QuadraturePath(tuple(waypoints), singular_start=True, singular_end=False)
    phi, err = path_integral(fac.cofactor, fac.branch_poly, qpath, tol=quad_tol)
    return abs(phi.real), float(err)
