"""Dense complex polynomials and multiplicity-aware root finding.

Coefficients are stored in ascending order: ``coeffs[k]`` multiplies ``z**k``.
Degrees are capped at :data:`MAX_DEGREE`; everything in this package targets
the moderate degrees that inverse-image constructions actually produce, so
dense arithmetic in double precision is the right tool.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, RemainderTooLarge

MAX_DEGREE = 64

#: Default relative clustering radius.  Multiple roots of the constructed
#: polynomials are structural, so clusters sit far from genuinely simple
#: roots and a tight radius is safe here.
CLUSTER_TOL = 1e-6

_EPS = float(np.finfo(float).eps)


def _as_coeff_tuple(coeffs):
    cs = tuple(complex(c) for c in coeffs)
    if not cs:
        raise ValueError("coefficient list is empty")
    if len(cs) - 1 > MAX_DEGREE:
        raise ValueError(f"degree {len(cs) - 1} exceeds the cap of {MAX_DEGREE}")
    if len(cs) > 1 and cs[-1] == 0:
        raise ValueError("leading coefficient is zero; trim before constructing")
    return cs


@dataclass(frozen=True)
class ComplexPoly:
    """Immutable dense polynomial with complex coefficients.

    The zero polynomial is represented as the single coefficient ``(0j,)``;
    every other instance has a nonzero leading coefficient.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeff_tuple(self.coeffs))

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        """Expand ``leading * prod(z - r)`` over the given root multiset."""
        c = np.array([complex(leading)])
        for r in roots:
            c = np.convolve(c, np.array([-complex(r), 1.0 + 0j]))
        return cls(tuple(c))

    @classmethod
    def zero(cls):
        return cls((0j,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __call__(self, z):
        """Evaluate by Horner's scheme; accepts scalars or numpy arrays."""
        if isinstance(z, np.ndarray):
            r = np.full(z.shape, self.coeffs[-1], dtype=complex)
            for c in self.coeffs[-2::-1]:
                r = r * z + c
            return r
        w = self.coeffs[-1]
        for c in self.coeffs[-2::-1]:
            w = w * z + c
        return w

    def derivative(self):
        """Formal derivative; a constant differentiates to the zero polynomial."""
        if self.degree == 0:
            return ComplexPoly.zero()
        return ComplexPoly(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def monic(self):
        lead = self.coeffs[-1]
        if lead == 0:
            raise ValueError("cannot normalize the zero polynomial")
        return ComplexPoly(tuple(c / lead for c in self.coeffs))

    def _coerce(self, other):
        if isinstance(other, ComplexPoly):
            return other
        return ComplexPoly((complex(other),))

    def __mul__(self, other):
        if not isinstance(other, ComplexPoly):
            s = complex(other)
            if s == 0:
                return ComplexPoly.zero()
            return ComplexPoly(tuple(s * c for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return ComplexPoly.zero()
        return ComplexPoly(tuple(np.convolve(np.array(self.coeffs), np.array(other.coeffs))))

    __rmul__ = __mul__

    def __neg__(self):
        return ComplexPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0j] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return ComplexPoly(tuple(out))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)


def multiply(p: ComplexPoly, q: ComplexPoly) -> ComplexPoly:
    """Coefficient convolution; degree adds."""
    return p * q


def derivative(p: ComplexPoly) -> ComplexPoly:
    return p.derivative()


def divide_exact(p: ComplexPoly, q: ComplexPoly, tol: float = 1e-9) -> ComplexPoly:
    """Divide ``p`` by ``q`` assuming the division is exact up to rounding.

    Raises :class:`RemainderTooLarge` when any remainder coefficient exceeds
    ``tol * (1 + max |p coeff|)`` -- the signal that an upstream factorization
    is inconsistent.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    bound = tol * (1.0 + max(abs(c) for c in p.coeffs))
    dp, dq = p.degree, q.degree
    if dp < dq or p.is_zero():
        if all(abs(c) <= bound for c in p.coeffs):
            return ComplexPoly.zero()
        raise RemainderTooLarge(
            f"divisor degree {dq} exceeds dividend degree {dp} with nonzero dividend"
        )
    rem = list(p.coeffs)
    out = [0j] * (dp - dq + 1)
    qlead = q.coeffs[-1]
    for k in range(dp - dq, -1, -1):
        c = rem[k + dq] / qlead
        out[k] = c
        for j in range(dq + 1):
            rem[k + j] -= c * q.coeffs[j]
    worst = max(abs(r) for r in rem)
    if worst > bound:
        raise RemainderTooLarge(f"remainder magnitude {worst:.3e} exceeds bound {bound:.3e}")
    return ComplexPoly(tuple(out))


def _horner_arr(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    r = np.full(z.shape, coeffs[-1], dtype=complex)
    for c in coeffs[-2::-1]:
        r = r * z + c
    return r


def _eval_with_bound(coeffs: np.ndarray, z: np.ndarray):
    """Horner evaluation plus a running rounding-error bound per point."""
    r = np.full(z.shape, coeffs[-1], dtype=complex)
    e = np.abs(r)
    az = np.abs(z)
    for c in coeffs[-2::-1]:
        r = r * z + c
        e = e * az + np.abs(r)
    return r, _EPS * (2.0 * e)


def find_roots(p: ComplexPoly, seed: int = 0, max_iter: int = 500) -> list:
    """All roots of ``p`` by Aberth-Ehrlich simultaneous iteration.

    Starts from a randomly perturbed circle (deterministic for a given
    ``seed``), iterates until every correction falls below ``1e-13 * scale``
    or the residual is at rounding level, then polishes with a few Newton
    steps.  Multiple roots come back repeated, smeared over the usual
    ``eps**(1/multiplicity)`` disc; use :func:`cluster_roots` together with
    :func:`refine_multiple_root` to sharpen them.
    """
    if p.is_zero() or p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    a = np.array(p.coeffs, dtype=complex)
    a = a / a[-1]
    n = len(a) - 1
    if n == 1:
        return [complex(-a[0])]

    rng = np.random.default_rng(seed)
    radius = 1.0 + float(np.max(np.abs(a[:-1])))
    ang = 2.0 * np.pi * (np.arange(n) + 0.37) / n + rng.uniform(-0.2, 0.2, n)
    rad = radius * (0.85 + 0.2 * rng.uniform(0.0, 1.0, n))
    z = rad * np.exp(1j * ang)
    ad = a[1:] * np.arange(1, n + 1)

    settled = False
    for _ in range(max_iter):
        pv, bound = _eval_with_bound(a, z)
        dv = _horner_arr(ad, z)
        dv = np.where(dv == 0, 1e-300, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = (1.0 / diff).sum(axis=1)
        den = 1.0 - w * s
        den = np.where(np.abs(den) < 1e-300, 1e-300, den)
        corr = w / den
        z = z - corr
        scale = 1.0 + np.abs(z)
        done = (np.abs(corr) <= 1e-13 * scale) | (np.abs(pv) <= 8.0 * bound)
        if bool(done.all()):
            settled = True
            break
    if not settled:
        raise NoConvergence(f"roots did not settle in {max_iter} sweeps; consider rescaling")

    for _ in range(3):
        pv = _horner_arr(a, z)
        dv = _horner_arr(ad, z)
        dv = np.where(np.abs(dv) < 1e-300, 1e-300, dv)
        z2 = z - pv / dv
        better = np.abs(_horner_arr(a, z2)) <= np.abs(pv)
        z = np.where(better, z2, z)
    return [complex(v) for v in z]


@dataclass(frozen=True)
class RootCluster:
    """A group of raw root approximations treated as one multiple root."""

    center: complex
    multiplicity: int
    raw_members: tuple

    @property
    def radius(self):
        return max((abs(m - self.center) for m in self.raw_members), default=0.0)


def cluster_roots(roots, scale: float = None, tol: float = CLUSTER_TOL) -> list:
    """Partition root approximations into multiplicity clusters.

    Single-linkage grouping with radius ``tol * scale`` where ``scale``
    defaults to ``1 + max |root|``.  Clusters are returned sorted by center
    (real part, then imaginary part) and carry their members sorted the same
    way, so the output is deterministic.
    """
    pts = [complex(r) for r in roots]
    if not pts:
        return []
    if scale is None:
        scale = 1.0 + max(abs(r) for r in pts)
    radius = tol * scale

    parent = list(range(len(pts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    groups = {}
    for i in range(len(pts)):
        groups.setdefault(find(i), []).append(pts[i])
    clusters = []
    for members in groups.values():
        members.sort(key=lambda w: (w.real, w.imag))
        center = sum(members) / len(members)
        clusters.append(RootCluster(center, len(members), tuple(members)))
    clusters.sort(key=lambda c: (c.center.real, c.center.imag))
    return clusters


def refine_multiple_root(p: ComplexPoly, center: complex, multiplicity: int) -> complex:
    """Sharpen a multiple-root estimate to full precision.

    A root of multiplicity ``m`` of ``p`` is a simple root of the
    ``(m-1)``-th derivative, where Newton converges quadratically; this
    recovers the accuracy that plain root finding loses to the
    ``eps**(1/m)`` smear.  Falls back to the input if Newton wanders off.
    """
    q = p
    for _ in range(multiplicity - 1):
        q = q.derivative()
    dq = q.derivative()
    if dq.is_zero():
        return complex(center)
    z = complex(center)
    for _ in range(30):
        dv = dq(z)
        if dv == 0:
            break
        step = q(z) / dv
        z = z - step
        if abs(step) < 1e-15 * (1.0 + abs(z)):
            break
    if abs(z - center) > 0.01 * (1.0 + abs(center)):
        return complex(center)
    return z


def structured_roots(p: ComplexPoly, seed: int = 0, tol: float = 2e-4) -> list:
    """Roots of ``p`` as refined multiplicity clusters.

    The wider default radius absorbs the smear of triple roots in double
    precision; centers are then re-polished via :func:`refine_multiple_root`,
    so downstream consumers see multiple roots at near machine accuracy.
    """
    raw = find_roots(p, seed=seed)
    clusters = cluster_roots(raw, tol=tol)
    refined = []
    for c in clusters:
        if c.multiplicity > 1:
            center = refine_multiple_root(p, c.center, c.multiplicity)
            refined.append(RootCluster(center, c.multiplicity, c.raw_members))
        else:
            refined.append(c)
    refined.sort(key=lambda c: (c.center.real, c.center.imag))
    return refined
