"""Branch-continued contour integration of P(w)/sqrt(H(w)) along polylines.

The integrand's square root is continued analytically along the path: at
each sample the sign of the principal square root is chosen to minimize the
jump from the previous sample.  Endpoint singularities (the path starting or
ending at a simple zero of H) are removed by the substitution
``w = e + s**2 * (b - e)``, after which Gauss-Legendre panels converge fast.

Only the real part of the resulting integral is path-independent (it is a
Green function); the overall sign of a leg whose branch cannot be anchored
is therefore immaterial to every consumer in this package, and all of them
compare ``|Re|`` or minimize over a global sign.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BranchJump
from .poly import ComplexPoly

_GL_CACHE = {}


def _gl_rule(order):
    """Gauss-Legendre nodes and weights mapped to the unit interval."""
    if order not in _GL_CACHE:
        nodes, weights = np.polynomial.legendre.leggauss(order)
        _GL_CACHE[order] = (0.5 * (nodes + 1.0), 0.5 * weights)
    return _GL_CACHE[order]


@dataclass(frozen=True)
class QuadraturePath:
    """A polyline contour with optional square-root endpoint handling."""

    waypoints: tuple
    samples_per_segment: int = 32
    singular_start: bool = False
    singular_end: bool = False

    def __post_init__(self):
        pts = tuple(complex(w) for w in self.waypoints)
        if len(pts) < 2:
            raise ValueError("a path needs at least two waypoints")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError("consecutive waypoints must be distinct")
        object.__setattr__(self, "waypoints", pts)


@dataclass
class BranchState:
    """Continuity tracker for one square root along a sampling sequence."""

    poly: ComplexPoly
    prev: complex = None

    def value(self, w):
        v = np.sqrt(complex(self.poly(w)))
        if self.prev is not None:
            d_keep = abs(v - self.prev)
            d_flip = abs(v + self.prev)
            if d_flip < d_keep:
                v = -v
                d_keep, d_flip = d_flip, d_keep
            if abs(self.prev) > 0 and d_flip - d_keep < 1e-6 * (abs(v) + abs(self.prev)):
                raise BranchJump("square-root continuation ambiguous; refine sampling")
        self.prev = v
        return v


def _leg_quadrature(g, panels, order):
    """Integrate the stateful integrand ``g(t, state)`` over [0, 1].

    A fresh branch state is threaded through the nodes in path order, so
    every refinement level re-walks its own continuation.
    """
    gl_t, gl_w = _gl_rule(order)
    state = {"sqrt": None}
    total = 0j
    width = 1.0 / panels
    for p in range(panels):
        t0 = p * width
        vals = np.empty(len(gl_t), dtype=complex)
        for i, t in enumerate(gl_t):
            vals[i] = g(t0 + width * t, state)
        total += width * np.dot(gl_w, vals)
    return total


def _adaptive_leg(g, tol, max_level, order):
    prev = None
    value = None
    err = np.inf
    for level in range(max_level + 1):
        try:
            value = _leg_quadrature(g, 2**level, order)
        except BranchJump:
            if level == max_level:
                raise
            continue
        if prev is not None:
            err = abs(value - prev)
            if err < tol:
                return value, err
        prev = value
    return value, err


def _straight_leg(numer, sqrt_denom, a, b, anchor, tol, max_level, order):
    delta = b - a

    def g(t, state):
        w = a + t * delta
        if state["sqrt"] is None:
            state["sqrt"] = BranchState(sqrt_denom, anchor)
        return numer(w) * delta / state["sqrt"].value(w)

    value, err = _adaptive_leg(g, tol, max_level, order)
    # extend the continuation to the exact leg end for the hand-off
    tracker = BranchState(sqrt_denom, anchor)
    for t in np.linspace(0.0, 1.0, 65):
        carry = tracker.value(a + t * delta)
    return value, err, carry


def _singular_leg(numer, sqrt_denom, e, b, tol, max_level, order):
    """Integrate from the singular endpoint ``e`` to ``b`` via w = e + s^2 (b-e).

    The branch is threaded freshly from the first sample; the caller aligns
    the overall sign using the hand-off value at ``b``.
    """
    delta = b - e

    def g(s, state):
        w = e + s * s * delta
        if state["sqrt"] is None:
            state["sqrt"] = BranchState(sqrt_denom)
        return numer(w) * 2.0 * s * delta / state["sqrt"].value(w)

    value, err = _adaptive_leg(g, tol, max_level, order)
    tracker = BranchState(sqrt_denom)
    for s in np.linspace(1.0 / 64.0, 1.0, 64):
        carry = tracker.value(e + s * s * delta)
    return value, err, carry


def path_integral(numer: ComplexPoly, sqrt_denom: ComplexPoly, path: QuadraturePath,
                  tol: float = 1e-9, max_level: int = 10):
    """Integrate ``numer(w) / sqrt(sqrt_denom(w))`` along the path.

    Returns ``(value, error_estimate)`` where the estimate is the sum of the
    last refinement differences over all legs.  ``singular_start`` /
    ``singular_end`` mark path endpoints sitting on zeros of ``sqrt_denom``
    (or of the numerator), where the square-root substitution is applied.
    """
    pts = list(path.waypoints)
    if len(pts) == 2 and path.singular_start and path.singular_end:
        mid = 0.5 * (pts[0] + pts[1])
        pts = [pts[0], mid, pts[1]]

    order = max(4, int(path.samples_per_segment))
    segments = list(zip(pts, pts[1:]))
    total = 0j
    toterr = 0.0
    carry = None
    for i, (a, b) in enumerate(segments):
        first = i == 0
        last = i == len(segments) - 1
        if first and path.singular_start:
            value, err, carry = _singular_leg(numer, sqrt_denom, a, b, tol, max_level, order)
            total += value
            toterr += err
        elif last and path.singular_end:
            value, err, v_at_a = _singular_leg(numer, sqrt_denom, b, a, tol, max_level, order)
            if carry is not None and abs(v_at_a - carry) > abs(v_at_a + carry):
                value = -value
            total -= value
            toterr += err
            carry = None
        else:
            value, err, carry = _straight_leg(numer, sqrt_denom, a, b, carry, tol, max_level, order)
            total += value
            toterr += err
    return total, toterr


def point_segment_distance(p: complex, a: complex, b: complex) -> float:
    """Euclidean distance from point ``p`` to the segment ``[a, b]``."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0:
        return abs(p - a)
    t = ((p - a).real * ab.real + (p - a).imag * ab.imag) / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))
