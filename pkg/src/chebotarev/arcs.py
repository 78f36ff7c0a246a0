"""Tracing the inverse image of [-1, 1] as explicit analytic arc polylines.

The inverse image of a degree-n polynomial consists of n analytic Jordan
arcs whose endpoints are the zeros of T^2 - 1, counted with multiplicity.
Writing the level as cos(theta), theta in [0, pi], each arc is swept by the
n roots of T(z) - cos(theta): roots at consecutive levels are chained by a
greedy global assignment against linearly extrapolated positions, which
also carries chains straight through interior crossing points where plain
nearest-neighbor matching would turn the corner.  A zero of T^2 - 1 of
multiplicity kappa collects kappa arc ends meeting at equal angles
2*pi/kappa; at double zeros the two incident arcs are conjoined into one
analytic arc when their tangents are anti-parallel.
"""

from dataclasses import dataclass

import numpy as np

from .connect import UnionFind, dist_to_interval
from .errors import MatchingAmbiguity, NotATree
from .poly import ComplexPoly, cluster_roots, find_roots, structured_roots


@dataclass(frozen=True)
class Arc:
    """One traced arc: polyline samples with their level parameters."""

    samples: tuple
    levels: tuple                # theta per sample, each in [0, pi]
    start_point: complex         # zero of T^2 - 1 at samples[0]
    end_point: complex           # zero of T^2 - 1 at samples[-1]
    conjoined_through: tuple = ()


def _expanded(clusters):
    out = []
    for c in clusters:
        out.extend([c.center] * c.multiplicity)
    return out


class _Chain:
    __slots__ = ("samples", "levels")

    def __init__(self, seed, level):
        self.samples = [complex(seed)]
        self.levels = [float(level)]

    def predicted(self):
        if len(self.samples) >= 2:
            return 2.0 * self.samples[-1] - self.samples[-2]
        return self.samples[-1]

    def last_step(self):
        if len(self.samples) >= 2:
            return abs(self.samples[-1] - self.samples[-2])
        return None


def _greedy_assign(chains, candidates):
    """Greedy global matching of chains to candidate roots, nearest first."""
    preds = [c.predicted() for c in chains]
    pairs = []
    for i, p in enumerate(preds):
        for j, cand in enumerate(candidates):
            pairs.append((abs(cand - p), i, j))
    pairs.sort(key=lambda t: (t[0], t[1], t[2]))
    taken_chain = [False] * len(chains)
    taken_cand = [False] * len(candidates)
    assignment = [None] * len(chains)
    for dist, i, j in pairs:
        if taken_chain[i] or taken_cand[j]:
            continue
        taken_chain[i] = True
        taken_cand[j] = True
        assignment[i] = (j, dist)
    return assignment


def _advance(chains, T, theta_a, theta_b, seed, scale, depth=0):
    """Extend every chain from level theta_a to theta_b, refining on doubt.

    A large step is accepted without refinement when every contending
    candidate sits in one tight huddle: that is a level where several arcs
    pass through a common point, the choice within the huddle is immaterial,
    and no amount of level bisection could separate the candidates anyway.
    """
    if depth > 20:
        raise MatchingAmbiguity("level matching still ambiguous at refinement depth 20")
    roots = find_roots(T - float(np.cos(theta_b)), seed=seed)
    assignment = _greedy_assign(chains, roots)

    needs_refine = False
    for chain, (j, dist) in zip(chains, assignment):
        prev = chain.last_step()
        allowance = 0.05 * scale if prev is None else 3.0 * prev + 0.01 * scale
        if dist <= allowance:
            continue
        pred = chain.predicted()
        contenders = [r for r in roots if abs(r - pred) <= 1.5 * dist]
        spread = max(abs(a - b) for a in contenders for b in contenders)
        if spread <= 0.2 * dist:
            continue
        needs_refine = True
        break
    if needs_refine:
        mid = 0.5 * (theta_a + theta_b)
        _advance(chains, T, theta_a, mid, seed, scale, depth + 1)
        _advance(chains, T, mid, theta_b, seed, scale, depth + 1)
        return
    for chain, (j, _) in zip(chains, assignment):
        chain.samples.append(roots[j])
        chain.levels.append(float(theta_b))


def _tangent_at_start(samples):
    """Outgoing tangent angle at samples[0], extrapolated toward the endpoint."""
    if len(samples) < 3:
        return float(np.angle(samples[1] - samples[0]))
    t1 = samples[1] - samples[0]
    t2 = samples[2] - samples[1]
    a1 = float(np.angle(t1))
    a2 = float(np.angle(t2))
    while a2 - a1 > np.pi:
        a2 -= 2 * np.pi
    while a1 - a2 > np.pi:
        a2 += 2 * np.pi
    return 1.5 * a1 - 0.5 * a2


def trace(T: ComplexPoly, steps: int = 256, seed: int = 0) -> list:
    """Sweep the level parameter and chain the roots into analytic arcs.

    Endpoint root sets are computed from refined multiplicity clusters, so
    arcs terminate on multiple zeros at full accuracy.  Chains whose shared
    endpoint is a double zero of T^2 - 1 are conjoined when anti-parallel.
    """
    if steps < 64:
        raise ValueError("steps must be at least 64")
    n = T.degree
    plus_clusters = structured_roots(T - 1.0, seed=seed)
    minus_clusters = structured_roots(T + 1.0, seed=seed)
    plus_roots = _expanded(plus_clusters)
    minus_roots = _expanded(minus_clusters)
    if len(plus_roots) != n or len(minus_roots) != n:
        raise ValueError("level sets do not have full degree; leading coefficient issue?")
    scale = 1.0 + max(abs(r) for r in plus_roots + minus_roots)

    chains = [_Chain(r, 0.0) for r in plus_roots]
    grid = [np.pi * m / steps for m in range(steps + 1)]
    for theta_a, theta_b in zip(grid[:-2], grid[1:-1]):
        _advance(chains, T, theta_a, theta_b, seed, scale)

    assignment = _greedy_assign(chains, minus_roots)
    for chain, (j, _) in zip(chains, assignment):
        chain.samples.append(minus_roots[j])
        chain.levels.append(float(np.pi))

    pieces = [
        {
            "samples": list(c.samples),
            "levels": list(c.levels),
            "through": [],
        }
        for c in chains
    ]

    doubles = [c.center for c in plus_clusters + minus_clusters if c.multiplicity == 2]
    for q in doubles:
        incident = []
        for piece in pieces:
            for end in (0, -1):
                if abs(piece["samples"][end] - q) <= 1e-9 * scale:
                    incident.append((piece, end))
        if len(incident) != 2:
            continue
        (pa, ea), (pb, eb) = incident
        if pa is pb:
            continue  # would close a loop; leave the pieces separate
        sa = pa["samples"] if ea == 0 else pa["samples"][::-1]
        la = pa["levels"] if ea == 0 else pa["levels"][::-1]
        sb = pb["samples"] if eb == 0 else pb["samples"][::-1]
        lb = pb["levels"] if eb == 0 else pb["levels"][::-1]
        ang_a = _tangent_at_start(sa)
        ang_b = _tangent_at_start(sb)
        gap = abs(float(np.angle(np.exp(1j * (ang_a - ang_b - np.pi)))))
        if gap > 1e-2:
            continue
        merged = {
            "samples": sa[::-1] + sb[1:],
            "levels": la[::-1] + lb[1:],
            "through": pa["through"] + [q] + pb["through"],
        }
        pieces.remove(pa)
        pieces.remove(pb)
        pieces.append(merged)

    arcs = [
        Arc(
            samples=tuple(p["samples"]),
            levels=tuple(p["levels"]),
            start_point=p["samples"][0],
            end_point=p["samples"][-1],
            conjoined_through=tuple(p["through"]),
        )
        for p in pieces
    ]
    arcs.sort(key=lambda a: (a.start_point.real, a.start_point.imag,
                             a.end_point.real, a.end_point.imag))
    return arcs


def junction_angles(T: ComplexPoly, vertex: complex, seed: int = 0) -> list:
    """Tangent directions of the arcs meeting at a multiple zero of T^2 - 1.

    Measured by solving the level equation at two small offsets from the
    vertex level and extrapolating each incident direction to radius zero.
    Returns the sorted list of angles; successive gaps are 2*pi/kappa for a
    zero of multiplicity kappa.
    """
    vertex = complex(vertex)
    p2 = T * T - 1.0
    scale = 1.0 + abs(vertex)

    # multiplicity of the vertex as a zero of T^2 - 1
    mags = []
    q = p2
    factorial = 1.0
    for j in range(p2.degree + 1):
        mags.append(abs(q(vertex)) * scale**j / factorial)
        q = q.derivative()
        factorial *= j + 1
    top = max(mags)
    kappa = next(j for j, m in enumerate(mags) if m > 1e-6 * top)
    if kappa < 2:
        raise ValueError("vertex must be a multiple zero of T^2 - 1")

    t_val = T(vertex)
    sign = 1.0 if t_val.real >= 0 else -1.0

    def directions(dtheta):
        level = float(np.cos(dtheta)) if sign > 0 else float(np.cos(np.pi - dtheta))
        roots = find_roots(T - level, seed=seed)
        roots.sort(key=lambda r: abs(r - vertex))
        near = roots[:kappa]
        radius = float(np.mean([abs(r - vertex) for r in near]))
        return [float(np.angle(r - vertex)) for r in near], radius

    dirs_c, r_c = directions(2e-3)
    dirs_f, r_f = directions(1e-3)

    out = []
    for af in dirs_f:
        ac = min(dirs_c, key=lambda a: abs(np.angle(np.exp(1j * (a - af)))))
        diff = float(np.angle(np.exp(1j * (af - ac))))
        extrapolated = af + diff * r_f / (r_c - r_f)
        out.append(float(np.angle(np.exp(1j * extrapolated))))
    return sorted(out)


def find_crossings(T: ComplexPoly, seed: int = 0, tol: float = 1e-7) -> list:
    """Interior crossing points: critical points mapping strictly inside (-1, 1).

    These are places where arcs cross without branching; they are not zeros
    of T^2 - 1 and therefore not graph vertices.
    """
    if T.degree < 2:
        return []
    crit = find_roots(T.derivative(), seed=seed)
    hits = []
    for w in crit:
        img = T(w)
        if dist_to_interval(img) < tol and abs(img) < 1.0 - 1e-6:
            hits.append(w)
    hits.sort(key=lambda w: (w.real, w.imag))
    out = []
    for w in hits:
        if out and abs(w - out[-1]) <= 1e-6 * (1.0 + abs(w)):
            continue
        out.append(w)
    return out


@dataclass(frozen=True)
class ContinuumGraph:
    """Arc endpoints clustered into vertices, arcs as edges."""

    vertices: tuple
    degrees: tuple
    edges: tuple                 # (vertex index, vertex index) per arc
    is_tree: bool
    crossing_points: tuple = ()

    @property
    def leaf_count(self):
        return sum(1 for d in self.degrees if d == 1)


def build_graph(arcs, expect_tree: bool = False, crossing_points=(),
                cluster_tol: float = 1e-6) -> ContinuumGraph:
    """Cluster arc endpoints into vertices and assemble the incidence graph.

    For a solved construction the graph is a tree with the simple points as
    leaves and the triple points as degree-3 vertices; ``expect_tree`` turns
    a violation into :class:`NotATree`.
    """
    endpoints = []
    for a in arcs:
        endpoints.append(a.start_point)
        endpoints.append(a.end_point)
    clusters = cluster_roots(endpoints, tol=cluster_tol)
    centers = [c.center for c in clusters]

    def vertex_of(p):
        return min(range(len(centers)), key=lambda i: abs(centers[i] - p))

    edges = []
    degrees = [0] * len(centers)
    for a in arcs:
        vi = vertex_of(a.start_point)
        vj = vertex_of(a.end_point)
        edges.append((vi, vj))
        degrees[vi] += 1
        degrees[vj] += 1

    uf = UnionFind(len(centers))
    for vi, vj in edges:
        uf.union(vi, vj)
    connected = uf.count == 1 if centers else True
    is_tree = connected and len(edges) == len(centers) - 1
    if expect_tree and not is_tree:
        raise NotATree(
            f"{len(centers)} vertices / {len(edges)} edges, connected={connected}"
        )
    return ContinuumGraph(tuple(centers), tuple(degrees), tuple(edges),
                          is_tree, tuple(crossing_points))


# ---------------------------------------------------------------------------
# emission


def arcs_to_csv(arcs) -> str:
    """CSV dump: one row per sample, columns arc_id, theta, re, im."""
    lines = ["arc_id,theta,re,im"]
    for aid, arc in enumerate(arcs):
        for theta, s in zip(arc.levels, arc.samples):
            lines.append(f"{aid},{theta:.12g},{s.real:.12g},{s.imag:.12g}")
    return "\n".join(lines) + "\n"


def arcs_to_svg(arcs, c_points=(), d_points=(), z_points=(), size: int = 720) -> str:
    """Deterministic SVG rendering of the traced continuum.

    Arcs are polylines in arc-id order; prescribed points are filled
    circles, bifurcation points triangles, tangency points crosses.  The
    viewBox derives from the bounding box of everything drawn.
    """
    pts = [s for a in arcs for s in a.samples]
    pts += [complex(p) for p in list(c_points) + list(d_points) + list(z_points)]
    if not pts:
        raise ValueError("nothing to draw")
    x0, x1 = min(p.real for p in pts), max(p.real for p in pts)
    y0, y1 = min(p.imag for p in pts), max(p.imag for p in pts)
    w = max(x1 - x0, 1e-6)
    h = max(y1 - y0, 1e-6)
    pad = 0.08 * max(w, h)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    w, h = x1 - x0, y1 - y0
    scale = size / max(w, h)
    width, height = w * scale, h * scale

    def sx(p):
        return (p.real - x0) * scale

    def sy(p):
        return height - (p.imag - y0) * scale

    mark = 0.008 * size
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" '
        f'height="{height:.1f}" viewBox="0 0 {width:.6g} {height:.6g}">',
        f'<rect x="0" y="0" width="{width:.6g}" height="{height:.6g}" fill="#ffffff"/>',
    ]
    for arc in arcs:
        coords = " ".join(f"{sx(s):.3f},{sy(s):.3f}" for s in arc.samples)
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="#1b5f8a" stroke-width="1.6"/>'
        )
    for p in c_points:
        p = complex(p)
        out.append(
            f'<circle cx="{sx(p):.3f}" cy="{sy(p):.3f}" r="{mark:.2f}" fill="#c0392b"/>'
        )
    for p in d_points:
        p = complex(p)
        x, y = sx(p), sy(p)
        m = mark * 1.3
        out.append(
            f'<path d="M {x:.3f} {y - m:.3f} L {x - m:.3f} {y + m:.3f} '
            f'L {x + m:.3f} {y + m:.3f} Z" fill="#1d8348"/>'
        )
    for p in z_points:
        p = complex(p)
        x, y = sx(p), sy(p)
        m = mark
        out.append(
            f'<path d="M {x - m:.3f} {y - m:.3f} L {x + m:.3f} {y + m:.3f} '
            f'M {x - m:.3f} {y + m:.3f} L {x + m:.3f} {y - m:.3f}" '
            f'stroke="#8e44ad" stroke-width="1.8"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
