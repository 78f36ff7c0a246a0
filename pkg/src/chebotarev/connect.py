"""Connectivity of the inverse image of [-1, 1] under a polynomial.

Two independent routes to the same verdict:

* the critical-point criterion -- the inverse image is connected exactly
  when every zero of T' maps into [-1, 1];
* a brute-force pixel oracle -- rasterize membership on a grid over the
  bounding box of the zeros of T^2 - 1 and count 8-connected components.

Tests require the two to agree on every fixture.
"""

from dataclasses import dataclass

import numpy as np

from .poly import ComplexPoly, find_roots

#: Lipschitz safety factor for the grid membership threshold.
LIPSCHITZ_FACTOR = 1.5


def dist_to_interval(w):
    """Euclidean distance from ``w`` to the segment [-1, 1] of the real axis.

    Accepts scalars or numpy arrays.
    """
    if isinstance(w, np.ndarray):
        x = np.maximum(np.abs(w.real) - 1.0, 0.0)
        return np.hypot(x, w.imag)
    w = complex(w)
    x = max(abs(w.real) - 1.0, 0.0)
    return float(np.hypot(x, w.imag))


@dataclass(frozen=True)
class MembershipParams:
    """Image-plane tolerance for declaring a point a member of the set."""

    tol_member: float = 1e-9

    def __post_init__(self):
        if self.tol_member <= 0:
            raise ValueError("tol_member must be positive")


@dataclass(frozen=True)
class Witness:
    """A critical point, its image, and the image's distance to [-1, 1]."""

    point: complex
    image: complex
    margin: float


@dataclass(frozen=True)
class ConnectivityVerdict:
    connected: bool
    witnesses: tuple

    def __bool__(self):
        return self.connected


def is_connected(T: ComplexPoly, tol: float = None, seed: int = 0) -> ConnectivityVerdict:
    """Critical-point criterion for connectivity of the inverse image.

    Connected iff every zero of T' has its image within ``tol`` of [-1, 1].
    The default tolerance scales with the coefficients because constructed
    polynomials place critical values exactly on the boundary +-1.
    """
    if T.degree < 2:
        raise ValueError("connectivity criterion needs degree >= 2")
    if tol is None:
        tol = 1e-7 * (1.0 + max(abs(c) for c in T.coeffs))
    crits = find_roots(T.derivative(), seed=seed)
    witnesses = []
    ok = True
    for c in sorted(crits, key=lambda w: (w.real, w.imag)):
        image = T(c)
        margin = dist_to_interval(image)
        witnesses.append(Witness(c, image, margin))
        if margin >= tol:
            ok = False
    return ConnectivityVerdict(ok, tuple(witnesses))


class UnionFind:
    """Path-compressing union-find over integer labels."""

    def __init__(self, size):
        self.parent = list(range(size))
        self.count = size

    def find(self, i):
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.count -= 1


@dataclass
class GridReport:
    """Rasterized membership of the inverse image over a bounding box."""

    bbox: tuple            # (x0, y0, x1, y1)
    resolution: int
    member_cells: frozenset  # linear indices ix + resolution * iy
    component_count: int
    component_of_cell: dict


def grid_oracle(T: ComplexPoly, params: MembershipParams = None,
                resolution: int = 512, seed: int = 0) -> GridReport:
    """Brute-force connectivity oracle on a pixel grid.

    The box is the bounding box of the zeros of T^2 - 1 inflated by 20%.
    A cell is a member when the image of its center lies within
    ``max(tol_member, LIPSCHITZ_FACTOR * h * max |T'| over the cell corners)``
    of [-1, 1]; the local Lipschitz bound keeps thin arcs from slipping
    between samples.  Components are counted with 8-neighbor union-find.
    """
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    if params is None:
        params = MembershipParams()
    roots = find_roots(T * T - 1.0, seed=seed)
    xs = [r.real for r in roots]
    ys = [r.imag for r in roots]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half_w = (max(xs) - min(xs)) / 2 * 1.2
    half_h = (max(ys) - min(ys)) / 2 * 1.2
    pad = 0.1 * max(half_w, half_h, 0.25)
    half_w += pad
    half_h += pad
    bbox = (cx - half_w, cy - half_h, cx + half_w, cy + half_h)

    nx = ny = resolution
    hx = (bbox[2] - bbox[0]) / nx
    hy = (bbox[3] - bbox[1]) / ny
    h = max(hx, hy)

    xc = bbox[0] + hx * (np.arange(nx) + 0.5)
    yc = bbox[1] + hy * (np.arange(ny) + 0.5)
    centers = xc[None, :] + 1j * yc[:, None]
    dist = dist_to_interval(T(centers))

    xg = bbox[0] + hx * np.arange(nx + 1)
    yg = bbox[1] + hy * np.arange(ny + 1)
    corners = xg[None, :] + 1j * yg[:, None]
    dmag = np.abs(T.derivative()(corners))
    cellmax = np.maximum(
        np.maximum(dmag[:-1, :-1], dmag[:-1, 1:]),
        np.maximum(dmag[1:, :-1], dmag[1:, 1:]),
    )
    thresh = np.maximum(params.tol_member, LIPSCHITZ_FACTOR * h * cellmax)
    member = dist < thresh

    idx = np.flatnonzero(member.ravel())
    uf = UnionFind(len(idx))
    label = {int(cell): i for i, cell in enumerate(idx)}
    for i, cell in enumerate(idx):
        cell = int(cell)
        ix, iy = cell % nx, cell // nx
        for dx, dy in ((-1, 0), (-1, -1), (0, -1), (1, -1)):
            jx, jy = ix + dx, iy + dy
            if 0 <= jx < nx and 0 <= jy < ny:
                j = label.get(jx + nx * jy)
                if j is not None:
                    uf.union(i, j)

    component_of_cell = {int(cell): uf.find(i) for i, cell in enumerate(idx)}
    count = len({r for r in component_of_cell.values()})
    return GridReport(bbox, resolution, frozenset(int(c) for c in idx), count, component_of_cell)


def complement_connected(report: GridReport) -> bool:
    """Flood-fill check that the non-member cells form one piece.

    Seeds a 4-neighbor fill from every non-member cell on the box boundary;
    the complement is connected (no holes) when the fill reaches all
    non-member cells.
    """
    n = report.resolution
    members = report.member_cells
    seen = bytearray(n * n)
    stack = []
    for ix in range(n):
        for iy in (0, n - 1):
            cell = ix + n * iy
            if cell not in members and not seen[cell]:
                seen[cell] = 1
                stack.append(cell)
    for iy in range(n):
        for ix in (0, n - 1):
            cell = ix + n * iy
            if cell not in members and not seen[cell]:
                seen[cell] = 1
                stack.append(cell)
    while stack:
        cell = stack.pop()
        ix, iy = cell % n, cell // n
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            jx, jy = ix + dx, iy + dy
            if 0 <= jx < n and 0 <= jy < n:
                nb = jx + n * jy
                if nb not in members and not seen[nb]:
                    seen[nb] = 1
                    stack.append(nb)
    reached = sum(seen)
    total_nonmember = n * n - len(members)
    return reached == total_nonmember


def grid_to_text(report: GridReport) -> str:
    """Portable text dump: header then one character per cell.

    Format: ``P-GRID <nx> <ny> <x0> <y0> <x1> <y1>`` followed by ``ny`` rows
    of ``nx`` characters, ``#`` for member and ``.`` otherwise.  Rows run
    from the top of the box (largest y) downward.
    """
    n = report.resolution
    x0, y0, x1, y1 = report.bbox
    lines = [f"P-GRID {n} {n} {x0:.12g} {y0:.12g} {x1:.12g} {y1:.12g}"]
    for iy in range(n - 1, -1, -1):
        row = "".join(
            "#" if (ix + n * iy) in report.member_cells else "." for ix in range(n)
        )
        lines.append(row)
    return "\n".join(lines) + "\n"
