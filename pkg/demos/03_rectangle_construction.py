"""Constructing minimal continua through the corners of a rectangle.

Prescribe the four points +-1 +- i*beta and ask for the connected set of
least capacity through them.  For each degree n the power-sum system picks
both the admissible rectangle height beta and the interior structure: two
bifurcation points where three arcs meet at 120 degrees, plus tangency
points where an arc touches a level line.  Higher degree buys a richer
(and lower-capacity) interior skeleton for a flatter rectangle.
"""

import pathlib

from chebotarev import (
    PointVar,
    ProblemSpec,
    SignConfig,
    arcs_to_csv,
    arcs_to_svg,
    build_graph,
    solve,
    trace,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def rect_c_vars(beta0):
    """Corners +-1 +- i*beta with one free height parameter."""
    return [
        PointVar("c", 1, "free_imag", value=1.0, initial=complex(1.0, beta0)),
        PointVar("c", 2, "linked", kind="conjugate", target=("c", 1)),
        PointVar("c", 3, "linked", kind="negate_conjugate", target=("c", 1)),
        PointVar("c", 4, "linked", kind="negate", target=("c", 1)),
    ]


def neg_pair(role, i, j, init):
    return [
        PointVar(role, i, "free_real", initial=init),
        PointVar(role, j, "linked", kind="negate", target=(role, i)),
    ]


problems = {
    5: ProblemSpec(SignConfig(5, (1, 1, -1, -1), (-1, 1), ()),
                   rect_c_vars(0.4) + neg_pair("d", 1, 2, 0.6)),
    6: ProblemSpec(SignConfig(6, (1, 1, 1, 1), (-1, -1), (1,)),
                   rect_c_vars(0.3) + neg_pair("d", 1, 2, 0.8)
                   + [PointVar("z", 1, "fixed", value=0.0)]),
    7: ProblemSpec(SignConfig(7, (1, 1, -1, -1), (-1, 1), (1, -1)),
                   rect_c_vars(0.2) + neg_pair("d", 1, 2, 0.85)
                   + neg_pair("z", 1, 2, 0.3)),
    8: ProblemSpec(SignConfig(8, (1, 1, 1, 1), (-1, -1), (1, -1, 1)),
                   rect_c_vars(0.15) + neg_pair("d", 1, 2, 0.9) + [
                       PointVar("z", 1, "free_real", initial=0.45),
                       PointVar("z", 2, "free_real", initial=0.05),
                       PointVar("z", 3, "linked", kind="negate", target=("z", 1)),
                   ]),
    9: ProblemSpec(SignConfig(9, (1, 1, -1, -1), (-1, 1), (1, -1, -1, 1)),
                   rect_c_vars(0.11) + neg_pair("d", 1, 2, 0.9)
                   + neg_pair("z", 1, 2, 0.55) + neg_pair("z", 3, 4, 0.2)),
}

print(f"{'n':>2} {'beta':>10} {'d1':>10} {'z (real parts)':>22} {'capacity':>10} {'residual':>9}")
solutions = {}
for n, spec in problems.items():
    sol = solve(spec)
    solutions[n] = sol
    beta = sol.point("c", 1).imag
    zs = " ".join(f"{z.real:+.4f}" for z in sol.points["z"]) or "-"
    print(f"{n:2d} {beta:10.6f} {sol.point('d', 1).real:10.6f} {zs:>22} "
          f"{sol.capacity:10.6f} {sol.residual_inf_norm:9.1e}")

# The second admissible sign system for n = 9 ships the tangency points
# into the complex plane; both solutions are legitimate continua for
# DIFFERENT rectangle heights.
spec92 = ProblemSpec(
    SignConfig(9, (1, 1, -1, -1), (1, -1), (-1, -1, 1, 1)),
    rect_c_vars(0.6) + neg_pair("d", 1, 2, 0.55) + [
        PointVar("z", 1, "free_complex", initial=0.9 + 0.5j),
        PointVar("z", 2, "linked", kind="conjugate", target=("z", 1)),
        PointVar("z", 3, "linked", kind="negate_conjugate", target=("z", 1)),
        PointVar("z", 4, "linked", kind="negate", target=("z", 1)),
    ],
)
sol92 = solve(spec92)
print(f"\nn=9, second sign system: beta = {sol92.point('c', 1).imag:.6f}, "
      f"z1 = {sol92.point('z', 1):.6f}, capacity = {sol92.capacity:.6f}")

# ---------------------------------------------------------------------------
# The n = 5 skeleton as a graph, and figures for the n = 5 and n = 9 cases.

sol5 = solutions[5]
arcs = trace(sol5.poly, steps=256)
graph = build_graph(arcs, expect_tree=True)
print(f"\nn=5 skeleton: {graph.leaf_count} leaves, "
      f"{sum(1 for d in graph.degrees if d == 3)} triple junctions, "
      f"{len(graph.edges)} arcs, tree = {graph.is_tree}")

for n, sol in ((5, sol5), (9, sol92)):
    arcs = trace(sol.poly, steps=256)
    svg = arcs_to_svg(arcs, c_points=sol.points["c"], d_points=sol.points["d"],
                      z_points=sol.points["z"])
    (OUT / f"rectangle_n{n}.svg").write_text(svg)
    (OUT / f"rectangle_n{n}.csv").write_text(arcs_to_csv(arcs))
    print(f"wrote {OUT / f'rectangle_n{n}.svg'} and .csv")
