import math

import numpy as np
import pytest

from chebotarev import (
    NotATree,
    arcs_to_csv,
    arcs_to_svg,
    build_graph,
    dist_to_interval,
    find_crossings,
    grid_oracle,
    junction_angles,
    trace,
)

from conftest import cheb2, star, t4, two_intervals


def _gaps(angles):
    angles = sorted(angles)
    return [(angles[(i + 1) % len(angles)] - angles[i]) % (2 * math.pi)
            for i in range(len(angles))]


class TestTraceSegment:
    def test_conjoins_to_single_arc(self):
        arcs = trace(cheb2(), steps=128)
        assert len(arcs) == 1
        arc = arcs[0]
        assert len(arc.conjoined_through) == 1
        assert abs(arc.conjoined_through[0]) < 1e-10
        ends = sorted([arc.start_point, arc.end_point], key=lambda w: w.real)
        assert abs(ends[0] + 1) < 1e-12 and abs(ends[1] - 1) < 1e-12

    def test_samples_stay_on_the_set(self):
        for arc in trace(cheb2(), steps=128):
            for s in arc.samples:
                assert dist_to_interval(cheb2()(s)) < 1e-8

    def test_levels_in_range(self):
        for arc in trace(cheb2(), steps=128):
            assert all(0.0 <= t <= math.pi for t in arc.levels)


class TestTraceStar:
    def test_five_diameters(self):
        arcs = trace(star(5), steps=256)
        assert len(arcs) == 5
        # endpoints are the 10th roots of unity, and each arc is a diameter
        endpoints = sorted(
            [a.start_point for a in arcs] + [a.end_point for a in arcs],
            key=lambda w: (round(w.real, 8), w.imag),
        )
        expected = sorted((np.exp(1j * np.pi * k / 5) for k in range(10)),
                          key=lambda w: (round(w.real, 8), w.imag))
        assert max(abs(a - b) for a, b in zip(endpoints, expected)) < 1e-8
        for a in arcs:
            assert abs(a.start_point + a.end_point) < 1e-6

    def test_interior_crossing_detected(self):
        crossings = find_crossings(star(5))
        assert len(crossings) == 1
        assert abs(crossings[0]) < 1e-7

    def test_higher_order_interior_collisions(self):
        # ten arcs pass through the origin at one level; the matcher must
        # carry all ten chains through the pile-up
        T = star(10)
        arcs = trace(T, steps=256)
        assert len(arcs) == 10
        endpoints = sorted(
            [a.start_point for a in arcs] + [a.end_point for a in arcs],
            key=lambda w: (round(w.real, 8), w.imag),
        )
        expected = sorted((np.exp(1j * np.pi * k / 10) for k in range(20)),
                          key=lambda w: (round(w.real, 8), w.imag))
        assert max(abs(a - b) for a, b in zip(endpoints, expected)) < 1e-8
        for arc in arcs:
            for s in arc.samples:
                assert dist_to_interval(T(s)) < 1e-8

    def test_star_graph_is_not_a_tree(self):
        arcs = trace(star(5), steps=128)
        graph = build_graph(arcs, crossing_points=find_crossings(star(5)))
        assert not graph.is_tree
        assert graph.leaf_count == 10
        assert len(graph.edges) == 5
        with pytest.raises(NotATree):
            build_graph(arcs, expect_tree=True)


class TestTraceQuartic:
    def test_conjoined_arc_count_and_census(self):
        T = t4(2.0)
        arcs = trace(T, steps=256)
        # maximal conjoining leaves min_arcs = 3 analytic arcs; endpoint
        # multiplicity census still counts 2n = 8
        assert len(arcs) == 3
        census = 2 * len(arcs) + 2 * sum(len(a.conjoined_through) for a in arcs)
        assert census == 8

    def test_crossings_at_half_sqrt_two(self):
        hits = sorted(find_crossings(t4(2.0)), key=lambda w: w.real)
        assert len(hits) == 2
        assert abs(hits[0] + 1 / math.sqrt(2)) < 1e-7
        assert abs(hits[1] - 1 / math.sqrt(2)) < 1e-7

    def test_membership_of_samples(self):
        T = t4(2.0)
        for arc in trace(T, steps=128):
            for s in arc.samples:
                assert dist_to_interval(T(s)) < 1e-8


class TestJunctionAngles:
    def test_straight_through_segment(self):
        angles = junction_angles(cheb2(), 0.0)
        assert len(angles) == 2
        gaps = _gaps(angles)
        assert all(abs(g - math.pi) < 1e-3 for g in gaps)

    def test_triple_point_of_solved_rectangle(self, solved_rect):
        sol = solved_rect(5)
        for d in sol.points["d"]:
            angles = junction_angles(sol.poly, d)
            assert len(angles) == 3
            gaps = _gaps(angles)
            assert all(abs(g - 2 * math.pi / 3) < 1e-3 for g in gaps)

    def test_simple_zero_rejected(self):
        with pytest.raises(ValueError):
            junction_angles(cheb2(), 1.0)


class TestSolvedRectangleStructure:
    def test_tree_shape(self, solved_rect):
        sol = solved_rect(5)
        arcs = trace(sol.poly, steps=256)
        assert len(arcs) == 5
        graph = build_graph(arcs, expect_tree=True)
        assert graph.is_tree
        assert graph.leaf_count == 4
        assert sorted(graph.degrees) == [1, 1, 1, 1, 3, 3]
        assert len(graph.edges) == 5

    def test_conjoining_restores_tree_for_n6(self, solved_rect):
        sol = solved_rect(6)
        arcs = trace(sol.poly, steps=256)
        assert len(arcs) == 5  # six chains, one pair conjoined at the origin
        graph = build_graph(arcs, expect_tree=True)
        assert graph.leaf_count == 4
        assert sorted(graph.degrees) == [1, 1, 1, 1, 3, 3]

    def test_endpoint_census(self, solved_rect):
        for n in (5, 6, 7):
            sol = solved_rect(n)
            arcs = trace(sol.poly, steps=128)
            census = 2 * len(arcs) + 2 * sum(len(a.conjoined_through) for a in arcs)
            assert census == 2 * n

    def test_arc_endpoints_are_level_roots(self, solved_rect):
        sol = solved_rect(5)
        T = sol.poly
        for arc in trace(T, steps=128):
            for e in (arc.start_point, arc.end_point):
                assert abs(T(e) ** 2 - 1.0) < 1e-10


class TestTraceCubicFamily:
    def test_conjoin_at_double_zero_and_crossing(self):
        from conftest import t3

        T = t3(0.5)
        arcs = trace(T, steps=256)
        # three chains, two conjoined at the double zero -3/8
        assert len(arcs) == 2
        through = [q for a in arcs for q in a.conjoined_through]
        assert len(through) == 1 and abs(through[0] - (-0.375)) < 1e-8
        census = 2 * len(arcs) + 2 * len(through)
        assert census == 6
        # the bar crosses the segment at (3 + alpha^2)/6 = 13/24
        hits = find_crossings(T)
        assert len(hits) == 1 and abs(hits[0] - 13.0 / 24.0) < 1e-7

    def test_junction_gap_at_double_zero(self):
        from conftest import t3

        angles = junction_angles(t3(0.5), -0.375)
        assert len(angles) == 2
        gaps = _gaps(angles)
        assert all(abs(g - math.pi) < 1e-3 for g in gaps)


class TestDisconnectedTrace:
    def test_two_intervals(self):
        T = two_intervals()
        arcs = trace(T, steps=128)
        assert len(arcs) == 2
        graph = build_graph(arcs)
        assert not graph.is_tree  # two components
        assert graph.leaf_count == 4


class TestGridAgreement:
    def test_samples_land_in_member_cells(self):
        T = star(5)
        report = grid_oracle(T, resolution=512)
        n = report.resolution
        x0, y0, x1, y1 = report.bbox
        hx, hy = (x1 - x0) / n, (y1 - y0) / n
        for arc in trace(T, steps=128):
            for s in arc.samples:
                ix = min(n - 1, max(0, int((s.real - x0) / hx)))
                iy = min(n - 1, max(0, int((s.imag - y0) / hy)))
                neighborhood = [
                    (ix + dx) + n * (iy + dy)
                    for dx in (-1, 0, 1) for dy in (-1, 0, 1)
                    if 0 <= ix + dx < n and 0 <= iy + dy < n
                ]
                assert any(c in report.member_cells for c in neighborhood)


class TestEmission:
    def test_csv_shape(self):
        arcs = trace(cheb2(), steps=128)
        text = arcs_to_csv(arcs)
        lines = text.strip().splitlines()
        assert lines[0] == "arc_id,theta,re,im"
        assert len(lines) == 1 + sum(len(a.samples) for a in arcs)
        parts = lines[1].split(",")
        assert len(parts) == 4
        int(parts[0])
        [float(x) for x in parts[1:]]

    def test_svg_deterministic(self):
        arcs = trace(star(5), steps=128)
        svg1 = arcs_to_svg(arcs, c_points=[1.0, -1.0], d_points=[0.0], z_points=[0.5j])
        svg2 = arcs_to_svg(arcs, c_points=[1.0, -1.0], d_points=[0.0], z_points=[0.5j])
        assert svg1 == svg2
        assert svg1.startswith("<svg ")
        assert svg1.count("<polyline") == len(arcs)
        assert svg1.count("<circle") == 2
