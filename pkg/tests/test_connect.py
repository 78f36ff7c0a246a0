import math

import numpy as np
import pytest

from chebotarev import (
    ComplexPoly,
    MembershipParams,
    complement_connected,
    dist_to_interval,
    find_roots,
    grid_oracle,
    grid_to_text,
    is_connected,
)

from conftest import cheb2, cross, star, t3, t4, two_intervals


class TestDistToInterval:
    @pytest.mark.parametrize("w,expected", [
        (0.5, 0.0),
        (2.0, 1.0),
        (1j, 1.0),
        (-3.0, 2.0),
        (1 + 1j, 1.0),
        (0.5 + 0.5j, 0.5),
        (-2 - 1j, math.sqrt(2)),
    ])
    def test_values(self, w, expected):
        assert abs(dist_to_interval(w) - expected) < 1e-14

    def test_array_form(self):
        ws = np.array([0.5, 2.0, 1j, -3.0])
        out = dist_to_interval(ws)
        assert np.allclose(out, [0.0, 1.0, 1.0, 2.0])


class TestCriterion:
    def test_monomial_connected(self):
        verdict = is_connected(star(5))
        assert verdict
        assert len(verdict.witnesses) == 4  # quadruple critical point at 0
        assert all(w.margin < 1e-9 for w in verdict.witnesses)

    def test_cubic_connected_below_threshold(self):
        assert is_connected(t3(0.5))

    def test_cubic_disconnected_above_threshold(self):
        # the critical point (3 + alpha^2)/6 = 7/6 maps outside [-1, 1]
        verdict = is_connected(t3(2.0))
        assert not verdict
        bad = max(verdict.witnesses, key=lambda w: w.margin)
        assert abs(bad.point - 7 / 6) < 1e-9
        assert bad.margin > 1e-3

    def test_monotone_in_tolerance(self):
        T = t3(0.5)
        assert is_connected(T, tol=1e-7)
        assert is_connected(T, tol=1e-3)
        assert is_connected(T, tol=1.0)

    def test_degree_one_rejected(self):
        with pytest.raises(ValueError):
            is_connected(ComplexPoly([0, 1]))


class TestGridOracle:
    def test_segment(self):
        T = cheb2()
        report = grid_oracle(T, resolution=256)
        assert report.component_count == 1
        # member cells hug the segment [-1, 1]
        n = report.resolution
        x0, y0, x1, y1 = report.bbox
        hx, hy = (x1 - x0) / n, (y1 - y0) / n
        h = max(hx, hy)
        for cell in report.member_cells:
            ix, iy = cell % n, cell // n
            center = complex(x0 + hx * (ix + 0.5), y0 + hy * (iy + 0.5))
            assert dist_to_interval(center) < 6 * h

    def test_two_intervals(self):
        assert grid_oracle(two_intervals(), resolution=512).component_count == 2

    def test_quartic_connected(self):
        assert grid_oracle(t4(2.0), resolution=512).component_count == 1

    def test_cells_near_level_roots_are_members(self):
        T = t4(2.0)
        report = grid_oracle(T, resolution=256)
        n = report.resolution
        x0, y0, x1, y1 = report.bbox
        hx, hy = (x1 - x0) / n, (y1 - y0) / n
        h = max(hx, hy)
        members = report.member_cells
        for r in find_roots(T * T - 1.0):
            ix = int((r.real - x0) / hx)
            iy = int((r.imag - y0) / hy)
            near = [
                (ix + dx, iy + dy)
                for dx in (-1, 0, 1) for dy in (-1, 0, 1)
                if 0 <= ix + dx < n and 0 <= iy + dy < n
            ]
            hits = [
                (jx, jy) for jx, jy in near
                if abs(complex(x0 + hx * (jx + 0.5), y0 + hy * (jy + 0.5)) - r) <= h
                and (jx + n * jy) in members
            ]
            assert hits, f"no member cell within h of level root {r}"

    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            grid_oracle(cheb2(), resolution=32)

    def test_membership_params_validation(self):
        with pytest.raises(ValueError):
            MembershipParams(tol_member=0.0)


class TestAgreement:
    @pytest.mark.parametrize("T", [star(5), cheb2(), cross(1.0), t3(0.5),
                                   t3(2.0), t4(2.0), two_intervals()],
                             ids=["star5", "cheb2", "cross1", "t3a05",
                                  "t3a2", "t4a2", "twoseg"])
    def test_criterion_matches_grid(self, T):
        verdict = bool(is_connected(T))
        report = grid_oracle(T, resolution=512)
        assert verdict == (report.component_count == 1)

    @pytest.mark.parametrize("T", [star(5), cheb2(), t3(0.5), t4(2.0),
                                   two_intervals()],
                             ids=["star5", "cheb2", "t3a05", "t4a2", "twoseg"])
    def test_complement_has_no_holes(self, T):
        assert complement_connected(grid_oracle(T, resolution=256))


class TestTextDump:
    def test_format(self):
        report = grid_oracle(cheb2(), resolution=64)
        text = grid_to_text(report)
        lines = text.splitlines()
        head = lines[0].split()
        assert head[0] == "P-GRID"
        assert head[1] == "64" and head[2] == "64"
        assert len(lines) == 65
        assert all(len(row) == 64 for row in lines[1:])
        assert set("".join(lines[1:])) <= {"#", "."}
        assert sum(row.count("#") for row in lines[1:]) == len(report.member_cells)
