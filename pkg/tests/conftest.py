"""Shared builders for the polynomial families and rectangle problems."""

from types import SimpleNamespace

import pytest

from chebotarev import ComplexPoly, PointVar, ProblemSpec, SignConfig, solve


def star(n=5):
    """z**n; the continuum is a 2n-spoke star."""
    return ComplexPoly([0] * n + [1])


def cheb2():
    """2 z^2 - 1; the continuum is the segment [-1, 1]."""
    return ComplexPoly([-1, 0, 2])


def cross(alpha):
    """Family with continuum [-1,1] union [-i*alpha, i*alpha]."""
    s = 2.0 / (1.0 + alpha * alpha)
    return ComplexPoly([1.0 - s, 0.0, s])


def t3(alpha):
    """Cubic family: segment plus a hyperbolic bar, connected for alpha <= sqrt(3)."""
    a2 = alpha * alpha
    den = (1.0 + a2) ** 2
    inner = ComplexPoly([1.0 - a2, 2.0])
    numer = ComplexPoly([-1.0, 1.0]) * inner * inner
    return (-1.0 / den) * numer + (-1.0)


def t4(alpha):
    """Quartic family: segment plus two crossing arcs through +-1/sqrt(2)."""
    den = 1.0 + 4.0 * alpha * alpha
    return ComplexPoly([1.0, 0.0, -8.0 / den, 0.0, 8.0 / den])


def two_intervals():
    """z^2 - 3; the inverse image is two disjoint real intervals."""
    return ComplexPoly([-3, 0, 1])


def _rect_c_vars(beta0):
    return [
        PointVar("c", 1, "free_imag", value=1.0, initial=complex(1.0, beta0)),
        PointVar("c", 2, "linked", kind="conjugate", target=("c", 1)),
        PointVar("c", 3, "linked", kind="negate_conjugate", target=("c", 1)),
        PointVar("c", 4, "linked", kind="negate", target=("c", 1)),
    ]


def _neg_pair(role, idx_free, idx_linked, initial):
    return [
        PointVar(role, idx_free, "free_real", initial=initial),
        PointVar(role, idx_linked, "linked", kind="negate", target=(role, idx_free)),
    ]


def rect_spec(n, system=1):
    """Rectangle problems: corners +-1 +- i*beta, symmetric ansatz, beta free."""
    if n == 5:
        config = SignConfig(5, (1, 1, -1, -1), (-1, 1), ())
        vars_ = _rect_c_vars(0.4) + _neg_pair("d", 1, 2, 0.6)
    elif n == 6:
        config = SignConfig(6, (1, 1, 1, 1), (-1, -1), (1,))
        vars_ = (_rect_c_vars(0.3) + _neg_pair("d", 1, 2, 0.8)
                 + [PointVar("z", 1, "fixed", value=0.0)])
    elif n == 7:
        config = SignConfig(7, (1, 1, -1, -1), (-1, 1), (1, -1))
        vars_ = (_rect_c_vars(0.2) + _neg_pair("d", 1, 2, 0.85)
                 + _neg_pair("z", 1, 2, 0.3))
    elif n == 8:
        config = SignConfig(8, (1, 1, 1, 1), (-1, -1), (1, -1, 1))
        vars_ = (_rect_c_vars(0.15) + _neg_pair("d", 1, 2, 0.9) + [
            PointVar("z", 1, "free_real", initial=0.45),
            PointVar("z", 2, "free_real", initial=0.05),
            PointVar("z", 3, "linked", kind="negate", target=("z", 1)),
        ])
    elif n == 9 and system == 1:
        config = SignConfig(9, (1, 1, -1, -1), (-1, 1), (1, -1, -1, 1))
        vars_ = (_rect_c_vars(0.11) + _neg_pair("d", 1, 2, 0.9)
                 + _neg_pair("z", 1, 2, 0.55) + _neg_pair("z", 3, 4, 0.2))
    elif n == 9 and system == 2:
        config = SignConfig(9, (1, 1, -1, -1), (1, -1), (-1, -1, 1, 1))
        vars_ = (_rect_c_vars(0.6) + _neg_pair("d", 1, 2, 0.55) + [
            PointVar("z", 1, "free_complex", initial=0.9 + 0.5j),
            PointVar("z", 2, "linked", kind="conjugate", target=("z", 1)),
            PointVar("z", 3, "linked", kind="negate_conjugate", target=("z", 1)),
            PointVar("z", 4, "linked", kind="negate", target=("z", 1)),
        ])
    else:
        raise ValueError(f"no rectangle problem for n={n}, system={system}")
    return ProblemSpec(config, tuple(vars_))


@pytest.fixture(scope="session")
def fam():
    return SimpleNamespace(
        star=star, cheb2=cheb2, cross=cross, t3=t3, t4=t4,
        two_intervals=two_intervals, rect_spec=rect_spec,
    )


@pytest.fixture(scope="session")
def solved_rect():
    cache = {}

    def get(n, system=1):
        key = (n, system)
        if key not in cache:
            cache[key] = solve(rect_spec(n, system))
        return cache[key]

    return get
