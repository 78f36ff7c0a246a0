"""Power-sum construction of polynomials with connected inverse image.

A configuration of prescribed endpoints ``c`` (simple), bifurcation points
``d`` (triple) and tangency points ``z`` (double), together with sign blocks
``alpha``, ``gamma``, ``beta`` in {-1, +1}, determines a degree-n polynomial
with connected inverse image of [-1, 1] as soon as

    sum_j alpha_j c_j^k + 3 sum_j gamma_j d_j^k + 2 sum_j beta_j z_j^k = 0
                                                        for k = 1 .. n-1,

with the sign balance  sum alpha + 3 sum gamma + 2 sum beta = 0.  The
polynomial is rebuilt from the positive-sign points as

    T(z) = 1 + tau * prod_{alpha_j=+1}(z - c_j)
                 * prod_{gamma_j=+1}(z - d_j)^3 * prod_{beta_j=+1}(z - z_j)^2

where tau is fixed by requiring T = -1 at any negative-sign point.  This
module poses the system for a caller-declared set of free, fixed and
symmetry-linked points and solves it by damped Gauss-Newton.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSolution, InconsistentFactorization, NoConvergence, PowerSumViolation
from .poly import ComplexPoly

ROLES = ("c", "d", "z")
_ROLE_WEIGHT = {"c": 1.0, "d": 3.0, "z": 2.0}
_STATUSES = ("fixed", "free_complex", "free_real", "free_imag", "linked")
_LINK_KINDS = ("conjugate", "negate", "negate_conjugate")

#: Points closer than this are considered collided.
DISTINCT_TOL = 1e-6


@dataclass(frozen=True)
class SignConfig:
    """Sign blocks for the simple / triple / double point families."""

    degree: int
    simple_signs: tuple
    triple_signs: tuple
    double_signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "simple_signs", tuple(int(s) for s in self.simple_signs))
        object.__setattr__(self, "triple_signs", tuple(int(s) for s in self.triple_signs))
        object.__setattr__(self, "double_signs", tuple(int(s) for s in self.double_signs))
        nu = len(self.simple_signs)
        if nu < 3:
            raise ValueError("need at least 3 simple points")
        if len(self.triple_signs) != nu - 2:
            raise ValueError(f"expected {nu - 2} triple signs, got {len(self.triple_signs)}")
        expected_doubles = self.degree - 2 * nu + 3
        if expected_doubles < 0:
            raise ValueError(f"degree {self.degree} too small for {nu} simple points")
        if len(self.double_signs) != expected_doubles:
            raise ValueError(
                f"expected {expected_doubles} double signs, got {len(self.double_signs)}"
            )
        for s in self.simple_signs + self.triple_signs + self.double_signs:
            if s not in (-1, 1):
                raise ValueError("signs must be +-1")
        if self.balance != 0:
            raise ValueError(f"sign balance {self.balance} != 0")

    @property
    def num_simple(self):
        return len(self.simple_signs)

    @property
    def balance(self):
        return (sum(self.simple_signs) + 3 * sum(self.triple_signs)
                + 2 * sum(self.double_signs))

    @property
    def block_plus_counts(self):
        """(+1 count per block) -- the permutation-invariant fingerprint."""
        return (
            sum(1 for s in self.simple_signs if s == 1),
            sum(1 for s in self.triple_signs if s == 1),
            sum(1 for s in self.double_signs if s == 1),
        )

    def signs_for(self, role):
        return {"c": self.simple_signs, "d": self.triple_signs, "z": self.double_signs}[role]


def enumerate_sign_configs(nu: int, n: int) -> list:
    """All admissible sign configurations, one per block-permutation class.

    The representative puts the +1 entries first in each block.  Blocks are
    interchangeable within themselves, so configurations are fingerprinted
    by their per-block +1 counts.
    """
    if nu < 3:
        raise ValueError("need at least 3 simple points")
    if n < 2 * nu - 3:
        raise ValueError(f"degree {n} too small for {nu} simple points")
    n_d = nu - 2
    n_z = n - 2 * nu + 3
    out = []
    for pa in range(nu, -1, -1):
        for pg in range(n_d, -1, -1):
            for pb in range(n_z, -1, -1):
                balance = ((2 * pa - nu) + 3 * (2 * pg - n_d) + 2 * (2 * pb - n_z))
                if balance != 0:
                    continue
                out.append(SignConfig(
                    n,
                    (1,) * pa + (-1,) * (nu - pa),
                    (1,) * pg + (-1,) * (n_d - pg),
                    (1,) * pb + (-1,) * (n_z - pb),
                ))
    return out


@dataclass(frozen=True)
class PointVar:
    """One prescribed point and how the solver treats it.

    ``status`` is one of ``fixed`` (value given), ``free_complex`` (two real
    unknowns), ``free_real`` / ``free_imag`` (one real unknown along the
    real / imaginary direction from the anchor ``value``), or ``linked``
    (value derived from ``target`` by ``kind``).  ``initial`` is the starting
    point value for free statuses.
    """

    role: str
    index: int
    status: str
    value: complex = 0j
    kind: str = None
    target: tuple = None
    initial: complex = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if self.status not in _STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "linked":
            if self.kind not in _LINK_KINDS:
                raise ValueError(f"unknown link kind {self.kind!r}")
            if self.target is None:
                raise ValueError("linked variable needs a target")
            object.__setattr__(self, "target", (str(self.target[0]), int(self.target[1])))
        object.__setattr__(self, "value", complex(self.value))
        if self.initial is not None:
            object.__setattr__(self, "initial", complex(self.initial))

    @property
    def key(self):
        return (self.role, self.index)


@dataclass(frozen=True)
class SolverOptions:
    max_iter: int = 200
    damping: float = 1e-3
    residual_tol: float = None


@dataclass(frozen=True)
class ProblemSpec:
    """A sign configuration plus the free/fixed/linked point declarations."""

    config: SignConfig
    vars: tuple
    options: SolverOptions = SolverOptions()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        expected = {
            ("c", i + 1) for i in range(self.config.num_simple)
        } | {
            ("d", i + 1) for i in range(len(self.config.triple_signs))
        } | {
            ("z", i + 1) for i in range(len(self.config.double_signs))
        }
        got = {v.key for v in self.vars}
        if got != expected:
            raise ValueError("variable declarations do not cover the configuration")
        self._resolve_order()  # raises on cycles / dangling targets
        n = self.config.degree
        m = sum(_DOF[v.status] for v in self.vars)
        if m > 2 * (n - 1):
            raise ValueError(f"{m} real unknowns exceed the {2 * (n - 1)} equations")

    def _resolve_order(self):
        by_key = {v.key: v for v in self.vars}
        state = {}

        def visit(key, stack):
            if key in stack:
                raise ValueError(f"link cycle through {key}")
            if state.get(key) == "done":
                return
            v = by_key.get(key)
            if v is None:
                raise ValueError(f"link target {key} does not exist")
            if v.status == "linked":
                visit(v.target, stack | {key})
            state[key] = "done"

        for v in self.vars:
            visit(v.key, frozenset())
        return by_key

    @property
    def residual_tol(self):
        if self.options.residual_tol is not None:
            return self.options.residual_tol
        return 1e-11 * self.config.degree


_DOF = {"fixed": 0, "free_complex": 2, "free_real": 1, "free_imag": 1, "linked": 0}


def unknown_layout(spec: ProblemSpec) -> list:
    """(var, component) pairs in assignment-vector order.

    ``component`` is ``"re"`` / ``"im"`` for free_complex and ``"t"`` for the
    one-parameter statuses.
    """
    layout = []
    for v in spec.vars:
        if v.status == "free_complex":
            layout.append((v, "re"))
            layout.append((v, "im"))
        elif v.status in ("free_real", "free_imag"):
            layout.append((v, "t"))
    return layout


def _base_transforms(spec: ProblemSpec):
    """Map each var key to (base_key, sign, conjugate?) through its link chain."""
    by_key = {v.key: v for v in spec.vars}
    memo = {}

    def resolve(key):
        if key in memo:
            return memo[key]
        v = by_key[key]
        if v.status != "linked":
            memo[key] = (key, 1.0, False)
            return memo[key]
        base, sign, conj = resolve(v.target)
        if v.kind == "negate":
            sign = -sign
        elif v.kind == "conjugate":
            conj = not conj
        else:  # negate_conjugate
            sign = -sign
            conj = not conj
        memo[key] = (base, sign, conj)
        return memo[key]

    for v in spec.vars:
        resolve(v.key)
    return memo


def _base_values(spec: ProblemSpec, x):
    """Values of the non-linked vars given the assignment vector."""
    x = np.asarray(x, dtype=float)
    values = {}
    pos = 0
    for v in spec.vars:
        if v.status == "fixed":
            values[v.key] = v.value
        elif v.status == "free_complex":
            values[v.key] = complex(x[pos], x[pos + 1])
            pos += 2
        elif v.status == "free_real":
            values[v.key] = v.value + x[pos]
            pos += 1
        elif v.status == "free_imag":
            values[v.key] = v.value + 1j * x[pos]
            pos += 1
    if pos != len(x):
        raise ValueError(f"assignment length {len(x)} != {pos} unknowns")
    return values


def resolve_points(spec: ProblemSpec, x) -> dict:
    """All point values (including linked ones) for an assignment vector."""
    base = _base_values(spec, x)
    transforms = _base_transforms(spec)
    points = {}
    for v in spec.vars:
        bkey, sign, conj = transforms[v.key]
        val = base[bkey]
        if conj:
            val = val.conjugate()
        points[v.key] = sign * val
    return points


def residual(spec: ProblemSpec, x) -> np.ndarray:
    """The 2(n-1) real components of the weighted power sums, k = 1 .. n-1."""
    points = resolve_points(spec, x)
    n = spec.config.degree
    ks = np.arange(1, n)
    total = np.zeros(n - 1, dtype=complex)
    for v in spec.vars:
        w = _ROLE_WEIGHT[v.role] * spec.config.signs_for(v.role)[v.index - 1]
        total += w * points[v.key] ** ks
    out = np.empty(2 * (n - 1))
    out[0::2] = total.real
    out[1::2] = total.imag
    return out


def jacobian(spec: ProblemSpec, x) -> np.ndarray:
    """Analytic derivative of :func:`residual` w.r.t. the assignment vector."""
    points = resolve_points(spec, x)
    transforms = _base_transforms(spec)
    layout = unknown_layout(spec)
    col_of = {}
    for col, (v, comp) in enumerate(layout):
        col_of[(v.key, comp)] = col

    n = spec.config.degree
    ks = np.arange(1, n)
    J = np.zeros((2 * (n - 1), len(layout)))
    for v in spec.vars:
        bkey, sign, conj = transforms[v.key]
        base_var = next(u for u in spec.vars if u.key == bkey)
        if base_var.status == "fixed":
            continue
        w = _ROLE_WEIGHT[v.role] * spec.config.signs_for(v.role)[v.index - 1]
        chain = w * ks * points[v.key] ** (ks - 1)
        if base_var.status == "free_complex":
            dirs = [("re", 1.0 + 0j), ("im", 1j)]
        elif base_var.status == "free_real":
            dirs = [("t", 1.0 + 0j)]
        else:  # free_imag
            dirs = [("t", 1j)]
        for comp, g in dirs:
            dbase = g.conjugate() if conj else g
            dval = sign * dbase
            col = col_of[(bkey, comp)]
            dS = chain * dval
            J[0::2, col] += dS.real
            J[1::2, col] += dS.imag
    return J


def default_initial(spec: ProblemSpec) -> np.ndarray:
    """Starting vector from the declared initial values.

    Free points without an initial value fall back to a simple heuristic:
    bifurcation points start at the centroid of the simple points, tangency
    points spread along the segment between the two most distant simple
    points, and anything else starts at the anchor.
    """
    refs = []
    for v in spec.vars:
        if v.role == "c":
            if v.status == "fixed":
                refs.append(v.value)
            elif v.initial is not None:
                refs.append(v.initial)
    centroid = sum(refs) / len(refs) if refs else 0j
    if len(refs) >= 2:
        pairs = [(abs(a - b), a, b) for i, a in enumerate(refs) for b in refs[i + 1:]]
        _, ca, cb = max(pairs, key=lambda t: t[0])
    else:
        ca = cb = centroid

    n_z = max(1, len(spec.config.double_signs))
    x0 = []
    for v, comp in unknown_layout(spec):
        init = v.initial
        if init is None:
            if v.role == "d":
                init = centroid
            elif v.role == "z":
                frac = v.index / (n_z + 1)
                init = ca + frac * (cb - ca)
            else:
                init = v.value
        offset = init - (0 if v.status == "free_complex" else v.value)
        if comp == "re":
            x0.append(offset.real)
        elif comp == "im":
            x0.append(offset.imag)
        elif v.status == "free_real":
            x0.append(offset.real)
        else:  # free_imag
            x0.append(offset.imag)
    return np.array(x0, dtype=float)


@dataclass(frozen=True)
class Solution:
    """A solved configuration with its reconstructed polynomial."""

    config: SignConfig
    points: dict            # role -> tuple of values in index order
    tau: complex
    poly: ComplexPoly
    residual_inf_norm: float
    capacity: float
    assignment: tuple

    def point(self, role, index):
        return self.points[role][index - 1]


def _points_by_role(config, mapping):
    return {
        "c": tuple(mapping[("c", i + 1)] for i in range(config.num_simple)),
        "d": tuple(mapping[("d", i + 1)] for i in range(len(config.triple_signs))),
        "z": tuple(mapping[("z", i + 1)] for i in range(len(config.double_signs))),
    }


def build_polynomial(config: SignConfig, points) -> tuple:
    """Rebuild (T, tau) from solved points.

    ``points`` maps each role to its values in index order.  ``tau`` comes
    from evaluating the positive-sign product at the first negative-sign
    point; every further negative-sign point is then checked to satisfy
    T = -1 to 1e-8.
    """
    plus_roots = []
    minus_points = []
    for role, mult in (("c", 1), ("d", 3), ("z", 2)):
        signs = config.signs_for(role)
        for idx, s in enumerate(signs):
            p = complex(points[role][idx])
            if s == 1:
                plus_roots.extend([p] * mult)
            else:
                minus_points.extend([p] * mult)
    assert minus_points, "sign balance guarantees at least one negative point"
    z_minus = minus_points[0]
    prod = 1.0 + 0j
    for r in plus_roots:
        prod *= z_minus - r
    tau = -2.0 / prod
    T = ComplexPoly.from_roots(plus_roots, tau) + 1.0

    scale = 1.0 + max(abs(p) for p in minus_points + plus_roots)
    for p in minus_points:
        if abs(T(p) + 1.0) > 1e-8 * scale ** T.degree:
            raise PowerSumViolation(
                f"rebuilt polynomial misses -1 at negative-sign point {p:.6g}"
            )
    return T, tau


def _check_distinct(values, tol=DISTINCT_TOL):
    vals = list(values)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if abs(vals[i] - vals[j]) <= tol:
                raise DegenerateSolution(
                    f"points {vals[i]:.8g} and {vals[j]:.8g} collided"
                )


def solve(spec: ProblemSpec, initial=None) -> Solution:
    """Damped Gauss-Newton on the power-sum residual.

    Levenberg damping starts at ``options.damping`` and moves by factors of
    10 on rejected / accepted steps.  Raises :class:`NoConvergence` when the
    iteration cap is hit above tolerance and :class:`DegenerateSolution`
    when solved points collide.
    """
    x = np.asarray(default_initial(spec) if initial is None else initial, dtype=float)
    layout = unknown_layout(spec)
    if len(x) != len(layout):
        raise ValueError(f"initial vector length {len(x)} != {len(layout)} unknowns")
    tol = spec.residual_tol
    lam = spec.options.damping
    r = residual(spec, x)

    for _ in range(spec.options.max_iter):
        if np.max(np.abs(r)) < tol:
            break
        J = jacobian(spec, x)
        A = J.T @ J
        g = J.T @ r
        accepted = False
        for _ in range(30):
            try:
                delta = np.linalg.solve(A + lam * np.eye(len(x)), -g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            x_new = x + delta
            r_new = residual(spec, x_new)
            if np.linalg.norm(r_new) < np.linalg.norm(r):
                x, r = x_new, r_new
                lam = max(lam / 10.0, 1e-14)
                accepted = True
                break
            lam *= 10.0
        if not accepted:
            break

    res_inf = float(np.max(np.abs(r))) if len(r) else 0.0
    if res_inf >= tol:
        raise NoConvergence(f"residual {res_inf:.3e} above tolerance {tol:.3e}")

    mapping = resolve_points(spec, x)
    _check_distinct(mapping.values())
    points = _points_by_role(spec.config, mapping)
    T, tau = build_polynomial(spec.config, points)

    _verify_product_identity(spec.config, points, T, tau)

    n = spec.config.degree
    capacity = float((2.0 * abs(tau)) ** (-1.0 / n))
    return Solution(spec.config, points, tau, T, res_inf, capacity, tuple(float(v) for v in x))


def _verify_product_identity(config, points, T, tau):
    """T^2 - 1 must equal tau^2 times the full root product."""
    all_roots = []
    for role, mult in (("c", 1), ("d", 3), ("z", 2)):
        for p in points[role]:
            all_roots.extend([p] * mult)
    rhs = ComplexPoly.from_roots(all_roots, tau * tau)
    lhs = T * T - 1.0
    diff = lhs - rhs
    bound = 1e-8 * (1.0 + max(abs(c) for c in lhs.coeffs))
    worst = max(abs(c) for c in diff.coeffs)
    if worst > bound:
        raise InconsistentFactorization(
            f"solution product identity residual {worst:.3e} exceeds {bound:.3e}"
        )


def power_sums(points, kmax: int) -> np.ndarray:
    """Sums of k-th powers of the given points for k = 1 .. kmax."""
    pts = np.asarray(list(points), dtype=complex)
    ks = np.arange(1, kmax + 1)
    if len(pts) == 0:
        return np.zeros(kmax, dtype=complex)
    return (pts[None, :] ** ks[:, None]).sum(axis=1)


def reconstruct_from_levels(z_plus, z_minus, tol: float = 1e-9) -> tuple:
    """Rebuild (T, tau) from the root multisets of T - 1 and T + 1.

    Both lists must have equal length n and satisfy the power-sum identities
    ``sum (z+)^k = sum (z-)^k`` for k = 1 .. n-1; otherwise
    :class:`PowerSumViolation` is raised.  The two expansions are checked to
    agree coefficientwise except for the constant term differing by 2.
    """
    zp = [complex(v) for v in z_plus]
    zm = [complex(v) for v in z_minus]
    n = len(zp)
    if n == 0 or len(zm) != n:
        raise ValueError("level sets must be nonempty and of equal length")
    for a in zp:
        for b in zm:
            if a == b:
                raise ValueError(f"level sets share the point {a:.6g}")

    if n > 1:
        sp = power_sums(zp, n - 1)
        sm = power_sums(zm, n - 1)
        big = 1.0 + max(abs(v) for v in zp + zm)
        for k in range(1, n):
            bound = tol * n * big ** k
            if abs(sp[k - 1] - sm[k - 1]) > bound:
                raise PowerSumViolation(
                    f"power sum k={k} differs by {abs(sp[k-1]-sm[k-1]):.3e} (bound {bound:.3e})"
                )

    prod = 1.0 + 0j
    for r in zp:
        prod *= zm[0] - r
    tau = -2.0 / prod

    plus_side = ComplexPoly.from_roots(zp, tau)
    minus_side = ComplexPoly.from_roots(zm, tau)
    diff = plus_side - minus_side
    bound = tol * (1.0 + max(abs(c) for c in plus_side.coeffs))
    expected = [-2.0] + [0.0] * (len(diff.coeffs) - 1)
    worst = max(abs(c - e) for c, e in zip(list(diff.coeffs) + [0.0] * n, expected + [0.0] * n))
    if worst > 10 * bound:
        raise PowerSumViolation(
            f"level expansions disagree beyond the constant term by {worst:.3e}"
        )
    return plus_side + 1.0, tau


# ---------------------------------------------------------------------------
# wire format


def _read_complex(v):
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def _write_complex(v):
    v = complex(v)
    return [v.real, v.imag]


def spec_from_dict(doc: dict) -> ProblemSpec:
    """Parse the JSON problem document into a :class:`ProblemSpec`."""
    try:
        n = int(doc["n"])
        nu = int(doc["nu"])
        config = SignConfig(n, tuple(doc["alpha"]), tuple(doc["gamma"]), tuple(doc["beta"]))
        if config.num_simple != nu:
            raise ValueError(f"nu={nu} does not match {config.num_simple} alpha entries")
        vars_ = []
        for item in doc["vars"]:
            target = item.get("target")
            if target is not None:
                target = (target["role"], int(target["index"]))
            initial = item.get("initial")
            vars_.append(PointVar(
                role=item["role"],
                index=int(item["index"]),
                status=item["status"],
                value=_read_complex(item.get("value", 0)),
                kind=item.get("kind"),
                target=target,
                initial=None if initial is None else _read_complex(initial),
            ))
        opts = doc.get("options", {})
        options = SolverOptions(
            max_iter=int(opts.get("max_iter", 200)),
            damping=float(opts.get("damping", 1e-3)),
            residual_tol=(None if opts.get("residual_tol") is None
                          else float(opts["residual_tol"])),
        )
        return ProblemSpec(config, tuple(vars_), options)
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed problem document: {exc}") from exc


def solution_to_dict(sol: Solution) -> dict:
    """JSON-ready view of a solution; points as [re, im] pairs."""
    return {
        "n": sol.config.degree,
        "nu": sol.config.num_simple,
        "alpha": list(sol.config.simple_signs),
        "gamma": list(sol.config.triple_signs),
        "beta": list(sol.config.double_signs),
        "c": [_write_complex(p) for p in sol.points["c"]],
        "d": [_write_complex(p) for p in sol.points["d"]],
        "z": [_write_complex(p) for p in sol.points["z"]],
        "tau": _write_complex(sol.tau),
        "coeffs": [_write_complex(c) for c in sol.poly.coeffs],
        "residual_inf_norm": sol.residual_inf_norm,
        "capacity": sol.capacity,
        "assignment": list(sol.assignment),
    }
