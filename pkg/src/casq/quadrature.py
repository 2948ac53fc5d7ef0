"""Deterministic adaptive integration engine.

Every phase and rate in the toolkit is an integral, and every acceptance
check compares such an integral against an independently known value, so
the engine is deliberately boring: a fixed Gauss-Kronrod 7/15 embedded
pair with bisection of the worst interval, QUADPACK-style error
estimation, and a final summation in a fixed order. Identical inputs give
bit-identical outputs; there is no randomized cubature anywhere.

Improper integrals over (-inf, inf) are mapped to (-pi/2, pi/2) with
u = tan(theta). The engine cannot verify integrand decay, so callers
certify it (the ``improper`` flag on a time window) and non-convergence
of an improper integral raises instead of returning quietly.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .errors import CollisionGuard, NonConvergent, NonFiniteEvaluation
from .vec3 import Vec3, dot3, norm3

__all__ = [
    "QuadratureSpec",
    "IntegralResult",
    "DEFAULT_SPEC",
    "integrate_adaptive",
    "integrate_improper",
    "integrate_iterated",
    "line_integral",
]

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
# (abscissae/weights as tabulated for QUADPACK's dqk15).
_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993945,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
    0.0,
)
_WGK = (
    0.022935322010529224,
    0.06309209262997855,
    0.10479001032225018,
    0.14065325971552592,
    0.1690047266392679,
    0.19035057806478542,
    0.20443294007529889,
    0.20948214108472782,
)
_WG = (
    0.1294849661688697,
    0.27970539148927664,
    0.3818300505051189,
    0.4179591836734694,
)

_EPMACH = sys.float_info.epsilon
_UFLOW = sys.float_info.min

#: Hard floor for the convergence target so an identically-zero integral
#: with rel_tol-only settings cannot spin until the subdivision cap.
_TOL_FLOOR = 1e-300


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for one adaptive integration.

    Convergence target is ``max(abs_tol, rel_tol * |value|)``; at least one
    of the two tolerances must be positive.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-300
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0.0 or self.abs_tol > 0.0):
            raise ValueError("QuadratureSpec: rel_tol or abs_tol must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("QuadratureSpec: max_subdivisions must be >= 1")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool


@dataclass
class _Panel:
    a: float
    b: float
    value: float
    error: float


def _eval_f(f, x, ctx: str):
    y = f(x)
    if not math.isfinite(y):
        raise NonFiniteEvaluation(f"{ctx}: integrand returned {y!r} at x = {x!r}")
    return y


def _gk15(f, a: float, b: float, ctx: str) -> _Panel:
    """One Gauss-Kronrod 7/15 panel on [a, b] with QUADPACK error scaling."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)

    fc = _eval_f(f, center, ctx)
    resg = fc * _WG[3]
    resk = fc * _WGK[7]
    resabs = abs(fc) * _WGK[7]
    fv = []
    for j in range(7):
        dx = half * _XGK[j]
        f1 = _eval_f(f, center - dx, ctx)
        f2 = _eval_f(f, center + dx, ctx)
        fv.append((f1, f2))
        resk += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)

    reskh = resk * 0.5
    resasc = _WGK[7] * abs(fc - reskh)
    for j in range(7):
        f1, f2 = fv[j]
        resasc += _WGK[j] * (abs(f1 - reskh) + abs(f2 - reskh))

    value = resk * half
    resabs *= abs(half)
    resasc *= abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPMACH):
        err = max(_EPMACH * 50.0 * resabs, err)
    return _Panel(a, b, value, err)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
) -> IntegralResult:
    """Adaptive Gauss-Kronrod integration of ``f`` on [a, b].

    Bisects the interval with the largest local error estimate until the
    summed estimate meets the tolerance or the subdivision budget runs
    out (the latter returns ``converged=False`` rather than raising).
    Raises :class:`NonFiniteEvaluation` if the integrand returns NaN/inf.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return IntegralResult(0.0, 0.0, 0, True)
    sign = 1.0
    if a > b:
        a, b = b, a
        sign = -1.0
    return _adaptive_core(f, (a, b), sign, spec)


def _adaptive_core(
    f: Callable[[float], float],
    breaks: Sequence[float],
    sign: float,
    spec: QuadratureSpec | None,
) -> IntegralResult:
    spec = spec or DEFAULT_SPEC
    evals = 0

    def counted(x: float) -> float:
        nonlocal evals
        evals += 1
        return f(x)

    ctx = "integrate_adaptive"
    panels = [
        _gk15(counted, breaks[i], breaks[i + 1], ctx) for i in range(len(breaks) - 1)
    ]
    nsub = 0
    converged = False
    while True:
        total = math.fsum(p.value for p in panels)
        toterr = math.fsum(p.error for p in panels)
        tol = max(spec.abs_tol, spec.rel_tol * abs(total), _TOL_FLOOR)
        if toterr <= tol:
            converged = True
            break
        if nsub >= spec.max_subdivisions:
            break
        # worst interval first; ties broken by the left endpoint so the
        # subdivision sequence is reproducible
        worst_i = max(range(len(panels)), key=lambda i: (panels[i].error, -panels[i].a))
        worst = panels.pop(worst_i)
        mid = 0.5 * (worst.a + worst.b)
        if mid <= worst.a or mid >= worst.b:
            # interval at floating-point resolution: keep it, accept its error
            panels.append(worst)
            break
        panels.append(_gk15(counted, worst.a, mid, ctx))
        panels.append(_gk15(counted, mid, worst.b, ctx))
        nsub += 1

    panels.sort(key=lambda p: p.a)
    value = sign * math.fsum(p.value for p in panels)
    toterr = math.fsum(p.error for p in panels)
    return IntegralResult(value, toterr, evals, converged)


def integrate_improper(
    f: Callable[[float], float],
    spec: QuadratureSpec | None = None,
    center: float = 0.0,
    scale: float = 1.0,
) -> IntegralResult:
    """Integrate ``f`` over (-inf, inf) via u = center + scale * tan(theta).

    ``center`` and ``scale`` should locate the region where the integrand
    lives: a feature much narrower than ``scale`` can fall between the
    quadrature nodes of every panel and be silently lost, which is the one
    failure mode adaptive error estimates cannot flag. The theta domain is
    pre-split so the first sweep samples 8 panels rather than one.

    The caller certifies that ``f`` decays at least as fast as a power
    law; a run that exhausts the subdivision budget raises
    :class:`NonConvergent` because silent non-convergence of an improper
    integral is indistinguishable from a wrong answer.
    """
    if not scale > 0.0:
        raise ValueError(f"integrate_improper: scale must be > 0, got {scale!r}")

    def mapped(theta: float) -> float:
        u = math.tan(theta)
        sec2 = 1.0 + u * u
        return f(center + scale * u) * scale * sec2

    n_pre = 8
    breaks = [-0.5 * math.pi + math.pi * i / n_pre for i in range(n_pre + 1)]
    result = _adaptive_core(mapped, breaks, 1.0, spec)
    if not result.converged:
        raise NonConvergent(
            "integrate_improper: subdivision budget exhausted "
            f"(value={result.value!r}, error_estimate={result.error_estimate!r})"
        )
    return result


def line_integral(
    field: Callable[[Vec3], Vec3],
    traj,
    window,
    spec: QuadratureSpec | None = None,
    r_min_guard: float = 0.0,
) -> IntegralResult:
    """Line integral of a vector field along a parametric path.

    Evaluates int_P dr . F(r) as the time integral of v(t) . F(r(t)) over
    the window; improper windows go through the tangent map (the window's
    ``improper`` flag is the caller's decay certification). Points with
    |r(t)| < r_min_guard raise :class:`CollisionGuard`.
    """

    def integrand(t: float) -> float:
        r = traj.position(t)
        if r_min_guard > 0.0 and norm3(r) < r_min_guard:
            raise CollisionGuard(
                f"path at |r| = {norm3(r)!r} m (t = {t!r} s) inside guard "
                f"radius {r_min_guard!r} m"
            )
        return dot3(traj.velocity(t), field(r))

    if window.improper:
        center, scale = _improper_time_scale(traj)
        return integrate_improper(integrand, spec, center=center, scale=scale)
    return integrate_adaptive(integrand, window.t_start, window.t_end, spec)


def _improper_time_scale(traj) -> tuple[float, float]:
    """Characteristic (center, width) in time for an all-time line integral.

    Fields here decay in |r|, so the integrand lives around the closest
    approach to the origin; mapping that window onto an O(1) stretch of the
    tangent variable keeps it visible to the quadrature nodes (see
    :func:`integrate_improper`). For a straight line r0 + v t the closest
    approach is at t0 = -(r0 . v)/|v|^2 with |r(t0)| / |v| as time width.
    """
    v = getattr(traj, "v", None)
    r0 = getattr(traj, "r0", None)
    if v is None or r0 is None:
        return 0.0, 1.0
    v2 = dot3(v, v)
    if v2 == 0.0:
        return 0.0, 1.0
    t0 = -dot3(r0, v) / v2
    d = norm3(traj.position(t0))
    if d == 0.0:
        return t0, 1.0 / math.sqrt(v2)
    return t0, d / math.sqrt(v2)


#: Per-level tightening factor for iterated integrals, so inner-level noise
#: stays comfortably below the outer error estimate.
_LEVEL_FACTOR = 0.25


def integrate_iterated(
    f: Callable[..., float],
    bounds: Sequence[tuple],
    spec: QuadratureSpec | None = None,
) -> IntegralResult:
    """Nested adaptive integration of ``f(x0, .., x_{n-1})`` over n <= 3 axes.

    ``bounds[k]`` is ``(lo, hi)`` for axis k; either endpoint may be a
    callable of the outer variables ``(x0, .., x_{k-1})`` so triangular and
    chained domains work. The outermost level runs at the requested
    tolerance and each inner level is tightened by a fixed factor.
    """
    spec = spec or DEFAULT_SPEC
    n = len(bounds)
    if not 1 <= n <= 3:
        raise ValueError(f"integrate_iterated supports 1..3 axes, got {n}")

    evals = 0
    all_converged = True

    def level(k: int, outer: tuple) -> IntegralResult:
        nonlocal evals, all_converged
        lo, hi = bounds[k]
        lo_v = float(lo(*outer)) if callable(lo) else float(lo)
        hi_v = float(hi(*outer)) if callable(hi) else float(hi)
        lspec = replace(
            spec,
            rel_tol=spec.rel_tol * _LEVEL_FACTOR**k,
            abs_tol=spec.abs_tol * _LEVEL_FACTOR**k,
        )
        if k == n - 1:
            def inner(x: float) -> float:
                nonlocal evals
                evals += 1
                return f(*outer, x)
        else:
            def inner(x: float) -> float:
                return level(k + 1, outer + (x,)).value

        res = integrate_adaptive(inner, lo_v, hi_v, lspec)
        if not res.converged:
            all_converged = False
        return res

    top = level(0, ())
    return IntegralResult(top.value, top.error_estimate, evals, all_converged)
