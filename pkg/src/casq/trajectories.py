"""Prescribed center-of-mass paths r(t) and time windows.

The atomic center of mass is the external parameter steering every
Hamiltonian in the toolkit, so trajectories are plain immutable data:
analytic kinds evaluate positions and velocities exactly (and extrapolate
beyond any window), sampled polylines interpolate linearly and
differentiate by central finite differences with a documented step.

Axial (1D) kinds describe the distance z(t) > 0 to a mirror at z = 0:

* ``Constant1D(h)``            z = h
* ``Linear1D(h, v)``           z = h + v t
* ``Harmonic1D(h, A, w, p0)``  z = h + A sin(w t + p0), requires h - A > 0
* ``SampledPolyline1D``        piecewise-linear through (t_i, z_i)

3D kinds (used around a spinning particle at the origin):

* ``StraightLine3D(r0, v)``    r = r0 + v t
* ``SampledPolyline3D``        piecewise-linear through (t_i, r_i)

``reparametrize`` traverses the same geometric path at lambda-times the
speed (t -> lambda t); ``reverse`` traverses it backwards across a bounded
window. Both are exact on the analytic kinds, which is what the
geometric-phase invariance tests lean on.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, replace

from .constants import C_LIGHT
from .errors import ImproperWindow, NonPositiveDistance, OutOfWindow
from .vec3 import Vec3

__all__ = [
    "TimeWindow",
    "Constant1D",
    "Linear1D",
    "Harmonic1D",
    "SampledPolyline1D",
    "StraightLine3D",
    "SampledPolyline3D",
    "position",
    "velocity",
    "reparametrize",
    "reparametrize_window",
    "reverse",
    "light_delay",
    "validate_positive_over_window",
]


@dataclass(frozen=True)
class TimeWindow:
    """Integration window [t_start, t_end], or all of time.

    ``improper=True`` means (-inf, inf) and doubles as the caller's
    declaration that the integrand decays fast enough for the tangent-map
    quadrature (the engine cannot check decay itself).
    """

    t_start: float = -math.inf
    t_end: float = math.inf
    improper: bool = False

    def __post_init__(self):
        if self.improper:
            object.__setattr__(self, "t_start", -math.inf)
            object.__setattr__(self, "t_end", math.inf)
        else:
            if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
                raise ValueError("bounded TimeWindow requires finite endpoints")
            if not self.t_start < self.t_end:
                raise ValueError(
                    f"TimeWindow: t_start must be < t_end, got [{self.t_start}, {self.t_end}]"
                )

    @classmethod
    def all_time(cls) -> "TimeWindow":
        return cls(improper=True)

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start


# -- 1D kinds -----------------------------------------------------------------

@dataclass(frozen=True)
class Constant1D:
    h: float
    v_parallel: float | None = None  # metadata only: velocity along the surface

    def position(self, t: float) -> float:
        return self.h

    def velocity(self, t: float) -> float:
        return 0.0


@dataclass(frozen=True)
class Linear1D:
    h: float
    v: float
    v_parallel: float | None = None

    def position(self, t: float) -> float:
        return self.h + self.v * t

    def velocity(self, t: float) -> float:
        return self.v


@dataclass(frozen=True)
class Harmonic1D:
    """z(t) = h + A sin(omega_cm t + phase0); h is the mean distance."""

    h: float
    amplitude: float
    omega_cm: float
    phase0: float = 0.0
    v_parallel: float | None = None

    def __post_init__(self):
        if self.amplitude < 0.0:
            raise ValueError("Harmonic1D: amplitude must be >= 0")
        if self.h - self.amplitude <= 0.0:
            raise ValueError(
                f"Harmonic1D: h - A = {self.h - self.amplitude!r} must be > 0 "
                "(atom strictly on one side of the mirror)"
            )
        if self.omega_cm == 0.0:
            raise ValueError("Harmonic1D: omega_cm must be nonzero")

    def position(self, t: float) -> float:
        return self.h + self.amplitude * math.sin(self.omega_cm * t + self.phase0)

    def velocity(self, t: float) -> float:
        return self.amplitude * self.omega_cm * math.cos(self.omega_cm * t + self.phase0)


def _check_sampled_times(times) -> None:
    if len(times) < 2:
        raise ValueError("sampled trajectory needs at least two samples")
    for i in range(1, len(times)):
        if not times[i] > times[i - 1]:
            raise ValueError("sampled trajectory times must be strictly increasing")


@dataclass(frozen=True)
class SampledPolyline1D:
    """Piecewise-linear z(t) through strictly increasing sample times.

    Velocity is a central finite difference of the interpolant with step
    max(1e-6 * span, spacing / 2), which balances truncation against
    cancellation without per-call tuning. Evaluation outside the sample
    range raises :class:`OutOfWindow`.
    """

    times: tuple[float, ...]
    values: tuple[float, ...]
    v_parallel: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "values", tuple(float(z) for z in self.values))
        _check_sampled_times(self.times)
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")

    def _bracket(self, t: float) -> int:
        if t < self.times[0] or t > self.times[-1]:
            raise OutOfWindow(
                f"t = {t!r} outside sample range [{self.times[0]!r}, {self.times[-1]!r}]"
            )
        i = bisect_right(self.times, t) - 1
        return min(max(i, 0), len(self.times) - 2)

    def position(self, t: float) -> float:
        i = self._bracket(t)
        t0, t1 = self.times[i], self.times[i + 1]
        z0, z1 = self.values[i], self.values[i + 1]
        return z0 + (z1 - z0) * (t - t0) / (t1 - t0)

    @property
    def _fd_step(self) -> float:
        span = self.times[-1] - self.times[0]
        spacing = span / (len(self.times) - 1)
        return max(1e-6 * span, 0.5 * spacing)

    def velocity(self, t: float) -> float:
        dt = self._fd_step
        return (self.position(t + dt) - self.position(t - dt)) / (2.0 * dt)


Trajectory1D = Constant1D | Linear1D | Harmonic1D | SampledPolyline1D


# -- 3D kinds -----------------------------------------------------------------

@dataclass(frozen=True)
class StraightLine3D:
    """r(t) = r0 + v t."""

    r0: Vec3
    v: Vec3

    def __post_init__(self):
        object.__setattr__(self, "r0", tuple(float(x) for x in self.r0))
        object.__setattr__(self, "v", tuple(float(x) for x in self.v))

    def position(self, t: float) -> Vec3:
        return (
            self.r0[0] + self.v[0] * t,
            self.r0[1] + self.v[1] * t,
            self.r0[2] + self.v[2] * t,
        )

    def velocity(self, t: float) -> Vec3:
        return self.v


@dataclass(frozen=True)
class SampledPolyline3D:
    times: tuple[float, ...]
    points: tuple[Vec3, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(
            self, "points", tuple(tuple(float(x) for x in p) for p in self.points)
        )
        _check_sampled_times(self.times)
        if len(self.times) != len(self.points):
            raise ValueError("times and points must have equal length")

    def _bracket(self, t: float) -> int:
        if t < self.times[0] or t > self.times[-1]:
            raise OutOfWindow(
                f"t = {t!r} outside sample range [{self.times[0]!r}, {self.times[-1]!r}]"
            )
        i = bisect_right(self.times, t) - 1
        return min(max(i, 0), len(self.times) - 2)

    def position(self, t: float) -> Vec3:
        i = self._bracket(t)
        t0, t1 = self.times[i], self.times[i + 1]
        w = (t - t0) / (t1 - t0)
        p0, p1 = self.points[i], self.points[i + 1]
        return (
            p0[0] + (p1[0] - p0[0]) * w,
            p0[1] + (p1[1] - p0[1]) * w,
            p0[2] + (p1[2] - p0[2]) * w,
        )

    @property
    def _fd_step(self) -> float:
        span = self.times[-1] - self.times[0]
        spacing = span / (len(self.times) - 1)
        return max(1e-6 * span, 0.5 * spacing)

    def velocity(self, t: float) -> Vec3:
        dt = self._fd_step
        pp = self.position(t + dt)
        pm = self.position(t - dt)
        return (
            (pp[0] - pm[0]) / (2.0 * dt),
            (pp[1] - pm[1]) / (2.0 * dt),
            (pp[2] - pm[2]) / (2.0 * dt),
        )


Trajectory3D = StraightLine3D | SampledPolyline3D
Trajectory = Trajectory1D | Trajectory3D


# -- functional interface ------------------------------------------------------

def position(traj, t: float):
    """Position at time t: scalar for 1D kinds, 3-tuple for 3D kinds."""
    return traj.position(t)


def velocity(traj, t: float):
    """Velocity at time t (same shape as position)."""
    return traj.velocity(t)


def light_delay(z: float) -> float:
    """Round-trip light time 2 z / c for a perfect mirror at z = 0 (s)."""
    if not z > 0.0:
        raise NonPositiveDistance(f"light_delay: z must be > 0, got {z!r}")
    return 2.0 * z / C_LIGHT


def reparametrize(traj, lam: float):
    """Same geometric path traversed at lambda times the speed.

    position(new, t) = position(old, lambda t); pair with
    :func:`reparametrize_window` to follow the same stretch of path.
    """
    if not lam > 0.0:
        raise ValueError(f"reparametrize: lambda must be > 0, got {lam!r}")
    if isinstance(traj, Constant1D):
        return replace(traj, v_parallel=_scale_meta(traj.v_parallel, lam))
    if isinstance(traj, Linear1D):
        return replace(traj, v=traj.v * lam, v_parallel=_scale_meta(traj.v_parallel, lam))
    if isinstance(traj, Harmonic1D):
        return replace(
            traj,
            omega_cm=traj.omega_cm * lam,
            v_parallel=_scale_meta(traj.v_parallel, lam),
        )
    if isinstance(traj, SampledPolyline1D):
        return replace(
            traj,
            times=tuple(t / lam for t in traj.times),
            v_parallel=_scale_meta(traj.v_parallel, lam),
        )
    if isinstance(traj, StraightLine3D):
        return replace(traj, v=tuple(lam * c for c in traj.v))
    if isinstance(traj, SampledPolyline3D):
        return replace(traj, times=tuple(t / lam for t in traj.times))
    raise TypeError(f"reparametrize: unsupported trajectory {type(traj).__name__}")


def _scale_meta(v_parallel: float | None, lam: float) -> float | None:
    return None if v_parallel is None else v_parallel * lam


def reparametrize_window(window: TimeWindow, lam: float) -> TimeWindow:
    """Window matching :func:`reparametrize`: endpoints divided by lambda."""
    if not lam > 0.0:
        raise ValueError(f"reparametrize_window: lambda must be > 0, got {lam!r}")
    if window.improper:
        return window
    return TimeWindow(window.t_start / lam, window.t_end / lam)


def reverse(traj, window: TimeWindow):
    """Same geometric path traversed backwards over the same bounded window.

    position(new, t) = position(old, t_start + t_end - t).
    """
    if window.improper:
        raise ImproperWindow("reverse requires a bounded window")
    s = window.t_start + window.t_end
    if isinstance(traj, Constant1D):
        return replace(traj, v_parallel=_negate_meta(traj.v_parallel))
    if isinstance(traj, Linear1D):
        return replace(traj, h=traj.h + traj.v * s, v=-traj.v,
                       v_parallel=_negate_meta(traj.v_parallel))
    if isinstance(traj, Harmonic1D):
        # z(s - t) = h + A sin(-w t + (w s + p0))
        return replace(traj, omega_cm=-traj.omega_cm,
                       phase0=traj.omega_cm * s + traj.phase0,
                       v_parallel=_negate_meta(traj.v_parallel))
    if isinstance(traj, SampledPolyline1D):
        return replace(
            traj,
            times=tuple(s - t for t in reversed(traj.times)),
            values=tuple(reversed(traj.values)),
            v_parallel=_negate_meta(traj.v_parallel),
        )
    if isinstance(traj, StraightLine3D):
        return StraightLine3D(
            r0=tuple(r + v * s for r, v in zip(traj.r0, traj.v)),
            v=tuple(-v for v in traj.v),
        )
    if isinstance(traj, SampledPolyline3D):
        return SampledPolyline3D(
            times=tuple(s - t for t in reversed(traj.times)),
            points=tuple(reversed(traj.points)),
        )
    raise TypeError(f"reverse: unsupported trajectory {type(traj).__name__}")


def _negate_meta(v_parallel: float | None) -> float | None:
    return None if v_parallel is None else -v_parallel


def validate_positive_over_window(
    traj, window: TimeWindow, z_min: float = 0.0, samples: int = 1000
) -> None:
    """Check z(t) > 0 and z(t) >= z_min across the window.

    Uses the analytic minimum where one exists (Constant, Harmonic, and the
    endpoints of Linear; polyline minima sit on nodes) plus a uniform
    sampling sweep as a backstop. Improper windows are only admissible for
    kinds bounded away from the mirror for all time. Crossing the mirror
    raises :class:`NonPositiveDistance`; dipping below a positive ``z_min``
    raises :class:`CollisionGuard`.
    """
    from .errors import CollisionGuard

    def check(z: float, where: str) -> None:
        if not z > 0.0:
            raise NonPositiveDistance(
                f"path reaches z = {z!r} at {where} (must stay > 0)"
            )
        if z < z_min:
            raise CollisionGuard(
                f"path reaches z = {z!r} at {where}, below the near-contact "
                f"cutoff {z_min!r}"
            )

    if isinstance(traj, Constant1D):
        check(traj.h, "all t")
        return
    if isinstance(traj, Harmonic1D):
        check(traj.h - traj.amplitude, "harmonic minimum")
        return
    if isinstance(traj, Linear1D):
        if window.improper:
            if traj.v != 0.0:
                raise NonPositiveDistance(
                    "linear path with nonzero velocity crosses the mirror on an improper window"
                )
            check(traj.h, "all t")
            return
        check(traj.position(window.t_start), "window start")
        check(traj.position(window.t_end), "window end")
        return
    if isinstance(traj, SampledPolyline1D):
        if window.improper:
            raise OutOfWindow("sampled trajectory cannot cover an improper window")
        if window.t_start < traj.times[0] or window.t_end > traj.times[-1]:
            raise OutOfWindow(
                f"window [{window.t_start!r}, {window.t_end!r}] exceeds sample range "
                f"[{traj.times[0]!r}, {traj.times[-1]!r}]"
            )
        for t, z in zip(traj.times, traj.values):
            if window.t_start <= t <= window.t_end:
                check(z, f"sample t = {t!r}")
        check(traj.position(window.t_start), "window start")
        check(traj.position(window.t_end), "window end")
        # piecewise-linear minima are at nodes; the sweep below is a backstop
    if not window.improper:
        t0, t1 = window.t_start, window.t_end
        for i in range(samples + 1):
            t = t0 + (t1 - t0) * i / samples
            check(traj.position(t), f"t = {t!r}")
