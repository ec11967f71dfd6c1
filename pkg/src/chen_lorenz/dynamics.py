"""Floating-point corroboration: RK4 trajectories, phase-volume contraction and
largest-Lyapunov-exponent estimates.

Nothing in this module certifies anything.  A positive exponent estimate is
heuristic evidence of chaos only.

Integration is fixed-step classical Runge-Kutta on plain Python floats, so a
given configuration reproduces bit-identical output on one platform.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from .systems import SystemKind, equilibria

__all__ = [
    "IntegratorConfig",
    "LyapunovConfig",
    "Trajectory",
    "VolumeReport",
    "LyapunovEstimate",
    "DivergenceError",
    "HEURISTIC_LABEL",
    "rk4_step",
    "rk4_solve",
    "float_field",
    "float_jacobian",
    "integrate",
    "volume_contraction_check",
    "largest_lyapunov",
    "newton_equilibrium",
    "equilibria_from_trajectory",
    "write_trajectory_csv",
]

DIVERGENCE_BOUND = 1e12
HEURISTIC_LABEL = "heuristic evidence of chaos"

Vec = Tuple[float, ...]


class DivergenceError(RuntimeError):
    """Integration left the finite region; ``partial`` holds what was computed."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-3
    t_end: float = 50.0
    initial_state: Tuple[float, float, float] = (1.0, 1.0, 1.0)
    bound: float = DIVERGENCE_BOUND
    method: str = "rk4"

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        if self.dt > self.t_end:
            raise ValueError("dt must not exceed t_end")
        if len(self.initial_state) != 3:
            raise ValueError("initial state must have three components")
        if self.method != "rk4":
            raise ValueError("only classical RK4 is supported")
        object.__setattr__(self, "initial_state", tuple(float(v) for v in self.initial_state))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


@dataclass(frozen=True)
class LyapunovConfig(IntegratorConfig):
    dt: float = 2e-3
    t_end: float = 250.0
    transient: float = 50.0
    renormalization_interval: float = 0.5

    def __post_init__(self):
        super().__post_init__()
        if self.t_end - self.transient < 100:
            raise ValueError("need at least 100 time units after the transient")
        if not self.renormalization_interval >= self.dt:
            raise ValueError("renormalization interval shorter than dt")


# vector fields on floats


def float_field(params) -> Callable[[Vec], Vec]:
    a, b, c = params.floats()
    if params.kind is SystemKind.LORENZ:
        def f(s):
            x, y, z = s[0], s[1], s[2]
            return (a * (y - x), c * x - x * z - y, x * y - b * z)
    else:
        def f(s):
            x, y, z = s[0], s[1], s[2]
            return (a * (y - x), (c - a) * x - x * z + c * y, x * y - b * z)
    return f


def float_jacobian(params, s) -> np.ndarray:
    a, b, c = params.floats()
    x, y, z = s
    if params.kind is SystemKind.LORENZ:
        return np.array([[-a, a, 0.0], [c - z, -1.0, -x], [y, x, -b]])
    return np.array([[-a, a, 0.0], [c - a - z, c, -x], [y, x, -b]])


def _tangent_field(params, n_vectors: int) -> Callable[[Vec], Vec]:
    """State plus ``n_vectors`` tangent vectors, each advanced by ``J(x) v``."""
    a, b, c = params.floats()
    # second row of J is (r - z, s, -x) with these constants
    r, s_ = (c, -1.0) if params.kind is SystemKind.LORENZ else (c - a, c)
    base = float_field(params)

    def f(y):
        x, yy, z = y[0], y[1], y[2]
        out = list(base(y))
        rz = r - z
        for i in range(3, 3 + 3 * n_vectors, 3):
            v0, v1, v2 = y[i], y[i + 1], y[i + 2]
            out.append(a * (v1 - v0))
            out.append(rz * v0 + s_ * v1 - x * v2)
            out.append(yy * v0 + x * v1 - b * v2)
        return tuple(out)

    return f


def rk4_step(f: Callable[[Vec], Vec], y: Vec, dt: float) -> Vec:
    h2 = 0.5 * dt
    k1 = f(y)
    k2 = f(tuple(yi + h2 * ki for yi, ki in zip(y, k1)))
    k3 = f(tuple(yi + h2 * ki for yi, ki in zip(y, k2)))
    k4 = f(tuple(yi + dt * ki for yi, ki in zip(y, k3)))
    h6 = dt / 6.0
    return tuple(
        yi + h6 * (a + 2.0 * b + 2.0 * c + d) for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
    )


def _finite(y: Vec, bound: float) -> bool:
    return all(math.isfinite(v) and abs(v) <= bound for v in y)


def rk4_solve(f: Callable[[Vec], Vec], y0: Sequence[float], dt: float, n_steps: int,
              bound: float = DIVERGENCE_BOUND) -> List[Vec]:
    """Generic fixed-step RK4; returns ``n_steps + 1`` states including ``y0``."""
    y = tuple(float(v) for v in y0)
    out = [y]
    for i in range(n_steps):
        y = rk4_step(f, y, dt)
        if not _finite(y, bound):
            raise DivergenceError(f"a component exceeded {bound:g} in magnitude at step {i + 1}", out)
        out.append(y)
    return out


@dataclass
class Trajectory:
    kind: SystemKind
    params: object
    dt: float
    samples: List[Tuple[float, float, float, float]] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def diverged(self) -> bool:
        return self.error is not None

    @property
    def states(self) -> np.ndarray:
        return np.array([s[1:] for s in self.samples])

    @property
    def times(self) -> np.ndarray:
        return np.array([s[0] for s in self.samples])

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_trajectory_csv(self, buf)
        return buf.getvalue()


def integrate(params, cfg: IntegratorConfig) -> Trajectory:
    """RK4 samples at ``t = 0, dt, 2dt, ...``; on divergence the partial run is kept
    and ``error`` is set."""
    f = float_field(params)
    traj = Trajectory(params.kind, params, cfg.dt)
    try:
        states = rk4_solve(f, cfg.initial_state, cfg.dt, cfg.n_steps, cfg.bound)
    except DivergenceError as exc:
        states = exc.partial
        traj.error = str(exc)
    traj.samples = [(i * cfg.dt, *s) for i, s in enumerate(states)]
    return traj


def write_trajectory_csv(traj: Trajectory, out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["t", "x", "y", "z"])
    for row in traj.samples:
        w.writerow([f"{v:.17g}" for v in row])


def trace_of_jacobian(params) -> float:
    """Constant divergence of the field: -(a+1+b) for Lorenz, -(a+b-c) for Chen."""
    a, b, c = params.floats()
    if params.kind is SystemKind.LORENZ:
        return -(a + 1.0 + b)
    return -(a + b - c)


@dataclass(frozen=True)
class VolumeReport:
    trace: float
    t_end: float
    det_final: float
    expected_final: float
    max_relative_deviation: float

    def to_json(self):
        return {
            "trace": self.trace,
            "t_end": self.t_end,
            "det_final": self.det_final,
            "expected_final": self.expected_final,
            "max_relative_deviation": self.max_relative_deviation,
        }


def volume_contraction_check(params, cfg: IntegratorConfig) -> VolumeReport:
    """Integrate the fundamental matrix and compare ``det`` with ``exp(trace * t)``.

    The columns are re-orthonormalized by QR after every step and ``log|det R|``
    accumulated; forming ``det`` of the raw matrix loses all precision once its
    entries grow like ``exp(17 t)`` while the determinant shrinks.
    """
    f = _tangent_field(params, 3)
    y = tuple(cfg.initial_state) + (1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0)
    tr = trace_of_jacobian(params)
    worst = 0.0
    log_det = 0.0
    for i in range(1, cfg.n_steps + 1):
        y = rk4_step(f, y, cfg.dt)
        if not _finite(y, cfg.bound):
            raise DivergenceError(f"variational flow diverged at step {i}")
        # rows of this array are the tangent vectors; QR of its transpose
        q, r = np.linalg.qr(np.array(y[3:]).reshape(3, 3).T)
        d = np.diag(r)
        # Householder QR may give negative diagonals; move the signs into q
        q, d = q * np.sign(d), np.abs(d)
        log_det += float(np.sum(np.log(d)))
        y = y[:3] + tuple(q.T.ravel())
        worst = max(worst, abs(math.expm1(log_det - tr * i * cfg.dt)))
    t_end = cfg.n_steps * cfg.dt
    return VolumeReport(tr, t_end, math.exp(log_det), math.exp(tr * t_end), worst)


@dataclass(frozen=True)
class LyapunovEstimate:
    lambda_max: float
    transient_discard: float
    renormalization_interval: float
    averaging_time: float
    dt: float

    @property
    def label(self) -> str:
        return HEURISTIC_LABEL if self.lambda_max > 0 else "no evidence of chaos"

    def to_json(self):
        return {
            "lambda_max": self.lambda_max,
            "label": self.label,
            "config": {
                "dt": self.dt,
                "transient": self.transient_discard,
                "renormalization_interval": self.renormalization_interval,
                "averaging_time": self.averaging_time,
            },
        }


def largest_lyapunov(params, cfg: LyapunovConfig = LyapunovConfig()) -> LyapunovEstimate:
    """Benettin estimate: one tangent vector, renormalized every interval, log growth averaged."""
    base = float_field(params)
    f = _tangent_field(params, 1)
    dt = cfg.dt
    n_transient = int(round(cfg.transient / dt))
    n_total = cfg.n_steps
    n_renorm = max(1, int(round(cfg.renormalization_interval / dt)))

    y = tuple(cfg.initial_state)
    for i in range(n_transient):
        y = rk4_step(base, y, dt)
        if not _finite(y, cfg.bound):
            raise DivergenceError(f"trajectory diverged during the transient at step {i + 1}")

    v = (1.0, 1.0, 1.0)
    norm = math.sqrt(3.0)
    state = y + tuple(x / norm for x in v)
    log_sum = 0.0
    steps = 0
    for i in range(n_transient, n_total):
        state = rk4_step(f, state, dt)
        steps += 1
        if not _finite(state, cfg.bound):
            raise DivergenceError(f"tangent flow diverged at step {i + 1}")
        if steps % n_renorm == 0:
            w = state[3:]
            norm = math.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
            log_sum += math.log(norm)
            state = state[:3] + (w[0] / norm, w[1] / norm, w[2] / norm)
    # close the last partial interval
    w = state[3:]
    tail = steps % n_renorm
    if tail:
        log_sum += math.log(math.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]))
    avg_time = steps * dt
    return LyapunovEstimate(log_sum / avg_time, n_transient * dt, n_renorm * dt, avg_time, dt)


# numerical equilibria


def newton_equilibrium(params, guess, tol: float = 1e-13, max_iter: int = 50) -> Optional[np.ndarray]:
    f = float_field(params)
    x = np.array(guess, dtype=float)
    for _ in range(max_iter):
        fx = np.array(f(tuple(x)))
        try:
            step = np.linalg.solve(float_jacobian(params, x), fx)
        except np.linalg.LinAlgError:
            return None
        x = x - step
        if np.linalg.norm(step) <= tol * max(1.0, np.linalg.norm(x)):
            return x
    return None


def equilibria_from_trajectory(traj: Trajectory, n_seeds: int = 10) -> List[np.ndarray]:
    """Newton-refine the slowest trajectory samples; distinct converged points."""
    f = float_field(traj.params)
    states = traj.states
    speeds = np.array([math.sqrt(sum(v * v for v in f(tuple(s)))) for s in states])
    found: List[np.ndarray] = []
    for idx in np.argsort(speeds, kind="stable")[: n_seeds * 50 : 50]:
        x = newton_equilibrium(traj.params, states[idx])
        if x is None:
            continue
        if all(np.linalg.norm(x - y) > 1e-8 for y in found):
            found.append(x)
    return found


def exact_equilibria_floats(params) -> List[np.ndarray]:
    return [np.array(e.approx()) for e in equilibria(params).points]
