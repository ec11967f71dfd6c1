import math
from fractions import Fraction

import numpy as np
import pytest

from chen_lorenz.dynamics import (
    HEURISTIC_LABEL,
    DivergenceError,
    IntegratorConfig,
    LyapunovConfig,
    equilibria_from_trajectory,
    exact_equilibria_floats,
    integrate,
    largest_lyapunov,
    newton_equilibrium,
    rk4_solve,
    trace_of_jacobian,
    volume_contraction_check,
)
from chen_lorenz.systems import ChenParams, LorenzParams

LORENZ = LorenzParams(10, Fraction(8, 3), 28)
CHEN = ChenParams(45, 5, 28)

# locked from long Benettin runs at dt=1e-3, t_end=2000, transient 100
ORACLE_LAMBDA_LORENZ = 0.9075135690206871
ORACLE_LAMBDA_CHEN = 1.155141899280608


def rk4_error(f, exact, dt, t_end=1.0):
    n = int(round(t_end / dt))
    return abs(rk4_solve(f, (1.0,), dt, n)[-1][0] - exact)


def test_rk4_fourth_order_on_decay():
    f = lambda y: (-y[0],)
    exact = math.exp(-1.0)
    errs = [rk4_error(f, exact, dt) for dt in (0.1, 0.05, 0.025)]
    for coarse, fine in zip(errs, errs[1:]):
        assert 14 <= coarse / fine <= 18


def test_rk4_fourth_order_through_degenerate_lorenz():
    # a=1, c=0 from (1,0,0): y and z stay 0 and x decays like exp(-t)
    p = LorenzParams(1, 0, 0)
    errs = []
    for dt in (0.1, 0.05):
        traj = integrate(p, IntegratorConfig(dt=dt, t_end=1.0, initial_state=(1, 0, 0)))
        x = traj.states[-1]
        assert x[1] == 0 and x[2] == 0
        errs.append(abs(x[0] - math.exp(-1.0)))
    assert 14 <= errs[0] / errs[1] <= 18


def test_equilibrium_start_stays_put():
    p2 = (-math.sqrt(72), -math.sqrt(72), 27.0)
    traj = integrate(LORENZ, IntegratorConfig(dt=1e-3, t_end=10, initial_state=p2))
    assert np.max(np.abs(traj.states - np.array(p2))) < 1e-6


def test_origin_start_is_constant():
    traj = integrate(CHEN, IntegratorConfig(dt=1e-3, t_end=1, initial_state=(0, 0, 0)))
    assert not traj.states.any()


def test_chen_trajectory_bounded_and_non_convergent():
    traj = integrate(CHEN, IntegratorConfig(dt=1e-3, t_end=100, initial_state=(1, 1, 1)))
    assert not traj.diverged
    assert len(traj.samples) == 100001
    assert np.max(np.abs(traj.states)) < 1e3
    final = traj.states[-1]
    for eq in exact_equilibria_floats(CHEN):
        assert np.linalg.norm(final - eq) > 1e-3
    # locked from the observed attractor: it visits both wings with z well above zero
    lo, hi = traj.states[10000:].min(axis=0), traj.states[10000:].max(axis=0)
    assert lo[0] < -15 and hi[0] > 15 and lo[2] > 0 and hi[2] < 30


def test_integration_is_deterministic():
    cfg = IntegratorConfig(dt=1e-3, t_end=5)
    assert integrate(CHEN, cfg).to_csv() == integrate(CHEN, cfg).to_csv()


def test_trajectory_csv_format():
    traj = integrate(LORENZ, IntegratorConfig(dt=0.01, t_end=0.02))
    lines = traj.to_csv().splitlines()
    assert lines[0] == "t,x,y,z"
    assert len(lines) == 4
    assert lines[1] == "0,1,1,1"
    assert [float(v) for v in lines[2].split(",")] == list(traj.samples[1])


def test_divergence_keeps_partial_trajectory():
    # negative a and b make the linear part expanding; the cap trips quickly
    p = LorenzParams(-5, -5, 28)
    traj = integrate(p, IntegratorConfig(dt=1e-2, t_end=50, bound=1e6))
    assert traj.diverged and "exceeded" in traj.error
    assert 1 < len(traj.samples) < 5001
    with pytest.raises(DivergenceError) as info:
        rk4_solve(lambda y: (y[0],), (1.0,), 0.1, 1000, bound=10.0)
    assert len(info.value.partial) > 1


def test_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(dt=0)
    with pytest.raises(ValueError):
        IntegratorConfig(dt=1, t_end=0.5)
    with pytest.raises(ValueError):
        IntegratorConfig(method="euler")
    with pytest.raises(ValueError):
        LyapunovConfig(t_end=120, transient=50)


def test_trace_of_jacobian():
    assert trace_of_jacobian(LORENZ) == pytest.approx(-(10 + 1 + 8 / 3))
    assert trace_of_jacobian(CHEN) == -22.0


def test_volume_single_step_from_identity():
    # the fundamental matrix starts at the identity, so det = 1 at t = 0
    rep = volume_contraction_check(CHEN, IntegratorConfig(dt=1e-4, t_end=1e-4))
    assert rep.t_end == pytest.approx(1e-4)
    assert rep.det_final == pytest.approx(math.exp(-22e-4), rel=1e-12)


@pytest.mark.parametrize("params", [LORENZ, CHEN], ids=["lorenz", "chen"])
def test_volume_contraction_matches_trace(params):
    rep = volume_contraction_check(params, IntegratorConfig(dt=1e-4, t_end=1.0))
    assert rep.max_relative_deviation < 1e-6
    assert rep.det_final == pytest.approx(math.exp(rep.trace), rel=1e-6)


def test_lyapunov_lorenz():
    est = largest_lyapunov(LORENZ)
    assert abs(est.lambda_max - 0.9) <= 0.1
    assert abs(est.lambda_max - ORACLE_LAMBDA_LORENZ) < 0.05
    assert est.label == HEURISTIC_LABEL


def test_lyapunov_chen_positive():
    est = largest_lyapunov(CHEN)
    assert est.lambda_max > 0
    assert abs(est.lambda_max - ORACLE_LAMBDA_CHEN) < 0.15
    assert est.to_json()["label"] == "heuristic evidence of chaos"


def test_lyapunov_stable_origin_is_negative():
    p = LorenzParams(10, Fraction(8, 3), Fraction(1, 2))
    est = largest_lyapunov(p, LyapunovConfig(initial_state=(0.1, 0.1, 0.1)))
    # slowest eigenvalue at the origin: (-(a+1) + sqrt((a-1)^2 + 4ac)) / 2
    analytic = (-11 + math.sqrt(81 + 20)) / 2
    assert est.lambda_max < 0
    assert est.lambda_max == pytest.approx(analytic, abs=0.01)
    assert est.label == "no evidence of chaos"


def test_lyapunov_is_deterministic():
    cfg = LyapunovConfig(dt=5e-3, t_end=120, transient=20)
    assert largest_lyapunov(CHEN, cfg) == largest_lyapunov(CHEN, cfg)


def test_newton_equilibria_match_exact():
    exact = exact_equilibria_floats(CHEN)
    for eq in exact:
        x = newton_equilibrium(CHEN, eq + 0.5)
        assert x is not None and np.linalg.norm(x - eq) < 1e-10


def test_equilibria_from_trajectory_near_exact():
    traj = integrate(LORENZ, IntegratorConfig(dt=1e-2, t_end=20))
    exact = exact_equilibria_floats(LORENZ)
    found = equilibria_from_trajectory(traj)
    assert found
    for x in found:
        assert min(np.linalg.norm(x - e) for e in exact) < 1e-10
