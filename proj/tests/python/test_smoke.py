"""Smoke tests for the python bindings."""

import math

import pytest

try:
    import stirap_dephasing as sd
except ImportError:  # running against the raw build tree
    import _core as sd


def test_protocol_sampling():
    p = sd.Protocol.linear_sine(2.0, 40.0)
    s = sd.sample(p, 0.0)
    assert s.omega_p == 0.0
    assert s.omega_s == 2.0
    assert s.omega == 2.0
    assert s.theta_dot == pytest.approx(math.pi / 80.0)

    g = sd.Protocol.gaussian(2.0, 2.0, 1.0)
    assert g.t0 == 16.0
    mid = sd.sample(g, 8.0)
    assert mid.theta == pytest.approx(math.pi / 4.0)
    assert mid.theta_dot == pytest.approx(0.25)


def test_transfer_efficiency_law():
    r = sd.transfer_efficiency(2.0, 2.0, 40.0)
    assert r.rho33_final == pytest.approx(0.8873723371961544, abs=1e-12)
    assert r.adiabatic_margin_1 == pytest.approx(0.019634954084936207, abs=1e-12)
    assert r.adiabatic_margin_2 == pytest.approx(0.18505508252042546, abs=1e-12)
    assert sd.transfer_efficiency(1e6, 2.0, 40.0).rho33_final == pytest.approx(1 / 3, abs=1e-9)


def test_exact_evolution_matches_law():
    cfg = sd.SimConfig(sd.Protocol.linear_sine(2.0, 40.0), gamma=2.0)
    traj = sd.evolve_bare(cfg)
    rho33 = sd.final_rho33(traj, cfg.protocol)
    assert rho33 == pytest.approx(0.8889545876, abs=1e-6)
    assert abs(rho33 - sd.transfer_efficiency(2.0, 2.0, 40.0).rho33_final) <= 0.05
    assert traj.cert.max_trace_err <= 1e-9
    assert traj.cert.min_eigenvalue >= -1e-9
    assert traj.times[0] == 0.0 and traj.times[-1] == 40.0

    state = traj.states[-1]
    assert state[2][2].real == pytest.approx(rho33, abs=1e-12)


def test_reduced_and_adiabatic_agree():
    cfg = sd.SimConfig(sd.Protocol.gaussian(2.0, 2.0, 1.0), gamma=2.0)
    exact = sd.rho_dd_series(sd.evolve_adiabatic(cfg), cfg.protocol)
    reduced = sd.evolve_reduced(cfg).rho_dd
    assert len(exact) == len(reduced)
    assert max(abs(a - b) for a, b in zip(exact, reduced)) <= 0.05


def test_oracle_equivalence():
    cfg = sd.SimConfig(sd.Protocol.linear_sine(2.0, 20.0), gamma=2.0)
    bare = sd.evolve_bare(cfg)
    full8 = sd.evolve_full8(cfg)
    assert full8.cert.max_leakage <= 1e-12
    p_bare = sd.bare_populations(bare, cfg.protocol)
    p_full = sd.bare_populations(full8, cfg.protocol)
    assert max(abs(a[i] - b[i]) for a, b in zip(p_bare, p_full) for i in range(3)) <= 1e-8


def test_classical_reference():
    p = sd.Protocol.linear_sine(2.0, 40.0)
    assert sd.classical_reference(0.0, p) == 1.0
    assert sd.classical_reference(1.0, p) == pytest.approx(1 / 3 + 2 / 3 * math.exp(-15.0))


def test_invalid_config_raises():
    with pytest.raises(ValueError):
        sd.Protocol.linear_sine(-1.0, 40.0)
    with pytest.raises(ValueError):
        sd.SimConfig(sd.Protocol.linear_sine(2.0, 40.0), gamma=2.0, dt=0.5)
    with pytest.raises(ValueError):
        sd.sample(sd.Protocol.linear_sine(2.0, 40.0), 41.0)
