"""Smoke tests for the python bindings: a light pass over the main operations."""

import math

import numpy as np
import pytest

import njled


@pytest.fixture
def setup22():
    cfg = njled.LatticeConfig(nu=2, L=1)
    basis = njled.FockBasis.full(cfg)
    return cfg, basis


def test_lattice_and_momenta(setup22):
    cfg, _ = setup22
    assert cfg.volume == 4
    assert njled.momentum_Q(cfg).is_Q()
    density = njled.density_momenta(cfg)
    assert len(density) == 4
    assert njled.dispersion(njled.momentum_Q(cfg)) == pytest.approx(2.0)


def test_charge_density_algebra(setup22):
    _, basis = setup22
    rho = njled.charge_density(basis, 0)
    sq = (rho @ rho).dense()
    assert np.allclose(sq, 0.25 * np.eye(basis.dim), atol=1e-12)
    assert rho.trace() == pytest.approx(0.0)


def test_hamiltonian_and_thermal(setup22):
    cfg, basis = setup22
    params = njled.ModelParams(kappa=0.4, m=0.0, g=1.0, beta=2.0)
    h = njled.build_hamiltonian(basis, params)
    assert h.hermiticity_error() < 1e-12
    state = njled.thermal_state(basis, params)
    assert njled.thermal_expectation(state, rho_x := njled.charge_density(basis, 1)) == (
        pytest.approx(0.0, abs=1e-10)
    )
    assert njled.sum_rule_check(state, basis).satisfied


def test_infrared_bound(setup22):
    cfg, basis = setup22
    params = njled.ModelParams(kappa=0.3, m=0.0, g=1.0, beta=1.5)
    state = njled.thermal_state(basis, params)
    for p in njled.density_momenta(cfg):
        if p.is_Q():
            continue
        rep = njled.infrared_check(state, basis, p)
        assert rep.satisfied
        assert rep.slack >= 0.0


def test_gaussian_domination(setup22):
    cfg, basis = setup22
    params = njled.ModelParams(kappa=0.5, m=0.1, g=1.0, beta=2.0)
    h = njled.FieldH.random(cfg, seed=7)
    assert njled.gaussian_domination_check(basis, params, h).satisfied


def test_classical_point(setup22):
    cfg, basis = setup22
    params = njled.ModelParams(kappa=0.0, m=0.0, g=1.0, beta=60.0)
    state = njled.thermal_state(basis, params)
    assert njled.lro_parameter(state, basis) == pytest.approx(0.5, abs=1e-8)


def test_continuum_pieces():
    cfg3 = njled.LatticeConfig(nu=3, L=1)
    rep = njled.continuum.dispersion_check(cfg3, 1.0, 0.0)
    assert rep.ok
    assert njled.continuum.gamma_identities_exact()
    i3 = njled.continuum.bz_integral("I", 3)
    assert i3.converged
    assert abs(i3.value - 1.0109240394) < 1e-3
    i2 = njled.continuum.bz_integral("I", 2)
    assert not i2.converged
    sel = njled.continuum.chiral_selection_check(cfg3, 0.9, 2.0, 0.0)
    assert sel.max_opposite < 1e-10
    cert = njled.continuum.theorem_region(0.0, 1.0, None, 2)
    assert cert.lower_bound == pytest.approx(0.25)


def test_tiny_scan():
    config = njled.ScanConfig()
    config.lattices = [njled.LatticePoint(nu=2, L=1)]
    config.kappa = [0.2]
    config.beta = [1.0]
    config.suite = njled.Suite.bounds
    config.gaussian_draws = 2
    result = njled.run_scan(config)
    assert len(result.records) == 1
    assert result.records[0].status == "ok"
    assert result.all_ok
