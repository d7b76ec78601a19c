import numpy as np
import pytest

from application.errors import BranchAmbiguity, DegenerateParameter, SingularKinematics
from application.kappa_scattering import (CONSERVATION_LAWS, Momentum3, ScatterConfig, casimir_x_value,
                                          check_conjugation_shadow, classical_limit_rate, conservation_report,
                                          conservation_residuals, conservation_sweep, mass_shell, r_parameter,
                                          scatter, sixth_law_contrast)

P = Momentum3.from_pairs([[0.1, 0.0], [0.2, 0.1], [0.3, 0.0]])
Q = Momentum3.from_pairs([[-0.2, 0.05], [0.1, 0.0], [0.15, -0.1]])
ZERO = Momentum3(0j, 0j, 0j)


def test_momentum_parsing():
    assert P.to_pairs() == [[0.1, 0.0], [0.2, 0.1], [0.3, 0.0]]
    with pytest.raises(ValueError):
        Momentum3.from_pairs([[0.1, 0.0], [0.2, 0.1]])
    with pytest.raises(SingularKinematics):
        Momentum3(complex(np.nan), 0j, 0j)


def test_config_validation():
    assert ScatterConfig(2.0).hbar == 0.25
    with pytest.raises(DegenerateParameter):
        ScatterConfig(0)
    with pytest.raises(DegenerateParameter):
        ScatterConfig(2.0, 2)


def test_zero_spectator_is_the_identity():
    cfg = ScatterConfig(2.0)
    assert r_parameter(P, ZERO, cfg) == 1
    p_out, q_out = scatter(P, ZERO, cfg)
    assert p_out.deviation(P) < 1e-15
    assert q_out.deviation(ZERO) < 1e-15


@pytest.mark.parametrize("kappa, branch", [(2.0, 0), (2.0, 1), (1.0, 0), (10j, 0)])
def test_single_pair_conserves_all_laws(kappa, branch):
    cfg = ScatterConfig(kappa, branch)
    p_out, q_out = scatter(P, Q, cfg)
    residuals = conservation_residuals(P, Q, p_out, q_out, cfg)
    assert sorted(residuals) == sorted(CONSERVATION_LAWS)
    for law, residual in residuals.items():
        assert residual < 1e-12, law
    assert conservation_report(P, Q, p_out, q_out, cfg).passed


def test_perturbed_energy_is_detected():
    cfg = ScatterConfig(2.0)
    p_out, q_out = scatter(P, Q, cfg)
    shifted = Momentum3(p_out.p0 + 1e-6, p_out.p_plus, p_out.p_minus)
    residuals = conservation_residuals(P, Q, shifted, q_out, cfg)
    assert float(residuals["total_energy"]) == pytest.approx(1e-6, rel=1e-4)
    result = conservation_report(P, Q, shifted, q_out, cfg)
    assert not result.passed
    assert "conservation:total_energy" in result.data["failures"]
    assert result.data["residuals"]["total_energy"] == pytest.approx(1e-6, rel=1e-4)


def test_momentum_invariant_is_four_times_the_mass_shell():
    cfg = ScatterConfig(2.0)
    assert abs(casimir_x_value(P, cfg) - 4 * mass_shell(P, cfg)) < 1e-14


def test_singular_kinematics():
    cfg = ScatterConfig(2.0)
    p = Momentum3(0j, 1 + 0j, 0j)
    q = Momentum3(0j, 0j, 1 + 0j)
    assert abs(r_parameter(p, q, cfg)) < 1e-15
    with pytest.raises(SingularKinematics):
        scatter(p, q, cfg)


def test_branch_cut_is_refused():
    cfg = ScatterConfig(2.0)
    p = Momentum3(0j, 1 + 0j, 0j)
    q = Momentum3(0j, 0j, 2 + 0j)
    assert r_parameter(p, q, cfg) == -1
    with pytest.raises(BranchAmbiguity):
        scatter(p, q, cfg)


def test_sixth_law_against_the_energy_difference():
    result = sixth_law_contrast(P, Q, ScatterConfig(2.0))
    assert result.passed
    assert result.data["alternative_violated"] is True


def test_conjugation_shadow():
    assert check_conjugation_shadow(P, Q, ScatterConfig(2.0)).passed


def test_approach_to_the_identity_map():
    result = classical_limit_rate(P, Q)
    assert result.passed, result.detail


@pytest.mark.slow
@pytest.mark.parametrize("kappa", [1.0, 2.0, 10j])
def test_conservation_sweep(kappa):
    result = conservation_sweep(kappa, 1000, 7, 1e-10)
    assert result.passed, result.detail
    assert result.data["samples"] + result.data["excluded"] == 1000
