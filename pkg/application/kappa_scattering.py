from dataclasses import dataclass

import numpy as np

from application.errors import BranchAmbiguity, DegenerateParameter, SingularKinematics
from application.message_logger import MessageLogger
from application.reports import FAIL, PASS, CheckResult, merge

logger = MessageLogger('kappa_scattering').get_logger()

CONSERVATION_LAWS = ('total_energy', 'momentum_plus', 'momentum_minus', 'mass_shell_p', 'mass_shell_q', 'sixth_law')
SINGULAR_R = 1e-6


@dataclass(frozen=True)
class Momentum3:
    """
    Momentum (p_0, p_+, p_-); the components may also be numpy arrays of equal shape for batches
    """
    p0: complex
    p_plus: complex
    p_minus: complex

    def __post_init__(self):
        if not np.all(np.isfinite(self.as_array())):
            raise SingularKinematics("momentum components must be finite, got {}".format(self))

    @classmethod
    def from_pairs(cls, pairs):
        """
        :param pairs: three [re, im] pairs, e.g. from JSON
        """
        if len(pairs) != 3 or any(len(pair) != 2 for pair in pairs):
            raise ValueError("a momentum needs three [re, im] pairs, got {!r}".format(pairs))
        return cls(*(complex(float(re), float(im)) for re, im in pairs))

    def to_pairs(self):
        return [[float(np.real(c)), float(np.imag(c))] for c in (self.p0, self.p_plus, self.p_minus)]

    def as_array(self):
        return np.array([self.p0, self.p_plus, self.p_minus], dtype=complex)

    def deviation(self, other):
        return float(np.max(np.abs(self.as_array() - other.as_array())))


@dataclass(frozen=True)
class ScatterConfig:
    """
    κ with ħ = 1/(2κ), the sheet of log r (0 principal, 1 shifted by 2πi) and the residual tolerance
    """
    kappa: complex = 2.0
    branch: int = 0
    tolerance: float = 1e-12

    def __post_init__(self):
        if self.kappa == 0 or not np.isfinite(self.kappa):
            raise DegenerateParameter("κ must be finite and non-zero, got {}".format(self.kappa))
        if self.branch not in (0, 1):
            raise DegenerateParameter("branch must be 0 or 1, got {}".format(self.branch))

    @property
    def hbar(self):
        return 1 / (2 * self.kappa)


def _phase(x, cfg):
    """
    e^{ix/2κ}
    """
    return np.exp(1j * x / (2 * cfg.kappa))


def r_parameter(p, q, cfg):
    """
    r = 1 - (4/κ²) e^{i(p_0 - q_0)/2κ} p_+ q_-
    """
    return 1 - 4 / cfg.kappa ** 2 * _phase(p.p0 - q.p0, cfg) * p.p_plus * q.p_minus


def _log_and_root(r, cfg, strict=True):
    """
    log r on the configured sheet and r^{1/2} = e^{(log r)/2} on the same sheet
    """
    r = np.asarray(r, dtype=complex)
    if strict and np.any((np.real(r) < 0) & (np.abs(np.imag(r)) <= cfg.tolerance * np.maximum(1, np.abs(r)))):
        raise BranchAmbiguity("r = {} lies on the branch cut of log r".format(r))
    log_r = np.log(r) + 2j * np.pi * cfg.branch
    return log_r, np.exp(log_r / 2)


def scatter(p, q, cfg, strict=True):
    """
    Outgoing momenta (p', q') of the two-particle map
    :param p: Momentum3 of the first particle
    :param q: Momentum3 of the second particle
    :param cfg: ScatterConfig
    :param strict: raise BranchAmbiguity when r sits on the branch cut
    :return: (p', q')
    """
    kappa = cfg.kappa
    r = r_parameter(p, q, cfg)
    if np.any(np.abs(r) < SINGULAR_R):
        raise SingularKinematics("r = {} is too close to 0 for log r and r^(-1/2)".format(r))
    log_r, root = _log_and_root(r, cfg, strict)

    def e(x):
        return _phase(x, cfg)

    p_out = Momentum3(
        p.p0 + 1j * kappa * log_r,
        e(-2 * q.p0) * p.p_plus / root,
        e(2 * q.p0) * root * p.p_minus + e(q.p0 - p.p0) * root * q.p_minus - e(3 * p.p0 + q.p0) * q.p_minus / root,
    )
    q_out = Momentum3(
        q.p0 - 1j * kappa * log_r,
        e(-2 * p.p0) * root * q.p_plus + e(q.p0 - p.p0) * root * p.p_plus - e(-p.p0 - 3 * q.p0) * p.p_plus / root,
        e(2 * p.p0) * q.p_minus / root,
    )
    return p_out, q_out


def mass_shell(p, cfg):
    """
    p_+ p_- - κ² sin²(p_0/2κ)
    """
    return p.p_plus * p.p_minus - cfg.kappa ** 2 * np.sin(p.p0 / (2 * cfg.kappa)) ** 2


def k_xi_eigenvalues(p, cfg):
    """
    Values of H_C = 2iP_0, q^{H_C}, E_C = 2q^{-H_C/2}P_+ and F_C = 2q^{H_C/2}P_- on a momentum eigenstate
    """
    return {
        'H_C': 2j * p.p0,
        'q^H_C': _phase(2 * p.p0, cfg),
        'E_C': 2 * _phase(-p.p0, cfg) * p.p_plus,
        'F_C': 2 * _phase(p.p0, cfg) * p.p_minus,
    }


def casimir_x_value(p, cfg):
    """
    X = E_C F_C + sinh²(ħH_C/2)/ħ², equal to 4·mass_shell
    """
    values = k_xi_eigenvalues(p, cfg)
    hbar = cfg.hbar
    return values['E_C'] * values['F_C'] + np.sinh(hbar * values['H_C'] / 2) ** 2 / hbar ** 2


def _relative(lhs, rhs):
    return np.abs(lhs - rhs) / np.maximum(1, np.maximum(np.abs(lhs), np.abs(rhs)))


def conservation_residuals(p, q, p_out, q_out, cfg):
    """
    Relative residuals of the six conservation laws
    :return: dict law -> float or array
    """
    def e(x):
        return _phase(x, cfg)

    return {
        'total_energy': _relative(p_out.p0 + q_out.p0, p.p0 + q.p0),
        'momentum_plus': _relative(e(-q_out.p0) * p_out.p_plus + e(p_out.p0) * q_out.p_plus,
                                   e(q.p0) * p.p_plus + e(-p.p0) * q.p_plus),
        'momentum_minus': _relative(e(-q_out.p0) * p_out.p_minus + e(p_out.p0) * q_out.p_minus,
                                    e(q.p0) * p.p_minus + e(-p.p0) * q.p_minus),
        'mass_shell_p': _relative(mass_shell(p_out, cfg), mass_shell(p, cfg)),
        'mass_shell_q': _relative(mass_shell(q_out, cfg), mass_shell(q, cfg)),
        'sixth_law': _relative(e(q_out.p0 - p_out.p0) * p_out.p_plus * q_out.p_minus,
                               e(p.p0 - q.p0) * p.p_plus * q.p_minus),
    }


def _law_result(name, residual, tolerance):
    worst = float(np.max(residual)) if np.size(residual) else 0.0
    data = {"max_residual": worst}
    if worst < tolerance:
        return CheckResult(name, PASS, "max relative residual {:.3e}".format(worst), data=data)
    return CheckResult(name, FAIL, "max relative residual {:.3e} exceeds {:.1e}".format(worst, tolerance), data=data)


def conservation_report(p, q, p_out, q_out, cfg):
    residuals = conservation_residuals(p, q, p_out, q_out, cfg)
    results = [_law_result("conservation:" + law, residuals[law], cfg.tolerance) for law in CONSERVATION_LAWS]
    result = merge("conservation", results)
    result.data["residuals"] = {law: r.data["max_residual"] for law, r in zip(CONSERVATION_LAWS, results)}
    if not result.passed:
        logger.warning("conservation fails at κ = {}: {}".format(cfg.kappa, result.detail))
    return result


def sixth_law_contrast(p, q, cfg):
    """
    The map keeps e^{i(q'_0 - p'_0)/2κ}p'_+q'_- but generically not the individual energies p'_0 - q'_0
    """
    p_out, q_out = scatter(p, q, cfg)

    def e(x):
        return _phase(x, cfg)

    sixth = float(np.max(_relative(e(q_out.p0 - p_out.p0) * p_out.p_plus * q_out.p_minus,
                                   e(p.p0 - q.p0) * p.p_plus * q.p_minus)))
    alternative = float(np.max(_relative(p_out.p0 - q_out.p0, p.p0 - q.p0)))
    violated = alternative > cfg.tolerance
    data = {"sixth_law_residual": sixth, "alternative_residual": alternative, "alternative_violated": violated}
    detail = "energy-preserving law {} (residual {:.3e})".format("violated" if violated else "holds", alternative)
    return CheckResult("sixth_law_contrast", PASS if sixth < cfg.tolerance else FAIL, detail, data=data)


def check_conjugation_shadow(p, q, cfg):
    """
    E_C⊗F_C on the outgoing state equals q^{H_C}E_C⊗q^{-H_C}F_C on the ingoing one
    """
    p_out, q_out = scatter(p, q, cfg)
    before_p, before_q = k_xi_eigenvalues(p, cfg), k_xi_eigenvalues(q, cfg)
    after_p, after_q = k_xi_eigenvalues(p_out, cfg), k_xi_eigenvalues(q_out, cfg)
    lhs = after_p['E_C'] * after_q['F_C']
    rhs = before_p['q^H_C'] * before_p['E_C'] * before_q['F_C'] / before_q['q^H_C']
    return _law_result("momentum_conjugation:numeric", _relative(lhs, rhs), cfg.tolerance)


def random_momenta(rng, samples, scale=0.5):
    """
    Seeded random complex momenta with components of size at most about scale
    """
    def component():
        return scale * (rng.uniform(-1, 1, samples) + 1j * rng.uniform(-1, 1, samples))
    return Momentum3(component(), component(), component())


def conservation_sweep(kappa, samples=1000, seed=7, tolerance=1e-12, branch=0):
    """
    Conservation laws on seeded random pairs, skipping samples within SINGULAR_R of r = 0
    """
    cfg = ScatterConfig(kappa, branch, tolerance)
    rng = np.random.default_rng(seed)
    p, q = random_momenta(rng, samples), random_momenta(rng, samples)
    keep = np.abs(r_parameter(p, q, cfg)) > SINGULAR_R
    p = Momentum3(p.p0[keep], p.p_plus[keep], p.p_minus[keep])
    q = Momentum3(q.p0[keep], q.p_plus[keep], q.p_minus[keep])
    p_out, q_out = scatter(p, q, cfg, strict=False)
    result = conservation_report(p, q, p_out, q_out, cfg)
    result.name = "conservation:kappa={}".format(kappa)
    result.data.update({"samples": int(np.sum(keep)), "excluded": int(samples - np.sum(keep)), "seed": seed})
    logger.info("conservation sweep at κ = {}: {}".format(kappa, result.status))
    return result


def classical_limit_rate(p, q, kappas=(10, 20, 40), tolerance=0.2):
    """
    The deviation of (p', q') from (p, q) falls like 1/κ: dev(κ_k)/dev(κ_k+1) within tolerance of κ_k+1/κ_k
    """
    deviations = []
    for kappa in kappas:
        p_out, q_out = scatter(p, q, ScatterConfig(kappa))
        deviations.append(max(p_out.deviation(p), q_out.deviation(q)))
    ratios = [a / b if b else None for a, b in zip(deviations, deviations[1:])]
    expected = [abs(b / a) for a, b in zip(kappas, kappas[1:])]
    passed = all(r is not None and abs(r / e - 1) <= tolerance for r, e in zip(ratios, expected))
    data = {"kappa": list(kappas), "deviation": deviations, "ratios": ratios}
    return CheckResult("classical_rate", PASS if passed else FAIL, "ratios {}".format(
        ", ".join("{:.3f}".format(r) for r in ratios if r is not None)), data=data)
