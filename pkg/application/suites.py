from concurrent.futures import ThreadPoolExecutor
from functools import partial

import numpy as np

from application.algebra_core import check_local_confluence
from application.classical_limit import check_classical_d, check_classical_suite, check_rhat_completion
from application.contraction import ContractionMap, check_contraction, relation_ids
from application.errors import BranchAmbiguity, DegenerateParameter, SingularKinematics
from application.hopf_structures import HOPF_CHECKS, run_identities
from application.invariants import check_centrality, invariant_X, invariant_Xtilde, y_transform_check
from application.kappa_scattering import (Momentum3, check_conjugation_shadow, classical_limit_rate,
                                          conservation_report, conservation_sweep, random_momenta, scatter,
                                          sixth_law_contrast)
from application.message_logger import MessageLogger
from application.quantum_algebras import (build_k_xi_iso3, build_poincare, build_sl2_tensor, build_uq_sl2,
                                          check_poincare_dictionary)
from application.reports import FAIL, CheckResult, build_report, rmatrix_entry
from application.rmatrix import (check_hexagon, check_momentum_conjugation, check_poincare_rmatrix,
                                 check_quasi_cocommutativity, check_rmatrix_inverse, check_ybe, prelimit_rmatrix,
                                 rmat_d21e, rmat_k_xi, rmat_max_ext, rmat_poincare, rmat_uq_sl2)
from application.superalgebras import build_max_ext_sl22, build_uq_d21e
from utilities.config import config
from utilities.utils import MAX_DIMENSION, MIN_DIMENSION, parse_scalar

logger = MessageLogger('suites').get_logger()

SUPERALGEBRAS = ('d21e', 'max_ext_sl22')


def default_order(algebra_id):
    """
    Suite order from config.txt: sl2_order for U_h(sl2), superalgebra_order for the superalgebras
    """
    if algebra_id == 'uq_sl2':
        return config.getint('verify', 'sl2_order')
    if algebra_id in SUPERALGEBRAS:
        return config.getint('verify', 'superalgebra_order')
    return config.getint('verify', 'order')


def default_epsilon(algebra_id):
    if algebra_id == 'd21e':
        return parse_scalar("1/3")
    return parse_scalar(config.get('contraction', 'epsilon'))


def build_hopf(algebra_id, order, xi=0, epsilon=None, beta=-1):
    """
    Builds a built-in Hopf algebra
    :param algebra_id: one of utilities.utils.algebra_ids
    :return: HopfAlgebraDef
    """
    if algebra_id == 'uq_sl2':
        return build_uq_sl2(1, order)
    if algebra_id == 'sl2_tensor':
        return build_sl2_tensor(epsilon, xi, order, beta)
    if algebra_id == 'k_xi_iso3':
        return build_k_xi_iso3(xi, order)
    if algebra_id == 'poincare':
        return build_poincare(xi, order)
    if algebra_id == 'd21e':
        return build_uq_d21e(epsilon, order)
    if algebra_id == 'max_ext_sl22':
        return build_max_ext_sl22(xi, order)
    raise DegenerateParameter("unknown algebra {}".format(algebra_id))


RMATRIX_BUILDERS = {
    'uq_sl2': lambda hopf: rmat_uq_sl2(hopf=hopf),
    'sl2_tensor': prelimit_rmatrix,
    'k_xi_iso3': lambda hopf: rmat_k_xi(hopf=hopf),
    'poincare': lambda hopf: rmat_poincare(hopf=hopf),
    'd21e': lambda hopf: rmat_d21e(hopf.parameters['epsilon'], hopf=hopf),
    'max_ext_sl22': lambda hopf: rmat_max_ext(hopf=hopf),
}


""" Running checks """


def run_checks(checks, threads=1):
    """
    Runs independent checks in a thread pool
    :param checks: dict name -> callable returning a CheckResult or a list of them
    :param threads: worker threads
    :return: list of CheckResult sorted by name
    """
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        outcomes = list(executor.map(lambda fn: fn(), [checks[k] for k in sorted(checks)]))
    results = []
    for outcome in outcomes:
        results.extend(outcome if isinstance(outcome, list) else [outcome])
    return sorted(results, key=lambda r: r.name)


def _with_record(check, rmatrix, algebra_id, xi):
    def run():
        result = check(rmatrix)
        result.data["rmatrix"] = rmatrix_entry(result.name, algebra_id, rmatrix.order, xi, result)
        return result
    return run


def hopf_checks(hopf):
    checks = {"confluence": lambda: check_local_confluence(hopf.algebra)}
    for name, fn in HOPF_CHECKS.items():
        checks[name] = partial(fn, hopf)
    if hopf.identities:
        checks["identities"] = lambda: run_identities(hopf)
    return checks


def rmatrix_checks(rmatrix, algebra_id, xi=None, strict=False):
    checks = {
        "rmatrix_inverse": _with_record(check_rmatrix_inverse, rmatrix, algebra_id, xi),
        "quasi_cocommutativity": _with_record(check_quasi_cocommutativity, rmatrix, algebra_id, xi),
        "yang_baxter": _with_record(check_ybe, rmatrix, algebra_id, xi),
    }
    if strict:
        checks["hexagon"] = _with_record(check_hexagon, rmatrix, algebra_id, xi)
    return checks


def _kappa_checks(algebra_id, hopf, rmatrix, xi, order):
    checks = {
        "centrality:X": lambda: check_centrality(hopf, invariant_X(hopf), "centrality:X"),
        "centrality:Xtilde": lambda: check_centrality(hopf, invariant_Xtilde(hopf), "centrality:Xtilde"),
        "poincare_dictionary": lambda: check_poincare_dictionary(build_k_xi_iso3(xi, order),
                                                                 build_poincare(xi, order)),
        "poincare_dictionary:rmatrix": lambda: check_poincare_rmatrix(xi, order),
    }
    if algebra_id == 'k_xi_iso3':
        checks["y_transform"] = lambda: y_transform_check(hopf)
        checks["momentum_conjugation"] = _with_record(check_momentum_conjugation, rmatrix, algebra_id, xi)
    return checks


def verify_suite(algebra_id, order=None, xi=0, epsilon=None, strict=False, threads=1):
    """
    Full check suite of a built-in algebra: confluence, Hopf axioms, builder identities and R-matrix properties
    :return: report dict
    """
    order = default_order(algebra_id) if order is None else order
    if order < 1:
        raise DegenerateParameter("order must be at least 1, got {}".format(order))
    xi = parse_scalar(xi)
    epsilon = default_epsilon(algebra_id) if epsilon is None else parse_scalar(epsilon)
    logger.info("verify {} at order {}, ξ = {}, ε = {}".format(algebra_id, order, xi, epsilon))
    hopf = build_hopf(algebra_id, order, xi, epsilon)
    rmatrix = RMATRIX_BUILDERS[algebra_id](hopf)
    checks = hopf_checks(hopf)
    checks.update(rmatrix_checks(rmatrix, algebra_id, xi, strict))
    if algebra_id in ('k_xi_iso3', 'poincare'):
        checks.update(_kappa_checks(algebra_id, hopf, rmatrix, xi, order))
    results = run_checks(checks, threads)
    report = build_report("verify", algebra_id, order, hopf.parameters, results)
    logger.info("verify {} finished: {}".format(algebra_id, report["status"]))
    return report


def verify_definition(algebra, hopf=None, threads=1):
    """
    Suite for an algebra read from a definition file: confluence, and the Hopf axioms when a coproduct is given
    """
    if hopf is None:
        results = [check_local_confluence(algebra)]
    else:
        results = run_checks(hopf_checks(hopf), threads)
    return build_report("verify", algebra.name, algebra.order, algebra.parameters, results)


""" Scattering """


def _scatter_parameters(cfg):
    return {"kappa": str(cfg.kappa), "branch": str(cfg.branch), "tolerance": str(cfg.tolerance)}


def scatter_suite(p, q, cfg):
    """
    Outgoing momenta with the conservation table; singular or ambiguous kinematics give a failed report
    """
    try:
        p_out, q_out = scatter(p, q, cfg)
    except (SingularKinematics, BranchAmbiguity) as e:
        logger.warning("scattering refused: {}".format(e))
        result = CheckResult("conservation", FAIL, "{}: {}".format(type(e).__name__, e))
        return build_report("scatter", "kappa_poincare", None, _scatter_parameters(cfg), [result])
    conservation = conservation_report(p, q, p_out, q_out, cfg)
    results = [conservation, sixth_law_contrast(p, q, cfg), check_conjugation_shadow(p, q, cfg)]
    report = build_report("scatter", "kappa_poincare", None, _scatter_parameters(cfg), results)
    report["p_out"] = p_out.to_pairs()
    report["q_out"] = q_out.to_pairs()
    report["residuals"] = conservation.data["residuals"]
    return report


def sweep_suite(cfg, samples, seed):
    """
    Seeded conservation sweep plus the 1/κ approach to the identity map on one seeded pair
    """
    sweep = conservation_sweep(cfg.kappa, samples, seed, cfg.tolerance, cfg.branch)
    rng = np.random.default_rng(seed)
    p, q = (Momentum3(*random_momenta(rng, 1).as_array()[:, 0]) for _ in range(2))
    rate = classical_limit_rate(p, q)
    parameters = _scatter_parameters(cfg)
    parameters.update({"samples": str(samples), "seed": str(seed)})
    return build_report("scatter", "kappa_poincare", None, parameters, [sweep, rate])


""" Contraction and classical limit """


def contraction_suite(epsilon, xi=0, order=3, beta=-1, wrong_pairing=False, threads=1):
    relations = relation_ids(ContractionMap(epsilon, xi, order, beta))
    if wrong_pairing:
        relations.append("rmatrix:wrong_pairing")
    _, results = check_contraction(epsilon, xi, order, beta, relations, threads)
    parameters = {"epsilon": epsilon, "xi": xi, "beta": beta}
    return build_report("contract", "k_xi_iso3", order, parameters, results)


def classical_suite(dimension, xi=0, n=None):
    """
    CYBE, mCYBE, Casimir and coboundary identities; in three dimensions also the ξ-family and the
    cross-check with the R-matrix
    """
    if not MIN_DIMENSION <= dimension <= MAX_DIMENSION:
        raise DegenerateParameter("dimension must lie in [{}, {}], got {}".format(MIN_DIMENSION, MAX_DIMENSION,
                                                                                  dimension))
    results = []
    if dimension == 3:
        results.extend(check_classical_suite(xi))
        results.append(check_rhat_completion(xi))
    names = {r.name for r in results}
    results.extend(r for r in check_classical_d(dimension, n) if r.name not in names)
    parameters = {"dimension": dimension, "xi": xi}
    if n is not None:
        parameters["n"] = ",".join(str(x) for x in n)
    return build_report("classical", "iso({})".format(dimension), None, parameters, results)
