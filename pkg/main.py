import json

import click

from application.algebra_file import read_definition, write_definition
from application.errors import HopfContractError
from application.kappa_scattering import Momentum3, ScatterConfig
from application.message_logger import MessageLogger
from application.reports import PASS, dump_report
from application.suites import (build_hopf, classical_suite, contraction_suite, default_epsilon, default_order,
                                scatter_suite, sweep_suite, verify_definition, verify_suite)
from utilities.config import config, thread_count
from utilities.utils import algebra_ids, parse_scalar

logger = MessageLogger('main').get_logger()

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class ScalarType(click.ParamType):
    """
    Exact scalar such as 1/3, -2, 3/5+1/2i or -i
    """
    name = "scalar"

    def convert(self, value, param, ctx):
        try:
            return parse_scalar(value)
        except HopfContractError as e:
            self.fail(str(e), param, ctx)


class MomentumType(click.ParamType):
    """
    JSON list of three [re, im] pairs
    """
    name = "momentum"

    def convert(self, value, param, ctx):
        if isinstance(value, Momentum3):
            return value
        try:
            return Momentum3.from_pairs(json.loads(value))
        except (ValueError, TypeError, HopfContractError) as e:
            self.fail("{!r} is not a momentum: {}".format(value, e), param, ctx)


SCALAR = ScalarType()
MOMENTUM = MomentumType()


def _emit(report, out):
    text = dump_report(report, out)
    if not out:
        click.echo(text)
    return EXIT_PASS if report["status"] == PASS else EXIT_FAIL


def _run(ctx, command, fn):
    """
    Runs a command body and maps its outcome to the exit code
    """
    try:
        code = fn()
    except HopfContractError as e:
        logger.error("{} failed on its input: {}".format(command, e))
        click.echo("error: {}".format(e), err=True)
        ctx.exit(EXIT_USAGE)
    except Exception as e:
        logger.exception("{} stopped on an internal error".format(command))
        click.echo("internal error: {}: {}".format(type(e).__name__, e), err=True)
        ctx.exit(EXIT_FAIL)
    logger.info("{} finished with exit code {}".format(command, code))
    ctx.exit(code)


@click.group()
def cli():
    """
    Exact verification of q-deformed Hopf algebras, their contractions, R-matrices,
    classical limits and the kappa-Poincaré two-particle map
    """


@cli.command()
@click.option('--algebra', type=click.Choice(sorted(algebra_ids.values())), help='Built-in algebra to verify.')
@click.option('--rules', 'rules_file', type=click.Path(exists=True, dir_okay=False),
              help='Algebra definition file (YAML) to verify instead of a built-in algebra.')
@click.option('--order', type=int, default=None, help='Truncation order N in ħ.')
@click.option('--xi', type=SCALAR, default="0", help='Exact parameter ξ.')
@click.option('--epsilon', type=SCALAR, default=None, help='Exact parameter ε.')
@click.option('--strict/--no-strict', default=None, help='Also check the hexagon axioms.')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Write the JSON report here.')
@click.pass_context
def verify(ctx, algebra, rules_file, order, xi, epsilon, strict, out):
    """
    Run the full check suite of an algebra
    """
    if (algebra is None) == (rules_file is None):
        raise click.UsageError("give exactly one of --algebra and --rules")
    if strict is None:
        strict = config.getboolean('verify', 'strict')

    def body():
        if rules_file:
            loaded, hopf = read_definition(rules_file)
            return _emit(verify_definition(loaded, hopf, thread_count()), out)
        return _emit(verify_suite(algebra, order, xi, epsilon, strict, thread_count()), out)

    _run(ctx, "verify", body)


@cli.command()
@click.option('--p', 'p', type=MOMENTUM, default=None, help='First momentum, e.g. "[[0.1,0],[0.2,0.1],[0.3,0]]".')
@click.option('--q', 'q', type=MOMENTUM, default=None, help='Second momentum in the same format.')
@click.option('--kappa', type=SCALAR, default="2", help='Deformation scale κ, may be complex (e.g. 10i).')
@click.option('--branch', type=click.IntRange(0, 1), default=0, help='Sheet of log r.')
@click.option('--tolerance', type=float, default=None, help='Relative residual tolerance.')
@click.option('--samples', type=int, default=None, help='Sweep size when no momenta are given.')
@click.option('--seed', type=int, default=None, help='Sweep seed when no momenta are given.')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Write the JSON report here.')
@click.pass_context
def scatter(ctx, p, q, kappa, branch, tolerance, samples, seed, out):
    """
    Two-particle momentum map with its conservation table, or a seeded sweep
    """
    if (p is None) != (q is None):
        raise click.UsageError("give both --p and --q, or neither for a sweep")
    tolerance = config.getfloat('scattering', 'tolerance') if tolerance is None else tolerance
    samples = config.getint('scattering', 'samples') if samples is None else samples
    seed = config.getint('scattering', 'seed') if seed is None else seed

    def body():
        cfg = ScatterConfig(complex(kappa), branch, tolerance)
        if p is None:
            return _emit(sweep_suite(cfg, samples, seed), out)
        return _emit(scatter_suite(p, q, cfg), out)

    _run(ctx, "scatter", body)


@cli.command()
@click.option('--epsilon', type=SCALAR, default=None, help='Contraction parameter ε, halved twice.')
@click.option('--xi', type=SCALAR, default="0", help='Exact parameter ξ.')
@click.option('--beta', type=click.Choice(['-1', '1']), default=None, help='Sign β in ε~ = βε + ξε².')
@click.option('--order', type=int, default=None, help='Truncation order N in ħ.')
@click.option('--wrong-pairing', is_flag=True, help='Also test the inverse opposite second R-matrix factor.')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Write the JSON report here.')
@click.pass_context
def contract(ctx, epsilon, xi, beta, order, wrong_pairing, out):
    """
    Ratio test of the contraction residuals at ε, ε/2 and ε/4
    """
    epsilon = default_epsilon('sl2_tensor') if epsilon is None else epsilon
    beta = int(config.get('contraction', 'beta') if beta is None else beta)
    order = default_order('k_xi_iso3') if order is None else order

    def body():
        return _emit(contraction_suite(epsilon, xi, order, beta, wrong_pairing, thread_count()), out)

    _run(ctx, "contract", body)


@cli.command()
@click.option('--dimension', type=int, default=None, help='Space-time dimension d, 2 to 6.')
@click.option('--xi', type=SCALAR, default="0", help='Exact parameter ξ of the three-dimensional family.')
@click.option('--n', 'n', type=str, default=None, help='Comma separated components n^μ, default (-i, 0, ...).')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Write the JSON report here.')
@click.pass_context
def classical(ctx, dimension, xi, n, out):
    """
    Classical r-matrix identities: CYBE, mCYBE, Casimir, coboundary and the completion witness
    """
    dimension = config.getint('classical', 'dimension') if dimension is None else dimension
    try:
        components = None if n is None else [parse_scalar(x) for x in n.split(',')]
    except HopfContractError as e:
        raise click.BadParameter(str(e), param_hint='--n')

    def body():
        return _emit(classical_suite(dimension, xi, components), out)

    _run(ctx, "classical", body)


@cli.command()
@click.option('--algebra', type=click.Choice(sorted(algebra_ids.values())), required=True)
@click.option('--order', type=int, default=None, help='Truncation order N in ħ.')
@click.option('--xi', type=SCALAR, default="0", help='Exact parameter ξ.')
@click.option('--epsilon', type=SCALAR, default=None, help='Exact parameter ε.')
@click.option('--beta', type=click.Choice(['-1', '1']), default='-1')
@click.option('--out', type=click.Path(dir_okay=False), required=True, help='YAML file to write.')
@click.pass_context
def export(ctx, algebra, order, xi, epsilon, beta, out):
    """
    Write a built-in algebra in the YAML definition format
    """
    order = default_order(algebra) if order is None else order
    epsilon = default_epsilon(algebra) if epsilon is None else epsilon

    def body():
        hopf = build_hopf(algebra, order, xi, epsilon, int(beta))
        write_definition(out, hopf.algebra, hopf)
        click.echo("wrote {} (order {}) to {}".format(algebra, order, out))
        return EXIT_PASS

    _run(ctx, "export", body)


if __name__ == '__main__':
    cli()
