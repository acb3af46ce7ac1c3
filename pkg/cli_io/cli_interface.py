"""
CLI interface for the quiver moduli toolkit.

Reports go to stdout, diagnostics to stderr. Every toolkit error carries
its exit code: 2 for parse errors, 3 for unsupported classes, 4 when the
submodule oracle would exceed its guard, 1 otherwise.
"""

import functools
import json
import logging
import sys
from typing import Optional, Tuple

import click
from sympy import isprime

from catalog import Catalog
from cli_io.formatter import OutputFormatter
from config import config
from core.errors import QuiverModuliError
from core.module_builder import ModuleBuilder
from core.session import AnalysisSession
from core.submodules import ORACLE_PRIMES
from models.algebra import BoundQuiverAlgebra
from models.explicit_module import ExplicitModule
from serialization.algebra_serializer import AlgebraSerializer
from serialization.module_serializer import ModuleSerializer
from visualization.graph_builder import GraphBuilder

logger = logging.getLogger(__name__)

LOG_LEVELS = ['debug', 'info', 'warning', 'error']
FORMATS = click.Choice(['text', 'json'])

formatter = OutputFormatter()


def parse_int_list(ctx, param, value: Optional[str]) -> Optional[Tuple[int, ...]]:
    """Click callback for comma-separated integers in declared vertex order."""
    if value is None:
        return None
    try:
        values = tuple(int(token) for token in value.split(",") if token.strip() != "")
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got '{value}'")
    if not values:
        raise click.BadParameter("at least one entry is required")
    if param.name == 'dim' and any(v < 0 for v in values):
        raise click.BadParameter(f"dimension vector entries must be non-negative, got '{value}'")
    return values


def parse_prime(ctx, param, value: Optional[int]) -> Optional[int]:
    """Click callback rejecting moduli that are not prime."""
    if value is not None and not isprime(value):
        raise click.BadParameter(f"{value} is not a prime")
    return value


def handle_errors(command):
    """Map toolkit errors to their exit codes with a one-line diagnostic."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except QuiverModuliError as e:
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            sys.exit(e.exit_code)
        except FileNotFoundError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)
    return wrapper


def check_length(algebra: BoundQuiverAlgebra, values: Tuple[int, ...], option: str):
    if len(values) != len(algebra.vertices):
        raise click.UsageError(
            f"{option} needs {len(algebra.vertices)} entries (vertices {','.join(algebra.vertices)}), "
            f"got {len(values)}"
        )


def emit_json(data) -> None:
    click.echo(json.dumps(data, indent=2))


@click.group()
@click.option('--log-level', type=click.Choice(LOG_LEVELS), default=None,
              help='Diagnostics level on stderr (default from LOG_LEVEL)')
@click.version_option("1.0.0", prog_name="quiver-moduli")
def cli(log_level: Optional[str]):
    """Moduli spaces of modules over acyclic quadratic monomial algebras."""
    level = (log_level or config.LOG_LEVEL).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


# ============================================================================
# VALIDATE / COMPONENTS / MODULI
# ============================================================================

@cli.command()
@click.argument('file')
@click.option('--format', 'output_format', type=FORMATS, default='text', show_default=True)
@handle_errors
def validate(file: str, output_format: str):
    """Classify FILE (a path or catalog name) and print its certificates."""
    session = AnalysisSession()
    algebra = session.open(file)
    if output_format == 'json':
        click.echo(session.reports.to_json(session.reports.validation_report(algebra)))
    else:
        click.echo(formatter.format_class_report(algebra))


@cli.command()
@click.argument('file')
@click.option('-d', '--dim', required=True, callback=parse_int_list,
              help='Dimension vector, comma-separated in declared vertex order')
@click.option('--format', 'output_format', type=FORMATS, default='text', show_default=True)
@handle_errors
def components(file: str, dim: Tuple[int, ...], output_format: str):
    """List the irreducible components of mod(A, d)."""
    session = AnalysisSession()
    algebra = session.open(file)
    check_length(algebra, dim, '--dim')
    d = session.dimension_vector(dim)
    found = session.components(dim)
    if output_format == 'json':
        click.echo(session.reports.to_json(session.reports.components_report(algebra, d, found)))
    else:
        click.echo(formatter.format_components(d, found))


@cli.command()
@click.argument('file')
@click.option('-d', '--dim', required=True, callback=parse_int_list,
              help='Dimension vector, comma-separated in declared vertex order')
@click.option('-t', '--theta', required=True, callback=parse_int_list,
              help='Weight, comma-separated in declared vertex order')
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Random seed (default 0)')
@click.option('--trials', type=click.IntRange(min=1), default=None, help='Generic samples per component')
@click.option('--prime', type=int, default=None, callback=parse_prime,
              help='Sampling prime (default 10007)')
@click.option('--oracle-prime', type=click.Choice([str(p) for p in ORACLE_PRIMES]), default=None,
              help='Prime for exact submodule checks')
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Threads for per-component work')
@click.option('--format', 'output_format', type=FORMATS, default='text', show_default=True)
@handle_errors
def moduli(file: str, dim: Tuple[int, ...], theta: Tuple[int, ...], seed: Optional[int],
           trials: Optional[int], prime: Optional[int], oracle_prime: Optional[str],
           workers: Optional[int], output_format: str):
    """Moduli shape of every component of mod(A, d) for the weight θ."""
    session = AnalysisSession(sampling_prime=prime,
                              oracle_prime=int(oracle_prime) if oracle_prime else None,
                              workers=workers)
    algebra = session.open(file)
    check_length(algebra, dim, '--dim')
    check_length(algebra, theta, '--theta')
    result = session.moduli(dim, theta, seed=seed, trials=trials)
    if output_format == 'json':
        click.echo(session.reports.to_json(session.report(result)))
    else:
        click.echo(formatter.format_moduli(result))


# ============================================================================
# ORACLE
# ============================================================================

@cli.group()
def oracle():
    """Exact submodule and stability checks on a single small module."""


def oracle_options(command):
    command = click.option('--prime', type=int, default=None, callback=parse_prime,
                           help='Field for --string modules (default: oracle prime)')(command)
    command = click.option('--start', default=None, help='Start vertex of --string')(command)
    command = click.option('--string', 'walk', default=None,
                           help="String walk, e.g. 'a,-b' (-x is an inverse letter)")(command)
    command = click.option('--module', 'module_path', type=click.Path(dir_okay=False), default=None,
                           help='Module document (prime, dims, matrices)')(command)
    return click.argument('file')(command)


def load_module(session: AnalysisSession, algebra: BoundQuiverAlgebra, module_path: Optional[str],
                walk: Optional[str], start: Optional[str], prime: Optional[int]) -> ExplicitModule:
    if (module_path is None) == (walk is None):
        raise click.UsageError("give exactly one of --module and --string")
    if module_path is not None:
        return ModuleSerializer().load_from_file(algebra, module_path)
    if start is None:
        raise click.UsageError("--string needs --start")
    builder = ModuleBuilder()
    p = session.oracle_prime if prime is None else prime
    return builder.string_module(algebra, start, builder.parse_walk(walk), p)


@oracle.command()
@oracle_options
@handle_errors
def submodules(file, module_path, walk, start, prime):
    """All submodule dimension vectors (exhaustive)."""
    session = AnalysisSession()
    algebra = session.open(file)
    module = load_module(session, algebra, module_path, walk, start, prime)
    click.echo(formatter.format_dimension_vectors(session.oracle.dimension_vectors(module)))


@oracle.command()
@oracle_options
@handle_errors
def fast(file, module_path, walk, start, prime):
    """Coordinate submodule dimension vectors of a string or band module."""
    session = AnalysisSession()
    algebra = session.open(file)
    module = load_module(session, algebra, module_path, walk, start, prime)
    click.echo(formatter.format_dimension_vectors(session.oracle.coordinate_dimension_vectors(module)))


@oracle.command()
@oracle_options
@click.option('-t', '--theta', required=True, callback=parse_int_list, help='Weight')
@handle_errors
def stability(file, module_path, walk, start, prime, theta):
    """θ-semistability and θ-stability verdicts."""
    session = AnalysisSession()
    algebra = session.open(file)
    check_length(algebra, theta, '--theta')
    module = load_module(session, algebra, module_path, walk, start, prime)
    weight = session.weight(theta)
    click.echo(formatter.format_stability(session.stability.is_semistable(module, weight),
                                          session.stability.is_stable(module, weight)))


@oracle.command()
@oracle_options
@click.option('-t', '--theta', required=True, callback=parse_int_list, help='Weight')
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Tie-break seed for the filtration')
@handle_errors
def gr(file, module_path, walk, start, prime, theta, seed):
    """θ-stable factors of a Jordan-Hölder filtration with multiplicities."""
    session = AnalysisSession()
    algebra = session.open(file)
    check_length(algebra, theta, '--theta')
    module = load_module(session, algebra, module_path, walk, start, prime)
    datum = session.stability.gr_theta(module, session.weight(theta), seed=seed)
    click.echo(formatter.format_polystable(datum))


# ============================================================================
# CATALOG
# ============================================================================

@cli.group()
def catalog():
    """Bundled algebras."""


@catalog.command('list')
@click.option('--format', 'output_format', type=FORMATS, default='text', show_default=True)
@handle_errors
def catalog_list(output_format: str):
    """List catalog entries."""
    entries = Catalog()
    summaries = [entries.summary(name) for name in entries.names()]
    if output_format == 'json':
        emit_json(summaries)
    else:
        click.echo(formatter.format_catalog_list(summaries))


@catalog.command('show')
@click.argument('name')
@click.option('--format', 'output_format', type=click.Choice(['text', 'json', 'dot']),
              default='text', show_default=True)
@handle_errors
def catalog_show(name: str, output_format: str):
    """Print a catalog entry."""
    algebra = Catalog().load(name)
    if output_format == 'json':
        click.echo(AlgebraSerializer().to_json(algebra))
    elif output_format == 'dot':
        click.echo(GraphBuilder().to_dot(algebra))
    else:
        click.echo(formatter.format_algebra(algebra))
