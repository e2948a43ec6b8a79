"""
Command-line interface for mordell_lab.

Usage:
    mordell-lab verify --ids EM,BARROW,DNP --samples 100000 --seed 1 --out report.json
    mordell-lab identities --samples 10000 --seed 1
    mordell-lab tighten --ids EM,WEM --starts 16 --iters 2000 --seed 7 --locus
    mordell-lab catalog --errata
    mordell-lab fixture

Exit status: 0 on success, 1 when a check found violations or an equality probe failed, 2 on usage or
configuration errors. Flags override the values of a --config JSON file, which override the defaults.
"""
import logging
import sys

import click

from . import __version__
from .catalog import parse_ids
from .commands import VerifyCommand, IdentitiesCommand, TightenCommand, CatalogCommand, FixtureCommand
from .conf import load_config_file
from .exceptions import MordellLabError, ImproperlyConfigured, CatalogError


__all__ = ["cli", "parse_and_dispatch", "main"]


logger = logging.getLogger(__name__)

CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])
SHAPES = ["uniform", "near-degenerate", "near-equilateral"]
FORMATS = ["json", "csv", "both"]


def configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def validate_ids(ctx, param, value):
    """Reject unknown identifiers while parsing so that they are usage errors."""
    if value is None:
        return None
    try:
        return ",".join(str(ident) for ident in parse_ids(value))
    except CatalogError as err:
        raise click.BadParameter(str(err), ctx=ctx, param=param) from err


def _apply(func, options):
    for option in reversed(options):
        func = option(func)
    return func


def sampler_options(func):
    return _apply(func, [
        click.option("--samples", type=click.IntRange(min=1), default=None, help="Number of sampled configurations."),
        click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None, help="Master seed."),
        click.option("--shape", type=click.Choice(SHAPES), default=None, help="Triangle shape distribution."),
        click.option("--weight-std", type=float, default=None, help="Std of the free log-weights (at most 5)."),
        click.option("--eps-interior", type=float, default=None, help="Barycentric interior margin."),
        click.option("--locus-vertex", type=click.Choice(["A", "B", "C"], case_sensitive=False), default=None,
                     help="Draw P on the line through this vertex and the circumcenter."),
    ])


def output_options(func):
    return _apply(func, [
        click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
                     help="Report path (stdout when omitted)."),
        click.option("--format", "format", type=click.Choice(FORMATS), default=None, help="Report format."),
        click.option("--threads", type=click.IntRange(min=0), default=None, help="Worker processes, 0 = one per CPU."),
    ])


@click.group(context_settings=CONTEXT_SETTINGS)
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output (stderr).")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON file with option values (same names as the flags).")
@click.version_option(version=__version__, prog_name="mordell-lab")
@click.pass_context
def cli(ctx, verbose, config_file):
    """Verification and tightness lab for the weighted Erdos-Mordell inequality family."""
    configure_logging(verbose)
    ctx.obj = load_config_file(config_file)


@cli.command()
@click.option("--ids", callback=validate_ids, default=None, help="Comma separated ids, or 'all'.")
@sampler_options
@click.option("--tol", type=float, default=None, help="rel_slack below -tol is a violation.")
@click.option("--bridges/--no-bridges", default=None, help="Also check the intermediate bounds of the proof.")
@output_options
@click.pass_obj
def verify(file_options, **flags):
    """Evaluate the catalog on seeded random configurations."""
    return VerifyCommand(flags, file_options)()


@cli.command()
@sampler_options
@output_options
@click.pass_obj
def identities(file_options, **flags):
    """Measure the disagreement of every exact identity."""
    return IdentitiesCommand(flags, file_options)()


@cli.command()
@click.option("--ids", callback=validate_ids, default=None, help="Comma separated ids, or 'all'.")
@click.option("--starts", type=click.IntRange(min=0), default=None, help="Random starts besides the canonical one.")
@click.option("--iters", type=click.IntRange(min=1), default=None, help="Nelder-Mead iterations per start.")
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None, help="Master seed.")
@click.option("--floor", type=float, default=None, help="Minimum triangle angle of the search (radians).")
@click.option("--eps-interior", type=float, default=None, help="Barycentric interior margin.")
@click.option("--tol", type=float, default=None, help="min_slack below -tol fails the run.")
@click.option("--locus/--no-locus", default=None, help="Also probe each equality configuration.")
@click.option("--radius", type=float, default=None, help="Perturbation size of the equality probes.")
@click.option("--probes", type=click.IntRange(min=0), default=None, help="Number of equality probes.")
@click.option("--trace/--no-trace", default=None, help="Include the per-iteration best slack of every start.")
@output_options
@click.pass_obj
def tighten(file_options, **flags):
    """Minimize slack over shape, point and weights to locate equality cases."""
    return TightenCommand(flags, file_options)()


@cli.command()
@click.option("--errata", is_flag=True, help="Also list the corrections applied to the source statements.")
@click.option("--json", "json", is_flag=True, help="Print JSON instead of a table.")
def catalog(**flags):
    """List the inequality identifiers."""
    return CatalogCommand(flags)()


@cli.command()
@click.option("--json", "json", is_flag=True, help="Print JSON instead of tables.")
def fixture(**flags):
    """Print the reference configurations with every computed quantity."""
    return FixtureCommand(flags)()


def parse_and_dispatch(argv=None):
    """Run the command line and return its exit status instead of exiting."""
    try:
        status = cli.main(args=argv, prog_name="mordell-lab", standalone_mode=False)
    except click.ClickException as err:
        err.show()
        return err.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except (ImproperlyConfigured, CatalogError) as err:
        click.echo("Error: %s" % err, err=True)
        return 2
    except MordellLabError as err:
        logger.debug("Command failed", exc_info=True)
        click.echo("Error: %s" % err, err=True)
        return 1
    return status if isinstance(status, int) else 0


def main():
    sys.exit(parse_and_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
