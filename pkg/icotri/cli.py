"""
Command-line front end.

Exit codes: 0 all checks pass, 1 a check or move failed, 2 usage error
(bad arguments, unknown claim or catalog name, malformed input), 3
internal error.
"""

import functools
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Optional, Tuple

import click

from . import __version__
from .catalog import CATALOG_NAMES, build
from .claims import REGISTRY, run
from .complex_core import SimplicialComplex, format_simplex
from .config import REPORT_FORMATS, VerifierConfig
from .homology import homology
from .moves_engine import BUILTIN_SCRIPTS, builtin_script, load_script, replay_script
from .product_subdivision import search_equivariant_pure_subdivisions, verify_subdivision
from .utils import CatalogError, ComplexConstructionError, ComplexFormatError, IcotriError, UnknownClaimError

logger = logging.getLogger(__name__)

EXIT_FAIL = 1
EXIT_INTERNAL = 3


def _handle_errors(fn: Callable) -> Callable:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (UnknownClaimError, CatalogError, ComplexFormatError, ComplexConstructionError) as e:
            raise click.UsageError(str(e))
        except IcotriError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_FAIL)
        except click.ClickException:
            raise
        except Exception as e:
            logger.exception("internal error")
            click.echo(f"internal error: {e}", err=True)
            sys.exit(EXIT_INTERNAL)
    return wrapper


def _load_complex(ref: str) -> SimplicialComplex:
    """A catalog name or a path to a complex JSON file."""
    if ref in CATALOG_NAMES:
        return build(ref).complex
    path = Path(ref)
    if not path.exists():
        raise CatalogError(f"'{ref}' is neither a catalog entry nor a file", {"known": list(CATALOG_NAMES)})
    return SimplicialComplex.from_json(path.read_text(), str(path))


def _describe(k: SimplicialComplex, with_homology: bool = True) -> None:
    click.echo(f"f-vector: {k.f_vector()}")
    click.echo(f"facets: {len(k.facets)}")
    if with_homology:
        click.echo(f"homology: {homology(k)}")


@click.group()
@click.version_option(__version__, prog_name="icotri")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
def cli(verbose: bool):
    """Build, transform and verify the small triangulated 4-manifolds."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


# -- verify ------------------------------------------------------------------------

@cli.group()
def verify():
    """Run the claim registry."""


@verify.command("list")
def verify_list():
    """List the claim ids."""
    for entry in REGISTRY.values():
        click.echo(f"{entry.claim_id:<20} {entry.title}")


@verify.command("run")
@click.argument("ids", nargs=-1)
@click.option("--format", "output_format", type=click.Choice(REPORT_FORMATS), default=None,
              help="Report format")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes")
@click.option("--seed", type=int, default=None, help="Flip-reduction seed")
@click.option("--timings", is_flag=True, default=False, help="Include elapsed seconds")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="YAML configuration file")
@_handle_errors
def verify_run(ids: Tuple[str, ...], output_format: Optional[str], jobs: Optional[int],
               seed: Optional[int], timings: bool, config_path: Optional[str]):
    """Run claims by id, or all of them."""
    base = VerifierConfig.from_yaml(config_path) if config_path else VerifierConfig.from_env()
    config = base.override(output_format=output_format, jobs=jobs, seed=seed, timings=timings or None)
    problems = config.validate()
    if problems:
        raise click.UsageError("; ".join(problems))
    report = run(ids, config)
    click.echo(report.render(config.output_format, config.timings), nl=False)
    sys.exit(report.exit_code)


# -- catalog ------------------------------------------------------------------------

@cli.group()
def catalog():
    """Browse the named complexes."""


@catalog.command("list")
def catalog_list():
    for name in CATALOG_NAMES:
        click.echo(name)


@catalog.command("show")
@click.argument("name")
@click.option("--recipe", default="default", help="Construction recipe (CP2_10: quotient or orbits)")
@_handle_errors
def catalog_show(name: str, recipe: str):
    """Print f-vector, facet count and the basic facets modulo the constructing group."""
    entry = build(name, recipe)
    click.echo(f"{entry.name} ({entry.provenance})")
    _describe(entry.complex, with_homology=False)
    if entry.orbit_sizes:
        click.echo(f"orbit classes: {len(entry.orbit_sizes)} {list(entry.orbit_sizes)}")
    click.echo("basic facets:")
    for f in entry.basic_facets():
        click.echo(f"  {format_simplex(f)}")


# -- complex import/export ----------------------------------------------------------------

@cli.group("complex")
def complex_group():
    """Read and write complexes as JSON."""


@complex_group.command("export")
@click.argument("name")
@click.argument("path", type=click.Path(dir_okay=False, writable=True))
@_handle_errors
def complex_export(name: str, path: str):
    k = build(name).complex
    Path(path).write_text(k.to_json(indent=2) + "\n")
    click.echo(f"wrote {name} to {path}")


@complex_group.command("import")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_handle_errors
def complex_import(path: str):
    """Parse a complex file and describe it."""
    k = SimplicialComplex.from_json(Path(path).read_text(), path)
    click.echo(k.name or Path(path).stem)
    _describe(k, with_homology=False)


# -- subdivisions -----------------------------------------------------------------------------

@cli.group()
def subdivision():
    """Subdivisions of the product cell complex S2_4 x S2_4."""


@subdivision.command("verify")
@click.argument("ref")
@_handle_errors
def subdivision_verify(ref: str):
    """Certify a catalog entry or complex file as a subdivision."""
    cert = verify_subdivision(_load_complex(ref))
    if cert.certified:
        click.echo(f"certified ({cert.cells_checked} cells)")
        return
    click.echo("not certified")
    for failure in cert.failures:
        click.echo(f"  {failure}")
    sys.exit(EXIT_FAIL)


@subdivision.command("search")
@click.option("--output", "output_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for one JSON file per result")
@_handle_errors
def subdivision_search(output_dir: Optional[str]):
    """Enumerate the τ-equivariant pure subdivisions and print them as JSON."""
    report = search_equivariant_pure_subdivisions()
    results = [k.renamed(f"subdivision_{n}") for n, k in enumerate(report.complexes, start=1)]
    if output_dir:
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for k in results:
            (out / f"{k.name}.json").write_text(k.to_json(indent=2) + "\n")
    click.echo(json.dumps({
        "forced_squares": report.forced_squares,
        "free_orbits": report.free_orbits,
        "branches": report.branches,
        "results": [k.to_dict() for k in results],
    }, indent=2))


# -- moves ------------------------------------------------------------------------------

@cli.group()
def moves():
    """Replay move scripts."""


@moves.command("apply")
@click.argument("complex_ref")
@click.argument("script")
@click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the resulting complex here")
@_handle_errors
def moves_apply(complex_ref: str, script: str, output: Optional[str]):
    """Apply SCRIPT (a JSON file or built-in name) to a catalog entry or complex file."""
    start = _load_complex(complex_ref)
    if script in BUILTIN_SCRIPTS:
        parsed = builtin_script(script)
    else:
        try:
            parsed = load_script(script)
        except OSError as e:
            raise click.UsageError(f"cannot read script '{script}': {e}")
    result = replay_script(start, parsed)
    click.echo(f"applied {result.steps_applied} steps of {parsed.name}")
    _describe(result.complex)
    if output:
        Path(output).write_text(result.complex.to_json(indent=2) + "\n")
        click.echo(f"wrote {output}")


def main():
    cli(prog_name="icotri")


if __name__ == "__main__":
    main()
