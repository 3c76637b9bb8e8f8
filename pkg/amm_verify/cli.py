# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/cli.py

"""Command-line surface.

Exit codes: 0 success / verified, 1 refuted or problems found,
2 inconclusive or resource exhaustion, 3 usage errors.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import click

from .certificate import Outcome, ProofCertificate
from .classes import count_table, enumerate_nkm, screen_counts
from .config import get_config, resolve_threads
from .errors import AmmError, CertificateError, ResourceError
from .render import (build_tree, parity_rows, pbm, table_csv, table_markdown,
                     tree_dot, tree_json)
from .stirling import nu2_stirling
from .verifier import VerifyOptions, check_certificate, verify_amm

logger = logging.getLogger("amm_verify.cli")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3

_OUTCOME_EXIT = {
    Outcome.VERIFIED: EXIT_OK,
    Outcome.REFUTED: EXIT_REFUTED,
    Outcome.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def _configure_logging(verbose: bool) -> None:
    settings = get_config().logging
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else settings.level,
        format=settings.format,
        force=True,
    )


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level.")
@click.option(
    "--threads",
    type=click.IntRange(min=1),
    default=None,
    help="Worker threads (AMM_THREADS takes precedence).",
)
@click.pass_context
def main(ctx: click.Context, verbose: bool, threads: Optional[int]) -> None:
    """Verify the AMM conjecture on 2-adic valuations of S(n, k)."""
    _configure_logging(verbose)
    ctx.obj = {"threads": resolve_threads(threads)}


@main.command()
@click.argument("k", type=click.IntRange(min=5))
@click.option("--max-ell", type=click.IntRange(min=0), default=None)
@click.option("--budget-bits", type=click.IntRange(min=1, max=48), default=None)
@click.option("--max-level", type=click.IntRange(min=1), default=None)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_obj
def verify(
    obj: dict,
    k: int,
    max_ell: Optional[int],
    budget_bits: Optional[int],
    max_level: Optional[int],
    out: Optional[Path],
) -> int:
    """Verify the conjecture for K and print the certificate as JSON."""
    options = VerifyOptions.from_config(
        max_ell=max_ell,
        budget_bits=budget_bits,
        max_level=max_level,
        threads=obj["threads"],
    )
    cert = verify_amm(k, options)
    _emit(cert.to_json() + "\n", out)
    if cert.reason and cert.outcome is not Outcome.VERIFIED:
        click.echo(cert.reason, err=True)
    return _OUTCOME_EXIT[cert.outcome]


@main.command()
@click.option("--k-min", type=click.IntRange(min=5), required=True)
@click.option("--k-max", type=click.IntRange(min=5), required=True)
@click.option("--m-max", type=click.IntRange(min=1), required=True)
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "md"]), default="csv"
)
@click.pass_obj
def table(obj: dict, k_min: int, k_max: int, m_max: int, fmt: str) -> int:
    """Print #N_{k,m} for a range of k and levels 1..M."""
    if k_max < k_min:
        raise click.BadParameter("must be >= --k-min", param_hint="--k-max")
    counts = count_table(k_min, k_max, m_max, obj["threads"])
    click.echo(
        table_csv(counts) if fmt == "csv" else table_markdown(counts), nl=False
    )
    return EXIT_OK


@main.command()
@click.argument("k", type=click.IntRange(min=5))
@click.argument("m", type=click.IntRange(min=1))
@click.pass_obj
def nkm(obj: dict, k: int, m: int) -> int:
    """List N_{k,m}, one residue per line."""
    for n in enumerate_nkm(k, m, obj["threads"]):
        click.echo(str(n))
    return EXIT_OK


@main.command()
@click.argument("n", type=click.IntRange(min=1))
@click.argument("k", type=click.IntRange(min=1))
def nu2(n: int, k: int) -> int:
    """Print the 2-adic valuation of S(N, K)."""
    if n < k:
        raise click.BadParameter("S(n, k) = 0 for n < k", param_hint="N")
    click.echo(str(nu2_stirling(n, k)))
    return EXIT_OK


@main.command()
@click.argument("k", type=click.IntRange(min=5))
@click.option("--max-level", type=click.IntRange(min=1), required=True)
@click.option(
    "--format", "fmt", type=click.Choice(["dot", "json"]), default="dot"
)
@click.pass_obj
def tree(obj: dict, k: int, max_level: int, fmt: str) -> int:
    """Export the branching tree of non-constant classes."""
    branching = build_tree(k, max_level, obj["threads"])
    click.echo(
        tree_dot(branching) if fmt == "dot" else tree_json(branching), nl=False
    )
    return EXIT_OK


@main.command()
@click.option("--rows", type=click.IntRange(min=1), required=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
def triangle(rows: int, out: Optional[Path]) -> int:
    """Write the parity triangle of S(n, k) as an ASCII PBM."""
    _emit(pbm(parity_rows(rows)), out)
    return EXIT_OK


@main.command()
@click.argument(
    "file", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@click.option("--budget-bits", type=click.IntRange(min=1, max=48), default=None)
@click.pass_obj
def check(obj: dict, file: Path, budget_bits: Optional[int]) -> int:
    """Re-validate a certificate written by `verify`."""
    try:
        cert = ProofCertificate.from_json(file.read_text(encoding="utf-8"))
    except CertificateError as exc:
        click.echo(str(exc), err=True)
        return EXIT_REFUTED

    options = VerifyOptions.from_config(
        budget_bits=budget_bits, threads=obj["threads"]
    )
    problems = check_certificate(cert, options)
    for problem in problems:
        click.echo(problem, err=True)
    if problems:
        return EXIT_REFUTED
    click.echo(f"ok k={cert.k} outcome={cert.outcome.value}")
    return EXIT_OK


@main.command()
@click.argument("k", type=click.IntRange(min=5))
@click.option("--m-max", type=click.IntRange(min=1), required=True)
def screen(k: int, m_max: int) -> int:
    """Count residues surviving the S == 0 mod 2^m screening."""
    for m, count in screen_counts(k, m_max).items():
        click.echo(f"{m},{count}")
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its process exit code."""
    args: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        result = main.main(
            args=args, prog_name="amm-verify", standalone_mode=False
        )
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except ResourceError as exc:
        click.echo(exc.reason_line(), err=True)
        return EXIT_INCONCLUSIVE
    except AmmError as exc:
        click.echo(str(exc), err=True)
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


def entrypoint() -> None:
    sys.exit(run())


__all__ = ["main", "run", "entrypoint"]
