"""Command-line front end: ``lanke <command> [options]``.

Exit status is 0 on success, 1 on usage or configuration errors, and 2 when
a mathematical check fails.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__, engine, garnir
from .brackets import format_bracket
from .characters import decompose
from .combinatorics import catalan, format_partition, hook_dim, parse_partition
from .config import FORMATS, RunConfig, load_config
from .conjecture import conjecture_check
from .errors import LankeError, TheoremViolation
from .linalg import exact
from .linalg.modular import available_backends
from .report import render
from .selftest import FAULTS, LEVELS, run_selftest

log = logging.getLogger("lanke")

EXIT_OK, EXIT_USAGE, EXIT_THEOREM = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad input; that code is reserved here."""

    def error(self, message: str):
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _dec_json(dec) -> dict:
    return {format_partition(lam): mult for lam, mult in dec.items()}


def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--config", metavar="FILE", help="key = value file with RunConfig fields")
    g.add_argument("--format", choices=FORMATS, help="report format (default json)")
    g.add_argument("--output", "-o", metavar="PATH", help="write the report here instead of stdout")
    g.add_argument("--primes", metavar="P,Q", help="comma-separated primes for modular rank")
    g.add_argument("--threads", type=int, help="worker threads (env LANKE_THREADS)")
    g.add_argument("--max-basis", type=int, help="largest bracket basis to build")
    g.add_argument("--max-relation-rows", type=int, help="largest relation matrix to build")
    g.add_argument("--max-char-basis", type=int, help="largest basis for the character path")
    g.add_argument("--backend", choices=("python", "compiled"), help="modular rank kernel")
    g.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="lanke", description="Multilinear components of free LAnKes and related checks.")
    parser.add_argument("--version", action="version", version=f"lanke {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("dim", parents=[common], help="dimension of rho_{n,k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("auto", "exact", "modular"), default="auto")
    p.add_argument("--exact-verify", action="store_true", default=None, help="confirm a modular rank over Q")
    p.add_argument("--export-relations", metavar="PATH", help="write the relation matrix as triplets")
    p.add_argument("--decompose", action="store_true", help="also decompose the character (small cases)")

    p = sub.add_parser("char", parents=[common], help="character and decomposition of rho_{n,k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("phi-spectrum", parents=[common], help="eigenvalue multiplicities of phi (k = 3)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--phi", choices=("closed_form", "definitional"), default="closed_form")

    p = sub.add_parser("standard-basis", parents=[common], help="standard brackets of rho_{n,3}")
    p.add_argument("--n", type=int, required=True)

    g = sub.add_parser("garnir", help="Garnir presentations of Specht modules")
    gsub = g.add_subparsers(dest="action", metavar="action", parser_class=_Parser)
    gsub.required = True
    p = gsub.add_parser("check", parents=[common], help="quotient dimension against f^lambda")
    p.add_argument("--shape", required=True, help='partition such as "3,2,1"')
    p.add_argument("--mode", choices=garnir.MODES, default="full")
    p.add_argument("--standard-only", action="store_true", help="use only standard tableaux as generators")

    c = sub.add_parser("conjecture", help="row-adding prediction for rho_{n,k}")
    csub = c.add_subparsers(dest="action", metavar="action", parser_class=_Parser)
    csub.required = True
    p = csub.add_parser("check", parents=[common], help="compare engine and prediction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dims-only", action="store_true", help="skip the character comparison")
    p.add_argument("--method", choices=("auto", "exact", "modular"), default="auto")

    p = sub.add_parser("selftest", parents=[common], help="run the invariant checks")
    p.add_argument("--level", choices=LEVELS, default="quick")
    p.add_argument("--inject-fault", choices=FAULTS, action="append", default=[], help=argparse.SUPPRESS)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    primes = None
    if args.primes:
        try:
            primes = tuple(int(x) for x in args.primes.replace(",", " ").split())
        except ValueError as exc:
            raise UsageError(f"bad --primes value {args.primes!r}") from exc
    return load_config(
        args.config,
        format=args.format,
        output=args.output,
        primes=primes,
        threads=args.threads,
        max_basis=args.max_basis,
        max_relation_rows=args.max_relation_rows,
        max_char_basis=args.max_char_basis,
        exact_verify=getattr(args, "exact_verify", None),
    )


def _check_nk(n: int, k: int) -> None:
    if n < 2 or k < 2:
        raise UsageError(f"need n >= 2 and k >= 2, got n={n}, k={k}")


# -- commands ----------------------------------------------------------------------


def cmd_dim(args, cfg: RunConfig) -> dict:
    _check_nk(args.n, args.k)
    rep = engine.compute_dim(
        args.n,
        args.k,
        method=args.method,
        primes=cfg.primes,
        exact_verify=cfg.exact_verify,
        max_basis=cfg.max_basis,
        max_rows=cfg.max_relation_rows,
        backend=args.backend,
        threads=cfg.threads,
    )
    if args.export_relations:
        rels = engine.jacobi_relations(args.n, args.k, cfg.max_basis, cfg.max_relation_rows)
        with open(args.export_relations, "w") as fh:
            rels.matrix.dump(fh)
    dec = None
    if args.decompose:
        dec = _dec_json(decompose(engine.character_rho(args.n, args.k, cfg.max_char_basis)))
    out = rep.to_json()
    out["decomposition"] = dec
    return out


def cmd_char(args, cfg: RunConfig) -> dict:
    _check_nk(args.n, args.k)
    chi = engine.character_rho(args.n, args.k, cfg.max_char_basis)
    dec = decompose(chi)
    return {
        "n": args.n,
        "k": args.k,
        "m": chi.m,
        "basis_size": engine.build_vspace(args.n, args.k, cfg.max_basis).dim,
        "dim": int(chi.degree),
        "character": {e["cycle_type"]: e["value"] for e in chi.to_json()["values"]},
        "decomposition": _dec_json(dec),
    }


def cmd_phi_spectrum(args, cfg: RunConfig) -> dict:
    if args.n < 2:
        raise UsageError(f"need n >= 2, got {args.n}")
    spec = engine.phi_spectrum(args.n, engine.phi_matrix(args.n, args.phi))
    return {
        "n": args.n,
        "spectrum": {str(w): mult for w, mult in spec.items()},
        "shapes": {str(engine.w(args.n, i)): format_partition(engine.constituent_shape(args.n, i)) for i in range(args.n)},
        "kernel_dim": spec.get(0, 0),
        "catalan": catalan(args.n),
    }


def cmd_standard_basis(args, cfg: RunConfig) -> dict:
    if args.n < 2:
        raise UsageError(f"need n >= 2, got {args.n}")
    out = engine.standard_brackets(args.n, check=True)
    return {
        "n": args.n,
        "count": len(out),
        "catalan": catalan(args.n),
        "independent": True,
        "brackets": [format_bracket(b) for b in out],
    }


def cmd_garnir(args, cfg: RunConfig) -> dict:
    try:
        shape = parse_partition(args.shape)
    except LankeError as exc:
        raise UsageError(str(exc)) from exc
    space = garnir.tabloid_space(shape)
    G = garnir.garnir_matrix(shape, args.mode, args.standard_only)
    qdim = space.dim - exact.rank(G)
    f = hook_dim(shape)
    staircase = garnir.corollary_applies(shape)
    report = {
        "shape": format_partition(shape),
        "mode": args.mode,
        "standard_only": args.standard_only,
        "tabloid_dim": space.dim,
        "generators": G.n_rows,
        "quotient_dim": qdim,
        "f_lambda": f,
        "staircase": staircase,
        "agrees": qdim == f,
    }
    # full and reduced are theorems for every shape, corollary only for staircases;
    # standard-only generators are an experiment and may legitimately fall short
    proven = not args.standard_only and (args.mode != "corollary" or staircase)
    if proven and qdim != f:
        raise TheoremViolation(f"{args.mode} Garnir quotient of {report['shape']} has dim {qdim}, expected {f}")
    return report


def cmd_conjecture(args, cfg: RunConfig) -> dict:
    _check_nk(args.n, args.k)
    rep = conjecture_check(
        args.n,
        args.k,
        dims_only=args.dims_only,
        max_char_basis=cfg.max_char_basis,
        method=args.method,
        primes=cfg.primes,
        exact_verify=cfg.exact_verify,
        max_basis=cfg.max_basis,
        max_rows=cfg.max_relation_rows,
        backend=args.backend,
        threads=cfg.threads,
    )
    return rep.to_json()


COMMANDS = {
    "dim": cmd_dim,
    "char": cmd_char,
    "phi-spectrum": cmd_phi_spectrum,
    "standard-basis": cmd_standard_basis,
    "garnir": cmd_garnir,
    "conjecture": cmd_conjecture,
}


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _selftest(args, cfg: RunConfig, fmt: str) -> int:
    stream = sys.stdout if fmt == "text" and not cfg.output else None
    results = run_selftest(args.level, args.inject_fault, stream=stream)
    ok = all(r.passed for r in results)
    if stream is None:
        report = {
            "command": "selftest",
            "level": args.level,
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
            "passed": ok,
            "config": cfg.to_json(),
        }
        if fmt == "text":
            _emit("\n".join(r.line() for r in results) + "\n", cfg)
        else:
            _emit(render(report, fmt), cfg)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"selftest failed: {', '.join(failed)}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_THEOREM


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.WARNING - 10 * min(args.verbose, 2),
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        if args.backend and args.backend not in available_backends():
            raise UsageError(f"backend {args.backend!r} is not available (built: {available_backends()})")
        cfg = _config(args)
        if args.command == "selftest":
            # selftest reads best as its pass/fail lines unless a format is asked for
            return _selftest(args, cfg, args.format or "text")
        report = {"command": args.command, **COMMANDS[args.command](args, cfg), "config": cfg.to_json()}
        _emit(render(report, cfg.format), cfg)
        return EXIT_OK
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as exc:
        print(f"theorem check failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except LankeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
