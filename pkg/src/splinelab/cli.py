"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 invalid complex, 4 a verification
check failed (the report is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import builders
from .bounds import bound_report
from .colonlab import (ColonSpec, InitialIdealMismatch, Partition, colon_case, colon_gen_degrees, colon_hf,
                       colon_sweep, initial_ideal, lex_segment, schur_check)
from .complexes import ComplexValidationError, SmoothnessAssignment, to_problem, validate
from .fileformat import FormatError, dump_complex, load_complex
from .hilbertfit import FitVerificationError, bound_check, fit_hp, postulation
from .splinecore import EXACT, ArithmeticMode, generator_degrees, hf, hf_ls, hf_ls1_euler

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_VERIFY = 0, 2, 3, 4
DMAX_GUARD = 64

BUILTINS = ("q", "delta", "octahedron", "hemisphere", "schlegel", "ngon", "reflection", "random_fan", "random_star")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    builtin: str | None = None
    r: int | None = None
    s: int | None = None
    n: int = 6
    dmin: int = 0
    dmax: int | None = None
    d0: int | None = None
    exact: bool = False
    seed: int = 0
    format: str = "human"
    out: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def mode(self) -> ArithmeticMode:
        return EXACT if self.exact else ArithmeticMode.from_seed(self.seed)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------

def builtin_complex(name: str, r: int | None, s: int | None, n: int, seed: int):
    r0 = 0 if r is None else r
    s0 = -1 if s is None else s
    if name == "q":
        return builders.build_q_example(), SmoothnessAssignment(r0, s0)
    if name == "delta":
        return builders.build_delta_example()
    if name == "octahedron":
        return builders.build_octahedron(), SmoothnessAssignment(r0, s0)
    if name == "hemisphere":
        return builders.build_hemisphere(), SmoothnessAssignment(r0, s0)
    if name == "schlegel":
        return builders.build_schlegel_cube(), SmoothnessAssignment(r0, s0)
    if name == "ngon":
        return builders.build_ngon_ring(n), SmoothnessAssignment(r0, s0)
    if name == "reflection":
        return builders.build_reflection(), SmoothnessAssignment(r0, s0)
    if name == "random_fan":
        return builders.build_random_fan(seed)
    if name == "random_star":
        return builders.build_random_star(seed), SmoothnessAssignment(r0, s0)
    raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


def load_input(cfg: RunConfig):
    if bool(cfg.input) == bool(cfg.builtin):
        raise UsageError("give exactly one of --input or --builtin")
    if cfg.builtin:
        return builtin_complex(cfg.builtin, cfg.r, cfg.s, cfg.n, cfg.seed)
    cx, alpha = load_complex(cfg.input)
    if cfg.r is not None or cfg.s is not None:
        alpha = SmoothnessAssignment(alpha.interior if cfg.r is None else cfg.r,
                                     alpha.boundary if cfg.s is None else cfg.s, alpha.overrides)
    return cx, alpha


def load_problem(cfg: RunConfig):
    cx, alpha = load_input(cfg)
    return to_problem(cx, alpha, cfg.builtin or Path(cfg.input).stem)


def degree_range(cfg: RunConfig, default_max: int) -> range:
    dmax = default_max if cfg.dmax is None else cfg.dmax
    if dmax > DMAX_GUARD:
        raise UsageError(f"--dmax is capped at {DMAX_GUARD}")
    if cfg.dmin < 0 or dmax < cfg.dmin:
        raise UsageError("need 0 <= dmin <= dmax")
    return range(cfg.dmin, dmax + 1)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def render(payload, fmt: str) -> str:
    """Render a dict report or a list-of-dicts table."""
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    rows = payload if isinstance(payload, list) else None
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows is not None:
            if rows:
                w.writerow(rows[0].keys())
                for row in rows:
                    w.writerow(row.values())
        else:
            w.writerow(["key", "value"])
            for k, v in payload.items():
                w.writerow([k, json.dumps(v) if isinstance(v, (dict, list)) else v])
        return buf.getvalue()
    if rows is not None:
        if not rows:
            return ""
        keys = list(rows[0].keys())
        widths = [max(len(str(k)), *(len(str(r[k])) for r in rows)) for k in keys]
        lines = ["  ".join(str(k).rjust(w) for k, w in zip(keys, widths))]
        lines += ["  ".join(str(r[k]).rjust(w) for k, w in zip(keys, widths)) for r in rows]
        return "\n".join(lines) + "\n"
    return "".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}\n" for k, v in payload.items())


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(cfg):
    cx, alpha = load_input(cfg)
    rep = validate(cx)
    return rep.as_dict(), (EXIT_OK if rep.ok else EXIT_INVALID)


def cmd_hf(cfg):
    p = load_problem(cfg)
    return [{"d": d, "hf": hf(p, d, cfg.mode)} for d in degree_range(cfg, 10)], EXIT_OK


def cmd_hp(cfg):
    p = load_problem(cfg)
    poly = fit_hp(p, cfg.d0, cfg.mode)
    return {"coefficients": [str(c) for c in poly.coefficients], "polynomial": str(poly),
            "fit_window": list(poly.fit_window)}, EXIT_OK


def cmd_postulation(cfg):
    p = load_problem(cfg)
    res = postulation(p, cfg.mode)
    chk = bound_check(p, cfg.mode, res)
    out = res.as_dict()
    out["bounds"] = chk.as_dict()
    return out, (EXIT_OK if chk.ok else EXIT_VERIFY)


def cmd_bounds(cfg):
    p = load_problem(cfg)
    out = bound_report(p).as_dict()
    out["bound"] = f"HF=HP for d >= {out['hf_equals_hp_from']}"
    return out, EXIT_OK


def cmd_gens(cfg):
    p = load_problem(cfg)
    dmax = degree_range(cfg, 10).stop - 1
    counts = generator_degrees(p, dmax, cfg.mode)
    return [{"degree": d, "count": c} for d, c in sorted(counts.items())], EXIT_OK


def cmd_ls(cfg):
    p = load_problem(cfg)
    rows = []
    ok = True
    for d in degree_range(cfg, 8):
        ls1 = hf_ls(p, 1, d, cfg.mode)
        eul = hf_ls1_euler(p, d, cfg.mode)
        ok &= ls1 == eul
        rows.append({"d": d, "hf": hf(p, d, cfg.mode), "ls0": hf_ls(p, 0, d, cfg.mode), "ls1": ls1, "ls1_euler": eul})
    return rows, (EXIT_OK if ok else EXIT_VERIFY)


def cmd_colon(cfg):
    ex = cfg.extra
    if ex.get("colon_cmd") == "sweep":
        rows = colon_sweep(ex["pmax"], ex["qmax"], ex["rmax"])
        ok = all(r.hf_match and r.initial_match for r in rows)
        return [r.__dict__.copy() for r in rows], (EXIT_OK if ok else EXIT_VERIFY)
    c = ColonSpec(ex["p"], ex["q"], ex["r"])
    c.require_proper()
    a, b = colon_gen_degrees(c)
    dmax = a + b + 2 if cfg.dmax is None else cfg.dmax
    try:
        init = initial_ideal(c, max(dmax, a + b))
        status = EXIT_OK
    except InitialIdealMismatch:
        init = initial_ideal(c, max(dmax, a + b), check=False)
        status = EXIT_VERIFY
    return {"p": c.p, "q": c.q, "r": c.r, "case": colon_case(c), "a": a, "b": b,
            "hf": {str(d): colon_hf(c, d) for d in range(dmax + 1)},
            "initial_ideal": [list(m) for m in init], "lex_segment": [list(m) for m in lex_segment(a, b)],
            "initial_match": status == EXIT_OK}, status


def _partitions(n: int):
    from sympy.utilities.iterables import partitions

    for part in partitions(n):
        yield tuple(sorted((k for k, m in part.items() for _ in range(m)), reverse=True))


def cmd_schur(cfg):
    ex = cfg.extra
    if ex.get("mu"):
        mu = Partition(tuple(int(x) for x in ex["mu"].split(",")))
        rs = [cfg.r if cfg.r is not None else mu.parts[0]]
        cases = [(mu, r) for r in rs]
    else:
        cases = [(Partition(parts), r) for n in range(1, ex["max_size"] + 1) for parts in _partitions(n)
                 for r in range(parts[0], ex["rmax"] + 1)]
    rows = []
    ok = True
    for mu, r in cases:
        chk = schur_check(mu, r)
        good = chk.equal and chk.det != 0
        ok &= good
        rows.append({"mu": ",".join(map(str, mu.parts)), "r": r, "det": chk.det, "hook_value": chk.hook_value,
                     "equal": good})
    return rows, (EXIT_OK if ok else EXIT_VERIFY)


def cmd_builtin(cfg):
    name = cfg.extra["name"]
    cx, alpha = builtin_complex(name, cfg.r, cfg.s, cfg.n, cfg.seed)
    return dump_complex(cx, alpha), EXIT_OK


COMMANDS = {
    "validate": cmd_validate, "hf": cmd_hf, "hp": cmd_hp, "postulation": cmd_postulation, "bounds": cmd_bounds,
    "gens": cmd_gens, "ls": cmd_ls, "colon": cmd_colon, "schur": cmd_schur, "builtin": cmd_builtin,
}


def run(cfg: RunConfig) -> int:
    try:
        payload, status = COMMANDS[cfg.command](cfg)
    except (FormatError, UsageError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ComplexValidationError, ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FitVerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    fmt = "json" if cfg.command == "builtin" and cfg.format == "human" else cfg.format
    text = render(payload, fmt)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--input", help="complex JSON file")
    src.add_argument("--builtin", help=f"fixture name: {', '.join(BUILTINS)}")
    src.add_argument("--r", type=int, help="interior smoothness (overrides the file default)")
    src.add_argument("--s", type=int, help="boundary smoothness (overrides the file default)")
    src.add_argument("--n", type=int, default=6, help="polygon size for the ngon builtin")
    run_ = common.add_argument_group("run")
    run_.add_argument("--dmin", type=int, default=0)
    run_.add_argument("--dmax", type=int)
    run_.add_argument("--exact", action="store_true", help="exact rational arithmetic throughout")
    run_.add_argument("--seed", type=int, default=0, help="seed for primes and random builtins")
    run_.add_argument("--format", choices=("csv", "json", "human"), default="human")
    run_.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="splinelab", description="Mixed spline Hilbert functions and bounds.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check a complex")
    sub.add_parser("hf", parents=[common], help="Hilbert function table")
    hp = sub.add_parser("hp", parents=[common], help="interpolated Hilbert polynomial")
    hp.add_argument("--d0", type=int, help="first fit degree (default e(P) - 2)")
    sub.add_parser("postulation", parents=[common], help="postulation number and bound checks")
    sub.add_parser("bounds", parents=[common], help="combinatorial bound quantities")
    sub.add_parser("gens", parents=[common], help="minimal generator degrees up to --dmax")
    sub.add_parser("ls", parents=[common], help="LS^0 and LS^1 dimensions, both ways")
    colon = sub.add_parser("colon", parents=[common], help="two-variable colon ideals")
    csub = colon.add_subparsers(dest="colon_cmd", required=True)
    sw = csub.add_parser("sweep", parents=[common])
    sw.add_argument("--pmax", type=int, default=6)
    sw.add_argument("--qmax", type=int, default=6)
    sw.add_argument("--rmax", type=int, default=6)
    one = csub.add_parser("one", parents=[common])
    one.add_argument("--p", type=int, required=True)
    one.add_argument("--q", type=int, required=True)
    one.add_argument("--colon-r", dest="colon_r", type=int, required=True, metavar="R")
    sc = sub.add_parser("schur", parents=[common], help="Schur determinant checks")
    sc.add_argument("--mu", help="comma separated partition; omit for a sweep")
    sc.add_argument("--max-size", type=int, default=8)
    sc.add_argument("--rmax", type=int, default=5)
    bi = sub.add_parser("builtin", parents=[common], help="emit a fixture complex as JSON")
    bi.add_argument("name", choices=BUILTINS)
    bi.add_argument("--emit", dest="out", help="same as --out")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    known = {"command", "input", "builtin", "r", "s", "n", "dmin", "dmax", "exact", "seed", "format", "out", "d0"}
    extra = {k: v for k, v in vars(ns).items() if k not in known and k != "verbose"}
    if "colon_r" in extra:
        extra["r"] = extra.pop("colon_r")
    return RunConfig(**{k: getattr(ns, k) for k in known if hasattr(ns, k)}, extra=extra)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
