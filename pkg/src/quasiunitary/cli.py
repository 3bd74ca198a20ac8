"""Command line entry point: ``quasiunitary {algebra,verify,h2,sweep}``.

Exit status: 0 on success, 1 when a check or expected dimension fails,
2 on usage errors (bad arguments, unparsable w values, unknown checks).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path

from . import ckalgebra as ck
from .cohomology import expected_unitary_h2, h2_family
from .exactnum import format_rational, parse_rational
from .realization import antihermiticity_check, realization_consistency, realize_generator

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CHECKS = ("jacobi", "matrix", "grading", "reversal", "semidirect")


class UsageError(Exception):
    pass


def _parse_values(text: str, what: str) -> tuple[Fraction, ...]:
    out = []
    for tok in text.split(","):
        try:
            out.append(parse_rational(tok))
        except ValueError:
            raise UsageError(f"{what}: cannot parse {tok.strip()!r} as a rational (use p/q or an integer)")
    return tuple(out)


def _pattern(args) -> ck.OmegaPattern:
    if args.omega is None:
        raise UsageError("--omega is required")
    vals = _parse_values(args.omega, "--omega")
    if args.n is not None and args.n != len(vals):
        raise UsageError(f"--n {args.n} but --omega has {len(vals)} entries")
    if not vals:
        raise UsageError("need at least one w value")
    return ck.OmegaPattern(vals)


def _emit(args, payload: dict, text: str) -> None:
    if args.emit == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
        log.info("wrote %s", args.out)


def _term_str(g: ck.StructureConstants, row) -> str:
    if not row:
        return "0"
    parts = []
    for k, v in row:
        parts.append(f"{format_rational(v)} {g.basis[k]}")
    return " + ".join(parts).replace("+ -", "- ")


def cmd_algebra(args) -> int:
    p = _pattern(args)
    g = ck.build_family(p, args.family)
    lines = [f"{g.family}{p}  N={p.n}  dim={g.dim}", "basis: " + " ".join(x.name for x in g.basis)]
    for a in p.zero_positions():
        left, right = a, p.n + 1 - a
        lines.append(f"note: w_{a} = 0, semidirect split t[{4 * a * right}] (.) (sq({left}) + sq({right}))")
    for (i, j), row in sorted(g.table.items()):
        lines.append(f"[{g.basis[i]}, {g.basis[j]}] = {_term_str(g, row)}")
    _emit(args, ck.to_json_dict(g), "\n".join(lines))
    return EXIT_OK


def _check_jacobi(p, g):
    bad = ck.verify_jacobi(g)
    if bad:
        v = bad[0]
        names = ", ".join(str(g.basis[i]) for i in v.triple)
        return False, f"{len(bad)} violating triples, first ({names})"
    return True, f"{g.dim * (g.dim - 1) * (g.dim - 2) // 6} triples"


def _check_matrix(p, g):
    for x in g.basis:
        if not antihermiticity_check(p, realize_generator(p, x)):
            return False, f"{x} is not I_k-antihermitian"
    bad = realization_consistency(p)
    if bad:
        i, j = bad[0].pair
        return False, f"{len(bad)} mismatched brackets, first [{g.basis[i]}, {g.basis[j]}]"
    return True, f"{g.dim * (g.dim - 1) // 2} commutators match"


def _check_grading(p, g):
    distinct = set()
    for size in range(p.n + 2):
        for subset in combinations(range(p.n + 1), size):
            try:
                s = ck.grading_automorphism(g, subset)
            except ck.AutomorphismError as exc:
                return False, str(exc)
            distinct.add(s.sign)
    if len(distinct) != 2 ** p.n:
        return False, f"{len(distinct)} distinct maps, expected {2 ** p.n}"
    return True, f"{len(distinct)} distinct involutive automorphisms"


def _check_reversal(p, g):
    try:
        iso = ck.reversal_isomorphism(p)
        back = ck.reversal_images(iso.target, iso.source, p.n)
    except ck.AutomorphismError as exc:
        return False, str(exc)
    if not ck.is_identity(ck.compose(iso.images, back)):
        return False, "reversal applied twice is not the identity"
    return True, f"{p} -> {p.reversed()}"


def _check_semidirect(p, g):
    zeros = p.zero_positions()
    if not zeros:
        return None, "skipped: no w_a = 0"
    msgs = []
    for a in zeros:
        rep = ck.semidirect_analysis(p, a)
        if not rep.ok:
            return False, f"a={a}: {rep}"
        msgs.append(f"a={a} dim t={rep.ideal_dim}")
    return True, "; ".join(msgs)


_CHECK_FUNCS = {
    "jacobi": _check_jacobi,
    "matrix": _check_matrix,
    "grading": _check_grading,
    "reversal": _check_reversal,
    "semidirect": _check_semidirect,
}


def cmd_verify(args) -> int:
    p = _pattern(args)
    checks = [c.strip() for c in args.checks.split(",")] if args.checks else list(CHECKS)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    g = ck.build_sq(p)
    fam = ck.build_family(p, args.family)
    results = {}
    lines = []
    failed = False
    for name in checks:
        target = fam if name == "jacobi" else g
        ok, detail = _CHECK_FUNCS[name](p, target)
        status = "skip" if ok is None else ("pass" if ok else "FAIL")
        failed |= ok is False
        results[name] = {"status": status, "detail": detail}
        lines.append(f"{name:<11} {status:<5} {detail}")
    payload = {"family": args.family, "n": p.n, "omega": [format_rational(v) for v in p.values], "checks": results}
    _emit(args, payload, "\n".join(lines))
    return EXIT_FAILED if failed else EXIT_OK


def _report_text(rep) -> str:
    lines = [
        f"{rep.family}{rep.omega}: dim Z2 = {rep.dim_z2}, dim B2 = {rep.dim_b2}, dim H2 = {rep.dim_h2}",
    ]
    for t, xi in enumerate(rep.representatives):
        terms = ", ".join(f"({i},{j}):{format_rational(v)}" for (i, j), v in sorted(xi.support().items()))
        lines.append(f"  rep {t}: {terms}")
    return "\n".join(lines)


def cmd_h2(args) -> int:
    p = _pattern(args)
    rep = h2_family(p, args.family)
    _emit(args, rep.to_json_dict(), _report_text(rep))
    return EXIT_OK


@dataclass
class SweepConfig:
    n: int
    family: str = "sq"
    value_set: tuple = (Fraction(-1), Fraction(0), Fraction(1))
    parallelism: int = field(default_factory=lambda: os.cpu_count() or 1)
    output_path: Path | None = None

    def patterns(self) -> list[ck.OmegaPattern]:
        return [ck.OmegaPattern(vals) for vals in product(self.value_set, repeat=self.n)]


def _sweep_one(job):
    values, family = job
    t0 = time.perf_counter()
    rep = h2_family(ck.OmegaPattern(values), family)
    return rep, time.perf_counter() - t0


def expected_h2(p: ck.OmegaPattern, family: str) -> int | None:
    if family == "sq":
        return 0
    if family in ("u1", "u2", "u3"):
        return expected_unitary_h2(p)
    return None


def run_sweep(cfg: SweepConfig) -> dict:
    """Compute H^2 for every pattern in value_set^N; results keyed by pattern order."""
    jobs = [(p.values, cfg.family) for p in cfg.patterns()]
    if cfg.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]
    reports = []
    mismatches = []
    for (values, _), (rep, secs) in zip(jobs, results):
        p = ck.OmegaPattern(values)
        want = expected_h2(p, cfg.family)
        entry = rep.to_json_dict()
        entry["seconds"] = round(secs, 3)
        entry["expected_dim_h2"] = want
        reports.append(entry)
        if want is not None and rep.dim_h2 != want:
            mismatches.append(p.label())
    counts = Counter(r["dim_h2"] for r in reports)
    return {
        "family": cfg.family,
        "n": cfg.n,
        "value_set": [format_rational(v) for v in cfg.value_set],
        "patterns": len(reports),
        "summary": {str(k): counts[k] for k in sorted(counts)},
        "mismatches": mismatches,
        "reports": reports,
    }


def cmd_sweep(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("sweep needs --n >= 1")
    values = _parse_values(args.values, "--values")
    cfg = SweepConfig(
        n=args.n,
        family=args.family,
        value_set=values,
        parallelism=args.jobs or (os.cpu_count() or 1),
        output_path=Path(args.out) if args.out else Path(f"sweep-{args.family}-N{args.n}.json"),
    )
    result = run_sweep(cfg)
    lines = [f"{cfg.family} N={cfg.n}: {result['patterns']} patterns"]
    for rep in result["reports"]:
        om = ",".join(rep["omega"])
        exp = rep["expected_dim_h2"]
        flag = "" if exp is None or exp == rep["dim_h2"] else "  <-- expected %d" % exp
        lines.append(f"  ({om})  Z2={rep['dim_z2']:<5} B2={rep['dim_b2']:<5} H2={rep['dim_h2']}{flag}")
    lines.append("dim H2 counts: " + ", ".join(f"{k}: {v}" for k, v in result["summary"].items()))
    if args.emit == "json":
        print(json.dumps(result, indent=2))
    else:
        print("\n".join(lines))
    cfg.output_path.write_text(json.dumps(result, indent=2) + "\n")
    log.info("wrote %s", cfg.output_path)
    if result["mismatches"]:
        print(f"FAIL: H2 dimension differs from the expected value for {', '.join(result['mismatches'])}",
              file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasiunitary",
                                     description="Quaternionic unitary Cayley-Klein algebras and their H^2.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, omega=True):
        sp.add_argument("--n", type=int, help="N (number of w coefficients)")
        if omega:
            sp.add_argument("--omega", help="comma separated w_1..w_N, e.g. 1,0,-1/2")
        sp.add_argument("--family", default="sq", choices=ck.FAMILIES)
        sp.add_argument("--emit", default="text", choices=("text", "json"))
        sp.add_argument("--out", help="also write the JSON result here")

    sp = sub.add_parser("algebra", help="print the bracket table")
    common(sp)
    sp.set_defaults(func=cmd_algebra)

    sp = sub.add_parser("verify", help="structural checks")
    common(sp)
    sp.add_argument("--checks", help=f"comma separated subset of {','.join(CHECKS)} (default: all)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("h2", help="second cohomology")
    common(sp)
    sp.set_defaults(func=cmd_h2)

    sp = sub.add_parser("sweep", help="H^2 over all patterns in VALUES^N")
    common(sp, omega=False)
    sp.add_argument("--values", default="-1,0,1", help="value set for each w (default -1,0,1)")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: logical cores)")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
