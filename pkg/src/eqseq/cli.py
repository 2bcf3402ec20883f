"""``eqseq`` command-line front end.

Exit codes: 0 success, 1 usage or argument error, 2 cross-route tolerance
failure, 3 work budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import charsums as cs
from . import harness as hs
from . import measures as ms
from . import numtheory as nt
from . import quotients as qu
from . import sequences as sq
from .config import default_budget
from .errors import BudgetExceeded, ConsistencyFailure, EqseqError, InvalidArgument

EXIT_OK, EXIT_USAGE, EXIT_TOLERANCE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    work_budget: int
    out: Path | None
    fmt: str | None
    threads: int


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _complex(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _add_common(p: argparse.ArgumentParser, formats=None, default=None) -> None:
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--budget", type=int, help="work budget in iterations (default: $EQSEQ_BUDGET or 1e9)")
    p.add_argument("--threads", type=int, default=1, help="cap on worker threads")
    if formats:
        p.add_argument("--format", choices=formats, default=default)


def _add_family(p: argparse.ArgumentParser, fermat: bool = False) -> None:
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--q", type=int)
    if fermat:
        p.add_argument("--fermat", type=int, metavar="P")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eqseq", description="Euler-quotient sequences and their correlation measures")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("quotient", help="print Q_m(n)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("quotient-table", help="Q_m(t) over one period")
    p.add_argument("--m", type=int, required=True)
    _add_common(p, ["csv"], "csv")

    p = sub.add_parser("sequence", help="threshold binary sequence")
    _add_family(p, fermat=True)
    _add_common(p, ["bits", "csv"], "bits")

    p = sub.add_parser("measure", help="pattern sums and correlation measures")
    p.add_argument("--seq", required=True, help="file (bits or csv format) or spec such as m=25, p=3,q=7")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--pattern", type=_ints)
    p.add_argument("--aperiodic", action="store_true")
    p.add_argument("--N", type=int)
    _add_common(p, ["json"], "json")

    p = sub.add_parser("charsum", help="character and exponential sums, both routes")
    kinds = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    k = kinds.add_parser("ramanujan")
    k.add_argument("--N", type=int, required=True)
    k.add_argument("--n", type=int, required=True)
    k = kinds.add_parser("gauss")
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--j", type=int, default=1)
    k.add_argument("--n", type=int, required=True)
    k = kinds.add_parser("lemma1")
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--a", type=_ints, required=True)
    k = kinds.add_parser("xi")
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--k", type=int, help="divisor of m (default: period multiplier)")
    k = kinds.add_parser("counts")
    k.add_argument("--m", type=int, required=True)
    for k in kinds.choices.values():
        _add_common(k, ["json"], "json")

    p = sub.add_parser("theorem", help="order-4 sum by two routes against its main term")
    _add_family(p)
    p.add_argument("--baseline-trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, ["json", "csv"], "json")

    p = sub.add_parser("baseline", help="random-sequence benchmark")
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--pattern", type=_ints, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, ["json"], "json")

    p = sub.add_parser("sweep", help="theorem reports for several parameter sets")
    p.add_argument("specs", nargs="*", help="items like 25, m=25, p=5,tau=1 or p=3,q=7")
    _add_common(p, ["json", "csv"], "json")
    return parser


def _family_spec(args) -> dict:
    given = {key: getattr(args, key, None) for key in ("m", "p", "tau", "q", "fermat")}
    given = {key: v for key, v in given.items() if v is not None}
    if set(given) not in ({"m"}, {"p", "tau"}, {"p", "q"}, {"fermat"}):
        raise UsageError("give exactly one of --m M, --p P --tau T, --p P --q Q" + (", --fermat P" if hasattr(args, "fermat") else ""))
    return given


def _sequence_from_spec(spec: dict) -> sq.BinarySequence:
    if "m" in spec:
        return sq.euler_threshold_sequence(spec["m"])
    if "fermat" in spec:
        return sq.fermat_sequence(spec["fermat"])
    if "tau" in spec:
        return sq.prime_power_sequence(spec["p"], spec["tau"])
    return sq.two_prime_sequence(spec["p"], spec["q"])


def load_sequence(source: str) -> sq.BinarySequence:
    path = Path(source)
    if path.is_file():
        text = path.read_text()
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if lines and lines[0].strip().startswith("t,"):
            header = lines[0].strip().split(",")
            col = header.index("bit")
            bits = [int(ln.split(",")[col]) for ln in lines[1:]]
            return sq.BinarySequence(np.array(bits), {"construction": "file", "path": str(path)})
        return sq.BinarySequence.from_bitstring("".join(lines), construction="file", path=str(path))
    spec = hs.parse_spec(source)
    if isinstance(spec, int):
        spec = {"m": spec}
    return _sequence_from_spec(spec)


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- subcommands ---------------------------------------------------------------


def cmd_quotient(cfg: RunConfig) -> int:
    _emit(cfg, str(qu.euler_quotient(cfg.args.m, cfg.args.n)))
    return EXIT_OK


def cmd_quotient_table(cfg: RunConfig) -> int:
    table = qu.quotient_table(cfg.args.m)
    flags = (~table.unit_mask()).astype(int)
    rows = ["t,q,gcd_flag"] + [f"{t},{q},{g}" for t, (q, g) in enumerate(zip(table.values, flags))]
    _emit(cfg, "\n".join(rows))
    return EXIT_OK


def cmd_sequence(cfg: RunConfig) -> int:
    seq = _sequence_from_spec(_family_spec(cfg.args))
    if cfg.fmt == "bits":
        _emit(cfg, seq.to_bitstring())
    else:
        q = seq.quotients.values
        rows = ["t,quotient,bit"] + [f"{t},{int(q[t])},{int(b)}" for t, b in enumerate(seq.bits)]
        _emit(cfg, "\n".join(rows))
    return EXIT_OK


def cmd_measure(cfg: RunConfig) -> int:
    a = cfg.args
    seq = load_sequence(a.seq)
    if a.pattern is not None:
        if len(a.pattern) != a.order:
            raise UsageError(f"--pattern has {len(a.pattern)} shifts but --order is {a.order}")
        value = ms.pattern_sum(seq, a.pattern)
        report = {
            "order": a.order,
            "mode": "periodic",
            "value": value,
            "argmax": a.pattern,
            "normalized": value / math.sqrt(seq.period),
            "exhaustive": False,
            "work_budget_used": seq.period * a.order,
        }
    elif a.aperiodic:
        if a.N is None:
            raise UsageError("--aperiodic needs --N")
        report = ms.aperiodic_correlation_measure(seq, a.N, a.order, cfg.work_budget).to_dict()
    else:
        report = ms.periodic_correlation_measure(seq, a.order, cfg.work_budget).to_dict()
    report["period"] = seq.period
    _emit(cfg, _json(report))
    return EXIT_OK


def _lemma1_prediction(m: int, k: int, a: list[int]) -> int | None:
    if sum(a) % m == 0 and (a[1] + 2 * a[2] + 3 * a[3]) % k == 0:
        return k * nt.euler_phi(m)
    if sum(a) % k:
        return 0
    return None


def cmd_charsum(cfg: RunConfig) -> int:
    a = cfg.args
    status = EXIT_OK
    if a.kind == "ramanujan":
        direct = cs.ramanujan_sum(a.N, a.n, "direct")
        formula = cs.ramanujan_sum(a.N, a.n, "formula")
        out = {"N": a.N, "n": a.n, "direct": direct, "formula": formula,
               "residue": cs.ramanujan_residue(a.N, a.n), "agree": direct == formula}
        status = EXIT_OK if direct == formula else EXIT_TOLERANCE
    elif a.kind == "gauss":
        chi = cs.character_power(cs.chi_km(a.m), a.j)
        direct = cs.gauss_sum(chi, a.n, "direct")
        formula = cs.gauss_sum(chi, a.n, "formula")
        gap = abs(direct - formula)
        tol = cs.gauss_tolerance(chi.modulus)
        out = {"m": a.m, "j": a.j, "n": a.n, "modulus": chi.modulus, "conductor": cs.conductor(chi),
               "direct": _complex(direct), "formula": _complex(formula), "residue": gap,
               "tolerance": tol, "agree": gap < tol}
        status = EXIT_OK if gap < tol else EXIT_TOLERANCE
    elif a.kind == "lemma1":
        if len(a.a) != 4:
            raise UsageError("--a needs four comma-separated integers")
        k = qu.period_multiplier(a.m)
        value = cs.lemma1_sum(a.m, k, cs.chi_km(a.m), a.a)
        predicted = _lemma1_prediction(a.m, k, a.a)
        out = {"m": a.m, "k": k, "a": a.a, "direct": _complex(value), "predicted": predicted,
               "residue": abs(value - predicted) if predicted is not None else None,
               "bound_ratio": abs(value) * nt.euler_phi(k) / (nt.euler_phi(a.m) * k**1.5)}
        if predicted is not None and abs(value - predicted) >= 1e-6:
            status = EXIT_TOLERANCE
    elif a.kind == "xi":
        k = a.k if a.k is not None else qu.period_multiplier(a.m)
        direct = cs.xi_sum(a.m, k, "direct", cfg.work_budget)
        factored = cs.xi_sum(a.m, k, "factored", cfg.work_budget)
        gap = abs(direct - factored)
        main = a.m**4 / 48
        out = {"m": a.m, "k": k, "direct": _complex(direct), "factored": _complex(factored),
               "residue": gap, "tolerance": cs.xi_tolerance(a.m), "main_term": main,
               "ratio": factored.real / main}
        status = EXIT_OK if gap < cs.xi_tolerance(a.m) else EXIT_TOLERANCE
    else:
        c1, c2, c3 = cs.counting_sums(a.m, cfg.work_budget)
        m = a.m
        out = {"m": m, "c1": c1, "c2": c2, "c3": c3,
               "dev1_over_m": abs(c1 - m * m / 8) / m, "dev2_over_m": abs(c2 - m * m / 8) / m,
               "dev3_over_m": abs(c3 - m * m / 12) / m}
    _emit(cfg, _json(out))
    return status


def cmd_theorem(cfg: RunConfig) -> int:
    a = cfg.args
    m = hs.modulus_for(_family_spec(a))
    report = hs.theorem_report(m, cfg.work_budget)
    if a.baseline_trials > 0:
        report.baseline = hs.random_baseline(report.period, (0, m, 2 * m, 3 * m) if report.k > 3 else (0, m, 2 * m),
                                             a.baseline_trials, a.seed)
    _emit(cfg, hs.reports_to_json([report]) if cfg.fmt == "json" else hs.reports_to_csv([report]))
    return EXIT_OK if report.cross_route_ok else EXIT_TOLERANCE


def cmd_baseline(cfg: RunConfig) -> int:
    a = cfg.args
    stats = hs.random_baseline(a.T, a.pattern, a.trials, a.seed)
    _emit(cfg, _json(stats.to_dict()))
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    items = hs.sweep(cfg.args.specs, cfg.work_budget, cfg.threads)
    if cfg.fmt == "json":
        _emit(cfg, hs.reports_to_json(items))
    else:
        _emit(cfg, hs.reports_to_csv(items))
    if any(isinstance(r, hs.TheoremReport) and not r.cross_route_ok for r in items):
        return EXIT_TOLERANCE
    return EXIT_OK


COMMANDS = {
    "quotient": cmd_quotient,
    "quotient-table": cmd_quotient_table,
    "sequence": cmd_sequence,
    "measure": cmd_measure,
    "charsum": cmd_charsum,
    "theorem": cmd_theorem,
    "baseline": cmd_baseline,
    "sweep": cmd_sweep,
}


def dispatch(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("EQSEQ_LOG", "WARNING"), format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(
            command=args.command,
            args=args,
            work_budget=args.budget if args.budget is not None else default_budget(),
            out=args.out,
            fmt=getattr(args, "format", None),
            threads=max(1, args.threads),
        )
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"eqseq: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConsistencyFailure as exc:
        print(f"eqseq: tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (InvalidArgument, EqseqError, ValueError) as exc:
        print(f"eqseq: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())
