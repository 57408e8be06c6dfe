"""Command-line front end.

Commands (``--cmd``):

``dim``      oracle table of ``--w``; with ``--b`` a single formula-vs-oracle report line
``sweep``    every check over all ``w`` with ``l(w) <= --max-len``; JSON-lines report
``table``    the full ``(w, b) -> dim`` matrix as CSV or JSON lines
``cordial``  ``b_max``, cordiality and certificate of ``--w`` (or of every ``w`` up to ``--max-len``)
``target``   the reduction target ``a t^gamma`` of ``--w`` with its oracle check

Exit codes: 0 ok, 1 disagreement or invariant violation, 2 usage error,
3 oracle budget exhausted.

CSV columns of ``table`` (one row per nonempty pair, ordered by ``length``,
then ``w``, then ``(kappa, nu)``)::

    length,w,word,kappa,nu,dim,d_w,shrunken,cordial,verdict,verdict_dim

``nu`` is space separated in the lattice basis; ``cordial`` is ``1``/``0``;
``verdict`` is the predicted verdict kind and ``verdict_dim`` its
dimension (empty unless ``nonempty``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .affine_weyl import AffineWeylGroup
from .formulas import (
    cordial_certificate, double_flat, predicted_verdict, reduction_target, virtual_dim,
)
from .notation import ParseError, format_element, format_finite, format_word, parse_element
from .reduction_oracle import BudgetExhausted, InvariantViolation, Oracle, table_to_json
from .root_system import parse_group
from .sigma_classes import class_sort_key, class_to_json, defect, parse_class
from .sweep import SweepConfig, run_sweep, target_failures

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CSV_COLUMNS = (
    "length", "w", "word", "kappa", "nu", "dim", "d_w", "shrunken", "cordial", "verdict", "verdict_dim",
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    group: str
    cmd: str
    max_len: int | None = None
    w: str | None = None
    b: str | None = None
    fmt: str = "json"
    budget: int | None = None
    jobs: int = 1
    out: str | None = None

    def __post_init__(self):
        if self.max_len is not None and self.max_len < 0:
            raise UsageError("--max-len must be >= 0")
        if self.budget is not None and self.budget < 1:
            raise UsageError("--budget must be >= 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coords(W: AffineWeylGroup, v) -> list[str]:
    return [_frac(c) for c in W.datum.to_lattice_coords(v)]


def _element_info(W: AffineWeylGroup, oracle: Oracle, w) -> dict:
    D = W.datum
    eta = W.eta_sigma(w)
    return {
        "length": W.length(w),
        "word": format_word(W, w),
        "shrunken": W.is_shrunken(w),
        "eta_sigma": format_finite(W, eta),
        "supp_sigma_eta": sorted(i + 1 for i in D.supp_sigma(eta)),
        "lambda_w": _coords(W, W.lambda_w(w)),
        "double_flat": _coords(W, double_flat(W, w)),
        "cordial_certificate": cordial_certificate(W, w),
    }


def report_line(W: AffineWeylGroup, oracle: Oracle, w, b) -> dict:
    """``{"w", "b", "oracle", "theorem", "d_w", "agree"}`` for one pair."""
    odim = oracle.table_dict(w).get(b)
    v = predicted_verdict(W, w, b)
    agree = None
    if v.applicable:
        agree = (v.kind == "empty" and odim is None) or (v.kind == "nonempty" and odim == v.dim)
    return {
        "w": format_element(W, w), "b": class_to_json(W, b), "oracle": odim,
        "theorem": v.to_json(), "d_w": _frac(virtual_dim(W, w, b)), "agree": agree,
    }


def _need(cfg: RunConfig, attr: str, flag: str):
    val = getattr(cfg, attr)
    if val is None:
        raise UsageError(f"--cmd {cfg.cmd} needs {flag}")
    return val


def cmd_dim(cfg: RunConfig, W: AffineWeylGroup, oracle: Oracle) -> tuple[int, list[str]]:
    w = parse_element(W, _need(cfg, "w", "--w"))
    info = _element_info(W, oracle, w)
    if cfg.b is None:
        out = table_to_json(W, oracle.dim_table(w))
        out["info"] = info
        return EXIT_OK, [json.dumps(out)]
    b = parse_class(W, cfg.b)
    line = report_line(W, oracle, w, b)
    line["info"] = info
    return (EXIT_FAIL if line["agree"] is False else EXIT_OK), [json.dumps(line)]


def _elements(cfg: RunConfig, W: AffineWeylGroup):
    L = _need(cfg, "max_len", "--max-len")
    return sorted(W.elements_up_to(L), key=lambda w: (W.length(w), format_element(W, w)))


def cmd_sweep(cfg: RunConfig, W: AffineWeylGroup, oracle: Oracle) -> tuple[int, list[str]]:
    sc = SweepConfig(cfg.group, _need(cfg, "max_len", "--max-len"), budget=oracle.budget)
    res = run_sweep(sc, jobs=cfg.jobs)
    lines = [json.dumps(r) for r in res.records]
    lines += [json.dumps({"violation": v}) for v in res.violations]
    print(json.dumps({"summary": res.summary()}), file=sys.stderr)
    return (EXIT_OK if res.ok else EXIT_FAIL), lines


def cmd_table(cfg: RunConfig, W: AffineWeylGroup, oracle: Oracle) -> tuple[int, list[str]]:
    ws = _elements(cfg, W)
    if cfg.fmt == "json":
        return EXIT_OK, [json.dumps(table_to_json(W, oracle.dim_table(w))) for w in ws]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for w in ws:
        table = oracle.table_dict(w)
        cordial = oracle.is_cordial(w)
        wtxt, word, lw, shr = format_element(W, w), format_word(W, w), W.length(w), W.is_shrunken(w)
        for b in sorted(table, key=lambda b: class_sort_key(W, b)):
            v = predicted_verdict(W, w, b)
            writer.writerow([
                lw, wtxt, word, b.kappa, " ".join(class_to_json(W, b)["nu"]), table[b],
                _frac(virtual_dim(W, w, b)), int(shr), int(cordial), v.kind,
                "" if v.dim is None else v.dim,
            ])
    return EXIT_OK, buf.getvalue().splitlines()


def _cordial_record(W: AffineWeylGroup, oracle: Oracle, w) -> dict:
    top = oracle.b_max(w)
    return {
        "w": format_element(W, w), "b_max": class_to_json(W, top),
        "dim": oracle.table_dict(w)[top], "d_w": _frac(virtual_dim(W, w, top)),
        "defect": defect(W, top), "cordial": oracle.is_cordial(w),
        "certificate": cordial_certificate(W, w),
    }


def cmd_cordial(cfg: RunConfig, W: AffineWeylGroup, oracle: Oracle) -> tuple[int, list[str]]:
    ws = [parse_element(W, cfg.w)] if cfg.w is not None else _elements(cfg, W)
    lines, code = [], EXIT_OK
    for w in ws:
        rec = _cordial_record(W, oracle, w)
        if rec["certificate"] is not None and not rec["cordial"]:
            code = EXIT_FAIL
        lines.append(json.dumps(rec))
    return code, lines


def cmd_target(cfg: RunConfig, W: AffineWeylGroup, oracle: Oracle) -> tuple[int, list[str]]:
    D = W.datum
    w = parse_element(W, _need(cfg, "w", "--w"))
    if D.supp_sigma(W.eta_sigma(w)) != frozenset(range(D.rank)):
        raise UsageError("target needs supp_sigma(eta_sigma(w)) = S")
    t = reduction_target(W, w)
    checks = target_failures(W, oracle, w)
    rec = {
        "w": format_element(W, w), "a": format_finite(W, t.a), "gamma": _coords(W, t.gamma),
        "target": format_element(W, t.element(W)),
        "J": sorted(i + 1 for i in t.J), "J_prime": sorted(i + 1 for i in t.J_prime),
        "x_prime": format_finite(W, t.x_prime), "z": format_finite(W, t.z),
        "y_prime": format_finite(W, t.y_prime),
        "w1": format_element(W, t.w1), "w2": format_element(W, t.w2),
        "checks": [{"b": class_to_json(W, b), "ok": k == "ok", **({"message": m} if m else {})}
                   for k, m, b in checks],
    }
    rec["ok"] = all(k == "ok" for k, _, _ in checks)
    return (EXIT_OK if rec["ok"] else EXIT_FAIL), [json.dumps(rec)]


COMMANDS = {
    "dim": cmd_dim, "sweep": cmd_sweep, "table": cmd_table, "cordial": cmd_cordial, "target": cmd_target,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adlv", description="Dimensions of affine Deligne-Lusztig varieties.")
    p.add_argument("--group", required=True, help='e.g. "A2:adjoint:sigma=id" or "A3 adjoint sigma=flip"')
    p.add_argument("--cmd", required=True, choices=sorted(COMMANDS))
    p.add_argument("--w", help='element, e.g. "s0 s1 tau1" or "x=[s1]; lam=[2,0]; y=[]"')
    p.add_argument("--b", help='class "kappa:nu1,...,nun" with nu in the lattice basis')
    p.add_argument("--max-len", type=int)
    p.add_argument("--budget", type=int, help="oracle node budget (default $ADLV_BUDGET)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output file (default stdout)")
    return p


def run(cfg: RunConfig) -> tuple[int, list[str]]:
    W = AffineWeylGroup(parse_group(cfg.group))
    budget = cfg.budget
    if budget is None and os.environ.get("ADLV_BUDGET"):
        try:
            budget = int(os.environ["ADLV_BUDGET"])
        except ValueError:
            raise UsageError("ADLV_BUDGET must be an integer") from None
    if budget is not None and budget < 1:
        raise UsageError("budget must be >= 1")
    oracle = Oracle(W, "first", budget)
    if cfg.fmt == "csv" and cfg.cmd != "table":
        raise UsageError("--format csv is only available for --cmd table")
    return COMMANDS[cfg.cmd](cfg, W, oracle)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        cfg = RunConfig(args.group, args.cmd, args.max_len, args.w, args.b, args.fmt,
                        args.budget, args.jobs, args.out)
        if cfg.out is not None and not Path(cfg.out).parent.is_dir():
            raise UsageError(f"output directory {str(Path(cfg.out).parent)!r} does not exist")
        code, lines = run(cfg)
    except BudgetExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = "".join(line + "\n" for line in lines)
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return code
