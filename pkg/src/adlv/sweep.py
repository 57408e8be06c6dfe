"""Exhaustive formula-vs-oracle verification over all w up to a length bound."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .affine_weyl import AffineElement, AffineWeylGroup
from .formulas import (
    alcove_emptiness, cordial_certificate, cordial_saturation_check, large_translation_verdict,
    flat_condition_integral, predicted_verdict, reduction_target, virtual_dim,
)
from .notation import format_element
from .reduction_oracle import InvariantViolation, Oracle
from .root_system import RootDatum
from .sigma_classes import (
    ClassInvariant, basic_class, class_leq, class_of_element, class_to_json,
    defect, is_sigma_straight, newton_point,
)

__all__ = ["SweepConfig", "SweepResult", "Checker", "enumerate_classes", "run_sweep", "target_failures"]

log = logging.getLogger(__name__)

ALL_CHECKS = (
    "minimal", "upper-bound", "newton-bound", "b-max", "integrality", "main", "large-translation",
    "alcove", "target", "cordial", "path",
)


@dataclass
class SweepConfig:
    group: str
    max_len: int
    checks: tuple[str, ...] = ALL_CHECKS
    budget: int | None = None
    target_max_len: int | None = None  # skip targets longer than this


@dataclass
class SweepResult:
    examined: int = 0
    pairs: int = 0
    applicable: int = 0
    agreements: int = 0
    counts: Counter = field(default_factory=Counter)
    violations: list[dict] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        return {
            "w_examined": self.examined,
            "pairs": self.pairs,
            "theorem_applicable": self.applicable,
            "agreements": self.agreements,
            "violations": len(self.violations),
            "checks": dict(sorted(self.counts.items())),
        }

    def merge(self, other: "SweepResult") -> None:
        self.examined += other.examined
        self.pairs += other.pairs
        self.applicable += other.applicable
        self.agreements += other.agreements
        self.counts.update(other.counts)
        self.violations.extend(other.violations)
        self.records.extend(other.records)


_class_cache: dict[tuple[str, int], list[ClassInvariant]] = {}


def enumerate_classes(W: AffineWeylGroup, bound: int) -> list[ClassInvariant]:
    """All classes with ``<nu, 2 rho> <= bound``, via their sigma-straight representatives."""
    key = (W.datum.spec, bound)
    if key not in _class_cache:
        found = set()
        for w in W.elements_up_to(bound):
            if is_sigma_straight(W, w):
                found.add(ClassInvariant(W.kappa(w), newton_point(W, w)))
        _class_cache[key] = sorted(found, key=lambda b: (b.kappa, b.nu))
    return _class_cache[key]


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Checker:
    def __init__(self, cfg: SweepConfig):
        from .root_system import parse_group
        self.cfg = cfg
        self.W = AffineWeylGroup(parse_group(cfg.group))
        self.oracle = Oracle(self.W, "first", cfg.budget)
        self.oracle_last = Oracle(self.W, "last", cfg.budget) if "path" in cfg.checks else None
        D = self.W.datum
        self.class_bound = cfg.max_len + len(D.positive_roots)
        self.classes = enumerate_classes(self.W, self.class_bound)

    def check(self, w: AffineElement) -> SweepResult:
        W, D, O = self.W, self.W.datum, self.oracle
        res = SweepResult(examined=1)
        checks = self.cfg.checks
        wtxt = format_element(W, w)

        def fail(kind, msg, **extra):
            res.violations.append(dict(check=kind, w=wtxt, message=msg, **extra))

        def ok(kind):
            res.counts[kind] += 1

        table = O.table_dict(w)
        lw = W.length(w)
        lam = D.diamond(W.lambda_w(w))

        if "minimal" in checks and O.is_minimal(w):
            b = class_of_element(W, w, check=False)
            want = {b: lw - D.pair_2rho(b.nu)}
            labels = {class_of_element(W, m, check=False) for m in _members(W, w)}
            if table != want or len(labels) != 1:
                fail("minimal", f"table {table} != {want} or labels {labels}")
            else:
                ok("minimal")

        for b, d in table.items():
            vd = virtual_dim(W, w, b)
            if "upper-bound" in checks:
                if d > vd or d > lw:
                    fail("upper-bound", f"dim {d} > d_w(b) {vd} or l(w) {lw}", b=class_to_json(W, b))
                else:
                    ok("upper-bound")
            if "newton-bound" in checks:
                if b.kappa != W.kappa(w) or not D.geq_Q(lam, b.nu):
                    fail("newton-bound", "oracle class outside the Newton bound", b=class_to_json(W, b))
                else:
                    ok("newton-bound")
            if "integrality" in checks:
                if vd.denominator != 1:
                    fail("integrality", f"nonempty pair with d_w(b) = {vd}", b=class_to_json(W, b))
                else:
                    ok("integrality")

        if "b-max" in checks:
            try:
                O.b_max(w)
                ok("b-max")
            except InvariantViolation as e:
                fail("b-max", str(e))

        if "main" in checks or "large-translation" in checks or "alcove" in checks:
            kw = W.kappa(w)
            cands = {b for b in self.classes if b.kappa == kw and D.geq_Q(lam, b.nu)}
            cands |= set(table)
            cands.add(basic_class(W, kw))
            for b in sorted(cands, key=lambda b: (b.kappa, b.nu)):
                res.pairs += 1
                odim = table.get(b)
                if "main" in checks:
                    try:
                        v = predicted_verdict(W, w, b)
                    except InvariantViolation as e:
                        fail("main", str(e), b=class_to_json(W, b))
                        continue
                    agree = None
                    if v.applicable:
                        res.applicable += 1
                        agree = (v.kind == "empty" and odim is None) or (
                            v.kind == "nonempty" and odim == v.dim)
                        if agree:
                            res.agreements += 1
                            ok("main")
                        else:
                            fail("main", f"predicted {v.to_json()} vs oracle {odim}", b=class_to_json(W, b))
                        if flat_condition_integral(W, w, b) is False:
                            res.counts["main-flat-Z-differs"] += 1
                    res.records.append({
                        "w": wtxt, "b": class_to_json(W, b), "oracle": odim,
                        "theorem": v.to_json(), "d_w": _frac(virtual_dim(W, w, b)),
                        "agree": agree,
                    })
                if "large-translation" in checks:
                    try:
                        c = large_translation_verdict(W, w, b)
                        if c.applicable:
                            ok("large-translation")
                    except InvariantViolation as e:
                        fail("large-translation", str(e), b=class_to_json(W, b))
                if "alcove" in checks:
                    if alcove_emptiness(W, w, b) == "empty":
                        if odim is not None:
                            fail("alcove", "alcove criterion says empty but oracle has an entry",
                                 b=class_to_json(W, b))
                        else:
                            ok("alcove")

        if "target" in checks and D.supp_sigma(W.eta_sigma(w)) == frozenset(range(D.rank)):
            self._check_target(w, table, fail, ok)

        if "cordial" in checks:
            cert = cordial_certificate(W, w)
            if cert is not None:
                top = O.b_max(w)
                good = O.is_cordial(w) and cordial_saturation_check(W, O, w, self.classes)
                if cert == "x-translation":
                    lam0 = D.act(D.inverse(w.u), w.lam)
                    tb = ClassInvariant(W.kappa(w), D.dominant(D.diamond(lam0)))
                    good = good and top == tb and defect(W, top) == 0
                if good:
                    ok(f"cordial-{cert}")
                else:
                    fail("cordial", f"certified {cert} but oracle disagrees (b_max {top})")

        if "path" in checks and self.oracle_last is not None:
            other = self.oracle_last.table_dict(w)
            if _canon(W, other) != _canon(W, table):
                fail("path", f"policies disagree: {table} vs {other}")
            else:
                ok("path")
        return res

    def _check_target(self, w, table, fail, ok):
        W = self.W
        # the construction's length identities need shrunken w; elsewhere it is
        # only counted, so that sweeps over all of W~ stay meaningful
        if not W.is_shrunken(w):
            bad = target_failures(W, self.oracle, w, strict=False, max_len=self.cfg.target_max_len)
            self.counts_outside(bad, ok)
            return
        for kind, msg, b in target_failures(W, self.oracle, w, max_len=self.cfg.target_max_len):
            if kind == "ok":
                ok("target")
            elif b is None:
                fail("target", msg)
            else:
                fail("target", msg, b=class_to_json(W, b))

    @staticmethod
    def counts_outside(bad, ok):
        ok("target-nonshrunken-fail" if any(k != "ok" for k, _, _ in bad) else "target-nonshrunken-ok")


def target_failures(W: AffineWeylGroup, oracle: Oracle, w: AffineElement, strict: bool = True,
                    max_len: int | None = None) -> list[tuple[str, str, ClassInvariant | None]]:
    """Check ``w =>_sigma a t^gamma`` against the oracle for the constructed target.

    Returns ``("ok", "", b)`` per verified class and ``("fail", message, b)``
    per violation; ``b`` is ``None`` when the construction itself failed.
    """
    D = W.datum
    try:
        t = reduction_target(W, w, strict=strict)
    except InvariantViolation as e:
        return [("fail", str(e), None)]
    at = t.element(W)
    if max_len is not None and W.length(at) > max_len:
        return []
    rhs = Fraction(W.length(w) + D.weyl_length(W.eta_sigma(w))
                   - W.length(at) - D.weyl_length(W.eta_sigma(at)), 2)
    table = oracle.table_dict(w)
    out = []
    for b, d in sorted(oracle.table_dict(at).items(), key=lambda kv: (kv[0].kappa, kv[0].nu)):
        if b not in table:
            out.append(("fail", "a t^gamma nonempty at b but w empty", b))
        elif table[b] - d < rhs:
            out.append(("fail", f"dim difference {table[b] - d} < {rhs}", b))
        else:
            out.append(("ok", "", b))
    return out


def _members(W, w):
    from .reduction_oracle import explore
    return explore(W, w, "last").members


def _canon(W, table) -> list:
    return sorted((b.kappa, tuple(b.nu), d) for b, d in table.items())


_worker: Checker | None = None


def _init_worker(cfg: SweepConfig) -> None:
    global _worker
    _worker = Checker(cfg)


def _run_chunk(ws: list[AffineElement]) -> SweepResult:
    out = SweepResult()
    for w in ws:
        out.merge(_worker.check(w))
    return out


def run_sweep(cfg: SweepConfig, jobs: int = 1, elements: list[AffineElement] | None = None) -> SweepResult:
    """Run every configured check on all ``w`` with ``l(w) <= cfg.max_len``.

    Results are merged in element order, so the output does not depend on
    ``jobs``.
    """
    checker = Checker(cfg)
    ws = elements if elements is not None else checker.W.elements_up_to(cfg.max_len)
    total = SweepResult()
    if jobs <= 1:
        for w in ws:
            total.merge(checker.check(w))
        return total
    from concurrent.futures import ProcessPoolExecutor
    chunks = [ws[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(cfg,)) as ex:
        parts = list(ex.map(_run_chunk, chunks))
    # restore element order
    order = {format_element(checker.W, w): k for k, w in enumerate(ws)}
    for p in parts:
        total.merge(p)
    # stable: records of one w come from a single worker, already in class order
    total.records.sort(key=lambda r: order[r["w"]])
    total.violations.sort(key=lambda r: order[r["w"]])
    return total
