"""Cross-checks shared by the ``dist``/``verify`` commands and the acceptance tests."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from . import closed, veq
from .code import scan
from .field import field_new
from .forms import FAMILIES, CodeParams, validate
from .table import DistTable

CHECK_NAMES = ("rank_bound", "odd_rank", "dc_support", "magnitude", "unbinnable")

DESK_CASES = [(3, 1, 1, 2), (5, 1, 1, 2), (5, 1, 1, 3), (9, 3, 3, 2)]

# second primitive polynomial of degree 5 (x^5 + x^3 + 1) for the independence check
ALT_POLY_5 = 0b101001


@dataclass
class Comparison:
    name: str
    expected: object
    actual: object

    @property
    def match(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"name": self.name, "expected": str(self.expected), "actual": str(self.actual), "match": self.match}


@dataclass
class RunReport:
    params: dict | None = None
    tables: list[DistTable] = field(default_factory=list)
    comparisons: list[Comparison] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    wall_time_ms: dict[str, float] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if all(c.match for c in self.comparisons) else "fail"

    def add(self, name: str, expected, actual) -> Comparison:
        c = Comparison(name, expected, actual)
        self.comparisons.append(c)
        return c

    def failures(self) -> list[Comparison]:
        return [c for c in self.comparisons if not c.match]

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.wall_time_ms[name] = self.wall_time_ms.get(name, 0.0) + (time.perf_counter() - t0) * 1e3

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "params": self.params,
            "tables": [t.to_json() for t in self.tables],
            "comparisons": [c.to_json() for c in self.comparisons],
            "notes": self.notes,
            "status": self.status,
        }
        if timing:
            out["wall_time_ms"] = {k: round(v, 3) for k, v in sorted(self.wall_time_ms.items())}
        return out


def _tag(p: CodeParams) -> str:
    return f"m={p.m},d={p.d},e={p.e},k={p.k},{p.family}"


def compare_tables(report: RunReport, expected: DistTable, actual: DistTable, prefix: str = "") -> None:
    for key in sorted(set(expected.alpha) | set(actual.alpha), key=lambda t: (-t[0], -t[1])):
        report.add(f"{prefix}alpha[{key[0]},{key[1]:+d}]", expected.alpha.get(key, 0), actual.alpha.get(key, 0))
    for r in sorted(set(expected.beta) | set(actual.beta), reverse=True):
        report.add(f"{prefix}beta[{r}]", expected.beta.get(r, 0), actual.beta.get(r, 0))
    if expected.balanced is not None and actual.balanced is not None:
        report.add(f"{prefix}balanced", expected.balanced, actual.balanced)


def sign_split_errors(table: DistTable) -> list[str]:
    e = table.params.e
    bad = []
    for r, b in table.beta.items():
        for eps in (1, -1):
            want = closed.split_by_sign(e, r, eps, b)
            if table.alpha.get((r, eps), 0) != want:
                bad.append(f"alpha[{r},{eps:+d}]")
    return bad


def check_params(
    report: RunReport,
    params: CodeParams,
    *,
    poly: int | None = None,
    threads: int | None = 1,
    budget: int | None = None,
    fault: int = 0,
) -> DistTable:
    """Enumeration against closed forms plus every per-codeword property for one parameter set."""
    p = validate(params)
    ctx = field_new(p.m, poly)
    tag = _tag(p)
    with report.phase(f"enumerate[{tag}]"):
        res = scan(p, ctx, threads=threads, budget=budget)
    with report.phase(f"closed[{tag}]"):
        ref = closed.dist_closed(p)
        bal = closed.balanced_closed(p)
    if fault:
        key = next(iter(ref.alpha))
        ref.alpha[key] += fault
    enum = res.table
    report.tables += [enum, ref]
    compare_tables(report, ref, enum, prefix=f"{tag}: ")
    report.add(f"{tag}: balanced (balanced-count formula)", bal.exact, enum.balanced)
    for name in CHECK_NAMES:
        report.add(f"{tag}: {name} violations", 0, res.checks.get(name, 0))
    report.add(f"{tag}: enumerated table invariants", [], enum.invariant_errors())
    report.add(f"{tag}: enumerated sign splitting", [], sign_split_errors(enum))
    report.add(f"{tag}: closed-form sign splitting", [], sign_split_errors(ref))
    report.notes.setdefault("balanced_approx", {})[tag] = {
        "exact": str(bal.exact),
        "approx": str(bal.approx),
        "rel_error": f"{float(bal.rel_error):.6g}",
    }
    return enum


def family_invariance(report: RunReport, tables: dict[str, DistTable], label: str) -> None:
    fams = sorted(tables)
    base = tables[fams[0]]
    for f in fams[1:]:
        t = tables[f]
        same = (t.alpha, t.beta, t.balanced) == (base.alpha, base.beta, base.balanced)
        report.add(f"{label}: family {f} table == family {fams[0]} table", True, same)


def v_suite(report: RunReport, params: CodeParams, max_tuple_bits: int = 20) -> None:
    """Set equalities, elimination equivalence, moment identity and the V recursion."""
    p = validate(params)
    ctx = field_new(p.m)
    tag = _tag(p)
    us = [u for u in range(1, p.k) if 2 * p.m * u <= max_tuple_bits]
    with report.phase(f"v_suite[{tag}]"):
        for s in range(1, p.k):
            for u in us:
                if s >= u:
                    report.add(f"{tag}: V[{s},{u}] == V[{u},{u}]", True, veq.v_set_equal(p, s, u, ctx))
                report.add(f"{tag}: elimination s={s} u={u}", True, veq.elimination_equiv_check(p, s, u, ctx))
        sizes = {0: 1}
        for u in us:
            sizes[u] = veq.v_size(p, u, ctx)
        for u in [0] + us:
            lhs = veq.form_moment(p, u, ctx)
            report.add(f"{tag}: moment identity u={u}", 2 ** (p.m * p.k) * sizes[u], lhs)
        rec = []
        for u in us:
            r = veq.recursion_check(p, u, ctx, sizes)
            rec.append(r.to_json())
            report.add(f"{tag}: V recursion u={u} (upper limit u-1, factor 2^(m-e))", True, r.holds()["u-1,2^(m-e)"])
        report.notes.setdefault("v_recursion", {})[tag] = rec


def identity_suite(report: RunReport) -> None:
    gb = closed.gauss_binom
    with report.phase("identities"):
        bad = [
            (n, i, q)
            for q in (2, 4, 16, 64)
            for n in range(1, 11)
            for i in range(1, n + 1)
            if gb(n, i, q) != gb(n - 1, i - 1, q) + q ** i * gb(n - 1, i, q)
        ]
        report.add("q-Pascal recurrence, n <= 10", [], bad)
        bad = [(n, i, q) for q in (2, 4, 16, 64) for n in range(11) for i in range(n + 1) if gb(n, i, q) != gb(n, n - i, q)]
        report.add("q-binomial symmetry, n <= 10", [], bad)
        bad = [(u, q, t) for u in range(6) for q in (4, 16, 64) for t in (1, 3, 7, -5) if not closed.qbinom_theorem_check(u, q, t)]
        report.add("q-binomial theorem, u <= 5", [], bad)
        bad = [(n, q) for n in range(1, 7) for q in (2, 4, 16, 64) if not closed.moebius_check(n, q)]
        report.add("q-binomial Moebius inversion, n <= 6", [], bad)
        bad = [(e, n) for e in range(1, 4) for n in range(8) if closed.sign_weight(e, n) != 2 ** (e * n * (n - 1))]
        report.add("4^(e C(n,2)) == 2^(e n(n-1))", [], bad)


def poly_independence(report: RunReport, params: CodeParams, alt_poly: int, threads: int | None = 1) -> None:
    p = validate(params)
    with report.phase("poly_independence"):
        a = scan(p, field_new(p.m), threads=threads).table.dumps()
        b = scan(p, field_new(p.m, alt_poly), threads=threads).table.dumps()
    report.add(f"{_tag(p)}: tables byte-identical under poly {alt_poly:#x}", True, a == b)


def thread_independence(report: RunReport, params: CodeParams, threads: int) -> None:
    p = validate(params)
    with report.phase("thread_independence"):
        a = scan(p, field_new(p.m), threads=1).table.dumps()
        b = scan(p, field_new(p.m), threads=threads).table.dumps()
    report.add(f"{_tag(p)}: tables identical for threads=1 and threads={threads}", True, a == b)


def desk_suite(threads: int | None = 1, fault: int = 0) -> RunReport:
    report = RunReport(params={"preset": "desk"})
    for m, d, e, k in DESK_CASES:
        tabs = {}
        for fam in FAMILIES:
            tabs[fam] = check_params(report, CodeParams(m, d, e, k, fam), threads=threads, fault=fault)
        family_invariance(report, tabs, f"m={m},d={d},e={e},k={k}")
    for fam in FAMILIES:
        v_suite(report, CodeParams(5, 1, 1, 3, fam))
    identity_suite(report)
    poly_independence(report, CodeParams(5, 1, 1, 3), ALT_POLY_5, threads=threads)
    thread_independence(report, CodeParams(5, 1, 1, 3), 2)
    return report
