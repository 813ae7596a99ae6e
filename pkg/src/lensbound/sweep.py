"""Exhaustive sweeps over coprime pairs (p, q), 2 <= p <= pmax.

Each sweep maps one value of p to a row of integer counts plus a list of
counterexamples.  Rows are computed in chunks (optionally in worker
processes) and merged by p, so the aggregate never depends on ``jobs``.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, isqrt

from lensbound.farey import bfs_minimal_path, minimal_path
from lensbound.filling import sum_qhb_answer, sum_qhb_filling
from lensbound.homology import chain_linking_matrix
from lensbound.rational import LensSpace, neg_cf
from lensbound.tight import count_tight_formula, enumerate_tight, is_universally_tight, sphere_factor_witnesses


def totient(n: int) -> int:
    out, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            out -= out // f
        f += 1
    if m > 1:
        out -= out // m
    return out


def _qs(p):
    return (q for q in range(1, p) if gcd(p, q) == 1)


def _row_sum_qhb(p):
    m = isqrt(p)
    if m * m != p:
        # the answer depends on p alone: p is not m^2, so neither summand passes
        return {"instances": totient(p), "yes": 0}, []
    yes, bad = 0, []
    for q in _qs(p):
        verdict = sum_qhb_filling(p, q)
        if verdict.answer != sum_qhb_answer(p, q):
            raise AssertionError(f"fast and traced answers differ at ({p},{q})")
        if verdict.answer:
            yes += 1
            bad.append((p, q))
    return {"instances": totient(p), "yes": yes}, bad


def _row_tight_count(p):
    n = mismatches = structures = 0
    bad = []
    for q in _qs(p):
        lens = LensSpace(p, q)
        found = enumerate_tight(lens)
        n += 1
        structures += len(found)
        ut = sum(map(is_universally_tight, found))
        if len(found) != count_tight_formula(lens) or ut != (1 if len(found) == 1 else 2):
            mismatches += 1
            bad.append((p, q))
    return {"instances": n, "structures": structures, "mismatches": mismatches}, bad


def _row_path_bfs(p):
    n = mismatches = 0
    bad = []
    for q in _qs(p):
        lens = LensSpace(p, q)
        n += 1
        if minimal_path(lens) != bfs_minimal_path(lens):
            mismatches += 1
            bad.append((p, q))
    return {"instances": n, "mismatches": mismatches}, bad


def _row_menke(p):
    n = hits = 0
    bad = []
    for q in _qs(p):
        n += 1
        w = sphere_factor_witnesses(LensSpace(p, q), exhaustive=True)
        if w:
            hits += len(w)
            bad.append((p, q))
    return {"instances": n, "violations": hits}, bad


def _row_chain_det(p):
    n = 0
    bad = []
    for q in _qs(p):
        n += 1
        if abs(chain_linking_matrix(neg_cf(p, q)).det()) != p:
            bad.append((p, q))
    return {"instances": n, "mismatches": len(bad)}, bad


def _row_lisca(p):
    from lensbound.filling import lisca_qhb_filling

    n = yes = 0
    for q in _qs(p):
        n += 1
        yes += lisca_qhb_filling(LensSpace(p, q)).answer
    return {"instances": n, "yes": yes}, []


@dataclass(frozen=True)
class SweepKind:
    row: object
    violation_key: str
    description: str


SWEEPS = {
    "sum-qhb": SweepKind(_row_sum_qhb, "yes", "rational ball fillings of L(p,q) # L(p,p-q)"),
    "tight-count": SweepKind(_row_tight_count, "mismatches", "enumeration vs product formula"),
    "path-bfs": SweepKind(_row_path_bfs, "mismatches", "greedy path vs breadth-first oracle"),
    "menke-nosphere": SweepKind(_row_menke, "violations", "meridional candidates hitting 0 or -p/q"),
    "chain-det": SweepKind(_row_chain_det, "mismatches", "|det| of the linear plumbing vs p"),
    "lisca": SweepKind(_row_lisca, "", "lens spaces with a rational ball filling of xi_std"),
}


@dataclass
class SweepReport:
    name: str
    pmax: int
    rows: list[tuple[int, dict]] = field(default_factory=list)
    counterexamples: list[tuple[int, int]] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def totals(self) -> dict:
        out: dict[str, int] = {}
        for _, row in self.rows:
            for k, v in row.items():
                out[k] = out.get(k, 0) + v
        return out

    @property
    def violations(self) -> int:
        key = SWEEPS[self.name].violation_key
        return self.totals.get(key, 0) if key else 0

    def aggregate(self) -> dict:
        """Everything except timing; identical for any number of workers."""
        return {
            "sweep": self.name,
            "pmax": str(self.pmax),
            "totals": {k: str(v) for k, v in sorted(self.totals.items())},
            "counterexamples": [f"{p},{q}" for p, q in self.counterexamples],
        }

    def to_json(self) -> dict:
        out = self.aggregate()
        out["wall_time_ms"] = str(round(self.wall_time * 1000))
        return out

    def summary(self) -> str:
        totals = " ".join(f"{k}={v}" for k, v in sorted(self.totals.items()))
        return f"sweep {self.name} pmax={self.pmax} {totals} counterexamples={len(self.counterexamples)} time={self.wall_time:.2f}s"

    def to_tsv(self) -> str:
        keys = sorted({k for _, row in self.rows for k in row})
        lines = ["\t".join(["p"] + keys)]
        lines += ["\t".join([str(p)] + [str(row.get(k, 0)) for k in keys]) for p, row in self.rows]
        return "\n".join(lines) + "\n"


def _run_chunk(args):
    name, ps = args
    row = SWEEPS[name].row
    return [(p, *row(p)) for p in ps]


def _chunks(pmax: int, jobs: int):
    ps = list(range(2, pmax + 1))
    if jobs <= 1:
        return [ps]
    # interleave so every worker sees a mix of small and large p
    n = jobs * 4
    return [ps[i::n] for i in range(n) if ps[i::n]]


def default_jobs() -> int:
    return max(1, int(os.environ.get("LENSBOUND_JOBS", "1")))


def sweep(name: str, pmax: int, jobs: int = 1) -> SweepReport:
    if name not in SWEEPS:
        raise KeyError(name)
    if pmax < 2 or jobs < 1:
        raise ValueError("need pmax >= 2 and jobs >= 1")
    t0 = time.perf_counter()
    tasks = [(name, ps) for ps in _chunks(pmax, jobs)]
    if jobs == 1:
        results = [_run_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_chunk, tasks))
    merged = sorted((r for chunk in results for r in chunk), key=lambda r: r[0])
    report = SweepReport(name, pmax)
    for p, row, bad in merged:
        report.rows.append((p, row))
        report.counterexamples.extend(bad)
    report.wall_time = time.perf_counter() - t0
    return report
