"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines appear in the log
even without ``-s``.
"""

import json
import random
from math import gcd

import pytest

from lensbound import ConnectedSum, LensSpace, Slope, neg_cf
from lensbound.cli import dumps, run
from lensbound.farey import ZERO, bfs_minimal_path, minimal_path
from lensbound.filling import embeds_s4_pair, embeds_s4_sum, lisca_qhb_filling, sum_qhb_filling
from lensbound.homology import (
    IntMatrix,
    check_snf,
    chain_linking_matrix,
    cokernel,
    e8_matrix,
    h1_of_lens_sum,
    hantzsche_double_test,
    is_homology_sphere,
    smith_normal_form,
)
from lensbound.rational import coprime_pairs
from lensbound.surgery import (
    fickle_certificate,
    fs_conjecture_coefficient,
    plumbing_certificate,
    presentation_matrix,
    slice_surgery_certificate,
    stein_contractible_verdict,
)
from lensbound.sweep import sweep
from lensbound.tight import count_tight_formula, enumerate_tight, from_signs, menke_candidates, mixed_vertices


@pytest.fixture
def report(capsys):
    def emit(number, title, failures, detail=""):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title} {detail}".rstrip())
        assert not failures, failures[:5]

    return emit


def test_criterion_1_sum_theorem_sweep(report):
    r = sweep("sum-qhb", 10000)
    failures = [f"yes at {pq}" for pq in r.counterexamples]
    if r.totals["yes"]:
        failures.append(f"{r.totals['yes']} yes verdicts")
    texts = [s.text for s in sum_qhb_filling(4, 1).derivation]
    if not any("3 cannot be written as 2k-1" in t for t in texts):
        failures.append("(4,1) derivation lacks the 2k-1 step")
    report(1, "sum-qhb sweep to 10000", failures, f"({r.totals['instances']} pairs, {r.wall_time:.1f}s)")


def test_criterion_2_classification_count(report):
    failures = []
    n = 0
    for p, q in coprime_pairs(300):
        lens = LensSpace(p, q)
        got = len(enumerate_tight(lens))
        want = 1
        for a in neg_cf(p, q):
            want *= abs(a + 1)
        n += 1
        if got != want or count_tight_formula(lens) != want:
            failures.append((p, q, got, want))
    for p in range(2, 51):
        if len(enumerate_tight(LensSpace(p, 1))) != p - 1:
            failures.append((p, 1))
    report(2, "enumeration equals product formula, p <= 300", failures, f"({n} pairs)")


def test_criterion_3_geodesic_oracle(report):
    failures = []
    n = 0
    for p, q in coprime_pairs(200):
        lens = LensSpace(p, q)
        path = minimal_path(lens)
        n += 1
        if path != bfs_minimal_path(lens):
            failures.append((p, q, "bfs"))
        coeffs = neg_cf(p, q)
        if len(path) - 1 != sum(-a for a in coeffs) - 2 * len(coeffs) + 2:
            failures.append((p, q, "edge count"))
    report(3, "greedy path equals BFS path, p <= 200", failures, f"({n} pairs)")


def test_criterion_4_menke_no_sphere(report):
    r = sweep("menke-nosphere", 200)
    failures = [f"violation at {pq}" for pq in r.counterexamples]
    t = from_signs(LensSpace(8, 3), "+-")
    cands = [set(menke_candidates(t, v)) for v in mixed_vertices(t)]
    if cands != [{Slope.inf(), Slope(-3, 1)}]:
        failures.append(f"L(8,3) candidates {cands}")
    report(4, "meridional candidates avoid 0 and -p/q, p <= 200", failures, f"({r.totals['instances']} pairs)")


def test_criterion_5_homology_engine(report):
    failures = []
    for p, q in coprime_pairs(500):
        if abs(chain_linking_matrix(neg_cf(p, q)).det()) != p:
            failures.append(("chain", p, q))
    rng = random.Random(5)
    for _ in range(1000):
        m = IntMatrix.of([[rng.randint(-20, 20) for _ in range(5)] for _ in range(5)])
        U, D, V = smith_normal_form(m)
        try:
            check_snf(m, U, D, V)
        except Exception as exc:  # noqa: BLE001
            failures.append(("snf", m.rows, str(exc)))
    if not cokernel(e8_matrix()).is_trivial:
        failures.append("E8 cokernel")
    for m in range(-50, 51):
        if not cokernel(IntMatrix.of([[0, 1], [1, -m]])).is_trivial:
            failures.append(("1/m", m))
    report(5, "chain determinants, SNF, E8, 1/m presentations", failures)


def test_criterion_6_embedding_consistency(report):
    failures = []
    n = 0
    for p in range(2, 101):
        qs = [q for q in range(1, p) if gcd(p, q) == 1]
        for q in qs:
            a = LensSpace(p, q)
            for q2 in qs:
                b = LensSpace(p, q2)
                n += 1
                s = ConnectedSum.of([a, b])
                pair, whole = embeds_s4_pair(a, b).answer, embeds_s4_sum(s).answer
                if pair != whole:
                    failures.append((p, q, q2))
                if whole and hantzsche_double_test(h1_of_lens_sum(s)) is None:
                    failures.append(("hantzsche", p, q, q2))
    spots = [
        (embeds_s4_sum(ConnectedSum.parse("3,1#3,2")).answer, True),
        (embeds_s4_sum(ConnectedSum.parse("4,1#4,3")).answer, False),
        (embeds_s4_sum(ConnectedSum.parse("5,2")).answer, False),
        (embeds_s4_sum(ConnectedSum.parse("5,2#5,2")).answer, True),
    ]
    failures += [("spot", i) for i, (got, want) in enumerate(spots) if got != want]
    report(6, "pair and sum criteria agree, p <= 100", failures, f"({n} pairs)")


def test_criterion_7_lisca_spot_values(report):
    failures = []
    for lens, want in [((4, 1), (2, 1)), ((9, 5), (3, 2)), ((9, 2), (3, 1)), ((9, 4), None), ((4, 3), None)]:
        v = lisca_qhb_filling(LensSpace(*lens))
        got = (v.witnesses[0]["m"], v.witnesses[0]["h"]) if v.answer else None
        if got != want:
            failures.append((lens, got, want))
    steps = [s.text for s in lisca_qhb_filling(LensSpace(4, 3)).derivation]
    if not any("gcd(2,2) = 2 != 1" in s for s in steps):
        failures.append("L(4,3) coprimality step missing")
    report(7, "Lisca spot values", failures)


def test_criterion_8_certificate_coherence(report):
    failures = []
    certs = []
    for m in range(-30, 31):
        if m:
            certs += [slice_surgery_certificate(m), stein_contractible_verdict(m)]
            certs += plumbing_certificate(m, m + 1, 1) + plumbing_certificate(m, m - 1, -1)
    for s in range(-20, 21):
        for sign in (1, -1):
            certs.append(fickle_certificate(s, sign))
            for k in range(1, 6):
                c = fs_conjecture_coefficient(k, s, sign)
                certs.append(c)
                if (c.status == "conjecture") != (k >= 2):
                    failures.append(("status", k, s, sign))
            if fickle_certificate(s, sign).coefficient != fs_conjecture_coefficient(1, s, sign).coefficient:
                failures.append(("fickle vs fs", s, sign))
    for c in certs:
        if not (c.homology_check and is_homology_sphere(presentation_matrix(c.coefficient))):
            failures.append(("homology", str(c.coefficient)))
    for m in range(-30, 31):
        if m:
            want = "stein_contractible" if m > 0 else "not_fillable"
            if stein_contractible_verdict(m).conclusion != want:
                failures.append(("stein", m))
    report(8, "certificate coherence", failures, f"({len(certs)} certificates)")


def test_criterion_9_determinism(report, capsys):
    failures = []
    for name, pmax in [("sum-qhb", 2000), ("tight-count", 80), ("menke-nosphere", 60), ("path-bfs", 60), ("chain-det", 80)]:
        a, b = sweep(name, pmax, jobs=1), sweep(name, pmax, jobs=8)
        if a.aggregate() != b.aggregate() or a.rows != b.rows:
            failures.append(name)
    for argv in (["tight", "8,3"], ["sum-qhb", "4", "1"], ["snf", "--matrix", "-"], ["cert", "fs", "--k", "2", "--s", "1", "--sign", "1"]):
        if argv[0] == "snf":
            import io
            import sys

            old, sys.stdin = sys.stdin, io.StringIO(e8_matrix().to_text())
            try:
                code = run(argv + ["--json"])
            finally:
                sys.stdin = old
        else:
            code = run(argv + ["--json"])
        out = capsys.readouterr().out
        if code != 0 or dumps(json.loads(out)) + "\n" != out:
            failures.append(("json", argv))
    report(9, "jobs 1 vs 8 aggregates and JSON round trip", failures)
