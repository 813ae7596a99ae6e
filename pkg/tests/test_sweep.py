from math import gcd

import pytest

from lensbound.sweep import SWEEPS, default_jobs, sweep, totient


def test_totient():
    for n in range(1, 300):
        assert totient(n) == sum(1 for k in range(1, n + 1) if gcd(n, k) == 1)


@pytest.mark.parametrize("name", sorted(SWEEPS))
def test_small_sweeps_are_clean(name):
    r = sweep(name, 30)
    assert r.counterexamples == []
    assert r.violations == 0
    assert r.totals["instances"] == sum(totient(p) for p in range(2, 31))


@pytest.mark.parametrize("name", ["tight-count", "sum-qhb", "menke-nosphere"])
def test_jobs_do_not_change_aggregate(name):
    assert sweep(name, 40, jobs=1).aggregate() == sweep(name, 40, jobs=3).aggregate()


def test_lisca_sweep_counts_yes():
    # p = 4: q = 1; p = 9: q = 2, 5
    assert sweep("lisca", 9).totals["yes"] == 3


def test_report_tsv():
    r = sweep("chain-det", 6)
    lines = r.to_tsv().splitlines()
    assert lines[0] == "p\tinstances\tmismatches"
    assert lines[1:] == ["2\t1\t0", "3\t2\t0", "4\t2\t0", "5\t4\t0", "6\t2\t0"]


def test_bad_arguments(monkeypatch):
    with pytest.raises(KeyError):
        sweep("nope", 10)
    with pytest.raises(ValueError):
        sweep("chain-det", 1)
    monkeypatch.setenv("LENSBOUND_JOBS", "3")
    assert default_jobs() == 3
