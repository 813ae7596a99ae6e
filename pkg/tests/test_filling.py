from collections import Counter
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lensbound import ConnectedSum, InputError, LensSpace, lens_reverse
from lensbound.filling import (
    embeds_s4_pair,
    embeds_s4_sum,
    lisca_qhb_filling,
    punctured_embeds_r4,
    punctured_verdict,
    sum_qhb_answer,
    sum_qhb_filling,
)
from lensbound.homology import h1_of_lens_sum, hantzsche_double_test
from lensbound.rational import coprime_pairs

from conftest import lens_spaces


def lisca_brute(p, q):
    # scan every (m, h) with m*h - 1 reduced mod p hitting q or q^-1
    targets = {q, pow(q, -1, p)}
    return any(
        m * m == p and gcd(m, h) == 1 and (m * h - 1) % p in targets
        for m in range(1, p + 1)
        for h in range(1, 2 * m + 1)
    )


def oriented_class(lens):
    return (lens.p, min(lens.q, pow(lens.q, -1, lens.p)))


def donald_brute(summands):
    """Try every half of the summands as Y."""
    n = len(summands)
    if n % 2:
        return False
    whole = Counter(oriented_class(x) for x in summands)
    for idx in combinations(range(n), n // 2):
        y = [summands[i] for i in idx]
        both = Counter(oriented_class(x) for x in y) + Counter(oriented_class(lens_reverse(x)) for x in y)
        if both == whole:
            return True
    return False


@pytest.mark.parametrize(
    "lens,answer,witness",
    [((4, 1), True, (2, 1)), ((9, 5), True, (3, 2)), ((9, 2), True, (3, 1)), ((9, 4), False, None), ((4, 3), False, None)],
)
def test_lisca_spot_values(lens, answer, witness):
    v = lisca_qhb_filling(LensSpace(*lens))
    assert v.answer is answer
    if witness:
        assert (v.witnesses[0]["m"], v.witnesses[0]["h"]) == witness
    else:
        assert v.witnesses == []


def test_lisca_l43_records_coprimality_failure():
    steps = [s.text for s in lisca_qhb_filling(LensSpace(4, 3)).derivation]
    assert any("gcd(2,2) = 2" in s for s in steps)


def test_lisca_matches_brute_force():
    for p, q in coprime_pairs(150):
        assert lisca_qhb_filling(LensSpace(p, q)).answer == lisca_brute(p, q), (p, q)


@given(lens_spaces(pmax=2000))
def test_lisca_answer_invariant_under_inverse(lens):
    inv = LensSpace(lens.p, lens.q_inverse)
    assert lisca_qhb_filling(lens).answer == lisca_qhb_filling(inv).answer


def test_sum_theorem_small_range():
    for p, q in coprime_pairs(200):
        assert sum_qhb_filling(p, q).answer is False
        assert sum_qhb_answer(p, q) is False


def test_sum_qhb_p4_derivation():
    v = sum_qhb_filling(4, 1)
    assert v.answer is False
    texts = [s.text for s in v.derivation]
    assert any("3 cannot be written as 2k-1" in t for t in texts)
    assert v.to_json()["answer"] == "no"


def test_sum_qhb_rejects_bad_input():
    with pytest.raises(InputError):
        sum_qhb_filling(6, 3)
    with pytest.raises(InputError):
        sum_qhb_filling(1, 0)


def test_pair_criterion_examples():
    assert embeds_s4_pair(LensSpace(3, 1), LensSpace(3, 2)).answer
    assert not embeds_s4_pair(LensSpace(4, 1), LensSpace(4, 3)).answer
    assert not embeds_s4_pair(LensSpace(5, 2), LensSpace(7, 5)).answer
    # L(5,2) = L(5,3) up to orientation reversal only: -L(5,2) = L(5,3)
    assert embeds_s4_pair(LensSpace(5, 2), LensSpace(5, 3)).answer
    assert embeds_s4_pair(LensSpace(7, 2), LensSpace(7, 3)).answer  # 3 = 5^-1 mod 7
    assert not embeds_s4_pair(LensSpace(7, 2), LensSpace(7, 2)).answer


def test_donald_examples():
    assert not embeds_s4_sum(ConnectedSum.parse("5,2")).answer
    v = embeds_s4_sum(ConnectedSum.parse("5,2#5,2"))
    assert v.answer and v.witnesses == [{"Y": "5,2"}]
    assert embeds_s4_sum(ConnectedSum.parse("3,1#3,2")).answer
    assert not embeds_s4_sum(ConnectedSum.parse("4,1#4,3")).answer
    assert embeds_s4_sum(ConnectedSum.parse("4,1#4,3"), strict_odd=False).answer
    assert embeds_s4_sum(ConnectedSum.parse("1,0")).answer


summand = st.sampled_from([LensSpace(p, q) for p, q in coprime_pairs(9) if p % 2])


@given(st.lists(summand, max_size=6))
@settings(max_examples=300)
def test_donald_matches_brute_force(xs):
    s = ConnectedSum.of(xs)
    v = embeds_s4_sum(s)
    assert v.answer == donald_brute(list(s))
    if v.answer:
        assert hantzsche_double_test(h1_of_lens_sum(s)) is not None


def test_punctured():
    assert punctured_embeds_r4(LensSpace(5, 2))
    assert not punctured_embeds_r4(LensSpace(6, 1))
    assert punctured_embeds_r4(LensSpace(1, 0))
    assert punctured_verdict(LensSpace(9, 4)).witnesses == [{"p": 9}]


def test_verdict_needs_witness_for_yes():
    from lensbound.filling import Verdict

    with pytest.raises(ValueError):
        Verdict(True)
