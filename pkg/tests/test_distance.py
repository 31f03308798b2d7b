import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from constacyclic.code import CodeSpec, LinearCode, build_code, family, field_for_q, full_space, zero_code
from constacyclic.distance import (BudgetExceeded, WeightEnumerator, brute_distance, bz_distance,
                                   macwilliams, minimum_distance, weight_enumerator)


def naive_weights(C):
    """Enumerate every message with itertools, independent of the numpy span tables."""
    F = C.field
    counts = [0] * (C.n + 1)
    for msg in itertools.product(range(F.q), repeat=C.k):
        w = C.encode(np.array(msg)) if C.k else np.zeros(C.n, dtype=np.int64)
        counts[int(np.count_nonzero(w))] += 1
    return counts


@pytest.mark.parametrize("q,n,a,reps", [(3, 10, 2, [5]), (4, 9, 2, [1]), (5, 6, 4, [1]), (2, 15, 1, [1, 3])])
def test_weight_enumerator_matches_naive(q, n, a, reps):
    C = build_code(CodeSpec.from_cosets(q, n, a, reps))
    W = weight_enumerator(C, method="direct")
    assert list(W.counts) == naive_weights(C)
    assert weight_enumerator(C, method="dual") == W


def test_hamming_code():
    C = build_code(CodeSpec.from_text("2:7:0:1,2,4"))
    assert (C.n, C.k) == (7, 4)
    assert brute_distance(C).value == 3
    assert bz_distance(C).value == 3
    W = weight_enumerator(C)
    assert W.counts == (1, 0, 0, 7, 7, 0, 0, 1)


def test_macwilliams_identity():
    C = build_code(CodeSpec.from_text("3:10:1:5,15"))
    W = weight_enumerator(C, method="direct")
    Wd = weight_enumerator(C.dual(), method="direct")
    assert macwilliams(W, C.n, C.k, 3) == Wd


def test_trivial_codes():
    F = field_for_q(3)
    res = brute_distance(zero_code(F, 5))
    assert (res.value, res.status) == (6, "exact")
    assert bz_distance(full_space(F, 5)).value == 1


def test_budget():
    C = build_code(CodeSpec.from_cosets(4, 39, 2, [10, 19]))
    with pytest.raises(BudgetExceeded):
        brute_distance(C, budget=1000)


@pytest.mark.parametrize("q,n,a", [(3, 10, 2), (4, 9, 2), (5, 8, 2), (7, 6, 3), (2, 21, 1), (3, 13, 1)])
def test_bz_agrees_with_brute(q, n, a):
    for spec in family(q, n, a).all_specs():
        C = build_code(spec)
        if C.k == 0 or q ** C.k > 1 << 14:
            continue
        b = brute_distance(C)
        z = bz_distance(C)
        assert (b.value, z.value, z.status) == (b.value, b.value, "exact"), spec.to_text()
        assert np.count_nonzero(z.witness) == z.value
        assert C.contains_word(z.witness)


@given(st.sampled_from([3, 4, 5]), st.integers(2, 5), st.integers(5, 10), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_bz_random_codes(q, k, n, seed):
    F = field_for_q(q)
    G = np.random.default_rng(seed).integers(0, q, (k, n))
    C = LinearCode(F, G)
    if C.k == 0:
        return
    assert bz_distance(C).value == brute_distance(C).value


def test_target_early_exit():
    C = build_code(CodeSpec.from_cosets(4, 39, 2, [10, 19]))
    lo = bz_distance(C, target=5)
    assert lo.status == "lower" and lo.value >= 5
    hi = bz_distance(C, target=9)
    assert hi.status == "upper" and hi.value < 9


def test_checkpoint_resume(tmp_path):
    C = build_code(CodeSpec.from_text("3:13:0:1,3,9"))
    path = tmp_path / "bz.jsonl"
    first = bz_distance(C, log_path=str(path))
    lines = path.read_text().splitlines()
    assert lines and all(json.loads(s) for s in lines)
    again = bz_distance(C, log_path=str(path))
    assert again.value == first.value
    assert again.codewords <= first.codewords


def test_minimum_distance_caches():
    C = build_code(CodeSpec.from_text("3:10:1:5,15"))
    res = minimum_distance(C)
    assert C.d == res.value == 2 and C.d_status == "exact"
    assert C.params() == "[10,8,2]_3"


def test_threaded_matches_serial():
    C = build_code(CodeSpec.from_cosets(4, 21, 1, [1, 3]))
    assert bz_distance(C, workers=2).value == bz_distance(C).value
