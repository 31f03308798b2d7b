import dataclasses
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from constacyclic.code import CodeSpec, build_code, count_codes, family, field_for_q, is_constacyclic
from constacyclic.distance import weight_enumerator
from constacyclic.equivalence import (Criterion, apply_isometry, build_witness, check_bierbrauer,
                                      check_corollaries, check_equal_order, check_main_theorem,
                                      classify, classify_consistent, criteria, emit_dot, image_spec,
                                      main_theorem_solutions, witness_soundness)
from oracles import figure_classes


def test_main_theorem_examples():
    F7 = field_for_q(7)
    assert (F7.log(6), F7.log(5)) == (3, 5)
    assert check_main_theorem(7, 8, 6, 5) == (3, 2)
    assert check_main_theorem(5, 14, 1, 4) == (0, 2)
    assert check_main_theorem(5, 12, 2, 4) is None


def test_equal_order_and_bierbrauer():
    assert check_equal_order(5, 2, 3)
    assert check_equal_order(7, 2, 4)
    assert check_equal_order(7, 6, 6)
    assert not check_equal_order(5, 2, 4)
    assert all(check_bierbrauer(3, n, 2) for n in range(1, 40, 2) if n % 3)
    assert not check_bierbrauer(5, 14, 4)
    assert all(check_bierbrauer(5, n, 1) for n in (1, 2, 3, 4, 6))


def test_corollaries():
    c = check_corollaries(5, 21, 4, 2)
    assert c is not None and c.kind is Criterion.DIVIDES_ORDER and c.verify()
    c = check_corollaries(5, 14, 4, 1)
    assert c is not None and c.kind is Criterion.GCD_POWER and c.params["m"] == 2 and c.verify()
    c = check_corollaries(7, 5, 5, 1)
    assert c is not None and c.kind is Criterion.DIVIDES_ORDER
    assert check_corollaries(5, 12, 2, 4) is None


def test_witness_example():
    w = build_witness(5, 14, 1, 4)
    assert (w.s, w.m, w.gamma, w.theta, w.beta, w.beta_prime, w.i) == (0, 2, -1, 2, 7, 1, 1)
    assert w.scalar == 2
    assert w.verify()
    w = build_witness(7, 8, 6, 5)
    assert (w.i1 - 8 * w.i - w.i2) % 6 == 0


def test_identity_witness():
    w = build_witness(5, 12, 2, 2)
    ident = dataclasses.replace(w, i=0)
    assert ident.verify()
    C = build_code(CodeSpec.from_cosets(5, 12, 2, [1]))
    assert apply_isometry(ident, C) == C
    assert is_constacyclic(apply_isometry(w, C), 2)


def test_apply_isometry_cyclic_to_negacyclic():
    w = build_witness(5, 14, 1, 4)
    C = build_code(CodeSpec.from_cosets(5, 14, 1, [0]))
    img = apply_isometry(w, C)
    assert (img.n, img.k) == (14, 13)
    assert is_constacyclic(img, 4)
    assert not is_constacyclic(img, 1)
    assert img == build_code(image_spec(w, CodeSpec.from_cosets(5, 14, 1, [0])))


def test_apply_isometry_rejects_mismatch():
    w = build_witness(5, 14, 1, 4)
    with pytest.raises(ValueError):
        apply_isometry(w, build_code(CodeSpec.from_cosets(5, 12, 1, [0])))
    with pytest.raises(ValueError):
        apply_isometry(w, build_code(CodeSpec.from_cosets(5, 14, 4, [1])))


def test_weights_preserved_random_codes():
    rng = np.random.default_rng(7)
    for _ in range(100):
        q, n = [(5, 14), (7, 8), (4, 15), (3, 10)][rng.integers(4)]
        F = field_for_q(q)
        pairs = [(a, b) for a in range(1, q) for b in range(1, q) if check_main_theorem(F, n, a, b)]
        a, b = pairs[rng.integers(len(pairs))]
        fam = family(q, n, a)
        idx = [i for i in range(len(fam.cosets)) if rng.random() < 0.5]
        spec = fam.spec(idx)
        C = build_code(spec)
        if q ** min(C.k, n - C.k) > 1 << 12:
            continue
        img = apply_isometry(build_witness(q, n, a, b), C)
        assert weight_enumerator(C) == weight_enumerator(img)


@pytest.mark.parametrize("q", [8, 9])
def test_witness_soundness_larger_fields(q):
    F = field_for_q(q)
    for n in range(1, 13):
        if gcd(n, q) != 1:
            continue
        for a in range(1, q):
            for b in range(1, q):
                if check_main_theorem(F, n, a, b):
                    rep = witness_soundness(q, n, a, b, max_cosets=3)
                    assert rep["failures"] == 0, (n, a, b, rep["failed"])


@pytest.mark.parametrize("q,n", [(5, 12), (5, 14), (7, 8), (7, 9), (4, 15), (3, 10), (9, 8)])
def test_family_bijection(q, n):
    """All defining sets: images are distinct and as many as the target family has codes."""
    F = field_for_q(q)
    for a in range(1, q):
        for b in range(1, q):
            if not check_main_theorem(F, n, a, b):
                continue
            rep = witness_soundness(q, n, a, b, max_cosets=None, we_budget=0)
            assert rep["failures"] == 0
            assert rep["distinct_images"] == rep["checked"] == count_codes(q, n, b)
            w = build_witness(q, n, a, b)
            specs = {image_spec(w, s) for s in family(q, n, a).all_specs()}
            assert len(specs) == count_codes(q, n, b)


def test_bierbrauer_subsumed():
    for q in (2, 3, 4, 5, 7, 8, 9):
        F = field_for_q(q)
        for n in range(1, 41):
            if gcd(n, q) != 1:
                continue
            for a in range(1, q):
                if check_bierbrauer(F, n, a):
                    assert check_main_theorem(F, n, 1, a) is not None, (q, n, a)


def test_beta_theta_coprime():
    for q in (3, 4, 5, 7, 8, 9):
        F = field_for_q(q)
        for n in range(1, 41):
            if gcd(n, q) != 1:
                continue
            for a in range(1, q):
                for b in range(1, q):
                    for s, m in main_theorem_solutions(F, n, a, b):
                        w = build_witness(F, n, a, b, s=s)
                        assert gcd(w.beta, w.theta) == 1 and w.verify()


def test_beta_not_coprime_to_q_minus_1():
    # n = 8, q = 5: beta = 2 shares a factor with q - 1 = 4, yet a witness exists
    w = build_witness(5, 8, 4, 4)
    assert w.beta == 2 and gcd(w.beta, 4) == 2 and w.verify()


@pytest.mark.parametrize("q,n,expected", [
    (5, 63, [[1, 2, 3, 4]]),
    (5, 14, [[1, 4], [2, 3]]),
    (5, 12, [[1], [2, 3], [4]]),
    (3, 10, [[1], [2]]),
    (7, 5, [[1, 2, 3, 4, 5, 6]]),
])
def test_classify_examples(q, n, expected):
    g = classify(q, n)
    assert g.classes == expected
    assert classify_consistent(g)


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_classify_matches_figures(q):
    for n in range(1, 61):
        if gcd(n, q) == 1:
            assert classify(q, n).classes == figure_classes(q, n), n


@given(st.sampled_from([3, 4, 5, 7, 8, 9]), st.integers(1, 60))
@settings(max_examples=80, deadline=None)
def test_criteria_verify_and_counts(q, n):
    if gcd(n, q) != 1:
        return
    F = field_for_q(q)
    g = classify(F, n)
    for e in g.edges:
        assert e.verify()
    assert classify_consistent(g)


def test_criteria_listing():
    kinds = {c.kind for c in criteria(5, 14, 1, 4)}
    assert kinds == {Criterion.MAIN, Criterion.GCD_POWER}
    assert criteria(5, 12, 2, 4) == []


def test_emit_dot():
    dot = emit_dot(classify(7, 8))
    assert dot.startswith('graph "GF(7) n=8"')
    assert dot.count("subgraph cluster_") == 2
    assert 'g0 -- g2 [label="Bierbrauer' in dot
    assert "gcd(8,ord(2))=gcd(8,3)=1" in dot
    assert dot.rstrip().endswith("}")
    single = emit_dot(classify(7, 5))
    assert single.count("subgraph cluster_") == 1


def test_gf4_labels_in_dot():
    dot = emit_dot(classify(4, 5))
    assert 'label="w, w^2"' in dot
