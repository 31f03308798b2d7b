"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
happen; they are also collected in the terminal summary.
"""

import pathlib
import time
from math import gcd

import numpy as np

from constacyclic.code import (CodeSpec, LinearCode, build_code, count_codes, family, field_for_q,
                               hermitian_dual, hermitian_dual_defining_set)
from constacyclic.constructions import (auxiliary_code, construction_x, construction_xx,
                                        hermitian_dual_containing, quantum_from_params,
                                        quantum_params, shorten)
from constacyclic.distance import DistanceResult, brute_distance, bz_distance, minimum_distance
from constacyclic.equivalence import (check_bierbrauer, check_main_theorem, classify,
                                      witness_soundness)
from constacyclic.poly import format_poly
from constacyclic.search import SearchJob, enumerate_specs
from oracles import figure_classes, naive_field_distance

ROOT = pathlib.Path(__file__).resolve().parents[1]


def _factors(q, n, a):
    fam = family(q, n, a)
    return sorted(format_poly(fam.minpoly(i)) for i in range(len(fam.cosets)))


def _exact(C, d):
    C.distance = DistanceResult(d, "exact", lower=d, upper=d)
    return C


# 1 -------------------------------------------------------------------------

def test_01_counting_and_factorization(criterion):
    with criterion(1, "code counts and factorizations of x^10 - 1, x^10 - 2 over GF(3)", budget=1.0) as c:
        assert count_codes(3, 10, 1) == 16
        assert count_codes(3, 10, 2) == 8
        assert _factors(3, 10, 1) == sorted(["x + 1", "x + 2", "x^4 + x^3 + x^2 + x + 1",
                                             "x^4 + 2x^3 + x^2 + 2x + 1"])
        assert _factors(3, 10, 2) == sorted(["x^2 + 1", "x^4 + x^3 + 2x + 1", "x^4 + 2x^3 + x + 1"])
        c.detail = "16 cyclic / 8 negacyclic; factor multisets match"


# 2 -------------------------------------------------------------------------

def test_02_inequivalence_counts(criterion):
    with criterion(2, "2- and 4-constacyclic counts at n=12 over GF(5)", budget=1.0) as c:
        assert count_codes(5, 12, 2) == 8
        assert count_codes(5, 12, 4) == 64
        assert check_main_theorem(5, 12, 2, 4) is None
        c.detail = "8 vs 64"


# 3 -------------------------------------------------------------------------

def test_03_witness_soundness_sweep(criterion):
    with criterion(3, "witness sweep q in {3,4,5,7}, n <= 36, <= 2 cosets", budget=300.0) as c:
        checked = compared = pairs = 0
        failures = []
        for q in (3, 4, 5, 7):
            F = field_for_q(q)
            for n in range(1, 37):
                if gcd(n, q) != 1:
                    continue
                for a in range(1, q):
                    codes = None
                    for b in range(1, q):
                        if check_main_theorem(F, n, a, b) is None:
                            continue
                        if codes is None:
                            codes = [(s, build_code(s)) for s in family(q, n, a).all_specs(2)]
                        rep = witness_soundness(q, n, a, b, codes=codes)
                        pairs += 1
                        checked += rep["checked"]
                        compared += rep["weight_enumerators"]
                        failures += [(q, n, a, b, s) for s in rep["failed"]]
        c.detail = (f"{pairs} pairs, {checked} code images, {len(failures)} failures, "
                    f"{compared} weight enumerators compared directly")
        assert not failures, failures[:5]
        assert checked > 5000


# 4 -------------------------------------------------------------------------

def test_04_bierbrauer_subsumption(criterion):
    with criterion(4, "gcd(n, ord(a)) = 1 implies the main criterion, q <= 7, n <= 40", budget=10.0) as c:
        hits = 0
        for q in (2, 3, 4, 5, 7):
            F = field_for_q(q)
            for n in range(1, 41):
                if gcd(n, q) != 1:
                    continue
                for a in range(1, q):
                    if check_bierbrauer(F, n, a):
                        # cyclic family as the source, a as the target
                        assert check_main_theorem(F, n, 1, a) is not None, (q, n, a)
                        hits += 1
        c.detail = f"{hits} (q, n, a) triples"


# 5 -------------------------------------------------------------------------

SAMPLES = {3: [5, 10, 7, 14], 4: [5, 9, 15, 21], 5: [63, 14, 12, 3, 6, 8], 7: [5, 8, 9, 12, 4, 10, 15]}


def test_05_classification_graphs(criterion):
    with criterion(5, "classification classes match the published figures", budget=30.0) as c:
        total = 0
        for q, ns in SAMPLES.items():
            for n in ns:
                assert classify(q, n).classes == figure_classes(q, n), (q, n)
                total += 1
        for q in (3, 4, 5, 7):
            for n in range(1, 81):
                if gcd(n, q) == 1:
                    assert classify(q, n).classes == figure_classes(q, n), (q, n)
                    total += 1
        assert classify(5, 63).classes == [[1, 2, 3, 4]]
        assert classify(5, 14).classes == [[1, 4], [2, 3]]
        c.detail = f"{total} (q, n) graphs"


# 6 -------------------------------------------------------------------------

def test_06_construction_x_pipeline(criterion):
    with criterion(6, "[39,27,7]_4 + [39,24,9]_4 -> [42,27,9]_4 -> [41,26,9]_4, [40,25,9]_4",
                   budget=4 * 3600.0) as c:
        C1 = build_code(CodeSpec.from_cosets(4, 39, 2, [10, 19]))
        C2 = build_code(CodeSpec.from_cosets(4, 39, 2, [10, 13, 19]))
        C3 = auxiliary_code(4, 3, 3)

        # bound check from known distances, no enumeration
        t0 = time.perf_counter()
        E = construction_x(_exact(C1.copy(), 7), _exact(C2.copy(), 9), C3)
        bound_time = time.perf_counter() - t0
        assert (E.n, E.k, E.distance.value) == (42, 27, 8)
        assert bound_time < 1.0

        r1, r2 = bz_distance(C1), bz_distance(C2)
        assert (r1.value, r1.status, r2.value, r2.status) == (7, "exact", 9, "exact")
        C1.distance, C2.distance = r1, r2
        E = construction_x(C1, C2, C3)
        assert E.distance.value == 8
        rE = bz_distance(E)
        assert (rE.value, rE.status) == (9, "exact")
        E.distance = rE
        out = [f"[42,27,{rE.value}]"]
        for pos, params in (([41], (41, 26)), ([40, 41], (40, 25))):
            S = shorten(E, pos)
            assert (S.n, S.k) == params
            rS = bz_distance(S, target=9)
            assert (rS.value, rS.status) == (9, "exact")
            out.append(f"[{S.n},{S.k},{rS.value}]")
        c.detail = f"bound d>=8 in {bound_time * 1e3:.1f} ms; exact " + ", ".join(out) + \
            f"; {rE.codewords:.3g} codewords for n=42"


# 7 -------------------------------------------------------------------------

def _random_code(rng, F, n, k):
    return LinearCode(F, rng.integers(0, F.q, (k, n)), n=n)


def _with_d(C):
    d = naive_field_distance(C.field, C.G, C.n)
    return _exact(C, d)


def test_07_construction_bounds(criterion):
    with criterion(7, "X (200/q) and XX (100/q) bounds vs brute force, q in {3,4,5}", budget=600.0) as c:
        rng = np.random.default_rng(20240607)
        x_violations = xx_violations = literal_violations = 0
        x_count = xx_count = 0
        for q in (3, 4, 5):
            F = field_for_q(q)
            while x_count < 200 * [3, 4, 5].index(q) + 200:
                n = int(rng.integers(3, 12))
                k1 = int(rng.integers(1, 4 if q > 3 else 5))
                C1 = _random_code(rng, F, n, k1)
                if C1.k == 0:
                    continue
                k2 = int(rng.integers(0, C1.k + 1))
                C2 = LinearCode(F, F.matmul(rng.integers(0, q, (k2, C1.k)), C1.G) if k2 else
                                np.zeros((0, n), dtype=np.int64), n=n)
                deficit = C1.k - C2.k
                n3 = deficit + int(rng.integers(0, 3))
                C3 = _random_code(rng, F, n3, deficit)
                if C3.k != deficit:
                    continue
                for X in (C1, C2, C3):
                    _with_d(X)
                E = construction_x(C1, C2, C3)
                d = naive_field_distance(F, E.G, E.n)
                x_violations += d < E.distance.value
                x_count += 1
            while xx_count < 100 * [3, 4, 5].index(q) + 100:
                n = int(rng.integers(3, 10))
                C = _random_code(rng, F, n, int(rng.integers(1, 5 if q < 5 else 4)))
                if C.k == 0:
                    continue
                subs = []
                for _ in range(2):
                    ks = int(rng.integers(0, C.k + 1))
                    G = F.matmul(rng.integers(0, q, (ks, C.k)), C.G) if ks else np.zeros((0, n), dtype=np.int64)
                    subs.append(LinearCode(F, G, n=n))
                C1, C2 = subs
                aux = []
                for Ci in subs:
                    deficit = C.k - Ci.k
                    aux.append(_random_code(rng, F, deficit + int(rng.integers(0, 3)), deficit))
                if any(D.k != C.k - Ci.k for D, Ci in zip(aux, subs)):
                    continue
                for X in (C, C1, C2, *aux):
                    _with_d(X)
                D1, D2 = aux
                XX = construction_xx(C, C1, C2, D1, D2)
                d = naive_field_distance(F, XX.G, XX.n)
                pred = XX.provenance["predicted"]
                xx_violations += d < pred["d"]
                literal_violations += d < pred["d_formula"]
                xx_count += 1
        c.detail = (f"X: {x_count} triples, {x_violations} violations; XX: {xx_count} instances, "
                    f"{xx_violations} violations of the glued bound "
                    f"(literal index order would be violated {literal_violations} times)")
        assert x_violations == 0 and xx_violations == 0
        assert x_count == 600 and xx_count == 300


# 8 -------------------------------------------------------------------------

def test_08_quantum(criterion):
    with criterion(8, "stabilizer parameters and a searched GF(4) dual-containing code", budget=60.0) as c:
        assert str(quantum_from_params(109, 73, 16)) == "[[109,37,16]]_2"
        assert str(quantum_from_params(114, 57, 26, self_dual=True)) == "[[114,0,26]]_2"
        best = None
        job = SearchJob(q=4, n_min=3, n_max=15, max_cosets=None, k_min=1)
        for spec in enumerate_specs(job):
            if 2 * spec.k <= spec.n:
                continue
            D = set(spec.defining_set)
            Dh = set(hermitian_dual_defining_set(spec))
            C = build_code(spec)
            contains = hermitian_dual_containing(C)
            # the defining set of the Hermitian dual must contain D exactly when the rank test passes
            assert contains == (D <= Dh), spec.to_text()
            if not contains:
                continue
            minimum_distance(C)
            key = (C.d, 2 * C.k - C.n, -C.n)
            if best is None or key > best[0]:
                best = (key, spec, C)
        assert best is not None
        _, spec, C = best
        H = hermitian_dual(C)
        assert C.contains(H) and H.k == C.n - C.k
        Q = quantum_params(C)
        assert (Q.n, Q.k, Q.d) == (C.n, 2 * C.k - C.n, C.d)
        c.detail = f"{spec.to_text()} {C.params()} -> {Q}"


# 9 -------------------------------------------------------------------------

def test_09_distance_engines_agree(criterion):
    with criterion(9, "brute force vs Brouwer-Zimmermann, q <= 5, n <= 14, q^k <= 2^16", budget=600.0) as c:
        count = 0
        mismatches = []
        for q in (2, 3, 4, 5):
            for n in range(1, 15):
                if gcd(n, q) != 1:
                    continue
                for a in range(1, q):
                    for spec in family(q, n, a).all_specs():
                        C = build_code(spec)
                        if C.k == 0 or q ** C.k > 1 << 16:
                            continue
                        b, z = brute_distance(C), bz_distance(C)
                        if b.value != z.value or z.status != "exact":
                            mismatches.append(spec.to_text())
                        count += 1
        c.detail = f"{count} codes, {len(mismatches)} disagreements"
        assert not mismatches, mismatches[:5]


# 10 ------------------------------------------------------------------------

OUT_OF_SCOPE = ["[109,73,16]_4", "[111,57,25]_4", "[87,42,24]_5", "[101,75,13]_5", "[183,153,>=11]_4"]


def test_10_documented_out_of_scope(criterion):
    with criterion(10, "large records documented as not reproducible at desk scale") as c:
        readme = (ROOT / "README.md").read_text()
        section = readme[readme.index("## Not reproduced"):]
        missing = [p for p in OUT_OF_SCOPE if p not in section]
        assert not missing, missing
        c.detail = "listed in README: " + ", ".join(OUT_OF_SCOPE)
