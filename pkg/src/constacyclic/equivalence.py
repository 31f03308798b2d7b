"""Monomial equivalence between families of constacyclic codes.

Shift constants are written ``a = xi**i1`` (source) and ``b = xi**i2``
(target).  The sufficient condition implemented by :func:`check_main_theorem`
asks for ``s`` with ``i1 = i2*s (mod q-1)`` and ``m | i2*(s-1)`` where
``m = gcd(n, q-1)``; its proof provides the explicit isometry
``x -> xi**i * x`` recorded by :class:`EquivWitness`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Iterable

import numpy as np

from .code import (CodeSpec, LinearCode, _elem, build_code, count_codes, family, field_for_q,
                   is_constacyclic)
from . import linalg
from .field import GF
from .poly import Poly


class Criterion(str, Enum):
    EQUAL_ORDER = "EqualOrder"
    BIERBRAUER = "Bierbrauer"
    MAIN = "MainTheorem"
    DIVIDES_ORDER = "DividesOrderGcd1"
    GCD_POWER = "GcdPower"


@dataclass(frozen=True)
class EquivCriterion:
    """A criterion that fired for the pair ``(a, b)`` with the numbers it used."""

    kind: Criterion
    q: int
    n: int
    a: int
    b: int
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def verify(self) -> bool:
        """Re-check the arithmetic condition from the stored parameters."""
        F = field_for_q(self.q)
        q, n, a, b = self.q, self.n, self.a, self.b
        P = self.params
        if self.kind is Criterion.EQUAL_ORDER:
            return F.order(a) == F.order(b)
        if self.kind is Criterion.BIERBRAUER:
            c = P["constacyclic"]
            return {a, b} == {c, 1} and gcd(n, F.order(c)) == 1
        if self.kind is Criterion.MAIN:
            i1, i2, s, m = P["i1"], P["i2"], P["s"], P["m"]
            src, dst = P.get("source", a), P.get("target", b)
            return ({src, dst} == {a, b} and F.xi_pow(i1) == src and F.xi_pow(i2) == dst
                    and m == gcd(n, q - 1)
                    and (i1 - i2 * s) % (q - 1) == 0 and gcd(i2 * (s - 1), q - 1) % m == 0)
        if self.kind is Criterion.DIVIDES_ORDER:
            lo, hi = P["divisor"], P["multiple"]
            return ({lo, hi} == {a, b} and F.order(hi) % F.order(lo) == 0
                    and gcd(n, q) == 1 and gcd(n, q - 1) == 1)
        if self.kind is Criterion.GCD_POWER:
            c, m = P["constacyclic"], P["m"]
            return {a, b} == {c, 1} and m == gcd(n, q - 1) and F.log(c) % m == 0
        return False  # pragma: no cover

    def condition(self) -> str:
        """The condition instantiated at ``n``, for labels and reports."""
        F = field_for_q(self.q)
        q, n, P = self.q, self.n, self.params
        fe = F.format_element
        if self.kind is Criterion.EQUAL_ORDER:
            return f"ord({fe(self.a)})=ord({fe(self.b)})={F.order(self.a)}"
        if self.kind is Criterion.BIERBRAUER:
            c = P["constacyclic"]
            return f"gcd({n},ord({fe(c)}))=gcd({n},{F.order(c)})=1"
        if self.kind is Criterion.MAIN:
            i2, s, m = P["i2"], P["s"], P["m"]
            return f"m=gcd({n},{q - 1})={m} | gcd({i2}*({s}-1),{q - 1})={gcd(i2 * (s - 1), q - 1)}"
        if self.kind is Criterion.DIVIDES_ORDER:
            return (f"ord({fe(P['divisor'])}) | ord({fe(P['multiple'])}), "
                    f"gcd({n},{q})=gcd({n},{q - 1})=1")
        if self.kind is Criterion.GCD_POWER:
            c, m = P["constacyclic"], P["m"]
            return f"gcd({n},{q - 1})={m} | log({fe(c)})={F.log(c)}"
        return ""  # pragma: no cover

    def to_dict(self) -> dict:
        return {"criterion": self.kind.value, "q": self.q, "n": self.n, "a": self.a, "b": self.b,
                "params": dict(self.params), "condition": self.condition()}


def _field(q) -> GF:
    return q if isinstance(q, GF) else field_for_q(q)


def _check_n(F: GF, n: int):
    if n < 1 or gcd(n, F.q) != 1:
        raise ValueError(f"need gcd(n, q) = 1, got n={n}, q={F.q}")


def main_theorem_solutions(q, n: int, a, b) -> list[tuple[int, int]]:
    """All ``(s, m)``, ``0 <= s <= q-2``, satisfying the main criterion for ``a -> b``."""
    F = _field(q)
    _check_n(F, n)
    a, b = _elem(a), _elem(b)
    if a == 0 or b == 0:
        raise ValueError("shift constants must be nonzero")
    Q = F.q - 1
    i1, i2 = F.log(a), F.log(b)
    m = gcd(n, Q)
    out = []
    for s in range(max(Q, 1)):
        if (i1 - i2 * s) % Q:
            continue
        if gcd(i2 * (s - 1), Q) % m == 0:
            out.append((s, m))
    return out


def check_main_theorem(q, n: int, a, b) -> tuple[int, int] | None:
    """Smallest ``(s, m)`` making the families of ``a`` and ``b`` equivalent, else None."""
    sols = main_theorem_solutions(q, n, a, b)
    return sols[0] if sols else None


def check_equal_order(q, a, b) -> bool:
    F = _field(q)
    return F.order(_elem(a)) == F.order(_elem(b))


def check_bierbrauer(q, n: int, a) -> bool:
    """``gcd(n, ord(a)) == 1``: the ``a``-constacyclic family is equivalent to the cyclic one."""
    F = _field(q)
    _check_n(F, n)
    return gcd(n, F.order(_elem(a))) == 1


def check_corollaries(q, n: int, a, b) -> EquivCriterion | None:
    """Order-divisibility (``gcd(n,q) = gcd(n,q-1) = 1``) or ``xi**(m r)``-versus-cyclic.

    Family equivalence is symmetric, so each corollary is tried with the pair
    in either orientation.
    """
    F = _field(q)
    _check_n(F, n)
    a, b = _elem(a), _elem(b)
    Q = F.q - 1
    if gcd(n, Q) == 1:
        for lo, hi in ((a, b), (b, a)):
            if F.order(hi) % F.order(lo) == 0:
                return EquivCriterion(Criterion.DIVIDES_ORDER, F.q, n, a, b,
                                      {"divisor": lo, "multiple": hi})
    m = gcd(n, Q)
    for c, one in ((a, b), (b, a)):
        if one == 1 and F.log(c) % m == 0:
            return EquivCriterion(Criterion.GCD_POWER, F.q, n, a, b,
                                  {"constacyclic": c, "m": m, "r": F.log(c) // m})
    return None


def criteria(q, n: int, a, b) -> list[EquivCriterion]:
    """Every criterion establishing equivalence of the ``a`` and ``b`` families."""
    F = _field(q)
    _check_n(F, n)
    a, b = _elem(a), _elem(b)
    out = []
    if F.order(a) == F.order(b):
        out.append(EquivCriterion(Criterion.EQUAL_ORDER, F.q, n, a, b, {"order": F.order(a)}))
    for c, one in ((a, b), (b, a)):
        if one == 1 and c != 1 and gcd(n, F.order(c)) == 1:
            out.append(EquivCriterion(Criterion.BIERBRAUER, F.q, n, a, b, {"constacyclic": c}))
    for src, dst in ((a, b), (b, a)):
        hit = check_main_theorem(F, n, src, dst)
        if hit:
            s, m = hit
            out.append(EquivCriterion(Criterion.MAIN, F.q, n, a, b,
                                      {"i1": F.log(src), "i2": F.log(dst), "s": s, "m": m,
                                       "source": src, "target": dst}))
        if a == b:
            break
    cor = check_corollaries(F, n, a, b)
    if cor:
        out.append(cor)
    return out


# ---------------------------------------------------------------------------
# witnesses

@dataclass(frozen=True)
class EquivWitness:
    """Derivation record for the isometry ``x -> xi**i x`` taking ``a``- to ``b``-constacyclic codes."""

    q: int
    n: int
    a: int
    b: int
    i1: int
    i2: int
    s: int
    m: int
    gamma: int
    theta: int
    beta: int
    beta_prime: int
    i: int

    @property
    def field(self) -> GF:
        return field_for_q(self.q)

    @property
    def scalar(self) -> int:
        return self.field.xi_pow(self.i)

    def diagonal_exponents(self) -> list[int]:
        return [(j * self.i) % (self.q - 1) for j in range(self.n)]

    def diagonal(self) -> np.ndarray:
        F = self.field
        return np.array([F.xi_pow(e) for e in self.diagonal_exponents()], dtype=np.int64)

    def verify(self) -> bool:
        Q = self.q - 1
        return (self.m * self.gamma == self.i2 * (self.s - 1)
                and self.m * self.theta == Q
                and self.n == self.m * self.beta
                and (self.theta == 1 or (self.beta * self.beta_prime) % self.theta == 1)
                and (self.i1 - self.i2 * self.s) % Q == 0
                and (self.i1 - self.i * self.n - self.i2) % Q == 0)

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in ("q", "n", "a", "b", "i1", "i2", "s", "m", "gamma",
                                             "theta", "beta", "beta_prime", "i")}
        d["scalar"] = self.scalar
        return d


def build_witness(q, n: int, a, b, s: int | None = None) -> EquivWitness:
    """Isometry data for ``a -> b`` following the main criterion's proof."""
    F = _field(q)
    a, b = _elem(a), _elem(b)
    sols = main_theorem_solutions(F, n, a, b)
    if s is not None:
        sols = [x for x in sols if x[0] == s]
    if not sols:
        raise ValueError(f"no main-criterion solution for a={a}, b={b}, n={n} over GF({F.q})")
    s, m = sols[0]
    Q = F.q - 1
    i1, i2 = F.log(a), F.log(b)
    num = i2 * (s - 1)
    assert num % m == 0
    gamma = num // m
    theta = Q // m
    beta = n // m
    assert gcd(beta, theta) == 1, "gcd(n/m, (q-1)/m) must be 1"
    beta_prime = pow(beta, -1, theta) if theta > 1 else 0
    i = (gamma * beta_prime + theta) % Q if Q > 1 else 0
    w = EquivWitness(F.q, n, a, b, i1, i2, s, m, gamma, theta, beta, beta_prime, i)
    if not w.verify():  # pragma: no cover - guarded by the algebra above
        raise ArithmeticError(f"witness failed its congruence check: {w}")
    return w


def apply_isometry(w: EquivWitness, C: LinearCode, check: bool = True) -> LinearCode:
    """Scale coordinate ``j`` of every codeword by ``xi**(i*j)``."""
    F = C.field
    if F.q != w.q or C.n != w.n:
        raise ValueError(f"witness is for n={w.n} over GF({w.q}), code is {C.params()}")
    if check and not is_constacyclic(C, w.a):
        raise ValueError(f"code is not {F.format_element(w.a)}-constacyclic")
    G = F.vmul(C.G, w.diagonal()[None, :]) if C.k else C.G
    prov = {"kind": "isometry", "witness": w.to_dict(), "input": C.provenance}
    return LinearCode(F, G, n=C.n, provenance=prov)


def image_spec(w: EquivWitness, spec: CodeSpec) -> CodeSpec:
    """Defining set, in the ``b`` family, of the image of a constacyclic code."""
    from .code import generator_poly

    F = field_for_q(w.q)
    g = generator_poly(spec)
    img = Poly(F, [F.mul(c, F.xi_pow(w.i * j)) for j, c in enumerate(g.coeffs)]).monic()
    fam = family(w.q, w.n, w.b)
    R = fam.root
    E = R.ext
    D = []
    for idx, cos in enumerate(fam.cosets):
        x = R.power(cos.rep)
        acc = E.zero
        for c in reversed(img.coeffs):
            acc = E.add(E.mul(acc, x), E.embed(c))
        if acc == E.zero:
            D.extend(cos.members)
    out = CodeSpec(w.q, w.n, w.b, tuple(D))
    if len(out.defining_set) != img.degree:  # pragma: no cover
        raise ArithmeticError("image polynomial does not split over the target family")
    return out


def witness_soundness(q: int, n: int, a, b, max_cosets: int = 2, we_budget: int = 1 << 12,
                      codes=None) -> dict:
    """Map every ``a``-constacyclic code with at most ``max_cosets`` cosets through the witness.

    Each image must be ``b``-constacyclic.  Weight enumerators are compared
    directly whenever the smaller of the code and its dual has at most
    ``we_budget`` words.  Every code is also checked to map onto its image by a
    coordinate scaling with nonzero factors (each generator row, scaled entry
    by entry, lies in the image and the dimensions agree), which preserves the
    weight of every word and hence the enumerator.  ``codes`` may supply
    prebuilt ``(spec, code)`` pairs.
    """
    from .distance import weight_enumerator

    a, b = _elem(a), _elem(b)
    w = build_witness(q, n, a, b)
    F = w.field
    diag = [int(x) for x in w.diagonal()]
    scaling_ok = all(diag)
    if codes is None:
        codes = [(s, build_code(s)) for s in family(q, n, a).all_specs(max_cosets)]
    checked = failures = compared = 0
    bad = []
    images = set()
    for spec, C in codes:
        img = apply_isometry(w, C, check=False)
        ok = scaling_ok and img.k == C.k and is_constacyclic(img, b)
        if ok and C.k:
            scaled = np.array([[F.mul(int(x), d) for x, d in zip(row, diag)] for row in C.G])
            ok = linalg.subspace_contains(F, img.G, scaled)
        if ok and q ** min(C.k, C.n - C.k) <= we_budget:
            ok = weight_enumerator(C) == weight_enumerator(img)
            compared += 1
        images.add((img.k, img.reduced.tobytes()))
        checked += 1
        if not ok:
            failures += 1
            bad.append(spec.to_text())
    return {"checked": checked, "failures": failures, "weight_enumerators": compared,
            "distinct_images": len(images), "failed": bad}


# ---------------------------------------------------------------------------
# classification graphs

@dataclass
class EquivGraph:
    q: int
    n: int
    nodes: list[int]
    edges: list[EquivCriterion]
    classes: list[list[int]]

    def class_of(self, a: int) -> list[int]:
        for c in self.classes:
            if a in c:
                return c
        raise KeyError(a)

    def order_groups(self) -> list[list[int]]:
        F = field_for_q(self.q)
        groups: dict[int, list[int]] = {}
        for a in self.nodes:
            groups.setdefault(F.order(a), []).append(a)
        return sorted(groups.values(), key=lambda g: (F.order(g[0]), g[0]))

    def to_dict(self) -> dict:
        return {"q": self.q, "n": self.n, "nodes": self.nodes, "classes": self.classes,
                "edges": [e.to_dict() for e in self.edges]}


def classify(q, n: int) -> EquivGraph:
    """Evaluate every criterion on every pair of shift constants and close into classes."""
    F = _field(q)
    _check_n(F, n)
    nodes = list(range(1, F.q))
    parent = {a: a for a in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges: list[EquivCriterion] = []
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            hits = criteria(F, n, a, b)
            edges.extend(hits)
            if hits:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, list[int]] = {}
    for a in nodes:
        classes.setdefault(find(a), []).append(a)
    cl = sorted(classes.values(), key=lambda c: c[0])
    return EquivGraph(F.q, n, nodes, edges, cl)


def emit_dot(g: EquivGraph) -> str:
    """Graphviz text: one node per equal-order group, one cluster per class."""
    F = field_for_q(g.q)
    fe = F.format_element
    groups = g.order_groups()
    gid = {a: idx for idx, grp in enumerate(groups) for a in grp}
    lines = [f'graph "GF({g.q}) n={g.n}" {{',
             f'  label="Monomially equivalent constacyclic families, n={g.n}, GF({g.q})";',
             "  node [shape=ellipse];"]
    for ci, cls in enumerate(g.classes):
        lines.append(f"  subgraph cluster_{ci} {{")
        lines.append(f'    label="class {{{", ".join(fe(a) for a in cls)}}}";')
        for idx, grp in enumerate(groups):
            if grp[0] in cls:
                lab = ", ".join(fe(a) for a in grp)
                lines.append(f'    g{idx} [label="{lab}"];')
        lines.append("  }")
    seen = set()
    for e in g.edges:
        if e.kind is Criterion.EQUAL_ORDER:
            continue
        u, v = sorted((gid[e.a], gid[e.b]))
        key = (u, v, e.kind)
        if u == v or key in seen:
            continue
        seen.add(key)
        lines.append(f'  g{u} -- g{v} [label="{e.kind.value}: {e.condition()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def family_counts_match(q, n: int, a, b) -> bool:
    """Necessary condition for equivalence: equal numbers of codes."""
    return count_codes(q, n, a) == count_codes(q, n, b)


def classify_consistent(g: EquivGraph) -> bool:
    return all(len({count_codes(g.q, g.n, a) for a in c}) == 1 for c in g.classes)
