"""Linear codes and the constacyclic machinery: Omega sets, cyclotomic cosets,
defining sets, generator polynomials, duals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .field import GF, FieldElem, FixedRoot, fix_root, make_field, is_prime
from .poly import Poly


def field_for_q(q: int) -> GF:
    """The canonical field of order ``q``."""
    q = int(q)
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise ValueError(f"{q} is not a prime power")
    if not is_prime(p):  # pragma: no cover - smallest divisor is prime
        raise ValueError(f"{q} is not a prime power")
    m, v = 0, q
    while v % p == 0:
        v //= p
        m += 1
    if v != 1:
        raise ValueError(f"{q} is not a prime power")
    return make_field(p, m)


def _elem(a) -> int:
    return int(a.value) if isinstance(a, FieldElem) else int(a)


# ---------------------------------------------------------------------------
# linear codes

class LinearCode:
    """A linear ``[n, k]_q`` code given by a generator matrix.

    The generator is kept as supplied when it has full row rank (constacyclic
    codes keep their shifted generator-polynomial rows); otherwise it is
    replaced by its reduced row echelon basis.
    """

    def __init__(self, field: GF, G, n: int | None = None, distance=None,
                 provenance: dict | None = None, name: str | None = None):
        self.field = field
        G = linalg.as_matrix(G, n)
        if G.ndim != 2:
            raise ValueError("generator must be two-dimensional")
        if n is not None and G.shape[1] != n:
            raise ValueError(f"generator has {G.shape[1]} columns, expected {n}")
        if np.any((G < 0) | (G >= field.q)):
            raise ValueError("entries outside the field")
        if G.shape[0] and linalg.rank(field, G) < G.shape[0]:
            G = linalg.row_basis(field, G)
        self.G = G
        self.n = G.shape[1]
        self.k = G.shape[0]
        self.distance = distance
        self.provenance = provenance
        self.name = name

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def d(self) -> int | None:
        return None if self.distance is None else self.distance.value

    @property
    def d_status(self) -> str:
        return "unknown" if self.distance is None else self.distance.status

    @cached_property
    def reduced(self) -> np.ndarray:
        return linalg.row_basis(self.field, self.G)

    def params(self) -> str:
        d = "?" if self.d is None else str(self.d)
        if self.d_status == "lower":
            d = f">={d}"
        elif self.d_status == "upper":
            d = f"<={d}"
        return f"[{self.n},{self.k},{d}]_{self.q}"

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"LinearCode{tag} {self.params()}"

    def encode(self, msg) -> np.ndarray:
        return linalg.encode(self.field, self.G, msg)

    def contains(self, other: "LinearCode") -> bool:
        self._compatible(other)
        return linalg.subspace_contains(self.field, self.G, other.G)

    def contains_word(self, v) -> bool:
        return linalg.in_row_space(self.field, self.G, v)

    def same_space(self, other: "LinearCode") -> bool:
        return self.k == other.k and self.contains(other)

    def _compatible(self, other: "LinearCode"):
        if other.field is not self.field:
            raise ValueError("codes over different fields")
        if other.n != self.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def copy(self) -> "LinearCode":
        return LinearCode(self.field, self.G.copy(), n=self.n, distance=self.distance,
                          provenance=self.provenance, name=self.name)

    def with_distance(self, result) -> "LinearCode":
        self.distance = result
        return self

    def dual(self) -> "LinearCode":
        return euclidean_dual(self)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.field is other.field and self.n == other.n and self.k == other.k
                and np.array_equal(self.reduced, other.reduced))

    __hash__ = None


def full_space(F: GF, n: int) -> LinearCode:
    return LinearCode(F, np.eye(n, dtype=np.int64), provenance={"kind": "full", "q": F.q, "n": n})


def zero_code(F: GF, n: int) -> LinearCode:
    return LinearCode(F, np.zeros((0, n), dtype=np.int64), provenance={"kind": "zero", "q": F.q, "n": n})


def repetition_code(F: GF, n: int) -> LinearCode:
    return LinearCode(F, np.ones((1, n), dtype=np.int64), provenance={"kind": "repetition", "q": F.q, "n": n})


def parity_code(F: GF, n: int) -> LinearCode:
    """The ``[n, n-1, 2]`` single parity check code (``n >= 2``)."""
    G = np.zeros((n - 1, n), dtype=np.int64)
    for i in range(n - 1):
        G[i, i] = 1
        G[i, n - 1] = F.neg(1)
    return LinearCode(F, G, provenance={"kind": "parity", "q": F.q, "n": n})


def lineage(C: LinearCode) -> dict:
    """Replayable description of how ``C`` was obtained (explicit matrix if unknown)."""
    if C.provenance is not None:
        return C.provenance
    return {"kind": "matrix", "q": C.q, "n": C.n, "G": C.G.tolist()}


def euclidean_dual(C: LinearCode) -> LinearCode:
    H = linalg.nullspace(C.field, C.G, C.n)
    return LinearCode(C.field, H, n=C.n, provenance={"kind": "dual", "input": lineage(C)})


def conjugate(F: GF, M) -> np.ndarray:
    """Entrywise ``x -> x**s`` for ``q = s**2``."""
    s = _sqrt_q(F)
    M = np.asarray(M, dtype=np.int64)
    lg = F.log_table[M]
    out = F.exp_table[(lg * s) % (F.q - 1)]
    return np.where(M == 0, 0, out)


def _sqrt_q(F: GF) -> int:
    if F.m % 2:
        raise ValueError(f"{F} is not of square order")
    return F.p ** (F.m // 2)


def hermitian_dual(C: LinearCode) -> LinearCode:
    """Dual under ``<u, v> = sum u_i v_i**s`` with ``q = s**2``."""
    _sqrt_q(C.field)
    H = linalg.nullspace(C.field, C.G, C.n)
    return LinearCode(C.field, conjugate(C.field, H), n=C.n,
                      provenance={"kind": "hermitian_dual", "input": lineage(C)})


# ---------------------------------------------------------------------------
# Omega sets and cyclotomic cosets

@dataclass(frozen=True)
class OmegaSet:
    q: int
    n: int
    a: int
    t: int
    residues: tuple[int, ...]

    @property
    def tn(self) -> int:
        return self.t * self.n

    def __contains__(self, s: int) -> bool:
        return s % self.tn in set(self.residues)

    def __len__(self):
        return len(self.residues)


@dataclass(frozen=True)
class CycloCoset:
    modulus: int
    members: tuple[int, ...]

    @property
    def rep(self) -> int:
        return self.members[0]

    @property
    def label(self) -> str:
        return f"Z({self.rep})"

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _check_len(F: GF, n: int):
    if n < 1:
        raise ValueError("length must be positive")
    if gcd(n, F.q) != 1:
        raise ValueError(f"gcd(n={n}, q={F.q}) != 1; repeated-root codes are not supported")


def omega(q, n: int, a) -> OmegaSet:
    """``{k t + 1 mod tn : 0 <= k < n}`` with ``t = ord(a)``."""
    F = q if isinstance(q, GF) else field_for_q(q)
    a = _elem(a)
    _check_len(F, n)
    if a == 0:
        raise ValueError("shift constant must be nonzero")
    t = F.order(a)
    tn = t * n
    res = tuple(sorted((k * t + 1) % tn for k in range(n)))
    return OmegaSet(F.q, n, a, t, res)


def cyclotomic_coset(s: int, q: int, modulus: int) -> CycloCoset:
    members = {s % modulus}
    x = s * q % modulus
    while x not in members:
        members.add(x)
        x = x * q % modulus
    return CycloCoset(modulus, tuple(sorted(members)))


def partition_omega(om: OmegaSet) -> list[CycloCoset]:
    seen: set[int] = set()
    out = []
    for s in om.residues:
        if s in seen:
            continue
        c = cyclotomic_coset(s, om.q, om.tn)
        seen.update(c.members)
        out.append(c)
    return out


def count_codes(q, n: int, a) -> int:
    """Number of ``a``-constacyclic codes of length ``n``."""
    return 2 ** len(partition_omega(omega(q, n, a)))


class ConstaFamily:
    """All ``a``-constacyclic codes of length ``n`` over ``F`` (shared cache)."""

    def __init__(self, F: GF, n: int, a: int):
        self.field = F
        self.n = n
        self.a = a
        self.omega = omega(F, n, a)
        self.t = self.omega.t
        self.tn = self.omega.tn
        self.cosets = partition_omega(self.omega)
        self.coset_of = {s: i for i, c in enumerate(self.cosets) for s in c.members}
        self._minpolys: dict[int, Poly] = {}

    @cached_property
    def root(self) -> FixedRoot:
        return fix_root(self.field, self.n, self.a)

    def coset(self, rep: int) -> CycloCoset:
        return self.cosets[self.coset_of[rep % self.tn]]

    def minpoly(self, idx: int) -> Poly:
        """``prod (x - alpha^l)`` over coset ``idx``, projected to GF(q)."""
        if idx not in self._minpolys:
            R = self.root
            E = R.ext
            f = Poly(E, [E.one])
            for ell in self.cosets[idx].members:
                f = f * Poly.x_minus(E, R.power(ell))
            for c in f.coeffs:
                if not E.is_base(c):
                    raise ArithmeticError(
                        f"coefficient {E.format_element(c)} of coset {self.cosets[idx].label} "
                        "escapes the base field")
            self._minpolys[idx] = Poly(self.field, [E.project(c) for c in f.coeffs])
        return self._minpolys[idx]

    def closure(self, residues: Iterable[int]) -> tuple[int, ...]:
        """Smallest coset-closed superset."""
        out: set[int] = set()
        for s in residues:
            out.update(self.coset(s).members)
        return tuple(sorted(out))

    def coset_indices(self, D: Sequence[int]) -> list[int]:
        idx = sorted({self.coset_of[s] for s in D})
        return idx

    def defining_set(self, coset_idx: Iterable[int]) -> tuple[int, ...]:
        out: list[int] = []
        for i in coset_idx:
            out.extend(self.cosets[i].members)
        return tuple(sorted(out))

    def spec(self, coset_idx: Iterable[int]) -> "CodeSpec":
        return CodeSpec(self.field.q, self.n, self.a, self.defining_set(coset_idx))

    def all_specs(self, max_cosets: int | None = None):
        m = len(self.cosets)
        top = m if max_cosets is None else min(m, max_cosets)
        for r in range(top + 1):
            for combo in combinations(range(m), r):
                yield self.spec(combo)


@lru_cache(maxsize=None)
def family(q: int, n: int, a: int) -> ConstaFamily:
    return ConstaFamily(field_for_q(q), n, a)


# ---------------------------------------------------------------------------
# code specs

@dataclass(frozen=True)
class CodeSpec:
    """Algebraic identity ``(q, n, a, D)`` of a constacyclic code."""

    q: int
    n: int
    a: int
    defining_set: tuple[int, ...]

    def __post_init__(self):
        D = tuple(sorted({int(s) for s in self.defining_set}))
        object.__setattr__(self, "defining_set", D)
        fam = self.family
        om = set(fam.omega.residues)
        bad = [s for s in D if s not in om]
        if bad:
            raise ValueError(f"residues {bad} are not in Omega_a")
        if fam.closure(D) != D:
            raise ValueError("defining set is not a union of cyclotomic cosets")

    @property
    def field(self) -> GF:
        return field_for_q(self.q)

    @property
    def family(self) -> ConstaFamily:
        return family(self.q, self.n, self.a)

    @property
    def k(self) -> int:
        return self.n - len(self.defining_set)

    @property
    def coset_labels(self) -> list[str]:
        fam = self.family
        return [fam.cosets[i].label for i in fam.coset_indices(self.defining_set)]

    def to_text(self) -> str:
        F = self.field
        return f"{self.q}:{self.n}:{F.log(self.a)}:{','.join(map(str, self.defining_set))}"

    def __str__(self):
        return self.to_text()

    @classmethod
    def from_text(cls, text: str) -> "CodeSpec":
        parts = text.strip().split(":")
        if len(parts) != 4:
            raise ValueError(f"expected q:n:a:D, got {text!r}")
        q, n, e = int(parts[0]), int(parts[1]), int(parts[2])
        F = field_for_q(q)
        D = tuple(int(s) for s in parts[3].split(",") if s.strip())
        return cls(q, n, F.xi_pow(e), D)

    @classmethod
    def from_cosets(cls, q: int, n: int, a, reps: Iterable[int]) -> "CodeSpec":
        fam = family(q, n, _elem(a))
        return cls(q, n, _elem(a), fam.closure(reps))

    def describe(self) -> str:
        F = self.field
        labels = " u ".join(self.coset_labels) or "{}"
        return f"{F.format_element(self.a)}-constacyclic n={self.n} over GF({self.q}), D = {labels}"


def generator_poly(spec: CodeSpec) -> Poly:
    """Monic generator polynomial: product of the minimal polynomials of ``D``."""
    fam = spec.family
    F = fam.field
    g = Poly(F, [1])
    for i in fam.coset_indices(spec.defining_set):
        g = g * fam.minpoly(i)
    return g


def xn_minus_a(F: GF, n: int, a: int) -> Poly:
    return Poly(F, [F.neg(a)] + [0] * (n - 1) + [1])


def shifted_rows(F: GF, g: Poly, n: int) -> np.ndarray:
    k = n - g.degree
    G = np.zeros((k, n), dtype=np.int64)
    c = np.asarray(g.coeffs, dtype=np.int64)
    for j in range(k):
        G[j, j : j + len(c)] = c
    return G


def build_code(spec: CodeSpec) -> LinearCode:
    F = spec.field
    g = generator_poly(spec)
    G = shifted_rows(F, g, spec.n)
    return LinearCode(F, G, n=spec.n,
                      provenance={"kind": "constacyclic", "spec": spec.to_text()},
                      name=spec.to_text())


def constacyclic_shift(F: GF, v, a) -> np.ndarray:
    """``(a c_{n-1}, c_0, ..., c_{n-2})``."""
    v = np.asarray(v, dtype=np.int64)
    out = np.roll(v, 1, axis=-1)
    out[..., 0] = F.vmul(out[..., 0], _elem(a))
    return out


def is_constacyclic(C: LinearCode, a) -> bool:
    if C.k == 0 or C.k == C.n:
        return True
    return linalg.subspace_contains(C.field, C.G, constacyclic_shift(C.field, C.G, a))


def hermitian_dual_defining_set(spec: CodeSpec) -> tuple[int, ...]:
    """Defining set of the Hermitian dual of a constacyclic code over GF(s^2).

    Valid when ``a**(-s) == a`` so the dual lives in the same family:
    ``{-s * j mod tn : j in Omega \\ D}``.
    """
    F = spec.field
    s = _sqrt_q(F)
    if F.pow(spec.a, -s) != spec.a:
        raise ValueError("Hermitian dual is not in the same constacyclic family")
    fam = spec.family
    rest = set(fam.omega.residues) - set(spec.defining_set)
    return tuple(sorted((-s * j) % fam.tn for j in rest))
