"""Finite fields GF(p^m) with q <= 2**16 and the extensions hosting roots of unity.

Elements of ``GF(p^m)`` are plain ints ``v = sum(c_i * p**i)`` where ``c_i`` are
the coefficients of the residue polynomial modulo the field's defining
polynomial.  Integer order of these codes is the *representation order* used
to pick canonical objects: the defining polynomial is the smallest monic
irreducible of degree ``m`` and the primitive element ``xi`` is the smallest
element of multiplicative order ``q - 1``.

Extension fields ``GF(q^z)`` (:class:`ExtField`) store elements as length-``z``
tuples of base-field ints and do plain polynomial arithmetic; they are only
used to host the root ``alpha`` fixing the defining sets of constacyclic codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd
from typing import Iterator

import numpy as np

from .poly import Poly, prime_factors, smallest_irreducible

MAX_Q = 1 << 16
_TABLE_Q = 1024


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return prime_factors(p) == [p]


def multiplicative_order_mod(q: int, modulus: int) -> int:
    """Smallest ``z >= 1`` with ``q**z == 1 (mod modulus)``."""
    if gcd(q, modulus) != 1:
        raise ValueError(f"gcd({q}, {modulus}) != 1")
    if modulus == 1:
        return 1
    z, v = 1, q % modulus
    while v != 1:
        v = v * q % modulus
        z += 1
    return z


class GF:
    """The finite field GF(p^m); also exported as ``FieldSpec``.

    Build instances through :func:`make_field`, which caches them, so two
    fields with equal ``(p, m)`` are the same object.
    """

    zero = 0
    one = 1

    def __init__(self, p: int, m: int, modulus: tuple[int, ...], xi: int, exp: np.ndarray):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus
        self.xi = xi
        q = self.q
        self._exp = [int(v) for v in exp] * 2
        log = [-1] * q
        for e, v in enumerate(self._exp[: q - 1]):
            log[v] = e
        self._log = log
        self.exp_table = np.asarray(self._exp, dtype=np.int64)
        self.log_table = np.asarray(log, dtype=np.int64)
        digits = np.zeros((q, m), dtype=np.int64)
        for v in range(q):
            x = v
            for i in range(m):
                digits[v, i] = x % p
                x //= p
        self.digits = digits
        self._place = p ** np.arange(m, dtype=np.int64)
        self.neg_table = (((-digits) % p) @ self._place).astype(np.int64)
        self._neg = [int(v) for v in self.neg_table]
        inv = np.zeros(q, dtype=np.int64)
        for v in range(1, q):
            inv[v] = self._exp[(q - 1 - log[v]) % (q - 1)]
        self.inv_table = inv
        self._inv = [int(v) for v in inv]
        self.add_table = None
        self.mul_table = None
        if q <= _TABLE_Q:
            a = np.arange(q)
            self.add_table = (((digits[a][:, None, :] + digits[a][None, :, :]) % p) @ self._place).astype(np.int64)
            lg = self.log_table
            s = (lg[:, None] + lg[None, :]) % (q - 1)
            mt = self.exp_table[s]
            mt[0, :] = 0
            mt[:, 0] = 0
            self.mul_table = mt.astype(np.int64)
            self._add = self.add_table.tolist()
        else:
            self._add = None

    # -- identity -----------------------------------------------------------
    def __repr__(self):
        return f"GF({self.q})" if self.m == 1 else f"GF({self.p}^{self.m})"

    def __reduce__(self):
        return (make_field, (self.p, self.m))

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    def elements(self) -> range:
        return range(self.q)

    def element_from_index(self, v: int) -> int:
        return int(v)

    def __call__(self, v) -> "FieldElem":
        if isinstance(v, FieldElem):
            return v
        if isinstance(v, str):
            return FieldElem(self, parse_element(self, v))
        if not 0 <= int(v) < self.q:
            if self.m == 1:
                return FieldElem(self, int(v) % self.p)
            raise ValueError(f"{v} is not an element index of {self}")
        return FieldElem(self, int(v))

    # -- scalar arithmetic on ints -----------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self._place)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def xi_pow(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("discrete log of zero")
        return self._log[a]

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("order of zero is undefined")
        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def frobenius(self, a: int, power: int = 1) -> int:
        """``a ** (p ** power)``."""
        return self.pow(a, self.p ** power)

    # -- vectorised arithmetic on integer arrays ----------------------------
    def vadd(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.add_table is not None:
            return self.add_table[a, b]
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._place

    def vneg(self, a):
        return self.neg_table[a]

    def vsub(self, a, b):
        return self.vadd(a, self.neg_table[b])

    def vmul(self, a, b):
        if self.m == 1:
            return (np.asarray(a) * b) % self.p
        if self.mul_table is not None:
            return self.mul_table[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        s = self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, s)

    def vinv(self, a):
        return self.inv_table[a]

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over this field for integer arrays."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1 and A.shape[-1] * (self.p - 1) ** 2 < (1 << 62):
            return (A @ B) % self.p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            out = self.vadd(out, self.vmul(A[:, j : j + 1], B[j : j + 1, :]))
        return out

    # -- display -------------------------------------------------------------
    def format_element(self, a: int) -> str:
        if self.m == 1:
            return str(int(a))
        if a == 0:
            return "0"
        e = self._log[a]
        if e == 0:
            return "1"
        return "w" if e == 1 else f"w^{e}"


FieldSpec = GF


@dataclass(frozen=True)
class FieldElem:
    """An element of a :class:`GF`, wrapping its integer code."""

    owner: GF
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.owner is not self.owner:
                raise ValueError("arithmetic between different fields")
            return other.value
        return self.owner(other).value

    def __add__(self, other):
        return FieldElem(self.owner, self.owner.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.owner, self.owner.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.owner, self.owner.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.owner, self.owner.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.owner, self.owner.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElem(self.owner, self.owner.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.owner, self.owner.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.owner is other.owner and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.owner.q, self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.owner.digits[self.value])

    def __repr__(self):
        return f"{self.owner!r}({self.owner.format_element(self.value)})"


def parse_element(F: GF, text: str) -> int:
    """Parse ``"3"``, ``"w"``, ``"w^2"`` or ``"x^k"`` (power of the primitive element)."""
    s = text.strip().replace(" ", "")
    if s in ("w", "x"):
        return F.xi_pow(1)
    for prefix in ("w^", "x^", "w**", "x**"):
        if s.startswith(prefix):
            return F.xi_pow(int(s[len(prefix):]))
    v = int(s)
    if F.m == 1:
        return v % F.p
    if not 0 <= v < F.q:
        raise ValueError(f"{text!r} is not an element of {F}")
    return v


# ---------------------------------------------------------------------------
# construction

def _poly_mulmod_digits(a, b, mod, p):
    m = len(mod) - 1
    out = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    for i in range(len(out) - 1, m - 1, -1):
        c = out[i]
        if c:
            for j in range(m + 1):
                out[i - m + j] = (out[i - m + j] - c * mod[j]) % p
    return out[:m]


def _digits(v: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(v % p)
        v //= p
    return out


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> GF:
    """Return the canonical ``GF(p^m)``.

    >>> make_field(5).xi
    2
    """
    p, m = int(p), int(m)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    q = p ** m
    if q > MAX_Q:
        raise ValueError(f"q = {q} exceeds {MAX_Q}")
    qm1 = q - 1
    factors = prime_factors(qm1) if qm1 > 1 else []

    if m == 1:
        modulus = (0, 1)

        def pw(v, e):
            return pow(v, e, p)

        def encode_cands():
            return range(1, p)
    else:
        prime = make_field(p, 1)
        mod_poly = smallest_irreducible(prime, m, p)
        modulus = tuple(int(c) for c in mod_poly.coeffs)

        def pw(v, e):
            result = [1] + [0] * (m - 1)
            base = _digits(v, p, m)
            while e:
                if e & 1:
                    result = _poly_mulmod_digits(result, base, modulus, p)
                e >>= 1
                if e:
                    base = _poly_mulmod_digits(base, base, modulus, p)
            return sum(c * p ** i for i, c in enumerate(result))

        def encode_cands():
            return range(1, q)

    xi = None
    for v in encode_cands():
        if pw(v, qm1) != 1:
            continue
        if all(pw(v, qm1 // r) != 1 for r in factors):
            xi = v
            break
    if xi is None:
        raise RuntimeError(f"no primitive element found in GF({q})")

    exp = np.zeros(max(qm1, 1), dtype=np.int64)
    if m == 1:
        v = 1
        for e in range(qm1):
            exp[e] = v
            v = v * xi % p
    else:
        # multiplication by xi is GF(p)-linear: digits(v*xi) = digits(v) @ M
        M = np.array([_digits(_mul_basis(i, xi, modulus, p, m), p, m) for i in range(m)], dtype=np.int64)
        place = p ** np.arange(m, dtype=np.int64)
        vec = np.zeros(m, dtype=np.int64)
        vec[0] = 1
        for e in range(qm1):
            exp[e] = int(vec @ place)
            vec = (vec @ M) % p
    if qm1 == 0:
        exp[0] = 1
    return GF(p, m, modulus, xi, exp)


def _mul_basis(i: int, xi: int, modulus, p: int, m: int) -> int:
    xi_d = _digits(xi, p, m)
    xi_basis = [0] * m
    xi_basis[i] = 1
    prod = _poly_mulmod_digits(xi_basis, xi_d, modulus, p)
    return sum(c * p ** j for j, c in enumerate(prod))


def element_order(x: FieldElem) -> int:
    """Multiplicative order of a nonzero element."""
    if x.value == 0:
        raise ValueError("order of zero is undefined")
    return x.owner.order(x.value)


def discrete_log(x: FieldElem) -> int:
    """Exponent ``e`` in ``[0, q-2]`` with ``xi**e == x``."""
    if x.value == 0:
        raise ValueError("discrete log of zero")
    return x.owner.log(x.value)


# ---------------------------------------------------------------------------
# extension fields

class ExtField:
    """GF(q^z) as polynomials of degree < z over a base :class:`GF`."""

    def __init__(self, base: GF, z: int, modulus: Poly):
        self.base = base
        self.z = z
        self.modulus = modulus
        self.size = base.q ** z
        self._mod = tuple(modulus.coeffs)
        self.zero = (0,) * z
        self.one = (1,) + (0,) * (z - 1)

    def __repr__(self):
        return f"GF({self.base.q}^{self.z})"

    def element_from_index(self, v: int) -> tuple:
        q = self.base.q
        out = []
        for _ in range(self.z):
            out.append(v % q)
            v //= q
        return tuple(out)

    def embed(self, c: int) -> tuple:
        return (int(c),) + (0,) * (self.z - 1)

    def is_base(self, e: tuple) -> bool:
        return not any(e[1:])

    def project(self, e: tuple) -> int:
        if not self.is_base(e):
            raise ValueError("element is not in the base field")
        return e[0]

    def add(self, a: tuple, b: tuple) -> tuple:
        F = self.base
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        F = self.base
        return tuple(F.neg(x) for x in a)

    def sub(self, a: tuple, b: tuple) -> tuple:
        F = self.base
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def mul(self, a: tuple, b: tuple) -> tuple:
        F = self.base
        z = self.z
        if z == 1:
            return (F.mul(a[0], b[0]),)
        add, mul = F.add, F.mul
        out = [0] * (2 * z - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = add(out[i + j], mul(ai, bj))
        mod = self._mod
        sub = F.sub
        for i in range(2 * z - 2, z - 1, -1):
            c = out[i]
            if c:
                for j in range(z):
                    if mod[j]:
                        out[i - z + j] = sub(out[i - z + j], mul(c, mod[j]))
        return tuple(out[:z])

    def pow(self, a: tuple, e: int) -> tuple:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a: tuple) -> tuple:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.size - 2)

    def format_element(self, a: tuple) -> str:
        f = self.base.format_element
        terms = []
        for i in range(self.z - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("y" if i == 1 else f"y^{i}")
            cs = f(c)
            terms.append(cs if i == 0 else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(terms) or "0"

    def order(self, a: tuple) -> int:
        """Multiplicative order; only used on small cyclic subgroups."""
        n = 1
        x = a
        while x != self.one:
            x = self.mul(x, a)
            n += 1
        return n


def _has_exact_order(E: ExtField, x: tuple, order: int) -> bool:
    if E.pow(x, order) != E.one:
        return False
    return all(E.pow(x, order // r) != E.one for r in prime_factors(order)) if order > 1 else True


@lru_cache(maxsize=None)
def make_extension(base: GF, order: int) -> tuple[ExtField, tuple]:
    """Smallest extension ``GF(q^z)`` containing a primitive ``order``-th root of unity.

    Returns the field and a primitive ``order``-th root ``alpha0 = g**((q^z-1)/order)``
    where ``g`` is the first element, in representation order, giving exact order.
    """
    q = base.q
    if gcd(order, q) != 1:
        raise ValueError(f"gcd({order}, {q}) != 1")
    z = multiplicative_order_mod(q, order)
    modulus = smallest_irreducible(base, z, q)
    E = ExtField(base, z, modulus)
    cof = (E.size - 1) // order
    for v in range(1, E.size):
        alpha0 = E.pow(E.element_from_index(v), cof)
        if _has_exact_order(E, alpha0, order):
            return E, alpha0
    raise RuntimeError("no primitive root of unity found")  # pragma: no cover


@dataclass(frozen=True)
class FixedRoot:
    """Primitive ``tn``-th root of unity ``alpha`` with ``alpha**n == a``."""

    field: GF
    n: int
    a: int
    t: int
    ext: ExtField
    alpha: tuple
    index: int
    powers: tuple = dc_field(repr=False, compare=False)

    @property
    def tn(self) -> int:
        return self.t * self.n

    def power(self, e: int) -> tuple:
        return self.powers[e % self.tn]


@lru_cache(maxsize=None)
def _fix_root(F: GF, n: int, a: int) -> FixedRoot:
    if n < 1:
        raise ValueError("length must be positive")
    if gcd(n, F.q) != 1:
        raise ValueError(f"gcd(n={n}, q={F.q}) != 1")
    if a == 0:
        raise ValueError("shift constant must be nonzero")
    t = F.order(a)
    tn = t * n
    E, alpha0 = make_extension(F, tn)
    beta = E.pow(alpha0, n)
    target = E.embed(a)
    i0 = None
    x = beta
    for j in range(1, t + 1):
        if x == target:
            i0 = j
            break
        x = E.mul(x, beta)
    if i0 is None:  # pragma: no cover - impossible for a of order t
        raise RuntimeError("alpha0**n does not generate a")
    i = i0
    while gcd(i, tn) != 1:
        i += t
    alpha = E.pow(alpha0, i)
    powers = [E.one]
    for _ in range(tn - 1):
        powers.append(E.mul(powers[-1], alpha))
    return FixedRoot(F, n, a, t, E, alpha, i, tuple(powers))


def fix_root(F: GF, n: int, a) -> FixedRoot:
    """The canonical root ``alpha`` for ``a``-constacyclic codes of length ``n``."""
    return _fix_root(F, int(n), int(a.value if isinstance(a, FieldElem) else a))


def iter_nonzero(F: GF) -> Iterator[int]:
    return iter(range(1, F.q))
