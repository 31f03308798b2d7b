"""Dense univariate polynomials over a finite field.

Coefficients are stored low degree first and the list is trimmed so the
leading coefficient is nonzero; the zero polynomial is the empty tuple.
The coefficient field is any object exposing ``zero``, ``one``, ``add``,
``sub``, ``neg``, ``mul`` and ``inv`` on scalar elements, which covers both
:class:`~constacyclic.field.GF` (elements are ints) and
:class:`~constacyclic.field.ExtField` (elements are tuples).
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence


class FieldMismatch(ValueError):
    pass


def _trim(field, coeffs) -> tuple:
    coeffs = list(coeffs)
    zero = field.zero
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial with coefficients in ``field``, lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable[Any] = ()):
        self.field = field
        self.coeffs = _trim(field, coeffs)

    @classmethod
    def monomial(cls, field, degree: int, coeff=None) -> "Poly":
        c = field.one if coeff is None else coeff
        return cls(field, [field.zero] * degree + [c])

    @classmethod
    def x_minus(cls, field, root) -> "Poly":
        return cls(field, [field.neg(root), field.one])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    @property
    def lead(self):
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def _check(self, other: "Poly"):
        if other.field is not self.field:
            raise FieldMismatch("polynomials live over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        return poly_add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        return poly_sub(self, other)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, [f.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __divmod__(self, other: "Poly"):
        return poly_divmod(self, other)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[1]

    def __call__(self, x):
        return poly_eval(self, x)

    def scale(self, c) -> "Poly":
        f = self.field
        return Poly(f, [f.mul(c, a) for a in self.coeffs])

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lead))

    def map_coeffs(self, field, fn) -> "Poly":
        """Coefficient-wise image of this polynomial in another field."""
        return Poly(field, [fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def format_poly(f: Poly, var: str = "x", fmt=None) -> str:
    """Human readable form, highest degree first, e.g. ``x^4 + x^3 + 2x + 1``."""
    if f.is_zero():
        return "0"
    fmt = fmt or getattr(f.field, "format_element", str)
    terms = []
    one = f.field.one
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == f.field.zero:
            continue
        cs = fmt(c)
        if i == 0:
            terms.append(cs)
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if c == one:
            terms.append(mono)
        elif len(cs) > 1 and not cs.isdigit():
            terms.append(f"({cs}){mono}")
        else:
            terms.append(f"{cs}{mono}")
    return " + ".join(terms)


def poly_add(a: Poly, b: Poly) -> Poly:
    a._check(b)
    f = a.field
    n = max(len(a.coeffs), len(b.coeffs))
    return Poly(f, [f.add(a[i], b[i]) for i in range(n)])


def poly_sub(a: Poly, b: Poly) -> Poly:
    a._check(b)
    f = a.field
    n = max(len(a.coeffs), len(b.coeffs))
    return Poly(f, [f.sub(a[i], b[i]) for i in range(n)])


def poly_mul(a: Poly, b: Poly) -> Poly:
    a._check(b)
    f = a.field
    if not a.coeffs or not b.coeffs:
        return Poly(f)
    zero = f.zero
    out = [zero] * (len(a.coeffs) + len(b.coeffs) - 1)
    add, mul = f.add, f.mul
    for i, ai in enumerate(a.coeffs):
        if ai == zero:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj != zero:
                out[i + j] = add(out[i + j], mul(ai, bj))
    return Poly(f, out)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``a = q*b + r`` with ``deg r < deg b``."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f = a.field
    rem = list(a.coeffs)
    db = b.degree
    if len(rem) <= db:
        return Poly(f), a
    inv_lead = f.inv(b.lead)
    quot = [f.zero] * (len(rem) - db)
    zero = f.zero
    sub, mul = f.sub, f.mul
    bc = b.coeffs
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == zero:
            continue
        c = mul(c, inv_lead)
        quot[i - db] = c
        for j in range(db + 1):
            if bc[j] != zero:
                rem[i - db + j] = sub(rem[i - db + j], mul(c, bc[j]))
    return Poly(f, quot), Poly(f, rem[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    a._check(b)
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_eval(p: Poly, x, field=None):
    """Horner evaluation of ``p`` at ``x``.

    ``field`` is the field ``x`` lives in when it differs from the
    coefficient field; it must provide ``embed`` for base-field scalars.
    """
    f = p.field
    if field is None or field is f:
        acc = f.zero
        for c in reversed(p.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc
    if getattr(field, "base", None) is not f:
        raise FieldMismatch("evaluation point is not in an extension of the coefficient field")
    acc = field.zero
    for c in reversed(p.coeffs):
        acc = field.add(field.mul(acc, x), field.embed(c))
    return acc


def poly_mulmod(a: Poly, b: Poly, mod: Poly) -> Poly:
    return poly_divmod(poly_mul(a, b), mod)[1]


def poly_powmod(a: Poly, e: int, mod: Poly) -> Poly:
    f = a.field
    result = Poly(f, [f.one])
    base = poly_divmod(a, mod)[1]
    while e:
        if e & 1:
            result = poly_mulmod(result, base, mod)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, mod)
    return result


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly, q: int) -> bool:
    """Rabin's irreducibility test over GF(q)."""
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    field = f.field
    x = Poly(field, [field.zero, field.one])
    f = f.monic()

    def frob_iter(g: Poly, times: int) -> Poly:
        for _ in range(times):
            g = poly_powmod(g, q, f)
        return g

    if frob_iter(x, d) != x:
        return False
    for r in prime_factors(d):
        h = poly_sub(frob_iter(x, d // r), x)
        if poly_gcd(f, h).degree > 0:
            return False
    return True


def smallest_irreducible(field, degree: int, q: int) -> Poly:
    """Smallest monic irreducible of ``degree`` over ``field``.

    Candidates are ordered by the integer ``sum(c_i * q**i)`` of their
    non-leading coefficients, so ``c_{degree-1}`` is the most significant.
    """
    for code in range(q ** degree):
        digits = []
        v = code
        for _ in range(degree):
            digits.append(field.element_from_index(v % q))
            v //= q
        if degree > 1 and digits[0] == field.zero:
            continue
        cand = Poly(field, digits + [field.one])
        if is_irreducible(cand, q):
            return cand
    raise RuntimeError(f"no irreducible polynomial of degree {degree} found")


def from_ints(field, coeffs: Sequence[int]) -> Poly:
    return Poly(field, [field.element_from_index(c) for c in coeffs])
