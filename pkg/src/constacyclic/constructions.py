"""Secondary constructions: X, XX, shortening, puncturing, subcodes, extension,
Hermitian dual containment and stabilizer-code parameters.

Every code returned here carries a ``provenance`` dict (its lineage) that
:func:`rebuild` can replay.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .code import (CodeSpec, LinearCode, _sqrt_q, build_code, euclidean_dual, field_for_q,
                   full_space, hermitian_dual, lineage, parity_code, repetition_code, zero_code)
from .distance import DistanceResult, minimum_distance
from .field import GF


class ConstructionError(ValueError):
    """A construction precondition (containment, dimensions, field) failed."""


class NotDualContaining(ConstructionError):
    pass


def _known_d(C: LinearCode) -> int | None:
    """Distance usable as a lower bound, or None."""
    if C.distance is None or C.distance.status == "upper":
        return None
    return int(C.distance.value)


def _lower(value: int | None) -> DistanceResult | None:
    return None if value is None else DistanceResult(int(value), "lower", lower=int(value))


def _same_field(*codes: LinearCode) -> GF:
    F = codes[0].field
    for C in codes[1:]:
        if C.field is not F:
            raise ConstructionError("codes over different fields")
    return F


def complement_rows(F: GF, sub: np.ndarray, sup: np.ndarray) -> np.ndarray:
    """Rows of RREF(sup) that extend a basis of ``sub`` to one of ``sup``."""
    n = sup.shape[1]
    basis = linalg.row_basis(F, sub) if sub.shape[0] else np.zeros((0, n), dtype=np.int64)
    r = basis.shape[0]
    picked = []
    for row in linalg.row_basis(F, sup):
        trial = np.vstack([basis, row[None, :]])
        if linalg.rank(F, trial) > r:
            basis = trial
            r += 1
            picked.append(row)
    return np.array(picked, dtype=np.int64).reshape(len(picked), n)


# ---------------------------------------------------------------------------
# records

@dataclass
class ConstructionRecord:
    kind: str
    inputs: list
    aux: dict = field(default_factory=dict)
    predicted: dict = field(default_factory=dict)
    verified: dict | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "inputs": self.inputs, "aux": self.aux,
                "predicted": self.predicted, "verified": self.verified}

    @classmethod
    def from_dict(cls, d: dict) -> "ConstructionRecord":
        return cls(d["kind"], list(d.get("inputs", [])), dict(d.get("aux", {})),
                   dict(d.get("predicted", {})), d.get("verified"))

    @classmethod
    def of(cls, C: LinearCode) -> "ConstructionRecord":
        lin = lineage(C)
        inputs = lin.get("inputs") or ([lin["input"]] if "input" in lin else [])
        aux = {k: v for k, v in lin.items() if k not in ("kind", "inputs", "input", "predicted")}
        verified = None
        if C.distance is not None and C.distance.status == "exact":
            verified = {"n": C.n, "k": C.k, "d": C.d}
        return cls(lin["kind"], inputs, aux, dict(lin.get("predicted", {})), verified)

    def consistent(self) -> bool:
        """Verified distance never falls below the predicted lower bound."""
        if not self.verified or self.predicted.get("d") is None:
            return True
        return self.verified["d"] >= self.predicted["d"]


# ---------------------------------------------------------------------------
# Construction X and XX

def construction_x(C1: LinearCode, C2: LinearCode, C3: LinearCode | None = None) -> LinearCode:
    """Glue ``C3`` onto the cosets of ``C2`` in ``C1``.

    Rows of ``C2`` get a zero tail, the complement rows of ``C2`` in ``C1``
    get the rows of ``C3`` in order.  Result ``[n + n3, k1, >= min(d2, d1 + d3)]``.
    """
    F = _same_field(C1, C2) if C3 is None else _same_field(C1, C2, C3)
    if C3 is None:
        C3 = zero_code(F, 0)
    if C1.n != C2.n:
        raise ConstructionError(f"length mismatch {C1.n} vs {C2.n}")
    if not C1.contains(C2):
        raise ConstructionError("C2 is not contained in C1")
    deficit = C1.k - C2.k
    if C3.k != deficit:
        raise ConstructionError(f"auxiliary code has dimension {C3.k}, need k1 - k2 = {deficit}")
    n, n3 = C1.n, C3.n
    L = complement_rows(F, C2.G, C1.G)
    top = np.hstack([C2.G, np.zeros((C2.k, n3), dtype=np.int64)])
    bottom = np.hstack([L, C3.G]) if deficit else np.zeros((0, n + n3), dtype=np.int64)
    G = np.vstack([top, bottom])
    d1, d2, d3 = _known_d(C1), _known_d(C2), _known_d(C3)
    if deficit == 0:
        bound = d2
    else:
        bound = None if None in (d1, d2, d3) else min(d2, d1 + d3)
    prov = {"kind": "X", "inputs": [with_known_distance(x) for x in (C1, C2, C3)],
            "predicted": {"n": n + n3, "k": C1.k, "d": bound}}
    return LinearCode(F, G, n=n + n3, distance=_lower(bound), provenance=prov)


def xx_bounds(d: int, d1: int, d2: int, delta0: int, delta1: int, delta2: int) -> dict:
    """Lower bounds for Construction XX.

    ``glued`` follows the gluing actually performed (``D1`` labels ``C/C1``, so
    a word of ``C1`` outside ``C2`` only picks up a ``D2`` tail); ``formula`` is
    ``min(delta0, d1+delta1, d2+delta2, d+delta1+delta2)`` taken literally.
    """
    return {"glued": min(delta0, d1 + delta2, d2 + delta1, d + delta1 + delta2),
            "formula": min(delta0, d1 + delta1, d2 + delta2, d + delta1 + delta2)}


def construction_xx(C: LinearCode, C1: LinearCode, C2: LinearCode, D1: LinearCode | None = None,
                    D2: LinearCode | None = None, delta0: int | None = None,
                    budget: int = 1 << 22) -> LinearCode:
    """Append ``D1`` to the cosets of ``C`` modulo ``C1`` and ``D2`` modulo ``C2``.

    ``dim D_i`` must equal ``dim C - dim C_i``.  The minimum distance
    ``delta0`` of ``C1 & C2`` is computed when not supplied.
    """
    F = _same_field(C, C1, C2)
    D1 = zero_code(F, 0) if D1 is None else D1
    D2 = zero_code(F, 0) if D2 is None else D2
    _same_field(C, D1, D2)
    if not (C.contains(C1) and C.contains(C2)):
        raise ConstructionError("C1 and C2 must be subcodes of C")
    if D1.k != C.k - C1.k or D2.k != C.k - C2.k:
        raise ConstructionError(
            f"auxiliary dimensions ({D1.k}, {D2.k}) must equal the deficits ({C.k - C1.k}, {C.k - C2.k})")
    n, n1, n2 = C.n, D1.n, D2.n
    I = linalg.intersect(F, C1.G, C2.G)
    E1 = complement_rows(F, I, C1.G)
    E2 = complement_rows(F, I, C2.G)
    S = np.vstack([I, E1, E2])
    R = complement_rows(F, S, C.G)
    a1, a2 = E1.shape[0], E2.shape[0]
    z = lambda rows, cols: np.zeros((rows, cols), dtype=np.int64)  # noqa: E731
    blocks = [
        np.hstack([I, z(I.shape[0], n1), z(I.shape[0], n2)]),
        np.hstack([E1, z(a1, n1), D2.G[:a1]]),
        np.hstack([E2, D1.G[:a2], z(a2, n2)]),
        np.hstack([R, D1.G[a2:], D2.G[a1:]]),
    ]
    G = np.vstack(blocks)
    inter = LinearCode(F, I, n=n)
    if delta0 is None:
        delta0 = minimum_distance(inter, engine="brute" if F.q ** inter.k <= budget else "bz").value
    ds = [_known_d(x) for x in (C, C1, C2)] + [0 if D.k == 0 else _known_d(D) for D in (D1, D2)]
    if None in ds:
        b = None
    else:
        b = xx_bounds(ds[0], ds[1], ds[2], delta0, ds[3], ds[4])
    bound = None if b is None else b["glued"]
    prov = {"kind": "XX", "inputs": [with_known_distance(x) for x in (C, C1, C2, D1, D2)],
            "delta0": int(delta0),
            "predicted": {"n": n + n1 + n2, "k": C.k, "d": bound,
                          "d_formula": None if b is None else b["formula"]}}
    return LinearCode(F, G, n=n + n1 + n2, distance=_lower(bound), provenance=prov)


# ---------------------------------------------------------------------------
# shortening and friends

def _positions(C: LinearCode, positions) -> list[int]:
    pos = sorted({int(p) for p in positions})
    if any(p < 0 or p >= C.n for p in pos):
        raise ConstructionError(f"positions out of range for length {C.n}: {pos}")
    return pos


def shorten(C: LinearCode, positions) -> LinearCode:
    """Keep codewords vanishing on ``positions`` and delete those coordinates."""
    F = C.field
    pos = _positions(C, positions)
    keep = [j for j in range(C.n) if j not in set(pos)]
    if C.k == 0:
        G = np.zeros((0, len(keep)), dtype=np.int64)
    else:
        X = linalg.nullspace(F, C.G[:, pos].T, C.k) if pos else np.eye(C.k, dtype=np.int64)
        G = F.matmul(X, C.G)[:, keep] if X.shape[0] else np.zeros((0, len(keep)), dtype=np.int64)
    d = _known_d(C)
    prov = {"kind": "shorten", "input": with_known_distance(C), "positions": pos,
            "predicted": {"n": len(keep), "k": C.k - len(pos), "d": d}}
    return LinearCode(F, G, n=len(keep), distance=_lower(d), provenance=prov)


def puncture(C: LinearCode, positions) -> LinearCode:
    """Delete the coordinates in ``positions``."""
    F = C.field
    pos = _positions(C, positions)
    keep = [j for j in range(C.n) if j not in set(pos)]
    G = C.G[:, keep]
    out = LinearCode(F, G if np.any(G) else np.zeros((0, len(keep)), dtype=np.int64), n=len(keep))
    d = _known_d(C)
    d = None if d is None or out.k < C.k else max(1, d - len(pos))
    out.distance = _lower(d)
    out.provenance = {"kind": "puncture", "input": with_known_distance(C), "positions": pos,
                      "predicted": {"n": len(keep), "k": C.k, "d": d}}
    return out


def subcode(C: LinearCode, k: int) -> LinearCode:
    """The span of the first ``k`` rows of the reduced echelon basis."""
    if not 0 <= k <= C.k:
        raise ConstructionError(f"subcode dimension {k} outside [0, {C.k}]")
    d = _known_d(C)
    prov = {"kind": "subcode", "input": with_known_distance(C), "k": int(k),
            "predicted": {"n": C.n, "k": int(k), "d": d}}
    return LinearCode(C.field, C.reduced[:k], n=C.n, distance=_lower(d), provenance=prov)


def extend(C: LinearCode) -> LinearCode:
    """Append an overall check symbol making every codeword sum to zero."""
    F = C.field
    col = np.zeros((C.k, 1), dtype=np.int64)
    for i in range(C.k):
        s = 0
        for v in C.G[i]:
            s = F.add(s, int(v))
        col[i, 0] = F.neg(s)
    d = _known_d(C)
    prov = {"kind": "extend", "input": with_known_distance(C), "predicted": {"n": C.n + 1, "k": C.k, "d": d}}
    return LinearCode(F, np.hstack([C.G, col]), n=C.n + 1, distance=_lower(d), provenance=prov)


def auxiliary_code(q: int, n: int, k: int) -> LinearCode | None:
    """A small code with known exact distance: full space, parity, repetition or zero."""
    F = field_for_q(q)
    if n == 0 and k == 0:
        C, d = zero_code(F, 0), 1
    elif k == n:
        C, d = full_space(F, n), 1
    elif k == 0:
        C, d = zero_code(F, n), n + 1
    elif k == 1:
        C, d = repetition_code(F, n), n
    elif k == n - 1:
        C, d = parity_code(F, n), 2
    else:
        return None
    C.distance = DistanceResult(d, "exact", lower=d, upper=d)
    return C


# ---------------------------------------------------------------------------
# Hermitian duality and stabilizer codes

def hermitian_dual_containing(C: LinearCode) -> bool:
    """True iff the Hermitian dual of ``C`` lies inside ``C``."""
    _sqrt_q(C.field)
    H = hermitian_dual(C)
    return C.contains(H)


def hermitian_self_dual(C: LinearCode) -> bool:
    return 2 * C.k == C.n and hermitian_dual_containing(C)


@dataclass(frozen=True)
class QuantumParams:
    """Stabilizer code ``[[n, k, d]]_s`` from a Hermitian dual-containing ``[n, (n+k)/2, d]_{s^2}`` code."""

    n: int
    k: int
    d: int | None
    d_status: str = "unknown"
    s: int = 2

    def __post_init__(self):
        if self.k < 0:
            raise ConstructionError(f"quantum dimension {self.k} is negative")

    def __str__(self):
        d = "?" if self.d is None else str(self.d)
        if self.d_status in ("lower", "unknown") and self.d is not None:
            d = ">=" + d
        return f"[[{self.n},{self.k},{d}]]_{self.s}"

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "d_status": self.d_status, "s": self.s}


def quantum_from_params(n: int, k: int, d: int | None, d_status: str = "exact", s: int = 2,
                        self_dual: bool = False) -> QuantumParams:
    """Parameter arithmetic only: ``[n, k, d]_{s^2}`` gives ``[[n, 2k - n, d]]_s``."""
    kq = 2 * k - n
    if kq < 0:
        raise ConstructionError(f"2k - n = {kq} < 0: not Hermitian dual-containing")
    if self_dual and kq != 0:
        raise ConstructionError("a self-dual code must have k = n/2")
    return QuantumParams(n, kq, d, d_status, s)


def quantum_params(C: LinearCode) -> QuantumParams:
    """Check Hermitian dual containment (self-duality when ``2k = n``) and return the stabilizer parameters."""
    s = _sqrt_q(C.field)
    if not hermitian_dual_containing(C):
        raise NotDualContaining(f"{C.params()} does not contain its Hermitian dual")
    kq = 2 * C.k - C.n
    if kq == 0 and not hermitian_self_dual(C):  # pragma: no cover - implied by the rank test
        raise NotDualContaining("k_q = 0 but the code is not Hermitian self-dual")
    return QuantumParams(C.n, kq, C.d, C.d_status, s)


# ---------------------------------------------------------------------------
# replay

def rebuild(lin: dict) -> LinearCode:
    """Reconstruct a code from its lineage dict."""
    kind = lin["kind"]
    if kind == "constacyclic":
        return build_code(CodeSpec.from_text(lin["spec"]))
    if kind == "matrix":
        F = field_for_q(lin["q"])
        return LinearCode(F, np.asarray(lin["G"], dtype=np.int64).reshape(-1, lin["n"]), n=lin["n"])
    if kind in ("full", "zero", "repetition", "parity"):
        F = field_for_q(lin["q"])
        return {"full": full_space, "zero": zero_code, "repetition": repetition_code,
                "parity": parity_code}[kind](F, lin["n"])
    if kind == "X":
        C1, C2, C3 = (rebuild(x) for x in lin["inputs"])
        _copy_distances(lin["inputs"], (C1, C2, C3))
        return construction_x(C1, C2, C3)
    if kind == "XX":
        codes = [rebuild(x) for x in lin["inputs"]]
        _copy_distances(lin["inputs"], codes)
        return construction_xx(*codes, delta0=lin.get("delta0"))
    if kind == "shorten":
        return shorten(_rebuild_input(lin), lin["positions"])
    if kind == "puncture":
        return puncture(_rebuild_input(lin), lin["positions"])
    if kind == "subcode":
        return subcode(_rebuild_input(lin), lin["k"])
    if kind == "extend":
        return extend(_rebuild_input(lin))
    if kind == "dual":
        return euclidean_dual(rebuild(lin["input"]))
    if kind == "hermitian_dual":
        return hermitian_dual(rebuild(lin["input"]))
    if kind == "isometry":
        from .equivalence import apply_isometry, build_witness
        w = lin["witness"]
        W = build_witness(w["q"], w["n"], w["a"], w["b"], s=w["s"])
        return apply_isometry(W, rebuild(lin["input"]), check=False)
    raise ValueError(f"unknown lineage kind {kind!r}")


def _rebuild_input(lin: dict) -> LinearCode:
    C = rebuild(lin["input"])
    _copy_distances([lin["input"]], [C])
    return C


def _copy_distances(lins, codes):
    """Carry predicted lower bounds stored in nested lineages onto rebuilt inputs."""
    for lin, C in zip(lins, codes):
        if C.distance is not None:
            continue
        d = lin.get("d")
        if d is not None:
            C.distance = DistanceResult(int(d), lin.get("d_status", "lower"), lower=int(d))


def with_known_distance(C: LinearCode) -> dict:
    """Lineage with the code's current distance attached, so replays can recompute bounds."""
    lin = dict(lineage(C))
    if C.distance is not None and C.distance.status != "upper":
        lin["d"] = int(C.distance.value)
        lin["d_status"] = C.distance.status
    return lin
