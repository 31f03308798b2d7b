"""Searching constacyclic codes (and Construction X/XX and shortening chains
built from them) against a table of best-known minimum distances."""

from __future__ import annotations

import csv
import json
import logging
import os
import time
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Iterator

from .code import CodeSpec, LinearCode, build_code, family, field_for_q, lineage
from .constructions import (auxiliary_code, construction_x, construction_xx, shorten,
                            with_known_distance)
from .distance import DistanceResult, minimum_distance
from .equivalence import classify
from .field import parse_element

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# jobs

@dataclass
class SearchJob:
    q: int
    n_min: int
    n_max: int
    constants: list[int] | None = None
    max_cosets: int | None = 2
    k_min: int = 1
    k_max: int | None = None
    early_exit: bool = True
    construction_x: bool = True
    construction_xx: bool = False
    shorten: int = 0
    aux_max: int = 3
    base_records: bool = True
    workers: int = 1

    def __post_init__(self):
        field_for_q(self.q)
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError(f"empty length range [{self.n_min}, {self.n_max}]")
        if (self.max_cosets is not None and self.max_cosets < 0) or self.aux_max < 0 or self.shorten < 0:
            raise ValueError("counts must be non-negative")
        if self.k_max is not None and self.k_max < self.k_min:
            raise ValueError(f"empty dimension window [{self.k_min}, {self.k_max}]")

    def lengths(self) -> list[int]:
        return [n for n in range(self.n_min, self.n_max + 1) if gcd(n, self.q) == 1]

    def in_window(self, k: int) -> bool:
        return k >= self.k_min and (self.k_max is None or k <= self.k_max)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SearchJob":
        d = dict(d)
        if "n" in d:
            n = d.pop("n")
            d["n_min"], d["n_max"] = (n, n) if isinstance(n, int) else (n[0], n[1])
        if "k" in d:
            d["k_min"], d["k_max"] = d.pop("k")
        F = field_for_q(d["q"])
        if d.get("constants") is not None:
            d["constants"] = [parse_element(F, str(c)) for c in d["constants"]]
        return cls(**d)

    @classmethod
    def load(cls, path: str) -> "SearchJob":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# best-known table

class BKLCFormatError(ValueError):
    pass


class BKLCTable:
    """Map ``(q, n, k) -> d``; duplicate rows keep the largest ``d``."""

    def __init__(self, rows: dict | None = None):
        self.rows: dict[tuple[int, int, int], int] = dict(rows or {})

    def add(self, q: int, n: int, k: int, d: int):
        key = (q, n, k)
        self.rows[key] = max(d, self.rows.get(key, 0))

    def get(self, q: int, n: int, k: int) -> int | None:
        return self.rows.get((q, n, k))

    def __len__(self):
        return len(self.rows)

    def __contains__(self, key):
        return key in self.rows


def load_bklc(path: str) -> BKLCTable:
    """Read a ``q,n,k,d`` CSV with a header line."""
    table = BKLCTable()
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [(i + 1, r) for i, r in enumerate(rows) if r and not r[0].lstrip().startswith("#")]
    if not rows:
        return table
    lineno, header = rows[0]
    if [h.strip().lower() for h in header] != ["q", "n", "k", "d"]:
        raise BKLCFormatError(f"{path}:{lineno}: expected header q,n,k,d, got {header}")
    for lineno, r in rows[1:]:
        if len(r) != 4:
            raise BKLCFormatError(f"{path}:{lineno}: expected 4 columns, got {len(r)}")
        try:
            q, n, k, d = (int(x) for x in r)
        except ValueError:
            raise BKLCFormatError(f"{path}:{lineno}: non-integer entry in {r}") from None
        if d < 1 or k < 0 or k > n or q < 2:
            raise BKLCFormatError(f"{path}:{lineno}: invalid parameters {r}")
        table.add(q, n, k, d)
    return table


# ---------------------------------------------------------------------------
# records and store

@dataclass
class SearchRecord:
    lineage: dict
    n: int
    k: int
    d: int
    d_status: str
    q: int
    a: int | None = None
    defining_set: list[int] | None = None
    constructions: list[str] = field(default_factory=list)
    table_d: int | None = None
    record_breaking: bool = False
    low_confidence: bool = False
    timestamps: dict = field(default_factory=dict)
    cost: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.record_breaking and self.table_d is not None:
            ok = self.d_status == "exact" and self.d > self.table_d
            ok = ok or (self.d_status == "lower" and self.d >= self.table_d + 1)
            if not ok:
                raise ValueError("record-breaking flag needs exact or lower-bound distance above the table")

    @property
    def params(self) -> str:
        d = f">={self.d}" if self.d_status == "lower" else str(self.d)
        return f"[{self.n},{self.k},{d}]_{self.q}"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SearchRecord":
        return cls(**d)


def persist(record: SearchRecord, store: str):
    """Append one JSON line; flushed and fsynced so an interrupted job keeps it."""
    with open(store, "a") as fh:
        fh.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
        fh.flush()
        os.fsync(fh.fileno())


def read_store(store: str) -> list[SearchRecord]:
    if not os.path.exists(store):
        return []
    out = []
    with open(store) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(SearchRecord.from_dict(json.loads(line)))
            except (ValueError, TypeError) as exc:
                raise ValueError(f"{store}:{lineno}: bad record ({exc})") from None
    return out


def store_index(records: list[SearchRecord]) -> dict[tuple[int, int, int], SearchRecord]:
    """Best record per ``(q, n, k)``."""
    best: dict[tuple[int, int, int], SearchRecord] = {}
    for r in records:
        key = (r.q, r.n, r.k)
        if key not in best or r.d > best[key].d:
            best[key] = r
    return best


def _lineage_key(lin: dict) -> str:
    core = {k: v for k, v in lin.items() if k not in ("d", "d_status")}
    return json.dumps(core, sort_keys=True)


def replay(record: SearchRecord, check_distance: bool = True) -> LinearCode:
    """Rebuild a stored code and confirm its parameters (and distance if asked)."""
    from .constructions import rebuild

    C = rebuild(record.lineage)
    if (C.n, C.k, C.q) != (record.n, record.k, record.q):
        raise AssertionError(f"replay gave {C.params()}, store says {record.params}")
    if check_distance:
        if record.d_status == "exact":
            res = minimum_distance(C, engine="bz")
            if res.value != record.d:
                raise AssertionError(f"replayed distance {res.value} != stored {record.d}")
        elif record.d_status == "lower":
            res = minimum_distance(C, engine="bz", target=record.d)
            if res.status == "upper":
                raise AssertionError(f"replay found weight {res.value} below stored bound {record.d}")
    return C


# ---------------------------------------------------------------------------
# enumeration

def representative_constants(q: int, n: int) -> list[int]:
    """One shift constant per equivalence class (smallest discrete log)."""
    F = field_for_q(q)
    g = classify(F, n)
    return sorted((min(c, key=F.log) for c in g.classes), key=F.log)


def _representative_map(q: int, n: int) -> dict[int, int]:
    F = field_for_q(q)
    out = {}
    for c in classify(F, n).classes:
        r = min(c, key=F.log)
        for a in c:
            out[a] = r
    return out


def job_constants(job: SearchJob, n: int) -> list[int]:
    rep = _representative_map(job.q, n)
    wanted = job.constants if job.constants is not None else sorted(rep)
    out: list[int] = []
    for a in wanted:
        r = rep[a]
        if r not in out:
            out.append(r)
    return out


def enumerate_specs(job: SearchJob) -> Iterator[CodeSpec]:
    """Defining sets of at most ``max_cosets`` cosets with dimension in the window."""
    for n in job.lengths():
        for a in job_constants(job, n):
            fam = family(job.q, n, a)
            seen = set()
            for spec in fam.all_specs(job.max_cosets):
                if not job.in_window(spec.k):
                    continue
                # multiplying by q fixes every coset, so the sorted set is already canonical
                key = spec.defining_set
                if key in seen:
                    continue
                seen.add(key)
                yield spec


# ---------------------------------------------------------------------------
# running

@dataclass
class SearchSummary:
    visited: int = 0
    pruned: int = 0
    persisted: int = 0
    record_breaking: int = 0
    skipped: int = 0
    x_pairs: int = 0
    xx_triples: int = 0
    shortened: int = 0
    records: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["records"] = [r.params if isinstance(r, SearchRecord) else r for r in self.records]
        return d


class _Runner:
    def __init__(self, job: SearchJob, table: BKLCTable, store: str | None, resume: bool):
        self.job = job
        self.table = table
        self.store = store
        self.summary = SearchSummary()
        self.done = set()
        if resume and store:
            self.done = {_lineage_key(r.lineage) for r in read_store(store)}

    def distance(self, C: LinearCode, target: int | None) -> DistanceResult:
        kw = {"workers": self.job.workers}
        if not self.job.early_exit or target is None:
            if C.distance is None or C.distance.status != "exact":
                minimum_distance(C, engine="bz", **kw)
            return C.distance
        if C.distance is not None and C.distance.status == "exact":
            return C.distance
        if C.distance is not None and C.distance.status == "lower" and C.distance.value >= target:
            return C.distance
        res = minimum_distance(C, engine="bz", target=target, **kw)
        return res

    def assess(self, C: LinearCode, spec: CodeSpec | None = None, kinds=()) -> SearchRecord | None:
        """Compare ``C`` to the table; persist when it meets or beats the entry."""
        t0, c0 = time.time(), time.process_time()
        T = self.table.get(C.q, C.n, C.k)
        if T is None and not self.job.base_records and not kinds:
            return None
        self.summary.visited += 1
        key = _lineage_key(lineage(C))
        if key in self.done:
            self.summary.skipped += 1
            return None
        if T is None:
            res = self.distance(C, None)
        else:
            res = self.distance(C, T)
            if res.status == "upper" or (res.status == "exact" and res.value < T):
                self.summary.pruned += 1
                return None
            if res.status == "lower" and res.value < T + 1:
                hi = self.distance(C, T + 1)
                if hi.status == "upper":
                    C.distance = DistanceResult(T, "exact", hi.witness, hi.codewords + res.codewords,
                                                hi.info_sets, T, T, hi.seconds + res.seconds)
        res = C.distance
        beats = T is not None and ((res.status == "exact" and res.value > T)
                                   or (res.status == "lower" and res.value >= T + 1))
        rec = SearchRecord(
            lineage=with_known_distance(C), n=C.n, k=C.k, d=int(res.value), d_status=res.status, q=C.q,
            a=None if spec is None else spec.a,
            defining_set=None if spec is None else list(spec.defining_set),
            constructions=list(kinds), table_d=T, record_breaking=beats, low_confidence=T is None,
            timestamps={"start": t0, "end": time.time()},
            cost={"wall": round(time.time() - t0, 4), "cpu": round(time.process_time() - c0, 4),
                  "codewords": int(res.codewords)})
        self.summary.persisted += 1
        self.summary.record_breaking += int(beats)
        self.summary.records.append(rec)
        if self.store:
            persist(rec, self.store)
        self.done.add(key)
        return rec

    def run(self, specs: list[CodeSpec]):
        job = self.job
        codes: dict[CodeSpec, LinearCode] = {}
        winners: list[tuple[LinearCode, list[str]]] = []
        for spec in specs:
            C = build_code(spec)
            codes[spec] = C
            rec = self.assess(C, spec)
            if rec is not None:
                winners.append((C, []))
        if job.construction_x:
            winners += self.run_x(specs, codes)
        if job.construction_xx:
            winners += self.run_xx(specs, codes)
        for C, kinds in winners:
            self.shorten_chain(C, kinds)
        return self.summary

    def _upper_ok(self, C: LinearCode, need: int) -> bool:
        """False when ``C`` has a codeword of weight below ``need``."""
        if C.distance is not None and C.distance.status in ("exact", "upper") and C.distance.value < need:
            return False
        if C.distance is not None and C.distance.status in ("exact", "lower") and C.distance.value >= need:
            return True
        res = minimum_distance(C, engine="bz", target=need, workers=self.job.workers)
        return res.status != "upper"

    def _exact(self, C: LinearCode) -> int:
        if C.distance is None or C.distance.status != "exact":
            minimum_distance(C, engine="bz", workers=self.job.workers)
        return C.d

    def _aux_codes(self, k3: int):
        for n3 in range(k3, self.job.aux_max + 1):
            A = auxiliary_code(self.job.q, n3, k3)
            if A is not None:
                yield A

    def run_x(self, specs, codes):
        out = []
        for s1 in specs:
            for s2 in specs:
                if (s1.n, s1.a) != (s2.n, s2.a) or not set(s1.defining_set) < set(s2.defining_set):
                    continue
                k3 = s1.k - s2.k
                if k3 > self.job.aux_max:
                    continue
                C1, C2 = codes[s1], codes[s2]
                for C3 in self._aux_codes(k3):
                    T = self.table.get(C1.q, C1.n + C3.n, C1.k)
                    if T is None:
                        continue
                    self.summary.x_pairs += 1
                    # E contains C2 padded with zeros, so d(E) <= d2
                    if not self._upper_ok(C2, T):
                        self.summary.pruned += 1
                        continue
                    # a lower bound on d1 is all the predicted bound needs
                    self._upper_ok(C1, max(1, T - C3.d))
                    E = construction_x(C1, C2, C3)
                    if self.assess(E, kinds=["X"]) is not None:
                        out.append((E, ["X"]))
        return out

    def run_xx(self, specs, codes):
        out = []
        for s in specs:
            subs = [t for t in specs if (t.n, t.a) == (s.n, s.a)
                    and set(s.defining_set) < set(t.defining_set)
                    and 0 < s.k - t.k <= self.job.aux_max]
            for i, t1 in enumerate(subs):
                for t2 in subs[i + 1:]:
                    inter = CodeSpec(s.q, s.n, s.a, tuple(sorted(set(t1.defining_set) | set(t2.defining_set))))
                    for D1 in self._aux_codes(s.k - t1.k):
                        for D2 in self._aux_codes(s.k - t2.k):
                            T = self.table.get(s.q, s.n + D1.n + D2.n, s.k)
                            if T is None:
                                continue
                            self.summary.xx_triples += 1
                            I = build_code(inter)
                            if not self._upper_ok(I, T):
                                self.summary.pruned += 1
                                continue
                            C, C1, C2 = codes[s], codes[t1], codes[t2]
                            for X in (C, C1, C2):
                                self._exact(X)
                            E = construction_xx(C, C1, C2, D1, D2, delta0=self._exact(I))
                            if self.assess(E, kinds=["XX"]) is not None:
                                out.append((E, ["XX"]))
        return out

    def shorten_chain(self, C: LinearCode, kinds: list[str]):
        cur = C
        for _ in range(self.job.shorten):
            if cur.k <= 1:
                return
            S = shorten(cur, [cur.n - 1])
            if S.k != cur.k - 1:
                return
            self.summary.shortened += 1
            if self.assess(S, kinds=kinds + ["shorten"]) is None:
                return
            cur = S


def run_search(job: SearchJob, table: BKLCTable, store: str | None = None,
               resume: bool = True) -> SearchSummary:
    """Enumerate, assess, chain constructions and persist every code meeting the table."""
    specs = list(enumerate_specs(job))
    runner = _Runner(job, table, store, resume)
    log.info("search over %d specs", len(specs))
    return runner.run(specs)
