"""Command-line interface.

Exit codes
----------
0  success
2  bad arguments or a violated precondition (e.g. gcd(n, q) != 1)
3  ``equiv``: no criterion applies to the pair
4  ``quantum``: the code does not contain its Hermitian dual
5  construction precondition failed (containment or dimensions)
6  enumeration budget exceeded
7  unreadable or malformed input file (job, table, matrix, store)
8  ``mindist --target``: a codeword below the target exists
9  internal verification failure (witness or replay check)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .code import (CodeSpec, LinearCode, build_code, count_codes, family, field_for_q,
                   generator_poly, is_constacyclic, xn_minus_a)
from .constructions import (ConstructionError, NotDualContaining, auxiliary_code, construction_x,
                            construction_xx, quantum_from_params, quantum_params, ConstructionRecord,
                            with_known_distance)
from .distance import BudgetExceeded, DistanceResult, minimum_distance, weight_enumerator
from .equivalence import (build_witness, check_main_theorem, classify, criteria, emit_dot,
                          witness_soundness)
from .field import parse_element
from .poly import Poly, format_poly
from .search import BKLCFormatError, SearchJob, load_bklc, run_search

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_NO_CRITERION = 3
EXIT_NOT_DUAL_CONTAINING = 4
EXIT_CONSTRUCTION = 5
EXIT_BUDGET = 6
EXIT_INPUT = 7
EXIT_TARGET = 8
EXIT_VERIFY = 9


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(args, human: str, payload: dict | None = None):
    if args.format == "json" and payload is not None:
        print(json.dumps(payload, indent=2, sort_keys=True, default=_jsonable))
    else:
        print(human)


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x))


def _field(q: int):
    try:
        return field_for_q(q)
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None


def _const(F, text: str) -> int:
    try:
        v = parse_element(F, text)
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, f"bad field element {text!r}: {exc}") from None
    if v == 0:
        raise CliError(EXIT_PRECONDITION, "shift constant must be nonzero")
    return v


def _family(q: int, n: int, a: int):
    try:
        return family(q, n, a)
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None


def parse_defining_set(q: int, n: int, a: int, text: str) -> CodeSpec:
    """``Z10,Z19`` (coset labels), ``Z(10)``, or plain residues ``10,19``; empty gives the full space."""
    reps = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        tok = tok.strip("Z").strip("()")
        reps.append(int(tok))
    fam = _family(q, n, a)
    bad = [r for r in reps if r not in fam.coset_of]
    if bad:
        raise CliError(EXIT_PRECONDITION, f"residues {bad} are not in Omega_a for n={n}")
    return CodeSpec.from_cosets(q, n, a, reps)


def code_ref(args, text: str | None) -> LinearCode:
    """Spec text ``q:n:e:D``, coset labels (with -q/-n/-a) or a matrix file path."""
    if text is None:
        raise CliError(EXIT_PRECONDITION, "missing code reference")
    if text.count(":") == 3:
        try:
            return build_code(CodeSpec.from_text(text))
        except ValueError as exc:
            raise CliError(EXIT_PRECONDITION, str(exc)) from None
    if text.startswith("@"):
        return read_matrix(text[1:], getattr(args, "q", None))
    if args.q is None or args.n is None or args.a is None:
        raise CliError(EXIT_PRECONDITION, "coset labels need -q, -n and -a")
    F = _field(args.q)
    return build_code(parse_defining_set(args.q, args.n, _const(F, args.a), text))


def read_matrix(path: str, q: int | None) -> LinearCode:
    """JSON ``{"q": 4, "G": [[...], ...]}`` or whitespace rows (``-q`` required)."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from None
    try:
        if text.lstrip().startswith("{"):
            obj = json.loads(text)
            q = obj.get("q", q)
            rows = obj["G"]
            n = obj.get("n")
        else:
            rows = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
            n = None
        if q is None:
            raise CliError(EXIT_INPUT, f"{path}: field size unknown (give -q or a JSON 'q')")
        F = field_for_q(q)
        G = np.asarray(rows, dtype=np.int64)
        if G.size == 0:
            G = G.reshape(0, n or 0)
        return LinearCode(F, G, n=n)
    except CliError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_INPUT, f"{path}: malformed matrix ({exc})") from None


def _distance_payload(C: LinearCode, res: DistanceResult, extra: dict | None = None) -> dict:
    prov = C.provenance or {}
    out = {"n": C.n, "k": C.k, "q": C.q, "d": int(res.value), "d_status": res.status,
           "lineage": prov, "cost": res.to_dict()}
    if prov.get("kind") == "constacyclic":
        spec = CodeSpec.from_text(prov["spec"])
        out["a"] = spec.a
        out["defining_set"] = list(spec.defining_set)
    if extra:
        out.update(extra)
    return out


# ---------------------------------------------------------------------------
# subcommands

def cmd_cosets(args):
    F = _field(args.q)
    a = _const(F, args.a)
    fam = _family(args.q, args.n, a)
    rows = [{"label": c.label, "members": list(c.members), "size": len(c)} for c in fam.cosets]
    human = [f"Omega for a={F.format_element(a)}, n={args.n}, GF({args.q}): t={fam.t}, modulus tn={fam.tn}"]
    human += [f"  {r['label']}: {{{', '.join(map(str, r['members']))}}}" for r in rows]
    human.append(f"  {len(rows)} cosets, {count_codes(args.q, args.n, a)} codes")
    _emit(args, "\n".join(human), {"q": args.q, "n": args.n, "a": a, "t": fam.t, "cosets": rows,
                                   "count": count_codes(args.q, args.n, a)})
    return EXIT_OK


def cmd_factor(args):
    F = _field(args.q)
    a = _const(F, args.a)
    fam = _family(args.q, args.n, a)
    factors = [fam.minpoly(i) for i in range(len(fam.cosets))]
    prod = Poly(F, [1])
    for f in factors:
        prod = prod * f
    target = xn_minus_a(F, args.n, a)
    ok = prod == target
    lines = [f"x^{args.n} - {F.format_element(a)} over GF({args.q}):"]
    for c, f in zip(fam.cosets, factors):
        lines.append(f"  {c.label:>8}  deg {f.degree}:  {format_poly(f)}")
    lines.append(f"  product check: {'ok' if ok else 'FAILED'}")
    payload = {"q": args.q, "n": args.n, "a": a, "product_ok": ok,
               "factors": [{"coset": c.label, "degree": f.degree, "poly": format_poly(f),
                            "coeffs": list(f.coeffs)} for c, f in zip(fam.cosets, factors)]}
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if ok else EXIT_VERIFY


def _witness_orientation(F, n, a, b):
    if check_main_theorem(F, n, a, b):
        return a, b
    if check_main_theorem(F, n, b, a):
        return b, a
    return None


def cmd_equiv(args):
    F = _field(args.q)
    a, b = _const(F, args.a), _const(F, args.b)
    try:
        hits = criteria(F, args.n, a, b)
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    fe = F.format_element
    lines = [f"a={fe(a)} (ord {F.order(a)}), b={fe(b)} (ord {F.order(b)}), n={args.n}, GF({args.q})"]
    payload: dict = {"q": args.q, "n": args.n, "a": a, "b": b, "criteria": [h.to_dict() for h in hits]}
    for h in hits:
        lines.append(f"  {h.kind.value}: {h.condition()}")
    ca, cb = count_codes(args.q, args.n, a), count_codes(args.q, args.n, b)
    payload["counts"] = [ca, cb]
    if not hits:
        lines.append("  no criterion applies")
        if ca != cb:
            lines.append(f"  code counts differ ({ca} vs {cb}): the families are inequivalent")
            payload["inequivalent"] = True
        _emit(args, "\n".join(lines), payload)
        return EXIT_NO_CRITERION
    orient = _witness_orientation(F, args.n, a, b)
    if args.witness or args.verify:
        if orient is None:
            lines.append("  no witness: the main criterion does not apply in either direction")
        else:
            w = build_witness(F, args.n, *orient)
            payload["witness"] = w.to_dict()
            lines.append(f"  witness {fe(orient[0])} -> {fe(orient[1])}: x -> xi^{w.i} x "
                         f"(s={w.s}, m={w.m}, gamma={w.gamma}, theta={w.theta}, "
                         f"beta={w.beta}, beta'={w.beta_prime}, i={w.i})")
            if args.verify:
                rep = witness_soundness(args.q, args.n, *orient)
                payload["verify"] = rep
                lines.append(f"  verified on {rep['checked']} codes, {rep['failures']} failures")
                if rep["failures"]:
                    _emit(args, "\n".join(lines), payload)
                    return EXIT_VERIFY
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_graph(args):
    _field(args.q)
    try:
        g = classify(args.q, args.n)
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    if args.format == "json":
        print(json.dumps(g.to_dict(), indent=2, sort_keys=True))
        return EXIT_OK
    dot = emit_dot(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dot)
    if args.format == "human":
        F = field_for_q(args.q)
        print("classes: " + "  ".join("{" + ", ".join(F.format_element(a) for a in c) + "}"
                                       for c in g.classes))
    elif not args.out:
        sys.stdout.write(dot)
    return EXIT_OK


def _code_from_args(args) -> LinearCode:
    if args.matrix:
        return read_matrix(args.matrix, args.q)
    if args.spec:
        return code_ref(args, args.spec)
    if args.D is not None:
        return code_ref(args, args.D)
    raise CliError(EXIT_PRECONDITION, "give -D, --spec or --matrix")


def cmd_mindist(args):
    C = _code_from_args(args)
    try:
        res = minimum_distance(C, engine=args.engine, target=args.target, budget=args.budget,
                               **({"log_path": args.log, "workers": args.threads} if args.engine != "brute" else {}))
    except BudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, str(exc)) from None
    _emit(args, f"{C.params()}  ({res.status}, {res.codewords} codewords, {res.seconds:.2f} s)\n{res.value}",
          _distance_payload(C, res))
    if args.target is not None and res.status == "upper":
        return EXIT_TARGET
    return EXIT_OK


def cmd_search(args):
    try:
        job = SearchJob.load(args.job)
        table = load_bklc(args.table) if args.table else None
    except (OSError, BKLCFormatError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    from .search import BKLCTable

    if args.threads:
        job.workers = args.threads
    summary = run_search(job, table or BKLCTable(), args.store, resume=not args.fresh)
    d = summary.to_dict()
    lines = [f"visited {summary.visited}, pruned {summary.pruned}, persisted {summary.persisted}, "
             f"record-breaking {summary.record_breaking}"]
    for r in summary.records:
        tag = " RECORD" if r.record_breaking else (" (no table entry)" if r.low_confidence else "")
        lines.append(f"  {r.params} via {'+'.join(r.constructions) or 'constacyclic'}{tag}")
    _emit(args, "\n".join(lines), d)
    return EXIT_OK


def _aux(args, path: str | None, q: int, k3: int) -> LinearCode:
    if path and path != "auto":
        A = read_matrix(path, q)
        minimum_distance(A, engine="brute")
        return A
    if k3 < 0:
        raise CliError(EXIT_CONSTRUCTION, "the subcode is not contained in the larger code (negative deficit)")
    return auxiliary_code(q, k3, k3)


def _with_d(C: LinearCode, engine: str = "bz"):
    if C.distance is None:
        minimum_distance(C, engine=engine)
    return C


def cmd_constructx(args):
    C1, C2 = code_ref(args, args.c1), code_ref(args, args.c2)
    C3 = _aux(args, args.aux, C1.q, C1.k - C2.k)
    for C in (C1, C2):
        _with_d(C)
    try:
        E = construction_x(C1, C2, C3)
    except ConstructionError as exc:
        raise CliError(EXIT_CONSTRUCTION, str(exc)) from None
    return _report_construction(args, E)


def cmd_constructxx(args):
    C, C1, C2 = code_ref(args, args.c), code_ref(args, args.c1), code_ref(args, args.c2)
    D1 = _aux(args, args.d1, C.q, C.k - C1.k)
    D2 = _aux(args, args.d2, C.q, C.k - C2.k)
    for X in (C, C1, C2):
        _with_d(X)
    try:
        E = construction_xx(C, C1, C2, D1, D2)
    except ConstructionError as exc:
        raise CliError(EXIT_CONSTRUCTION, str(exc)) from None
    return _report_construction(args, E)


def _report_construction(args, E: LinearCode):
    lines = [f"{E.params()} (predicted lower bound)"]
    if args.distance:
        res = minimum_distance(E, engine="bz", workers=args.threads)
        lines.append(f"verified: {E.params()}")
    rec = ConstructionRecord.of(E)
    payload = rec.to_dict()
    payload.update({"n": E.n, "k": E.k, "q": E.q, "d": E.d, "d_status": E.d_status,
                    "lineage": with_known_distance(E)})
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_quantum(args):
    if args.params:
        try:
            n, k, d = (int(x) for x in args.params.split(","))
            Q = quantum_from_params(n, k, d, self_dual=args.self_dual)
        except ConstructionError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NOT_DUAL_CONTAINING
        except ValueError:
            raise CliError(EXIT_PRECONDITION, "--params expects n,k,d") from None
        _emit(args, str(Q), Q.to_dict())
        return EXIT_OK
    C = _code_from_args(args)
    if C.field.m % 2:
        raise CliError(EXIT_PRECONDITION, f"GF({C.q}) is not of square order")
    if not args.no_distance:
        minimum_distance(C, engine="bz", workers=args.threads)
    try:
        Q = quantum_params(C)
    except NotDualContaining as exc:
        print(f"error: {exc}; the stabilizer construction needs C to contain its Hermitian dual",
              file=sys.stderr)
        return EXIT_NOT_DUAL_CONTAINING
    _emit(args, f"{C.params()} -> {Q}", Q.to_dict())
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _common_code_args(p, need_n=True):
    p.add_argument("-q", type=int, required=need_n, help="field size")
    p.add_argument("-n", type=int, required=need_n, help="code length")
    p.add_argument("-a", default="1", help="shift constant: integer, w^k or x^k")


def _global_args(p, default):
    def d(v):
        return v if default is None else default
    p.add_argument("--format", choices=("human", "json", "dot"), default=d("human"))
    p.add_argument("-v", "--verbose", action="count", default=d(0))
    p.add_argument("--threads", type=int, default=d(1))
    p.add_argument("--budget", type=int, default=d(1 << 26), help="brute-force codeword cap")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="constacyclic", description=__doc__.split("\n")[0],
                                epilog=__doc__[__doc__.index("Exit codes"):],
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    _global_args(p, None)
    # the same flags are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_args(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    s = sub.add_parser("cosets", help="cyclotomic cosets of Omega_a")
    _common_code_args(s)
    s.set_defaults(func=cmd_cosets)

    s = sub.add_parser("factor", help="factor x^n - a into minimal polynomials")
    _common_code_args(s)
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("equiv", help="equivalence criteria for the a and b families")
    s.add_argument("-q", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-a", required=True)
    s.add_argument("-b", required=True)
    s.add_argument("--witness", action="store_true")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("graph", help="classification graph (DOT)")
    s.add_argument("-q", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_graph)

    for name, func, text in (("mindist", cmd_mindist, "minimum distance of a code"),
                             ("quantum", cmd_quantum, "stabilizer parameters from a Hermitian dual-containing code")):
        s = sub.add_parser(name, help=text)
        _common_code_args(s, need_n=False)
        s.add_argument("-D", help="defining set as coset labels, e.g. Z10,Z19")
        s.add_argument("--spec", help="code spec q:n:log(a):D")
        s.add_argument("--matrix", help="generator matrix file (JSON or rows)")
        s.set_defaults(func=func)
    sub.choices["mindist"].add_argument("--engine", choices=("auto", "brute", "bz"), default="auto")
    sub.choices["mindist"].add_argument("--target", type=int)
    sub.choices["mindist"].add_argument("--log", help="checkpoint log for resumable bz runs")
    sub.choices["quantum"].add_argument("--params", help="parameter-level n,k,d")
    sub.choices["quantum"].add_argument("--self-dual", action="store_true")
    sub.choices["quantum"].add_argument("--no-distance", action="store_true",
                                        help="skip computing d of the classical code")

    s = sub.add_parser("search", help="run a search job")
    s.add_argument("--job", required=True)
    s.add_argument("--table")
    s.add_argument("--store")
    s.add_argument("--fresh", action="store_true", help="ignore records already in the store")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("constructx", help="Construction X")
    _common_code_args(s, need_n=False)
    s.add_argument("--c1", required=True, help="larger code (spec, labels or @matrix)")
    s.add_argument("--c2", required=True, help="subcode")
    s.add_argument("--aux", help="auxiliary code file (default: full space of the deficit)")
    s.add_argument("--distance", action="store_true", help="verify d of the result")
    s.set_defaults(func=cmd_constructx)

    s = sub.add_parser("constructxx", help="Construction XX")
    _common_code_args(s, need_n=False)
    s.add_argument("--c", required=True)
    s.add_argument("--c1", required=True)
    s.add_argument("--c2", required=True)
    s.add_argument("--d1")
    s.add_argument("--d2")
    s.add_argument("--distance", action="store_true")
    s.set_defaults(func=cmd_constructxx)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget <= 0 or args.threads <= 0:
        parser.error("budgets and thread counts must be positive")
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
