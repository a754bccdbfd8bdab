"""Command-line surface.

Exit codes: 0 = success / property holds; 1 = a check failed (with a
machine-readable report on stdout); 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from dmm import __version__
from dmm.algebra import (AlgebraError, FiniteIRL, predicates, validate_dmm,
                         validate_irl)
from dmm.constructions import (UnknownName, e_free_reduct, homs,
                               is_isomorphic, is_named, make_named)
from dmm.enumeration import (Catalog, IncompleteCatalog, SearchSpec,
                             SizeTooLarge, axiomatization_check,
                             enumerate_algebras, theorem_harness)
from dmm.filters import classify, dfg, quotient
from dmm.relevant import (FiniteRA, TrivialAlgebra, dfg_ra_set,
                          ra_classify, validate_ra)
from dmm.structure import (NotApplicable, NotDMM, NotFSI,
                           fusion_pattern_check, hasse_text, lollipop,
                           odd_sugihara_quotient, splitting_check)
from dmm.terms import (ParseError, parse_statement, satisfies,
                       statements_from_text, to_text)


class UsageError(Exception):
    pass


def _load_algebra(spec: str, klass: str = "dmm"):
    """Resolve --algebra: a named constructor wins over a file of the same
    name (with a warning); otherwise read a JSON table file."""
    if is_named(spec):
        if os.path.exists(spec):
            print(f"warning: {spec!r} is both a named algebra and a file; "
                  "using the named algebra", file=sys.stderr)
        return make_named(spec)
    if not os.path.exists(spec):
        raise UsageError(f"no such algebra or file: {spec}")
    with open(spec) as fh:
        d = json.load(fh)
    if d.get("signature") == "RA" or klass == "ra":
        return FiniteRA.from_dict(d)
    return FiniteIRL.from_dict(d)


def _load_statements(spec: str):
    if spec.startswith("@"):
        with open(spec[1:]) as fh:
            return statements_from_text(fh.read())
    return [parse_statement(spec)]


def _emit(payload, args, text_fn=None):
    if args.format == "text" and text_fn is not None:
        body = text_fn()
    else:
        body = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body + "\n")
    else:
        print(body)


def _cmd_validate(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    if isinstance(A, FiniteRA):
        rep = validate_ra(A)
    elif args.klass == "irl":
        rep = validate_irl(A)
    else:
        rep = validate_irl(A)
        if rep.ok:
            rep = validate_dmm(A)
    payload = {"algebra": getattr(A, "name", "") or args.algebra,
               "class": args.klass, "ok": rep.ok,
               "violations": [{"law": v.law, "witness": list(v.witness)}
                              for v in rep.violations]}
    _emit(payload, args,
          lambda: ("pass" if rep.ok else
                   "FAIL: " + "; ".join(rep.laws_violated())))
    return 0 if rep.ok else 1


def _cmd_classify(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    if isinstance(A, FiniteRA):
        c = ra_classify(A)
        payload = {"algebra": A.name or args.algebra, "trivial": c.trivial,
                   "simple": c.simple, "si": c.si, "fsi": c.fsi,
                   "deductive_filters": c.filter_count}
    else:
        c = classify(A)
        p = predicates(A)
        payload = {"algebra": A.name or args.algebra, "trivial": c.trivial,
                   "simple": c.simple, "si": c.si, "fsi": c.fsi,
                   "subcover": c.subcover,
                   "idempotent": p.idempotent, "odd": p.odd,
                   "anti_idempotent": p.anti_idempotent,
                   "integral": p.integral,
                   "rigorously_compact": p.rigorously_compact,
                   "distributive": p.distributive, "semilinear": p.semilinear}
    _emit(payload, args,
          lambda: "\n".join(f"{k}: {v}" for k, v in payload.items()))
    return 0


def _cmd_analyze(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    if isinstance(A, FiniteRA):
        raise UsageError("analyze expects a pointed algebra")
    reports = []
    ok = True
    try:
        r = splitting_check(A)
        reports.append(r.to_dict())
        ok &= r.ok
        lp = lollipop(A)
        reports.append(lp.to_dict())
        ok &= lp.ok
        if not lp.idempotent_case:
            try:
                fp = fusion_pattern_check(A)
                reports.append(fp.to_dict())
                ok &= fp.ok
                _, q = odd_sugihara_quotient(A)
                reports.append(q.to_dict())
                ok &= q.ok
            except NotApplicable:
                pass
    except (NotFSI, NotDMM) as exc:
        reports.append({"note": f"structure checks skipped: "
                        f"{type(exc).__name__}({exc})"})
        lp = None

    def text():
        parts = []
        if args.hasse or args.format == "text":
            parts.append(hasse_text(A))
        if lp is not None:
            parts.append(lp.text(A))
        for r in reports:
            if "check" in r and r["check"] != "lollipop":
                parts.append(json.dumps(r, sort_keys=True))
            elif "note" in r:
                parts.append(r["note"])
        return "\n".join(parts)

    payload = {"algebra": A.name or args.algebra, "ok": ok, "reports": reports}
    if args.hasse:
        payload["hasse"] = hasse_text(A)
    _emit(payload, args, text)
    return 0 if ok else 1


def _cmd_satisfies(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    if isinstance(A, FiniteRA):
        raise UsageError("satisfies expects a pointed algebra")
    results = []
    ok = True
    for s in _load_statements(args.statement):
        r = satisfies(A, s)
        results.append({"statement": to_text(s), "holds": r.holds,
                        "counterexample": r.counterexample})
        ok &= r.holds
    payload = {"algebra": A.name or args.algebra, "ok": ok,
               "results": results}
    _emit(payload, args, lambda: "\n".join(
        f"{'pass' if r['holds'] else 'FAIL'}: {r['statement']}"
        + (f"  at {r['counterexample']}" if not r["holds"] else "")
        for r in results))
    return 0 if ok else 1


def _cmd_construct(args) -> int:
    A = make_named(args.algebra)
    _emit(A.to_dict(), args, lambda: hasse_text(A))
    return 0


def _cmd_enumerate(args) -> int:
    if args.size is None:
        raise UsageError("enumerate needs --size")
    spec = SearchSpec.for_class(args.klass, args.size)
    cat = enumerate_algebras(spec, unsafe=args.unsafe_size,
                             progress=args.format == "text")
    if args.out:
        cat.save(args.out)
        print(f"{len(cat.algebras)} algebra(s) -> {args.out}")
    else:
        print(cat.to_json())
    return 0


def _cmd_homs(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    B = _load_algebra(args.algebra2, args.klass)
    hs = homs(A, B)
    payload = [{"map": list(h.mapping), "injective": h.injective,
                "surjective": h.surjective} for h in hs]
    _emit(payload, args, lambda: "\n".join(str(p["map"]) for p in payload)
          or "(none)")
    return 0


def _cmd_iso(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    B = _load_algebra(args.algebra2, args.klass)
    ok = is_isomorphic(A, B)
    _emit({"isomorphic": ok}, args, lambda: "isomorphic" if ok else
          "not isomorphic")
    return 0 if ok else 1


def _parse_generators(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"bad generator list {text!r}") from exc


def _cmd_quotient(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    gens = _parse_generators(args.generators or "")
    G = dfg(A, gens)
    Q, proj = quotient(A, G)
    payload = {"filter": G.sorted_members(), "projection": proj,
               "quotient": Q.to_dict()}
    _emit(payload, args, lambda: hasse_text(Q))
    return 0


def _cmd_reduct(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    R = e_free_reduct(A)
    _emit(R.to_dict(), args)
    return 0


def _cmd_dfg(args) -> int:
    A = _load_algebra(args.algebra, args.klass)
    gens = _parse_generators(args.generators or "")
    if isinstance(A, FiniteRA):
        F = dfg_ra_set(A, gens)
    else:
        F = dfg(A, gens)
    _emit({"generators": gens, "filter": F.sorted_members()}, args,
          lambda: " ".join(map(str, F.sorted_members())))
    return 0


def _cmd_suite(args) -> int:
    """Enumerate up to --size (default 4), then run every harness."""
    from dmm.relevant import (contains_two_reduct, dfg_oracle, dfg_ra,
                              meet_property_check, reconstruct_neutral)
    top = args.size or 4
    ok = True
    rows = []
    for n in range(1, top + 1):
        spec = SearchSpec.for_class(args.klass, n)
        cat = enumerate_algebras(spec, unsafe=args.unsafe_size)
        merged = Catalog(spec, cat.algebras, cat.complete)
        hr = theorem_harness(merged)
        ax = axiomatization_check(merged) if any(
            classify(A).si for A in merged.algebras) else None
        ra_ok = True
        for A in merged.algebras:
            R = e_free_reduct(A)
            if not validate_ra(R).ok or not meet_property_check(R):
                ra_ok = False
            for a in R.elements:
                if dfg_ra(R, a).members != dfg_oracle(R, {a}).members:
                    ra_ok = False
            if reconstruct_neutral(R) != A.e:
                ra_ok = False
            if R.size > 1:
                try:
                    if contains_two_reduct(R) is None:
                        ra_ok = False
                except TrivialAlgebra:
                    ra_ok = False
        row_ok = hr.ok and (ax is None or ax.ok) and ra_ok
        ok &= row_ok
        rows.append((n, len(cat.algebras), row_ok, hr, ax, ra_ok))
    print(f"suite ({args.klass}, sizes 1..{top}), tool {__version__}")
    for n, count, row_ok, hr, ax, ra_ok in rows:
        print(f"size {n}: {count} algebra(s) "
              f"[{'PASS' if row_ok else 'FAIL'}]")
        print(hr.text())
        if ax is not None:
            print(ax.text())
        print(f"  [{'PASS' if ra_ok else 'FAIL'}] relevant-algebra checks")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dmm",
        description="finite-model workbench for residuated structures")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        sp.add_argument("--algebra", help="named algebra or JSON file")
        sp.add_argument("--algebra2", help="second algebra (homs, iso)")
        sp.add_argument("--statement", help="statement text or @file")
        sp.add_argument("--size", type=int)
        sp.add_argument("--class", dest="klass", default="dmm",
                        choices=["irl", "dmm", "ra"])
        sp.add_argument("--format", default="json", choices=["json", "text"])
        sp.add_argument("--out")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--unsafe-size", action="store_true")
        sp.add_argument("--generators", help="comma-separated element list")
        sp.add_argument("--hasse", action="store_true")
        return sp

    add("validate", _cmd_validate, help="check the axioms of a class")
    add("classify", _cmd_classify, help="simple/SI/FSI flags and predicates")
    add("analyze", _cmd_analyze, help="structure decomposition reports")
    add("satisfies", _cmd_satisfies, help="evaluate statements on an algebra")
    add("construct", _cmd_construct, help="build a named algebra")
    add("enumerate", _cmd_enumerate, help="catalog all algebras of a size")
    add("homs", _cmd_homs, help="all homomorphisms between two algebras")
    add("iso", _cmd_iso, help="isomorphism test")
    add("quotient", _cmd_quotient, help="quotient by a generated filter")
    add("reduct", _cmd_reduct, help="drop e (relevant-algebra reduct)")
    add("dfg", _cmd_dfg, help="generated deductive filter")
    add("suite", _cmd_suite, help="enumerate + all theorem harnesses")
    return p


_NEEDS_ALGEBRA = {"validate", "classify", "analyze", "satisfies",
                  "construct", "homs", "iso", "quotient", "reduct", "dfg"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in _NEEDS_ALGEBRA and not args.algebra:
            raise UsageError(f"{args.command} needs --algebra")
        if args.command in ("homs", "iso") and not args.algebra2:
            raise UsageError(f"{args.command} needs --algebra2")
        if args.command == "satisfies" and not args.statement:
            raise UsageError("satisfies needs --statement")
        return args.fn(args)
    except (UsageError, UnknownName, ParseError, SizeTooLarge,
            IncompleteCatalog, AlgebraError, TrivialAlgebra,
            NotFSI, NotDMM, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
