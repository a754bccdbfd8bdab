"""Exhaustive enumeration of small algebras up to isomorphism, catalog
persistence, and the theorem harness run over a catalog.

The fast path layers the search: naturally-labeled lattices (down-set
construction), antitone involutions, a choice of neutral element, then a
constraint-propagating DFS over fusion tables.  A deliberately dumb slow
path re-counts small sizes with no search pruning so that catalog counts
can be frozen only once the two agree.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from itertools import permutations, product

from dmm import __version__
from dmm.algebra import (FiniteIRL, check_derived_laws, predicates,
                         validate_dmm, validate_irl)
from dmm.constructions import (NAMED_BASIC, canonical_form, hs_contains,
                               is_isomorphic, make_named, sg, zero_generated)
from dmm.filters import classify, deductive_filters, filter_of, omega, quotient

DEFAULT_MAX_SIZE = 8


class SizeTooLarge(Exception):
    pass


class IncompleteCatalog(Exception):
    pass


@dataclass(frozen=True)
class SearchSpec:
    size: int
    square_increasing: bool = True
    distributive: bool = True
    predicate_filters: tuple[str, ...] = ()
    limit: int | None = None

    @property
    def class_name(self) -> str:
        if self.square_increasing and self.distributive:
            return "dmm"
        if not self.square_increasing and not self.distributive:
            return "irl"
        return "irl+" + ("sq" if self.square_increasing else "dist")

    @classmethod
    def for_class(cls, name: str, size: int, **kw) -> "SearchSpec":
        if name == "dmm":
            return cls(size, True, True, **kw)
        if name == "irl":
            return cls(size, False, False, **kw)
        raise ValueError(f"unknown algebra class {name!r}")

    def to_dict(self) -> dict:
        return {"size": self.size,
                "square_increasing": self.square_increasing,
                "distributive": self.distributive,
                "predicate_filters": list(self.predicate_filters),
                "limit": self.limit}


@dataclass
class Catalog:
    spec: SearchSpec
    algebras: list[FiniteIRL]
    complete: bool

    def to_json(self) -> str:
        return json.dumps(
            {"spec": self.spec.to_dict(), "tool_version": __version__,
             "complete": self.complete, "count": len(self.algebras),
             "algebras": [A.to_dict() for A in self.algebras]},
            sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Catalog":
        d = json.loads(text)
        s = d["spec"]
        spec = SearchSpec(s["size"], s["square_increasing"],
                          s["distributive"], tuple(s["predicate_filters"]),
                          s["limit"])
        return cls(spec, [FiniteIRL.from_dict(a) for a in d["algebras"]],
                   d["complete"])

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "Catalog":
        with open(path) as fh:
            return cls.from_json(fh.read())


# ---- layer 1: naturally-labeled lattices ------------------------------------


def _down_closed_subsets(below: list[int], i: int) -> list[int]:
    """Bitmask subsets of {0..i-1} closed downward in the current order."""
    out = []
    for mask in range(1 << i):
        if all(not (mask >> j) & 1 or (below[j] & mask) == below[j]
               for j in range(i)):
            out.append(mask)
    return out


def _lattices(n: int):
    """Yield (meet, join) tables of the lattices on 0..n-1 whose labeling is
    a linear extension with 0 = bottom and n-1 = top.  Every isomorphism
    class appears (possibly more than once); dedup happens downstream.

    Elements are added one at a time; element i's strict down-set is a
    down-closed subset of the existing order, and pairwise meets must stay
    principal at every step (top arrives last, so joins then exist for free).
    """
    full = (1 << n) - 1
    if n == 1:
        yield ((0,),), ((0,),)
        return
    below: list[int] = [1]  # element 0 is the bottom

    def rec():
        i = len(below)
        if i == n:
            yield _tables_from_below(below, n)
            return
        for mask in _down_closed_subsets(below, i):
            nb = mask | (1 << i)
            if i == n - 1 and nb != full:
                continue
            known = set(below)
            if all((nb & below[j]) in known for j in range(i)):
                below.append(nb)
                yield from rec()
                below.pop()

    yield from rec()


def _tables_from_below(below: list[int], n: int):
    idx = {b: k for k, b in enumerate(below)}
    meet = tuple(tuple(idx[below[a] & below[b]] for b in range(n))
                 for a in range(n))
    join_rows = []
    for a in range(n):
        row = []
        for b in range(n):
            u = below[a] | below[b]
            m = (1 << n) - 1
            for k in range(n):
                if below[k] & u == u:
                    m &= below[k]
            row.append(idx[m])
        join_rows.append(tuple(row))
    return meet, tuple(join_rows)


def _lattice_distributive(meet, join, n) -> bool:
    return all(meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]]
               for a in range(n) for b in range(n) for c in range(n))


# ---- layer 2: antitone involutions ------------------------------------------


def _involutions(meet, n):
    for p in permutations(range(n)):
        if any(p[p[a]] != a for a in range(n)):
            continue
        if all((meet[a][b] == a) == (meet[p[b]][p[a]] == p[b])
               for a in range(n) for b in range(n)):
            yield p


# ---- layer 3: fusion tables by constraint-propagating DFS -------------------


def _fusion_tables(n, meet, neg, e, square_increasing, stats=None):
    """All commutative, associative, e-neutral fusion tables compatible with
    the involution law over the given lattice, generated depth-first.

    The e row is fixed by neutrality and the bottom row by absorption (both
    forced in any residuated lattice); each assignment is screened by
    monotonicity, the involution law, associativity on decided triples,
    square-increasingness when requested, and residual existence on
    completed rows.
    """

    def leq(a, b):
        return meet[a][b] == a

    bot = next(a for a in range(n) if all(leq(a, b) for b in range(n)))
    if e == bot and n > 1:
        # e neutral and bottom absorbing collapse the algebra; no tables
        return
    fus = [[-1] * n for _ in range(n)]
    for x in range(n):
        fus[e][x] = fus[x][e] = x
        fus[bot][x] = fus[x][bot] = bot
    cells = [(a, b) for a in range(n) for b in range(a, n)
             if fus[a][b] < 0]
    rng = range(n)

    def ok_after(a, b, v):
        # monotonicity against every decided cell
        for c in rng:
            rowc = fus[c]
            for d in rng:
                w = rowc[d]
                if w < 0:
                    continue
                if leq(c, a) and leq(d, b) and not leq(w, v):
                    return False
                if leq(a, c) and leq(b, d) and not leq(v, w):
                    return False
        if square_increasing and a == b and not leq(a, v):
            return False
        # involution law on decided pairs: x*y <= z iff ~z*y <= ~x
        for x in rng:
            rowx = fus[x]
            for y in rng:
                p = rowx[y]
                if p < 0:
                    continue
                for z in rng:
                    q = fus[neg[z]][y]
                    if q >= 0 and leq(p, z) != leq(q, neg[x]):
                        return False
        # associativity on fully decided triples
        for x in rng:
            for y in rng:
                p = fus[x][y]
                if p < 0:
                    continue
                for z in rng:
                    q = fus[y][z]
                    if q < 0:
                        continue
                    l, r = fus[p][z], fus[x][q]
                    if l >= 0 and r >= 0 and l != r:
                        return False
        # residual existence on completed rows
        for x in rng:
            rowx = fus[x]
            if any(w < 0 for w in rowx):
                continue
            for y in rng:
                sols = [c for c in rng if leq(rowx[c], y)]
                if not any(all(leq(c, m) for c in sols) for m in sols):
                    return False
        return True

    def rec(k):
        if k == len(cells):
            yield tuple(tuple(row) for row in fus)
            return
        a, b = cells[k]
        for v in rng:
            fus[a][b] = fus[b][a] = v
            if ok_after(a, b, v):
                yield from rec(k + 1)
            else:
                if stats is not None:
                    stats["pruned"] += 1
        fus[a][b] = fus[b][a] = -1

    yield from rec(0)


# ---- the fast enumerator ----------------------------------------------------


def enumerate_algebras(spec: SearchSpec, max_size: int = DEFAULT_MAX_SIZE,
                       unsafe: bool = False, progress=None) -> Catalog:
    """Layered exhaustive search; output sorted by canonical form, so two
    runs with the same spec are byte-identical."""
    n = spec.size
    if n > max_size and not unsafe:
        raise SizeTooLarge(f"size {n} above ceiling {max_size}")
    stats = {"pruned": 0, "found": 0}
    seen: dict[bytes, FiniteIRL] = {}
    for meet, join in _lattices(n):
        if spec.distributive and not _lattice_distributive(meet, join, n):
            continue
        for neg in _involutions(meet, n):
            for e in range(n):
                for fus in _fusion_tables(n, meet, neg, e,
                                          spec.square_increasing, stats):
                    A = FiniteIRL(n, meet, join, fus, tuple(neg), e)
                    rep = (validate_dmm(A) if spec.class_name == "dmm"
                           else validate_irl(A))
                    if not rep.ok:
                        raise AssertionError(
                            "search produced an invalid algebra: "
                            + ", ".join(rep.laws_violated()))
                    key = canonical_form(A).data
                    if key not in seen:
                        seen[key] = A
                        stats["found"] += 1
                        if progress:
                            print(f"found {stats['found']} "
                                  f"(pruned {stats['pruned']})",
                                  file=sys.stderr)
    out = [seen[k] for k in sorted(seen)]
    for i, A in enumerate(out):
        A.name = f"{spec.class_name}{n}-{i}"
    complete = True
    if spec.predicate_filters:
        keep = []
        for A in out:
            rec = predicates(A)
            if all(getattr(rec, p) for p in spec.predicate_filters):
                keep.append(A)
        out = keep
    if spec.limit is not None and len(out) > spec.limit:
        out = out[:spec.limit]
        complete = False
    return Catalog(spec, out, complete)


# ---- the slow recount (no search pruning) -----------------------------------


def _slow_lattices(n):
    """All lattice orders on 0..n-1, from raw binary relations.  Quadratic
    blowup on purpose: this path must not share the fast path's generator."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for bits in product((False, True), repeat=len(pairs)):
        rel = [[a == b for b in range(n)] for a in range(n)]
        for (a, b), v in zip(pairs, bits):
            if v:
                rel[a][b] = True
        if any(rel[a][b] and rel[b][a] for a, b in pairs):
            continue
        if any(rel[a][b] and rel[b][c] and not rel[a][c]
               for a in range(n) for b in range(n) for c in range(n)):
            continue
        meet = [[-1] * n for _ in range(n)]
        join = [[-1] * n for _ in range(n)]
        ok = True
        for a in range(n):
            for b in range(n):
                lbs = [c for c in range(n) if rel[c][a] and rel[c][b]]
                glb = [c for c in lbs if all(rel[d][c] for d in lbs)]
                ubs = [c for c in range(n) if rel[a][c] and rel[b][c]]
                lub = [c for c in ubs if all(rel[c][d] for d in ubs)]
                if len(glb) != 1 or len(lub) != 1:
                    ok = False
                    break
                meet[a][b], join[a][b] = glb[0], lub[0]
            if not ok:
                break
        if ok:
            yield (tuple(tuple(r) for r in meet),
                   tuple(tuple(r) for r in join))


def _slow_fusion_ok(n, meet, neg, e, fus, square_increasing):
    def leq(a, b):
        return meet[a][b] == a

    for a in range(n):
        if square_increasing and not leq(a, fus[a][a]):
            return False
        for b in range(n):
            for c in range(n):
                if fus[fus[a][b]][c] != fus[a][fus[b][c]]:
                    return False
                if leq(fus[a][b], c) != leq(fus[neg[c]][b], neg[a]):
                    return False
    return True


def slow_count(n: int, square_increasing: bool = True,
               distributive: bool = True) -> int:
    """Isomorphism-class count by the pruning-free path.  Exponential; meant
    for n <= 4 cross-checks of the fast enumerator."""
    seen = set()
    for meet, join in _slow_lattices(n):
        if distributive and not _lattice_distributive(meet, join, n):
            continue
        for negp in permutations(range(n)):
            if any(negp[negp[a]] != a for a in range(n)):
                continue
            if not all((meet[a][b] == a) == (meet[negp[b]][negp[a]] == negp[b])
                       for a in range(n) for b in range(n)):
                continue
            for e in range(n):
                free = [(a, b) for a in range(n) for b in range(a, n)
                        if a != e and b != e]
                for vals in product(range(n), repeat=len(free)):
                    fus = [[-1] * n for _ in range(n)]
                    for x in range(n):
                        fus[e][x] = fus[x][e] = x
                    for (a, b), v in zip(free, vals):
                        fus[a][b] = fus[b][a] = v
                    if not _slow_fusion_ok(n, meet, negp, e, fus,
                                           square_increasing):
                        continue
                    A = FiniteIRL(n, meet, join,
                                  tuple(tuple(r) for r in fus),
                                  tuple(negp), e)
                    rep = (validate_dmm(A) if square_increasing and distributive
                           else validate_irl(A))
                    if rep.ok:
                        seen.add(canonical_form(A).data)
    return len(seen)


# ---- theorem harness --------------------------------------------------------


@dataclass
class CheckOutcome:
    instances: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


@dataclass
class HarnessReport:
    checks: dict[str, CheckOutcome]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def to_dict(self) -> dict:
        return {name: {"instances": c.instances, "ok": c.ok,
                       "counterexamples": c.counterexamples}
                for name, c in self.checks.items()}

    def text(self) -> str:
        lines = []
        for name, c in self.checks.items():
            mark = "PASS" if c.ok else "FAIL"
            lines.append(f"  [{mark}] {name}: {c.instances} instance(s)"
                         + ("" if c.ok else f"  counterexamples: "
                            f"{c.counterexamples}"))
        return "\n".join(lines)


def theorem_harness(catalog: Catalog) -> HarnessReport:
    """Run the structural checks over every applicable catalog entry."""
    from dmm.structure import (NotApplicable, fusion_pattern_check, lollipop,
                               odd_sugihara_quotient, splitting_check)
    if not catalog.complete or not catalog.algebras:
        raise IncompleteCatalog("harness needs a complete, nonempty catalog")
    checks: dict[str, CheckOutcome] = {}

    def rec(name) -> CheckOutcome:
        return checks.setdefault(name, CheckOutcome())

    basics = {nm: make_named(nm) for nm in NAMED_BASIC}
    for A in catalog.algebras:
        cls = classify(A)
        c = rec("law-suite")
        c.instances += 1
        lr = check_derived_laws(A)
        if not lr.ok:
            c.counterexamples.append((A.name, lr.failures()))

        c = rec("filter-congruence-bijection")
        c.instances += 1
        for G in deductive_filters(A):
            if filter_of(A, omega(A, G)).members != G.members:
                c.counterexamples.append((A.name, sorted(G.members)))
                break

        if cls.fsi and not cls.trivial:
            idem = all(A.fusion[a][a] == a for a in A.elements)
            c = rec("splitting")
            c.instances += 1
            r = splitting_check(A)
            if not r.ok:
                c.counterexamples.append((A.name, r.witness))
            c = rec("rigorous-compactness")
            c.instances += 1
            if not predicates(A).rigorously_compact:
                c.counterexamples.append(A.name)
            c = rec("lollipop")
            c.instances += 1
            lp = lollipop(A)
            if not lp.ok:
                c.counterexamples.append((A.name, lp.violations))
            if not idem:
                c = rec("fusion-pattern")
                c.instances += 1
                try:
                    r = fusion_pattern_check(A)
                    if not r.ok:
                        c.counterexamples.append((A.name, r.witness, r.detail))
                except NotApplicable:
                    c.counterexamples.append((A.name, "unexpected NotApplicable"))
                c = rec("odd-sugihara-quotient")
                c.instances += 1
                _, q = odd_sugihara_quotient(A)
                if not q.ok:
                    c.counterexamples.append((A.name, q.violations))
                # f^2 > e and idempotents at or above f are linearly ordered
                c = rec("idempotents-above-f")
                c.instances += 1
                f2 = A.fusion[A.f][A.f]
                idems = [a for a in A.elements
                         if A.leq(A.f, a) and A.fusion[a][a] == a]
                if not (A.lt(A.e, f2)
                        and all(A.leq(a, b) or A.leq(b, a)
                                for a in idems for b in idems)
                        and all(A.fusion[a][a] == a for a in A.elements
                                if A.leq(A.f, a) and not A.lt(a, f2))):
                    c.counterexamples.append(A.name)

        if cls.simple and not cls.trivial:
            Z, _ = sg(A, ())
            if Z.size == A.size:
                c = rec("zero-generated-simples")
                c.instances += 1
                if not any(is_isomorphic(A, basics[nm])
                           for nm in ("2", "C4", "D4")):
                    c.counterexamples.append(A.name)

        if not cls.trivial:
            c = rec("minimality-shadow")
            c.instances += 1
            if not any(hs_contains(A, basics[nm]) for nm in NAMED_BASIC):
                c.counterexamples.append(A.name)

        if cls.fsi and not cls.trivial:
            c = rec("surjections-onto-zero-generated")
            c.instances += 1
            for G in deductive_filters(A):
                B, _ = quotient(A, G)
                if B.size == 1:
                    continue
                if zero_generated(B)[0].size != B.size:
                    continue
                if B.size != A.size and not is_isomorphic(B, basics["C4"]):
                    c.counterexamples.append((A.name, sorted(G.members)))
    return HarnessReport(checks)


AXIOM_SETS = {
    "2": ("ax-x-le-e",),
    "S3": ("ax-e-eq-f", "ax-semilinear", "ax-S3"),
    "D4": ("ax-anti-idem", "ax-D41", "ax-D42"),
    "C4": ("ax-anti-idem", "ax-e-le-f", "ax-semilinear", "ax-C41", "ax-C42"),
}


def axiomatization_check(catalog: Catalog) -> HarnessReport:
    """On the SI part of a catalog: the axiom set of each small named
    algebra must pin down exactly that algebra."""
    from dmm.terms import law_statements, satisfies
    if not catalog.complete or not catalog.algebras:
        raise IncompleteCatalog("axiomatization check needs a complete catalog")
    checks: dict[str, CheckOutcome] = {}
    si_entries = [A for A in catalog.algebras if classify(A).si]
    for name, laws in AXIOM_SETS.items():
        X = make_named(name)
        out = CheckOutcome()
        stmts = [s for law in laws for s in law_statements(law)]
        if not all(satisfies(X, s).holds for s in stmts):
            out.counterexamples.append(f"{name} fails its own axioms")
        for A in si_entries:
            out.instances += 1
            if all(satisfies(A, s).holds for s in stmts):
                if not is_isomorphic(A, X):
                    out.counterexamples.append(A.name)
        checks[f"axioms-{name}"] = out
    return HarnessReport(checks)
