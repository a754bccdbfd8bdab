"""Finite involutive residuated lattices given by operation tables.

An algebra lives on the carrier 0..n-1.  The lattice order is *derived* from
the meet table (a <= b iff meet(a, b) == a); it is never stored separately.
The residual a -> b := ~(a * ~b) is computed on demand and memoized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

MAX_WITNESSES_PER_LAW = 32


class AlgebraError(Exception):
    pass


class MalformedTable(AlgebraError):
    pass


class NotAnIRL(AlgebraError):
    pass


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[int, ...]


@dataclass
class ValidationReport:
    ok: bool
    violations: list[Violation] = field(default_factory=list)

    def laws_violated(self) -> list[str]:
        seen: list[str] = []
        for v in self.violations:
            if v.law not in seen:
                seen.append(v.law)
        return seen


def _as_table(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(eq=False)
class FiniteIRL:
    """A finite IRL candidate: tables are not assumed valid until checked.

    Instances are treated as immutable after construction; all derived data
    (residual table, extrema) is memoized on first use.
    """

    size: int
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    fusion: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    e: int
    name: str = ""
    labels: tuple[str, ...] | None = None  # display only, never serialized

    @classmethod
    def from_tables(cls, size, meet, join, fusion, neg, e, name="", labels=None):
        A = cls(size, _as_table(meet), _as_table(join), _as_table(fusion),
                tuple(int(x) for x in neg), int(e), name,
                tuple(labels) if labels else None)
        A.check_well_formed()
        return A

    def check_well_formed(self) -> None:
        n = self.size
        if n < 1:
            raise MalformedTable(f"size must be >= 1, got {n}")
        for nm, tab in (("meet", self.meet), ("join", self.join),
                        ("fusion", self.fusion)):
            if len(tab) != n or any(len(row) != n for row in tab):
                raise MalformedTable(f"{nm} table is not {n}x{n}")
            for row in tab:
                for v in row:
                    if not 0 <= v < n:
                        raise MalformedTable(f"{nm} entry {v} out of range")
        if len(self.neg) != n or any(not 0 <= v < n for v in self.neg):
            raise MalformedTable("neg table malformed")
        if not 0 <= self.e < n:
            raise MalformedTable(f"e={self.e} out of range")

    # ---- derived structure -------------------------------------------------

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def f(self) -> int:
        return self.neg[self.e]

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.meet[a][b] == a

    @cached_property
    def bottom(self) -> int:
        for a in self.elements:
            if all(self.leq(a, b) for b in self.elements):
                return a
        raise NotAnIRL("no least element (meet table is not a lattice)")

    @cached_property
    def top(self) -> int:
        for a in self.elements:
            if all(self.leq(b, a) for b in self.elements):
                return a
        raise NotAnIRL("no greatest element (meet table is not a lattice)")

    @cached_property
    def residual_table(self) -> tuple[tuple[int, ...], ...]:
        # a -> b = ~(a * ~b); computed once, read many.
        neg, fus = self.neg, self.fusion
        return tuple(tuple(neg[fus[a][neg[b]]] for b in self.elements)
                     for a in self.elements)

    def residual(self, a: int, b: int) -> int:
        return self.residual_table[a][b]

    def fuse_power(self, a: int, k: int) -> int:
        v = self.e
        for _ in range(k):
            v = self.fusion[v][a]
        return v

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (a, b) with a covered by b, for Hasse output."""
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.lt(a, b) and not any(
                        self.lt(a, c) and self.lt(c, b) for c in self.elements):
                    out.append((a, b))
        return out

    def relabel(self, perm: list[int] | tuple[int, ...], name: str = "") -> "FiniteIRL":
        """Image algebra under the bijection old index -> perm[old index]."""
        n = self.size
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        def tab(t):
            return tuple(tuple(perm[t[inv[a]][inv[b]]] for b in range(n))
                         for a in range(n))
        return FiniteIRL(n, tab(self.meet), tab(self.join), tab(self.fusion),
                         tuple(perm[self.neg[inv[a]]] for a in range(n)),
                         perm[self.e], name or self.name)

    # ---- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"name": self.name, "size": self.size,
                "meet": [list(r) for r in self.meet],
                "join": [list(r) for r in self.join],
                "fusion": [list(r) for r in self.fusion],
                "neg": list(self.neg), "e": self.e}

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteIRL":
        return cls.from_tables(d["size"], d["meet"], d["join"], d["fusion"],
                               d["neg"], d["e"], d.get("name", ""))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FiniteIRL":
        return cls.from_dict(json.loads(text))

    def tables_equal(self, other: "FiniteIRL") -> bool:
        return (self.size == other.size and self.meet == other.meet
                and self.join == other.join and self.fusion == other.fusion
                and self.neg == other.neg and self.e == other.e)


# ---- validation ------------------------------------------------------------


class _Collector:
    def __init__(self):
        self.violations: list[Violation] = []
        self._counts: dict[str, int] = {}

    def add(self, law: str, witness: tuple[int, ...]) -> None:
        c = self._counts.get(law, 0)
        if c < MAX_WITNESSES_PER_LAW:
            self.violations.append(Violation(law, witness))
        self._counts[law] = c + 1


def validate_irl(A: FiniteIRL) -> ValidationReport:
    """Check every defining axiom of an involutive residuated lattice.

    All violations are collected (capped per axiom) rather than failing fast,
    since enumeration debugging needs witnesses.
    """
    A.check_well_formed()
    n = A.size
    meet, join, fus, neg, e = A.meet, A.join, A.fusion, A.neg, A.e
    col = _Collector()

    for a in range(n):
        if meet[a][a] != a:
            col.add("meet-idempotent", (a,))
        if join[a][a] != a:
            col.add("join-idempotent", (a,))
        if neg[neg[a]] != a:
            col.add("involution-period-2", (a,))
        if fus[e][a] != a or fus[a][e] != a:
            col.add("e-neutral", (a,))
        for b in range(n):
            if meet[a][b] != meet[b][a]:
                col.add("meet-commutative", (a, b))
            if join[a][b] != join[b][a]:
                col.add("join-commutative", (a, b))
            if fus[a][b] != fus[b][a]:
                col.add("fusion-commutative", (a, b))
            if meet[a][join[a][b]] != a:
                col.add("absorption-meet-join", (a, b))
            if join[a][meet[a][b]] != a:
                col.add("absorption-join-meet", (a, b))
            # join must agree with the meet-derived order
            if (join[a][b] == b) != (meet[a][b] == a):
                col.add("order-agreement", (a, b))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    col.add("meet-associative", (a, b, c))
                if join[join[a][b]][c] != join[a][join[b][c]]:
                    col.add("join-associative", (a, b, c))
                if fus[fus[a][b]][c] != fus[a][fus[b][c]]:
                    col.add("fusion-associative", (a, b, c))

    def leq(a, b):
        return meet[a][b] == a

    # involution-fusion law: x*y <= z  iff  ~z*y <= ~x
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if leq(fus[x][y], z) != leq(fus[neg[z]][y], neg[x]):
                    col.add("involution-fusion", (x, y, z))

    report = ValidationReport(not col.violations, col.violations)
    if report.ok:
        # Sanity: with the axioms in place, a -> b must be max{c : a*c <= b}.
        for a in range(n):
            for b in range(n):
                r = A.residual(a, b)
                sols = [c for c in range(n) if leq(fus[a][c], b)]
                if r not in sols or any(not leq(c, r) for c in sols):
                    col.add("residual-is-max", (a, b))
        report = ValidationReport(not col.violations, col.violations)
    return report


def is_distributive(A: FiniteIRL) -> tuple[int, int, int] | None:
    """First witness of a distributivity failure, or None."""
    meet, join = A.meet, A.join
    for a in range(A.size):
        for b in range(A.size):
            for c in range(A.size):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return (a, b, c)
    return None


def square_increasing_witness(A: FiniteIRL) -> int | None:
    """First a with a*a < a (not square-increasing), or None."""
    for a in range(A.size):
        if not A.leq(a, A.fusion[a][a]):
            return a
    return None


def validate_dmm(A: FiniteIRL) -> ValidationReport:
    """A De Morgan monoid is a distributive square-increasing IRL."""
    base = validate_irl(A)
    if not base.ok:
        raise NotAnIRL(
            "not an IRL: " + ", ".join(base.laws_violated()))
    col = _Collector()
    w = square_increasing_witness(A)
    if w is not None:
        col.add("square-increasing", (w,))
    d = is_distributive(A)
    if d is not None:
        col.add("distributive", d)
    return ValidationReport(not col.violations, col.violations)


# ---- predicates ------------------------------------------------------------


@dataclass
class PredicateRecord:
    idempotent: bool
    odd: bool
    anti_idempotent: bool
    integral: bool
    bounded: bool
    extrema: tuple[int, int]
    rigorously_compact: bool
    distributive: bool
    semilinear: bool


def predicates(A: FiniteIRL) -> PredicateRecord:
    n, fus = A.size, A.fusion
    f = A.f
    f2 = fus[f][f]
    bot, top = A.bottom, A.top
    idempotent = all(fus[a][a] == a for a in A.elements)
    anti_idem = all(A.leq(a, f2) for a in A.elements)
    rc = all(fus[top][a] == top for a in A.elements if a != bot)
    distributive = is_distributive(A) is None
    # Semilinearity is decided by the axiom test; the SI-quotient oracle
    # lives in the test suite.
    from dmm.terms import law_statements, satisfies
    (ax,) = law_statements("ax-semilinear")
    semilinear = distributive and satisfies(A, ax).holds
    return PredicateRecord(
        idempotent=idempotent,
        odd=A.e == f,
        anti_idempotent=anti_idem,
        integral=A.e == top,
        bounded=True,
        extrema=(bot, top),
        rigorously_compact=rc,
        distributive=distributive,
        semilinear=semilinear,
    )


# ---- derived-law battery ---------------------------------------------------


@dataclass
class LawReport:
    """Outcome per law: first counterexample tuple or None (= passed)."""
    results: dict[str, tuple[int, ...] | None]

    @property
    def ok(self) -> bool:
        return all(v is None for v in self.results.values())

    def failures(self) -> dict[str, tuple[int, ...]]:
        return {k: v for k, v in self.results.items() if v is not None}


def check_derived_laws(A: FiniteIRL) -> LawReport:
    """Evaluate the standard derived laws over all assignments.

    Laws that require square-increasingness are checked only when the
    algebra is square-increasing.  A valid algebra must pass every
    applicable law; a failure indicates an implementation bug.
    """
    n = A.size
    meet, join, fus, neg, e = A.meet, A.join, A.fusion, A.neg, A.e
    res = A.residual_table
    leq = A.leq
    f = A.f
    out: dict[str, tuple[int, ...] | None] = {}

    def first(name, it):
        out[name] = next(it, None)

    rng = range(n)
    first("law-4a x*(x->y) <= y",
          ((x, y) for x in rng for y in rng if not leq(fus[x][res[x][y]], y)))
    first("law-4b x <= (x->y)->y",
          ((x, y) for x in rng for y in rng if not leq(x, res[res[x][y]][y])))
    first("law-5 (x*y)->z = y->(x->z) = x->(y->z)",
          ((x, y, z) for x in rng for y in rng for z in rng
           if not res[fus[x][y]][z] == res[y][res[x][z]] == res[x][res[y][z]]))
    first("law-6 (x->y)*(y->z) <= x->z",
          ((x, y, z) for x in rng for y in rng for z in rng
           if not leq(fus[res[x][y]][res[y][z]], res[x][z])))
    first("law-7 x*(y|z) = x*y | x*z",
          ((x, y, z) for x in rng for y in rng for z in rng
           if fus[x][join[y][z]] != join[fus[x][y]][fus[x][z]]))
    first("law-8 isotonicity",
          ((x, y, z) for x in rng for y in rng for z in rng
           if leq(x, y) and not (leq(fus[x][z], fus[y][z])
                                 and leq(res[z][x], res[z][y])
                                 and leq(res[y][z], res[x][z]))))
    first("law-9 x<=y iff e<=x->y",
          ((x, y) for x in rng for y in rng
           if leq(x, y) != leq(e, res[x][y])))
    first("law-10 x=y iff e<=x<->y",
          ((x, y) for x in rng for y in rng
           if (x == y) != leq(e, meet[res[x][y]][res[y][x]])))
    first("law-11 e<=x->x and e->x=x",
          ((x,) for x in rng if not (leq(e, res[x][x]) and res[e][x] == x)))
    first("law-12 e<=x iff x->x<=x",
          ((x,) for x in rng if leq(e, x) != leq(res[x][x], x)))

    # De Morgan duality for the involution
    first("de-morgan ~(x&y)=~x|~y",
          ((x, y) for x in rng for y in rng
           if neg[meet[x][y]] != join[neg[x]][neg[y]]
           or neg[join[x][y]] != meet[neg[x]][neg[y]]))

    # bounds behaviour (every finite lattice is bounded)
    bot, top = A.bottom, A.top
    first("bounds bot*x=bot, x->top=top, top^2=top, top->bot=bot",
          ((x,) for x in rng
           if not (fus[bot][x] == bot and res[x][top] == top
                   and fus[top][top] == top and res[top][bot] == bot)))

    first("3-conditions [e<=a=a^2] iff [a*~a=~a] iff [a=a->a]",
          ((a,) for a in rng
           if not ((leq(e, a) and fus[a][a] == a)
                   == (fus[a][neg[a]] == neg[a])
                   == (res[a][a] == a))))

    if square_increasing_witness(A) is None:
        first("law-13 x&y <= x*y",
              ((x, y) for x in rng for y in rng
               if not leq(meet[x][y], fus[x][y])))
        first("law-14 x,y<=e implies x*y=x&y",
              ((x, y) for x in rng for y in rng
               if leq(x, e) and leq(y, e) and fus[x][y] != meet[x][y]))
        first("law-15 e <= x|~x",
              ((x,) for x in rng if not leq(e, join[x][neg[x]])))
        first("cube f<=a implies a^3=a^2",
              ((a,) for a in rng
               if leq(f, a) and A.fuse_power(a, 3) != A.fuse_power(a, 2)))
        f2 = fus[f][f]
        idem_all = all(fus[a][a] == a for a in rng)
        triple = (f2 == f) == leq(f, e) == idem_all
        out["idempotence-triple [f^2=f] iff [f<=e] iff idempotent"] = (
            None if triple else (f,))
    return LawReport(out)
