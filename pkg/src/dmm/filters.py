"""Deductive filters, the filter/congruence bijection, quotients and the
FSI/SI/simple classification.

Filters are stored as frozensets of element indices (carriers are tiny).
Congruences are block-id arrays with blocks numbered by least member.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from dmm.algebra import FiniteIRL, square_increasing_witness


class NotAFilter(Exception):
    pass


class NotACongruence(Exception):
    pass


@dataclass(frozen=True)
class DeductiveFilter:
    members: frozenset[int]
    owner: FiniteIRL

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def to_json(self) -> list[int]:
        return self.sorted_members()


@dataclass(frozen=True)
class Congruence:
    blocks: tuple[int, ...]  # blocks[a] = id of a's class, ids by least member
    owner: FiniteIRL

    def related(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for a, bid in enumerate(self.blocks):
            out.setdefault(bid, []).append(a)
        return [out[k] for k in sorted(out)]

    def to_json(self) -> list[int]:
        return list(self.blocks)


def _normalize_blocks(raw: list[int], n: int) -> tuple[int, ...]:
    # renumber block ids by least member
    first: dict[int, int] = {}
    for a in range(n):
        first.setdefault(raw[a], a)
    order = sorted(first.values())
    rank = {least: i for i, least in enumerate(order)}
    return tuple(rank[first[raw[a]]] for a in range(n))


def is_deductive_filter(A: FiniteIRL, members: frozenset[int]) -> bool:
    if A.e not in members:
        return False
    for a in members:
        for b in A.elements:
            if A.leq(a, b) and b not in members:
                return False
        for b in members:
            if A.meet[a][b] not in members or A.fusion[a][b] not in members:
                return False
    return True


def deductive_filters(A: FiniteIRL) -> list[DeductiveFilter]:
    """All deductive filters, by direct enumeration of the subsets
    containing e, sorted by (size, sorted membership)."""
    rest = [a for a in A.elements if a != A.e]
    found = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            mem = frozenset((A.e,) + extra)
            if is_deductive_filter(A, mem):
                found.append(mem)
    found.sort(key=lambda m: (len(m), sorted(m)))
    return [DeductiveFilter(m, A) for m in found]


def dfg(A: FiniteIRL, X) -> DeductiveFilter:
    """Least deductive filter containing X: closure iteration over upward
    closure, meets and fusion, seeded with X and e."""
    cur = set(X) | {A.e}
    while True:
        new = set(cur)
        for a in cur:
            for b in A.elements:
                if A.leq(a, b):
                    new.add(b)
            for b in cur:
                new.add(A.meet[a][b])
                new.add(A.fusion[a][b])
        if new == cur:
            return DeductiveFilter(frozenset(cur), A)
        cur = new


def principal_filter(A: FiniteIRL, b: int) -> DeductiveFilter:
    """[b): the up-set of b (a deductive filter whenever b <= e in a
    square-increasing algebra)."""
    return dfg(A, {b})


def omega(A: FiniteIRL, G: DeductiveFilter) -> Congruence:
    """The congruence {(a,b) : a->b in G and b->a in G}."""
    if G.owner is not A or not is_deductive_filter(A, G.members):
        raise NotAFilter("not a deductive filter of this algebra")
    n = A.size
    raw = list(range(n))
    for a in range(n):
        for b in range(a + 1, n):
            if A.residual(a, b) in G.members and A.residual(b, a) in G.members:
                ra, rb = raw[a], raw[b]
                if ra != rb:
                    for c in range(n):
                        if raw[c] == rb:
                            raw[c] = ra
    return Congruence(_normalize_blocks(raw, n), A)


def is_congruence(A: FiniteIRL, theta: Congruence) -> bool:
    n = A.size
    blk = theta.blocks
    if len(blk) != n:
        return False
    for a in range(n):
        for b in range(n):
            if blk[a] != blk[b]:
                continue
            if blk[A.neg[a]] != blk[A.neg[b]]:
                return False
            for c in range(n):
                for op in (A.meet, A.join, A.fusion):
                    if blk[op[a][c]] != blk[op[b][c]]:
                        return False
    return True


def filter_of(A: FiniteIRL, theta: Congruence) -> DeductiveFilter:
    """Inverse map: {a : (a /\\ e, e) in theta}."""
    if theta.owner is not A or not is_congruence(A, theta):
        raise NotACongruence("not a congruence of this algebra")
    mem = frozenset(a for a in A.elements
                    if theta.related(A.meet[a][A.e], A.e))
    return DeductiveFilter(mem, A)


def quotient(A: FiniteIRL, G: DeductiveFilter) -> tuple[FiniteIRL, list[int]]:
    """Block algebra with induced tables; blocks are numbered by least
    member.  The projection is returned as an element map."""
    theta = omega(A, G)
    proj = list(theta.blocks)
    m = max(proj) + 1
    reps = [0] * m
    for a in reversed(range(A.size)):
        reps[proj[a]] = a

    def tab(t):
        return tuple(tuple(proj[t[reps[i]][reps[j]]] for j in range(m))
                     for i in range(m))

    Q = FiniteIRL(m, tab(A.meet), tab(A.join), tab(A.fusion),
                  tuple(proj[A.neg[reps[i]]] for i in range(m)),
                  proj[A.e], name=f"{A.name}/G" if A.name else "")
    # law of quotient orders: a->b in G  iff  a/G <= b/G
    for a in A.elements:
        for b in A.elements:
            if (A.residual(a, b) in G.members) != Q.leq(proj[a], proj[b]):
                raise AssertionError(
                    f"quotient order law fails at ({a}, {b})")
    return Q, proj


@dataclass
class Classification:
    trivial: bool
    simple: bool
    si: bool
    fsi: bool
    subcover: int | None = None      # largest element strictly below e, if SI
    lemma_applicable: bool = True    # order-based shortcuts valid?


def congruence_lattice(A: FiniteIRL) -> list[Congruence]:
    """All congruences, via the filter bijection, ordered like the filters
    (by size of the filter, so refinement-compatible)."""
    return [omega(A, G) for G in deductive_filters(A)]


def classify(A: FiniteIRL) -> Classification:
    """FSI / SI / simple flags.

    For square-increasing algebras the order-based criteria (e
    join-irreducible; a largest element strictly below e; exactly one strict
    lower bound of e) are used and cross-checked against the congruence
    lattice.  Otherwise only the congruence lattice is consulted.
    """
    n = A.size
    cons = congruence_lattice(A)
    ncon = len(cons)
    if n == 1:
        return Classification(True, False, False, True)

    # congruence-lattice route
    simple_con = ncon == 2
    # SI: a least non-identity congruence (monolith) exists
    nonid = [c for c in cons if max(c.blocks) != n - 1]
    si_con = False
    if nonid:
        for cand in nonid:
            if all(_finer(cand, other, n) for other in nonid):
                si_con = True
                break
    # FSI: identity is meet-irreducible: no two non-identity congruences
    # meet to the identity.
    fsi_con = True
    for i, c1 in enumerate(nonid):
        for c2 in nonid[i:]:
            if _meet_is_identity(c1, c2, n):
                fsi_con = False
                break
        if not fsi_con:
            break

    e = A.e
    if square_increasing_witness(A) is None:
        below = [a for a in A.elements if A.lt(a, e)]
        join_irred = not any(
            A.join[a][b] == e
            for a in A.elements if a != e
            for b in A.elements if b != e)
        sub = None
        for a in below:
            if all(A.leq(b, a) for b in below):
                sub = a
                break
        si_ord = sub is not None
        simple_ord = len(below) == 1
        if (join_irred, si_ord, simple_ord) != (fsi_con, si_con, simple_con):
            raise AssertionError(
                "order-based and congruence-based classification disagree "
                f"on {A.name or 'algebra'}: "
                f"{(join_irred, si_ord, simple_ord)} vs "
                f"{(fsi_con, si_con, simple_con)}")
        return Classification(False, simple_ord, si_ord, join_irred,
                              subcover=sub)
    return Classification(False, simple_con, si_con, fsi_con,
                          subcover=None, lemma_applicable=False)


def _finer(c1: Congruence, c2: Congruence, n: int) -> bool:
    return all(c2.blocks[a] == c2.blocks[b]
               for a in range(n) for b in range(a + 1, n)
               if c1.blocks[a] == c1.blocks[b])


def _meet_is_identity(c1: Congruence, c2: Congruence, n: int) -> bool:
    return not any(c1.blocks[a] == c1.blocks[b] and c2.blocks[a] == c2.blocks[b]
                   for a in range(n) for b in range(a + 1, n))
