"""Named algebras and closure constructions: products, subalgebras,
homomorphisms, isomorphism via canonical forms, HS membership, reducts.

The named C4/D4 tables are *derived* from the stated rules (e-neutrality,
absorbing bottom, rigorous compactness, f*f = f^2) and then validated,
rather than hard-coded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, permutations, product

from dmm.algebra import FiniteIRL, NotAnIRL, validate_dmm, validate_irl
from dmm.filters import deductive_filters, quotient


class UnknownName(Exception):
    pass


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteIRL
    target: FiniteIRL
    mapping: tuple[int, ...]

    @property
    def injective(self) -> bool:
        return len(set(self.mapping)) == self.source.size

    @property
    def surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.size

    def is_valid(self) -> bool:
        A, B, h = self.source, self.target, self.mapping
        if h[A.e] != B.e:
            return False
        for a in A.elements:
            if h[A.neg[a]] != B.neg[h[a]]:
                return False
            for b in A.elements:
                if (h[A.meet[a][b]] != B.meet[h[a]][h[b]]
                        or h[A.join[a][b]] != B.join[h[a]][h[b]]
                        or h[A.fusion[a][b]] != B.fusion[h[a]][h[b]]):
                    return False
        return True


@dataclass(frozen=True)
class CanonicalForm:
    data: bytes


# ---- named algebras --------------------------------------------------------


def _from_order(values, leq_pairs, fusion, neg, e, name, labels=None):
    """Assemble an algebra from an order relation given as a leq predicate
    over abstract values, with explicit fusion/neg maps."""
    idx = {v: i for i, v in enumerate(values)}
    n = len(values)
    leq = {(a, b): (a, b) in leq_pairs for a in values for b in values}
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in values:
        for b in values:
            lows = [c for c in values if leq[(c, a)] and leq[(c, b)]]
            ups = [c for c in values if leq[(a, c)] and leq[(b, c)]]
            m = [c for c in lows if all(leq[(d, c)] for d in lows)]
            j = [c for c in ups if all(leq[(c, d)] for d in ups)]
            if len(m) != 1 or len(j) != 1:
                raise NotAnIRL(f"not a lattice at ({a}, {b})")
            meet[idx[a]][idx[b]] = idx[m[0]]
            join[idx[a]][idx[b]] = idx[j[0]]
    fus = [[idx[fusion(a, b)] for b in values] for a in values]
    ng = [idx[neg(a)] for a in values]
    return FiniteIRL.from_tables(n, meet, join, fus, ng, idx[e], name=name,
                                 labels=labels or [str(v) for v in values])


def _chain(values, fusion, neg, e, name, labels=None):
    pairs = {(a, b) for a in values for b in values
             if values.index(a) <= values.index(b)}
    return _from_order(values, pairs, fusion, neg, e, name, labels)


def make_sugihara(n: int) -> FiniteIRL:
    """S_n on the integer chain: S_{2m} on {-m..-1, 1..m} with e = 1,
    S_{2m+1} on {-m..m} with e = 0."""
    if n < 1:
        raise UnknownName(f"S_{n} undefined")
    m = n // 2
    if n % 2 == 0:
        vals = list(range(-m, 0)) + list(range(1, m + 1))
        e = 1
    else:
        vals = list(range(-m, m + 1))
        e = 0

    def fus(a, b):
        if abs(a) != abs(b):
            return a if abs(a) > abs(b) else b
        return min(a, b)

    return _chain(vals, fus, lambda a: -a, e, f"S{n}")


def _rigorous_fusion(values, order_idx, e, bot, top, inner_fusion):
    """Fusion fixed by: e neutral, bot absorbing, top*a = top for a != bot,
    and inner_fusion on the remaining pairs."""
    def fus(a, b):
        if a == bot or b == bot:
            return bot
        if a == top or b == top:
            return top
        if a == e:
            return b
        if b == e:
            return a
        return inner_fusion(a, b)
    return fus


def make_c4() -> FiniteIRL:
    # chain bot < e < f < top, with top = f^2 and bot = ~(f^2)
    vals = ["bot", "e", "f", "top"]
    fus = _rigorous_fusion(vals, None, "e", "bot", "top",
                           lambda a, b: "top")  # only f*f remains
    neg = {"bot": "top", "e": "f", "f": "e", "top": "bot"}
    return _chain(vals, fus, neg.__getitem__, "e", "C4",
                  labels=["~(f^2)", "e", "f", "f^2"])


def make_d4() -> FiniteIRL:
    # diamond: bot < e, f < top with e and f incomparable
    vals = ["bot", "e", "f", "top"]
    pairs = {(a, a) for a in vals} | {("bot", x) for x in vals} | {
        (x, "top") for x in vals}
    fus = _rigorous_fusion(vals, None, "e", "bot", "top",
                           lambda a, b: "top")
    neg = {"bot": "top", "e": "f", "f": "e", "top": "bot"}
    return _from_order(vals, pairs, fus, neg.__getitem__, "e", "D4",
                       labels=["~(f^2)", "e", "f", "f^2"])


def make_two() -> FiniteIRL:
    vals = ["f", "e"]  # f = bottom, e = top; fusion = meet
    return _chain(vals, lambda a, b: "f" if "f" in (a, b) else "e",
                  lambda a: "e" if a == "f" else "f", "e", "2",
                  labels=["f", "e"])


def rigorous_extension(A: FiniteIRL) -> FiniteIRL:
    """Wrap A in one rigorously compact two-point extension: a new bottom
    below and a new top above, with top*a = top for a != bottom."""
    n = A.size
    # new indices: 0 = new bottom, 1..n = old shifted, n+1 = new top
    sh = lambda a: a + 1
    bot, top = 0, n + 1
    m = n + 2

    def tab(old, low, high):
        t = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                if i == bot or j == bot:
                    t[i][j] = low(i, j)
                elif i == top or j == top:
                    t[i][j] = high(i, j)
                else:
                    t[i][j] = sh(old[i - 1][j - 1])
        return t

    meet = tab(A.meet, lambda i, j: bot, lambda i, j: min(i, j)
               if bot in (i, j) else (j if i == top else i))
    join = tab(A.join, lambda i, j: max(i, j) if top in (i, j)
               else (j if i == bot else i), lambda i, j: top)
    fusion = tab(A.fusion, lambda i, j: bot,
                 lambda i, j: bot if bot in (i, j) else top)
    neg = [top] + [sh(A.neg[a]) for a in range(n)] + [bot]
    # fix meet/join rows involving the new extrema properly
    for i in range(m):
        meet[bot][i] = meet[i][bot] = bot
        join[bot][i] = join[i][bot] = i
        meet[top][i] = meet[i][top] = i
        join[top][i] = join[i][top] = top
    labels = None
    if A.labels:
        labels = ["bot'"] + list(A.labels) + ["top'"]
    return FiniteIRL.from_tables(m, meet, join, fusion, neg, sh(A.e),
                                 name=f"ext({A.name})" if A.name else "",
                                 labels=labels)


_NAMED_RE = re.compile(r"^(2|S(\d+)|S_(\d+)|C4|D4|C4ext_(\d+))$")


def make_named(name: str) -> FiniteIRL:
    """Construct and validate one of the named algebras:
    "2", "S3", "C4", "D4", "S_n"/"Sn" (n >= 1), "C4ext_k" (k >= 0)."""
    m = _NAMED_RE.match(name)
    if not m:
        raise UnknownName(name)
    if name == "2":
        A = make_two()
    elif name == "C4":
        A = make_c4()
    elif name == "D4":
        A = make_d4()
    elif name.startswith("C4ext_"):
        A = make_c4()
        for _ in range(int(m.group(4))):
            A = rigorous_extension(A)
        A.name = name
    else:
        A = make_sugihara(int(m.group(2) or m.group(3)))
    rep = validate_dmm(A)
    if not rep.ok:
        raise NotAnIRL(f"{name} failed validation: {rep.laws_violated()}")
    return A


NAMED_BASIC = ("2", "S3", "C4", "D4")


def is_named(name: str) -> bool:
    return bool(_NAMED_RE.match(name))


# ---- closure constructions -------------------------------------------------


def direct_product(A: FiniteIRL, B: FiniteIRL) -> FiniteIRL:
    na, nb = A.size, B.size
    n = na * nb
    enc = lambda a, b: a * nb + b

    def tab(ta, tb):
        t = [[0] * n for _ in range(n)]
        for a1 in range(na):
            for b1 in range(nb):
                for a2 in range(na):
                    for b2 in range(nb):
                        t[enc(a1, b1)][enc(a2, b2)] = enc(ta[a1][a2], tb[b1][b2])
        return t

    neg = [0] * n
    for a in range(na):
        for b in range(nb):
            neg[enc(a, b)] = enc(A.neg[a], B.neg[b])
    name = f"{A.name}x{B.name}" if A.name and B.name else ""
    return FiniteIRL.from_tables(n, tab(A.meet, B.meet), tab(A.join, B.join),
                                 tab(A.fusion, B.fusion), neg,
                                 enc(A.e, B.e), name=name)


def subuniverse(A: FiniteIRL, X) -> list[int]:
    """Least subuniverse containing X and e (sorted element list)."""
    cur = set(X) | {A.e}
    while True:
        new = set(cur)
        for a in cur:
            new.add(A.neg[a])
            for b in cur:
                new.add(A.meet[a][b])
                new.add(A.join[a][b])
                new.add(A.fusion[a][b])
        if new == cur:
            return sorted(cur)
        cur = new


def sg(A: FiniteIRL, X) -> tuple[FiniteIRL, list[int]]:
    """Generated subalgebra plus its inclusion map (sub index -> A index)."""
    elems = subuniverse(A, X)
    idx = {a: i for i, a in enumerate(elems)}
    n = len(elems)

    def tab(t):
        return [[idx[t[a][b]] for b in elems] for a in elems]

    labels = [A.label(a) for a in elems] if A.labels else None
    S = FiniteIRL.from_tables(n, tab(A.meet), tab(A.join), tab(A.fusion),
                              [idx[A.neg[a]] for a in elems], idx[A.e],
                              name=f"Sg({A.name})" if A.name else "",
                              labels=labels)
    return S, elems


def zero_generated(A: FiniteIRL) -> tuple[FiniteIRL, list[int]]:
    return sg(A, ())


def homs(A: FiniteIRL, B: FiniteIRL) -> list[Homomorphism]:
    """All homomorphisms A -> B, by backtracking with closure propagation."""
    out: list[Homomorphism] = []

    def propagate(h: dict[int, int]) -> dict[int, int] | None:
        h = dict(h)
        changed = True
        while changed:
            changed = False
            for a in list(h):
                v = B.neg[h[a]]
                c = A.neg[a]
                if h.get(c, v) != v:
                    return None
                if c not in h:
                    h[c] = v
                    changed = True
                for b in list(h):
                    for ta, tb in ((A.meet, B.meet), (A.join, B.join),
                                   (A.fusion, B.fusion)):
                        c = ta[a][b]
                        v = tb[h[a]][h[b]]
                        if h.get(c, v) != v:
                            return None
                        if c not in h:
                            h[c] = v
                            changed = True
        return h

    def search(h: dict[int, int]):
        h2 = propagate(h)
        if h2 is None:
            return
        free = [a for a in A.elements if a not in h2]
        if not free:
            out.append(Homomorphism(A, B, tuple(h2[a] for a in A.elements)))
            return
        a = free[0]
        for v in B.elements:
            h2[a] = v
            search(h2)
        del h2[a]

    search({A.e: B.e})
    out.sort(key=lambda h: h.mapping)
    return out


# ---- canonical forms and isomorphism ---------------------------------------


def _refine_colors(A: FiniteIRL) -> list[int]:
    n = A.size
    below = [sum(1 for b in range(n) if A.leq(b, a)) for a in range(n)]
    above = [sum(1 for b in range(n) if A.leq(a, b)) for a in range(n)]
    colors = [(a == A.e, below[a], above[a], A.fusion[a][a] == a)
              for a in range(n)]
    colors = _rank(colors)
    while True:
        sig = []
        for a in range(n):
            row = sorted((colors[b], colors[A.meet[a][b]],
                          colors[A.join[a][b]], colors[A.fusion[a][b]])
                         for b in range(n))
            sig.append((colors[a], colors[A.neg[a]], tuple(row)))
        new = _rank(sig)
        if new == colors:
            return colors
        colors = new


def _rank(keys) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys), key=repr))}
    return [order[k] for k in keys]


def _encode(A: FiniteIRL, perm) -> bytes:
    n = A.size
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    out = [perm[A.e]]
    for t in (A.meet, A.join, A.fusion):
        for i in range(n):
            row = t[inv[i]]
            out.extend(perm[row[inv[j]]] for j in range(n))
    out.extend(perm[A.neg[inv[i]]] for i in range(n))
    return bytes(out)


def canonical_form(A: FiniteIRL) -> CanonicalForm:
    """Isomorphism-invariant encoding: the minimum table encoding over all
    relabelings respecting the stable (iso-invariant) color partition."""
    n = A.size
    colors = _refine_colors(A)
    classes: dict[int, list[int]] = {}
    for a, c in enumerate(colors):
        classes.setdefault(c, []).append(a)
    blocks = [classes[c] for c in sorted(classes)]
    best: bytes | None = None
    for choice in product(*(permutations(block) for block in blocks)):
        perm = [0] * n
        new = 0
        for block in choice:
            for a in block:
                perm[a] = new
                new += 1
        enc = _encode(A, perm)
        if best is None or enc < best:
            best = enc
    return CanonicalForm(bytes([n]) + best)


def is_isomorphic(A: FiniteIRL, B: FiniteIRL) -> bool:
    if A.size != B.size:
        return False
    return canonical_form(A) == canonical_form(B)


def hs_contains(A: FiniteIRL, X: FiniteIRL) -> bool:
    """True iff some subalgebra of a quotient of A is isomorphic to X.

    Subalgebras are searched through generating sets of size <= |X|: a copy
    of X, if present, is generated by at most |X| elements.
    """
    cx = canonical_form(X)
    for G in deductive_filters(A):
        Q, _ = quotient(A, G)
        if Q.size < X.size:
            continue
        seen: set[frozenset[int]] = set()
        for k in range(min(X.size, Q.size) + 1):
            for gen in combinations(Q.elements, k):
                u = frozenset(subuniverse(Q, gen))
                if len(u) != X.size or u in seen:
                    continue
                seen.add(u)
                S, _ = sg(Q, gen)
                if canonical_form(S) == cx:
                    return True
    return False


def e_free_reduct(A: FiniteIRL):
    """Drop the distinguished neutral element, yielding a relevant-algebra
    candidate over the signature fusion, meet, join, neg."""
    from dmm.relevant import FiniteRA
    return FiniteRA.from_tables(A.size, A.meet, A.join, A.fusion, A.neg,
                                name=f"{A.name}-" if A.name else "")
