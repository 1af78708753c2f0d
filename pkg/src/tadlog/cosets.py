"""Todd-Coxeter coset enumeration (HLT with lookahead) and finite group tables."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import Exhausted, PreconditionError
from .presentation import Presentation

DEFAULT_MAX_COSETS = 5_000_000
ENV_MAX_COSETS = "TADLOG_MAX_COSETS"


def default_max_cosets() -> int:
    v = os.environ.get(ENV_MAX_COSETS)
    return int(v) if v else DEFAULT_MAX_COSETS


def _word_columns(word, col):
    out = []
    for g, s in word.letters:
        c = col[g]
        out.append(c if s == 1 else c ^ 1)
    return out


class CosetTable:
    """Column 2j is generator j, column 2j+1 its inverse.  Coset 0 is the
    subgroup.  Undefined entries are -1.  ``parent`` is the union-find
    forest; a coset is live iff it is its own parent."""

    def __init__(self, p: Presentation, subgroup=(), max_cosets: int | None = None):
        self.pres = p
        self.ngens = len(p.generators)
        self.ncols = 2 * self.ngens
        self.col = {g: 2 * j for j, g in enumerate(p.generators)}
        self.relators = [_word_columns(r.free_reduce(), self.col) for r in p.relators]
        self.relators = [r for r in self.relators if r]
        self.subgroup = [_word_columns(w.free_reduce(), self.col) for w in subgroup]
        self.max_cosets = default_max_cosets() if max_cosets is None else max_cosets
        if self.max_cosets < 1:
            raise PreconditionError("max_cosets must be positive")
        self.table = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.complete = False
        self.queue = []

    # -- primitive operations

    def _new(self) -> int:
        if len(self.table) >= self.max_cosets:
            raise _Full
        self.table.append([-1] * self.ncols)
        self.parent.append(len(self.parent))
        self.live += 1
        return len(self.table) - 1

    def _define(self, c: int, x: int) -> int:
        d = self._new()
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        return d

    def _rep(self, c: int) -> int:
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def _merge(self, a: int, b: int):
        a, b = self._rep(a), self._rep(b)
        if a == b:
            return
        if b < a:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        self.queue.append(b)

    def _coincidence(self, a: int, b: int):
        T = self.table
        self.queue = []
        self._merge(a, b)
        i = 0
        q = self.queue
        while i < len(q):
            e = q[i]
            i += 1
            row = T[e]
            for x in range(self.ncols):
                f = row[x]
                if f < 0:
                    continue
                xi = x ^ 1
                if T[f][xi] == e:
                    T[f][xi] = -1
                e1, f1 = self._rep(e), self._rep(f)
                if T[e1][x] >= 0:
                    self._merge(f1, T[e1][x])
                elif T[f1][xi] >= 0:
                    self._merge(e1, T[f1][xi])
                else:
                    T[e1][x] = f1
                    T[f1][xi] = e1

    def _scan_and_fill(self, c: int, w):
        T = self.table
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and T[f][w[i]] >= 0:
                f = T[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i and T[b][w[j] ^ 1] >= 0:
                b = T[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                T[f][w[i]] = b
                T[b][w[i] ^ 1] = f
                return
            self._define(f, w[i])

    def _scan(self, c: int, w):
        """Scan without defining; record deductions and coincidences."""
        T = self.table
        f = b = c
        i, j = 0, len(w) - 1
        while i <= j and T[f][w[i]] >= 0:
            f = T[f][w[i]]
            i += 1
        if i > j:
            if f != b:
                self._coincidence(f, b)
            return
        while j >= i and T[b][w[j] ^ 1] >= 0:
            b = T[b][w[j] ^ 1]
            j -= 1
        if j < i:
            self._coincidence(f, b)
        elif i == j:
            T[f][w[i]] = b
            T[b][w[i] ^ 1] = f

    def _alive(self, c: int) -> bool:
        return self.parent[c] == c

    def _lookahead(self):
        for c in range(len(self.table)):
            if not self._alive(c):
                continue
            for w in self.relators:
                if not self._alive(c):
                    break
                self._scan(c, w)

    def _compact(self, pos: int) -> int:
        """Renumber live cosets in order; returns the new index of the first
        live coset at or after ``pos``."""
        mapping = {}
        newpos = None
        for c in range(len(self.table)):
            if self._alive(c):
                if newpos is None and c >= pos:
                    newpos = len(mapping)
                mapping[c] = len(mapping)
        table = []
        for c in range(len(self.table)):
            if c in mapping:
                table.append([mapping[self._rep(x)] if x >= 0 else -1 for x in self.table[c]])
        self.table = table
        self.parent = list(range(len(table)))
        self.live = len(table)
        return len(table) if newpos is None else newpos

    # -- driver

    def run(self) -> "CosetTable":
        for w in self.subgroup:
            self._scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            if self._alive(c):
                try:
                    for w in self.relators:
                        if not self._alive(c):
                            break
                        self._scan_and_fill(c, w)
                    if self._alive(c):
                        row = self.table[c]
                        for x in range(self.ncols):
                            if row[x] < 0:
                                self._define(c, x)
                except _Full:
                    self._lookahead()
                    if 8 * self.live <= 7 * len(self.table):
                        c = self._compact(c)
                        continue
                    raise Exhausted(self.max_cosets, self.live) from None
            c += 1
            if 2 * self.live < len(self.table) and len(self.table) > 1024:
                c = self._compact(c)
        self._compact(0)
        self.complete = True
        self.verify()
        return self

    def verify(self):
        """Every relator closes at every coset, every subgroup word at coset 0."""
        T = self.table
        for row in T:
            if min(row) < 0:
                raise AssertionError("incomplete coset table")
        for c in range(len(T)):
            for w in self.relators:
                d = c
                for x in w:
                    d = T[d][x]
                if d != c:
                    raise AssertionError(f"relator does not close at coset {c}")
        for w in self.subgroup:
            d = 0
            for x in w:
                d = T[d][x]
            if d != 0:
                raise AssertionError("subgroup generator does not fix coset 0")

    @property
    def index(self) -> int:
        if not self.complete:
            raise PreconditionError("enumeration not complete")
        return len(self.table)

    def dump(self) -> str:
        """One line per coset: the images under each generator (1-based)."""
        heads = [str(self.pres.gen_label(g)) for g in self.pres.generators]
        lines = ["coset " + " ".join(heads)]
        for c, row in enumerate(self.table):
            lines.append(f"{c + 1} " + " ".join(str(row[2 * j] + 1) for j in range(self.ngens)))
        return "\n".join(lines)


class _Full(Exception):
    pass


def todd_coxeter(p: Presentation, subgroup=(), max_cosets: int | None = None) -> CosetTable:
    """Completed coset table; raises Exhausted when the cap is hit."""
    return CosetTable(p, subgroup, max_cosets).run()


def group_order(p: Presentation, max_cosets: int | None = None) -> int:
    return todd_coxeter(p, (), max_cosets).index


@dataclass
class FiniteGroupTable:
    """Elements are the cosets of the trivial subgroup, 0 the identity.

    ``mul[a][b]`` is the product, ``gens[j]`` the image of x_{j+1}, and
    ``phi`` the permutation induced by x_i -> x_{i+1}.
    """

    n: int
    mul: list
    inv: list
    gens: list
    phi: list
    words: list

    @property
    def order(self) -> int:
        return len(self.mul)

    def phi_pow(self, g: int, k: int) -> int:
        return self.phi_power_perm(k)[g]

    def phi_power_perm(self, k: int) -> list:
        k %= self.phi_order()
        cache = self.__dict__.setdefault("_phi_cache", {})
        if k not in cache:
            perm = list(range(self.order))
            for _ in range(k):
                perm = [self.phi[x] for x in perm]
            cache[k] = perm
        return cache[k]

    def phi_order(self) -> int:
        if not hasattr(self, "_phi_order"):
            perm = list(self.phi)
            k = 1
            while any(perm[i] != i for i in range(len(perm))):
                perm = [self.phi[x] for x in perm]
                k += 1
            self._phi_order = k
        return self._phi_order


def regular_representation(t: CosetTable, n: int | None = None) -> FiniteGroupTable:
    """Group table of a completed enumeration over the trivial subgroup.

    Each element gets a shortest defining word from a BFS of the table;
    multiplication is a * b = trace of b's word from a.  phi sends an element
    with word x_{i1}^e1 ... to the trace of x_{i1+1}^e1 ...
    """
    if not t.complete:
        raise PreconditionError("coset table is incomplete")
    if t.subgroup:
        raise PreconditionError("table must be over the trivial subgroup")
    T = t.table
    N = len(T)
    ncols = t.ncols
    ngens = t.ngens
    n = ngens if n is None else n
    words = [None] * N
    words[0] = ()
    order = [0]
    for c in order:
        for x in range(ncols):
            d = T[c][x]
            if words[d] is None:
                words[d] = words[c] + (x,)
                order.append(d)

    def trace(a, w):
        for x in w:
            a = T[a][x]
        return a

    mul = [[trace(a, words[b]) for b in range(N)] for a in range(N)]
    inv = [0] * N
    for a in range(N):
        inv[a] = mul[a].index(0)
    gens = [T[0][2 * j] for j in range(ngens)]

    def shift_col(x):
        j, s = divmod(x, 2)
        return 2 * ((j + 1) % n) + s

    phi = [trace(0, [shift_col(x) for x in words[a]]) for a in range(N)]
    G = FiniteGroupTable(n, mul, inv, gens, phi, words)
    check_automorphism(G)
    return G


def check_automorphism(G: FiniteGroupTable, exhaustive_limit: int = 1000):
    N = G.order
    phi = G.phi
    if sorted(phi) != list(range(N)):
        raise AssertionError("phi is not a bijection")
    if N <= exhaustive_limit:
        pairs = ((a, b) for a in range(N) for b in range(N))
    else:
        import random
        rng = random.Random(0)
        pairs = ((rng.randrange(N), rng.randrange(N)) for _ in range(20000))
    for a, b in pairs:
        if phi[G.mul[a][b]] != G.mul[phi[a]][phi[b]]:
            raise AssertionError("phi does not preserve products")
    for j, g in enumerate(G.gens):
        if phi[g] != G.gens[(j + 1) % G.n]:
            raise AssertionError("phi does not shift the generators")
    if G.phi_order() and G.n % G.phi_order():
        raise AssertionError("phi^n is not the identity")
