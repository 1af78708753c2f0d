"""Star graphs, pieces and the C(p)/T(q) conditions, with the congruence
classification of H_n(m,k) and a brute-force girth oracle beside it."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple

from .cycpres import cyclic_presentation, hnk
from .errors import PreconditionError
from .presentation import Presentation
from .word import cyclically_reduce

INF = math.inf

ANNOTATIONS_T6 = (
    "C(3)-T(6): solvable word and conjugacy problems, automatic (not computed here)",
    "non-special C(3)-T(6): SQ-universal (not computed here)",
)
ANNOTATIONS_T7 = (
    "C(3)-T(7): hyperbolic, torsion-free, Hopfian (not computed here)",
    "natural HNN extension has solvable conjugacy problem (not computed here)",
)


@dataclass
class StarGraph:
    """Undirected multigraph; ``edges`` are (u, v, type) with u, v vertex labels.

    Parallel edges are kept (each comes from a distinct word); loops are not
    allowed.  Vertices of a star graph are (generator, sign) pairs.
    """

    vertices: tuple
    edges: tuple
    n: int | None = None
    index: dict = field(init=False, repr=False)
    adj: list = field(init=False, repr=False)

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        self.edges = tuple((u, v, t) for u, v, t in self.edges)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.adj = [[] for _ in self.vertices]
        for eid, (u, v, _) in enumerate(self.edges):
            iu, iv = self.index[u], self.index[v]
            if iu == iv:
                raise ValueError(f"loop at {u}")
            self.adj[iu].append((iv, eid))
            self.adj[iv].append((iu, eid))

    def degree(self, v) -> int:
        return len(self.adj[self.index[v]])

    def type_counts(self) -> dict:
        out = {}
        for _, _, t in self.edges:
            out[t] = out.get(t, 0) + 1
        return out

    def edge_multiset(self):
        """Sorted list of unordered endpoint pairs (types dropped)."""
        return sorted(tuple(sorted((u, v))) for u, v, _ in self.edges)

    def relabel(self, f) -> "StarGraph":
        return StarGraph(tuple(f(v) for v in self.vertices),
                         tuple((f(u), f(v), t) for u, v, t in self.edges), self.n)


def vertex_label(v, symbol="x") -> str:
    g, s = v
    name = f"{symbol}{g + 1}" if isinstance(g, int) else str(g)
    return name if s == 1 else f"{name}^-1"


def invert_vertex(v):
    return (v[0], -v[1])


def _symmetrized(p: Presentation):
    """(tag, word) for every cyclic permutation of every relator and inverse.

    The tag (relator index, inverted, rotation) makes repeated relators and
    the rotations of proper powers distinct elements.
    """
    out = []
    for ri, r in enumerate(p.relators):
        if not r.is_cyclically_reduced():
            r = cyclically_reduce(r)[0]
        L = r.letters
        Li = tuple((g, -e) for g, e in reversed(L))
        for inv, W in ((False, L), (True, Li)):
            for k in range(len(W)):
                out.append(((ri, inv, k), W[k:] + W[:k]))
    return out


def star_graph(p: Presentation) -> StarGraph:
    """An edge {x, y} for every distinct cyclic permutation x^-1 y u of a
    relator or relator inverse; loops x = y are skipped.

    The permutation y^-1 x u^-1 of the inverse gives the same undirected
    edge, so each word is identified with that partner.
    """
    verts = [(g, s) for g in p.generators for s in (1, -1)]
    seen = set()
    edges = []
    for r in p.relators:
        if not r.is_cyclically_reduced():
            r = cyclically_reduce(r)[0]
        L = r.letters
        N = len(L)
        if not N:
            continue
        Li = tuple((g, -e) for g, e in reversed(L))
        for W, Wo in ((L, Li), (Li, L)):
            for k in range(N):
                word = W[k:] + W[:k]
                if word in seen:
                    continue
                seen.add(word)
                j = (2 * N - k - 2) % N
                seen.add(Wo[j:] + Wo[:j])
                g1, s1 = word[0]
                x = (g1, -s1)
                y = word[1 % N]
                if x != y:
                    edges.append((x, y, ""))
    n = len(p.generators) if all(isinstance(g, int) for g in p.generators) else None
    return StarGraph(tuple(verts), tuple(edges), n)


def star_hnk(n: int, m: int, k: int) -> StarGraph:
    """Typed star graph of H_n(m,k): X {x_i, x_{i+m}^-1}, Y {x_i, x_{i+B}},
    Z {x_i^-1, x_{i+A}^-1} with A = k, B = k - m; loops dropped."""
    A, B = k % n, (k - m) % n
    verts = [(g, s) for g in range(n) for s in (1, -1)]
    edges = []
    for t, (d, s1, s2) in (("X", (m % n, 1, -1)), ("Y", (B, 1, 1)), ("Z", (A, -1, -1))):
        for i in range(n):
            u, v = (i, s1), ((i + d) % n, s2)
            if u != v:
                edges.append((u, v, t))
    return StarGraph(tuple(verts), tuple(edges), n)


def is_isomorphic_under_inversion(generic: StarGraph, typed: StarGraph) -> bool:
    """Equal edge multisets after applying v -> v^-1 to the generic graph."""
    return generic.relabel(invert_vertex).edge_multiset() == typed.edge_multiset()


def girth(g: StarGraph, roots=None):
    """Shortest cycle length (parallel edges give 2-cycles), INF if acyclic.

    BFS from every root; the minimum over all vertices is exact.  For graphs
    with a vertex-transitive symmetry, orbit representatives suffice.
    """
    adj = g.adj
    nv = len(adj)
    rootidx = range(nv) if roots is None else [g.index[r] for r in roots]
    best = INF
    for s in rootidx:
        dist = [-1] * nv
        pedge = [-1] * nv
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            du = dist[u]
            if 2 * du + 1 >= best:
                break
            for v, eid in adj[u]:
                if eid == pedge[u]:
                    continue
                if dist[v] < 0:
                    dist[v] = du + 1
                    pedge[v] = eid
                    q.append(v)
                else:
                    c = du + dist[v] + 1
                    if c < best:
                        best = c
    return best


class CycleRecord(NamedTuple):
    length: int
    types: str
    vertices: tuple
    edge_ids: tuple


def _canonical_cycle(g: StarGraph, vseq, eseq) -> CycleRecord:
    L = len(eseq)
    cands = []
    for seqv, seqe in ((list(vseq), list(eseq)),
                       ([vseq[0]] + list(reversed(vseq[1:])), list(reversed(eseq)))):
        for r in range(L):
            v2 = seqv[r:] + seqv[:r]
            e2 = seqe[r:] + seqe[:r]
            cands.append((tuple(v2), tuple(e2)))
    vs, es = min(cands)
    types = "".join(g.edges[e][2] for e in es)
    return CycleRecord(L, types, tuple(g.vertices[i] for i in vs), es)


def enumerate_cycles(g: StarGraph, lmax: int) -> list[CycleRecord]:
    """All simple cycles of length <= lmax, one record per edge set."""
    adj = g.adj
    found = {}
    for s in range(len(adj)):
        vpath = [s]
        epath = []
        onpath = {s}

        def dfs(u):
            for v, eid in adj[u]:
                if epath and eid == epath[-1]:
                    continue
                if v == s:
                    if epath and (len(epath) >= 2 or eid != epath[0]):
                        key = frozenset(epath + [eid])
                        if len(key) == len(epath) + 1 and key not in found:
                            found[key] = _canonical_cycle(g, vpath, epath + [eid])
                    continue
                if v < s or v in onpath or len(epath) + 1 >= lmax:
                    continue
                vpath.append(v)
                epath.append(eid)
                onpath.add(v)
                dfs(v)
                onpath.discard(v)
                epath.pop()
                vpath.pop()

        dfs(s)
    return sorted(found.values(), key=lambda c: (c.length, c.vertices, c.edge_ids))


def girth_and_spectrum(g: StarGraph, lmax: int, roots=None):
    """(girth, {length: count} for lengths <= lmax, cycle records)."""
    if lmax < 3:
        raise PreconditionError("Lmax must be at least 3")
    cycles = enumerate_cycles(g, lmax)
    counts = {}
    for c in cycles:
        counts[c.length] = counts.get(c.length, 0) + 1
    gi = girth(g, roots)
    if cycles and cycles[0].length != gi:
        raise AssertionError("cycle enumeration disagrees with BFS girth")
    return gi, counts, cycles


def pieces_and_C(p: Presentation):
    """(set of pieces as letter tuples, largest p with C(p)).

    A piece is a word that is a prefix of two differently tagged elements of
    the symmetrized relator set.  Every subword of a piece is a piece, so the
    fewest pieces covering a relator is found greedily.
    """
    sym = _symmetrized(p)
    if not sym:
        return set(), INF
    maxlen = max(len(w) for _, w in sym)
    pieces = set()
    for L in range(1, maxlen + 1):
        owners = {}
        for tag, w in sym:
            if len(w) >= L:
                owners.setdefault(w[:L], set()).add(tag)
        new = {pre for pre, tags in owners.items() if len(tags) >= 2}
        if not new:
            break
        pieces |= new
    best = INF
    for _, w in sym:
        # greedy cover of w (as a linear word starting at this rotation)
        count, i = 0, 0
        while i < len(w):
            j = i + 1
            if w[i:j] not in pieces:
                count = INF
                break
            while j < len(w) and w[i:j + 1] in pieces:
                j += 1
            count += 1
            i = j
        best = min(best, count)
    return pieces, best


def max_piece_length(pieces) -> int:
    return max((len(x) for x in pieces), default=0)


def classify_T(g: StarGraph, p: Presentation, roots=None):
    """Largest q > 4 with C(3)-T(q), INF when the star graph is a forest, or
    the string ``"below T(5)"``."""
    for r in p.relators:
        if len(cyclically_reduce(r)[0]) < 3:
            raise PreconditionError(f"relator {r} has length < 3; T(q) criterion does not apply")
    gi = girth(g, roots)
    if gi < 5:
        return "below T(5)"
    return gi


@dataclass
class SCClassification:
    n: int
    m: int
    k: int
    A: int
    B: int
    c3t6: bool
    c3t7: bool
    girth: float | int | None = None
    special: bool = False
    excluded_case: str | None = None
    failed: tuple = ()
    annotations: tuple = ()

    def summary(self) -> str:
        if self.c3t7:
            head = "C(3)-T(7)"
        elif self.c3t6:
            head = "C(3)-T(6), not T(7)"
        else:
            head = "not C(3)-T(6)"
        return head


def _congruences(n, A, B, tmax, pairs):
    bad = []
    for t in range(1, tmax + 1):
        if (t * A) % n == 0:
            bad.append(f"{t}A=0")
        if (t * B) % n == 0:
            bad.append(f"{t}B=0")
    for name, lhs, rhs in pairs:
        if (lhs - rhs) % n == 0:
            bad.append(f"{name}: {lhs % n}={rhs % n}")
        elif (lhs + rhs) % n == 0:
            bad.append(f"{name} (minus): {lhs % n}=-{rhs % n}")
    return bad


def thm61_failures(n: int, m: int, k: int):
    """Lists of failed conditions for (a) C(3)-T(6) and (b) C(3)-T(7)."""
    A, B = k % n, (k - m) % n
    fa = _congruences(n, A, B, 5, [("A=+-B", A, B), ("A=+-2B", A, 2 * B), ("B=+-2A", B, 2 * A)])
    fb = _congruences(n, A, B, 6, [("A=+-2B", A, 2 * B), ("A=+-3B", A, 3 * B), ("B=+-2A", B, 2 * A),
                                   ("B=+-3A", B, 3 * A), ("2A=+-2B", 2 * A, 2 * B)])
    return fa, fb


def thm61_classify(n: int, m: int, k: int) -> SCClassification:
    """Residue arithmetic only."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    fa, fb = thm61_failures(n, m, k)
    c6, c7 = not fa, not fb
    ann = ()
    if c6:
        ann += ANNOTATIONS_T6 + ("non-special by the congruence theorem",)
    if c7:
        ann += ANNOTATIONS_T7
    ex = identify_excluded_case(n, m, k)
    return SCClassification(n, m, k, k % n, (k - m) % n, c6, c7,
                            excluded_case=ex.tag if ex else None,
                            failed=tuple(fa if not c6 else fb), annotations=ann)


class OracleResult(NamedTuple):
    relator_length: int
    girth: float | int
    c3t6: bool
    c3t7: bool
    special: bool


ORBIT_ROOTS = ((0, 1), (0, -1))


def hnk_oracle(n: int, m: int, k: int) -> OracleResult:
    """Build the presentation, reduce, scan for the star graph, BFS girth."""
    p = cyclic_presentation(hnk(n, m, k)).cyclically_reduced()
    rl = len(p.relators[0])
    g = star_graph(p)
    gi = girth(g, ORBIT_ROOTS)
    special = gi == 6 and is_special_c3t6(g)
    return OracleResult(rl, gi, rl == 3 and gi >= 6, rl == 3 and gi >= 7, special)


def classify(n: int, m: int, k: int) -> SCClassification:
    """Congruence classification with the oracle's girth and special flag."""
    c = thm61_classify(n, m, k)
    o = hnk_oracle(n, m, k)
    c.girth = o.girth
    c.special = o.special
    return c


def _is_odd_prime(p: int) -> bool:
    return p > 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def cor63_classify(p: int, k: int) -> bool:
    """The prime-n corollary's formula, evaluated literally."""
    if not _is_odd_prime(p):
        raise PreconditionError(f"{p} is not an odd prime")
    if not 3 <= k <= (p - 1) // 2:
        raise PreconditionError(f"k={k} outside 3..{(p - 1) // 2}")
    if p % 3 == 2:
        return k != (p + 1) // 3
    if p % 3 == 1:
        return k != (p + 2) // 3
    return True


def cor63_applies(n: int, m: int, k: int) -> bool:
    return m == 1 and _is_odd_prime(n) and 3 <= k <= (n - 1) // 2


class ExcludedCase(NamedTuple):
    tag: str
    multiplicity: int
    description: str


def identify_excluded_case(n: int, m: int, k: int):
    A, B = k % n, (k - m) % n

    def eq(x, y):
        return (x - y) % n == 0

    if A == 0 or B == 0:
        return ExcludedCase("trivial", 1, "trivial group")
    cases = [
        (eq(A, B), "Z_{2^n-1}", gcd(k, n)),
        (eq(A, -B), "S(2,n)", gcd(k, n)),
        (eq(A, 2 * B), "F(2,n)", gcd(m, n)),
        (eq(B, 2 * A), "F(2,n)", gcd(k, n)),
        (eq(A, -2 * B), "H_n(3,1)", gcd(m, n)),
        (eq(B, -2 * A), "H_n(3,1)", gcd(k - m, n)),
    ]
    for hit, tag, mult in cases:
        if hit:
            return ExcludedCase(tag, mult, f"free product of {mult} copies of {tag}")
    return None


def _bfs_dist(g: StarGraph, s: int):
    dist = [-1] * len(g.adj)
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for v, _ in g.adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def is_special_c3t6(g: StarGraph) -> bool:
    """Connected, bipartite, diameter 3, girth 6, every degree >= 3."""
    nv = len(g.vertices)
    if nv == 0 or any(len(a) < 3 for a in g.adj):
        return False
    colour = _bfs_dist(g, 0)
    if min(colour) < 0:
        return False
    for u, v, _ in g.edges:
        if colour[g.index[u]] % 2 == colour[g.index[v]] % 2:
            return False
    if girth(g) != 6:
        return False
    return max(max(_bfs_dist(g, s)) for s in range(nv)) == 3


def heawood_graph() -> StarGraph:
    """Incidence graph of the Fano plane (points i, lines {i, i+1, i+3} mod 7)."""
    pts = [("p", i) for i in range(7)]
    lines = [("l", i) for i in range(7)]
    edges = [(("p", (i + d) % 7), ("l", i), "") for i in range(7) for d in (0, 1, 3)]
    return StarGraph(tuple(pts + lines), tuple(edges))


# H(n,3) cycle forms; vertices as (offset from i, sign)
H3_FORMS = {
    "i": [(0, 1), (3, -1), (2, -1), (1, -1), (-2, 1)],
    "ii": [(2 * j, 1) for j in range(8)],
    "iii": [(0, 1), (3, -1), (4, -1), (1, 1), (3, 1), (6, -1), (5, -1), (2, 1)],
    "iv": [(0, -1), (-3, 1), (-1, 1), (1, 1), (4, -1), (3, -1), (2, -1), (1, -1)],
}


def _form_instances(g: StarGraph, n: int, form):
    """Edge-id sets of every instance of ``form`` (one per i) in ``g``."""
    pair_edges = {}
    for eid, (u, v, _) in enumerate(g.edges):
        pair_edges.setdefault(frozenset((u, v)), []).append(eid)
    out = []
    for i in range(n):
        vs = [((i + d) % n, s) for d, s in form]
        if len(set(vs)) != len(vs):
            continue
        eids = []
        for a, b in zip(vs, vs[1:] + vs[:1]):
            es = pair_edges.get(frozenset((a, b)))
            if not es:
                break
            eids.append(es[0])
        else:
            out.append(frozenset(eids))
    return out


@dataclass
class TaxonomyReport:
    n: int
    girth: float | int
    counts: dict
    by_type: dict
    form_matches: dict
    unmatched: dict
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def h_n3_taxonomy(n: int, lmax: int = 8) -> TaxonomyReport:
    if n < 4:
        raise PreconditionError("need n >= 4")
    g = star_hnk(n, 3, 1)
    gi, counts, cycles = girth_and_spectrum(g, lmax, ORBIT_ROOTS)
    by_type = {}
    for c in cycles:
        key = (c.length, _canonical_types(c.types))
        by_type[key] = by_type.get(key, 0) + 1
    instances = {name: set(_form_instances(g, n, f)) for name, f in H3_FORMS.items()}
    form_matches = {name: 0 for name in H3_FORMS}
    unmatched = {}
    for c in cycles:
        es = frozenset(c.edge_ids)
        hit = [name for name, inst in instances.items() if es in inst]
        for name in hit:
            form_matches[name] += 1
        if not hit:
            unmatched[c.length] = unmatched.get(c.length, 0) + 1
    checks = {}
    if n >= 11 and n not in (12, 14):
        checks["shortest cycle is 5"] = gi == 5
        checks["no cycles of length 6 or 7"] = not counts.get(6) and not counts.get(7)
        checks["every cycle shorter than 8 is form (i)"] = all(
            c.length == 5 and frozenset(c.edge_ids) in instances["i"] for c in cycles if c.length < 8)
    if n == 12:
        checks["6-cycle exists"] = bool(counts.get(6))
    if n == 14:
        checks["7-cycle exists"] = bool(counts.get(7))
    if n == 16:
        checks["all-Y 8-cycle of form (ii) exists"] = any(
            c.length == 8 and c.types == "YYYYYYYY" and frozenset(c.edge_ids) in instances["ii"]
            for c in cycles)
    return TaxonomyReport(n, gi, counts, by_type, form_matches, unmatched, checks)


def _canonical_types(s: str) -> str:
    if not s:
        return s
    rots = [s[i:] + s[:i] for i in range(len(s))]
    r = s[::-1]
    rots += [r[i:] + r[:i] for i in range(len(r))]
    return min(rots)


SURVEY_COLUMNS = ("n", "m", "k", "A", "B", "thm61_c3t6", "oracle_c3t6", "thm61_c3t7", "oracle_c3t7",
                  "girth", "special", "excluded_case", "cor63", "discrepancy_flags")


def survey_row(nmk) -> dict:
    n, m, k = nmk
    c = thm61_classify(n, m, k)
    o = hnk_oracle(n, m, k)
    flags = []
    if c.c3t6 != o.c3t6:
        flags.append("thm61a_vs_oracle")
    if c.c3t7 != o.c3t7:
        flags.append("thm61b_vs_oracle")
    cor = ""
    if cor63_applies(n, m, k):
        cv = cor63_classify(n, k)
        cor = cv
        if cv != c.c3t7:
            flags.append("cor63_vs_thm61b")
        if cv != o.c3t7:
            flags.append("cor63_vs_oracle")
    return {
        "n": n, "m": m, "k": k, "A": c.A, "B": c.B,
        "thm61_c3t6": c.c3t6, "oracle_c3t6": o.c3t6,
        "thm61_c3t7": c.c3t7, "oracle_c3t7": o.c3t7,
        "girth": "inf" if o.girth == INF else o.girth,
        "special": o.special,
        "excluded_case": c.excluded_case or "",
        "cor63": cor,
        "discrepancy_flags": ";".join(flags),
    }


def survey_triples(nmin: int, nmax: int, primes_m1_only: bool = False):
    for n in range(nmin, nmax + 1):
        if primes_m1_only:
            if _is_odd_prime(n):
                for k in range(1, n + 1):
                    yield (n, 1, k)
            continue
        for m in range(1, n + 1):
            for k in range(1, n + 1):
                yield (n, m, k)


def survey(triples, workers: int = 1) -> list[dict]:
    """Rows for each triple, sorted by (n, m, k) whatever the worker count."""
    triples = list(triples)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(survey_row, triples, chunksize=512))
    else:
        rows = [survey_row(t) for t in triples]
    rows.sort(key=lambda r: (r["n"], r["m"], r["k"]))
    return rows
