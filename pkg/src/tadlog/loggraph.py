"""Labelled oriented graphs, tadpole LOGs and their two-generator collapse."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cycpres import HnkParams, LnParams
from .errors import PreconditionError
from .hatfree import HatElement, hat_rewrite
from .presentation import Presentation
from .word import NamedWord, TwoGenWord, Word, substitute


class LOGEdge(NamedTuple):
    initial: str
    terminal: str
    label: str
    sign: int = 1


@dataclass(frozen=True)
class GeneralLOG:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(LOGEdge(*e) for e in self.edges))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise PreconditionError("duplicate vertex names")
        for e in self.edges:
            if e.initial not in vs or e.terminal not in vs or e.label not in vs:
                raise PreconditionError(f"edge {e} refers to an unknown vertex")
            if e.sign not in (1, -1):
                raise PreconditionError(f"edge {e} has label sign {e.sign}")

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.initial].add(e.terminal)
            adj[e.terminal].add(e.initial)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"from": e.initial, "to": e.terminal, "label": e.label, "sign": e.sign}
                          for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "GeneralLOG":
        edges = [LOGEdge(e["from"], e["to"], e["label"], e.get("sign", 1)) for e in data["edges"]]
        return cls(tuple(data["vertices"]), tuple(edges))


def edge_relator(e: LOGEdge) -> NamedWord:
    """tau(e)^-1 lambda(e)^-s iota(e) lambda(e)^s, freely reduced."""
    return NamedWord(((e.terminal, -1), (e.label, -e.sign), (e.initial, 1), (e.label, e.sign))).free_reduce()


def log_presentation(g: GeneralLOG) -> Presentation:
    if not g.is_connected():
        raise PreconditionError("LOG is not connected")
    return Presentation(g.vertices, tuple(edge_relator(e) for e in g.edges))


@dataclass(frozen=True)
class TadpoleLOG:
    """Gamma(n; v) with v = a_{n-p_0}^{d_0} ... a_{n-p_{r-1}}^{d_{r-1}}."""

    n: int
    tail: tuple

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("circuit size must be positive")
        tail = tuple((int(p) % self.n, int(d)) for p, d in self.tail)
        if not tail:
            raise PreconditionError("tail must have at least one edge")
        for (p, d), (p2, d2) in zip(tail, tail[1:]):
            if p == p2 and d == -d2:
                raise PreconditionError("tail word is not freely reduced")
        if any(d not in (1, -1) for _, d in tail):
            raise PreconditionError("tail signs must be +1 or -1")
        object.__setattr__(self, "tail", tail)

    @property
    def r(self) -> int:
        return len(self.tail)

    @property
    def positive(self) -> bool:
        return all(d == 1 for _, d in self.tail)

    def label_index(self, j: int) -> int:
        """1-based circuit index of the j-th tail label."""
        return (self.n - self.tail[j][0] - 1) % self.n + 1

    def tail_word(self) -> Word:
        """v as an indexed word over a_1..a_n."""
        return Word.from_pairs(self.n, [(self.label_index(j), d) for j, (_, d) in enumerate(self.tail)], "a")

    def ln_params(self) -> LnParams:
        return LnParams(self.n, tuple(p for p, _ in self.tail))

    def to_json(self) -> dict:
        return {"n": self.n, "tail": [{"p": p, "delta": d} for p, d in self.tail]}

    @classmethod
    def from_json(cls, data: dict) -> "TadpoleLOG":
        return cls(int(data["n"]), tuple((int(t["p"]), int(t.get("delta", 1))) for t in data["tail"]))


def tadpole_to_log(t: TadpoleLOG) -> GeneralLOG:
    n, r = t.n, t.r
    tails = [f"t{j}" for j in range(r)]
    circ = [f"a{i}" for i in range(1, n + 1)]
    edges = []
    for j, (_, d) in enumerate(t.tail):
        nxt = tails[j + 1] if j + 1 < r else "a1"
        edges.append(LOGEdge(tails[j], nxt, f"a{t.label_index(j)}", d))
    for i in range(n):
        edges.append(LOGEdge(circ[i], circ[(i + 1) % n], "t0", 1))
    return GeneralLOG(tuple(tails + circ), tuple(edges))


def lemma31_images(n: int) -> list[TwoGenWord]:
    """a_i -> c^{-(i-1)} a c^{i-1} (here c = t_0, a = a_1)."""
    return [TwoGenWord.from_syllables([("c", -i), ("a", 1), ("c", i)], n) for i in range(n)]


def collapse_tadpole(t: TadpoleLOG) -> tuple[TwoGenWord, int]:
    """U = V^-1 c V a^-1 with V the image of the tail word."""
    V = substitute(t.tail_word(), lemma31_images(t.n))
    c = TwoGenWord((("c", 1),), t.n)
    a = TwoGenWord((("a", 1),), t.n)
    return V.inverse() * c * V * a.inverse(), t.n


def tietze_eliminate(relators: list, gen: str) -> list:
    """Drop ``gen`` using the first relator in which it occurs exactly once."""
    for idx, r in enumerate(relators):
        hits = [i for i, (g, _) in enumerate(r.letters) if g == gen]
        if len(hits) != 1:
            continue
        i = hits[0]
        s = r.letters[i][1]
        rot = r.rotate(i)  # gen^s * rest == 1, so gen = rest^{-s}
        rest = rot[1:]
        value = rest.inverse() if s == 1 else rest
        out = []
        for j, other in enumerate(relators):
            if j == idx:
                continue
            letters = []
            for g, e in other.letters:
                if g == gen:
                    letters.extend((value if e == 1 else value.inverse()).letters)
                else:
                    letters.append((g, e))
            out.append(NamedWord(tuple(letters)).free_reduce())
        return out
    raise PreconditionError(f"no relator contains {gen} exactly once")


def symbolic_collapse(t: TadpoleLOG) -> tuple[TwoGenWord, TwoGenWord]:
    """Eliminate t_1..t_{r-1} and a_2..a_n from the LOG presentation, then
    rename a_1 -> a, t_0 -> c.  Returns (tail relator, circuit relator)."""
    pres = log_presentation(tadpole_to_log(t))
    rels = list(pres.relators)
    for j in range(1, t.r):
        rels = tietze_eliminate(rels, f"t{j}")
    for i in range(2, t.n + 1):
        rels = tietze_eliminate(rels, f"a{i}")
    if len(rels) != 2:
        raise AssertionError(f"expected two relators after elimination, got {len(rels)}")
    names = {"a1": "a", "t0": "c"}
    out = [TwoGenWord(tuple((names[g], s) for g, s in r.letters), t.n) for r in rels]
    tail_rel, circ_rel = sorted(out, key=lambda r: r.asum)
    return tail_rel, circ_rel


def symbolic_matches_collapse(t: TadpoleLOG) -> bool:
    """U == a E a^-1 letter for letter, E the eliminated tail relator.

    The edge relator starts at the terminal vertex a_1, hence the
    conjugation by a.
    """
    U, n = collapse_tadpole(t)
    E, _ = symbolic_collapse(t)
    a = TwoGenWord((("a", 1),), n)
    return a * E * a.inverse() == U


def two_gen_positive(p) -> tuple[TwoGenWord, int]:
    """(prod a c^{p_{i+1}-p_i})^-1 c (prod a c^{p_{i+1}-p_i}) a^-1, with p_r = -1.

    Accepts LnParams or a positive TadpoleLOG.
    """
    if isinstance(p, TadpoleLOG):
        if not p.positive:
            raise PreconditionError("tail word is not positive")
        p = p.ln_params()
    P = positive_product(p)
    c = TwoGenWord((("c", 1),), p.n)
    a = TwoGenWord((("a", 1),), p.n)
    return P.inverse() * c * P * a.inverse(), p.n


def positive_product(p: LnParams) -> TwoGenWord:
    pf = p.p_full
    syl = []
    for i in range(p.r):
        syl += [("a", 1), ("c", pf[i + 1] - pf[i])]
    return TwoGenWord.from_syllables([s for s in syl if s[1] != 0], p.n).free_reduce()


def cor32_witness(p: LnParams) -> HatElement:
    """w with w * W * w^-1 = R^-1, where W is the HNN relator of the L_n word
    and R the positive two-generator relator; w = (c^{p_0-1} P)^-1."""
    n = p.n
    X = HatElement.c_power(n, p.p[0] - 1) * hat_rewrite(positive_product(p), n)
    return X.inverse()


def tadpole_hnk(p: HnkParams, K: int | None = None) -> TadpoleLOG:
    """Tadpole whose LOG group is the natural HNN extension of H_n(m,k)."""
    K = p.k if K is None else K
    if K < 1 or (K - p.k) % p.n:
        raise PreconditionError(f"tail length {K} is not a positive K = k mod n")
    q = (p.k - p.m - 1) % p.n
    return TadpoleLOG(p.n, ((q, 1),) * K)
