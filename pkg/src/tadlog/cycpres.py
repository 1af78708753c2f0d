"""Cyclic presentations, the presentation families, and the transformations
between cyclic words, two-generator HNN relators and y-generator rewrites."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import PreconditionError
from .presentation import Presentation, two_generator_presentation
from .word import TwoGenWord, Word, cyclic_equivalent, cyclically_reduce, exponent_data, shift, substitute


@dataclass(frozen=True)
class CyclicWord:
    n: int
    w: Word

    def __post_init__(self):
        if self.w.n != self.n:
            raise ValueError(f"word modulus {self.w.n} does not match n={self.n}")

    def __str__(self):
        return f"G_{self.n}({self.w})"


@dataclass(frozen=True)
class HnkParams:
    n: int
    m: int
    k: int

    def __post_init__(self):
        if self.n < 2:
            raise PreconditionError("H_n(m,k) needs n >= 2")


@dataclass(frozen=True)
class SVParams:
    """Parameters of G^r_{n,k}(q_1..q_r; eps_0..eps_r)."""

    n: int
    k: int
    q: tuple
    eps: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "eps", tuple(self.eps))
        if self.n < 2:
            raise PreconditionError("SV family needs n >= 2")
        if len(self.q) < 1:
            raise PreconditionError("SV family needs r >= 1")
        if len(self.eps) != len(self.q) + 1:
            raise PreconditionError("need r+1 exponents eps_0..eps_r")

    @property
    def r(self) -> int:
        return len(self.q)

    @property
    def admissible(self) -> bool:
        return abs(self.eps[-1]) == 1


@dataclass(frozen=True)
class LnParams:
    """Parameters p_0..p_{r-1} of L_n; the trailing p_r = -1 is implicit."""

    n: int
    p: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        if len(self.p) < 1:
            raise PreconditionError("L_n needs r >= 1")

    @property
    def r(self) -> int:
        return len(self.p)

    @property
    def p_full(self) -> tuple:
        return self.p + (-1,)


def cyclic_presentation(cw: CyclicWord) -> Presentation:
    if len(cw.w) == 0:
        raise PreconditionError("defining word is empty")
    w = cw.w.free_reduce()
    return Presentation(tuple(range(cw.n)), tuple(shift(w, i) for i in range(cw.n)))


def relator_set(cw: CyclicWord) -> frozenset:
    """Relators of the cyclic presentation as a set of letter tuples."""
    return frozenset(r.letters for r in cyclic_presentation(cw).relators)


def family_hnk(p: HnkParams) -> CyclicWord:
    w = Word.from_pairs(p.n, [(1, 1), (1 + p.m, 1), (1 + p.k, -1)]).free_reduce()
    return CyclicWord(p.n, w)


def hnk(n: int, m: int, k: int) -> CyclicWord:
    return family_hnk(HnkParams(n, m, k))


def family_sv(p: SVParams) -> CyclicWord:
    q0 = (0,) + p.q
    head = [(1 + q0[i], p.eps[i]) for i in range(p.r + 1)]
    tail = Word.from_pairs(p.n, [(1 + p.k + q0[i], p.eps[i]) for i in range(p.r)])
    w = Word.from_pairs(p.n, head) * tail.inverse()
    return CyclicWord(p.n, w)


def family_ln(p: LnParams) -> CyclicWord:
    pf = p.p_full
    r = p.r
    head = Word.from_pairs(p.n, [(pf[i] + i, 1) for i in range(r + 1)])
    tail = Word.from_pairs(p.n, [(pf[i] + i + 1, 1) for i in range(r)])
    return CyclicWord(p.n, head * tail.inverse())


def ln_to_sv(p: LnParams) -> SVParams:
    pf = p.p_full
    r = p.r
    q = tuple(j + pf[j] - pf[0] for j in range(1, r + 1))
    return SVParams(p.n, 1, q, (1,) * (r + 1))


def sv_to_ln(p: SVParams) -> LnParams:
    if p.k != 1 or any(e != 1 for e in p.eps):
        raise PreconditionError("only the subfamily with k=1 and all exponents 1 is an L_n family")
    r = p.r
    qr = p.q[-1]
    base = (r - 1) - qr
    ps = (base,) + tuple(p.q[j - 1] - j + base for j in range(1, r))
    return LnParams(p.n, ps)


def convert_ln_sv(direction: str, params):
    """``direction`` is ``'ln->sv'`` or ``'sv->ln'``."""
    if direction == "ln->sv":
        return ln_to_sv(params)
    if direction == "sv->ln":
        return sv_to_ln(params)
    raise ValueError(f"unknown direction {direction!r}")


def lemma21_images(n: int) -> list[TwoGenWord]:
    """x_i -> c^{i-1} a c^{-i} (the stable letter is c = t^-1)."""
    return [TwoGenWord.from_syllables([("c", i), ("a", 1), ("c", -(i + 1))], n) for i in range(n)]


def hnn_two_generator(cw: CyclicWord) -> TwoGenWord:
    """The relator W(a,c) of the two-generator presentation <a,c | W, [a,c^n]>."""
    return substitute(cw.w, lemma21_images(cw.n))


def hnn_presentation(cw: CyclicWord) -> Presentation:
    return two_generator_presentation(hnn_two_generator(cw), cw.n)


def normalize_c_sum(W: TwoGenWord) -> tuple[TwoGenWord, int]:
    """Apply a -> a c^gamma with gamma = -csum(W); returns (U, gamma)."""
    if W.asum != 1:
        raise PreconditionError(f"a-exponent sum is {W.asum}, need 1")
    gamma = -W.csum
    letters = []
    for g, s in W.letters:
        if g == "c":
            letters.append((g, s))
        elif s == 1:
            letters.append(("a", 1))
            letters.extend([("c", 1 if gamma > 0 else -1)] * abs(gamma))
        else:
            letters.extend([("c", -1 if gamma > 0 else 1)] * abs(gamma))
            letters.append(("a", -1))
    return TwoGenWord(tuple(letters), W.n).free_reduce(), gamma


def syllable_decomposition(U: TwoGenWord) -> list[tuple[int, int]]:
    """``[(alpha_1, gamma_1), ...]`` for a conjugate of U beginning with ``a``.

    A leading run of c's is moved to the end (a conjugation) first.
    """
    letters = U.free_reduce().letters
    lead = 0
    while lead < len(letters) and letters[lead][0] == "c":
        lead += 1
    rot = TwoGenWord(letters[lead:] + letters[:lead]).free_reduce()
    pairs: list[list[int]] = []
    for g, e in rot.syllables_raw():
        if g == "a":
            pairs.append([e, 0])
        else:
            pairs[-1][1] += e
    return [(a, c) for a, c in pairs]


def derive_cyclic_word(U: TwoGenWord, n: int) -> CyclicWord:
    if U.asum != 1 or U.csum != 0:
        raise PreconditionError(f"need asum 1 and csum 0, got {U.asum} and {U.csum}")
    pairs = syllable_decomposition(U)
    offset = 0
    out = []
    for alpha, gamma in pairs:
        out.append((1 + offset, alpha))
        offset += gamma
    return CyclicWord(n, Word.from_pairs(n, out).free_reduce())


def round_trip(cw: CyclicWord) -> CyclicWord:
    """HNN relator, c-sum normalisation, then back to a cyclic word.

    Words with exponent sum -1 are inverted on the two-generator side first.
    """
    _, total, admissible = exponent_data(cw.w)
    if not admissible:
        raise PreconditionError("defining word is not admissible")
    W = hnn_two_generator(cw)
    if W.asum == -1:
        W = W.inverse()
    U, _ = normalize_c_sum(W)
    return derive_cyclic_word(U, cw.n)


def sv_to_y(p: SVParams) -> CyclicWord:
    if p.eps[-1] != 1:
        raise PreconditionError("the y-rewrite needs eps_r = 1")
    q0 = (0,) + p.q
    w = Word.identity(p.n, "y")
    for i in range(p.r):
        pair = Word.from_pairs(p.n, [(1 + q0[i], -1), (1 + q0[i] + p.k, 1)], "y")
        w = w * pair ** p.eps[i]
    w = w * Word.from_pairs(p.n, [(1 + p.q[-1], -1)], "y")
    return CyclicWord(p.n, w)


def ln_to_y(p: LnParams) -> CyclicWord:
    """The y-word of L_n(p) written directly from the p's."""
    pf = p.p_full
    r = p.r
    pairs = [(1, -1), (2, 1)]
    for j in range(1, r):
        d = pf[j] - pf[0]
        pairs += [(j + 1 + d, -1), (j + 2 + d, 1)]
    pairs.append((1 + r + pf[r] - pf[0], -1))
    return CyclicWord(p.n, Word.from_pairs(p.n, pairs, "y").free_reduce())


def recognize_alternating(w: Word):
    """Match y_1^-1 y_{1+l_1} y_{1+l_2}^-1 ... y_{1+l_s}^-1 up to rotation and shift.

    Returns the tuple ``(l_1, ..., l_s)`` with each l in 1..n, or None.
    """
    L = len(w)
    if L < 3 or L % 2 == 0:
        return None
    signs = [s for _, s in w.letters]
    starts = [i for i in range(L) if signs[i] == -1 and signs[i - 1] == -1]
    if len(starts) != 1:
        return None
    rot = w.rotate(starts[0])
    rs = [s for _, s in rot.letters]
    if any(rs[i] != (-1 if i % 2 == 0 else 1) for i in range(L)):
        return None
    first = rot.letters[0][0]
    n = w.n
    return tuple(((g - first) % n) or n for g, _ in rot.letters[1:])


def _pow_pairs(pairs, e):
    return list(pairs) * e


def family_catalog(name: str, n: int, form: str = "A", **params) -> CyclicWord:
    """Printed defining words for the named families.

    ``G1`` and ``H1`` take no parameters, ``G`` takes ``l`` (l >= 2),
    ``S`` takes ``r`` (generalised Sieradski).  ``form`` selects between the
    two printed words where two are given.
    """
    X = lambda i, e=1: (i, e)  # noqa: E731
    if name == "G1":
        pairs = ([X(1, -1), X(2), X(1, -1), X(2), X(n), X(1, -1), X(n)] if form == "A" else
                 [X(1, -1), X(n), X(1, -1), X(n), X(n - 1, -1), X(n), X(n - 1, -1)])
    elif name == "H1":
        pairs = ([X(1, -1), X(2), X(1, -1), X(2), X(1, -2), X(n), X(1, -1), X(n)] if form == "A" else
                 [X(1, -1), X(n), X(1, -1), X(n), X(1, -1), X(2), X(1, -1), X(2), X(1, -1)])
    elif name == "G":
        l = params["l"]
        if l < 2:
            raise PreconditionError("G(l,n) needs l >= 2")
        if l % 2 == 0:
            h = (l - 2) // 2
            if form == "A":
                pairs = ([X(1, -1)] + _pow_pairs([X(2), X(1, -1)], h) + [X(2)]
                         + _pow_pairs([X(n), X(1, -1)], h) + [X(n)])
            else:
                pairs = (_pow_pairs([X(1, -1), X(2)], h) + [X(1, -1), X(2)]
                         + _pow_pairs([X(3, -1), X(2)], h) + [X(3, -1)])
        else:
            h = (l - 1) // 2
            if form == "A":
                pairs = [X(1)] + _pow_pairs([X(2, -1), X(1)], h) + _pow_pairs([X(n, -1), X(1)], h)
            else:
                pairs = _pow_pairs([X(1, -1), X(n)], h) + _pow_pairs([X(1, -1), X(2)], h) + [X(1, -1)]
    elif name == "S":
        r = params["r"]
        if r < 1:
            raise PreconditionError("S(r,n) needs r >= 1")
        head = Word.from_pairs(n, [(2 * i + 1, 1) for i in range(r)])
        tail = Word.from_pairs(n, [(2 * i + 2, 1) for i in range(r - 1)])
        return CyclicWord(n, head * tail.inverse())
    elif name == "hnk":
        return hnk(n, params["m"], params["k"])
    else:
        raise PreconditionError(f"unknown family {name!r}")
    return CyclicWord(n, Word.from_pairs(n, pairs).free_reduce())


CATALOG_PAIRS = ("G1", "H1", "G")


def cor34_params(n: int, m: int, k: int, K: int | None = None) -> LnParams:
    """L_n((k-m)-1, ..., (k-m)-1) with K (default k) entries."""
    K = k if K is None else K
    if K < 1:
        raise PreconditionError("tail length must be positive")
    return LnParams(n, ((k - m - 1) % n,) * K)


def cor34_report(n: int, m: int, k: int) -> dict:
    """Compare the L_n word of the LOG with the H_n(m,k) word, syntactically."""
    ln = family_ln(cor34_params(n, m, k))
    h = hnk(n, m, k)
    witness = cyclic_equivalent(ln.w, h.w) if len(ln.w) == len(h.w) else None
    y = cyclically_reduce(Word(n, ln_to_y(cor34_params(n, m, k)).w.letters))[0]
    y_witness = cyclic_equivalent(y, cyclically_reduce(h.w)[0])
    return {
        "y_word": str(ln_to_y(cor34_params(n, m, k)).w),
        "y_rewrite_equivalent": y_witness is not None,
        "y_witness": y_witness,
        "ln_word": str(ln.w),
        "hnk_word": str(h.w),
        "ln_length": len(ln.w),
        "hnk_length": len(h.w),
        "syntactically_equivalent": witness is not None,
        "witness": witness,
        "gcd_k_n": gcd(k, n),
    }
