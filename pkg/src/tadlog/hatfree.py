"""Normal forms in <a, c | [a, c^n]>, which is F_n x| Z with c acting by the shift.

An element is stored as ``u * c^e`` with ``u`` a reduced word in x_1..x_n,
where x_{i+1} = c^i a c^-i.  Two elements are equal iff their pairs are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .word import TwoGenWord, Word, shift


@dataclass(frozen=True)
class HatElement:
    n: int
    u: Word
    e: int = 0

    def __post_init__(self):
        if self.u.n != self.n:
            raise ValueError("free part has the wrong modulus")
        object.__setattr__(self, "u", self.u.free_reduce())

    @classmethod
    def identity(cls, n: int) -> "HatElement":
        return cls(n, Word.identity(n), 0)

    @classmethod
    def c_power(cls, n: int, j: int) -> "HatElement":
        return cls(n, Word.identity(n), j)

    @classmethod
    def free(cls, u: Word) -> "HatElement":
        return cls(u.n, u, 0)

    def __mul__(self, other: "HatElement") -> "HatElement":
        if other.n != self.n:
            raise ValueError("moduli differ")
        return HatElement(self.n, self.u * shift(other.u, self.e), self.e + other.e)

    def inverse(self) -> "HatElement":
        return HatElement(self.n, shift(self.u.inverse(), -self.e), -self.e)

    def conjugate_by(self, w: "HatElement") -> "HatElement":
        """w * self * w^-1."""
        return w * self * w.inverse()

    def __str__(self):
        return f"({self.u}) c^{self.e}"


def hat_rewrite(w: TwoGenWord, n: int) -> HatElement:
    d = 0
    letters = []
    for g, s in w.letters:
        if g == "a":
            letters.append((d, s))
        else:
            d += s
    return HatElement(n, Word(n, tuple(letters)), d)


def hat_image(w: TwoGenWord, n: int) -> HatElement:
    """Evaluate letter by letter with a -> (x_1, 0), c -> (1, 1).

    Independent of the scanning rewrite; used to check it is a homomorphism.
    """
    a = HatElement(n, Word.from_pairs(n, [(1, 1)]), 0)
    c = HatElement.c_power(n, 1)
    gens = {("a", 1): a, ("a", -1): a.inverse(), ("c", 1): c, ("c", -1): c.inverse()}
    out = HatElement.identity(n)
    for letter in w.letters:
        out = out * gens[letter]
    return out


def hat_to_word(h: HatElement) -> TwoGenWord:
    """A two-generator word representing ``h``: each x_i^s becomes c^{i-1} a^s c^{1-i}."""
    syl = []
    for g, s in h.u.letters:
        syl += [("c", g), ("a", s), ("c", -g)]
    syl.append(("c", h.e))
    return TwoGenWord.from_syllables([x for x in syl if x[1] != 0], h.n).free_reduce()


class HatWitness(NamedTuple):
    witness: HatElement
    inverted: bool


def _verify(g: HatElement, h: HatElement, w: HatElement, inverted: bool) -> bool:
    target = h.inverse() if inverted else h
    return g.conjugate_by(w) == target


def hat_conjugate(g: HatElement, h: HatElement, bound: int = 0, witness: HatElement | None = None,
                  allow_inverse: bool = False, inverted: bool = False):
    """Check or search for ``w`` with ``w g w^-1 == h`` (or ``h^-1``).

    With ``witness`` given this is an exact check and returns a
    :class:`HatWitness` or None.  Without it, candidates ``c^j * p^-1`` for
    prefixes ``p`` of g's free part (and of its inverse), |j| <= bound, and
    their inverses are tried; returns a verified HatWitness, or the string
    ``"unknown"`` when nothing is found within the bound.
    """
    if g.n != h.n:
        raise ValueError("moduli differ")
    if witness is not None:
        return HatWitness(witness, inverted) if _verify(g, h, witness, inverted) else None
    n = g.n
    js = sorted(range(-bound, bound + 1), key=lambda j: (abs(j), j < 0))
    prefixes = []
    for base in (g.u, g.u.inverse()):
        for i in range(len(base) + 1):
            prefixes.append(HatElement.free(base[:i]))
    flags = (False, True) if allow_inverse else (False,)
    for j in js:
        cj = HatElement.c_power(n, j)
        for p in prefixes:
            cand = cj * p.inverse()
            for w in (cand, cand.inverse()):
                for inv in flags:
                    if _verify(g, h, w, inv):
                        return HatWitness(w, inv)
    return "unknown"
