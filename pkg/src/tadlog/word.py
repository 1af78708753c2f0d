"""Free-group words over an indexed cyclic alphabet and over {a, c}.

Letters are ``(generator, sign)`` pairs.  For indexed words the generator is
a 0-based residue mod ``n`` (displayed 1-based); for two-generator words it is
the string ``'a'`` or ``'c'``.  Words are immutable and compare by value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence


def _reduce_letters(letters: Iterable[tuple]) -> tuple:
    out: list[tuple] = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def _invert_letters(letters: Sequence[tuple]) -> tuple:
    return tuple((g, -s) for g, s in reversed(letters))


class FreeWord:
    """Shared behaviour of words: concatenation, inversion, rotation.

    Subclasses supply ``letters`` and ``_with`` (rebuild with new letters).
    """

    letters: tuple

    def _with(self, letters):
        raise NotImplementedError

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return self._with(tuple(self.letters[item]))
        return self.letters[item]

    def __mul__(self, other):
        """Concatenate and freely reduce."""
        return self._with(_reduce_letters(self.letters + tuple(other.letters)))

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        out = self._with(())
        for _ in range(abs(e)):
            out = out * base
        return out

    def concat(self, other):
        """Concatenate without reduction."""
        return self._with(self.letters + tuple(other.letters))

    def inverse(self):
        return self._with(_invert_letters(self.letters))

    def rotate(self, k: int):
        """Cyclic permutation moving the first ``k`` letters to the end."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return self._with(self.letters[k:] + self.letters[:k])

    def free_reduce(self):
        return self._with(_reduce_letters(self.letters))

    def is_reduced(self) -> bool:
        return _reduce_letters(self.letters) == self.letters

    def is_cyclically_reduced(self) -> bool:
        if not self.is_reduced():
            return False
        if len(self.letters) < 2:
            return True
        (g0, s0), (g1, s1) = self.letters[0], self.letters[-1]
        return not (g0 == g1 and s0 == -s1)

    def exponent_sum(self, gen) -> int:
        return sum(s for g, s in self.letters if g == gen)

    def syllables(self) -> list[tuple]:
        """Maximal runs as ``(generator, exponent)`` pairs."""
        out: list[list] = []
        for g, s in self.letters:
            if out and out[-1][0] == g:
                out[-1][1] += s
            else:
                out.append([g, s])
        return [(g, e) for g, e in out if e != 0]

    def syllables_raw(self) -> list[tuple]:
        """Runs of identical letters (no cancellation), as (generator, exponent)."""
        out: list[list] = []
        for g, s in self.letters:
            if out and out[-1][0] == g and (out[-1][1] > 0) == (s > 0):
                out[-1][1] += s
            else:
                out.append([g, s])
        return [(g, e) for g, e in out]


@dataclass(frozen=True)
class Word(FreeWord):
    """A word in the free group on x_1..x_n (indices stored 0-based)."""

    n: int
    letters: tuple = ()
    symbol: str = "x"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be at least 1")
        norm = []
        for g, s in self.letters:
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
            norm.append((g % self.n, s))
        object.__setattr__(self, "letters", tuple(norm))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], symbol: str = "x") -> "Word":
        """Build from 1-based ``(index, exponent)`` pairs, expanding exponents."""
        letters = []
        for i, e in pairs:
            s = 1 if e > 0 else -1
            letters.extend([(i - 1, s)] * abs(e))
        return cls(n, tuple(letters), symbol)

    @classmethod
    def identity(cls, n: int, symbol: str = "x") -> "Word":
        return cls(n, (), symbol)

    def _with(self, letters):
        return Word(self.n, tuple(letters), self.symbol)

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.syllables_raw():
            parts.append(f"{self.symbol}{g + 1}" + ("" if e == 1 else f"^{e}"))
        return " ".join(parts)

    def __repr__(self):
        return f"Word(n={self.n}, {self})"

    def indices(self) -> list[int]:
        """1-based indices of the letters, in order."""
        return [g + 1 for g, _ in self.letters]


@dataclass(frozen=True)
class TwoGenWord(FreeWord):
    """A word over {a, c}; ``n`` records the modulus of the relator [a, c^n]."""

    letters: tuple = ()
    n: int | None = field(default=None, compare=False)

    def __post_init__(self):
        for g, s in self.letters:
            if g not in ("a", "c") or s not in (1, -1):
                raise ValueError(f"bad two-generator letter {(g, s)!r}")
        object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def from_syllables(cls, syllables: Iterable[tuple[str, int]], n: int | None = None) -> "TwoGenWord":
        letters = []
        for g, e in syllables:
            s = 1 if e > 0 else -1
            letters.extend([(g, s)] * abs(e))
        return cls(tuple(letters), n)

    def _with(self, letters):
        return TwoGenWord(tuple(letters), self.n)

    @property
    def asum(self) -> int:
        return self.exponent_sum("a")

    @property
    def csum(self) -> int:
        return self.exponent_sum("c")

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.syllables_raw():
            parts.append(g + ("" if e == 1 else f"^{e}"))
        return " ".join(parts)

    def __repr__(self):
        return f"TwoGenWord({self})"


def a_(e: int = 1, n=None) -> TwoGenWord:
    return TwoGenWord.from_syllables([("a", e)], n)


def c_(e: int = 1, n=None) -> TwoGenWord:
    return TwoGenWord.from_syllables([("c", e)], n)


def free_reduce(w):
    return w.free_reduce()


def cyclically_reduce(w):
    """Return ``(core, conjugator)`` with ``conjugator * core * conjugator^-1 == free_reduce(w)``."""
    r = w.free_reduce()
    letters = r.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return r._with(letters[i:j + 1]), r._with(letters[:i])


def exponent_data(w: Word) -> tuple[list[int], int, bool]:
    """Per-generator exponent sums (1-based order), their total, and admissibility."""
    sums = [0] * w.n
    for g, s in w.letters:
        sums[g] += s
    total = sum(sums)
    return sums, total, abs(total) == 1


def shift(w: Word, s: int) -> Word:
    """Apply theta^s, i.e. x_i -> x_{i+s}."""
    return Word(w.n, tuple((g + s, e) for g, e in w.letters), w.symbol)


def substitute(w: Word, images: Sequence):
    """Homomorphic image of ``w`` under x_i -> images[i-1], freely reduced."""
    if len(images) != w.n:
        raise ValueError(f"need {w.n} images, got {len(images)}")
    if not images:
        raise ValueError("no images supplied")
    out = images[0]._with(())
    for g, s in w.letters:
        out = out * (images[g] if s == 1 else images[g].inverse())
    return out


def _signed_shift(s: int, n: int) -> int:
    s %= n
    return s - n if s > n // 2 else s


class Equivalence(NamedTuple):
    """Witness that w2 is rotation ``rotation`` of shift(w1, shift), inverted
    first when ``inverted`` is set; ``reflected`` means x_i -> x_{-i} was
    applied to w1 before everything else."""

    shift: int
    inverted: bool
    rotation: int
    reflected: bool = False


def reflect(w: Word) -> Word:
    """Apply the index reversal x_i -> x_{2-i} (0-based g -> -g)."""
    return Word(w.n, tuple((-g, e) for g, e in w.letters), w.symbol)


def apply_equivalence(w1: Word, eq: Equivalence) -> Word:
    w = reflect(w1) if eq.reflected else w1
    w = shift(w, eq.shift)
    if eq.inverted:
        w = w.inverse()
    return w.rotate(eq.rotation)


def cyclic_equivalent(w1: Word, w2: Word, allow_reflection: bool = False):
    """Search shifts x inversions x rotations for a map taking w1 to w2.

    Returns an :class:`Equivalence` or None.  Shifts are reported as signed
    minimal residues.  Reflection is only tried when no plain witness exists
    and ``allow_reflection`` is set.
    """
    if w1.n != w2.n:
        raise ValueError("words have different moduli")
    n = w1.n
    L = len(w1)
    if L != len(w2):
        return None
    target = w2.letters
    order = sorted(range(n), key=lambda s: (abs(_signed_shift(s, n)), _signed_shift(s, n) < 0))
    for refl in ((False, True) if allow_reflection else (False,)):
        base = reflect(w1) if refl else w1
        for inv in (False, True):
            for s in order:
                cand = shift(base, s)
                if inv:
                    cand = cand.inverse()
                letters = cand.letters
                for rot in range(max(L, 1)):
                    if letters[rot:] + letters[:rot] == target:
                        return Equivalence(_signed_shift(s, n), inv, rot, refl)
    return None


@dataclass(frozen=True)
class NamedWord(FreeWord):
    """A word over arbitrary string-named generators (used for LOG presentations)."""

    letters: tuple = ()

    def _with(self, letters):
        return NamedWord(tuple(letters))

    @classmethod
    def gen(cls, name: str, sign: int = 1) -> "NamedWord":
        return cls(((name, sign),))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if s == 1 else f"{g}^-1" for g, s in self.letters)

    def __repr__(self):
        return f"NamedWord({self})"
