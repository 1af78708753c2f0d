"""Finite presentations: a generator list and a list of relator words."""

from __future__ import annotations

from dataclasses import dataclass

from .word import FreeWord, TwoGenWord, Word, cyclically_reduce


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        known = set(self.generators)
        for r in self.relators:
            for g, _ in r.letters:
                if g not in known:
                    raise ValueError(f"relator {r} uses unknown generator {g!r}")

    def cyclically_reduced(self) -> "Presentation":
        return Presentation(self.generators, tuple(cyclically_reduce(r)[0] for r in self.relators))

    def gen_label(self, g) -> str:
        if isinstance(g, int):
            sym = "x"
            if self.relators and isinstance(self.relators[0], Word):
                sym = self.relators[0].symbol
            return f"{sym}{g + 1}"
        return str(g)

    def __str__(self):
        gens = ", ".join(self.gen_label(g) for g in self.generators)
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def two_generator_presentation(U: TwoGenWord, n: int) -> Presentation:
    """The presentation < a, c | U, [a, c^n] >."""
    comm = TwoGenWord.from_syllables([("a", 1), ("c", n), ("a", -1), ("c", -n)], n)
    return Presentation(("a", "c"), (U, comm))


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    return u * v * u.inverse() * v.inverse()
