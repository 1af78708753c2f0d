"""Twisted conjugacy in a finite group G with automorphism phi, and
conjugacy in G x|_phi Z by reduction to it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cosets import FiniteGroupTable


@dataclass(frozen=True)
class SemidirectElement:
    """g t^p, multiplied as (g, p)(h, l) = (g phi^p(h), p + l)."""

    g: int
    p: int


def sd_mul(G: FiniteGroupTable, x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    return SemidirectElement(G.mul[x.g][G.phi_pow(y.g, x.p)], x.p + y.p)


def sd_inv(G: FiniteGroupTable, x: SemidirectElement) -> SemidirectElement:
    # (g, p)^-1 = (phi^-p(g^-1), -p)
    return SemidirectElement(G.phi_pow(G.inv[x.g], -x.p), -x.p)


def twisted_conjugate(G: FiniteGroupTable, phipow: int, u: int, v: int):
    """Some g with g^-1 u phi^phipow(g) = v, or None (exhaustive over G)."""
    perm = G.phi_power_perm(phipow)
    mul, inv = G.mul, G.inv
    for g in range(G.order):
        if mul[mul[inv[g]][u]][perm[g]] == v:
            return g
    return None


class ConjWitness(NamedTuple):
    g: int
    m: int


def semidirect_conjugate(G: FiniteGroupTable, x: SemidirectElement, y: SemidirectElement):
    """(True, ConjWitness(g, m)) with x (g, m) = (g, m) y, else (False, None).

    Needs p = q; then the condition is g^-1 u phi^p(g) = phi^m(v) for some
    0 <= m < order(phi).
    """
    if x.p != y.p:
        return False, None
    for m in range(G.phi_order()):
        g = twisted_conjugate(G, x.p, x.g, G.phi_pow(y.g, m))
        if g is not None:
            w = SemidirectElement(g, m)
            if sd_mul(G, x, w) != sd_mul(G, w, y):
                raise AssertionError("semidirect witness failed to verify")
            return True, ConjWitness(g, m)
    return False, None


def direct_conjugacy_class(G: FiniteGroupTable, x: SemidirectElement, window: int | None = None) -> set:
    """{w^-1 x w} over conjugators w = (g, m), m in [-window, window)."""
    window = G.n if window is None else window
    out = set()
    for m in range(-window, window):
        for g in range(G.order):
            w = SemidirectElement(g, m)
            out.add(sd_mul(G, sd_mul(G, sd_inv(G, w), x), w))
    return out


def twisted_classes(G: FiniteGroupTable, phipow: int) -> list[int]:
    """Class label (smallest member) of each element under phi^phipow-twisted conjugacy."""
    label = [-1] * G.order
    for u in range(G.order):
        if label[u] >= 0:
            continue
        for g in range(G.order):
            v = G.mul[G.mul[G.inv[g]][u]][G.phi_pow(g, phipow)]
            if label[v] < 0:
                label[v] = u
    return label
