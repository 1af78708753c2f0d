"""Relation matrices, Smith normal form and the circulant resultant.

Python integers are arbitrary precision, so no overflow path is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .presentation import Presentation

INFINITE = math.inf


@dataclass(frozen=True)
class AbelianInvariants:
    torsion: tuple
    free_rank: int

    @property
    def order(self):
        if self.free_rank:
            return INFINITE
        return math.prod(self.torsion)

    @property
    def finite(self) -> bool:
        return self.free_rank == 0

    def __str__(self):
        parts = [f"Z_{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"


def relation_matrix(p: Presentation) -> list[list[int]]:
    col = {g: j for j, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, s in r.letters:
            row[col[g]] += s
        rows.append(row)
    return rows


def smith_normal_form(M: list[list[int]], ncols: int | None = None) -> AbelianInvariants:
    """Invariant factors of Z^ncols / rowspace(M).

    Pivot: smallest nonzero absolute value, ties to the lowest row then
    column.  ``ncols`` is needed for matrices with no rows.
    """
    A = [list(r) for r in M]
    nrows = len(A)
    ncols = len(A[0]) if A else (ncols or 0)
    diag = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = A[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            piv = A[t][t]
            done = True
            # clear column t
            for i in range(t + 1, nrows):
                v = A[i][t]
                if v:
                    q = v // piv
                    if q:
                        rt, ri = A[t], A[i]
                        for j in range(t, ncols):
                            ri[j] -= q * rt[j]
                    if A[i][t]:
                        done = False
            # clear row t
            rt = A[t]
            for j in range(t + 1, ncols):
                v = rt[j]
                if v:
                    q = v // piv
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    if rt[j]:
                        done = False
            if done:
                bad = None
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if A[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                rb = A[bad]
                for j in range(t, ncols):
                    A[t][j] += rb[j]
            # re-pivot on the smallest entry in row/column t
            best = (abs(A[t][t]), t, t) if A[t][t] else None
            for i in range(t + 1, nrows):
                v = A[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, t)
            for j in range(t + 1, ncols):
                v = A[t][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    torsion = tuple(d for d in diag if d > 1)
    for d1, d2 in zip(torsion, torsion[1:]):
        if d2 % d1:
            raise AssertionError(f"divisor chain broken: {diag}")
    return AbelianInvariants(torsion, ncols - len(diag))


def abelianization(p: Presentation) -> AbelianInvariants:
    return smith_normal_form(relation_matrix(p), len(p.generators))


# integer polynomials as coefficient lists, highest degree first

def _strip(f):
    i = 0
    while i < len(f) and f[i] == 0:
        i += 1
    return f[i:]


def _deg(f):
    return len(f) - 1


def _content(f):
    g = 0
    for c in f:
        g = math.gcd(g, c)
    return g


def _prem(A, B):
    """Pseudo-remainder of A by B: lc(B)^(degA-degB+1) * A mod B."""
    R = list(A)
    lb = B[0]
    db = _deg(B)
    e = _deg(A) - db + 1
    while R and _deg(R) >= db:
        lr = R[0]
        R = [lb * c for c in R]
        for i, bc in enumerate(B):
            R[i] -= lr * bc
        R = _strip(R)
        e -= 1
    if e:
        R = [c * lb ** e for c in R]
    return R


def resultant(A, B) -> int:
    """Resultant of integer polynomials by the subresultant remainder sequence."""
    A, B = _strip(list(A)), _strip(list(B))
    if not A or not B:
        return 0
    if _deg(A) == 0 and _deg(B) == 0:
        return 1
    if _deg(B) == 0:
        return B[0] ** _deg(A)
    if _deg(A) == 0:
        return A[0] ** _deg(B)
    a, b = _content(A), _content(B)
    if A[0] < 0:
        a = -a
    if B[0] < 0:
        b = -b
    A = [c // a for c in A]
    B = [c // b for c in B]
    g = h = 1
    s = 1
    t = a ** _deg(B) * b ** _deg(A)
    if _deg(A) < _deg(B):
        A, B = B, A
        if _deg(A) % 2 and _deg(B) % 2:
            s = -1
    while True:
        delta = _deg(A) - _deg(B)
        if _deg(A) % 2 and _deg(B) % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        A = B
        div = g * h ** delta
        B = [c // div for c in R]
        g = A[0]
        h = g ** delta // h ** (delta - 1) if delta else h
        if _deg(B) == 0:
            break
    dA = _deg(A)
    hfin = B[0] ** dA // h ** (dA - 1) if dA >= 1 else 1
    return s * t * hfin


def representer(w) -> list[int]:
    """Coefficients f_0..f_{n-1}: f_j is the exponent sum of x_{1+j} in w."""
    f = [0] * w.n
    for g, s in w.letters:
        f[g] += s
    return f


def ab_order_circulant(cw):
    """|Res(t^n - 1, f)|, or INFINITE when it vanishes."""
    n = cw.n
    f = representer(cw.w)
    poly = _strip(list(reversed(f)))
    if not poly:
        return INFINITE
    tn1 = [1] + [0] * (n - 1) + [-1]
    r = abs(resultant(tn1, poly))
    return INFINITE if r == 0 else r
