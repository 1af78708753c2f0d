import itertools
import math
import random

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tadlog.abelian import (
    INFINITE,
    AbelianInvariants,
    ab_order_circulant,
    abelianization,
    relation_matrix,
    representer,
    resultant,
    smith_normal_form,
)
from tadlog.cycpres import CyclicWord, cyclic_presentation, hnk
from tadlog.presentation import Presentation
from tadlog.word import Word


def sylvester_resultant(A, B):
    """Determinant of the Sylvester matrix (coefficients high degree first)."""
    A = [c for c in A]
    B = [c for c in B]
    while A and A[0] == 0:
        A.pop(0)
    while B and B[0] == 0:
        B.pop(0)
    m, n = len(A) - 1, len(B) - 1
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + A + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + B + [0] * (size - n - 1 - i))
    return int(sympy.Matrix(rows).det())


def sympy_invariants(M, ncols):
    """Elementary divisors via sympy's Smith form (test oracle)."""
    from sympy.matrices.normalforms import smith_normal_form as snf
    if not M:
        return AbelianInvariants((), ncols)
    D = snf(sympy.Matrix(M), domain=sympy.ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    nz = [d for d in diag if d]
    return AbelianInvariants(tuple(d for d in nz if d > 1), ncols - len(nz))


def test_relation_matrix():
    n, m, k = 7, 2, 5
    M = relation_matrix(cyclic_presentation(hnk(n, m, k)))
    f = [0] * n
    f[0] += 1
    f[m] += 1
    f[k] -= 1
    for i in range(n):
        assert M[i] == f[-i:] + f[:-i]
    comm = Word.from_pairs(2, [(1, 1), (2, 1), (1, -1), (2, -1)])
    assert relation_matrix(Presentation((0, 1), (comm,))) == [[0, 0]]
    assert relation_matrix(Presentation((0, 1, 2), ())) == []
    assert smith_normal_form([], 3) == AbelianInvariants((), 3)


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]]) == AbelianInvariants((), 0)
    assert abelianization(cyclic_presentation(hnk(5, 3, 1))) == AbelianInvariants((11,), 0)
    assert abelianization(cyclic_presentation(hnk(6, 1, 3))) == AbelianInvariants((7,), 0)
    assert abelianization(cyclic_presentation(hnk(6, 2, 3))) == AbelianInvariants((9,), 0)
    assert smith_normal_form([[2, 0], [0, 3]]) == AbelianInvariants((6,), 0)
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == AbelianInvariants((2, 6, 12), 0)
    assert smith_normal_form([[0, 0], [0, 0]]) == AbelianInvariants((), 2)


@settings(max_examples=150)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_matches_sympy(r, c, data):
    M = [[data.draw(st.integers(-9, 9)) for _ in range(c)] for _ in range(r)]
    got = smith_normal_form(M)
    assert got == sympy_invariants(M, c)
    for a, b in zip(got.torsion, got.torsion[1:]):
        assert b % a == 0


def test_resultant_matches_sylvester():
    rng = random.Random(0)
    for _ in range(300):
        A = [rng.randint(-5, 5) for _ in range(rng.randint(1, 6))]
        B = [rng.randint(-5, 5) for _ in range(rng.randint(1, 6))]
        if not any(A) or not any(B):
            continue
        if A[0] == 0 or B[0] == 0:
            A[0] = A[0] or 1
            B[0] = B[0] or 1
        assert resultant(A, B) == sylvester_resultant(A, B), (A, B)


def test_circulant_examples():
    assert representer(hnk(5, 3, 1).w) == [1, -1, 0, 1, 0]
    assert ab_order_circulant(hnk(5, 3, 1)) == 11
    assert ab_order_circulant(hnk(6, 2, 3)) == 9
    assert ab_order_circulant(CyclicWord(4, Word.from_pairs(4, [(1, 1), (1, -1)]).free_reduce())) == INFINITE


def test_snf_vs_resultant_hnk():
    for n in range(2, 19):
        for m, k in itertools.product(range(1, n + 1), repeat=2):
            cw = hnk(n, m, k)
            inv = abelianization(cyclic_presentation(cw))
            assert inv.order == ab_order_circulant(cw), (n, m, k)


def test_m_zero_corrected_formula():
    # A = B: G splits as d = gcd(k, n) copies of G_{n/d}(x1^2 x2^-1)
    for n in range(2, 13):
        for k in range(1, n):
            d = math.gcd(k, n)
            expect = (2 ** (n // d) - 1) ** d
            assert ab_order_circulant(hnk(n, n, k)) == expect
            assert abelianization(cyclic_presentation(hnk(n, n, k))).order == expect


def test_h_n3_finite_nontrivial():
    for n in range(11, 31):
        inv = abelianization(cyclic_presentation(hnk(n, 3, 1)))
        assert inv.finite and inv.order > 1


def test_str():
    assert str(AbelianInvariants((11,), 1)) == "Z_11 x Z"
    assert str(AbelianInvariants((), 0)) == "1"
