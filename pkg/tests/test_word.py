import random

from hypothesis import given, settings
from hypothesis import strategies as st

from tadlog.word import (
    Equivalence,
    TwoGenWord,
    Word,
    apply_equivalence,
    cyclic_equivalent,
    cyclically_reduce,
    exponent_data,
    free_reduce,
    reflect,
    shift,
    substitute,
)


def W(n, *pairs):
    return Word.from_pairs(n, pairs)


def words(n=5, max_len=12):
    letter = st.tuples(st.integers(0, n - 1), st.sampled_from([1, -1]))
    return st.lists(letter, max_size=max_len).map(lambda ls: Word(n, tuple(ls)))


def test_free_reduce_examples():
    assert free_reduce(W(3, (1, 1), (1, -1))) == Word.identity(3)
    assert free_reduce(W(3, (1, 1), (2, 1), (2, -1), (1, 1))) == W(3, (1, 2))
    w = W(5, (1, 1), (4, 1), (2, -1))
    assert free_reduce(w) == w


def test_cyclically_reduce_examples():
    core, conj = cyclically_reduce(W(3, (2, -1), (1, 1), (2, 1)))
    assert core == W(3, (1, 1))
    assert conj == W(3, (2, -1))
    assert cyclically_reduce(W(3, (1, 1), (2, 1))) == (W(3, (1, 1), (2, 1)), Word.identity(3))
    assert cyclically_reduce(Word.identity(3)) == (Word.identity(3), Word.identity(3))


def test_exponent_data():
    _, total, adm = exponent_data(W(7, (1, 1), (3, 1), (5, -1)))
    assert total == 1 and adm
    _, total, adm = exponent_data(W(3, (1, 1), (2, 1), (1, -1), (2, -1)))
    assert total == 0 and not adm
    assert exponent_data(W(3, (1, 1)))[1:] == (1, True)


def test_shift_examples():
    assert shift(W(3, (1, 1), (2, 1), (3, -1)), 1) == W(3, (2, 1), (3, 1), (1, -1))
    assert shift(W(5, (1, 1)), -1) == W(5, (5, 1))


def test_substitute_lemma21_images():
    from tadlog.cycpres import lemma21_images
    w = W(5, (1, 1), (4, 1), (2, -1))
    assert str(substitute(w, lemma21_images(5))) == "a c^2 a c^-2 a^-1 c^-1"
    a = TwoGenWord((("a", 1),))
    assert substitute(W(2, (1, 1), (2, 1)), [a, a]) == TwoGenWord((("a", 1), ("a", 1)))


def test_cyclic_equivalent_examples():
    n = 7
    g1a = W(n, (1, -1), (2, 1), (1, -1), (2, 1), (n, 1), (1, -1), (n, 1))
    g1b = W(n, (1, -1), (n, 1), (1, -1), (n, 1), (n - 1, -1), (n, 1), (n - 1, -1))
    eq = cyclic_equivalent(g1a, g1b)
    assert eq is not None and eq.shift == -1 and eq.inverted
    assert apply_equivalence(g1a, eq) == g1b
    assert cyclic_equivalent(g1a, g1a) == Equivalence(0, False, 0)
    # x2^-1 is the inverse of the shifted x1, so these are equivalent
    assert cyclic_equivalent(W(5, (1, 1)), W(5, (2, -1))) == Equivalence(1, True, 0)
    assert cyclic_equivalent(W(5, (1, 1), (2, 1)), W(5, (1, 1), (3, 1))) is None
    assert cyclic_equivalent(W(5, (1, 1)), W(5, (1, 2))) is None


def test_reflection_is_opt_in():
    w = W(7, (1, 1), (2, 1), (4, -1))
    r = reflect(w)
    assert cyclic_equivalent(w, r) is None
    assert cyclic_equivalent(w, r, allow_reflection=True).reflected


@given(words())
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)


@given(words(), st.randoms(use_true_random=False))
def test_free_reduce_confluent(w, rnd):
    # cancel adjacent inverse pairs in a random order until none remain
    letters = list(w.letters)
    while True:
        spots = [i for i in range(len(letters) - 1)
                 if letters[i][0] == letters[i + 1][0] and letters[i][1] == -letters[i + 1][1]]
        if not spots:
            break
        i = rnd.choice(spots)
        del letters[i:i + 2]
    assert Word(w.n, tuple(letters)) == free_reduce(w)


@given(words(), st.integers(-20, 20), st.integers(-20, 20))
def test_shift_composes(w, s, t):
    assert shift(shift(w, s), t) == shift(w, s + t)
    assert shift(w, w.n) == w
    assert exponent_data(shift(w, s))[1] == exponent_data(w)[1]


@given(words(), words())
def test_substitute_distributes(u, v):
    from tadlog.cycpres import lemma21_images
    im = lemma21_images(5)
    assert substitute(u.concat(v), im) == (substitute(u, im) * substitute(v, im)).free_reduce()


@settings(max_examples=60)
@given(words(n=4, max_len=5), st.integers(0, 3), st.booleans(), st.integers(0, 6),
       st.integers(0, 3), st.booleans(), st.integers(0, 6))
def test_cyclic_equivalence_relation(w, s1, i1, r1, s2, i2, r2):
    w = cyclically_reduce(w)[0]
    if not len(w):
        return
    u = apply_equivalence(w, Equivalence(s1, i1, r1 % len(w)))
    v = apply_equivalence(u, Equivalence(s2, i2, r2 % len(w)))
    assert cyclic_equivalent(w, w) is not None
    e = cyclic_equivalent(w, u)
    assert e is not None and apply_equivalence(w, e) == u
    assert cyclic_equivalent(u, w) is not None
    assert cyclic_equivalent(w, v) is not None


def test_cyclic_equivalent_random_negative():
    rng = random.Random(3)
    for _ in range(200):
        a = Word(6, tuple((rng.randrange(6), rng.choice((1, -1))) for _ in range(4)))
        b = Word(6, tuple((rng.randrange(6), rng.choice((1, -1))) for _ in range(4)))
        e = cyclic_equivalent(a, b)
        if e is not None:
            assert apply_equivalence(a, e) == b


def test_two_gen_word_printing():
    w = TwoGenWord.from_syllables([("a", 1), ("c", 2), ("a", -1)])
    assert str(w) == "a c^2 a^-1"
    assert w.asum == 0 and w.csum == 2
    assert str(TwoGenWord(())) == "1"
