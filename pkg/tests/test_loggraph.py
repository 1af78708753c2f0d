import json
import random

import pytest

from tadlog.abelian import abelianization
from tadlog.cycpres import HnkParams, LnParams, derive_cyclic_word, family_ln, normalize_c_sum
from tadlog.errors import PreconditionError
from tadlog.hatfree import HatElement, hat_rewrite
from tadlog.loggraph import (
    GeneralLOG,
    LOGEdge,
    TadpoleLOG,
    collapse_tadpole,
    lemma31_images,
    edge_relator,
    log_presentation,
    positive_product,
    symbolic_collapse,
    symbolic_matches_collapse,
    tadpole_hnk,
    tadpole_to_log,
    two_gen_positive,
)
from tadlog.presentation import two_generator_presentation
from tadlog.word import NamedWord, TwoGenWord, cyclic_equivalent, cyclically_reduce, substitute


def T(*syl, n=None):
    return TwoGenWord.from_syllables(list(syl), n)


def random_tadpole(rng, nmax=8, rmax=4, positive=False):
    n = rng.randint(1, nmax)
    tail = []
    while len(tail) < rng.randint(1, rmax):
        p, d = rng.randrange(n), 1 if positive else rng.choice((1, -1))
        if tail and tail[-1] == (p, -d):
            continue
        tail.append((p, d))
    return TadpoleLOG(n, tuple(tail))


def test_gamma_2_a2():
    t = TadpoleLOG(2, ((0, 1),))
    pres = log_presentation(tadpole_to_log(t))
    assert len(pres.generators) == 3 and len(pres.relators) == 3


def test_tadpole_hnk_labels():
    n, m, k = 9, 2, 4
    g = tadpole_to_log(tadpole_hnk(HnkParams(n, m, k)))
    assert len(g.vertices) == n + k and len(g.edges) == n + k
    lab = f"a{(m - k + 1 - 1) % n + 1}"
    for j in range(k):
        e = g.edges[j]
        nxt = f"t{j + 1}" if j + 1 < k else "a1"
        assert e == LOGEdge(f"t{j}", nxt, lab, 1)
        # relator t_{j+1}^-1 lab^-1 t_j lab: t_j = lab t_{j+1} lab^-1
        assert edge_relator(e) == NamedWord(((nxt, -1), (lab, -1), (f"t{j}", 1), (lab, 1)))
    for i in range(1, n + 1):
        e = g.edges[k + i - 1]
        assert e == LOGEdge(f"a{i}", f"a{i % n + 1}", "t0", 1)


def test_tadpole_hnk_k1_and_k2():
    assert tadpole_hnk(HnkParams(7, 3, 1)).label_index(0) == 3
    t = tadpole_hnk(HnkParams(7, 1, 2))
    assert t.r == 2 and all(t.label_index(j) == 7 for j in range(2))
    assert tadpole_hnk(HnkParams(7, 1, 2), K=9).r == 9
    with pytest.raises(PreconditionError):
        tadpole_hnk(HnkParams(7, 1, 2), K=3)


def test_degenerate_loop_and_disconnected():
    g = GeneralLOG(("v",), (("v", "v", "v", 1),))
    assert log_presentation(g).relators[0] == NamedWord(())
    g = GeneralLOG(("u", "v"), ())
    with pytest.raises(PreconditionError):
        log_presentation(g)
    with pytest.raises(PreconditionError):
        TadpoleLOG(5, ((1, 1), (1, -1)))


def test_small_tadpole_shapes():
    g = tadpole_to_log(TadpoleLOG(1, ((0, 1),)))
    assert len(g.vertices) == 2 and len(g.edges) == 2


def test_collapse_single_letter():
    n, m = 7, 3
    U, _ = collapse_tadpole(TadpoleLOG(n, ((m, 1),)))
    s = n - m - 1
    expect = T(("c", -s), ("a", -1), ("c", s), ("c", 1), ("c", -s), ("a", 1), ("c", s), ("a", -1))
    assert U == expect.free_reduce()
    assert U.asum == -1 and U.csum == 1


def test_collapse_sums_and_symbolic():
    rng = random.Random(3)
    for _ in range(200):
        t = random_tadpole(rng)
        U, n = collapse_tadpole(t)
        assert (U.asum, U.csum) == (-1, 1)
        assert symbolic_matches_collapse(t)
        E, C = symbolic_collapse(t)
        assert C == T(("a", -1), ("c", -t.n), ("a", 1), ("c", t.n)) or len(C) == 2 * t.n + 2


def test_abelianization_preserved():
    rng = random.Random(9)
    for _ in range(80):
        t = random_tadpole(rng, nmax=6, rmax=3)
        U, n = collapse_tadpole(t)
        a = abelianization(log_presentation(tadpole_to_log(t)))
        b = abelianization(two_generator_presentation(U, n))
        assert a == b


def test_two_gen_positive_examples():
    R, _ = two_gen_positive(LnParams(9, (-2,)))
    ac = T(("a", 1), ("c", 1))
    assert R == (ac.inverse() * T(("c", 1)) * ac * T(("a", -1)))
    assert positive_product(LnParams(9, (0, 0))) == T(("a", 2), ("c", -1))
    n = 6
    assert positive_product(LnParams(n, (n - 1,))) == T(("a", 1), ("c", -n))
    with pytest.raises(PreconditionError):
        two_gen_positive(TadpoleLOG(5, ((1, -1),)))


def test_positive_collapse_agrees_in_hat_group():
    rng = random.Random(12)
    for _ in range(300):
        t = random_tadpole(rng, nmax=9, positive=True)
        n = t.n
        U, _ = collapse_tadpole(t)
        R, _ = two_gen_positive(t)
        assert hat_rewrite(U, n) == hat_rewrite(R, n)
        V = substitute(t.tail_word(), lemma31_images(n))
        p0 = t.tail[0][0]
        assert hat_rewrite(V, n) == HatElement.c_power(n, p0 + 1) * hat_rewrite(positive_product(t.ln_params()), n)


def test_triangle_to_family_ln():
    rng = random.Random(13)
    for _ in range(300):
        t = random_tadpole(rng, nmax=9, positive=True)
        R, n = two_gen_positive(t)
        Wd, _ = normalize_c_sum(R.inverse())
        w = cyclically_reduce(derive_cyclic_word(Wd, n).w)[0]
        f = cyclically_reduce(family_ln(t.ln_params()).w)[0]
        assert cyclic_equivalent(w, f) is not None


def test_json_round_trip():
    t = TadpoleLOG(5, ((1, 1), (3, -1)))
    assert TadpoleLOG.from_json(json.loads(json.dumps(t.to_json()))) == t
    g = tadpole_to_log(t)
    assert GeneralLOG.from_json(json.loads(json.dumps(g.to_json()))) == g
