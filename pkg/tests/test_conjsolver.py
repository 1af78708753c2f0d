import itertools
from functools import lru_cache

import pytest

from tadlog.conjsolver import (
    SemidirectElement as E,
    direct_conjugacy_class,
    sd_inv,
    sd_mul,
    semidirect_conjugate,
    twisted_classes,
    twisted_conjugate,
)
from tadlog.cosets import regular_representation, todd_coxeter
from tadlog.cycpres import cyclic_presentation, hnk


@lru_cache(maxsize=None)
def group(n, m, k):
    return regular_representation(todd_coxeter(cyclic_presentation(hnk(n, m, k))))


def test_semidirect_group_laws():
    G = group(6, 3, 4)
    xs = [E(g, p) for g in range(0, G.order, 5) for p in (-2, 0, 1, 3)]
    for x in xs:
        assert sd_mul(G, x, sd_inv(G, x)) == E(0, 0)
        for y in xs[:6]:
            for z in xs[:4]:
                assert sd_mul(G, sd_mul(G, x, y), z) == sd_mul(G, x, sd_mul(G, y, z))


def test_twisted_identity_abelian():
    G = group(5, 3, 1)
    for u, v in itertools.product(range(G.order), repeat=2):
        assert (twisted_conjugate(G, 0, u, v) is not None) == (u == v)
        assert (twisted_conjugate(G, G.phi_order(), u, v) is not None) == (u == v)


def test_twisted_class_count_z7():
    G = group(6, 1, 3)
    assert G.order == 7
    for k in range(G.phi_order()):
        labels = twisted_classes(G, k)
        image = {G.mul[G.inv[g]][G.phi_pow(g, k)] for g in range(G.order)}
        assert len(set(labels)) == G.order // len(image)


def test_twisted_witness_verifies():
    G = group(6, 3, 4)
    for k in range(3):
        for u in range(0, G.order, 3):
            for v in range(0, G.order, 4):
                g = twisted_conjugate(G, k, u, v)
                if g is not None:
                    assert G.mul[G.mul[G.inv[g]][u]][G.phi_pow(g, k)] == v


def test_twisted_zero_is_ordinary_conjugacy():
    G = group(6, 3, 4)
    for u in range(G.order):
        cls = {G.mul[G.mul[G.inv[g]][u]][g] for g in range(G.order)}
        assert {v for v in range(G.order) if twisted_conjugate(G, 0, u, v) is not None} == cls


def test_p_ne_q():
    G = group(5, 3, 1)
    assert semidirect_conjugate(G, E(1, 1), E(1, 2)) == (False, None)


def test_p_zero_reduces_to_orbits():
    G = group(6, 3, 4)
    for u in range(0, G.order, 7):
        for v in range(G.order):
            ok, _ = semidirect_conjugate(G, E(u, 0), E(v, 0))
            expect = any(G.mul[G.mul[G.inv[g]][u]][g] == G.phi_pow(v, m)
                         for m in range(G.phi_order()) for g in range(G.order))
            assert ok == expect


@pytest.mark.parametrize("nmk", [(5, 3, 1), (6, 1, 3)])
def test_reduction_matches_direct_search(nmk):
    G = group(*nmk)
    for p in range(-3, 4):
        for u in range(G.order):
            cls = direct_conjugacy_class(G, E(u, p))
            for v in range(G.order):
                ok, wit = semidirect_conjugate(G, E(u, p), E(v, p))
                assert ok == (E(v, p) in cls)
                if ok:
                    w = E(wit.g, wit.m)
                    assert sd_mul(G, E(u, p), w) == sd_mul(G, w, E(v, p))
                    assert 0 <= wit.m < G.phi_order()


def test_equivalence_relation_order_56():
    G = group(6, 3, 4)
    N = G.order
    for p in (0, 1, -2):
        rel = [[semidirect_conjugate(G, E(u, p), E(v, p))[0] for v in range(N)] for u in range(N)]
        for u in range(N):
            assert rel[u][u]
            for v in range(N):
                assert rel[u][v] == rel[v][u]
        classes = {frozenset(v for v in range(N) if rel[u][v]) for u in range(N)}
        # transitivity: classes partition the elements
        assert sum(len(c) for c in classes) == N
