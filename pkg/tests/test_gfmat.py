import itertools

import numpy as np
import pytest
import sympy
from sympy import GF as SGF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings
from hypothesis import strategies as st

from deltafilt import GF, Subspace
from deltafilt.errors import NoSolution
from deltafilt.gfmat import from_json, is_prime, to_json

PRIMES = [2, 3, 5, 7, 101]


def mats(max_side=5):
    return st.tuples(st.sampled_from(PRIMES), st.integers(1, max_side), st.integers(1, max_side),
                     st.integers(0, 2**32 - 1))


def draw(p, r, c, seed):
    return np.random.default_rng(seed).integers(0, p, (r, c))


def test_rejects_composite():
    assert is_prime(2) and is_prime(101) and not is_prime(1) and not is_prime(91)
    with pytest.raises(ValueError):
        GF(12)


def sympy_rref(m, p):
    K = SGF(p)
    dm = DomainMatrix([[K(int(x)) for x in row] for row in m.tolist()], m.shape, K)
    r, pivots = dm.rref()
    out = np.array([[int(x) % p for x in row] for row in r.to_Matrix().tolist()], dtype=np.int64)
    return out.reshape(m.shape), tuple(pivots)


@settings(max_examples=80, deadline=None)
@given(mats())
def test_rref_matches_sympy(args):
    p, r, c, seed = args
    F = GF(p)
    m = draw(p, r, c, seed)
    R, pivots, rank = F.rref(m)
    oracle, oracle_pivots = sympy_rref(m, p)
    assert tuple(pivots) == oracle_pivots and rank == len(oracle_pivots)
    assert np.array_equal(R[:rank], oracle[:rank])
    assert F.rank(m.T) == rank


@settings(max_examples=80, deadline=None)
@given(mats())
def test_kernel_is_exact(args):
    p, r, c, seed = args
    F = GF(p)
    m = draw(p, r, c, seed)
    k = F.kernel_matrix(m)
    assert k.shape == (c, c - F.rank(m))
    assert not F.matmul(m, k).any()
    assert F.rank(k) == k.shape[1]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_inverse_against_sympy(p, n, seed):
    F = GF(p)
    m = draw(p, n, n, seed)
    det = int(sympy.Matrix(m.tolist()).det()) % p
    assert F.is_invertible(m) == (det != 0)
    if det:
        inv = F.inv(m)
        assert np.array_equal(F.matmul(m, inv), F.identity(n))
        assert np.array_equal(inv, np.array(sympy.Matrix(m.tolist()).inv_mod(p).tolist()) % p)


@settings(max_examples=60, deadline=None)
@given(mats())
def test_solve_roundtrip(args):
    p, r, c, seed = args
    F = GF(p)
    a = draw(p, r, c, seed)
    x = draw(p, c, 1, seed + 1)[:, 0]
    b = F.matmul(a, x.reshape(-1, 1))[:, 0]
    y = F.solve(a, b)
    assert np.array_equal(F.matmul(a, y.reshape(-1, 1))[:, 0], b)


def test_solve_inconsistent():
    F = GF(5)
    with pytest.raises(NoSolution):
        F.solve(np.array([[1, 0], [0, 0]]), np.array([0, 1]))


def test_subspace_canonical_and_lattice():
    F = GF(3)
    u = F.span(np.array([[1, 2], [2, 1], [0, 0]]))
    v = F.span(np.array([[2], [1], [0]]))
    assert u == v and hash(u) == hash(v) and u.dim == 1
    w = F.span(np.array([[0], [0], [1]]))
    s = F.subspace_sum(u, w)
    assert s.dim == 2 and F.is_contained(u, s) and F.is_contained(w, s)
    assert F.subspace_intersect(u, w).dim == 0
    assert F.subspace_intersect(s, F.full_space(3)) == s


def test_subspace_exhaustive_small_field():
    # every pair of vectors in GF(2)^3: dim(U + V) + dim(U ∩ V) = dim U + dim V
    F = GF(2)
    vecs = [np.array(v).reshape(3, 1) for v in itertools.product(range(2), repeat=3)]
    for a, b, c in itertools.product(vecs, repeat=3):
        u = F.span(np.hstack([a, b]))
        v = F.span(np.hstack([b, c]))
        assert F.subspace_sum(u, v).dim + F.subspace_intersect(u, v).dim == u.dim + v.dim


def test_quotient_coords_section():
    F = GF(7)
    u = F.span(np.array([[1], [3], [0]]))
    proj, section = F.quotient_coords(3, u)
    assert proj.shape == (2, 3) and section.shape == (3, 2)
    assert np.array_equal(F.matmul(proj, section), F.identity(2))
    assert not F.matmul(proj, u.basis).any()


def test_preimage_and_image():
    F = GF(5)
    m = np.array([[1, 0], [0, 0]])
    target = F.span(np.array([[0], [1]]))
    assert F.preimage(m, target) == F.span(np.array([[0], [1]]))
    assert F.image(m, F.full_space(2)) == F.span(np.array([[1], [0]]))


def test_empty_shapes():
    F = GF(5)
    assert F.kernel_matrix(np.zeros((0, 3), dtype=np.int64)).shape == (3, 3)
    assert F.span(np.zeros((0, 0), dtype=np.int64), 0).dim == 0
    assert Subspace(2, np.zeros((2, 0), dtype=np.int64)).dim == 0


def test_json_roundtrip():
    F = GF(11)
    m = F.random(np.random.default_rng(1), 3, 4)
    assert np.array_equal(from_json(F, to_json(m)), m)


def test_large_prime_no_overflow():
    F = GF(2**31 - 1)
    m = np.array([[2**31 - 2, 2**30], [5, 2**31 - 3]])
    inv = F.inv(m)
    assert np.array_equal(F.matmul(m, inv), F.identity(2))
