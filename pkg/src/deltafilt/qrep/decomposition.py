"""Indecomposability, isomorphism and Krull-Schmidt decomposition.

A finite-dimensional module is indecomposable iff its endomorphism ring E is
local.  Locality is decided exactly, without sampling:

* the two-sided ideal I generated by all commutators of E must be nilpotent
  (it always lies in the radical of a local ring);
* E/I is commutative, so Frobenius ``x -> x^p`` is linear on it; its
  stable kernel is the nilradical N/I;
* E/N is a product of finite fields, and the number of factors equals the
  dimension of the Frobenius-fixed subspace.  E is local iff that number is 1.

When E is not local a splitting endomorphism is needed.  A non-scalar
Frobenius-fixed element of E/N, lifted to E, has a minimal polynomial with
at least two coprime primary factors, and the primary decomposition of M
under it is a proper direct-sum splitting.  If the commutator ideal is not
nilpotent (matrix-ring factors in E/N) the same primary-factor test runs on
basis products and seeded random elements instead.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import sympy

from ..errors import ZeroModule
from ..gfmat import GF
from .algebra import Representation
from .homology import hom_basis, is_iso_hom
from .submodules import Submodule, lift_from, whole

MAX_SPLIT_TRIALS = 400


def _seed() -> int:
    return int(os.environ.get("DELTAFILT_SEED", "0"))


# block matrices ------------------------------------------------------------


def to_block(f, m: Representation, n: Representation | None = None) -> np.ndarray:
    """A vertexwise map as one block-diagonal matrix."""
    n = n or m
    out = np.zeros((n.total_dim, m.total_dim), dtype=np.int64)
    om, on = m.offsets(), n.offsets()
    for v in m.alg.vertices:
        out[on[v]:on[v] + n.dims[v], om[v]:om[v] + m.dims[v]] = f[v]
    return out


def from_block(x: np.ndarray, m: Representation, n: Representation | None = None) -> dict:
    n = n or m
    om, on = m.offsets(), n.offsets()
    return {v: x[on[v]:on[v] + n.dims[v], om[v]:om[v] + m.dims[v]].copy() for v in m.alg.vertices}


# algebra of matrices -------------------------------------------------------


class _MatrixAlgebra:
    """A subalgebra of n x n matrices, given by a basis, with coordinate maps."""

    def __init__(self, F: GF, basis: list[np.ndarray]):
        self.F = F
        self.n = basis[0].shape[0]
        self.basis = basis
        self.vectors = np.array([b.ravel() for b in basis], dtype=np.int64).T  # n^2 x d

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: np.ndarray) -> np.ndarray:
        return self.F.solve(self.vectors, x.ravel())

    def element(self, c) -> np.ndarray:
        return (self.vectors @ np.asarray(c, dtype=np.int64) % self.F.p).reshape(self.n, self.n)

    def span(self, mats) -> np.ndarray:
        """Row-reduced coordinate basis (rows) of the span of ``mats``."""
        if not mats:
            return np.zeros((0, self.dim), dtype=np.int64)
        coords = self.F.solve(self.vectors, np.array([m.ravel() for m in mats], dtype=np.int64).T).T
        R, _, rank = self.F.rref(coords)
        return R[:rank]

    def ideal_closure(self, gens) -> np.ndarray:
        rows = self.span(gens)
        while True:
            elems = [self.element(r) for r in rows]
            more = list(elems)
            for b in self.basis:
                for x in elems:
                    more.append(self.F.matmul(b, x))
                    more.append(self.F.matmul(x, b))
            new = self.span(more)
            if new.shape[0] == rows.shape[0]:
                return new
            rows = new

    def is_nilpotent_ideal(self, ideal_rows: np.ndarray) -> bool:
        gens = [self.element(r) for r in ideal_rows]
        power = ideal_rows
        while power.shape[0]:
            elems = [self.element(r) for r in power]
            nxt = self.span([self.F.matmul(x, y) for x in elems for y in gens])
            if nxt.shape[0] == power.shape[0]:
                return False
            power = nxt
        return True


@dataclass
class LocalityCertificate:
    local: bool
    commutator_ideal_dim: int
    commutator_ideal_nilpotent: bool
    components: int | None
    witness: np.ndarray | None  # block endomorphism that splits the module


def _frobenius_matrix(alg: _MatrixAlgebra, proj: np.ndarray, section: np.ndarray) -> np.ndarray:
    F = alg.F
    cols = []
    for j in range(section.shape[1]):
        x = alg.element(section[:, j])
        cols.append(F.matmul(proj, alg.coords(F.power(x, F.p)).reshape(-1, 1)).ravel())
    return np.array(cols, dtype=np.int64).T.reshape(proj.shape[0], section.shape[1])


def _stable_kernel(F: GF, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return F.kernel_matrix(F.power(m, n))


def locality_certificate(F: GF, basis: list[np.ndarray]) -> LocalityCertificate:
    """Decide whether the algebra spanned by ``basis`` (containing 1) is local."""
    alg = _MatrixAlgebra(F, basis)
    d = alg.dim
    comms = [F.add(F.matmul(a, b), F.neg(F.matmul(b, a)))
             for i, a in enumerate(basis) for b in basis[i + 1:]]
    comms = [c for c in comms if c.any()]
    ideal = alg.ideal_closure(comms) if comms else np.zeros((0, d), dtype=np.int64)
    if not alg.is_nilpotent_ideal(ideal):
        return LocalityCertificate(False, ideal.shape[0], False, None, None)

    # E/I: commutative, Frobenius is linear
    proj_a, sec_a = F.quotient_coords(d, F.span(ideal.T, d))
    frob_a = _frobenius_matrix(alg, proj_a, sec_a)
    nil = _stable_kernel(F, frob_a)
    da = proj_a.shape[0]
    proj_b, sec_b = F.quotient_coords(da, F.span(nil, da))
    frob_b = F.matmul(proj_b, frob_a, sec_b)
    db = proj_b.shape[0]
    fixed = F.kernel_matrix(F.add(frob_b, F.neg(F.identity(db)))) if db else np.zeros((0, 0), np.int64)
    components = fixed.shape[1]
    if components == 1:
        return LocalityCertificate(True, ideal.shape[0], True, 1, None)

    witness = None
    if components > 1:
        one = F.matmul(proj_b, proj_a, alg.coords(F.identity(alg.n)).reshape(-1, 1))
        for j in range(components):
            col = fixed[:, j:j + 1]
            if F.rank(np.hstack([one, col])) == 2:
                lifted = F.matmul(sec_a, sec_b, col).ravel()
                witness = alg.element(lifted)
                break
    return LocalityCertificate(False, ideal.shape[0], True, components, witness)


# primary decomposition -----------------------------------------------------


def minimal_polynomial(F: GF, x: np.ndarray) -> list[int]:
    """Monic minimal polynomial of ``x``, coefficients from degree 0 upward."""
    n = x.shape[0]
    powers = [F.identity(n)]
    for _ in range(n):
        powers.append(F.matmul(powers[-1], x))
    K = np.array([p.ravel() for p in powers], dtype=np.int64).T
    R, pivots, rank = F.rref(K)
    free = [c for c in range(K.shape[1]) if c not in set(pivots)]
    f = free[0]
    coeffs = [0] * (f + 1)
    coeffs[f] = 1
    for i, pc in enumerate(pivots):
        if pc < f:
            coeffs[pc] = int(-R[i, f] % F.p)
    return coeffs


def primary_factors(F: GF, coeffs: list[int]) -> list[list[int]]:
    """Pairwise-coprime prime-power factors (low-to-high coefficient lists)."""
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(coeffs)), t, modulus=F.p)
    _, factors = poly.factor_list()
    out = []
    for f, e in factors:
        g = f ** e
        out.append([int(c) % F.p for c in reversed(g.all_coeffs())])
    return out


def eval_poly(F: GF, coeffs: list[int], x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    for c in reversed(coeffs):
        out = F.add(F.matmul(out, x), F.scale(c, F.identity(x.shape[0])))
    return out


def _split_with(rep: Representation, x: np.ndarray) -> tuple[Submodule, Submodule] | None:
    F = rep.field
    factors = primary_factors(F, minimal_polynomial(F, x))
    if len(factors) < 2:
        return None
    g = from_block(eval_poly(F, factors[0], x), rep)
    spaces_k, spaces_i = {}, {}
    for v in rep.alg.vertices:
        d = rep.dims[v]
        spaces_k[v] = F.span(F.kernel_matrix(g[v]), d) if d else F.zero_space(0)
        spaces_i[v] = F.span(g[v], d)
    return Submodule(rep, spaces_k), Submodule(rep, spaces_i)


def _end_blocks(rep: Representation) -> list[np.ndarray]:
    return [to_block(f, rep) for f in hom_basis(rep, rep).basis]


def certificate(rep: Representation) -> LocalityCertificate:
    cached = rep._cache.get("locality")
    if cached is None:
        if rep.is_zero():
            raise ZeroModule("the zero module has no local endomorphism ring")
        cached = locality_certificate(rep.field, _end_blocks(rep))
        rep._cache["locality"] = cached
    return cached


def is_indecomposable(rep: Representation) -> bool:
    return certificate(rep).local


def find_splitting(rep: Representation) -> tuple[Submodule, Submodule] | None:
    """Two complementary proper submodules, or None if ``rep`` is indecomposable."""
    cert = certificate(rep)
    if cert.local:
        return None
    if cert.witness is not None:
        split = _split_with(rep, cert.witness)
        if split is not None:
            return split
    F = rep.field
    basis = _end_blocks(rep)
    candidates = list(basis)
    candidates += [F.matmul(a, b) for a in basis for b in basis]
    for x in candidates:
        split = _split_with(rep, x)
        if split is not None:
            return split
    rng = np.random.default_rng(_seed())
    for _ in range(MAX_SPLIT_TRIALS):
        coeffs = rng.integers(0, F.p, size=len(basis))
        x = np.zeros_like(basis[0])
        for c, b in zip(coeffs, basis):
            x = (x + int(c) * b) % F.p
        split = _split_with(rep, x)
        if split is not None:
            return split
    raise RuntimeError(f"no splitting endomorphism found in {MAX_SPLIT_TRIALS} random trials")


def indecomposable_summands(rep: Representation) -> list[Submodule]:
    """Submodules of ``rep``, each indecomposable, whose direct sum is ``rep``."""
    if rep.is_zero():
        return []
    split = find_splitting(rep)
    if split is None:
        return [whole(rep)]
    out = []
    for part in split:
        part_rep, _ = part.as_rep()
        for inner in indecomposable_summands(part_rep):
            out.append(lift_from(part, inner))
    return out


def _iso_indecomposable(m: Representation, n: Representation) -> bool:
    """Isomorphism test when ``m`` is known to be indecomposable.

    With End(m) local, ``m ≅ n`` forces some basis element of Hom(m, n) to be
    an isomorphism: otherwise every ``g_j f_i`` is a non-unit and so is their
    span, which would contain ``id_m``.
    """
    if m.dim_vector() != n.dim_vector():
        return False
    return any(is_iso_hom(f, m, n) for f in hom_basis(m, n).basis)


def is_isomorphic(m: Representation, n: Representation) -> bool:
    if m.alg is not n.alg or m.dim_vector() != n.dim_vector():
        return False
    if m.is_zero():
        return True
    basis = hom_basis(m, n).basis
    if any(is_iso_hom(f, m, n) for f in basis):
        return True
    if is_indecomposable(m):
        return False
    if not (len(basis) == hom_basis(n, m).dim == hom_basis(m, m).dim == hom_basis(n, n).dim):
        return False
    return _same_multiset(decompose(m), decompose(n))


def _same_multiset(a, b) -> bool:
    if len(a) != len(b):
        return False
    remaining = list(b)
    for rep, mult in a:
        for i, (other, k) in enumerate(remaining):
            if k == mult and _iso_indecomposable(rep, other):
                del remaining[i]
                break
        else:
            return False
    return True


def group_isomorphic(reps: list[Representation]) -> list[tuple[Representation, list[int]]]:
    """Group indecomposables by isomorphism type; returns (representative, indices)."""
    groups: list[tuple[Representation, list[int]]] = []
    for i, r in enumerate(reps):
        for rep, idx in groups:
            if _iso_indecomposable(rep, r):
                idx.append(i)
                break
        else:
            groups.append((r, [i]))
    return groups


def decompose(rep: Representation) -> list[tuple[Representation, int]]:
    """Indecomposable summands up to isomorphism, with multiplicities."""
    summands = [s.as_rep()[0] for s in indecomposable_summands(rep)]
    return [(r, len(idx)) for r, idx in group_isomorphic(summands)]
