"""Exact dense linear algebra over a prime field GF(p).

Matrices are plain ``numpy`` int64 arrays with entries in ``[0, p)``.  The
field object carries the modulus and every operation that needs it, so one
process can work over several primes at once::

    >>> F = GF(5)
    >>> R, pivots, rank = F.rref([[2, 4], [1, 2]])
    >>> R.tolist(), pivots, rank
    ([[1, 2], [0, 0]], (0,), 1)

Pivoting always takes the first nonzero entry of a column, so every basis
produced here is reproducible across runs.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import DimensionMismatch, NoSolution

_INT64_MAX = 2**63 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Subspace:
    """A subspace of GF(p)^n stored by a canonical column basis.

    The basis is the transpose of the reduced row echelon form of any
    spanning set, so two Subspace objects are equal iff their bases are
    identical arrays.  Build instances with :meth:`GF.span`.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: np.ndarray):
        self.ambient_dim = int(ambient_dim)
        basis = np.asarray(basis, dtype=np.int64)
        if basis.size == 0:
            basis = np.zeros((self.ambient_dim, 0), dtype=np.int64)
        else:
            basis = basis.reshape(self.ambient_dim, -1)
        basis.setflags(write=False)
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and np.array_equal(self.basis, other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.shape, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


class GF:
    """The prime field GF(p) together with matrix routines over it."""

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError("modulus must be below 2**31")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    # construction -----------------------------------------------------

    def array(self, data, shape=None) -> np.ndarray:
        a = np.array(data, dtype=object)
        if shape is not None:
            a = a.reshape(shape)
        elif a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        return (a % self.p).astype(np.int64)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    def inverse_scalar(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)

    # arithmetic -------------------------------------------------------

    def matmul(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            if out.shape[1] != m.shape[0]:
                raise DimensionMismatch(f"cannot multiply {out.shape} by {m.shape}")
            k = out.shape[1]
            if k * (self.p - 1) ** 2 <= _INT64_MAX:
                out = (out @ m) % self.p
            else:
                out = ((out.astype(object) @ m.astype(object)) % self.p).astype(np.int64)
        return out

    def add(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = (out + m) % self.p
        return out

    def neg(self, m: np.ndarray) -> np.ndarray:
        return (-m) % self.p

    def scale(self, c: int, m: np.ndarray) -> np.ndarray:
        return (int(c) % self.p * m) % self.p

    def power(self, m: np.ndarray, k: int) -> np.ndarray:
        result = self.identity(m.shape[0])
        base = m
        while k:
            if k & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            k >>= 1
        return result

    # elimination ------------------------------------------------------

    def rref(self, m) -> tuple[np.ndarray, tuple[int, ...], int]:
        """Reduced row echelon form, pivot columns and rank."""
        p = self.p
        a = self.array(m) if not isinstance(m, np.ndarray) else m % p
        a = a.astype(np.int64, copy=True)
        rows, cols = a.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = a[r] * self.inverse_scalar(a[r, c]) % p
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
            pivots.append(c)
            r += 1
        return a, tuple(pivots), r

    def rank(self, m: np.ndarray) -> int:
        if m.size == 0:
            return 0
        return self.rref(m)[2]

    def kernel_matrix(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning the null space of ``m`` (one per free variable)."""
        m = np.asarray(m, dtype=np.int64)
        cols = m.shape[1]
        if m.shape[0] == 0:
            return self.identity(cols)
        R, pivots, rank = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        K = np.zeros((cols, len(free)), dtype=np.int64)
        for j, f in enumerate(free):
            K[f, j] = 1
            for i, pc in enumerate(pivots):
                K[pc, j] = (-R[i, f]) % self.p
        return K

    def kernel_basis(self, m: np.ndarray) -> Subspace:
        return self.span(self.kernel_matrix(m), ambient_dim=np.asarray(m).shape[1])

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Some X with ``a @ X == b``; raises :class:`NoSolution` otherwise."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        vector = b.ndim == 1
        if vector:
            b = b.reshape(-1, 1)
        if a.shape[0] != b.shape[0]:
            raise DimensionMismatch(f"a has {a.shape[0]} rows, b has {b.shape[0]}")
        n = a.shape[1]
        X = np.zeros((n, b.shape[1]), dtype=np.int64)
        if a.shape[0] == 0:
            return X.ravel() if vector else X
        R, pivots, rank = self.rref(np.hstack([a, b]))
        if any(pc >= n for pc in pivots):
            raise NoSolution("inconsistent linear system")
        for i, pc in enumerate(pivots):
            X[pc] = R[i, n:]
        return X.ravel() if vector else X

    def inv(self, m: np.ndarray) -> np.ndarray:
        n = m.shape[0]
        if m.shape != (n, n):
            raise DimensionMismatch("inverse of a non-square matrix")
        R, pivots, rank = self.rref(np.hstack([m, self.identity(n)]))
        if n and pivots[n - 1] >= n:
            raise NoSolution("matrix is singular")
        return R[:, n:].copy()

    def is_invertible(self, m: np.ndarray) -> bool:
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    # subspaces --------------------------------------------------------

    def span(self, vectors: np.ndarray, ambient_dim: int | None = None) -> Subspace:
        """Canonical Subspace spanned by the columns of ``vectors``."""
        vectors = np.asarray(vectors, dtype=np.int64)
        if ambient_dim is None:
            ambient_dim = vectors.shape[0]
        if vectors.size == 0 or ambient_dim == 0:
            return Subspace(ambient_dim, np.zeros((ambient_dim, 0), dtype=np.int64))
        R, pivots, rank = self.rref(vectors.reshape(ambient_dim, -1).T)
        return Subspace(ambient_dim, R[:rank].T.copy())

    def zero_space(self, n: int) -> Subspace:
        return Subspace(n, np.zeros((n, 0), dtype=np.int64))

    def full_space(self, n: int) -> Subspace:
        return Subspace(n, self.identity(n))

    def _same_ambient(self, u: Subspace, v: Subspace):
        if u.ambient_dim != v.ambient_dim:
            raise DimensionMismatch(f"ambient dims {u.ambient_dim} and {v.ambient_dim}")

    def subspace_sum(self, u: Subspace, v: Subspace) -> Subspace:
        self._same_ambient(u, v)
        return self.span(np.hstack([u.basis, v.basis]), u.ambient_dim)

    def subspace_intersect(self, u: Subspace, v: Subspace) -> Subspace:
        self._same_ambient(u, v)
        if u.dim == 0 or v.dim == 0:
            return self.zero_space(u.ambient_dim)
        K = self.kernel_matrix(np.hstack([u.basis, self.neg(v.basis)]))
        return self.span(self.matmul(u.basis, K[: u.dim]), u.ambient_dim)

    def is_contained(self, u: Subspace, v: Subspace) -> bool:
        """True iff ``u`` is a subspace of ``v``."""
        self._same_ambient(u, v)
        if u.dim == 0:
            return True
        return self.rank(np.hstack([v.basis, u.basis])) == v.dim

    def contains_vectors(self, v: Subspace, vectors: np.ndarray) -> bool:
        return self.is_contained(self.span(vectors, v.ambient_dim), v)

    def coordinates(self, u: Subspace, vectors: np.ndarray) -> np.ndarray:
        """Coefficients expressing ``vectors`` (columns) in the basis of ``u``."""
        return self.solve(u.basis, vectors)

    def image(self, m: np.ndarray, u: Subspace) -> Subspace:
        return self.span(self.matmul(m, u.basis), m.shape[0])

    def preimage(self, m: np.ndarray, u: Subspace) -> Subspace:
        """``{x : m x in u}`` for a linear map ``m``."""
        n = m.shape[1]
        if m.shape[0] == 0:
            return self.full_space(n)
        K = self.kernel_matrix(np.hstack([m, self.neg(u.basis)]))
        return self.span(K[:n], n)

    def quotient_coords(self, ambient_dim: int, u: Subspace) -> tuple[np.ndarray, np.ndarray]:
        """Projection onto ``GF(p)^n / u`` and a section of it.

        The section picks the standard basis vectors at the non-pivot
        positions of the canonical basis of ``u``; the projection is the
        matching block of the inverse of ``[basis | section]``.
        """
        if u.ambient_dim != ambient_dim:
            raise DimensionMismatch("subspace lives in a different ambient space")
        n, k = ambient_dim, u.dim
        pivots = set()
        for j in range(k):
            pivots.add(int(np.flatnonzero(u.basis[:, j])[0]))
        free = [i for i in range(n) if i not in pivots]
        section = np.zeros((n, len(free)), dtype=np.int64)
        for j, i in enumerate(free):
            section[i, j] = 1
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64), section
        full = self.inv(np.hstack([u.basis, section]))
        return full[k:].copy(), section


def to_json(m: np.ndarray) -> str:
    return json.dumps(np.asarray(m).tolist())


def from_json(F: GF, text: str, shape=None) -> np.ndarray:
    data = json.loads(text)
    return F.array(data, shape=shape)
