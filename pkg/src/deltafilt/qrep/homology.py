"""Hom spaces, projective covers and presentations, Ext^1, split retractions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import NoRetraction, NoSolution, NotHereditary
from .algebra import PathAlgebra, Representation, direct_sum, projective_data
from .submodules import Hom, Submodule, kernel_submodule, radical, whole


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)


def _hom_system(m: Representation, n: Representation):
    alg, F = m.alg, m.field
    offsets, k = {}, 0
    for v in alg.vertices:
        offsets[v] = k
        k += n.dims[v] * m.dims[v]
    blocks = []
    for a in alg.quiver.arrows:
        s, t = a.source, a.target
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        eq = np.zeros((rows, k), dtype=np.int64)
        # N_a f_s - f_t M_a = 0, vectorised row-major
        ws = n.dims[s] * m.dims[s]
        if ws:
            eq[:, offsets[s]:offsets[s] + ws] = np.kron(n.maps[a.name], np.eye(m.dims[s], dtype=np.int64))
        wt = n.dims[t] * m.dims[t]
        if wt:
            eq[:, offsets[t]:offsets[t] + wt] = (eq[:, offsets[t]:offsets[t] + wt]
                                                 - np.kron(np.eye(n.dims[t], dtype=np.int64),
                                                           m.maps[a.name].T))
        blocks.append(eq % F.p)
    system = np.vstack(blocks) if blocks else np.zeros((0, k), dtype=np.int64)
    return system, offsets, k


def _unflatten(vec: np.ndarray, m: Representation, n: Representation, offsets) -> Hom:
    return {v: vec[offsets[v]:offsets[v] + n.dims[v] * m.dims[v]].reshape(n.dims[v], m.dims[v]).copy()
            for v in m.alg.vertices}


def hom_basis(m: Representation, n: Representation) -> HomSpace:
    """Basis of all module maps ``m -> n`` (kernel of the intertwiner equations)."""
    key = ("hom", id(n))
    cached = m._cache.get(key)
    if cached is not None and cached.target is n:
        return cached
    system, offsets, k = _hom_system(m, n)
    K = m.field.kernel_matrix(system) if k else np.zeros((0, 0), dtype=np.int64)
    basis = [_unflatten(K[:, j], m, n, offsets) for j in range(K.shape[1])]
    result = HomSpace(m, n, basis)
    m._cache[key] = result
    return result


def hom_dim(m: Representation, n: Representation) -> int:
    return hom_basis(m, n).dim


def is_hom(f: Mapping, m: Representation, n: Representation) -> bool:
    F = m.field
    for v in m.alg.vertices:
        if np.asarray(f[v]).shape != (n.dims[v], m.dims[v]):
            return False
    for a in m.alg.quiver.arrows:
        lhs = F.matmul(n.maps[a.name], f[a.source])
        rhs = F.matmul(f[a.target], m.maps[a.name])
        if not np.array_equal(lhs, rhs):
            return False
    return True


def compose(g: Mapping, f: Mapping, F) -> Hom:
    """``g ∘ f``."""
    return {v: F.matmul(g[v], f[v]) for v in f}


def identity_hom(m: Representation) -> Hom:
    return {v: m.field.identity(d) for v, d in m.dims.items()}


def zero_hom(m: Representation, n: Representation) -> Hom:
    return {v: np.zeros((n.dims[v], m.dims[v]), dtype=np.int64) for v in m.alg.vertices}


def combine(coeffs: Sequence[int], basis: Sequence[Mapping], m: Representation, n: Representation) -> Hom:
    F = m.field
    out = zero_hom(m, n)
    for c, b in zip(coeffs, basis):
        if c % F.p:
            out = {v: (out[v] + int(c) * b[v]) % F.p for v in out}
    return out


def is_iso_hom(f: Mapping, m: Representation, n: Representation) -> bool:
    F = m.field
    return all(m.dims[v] == n.dims[v] and (m.dims[v] == 0 or F.is_invertible(f[v]))
               for v in m.alg.vertices)


def euler_form(alg: PathAlgebra, d: Mapping, e: Mapping) -> int:
    """``sum_v d_v e_v - sum_{a: i->j} d_i e_j`` on dimension vectors.

    On an acyclic quiver without relations this equals
    ``dim Hom(M, N) - dim Ext^1(M, N)`` for any modules of those dimensions.
    """
    if not alg.is_hereditary:
        raise NotHereditary("the Euler form oracle needs a relation-free acyclic quiver")
    if not isinstance(d, Mapping):
        d = dict(zip(alg.vertices, d))
    if not isinstance(e, Mapping):
        e = dict(zip(alg.vertices, e))
    value = sum(d.get(v, 0) * e.get(v, 0) for v in alg.vertices)
    value -= sum(d.get(a.source, 0) * e.get(a.target, 0) for a in alg.quiver.arrows)
    return value


@dataclass
class ProjectiveCover:
    cover: Representation
    epi: Hom
    generators: list  # (vertex, vector in m) per summand, in summand order


def projective_cover(m: Representation) -> ProjectiveCover:
    """Minimal projective ``P0 -> m`` lifting a basis of the top of ``m``."""
    alg, F = m.alg, m.field
    rad = radical(m)
    generators = []
    for v in alg.vertices:
        _, section = F.quotient_coords(m.dims[v], rad.spaces[v])
        for j in range(section.shape[1]):
            generators.append((v, section[:, j]))
    summands = [projective_data(alg, v) for v, _ in generators]
    P0, _, projections = direct_sum([s.rep for s in summands], alg)
    epi = {w: np.zeros((m.dims[w], P0.dims[w]), dtype=np.int64) for w in alg.vertices}
    for (v, vec), data, prj in zip(generators, summands, projections):
        g = _hom_from_generator(data, v, vec, m)
        for w in alg.vertices:
            epi[w] = (epi[w] + F.matmul(g[w], prj[w])) % F.p
    return ProjectiveCover(P0, epi, generators)


def _hom_from_generator(data, v, vec: np.ndarray, m: Representation) -> Hom:
    """The map ``P_v -> m`` sending the trivial path at ``v`` to ``vec``."""
    F = m.field
    vec = np.asarray(vec, dtype=np.int64).reshape(-1, 1)
    out = {}
    for w in m.alg.vertices:
        paths = data.paths[w]
        cols = np.zeros((m.dims[w], len(paths)), dtype=np.int64)
        for i, path in enumerate(paths):
            cols[:, i:i + 1] = F.matmul(m.path_matrix(v, path), vec)
        out[w] = F.matmul(cols, data.section[w])
    return out


def hom_from_projective(alg: PathAlgebra, v, vec, m: Representation) -> Hom:
    return _hom_from_generator(projective_data(alg, v), v, vec, m)


@dataclass
class Presentation:
    p1: Representation
    p0: Representation
    d1: Hom          # p1 -> p0
    epi: Hom         # p0 -> m
    syzygy: Submodule  # kernel of epi inside p0


def syzygy(m: Representation) -> tuple[ProjectiveCover, Submodule]:
    cover = projective_cover(m)
    return cover, kernel_submodule(cover.epi, cover.cover)


def presentation(m: Representation) -> Presentation:
    """``P1 -> P0 -> m -> 0`` exact, with both projectives minimal."""
    F = m.field
    cover, omega = syzygy(m)
    omega_rep, inclusion = omega.as_rep()
    cover1 = projective_cover(omega_rep)
    d1 = {v: F.matmul(inclusion[v], cover1.epi[v]) for v in m.alg.vertices}
    return Presentation(cover1.cover, cover.cover, d1, cover.epi, omega)


def ext1_dim(m: Representation, n: Representation) -> int:
    """``dim Ext^1(m, n)`` from ``0 -> Ω -> P0 -> m -> 0``.

    Uses exactness of ``0 -> Hom(m,n) -> Hom(P0,n) -> Hom(Ω,n) -> Ext^1(m,n) -> 0``
    and ``dim Hom(P_v, n) = dim n_v``.
    """
    key = ("ext1", id(n))
    cached = m._cache.get(key)
    if cached is not None and cached[0] is n:
        return cached[1]
    cover, omega = syzygy(m)
    omega_rep, _ = omega.as_rep()
    hom_p0 = sum(n.dims[v] for v, _ in cover.generators)
    value = hom_dim(omega_rep, n) - hom_p0 + hom_dim(m, n)
    m._cache[key] = (n, value)
    return value


def ext1_basis(m: Representation, n: Representation) -> tuple[Submodule, list]:
    """Cocycle representatives ``Ω -> n`` of a basis of ``Ext^1(m, n)``.

    ``Ω`` is the syzygy of ``m`` inside its projective cover; the returned
    maps are elements of ``Hom(Ω, n)`` spanning a complement of the maps that
    extend to the cover.
    """
    F = m.field
    cover, omega = syzygy(m)
    omega_rep, inclusion = omega.as_rep()
    cocycles = hom_basis(omega_rep, n).basis
    if not cocycles:
        return omega, []
    flat = np.array([np.concatenate([c[v].ravel() for v in m.alg.vertices]) for c in cocycles]).T
    restricted = []
    for g in hom_basis(cover.cover, n).basis:
        r = compose(g, inclusion, F)
        restricted.append(F.solve(flat, np.concatenate([r[v].ravel() for v in m.alg.vertices])))
    coboundaries = F.span(np.array(restricted).T if restricted else np.zeros((len(cocycles), 0)),
                          len(cocycles))
    _, section = F.quotient_coords(len(cocycles), coboundaries)
    reps = [cocycles[int(np.flatnonzero(section[:, j])[0])] for j in range(section.shape[1])]
    return omega, reps


def split_retraction(b: Representation, a: Submodule) -> tuple[Hom, Submodule]:
    """A retraction ``r: b -> a`` with ``r|_a = id`` and the complement ``ker r``.

    Raises :class:`NoRetraction` when ``a`` is not a direct summand, which is
    what happens when ``0 -> a -> b -> b/a -> 0`` has a nonzero class in Ext^1.
    """
    F = b.field
    a_rep, inclusion = a.as_rep()
    basis = hom_basis(b, a_rep).basis
    target = np.concatenate([F.identity(a_rep.dims[v]).ravel() for v in b.alg.vertices])
    if target.size == 0:
        return zero_hom(b, a_rep), whole(b)
    columns = []
    for r in basis:
        ri = compose(r, inclusion, F)
        columns.append(np.concatenate([ri[v].ravel() for v in b.alg.vertices]))
    if not columns:
        raise NoRetraction("no homomorphisms onto the submodule")
    try:
        coeffs = F.solve(np.array(columns).T, target)
    except NoSolution:
        raise NoRetraction("submodule is not a direct summand") from None
    r = combine(coeffs, basis, b, a_rep)
    return r, kernel_submodule(r, b)
