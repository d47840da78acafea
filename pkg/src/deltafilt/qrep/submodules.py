"""Submodules, quotients, images, preimages, radicals and traces.

A homomorphism ``M -> N`` is a dict mapping each vertex ``v`` to a matrix of
shape ``N.dims[v] x M.dims[v]``.
"""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from ..errors import DimensionMismatch, NotASubmodule
from ..gfmat import Subspace
from .algebra import Representation

Hom = dict


class Submodule:
    """Per-vertex subspaces of a representation, closed under every arrow."""

    def __init__(self, rep: Representation, spaces: Mapping, check: bool = True):
        self.rep = rep
        F = rep.field
        self.spaces = {}
        for v in rep.alg.vertices:
            s = spaces.get(v)
            if s is None:
                s = F.zero_space(rep.dims[v])
            elif not isinstance(s, Subspace):
                s = F.span(np.asarray(s, dtype=np.int64) % F.p, rep.dims[v])
            if s.ambient_dim != rep.dims[v]:
                raise DimensionMismatch(f"subspace at {v!r} has the wrong ambient dimension")
            self.spaces[v] = s
        if check and not self._closed():
            raise NotASubmodule("subspaces are not closed under the arrow maps")

    def _closed(self) -> bool:
        F = self.rep.field
        for a in self.rep.alg.quiver.arrows:
            src = self.spaces[a.source]
            if src.dim and not F.contains_vectors(self.spaces[a.target],
                                                  F.matmul(self.rep.maps[a.name], src.basis)):
                return False
        return True

    def dims(self) -> dict:
        return {v: s.dim for v, s in self.spaces.items()}

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.spaces[v].dim for v in self.rep.alg.vertices)

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def is_whole(self) -> bool:
        return self.total_dim == self.rep.total_dim

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.rep is other.rep and all(self.spaces[v] == other.spaces[v] for v in self.spaces)

    def __hash__(self):
        return hash(tuple(self.spaces[v] for v in self.rep.alg.vertices))

    def __le__(self, other: "Submodule") -> bool:
        F = self.rep.field
        return all(F.is_contained(self.spaces[v], other.spaces[v]) for v in self.spaces)

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self.total_dim < other.total_dim

    def __add__(self, other: "Submodule") -> "Submodule":
        F = self.rep.field
        return Submodule(self.rep, {v: F.subspace_sum(self.spaces[v], other.spaces[v])
                                    for v in self.spaces}, check=False)

    def __and__(self, other: "Submodule") -> "Submodule":
        F = self.rep.field
        return Submodule(self.rep, {v: F.subspace_intersect(self.spaces[v], other.spaces[v])
                                    for v in self.spaces}, check=False)

    def as_rep(self) -> tuple[Representation, Hom]:
        """The submodule as a module in its own right, plus the inclusion."""
        key = ("as_rep",)
        if key in self.__dict__.setdefault("_cache", {}):
            return self._cache[key]
        rep, F = self.rep, self.rep.field
        maps = {}
        for a in rep.alg.quiver.arrows:
            src, tgt = self.spaces[a.source], self.spaces[a.target]
            image = F.matmul(rep.maps[a.name], src.basis)
            maps[a.name] = F.solve(tgt.basis, image) if tgt.dim else np.zeros((0, src.dim), dtype=np.int64)
        sub = Representation(rep.alg, self.dims(), maps, check=False)
        inclusion = {v: self.spaces[v].basis.copy() for v in rep.alg.vertices}
        self._cache[key] = (sub, inclusion)
        return sub, inclusion

    def __repr__(self):
        return f"Submodule(dims={self.dim_vector()} of {self.rep.dim_vector()})"


def zero_submodule(rep: Representation) -> Submodule:
    return Submodule(rep, {}, check=False)


def whole(rep: Representation) -> Submodule:
    F = rep.field
    return Submodule(rep, {v: F.full_space(d) for v, d in rep.dims.items()}, check=False)


def sub_generated(rep: Representation, vectors: Mapping) -> Submodule:
    """Smallest submodule containing the given vectors (columns per vertex)."""
    F = rep.field
    spaces = {}
    for v in rep.alg.vertices:
        vec = vectors.get(v)
        if vec is None:
            spaces[v] = F.zero_space(rep.dims[v])
        else:
            spaces[v] = F.span(np.asarray(vec, dtype=np.int64) % F.p,
                               rep.dims[v])
    changed = True
    while changed:
        changed = False
        for a in rep.alg.quiver.arrows:
            src = spaces[a.source]
            if not src.dim:
                continue
            pushed = F.span(F.matmul(rep.maps[a.name], src.basis), rep.dims[a.target])
            new = F.subspace_sum(spaces[a.target], pushed)
            if new.dim > spaces[a.target].dim:
                spaces[a.target] = new
                changed = True
    return Submodule(rep, spaces)


def image_submodule(f: Mapping, target: Representation) -> Submodule:
    F = target.field
    return Submodule(target, {v: F.span(f[v], target.dims[v]) for v in target.alg.vertices})


def kernel_submodule(f: Mapping, source: Representation) -> Submodule:
    F = source.field
    return Submodule(source, {v: F.span(F.kernel_matrix(f[v]), source.dims[v])
                              if f[v].shape[0] else F.full_space(source.dims[v])
                              for v in source.alg.vertices})


def push(sub: Submodule, f: Mapping, target: Representation) -> Submodule:
    """Image of a submodule under a homomorphism."""
    F = target.field
    return Submodule(target, {v: F.span(F.matmul(f[v], sub.spaces[v].basis), target.dims[v])
                              for v in target.alg.vertices})


def preimage(rep: Representation, f: Mapping, sub: Submodule) -> Submodule:
    """``{x in rep : f(x) in sub}`` for a homomorphism ``f: rep -> sub.rep``."""
    F = rep.field
    spaces = {}
    for v in rep.alg.vertices:
        spaces[v] = F.preimage(f[v], sub.spaces[v]) if rep.dims[v] else F.zero_space(0)
    return Submodule(rep, spaces)


def quotient_rep(rep: Representation, sub: Submodule) -> tuple[Representation, Hom, Hom]:
    """``rep / sub`` with its canonical projection and a vertexwise linear section."""
    if sub.rep is not rep:
        raise NotASubmodule("submodule belongs to a different module")
    F = rep.field
    proj, section = {}, {}
    for v in rep.alg.vertices:
        proj[v], section[v] = F.quotient_coords(rep.dims[v], sub.spaces[v])
    dims = {v: proj[v].shape[0] for v in rep.alg.vertices}
    maps = {a.name: F.matmul(proj[a.target], rep.maps[a.name], section[a.source])
            for a in rep.alg.quiver.arrows}
    return Representation(rep.alg, dims, maps, check=False), proj, section


def radical(rep: Representation) -> Submodule:
    """Sum of the images of all arrows."""
    F = rep.field
    spaces = {}
    for v in rep.alg.vertices:
        images = [rep.maps[a.name] for a in rep.alg.quiver.arrows_into(v)]
        if images:
            spaces[v] = F.span(np.hstack(images), rep.dims[v])
        else:
            spaces[v] = F.zero_space(rep.dims[v])
    return Submodule(rep, spaces)


def top(rep: Representation) -> dict:
    rad = radical(rep)
    return {v: rep.dims[v] - rad.spaces[v].dim for v in rep.alg.vertices}


def sum_of_images(homs: Iterable[Mapping], target: Representation) -> Submodule:
    F = target.field
    homs = list(homs)
    spaces = {}
    for v in target.alg.vertices:
        cols = [h[v] for h in homs if h[v].size]
        spaces[v] = F.span(np.hstack(cols), target.dims[v]) if cols else F.zero_space(target.dims[v])
    return Submodule(target, spaces)


def trace(l: Representation, n: Representation) -> Submodule:
    """Sum of the images of all homomorphisms ``l -> n``."""
    from .homology import hom_basis

    return sum_of_images(hom_basis(l, n).basis, n)


def restrict_to(sub: Submodule, inner: Submodule) -> Submodule:
    """Express ``inner`` (a submodule of ``sub.rep``, inside ``sub``) in ``sub.as_rep()`` coordinates."""
    F = sub.rep.field
    rep, _ = sub.as_rep()
    spaces = {}
    for v in rep.alg.vertices:
        if inner.spaces[v].dim:
            spaces[v] = F.span(F.coordinates(sub.spaces[v], inner.spaces[v].basis), rep.dims[v])
        else:
            spaces[v] = F.zero_space(rep.dims[v])
    return Submodule(rep, spaces)


def lift_from(sub: Submodule, inner: Submodule) -> Submodule:
    """Inverse of :func:`restrict_to`: carry a submodule of ``sub.as_rep()`` back into ``sub.rep``."""
    _, inclusion = sub.as_rep()
    return push(inner, inclusion, sub.rep)
