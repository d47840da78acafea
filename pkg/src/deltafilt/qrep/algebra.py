"""Quivers, bound path algebras over GF(p) and their finite-dimensional modules.

Conventions: a path is a sequence of arrow names in traversal order, so
``("a", "b")`` means "first ``a``, then ``b``" and requires
``target(a) == source(b)``.  A representation assigns to each arrow
``a: i -> j`` a matrix of shape ``dims[j] x dims[i]``; a path acts by the
product of its arrow matrices taken right to left.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from ..errors import InvalidAlgebra, InvalidRepresentation
from ..gfmat import GF


class Arrow(NamedTuple):
    name: str
    source: Hashable
    target: Hashable


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidAlgebra("vertex labels must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InvalidAlgebra("arrow names must be distinct")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise InvalidAlgebra(f"arrow {a.name} has an unknown endpoint")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise InvalidAlgebra(f"unknown arrow {name!r}")

    def arrows_from(self, v) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        return seen == len(self.vertices)


Term = tuple[int, tuple[str, ...]]  # (coefficient, path)


class PathAlgebra:
    """A path algebra ``GF(p)Q / I`` presented by relations.

    ``relations`` is a list of linear combinations of parallel paths, each a
    list of ``(coeff, path)`` pairs.  ``nilpotency_bound`` is a length ``L``
    such that every path of length ``L`` lies in the ideal; it may be
    omitted for acyclic quivers, where the vertex count works.
    """

    def __init__(self, quiver: Quiver, field: GF | int, relations: Iterable[Sequence[Term]] = (),
                 nilpotency_bound: int | None = None):
        self.quiver = quiver
        self.field = field if isinstance(field, GF) else GF(field)
        rels = []
        for rel in relations:
            terms = tuple((int(c) % self.field.p, tuple(path)) for c, path in rel)
            terms = tuple(t for t in terms if t[0] != 0)
            if terms:
                rels.append(terms)
        self.relations = tuple(rels)
        for rel in self.relations:
            self._check_relation(rel)
        if nilpotency_bound is None and quiver.is_acyclic():
            nilpotency_bound = max(len(quiver.vertices), 1)
        self.nilpotency_bound = nilpotency_bound
        self._projectives: dict = {}

    def _check_relation(self, rel):
        ends = set()
        for _, path in rel:
            if len(path) < 2:
                raise InvalidAlgebra(f"relation path {path} is shorter than 2 (not admissible)")
            ends.add(self.path_endpoints(path))
        if len(ends) != 1:
            raise InvalidAlgebra("relation paths are not parallel")

    def path_endpoints(self, path: Sequence[str]) -> tuple:
        arrows = [self.quiver.arrow(n) for n in path]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise InvalidAlgebra(f"path {tuple(path)} is not composable")
        return arrows[0].source, arrows[-1].target

    @property
    def vertices(self) -> tuple:
        return self.quiver.vertices

    @property
    def is_hereditary(self) -> bool:
        return not self.relations and self.quiver.is_acyclic()

    def __repr__(self):
        return (f"PathAlgebra(vertices={self.vertices}, arrows={len(self.quiver.arrows)}, "
                f"p={self.field.p}, relations={len(self.relations)})")

    def paths_from(self, v, max_len: int) -> list[tuple]:
        """All paths starting at ``v`` of length ``< max_len`` as ``(end, arrows)``."""
        out = [(v, ())]
        frontier = [(v, ())]
        for _ in range(max_len - 1):
            nxt = []
            for end, path in frontier:
                for a in self.quiver.arrows_from(end):
                    nxt.append((a.target, path + (a.name,)))
            out.extend(nxt)
            frontier = nxt
        return out


class Representation:
    """A module over a :class:`PathAlgebra`: a space per vertex, a matrix per arrow."""

    def __init__(self, alg: PathAlgebra, dims: Mapping, maps: Mapping | None = None,
                 check: bool = True):
        self.alg = alg
        F = alg.field
        self.dims = {v: int(dims.get(v, 0)) for v in alg.vertices}
        unknown = set(dims) - set(alg.vertices)
        if unknown:
            raise InvalidRepresentation(f"dims given for unknown vertices {sorted(map(str, unknown))}")
        maps = dict(maps or {})
        self.maps = {}
        for a in alg.quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            if a.name in maps:
                m = np.asarray(maps[a.name], dtype=np.int64) % F.p
                if m.size == 0 and 0 in shape:
                    m = np.zeros(shape, dtype=np.int64)
            else:
                m = np.zeros(shape, dtype=np.int64)
            m.setflags(write=False)
            self.maps[a.name] = m
        self._cache: dict = {}
        if check:
            problems = validate_representation(self)
            if problems:
                raise InvalidRepresentation("; ".join(str(p) for p in problems))

    @property
    def field(self) -> GF:
        return self.alg.field

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.alg.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def offsets(self) -> dict:
        out, k = {}, 0
        for v in self.alg.vertices:
            out[v] = k
            k += self.dims[v]
        return out

    def path_matrix(self, start, path: Sequence[str]) -> np.ndarray:
        F = self.field
        m = F.identity(self.dims[start])
        for name in path:
            m = F.matmul(self.maps[name], m)
        return m

    def same_as(self, other: "Representation") -> bool:
        """Literal equality of dimension data and matrices."""
        return (self.alg is other.alg and self.dims == other.dims
                and all(np.array_equal(self.maps[a], other.maps[a]) for a in self.maps))

    def __repr__(self):
        return f"Representation(dims={self.dim_vector()})"


class Violation(NamedTuple):
    kind: str
    where: str
    detail: str

    def __str__(self):
        return f"{self.kind} at {self.where}: {self.detail}"


def validate_representation(rep: Representation) -> list[Violation]:
    """Shape and relation checks; an empty list means the module is valid."""
    alg = rep.alg
    problems = []
    for a in alg.quiver.arrows:
        shape = (rep.dims[a.target], rep.dims[a.source])
        if rep.maps[a.name].shape != shape:
            problems.append(Violation("ShapeViolation", a.name,
                                      f"expected {shape}, got {rep.maps[a.name].shape}"))
    if problems:
        return problems
    F = alg.field
    for i, rel in enumerate(alg.relations):
        source, target = alg.path_endpoints(rel[0][1])
        total = F.zeros(rep.dims[target], rep.dims[source])
        for c, path in rel:
            total = F.add(total, F.scale(c, rep.path_matrix(source, path)))
        if total.any():
            problems.append(Violation("RelationViolation", f"relation {i}",
                                      "relation does not act as zero"))
    return problems


def zero_rep(alg: PathAlgebra) -> Representation:
    return Representation(alg, {})


def simple(alg: PathAlgebra, v) -> Representation:
    if v not in alg.vertices:
        raise InvalidAlgebra(f"unknown vertex {v!r}")
    return Representation(alg, {v: 1})


@dataclass
class ProjectiveData:
    """``P_v`` together with the path combinations behind its basis."""

    rep: Representation
    paths: dict          # vertex w -> list of paths from v to w
    section: dict        # vertex w -> matrix (len(paths[w]) x dim P_v(w))


def projective_data(alg: PathAlgebra, v) -> ProjectiveData:
    if v in alg._projectives:
        return alg._projectives[v]
    if v not in alg.vertices:
        raise InvalidAlgebra(f"unknown vertex {v!r}")
    L = alg.nilpotency_bound
    if L is None:
        raise InvalidAlgebra("projectives need a nilpotency bound for quivers with cycles")
    F = alg.field
    paths = {w: [] for w in alg.vertices}
    for end, path in alg.paths_from(v, L):
        paths[end].append(path)
    index = {w: {p: i for i, p in enumerate(ps)} for w, ps in paths.items()}

    # ideal elements u * rel * w' truncated at length L
    ideal = {w: [] for w in alg.vertices}
    for rel in alg.relations:
        s, t = alg.path_endpoints(rel[0][1])
        shortest = min(len(path) for _, path in rel)
        for end_u, u in alg.paths_from(v, L):
            if end_u != s or len(u) + shortest >= L:
                continue
            for end_w, w in alg.paths_from(t, L - len(u) - shortest):
                vec = np.zeros(len(paths[end_w]), dtype=np.int64)
                for c, path in rel:
                    full = u + tuple(path) + w
                    if len(full) < L:
                        vec[index[end_w][full]] = (vec[index[end_w][full]] + c) % F.p
                if vec.any():
                    ideal[end_w].append(vec)

    proj, section, dims = {}, {}, {}
    for w in alg.vertices:
        n = len(paths[w])
        gens = (np.array(ideal[w], dtype=np.int64).T if ideal[w]
                else np.zeros((n, 0), dtype=np.int64))
        sub = F.span(gens, n)
        proj[w], section[w] = F.quotient_coords(n, sub)
        dims[w] = n - sub.dim
    maps = {}
    for a in alg.quiver.arrows:
        ext = np.zeros((len(paths[a.target]), len(paths[a.source])), dtype=np.int64)
        for j, path in enumerate(paths[a.source]):
            longer = path + (a.name,)
            if len(longer) < L:
                ext[index[a.target][longer], j] = 1
        maps[a.name] = F.matmul(proj[a.target], ext, section[a.source])
    rep = Representation(alg, dims, maps)
    data = ProjectiveData(rep, paths, section)
    alg._projectives[v] = data
    return data


def projective(alg: PathAlgebra, v) -> Representation:
    """The indecomposable projective at ``v``: paths from ``v`` modulo relations."""
    return projective_data(alg, v).rep


def direct_sum(reps: Sequence[Representation], alg: PathAlgebra | None = None):
    """Block-diagonal sum with its canonical injections and projections.

    Homomorphisms are dicts ``vertex -> matrix``.
    """
    if not reps:
        if alg is None:
            raise ValueError("an empty direct sum needs the algebra")
        return zero_rep(alg), [], []
    alg = reps[0].alg
    if any(r.alg is not alg for r in reps):
        raise InvalidRepresentation("summands live over different algebras")
    F = alg.field
    dims = {v: sum(r.dims[v] for r in reps) for v in alg.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        m = F.zeros(dims[a.target], dims[a.source])
        rt = cs = 0
        for r in reps:
            block = r.maps[a.name]
            m[rt:rt + block.shape[0], cs:cs + block.shape[1]] = block
            rt += block.shape[0]
            cs += block.shape[1]
        maps[a.name] = m
    total = Representation(alg, dims, maps, check=False)
    injections, projections = [], []
    start = {v: 0 for v in alg.vertices}
    for r in reps:
        inj, prj = {}, {}
        for v in alg.vertices:
            d = r.dims[v]
            inj[v] = np.zeros((dims[v], d), dtype=np.int64)
            inj[v][start[v]:start[v] + d] = F.identity(d)
            prj[v] = inj[v].T.copy()
            start[v] += d
        injections.append(inj)
        projections.append(prj)
    return total, injections, projections


def power(rep: Representation, k: int) -> Representation:
    return direct_sum([rep] * k, rep.alg)[0]


def change_basis(rep: Representation, g: Mapping) -> Representation:
    """The isomorphic module with maps ``g_t M_a g_s^{-1}``."""
    F = rep.field
    maps = {}
    for a in rep.alg.quiver.arrows:
        s, t = a.source, a.target
        inv_s = F.inv(g[s]) if rep.dims[s] else g[s]
        maps[a.name] = F.matmul(g[t], rep.maps[a.name], inv_s)
    return Representation(rep.alg, rep.dims, maps)


def random_invertible(F: GF, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        m = F.random(rng, n, n)
        if F.is_invertible(m):
            return m
