"""JSON workspaces: one document holding an algebra and named objects over it.

Vertex, arrow and Ω labels are normalized to strings, since JSON object keys
are strings anyway.  See ``docs/workspace.md`` for the schema.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import DeltaFiltError, UnknownLabel
from .filt import Filtration, OrderedFiltration, filtration
from .hsys import HomologicalSystem, projective_system
from .qrep import (
    PathAlgebra,
    Quiver,
    Representation,
    Submodule,
    direct_sum,
    projective,
    simple,
    zero_rep,
)
from .symb import SymbolicFiltration


class WorkspaceError(DeltaFiltError):
    """Malformed or inconsistent workspace document."""


def _s(x) -> str:
    return str(x)


# ----------------------------------------------------------------------
# algebra and modules


def algebra_from_json(d: Mapping, p: int | None = None) -> PathAlgebra:
    p = d.get("field", p)
    if p is None:
        raise WorkspaceError("no field characteristic given")
    vertices = [_s(v) for v in d["vertices"]]
    arrows = [(_s(a["name"]), _s(a["source"]), _s(a["target"])) for a in d.get("arrows", [])]
    relations = [[(int(c), tuple(_s(x) for x in path)) for c, path in rel] for rel in d.get("relations", [])]
    return PathAlgebra(Quiver(tuple(vertices), arrows), int(p), relations, d.get("nilpotency_bound"))


def algebra_to_json(alg: PathAlgebra) -> dict:
    out: dict = {
        "field": alg.field.p,
        "vertices": [_s(v) for v in alg.vertices],
        "arrows": [{"name": a.name, "source": _s(a.source), "target": _s(a.target)} for a in alg.quiver.arrows],
    }
    if alg.relations:
        out["relations"] = [[[c, list(path)] for c, path in rel] for rel in alg.relations]
    if alg.relations or not alg.quiver.is_acyclic():
        out["nilpotency_bound"] = alg.nilpotency_bound
    return out


def rep_to_json(rep: Representation) -> dict:
    return {"dims": {_s(v): d for v, d in rep.dims.items()},
            "maps": {name: m.tolist() for name, m in rep.maps.items() if m.size}}


def _matrix(F, data, rows: int) -> np.ndarray:
    if data is None or (isinstance(data, list) and len(data) == 0):
        return np.zeros((rows, 0), dtype=np.int64)
    m = np.asarray(data, dtype=np.int64) % F.p
    if m.ndim == 1:
        m = m.reshape(rows, -1)
    return m


def hom_to_json(f: Mapping) -> dict:
    return {_s(v): np.asarray(m).tolist() for v, m in f.items()}


def subspaces_to_json(sub: Submodule) -> dict:
    """Basis columns per vertex (omitted where the subspace is zero)."""
    return {_s(v): s.basis.tolist() for v, s in sub.spaces.items() if s.dim}


# ----------------------------------------------------------------------
# workspace


@dataclass
class Workspace:
    algebra: PathAlgebra
    raw: dict
    modules: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)
    filtrations: dict = field(default_factory=dict)

    # modules -----------------------------------------------------------

    def module(self, name: str, _stack: tuple = ()) -> Representation:
        if name in self.modules:
            return self.modules[name]
        spec = self.raw.get("modules", {}).get(name)
        if spec is None:
            raise UnknownLabel(f"unknown module {name!r}")
        if name in _stack:
            raise WorkspaceError(f"module {name!r} is defined in terms of itself")
        rep = self._build_module(spec, _stack + (name,))
        self.modules[name] = rep
        return rep

    def _build_module(self, spec, stack) -> Representation:
        alg = self.algebra
        if isinstance(spec, str):
            return self.module(spec, stack)
        if "simple" in spec:
            return simple(alg, self._vertex(spec["simple"]))
        if "projective" in spec:
            return projective(alg, self._vertex(spec["projective"]))
        if "zero" in spec:
            return zero_rep(alg)
        if "direct_sum" in spec:
            parts = [self._build_module(s, stack) for s in spec["direct_sum"]]
            return direct_sum(parts, alg)[0]
        dims = {self._vertex(v): int(d) for v, d in spec.get("dims", {}).items()}
        return Representation(alg, dims, spec.get("maps", {}))

    def _vertex(self, v) -> str:
        v = _s(v)
        if v not in self.algebra.vertices:
            raise UnknownLabel(f"unknown vertex {v!r}")
        return v

    def module_names(self) -> list:
        return list(self.raw.get("modules", {}))

    # systems -----------------------------------------------------------

    def system(self, name: str | None = None) -> HomologicalSystem:
        systems = self.raw.get("systems", {})
        if name is None:
            if not systems:
                raise UnknownLabel("workspace defines no system")
            name = next(iter(systems))
        if name in self.systems:
            return self.systems[name]
        spec = systems.get(name)
        if spec is None:
            raise UnknownLabel(f"unknown system {name!r}")
        if spec.get("projective_system"):
            sys_ = projective_system(self.algebra)
        else:
            omega = [_s(w) for w in spec["omega"]]
            pairs = [(_s(a), _s(b)) for a, b in spec.get("preorder_pairs", [])]
            bad = {x for pr in pairs for x in pr} - set(omega)
            if bad:
                raise UnknownLabel(f"preorder mentions unknown labels {sorted(bad)}")
            delta = {}
            for w in omega:
                d = spec["delta"].get(w)
                if d is None:
                    raise UnknownLabel(f"no Δ for label {w!r}")
                delta[w] = self._build_module(d, ())
            sys_ = HomologicalSystem.from_pairs(self.algebra, omega, pairs, delta)
        self.systems[name] = sys_
        return sys_

    def system_names(self) -> list:
        return list(self.raw.get("systems", {}))

    # filtrations -------------------------------------------------------

    def filtration_spec(self, name: str) -> dict:
        spec = self.raw.get("filtrations", {}).get(name)
        if spec is None:
            raise UnknownLabel(f"unknown filtration {name!r}")
        return spec

    def filtration(self, name: str) -> Filtration:
        if name in self.filtrations:
            return self.filtrations[name]
        spec = self.filtration_spec(name)
        m = self.module(spec["module"])
        chain = [self.submodule(m, entry.get("spaces", entry)) for entry in spec.get("chain", [])]
        factors = None
        if spec.get("factors"):
            factors = [tuple((_s(x["omega"]), int(x.get("mult", 1))) for x in step) for step in spec["factors"]]
        f = filtration(m, chain, factors)
        self.filtrations[name] = f
        return f

    def filtration_system(self, name: str) -> HomologicalSystem:
        return self.system(self.filtration_spec(name).get("system"))

    def submodule(self, m: Representation, spaces: Mapping) -> Submodule:
        F = m.field
        out = {}
        for v, basis in spaces.items():
            v = self._vertex(v)
            out[v] = _matrix(F, basis, m.dims[v])
        return Submodule(m, out)

    # endomorphisms and symbolic data ----------------------------------

    def endomorphism(self, name: str) -> tuple[Representation, dict]:
        spec = self.raw.get("endomorphisms", {}).get(name)
        if spec is None:
            raise UnknownLabel(f"unknown endomorphism {name!r}")
        m = self.module(spec["module"])
        F = m.field
        maps = spec.get("maps", {})
        e = {}
        for v in self.algebra.vertices:
            d = m.dims[v]
            data = maps.get(v)
            e[v] = np.zeros((d, d), dtype=np.int64) if data is None or d == 0 else np.asarray(data, dtype=np.int64) % F.p
        return m, e

    def symbolic(self, name: str) -> SymbolicFiltration:
        spec = self.raw.get("symbolic", {}).get(name)
        if spec is None:
            raise UnknownLabel(f"unknown symbolic filtration {name!r}")
        steps = [{"omega": _s(s["omega"]), "card": s["card"]} for s in spec["steps"]]
        return SymbolicFiltration.from_json({"steps": steps})


_SECTIONS = ("modules", "systems", "filtrations", "endomorphisms", "symbolic")


def _normalize(raw) -> dict:
    if not isinstance(raw, dict) or "algebra" not in raw:
        raise WorkspaceError("document has no algebra")
    if "omega" in raw:
        raw = {"algebra": raw["algebra"], "modules": raw.get("modules", {}),
               "systems": {"default": {k: raw[k] for k in ("omega", "preorder_pairs", "delta") if k in raw}}}
    return raw


def _merge_directory(path: Path) -> dict:
    files = sorted(path.glob("*.json"))
    if not files:
        raise WorkspaceError(f"no JSON documents in {path}")
    merged: dict = {}
    for f in files:
        raw = _normalize(json.loads(f.read_text()))
        if "algebra" in merged and raw["algebra"] != merged["algebra"]:
            raise WorkspaceError(f"{f.name} uses a different algebra")
        merged.setdefault("algebra", raw["algebra"])
        for section in _SECTIONS:
            target = merged.setdefault(section, {})
            for name, spec in raw.get(section, {}).items():
                if name in target and target[name] != spec:
                    raise WorkspaceError(f"{section[:-1]} {name!r} defined twice")
                target[name] = spec
    return merged


def load_workspace(source) -> Workspace:
    """Load from a path, a directory of documents, a JSON string, or a dict.

    A standalone system document (with top-level ``omega``) becomes a
    workspace with a single system named ``default``.  The documents of a
    directory must share one algebra; their named objects are merged.
    """
    if isinstance(source, Mapping):
        raw = _normalize(dict(source))
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            raw = _normalize(json.loads(text))
        elif Path(text).is_dir():
            raw = _merge_directory(Path(text))
        else:
            raw = _normalize(json.loads(Path(text).read_text()))
    return Workspace(algebra_from_json(raw["algebra"], raw.get("field")), raw)


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture, e.g. ``fixture_path("a2_projectives.json")``."""
    return Path(str(resources.files("deltafilt") / "fixtures" / name))


def load_fixture(name: str) -> Workspace:
    return load_workspace(fixture_path(name))


# ----------------------------------------------------------------------
# report encoders


def jsonable(x: Any):
    if isinstance(x, dict):
        return {_s(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def factors_to_json(fl) -> list:
    return [{"omega": w, "mult": k} for w, k in fl]


def filtration_to_json(f: Filtration) -> dict:
    return {"chain": [{"spaces": subspaces_to_json(s)} for s in f.chain[1:-1]],
            "factors": [factors_to_json(fl) for fl in f.factors]}


def ordered_to_json(system: HomologicalSystem, o: OrderedFiltration) -> dict:
    return {"layers": [{"class": system.class_label(l.cls),
                        "dims": list(l.sub.dim_vector()),
                        "spaces": subspaces_to_json(l.sub),
                        "factors": factors_to_json(l.factors)} for l in o.layers],
            "ell": o.ell()}
