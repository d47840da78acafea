"""Homological systems: a preordered family of modules with Hom/Ext constraints.

A system ``(Δ; Ω, ≤)`` is valid when

* HS1 -- ``≤`` is a preorder on Ω;
* HS2 -- every Δ_ω is nonzero and indecomposable, and distinct labels carry
  non-isomorphic modules;
* HS3 -- ``Hom(Δ_ω, Δ_ω') != 0`` implies ``ω ≤ ω'``;
* HS4 -- ``Ext^1(Δ_ω, Δ_ω') != 0`` implies ``ω ≤ ω'`` and not ``ω' ≤ ω``.

``Ext^1(Δ_ω, Δ_ω) != 0`` is reported as an HS4 failure, since no preorder
can satisfy both conditions for ``ω' = ω``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import NotValidated, UnknownLabel
from .preord import (
    Linearization,
    Preorder,
    QuotientPoset,
    close_transitive,
    enumerate_linearizations,
    linearize,
    quotient,
)
from .qrep import (
    PathAlgebra,
    Representation,
    ext1_dim,
    hom_dim,
    is_indecomposable,
    is_isomorphic,
    projective,
)


@dataclass
class AxiomResult:
    passed: bool
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"pass": self.passed, "witnesses": [list(map(_jsonable, w)) for w in self.witnesses]}


@dataclass
class ValidationReport:
    axioms: dict  # "HS1".."HS4" -> AxiomResult

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.axioms.values())

    def to_json(self) -> dict:
        return {"valid": self.passed, "axioms": {k: v.to_json() for k, v in self.axioms.items()}}


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


class HomologicalSystem:
    """A labelled family of modules over one algebra, indexed by a preordered set.

    Hom and Ext dimensions between all pairs are computed lazily and cached,
    as is the validation report.  ``linearization`` defaults to the
    deterministic topological order of the preorder's quotient.
    """

    def __init__(self, algebra: PathAlgebra, omega: Sequence, preorder: Preorder,
                 delta: Mapping, linearization: Linearization | None = None):
        self.algebra = algebra
        self.omega = tuple(omega)
        if tuple(preorder.carrier) != self.omega:
            raise ValueError("preorder carrier must list omega in the same order")
        missing = [w for w in self.omega if w not in delta]
        if missing:
            raise UnknownLabel(f"no module for labels {missing}")
        self.preorder = preorder
        self.delta = {w: delta[w] for w in self.omega}
        for w, rep in self.delta.items():
            if rep.alg is not algebra:
                raise ValueError(f"Δ_{w} lives over a different algebra")
        self._linearization = linearization

    @classmethod
    def from_pairs(cls, algebra, omega, pairs, delta, linearization=None):
        return cls(algebra, omega, close_transitive(omega, pairs), delta, linearization)

    def __repr__(self):
        return f"HomologicalSystem(omega={self.omega}, pairs={self.preorder.pairs()})"

    # order data -----------------------------------------------------

    @cached_property
    def quotient(self) -> QuotientPoset:
        return quotient(self.preorder)

    @property
    def linearization(self) -> Linearization:
        if self._linearization is None:
            self._linearization = linearize(self.quotient)
        return self._linearization

    def with_linearization(self, lin: Linearization) -> "HomologicalSystem":
        """Same system, same cached Hom/Ext data, different total order."""
        other = HomologicalSystem.__new__(HomologicalSystem)
        other.__dict__.update(self.__dict__)
        other.__dict__.pop("_pattern", None)
        other._linearization = Linearization(self.quotient, lin.order)
        return other

    def class_of(self, w) -> int:
        return self.quotient.class_of(w)

    def rank(self, w) -> int:
        """Position of the class of ``w`` in the linearization."""
        return self.linearization.rank(self.class_of(w))

    def class_label(self, u: int) -> str:
        return self.quotient.class_name(u)

    # homological data ------------------------------------------------

    @cached_property
    def hom_dims(self) -> dict:
        return {(a, b): hom_dim(self.delta[a], self.delta[b]) for a in self.omega for b in self.omega}

    @cached_property
    def ext_dims(self) -> dict:
        return {(a, b): ext1_dim(self.delta[a], self.delta[b]) for a in self.omega for b in self.omega}

    # validation ------------------------------------------------------

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    @property
    def is_valid(self) -> bool:
        return self.report.passed

    def require_valid(self):
        if not self.is_valid:
            failed = [k for k, r in self.report.axioms.items() if not r.passed]
            raise NotValidated(f"system fails {', '.join(failed)}")

    def identify(self, rep: Representation):
        """The label ω with Δ_ω ≅ ``rep`` (``rep`` indecomposable), or None."""
        for w, d in self.delta.items():
            if d.dim_vector() == rep.dim_vector() and is_isomorphic(d, rep):
                return w
        return None


def validate(system: HomologicalSystem) -> ValidationReport:
    """Check HS1-HS4, collecting every failure witness."""
    pre = system.preorder
    omega = system.omega
    axioms = {}

    hs1 = AxiomResult(True)
    leq = pre.leq
    if not leq.diagonal().all():
        hs1 = AxiomResult(False, [("not reflexive",)])
    axioms["HS1"] = hs1

    hs2 = []
    for w in omega:
        rep = system.delta[w]
        if rep.is_zero():
            hs2.append(("zero", w))
        elif not is_indecomposable(rep):
            hs2.append(("decomposable", w))
    for i, a in enumerate(omega):
        for b in omega[i + 1:]:
            if is_isomorphic(system.delta[a], system.delta[b]):
                hs2.append(("isomorphic", a, b))
    axioms["HS2"] = AxiomResult(not hs2, hs2)

    hs3 = [(a, b, d) for (a, b), d in system.hom_dims.items() if d and not pre.le(a, b)]
    axioms["HS3"] = AxiomResult(not hs3, hs3)

    hs4 = [(a, b, d) for (a, b), d in system.ext_dims.items()
           if d and not (pre.le(a, b) and not pre.le(b, a))]
    axioms["HS4"] = AxiomResult(not hs4, hs4)
    return ValidationReport(axioms)


@dataclass
class PrimeReport:
    linearizations: int
    violations: list  # (linearization labels, axiom, ω, ω')
    agrees_with_validate: bool

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.passed, "linearizations": self.linearizations,
                "violations": [[_jsonable(v) for v in viol] for viol in self.violations],
                "agrees_with_validate": self.agrees_with_validate}


def validate_prime(system: HomologicalSystem, cap: int = 720) -> PrimeReport:
    """HS3'/HS4': the Hom/Ext constraints checked against every linear extension."""
    lins = enumerate_linearizations(system.quotient, cap)
    violations = []
    for lin in lins:
        r = {w: lin.rank(system.class_of(w)) for w in system.omega}
        for (a, b), d in system.hom_dims.items():
            if d and not r[a] <= r[b]:
                violations.append((lin.labels(), "HS3'", a, b))
        for (a, b), d in system.ext_dims.items():
            if d and not r[a] < r[b]:
                violations.append((lin.labels(), "HS4'", a, b))
    hs34 = system.report.axioms["HS3"].passed and system.report.axioms["HS4"].passed
    return PrimeReport(len(lins), violations, hs34 == (not violations))


@dataclass
class ExtPattern:
    omega: tuple
    hom_nonzero: dict
    ext_nonzero: dict
    quotient: QuotientPoset
    linearization: Linearization

    def rank(self, w) -> int:
        return self.linearization.rank(self.quotient.class_of(w))

    def class_of(self, w) -> int:
        return self.quotient.class_of(w)


def ext_pattern(system: HomologicalSystem) -> ExtPattern:
    system.require_valid()
    pattern = ExtPattern(system.omega,
                         {k: d > 0 for k, d in system.hom_dims.items()},
                         {k: d > 0 for k, d in system.ext_dims.items()},
                         system.quotient, system.linearization)
    pre = system.preorder
    for (a, b), nz in pattern.hom_nonzero.items():
        assert not nz or pre.le(a, b)
    for (a, b), nz in pattern.ext_nonzero.items():
        assert not nz or (pre.le(a, b) and not pre.le(b, a))
    assert pattern.linearization.extends()
    return pattern


def projective_system(alg: PathAlgebra) -> HomologicalSystem:
    """Indecomposable projectives, with ``i ≤ j`` generated by ``Hom(P_i, P_j) != 0``."""
    omega = alg.vertices
    delta = {v: projective(alg, v) for v in omega}
    pairs = [(i, j) for i in omega for j in omega if i != j and hom_dim(delta[i], delta[j])]
    return HomologicalSystem.from_pairs(alg, omega, pairs, delta)
