"""Filtrations abstracted to factor data with cardinal multiplicities.

A symbolic filtration is a bottom-up list of ``(ω, κ)`` steps, where κ is a
finite count or an aleph.  Sorting and merging use only the Hom/Ext pattern
of a validated system, so they make sense for infinite multiplicities too.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import IllegalSwap, NotSorted, UnknownLabel
from .hsys import ExtPattern

MAX_ALEPH = 16


@total_ordering
@dataclass(frozen=True)
class Cardinal:
    """``finite(n)`` or ``aleph(k)``."""

    value: int
    infinite: bool = False

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("cardinals are nonnegative")
        if self.infinite and self.value > MAX_ALEPH:
            raise ValueError(f"aleph index above {MAX_ALEPH}")

    @classmethod
    def finite(cls, n: int) -> "Cardinal":
        return cls(int(n))

    @classmethod
    def aleph(cls, k: int = 0) -> "Cardinal":
        return cls(int(k), True)

    @classmethod
    def coerce(cls, x) -> "Cardinal":
        return x if isinstance(x, Cardinal) else cls.finite(x)

    def __add__(self, other) -> "Cardinal":
        return card_add(self, Cardinal.coerce(other))

    __radd__ = __add__

    def __lt__(self, other) -> bool:
        other = Cardinal.coerce(other)
        return (self.infinite, self.value) < (other.infinite, other.value)

    def __bool__(self) -> bool:
        return self.infinite or self.value > 0

    def __str__(self) -> str:
        return f"ℵ{self.value}" if self.infinite else str(self.value)

    def to_json(self) -> dict:
        return {"aleph": self.value} if self.infinite else {"finite": self.value}

    @classmethod
    def from_json(cls, d) -> "Cardinal":
        if isinstance(d, int):
            return cls.finite(d)
        if "aleph" in d:
            return cls.aleph(d["aleph"])
        return cls.finite(d["finite"])


ZERO = Cardinal(0)


def card_add(a: Cardinal, b: Cardinal) -> Cardinal:
    if a.infinite or b.infinite:
        return Cardinal.aleph(max(x.value for x in (a, b) if x.infinite))
    return Cardinal.finite(a.value + b.value)


def card_sum(items: Iterable[Cardinal]) -> Cardinal:
    out = ZERO
    for c in items:
        out = card_add(out, c)
    return out


@dataclass(frozen=True)
class SymbolicFiltration:
    steps: tuple  # ((ω, Cardinal), ...) bottom-up

    def __post_init__(self):
        steps = tuple((w, Cardinal.coerce(c)) for w, c in self.steps)
        if any(not c for _, c in steps):
            raise ValueError("step multiplicities must be nonzero")
        object.__setattr__(self, "steps", steps)

    @property
    def labels(self) -> list:
        return [w for w, _ in self.steps]

    def to_json(self) -> dict:
        return {"steps": [{"omega": w, "card": c.to_json()} for w, c in self.steps]}

    @classmethod
    def from_json(cls, d) -> "SymbolicFiltration":
        return cls(tuple((s["omega"], Cardinal.from_json(s["card"])) for s in d["steps"]))


def _check_labels(pattern: ExtPattern, f: SymbolicFiltration):
    unknown = [w for w in f.labels if w not in pattern.omega]
    if unknown:
        raise UnknownLabel(f"labels {unknown} are not in the pattern")


def symb_sort(pattern: ExtPattern, f: SymbolicFiltration) -> SymbolicFiltration:
    """Adjacent swaps until ranks are non-increasing bottom-up; each swap needs Ext^1(upper, lower) = 0."""
    _check_labels(pattern, f)
    steps = list(f.steps)
    changed = True
    while changed:
        changed = False
        for j in range(len(steps) - 1):
            lo, hi = steps[j][0], steps[j + 1][0]
            if pattern.rank(lo) < pattern.rank(hi):
                if pattern.ext_nonzero[(hi, lo)]:
                    raise IllegalSwap(f"Ext^1(Δ_{hi}, Δ_{lo}) != 0")
                steps[j], steps[j + 1] = steps[j + 1], steps[j]
                changed = True
    return SymbolicFiltration(tuple(steps))


def symb_is_sorted(pattern: ExtPattern, f: SymbolicFiltration) -> bool:
    r = [pattern.rank(w) for w in f.labels]
    return all(x >= y for x, y in zip(r, r[1:]))


def symb_merge(pattern: ExtPattern, f: SymbolicFiltration) -> list:
    """Layers ``(class, {ω: κ})``, bottom-up, from a sorted symbolic filtration."""
    _check_labels(pattern, f)
    if not symb_is_sorted(pattern, f):
        raise NotSorted("symbolic filtration is not sorted")
    layers: list = []
    for w, c in f.steps:
        u = pattern.class_of(w)
        if not layers or layers[-1][0] != u:
            layers.append((u, {}))
        bucket = layers[-1][1]
        bucket[w] = card_add(bucket.get(w, ZERO), c)
    return layers


def layer_total(layer) -> Cardinal:
    return card_sum(layer[1].values())


def symb_ell(f: SymbolicFiltration | Sequence) -> dict:
    """ℓ_ω as cardinals; accepts a filtration or a merged layer list."""
    out: dict = {}
    if isinstance(f, SymbolicFiltration):
        items = f.steps
    else:
        items = [(w, c) for _, bucket in f for w, c in bucket.items()]
    for w, c in items:
        out[w] = card_add(out.get(w, ZERO), c)
    return out
