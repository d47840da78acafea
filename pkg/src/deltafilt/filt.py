"""Δ-filtrations of concrete modules.

A filtration of ``M`` is a chain ``0 = M_0 < M_1 < ... < M_n = M`` of
submodules whose steps ``M_i / M_{i-1}`` are direct sums of copies of the
Δ_ω of a validated :class:`~deltafilt.hsys.HomologicalSystem`.  The
pipeline here refines a filtration to a slim one (one label per step), sorts
it by adjacent swaps into non-increasing class order, then merges equal
classes into the canonical ordered filtration.

Chains run bottom-up.  Sorted slim filtrations and ordered filtrations carry
their *largest* class at the bottom, so the class ranks decrease going up.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    FactorMismatch,
    FactorNotInDelta,
    ModuleMismatch,
    NestingViolation,
    NoRetraction,
    NotExact,
    NotIdempotent,
    NotSorted,
    SplitFailed,
    TraceSumMismatch,
)
from .hsys import HomologicalSystem
from .preord import Linearization
from .qrep import (
    Representation,
    Submodule,
    compose,
    direct_sum,
    hom_basis,
    image_submodule,
    indecomposable_summands,
    is_hom,
    kernel_submodule,
    lift_from,
    preimage,
    push,
    quotient_rep,
    restrict_to,
    split_retraction,
    sum_of_images,
    whole,
    zero_submodule,
)

Factors = tuple  # ((ω, mult), ...) in Ω order


# ----------------------------------------------------------------------
# types


@dataclass
class Filtration:
    """``chain[0] = 0``, ``chain[-1] = module``; ``factors[i]`` describes ``chain[i+1]/chain[i]``."""

    module: Representation
    chain: list
    factors: list = field(default_factory=list)
    validated: bool = False

    @property
    def steps(self) -> int:
        return len(self.chain) - 1

    def is_slim(self) -> bool:
        return all(len(f) == 1 for f in self.factors)

    def subspace_chain(self) -> list:
        return [tuple(s.spaces[v] for v in self.module.alg.vertices) for s in self.chain]


@dataclass
class SlimFiltration(Filtration):
    """One label per step; ``log`` records the ℓ map after every sorting swap."""

    log: list = field(default_factory=list)

    @property
    def labels(self) -> list:
        return [f[0][0] for f in self.factors]

    @property
    def mults(self) -> list:
        return [f[0][1] for f in self.factors]


@dataclass
class Layer:
    cls: int            # quotient class id
    sub: Submodule      # cumulative submodule whose top step is this layer
    factors: Factors


@dataclass
class OrderedFiltration:
    """Layers bottom-up; class ranks strictly decrease going up."""

    module: Representation
    layers: list

    def chain(self) -> list:
        return [zero_submodule(self.module)] + [l.sub for l in self.layers]

    def classes(self) -> list:
        return [l.cls for l in self.layers]

    def ell(self) -> dict:
        return _ell_of(l.factors for l in self.layers)

    def as_filtration(self) -> Filtration:
        return Filtration(self.module, self.chain(), [l.factors for l in self.layers], validated=True)

    def same_chain(self, other: "OrderedFiltration") -> bool:
        return (self.classes() == other.classes()
                and all(a.sub == b.sub for a, b in zip(self.layers, other.layers)))


def _ell_of(factor_lists) -> dict:
    out: Counter = Counter()
    for fl in factor_lists:
        for w, k in fl:
            out[w] += k
    return {w: k for w, k in out.items() if k}


def ell(f) -> dict:
    """Multiplicity ℓ_ω of each label among the factors (zero entries omitted)."""
    if isinstance(f, OrderedFiltration):
        return f.ell()
    return _ell_of(f.factors)


def _ordered_factors(system: HomologicalSystem, counts: Mapping) -> Factors:
    return tuple((w, counts[w]) for w in system.omega if counts.get(w))


# ----------------------------------------------------------------------
# construction helpers


def filtration(module: Representation, chain: Sequence[Submodule], factors=None) -> Filtration:
    """Build a filtration, adding the zero and whole submodules at the ends if missing."""
    chain = list(chain)
    if not chain or not chain[0].is_zero():
        chain.insert(0, zero_submodule(module))
    if not chain[-1].is_whole():
        chain.append(whole(module))
    if module.is_zero():
        chain = [chain[0]]
    return Filtration(module, chain, list(factors) if factors is not None else [])


def direct_sum_filtration(system: HomologicalSystem, parts: Sequence, order: Sequence[int] | None = None
                          ) -> Filtration:
    """Filter an explicit direct sum of filtered pieces.

    ``parts`` holds labels ω (meaning Δ_ω with its one-step filtration) or
    validated :class:`Filtration` objects.  ``order`` lists, step by step,
    which part advances next; by default part 0 is exhausted first.
    """
    pieces = []
    for p in parts:
        if isinstance(p, Filtration):
            pieces.append(p)
        else:
            rep = system.delta[p]
            pieces.append(Filtration(rep, [zero_submodule(rep), whole(rep)], [((p, 1),)], validated=True))
    if order is None:
        order = [i for i, p in enumerate(pieces) for _ in range(p.steps)]
    if sorted(Counter(order).items()) != sorted((i, p.steps) for i, p in enumerate(pieces) if p.steps):
        raise ValueError("order must advance each part exactly once per step")
    alg = system.algebra
    total, injections, _ = direct_sum([p.module for p in pieces], alg)
    level = [0] * len(pieces)

    def current():
        subs = [push(p.chain[level[i]], injections[i], total) for i, p in enumerate(pieces)]
        out = zero_submodule(total)
        for s in subs:
            out = out + s
        return Submodule(total, out.spaces, check=False)

    chain, factors = [current()], []
    for i in order:
        factors.append(pieces[i].factors[level[i]])
        level[i] += 1
        chain.append(current())
    f = Filtration(total, chain, factors)
    return validate_filtration(system, f)


def apply_automorphism(f: Filtration, g: Mapping) -> Filtration:
    """Transport a filtration along an automorphism ``g`` of its module."""
    m = f.module
    chain = [push(s, g, m) for s in f.chain]
    return replace(f, chain=chain)


def random_automorphism(m: Representation, rng: np.random.Generator, tries: int = 200) -> dict:
    from .qrep import combine, is_iso_hom

    basis = hom_basis(m, m).basis
    F = m.field
    for _ in range(tries):
        g = combine(rng.integers(0, F.p, len(basis)), basis, m, m)
        if is_iso_hom(g, m, m):
            return g
    raise RuntimeError("no random automorphism found")


# ----------------------------------------------------------------------
# validation


def _step_quotient(lower: Submodule, upper: Submodule):
    """``upper / lower`` as a module, with the projection from ``upper.as_rep()``."""
    upper_rep, _ = upper.as_rep()
    q, proj, _ = quotient_rep(upper_rep, restrict_to(upper, lower))
    return upper_rep, q, proj


def identify_factors(system: HomologicalSystem, q: Representation) -> list:
    """Split ``q`` into indecomposables and label each by a Δ; ``[(ω, Submodule of q), ...]``."""
    out = []
    for part in indecomposable_summands(q):
        rep, _ = part.as_rep()
        w = system.identify(rep)
        if w is None:
            raise FactorNotInDelta(f"a summand with dimension vector {rep.dim_vector()} matches no Δ")
        out.append((w, part))
    return out


def validate_filtration(system: HomologicalSystem, f: Filtration) -> Filtration:
    """Certify nesting and identify every factor; returns a validated copy.

    If ``f.factors`` is given it must agree with the identified factors.
    """
    system.require_valid()
    m = f.module
    chain = f.chain
    if not chain or not chain[0].is_zero() or not chain[-1].is_whole():
        raise NestingViolation("a chain must start at 0 and end at the whole module")
    for s in chain:
        if s.rep is not m:
            raise NestingViolation("chain member belongs to another module")
    for lo, hi in zip(chain, chain[1:]):
        if not lo < hi:
            raise NestingViolation("chain is not strictly increasing")
    factors = []
    for lo, hi in zip(chain, chain[1:]):
        _, q, _ = _step_quotient(lo, hi)
        counts = Counter(w for w, _ in identify_factors(system, q))
        factors.append(_ordered_factors(system, counts))
    if f.factors and [tuple(sorted(x, key=_key(system))) for x in f.factors] != factors:
        raise FactorMismatch(f"declared factors {f.factors} differ from identified {factors}")
    cls = SlimFiltration if all(len(x) == 1 for x in factors) else Filtration
    out = cls(m, list(chain), factors, validated=True)
    if isinstance(f, SlimFiltration) and isinstance(out, SlimFiltration):
        out.log = list(f.log)
    return out


def _key(system):
    idx = {w: i for i, w in enumerate(system.omega)}
    return lambda entry: idx[entry[0]]


def _require_validated(system, f: Filtration) -> Filtration:
    return f if f.validated else validate_filtration(system, f)


# ----------------------------------------------------------------------
# slim refinement, order vectors


def refine_to_slim(system: HomologicalSystem, f: Filtration) -> SlimFiltration:
    """Split every multi-label step along the decomposition of its quotient.

    Within a step the label of largest class rank goes to the bottom, so a
    refinement of an ordered filtration is already sorted.
    """
    f = _require_validated(system, f)
    if isinstance(f, SlimFiltration):
        return f
    m = f.module
    chain, factors = [f.chain[0]], []
    for lo, hi, fl in zip(f.chain, f.chain[1:], f.factors):
        if len(fl) == 1:
            chain.append(hi)
            factors.append(fl)
            continue
        upper_rep, q, proj = _step_quotient(lo, hi)
        parts = identify_factors(system, q)
        labels = sorted({w for w, _ in parts}, key=lambda w: (-system.rank(w), system.omega.index(w)))
        acc = zero_submodule(q)
        for w in labels:
            for lw, part in parts:
                if lw == w:
                    acc = acc + part
            inner = preimage(upper_rep, proj, Submodule(q, acc.spaces, check=False))
            chain.append(lift_from(hi, inner))
            factors.append(((w, sum(1 for lw, _ in parts if lw == w)),))
    out = SlimFiltration(m, chain, factors, validated=True)
    assert ell(out) == ell(f)
    return out


def order_vector(system: HomologicalSystem, f: SlimFiltration) -> list:
    """Quotient class of each step's label, bottom-up."""
    return [system.class_of(w) for w in f.labels]


def order_ranks(system: HomologicalSystem, f: SlimFiltration) -> list:
    return [system.rank(w) for w in f.labels]


# ----------------------------------------------------------------------
# sorting


def _swap(system: HomologicalSystem, f: SlimFiltration, j: int) -> SlimFiltration:
    """Exchange steps ``j`` and ``j+1`` (0-based) using a splitting of ``H_{j+2}/H_j``."""
    lower_label, upper_label = f.labels[j], f.labels[j + 1]
    if system.ext_dims[(upper_label, lower_label)]:
        raise SplitFailed(f"Ext^1(Δ_{upper_label}, Δ_{lower_label}) != 0; swap not licensed")
    h0, h1, h2 = f.chain[j], f.chain[j + 1], f.chain[j + 2]
    b_ambient, b, proj = _step_quotient(h0, h2)
    a = push(restrict_to(h2, h1), proj, b)
    try:
        _, complement = split_retraction(b, a)
    except NoRetraction as exc:
        raise SplitFailed(str(exc)) from None
    middle = lift_from(h2, preimage(b_ambient, proj, complement))
    chain = list(f.chain)
    chain[j + 1] = middle
    factors = list(f.factors)
    factors[j], factors[j + 1] = factors[j + 1], factors[j]
    out = SlimFiltration(f.module, chain, factors, validated=True, log=list(f.log))
    # the new lower step must carry exactly the old upper factor
    dims_new = np.subtract(middle.dim_vector(), h0.dim_vector())
    dims_old = np.subtract(h2.dim_vector(), h1.dim_vector())
    if not (h0 < middle < h2) or not np.array_equal(dims_new, dims_old):
        raise SplitFailed("complement has the wrong shape")
    return out


def sort_slim(system: HomologicalSystem, f: SlimFiltration, certify: bool = False) -> SlimFiltration:
    """Bubble adjacent out-of-order steps until class ranks are non-increasing bottom-up.

    ℓ is checked after every swap and appended to ``log``.  With ``certify``
    each intermediate filtration is re-validated from scratch.
    """
    system.require_valid()
    f = refine_to_slim(system, f)
    f = SlimFiltration(f.module, list(f.chain), list(f.factors), validated=True, log=[])
    base = ell(f)
    t = f.steps
    swaps = 0
    changed = True
    while changed:
        changed = False
        for j in range(t - 1):
            r = order_ranks(system, f)
            if r[j] < r[j + 1]:
                f = _swap(system, f, j)
                swaps += 1
                changed = True
                current = ell(f)
                if current != base:
                    raise SplitFailed("ℓ changed during a swap")
                if certify:
                    checked = validate_filtration(system, f)
                    if ell(checked) != base or checked.factors != f.factors:
                        raise SplitFailed("swapped filtration failed re-validation")
                f.log.append(current)
    if swaps > t * (t - 1) // 2:
        raise SplitFailed("swap count exceeds t(t-1)/2")
    return f


def is_sorted(system: HomologicalSystem, f: SlimFiltration) -> bool:
    r = order_ranks(system, f)
    return all(x >= y for x, y in zip(r, r[1:]))


def merge_to_ordered(system: HomologicalSystem, f: SlimFiltration) -> OrderedFiltration:
    """Coalesce runs of equal class into single layers."""
    if not is_sorted(system, f):
        raise NotSorted(f"order ranks {order_ranks(system, f)} are not non-increasing")
    layers = []
    counts: Counter = Counter()
    for i, (w, k) in enumerate(fl[0] for fl in f.factors):
        counts[w] += k
        last = i + 1 == f.steps
        if last or system.class_of(f.labels[i + 1]) != system.class_of(w):
            layers.append(Layer(system.class_of(w), f.chain[i + 1], _ordered_factors(system, counts)))
            counts = Counter()
    out = OrderedFiltration(f.module, layers)
    assert out.ell() == ell(f)
    return out


def ordered_filtration(system: HomologicalSystem, f: Filtration) -> OrderedFiltration:
    """Refine, sort and merge."""
    return merge_to_ordered(system, sort_slim(system, refine_to_slim(system, f)))


# ----------------------------------------------------------------------
# verdicts


@dataclass
class UniquenessVerdict:
    passed: bool
    first: OrderedFiltration
    second: OrderedFiltration
    ell_first: dict
    ell_second: dict
    reason: str = ""


def check_uniqueness(system: HomologicalSystem, f1: Filtration, f2: Filtration) -> UniquenessVerdict:
    """Both ordered filtrations must coincide as subspace chains, with equal ℓ."""
    if f1.module is not f2.module:
        raise ModuleMismatch("filtrations of different module objects")
    o1, o2 = ordered_filtration(system, f1), ordered_filtration(system, f2)
    reason = ""
    if o1.classes() != o2.classes():
        reason = "class sequences differ"
    elif not o1.same_chain(o2):
        reason = "layer subspaces differ"
    elif o1.ell() != o2.ell():
        reason = "multiplicities differ"
    return UniquenessVerdict(not reason, o1, o2, o1.ell(), o2.ell(), reason)


def linearization_sweep(system: HomologicalSystem, f: Filtration, cap: int = 720) -> list:
    """The ordered filtration of ``f`` under every linear extension of the system's order."""
    from .preord import enumerate_linearizations

    out = []
    for lin in enumerate_linearizations(system.quotient, cap):
        out.append((lin, ordered_filtration(system.with_linearization(lin), f)))
    return out


@dataclass
class AdditivityVerdict:
    passed: bool
    ell_l: dict
    ell_m: dict
    ell_n: dict


def _is_exact(l: Representation, m: Representation, n: Representation, inc: Mapping, prj: Mapping) -> bool:
    F = m.field
    if not (is_hom(inc, l, m) and is_hom(prj, m, n)):
        return False
    for v in m.alg.vertices:
        if l.dims[v] and F.rank(inc[v]) != l.dims[v]:
            return False
        if n.dims[v] and F.rank(prj[v]) != n.dims[v]:
            return False
    return image_submodule(inc, m) == kernel_submodule(prj, m)


def additivity_check(system: HomologicalSystem, fl: Filtration, fm: Filtration, fn: Filtration,
                     inclusion: Mapping, projection: Mapping) -> AdditivityVerdict:
    """ℓ(M) = ℓ(L) + ℓ(N) for a short exact sequence ``0 -> L -> M -> N -> 0``."""
    if not _is_exact(fl.module, fm.module, fn.module, inclusion, projection):
        raise NotExact("the sequence is not short exact")
    a, b, c = (ell(_require_validated(system, x)) for x in (fl, fm, fn))
    total = Counter(a)
    total.update(c)
    return AdditivityVerdict(dict(+total) == b, a, b, c)


# ----------------------------------------------------------------------
# direct summands


@dataclass
class SplitCertificate:
    passed: bool
    rows: list  # per W layer: (class, {ω: (ℓ_W, ℓ_L, ℓ_N)})


@dataclass
class SummandSplit:
    image: OrderedFiltration
    kernel: OrderedFiltration
    image_sub: Submodule
    kernel_sub: Submodule
    certificate: SplitCertificate


def _check_idempotent(m: Representation, e: Mapping):
    F = m.field
    e = {v: np.asarray(e[v], dtype=np.int64) % F.p for v in m.alg.vertices}
    if not is_hom(e, m, m):
        raise NotIdempotent("e is not an endomorphism of the module")
    ee = compose(e, e, F)
    if any(not np.array_equal(ee[v], e[v]) for v in m.alg.vertices):
        raise NotIdempotent("e∘e != e")
    return e


def _ordered_from_chain(system, module, sub_chain, classes) -> OrderedFiltration:
    """Layers for a chain of submodules of ``module`` with known classes (empty steps dropped)."""
    layers, prev = [], zero_submodule(module)
    for sub, cls in zip(sub_chain, classes):
        if sub.total_dim == prev.total_dim:
            continue
        _, q, _ = _step_quotient(prev, sub)
        counts = Counter(w for w, _ in identify_factors(system, q))
        if any(system.class_of(w) != cls for w in counts):
            raise TraceSumMismatch("summand layer has factors outside the layer's class")
        layers.append(Layer(cls, sub, _ordered_factors(system, counts)))
        prev = sub
    if not prev.is_whole():
        raise TraceSumMismatch("summand chain does not reach the whole summand")
    return OrderedFiltration(module, layers)


def summand_split(system: HomologicalSystem, m: Representation, ordered: OrderedFiltration,
                  e: Mapping) -> SummandSplit:
    """Ordered filtrations of ``L = im e`` and ``N = ker e`` from one of ``m``.

    Layer by layer, the image of ``W_k`` in ``m / W_{k-1}`` must be the direct
    sum of its traces in the images of ``L`` and ``N``.
    """
    system.require_valid()
    if ordered.module is not m:
        raise ModuleMismatch("ordered filtration is of a different module")
    e = _check_idempotent(m, e)
    F = m.field
    l_sub = image_submodule(e, m)
    n_sub = kernel_submodule(e, m)
    l_chain, n_chain = [], []
    prev = zero_submodule(m)
    for layer in ordered.layers:
        q, proj, _ = quotient_rep(m, prev)
        x = push(layer.sub, proj, q)
        x_rep, _ = x.as_rep()
        traces = []
        for part in (l_sub, n_sub):
            pq = push(part, proj, q)
            p_rep, p_inc = pq.as_rep()
            t = sum_of_images(hom_basis(x_rep, p_rep).basis, p_rep)
            traces.append(push(t, p_inc, q))
        t_l, t_n = traces
        if not ((t_l + t_n) == x and (t_l & t_n).is_zero()):
            raise TraceSumMismatch("layer is not the direct sum of its traces in the summands")
        l_chain.append(preimage(m, proj, t_l) & l_sub)
        n_chain.append(preimage(m, proj, t_n) & n_sub)
        prev = layer.sub
    classes = ordered.classes()
    outs = []
    for part, chain in ((l_sub, l_chain), (n_sub, n_chain)):
        rep, _ = part.as_rep()
        local = [restrict_to(part, c) for c in chain]
        outs.append(_ordered_from_chain(system, rep, local, classes))
    o_l, o_n = outs
    rows, ok = [], True
    wl = {l.cls: dict(l.factors) for l in ordered.layers}
    ll = {l.cls: dict(l.factors) for l in o_l.layers}
    nl = {l.cls: dict(l.factors) for l in o_n.layers}
    for cls in classes:
        entry = {}
        for w in system.omega:
            triple = (wl[cls].get(w, 0), ll.get(cls, {}).get(w, 0), nl.get(cls, {}).get(w, 0))
            if any(triple):
                entry[w] = triple
                ok &= triple[0] == triple[1] + triple[2]
        rows.append((cls, entry))
    cert = SplitCertificate(ok, rows)
    if not ok:
        raise TraceSumMismatch("per-layer multiplicities are not additive")
    return SummandSplit(o_l, o_n, l_sub, n_sub, cert)


# ----------------------------------------------------------------------
# image restriction


def restricted_bound(system: HomologicalSystem, target: OrderedFiltration, w) -> Submodule:
    """Largest bottom segment of ``target`` whose classes all rank at least as high as ``w``'s."""
    r = system.rank(w)
    out = zero_submodule(target.module)
    for layer in target.layers:
        if system.linearization.rank(layer.cls) < r:
            break
        out = layer.sub
    return out


def restricted_image_holds(system: HomologicalSystem, source: OrderedFiltration,
                           target: OrderedFiltration) -> bool:
    """Every map from the bottom layer of ``source`` lands in the matching bottom segment of ``target``."""
    if not source.layers:
        return True
    bottom = source.layers[0]
    w = bottom.factors[0][0]
    w_rep, w_inc = bottom.sub.as_rep()
    bound = restricted_bound(system, target, w)
    for f in hom_basis(w_rep, target.module).basis:
        if not image_submodule(f, target.module) <= bound:
            return False
    return True
