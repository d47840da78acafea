import itertools

import numpy as np
import pytest

from deltafilt import filt
from deltafilt.errors import (
    FactorMismatch,
    FactorNotInDelta,
    ModuleMismatch,
    NestingViolation,
    NotExact,
    NotIdempotent,
    NotSorted,
    NotValidated,
)
from deltafilt.filt import (
    Filtration,
    SlimFiltration,
    additivity_check,
    apply_automorphism,
    check_uniqueness,
    direct_sum_filtration,
    ell,
    filtration,
    linearization_sweep,
    merge_to_ordered,
    order_vector,
    ordered_filtration,
    random_automorphism,
    refine_to_slim,
    restricted_image_holds,
    sort_slim,
    summand_split,
    validate_filtration,
)
from deltafilt.hsys import HomologicalSystem
from deltafilt.qrep import (
    PathAlgebra,
    Quiver,
    Submodule,
    compose,
    direct_sum,
    hom_basis,
    identity_hom,
    projective,
    simple,
    whole,
    zero_rep,
    zero_submodule,
)

from builders import p1_socle, random_slim
from conftest import simples_system


def ov(system, f):
    """Order vector as label-class names, e.g. ['{2}', '{1}']."""
    return [system.class_label(u) for u in order_vector(system, f)]


def s1s2(system):
    m = direct_sum([system.delta[1], system.delta[2]])[0]
    lo = Submodule(m, {1: [[1]]})
    hi = Submodule(m, {2: [[1]]})
    return m, validate_filtration(system, filtration(m, [lo])), validate_filtration(system, filtration(m, [hi]))


# --- validation ---------------------------------------------------------


def test_socle_filtration_of_p1(simples):
    f = p1_socle(simples)
    assert f.factors == [((2, 1),), ((1, 1),)]
    assert isinstance(f, SlimFiltration)


def test_single_step_factors(simples):
    m = direct_sum([simples.delta[1], simples.delta[1], simples.delta[2]])[0]
    f = validate_filtration(simples, filtration(m, []))
    assert f.factors == [((1, 2), (2, 1))]
    assert not f.is_slim()


def test_nesting_violation(simples):
    m, f, g = s1s2(simples)
    bad = Filtration(m, [zero_submodule(m), f.chain[1], g.chain[1], whole(m)])
    with pytest.raises(NestingViolation):
        validate_filtration(simples, bad)


def test_factor_not_in_delta(projectives):
    p1 = projective(projectives.algebra, 1)
    with pytest.raises(FactorNotInDelta):
        validate_filtration(projectives, filtration(p1, [Submodule(p1, {2: [[1]]})]))


def test_factor_mismatch(simples):
    m, f, _ = s1s2(simples)
    with pytest.raises(FactorMismatch):
        validate_filtration(simples, Filtration(m, f.chain, [((2, 1),), ((1, 1),)]))


def test_requires_valid_system(A2):
    s = simples_system(A2, pairs=())
    with pytest.raises(NotValidated):
        validate_filtration(s, filtration(s.delta[1], []))


# --- refinement and order vectors ----------------------------------------


def test_refine_single_step(simples):
    m = direct_sum([simples.delta[1], simples.delta[1], simples.delta[2]])[0]
    f = validate_filtration(simples, filtration(m, []))
    slim = refine_to_slim(simples, f)
    assert slim.factors == [((2, 1),), ((1, 2),)]
    assert ell(slim) == ell(f) == {1: 2, 2: 1}
    assert slim.chain[1].dim_vector() == (0, 1)


def test_refine_fixpoint_and_zero(simples, A2):
    f = p1_socle(simples)
    assert refine_to_slim(simples, f) is f
    z = validate_filtration(simples, filtration(zero_rep(A2), []))
    assert z.steps == 0 and refine_to_slim(simples, z).steps == 0
    assert order_vector(simples, refine_to_slim(simples, z)) == [] and ell(z) == {}


def test_order_vectors(simples):
    assert ov(simples, p1_socle(simples)) == ["{2}", "{1}"]
    _, f, _ = s1s2(simples)
    assert ov(simples, f) == ["{1}", "{2}"]


# --- sorting --------------------------------------------------------------


def test_sort_one_swap(simples):
    m, f, g = s1s2(simples)
    out = sort_slim(simples, f, certify=True)
    assert ov(simples, out) == ["{2}", "{1}"]
    assert out.chain[1] == g.chain[1]
    assert out.log == [{1: 1, 2: 1}]


def test_sort_fixpoint(simples):
    f = p1_socle(simples)
    out = sort_slim(simples, f)
    assert [s.dim_vector() for s in out.chain] == [s.dim_vector() for s in f.chain] and out.log == []


def test_sort_three_steps(simples):
    f = direct_sum_filtration(simples, [1, 2, 2])
    assert ov(simples, f) == ["{1}", "{2}", "{2}"]
    out = sort_slim(simples, f, certify=True)
    assert ov(simples, out) == ["{2}", "{2}", "{1}"]
    assert len(out.log) == 2 and all(l == {1: 1, 2: 2} for l in out.log)
    assert ell(validate_filtration(simples, out)) == ell(f)


def test_sort_random(simples, projectives, rng):
    for system, extra in ((simples, [p1_socle(simples)]), (projectives, [])):
        for _ in range(12):
            f = random_slim(system, rng, list(system.omega) + extra)
            out = sort_slim(system, f, certify=True)
            t = f.steps
            assert filt.is_sorted(system, out)
            assert ell(out) == ell(f)
            assert len(out.log) <= t * (t - 1) // 2
            assert all(l == ell(f) for l in out.log)


# --- merging and ordered filtrations --------------------------------------


def test_merge(simples):
    f = sort_slim(simples, direct_sum_filtration(simples, [1, 2, 2]))
    o = merge_to_ordered(simples, f)
    assert [simples.class_label(c) for c in o.classes()] == ["{2}", "{1}"]
    assert [l.factors for l in o.layers] == [((2, 2),), ((1, 1),)]
    assert o.ell() == {1: 1, 2: 2}
    with pytest.raises(NotSorted):
        merge_to_ordered(simples, direct_sum_filtration(simples, [1, 2]))


def test_merge_single_class(simples):
    f = direct_sum_filtration(simples, [2, 2, 2])
    o = merge_to_ordered(simples, f)
    assert len(o.layers) == 1 and o.layers[0].sub.is_whole() and o.layers[0].factors == ((2, 3),)


def test_ordered_examples(simples, A2):
    o = ordered_filtration(simples, p1_socle(simples))
    assert [l.factors for l in o.layers] == [((2, 1),), ((1, 1),)]
    m, f, g = s1s2(simples)
    assert ordered_filtration(simples, f).same_chain(ordered_filtration(simples, g))
    assert ordered_filtration(simples, filtration(zero_rep(A2), [])).layers == []


# --- uniqueness -------------------------------------------------------------


def test_check_uniqueness(simples, A2):
    m, f, g = s1s2(simples)
    v = check_uniqueness(simples, f, g)
    assert v.passed and v.ell_first == v.ell_second == {1: 1, 2: 1}
    assert check_uniqueness(simples, f, f).passed
    with pytest.raises(ModuleMismatch):
        check_uniqueness(simples, f, p1_socle(simples))


def test_uniqueness_p1_plus_s2(simples, rng):
    base = direct_sum_filtration(simples, [p1_socle(simples), 2], [0, 1, 0])
    variants = [base]
    for _ in range(4):
        variants.append(validate_filtration(simples, apply_automorphism(base, random_automorphism(base.module, rng))))
    variants.append(validate_filtration(simples, Filtration(base.module, [base.chain[0], base.chain[2], base.chain[3]])))
    for v in variants[1:]:
        assert check_uniqueness(simples, base, v).passed


def test_uniqueness_under_random_filtrations(simples, rng):
    for _ in range(5):
        f = random_slim(simples, rng, [1, 2, p1_socle(simples)])
        g = validate_filtration(simples, apply_automorphism(f, random_automorphism(f.module, rng)))
        assert check_uniqueness(simples, f, g).passed


def test_linearization_sweep_on_chain(projectives):
    f = direct_sum_filtration(projectives, [2, 1, 1])
    sweep = linearization_sweep(projectives, f)
    assert len(sweep) == 1


def test_incomparable_classes_depend_on_linearization():
    # two vertices, no arrows: the discrete preorder is valid, and the bottom of
    # the ordered filtration of S1 + S2 follows whichever class is ranked higher
    alg = PathAlgebra(Quiver((1, 2), []), 3)
    s = simples_system(alg, pairs=())
    assert s.is_valid
    f = direct_sum_filtration(s, [1, 2])
    chains = [o for _, o in linearization_sweep(s, f)]
    assert len(chains) == 2
    assert not chains[0].same_chain(chains[1])
    assert chains[0].ell() == chains[1].ell()


# --- additivity ------------------------------------------------------------


def test_additivity_split(simples):
    s1, s2 = simples.delta[1], simples.delta[2]
    m, inj, prj = direct_sum([s2, s1])
    fl, fn = (validate_filtration(simples, filtration(x, [])) for x in (s2, s1))
    fm = direct_sum_filtration(simples, [2, 1])
    v = additivity_check(simples, fl, fm, fn, inj[0], prj[1])
    assert v.passed and v.ell_m == {1: 1, 2: 1}


def test_additivity_non_split(simples):
    p1 = projective(simples.algebra, 1)
    s1, s2 = simples.delta[1], simples.delta[2]
    inc = {1: np.zeros((1, 0), dtype=np.int64), 2: np.array([[1]])}
    prj = {1: np.array([[1]]), 2: np.zeros((0, 1), dtype=np.int64)}
    fl, fn = (validate_filtration(simples, filtration(x, [])) for x in (s2, s1))
    v = additivity_check(simples, fl, p1_socle(simples), fn, inc, prj)
    assert v.passed and v.ell_m == {1: 1, 2: 1}
    with pytest.raises(NotExact):
        additivity_check(simples, fl, p1_socle(simples), fn, inc, {1: np.array([[0]]), 2: prj[2]})


def test_additivity_zero_kernel(simples, A2):
    z = zero_rep(A2)
    fz = validate_filtration(simples, filtration(z, []))
    f = p1_socle(simples)
    m = f.module
    inc = {v: np.zeros((m.dims[v], 0), dtype=np.int64) for v in A2.vertices}
    v = additivity_check(simples, fz, f, f, inc, identity_hom(m))
    assert v.passed and v.ell_l == {} and v.ell_m == v.ell_n


# --- summands --------------------------------------------------------------


def p1p1p2(projectives):
    return direct_sum_filtration(projectives, [1, 1, 2])


def test_summand_split_example(projectives):
    f = p1p1p2(projectives)
    m = f.module
    o = ordered_filtration(projectives, f)
    e = {1: np.diag([1, 0]), 2: np.diag([1, 0, 1])}
    out = summand_split(projectives, m, o, e)
    rows = dict((projectives.class_label(c), r) for c, r in out.certificate.rows)
    assert rows == {"{1}": {1: (2, 1, 1)}, "{2}": {2: (1, 1, 0)}}
    assert out.image.ell() == {1: 1, 2: 1} and out.kernel.ell() == {1: 1}
    assert out.image_sub.dim_vector() == (1, 2) and out.kernel_sub.dim_vector() == (1, 1)
    for part in (out.image, out.kernel):
        validate_filtration(projectives, part.as_filtration())
        assert _is_subsequence(part.classes(), o.classes())


def _is_subsequence(small, big):
    it = iter(big)
    return all(x in it for x in small)


def test_summand_trivial_idempotents(projectives):
    f = p1p1p2(projectives)
    m = f.module
    o = ordered_filtration(projectives, f)
    full = summand_split(projectives, m, o, identity_hom(m))
    assert full.kernel.layers == [] and full.image.ell() == o.ell()
    zero = summand_split(projectives, m, o, {v: np.zeros((d, d), dtype=np.int64) for v, d in m.dims.items()})
    assert zero.image.layers == [] and zero.kernel.ell() == o.ell()
    with pytest.raises(NotIdempotent):
        summand_split(projectives, m, o, {v: 2 * np.eye(d, dtype=np.int64) for v, d in m.dims.items()})


def conjugated_idempotent(m, coords, g, F):
    """``g e g^{-1}`` for a coordinate projection ``e`` onto the summands in ``coords``."""
    e = {v: np.diag([1 if i in coords[v] else 0 for i in range(d)]).astype(np.int64) for v, d in m.dims.items()}
    ginv = {v: F.inv(g[v]) if m.dims[v] else g[v] for v in g}
    return compose(g, compose(e, ginv, F), F)


def _part_module(system, p):
    return p.module if isinstance(p, Filtration) else system.delta[p]


def _part_ell(p):
    return ell(p) if isinstance(p, Filtration) else {p: 1}


def test_summand_split_random(simples, projectives, rng):
    cases = 0
    for system, parts in ((projectives, [1, 1, 2]), (simples, [p1_socle(simples), 2, 1])):
        f = direct_sum_filtration(system, parts)
        m, F = f.module, f.module.field
        o = ordered_filtration(system, f)
        pieces = [_part_module(system, p) for p in parts]
        # summand i occupies coordinates starts[v][i]:starts[v][i+1] at vertex v
        starts = {v: list(itertools.accumulate([0] + [x.dims[v] for x in pieces])) for v in m.dims}
        for _ in range(6):
            pick = [i for i in range(len(pieces)) if rng.random() < 0.5]
            coords = {v: {c for i in pick for c in range(starts[v][i], starts[v][i + 1])} for v in m.dims}
            e = conjugated_idempotent(m, coords, random_automorphism(m, rng), F)
            out = summand_split(system, m, o, e)
            assert out.certificate.passed
            want = {}
            for i in pick:
                for w, k in _part_ell(parts[i]).items():
                    want[w] = want.get(w, 0) + k
            assert out.image.ell() == want
            for part in (out.image, out.kernel):
                validate_filtration(system, part.as_filtration())
            cases += 1
    assert cases >= 10


# --- image restriction and bookkeeping --------------------------------------


def test_restricted_images(simples, projectives, rng):
    for system, pool in ((simples, [1, 2, p1_socle(simples)]), (projectives, [1, 2])):
        ordered = [ordered_filtration(system, random_slim(system, rng, pool)) for _ in range(4)]
        for a, b in itertools.product(ordered, repeat=2):
            assert restricted_image_holds(system, a, b)


def test_dimension_bookkeeping(simples, rng):
    for _ in range(5):
        f = random_slim(simples, rng, [1, 2, p1_socle(simples)])
        total = sum(k * simples.delta[w].total_dim for w, k in ell(f).items())
        assert total == f.module.total_dim
