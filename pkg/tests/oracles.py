"""Independent reference computations used only by the tests."""
import numpy as np

from deltafilt.qrep import Representation


def _prod(F, mats, n_rows):
    out = np.eye(n_rows, dtype=np.int64)
    for m in mats:
        out = F.matmul(m, out) if out.size else np.zeros((m.shape[0], 0), dtype=np.int64)
    return out


def ext1_cocycle_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(m, n) as extension cocycles modulo coboundaries.

    An extension ``0 -> n -> E -> m -> 0`` is given by blocks ``phi_a: m_s -> n_t``
    with ``E_a = [[n_a, phi_a], [0, m_a]]``; the relations of the algebra are
    linear in ``phi``.  Coboundaries are ``n_a f_s - f_t m_a``.
    """
    alg, F = m.alg, m.field
    arrows = alg.quiver.arrows
    offsets, k = {}, 0
    for a in arrows:
        offsets[a.name] = k
        k += n.dims[a.target] * m.dims[a.source]
    rows = []
    for rel in alg.relations:
        start, end = alg.path_endpoints(rel[0][1])
        block = np.zeros((n.dims[end] * m.dims[start], k), dtype=np.int64)
        for c, path in rel:
            arrs = [alg.quiver.arrow(x) for x in path]
            for i, a in enumerate(arrs):
                left = _prod(F, [n.maps[b.name] for b in arrs[i + 1:]], n.dims[a.target])
                right = _prod(F, [m.maps[b.name] for b in arrs[:i]], m.dims[start])
                # vec(L phi R) = kron(L, R^T) vec(phi) in row-major order
                w = n.dims[a.target] * m.dims[a.source]
                if w and block.shape[0]:
                    block[:, offsets[a.name]:offsets[a.name] + w] += c * np.kron(left, right.T)
        rows.append(block % F.p)
    z_dim = k - (F.rank(np.vstack(rows)) if rows and k else 0)
    # coboundaries from f in Hom_vertexwise(m, n)
    cols = []
    for v in alg.vertices:
        for i in range(n.dims[v]):
            for j in range(m.dims[v]):
                f = {u: np.zeros((n.dims[u], m.dims[u]), dtype=np.int64) for u in alg.vertices}
                f[v][i, j] = 1
                vec = np.zeros(k, dtype=np.int64)
                for a in arrows:
                    d = (F.matmul(n.maps[a.name], f[a.source]) - F.matmul(f[a.target], m.maps[a.name])) % F.p
                    vec[offsets[a.name]:offsets[a.name] + d.size] = d.ravel()
                cols.append(vec)
    b_dim = F.rank(np.array(cols).T) if cols and k else 0
    return z_dim - b_dim


def hom_brute_force(m: Representation, n: Representation) -> int:
    """Count all module maps over a tiny field by enumeration; returns log_p of the count."""
    import itertools

    alg, F = m.alg, m.field
    shapes = [(v, n.dims[v], m.dims[v]) for v in alg.vertices]
    size = sum(r * c for _, r, c in shapes)
    count = 0
    for entries in itertools.product(range(F.p), repeat=size):
        f, pos = {}, 0
        for v, r, c in shapes:
            f[v] = np.array(entries[pos:pos + r * c], dtype=np.int64).reshape(r, c)
            pos += r * c
        if all(np.array_equal(F.matmul(n.maps[a.name], f[a.source]), F.matmul(f[a.target], m.maps[a.name]))
               for a in alg.quiver.arrows):
            count += 1
    dim = round(np.log(count) / np.log(F.p))
    assert F.p ** dim == count
    return dim


def interval_module(alg, lo: int, hi: int) -> Representation:
    """The indecomposable of the linear quiver 1 -> 2 -> ... supported on [lo, hi]."""
    dims = {v: int(lo <= v <= hi) for v in alg.vertices}
    maps = {a.name: np.ones((1, 1), dtype=np.int64) for a in alg.quiver.arrows
            if dims[a.source] and dims[a.target]}
    return Representation(alg, dims, maps)


def random_rep(alg, rng, max_dim=3) -> Representation:
    """Random dimensions and maps; with relations, redraw until they hold."""
    from deltafilt.qrep import validate_representation

    F = alg.field
    while True:
        dims = {v: int(rng.integers(0, max_dim + 1)) for v in alg.vertices}
        maps = {a.name: F.random(rng, dims[a.target], dims[a.source]) for a in alg.quiver.arrows}
        rep = Representation(alg, dims, maps, check=False)
        if not validate_representation(rep):
            return rep
