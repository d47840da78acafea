"""Finite preorders, their partial-order quotients and linear extensions.

Also hosts the divisibility constructions on ``{1..n}``: the prime-length
function, lexicographic linearizations by prime length and the injective
re-indexing trick that can put a number with more prime factors ahead of one
with fewer.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import CapExceeded, CycleDetected, PreconditionViolated, UnknownLabel


@dataclass(frozen=True, eq=False)
class Preorder:
    """A reflexive, transitive relation on a finite ordered carrier."""

    carrier: tuple
    leq: np.ndarray  # leq[i, j] <=> carrier[i] <= carrier[j]

    def __post_init__(self):
        n = len(self.carrier)
        if len(set(self.carrier)) != n:
            raise PreconditionViolated("carrier labels must be distinct")
        if self.leq.shape != (n, n):
            raise PreconditionViolated("relation matrix does not match carrier")
        if not self.leq.diagonal().all():
            raise PreconditionViolated("relation is not reflexive")
        if not np.array_equal(_warshall(self.leq), self.leq):
            raise PreconditionViolated("relation is not transitive")
        self.leq.setflags(write=False)

    def index(self, label) -> int:
        try:
            return self.carrier.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def le(self, a, b) -> bool:
        return bool(self.leq[self.index(a), self.index(b)])

    def pairs(self) -> list[tuple]:
        """All related pairs except the reflexive ones."""
        n = len(self.carrier)
        return [(self.carrier[i], self.carrier[j])
                for i in range(n) for j in range(n) if i != j and self.leq[i, j]]

    def __eq__(self, other):
        return (isinstance(other, Preorder) and self.carrier == other.carrier
                and np.array_equal(self.leq, other.leq))

    def __hash__(self):
        return hash((self.carrier, self.leq.tobytes()))


@dataclass(frozen=True, eq=False)
class QuotientPoset:
    """Classes of mutually related elements with the induced partial order."""

    source: Preorder
    classes: tuple[tuple, ...]
    leq: np.ndarray
    projection: dict

    def class_of(self, label) -> int:
        try:
            return self.projection[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def le(self, u: int, v: int) -> bool:
        return bool(self.leq[u, v])

    def __len__(self):
        return len(self.classes)

    def class_name(self, u: int) -> str:
        return "{" + ",".join(str(c) for c in self.classes[u]) + "}"


@dataclass(frozen=True, eq=False)
class Linearization:
    """A total order on the classes of a quotient poset; ``order[0]`` is least."""

    poset: QuotientPoset
    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.poset))):
            raise ValueError("order is not a permutation of the classes")
        object.__setattr__(self, "_rank", {u: i for i, u in enumerate(self.order)})

    def rank(self, u: int) -> int:
        return self._rank[u]

    def label_rank(self, label) -> int:
        return self._rank[self.poset.class_of(label)]

    def precedes(self, a, b) -> bool:
        """Strict ``a ≺ b`` for carrier labels."""
        return self.label_rank(a) < self.label_rank(b)

    def labels(self) -> list:
        """Carrier labels in linear order (members of a class stay together)."""
        return [c for u in self.order for c in self.poset.classes[u]]

    def extends(self) -> bool:
        q = self.poset
        n = len(q)
        return all(self.rank(u) <= self.rank(v)
                   for u in range(n) for v in range(n) if q.leq[u, v])

    def __eq__(self, other):
        return isinstance(other, Linearization) and self.order == other.order and (
            self.poset.classes == other.poset.classes)

    def __hash__(self):
        return hash((self.poset.classes, self.order))


def _warshall(rel: np.ndarray) -> np.ndarray:
    closure = rel.astype(bool).copy()
    for k in range(closure.shape[0]):
        closure |= np.outer(closure[:, k], closure[k, :])
    return closure


def close_transitive(carrier: Iterable[Hashable], pairs: Iterable[tuple]) -> Preorder:
    """Smallest preorder on ``carrier`` containing every pair ``(a, b)`` as ``a <= b``."""
    carrier = tuple(carrier)
    index = {c: i for i, c in enumerate(carrier)}
    rel = np.eye(len(carrier), dtype=bool)
    for a, b in pairs:
        if a not in index:
            raise UnknownLabel(a)
        if b not in index:
            raise UnknownLabel(b)
        rel[index[a], index[b]] = True
    return Preorder(carrier, _warshall(rel))


def quotient(p: Preorder) -> QuotientPoset:
    n = len(p.carrier)
    classes: list[list] = []
    projection: dict = {}
    for i, c in enumerate(p.carrier):
        for u, members in enumerate(classes):
            j = p.index(members[0])
            if p.leq[i, j] and p.leq[j, i]:
                members.append(c)
                projection[c] = u
                break
        else:
            projection[c] = len(classes)
            classes.append([c])
    k = len(classes)
    leq = np.zeros((k, k), dtype=bool)
    for u in range(k):
        for v in range(k):
            vals = {bool(p.leq[p.index(a), p.index(b)]) for a in classes[u] for b in classes[v]}
            if len(vals) != 1:
                raise AssertionError("induced relation depends on representatives")
            leq[u, v] = vals.pop()
    off = leq & leq.T
    np.fill_diagonal(off, False)
    if off.any():
        raise AssertionError("quotient relation is not antisymmetric")
    leq.setflags(write=False)
    return QuotientPoset(p, tuple(tuple(c) for c in classes), leq, projection)


def linearize(q: QuotientPoset, tiebreak: Callable[[int], object] | None = None) -> Linearization:
    """Kahn-style topological sort, always removing the tiebreak-least minimal class.

    With no tiebreak the classes are ranked by the carrier position of their
    first member, which makes the result deterministic.
    """
    n = len(q)
    key = tiebreak or (lambda u: u)
    remaining = set(range(n))
    order = []
    while remaining:
        minimal = [u for u in remaining
                   if not any(q.leq[v, u] for v in remaining if v != u)]
        if not minimal:
            raise CycleDetected("quotient relation has a cycle")
        u = min(minimal, key=key)
        order.append(u)
        remaining.remove(u)
    return Linearization(q, tuple(order))


def enumerate_linearizations(q: QuotientPoset, cap: int = 720) -> list[Linearization]:
    """Every linear extension of ``q``; raises :class:`CapExceeded` past ``cap``."""
    n = len(q)
    below = [frozenset(v for v in range(n) if v != u and q.leq[v, u]) for u in range(n)]
    out: list[Linearization] = []
    prefix: list[int] = []
    placed: set[int] = set()

    def extend():
        if len(prefix) == n:
            if len(out) >= cap:
                raise CapExceeded(f"more than {cap} linear extensions")
            out.append(Linearization(q, tuple(prefix)))
            return
        for u in range(n):
            if u not in placed and below[u] <= placed:
                prefix.append(u)
                placed.add(u)
                extend()
                placed.remove(u)
                prefix.pop()

    extend()
    return out


def count_linearizations_brute_force(q: QuotientPoset) -> int:
    """Reference count by filtering all permutations (only for tiny posets)."""
    n = len(q)
    count = 0
    for perm in itertools.permutations(range(n)):
        rank = {u: i for i, u in enumerate(perm)}
        if all(rank[u] <= rank[v] for u in range(n) for v in range(n) if q.leq[u, v]):
            count += 1
    return count


# divisibility examples ----------------------------------------------


def divisibility(n: int) -> Preorder:
    if n < 1:
        raise PreconditionViolated("n must be at least 1")
    carrier = tuple(range(1, n + 1))
    leq = np.array([[b % a == 0 for b in carrier] for a in carrier], dtype=bool)
    return Preorder(carrier, leq)


def q_length(a: int) -> int:
    """Number of prime factors of ``a`` counted with multiplicity."""
    if a < 1:
        raise PreconditionViolated("q_length needs a >= 1")
    count, d = 0, 2
    while d * d <= a:
        while a % d == 0:
            a //= d
            count += 1
        d += 1
    return count + (1 if a > 1 else 0)


def _q_lex_key(level_orders: dict[int, Sequence[int]] | None):
    level_orders = level_orders or {}
    positions = {q: {a: i for i, a in enumerate(order)} for q, order in level_orders.items()}

    def key(a: int):
        q = q_length(a)
        pos = positions.get(q)
        if pos is None:
            return (q, 0, a)
        if a not in pos:
            raise PreconditionViolated(f"level order for q={q} does not list {a}")
        return (q, pos[a], a)

    return key


def _check_extends_divisibility(order: Sequence[int]):
    rank = {a: i for i, a in enumerate(order)}
    for a in order:
        for b in order:
            if a != b and b % a == 0 and rank[a] > rank[b]:
                raise AssertionError(f"{a} divides {b} but is placed after it")


def q_lex_linearization(n: int, level_orders: dict[int, Sequence[int]] | None = None) -> Linearization:
    """Order ``{1..n}`` by prime length, then by a chosen order inside each level.

    ``level_orders`` maps a prime length to the sequence of numbers with that
    length in the desired order; unlisted levels use numeric order.
    """
    q = quotient(divisibility(n))
    key = _q_lex_key(level_orders)
    labels = sorted(range(1, n + 1), key=key)
    _check_extends_divisibility(labels)
    lin = Linearization(q, tuple(q.class_of(a) for a in labels))
    assert lin.extends()
    return lin


@dataclass(frozen=True)
class InverterData:
    d: int
    n_prime: int
    m_prime: int
    image: dict[int, int]


def inverter_map(n: int, m: int, bound: int) -> InverterData:
    d = math.gcd(n, m)
    n_prime, m_prime = n // d, m // d
    image = {a: (n_prime * a if a % m_prime == 0 else a) for a in range(1, bound + 1)}
    return InverterData(d, n_prime, m_prime, image)


def inverter_linearization(n: int, m: int, bound: int,
                           level_orders: dict[int, Sequence[int]] | None = None
                           ) -> tuple[Linearization, InverterData]:
    """Linearize divisibility on ``{1..bound}`` so that ``n`` precedes ``m``.

    Requires ``n`` and ``m`` incomparable under divisibility and
    ``q(m) < q(n)``, i.e. the ordinary prime-length order would put ``m``
    first.  Each ``a`` is compared through ``a -> n'a`` when ``m' | a`` (with
    ``n' = n/gcd``, ``m' = m/gcd``), using the prime-length order on images.
    """
    if not (1 <= n <= bound and 1 <= m <= bound):
        raise PreconditionViolated("n and m must lie in {1..bound}")
    if m % n == 0 or n % m == 0:
        raise PreconditionViolated(f"{n} and {m} are comparable under divisibility")
    if not q_length(m) < q_length(n):
        raise PreconditionViolated("needs q(m) < q(n)")
    data = inverter_map(n, m, bound)
    if len(set(data.image.values())) != bound:
        raise AssertionError("re-indexing map is not injective")
    key = _q_lex_key(level_orders)
    labels = sorted(range(1, bound + 1), key=lambda a: key(data.image[a]))
    _check_extends_divisibility(labels)
    q = quotient(divisibility(bound))
    lin = Linearization(q, tuple(q.class_of(a) for a in labels))
    if not lin.precedes(n, m):
        raise AssertionError(f"{n} does not precede {m}")
    return lin, data
