"""Hypergraphs with two-spin edge activities, and labelled sub-structures.

A hypergraph has dense integer vertex ids 0..n-1 and an ordered list of
hyperedges; duplicate hyperedges are allowed and count with multiplicity
in the degree. Each edge carries either a single Ising interaction beta
(weight beta when the edge is cut, 1 when its vertices agree) or a full
table of complex weights indexed by the spin pattern on the edge.

An "insect" is a label set S together with every hyperedge meeting S;
vertices of those edges outside S form the boundary and are evaluated as
spin "-". Insects are the unit the coefficient dynamic program works on.

All types are immutable after construction and safe to share across
threads; the operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import SchemaError

MINUS_CHARS = "-−"  # accept ASCII hyphen-minus and U+2212 in spin keys


@dataclass(frozen=True)
class IsingActivity:
    """Ising interaction: weight 1 on a constant spin pattern, beta otherwise."""

    beta: float

    def value(self, plus_bits: int, size: int) -> complex:
        if plus_bits == 0 or plus_bits == (1 << size) - 1:
            return complex(1.0)
        return complex(self.beta)

    def is_symmetric(self, size: int) -> bool:
        # real table, invariant under a global spin flip
        return True

    def conjugate(self) -> "IsingActivity":
        return self

    def table(self, size: int) -> tuple[complex, ...]:
        """Expand to the explicit table over the 2^size spin patterns."""
        return tuple(self.value(b, size) for b in range(1 << size))

    def sort_key(self):
        return (0, (self.beta,))


@dataclass(frozen=True)
class TableActivity:
    """Explicit edge weights phi, one complex value per spin pattern.

    values[b] is the weight of the pattern whose "+" positions are the set
    bits of b, bit j referring to the j-th vertex of the edge in vertex-list
    order. values[0] (the all "-" pattern) must be exactly 1.
    """

    values: tuple[complex, ...]

    def __post_init__(self):
        size = len(self.values).bit_length() - 1
        if len(self.values) != 1 << size or size < 1:
            raise SchemaError("spin table must have 2^|e| entries")
        if self.values[0] != 1:
            raise SchemaError("spin table is not normalized: phi(-,...,-) != 1")

    def value(self, plus_bits: int, size: int) -> complex:
        return self.values[plus_bits]

    def is_symmetric(self, size: int) -> bool:
        full = (1 << size) - 1
        return all(
            self.values[b] == self.values[full ^ b].conjugate()
            for b in range(1 << size)
        )

    def conjugate(self) -> "TableActivity":
        return TableActivity(tuple(v.conjugate() for v in self.values))

    def table(self, size: int) -> tuple[complex, ...]:
        return self.values

    def sort_key(self):
        return (1, tuple((v.real, v.imag) for v in self.values))


EdgeActivity = Union[IsingActivity, TableActivity]


@dataclass(frozen=True)
class Hyperedge:
    """A hyperedge: sorted duplicate-free vertex tuple plus its activity."""

    vertices: tuple[int, ...]
    activity: EdgeActivity

    def __post_init__(self):
        v = self.vertices
        if len(v) < 2:
            raise SchemaError("hyperedge size must be >= 2")
        if any(v[i] >= v[i + 1] for i in range(len(v) - 1)):
            raise SchemaError("hyperedge vertices must be sorted and duplicate-free")
        if v[0] < 0:
            raise SchemaError("negative vertex id")
        if isinstance(self.activity, TableActivity) and len(
            self.activity.values
        ) != 1 << len(v):
            raise SchemaError("spin table size does not match edge size")

    @property
    def size(self) -> int:
        return len(self.vertices)

    def value_on(self, plus_set: frozenset[int]) -> complex:
        """Edge weight when exactly the vertices in plus_set carry spin +."""
        bits = 0
        for j, v in enumerate(self.vertices):
            if v in plus_set:
                bits |= 1 << j
        return self.activity.value(bits, len(self.vertices))

    def is_symmetric(self) -> bool:
        return self.activity.is_symmetric(len(self.vertices))

    def sort_key(self):
        return (self.vertices, self.activity.sort_key())


@dataclass(frozen=True)
class Hypergraph:
    """n vertices (ids 0..n-1) and an ordered list of hyperedges."""

    n: int
    edges: tuple[Hyperedge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise SchemaError("vertex count must be non-negative")
        for e in self.edges:
            if e.vertices[-1] >= self.n:
                raise SchemaError(
                    f"vertex id {e.vertices[-1]} out of range for n={self.n}"
                )

    @property
    def max_degree(self) -> int:
        """Max number of incident edges over vertices, counting multiplicity."""
        deg = [0] * self.n
        for e in self.edges:
            for v in e.vertices:
                deg[v] += 1
        return max(deg, default=0)

    @property
    def max_edge_size(self) -> int:
        return max((e.size for e in self.edges), default=0)

    def incident_index(self) -> list[list[int]]:
        """vertex -> indices into self.edges of the edges containing it."""
        idx: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e.vertices:
                idx[v].append(i)
        return idx

    def conjugate_activities(self) -> "Hypergraph":
        return Hypergraph(self.n, tuple(
            Hyperedge(e.vertices, e.activity.conjugate()) for e in self.edges
        ))

    def all_symmetric(self) -> bool:
        return all(e.is_symmetric() for e in self.edges)


@dataclass(frozen=True)
class Insect:
    """A label set plus every carried hyperedge, each meeting the label set.

    Canonical form: labels sorted, edges sorted by (vertex list, activity);
    two insects with the same canonical form compare equal. The boundary is
    every edge vertex outside the label set.
    """

    labels: tuple[int, ...]
    edges: tuple[Hyperedge, ...]
    boundary: frozenset[int] = field(init=False, compare=False, hash=False)

    def __post_init__(self):
        lset = set(self.labels)
        if len(lset) != len(self.labels) or tuple(sorted(self.labels)) != self.labels:
            raise SchemaError("insect labels must be sorted and duplicate-free")
        for e in self.edges:
            if lset.isdisjoint(e.vertices):
                raise SchemaError("insect edge does not meet the label set")
        keys = [e.sort_key() for e in self.edges]
        if keys != sorted(keys):
            raise SchemaError("insect edges not in canonical order")
        cover: set[int] = set()
        for e in self.edges:
            cover.update(e.vertices)
        object.__setattr__(self, "boundary", frozenset(cover - lset))

    @property
    def size(self) -> int:
        return len(self.labels)


def make_insect(labels: Iterable[int], edges: Iterable[Hyperedge]) -> Insect:
    """Build an insect in canonical form from unordered parts."""
    return Insect(
        tuple(sorted(set(labels))),
        tuple(sorted(edges, key=lambda e: e.sort_key())),
    )


def induced_insect(host: Union[Hypergraph, Insect], labels: Iterable[int]) -> Insect:
    """Sub-insect induced by a label set: keeps every host edge meeting it.

    Nesting holds: inducing on T after inducing on S >= T equals inducing
    on T directly.
    """
    lset = frozenset(labels)
    if isinstance(host, Hypergraph):
        if any(v < 0 or v >= host.n for v in lset):
            raise SchemaError("label id out of range for host hypergraph")
    else:
        if not lset.issubset(host.labels):
            raise SchemaError("labels not contained in host insect label set")
    kept = [e for e in host.edges if not lset.isdisjoint(e.vertices)]
    return make_insect(lset, kept)


def is_connected(ins: Insect) -> bool:
    """Whether the label set is connected through the edge traces e ∩ S."""
    if not ins.labels:
        raise SchemaError("connectivity undefined for an empty label set")
    if len(ins.labels) == 1:
        return True
    pos = {v: i for i, v in enumerate(ins.labels)}
    parent = list(range(len(ins.labels)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in ins.edges:
        trace = [pos[v] for v in e.vertices if v in pos]
        for a, b in zip(trace, trace[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    root = find(0)
    return all(find(i) == root for i in range(len(ins.labels)))


def compatible(h1: Insect, h2: Insect) -> Union[Insect, None]:
    """Union insect of a compatible pair, or None.

    The union (S1 ∪ S2, E1 ∪ E2) qualifies iff inducing it back on S1 and
    S2 returns h1 and h2; edge lists merge as multisets over edge content
    (per-content multiplicity is the max of the two sides, matching
    sub-multisets of a common host edge list).
    """
    from collections import Counter

    c1, c2 = Counter(h1.edges), Counter(h2.edges)
    merged: list[Hyperedge] = []
    for e in set(c1) | set(c2):
        merged.extend([e] * max(c1[e], c2[e]))
    union = make_insect(set(h1.labels) | set(h2.labels), merged)
    if induced_insect(union, h1.labels) != h1:
        return None
    if induced_insect(union, h2.labels) != h2:
        return None
    return union


def _parse_activity(obj: Mapping, size: int) -> EdgeActivity:
    if ("beta" in obj) == ("phi" in obj):
        raise SchemaError("edge must carry exactly one of 'beta' or 'phi'")
    if "beta" in obj:
        beta = obj["beta"]
        if isinstance(beta, bool) or not isinstance(beta, (int, float)):
            raise SchemaError("'beta' must be a real number")
        return IsingActivity(float(beta))
    phi = obj["phi"]
    if not isinstance(phi, Mapping) or len(phi) != 1 << size:
        raise SchemaError("'phi' must map all 2^|e| spin strings")
    values = [None] * (1 << size)
    for key, val in phi.items():
        if not isinstance(key, str) or len(key) != size:
            raise SchemaError(f"spin key {key!r} has wrong length")
        bits = 0
        for j, ch in enumerate(key):
            if ch == "+":
                bits |= 1 << j
            elif ch not in MINUS_CHARS:
                raise SchemaError(f"spin key {key!r} contains invalid character")
        if values[bits] is not None:
            raise SchemaError(f"duplicate spin key {key!r}")
        if (
            not isinstance(val, (list, tuple))
            or len(val) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in val)
        ):
            raise SchemaError("spin value must be a [re, im] pair")
        values[bits] = complex(float(val[0]), float(val[1]))
    return TableActivity(tuple(values))


def parse_hypergraph(doc) -> Hypergraph:
    """Build a canonical Hypergraph from a decoded JSON document.

    Schema: {"n": int, "edges": [{"v": [int,...], "beta": float}
                                 | {"v": [...], "phi": {"++-...": [re,im], ...}}]}
    Spin-table keys follow the order vertices are listed in "v"; if "v" is
    given out of order the table is re-indexed to the sorted vertex list.
    """
    if not isinstance(doc, Mapping):
        raise SchemaError("input document must be a JSON object")
    unknown = set(doc) - {"n", "edges"}
    if unknown:
        raise SchemaError(f"unknown top-level keys: {sorted(unknown)}")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise SchemaError("'n' must be a non-negative integer")
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, (list, tuple)):
        raise SchemaError("'edges' must be a list")
    edges = []
    for obj in raw_edges:
        if not isinstance(obj, Mapping):
            raise SchemaError("edge entry must be an object")
        v = obj.get("v")
        if not isinstance(v, (list, tuple)) or any(
            isinstance(x, bool) or not isinstance(x, int) for x in v
        ):
            raise SchemaError("'v' must be a list of integers")
        if len(set(v)) != len(v):
            raise SchemaError(f"duplicate vertex in edge {list(v)}")
        if len(v) < 2:
            raise SchemaError("edge size must be >= 2")
        if any(x < 0 or x >= n for x in v):
            raise SchemaError(f"vertex id out of range in edge {list(v)}")
        activity = _parse_activity(obj, len(v))
        order = sorted(range(len(v)), key=lambda j: v[j])
        if order != list(range(len(v))) and isinstance(activity, TableActivity):
            # re-index table bits from given order to sorted vertex order
            remapped = [None] * len(activity.values)
            for bits, val in enumerate(activity.values):
                nb = 0
                for jnew, jold in enumerate(order):
                    if bits >> jold & 1:
                        nb |= 1 << jnew
                remapped[nb] = val
            activity = TableActivity(tuple(remapped))
        edges.append(Hyperedge(tuple(sorted(v)), activity))
    return Hypergraph(n, tuple(edges))


def hypergraph_to_doc(g: Hypergraph) -> dict:
    """Inverse of parse_hypergraph (Ising betas stay shorthand)."""
    out = []
    for e in g.edges:
        if isinstance(e.activity, IsingActivity):
            out.append({"v": list(e.vertices), "beta": e.activity.beta})
        else:
            phi = {}
            for bits, val in enumerate(e.activity.values):
                key = "".join("+" if bits >> j & 1 else "-" for j in range(e.size))
                phi[key] = [val.real, val.imag]
            out.append({"v": list(e.vertices), "phi": phi})
    return {"n": g.n, "edges": out}


def disjoint_union(g1: Hypergraph, g2: Hypergraph) -> Hypergraph:
    """Place g2 after g1 on fresh vertex ids."""
    shifted = tuple(
        Hyperedge(tuple(v + g1.n for v in e.vertices), e.activity) for e in g2.edges
    )
    return Hypergraph(g1.n + g2.n, g1.edges + shifted)
