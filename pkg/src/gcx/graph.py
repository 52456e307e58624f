"""Directed multigraphs, orientation signs and canonical forms.

A graph is stored as a vertex count plus an ordered tuple of ``(tail, head)``
pairs.  Tadpoles (``tail == head``) and parallel edges are allowed.  The edge
order matters only for even ``k`` where the orientation is an ordering of the
edges; for odd ``k`` the orientation is an ordering of the vertices.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Edge = tuple[int, int]


class Parity(enum.Enum):
    EDGE = "edge"  # k even: sgn_e
    VERTEX = "vertex"  # k odd: sgn_v

    @classmethod
    def of(cls, k: int) -> "Parity":
        return cls.EDGE if k % 2 == 0 else cls.VERTEX


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class DirectedMultigraph:
    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = tuple((int(t), int(h)) for t, h in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count < 0:
            raise GraphError("negative vertex count")
        for t, h in edges:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise GraphError(f"edge ({t},{h}) out of range for {self.vertex_count} vertices")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def out_valences(self) -> list[int]:
        out = [0] * self.vertex_count
        for t, _ in self.edges:
            out[t] += 1
        return out

    def in_valences(self) -> list[int]:
        inn = [0] * self.vertex_count
        for _, h in self.edges:
            inn[h] += 1
        return inn

    def is_connected(self) -> bool:
        n = self.vertex_count
        if n == 0:
            return False
        adj: list[list[int]] = [[] for _ in range(n)]
        for t, h in self.edges:
            adj[t].append(h)
            adj[h].append(t)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def relabel(self, perm: Sequence[int]) -> "DirectedMultigraph":
        """Vertex ``u`` becomes ``perm[u]``; edge order is kept."""
        return DirectedMultigraph(self.vertex_count, tuple((perm[t], perm[h]) for t, h in self.edges))

    def reversed(self) -> "DirectedMultigraph":
        return DirectedMultigraph(self.vertex_count, tuple((h, t) for t, h in self.edges))

    def encode(self) -> str:
        return f"v={self.vertex_count};E=" + "".join(f"({t},{h})" for t, h in self.edges)

    def __str__(self) -> str:
        return self.encode()


_ENC = re.compile(r"^v=(\d+);E=((?:\(\d+,\d+\))*)(?:;w=((?:\(\d+,\d+\))*))?$")
_PAIR = re.compile(r"\((\d+),(\d+)\)")


def parse_encoding(text: str) -> tuple[DirectedMultigraph, tuple[tuple[int, int], ...] | None]:
    """Parse ``v=<n>;E=(t,h)...`` with an optional ``;w=(o,i)...`` suffix."""
    m = _ENC.match(text.strip())
    if not m:
        raise GraphError(f"bad graph encoding: {text!r}")
    n = int(m.group(1))
    edges = tuple((int(a), int(b)) for a, b in _PAIR.findall(m.group(2)))
    g = DirectedMultigraph(n, edges)
    if m.group(3) is None:
        return g, None
    weights = tuple((int(a), int(b)) for a, b in _PAIR.findall(m.group(3)))
    if len(weights) != n:
        raise GraphError("weight list length differs from vertex count")
    return g, weights


# -- elementary invariants -------------------------------------------------


def loop_number(g: DirectedMultigraph) -> int:
    if not g.is_connected():
        raise GraphError("loop number is only defined for connected graphs")
    return g.edge_count - g.vertex_count + 1


def degree(g: DirectedMultigraph, k: int) -> int:
    return (g.vertex_count - 1) * k + (1 - k) * g.edge_count


def slice_degree(k: int, b: int, v: int) -> int:
    return degree_from_counts(k, v, v - 1 + b)


def degree_from_counts(k: int, v: int, e: int) -> int:
    return (v - 1) * k + (1 - k) * e


class VertexKind(str, enum.Enum):
    UNIVALENT = "univalent"
    SOURCE = "source"
    TARGET = "target"
    PASSING = "passing"
    GENERIC = "generic"
    ISOLATED = "isolated"


def classify_vertex(g: DirectedMultigraph, x: int) -> tuple[VertexKind, int, int]:
    """Kind of vertex ``x`` together with ``(out_valence, in_valence)``.

    A tadpole contributes one to each valence.  An isolated vertex is only
    meaningful in the single-vertex weighted graphs and is reported as such.
    """
    if not 0 <= x < g.vertex_count:
        raise IndexError(f"vertex {x} out of range")
    out = sum(1 for t, _ in g.edges if t == x)
    inn = sum(1 for _, h in g.edges if h == x)
    return _kind(out, inn), out, inn


def _kind(out: int, inn: int) -> VertexKind:
    if out + inn == 0:
        return VertexKind.ISOLATED
    if out + inn == 1:
        return VertexKind.UNIVALENT
    if inn == 0:
        return VertexKind.SOURCE
    if out == 0:
        return VertexKind.TARGET
    if out == 1 and inn == 1:
        return VertexKind.PASSING
    return VertexKind.GENERIC


def vertex_kinds(g: DirectedMultigraph) -> list[VertexKind]:
    return [_kind(o, i) for o, i in zip(g.out_valences(), g.in_valences())]


def is_oriented(g: DirectedMultigraph) -> bool:
    """True iff ``g`` has no directed cycle (a tadpole is one)."""
    n = g.vertex_count
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for t, h in g.edges:
        if t == h:
            return False
        succ[t].append(h)
        indeg[h] += 1
    stack = [u for u in range(n) if indeg[u] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for w in succ[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == n


# -- canonical forms -------------------------------------------------------


def perm_parity(perm: Sequence[int]) -> int:
    """+1 for even permutations, -1 for odd ones."""
    n = len(perm)
    seen = [False] * n
    cycles = 0
    for i in range(n):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return -1 if (n - cycles) % 2 else 1


def _refine(n: int, colors: list[int], out_nb, in_nb) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = [
            (
                colors[u],
                tuple(sorted((colors[w], c) for w, c in out_nb[u])),
                tuple(sorted((colors[w], c) for w, c in in_nb[u])),
            )
            for u in range(n)
        ]
        uniq = sorted(set(sigs))
        if len(uniq) == ncolors:
            return colors
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        ncolors = len(uniq)


@lru_cache(maxsize=1 << 18)
def _canonical_search(n: int, edges: tuple[Edge, ...]) -> tuple[tuple[Edge, ...], tuple[tuple[int, ...], ...]]:
    """Canonical edge list of a multigraph given by a *sorted* edge tuple.

    Returns the canonical sorted edges and every relabeling ``perm`` (vertex
    ``u`` goes to ``perm[u]``) that produces them.  The candidates are the
    leaves of an individualization/refinement tree, so the set of returned
    relabelings is a coset of the automorphism group.
    """
    outc: list[dict[int, int]] = [dict() for _ in range(n)]
    inc: list[dict[int, int]] = [dict() for _ in range(n)]
    for t, h in edges:
        outc[t][h] = outc[t].get(h, 0) + 1
        inc[h][t] = inc[h].get(t, 0) + 1
    out_nb = [tuple(d.items()) for d in outc]
    in_nb = [tuple(d.items()) for d in inc]
    loops = [outc[u].get(u, 0) for u in range(n)]
    outdeg = [sum(d.values()) for d in outc]
    indeg = [sum(d.values()) for d in inc]
    # more outgoing edges first, so sources tend to get small labels
    init = [(-outdeg[u], -indeg[u], -loops[u]) for u in range(n)]
    order = sorted(set(init))
    rank = {s: i for i, s in enumerate(order)}
    colors = _refine(n, [rank[s] for s in init], out_nb, in_nb)

    best: list = [None, []]

    def visit(colors: list[int]) -> None:
        if len(set(colors)) == n:
            key = tuple(sorted((colors[t], colors[h]) for t, h in edges))
            if best[0] is None or key < best[0]:
                best[0] = key
                best[1] = [tuple(colors)]
            elif key == best[0]:
                best[1].append(tuple(colors))
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        for u in range(n):
            if colors[u] != target:
                continue
            keys = [(colors[w], 0 if w == u else 1) for w in range(n)]
            r = {s: i for i, s in enumerate(sorted(set(keys)))}
            visit(_refine(n, [r[s] for s in keys], out_nb, in_nb))

    visit(colors)
    return best[0], tuple(best[1])


def edge_sign(edges: Sequence[Edge], perm: Sequence[int]) -> int:
    """Sign of the edge permutation carrying ``edges`` relabeled by ``perm`` to sorted order."""
    relabeled = [(perm[t], perm[h]) for t, h in edges]
    order = sorted(range(len(relabeled)), key=relabeled.__getitem__)
    return perm_parity(order)


def has_duplicate_edges(edges: Sequence[Edge]) -> bool:
    return len(set(edges)) != len(edges)


def orientation_sign(edges: Sequence[Edge], perm: Sequence[int], mode: Parity) -> int:
    if mode is Parity.VERTEX:
        return perm_parity(perm)
    return edge_sign(edges, perm)


@dataclass(frozen=True)
class CanonicalForm:
    graph: DirectedMultigraph
    perms: tuple[tuple[int, ...], ...]


def canonical_form(g: DirectedMultigraph) -> CanonicalForm:
    canon, perms = _canonical_search(g.vertex_count, tuple(sorted(g.edges)))
    return CanonicalForm(DirectedMultigraph(g.vertex_count, canon), perms)


def automorphisms(g: DirectedMultigraph) -> list[tuple[int, ...]]:
    """All vertex automorphisms of ``g`` (as relabelings)."""
    cf = canonical_form(g)
    p0 = cf.perms[0]
    inv0 = [0] * len(p0)
    for u, pu in enumerate(p0):
        inv0[pu] = u
    # a = p0^{-1} o p  maps g to itself
    return sorted(tuple(inv0[p[u]] for u in range(len(p))) for p in cf.perms)


@dataclass(frozen=True)
class Generator:
    """Canonical representative of a nonzero graph class; its orientation is +1."""

    graph: DirectedMultigraph
    mode: Parity

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    def sort_key(self):
        return (self.graph.vertex_count, self.graph.edges)

    def encode(self) -> str:
        return self.graph.encode()

    def __lt__(self, other: "Generator") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return self.encode()


def canonicalize(g: DirectedMultigraph, mode: Parity) -> tuple[Generator, int] | None:
    """Canonical generator of ``g`` and the sign relating ``g`` to it.

    Returns ``None`` when the class vanishes in the coinvariants, i.e. some
    automorphism acts by an odd permutation on the oriented set.
    """
    if not g.is_connected():
        raise GraphError("canonicalize expects a connected graph")
    if mode is Parity.EDGE and has_duplicate_edges(g.edges):
        return None
    cf = canonical_form(g)
    signs = {orientation_sign(g.edges, p, mode) for p in cf.perms}
    if len(signs) != 1:
        return None
    return Generator(cf.graph, mode), signs.pop()


def is_canonical(g: DirectedMultigraph) -> bool:
    return canonical_form(g).graph.edges == g.edges


# -- enumeration -----------------------------------------------------------


def enumerate_graphs(
    v: int,
    e: int,
    predicate=None,
    mode: Parity = Parity.VERTEX,
    min_degree: int = 0,
) -> list[Generator]:
    """Connected directed multigraphs with ``v`` vertices and ``e`` edges up to isomorphism.

    ``predicate`` is evaluated on labeled graphs (it must be isomorphism
    invariant).  ``min_degree`` is an optional pruning hint on the undirected
    valence; it must be implied by ``predicate``.
    """
    from .shapes import directed_graphs

    out = []
    for g in directed_graphs(v, e, min_degree, predicate):
        c = canonicalize(g, mode)
        if c is not None:
            out.append(c[0])
    out.sort()
    return out


def graphs_from(encodings: Iterable[str], mode: Parity) -> list[Generator]:
    return [Generator(parse_encoding(s)[0], mode) for s in encodings]
