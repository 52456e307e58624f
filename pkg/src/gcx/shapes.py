"""Generation of underlying undirected shapes and their orientations.

Connected multigraphs (loops and parallel edges allowed) are produced up to
isomorphism by edge/pendant augmentation with canonical deduplication.  When
every vertex must have valence at least two, graphs are instead built from
their cores (all valences >= 3) by subdividing edges, which avoids ever
listing the much larger set of graphs with leaves.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .graph import DirectedMultigraph, _canonical_search

UEdge = tuple[int, int]


def _ucanon(n: int, edges) -> tuple[UEdge, ...]:
    directed = []
    for a, b in edges:
        directed.append((a, b))
        if a != b:
            directed.append((b, a))
    _, perms = _canonical_search(n, tuple(sorted(directed)))
    p = perms[0]
    return tuple(sorted((min(p[a], p[b]), max(p[a], p[b])) for a, b in edges))


def _degrees(n: int, edges) -> list[int]:
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return deg


@lru_cache(maxsize=None)
def connected_multigraphs(v: int, e: int) -> tuple[tuple[UEdge, ...], ...]:
    """All connected undirected multigraphs with loops, up to isomorphism."""
    if v < 1 or e < v - 1:
        return ()
    if v == 1 and e == 0:
        return ((),)
    found: set[tuple[UEdge, ...]] = set()
    # remove a non-bridge edge -> connected (v, e-1); otherwise a leaf -> (v-1, e-1)
    for g in connected_multigraphs(v, e - 1):
        for a in range(v):
            for b in range(a, v):
                found.add(_ucanon(v, g + ((a, b),)))
    for g in connected_multigraphs(v - 1, e - 1):
        for a in range(v - 1):
            found.add(_ucanon(v, g + ((a, v - 1),)))
    return tuple(sorted(found))


def _subdivide(n: int, edges, counts) -> tuple[int, tuple[UEdge, ...]]:
    out = []
    nxt = n
    for (a, b), s in zip(edges, counts):
        prev = a
        for _ in range(s):
            out.append((prev, nxt))
            prev = nxt
            nxt += 1
        out.append((prev, b))
    return nxt, tuple(out)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for c in cut:
            comp.append(c - prev - 1)
            prev = c
        comp.append(total + parts - 2 - prev)
        yield tuple(comp)


@lru_cache(maxsize=None)
def min_degree_three_multigraphs(v: int, e: int) -> tuple[tuple[UEdge, ...], ...]:
    if 2 * e < 3 * v:
        return ()
    return tuple(g for g in connected_multigraphs(v, e) if min(_degrees(v, g)) >= 3)


@lru_cache(maxsize=None)
def min_degree_two_multigraphs(v: int, e: int) -> tuple[tuple[UEdge, ...], ...]:
    """Connected multigraphs with every valence >= 2, via core subdivision."""
    b = e - v + 1
    if v < 1 or b < 1:
        return ()
    if b == 1:
        if v == 1:
            return (((0, 0),),)
        return (_ucanon(v, tuple((i, (i + 1) % v) for i in range(v))),)
    found: set[tuple[UEdge, ...]] = set()
    for vc in range(1, min(v, 2 * b - 2) + 1):
        ec = vc - 1 + b
        for core in min_degree_three_multigraphs(vc, ec):
            for counts in _compositions(v - vc, ec):
                n, edges = _subdivide(vc, core, counts)
                found.add(_ucanon(n, edges))
    return tuple(sorted(found))


def undirected_shapes(v: int, e: int, min_degree: int = 0) -> tuple[tuple[UEdge, ...], ...]:
    if min_degree >= 3:
        return min_degree_three_multigraphs(v, e)
    if min_degree == 2:
        return min_degree_two_multigraphs(v, e)
    shapes = connected_multigraphs(v, e)
    if min_degree <= 0:
        return shapes
    return tuple(g for g in shapes if v == 1 or min(_degrees(v, g)) >= min_degree)


def iter_orientations(shape):
    loops = [ed for ed in shape if ed[0] == ed[1]]
    plain = [ed for ed in shape if ed[0] != ed[1]]
    for flips in itertools.product((False, True), repeat=len(plain)):
        yield loops + [(b, a) if f else (a, b) for (a, b), f in zip(plain, flips)]


def directed_graphs(v: int, e: int, min_degree: int = 0, predicate=None) -> tuple[DirectedMultigraph, ...]:
    """Canonical connected directed multigraphs, deduplicated, in sorted order.

    ``predicate`` (isomorphism invariant) is applied to each labeled
    orientation before it is canonicalized.
    """
    if predicate is None:
        return _all_directed_graphs(v, e, min_degree)
    found: set[tuple] = set()
    for shape in undirected_shapes(v, e, min_degree):
        for edges in iter_orientations(shape):
            if predicate(DirectedMultigraph(v, edges)):
                found.add(_canonical_search(v, tuple(sorted(edges)))[0])
    return tuple(DirectedMultigraph(v, edges) for edges in sorted(found))


@lru_cache(maxsize=None)
def _all_directed_graphs(v: int, e: int, min_degree: int) -> tuple[DirectedMultigraph, ...]:
    found: set[tuple] = set()
    for shape in undirected_shapes(v, e, min_degree):
        for edges in iter_orientations(shape):
            found.add(_canonical_search(v, tuple(sorted(edges)))[0])
    return tuple(DirectedMultigraph(v, edges) for edges in sorted(found))
