"""Bi-weighted graph complexes (normal, quasi and pseudo flavors).

A bi-weight ``(w_out, w_in)`` on a vertex stands for that many outgoing and
incoming hairs.  Weights carry no orientation sign; automorphisms only have
to respect them.  Slices are truncated at total weight ``W``: splitting
preserves total weight and attaching a univalent vertex strictly increases
it, so graphs above the ceiling span a subcomplex and the truncation is a
quotient complex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .families import attach_in, attach_out, split_vertex
from .graph import (
    DirectedMultigraph,
    GraphError,
    Parity,
    canonical_form,
    has_duplicate_edges,
    is_oriented,
    orientation_sign,
    slice_degree,
)
from .lincomb import LinearCombination
from .linalg import ClosureError, SparseMatrix, assemble
from .shapes import directed_graphs

Weight = tuple[int, int]


class Flavor(str, enum.Enum):
    NORMAL = "normal"
    QUASI = "quasi"
    PSEUDO = "pseudo"


def valid_weight(flavor: Flavor, w: Weight, out_val: int, in_val: int) -> bool:
    wo, wi = w
    if wo < 0 or wi < 0 or wo + wi + out_val + in_val < 3:
        return False
    if flavor is Flavor.PSEUDO:
        return True
    if wo + out_val < 1:
        return False
    return flavor is Flavor.QUASI or wi + in_val >= 1


def min_weight(flavor: Flavor, out_val: int, in_val: int) -> int:
    need = max(0, 3 - out_val - in_val)
    if flavor is Flavor.PSEUDO:
        return need
    lo = max(0, 1 - out_val)
    if flavor is Flavor.NORMAL:
        lo += max(0, 1 - in_val)
    return max(need, lo)


def valid_weights(flavor: Flavor, out_val: int, in_val: int, budget: int) -> list[Weight]:
    """All valid bi-weights of total at most ``budget``, sorted."""
    return [
        (wo, t - wo)
        for t in range(budget + 1)
        for wo in range(t + 1)
        if valid_weight(flavor, (wo, t - wo), out_val, in_val)
    ]


class Variant(str, enum.Enum):
    FULL = "full"
    B0 = "b0"
    LOOP_GE1 = "loop_ge1"
    PLUS = "plus"
    ORIENTED = "oriented"
    ORIENTED_PLUS = "oriented_plus"
    POSITIVE = "positive"
    ORIENTED_POSITIVE = "oriented_positive"

    @property
    def oriented(self) -> bool:
        return self in (Variant.ORIENTED, Variant.ORIENTED_PLUS, Variant.ORIENTED_POSITIVE)


@dataclass(frozen=True)
class WeightedFamilyId:
    flavor: Flavor
    variant: Variant = Variant.FULL

    def __post_init__(self):
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.flavor is Flavor.PSEUDO and self.variant in (Variant.PLUS, Variant.ORIENTED_PLUS):
            raise ValueError("the pseudo flavor has no plus variant")

    @property
    def name(self) -> str:
        return f"{self.flavor.value}:{self.variant.value}"

    @classmethod
    def parse(cls, text: str) -> "WeightedFamilyId":
        flavor, _, variant = text.partition(":")
        return cls(Flavor(flavor), Variant(variant or "full"))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class BiWeightedGenerator:
    graph: DirectedMultigraph
    weights: tuple[Weight, ...]
    mode: Parity

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    def sort_key(self):
        return (self.graph.vertex_count, self.graph.edges, self.weights)

    def __lt__(self, other: "BiWeightedGenerator") -> bool:
        return self.sort_key() < other.sort_key()

    def encode(self) -> str:
        return self.graph.encode() + ";w=" + "".join(f"({o},{i})" for o, i in self.weights)

    def __str__(self) -> str:
        return self.encode()


def total_weight(bg: BiWeightedGenerator) -> int:
    return sum(o + i for o, i in bg.weights)


def vertex(i: int, j: int, k: int = 2) -> BiWeightedGenerator:
    """The single-vertex graph with bi-weight ``(i, j)``."""
    return BiWeightedGenerator(DirectedMultigraph(1, ()), ((i, j),), Parity.of(k))


# -- canonical forms -------------------------------------------------------


def _perm_signs(n: int, edges, mode: Parity):
    """Coset of canonical relabelings of a labeled graph, each with its sign."""
    if mode is Parity.EDGE and has_duplicate_edges(edges):
        return None, ()
    cf = canonical_form(DirectedMultigraph(n, edges))
    return cf.graph, tuple((p, orientation_sign(edges, p, mode)) for p in cf.perms)


def _pick(perm_signs, weights) -> tuple[tuple[Weight, ...], int] | None:
    best = None
    sign = 0
    for p, s in perm_signs:
        nw = [None] * len(weights)
        for u, w in enumerate(weights):
            nw[p[u]] = w
        nw = tuple(nw)
        if best is None or nw < best:
            best, sign = nw, s
        elif nw == best and s != sign:
            sign = 0
    if best is None or sign == 0:
        return None
    return best, sign


def canonicalize_weighted(
    g: DirectedMultigraph, weights, mode: Parity
) -> tuple[BiWeightedGenerator, int] | None:
    """Canonical bi-weighted generator of ``(g, weights)`` and the relating sign.

    The underlying graph is put in canonical form first; among the relabelings
    realizing it, the one giving the smallest weight vector is used.
    """
    if not g.is_connected():
        raise GraphError("canonicalize expects a connected graph")
    if len(weights) != g.vertex_count:
        raise GraphError("one bi-weight per vertex is required")
    canon, ps = _perm_signs(g.vertex_count, g.edges, mode)
    if canon is None:
        return None
    picked = _pick(ps, tuple(tuple(w) for w in weights))
    if picked is None:
        return None
    return BiWeightedGenerator(canon, picked[0], mode), picked[1]


# -- membership and bases --------------------------------------------------


def variant_ok(fam: WeightedFamilyId, g: DirectedMultigraph, weights) -> bool:
    var = fam.variant
    b = g.edge_count - g.vertex_count + 1
    if var is Variant.B0 and b != 0:
        return False
    if var is Variant.LOOP_GE1 and b < 1:
        return False
    if var.oriented and not is_oriented(g):
        return False
    if var in (Variant.PLUS, Variant.ORIENTED_PLUS):
        has_out = any(o > 0 for o, _ in weights)
        if fam.flavor is Flavor.NORMAL:
            return has_out and any(i > 0 for _, i in weights)
        return has_out
    if var in (Variant.POSITIVE, Variant.ORIENTED_POSITIVE):
        return any(o + i > 0 for o, i in weights)
    return True


def is_valid(flavor: Flavor, g: DirectedMultigraph, weights) -> bool:
    return all(
        valid_weight(flavor, w, o, i) for w, o, i in zip(weights, g.out_valences(), g.in_valences())
    )


def member_w(fam: WeightedFamilyId, bg: BiWeightedGenerator) -> bool:
    return is_valid(fam.flavor, bg.graph, bg.weights) and variant_ok(fam, bg.graph, bg.weights)


def _decorations(flavor: Flavor, g: DirectedMultigraph, W: int, allow_zero: bool = True):
    """All labeled valid decorations of ``g`` with total weight <= W."""
    outs, ins = g.out_valences(), g.in_valences()
    n = g.vertex_count
    floor = [min_weight(flavor, outs[u], ins[u]) for u in range(n)]
    suffix = [0] * (n + 1)
    for u in range(n - 1, -1, -1):
        suffix[u] = suffix[u + 1] + floor[u]
    choices = [valid_weights(flavor, outs[u], ins[u], W - (suffix[0] - floor[u])) for u in range(n)]
    cur: list[Weight] = []

    def rec(u: int, budget: int):
        if u == n:
            if allow_zero or any(o + i for o, i in cur):
                yield tuple(cur)
            return
        for w in choices[u]:
            used = w[0] + w[1]
            if used + suffix[u + 1] > budget:
                continue
            cur.append(w)
            yield from rec(u + 1, budget - used)
            cur.pop()

    if suffix[0] <= W:
        yield from rec(0, W)


def _cheap_filter(fam: WeightedFamilyId, W: int):
    def ok(g: DirectedMultigraph) -> bool:
        if fam.variant.oriented and not is_oriented(g):
            return False
        outs, ins = g.out_valences(), g.in_valences()
        return sum(min_weight(fam.flavor, o, i) for o, i in zip(outs, ins)) <= W

    return ok


@lru_cache(maxsize=None)
def _basis_w(fam: WeightedFamilyId, parity: Parity, b: int, v: int, W: int) -> tuple[BiWeightedGenerator, ...]:
    e = v - 1 + b
    if v < 1 or e < 0:
        return ()
    if fam.variant is Variant.B0 and b != 0:
        return ()
    if fam.variant is Variant.LOOP_GE1 and b < 1:
        return ()
    out = []
    for g in directed_graphs(v, e, 0, _cheap_filter(fam, W)):
        if parity is Parity.EDGE and has_duplicate_edges(g.edges):
            continue
        auts = canonical_form(g).perms  # g is canonical, so these are its automorphisms
        signed = [(a, orientation_sign(g.edges, a, parity)) for a in auts]
        for w in _decorations(fam.flavor, g, W):
            picked = _pick(signed, w)
            if picked is None or picked[0] != w:
                continue
            if variant_ok(fam, g, w):
                out.append(BiWeightedGenerator(g, w, parity))
    out.sort()
    return tuple(out)


def basis_w(fam: WeightedFamilyId | str, k: int, b: int, v: int, W: int) -> list[BiWeightedGenerator]:
    if isinstance(fam, str):
        fam = WeightedFamilyId.parse(fam)
    if W < 0:
        raise ValueError("truncation must be non-negative")
    return list(_basis_w(fam, Parity.of(k), b, v, W))


def max_vertices(b: int, W: int) -> int:
    """No valid bi-weighted graph of loop order ``b`` and weight <= W has more vertices."""
    # sum over vertices of (valence + weight) >= 3v, and the valences sum to 2e
    return max(0, 2 * b - 2 + W)


# -- differential ----------------------------------------------------------


def _valence_at(edges, u: int) -> tuple[int, int]:
    o = i = 0
    for t, h in edges:
        if t == u:
            o += 1
        if h == u:
            i += 1
    return o, i


def _add_term(out: LinearCombination, ps, canon, weights, mode: Parity, coeff: int) -> None:
    picked = _pick(ps, weights)
    if picked is not None:
        out.add(BiWeightedGenerator(canon, picked[0], mode), coeff * picked[1])


def differential_full_w(bg: BiWeightedGenerator, flavor: Flavor, W: int) -> LinearCombination:
    """Weighted differential with every term above total weight ``W`` dropped."""
    flavor = Flavor(flavor)
    mode = bg.mode
    n = bg.vertex_count
    edges = bg.graph.edges
    weights = list(bg.weights)
    total = sum(o + i for o, i in weights)
    out = LinearCombination()
    for x in range(n):
        wo, wi = weights[x]
        # splitting x (source of the new edge) and n, redistributing its weight
        for _, _, new in split_vertex(n, edges, x):
            canon, ps = _perm_signs(n + 1, new, mode)
            if canon is None:
                continue
            vx, vn = _valence_at(new, x), _valence_at(new, n)
            for m1 in range(wo + 1):
                for n1 in range(wi + 1):
                    a, c = (m1, n1), (wo - m1, wi - n1)
                    if valid_weight(flavor, a, *vx) and valid_weight(flavor, c, *vn):
                        w = weights.copy()
                        w[x] = a
                        w.append(c)
                        _add_term(out, ps, canon, tuple(w), mode, 1)
        budget = W - total + 1
        # an out-hair of x becomes an edge to a new univalent vertex
        if wo >= 1:
            new = attach_out(n, edges, x)
            canon, ps = _perm_signs(n + 1, new, mode)
            if canon is not None:
                for leaf in valid_weights(flavor, 0, 1, budget):
                    w = weights.copy()
                    w[x] = (wo - 1, wi)
                    w.append(leaf)
                    if is_valid_at(flavor, new, w, x):
                        _add_term(out, ps, canon, tuple(w), mode, -1)
        # an in-hair of x becomes an edge from a new univalent vertex;
        # the new source is labeled x and the old vertex becomes n
        if wi >= 1:
            new = attach_in(n, edges, x)
            canon, ps = _perm_signs(n + 1, new, mode)
            if canon is not None:
                for leaf in valid_weights(flavor, 1, 0, budget):
                    w = weights.copy()
                    w[x] = leaf
                    w.append((wo, wi - 1))
                    if is_valid_at(flavor, new, w, n):
                        _add_term(out, ps, canon, tuple(w), mode, -1)
    return out


def is_valid_at(flavor: Flavor, edges, weights, u: int) -> bool:
    return valid_weight(flavor, weights[u], *_valence_at(edges, u))


def differential_w(fam: WeightedFamilyId | str, k: int, W: int, bg: BiWeightedGenerator) -> LinearCombination:
    if isinstance(fam, str):
        fam = WeightedFamilyId.parse(fam)
    if bg.mode is not Parity.of(k):
        raise ValueError("generator parity does not match k")
    full = differential_full_w(bg, fam.flavor, W)
    bad = [h for h in full if not variant_ok(fam, h.graph, h.weights)]
    if bad:
        raise ClosureError(
            f"{fam.name} is not closed under d at {bg.encode()}",
            [bg.encode()] + [h.encode() for h in bad],
        )
    return full


@lru_cache(maxsize=None)
def _matrix_w(fam: WeightedFamilyId, k: int, b: int, v: int, W: int) -> SparseMatrix:
    src = basis_w(fam, k, b, v, W)
    dst = basis_w(fam, k, b, v + 1, W)
    return assemble(src, dst, lambda g: differential_w(fam, k, W, g))


def slice_matrix_w(fam: WeightedFamilyId | str, k: int, b: int, v: int, W: int) -> SparseMatrix:
    if isinstance(fam, str):
        fam = WeightedFamilyId.parse(fam)
    return _matrix_w(fam, k, b, v, W)


def weighted_degree(k: int, b: int, v: int) -> int:
    return slice_degree(k, b, v)


def rescaling_class(flavor: Flavor | str, W: int, k: int = 2) -> LinearCombination:
    """Sum of (i+j-2) * vertex(i, j) over valid single-vertex weights with 3 <= i+j <= W."""
    flavor = Flavor(flavor)
    out = LinearCombination()
    for i, j in valid_weights(flavor, 0, 0, W):
        if i + j >= 3:
            out.add(vertex(i, j, k), i + j - 2)
    return out


def apply_w(fam: WeightedFamilyId, k: int, W: int, combo: LinearCombination) -> LinearCombination:
    out = LinearCombination()
    for g, c in combo.items():
        out.add_all(differential_w(fam, k, W, g).items(), c)
    return out


def zero_weight_part(fam: WeightedFamilyId, k: int, b: int, v: int, W: int) -> list[BiWeightedGenerator]:
    return [g for g in basis_w(fam, k, b, v, W) if total_weight(g) == 0]


def closure_report_w(fam: WeightedFamilyId | str, k: int, b: int, v_range, W: int):
    """Variant closure and d^2 = 0 on every weighted slice in ``v_range``."""
    from .families import ClosureReport, SliceCheck

    if isinstance(fam, str):
        fam = WeightedFamilyId.parse(fam)
    checks = []
    for v in v_range:
        src = basis_w(fam, k, b, v, W)
        try:
            m1 = slice_matrix_w(fam, k, b, v, W)
            m2 = slice_matrix_w(fam, k, b, v + 1, W)
        except ClosureError as exc:
            checks.append(SliceCheck(v, len(src), False, False, exc.offenders))
            continue
        prod = m2 @ m1
        offenders = sorted({src[c].encode() for (_, c) in prod.entries})
        checks.append(SliceCheck(v, len(src), True, prod.is_zero(), offenders))
    return ClosureReport(fam, k, b, checks, truncation=W)
