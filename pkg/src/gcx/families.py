"""Unweighted directed graph complexes and their differentials.

Every family lives inside the full complex ``cfdgc``.  Subcomplex families
restrict the full differential (and insist that it closes up); quotient
families project it by dropping terms outside the family.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

from .graph import (
    DirectedMultigraph,
    Generator,
    Parity,
    canonicalize,
    enumerate_graphs,
    is_oriented,
    slice_degree,
)
from .lincomb import LinearCombination
from .linalg import ClosureError, SparseMatrix, assemble


class FamilyId(str, enum.Enum):
    CFDGC = "cfdgc"
    DGC = "dgc"
    OGC = "ogc"
    DGC_S = "dgc_s"
    DGC_T = "dgc_t"
    DGC_ST = "dgc_st"
    DGC_S_PLUS_T = "dgc_s_plus_t"
    DGC_NO_ST = "dgc_no_st"
    DGC_GE3 = "dgc_ge3"
    DGC_GE3_NO_T = "dgc_ge3_no_t"

    @property
    def is_quotient(self) -> bool:
        return self in (FamilyId.DGC_NO_ST, FamilyId.DGC_GE3, FamilyId.DGC_GE3_NO_T)

    @property
    def min_degree(self) -> int:
        if self is FamilyId.CFDGC:
            return 0
        if self in (FamilyId.DGC_GE3, FamilyId.DGC_GE3_NO_T):
            return 3
        return 2


def spec_label(spec) -> str:
    return spec.value if isinstance(spec, enum.Enum) else str(spec)


def family(name: str | FamilyId) -> FamilyId:
    try:
        return FamilyId(name)
    except ValueError:
        raise ValueError(f"unknown family {name!r}; choose from {[f.value for f in FamilyId]}") from None


# -- membership ------------------------------------------------------------


def _valences(g: DirectedMultigraph) -> list[tuple[int, int]]:
    return list(zip(g.out_valences(), g.in_valences()))


def _in_dgc(vals) -> bool:
    for o, i in vals:
        if o + i <= 1 or (o == 1 and i == 1):
            return False
    return True


def member(fam: FamilyId, g: DirectedMultigraph) -> bool:
    if not g.is_connected():
        return False
    if fam is FamilyId.CFDGC:
        return g.edge_count >= 1
    vals = _valences(g)
    if not _in_dgc(vals):
        return False
    has_s = any(i == 0 for _, i in vals)
    has_t = any(o == 0 for o, _ in vals)
    if fam is FamilyId.DGC:
        return True
    if fam is FamilyId.OGC:
        return is_oriented(g)
    if fam is FamilyId.DGC_S:
        return has_s
    if fam is FamilyId.DGC_T:
        return has_t
    if fam is FamilyId.DGC_ST:
        return has_s and has_t
    if fam is FamilyId.DGC_S_PLUS_T:
        return has_s or has_t
    if fam is FamilyId.DGC_NO_ST:
        return not has_s and not has_t
    if fam is FamilyId.DGC_GE3:
        return all(o + i >= 3 for o, i in vals)
    if fam is FamilyId.DGC_GE3_NO_T:
        return all(o + i >= 3 for o, i in vals) and not has_t
    raise AssertionError(fam)


def membership(fam: FamilyId | str, g: Generator | DirectedMultigraph) -> bool:
    graph = g.graph if isinstance(g, Generator) else g
    return member(family(fam), graph)


# -- bases -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _basis(fam: FamilyId, parity: Parity, b: int, v: int) -> tuple[Generator, ...]:
    e = v - 1 + b
    if v < 1 or e < 0 or (v == 1 and e == 0):
        return ()
    return tuple(enumerate_graphs(v, e, lambda g: member(fam, g), parity, fam.min_degree))


def basis(fam: FamilyId | str, k: int, b: int, v: int) -> list[Generator]:
    return list(_basis(family(fam), Parity.of(k), b, v))


# -- differential ----------------------------------------------------------


def split_vertex(n: int, edges, x: int):
    """All reattachments of the edge-ends at ``x`` between ``x`` and a new vertex ``n``.

    Yields ``(mask, end_count, new_edges)``; ``x`` is the source of the new edge, which
    is appended with index ``len(edges)``.  Bit ``j`` of ``mask`` set means
    the ``j``-th end at ``x`` moves to the new vertex.
    """
    ends = []
    for i, (t, h) in enumerate(edges):
        if t == x:
            ends.append((i, 0))
        if h == x:
            ends.append((i, 1))
    for mask in range(1 << len(ends)):
        new = [list(ed) for ed in edges]
        for j, (i, side) in enumerate(ends):
            if mask >> j & 1:
                new[i][side] = n
        new.append([x, n])
        yield mask, len(ends), tuple(map(tuple, new))


def attach_out(n: int, edges, x: int):
    """New univalent vertex ``n`` reached by a new edge ``x -> n``."""
    return tuple(edges) + ((x, n),)


def attach_in(n: int, edges, x: int):
    """New univalent vertex feeding ``x``.

    The source of the new edge carries the label ``x`` and its target the
    label ``n``, so the old vertex ``x`` is renamed ``n``.
    """
    ren = tuple((n if t == x else t, n if h == x else h) for t, h in edges)
    return ren + ((x, n),)


def _collect(out: LinearCombination, n: int, edges, mode: Parity, coeff: int) -> None:
    c = canonicalize(DirectedMultigraph(n, edges), mode)
    if c is not None:
        out.add(c[0], coeff * c[1])


def differential_full(g: Generator, k: int) -> LinearCombination:
    """d = delta - delta' - delta'' on the full complex."""
    mode = Parity.of(k)
    if g.mode is not mode:
        raise ValueError("generator parity does not match k")
    n = g.vertex_count
    edges = g.graph.edges
    out = LinearCombination()
    for x in range(n):
        for _, _, new in split_vertex(n, edges, x):
            _collect(out, n + 1, new, mode, 1)
        _collect(out, n + 1, attach_out(n, edges, x), mode, -1)
        _collect(out, n + 1, attach_in(n, edges, x), mode, -1)
    return out


def differential(fam: FamilyId | str, k: int, g: Generator) -> LinearCombination:
    fam = family(fam)
    full = differential_full(g, k)
    if fam.is_quotient:
        return LinearCombination({h: c for h, c in full.items() if member(fam, h.graph)})
    bad = [h for h in full if not member(fam, h.graph)]
    if bad:
        raise ClosureError(
            f"{fam.value} is not closed under d at {g.encode()}",
            [g.encode()] + [h.encode() for h in bad],
        )
    return full


# -- slices ----------------------------------------------------------------


@dataclass
class ComplexSlice:
    family: FamilyId
    k: int
    b: int
    v: int
    basis: list[Generator]
    target_basis: list[Generator]
    matrix: SparseMatrix

    @property
    def degree(self) -> int:
        return slice_degree(self.k, self.b, self.v)

    def export(self) -> dict:
        from fractions import Fraction

        return {
            "family": self.family.value,
            "k": self.k,
            "b": self.b,
            "v": self.v,
            "degree": self.degree,
            "basis": [g.encode() for g in self.basis],
            "matrix": {
                "rows": self.matrix.rows,
                "cols": self.matrix.cols,
                "entries": [
                    [r, c, str(Fraction(x).numerator), str(Fraction(x).denominator)]
                    for r, c, x in self.matrix.triplets()
                ],
            },
        }


@lru_cache(maxsize=None)
def _matrix(fam: FamilyId, k: int, b: int, v: int) -> SparseMatrix:
    src = basis(fam, k, b, v)
    dst = basis(fam, k, b, v + 1)
    return assemble(src, dst, lambda g: differential(fam, k, g))


def slice_matrix(fam: FamilyId | str, k: int, b: int, v: int) -> SparseMatrix:
    """Matrix of d from the (b, v) slice to the (b, v+1) slice."""
    return _matrix(family(fam), k, b, v)


def build_slice(fam: FamilyId | str, k: int, b: int, v: int) -> ComplexSlice:
    fam = family(fam)
    return ComplexSlice(fam, k, b, v, basis(fam, k, b, v), basis(fam, k, b, v + 1), slice_matrix(fam, k, b, v))


@dataclass
class SliceCheck:
    v: int
    basis_size: int
    closed: bool
    d_squared_zero: bool
    offenders: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.closed and self.d_squared_zero


@dataclass
class ClosureReport:
    family: FamilyId
    k: int
    b: int
    slices: list[SliceCheck]
    truncation: int | None = None

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.slices)

    def as_dict(self) -> dict:
        return {
            "family": spec_label(self.family),
            "k": self.k,
            "b": self.b,
            "W": self.truncation,
            "passed": self.passed,
            "slices": [
                {
                    "v": s.v,
                    "basis": s.basis_size,
                    "closed": s.closed,
                    "d2_zero": s.d_squared_zero,
                    "offenders": s.offenders,
                }
                for s in self.slices
            ],
        }


def closure_report(fam: FamilyId | str, k: int, b: int, v_range) -> ClosureReport:
    """Check subcomplex closure and d^2 = 0 for every v in ``v_range``."""
    fam = family(fam)
    checks = []
    for v in v_range:
        size = len(basis(fam, k, b, v))
        offenders: list[str] = []
        try:
            m1 = slice_matrix(fam, k, b, v)
            closed = True
        except ClosureError as exc:
            checks.append(SliceCheck(v, size, False, False, exc.offenders))
            continue
        if fam is FamilyId.CFDGC:
            # the ambient basis is not enumerated beyond v+1; compose directly
            zero = True
            for g in basis(fam, k, b, v):
                dd = LinearCombination()
                for h, c in differential_full(g, k).items():
                    dd.add_all(differential_full(h, k).items(), c)
                if dd:
                    zero = False
                    offenders.append(g.encode())
        else:
            try:
                m2 = slice_matrix(fam, k, b, v + 1)
            except ClosureError as exc:
                checks.append(SliceCheck(v, size, True, False, exc.offenders))
                continue
            prod = m2 @ m1
            zero = prod.is_zero()
            if not zero:
                src = basis(fam, k, b, v)
                offenders = sorted({src[c].encode() for (_, c) in prod.entries})
        checks.append(SliceCheck(v, size, closed, zero, offenders))
    return ClosureReport(fam, k, b, checks)
