"""Exact sparse matrices, ranks over Q and F_p, and cohomology bookkeeping.

Ranks over Q use fraction-free elimination on integer rows (dense Bareiss
for small matrices); ranks over F_p use ordinary modular elimination.  Row
reduction keeps each reduced row in a dictionary keyed by its leading
column, so fill-in stays local to the rows that actually interact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

DEFAULT_PRIME = 1_073_741_789
DENSE_LIMIT = 64


class ClosureError(RuntimeError):
    """A differential produced a term outside the target basis."""

    def __init__(self, message: str, offenders: Sequence[str] = ()):
        super().__init__(message)
        self.offenders = list(offenders)


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], int | Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for (r, c), x in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
            if x == 0:
                del self.entries[(r, c)]

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def triplets(self) -> list[tuple[int, int, int | Fraction]]:
        """Entries sorted by (col, row)."""
        return [(r, c, x) for (r, c), x in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    def columns(self) -> list[dict[int, int | Fraction]]:
        cols: list[dict] = [dict() for _ in range(self.cols)]
        for (r, c), x in self.entries.items():
            cols[c][r] = x
        return cols

    def row_dicts(self) -> list[dict[int, int | Fraction]]:
        rows: list[dict] = [dict() for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            rows[r][c] = x
        return rows

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        left_rows = self.row_dicts()
        right_rows = other.row_dicts()
        out: dict[tuple[int, int], int | Fraction] = {}
        for i, row in enumerate(left_rows):
            acc: dict[int, int | Fraction] = {}
            for j, a in row.items():
                for c, b in right_rows[j].items():
                    acc[c] = acc.get(c, 0) + a * b
            for c, x in acc.items():
                if x:
                    out[(i, c)] = x
        return SparseMatrix(self.rows, other.cols, out)

    def to_dense(self) -> list[list[int | Fraction]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            dense[r][c] = x
        return dense

    # -- file format ------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"SMAT {self.rows} {self.cols} {self.nnz}"]
        for r, c, x in self.triplets():
            x = Fraction(x)
            lines.append(f"{r} {c} {x.numerator} {x.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "SMAT" or len(head) != 4:
            raise ValueError("not an SMAT matrix file")
        rows, cols, nnz = map(int, head[1:])
        if len(lines) - 1 != nnz:
            raise ValueError(f"expected {nnz} entries, found {len(lines) - 1}")
        entries = {}
        for ln in lines[1:]:
            r, c, num, den = map(int, ln.split())
            x = Fraction(num, den)
            entries[(r, c)] = x.numerator if x.denominator == 1 else x
        return cls(rows, cols, entries)


def assemble(
    domain: Sequence[Hashable],
    codomain: Sequence[Hashable],
    diff_fn: Callable[[Hashable], Mapping[Hashable, int | Fraction]],
) -> SparseMatrix:
    """Column ``j`` holds the coefficients of ``diff_fn(domain[j])``."""
    index = {g: i for i, g in enumerate(codomain)}
    entries: dict[tuple[int, int], int | Fraction] = {}
    for j, g in enumerate(domain):
        image = diff_fn(g)
        missing = [h for h in image if h not in index]
        if missing:
            raise ClosureError(
                f"image of {_enc(g)} leaves the codomain basis",
                [_enc(g)] + [_enc(h) for h in missing],
            )
        for h, c in image.items():
            if c:
                entries[(index[h], j)] = c
    return SparseMatrix(len(codomain), len(domain), entries)


def _enc(g) -> str:
    if isinstance(g, str):
        return g
    return g.encode() if hasattr(g, "encode") else str(g)


# -- rank ------------------------------------------------------------------


def _integer_rows(m: SparseMatrix) -> list[dict[int, int]]:
    """Rows of ``m`` scaled to primitive integer vectors (same row space)."""
    rows = []
    for row in m.row_dicts() if m.rows <= m.cols else m.columns():
        if not row:
            continue
        den = 1
        for x in row.values():
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        rows.append({c: int(x * den) for c, x in row.items()})
    return rows


def _bareiss_rank(rows: list[dict[int, int]], ncols: int) -> int:
    a = [[row.get(c, 0) for c in range(ncols)] for row in rows]
    n = len(a)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, n) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, n):
            f = a[i][col]
            ai, ar = a[i], a[rank]
            for c in range(col, ncols):
                ai[c] = (p * ai[c] - f * ar[c]) // prev
        prev = p
        rank += 1
        if rank == n:
            break
    return rank


def _sparse_rank_q(rows: list[dict[int, int]]) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in sorted(rows, key=len):
        row = dict(row)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                g = 0
                for x in row.values():
                    g = math.gcd(g, x)
                if g > 1:
                    row = {c: x // g for c, x in row.items()}
                pivots[lead] = row
                break
            a, p = row[lead], prow[lead]
            g = math.gcd(a, p)
            fa, fp = p // g, a // g
            new = {c: fa * x for c, x in row.items()}
            for c, x in prow.items():
                y = new.get(c, 0) - fp * x
                if y:
                    new[c] = y
                else:
                    new.pop(c, None)
            row = new
    return len(pivots)


def _sparse_rank_mod(rows: list[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in sorted(rows, key=len):
        row = {c: x % p for c, x in row.items() if x % p}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {c: x * inv % p for c, x in row.items()}
                break
            f = row[lead]
            for c, x in prow.items():
                y = (row.get(c, 0) - f * x) % p
                if y:
                    row[c] = y
                else:
                    row.pop(c, None)
    return len(pivots)


def rank(m: SparseMatrix, field: str | int = "q") -> int:
    """Exact rank of ``m`` over Q (``field="q"``) or over F_p (``field=p``)."""
    if not m.entries:
        return 0
    rows = _integer_rows(m)
    ncols = m.cols if m.rows <= m.cols else m.rows
    if field in ("q", "Q", 0, None):
        if len(rows) <= DENSE_LIMIT and ncols <= DENSE_LIMIT:
            return _bareiss_rank(rows, ncols)
        return _sparse_rank_q(rows)
    p = int(field)
    if any(isinstance(x, Fraction) and x.denominator % p == 0 for x in m.entries.values()):
        raise ValueError(f"prime {p} divides a denominator")
    return _sparse_rank_mod(rows, p)


def parse_field(text: str | int) -> str | int:
    if isinstance(text, int):
        return text
    t = text.strip().lower()
    if t == "q":
        return "q"
    if t.startswith("zp"):
        t = t[2:].lstrip(":=") or str(DEFAULT_PRIME)
    if t.startswith("p"):
        t = t[1:].lstrip(":=") or str(DEFAULT_PRIME)
    return int(t)


# -- cohomology ------------------------------------------------------------


@dataclass
class CohomologyCell:
    degree: int
    dim: int  # n_D
    rank_out: int | None  # rank of d_D
    rank_in: int | None  # rank of d_{D-1}
    complete: bool

    @property
    def cohomology(self) -> int | None:
        if self.rank_out is None or self.rank_in is None:
            return None
        return self.dim - self.rank_out - self.rank_in


@dataclass
class CohomologyTable:
    label: str
    k: int
    b: int
    cells: list[CohomologyCell]
    truncation: int | None = None
    field: str | int = "q"

    def by_degree(self) -> dict[int, CohomologyCell]:
        return {c.degree: c for c in self.cells}

    def h(self, degree: int) -> int | None:
        c = self.by_degree().get(degree)
        if c is None:
            return 0
        return c.cohomology if c.complete else None

    def complete_degrees(self) -> list[int]:
        return [c.degree for c in self.cells if c.complete]

    def euler_basis(self) -> int:
        return sum((-1) ** (c.degree % 2) * c.dim for c in self.cells)

    def euler_cohomology(self) -> int | None:
        if not all(c.complete for c in self.cells):
            return None
        return sum((-1) ** (c.degree % 2) * c.cohomology for c in self.cells)

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "k": self.k,
            "b": self.b,
            "W": self.truncation,
            "field": str(self.field),
            "cells": [
                {
                    "degree": c.degree,
                    "dim": c.dim,
                    "rank_out": c.rank_out,
                    "rank_in": c.rank_in,
                    "h": c.cohomology if c.complete else None,
                    "complete": c.complete,
                }
                for c in self.cells
            ],
        }


def cohomology_from_ranks(
    label: str,
    k: int,
    b: int,
    graded: Iterable[tuple[int, int, int | None, int | None, bool]],
    truncation: int | None = None,
    field: str | int = "q",
) -> CohomologyTable:
    """Build a table from ``(degree, dim, rank_out, rank_in, complete)`` rows."""
    cells = [CohomologyCell(d, n, ro, ri, ok) for d, n, ro, ri, ok in graded]
    for c in cells:
        if c.complete and c.cohomology < 0:
            raise ArithmeticError(f"negative cohomology in degree {c.degree}")
    return CohomologyTable(label, k, b, cells, truncation, field)


def euler(dims_by_degree: Mapping[int, int]) -> int:
    return sum((-1) ** (d % 2) * n for d, n in dims_by_degree.items())
