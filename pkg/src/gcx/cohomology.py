"""Cohomology tables and Euler characteristics for unweighted and weighted slices.

A slice is fixed by (family, k, b, v[, W]); its degree is determined by v, so
windows can be given in vertices or degrees.  Matrices are optionally read
from and written to a :class:`~gcx.cache.Cache`, and independent slices can
be built in a process pool.  The results never depend on either.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .cache import Cache, cache_key, canonical_params
from .families import FamilyId, basis, family, slice_matrix, spec_label
from .graph import slice_degree
from .linalg import CohomologyTable, SparseMatrix, cohomology_from_ranks, parse_field, rank
from .weighted import Variant, WeightedFamilyId, basis_w, max_vertices, slice_matrix_w

ComplexSpec = FamilyId | WeightedFamilyId


def resolve_spec(name: str | ComplexSpec) -> ComplexSpec:
    """``dgc`` style names are unweighted, ``flavor[:variant]`` names are weighted."""
    if isinstance(name, (FamilyId, WeightedFamilyId)):
        return name
    try:
        return family(name)
    except ValueError:
        pass
    try:
        return WeightedFamilyId.parse(name)
    except ValueError:
        raise ValueError(f"unknown complex {name!r}") from None


def is_weighted(spec: ComplexSpec) -> bool:
    return isinstance(spec, WeightedFamilyId)


def vertex_bound(spec: ComplexSpec, b: int, W: int | None = None) -> int | None:
    """Largest vertex count with a nonempty basis, or None if unbounded."""
    if is_weighted(spec):
        if W is None:
            raise ValueError("weighted complexes need a truncation W")
        if spec.variant is Variant.B0 and b != 0:
            return 0
        return max_vertices(b, W) if b > 0 else max(1, W - 2)
    if b < 1:
        return 0
    if spec in (FamilyId.DGC_GE3, FamilyId.DGC_GE3_NO_T, FamilyId.DGC_NO_ST):
        return max(1, 2 * b - 2)
    return None


def default_vertex_window(spec: ComplexSpec, b: int, W: int | None = None) -> range:
    """The full range when it is finite, otherwise vertex counts up to 2b.

    Trivalent cores have at most 2b-2 vertices, so 2b leaves room for a
    couple of bivalent vertices beyond the largest core.
    """
    bound = vertex_bound(spec, b, W)
    if bound is None:
        bound = 2 * b
    return range(1, bound + 1)


def vertices_for_degree(k: int, b: int, degree: int) -> int:
    return degree - (1 - k) * b + 1


def _params(spec: ComplexSpec, k: int, b: int, v: int, W: int | None) -> str:
    return canonical_params(kind="matrix", spec=spec_label(spec), k=k, b=b, v=v, W=W)


def compute_matrix(spec: ComplexSpec, k: int, b: int, v: int, W: int | None = None) -> SparseMatrix:
    """Matrix of d from vertex count v to v+1."""
    if is_weighted(spec):
        if W is None:
            raise ValueError("weighted complexes need a truncation W")
        return slice_matrix_w(spec, k, b, v, W)
    return slice_matrix(spec, k, b, v)


def _matrix_text(args) -> str:
    spec, k, b, v, W = args
    return compute_matrix(resolve_spec(spec), k, b, v, W).dumps()


def matrices(
    spec: ComplexSpec,
    k: int,
    b: int,
    vs,
    W: int | None = None,
    cache: Cache | None = None,
    jobs: int = 1,
) -> dict[int, SparseMatrix]:
    vs = list(vs)
    out: dict[int, SparseMatrix] = {}
    todo = []
    for v in vs:
        if v < 1:
            continue
        key = cache_key(_params(spec, k, b, v, W))
        hit = cache.get(key) if cache is not None else None
        if hit is not None:
            out[v] = SparseMatrix.loads(hit)
        else:
            todo.append((v, key))
    name = spec_label(spec)
    args = [(name, k, b, v, W) for v, _ in todo]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            texts = list(pool.map(_matrix_text, args))
    else:
        texts = [compute_matrix(spec, k, b, v, W).dumps() for v, _ in todo]
    for (v, key), text in zip(todo, texts):
        if cache is not None:
            cache.put(key, text)
        out[v] = SparseMatrix.loads(text)
    return out


def _rank_cached(m: SparseMatrix, field, cache: Cache | None) -> int:
    if cache is None:
        return rank(m, field)
    key = cache_key(canonical_params(kind="rank", field=field, matrix=cache_key(m.dumps())))
    hit = cache.get(key)
    if hit is not None:
        return int(hit)
    r = rank(m, field)
    cache.put(key, str(r))
    return r


def cohomology_dims(
    spec: ComplexSpec | str,
    k: int,
    b: int,
    v_range=None,
    W: int | None = None,
    field: str | int = "q",
    degrees=None,
    cache: Cache | None = None,
    jobs: int = 1,
) -> CohomologyTable:
    """Cohomology per degree on a vertex (or degree) window.

    The slices one step beyond each end of the window are built as well, so
    every reported degree has both adjacent ranks.
    """
    spec = resolve_spec(spec)
    field = parse_field(field)
    if degrees is not None:
        vs = [vertices_for_degree(k, b, d) for d in degrees]
    elif v_range is not None:
        vs = list(v_range)
    else:
        bound = vertex_bound(spec, b, W)
        if bound is None:
            raise ValueError(f"{spec} has unbounded vertex count at b={b}; give v_range")
        vs = list(range(1, bound + 1))
    vs = sorted(v for v in set(vs) if v >= 1)
    if not vs:
        label = spec_label(spec)
        return cohomology_from_ranks(label, k, b, [], W, field)
    lo, hi = vs[0], vs[-1]
    mats = matrices(spec, k, b, range(max(1, lo - 1), hi + 1), W, cache, jobs)
    ranks = {v: _rank_cached(m, field, cache) for v, m in mats.items()}
    rows = []
    for v in range(lo, hi + 1):
        m = mats[v]
        rows.append((slice_degree(k, b, v), m.cols, ranks[v], ranks.get(v - 1, 0), True))
    label = spec_label(spec)
    return cohomology_from_ranks(label, k, b, rows, W, field)


@dataclass
class EulerSeries:
    label: str
    k: int
    b: int
    W: int | None
    dims: dict[int, int]

    @property
    def value(self) -> int:
        return sum((-1) ** (d % 2) * n for d, n in self.dims.items())

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "k": self.k,
            "b": self.b,
            "W": self.W,
            "dims": {str(d): n for d, n in sorted(self.dims.items())},
            "euler": self.value,
        }


def euler(
    spec: ComplexSpec | str,
    k: int,
    b: int,
    v_range=None,
    W: int | None = None,
) -> EulerSeries:
    """Basis dimensions by degree and their alternating sum."""

    spec = resolve_spec(spec)
    if v_range is None:
        bound = vertex_bound(spec, b, W)
        if bound is None:
            raise ValueError(f"{spec} has unbounded vertex count at b={b}; give v_range")
        v_range = range(1, bound + 1)
    dims = {}
    for v in v_range:
        if is_weighted(spec):
            n = len(basis_w(spec, k, b, v, W))
        else:
            n = len(basis(spec, k, b, v))
        dims[slice_degree(k, b, v)] = n
    label = spec_label(spec)
    return EulerSeries(label, k, b, W, dims)
