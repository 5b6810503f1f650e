"""Finite simplicial complexes stored as facet lists.

Vertices are non-negative integers. A complex keeps only its maximal faces;
membership of an arbitrary face is tested by containment in some facet.
Board-derived complexes additionally carry a coordinate map from vertex id
to the 1-based square ``(column, row)``.

Two degenerate complexes are kept apart on purpose: the *void* complex has
no faces at all (``facets == ()``), while ``{∅}`` has exactly the empty face
(``facets == ((),)``). Reduced homology treats them differently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Simplex = tuple  # strictly increasing tuple of vertex ids

VOID_DIM = -math.inf


def _canon(face: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(face)))


def maximal_sets(candidates: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    """Return the inclusion-maximal members of ``candidates``, canonically sorted."""
    uniq = {_canon(c) for c in candidates}
    # larger sets first so a set is only ever compared against potential supersets
    ordered = sorted(uniq, key=lambda s: (-len(s), s))
    kept: list[tuple[int, ...]] = []
    by_vertex: dict[int, set[int]] = {}
    for s in ordered:
        if kept:
            if not s:
                continue
            holders = None
            for v in sorted(s, key=lambda v: len(by_vertex.get(v, ()))):
                idx = by_vertex.get(v)
                if not idx:
                    holders = set()
                    break
                holders = set(idx) if holders is None else holders & idx
                if not holders:
                    break
            if holders:
                continue
        idx = len(kept)
        kept.append(s)
        for v in s:
            by_vertex.setdefault(v, set()).add(idx)
    return sorted(kept)


@dataclass(frozen=True)
class SimplicialComplex:
    facets: tuple[tuple[int, ...], ...]
    ground: tuple[int, ...] = ()
    coords: tuple[tuple[int, int], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        used = {v for f in self.facets for v in f}
        if not self.ground:
            object.__setattr__(self, "ground", tuple(sorted(used)))
        elif not used <= set(self.ground):
            raise ValueError("facet vertex outside ground set")

    # -- basic queries -------------------------------------------------

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self):
        if not self.facets:
            return VOID_DIM
        return max(len(f) for f in self.facets) - 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def __contains__(self, face) -> bool:
        s = set(face)
        return any(s.issubset(f) for f in self.facets)

    def __len__(self) -> int:
        return len(self.facets)

    def coord(self, v: int) -> tuple[int, int]:
        if self.coords is None:
            raise ValueError("complex has no board coordinates")
        return self.coords[v]

    def describe_face(self, face: Iterable[int]) -> list:
        """Face as a list of board squares when coordinates exist, else as ids."""
        if self.coords is None:
            return list(face)
        return [list(self.coords[v]) for v in face]

    def faces(self, i: int) -> list[tuple[int, ...]]:
        return enumerate_faces(self, i)

    def with_coords(self, coords) -> "SimplicialComplex":
        return SimplicialComplex(self.facets, self.ground, tuple(map(tuple, coords)))


def from_facets(candidates: Iterable[Iterable[int]], ground: Iterable[int] | None = None,
                coords=None) -> SimplicialComplex:
    facets = tuple(maximal_sets(candidates))
    g = tuple(sorted(set(ground))) if ground is not None else ()
    c = tuple(map(tuple, coords)) if coords is not None else None
    return SimplicialComplex(facets, g, c)


def simplex(vertices: Iterable[int]) -> SimplicialComplex:
    """The full simplex on ``vertices``."""
    return from_facets([tuple(vertices)])


def boundary_of_simplex(vertices: Sequence[int]) -> SimplicialComplex:
    vs = tuple(sorted(vertices))
    return from_facets(itertools.combinations(vs, len(vs) - 1), ground=vs)


def points(n: int, start: int = 0) -> SimplicialComplex:
    """``n`` isolated vertices labelled ``start .. start+n-1``."""
    return from_facets([(start + i,) for i in range(n)])


# -- faces and counting --------------------------------------------------


def iter_faces(K: SimplicialComplex, i: int) -> Iterator[tuple[int, ...]]:
    seen: set[tuple[int, ...]] = set()
    for f in K.facets:
        if len(f) < i + 1:
            continue
        for s in itertools.combinations(f, i + 1):
            if s not in seen:
                seen.add(s)
                yield s


def enumerate_faces(K: SimplicialComplex, i: int) -> list[tuple[int, ...]]:
    """All ``i``-faces, each once, in lexicographic order."""
    if i < -1:
        raise ValueError("dimension must be >= -1")
    if i == -1:
        return [()] if K.facets else []
    return sorted(iter_faces(K, i))


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    """``(f_0, ..., f_d)``; empty tuple for the void complex and for ``{∅}``."""
    if K.is_void or K.dim < 0:
        return ()
    return tuple(sum(1 for _ in iter_faces(K, i)) for i in range(K.dim + 1))


def euler_characteristic(K: SimplicialComplex, reduced: bool = False) -> int:
    """Alternating face count. The void complex gets 0 (and -0 reduced is 0 too)."""
    if K.is_void:
        return 0
    chi = sum((-1) ** i * f for i, f in enumerate(f_vector(K)))
    return chi - 1 if reduced else chi


# -- constructions -------------------------------------------------------


def _shift(K: SimplicialComplex) -> int:
    return (max(K.ground) + 1) if K.ground else 0


def join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Join with ``B`` relabelled past the largest ground label of ``A``."""
    off = _shift(A)
    if A.is_void or B.is_void:
        ground = tuple(A.ground) + tuple(v + off for v in B.ground)
        return SimplicialComplex((), ground)
    facets = [a + tuple(v + off for v in b) for a in A.facets for b in B.facets]
    ground = tuple(A.ground) + tuple(v + off for v in B.ground)
    coords = None
    if A.coords is not None and B.coords is not None:
        coords = tuple(A.coords) + tuple(B.coords)
    return from_facets(facets, ground=ground, coords=coords)


def join_all(parts: Sequence[SimplicialComplex]) -> SimplicialComplex:
    out = parts[0]
    for K in parts[1:]:
        out = join(out, K)
    return out


def deleted_join(K: SimplicialComplex, n: int, s: int = 2) -> SimplicialComplex:
    """``n``-fold ``s``-deleted join of ``K``.

    Faces are joins ``σ_1 * ... * σ_n`` of faces of ``K`` in which every
    vertex of ``K`` is used by fewer than ``s`` of the ``σ_i``. Copy ``c``
    of vertex ``v`` gets id ``c * N + v`` where ``N`` is the ground size
    (ground must be ``0 .. N-1``).
    """
    if n < 1 or s < 2:
        raise ValueError("need n >= 1 and s >= 2")
    N = _shift(K)
    if K.is_void:
        return SimplicialComplex((), tuple(range(N * n)))
    faces = sorted({f for i in range(-1, K.dim + 1) for f in enumerate_faces(K, i)})
    out: list[tuple[int, ...]] = []
    use = [0] * N

    def rec(copy: int, acc: list[int]):
        if copy == n:
            out.append(tuple(acc))
            return
        for f in faces:
            if any(use[v] + 1 >= s for v in f):
                continue
            for v in f:
                use[v] += 1
            rec(copy + 1, acc + [copy * N + v for v in f])
            for v in f:
                use[v] -= 1

    rec(0, [])
    return from_facets(out, ground=range(N * n))


def link(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    s = set(sigma)
    if s not in K:
        raise ValueError("face not in complex")
    rest = [tuple(v for v in f if v not in s) for f in K.facets if s.issubset(f)]
    return from_facets(rest, ground=K.ground, coords=K.coords)


def skeleton(K: SimplicialComplex, d: int) -> SimplicialComplex:
    if d < 0:
        raise ValueError("skeleton dimension must be >= 0")
    cands = []
    for f in K.facets:
        if len(f) <= d + 1:
            cands.append(f)
        else:
            cands.extend(itertools.combinations(f, d + 1))
    return from_facets(cands, ground=K.ground, coords=K.coords)


def full_skeleton(m: int, p: int) -> SimplicialComplex:
    """``[m]^{<=p}``: all subsets of ``0..m-1`` of size at most ``p``."""
    if p <= 0:
        return SimplicialComplex(((),), tuple(range(m)))
    return from_facets(itertools.combinations(range(m), min(p, m)), ground=range(m))


def alexander_dual(K: SimplicialComplex, m: int) -> SimplicialComplex:
    """Combinatorial Alexander dual ``{σ ⊆ [m] : [m] \\ σ ∉ K}`` on ground ``0..m-1``.

    Facets of the dual are complements of the minimal non-faces of ``K``.
    The full simplex has void dual.
    """
    if any(v < 0 or v >= m for v in K.vertices):
        raise ValueError("complex has vertices outside [m]")
    full = frozenset(range(m))
    masks = [sum(1 << v for v in f) for f in K.facets]

    def is_face(bits: int) -> bool:
        return any(bits & fm == bits for fm in masks)

    minimal_nonfaces = []
    for size in range(m + 1):
        for c in itertools.combinations(range(m), size):
            bits = sum(1 << v for v in c)
            if is_face(bits):
                continue
            if any(bits & mn == mn for mn in minimal_nonfaces):
                continue
            minimal_nonfaces.append(bits)
    facets = [tuple(v for v in range(m) if not (mn >> v) & 1) for mn in minimal_nonfaces]
    if not facets:
        return SimplicialComplex((), tuple(range(m)))
    return from_facets(facets, ground=full)


def relabel(K: SimplicialComplex, mapping) -> SimplicialComplex:
    """Apply a vertex bijection (dict or callable)."""
    f = mapping if callable(mapping) else mapping.__getitem__
    return from_facets([[f(v) for v in F] for F in K.facets], ground=[f(v) for v in K.ground])


def is_isomorphic_by(A: SimplicialComplex, B: SimplicialComplex, mapping) -> bool:
    return relabel(A, mapping).facets == B.facets
