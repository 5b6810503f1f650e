"""Generators for chessboard-type complexes.

Board convention: a square is ``(c, r)`` with column ``c`` in ``1..m`` and row
``r`` in ``1..n``, rows counted bottom-up. Square ``(c, r)`` is vertex
``(r - 1) * m + (c - 1)``, so row ``r`` occupies the id block
``[(r-1)m, rm)``. This matches the copy labelling of
:func:`multichess.complex.deleted_join`, with rows playing the copies.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .complex import (
    SimplicialComplex,
    alexander_dual,
    from_facets,
    join_all,
    points,
)

log = logging.getLogger(__name__)


def square_id(c: int, r: int, m: int) -> int:
    return (r - 1) * m + (c - 1)


def square_of(v: int, m: int) -> tuple[int, int]:
    return (v % m + 1, v // m + 1)


def board_coords(m: int, n: int) -> tuple[tuple[int, int], ...]:
    return tuple(square_of(v, m) for v in range(m * n))


@dataclass(frozen=True)
class BoardSpec:
    """``m`` columns, ``n`` rows, at most ``row_caps[i]`` rooks in row ``i+1``
    and at most ``col_caps[j]`` rooks in column ``j+1``."""

    m: int
    n: int
    row_caps: tuple[int, ...]
    col_caps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "row_caps", tuple(self.row_caps))
        object.__setattr__(self, "col_caps", tuple(self.col_caps))
        if self.m < 1 or self.n < 1:
            raise ValueError("board needs m, n >= 1")
        if len(self.row_caps) != self.n or len(self.col_caps) != self.m:
            raise ValueError("cap sequences must have lengths n and m")
        if any(k < 0 for k in self.row_caps) or any(l < 0 for l in self.col_caps):
            raise ValueError("caps must be non-negative")
        if any(l > self.n for l in self.col_caps):
            raise ValueError("column cap exceeds n")
        if any(k > self.m for k in self.row_caps):
            log.warning("row cap above m=%d clamped", self.m)
            object.__setattr__(self, "row_caps", tuple(min(k, self.m) for k in self.row_caps))

    @classmethod
    def uniform(cls, m: int, n: int, p: int, q: int = 1) -> "BoardSpec":
        return cls(m, n, (p,) * n, (q,) * m)

    @classmethod
    def rook_caps(cls, m: int, k: Sequence[int]) -> "BoardSpec":
        """Column caps all 1, row caps ``k`` (the family with ``l = 1``)."""
        return cls(m, len(k), tuple(k), (1,) * m)

    def label(self) -> str:
        ks = ",".join(map(str, self.row_caps))
        ls = ",".join(map(str, self.col_caps))
        return f"D[{self.m}x{self.n}; k=({ks}); l=({ls})]"

    def as_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "row_caps": list(self.row_caps),
                "col_caps": list(self.col_caps)}


@dataclass(frozen=True)
class GeneralBoardSpec:
    """Row ``r`` must trace a face of ``row_complexes[r-1]`` (a complex on
    columns ``0..m-1``); column ``c`` must trace a face of
    ``col_complexes[c-1]`` (a complex on rows ``0..n-1``)."""

    m: int
    n: int
    row_complexes: tuple[SimplicialComplex, ...]
    col_complexes: tuple[SimplicialComplex, ...]

    def __post_init__(self):
        if len(self.row_complexes) != self.n or len(self.col_complexes) != self.m:
            raise ValueError("need n row complexes and m column complexes")
        for K in self.row_complexes:
            if any(v >= self.m or v < 0 for v in K.vertices):
                raise ValueError("row complex has a vertex outside [m]")
        for L in self.col_complexes:
            if any(v >= self.n or v < 0 for v in L.vertices):
                raise ValueError("column complex has a vertex outside [n]")


@dataclass(frozen=True)
class TwoOneJSpec:
    m: int
    n: int
    R: frozenset[int]

    @classmethod
    def first_rows(cls, m: int, n: int, j: int) -> "TwoOneJSpec":
        return cls(m, n, frozenset(range(1, j + 1)))

    def __post_init__(self):
        object.__setattr__(self, "R", frozenset(self.R))
        if not self.R <= set(range(1, self.n + 1)):
            raise ValueError("R must be a subset of the rows 1..n")

    @property
    def j(self) -> int:
        return len(self.R)

    def board(self) -> BoardSpec:
        caps = tuple(2 if r in self.R else 1 for r in range(1, self.n + 1))
        return BoardSpec(self.m, self.n, tuple(min(k, self.m) for k in caps), (1,) * self.m)


# -- placements -----------------------------------------------------------


def iter_placements(spec: BoardSpec) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All rook placements as per-row column tuples (0-based columns)."""
    m, n = spec.m, spec.n
    used = [0] * m

    def rec(r: int, acc: list):
        if r == n:
            yield tuple(acc)
            return
        free = [c for c in range(m) if used[c] < spec.col_caps[c]]
        for size in range(min(spec.row_caps[r], len(free)), -1, -1):
            for S in itertools.combinations(free, size):
                for c in S:
                    used[c] += 1
                acc.append(S)
                yield from rec(r + 1, acc)
                acc.pop()
                for c in S:
                    used[c] -= 1

    yield from rec(0, [])


def _is_maximal(rows, spec: BoardSpec) -> bool:
    colcount = [0] * spec.m
    for S in rows:
        for c in S:
            colcount[c] += 1
    for r, S in enumerate(rows):
        if len(S) >= spec.row_caps[r]:
            continue
        for c in range(spec.m):
            if c not in S and colcount[c] < spec.col_caps[c]:
                return False
    return True


def _rows_to_face(rows, m: int) -> tuple[int, ...]:
    return tuple(sorted(r * m + c for r, S in enumerate(rows) for c in S))


def multi_chessboard(spec: BoardSpec) -> SimplicialComplex:
    """Placements with at most ``k_i`` rooks in row ``i`` and ``l_j`` in column ``j``."""
    m, n = spec.m, spec.n
    if all(l == 1 for l in spec.col_caps) and sum(spec.row_caps) <= m:
        # an unsaturated row could always take a rook in some empty column
        facets = [_rows_to_face(rows, m) for rows in iter_saturated(m, spec.row_caps)]
    else:
        facets = [_rows_to_face(rows, m) for rows in iter_placements(spec)
                  if _is_maximal(rows, spec)]
    return from_facets(facets, ground=range(m * n), coords=board_coords(m, n))


def iter_saturated(m: int, caps: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Ordered tuples of disjoint column sets (0-based) with sizes ``caps``."""
    n = len(caps)
    taken = [False] * m

    def rec(r: int, acc: list):
        if r == n:
            yield tuple(acc)
            return
        free = [c for c in range(m) if not taken[c]]
        for S in itertools.combinations(free, caps[r]):
            for c in S:
                taken[c] = True
            acc.append(S)
            yield from rec(r + 1, acc)
            acc.pop()
            for c in S:
                taken[c] = False

    yield from rec(0, [])


def uniform_chessboard(m: int, n: int, p: int, q: int = 1) -> SimplicialComplex:
    if not (1 <= p <= m and 1 <= q <= n):
        raise ValueError("need 1 <= p <= m and 1 <= q <= n")
    return multi_chessboard(BoardSpec.uniform(m, n, p, q))


def general_chessboard(spec: GeneralBoardSpec) -> SimplicialComplex:
    """Placements whose row traces lie in the row complexes and whose column
    traces lie in the column complexes."""
    m, n = spec.m, spec.n
    row_faces = []
    for K in spec.row_complexes:
        fs = {()} if K.facets else set()
        for F in K.facets:
            for size in range(1, len(F) + 1):
                fs.update(itertools.combinations(F, size))
        row_faces.append(sorted(fs, key=lambda s: (-len(s), s)))
    col_masks = [[sum(1 << r for r in F) for F in L.facets] for L in spec.col_complexes]
    trace = [0] * m
    out: list[tuple[int, ...]] = []

    def rec(r: int, acc: list[int]):
        if r == n:
            out.append(tuple(acc))
            return
        for S in row_faces[r]:
            ok = True
            for c in S:
                t = trace[c] | (1 << r)
                if not any(t & fm == t for fm in col_masks[c]):
                    ok = False
                    break
            if not ok:
                continue
            for c in S:
                trace[c] |= 1 << r
            rec(r + 1, acc + [r * m + c for c in S])
            for c in S:
                trace[c] &= ~(1 << r)

    if all(row_faces):
        rec(0, [])
    return from_facets(out, ground=range(m * n), coords=board_coords(m, n))


def two_one_j(spec: TwoOneJSpec) -> SimplicialComplex:
    """At most two rooks in the rows of ``R``, at most one elsewhere."""
    return multi_chessboard(spec.board())


def bier_sphere(K: SimplicialComplex, m: int) -> SimplicialComplex:
    """``K * K°`` realised on the ``m x 2`` board: row 1 carries ``K``, row 2
    its Alexander dual, one rook per column."""
    if any(v < 0 or v >= m for v in K.vertices):
        raise ValueError("complex is not on [m]")
    dual = alexander_dual(K, m)
    col = from_facets([(0,), (1,)], ground=range(2))
    return general_chessboard(GeneralBoardSpec(m, 2, (K, dual), (col,) * m))


def multipartite(t: Sequence[int]) -> SimplicialComplex:
    """``[t_1] * ... * [t_k]``."""
    if not t or any(x < 1 for x in t):
        raise ValueError("part sizes must be >= 1")
    return join_all([points(x) for x in t])


def count_faces(spec: BoardSpec, budget: int | None = None) -> int:
    """Number of nonempty faces; stops early (returning ``budget + 1``) when over ``budget``."""
    total = 0
    for _ in iter_placements(spec):
        total += 1
        if budget is not None and total > budget + 1:
            return budget + 1
    return total - 1


def count_faces_unit_columns(m: int, caps: Sequence[int]) -> int:
    """Face count for column caps 1 by a per-column dynamic program."""
    n = len(caps)
    from collections import Counter
    states = Counter({tuple([0] * n): 1})
    for _ in range(m):
        nxt: Counter = Counter()
        for st, w in states.items():
            nxt[st] += w
            for r in range(n):
                if st[r] < caps[r]:
                    s2 = list(st)
                    s2[r] += 1
                    nxt[tuple(s2)] += w
        states = nxt
    return sum(states.values()) - 1


def facet_rows(K: SimplicialComplex, face: Iterable[int], m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Per-row 1-based column sets of a board face."""
    rows: list[list[int]] = [[] for _ in range(n)]
    for v in face:
        c, r = square_of(v, m)
        rows[r - 1].append(c)
    return tuple(tuple(sorted(x)) for x in rows)
