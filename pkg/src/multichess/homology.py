"""Integer simplicial homology through sparse Smith normal form.

Reduced homology is the default: the chain complex is augmented by the
(-1)-chain group spanned by the empty face. Everything is exact; entries are
Python ints.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .complex import SimplicialComplex, enumerate_faces


@dataclass
class SparseIntMatrix:
    nrows: int
    ncols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    @classmethod
    def from_dense(cls, rows) -> "SparseIntMatrix":
        rows = [list(r) for r in rows]
        nc = len(rows[0]) if rows else 0
        return cls(len(rows), nc, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[i, j] = out.get((i, j), 0) + a * b
        return SparseIntMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not self.entries


# -- Smith normal form ------------------------------------------------------


def _diagonal_to_invariants(diag: list[int]) -> list[int]:
    ones = sum(1 for x in diag if abs(x) == 1)
    d = sorted(abs(x) for x in diag if abs(x) > 1)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = d[i], d[j]
            g = math.gcd(a, b)
            d[i], d[j] = g, a // g * b
    return [1] * ones + d


class _Eliminator:
    """Sparse two-sided integer elimination.

    Unit pivots are preferred: first ones alone in their row or column (no
    fill), then a unit in the sparsest column (leftmost on ties) paired with
    its sparsest row. Without units the entry of least absolute value is
    used, ties broken by Markowitz cost, then column, then row.
    """

    def __init__(self, M: SparseIntMatrix):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for (i, j), v in M.entries.items():
            self.rows.setdefault(i, {})[j] = v
            self.cols.setdefault(j, set()).add(i)
        self.diag: list[int] = []
        self.lonely_cols = [j for j, rs in self.cols.items() if len(rs) == 1]
        self.lonely_rows = [i for i, r in self.rows.items() if len(r) == 1]
        # lazy heap of (column size, column); touched columns are re-pushed
        self.heap = [(len(rs), j) for j, rs in self.cols.items()]
        heapq.heapify(self.heap)
        self.touched: set[int] = set()

    def _drop(self, r: int, c: int):
        for j in self.rows.pop(r):
            self.touched.add(j)
            s = self.cols[j]
            s.discard(r)
            if not s:
                del self.cols[j]
            elif len(s) == 1:
                self.lonely_cols.append(j)
        for i in self.cols.pop(c, ()):
            if i == r:
                continue
            row = self.rows[i]
            row.pop(c, None)
            if not row:
                del self.rows[i]
            elif len(row) == 1:
                self.lonely_rows.append(i)

    def _lonely_unit(self):
        while self.lonely_cols:
            c = self.lonely_cols.pop()
            rs = self.cols.get(c)
            if rs and len(rs) == 1:
                (r,) = rs
                if abs(self.rows[r][c]) == 1:
                    return r, c
        while self.lonely_rows:
            r = self.lonely_rows.pop()
            row = self.rows.get(r)
            if row and len(row) == 1:
                (c,) = row
                if abs(row[c]) == 1:
                    return r, c
        return None

    def _best_pivot(self):
        # sparsest column first; a unit there is taken with its sparsest row
        for j in self.touched:
            if j in self.cols:
                heapq.heappush(self.heap, (len(self.cols[j]), j))
        self.touched.clear()
        while True:
            size, c = self.heap[0]
            if c in self.cols and len(self.cols[c]) == size:
                break
            heapq.heappop(self.heap)
        units = [r for r in self.cols[c] if abs(self.rows[r][c]) == 1]
        if units:
            return min(units, key=lambda r: (len(self.rows[r]), r)), c
        best = None
        for c in sorted(self.cols):
            cc = len(self.cols[c]) - 1
            for r in self.cols[c]:
                v = abs(self.rows[r][c])
                key = (v, cc * (len(self.rows[r]) - 1), c, r)
                if best is None or key < best:
                    best = key
        return best[3], best[2]

    def _row_axpy(self, target: int, src: int, q: int):
        """row[target] -= q * row[src]"""
        trow = self.rows[target]
        self.touched.update(self.rows[src])
        for j, v in self.rows[src].items():
            nv = trow.get(j, 0) - q * v
            if nv:
                if j not in trow:
                    self.cols[j].add(target)
                trow[j] = nv
            elif j in trow:
                del trow[j]
                s = self.cols[j]
                s.discard(target)
                if not s:
                    del self.cols[j]
                elif len(s) == 1:
                    self.lonely_cols.append(j)
        if not trow:
            del self.rows[target]
        elif len(trow) == 1:
            self.lonely_rows.append(target)

    def _col_axpy(self, target: int, src: int, q: int):
        """col[target] -= q * col[src]"""
        self.touched.add(target)
        for i in list(self.cols[src]):
            row = self.rows[i]
            v = row[src]
            nv = row.get(target, 0) - q * v
            if nv:
                if target not in row:
                    self.cols.setdefault(target, set()).add(i)
                row[target] = nv
            elif target in row:
                del row[target]
                s = self.cols[target]
                s.discard(i)
                if not s:
                    del self.cols[target]
                if len(row) == 1:
                    self.lonely_rows.append(i)

    def run(self) -> list[int]:
        while self.rows:
            piv = self._lonely_unit()
            if piv is None:
                piv = self._best_pivot()
            r, c = piv
            p = self.rows[r][c]
            if abs(p) == 1:
                for i in list(self.cols[c]):
                    if i != r:
                        self._row_axpy(i, r, self.rows[i][c] * p)
                self.diag.append(1)
                self._drop(r, c)
                continue
            # non-unit pivot: Euclidean reduction of its row and column
            clean = True
            for i in list(self.cols[c]):
                if i != r:
                    q = _nearest_quotient(self.rows[i][c], p)
                    if q:
                        self._row_axpy(i, r, q)
                    if c in self.rows.get(i, {}):
                        clean = False
            for j in list(self.rows[r]):
                if j != c:
                    q = _nearest_quotient(self.rows[r][j], p)
                    if q:
                        self._col_axpy(j, c, q)
                    if j in self.rows[r]:
                        clean = False
            if clean:
                self.diag.append(p)
                self._drop(r, c)
        return _diagonal_to_invariants(self.diag)


def _nearest_quotient(a: int, p: int) -> int:
    q, rem = divmod(a, p)
    if 2 * abs(rem) > abs(p):
        q += 1
    return q


def smith_normal_form(M: SparseIntMatrix) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of ``M``."""
    return _Eliminator(M).run()


def rank(M: SparseIntMatrix) -> int:
    return len(smith_normal_form(M))


# -- boundary maps --------------------------------------------------------


def face_index(K: SimplicialComplex) -> dict[int, list[tuple[int, ...]]]:
    """Faces of every dimension ``-1 .. dim``, each list lexicographically sorted."""
    if K.is_void:
        return {}
    return {i: enumerate_faces(K, i) for i in range(-1, K.dim + 1)}


def boundary_matrix(lower: list[tuple[int, ...]], upper: list[tuple[int, ...]]) -> SparseIntMatrix:
    pos = {f: k for k, f in enumerate(lower)}
    entries = {}
    for j, s in enumerate(upper):
        for t in range(len(s)):
            entries[pos[s[:t] + s[t + 1:]], j] = -1 if t % 2 else 1
    return SparseIntMatrix(len(lower), len(upper), entries)


def boundary_matrices(K: SimplicialComplex) -> list[SparseIntMatrix]:
    """``[∂_0, ∂_1, ..., ∂_d]`` with ``∂_0`` the augmentation onto the empty face."""
    faces = face_index(K)
    if not faces:
        return []
    return [boundary_matrix(faces[i - 1], faces[i]) for i in range(0, K.dim + 1)]


# -- homology --------------------------------------------------------------


@dataclass
class HomologySummary:
    """``betti[i]`` and ``torsion[i]`` for ``i = -1 .. dim`` (reduced unless flagged)."""

    betti: dict[int, int]
    torsion: dict[int, list[int]]
    reduced: bool = True
    void: bool = False

    def betti_list(self, start: int = 0) -> list[int]:
        top = max(self.betti, default=-1)
        return [self.betti.get(i, 0) for i in range(start, top + 1)]

    def is_sphere_like(self, d: int) -> bool:
        """Reduced homology of ``S^d`` (a single free class in dimension ``d``)."""
        return all((self.betti.get(i, 0) == (1 if i == d else 0)) and not self.torsion.get(i)
                   for i in set(self.betti) | {d})

    def nonzero(self) -> dict[int, tuple[int, list[int]]]:
        return {i: (b, self.torsion.get(i, [])) for i, b in self.betti.items()
                if b or self.torsion.get(i)}

    def euler(self) -> int:
        return sum((-1) ** i * b for i, b in self.betti.items())

    def as_dict(self) -> dict:
        return {"reduced": self.reduced, "void": self.void,
                "betti": {str(i): b for i, b in sorted(self.betti.items())},
                "torsion": {str(i): t for i, t in sorted(self.torsion.items()) if t}}


class ChainData:
    """Boundary matrices of ``K`` with cached invariant factors."""

    def __init__(self, K: SimplicialComplex):
        self.K = K
        self.faces = face_index(K)
        self._snf: dict[int, list[int]] = {}

    def counts(self, i: int) -> int:
        return len(self.faces.get(i, ()))

    def matrix(self, i: int) -> SparseIntMatrix:
        return boundary_matrix(self.faces[i - 1], self.faces[i])

    def invariants(self, i: int) -> list[int]:
        """Invariant factors of ``∂_i`` (empty outside ``0 .. dim``)."""
        if i not in self._snf:
            if i not in self.faces or i - 1 not in self.faces:
                self._snf[i] = []
            else:
                self._snf[i] = smith_normal_form(self.matrix(i))
        return self._snf[i]

    def group(self, i: int, reduced: bool = True) -> tuple[int, list[int]]:
        f = self.counts(i)
        rk_out = len(self.invariants(i)) if (reduced or i > 0) else 0
        inv_in = self.invariants(i + 1)
        betti = f - rk_out - len(inv_in)
        return betti, [d for d in inv_in if d > 1]


def homology(K: SimplicialComplex, reduced: bool = True, max_dim: int | None = None) -> HomologySummary:
    if K.is_void:
        return HomologySummary({}, {}, reduced=reduced, void=True)
    cd = ChainData(K)
    top = K.dim if max_dim is None else min(K.dim, max_dim)
    lo = -1 if reduced else 0
    betti, torsion = {}, {}
    for i in range(lo, top + 1):
        betti[i], torsion[i] = cd.group(i, reduced)
    return HomologySummary(betti, torsion, reduced=reduced)


@dataclass
class ConnectivityReport:
    hconn: int
    dim: float
    witness_dim: int | None = None
    witness_betti: int = 0
    witness_torsion: list[int] = field(default_factory=list)
    note: str = "homological only; fundamental group not computed"

    def as_dict(self) -> dict:
        w = None
        if self.witness_dim is not None:
            w = {"dim": self.witness_dim, "betti": self.witness_betti,
                 "torsion": self.witness_torsion}
        d = self.dim if self.dim != -math.inf else None
        return {"hconn": self.hconn, "dim": d, "witness": w, "note": self.note}


def homological_connectivity(K: SimplicialComplex, chain: ChainData | None = None) -> ConnectivityReport:
    """Largest ``c`` with reduced ``H_i = 0`` for all ``i <= c``.

    Groups are computed bottom-up and the scan stops at the first nonzero
    one. The void complex and ``{∅}`` both get -2; a complex with no reduced
    homology at all is reported as acyclic up to its dimension.
    """
    if K.is_void:
        return ConnectivityReport(-2, K.dim)
    cd = chain or ChainData(K)
    for i in range(-1, K.dim + 1):
        b, t = cd.group(i)
        if b or t:
            return ConnectivityReport(i - 1, K.dim, i, b, t)
    return ConnectivityReport(K.dim, K.dim)


def top_betti(K: SimplicialComplex) -> int:
    """Rank of reduced ``H_d`` for ``d = dim K`` (only ``∂_d`` is reduced)."""
    if K.is_void:
        return 0
    d = K.dim
    faces = face_index(K)
    return len(faces[d]) - rank(boundary_matrix(faces[d - 1], faces[d]))
