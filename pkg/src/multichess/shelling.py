"""Cyclic reversed-lexicographic facet order on ``Δ_{m,n}^{k;1}`` and a
generic shelling verifier.

A facet of the board complex with column caps 1 and row caps ``k`` (on a board
wide enough that every facet fills every row) is a tuple ``A = (A_1, ..., A_n)``
of pairwise disjoint column sets, ``|A_i| = k_i``, columns 1-based. Facet
order:

1. different first rows: ``A << B`` iff ``max(A_1 △ B_1) ∈ B_1``;
2. equal first rows: walk the columns off ``A_1`` in priority order
   (lacunas of ``[m] \\ A_1`` left to right, each lacuna right to left). At
   the first column where the facets differ, a facet without a rook there
   comes first, and of two rooks the one in the higher-numbered row comes
   first. At the first column empty in both, drop the walked columns, the
   columns of ``A_1``, row 1 and every row whose rooks all lie in the walked
   columns, relabel what is left, and compare the leftovers recursively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Callable, Iterable, Sequence

from .boards import BoardSpec, iter_saturated
from .complex import SimplicialComplex

FacetTuple = tuple  # tuple of sorted tuples of 1-based columns, one per row

_EMPTY = -(1 << 30)


class ShellingError(ValueError):
    pass


@dataclass(frozen=True)
class Lacuna:
    start: int
    length: int

    @property
    def columns(self) -> range:
        return range(self.start, self.start + self.length)


def lacunas(A1: Iterable[int], m: int) -> list[Lacuna]:
    """Maximal runs of consecutive columns of ``[m]`` missing from ``A1``."""
    taken = set(A1)
    out: list[Lacuna] = []
    c = 1
    while c <= m:
        if c in taken:
            c += 1
            continue
        start = c
        while c <= m and c not in taken:
            c += 1
        out.append(Lacuna(start, c - start))
    return out


def priority_sequence(A1: Iterable[int], m: int) -> tuple[int, ...]:
    seq: list[int] = []
    for lac in lacunas(A1, m):
        seq.extend(reversed(lac.columns))
    return tuple(seq)


# -- relabelling of the residual board ---------------------------------------


def _order_preserving(cols: Sequence[int]) -> dict[int, int]:
    return {c: i + 1 for i, c in enumerate(cols)}


def _order_reversing(cols: Sequence[int]) -> dict[int, int]:
    n = len(cols)
    return {c: n - i for i, c in enumerate(cols)}


RELABELINGS: dict[str, Callable[[Sequence[int]], dict[int, int]]] = {
    "order": _order_preserving,
    "reverse": _order_reversing,
}


def _residual(A: FacetTuple, scanned: Sequence[int], m: int, relabel: str):
    X = set(scanned)
    A1 = set(A[0])
    kept_rows = [i for i in range(1, len(A)) if not set(A[i]) <= X]
    cols = [c for c in range(1, m + 1) if c not in X and c not in A1]
    mp = RELABELINGS[relabel](cols)
    res = tuple(tuple(sorted(mp[c] for c in A[i] if c not in X)) for i in kept_rows)
    return res, len(cols)


# -- comparator ----------------------------------------------------------


def _check_shape(A: FacetTuple, B: FacetTuple, m: int):
    if len(A) != len(B) or any(len(a) != len(b) for a, b in zip(A, B)):
        raise ShellingError("facet shape mismatch")
    for F in (A, B):
        flat = [c for row in F for c in row]
        if len(flat) != len(set(flat)) or any(c < 1 or c > m for c in flat):
            raise ShellingError("facet rows must be disjoint column sets inside [m]")


def compare_facets(A: FacetTuple, B: FacetTuple, m: int, relabel: str = "order") -> int:
    """-1 if ``A << B``, 1 if ``B << A``, 0 if equal."""
    A = tuple(tuple(sorted(r)) for r in A)
    B = tuple(tuple(sorted(r)) for r in B)
    _check_shape(A, B, m)
    return _compare(A, B, m, relabel)


def _compare(A: FacetTuple, B: FacetTuple, m: int, relabel: str) -> int:
    if A == B:
        return 0
    A1, B1 = set(A[0]), set(B[0])
    if A1 != B1:
        return -1 if max(A1 ^ B1) in B1 else 1
    rowA = {c: i for i in range(1, len(A)) for c in A[i]}
    rowB = {c: i for i in range(1, len(B)) for c in B[i]}
    seq = priority_sequence(A1, m)
    for p, x in enumerate(seq):
        a, b = rowA.get(x), rowB.get(x)
        if a is None and b is None:
            ra, mm = _residual(A, seq[:p + 1], m, relabel)
            rb, _ = _residual(B, seq[:p + 1], m, relabel)
            if not ra:
                # equal prefixes with no rows left mean A == B
                raise AssertionError("residual board has no rows for distinct facets")
            return _compare(ra, rb, mm, relabel)
        if a is None:
            return -1
        if b is None:
            return 1
        if a != b:
            return -1 if a > b else 1
    return 0


def facet_key(A: FacetTuple, m: int, relabel: str = "order") -> tuple:
    """Sort key realising ``<<``: ``facet_key(A) < facet_key(B)`` iff ``A << B``."""
    A1 = A[0]
    head = tuple(sorted(A1, reverse=True))
    if len(A) == 1:
        return (head,)
    owner = {c: i for i in range(1, len(A)) for c in A[i]}
    seq = priority_sequence(A1, m)
    states = []
    for p, x in enumerate(seq):
        i = owner.get(x)
        if i is None:
            states.append(_EMPTY)
            res, mm = _residual(A, seq[:p + 1], m, relabel)
            return (head, tuple(states), facet_key(res, mm, relabel) if res else ())
        states.append(-i)
    return (head, tuple(states), ())


# -- orders --------------------------------------------------------------


def shelling_hypothesis(m: int, caps: Sequence[int]) -> bool:
    return m >= sum(caps) + len(caps) - 1


def _caps_of(spec) -> tuple[int, tuple[int, ...]]:
    if isinstance(spec, BoardSpec):
        if any(l != 1 for l in spec.col_caps):
            raise ShellingError("the facet order is defined for column caps 1 only")
        return spec.m, spec.row_caps
    m, caps = spec
    return m, tuple(caps)


def board_facets(m: int, caps: Sequence[int]) -> list[FacetTuple]:
    """Facets of ``Δ_{m,n}^{caps;1}`` with ``sum(caps) <= m`` as 1-based tuples."""
    if sum(caps) > m:
        raise ShellingError("facets fill every row only when sum(caps) <= m")
    return [tuple(tuple(c + 1 for c in row) for row in rows) for rows in iter_saturated(m, caps)]


def shelling_order(spec, relabel: str = "order", exploratory: bool = False) -> list[FacetTuple]:
    """All facets sorted by ``<<``.

    ``spec`` is a :class:`BoardSpec` with column caps 1 or a pair
    ``(m, caps)``. Outside ``m >= sum(caps) + n - 1`` the order is still
    produced when ``exploratory`` is set, but nothing is claimed about it.
    """
    m, caps = _caps_of(spec)
    if not shelling_hypothesis(m, caps) and not exploratory:
        raise ShellingError("shelling hypothesis m >= sum(k) + n - 1 not met")
    facets = board_facets(m, caps)
    return sorted(facets, key=lambda A: facet_key(A, m, relabel))


def sort_by_comparator(facets: Sequence[FacetTuple], m: int, relabel: str = "order") -> list[FacetTuple]:
    return sorted(facets, key=cmp_to_key(lambda a, b: compare_facets(a, b, m, relabel)))


def lex_order(m: int, caps: Sequence[int]) -> list[FacetTuple]:
    """Plain lexicographic order of ``(A_1, ..., A_n)``."""
    return sorted(board_facets(m, caps))


def tuple_to_face(A: FacetTuple, m: int) -> tuple[int, ...]:
    return tuple(sorted(i * m + c - 1 for i, row in enumerate(A) for c in row))


def face_to_tuple(face: Iterable[int], m: int, n: int) -> FacetTuple:
    rows: list[list[int]] = [[] for _ in range(n)]
    for v in face:
        rows[v // m].append(v % m + 1)
    return tuple(tuple(sorted(r)) for r in rows)


# -- verification --------------------------------------------------------


@dataclass
class ShellingCertificate:
    order: list[tuple[int, ...]]
    restriction: list[tuple[int, ...]]
    verified: bool = True
    exploratory: bool = False

    @property
    def spanning(self) -> list[bool]:
        return [len(r) == len(f) for r, f in zip(self.restriction, self.order)]

    ok = property(lambda self: self.verified)


@dataclass
class Violation:
    """Facet ``j`` of the order meets an earlier facet ``i`` outside every
    codimension-one face shared with earlier facets."""

    i: int
    j: int
    earlier: tuple[int, ...]
    facet: tuple[int, ...]
    intersection: tuple[int, ...]
    restriction: tuple[int, ...] = field(default=())
    ok = False


def verify_shelling(K: SimplicialComplex | None, order: Sequence[Sequence[int]]):
    """Check that ``order`` is a shelling of ``K``.

    For each facet ``F_j`` the restriction face ``R_j`` is the set of
    vertices ``v`` with ``F_j - v`` inside an earlier facet. The order is a
    shelling iff no earlier facet contains ``R_j`` (for ``j > 1``). ``K`` may
    be ``None`` when only the order itself is to be checked.
    """
    facets = [tuple(sorted(F)) for F in order]
    if len(set(facets)) != len(facets):
        raise ShellingError("order repeats a facet")
    if K is not None:
        if not K.is_pure:
            raise ShellingError("complex is not pure")
        if set(facets) != set(K.facets):
            raise ShellingError("order is not a permutation of the facets")
    elif len({len(F) for F in facets}) > 1:
        raise ShellingError("complex is not pure")
    seen_ridges: set[int] = set()
    holders: dict[int, set[int]] = {}
    masks: list[int] = []
    restriction: list[tuple[int, ...]] = []
    for j, F in enumerate(facets):
        mask = 0
        for v in F:
            mask |= 1 << v
        R = tuple(v for v in F if mask ^ (1 << v) in seen_ridges)
        if j:
            if not R:
                common = set(range(j))
            else:
                sets = sorted((holders.get(v, set()) for v in R), key=len)
                common = set(sets[0])
                for s in sets[1:]:
                    if not common:
                        break
                    common &= s
            if common:
                i = min(common)
                inter = tuple(sorted(set(facets[i]) & set(F)))
                return Violation(i, j, facets[i], F, inter, R)
        restriction.append(R)
        masks.append(mask)
        for v in F:
            seen_ridges.add(mask ^ (1 << v))
            holders.setdefault(v, set()).add(j)
    return ShellingCertificate(facets, restriction)


def wedge_summary(cert: ShellingCertificate) -> int:
    """Number of spanning facets (``R_j = F_j``): the count of top spheres."""
    if not isinstance(cert, ShellingCertificate) or not cert.verified:
        raise ShellingError("wedge summary needs a verified shelling certificate")
    return sum(cert.spanning)


def certify_board(m: int, caps: Sequence[int], relabel: str = "order",
                  exploratory: bool = False):
    """Shelling order of ``Δ_{m,n}^{caps;1}`` run through the verifier."""
    order = shelling_order((m, caps), relabel=relabel, exploratory=exploratory)
    res = verify_shelling(None, [tuple_to_face(A, m) for A in order])
    if isinstance(res, ShellingCertificate):
        res.exploratory = not shelling_hypothesis(m, caps)
    return res
