"""Closed-form connectivity bounds for ``Δ_{m,n}^{k;1}`` and a scanner that
compares them with computed homological connectivity.

All bounds are returned as ``μ``; the predicted connectivity is ``μ - 2``.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .boards import BoardSpec, count_faces_unit_columns, multi_chessboard
from .homology import ChainData, homological_connectivity

log = logging.getLogger(__name__)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def mu_theorem_3_2(m: int, n: int, caps: Sequence[int]) -> int:
    """``min(m - n + 1, k_1 + ... + k_n)``."""
    if len(caps) != n:
        raise ValueError("need one cap per row")
    return min(m - n + 1, sum(caps))


def mu_krw(m: int, n: int, caps: Sequence[int]) -> int:
    """The rational-homology bound ``min(m, ⌈(m + Σk + 1)/3⌉, Σk)``."""
    if len(caps) != n:
        raise ValueError("need one cap per row")
    s = sum(caps)
    return min(m, _ceil_div(m + s + 1, 3), s)


def prop_3_6_case(m: int, n: int, j: int) -> int:
    """Index 1..5 of the piecewise branch for ``Δ_{m,n}^{2,1(j)}``.

    Branches are tried in order; thresholds are exact rationals.
    """
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    M = Fraction(m)
    if M < Fraction(n + j, 2):
        return 1
    if M < n + Fraction(j, 2) - 1:
        return 2
    if M < n + 2 * j:
        return 3
    if M < 2 * n + j - 1:
        return 4
    return 5


def mu_prop_3_6(m: int, n: int, j: int) -> int:
    case = prop_3_6_case(m, n, j)
    if case == 1:
        return m
    if case == 2:
        return _ceil_div(m + n + j + 1, 3)
    if case == 3:
        return _ceil_div(5 * m + n + 2 * j + 5, 9)
    if case == 4:
        return _ceil_div(m + n + 2 * j + 1, 3)
    return n + j


def two_one_j_rows(caps: Sequence[int]) -> int | None:
    """``j`` when every cap is 1 or 2 (number of 2s), else ``None``."""
    if all(k in (1, 2) for k in caps):
        return sum(1 for k in caps if k == 2)
    return None


@dataclass
class BoundReport:
    spec: BoardSpec
    mu_thm32: int
    mu_krw: int
    mu_prop36: int | None = None
    faces: int = 0
    hconn: int | None = None
    witness_dim: int | None = None
    skipped: bool = False

    @property
    def predicted(self) -> int:
        return self.mu_thm32 - 2

    @property
    def violation(self) -> bool:
        return self.hconn is not None and self.hconn < self.predicted

    @property
    def prop36_violation(self) -> bool:
        return (self.hconn is not None and self.mu_prop36 is not None
                and self.hconn < self.mu_prop36 - 2)

    @property
    def sharp(self) -> bool:
        # exact, and the first nonzero group sits right above the prediction
        return self.hconn == self.predicted and self.witness_dim == self.mu_thm32 - 1

    def row(self) -> list[str]:
        def fmt(x):
            return "-" if x is None else str(x)
        if self.skipped:
            return [self.spec.label(), str(self.mu_thm32), fmt(self.mu_prop36), str(self.mu_krw),
                    "skipped", "-", "-"]
        broken = [name for name, bad in (("3.2", self.violation), ("3.6", self.prop36_violation)) if bad]
        return [self.spec.label(), str(self.mu_thm32), fmt(self.mu_prop36), str(self.mu_krw),
                fmt(self.hconn), str(int(self.sharp)), "+".join(broken) or "0"]


TSV_HEADER = ["spec", "mu_3.2", "mu_3.6", "mu_KRW", "hconn", "sharp", "violation"]


def bound_report(spec: BoardSpec, budget: int | None = None) -> BoundReport:
    if any(l != 1 for l in spec.col_caps):
        raise ValueError("bounds apply to column caps 1")
    m, n, caps = spec.m, spec.n, spec.row_caps
    j = two_one_j_rows(caps)
    rep = BoundReport(spec, mu_theorem_3_2(m, n, caps), mu_krw(m, n, caps),
                      mu_prop_3_6(m, n, j) if j is not None else None)
    rep.faces = count_faces_unit_columns(m, caps)
    if budget is not None and rep.faces > budget:
        log.info("skipping %s: %d faces over budget %d", spec.label(), rep.faces, budget)
        rep.skipped = True
        return rep
    K = multi_chessboard(spec)
    conn = homological_connectivity(K, ChainData(K))
    rep.hconn, rep.witness_dim = conn.hconn, conn.witness_dim
    return rep


def scan_grid(m_range: Iterable[int], n_range: Iterable[int], cap_range: Iterable[int],
              canonical: bool = True) -> Iterator[BoardSpec]:
    """Board specs with column caps 1 and row caps drawn from ``cap_range``.

    With ``canonical`` only non-increasing cap sequences are produced; row
    permutations give isomorphic complexes.
    """
    caps_vals = sorted(set(cap_range))
    for m in m_range:
        for n in n_range:
            for k in itertools.product(caps_vals, repeat=n):
                if canonical and list(k) != sorted(k, reverse=True):
                    continue
                if any(x > m for x in k):
                    continue
                yield BoardSpec.rook_caps(m, k)


def bound_scan(specs: Iterable[BoardSpec], budget: int | None = 200_000,
               workers: int = 1) -> list[BoundReport]:
    """Reports in input order; ``workers > 1`` spreads instances over processes."""
    specs = list(specs)
    if workers <= 1:
        return [bound_report(s, budget) for s in specs]
    with ProcessPoolExecutor(workers) as ex:
        return list(ex.map(bound_report, specs, itertools.repeat(budget)))


def render_tsv(reports: Sequence[BoundReport]) -> str:
    lines = ["\t".join(TSV_HEADER)]
    lines += ["\t".join(r.row()) for r in reports]
    return "\n".join(lines) + "\n"


def parse_range(text: str) -> range:
    """``"3..9"`` or ``"4"`` to an inclusive range."""
    if ".." in text:
        a, b = text.split("..", 1)
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def parse_grid(items: Sequence[str]) -> dict[str, range]:
    out = {}
    for item in items:
        key, _, val = item.partition("=")
        if key not in ("m", "n", "caps") or not val:
            raise ValueError(f"bad grid item {item!r}")
        out[key] = parse_range(val)
    missing = {"m", "n", "caps"} - set(out)
    if missing:
        raise ValueError(f"grid misses {sorted(missing)}")
    return out


__all__ = [
    "BoundReport", "bound_report", "bound_scan", "mu_krw", "mu_prop_3_6", "mu_theorem_3_2",
    "parse_grid", "prop_3_6_case", "render_tsv", "scan_grid", "two_one_j_rows",
]
