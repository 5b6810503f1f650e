"""Regression fixtures for the published claims, run by ``multichess report``.

Each fixture names the claim it checks, the expected value as published and
the observed value. A mismatch is reported, never patched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .boards import BoardSpec, bier_sphere, multi_chessboard, uniform_chessboard
from .complex import euler_characteristic, f_vector, full_skeleton
from .homology import ChainData, homological_connectivity, homology
from .shelling import (
    ShellingCertificate,
    Violation,
    certify_board,
    lex_order,
    tuple_to_face,
    verify_shelling,
    wedge_summary,
)
from .tverberg import verify_theorem


@dataclass
class FixtureResult:
    name: str
    claim: str
    expected: Any
    observed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def as_dict(self) -> dict:
        return {"name": self.name, "claim": self.claim, "expected": self.expected,
                "observed": self.observed, "passed": self.passed}


_cache: dict = {}


def _d73():
    if "d73" not in _cache:
        K = uniform_chessboard(7, 3, 2, 1)
        _cache["d73"] = (K, ChainData(K))
    return _cache["d73"]


def _chi_d73():
    K, _ = _d73()
    return euler_characteristic(K)


def _betti_d73():
    K, cd = _d73()
    return [cd.group(i)[0] for i in range(0, K.dim + 1)]


def _hconn_d73():
    K, cd = _d73()
    return homological_connectivity(K, cd).hconn


def _cylinder():
    K = uniform_chessboard(3, 2, 2, 1)
    H = homology(K)
    return {"f": list(f_vector(K)), "chi": euler_characteristic(K), "S1": H.is_sphere_like(1)}


def _sphere(m, n, p, q, d):
    return lambda: homology(uniform_chessboard(m, n, p, q)).is_sphere_like(d)


def _bier(m, p):
    def run():
        B = bier_sphere(full_skeleton(m, p), m)
        D = multi_chessboard(BoardSpec(m, 2, (p, m - p - 1), (1,) * m))
        return B.facets == D.facets and homology(B).is_sphere_like(m - 2)
    return run


def _lex_violation(m):
    def run():
        res = verify_shelling(None, [tuple_to_face(A, m) for A in lex_order(m, (1, 1))])
        if not isinstance(res, Violation):
            return None
        return [[c, r + 1] for r, c in ((v // m, v % m + 1) for v in res.facet)]
    return run


def _shelling_wedge():
    cert = certify_board(5, (2, 2))
    if not isinstance(cert, ShellingCertificate):
        return None
    return wedge_summary(cert)


def _tverberg_small():
    s = verify_theorem(2, 1, 2, 2, trials=20, seed=0)
    return s.successes


FIXTURES: list[tuple[str, str, Any, Callable[[], Any]]] = [
    ("chi-7x3-caps2", "Euler characteristic of the 7x3 board, row caps 2, column caps 1", 147, _chi_d73),
    ("betti-7x3-caps2", "reduced Betti numbers (dims 0..5) of the same complex",
     [0, 0, 0, 0, 147, 1], _betti_d73),
    ("hconn-7x3-caps2", "3-connected but not 4-connected (homological part)", 3, _hconn_d73),
    ("cylinder-3x2", "3x2 board with row caps 2 is a cylinder cut into 6 triangles",
     {"f": [6, 12, 6], "chi": 0, "S1": True}, _cylinder),
    ("sphere-4x2", "4x2 board with row caps 2 has the homology of S^2", True, _sphere(4, 2, 2, 1, 2)),
    ("sphere-5x2", "5x2 board with row caps 2 has the homology of S^3", True, _sphere(5, 2, 2, 1, 3)),
    ("sphere-3x2-caps22", "3x2 board with row and column caps 2 is a 3-sphere", True, _sphere(3, 2, 2, 2, 3)),
    ("bier-5-2", "Bier sphere of the 2-element skeleton on [5] equals the (2,2) board", True, _bier(5, 2)),
    ("lex-violation-4x2", "lexicographic order on the 4x2 board fails at {(2,1),(1,2)}",
     [[2, 1], [1, 2]], _lex_violation(4)),
    ("shelling-5x2-caps2", "the facet order shells the 5x2 board, one spanning facet", 1, _shelling_wedge),
    ("tverberg-planar-radon", "five planar points always split into two intersecting groups", 20, _tverberg_small),
]


def report_paper_fixtures(names: list[str] | None = None) -> list[FixtureResult]:
    out = []
    for name, claim, expected, fn in FIXTURES:
        if names and name not in names:
            continue
        out.append(FixtureResult(name, claim, expected, fn()))
    return out


def render_table(results: list[FixtureResult]) -> str:
    width = max(len(r.name) for r in results) if results else 4
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name:<{width}}  expected={r.expected!r} observed={r.observed!r}")
        if not r.passed:
            lines.append(f"      claim: {r.claim}")
    return "\n".join(lines) + "\n"
