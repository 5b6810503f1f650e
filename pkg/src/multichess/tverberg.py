"""Exhaustive search for colored Tverberg partitions with exact certificates.

``r`` groups, at most ``p`` points of each color per group, convex hulls with
a common point. Feasibility of the hull intersection is decided by a phase-one
simplex over :class:`fractions.Fraction` with Bland's rule, so every witness
is exact and can be re-checked by substitution.
"""

from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

log = logging.getLogger(__name__)

Point = tuple  # tuple of Fractions


def _frac_point(pt) -> Point:
    out = []
    for x in pt:
        if isinstance(x, (list, tuple)):
            out.append(Fraction(int(x[0]), int(x[1])))
        else:
            out.append(Fraction(x))
    return tuple(out)


# -- exact LP feasibility ---------------------------------------------------


def feasible_point(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """A solution of ``A x = b, x >= 0`` or ``None``.

    Phase one of the simplex method with one artificial variable per row and
    Bland's rule (smallest index enters, smallest basic index leaves on ties).
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    if nrows == 0:
        return [Fraction(0)] * ncols
    T = []
    for i in range(nrows):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [Fraction(0)] * nrows
        art[i] = Fraction(1)
        T.append(row + art + [rhs])
    width = ncols + nrows
    basis = [ncols + i for i in range(nrows)]
    # objective: minimise the sum of artificials, kept as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for i in range(nrows):
        for j in range(width + 1):
            cost[j] -= T[i][j]
    for i in range(nrows):
        cost[ncols + i] += 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(nrows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # unbounded cannot happen in phase one
            raise ArithmeticError("phase one reported unbounded")
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(nrows):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, T[leave])]
        basis[leave] = enter
    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * ncols
    for i, j in enumerate(basis):
        if j < ncols:
            x[j] = T[i][-1]
    return x


@dataclass
class HullWitness:
    point: Point
    coefficients: list[list[Fraction]]  # per group, per point of the group


def hulls_intersect(groups: Sequence[Sequence[Sequence]]) -> HullWitness | None:
    """Common point of the convex hulls of ``groups``, or ``None``."""
    groups = [[_frac_point(p) for p in g] for g in groups]
    if not groups or any(not g for g in groups):
        raise ValueError("every group needs at least one point")
    d = len(groups[0][0])
    offsets, nvar = [], 0
    for g in groups:
        offsets.append(nvar)
        nvar += len(g)
    A, b = [], []
    for gi, g in enumerate(groups):
        row = [Fraction(0)] * nvar
        for s in range(len(g)):
            row[offsets[gi] + s] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    first = groups[0]
    for gi in range(1, len(groups)):
        g = groups[gi]
        for t in range(d):
            row = [Fraction(0)] * nvar
            for s, pt in enumerate(g):
                row[offsets[gi] + s] += pt[t]
            for s, pt in enumerate(first):
                row[s] -= pt[t]
            A.append(row)
            b.append(Fraction(0))
    x = feasible_point(A, b)
    if x is None:
        return None
    coeffs = [x[offsets[gi]:offsets[gi] + len(g)] for gi, g in enumerate(groups)]
    point = tuple(sum((lam * pt[t] for lam, pt in zip(coeffs[0], first)), Fraction(0)) for t in range(d))
    return HullWitness(point, coeffs)


def check_witness(groups, witness: HullWitness) -> bool:
    """Substitute the convex coefficients back and compare exactly."""
    groups = [[_frac_point(p) for p in g] for g in groups]
    if len(witness.coefficients) != len(groups):
        return False
    for g, lam in zip(groups, witness.coefficients):
        if len(lam) != len(g) or any(x < 0 for x in lam) or sum(lam) != 1:
            return False
        d = len(witness.point)
        combo = tuple(sum((l * pt[t] for l, pt in zip(lam, g)), Fraction(0)) for t in range(d))
        if combo != tuple(witness.point):
            return False
    return True


# -- instances --------------------------------------------------------------


def is_prime_power(r: int) -> bool:
    if r < 2:
        return False
    for q in range(2, r + 1):
        if r % q == 0:
            while r % q == 0:
                r //= q
            return r == 1
    return False


@dataclass
class TverbergInstance:
    d: int
    k: int
    r: int
    p: int
    colors: list[list[Point]]
    caps: tuple[int, ...] | None = None  # per-color caps; defaults to p for all

    def __post_init__(self):
        self.colors = [[_frac_point(pt) for pt in c] for c in self.colors]
        if len(self.colors) != self.k:
            raise ValueError("need one point list per color")
        for c in self.colors:
            for pt in c:
                if len(pt) != self.d:
                    raise ValueError("point of wrong dimension")
        if self.caps is None:
            self.caps = (self.p,) * self.k

    @property
    def class_size(self) -> int:
        return (self.p + 1) * self.r - 1

    @property
    def standard_sizes(self) -> bool:
        return all(len(c) == self.class_size for c in self.colors)

    @property
    def hypothesis(self) -> bool:
        return self.p * self.r * self.k >= (self.r - 1) * (self.d + 1) + 1

    @property
    def prime_power(self) -> bool:
        return is_prime_power(self.r)

    def as_dict(self) -> dict:
        return {"d": self.d, "k": self.k, "r": self.r, "p": self.p,
                "colors": [[[[x.numerator, x.denominator] for x in pt] for pt in c] for c in self.colors]}


def in_general_position(pts: Sequence[Point], d: int) -> bool:
    """No ``d + 1`` of the points are affinely dependent (and no repeats)."""
    if len(set(pts)) != len(pts):
        return False
    if d == 0:
        return True
    for combo in itertools.combinations(pts, d + 1):
        base = combo[0]
        M = [[x - y for x, y in zip(q, base)] for q in combo[1:]]
        if _det(M) == 0:
            return False
    return True


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [list(r) for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def random_instance(d: int, k: int, r: int, p: int, seed: int, grid: int = 64,
                    max_tries: int = 1000) -> TverbergInstance:
    """Colors of ``(p+1)r - 1`` points on ``{-grid..grid}^d / grid``, resampled
    until the whole configuration is in general position."""
    if k < 1 or r < 1 or p < 1 or d < 0:
        raise ValueError("parameters must be positive")
    rng = random.Random(seed)
    size = (p + 1) * r - 1
    for _ in range(max_tries):
        colors = [[tuple(Fraction(rng.randint(-grid, grid), grid) for _ in range(d))
                   for _ in range(size)] for _ in range(k)]
        flat = [pt for c in colors for pt in c]
        if d == 0 or in_general_position(flat, d):
            return TverbergInstance(d, k, r, p, colors)
    raise RuntimeError("could not sample a configuration in general position")


# -- search ---------------------------------------------------------------


@dataclass
class PartitionCertificate:
    groups: list[list[tuple[int, int]]]  # (color, index) per member
    witness: HullWitness

    def points(self, inst: TverbergInstance) -> list[list[Point]]:
        return [[inst.colors[c][i] for c, i in g] for g in self.groups]

    def as_dict(self) -> dict:
        return {
            "groups": [[list(x) for x in g] for g in self.groups],
            "witness": [[x.numerator, x.denominator] for x in self.witness.point],
            "coefficients": [[[x.numerator, x.denominator] for x in lam]
                             for lam in self.witness.coefficients],
        }


@dataclass
class SearchResult:
    status: str  # "found" | "exhausted" | "truncated"
    tested: int
    certificate: PartitionCertificate | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def verify_certificate(inst: TverbergInstance, cert: PartitionCertificate) -> bool:
    """Disjointness, per-color caps, nonempty groups and the exact witness."""
    if len(cert.groups) != inst.r or any(not g for g in cert.groups):
        return False
    members = [x for g in cert.groups for x in g]
    if len(members) != len(set(members)):
        return False
    for g in cert.groups:
        for c in range(inst.k):
            if sum(1 for cc, _ in g if cc == c) > inst.caps[c]:
                return False
    return check_witness(cert.points(inst), cert.witness)


def _point_order(inst: TverbergInstance) -> list[tuple[int, int]]:
    """Colors round-robin: first point of each color, then the second, ..."""
    longest = max((len(c) for c in inst.colors), default=0)
    return [(c, i) for i in range(longest) for c in range(inst.k) if i < len(inst.colors[c])]


def search_partition(inst: TverbergInstance, budget: int | None = 1_000_000,
                     maximal_only: bool = True) -> SearchResult:
    """First admissible partition whose hulls meet, in canonical enumeration order.

    Points go to groups ``0 .. r-1`` or stay unused; group labels appear in
    order of first use, which removes the relabelling symmetry (the least
    used point is always in the first group). Enlarging a group only enlarges
    its hull, so with ``maximal_only`` just the assignments that cannot take
    another point are tested; exhausting them exhausts all assignments.
    ``budget`` bounds the number of hull tests.
    """
    order = _point_order(inst)
    r, k = inst.r, inst.k
    caps = inst.caps
    sizes = [len(c) for c in inst.colors]
    spare = [s - min(s, caps[c] * r) for c, s in enumerate(sizes)]  # points that must stay unused
    count = [[0] * r for _ in range(k)]
    unused = [0] * k
    assign: list[int] = []
    tested = 0
    truncated = False

    def leaf():
        nonlocal tested, truncated
        groups: list[list[tuple[int, int]]] = [[] for _ in range(r)]
        for (c, i), g in zip(order, assign):
            if g >= 0:
                groups[g].append((c, i))
        if any(not g for g in groups):
            return None
        if budget is not None and tested >= budget:
            truncated = True
            return None
        tested += 1
        pts = [[inst.colors[c][i] for c, i in g] for g in groups]
        w = hulls_intersect(pts)
        if w is not None:
            return PartitionCertificate(groups, w)
        return None

    def rec(pos: int, used_groups: int):
        if truncated:
            return None
        if pos == len(order):
            return leaf()
        if used_groups + (len(order) - pos) < r:
            return None
        c, _ = order[pos]
        for g in range(min(used_groups + 1, r)):
            if count[c][g] >= caps[c]:
                continue
            count[c][g] += 1
            assign.append(g)
            res = rec(pos + 1, max(used_groups, g + 1))
            assign.pop()
            count[c][g] -= 1
            if res is not None or truncated:
                return res
        if not maximal_only or unused[c] < spare[c]:
            unused[c] += 1
            assign.append(-1)
            res = rec(pos + 1, used_groups)
            assign.pop()
            unused[c] -= 1
            if res is not None:
                return res
        return None

    cert = rec(0, 0)
    if cert is not None:
        return SearchResult("found", tested, cert)
    return SearchResult("truncated" if truncated else "exhausted", tested)


@dataclass
class TheoremStats:
    d: int
    k: int
    r: int
    p: int
    trials: int
    successes: int = 0
    tested_total: int = 0
    exhausted: list[dict] = field(default_factory=list)
    truncated: int = 0
    hypothesis: bool = True
    prime_power: bool = True

    @property
    def mean_tested(self) -> float:
        return self.tested_total / self.trials if self.trials else 0.0

    def as_dict(self) -> dict:
        return {"d": self.d, "k": self.k, "r": self.r, "p": self.p, "trials": self.trials,
                "successes": self.successes, "truncated": self.truncated,
                "mean_tested": self.mean_tested, "hypothesis": self.hypothesis,
                "prime_power": self.prime_power, "exhausted": self.exhausted}


def _trial(args):
    d, k, r, p, seed, budget = args
    inst = random_instance(d, k, r, p, seed)
    res = search_partition(inst, budget=budget)
    if res.found and not verify_certificate(inst, res.certificate):
        raise AssertionError("certificate failed re-verification")
    return inst, res


def verify_theorem(d: int, k: int, r: int, p: int, trials: int, seed: int,
                   budget: int | None = 1_000_000, workers: int = 1) -> TheoremStats:
    """Run the search on ``trials`` seeded random instances.

    Instance seeds are drawn from one generator seeded with ``seed``, so the
    statistics do not depend on ``workers``.
    """
    stats = TheoremStats(d, k, r, p, trials)
    stats.hypothesis = p * r * k >= (r - 1) * (d + 1) + 1
    stats.prime_power = is_prime_power(r)
    if not stats.hypothesis:
        log.warning("prk >= (r-1)(d+1)+1 fails for d=%d k=%d r=%d p=%d; exploring anyway", d, k, r, p)
    if not stats.prime_power:
        log.warning("r=%d is not a prime power; no guarantee applies", r)
    master = random.Random(seed)
    jobs = [(d, k, r, p, master.randrange(1 << 30), budget) for _ in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_trial, jobs))
    else:
        results = map(_trial, jobs)
    for inst, res in results:
        stats.tested_total += res.tested
        if res.found:
            stats.successes += 1
        elif res.status == "truncated":
            stats.truncated += 1
        else:
            stats.exhausted.append(inst.as_dict())
    return stats
