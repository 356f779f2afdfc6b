"""Exact rational sequence models for sequence-space criteria.

A GeometricTailSeq is a finite prefix followed by an optional geometric tail
whose terms cycle through a pattern of multipliers: tail entry j (0-based) is

    first * ratio**(j // len(pattern)) * pattern[j % len(pattern)].

Everything here runs in exact rational arithmetic (fractions.Fraction): the
hyperplane and constrainedness criteria are equalities and strict
inequalities, and a floating tolerance would make the verdicts
tolerance-dependent.  Coordinates are 1-based in all reports, matching the
usual sequence-space indexing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import norms
from .norms import Subspace


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10 ** 12)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


@dataclass(frozen=True, eq=False)
class GeometricTail:
    first: Fraction
    ratio: Fraction
    pattern: tuple

    def __post_init__(self):
        object.__setattr__(self, "first", _frac(self.first))
        object.__setattr__(self, "ratio", _frac(self.ratio))
        object.__setattr__(self, "pattern",
                           tuple(_frac(p) for p in self.pattern))
        if abs(self.ratio) >= 1:
            raise ValueError("tail ratio must satisfy |ratio| < 1")
        if not self.pattern:
            raise ValueError("tail pattern must be nonempty")


@dataclass(frozen=True, eq=False)
class GeometricTailSeq:
    prefix: tuple
    tail: GeometricTail | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefix",
                           tuple(_frac(p) for p in self.prefix))

    def coordinate(self, n: int) -> Fraction:
        """Value at 1-based position n."""
        if n < 1:
            raise ValueError("coordinates are 1-based")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        if self.tail is None:
            return Fraction(0)
        j = n - len(self.prefix) - 1
        length = len(self.pattern_)
        return self.tail.first * self.tail.ratio ** (j // length) * \
            self.pattern_[j % length]

    @property
    def pattern_(self) -> tuple:
        return self.tail.pattern if self.tail is not None else ()

    def is_zero(self) -> bool:
        if any(p != 0 for p in self.prefix):
            return False
        return self.tail is None or self.tail.first == 0 or \
            all(p == 0 for p in self.tail.pattern)


@dataclass(frozen=True, eq=False)
class SeqNorms:
    l1: Fraction
    linf: Fraction
    support_finite: bool


def seq_norms(seq: GeometricTailSeq) -> SeqNorms:
    """Exact 1-norm (prefix plus geometric closed form) and sup-norm.

    The sup over the tail is attained within its first pattern block because
    later blocks shrink by |ratio| < 1."""
    l1 = sum((abs(p) for p in seq.prefix), Fraction(0))
    linf = max((abs(p) for p in seq.prefix), default=Fraction(0))
    finite = True
    tail = seq.tail
    if tail is not None and tail.first != 0 and any(p != 0 for p in tail.pattern):
        finite = False
        block = sum((abs(p) for p in tail.pattern), Fraction(0))
        l1 += abs(tail.first) * block / (1 - abs(tail.ratio))
        linf = max(linf, abs(tail.first) * max(abs(p) for p in tail.pattern))
    return SeqNorms(l1, linf, finite)


def tail_mass_after(seq: GeometricTailSeq, n: int) -> Fraction:
    """Exact sum of |coordinates| strictly beyond position n."""
    mass = sum((abs(p) for p in seq.prefix[n:]), Fraction(0))
    tail = seq.tail
    if tail is None or tail.first == 0:
        return mass
    length = len(tail.pattern)
    j0 = max(0, n - len(seq.prefix))
    b0, m0 = divmod(j0, length)
    r = abs(tail.ratio)
    rest_of_block = sum((abs(p) for p in tail.pattern[m0:]), Fraction(0))
    full_blocks = sum((abs(p) for p in tail.pattern), Fraction(0))
    mass += abs(tail.first) * (r ** b0 * rest_of_block +
                               full_blocks * r ** (b0 + 1) / (1 - r))
    return mass


def partial_l1(seq: GeometricTailSeq, terms: int) -> Fraction:
    return sum((abs(seq.coordinate(k)) for k in range(1, terms + 1)), Fraction(0))


def attainment_coordinates(seq: GeometricTailSeq) -> list[tuple[int, bool]]:
    """1-based coordinates n with 2|s(n)| >= ||s||_1, flagged for equality.

    Only the prefix and the first tail block can attain, since later blocks
    are strictly smaller in magnitude."""
    sn = seq_norms(seq)
    out = []
    candidates = len(seq.prefix) + (len(seq.pattern_) if seq.tail else 0)
    for n in range(1, candidates + 1):
        doubled = 2 * abs(seq.coordinate(n))
        if doubled >= sn.l1:
            out.append((n, doubled == sn.l1))
    return out


@dataclass(frozen=True, eq=False)
class GcVerdict:
    holds: bool
    reason: str
    norms: SeqNorms


def c0_hyperplane_gc(seq: GeometricTailSeq) -> GcVerdict:
    """Center-existence criterion for the kernel hyperplane of a summable
    functional: it holds exactly when the support is finite or twice the
    sup-norm reaches the 1-norm.  Pure rational comparison."""
    if seq.is_zero():
        raise ValueError("functional must be nonzero")
    sn = seq_norms(seq)
    if sn.support_finite:
        return GcVerdict(True, "support is finite", sn)
    if 2 * sn.linf >= sn.l1:
        return GcVerdict(True, f"2*linf = {2 * sn.linf} >= l1 = {sn.l1}", sn)
    return GcVerdict(False,
                     f"2*linf = {2 * sn.linf} < l1 = {sn.l1} and support is infinite",
                     sn)


@dataclass(frozen=True, eq=False)
class ConstrainedCriterion:
    satisfied: bool
    assignment: tuple | None
    attainments: tuple
    note: str


def _distinct_assignment(options: list[list[int]]) -> tuple | None:
    used: set[int] = set()
    chosen: list[int] = []

    def backtrack(i: int) -> bool:
        if i == len(options):
            return True
        for n in options[i]:
            if n not in used:
                used.add(n)
                chosen.append(n)
                if backtrack(i + 1):
                    return True
                used.remove(n)
                chosen.pop()
        return False

    return tuple(chosen) if backtrack(0) else None


def c0_constrained_criterion(functionals: Sequence[GeometricTailSeq]
                             ) -> ConstrainedCriterion:
    """Sufficient condition for the common kernel to be constrained: each
    functional concentrates at least half of its 1-norm on one coordinate,
    and those coordinates can be chosen pairwise distinct.

    Attainment with equality (2|f(n)| = ||f||_1) is reported per functional.
    """
    attainments = []
    options = []
    for seq in functionals:
        if seq.is_zero():
            raise ValueError("functionals must be nonzero")
        att = attainment_coordinates(seq)
        attainments.append(tuple(att))
        options.append([n for n, _ in att])
    if any(not opts for opts in options):
        return ConstrainedCriterion(False, None, tuple(attainments),
                                    "some functional has no half-mass coordinate")
    assignment = _distinct_assignment(options)
    if assignment is None:
        return ConstrainedCriterion(False, None, tuple(attainments),
                                    "half-mass coordinates cannot be made distinct")
    return ConstrainedCriterion(True, assignment, tuple(attainments),
                                "distinct half-mass coordinates found")


# ---------------------------------------------------------------------------
# truncation bridges into the finite-dimensional modules

def truncate_functionals(functionals: Sequence[GeometricTailSeq], n: int
                         ) -> tuple[object, Subspace, list[Fraction]]:
    """Model the common kernel inside the first n coordinates: returns the
    sup-normed space, the truncated kernel subspace, and the exact tail mass
    beyond n for each functional (the caller's truncation error bound)."""
    functionals = list(functionals)
    if any(n < len(seq.prefix) for seq in functionals):
        raise ValueError("truncation keeps fewer coordinates than a prefix")
    rows = [[float(seq.coordinate(k)) for k in range(1, n + 1)]
            for seq in functionals]
    sub = norms.subspace_from_kernel(n, np.array(rows))
    masses = [tail_mass_after(seq, n) for seq in functionals]
    return norms.linf(n), sub, masses


def truncated_l1_lines(n: int) -> dict:
    """Finite model of the shifted-basis construction in the 1-norm space:
    the line span{e_1} plus the points (m-1) e_1 + e_m for 2 <= m <= n.

    The reachable set is the union of the lines e_m + span{e_1}; membership
    is by enumeration over the lines (the set is not a subspace).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    space = norms.l1(n)
    u = norms.subspace_from_basis(n, [np.eye(n)[0]])
    points = np.array([(m - 1) * np.eye(n)[0] + np.eye(n)[m - 1]
                       for m in range(2, n + 1)])
    directions = np.tile(np.eye(n)[0], (n - 1, 1))
    return {"space": space, "u": u, "v_points": points,
            "line_points": points, "line_directions": directions}


# ---------------------------------------------------------------------------
# JSON wire format (rationals as strings)

def seq_to_json(seq: GeometricTailSeq) -> dict:
    data: dict = {"prefix": [str(p) for p in seq.prefix]}
    if seq.tail is not None:
        data["tail"] = {"first": str(seq.tail.first),
                        "ratio": str(seq.tail.ratio),
                        "pattern": [str(p) for p in seq.tail.pattern]}
    else:
        data["tail"] = None
    return data


def seq_from_json(data: dict) -> GeometricTailSeq:
    tail = None
    if data.get("tail") is not None:
        t = data["tail"]
        tail = GeometricTail(Fraction(t["first"]), Fraction(t["ratio"]),
                             tuple(Fraction(p) for p in t["pattern"]))
    return GeometricTailSeq(tuple(Fraction(p) for p in data["prefix"]), tail)
