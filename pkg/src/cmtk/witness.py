"""Torsion-infinite Hodge class certificates on products A1^m x A2^n.

A witness records a weight ``alpha0`` of A1 and non-negative integers
``e_beta`` over the distinct weights of A2 with

    r * alpha0 + twist * chi = sum_beta e_beta * beta,

where ``chi`` is the norm character. Such a relation exhibits a Hodge class in
``H^r(A1^m)^v (x) H^s(A2^n)(twist)`` with ``s = sum e_beta``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

from .cmtypes import CMType, WeightSystem, norm_character
from .groups import GaloisFrame
from .lattice import FrameMismatch, Vector, qspan_contains, solve_rational


@dataclass(frozen=True)
class HodgeWitness:
    frame: GaloisFrame
    alpha0: Vector
    r: int
    s: int
    m: int
    n: int
    twist: int
    coeffs: tuple[tuple[Vector, int], ...]

    @property
    def w(self) -> int:
        return (self.r + self.s) // 2

    @property
    def descriptor(self) -> str:
        return f"H^{self.r}(A1^{self.m})^v ⊗ H^{self.s}(A2^{self.n})({self.twist})"

    def to_json(self) -> dict:
        return {
            "alpha0": list(self.alpha0),
            "r": self.r,
            "s": self.s,
            "m": self.m,
            "n": self.n,
            "twist": self.twist,
            "coeffs": [{"weight": list(b), "e": e} for b, e in self.coeffs],
        }

    @classmethod
    def from_json(cls, frame: GaloisFrame, data: dict) -> HodgeWitness:
        return cls(
            frame,
            tuple(int(x) for x in data["alpha0"]),
            int(data["r"]),
            int(data["s"]),
            int(data["m"]),
            int(data["n"]),
            int(data["twist"]),
            tuple((tuple(int(x) for x in c["weight"]), int(c["e"])) for c in data["coeffs"]),
        )


class Reason(str, enum.Enum):
    OK = "ok"
    FRAME = "frame_mismatch"
    SHAPE = "bad_shape"
    NONPOSITIVE = "nonpositive_degree"
    PARITY = "odd_total_degree"
    TWIST = "twist_mismatch"
    ALPHA0 = "alpha0_not_a_source_weight"
    SOURCE_BOUND = "r_exceeds_source_multiplicity"
    TARGET_WEIGHT = "coefficient_on_non_target_weight"
    NEGATIVE = "negative_coefficient"
    DEGREE = "coefficients_do_not_sum_to_s"
    TARGET_BOUND = "coefficient_exceeds_target_multiplicity"
    EQUATION = "weight_equation_fails"


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: Reason

    def __bool__(self) -> bool:
        return self.ok


def verify_witness(w: HodgeWitness, cm1: CMType, cm2: CMType) -> Verification:
    """Re-check every condition on ``w`` by exact integer arithmetic."""

    def fail(reason: Reason) -> Verification:
        return Verification(False, reason)

    frame = cm1.frame
    if w.frame != frame or cm2.frame != frame:
        return fail(Reason.FRAME)
    n_el = frame.order
    if len(w.alpha0) != n_el or any(len(b) != n_el for b, _ in w.coeffs):
        return fail(Reason.SHAPE)
    if min(w.r, w.s, w.m, w.n) < 1:
        return fail(Reason.NONPOSITIVE)
    if (w.r + w.s) % 2:
        return fail(Reason.PARITY)
    if w.twist != w.w - w.r:
        return fail(Reason.TWIST)
    src, tgt = cm1.weights, cm2.weights
    if tuple(w.alpha0) not in src.weights:
        return fail(Reason.ALPHA0)
    if w.r > w.m * src.multiplicity(w.alpha0):
        return fail(Reason.SOURCE_BOUND)
    totals: dict[Vector, int] = {}
    for beta, e in w.coeffs:
        if beta not in tgt.weights:
            return fail(Reason.TARGET_WEIGHT)
        if e < 0:
            return fail(Reason.NEGATIVE)
        totals[beta] = totals.get(beta, 0) + e
    if sum(totals.values()) != w.s:
        return fail(Reason.DEGREE)
    if any(e > w.n * tgt.multiplicity(b) for b, e in totals.items()):
        return fail(Reason.TARGET_BOUND)
    lhs = [w.r * a + w.twist for a in w.alpha0]
    rhs = [0] * n_el
    for beta, e in totals.items():
        for x, bx in enumerate(beta):
            rhs[x] += e * bx
    if lhs != rhs:
        return fail(Reason.EQUATION)
    return Verification(True, Reason.OK)


def exterior_support(ws: WeightSystem, r: int, m: int) -> set[Vector]:
    """Weights of the r-th exterior power of ``V^{+m}``, as a set.

    Each distinct weight ``beta`` may be used up to ``m * mult(beta)`` times.
    """
    items = ws.items()
    dim = ws.frame.order
    out: set[Vector] = set()

    def rec(i: int, left: int, acc: list[int]) -> None:
        if left == 0:
            out.add(tuple(acc))
            return
        if i == len(items):
            return
        beta, mult = items[i]
        for e in range(min(left, m * mult), -1, -1):
            nxt = [a + e * b for a, b in zip(acc, beta)] if e else acc
            rec(i + 1, left - e, nxt)

    if r >= 0:
        rec(0, r, [0] * dim)
    return out


def solve_nonneg(weights: Sequence[Vector], target: Sequence[int]) -> list[int] | None:
    """Lexicographically least ``e >= 0`` with ``sum e_i * weights[i] = target``.

    ``weights`` are 0/1 vectors. Bounded depth-first search: a weight's value
    is capped by the residual on its support and forced once it is the last
    weight covering some coordinate.
    """
    d = len(weights)
    dim = len(target)
    supports = [tuple(x for x in range(dim) if w[x]) for w in weights]
    last_cover = [-1] * dim
    for i, sup in enumerate(supports):
        for x in sup:
            last_cover[x] = i
    if any(target[x] and last_cover[x] < 0 for x in range(dim)):
        return None
    if any(t < 0 for t in target):
        return None
    closes = [[x for x in supports[i] if last_cover[x] == i] for i in range(d)]
    # Coordinates whose last covering weight index is < i must already be zero.
    closed_before = [[x for x in range(dim) if last_cover[x] < i] for i in range(d + 1)]
    failed: set[tuple[int, tuple[int, ...]]] = set()

    def rec(i: int, res: list[int]) -> list[int] | None:
        if any(res[x] for x in closed_before[i]):
            return None
        if i == d:
            return []
        key = (i, tuple(res))
        if key in failed:
            return None
        sup = supports[i]
        cap = min(res[x] for x in sup) if sup else 0
        forced = {res[x] for x in closes[i]}
        if len(forced) > 1:
            failed.add(key)
            return None
        choices: Iterator[int] = iter(forced) if forced else iter(range(cap + 1))
        for e in choices:
            if e > cap:
                continue
            if e:
                nxt = res.copy()
                for x in sup:
                    nxt[x] -= e
            else:
                nxt = res
            tail = rec(i + 1, nxt)
            if tail is not None:
                return [e] + tail
        failed.add(key)
        return None

    return rec(0, list(target))


class SearchStatus(str, enum.Enum):
    FOUND = "found"
    ABSENT = "proven_absent"
    EXHAUSTED = "bounds_exhausted"


@dataclass(frozen=True)
class WitnessSearch:
    status: SearchStatus
    witness: HodgeWitness | None
    max_r: int
    max_t: int

    def __bool__(self) -> bool:
        return self.witness is not None


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _build(cm1: CMType, cm2: CMType, alpha0: Vector, r: int, t: int, es: Sequence[int]) -> HodgeWitness:
    src, tgt = cm1.weights, cm2.weights
    coeffs = tuple((b, e) for b, e in zip(tgt.weights, es) if e)
    m = _ceil_div(r, src.multiplicity(alpha0))
    n = max((_ceil_div(e, tgt.multiplicity(b)) for b, e in coeffs), default=1)
    return HodgeWitness(cm1.frame, alpha0, r, sum(es), m, max(n, 1), t, coeffs)


def _check_frames(cm1: CMType, cm2: CMType) -> None:
    if cm1.frame != cm2.frame:
        raise FrameMismatch("CM types must share one Galois frame")


def find_witness(
    cm1: CMType, cm2: CMType, max_r: int | None = None, max_t: int | None = None
) -> WitnessSearch:
    """Smallest witness from ``cm1`` to ``cm2`` ordered by (r, twist, coefficients).

    ``alpha0`` is the weight attached to the identity element; every weight of
    ``cm1`` is a translate of it, so the minimal (r, twist) does not depend on
    this choice.
    """
    _check_frames(cm1, cm2)
    order = cm1.frame.order
    max_r = order if max_r is None else max_r
    max_t = order if max_t is None else max_t
    if not qspan_contains(cm2.lattice, cm1.lattice):
        return WitnessSearch(SearchStatus.ABSENT, None, max_r, max_t)
    alpha0 = cm1.weights.weights[0]
    chi = norm_character(cm1.frame)
    target_lattice = cm2.lattice
    for r in range(1, max_r + 1):
        scaled = tuple(r * a for a in alpha0)
        # chi lies in the target lattice, so r*alpha0 must too.
        if scaled not in target_lattice:
            continue
        for t in range(0, max_t + 1):
            es = solve_nonneg(cm2.weights.weights, [a + t * c for a, c in zip(scaled, chi)])
            if es is not None:
                return WitnessSearch(SearchStatus.FOUND, _build(cm1, cm2, alpha0, r, t, es), max_r, max_t)
    return WitnessSearch(SearchStatus.EXHAUSTED, None, max_r, max_t)


def witness_from_rational_solution(cm1: CMType, cm2: CMType, alpha0: Vector | None = None) -> HodgeWitness:
    """Constructive witness: solve over Q, flip negative terms, clear denominators.

    A negative multiple of a weight ``beta`` is rewritten with the conjugate
    weight ``chi - beta`` and a compensating multiple of ``chi``. Follows the
    generous choice ``m = r`` and ``n = s``.
    """
    _check_frames(cm1, cm2)
    if not qspan_contains(cm2.lattice, cm1.lattice):
        raise ValueError("source lattice is not in the rational span of the target")
    src, tgt = cm1.weights, cm2.weights
    alpha0 = src.weights[0] if alpha0 is None else tuple(alpha0)
    if alpha0 not in src.weights:
        raise ValueError("alpha0 is not a weight of the source CM type")
    if alpha0 in tgt.weights:
        coeffs = [Fraction(int(b == alpha0)) for b in tgt.weights]
    else:
        coeffs = solve_rational(cm2.lattice, alpha0)
        assert coeffs is not None
    chi = norm_character(cm1.frame)
    pos = {b: Fraction(0) for b in tgt.weights}
    c_chi = Fraction(0)
    for beta, c in zip(tgt.weights, coeffs):
        if c >= 0:
            pos[beta] += c
        else:
            conj = tuple(x - y for x, y in zip(chi, beta))
            pos[conj] -= c
            c_chi -= c
    denom = lcm(c_chi.denominator, *(c.denominator for c in pos.values()))
    es = [int(pos[b] * denom) for b in tgt.weights]
    r, t, s = denom, int(c_chi * denom), sum(es)
    coeff_items = tuple((b, e) for b, e in zip(tgt.weights, es) if e)
    return HodgeWitness(cm1.frame, alpha0, r, s, r, s, t, coeff_items)
