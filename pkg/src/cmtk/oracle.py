"""Brute-force cross-checks, written independently of :mod:`cmtk.lattice`.

The reference computations (rational row reduction, determinantal divisors,
coefficient-box enumeration) share no code with the routines they check.
They are slow and meant for tiny inputs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from . import lattice
from .lattice import CharLattice, FgAbelianGroup


def rref(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Reduced row echelon form over Q, zero rows dropped."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return []
    n = len(M[0])
    r = 0
    for j in range(n):
        p = next((i for i in range(r, len(M)) if M[i][j]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][j]
        M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][j]:
                f = M[i][j]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return M[:r]


def rank_q(rows: Sequence[Sequence[int]]) -> int:
    return len(rref(rows))


def coords_in_independent(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Unique rational coordinates of ``v`` over a linearly independent ``basis``."""
    k = len(basis)
    if k == 0:
        return [] if not any(v) else None
    # Solve x * basis = v: columns of the transposed system.
    aug = [[Fraction(basis[i][c]) for i in range(k)] + [Fraction(v[c])] for c in range(len(v))]
    red = rref(aug)
    if any(all(x == 0 for x in row[:k]) and row[k] != 0 for row in red):
        return None
    sol = [Fraction(0)] * k
    for row in red:
        j = next(i for i, x in enumerate(row[:k]) if x)
        sol[j] = row[k]
    if [sum(sol[i] * basis[i][c] for i in range(k)) for c in range(len(v))] != list(v):
        return None
    return sol


def in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership in the Z-span of an independent basis, via rational coordinates."""
    sol = coords_in_independent(basis, v)
    return sol is not None and all(x.denominator == 1 for x in sol)


def _det(M: Sequence[Sequence[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = sign
        for i in range(n):
            prod *= M[i][perm[i]]
        total += prod
    return total


def invariants_by_minors(matrix: Sequence[Sequence[int]], ncols: int) -> FgAbelianGroup:
    """Cokernel invariants from determinantal divisors (gcd of all k x k minors)."""
    m = len(matrix)
    divisors = [1]
    for k in range(1, min(m, ncols) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(ncols), k):
                g = gcd(g, _det([[matrix[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        divisors.append(g)
    rank = len(divisors) - 1
    factors = [divisors[k] // divisors[k - 1] for k in range(1, rank + 1)]
    return FgAbelianGroup(ncols - rank, tuple(f for f in factors if f > 1))


def hnf_shape_ok(H: Sequence[Sequence[int]]) -> bool:
    """Echelon, positive pivots, entries above pivots reduced into [0, pivot)."""
    last = -1
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz or nz[0] <= last or row[nz[0]] <= 0:
            return False
        j = nz[0]
        if any(not 0 <= H[k][j] < row[j] for k in range(i)):
            return False
        last = j
    return True


def check_hnf(rows: Sequence[Sequence[int]]) -> bool:
    """HNF is canonical, spans the same lattice, and agrees with Q row reduction."""
    H, U = lattice.hermite_form_with_transform(rows)
    if H != lattice.hermite_form(rows) or not hnf_shape_ok(H):
        return False
    n = len(rows[0]) if rows else 0
    # H = U * rows with U integral: HNF rows lie in the original lattice.
    for h, u in zip(H, U):
        if [sum(u[i] * rows[i][c] for i in range(len(rows))) for c in range(n)] != h:
            return False
    # Original rows are integral combinations of the HNF rows.
    if not all(in_lattice(H, r) for r in rows):
        return False
    return rref(H) == rref(rows) and lattice.hermite_form(H) == H


def check_snf(matrix: Sequence[Sequence[int]], ncols: int) -> bool:
    return lattice.smith_invariants(matrix, ncols) == invariants_by_minors(matrix, ncols)


def box_vectors(basis: Sequence[Sequence[int]], bound: int) -> set[tuple[int, ...]]:
    """All combinations of ``basis`` with coefficients in ``[-bound, bound]``."""
    n = len(basis[0]) if basis else 0
    out = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(basis)):
        out.add(tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(n)))
    return out


def check_sum_intersection(a: CharLattice, b: CharLattice, bound: int = 3) -> bool:
    s, i = a + b, a & b
    A, B = a.hnf, b.hnf
    # Every computed basis vector lies where it should.
    if not all(in_lattice(A, v) and in_lattice(B, v) for v in i.hnf):
        return False
    # The sum is the HNF of the stacked bases; certify that reduction.
    if (A or B) and not check_hnf(list(A + B)):
        return False
    if not all(in_lattice(s.hnf, v) for v in A + B):
        return False
    # Short vectors of a that also lie in b must lie in the computed intersection.
    for v in box_vectors(A, bound):
        if in_lattice(B, v) and not in_lattice(i.hnf, v) and any(v):
            return False
    return rank_q(list(s.hnf)) + rank_q(list(i.hnf)) == rank_q(A) + rank_q(B)


@dataclass(frozen=True)
class OracleResult:
    name: str
    cases: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def random_matrix(rng: random.Random, max_rows: int = 3, max_cols: int = 3, bound: int = 3) -> list[list[int]]:
    m, n = rng.randint(1, max_rows), rng.randint(1, max_cols)
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def run_oracles(seed: int = 0, cases: int = 200) -> list[OracleResult]:
    """Randomized HNF/SNF/lattice checks plus exhaustive CM checks on small frames."""
    from .catalog import small_frames
    from .groups import cyclic_frame
    from .cmtypes import classify_cm_types
    from .verdict import decide_cm_pair
    from .witness import SearchStatus, find_witness, verify_witness

    rng = random.Random(seed)
    results = []

    def run(name: str, count: int, check: Callable[[], bool]) -> None:
        failures = sum(0 if check() else 1 for _ in range(count))
        results.append(OracleResult(name, count, failures))

    def hnf_case() -> bool:
        return check_hnf(random_matrix(rng))

    def snf_case() -> bool:
        M = random_matrix(rng)
        return check_snf(M, len(M[0]))

    frame4 = cyclic_frame(4)

    def lattice_case() -> bool:
        a = CharLattice(frame4, [[rng.randint(-2, 2) for _ in range(4)] for _ in range(rng.randint(1, 2))])
        b = CharLattice(frame4, [[rng.randint(-2, 2) for _ in range(4)] for _ in range(rng.randint(1, 2))])
        return check_sum_intersection(a, b, bound=2)

    run("hnf_vs_rational_reduction", cases, hnf_case)
    run("snf_vs_determinantal_divisors", cases, snf_case)
    run("sum_intersection_vs_enumeration", max(1, cases // 10), lattice_case)

    # Witness search against the lattice verdict on every small frame.
    failures = total = 0
    for _, frame in small_frames():
        reps = [c.representative for c in classify_cm_types(frame)]
        for cm1 in reps:
            for cm2 in reps:
                total += 1
                verdict, _ = decide_cm_pair(cm1, cm2)
                search = find_witness(cm1, cm2)
                found = search.status is SearchStatus.FOUND
                if found != verdict.torsion_infinite:
                    failures += 1
                elif found and not verify_witness(search.witness, cm1, cm2):
                    failures += 1
    results.append(OracleResult("witness_iff_qspan_inclusion", total, failures))
    return results
