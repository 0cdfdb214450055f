"""Exact integer lattices inside the group ring Z[G].

A vector of Z[G] is a plain tuple of Python ints indexed by group element.
Everything here is arbitrary precision; no floating point is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

from .groups import GaloisFrame

Vector = tuple[int, ...]
Matrix = list[list[int]]


class FrameMismatch(ValueError):
    """Two objects that must live over the same frame do not."""


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, all di >= 2."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free_rank must be non-negative")
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ValueError(f"invariant factors must be >= 2, got {list(t)}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {list(t)}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int], free_rank: int = 0) -> FgAbelianGroup:
        """Canonicalize an arbitrary list of cyclic orders (0 means Z)."""
        diag = [abs(d) for d in diagonal]
        free_rank += diag.count(0)
        # Normalize to a divisibility chain via pairwise gcd/lcm.
        factors = [d for d in diag if d > 1]
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                g = gcd(a, b)
                factors[i], factors[j] = g, a * b // g
        return cls(free_rank, tuple(d for d in factors if d > 1))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> FgAbelianGroup:
        return cls(int(data["free_rank"]), tuple(int(d) for d in data.get("torsion", [])))

    def __str__(self) -> str:
        parts = [f"(Z/{d})" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def _hnf_in_place(A: Matrix, ncols: int) -> int:
    """Row-reduce ``A`` to Hermite normal form on its first ``ncols`` columns.

    Works with unimodular row operations only; returns the number of pivot rows.
    Rows below the returned count are zero on the first ``ncols`` columns.
    """
    m = len(A)
    r = 0
    for j in range(ncols):
        if r == m:
            break
        while True:
            nz = [k for k in range(r, m) if A[k][j]]
            if not nz:
                break
            p = min(nz, key=lambda k: abs(A[k][j]))
            A[r], A[p] = A[p], A[r]
            piv = A[r][j]
            done = True
            for k in range(r + 1, m):
                if A[k][j]:
                    q = A[k][j] // piv
                    rowk, rowr = A[k], A[r]
                    for c in range(j, len(rowk)):
                        rowk[c] -= q * rowr[c]
                    if rowk[j]:
                        done = False
            if done:
                break
        if r < m and A[r][j]:
            if A[r][j] < 0:
                A[r] = [-x for x in A[r]]
            piv = A[r][j]
            rowr = A[r]
            for k in range(r):
                q = A[k][j] // piv
                if q:
                    rowk = A[k]
                    for c in range(j, len(rowk)):
                        rowk[c] -= q * rowr[c]
            r += 1
    return r


def hermite_form(rows: Iterable[Sequence[int]]) -> Matrix:
    """Canonical row Hermite normal form of the Z-span of ``rows``.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    Zero rows are dropped, so the result is a basis of the lattice.
    """
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    n = len(A[0])
    if any(len(r) != n for r in A):
        raise ValueError("rows have different lengths")
    rank = _hnf_in_place(A, n)
    return A[:rank]


def hermite_form_with_transform(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Return ``(H, U)`` with ``H = U * rows`` and ``U`` integral.

    ``H`` is the same basis :func:`hermite_form` returns; ``U`` has one row per
    row of ``H``. Used to certify that the HNF rows lie in the original span.
    """
    A = [list(map(int, r)) for r in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    aug = [A[i] + [int(i == k) for k in range(m)] for i in range(m)]
    rank = _hnf_in_place(aug, n)
    return [row[:n] for row in aug[:rank]], [row[n:] for row in aug[:rank]]


def integer_left_kernel(rows: Sequence[Sequence[int]]) -> Matrix:
    """A Z-basis of ``{x in Z^m : x * rows = 0}``."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [list(map(int, rows[i])) + [int(i == k) for k in range(m)] for i in range(m)]
    rank = _hnf_in_place(aug, n)
    return hermite_form(row[n:] for row in aug[rank:])


def smith_invariants(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> FgAbelianGroup:
    """Cokernel ``Z^ncols / rowspan(matrix)`` as a finitely generated abelian group."""
    D = [list(map(int, r)) for r in matrix]
    if ncols is None:
        if not D:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(D[0])
    if any(len(r) != ncols for r in D):
        raise ValueError("rows have different lengths")
    m, n = len(D), ncols
    diag = []
    t = 0
    while t < min(m, n):
        # Move the smallest nonzero entry of the remaining block to (t, t).
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        D[t], D[i] = D[i], D[t]
        for row in D:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // piv
                if q:
                    for c in range(t, n):
                        D[i][c] -= q * D[t][c]
                if D[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = D[t][j] // piv
                if q:
                    for r in range(t, m):
                        D[r][j] -= q * D[r][t]
                if D[t][j]:
                    dirty = True
            if not dirty:
                break
            entries = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
            entries += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
            _, i, j = min(entries)
            D[t], D[i] = D[i], D[t]
            for row in D:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(D[t][t]))
        t += 1
    return FgAbelianGroup.from_diagonal(diag, free_rank=n - len(diag))


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hermite_form(rows))


def _solve_fraction(columns: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction] | None:
    """One solution of ``sum_i c_i * columns[i] = target`` over Q, or None.

    Free variables are set to zero.
    """
    k = len(columns)
    n = len(target)
    # Augmented system: n equations, k unknowns.
    M = [[Fraction(columns[i][x]) for i in range(k)] + [Fraction(target[x])] for x in range(n)]
    pivots = []
    r = 0
    for j in range(k):
        p = next((i for i in range(r, n) if M[i][j] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][j]
        M[r] = [v * inv for v in M[r]]
        for i in range(n):
            if i != r and M[i][j] != 0:
                f = M[i][j]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == n:
            break
    if any(M[i][k] != 0 for i in range(r, n)):
        return None
    sol = [Fraction(0)] * k
    for i, j in enumerate(pivots):
        sol[j] = M[i][k]
    return sol


@dataclass(frozen=True)
class CharLattice:
    """Z-span of ``generators`` inside Z[G] for the given frame."""

    frame: GaloisFrame
    generators: tuple[Vector, ...]

    def __post_init__(self) -> None:
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        n = self.frame.order
        if any(len(g) != n for g in gens):
            raise ValueError(f"generators must have length {n}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def zero(cls, frame: GaloisFrame) -> CharLattice:
        return cls(frame, ())

    @cached_property
    def hnf(self) -> tuple[Vector, ...]:
        return tuple(tuple(r) for r in hermite_form(self.generators))

    @property
    def rank(self) -> int:
        return len(self.hnf)

    @property
    def dimension(self) -> int:
        return self.frame.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharLattice):
            return NotImplemented
        return self.frame == other.frame and self.hnf == other.hnf

    def __hash__(self) -> int:
        return hash(self.hnf)

    def __contains__(self, vec: Sequence[int]) -> bool:
        return self.coordinates(vec) is not None

    def coordinates(self, vec: Sequence[int]) -> list[int] | None:
        """Integer coordinates of ``vec`` in the HNF basis, or None if not in the lattice."""
        if len(vec) != self.dimension:
            raise ValueError(f"vector must have length {self.dimension}")
        v = list(vec)
        coords = []
        for row in self.hnf:
            j = next(c for c, x in enumerate(row) if x)
            if any(v[:j]):
                return None
            q, rem = divmod(v[j], row[j])
            if rem:
                return None
            coords.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return coords if not any(v) else None

    def _check(self, other: CharLattice) -> None:
        if self.frame != other.frame:
            raise FrameMismatch("lattices live over different frames")

    def scaled(self, k: int) -> CharLattice:
        return CharLattice(self.frame, tuple(tuple(k * x for x in row) for row in self.hnf))

    def __add__(self, other: CharLattice) -> CharLattice:
        return lattice_sum(self, other)

    def __and__(self, other: CharLattice) -> CharLattice:
        return lattice_intersection(self, other)

    def contains_lattice(self, other: CharLattice) -> bool:
        self._check(other)
        return all(row in self for row in other.hnf)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.hnf]


def lattice_sum(a: CharLattice, b: CharLattice) -> CharLattice:
    a._check(b)
    return CharLattice(a.frame, a.hnf + b.hnf)


def lattice_intersection(a: CharLattice, b: CharLattice) -> CharLattice:
    """Exact intersection from the integer kernel of the stacked bases."""
    a._check(b)
    A, B = a.hnf, b.hnf
    if not A or not B:
        return CharLattice.zero(a.frame)
    kernel = integer_left_kernel(list(A) + list(B))
    n = a.dimension
    gens = []
    for x in kernel:
        gens.append(tuple(sum(x[i] * A[i][c] for i in range(len(A))) for c in range(n)))
    return CharLattice(a.frame, tuple(gens))


# Comparisons depend only on the HNF bases, so they are memoized on them;
# translated CM types share lattices and hit the cache.
@lru_cache(maxsize=65536)
def _qspan_contains(outer: tuple[Vector, ...], inner: tuple[Vector, ...]) -> bool:
    return len(hermite_form(outer + inner)) == len(outer)


def qspan_contains(outer: CharLattice, inner: CharLattice) -> bool:
    """True iff ``inner`` lies in the rational span of ``outer``."""
    outer._check(inner)
    return _qspan_contains(outer.hnf, inner.hnf)


@lru_cache(maxsize=65536)
def _quotient(num_hnf: tuple[Vector, ...], den_hnf: tuple[Vector, ...], frame: GaloisFrame) -> FgAbelianGroup:
    num = CharLattice(frame, num_hnf)
    inter = lattice_intersection(num, CharLattice(frame, den_hnf))
    rows = []
    for v in inter.hnf:
        coords = num.coordinates(v)
        assert coords is not None, "intersection escaped the numerator"
        rows.append(coords)
    return smith_invariants(rows, ncols=num.rank)


def quotient_group(num: CharLattice, den: CharLattice) -> FgAbelianGroup:
    """Invariants of ``num / (num ∩ den)``."""
    num._check(den)
    return _quotient(num.hnf, den.hnf, num.frame)


def solve_rational(lattice: CharLattice, target: Sequence[int]) -> list[Fraction] | None:
    """Rational coefficients expressing ``target`` over ``lattice.generators``."""
    if len(target) != lattice.dimension:
        raise FrameMismatch(f"target must have length {lattice.dimension}")
    return _solve_fraction(lattice.generators, target)
