"""Finite groups with a central involution, given by multiplication tables.

Elements are the integers ``0..order-1`` and ``0`` is always the identity.
A :class:`GaloisFrame` stands in for the Galois group of a Galois CM field,
with ``conj`` playing the role of complex conjugation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

LEFT = "left"
RIGHT = "right"


class FrameError(ValueError):
    """Raised for malformed groups or a bad choice of conjugation."""


@dataclass(frozen=True)
class GaloisFrame:
    mul_table: tuple[tuple[int, ...], ...]
    conj: int
    # Serializable description ({"cyclic": n} or {"product": ..., "conj": ...});
    # None for frames built from an explicit table.
    spec: dict[str, Any] | None = field(default=None, compare=False, hash=False)
    labels: tuple[str, ...] | None = field(default=None, compare=False, hash=False)

    def __post_init__(self) -> None:
        table = self.mul_table
        n = len(table)
        if n == 0:
            raise FrameError("empty group")
        elements = set(range(n))
        for row in table:
            if len(row) != n or set(row) != elements:
                raise FrameError("multiplication table is not a Latin square")
        if any(table[0][x] != x or table[x][0] != x for x in range(n)):
            raise FrameError("element 0 must be the identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise FrameError(f"not associative at ({a}, {b}, {c})")
        c = self.conj
        if not 0 <= c < n:
            raise FrameError(f"conj {c} is not an element")
        if c == 0 or table[c][c] != 0:
            raise FrameError(f"conj {c} is not an involution")
        if any(table[c][x] != table[x][c] for x in range(n)):
            raise FrameError(f"conj {c} is not central")

    @property
    def order(self) -> int:
        return len(self.mul_table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.mul_table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def is_abelian(self) -> bool:
        t = self.mul_table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def __repr__(self) -> str:
        desc = self.spec if self.spec is not None else "table"
        return f"GaloisFrame(order={self.order}, conj={self.conj}, {desc})"


@dataclass(frozen=True)
class Subgroup:
    frame: GaloisFrame
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        members = set(self.elements)
        if 0 not in members:
            raise FrameError("subgroup must contain the identity")
        f = self.frame
        for a in self.elements:
            if f.inv(a) not in members:
                raise FrameError(f"subgroup not closed under inverse at {a}")
            for b in self.elements:
                if f.mul(a, b) not in members:
                    raise FrameError(f"subgroup not closed at ({a}, {b})")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.elements

    def is_trivial(self) -> bool:
        return self.elements == (0,)


def _cyclic_table(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def cyclic_frame(n: int) -> GaloisFrame:
    """Z/n with conjugation n/2 (the Galois group of a cyclic CM field)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2 or n % 2:
        raise FrameError(f"cyclic frame needs an even order >= 2, got {n!r}")
    return GaloisFrame(_cyclic_table(n), n // 2, spec={"cyclic": n})


def product_frame(*factors: int | GaloisFrame, conj: Sequence[int]) -> GaloisFrame:
    """Direct product of cyclic groups (given by order) and/or existing frames.

    Elements are numbered in mixed radix with the first factor most
    significant, so ``(e1, ..., ek)`` has index ``e1*n2*...*nk + ...``.
    ``conj`` gives one component index per factor.
    """
    if not factors:
        raise FrameError("product of no factors")
    tables = []
    for fac in factors:
        if isinstance(fac, GaloisFrame):
            tables.append(fac.mul_table)
        elif isinstance(fac, int) and not isinstance(fac, bool) and fac >= 1:
            tables.append(_cyclic_table(fac))
        else:
            raise FrameError(f"bad factor {fac!r}")
    sizes = [len(t) for t in tables]
    if len(conj) != len(sizes):
        raise FrameError("conj needs one component per factor")
    if any(not 0 <= c < s for c, s in zip(conj, sizes)):
        raise FrameError(f"conj {list(conj)} out of range")

    tuples = list(itertools.product(*(range(s) for s in sizes)))
    index = {t: i for i, t in enumerate(tuples)}
    table = tuple(
        tuple(index[tuple(t[a[k]][b[k]] for k, t in enumerate(tables))] for b in tuples)
        for a in tuples
    )
    spec = None
    if all(isinstance(f, int) for f in factors):
        spec = {"product": list(factors), "conj": list(conj)}
    labels = tuple("(" + ",".join(map(str, t)) + ")" for t in tuples)
    return GaloisFrame(table, index[tuple(conj)], spec=spec, labels=labels)


def product_index(sizes: Sequence[int], components: Sequence[int]) -> int:
    """Flat index of a tuple of components in a product frame."""
    idx = 0
    for size, comp in zip(sizes, components):
        if not 0 <= comp < size:
            raise FrameError(f"component {comp} out of range for Z/{size}")
        idx = idx * size + comp
    return idx


def frame_from_elements(
    elements: Iterable[Hashable],
    mul: Callable[[Any, Any], Any],
    conj: Hashable,
    identity: Hashable | None = None,
) -> GaloisFrame:
    """Build a frame from arbitrary element objects and a product function.

    The identity is found (or taken from ``identity``) and renumbered to 0;
    the other elements keep their relative order.
    """
    elems = list(elements)
    if len(set(elems)) != len(elems):
        raise FrameError("duplicate elements")
    if identity is None:
        candidates = [e for e in elems if all(mul(e, x) == x for x in elems)]
        if len(candidates) != 1:
            raise FrameError("could not find a unique identity")
        identity = candidates[0]
    elems.remove(identity)
    elems.insert(0, identity)
    index = {e: i for i, e in enumerate(elems)}
    try:
        table = tuple(tuple(index[mul(a, b)] for b in elems) for a in elems)
    except KeyError as exc:
        raise FrameError(f"product {exc} not among the elements") from None
    if conj not in index:
        raise FrameError("conj is not an element")
    return GaloisFrame(table, index[conj], labels=tuple(str(e) for e in elems))


def frame_from_table(table: Sequence[Sequence[int]], conj: int) -> GaloisFrame:
    """Frame from a raw table; renumbers so the identity comes first."""
    n = len(table)
    return frame_from_elements(range(n), lambda a, b: table[a][b], conj)


def translate(frame: GaloisFrame, subset: Iterable[int], g: int, side: str = LEFT) -> tuple[int, ...]:
    """``{g*x}`` (left) or ``{x*g}`` (right), sorted."""
    t = frame.mul_table
    if side == LEFT:
        return tuple(sorted(t[g][x] for x in subset))
    if side == RIGHT:
        return tuple(sorted(t[x][g] for x in subset))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def stabilizer(frame: GaloisFrame, subset: Iterable[int], side: str = LEFT) -> Subgroup:
    """Elements whose translation fixes ``subset`` setwise."""
    s = tuple(sorted(set(subset)))
    fixed = tuple(g for g in frame.elements if translate(frame, s, g, side) == s)
    return Subgroup(frame, fixed)


def _element_order(frame: GaloisFrame, a: int) -> int:
    k, x = 1, a
    while x != 0:
        x, k = frame.mul(x, a), k + 1
    return k


def automorphisms(frame: GaloisFrame) -> list[tuple[int, ...]]:
    """Automorphisms fixing ``conj``, as image tuples, by extending generator images.

    Meant for small frames: the cost is the product of the sizes of the
    order classes of a greedy generating set.
    """
    gens: list[int] = []
    span = {0}
    for a in frame.elements:
        if a in span:
            continue
        gens.append(a)
        span = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = frame.mul(g, x)
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    orders = [_element_order(frame, a) for a in frame.elements]
    candidates = [[b for b in frame.elements if orders[b] == orders[g]] for g in gens]
    out = []
    for images in itertools.product(*candidates):
        phi = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, img in zip(gens, images):
                y, fy = frame.mul(g, x), frame.mul(img, phi[x])
                if y in phi:
                    if phi[y] != fy:
                        ok = False
                        break
                else:
                    phi[y] = fy
                    frontier.append(y)
        if not ok or len(set(phi.values())) != frame.order or phi[frame.conj] != frame.conj:
            continue
        if all(phi[frame.mul(a, b)] == frame.mul(phi[a], phi[b]) for a in frame.elements for b in frame.elements):
            out.append(tuple(phi[a] for a in frame.elements))
    return out
