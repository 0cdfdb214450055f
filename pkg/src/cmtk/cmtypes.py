"""CM types on a Galois frame, their weight systems and Mumford-Tate lattices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .groups import LEFT, RIGHT, GaloisFrame, Subgroup, automorphisms, stabilizer, translate
from .lattice import CharLattice, Vector


class CMTypeError(ValueError):
    """The given subset is not a CM type of the frame."""


@dataclass(frozen=True)
class CMType:
    frame: GaloisFrame
    phi: tuple[int, ...]

    def __post_init__(self) -> None:
        phi = tuple(sorted(set(self.phi)))
        if len(phi) != len(self.phi):
            raise CMTypeError(f"repeated elements in {list(self.phi)}")
        object.__setattr__(self, "phi", phi)
        f = self.frame
        if any(not 0 <= x < f.order for x in phi):
            raise CMTypeError(f"elements of {list(phi)} out of range for order {f.order}")
        conj_phi = set(translate(f, phi, f.conj))
        if conj_phi & set(phi) or len(phi) * 2 != f.order:
            raise CMTypeError(f"{list(phi)} and its conjugate do not partition the group")

    @property
    def g(self) -> int:
        return len(self.phi)

    @property
    def complement(self) -> tuple[int, ...]:
        return translate(self.frame, self.phi, self.frame.conj)

    def translated(self, sigma: int, side: str = LEFT) -> CMType:
        return CMType(self.frame, translate(self.frame, self.phi, sigma, side))

    @cached_property
    def weights(self) -> WeightSystem:
        return weight_system(self)

    @cached_property
    def lattice(self) -> CharLattice:
        return CharLattice(self.frame, self.weights.weights)

    def __repr__(self) -> str:
        return f"CMType({list(self.phi)}, order={self.frame.order})"


def make_cm_type(frame: GaloisFrame, phi: Iterable[int]) -> CMType:
    return CMType(frame, tuple(phi))


def conjugate_pairs(frame: GaloisFrame) -> list[tuple[int, int]]:
    """``(x, c*x)`` with ``x < c*x``, ordered by ``x``."""
    c = frame.conj
    return [(x, frame.mul(c, x)) for x in frame.elements if x < frame.mul(c, x)]


def enumerate_cm_types(frame: GaloisFrame) -> list[CMType]:
    """All ``2**(order/2)`` CM types, in lexicographic order of their element lists."""
    pairs = conjugate_pairs(frame)
    out = [CMType(frame, tuple(choice)) for choice in itertools.product(*pairs)]
    out.sort(key=lambda cm: cm.phi)
    return out


@dataclass(frozen=True)
class CMClass:
    representative: CMType
    members: tuple[CMType, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def classify_cm_types(frame: GaloisFrame, side: str = LEFT, up_to_automorphism: bool = False) -> list[CMClass]:
    """Orbits of CM types under translation, sorted by representative.

    With ``up_to_automorphism`` the orbits are also closed under automorphisms
    of the frame fixing ``conj``. The representative is the lexicographically
    least member.
    """
    autos = automorphisms(frame) if up_to_automorphism else [tuple(frame.elements)]
    seen: set[tuple[int, ...]] = set()
    classes = []
    for cm in enumerate_cm_types(frame):
        if cm.phi in seen:
            continue
        images = {tuple(sorted(a[x] for x in cm.phi)) for a in autos}
        orbit = sorted({translate(frame, p, s, side) for p in images for s in frame.elements})
        seen.update(orbit)
        classes.append(CMClass(CMType(frame, orbit[0]), tuple(CMType(frame, p) for p in orbit)))
    return classes


def is_primitive(cm: CMType) -> bool:
    return stabilizer(cm.frame, cm.phi, RIGHT).is_trivial()


def reflex_group(cm: CMType) -> Subgroup:
    """Left setwise stabilizer of the CM type; its fixed field is the reflex field."""
    return stabilizer(cm.frame, cm.phi, LEFT)


def indicator(frame: GaloisFrame, subset: Iterable[int]) -> Vector:
    v = [0] * frame.order
    for x in subset:
        v[x] = 1
    return tuple(v)


def norm_character(frame: GaloisFrame) -> Vector:
    """The sum of all group elements in Z[G]."""
    return (1,) * frame.order


@dataclass(frozen=True)
class WeightSystem:
    """Distinct weights with multiplicities, in order of first appearance."""

    frame: GaloisFrame
    weights: tuple[Vector, ...]
    multiplicities: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.weights)

    def multiplicity(self, weight: Vector) -> int:
        try:
            return self.multiplicities[self.weights.index(tuple(weight))]
        except ValueError:
            return 0

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    def items(self) -> list[tuple[Vector, int]]:
        return list(zip(self.weights, self.multiplicities))


def weight_system(cm: CMType) -> WeightSystem:
    """Weights ``sigma * Phi^{-1}`` for every sigma, as 0/1 vectors."""
    f = cm.frame
    phi_inv = [f.inv(x) for x in cm.phi]
    counts: dict[Vector, int] = {}
    for sigma in f.elements:
        w = indicator(f, translate(f, phi_inv, sigma, LEFT))
        counts[w] = counts.get(w, 0) + 1
    return WeightSystem(f, tuple(counts), tuple(counts.values()))


def mt_lattice(cm: CMType) -> CharLattice:
    """Character lattice of the Mumford-Tate torus: Z-span of the weights."""
    return cm.lattice


def is_nondegenerate(cm: CMType) -> bool:
    return cm.lattice.rank == cm.g + 1
