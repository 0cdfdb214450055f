"""Torsion verdicts for pairs of CM types and for low-dimensional classes."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .cmtypes import CMType
from .lattice import CharLattice, FgAbelianGroup, FrameMismatch, lattice_sum, qspan_contains, quotient_group


class VerdictKind(str, enum.Enum):
    POTENTIALLY_TORSION_INFINITE = "PotentiallyTorsionInfinite"
    ESSENTIALLY_TORSION_FINITE = "EssentiallyTorsionFinite"

    @property
    def short(self) -> str:
        return "PTI" if self is VerdictKind.POTENTIALLY_TORSION_INFINITE else "ETF"


PTI = VerdictKind.POTENTIALLY_TORSION_INFINITE
ETF = VerdictKind.ESSENTIALLY_TORSION_FINITE


@dataclass(frozen=True)
class TorsionVerdict:
    """Whether ``direction[0]`` is torsion infinite for ``direction[1]``.

    ``h12`` and ``qspan_included`` are None when the verdict comes from the
    low-dimension classification rather than from character lattices.
    """

    direction: tuple[str, str]
    kind: VerdictKind
    h12: FgAbelianGroup | None = None
    qspan_included: bool | None = None

    def __post_init__(self) -> None:
        if self.qspan_included is not None and self.qspan_included != (self.kind is PTI):
            raise ValueError("qspan_included disagrees with kind")
        if self.h12 is not None and self.h12.is_finite() != (self.kind is PTI):
            raise ValueError("h12 finiteness disagrees with kind")

    @property
    def torsion_infinite(self) -> bool:
        return self.kind is PTI

    def to_json(self) -> dict:
        return {
            "source": self.direction[0],
            "target": self.direction[1],
            "kind": self.kind.value,
            "h12": self.h12.to_json() if self.h12 is not None else None,
            "qspan_included": self.qspan_included,
        }


def _same_frame(cm1: CMType, cm2: CMType) -> None:
    if cm1.frame != cm2.frame:
        raise FrameMismatch("CM types must share one Galois frame")


def lattice_verdict(l1: CharLattice, l2: CharLattice, direction: tuple[str, str] = ("A1", "A2")) -> TorsionVerdict:
    included = qspan_contains(l2, l1)
    return TorsionVerdict(direction, PTI if included else ETF, quotient_group(l1, l2), included)


def decide_cm_pair(
    cm1: CMType, cm2: CMType, names: tuple[str, str] = ("A1", "A2")
) -> tuple[TorsionVerdict, TorsionVerdict]:
    """Verdicts for ``cm1`` relative to ``cm2`` and ``cm2`` relative to ``cm1``."""
    _same_frame(cm1, cm2)
    a, b = names
    return (
        lattice_verdict(cm1.lattice, cm2.lattice, (a, b)),
        lattice_verdict(cm2.lattice, cm1.lattice, (b, a)),
    )


def product_mt_lattice(cm1: CMType, cm2: CMType) -> CharLattice:
    """Character lattice of the Mumford-Tate torus of the product."""
    _same_frame(cm1, cm2)
    return lattice_sum(cm1.lattice, cm2.lattice)


@dataclass(frozen=True)
class MutualReport:
    rank_1: int
    rank_2: int
    rank_12: int
    ranks_equal: bool
    mutual: bool
    consistent: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def mutual_verdict_equivalences(cm1: CMType, cm2: CMType) -> MutualReport:
    """Compare rank equality of the three tori with the two-way verdict."""
    v12, v21 = decide_cm_pair(cm1, cm2)
    r1, r2 = cm1.lattice.rank, cm2.lattice.rank
    r12 = product_mt_lattice(cm1, cm2).rank
    equal = r1 == r2 == r12
    mutual = v12.torsion_infinite and v21.torsion_infinite
    return MutualReport(r1, r2, r12, equal, mutual, equal == mutual)


def dimension_gap_sufficient(d_a: int, d_b: int) -> bool:
    """``log2(d_a) >= 3*d_b - 1``, evaluated exactly as ``d_a >= 2**(3*d_b - 1)``."""
    if d_a < 1 or d_b < 1:
        raise ValueError("dimensions must be positive")
    return d_a >= 2 ** (3 * d_b - 1)


# --- low dimension -----------------------------------------------------------

_ALBERT = re.compile(r"^(I|II|III|IV)(?:\((\d+)(?:,(\d+))?\))?$")


class DescriptorError(ValueError):
    """A low-dimension descriptor is malformed or lacks required data."""


@dataclass(frozen=True)
class LowDimDescriptor:
    """An absolutely simple abelian variety of dimension <= 3 by Albert type.

    ``albert_type`` is written with its endomorphism-algebra parameters, e.g. ``"I"``,
    ``"II"``, ``"IV(1,1)"``, ``"IV(3,1)"``. A bare ``"IV"`` in dimension one is
    read as ``"IV(1,1)"``. ``cm_type`` may be a CM type of a power of the
    variety on a common frame, so its ``g`` must be a multiple of ``dim``.
    """

    dim: int
    albert_type: str
    cm_type: CMType | None = None
    endo_embedding_flag: bool | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        if self.dim not in (1, 2, 3):
            raise DescriptorError(f"dimension must be 1, 2 or 3, got {self.dim}")
        t = self.albert_type.replace(" ", "")
        if t == "IV" and self.dim == 1:
            t = "IV(1,1)"
        if not _ALBERT.match(t):
            raise DescriptorError(f"unrecognized Albert type {self.albert_type!r}")
        object.__setattr__(self, "albert_type", t)
        if self.cm_type is not None and self.cm_type.g % self.dim:
            raise DescriptorError(f"CM type has g={self.cm_type.g}, not a multiple of dim={self.dim}")
        if self.cm_type is not None and not self.is_cm:
            raise DescriptorError(f"CM data given for non-CM type {t}")

    @property
    def is_cm(self) -> bool:
        return self.albert_type == f"IV({self.dim},1)"

    @property
    def label(self) -> str:
        return self.name or f"({self.dim},{self.albert_type})"


def _mutual_etf(a: str, b: str) -> tuple[TorsionVerdict, TorsionVerdict]:
    return TorsionVerdict((a, b), ETF), TorsionVerdict((b, a), ETF)


def low_dim_verdict(a: LowDimDescriptor, b: LowDimDescriptor) -> tuple[TorsionVerdict, TorsionVerdict]:
    """Verdicts for two non-isogenous absolutely simple varieties of dim <= 3.

    Returns ``(a relative to b, b relative to a)``. Outside the three special
    cases (CM elliptic curve with a CM threefold, CM elliptic curve with a
    non-CM type IV threefold, two CM threefolds) the pair is mutually
    essentially torsion finite.
    """
    swapped = a.dim > b.dim
    small, big = (b, a) if swapped else (a, b)
    s, t = small.label, big.label
    if small.label == big.label:
        s, t = s + "#1", t + "#2"

    if small.dim == 1 and small.is_cm and big.dim == 3 and big.albert_type in ("IV(3,1)", "IV(1,1)"):
        # CM curve against a type IV threefold: the threefold is never torsion infinite for the curve.
        cm_threefold = big.albert_type == "IV(3,1)"
        flag = small.endo_embedding_flag
        if flag is None:
            flag = big.endo_embedding_flag
        if flag is not None:
            forward = TorsionVerdict((s, t), PTI if flag else ETF)
            backward = TorsionVerdict((t, s), ETF)
        elif cm_threefold and small.cm_type is not None and big.cm_type is not None:
            forward, backward = decide_cm_pair(small.cm_type, big.cm_type, (s, t))
        else:
            need = "an embedding flag or CM types on a common frame" if cm_threefold else "an embedding flag"
            raise DescriptorError(f"CM elliptic curve against a type {big.albert_type} threefold needs {need}")
    elif small.dim == 3 and small.albert_type == "IV(3,1)" and big.albert_type == "IV(3,1)":
        if small.cm_type is None or big.cm_type is None:
            raise DescriptorError("two CM threefolds need CM types for both threefolds on a common frame")
        forward, backward = decide_cm_pair(small.cm_type, big.cm_type, (s, t))
    else:
        forward, backward = _mutual_etf(s, t)

    return (backward, forward) if swapped else (forward, backward)
