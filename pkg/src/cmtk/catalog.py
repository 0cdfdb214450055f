"""Named frames and the worked CM types from the cyclotomic examples."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .cmtypes import CMType, make_cm_type
from .groups import GaloisFrame, cyclic_frame, frame_from_elements, product_frame


def dihedral_frame(n: int) -> GaloisFrame:
    """Dihedral group of order 2n (n even) with conj the central rotation r^(n/2)."""
    if n < 2 or n % 2:
        raise ValueError("dihedral frame needs an even rotation order")
    elems = [(k, f) for f in (0, 1) for k in range(n)]

    def mul(a, b):
        (k1, f1), (k2, f2) = a, b
        return ((k1 + (-k2 if f1 else k2)) % n, f1 ^ f2)

    return frame_from_elements(elems, mul, (n // 2, 0), identity=(0, 0))


def dicyclic_frame(n: int) -> GaloisFrame:
    """Dicyclic group of order 4n (n=2 is the quaternion group), conj = a^n."""
    if n < 2:
        raise ValueError("dicyclic frame needs n >= 2")
    elems = [(k, f) for f in (0, 1) for k in range(2 * n)]

    def mul(a, b):
        (k1, f1), (k2, f2) = a, b
        if not f1:
            return ((k1 + k2) % (2 * n), f2)
        if not f2:
            return ((k1 - k2) % (2 * n), 1)
        return ((k1 - k2 + n) % (2 * n), 0)

    return frame_from_elements(elems, mul, (n, 0), identity=(0, 0))


@lru_cache(maxsize=None)
def small_frames(max_order: int = 12) -> tuple[tuple[str, GaloisFrame], ...]:
    """Every group of order <= 12 with a central involution, one conj per Aut-orbit."""
    out: list[tuple[str, GaloisFrame]] = []
    for n in range(2, max_order + 1, 2):
        out.append((f"Z/{n}", cyclic_frame(n)))
    extra = [
        (4, "Z/2xZ/2", lambda: product_frame(2, 2, conj=(1, 0))),
        (8, "Z/2xZ/4 c=(0,2)", lambda: product_frame(2, 4, conj=(0, 2))),
        (8, "Z/2xZ/4 c=(1,0)", lambda: product_frame(2, 4, conj=(1, 0))),
        (8, "Z/2xZ/2xZ/2", lambda: product_frame(2, 2, 2, conj=(1, 0, 0))),
        (8, "D4", lambda: dihedral_frame(4)),
        (8, "Q8", lambda: dicyclic_frame(2)),
        (12, "Z/2xZ/6", lambda: product_frame(2, 6, conj=(1, 3))),
        (12, "D6", lambda: dihedral_frame(6)),
        (12, "Dic3", lambda: dicyclic_frame(3)),
    ]
    out += [(name, build()) for order, name, build in extra if order <= max_order]
    out.sort(key=lambda item: item[1].order)
    return tuple(out)


# CM-type representatives as listed for Q(zeta_p), with sigma^k stored as k.
ZETA7 = {1: (0, 2, 4), 2: (0, 1, 2)}
ZETA11 = {1: (0, 2, 4, 6, 8), 2: (0, 6, 2, 3, 4), 3: (0, 3, 6, 9, 2), 4: (0, 1, 2, 3, 4)}
ZETA13 = {
    1: (0, 1, 2, 3, 4, 5),
    2: (0, 7, 2, 3, 4, 5),
    3: (0, 1, 8, 3, 4, 5),
    4: (0, 7, 8, 3, 4, 5),
    5: (0, 7, 8, 3, 10, 5),
    6: (0, 4, 8, 1, 5, 9),
}
_ZETA = {7: ZETA7, 11: ZETA11, 13: ZETA13}


def zeta_cm_types(p: int) -> dict[int, CMType]:
    """Numbered CM types of Q(zeta_p) for p in {7, 11, 13}."""
    frame = cyclic_frame(p - 1)
    return {k: make_cm_type(frame, phi) for k, phi in _ZETA[p].items()}


def zeta_cm_type(p: int, k: int) -> CMType:
    return zeta_cm_types(p)[k]


def fixture_names() -> list[str]:
    """Names of the bundled pair and descriptor documents."""
    root = resources.files("cmtk") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    path = resources.files("cmtk") / "data" / f"{name}.json"
    return json.loads(path.read_text(encoding="utf-8"))
