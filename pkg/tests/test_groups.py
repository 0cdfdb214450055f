import itertools

import pytest
from hypothesis import given, strategies as st

from cmtk.catalog import dicyclic_frame, dihedral_frame, small_frames
from cmtk.groups import (
    automorphisms,
    LEFT,
    RIGHT,
    FrameError,
    Subgroup,
    cyclic_frame,
    frame_from_elements,
    frame_from_table,
    product_frame,
    product_index,
    stabilizer,
    translate,
)


@pytest.mark.parametrize("name,frame", small_frames(), ids=lambda x: x if isinstance(x, str) else "")
def test_small_frames_are_groups_with_central_conj(name, frame):
    n = frame.order
    for a, b in itertools.product(range(n), repeat=2):
        assert frame.mul(frame.conj, a) == frame.mul(a, frame.conj)
    assert frame.mul(frame.conj, frame.conj) == 0
    assert all(frame.mul(a, frame.inv(a)) == 0 for a in range(n))


def test_cyclic_frame_basics():
    f = cyclic_frame(6)
    assert f.order == 6 and f.conj == 3 and f.is_abelian
    assert f.mul(4, 5) == 3
    assert f.inv(2) == 4
    assert f.spec == {"cyclic": 6}


@pytest.mark.parametrize("bad", [0, 1, 3, 7, -4, 2.0, "6"])
def test_cyclic_frame_rejects_bad_orders(bad):
    with pytest.raises(FrameError):
        cyclic_frame(bad)


def test_nonabelian_frames():
    d4, q8 = dihedral_frame(4), dicyclic_frame(2)
    assert d4.order == q8.order == 8
    assert not d4.is_abelian and not q8.is_abelian
    # Q8 has a single involution, D4 has five.
    inv_q8 = [a for a in q8.elements if a and q8.mul(a, a) == 0]
    inv_d4 = [a for a in d4.elements if a and d4.mul(a, a) == 0]
    assert len(inv_q8) == 1 and len(inv_d4) == 5


def test_product_frame_numbering():
    f = product_frame(2, 6, conj=(1, 3))
    assert f.order == 12
    assert f.conj == product_index((2, 6), (1, 3)) == 9
    assert f.label(9) == "(1,3)"
    assert f.mul(product_index((2, 6), (1, 4)), product_index((2, 6), (1, 5))) == product_index((2, 6), (0, 3))


def test_product_frame_rejects_noncentral_or_trivial_conj():
    with pytest.raises(FrameError):
        product_frame(2, 2, conj=(0, 0))
    with pytest.raises(FrameError):
        product_frame(4, conj=(1,))  # order 4 element is not an involution


def test_table_validation():
    with pytest.raises(FrameError):
        frame_from_table([[0, 1], [1, 1]], conj=1)  # not a Latin square
    with pytest.raises(FrameError):
        frame_from_table([[1, 0], [0, 1]], conj=1)  # identity not at 0
    ok = frame_from_table([[0, 1], [1, 0]], conj=1)
    assert ok.order == 2


def test_noncentral_conj_rejected():
    # Reflection in D3 is an involution but not central.
    elems = [(k, f) for f in (0, 1) for k in range(3)]

    def mul(a, b):
        (k1, f1), (k2, f2) = a, b
        return ((k1 + (-k2 if f1 else k2)) % 3, f1 ^ f2)

    with pytest.raises(FrameError):
        frame_from_elements(elems, mul, conj=(0, 1))


def test_frame_from_elements_puts_identity_first():
    elems = [2, 1, 0, 3]
    f = frame_from_elements(elems, lambda a, b: (a + b) % 4, conj=2)
    assert f.mul(0, 1) == 1 and f.order == 4


def test_subgroup_closure_checked():
    f = cyclic_frame(6)
    assert Subgroup(f, (0, 2, 4)).order == 3
    with pytest.raises(FrameError):
        Subgroup(f, (0, 1))


def test_translate_and_stabilizer_sides():
    d4 = dihedral_frame(4)
    s = (0, 4)  # identity and a reflection
    assert stabilizer(d4, s, LEFT).elements == stabilizer(d4, s, RIGHT).elements == (0, 4)
    left = {translate(d4, s, g, LEFT) for g in d4.elements}
    right = {translate(d4, s, g, RIGHT) for g in d4.elements}
    assert left != right


@given(st.sampled_from([4, 6, 8, 10, 12]), st.data())
def test_stabilizer_is_brute_force_stabilizer(n, data):
    f = cyclic_frame(n)
    subset = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    expected = tuple(g for g in range(n) if set(translate(f, subset, g)) == set(subset))
    assert stabilizer(f, subset).elements == expected


@pytest.mark.parametrize("name,frame", [x for x in small_frames() if x[1].order <= 6])
def test_automorphisms_match_permutation_search(name, frame):
    n = frame.order
    brute = [
        p
        for p in itertools.permutations(range(n))
        if p[0] == 0
        and p[frame.conj] == frame.conj
        and all(p[frame.mul(a, b)] == frame.mul(p[a], p[b]) for a in range(n) for b in range(n))
    ]
    assert sorted(automorphisms(frame)) == sorted(brute)


@pytest.mark.parametrize("frame,count", [(cyclic_frame(12), 4), (dihedral_frame(4), 8), (dicyclic_frame(2), 24)])
def test_automorphism_counts(frame, count):
    assert len(automorphisms(frame)) == count
