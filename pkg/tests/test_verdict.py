import itertools

import pytest
from hypothesis import given, strategies as st

from cmtk.catalog import small_frames
from cmtk.cmtypes import classify_cm_types, enumerate_cm_types, make_cm_type
from cmtk.groups import RIGHT, cyclic_frame
from cmtk.lattice import FgAbelianGroup, FrameMismatch
from cmtk.verdict import (
    ETF,
    PTI,
    DescriptorError,
    LowDimDescriptor,
    TorsionVerdict,
    VerdictKind,
    decide_cm_pair,
    dimension_gap_sufficient,
    low_dim_verdict,
    mutual_verdict_equivalences,
    product_mt_lattice,
)


def test_verdict_kind_short_names():
    assert PTI.short == "PTI" and ETF.short == "ETF"
    assert VerdictKind("EssentiallyTorsionFinite") is ETF


def test_verdict_consistency_enforced():
    with pytest.raises(ValueError):
        TorsionVerdict(("A", "B"), PTI, FgAbelianGroup(1, ()))
    with pytest.raises(ValueError):
        TorsionVerdict(("A", "B"), ETF, None, True)


def test_zeta13_verdicts(zeta13):
    for i in range(1, 6):
        v6i, vi6 = decide_cm_pair(zeta13[6], zeta13[i])
        assert v6i.kind is PTI and vi6.kind is ETF
    for i, j in itertools.combinations(range(1, 6), 2):
        a, b = decide_cm_pair(zeta13[i], zeta13[j])
        assert a.kind is b.kind is PTI


def test_zeta13_h_groups(zeta13):
    v12, v21 = decide_cm_pair(zeta13[1], zeta13[2])
    assert v12.h12 == FgAbelianGroup(0, (2, 2))
    assert v21.h12 == FgAbelianGroup(0, ())


def test_zeta11_verdicts(zeta11):
    for i in (2, 3, 4):
        v1i, vi1 = decide_cm_pair(zeta11[1], zeta11[i])
        assert v1i.kind is PTI and vi1.kind is ETF
        assert vi1.h12.free_rank == 4
    a, b = decide_cm_pair(zeta11[2], zeta11[3])
    assert a.kind is b.kind is PTI


def test_zeta11_h_group_by_enumeration(zeta11):
    # X*(T1) has basis e_even, e_odd; enumerate coefficient pairs mod 6 and
    # count which classes land in X*(T2).
    l1, l2 = zeta11[1].lattice, zeta11[2].lattice
    e_even = tuple(1 - k % 2 for k in range(10))
    e_odd = tuple(k % 2 for k in range(10))
    inside = {
        (a % 6, b % 6)
        for a in range(6)
        for b in range(6)
        if tuple(a * x + b * y for x, y in zip(e_even, e_odd)) in l2
    }
    assert len(inside) == 12  # index 3 in (Z/6)^2, and 6*X*(T1) lies in X*(T2)
    v12, _ = decide_cm_pair(zeta11[1], zeta11[2])
    assert v12.h12 == FgAbelianGroup(0, (3,))
    assert l1.rank == 2


def test_product_lattice_and_mutual_report(zeta13):
    rep = mutual_verdict_equivalences(zeta13[1], zeta13[6])
    assert (rep.rank_1, rep.rank_2, rep.rank_12) == (7, 3, 7)
    assert not rep.mutual and rep.consistent
    assert product_mt_lattice(zeta13[1], zeta13[2]).rank == 7


@pytest.mark.parametrize("name,frame", small_frames(), ids=[n for n, _ in small_frames()])
def test_mutual_iff_equal_ranks(name, frame):
    reps = [c.representative for c in classify_cm_types(frame)]
    for cm1, cm2 in itertools.product(reps, repeat=2):
        assert mutual_verdict_equivalences(cm1, cm2).consistent


@given(st.sampled_from([6, 8, 10, 12]), st.data())
def test_verdicts_translation_invariant(n, data):
    f = cyclic_frame(n)
    types = enumerate_cm_types(f)
    cm1, cm2 = data.draw(st.sampled_from(types)), data.draw(st.sampled_from(types))
    g, h = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    base = decide_cm_pair(cm1, cm2)
    moved = decide_cm_pair(cm1.translated(g), cm2.translated(h))
    assert [v.kind for v in base] == [v.kind for v in moved]
    assert [v.h12 for v in base] == [v.h12 for v in moved]


@pytest.mark.parametrize("name,frame", [x for x in small_frames() if not x[1].is_abelian])
def test_verdicts_right_translation_invariant_nonabelian(name, frame):
    types = enumerate_cm_types(frame)
    for cm1, cm2 in itertools.product(types[:6], repeat=2):
        base = decide_cm_pair(cm1, cm2)
        for g in frame.elements:
            moved = decide_cm_pair(cm1.translated(g, RIGHT), cm2)
            assert [v.h12 for v in base] == [v.h12 for v in moved]


def test_frame_mismatch():
    a = make_cm_type(cyclic_frame(6), [0, 1, 2])
    b = make_cm_type(cyclic_frame(4), [0, 1])
    with pytest.raises(FrameMismatch):
        decide_cm_pair(a, b)


def test_dimension_gap_truth_table():
    for d_a in range(1, 65):
        for d_b in range(1, 4):
            assert dimension_gap_sufficient(d_a, d_b) == (d_a >= 2 ** (3 * d_b - 1))
    assert dimension_gap_sufficient(4, 1) and not dimension_gap_sufficient(3, 1)
    assert dimension_gap_sufficient(32, 2) and not dimension_gap_sufficient(31, 2)
    with pytest.raises(ValueError):
        dimension_gap_sufficient(0, 1)


# --- low dimension -----------------------------------------------------------


def curve(flag=None, **kw):
    return LowDimDescriptor(1, "IV(1,1)", endo_embedding_flag=flag, name="E", **kw)


def test_bare_iv_for_curves():
    assert LowDimDescriptor(1, "IV").albert_type == "IV(1,1)"


@pytest.mark.parametrize("dim,albert", [(4, "I"), (2, "V"), (2, "IV(2"), (1, "")])
def test_bad_descriptors(dim, albert):
    with pytest.raises(DescriptorError):
        LowDimDescriptor(dim, albert)


def test_cm_data_requires_cm_type():
    cm = make_cm_type(cyclic_frame(6), [0, 1, 2])
    with pytest.raises(DescriptorError):
        LowDimDescriptor(3, "I", cm)
    with pytest.raises(DescriptorError):
        LowDimDescriptor(2, "IV(2,1)", cm)  # g = 3 is not a multiple of 2


@pytest.mark.parametrize("flag,kind", [(True, PTI), (False, ETF)])
def test_curve_with_cm_threefold_uses_flag(flag, kind):
    fwd, back = low_dim_verdict(curve(flag), LowDimDescriptor(3, "IV(3,1)", name="B"))
    assert fwd.kind is kind and back.kind is ETF
    assert fwd.direction == ("E", "B")


def test_curve_with_iv11_threefold():
    fwd, back = low_dim_verdict(LowDimDescriptor(3, "IV(1,1)", name="B"), curve(True))
    # Order of the arguments is preserved in the output.
    assert fwd.direction == ("B", "E") and fwd.kind is ETF
    assert back.kind is PTI
    with pytest.raises(DescriptorError):
        low_dim_verdict(curve(), LowDimDescriptor(3, "IV(1,1)"))


def test_curve_with_cm_threefold_from_cm_types():
    f = cyclic_frame(6)
    e3 = LowDimDescriptor(1, "IV(1,1)", make_cm_type(f, [0, 2, 4]), name="E")
    b = LowDimDescriptor(3, "IV(3,1)", make_cm_type(f, [0, 1, 2]), name="B")
    fwd, back = low_dim_verdict(e3, b)
    assert fwd.kind is PTI and back.kind is ETF
    with pytest.raises(DescriptorError):
        low_dim_verdict(curve(), LowDimDescriptor(3, "IV(3,1)"))


def test_two_cm_threefolds_delegate(zeta7):
    a = LowDimDescriptor(3, "IV(3,1)", zeta7[2], name="A")
    b = LowDimDescriptor(3, "IV(3,1)", zeta7[2].translated(1), name="B")
    fwd, back = low_dim_verdict(a, b)
    assert fwd.kind is back.kind is PTI and fwd.h12.is_trivial()
    with pytest.raises(DescriptorError):
        low_dim_verdict(LowDimDescriptor(3, "IV(3,1)"), LowDimDescriptor(3, "IV(3,1)"))


@pytest.mark.parametrize(
    "a,b",
    [
        ((1, "I"), (2, "I")),
        ((2, "II"), (3, "I")),
        ((1, "IV(1,1)"), (2, "IV(2,1)")),
        ((1, "I"), (3, "IV(3,1)")),
        ((2, "IV(2,1)"), (3, "IV(3,1)")),
        ((1, "IV(1,1)"), (3, "I")),
    ],
)
def test_other_pairs_mutually_finite(a, b):
    v1, v2 = low_dim_verdict(LowDimDescriptor(*a), LowDimDescriptor(*b))
    assert v1.kind is v2.kind is ETF
    assert v1.h12 is None and v1.direction[0] != v1.direction[1]
