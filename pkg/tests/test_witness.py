import dataclasses
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cmtk.catalog import load_fixture, small_frames
from cmtk.cmtypes import classify_cm_types, enumerate_cm_types, make_cm_type
from cmtk.config import parse_pair
from cmtk.groups import cyclic_frame
from cmtk.lattice import FrameMismatch
from cmtk.verdict import decide_cm_pair
from cmtk.witness import (
    HodgeWitness,
    Reason,
    SearchStatus,
    exterior_support,
    find_witness,
    solve_nonneg,
    verify_witness,
    witness_from_rational_solution,
)

FIXTURES = ["zeta7_phi1_phi2", "zeta11_phi2_phi3", "zeta11_phi3_phi2"]


def fixture_pair(name):
    return parse_pair(load_fixture(name))


# --- transcribed identities --------------------------------------------------


@pytest.mark.parametrize(
    "name,degrees,shape",
    [
        ("zeta7_phi1_phi2", (1, 3, 1), (1, 1)),
        ("zeta11_phi2_phi3", (1, 3, 1), (1, 1)),
        ("zeta11_phi3_phi2", (3, 7, 2), (3, 2)),
    ],
)
def test_transcribed_identities_verify(name, degrees, shape):
    pair = fixture_pair(name)
    w = pair.witness
    assert (w.r, w.s, w.twist) == degrees and (w.m, w.n) == shape
    assert verify_witness(w, pair.cm1, pair.cm2).reason is Reason.OK


def test_transcribed_identity_rejected_in_wrong_direction():
    pair = fixture_pair("zeta11_phi3_phi2")
    assert not verify_witness(pair.witness, pair.cm2, pair.cm1)


@pytest.mark.parametrize("name", FIXTURES)
def test_search_matches_transcribed_degrees(name):
    pair = fixture_pair(name)
    found = find_witness(pair.cm1, pair.cm2)
    assert found.status is SearchStatus.FOUND
    assert (found.witness.r, found.witness.twist) == (pair.witness.r, pair.witness.twist)
    assert found.witness.descriptor == pair.witness.descriptor


def test_zeta7_witness_equals_transcription():
    pair = fixture_pair("zeta7_phi1_phi2")
    found = find_witness(pair.cm1, pair.cm2).witness
    assert set(found.coeffs) == set(pair.witness.coeffs)
    assert found.descriptor == "H^1(A1^1)^v ⊗ H^3(A2^1)(1)"


def test_zeta11_imprimitive_to_primitive(zeta11):
    found = find_witness(zeta11[1], zeta11[2])
    assert found.witness.descriptor == "H^3(A1^1)^v ⊗ H^5(A2^1)(1)"
    assert find_witness(zeta11[2], zeta11[1]).status is SearchStatus.ABSENT


# --- verifier rejections -----------------------------------------------------


def mutate(w, **changes):
    return dataclasses.replace(w, **changes)


@pytest.fixture(scope="module")
def z7():
    pair = fixture_pair("zeta7_phi1_phi2")
    return pair.witness, pair.cm1, pair.cm2


@pytest.mark.parametrize(
    "changes,reason",
    [
        (dict(r=0), Reason.NONPOSITIVE),
        (dict(s=4), Reason.PARITY),
        (dict(twist=2), Reason.TWIST),
        (dict(alpha0=(1, 1, 1, 0, 0, 0)), Reason.ALPHA0),
        (dict(alpha0=(1, 0, 1)), Reason.SHAPE),
        (dict(r=5, s=5, twist=0), Reason.SOURCE_BOUND),
        (dict(coeffs=(((1, 0, 1, 0, 1, 0), 3),)), Reason.TARGET_WEIGHT),
    ],
)
def test_verifier_rejections(z7, changes, reason):
    w, cm1, cm2 = z7
    assert verify_witness(mutate(w, **changes), cm1, cm2).reason is reason


def test_verifier_rejects_bad_coefficients(z7):
    w, cm1, cm2 = z7
    (b1, _), (b2, _), (b3, _) = w.coeffs
    assert verify_witness(mutate(w, coeffs=((b1, 2), (b2, -1), (b3, 2))), cm1, cm2).reason is Reason.NEGATIVE
    assert verify_witness(mutate(w, coeffs=((b1, 1), (b2, 1))), cm1, cm2).reason is Reason.DEGREE
    assert verify_witness(mutate(w, coeffs=((b1, 2), (b2, 1))), cm1, cm2).reason is Reason.TARGET_BOUND
    other = [b for b in cm2.weights.weights if b not in (b1, b2, b3)][0]
    assert verify_witness(mutate(w, coeffs=((b1, 1), (b2, 1), (other, 1))), cm1, cm2).reason is Reason.EQUATION


def test_verifier_frame_mismatch(z7):
    w, cm1, _ = z7
    other = make_cm_type(cyclic_frame(4), [0, 1])
    assert verify_witness(w, other, other).reason is Reason.FRAME


def test_witness_json_round_trip(z7):
    w, _, _ = z7
    assert HodgeWitness.from_json(w.frame, w.to_json()) == w


# --- search internals against brute force ------------------------------------


def brute_exterior(ws, r, m):
    pool = [b for b, mult in ws.items() for _ in range(m * mult)]
    return {
        tuple(sum(pool[i][x] for i in combo) for x in range(ws.frame.order))
        for combo in itertools.combinations(range(len(pool)), r)
    }


@pytest.mark.parametrize("n", [2, 4, 6])
@pytest.mark.parametrize("r,m", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_exterior_support_matches_enumeration(n, r, m):
    for cm in enumerate_cm_types(cyclic_frame(n)):
        assert exterior_support(cm.weights, r, m) == brute_exterior(cm.weights, r, m)


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=4), min_size=1, max_size=4),
    st.lists(st.integers(0, 4), min_size=4, max_size=4),
)
def test_solve_nonneg_is_lexicographically_least(weights, target):
    weights = [tuple(w) for w in weights]
    got = solve_nonneg(weights, target)
    sols = [
        list(e)
        for e in itertools.product(range(5), repeat=len(weights))
        if all(sum(ei * w[x] for ei, w in zip(e, weights)) == target[x] for x in range(4))
    ]
    assert got == (min(sols) if sols else None)


# --- search against verdicts -------------------------------------------------


def test_search_iff_verdict_on_small_frames():
    for _, frame in small_frames():
        reps = [c.representative for c in classify_cm_types(frame)]
        for cm1, cm2 in itertools.product(reps, repeat=2):
            v12, _ = decide_cm_pair(cm1, cm2)
            found = find_witness(cm1, cm2)
            if v12.torsion_infinite:
                assert found.status is SearchStatus.FOUND
                assert verify_witness(found.witness, cm1, cm2)
            else:
                assert found.status is SearchStatus.ABSENT


def test_search_reports_exhausted_bounds(zeta11):
    found = find_witness(zeta11[3], zeta11[2], max_r=2)
    assert found.status is SearchStatus.EXHAUSTED and not found


def test_search_frame_mismatch(zeta7):
    with pytest.raises(FrameMismatch):
        find_witness(zeta7[1], make_cm_type(cyclic_frame(4), [0, 1]))


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_constructive_witness_verifies(n):
    reps = [c.representative for c in classify_cm_types(cyclic_frame(n))]
    for cm1, cm2 in itertools.product(reps, repeat=2):
        v12, _ = decide_cm_pair(cm1, cm2)
        if v12.torsion_infinite:
            w = witness_from_rational_solution(cm1, cm2)
            assert verify_witness(w, cm1, cm2), (cm1, cm2)
        else:
            with pytest.raises(ValueError):
                witness_from_rational_solution(cm1, cm2)


def test_constructive_witness_degrees(zeta11):
    assert witness_from_rational_solution(zeta11[2], zeta11[3]).r == 1
    assert witness_from_rational_solution(zeta11[3], zeta11[2]).r == 3
