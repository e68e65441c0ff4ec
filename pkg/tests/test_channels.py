import math

import numpy as np
import pytest

from nucrange import (
    ADChannel,
    ADParams,
    GeneralChannel,
    GeneralParams,
    KrausPair,
    RawChannel,
    build_ad,
    build_general,
    channel_from_json,
    channel_to_json,
    check_trace_preserving,
    derive_blocks,
    sample_general_params,
    validate_kraus_pair,
)
from nucrange.errors import DomainError, StructureError

FIG3_VECTOR = (0.9, 0.7, 0.2, 0.9, 0.6, 0.7, 0.9, 0.1, 0.6, 0.5)


# ---------------------------------------------------------------------------
# amplitude damping


def test_ad_no_damping_is_isometry():
    pair = build_ad(ADParams(0.0, 0.0))
    assert np.abs(pair.a2).max() == 0.0
    np.testing.assert_allclose(
        pair.a1.conj().T @ pair.a1, np.eye(4), atol=1e-15
    )


def test_ad_printed_entries():
    pair = build_ad(ADParams(0.5, 0.7))
    assert pair.a2[0, 1] == pytest.approx(math.sqrt(0.7), abs=1e-15)  # ~0.83666
    assert pair.a2[2, 3] == pytest.approx(math.sqrt(0.35), abs=1e-15)  # ~0.59161
    assert np.count_nonzero(pair.a2) == 2


def test_ad_trace_preservation_sweep(rng):
    for _ in range(30):
        pair = build_ad(ADParams(rng.uniform(0, 1), rng.uniform(0, 1)))
        assert check_trace_preserving(pair).dagger_left <= 1e-12


@pytest.mark.parametrize("p1,p2", [(-0.1, 0.5), (0.5, 1.2), (float("nan"), 0.5)])
def test_ad_domain_errors(p1, p2):
    with pytest.raises(DomainError):
        ADParams(p1, p2)


def test_trace_residual_examples():
    eye = np.eye(4, dtype=complex)
    zero = np.zeros((4, 4), dtype=complex)
    assert check_trace_preserving(KrausPair(eye, zero)).dagger_left == 0.0
    # A1 = A2 = I gives residual ||I||_F = 2 in both conventions
    res = check_trace_preserving(KrausPair(eye, eye))
    assert res.dagger_left == pytest.approx(2.0)
    assert res.dagger_right == pytest.approx(2.0)


def test_ad_satisfies_only_dagger_left_convention():
    res = check_trace_preserving(build_ad(ADParams(0.5, 0.7)))
    assert res.dagger_left <= 1e-15
    assert res.dagger_right > 0.1  # the swapped convention genuinely fails


# ---------------------------------------------------------------------------
# block operators


def test_ad_blocks_worked_values():
    blocks = derive_blocks(build_ad(ADParams(0.5, 0.7)))
    np.testing.assert_allclose(blocks.e11, np.diag([1.0, 0.3]), atol=1e-15)
    np.testing.assert_allclose(blocks.f11, np.diag([1.0, 0.65]), atol=1e-15)
    np.testing.assert_allclose(
        blocks.e12, np.diag([0.0, math.sqrt(0.21)]), atol=1e-15
    )
    expected_f12 = np.zeros((2, 2))
    expected_f12[0, 1] = math.sqrt(0.35)
    np.testing.assert_allclose(blocks.f12, expected_f12, atol=1e-15)


def test_identity_channel_blocks():
    pair = KrausPair(np.eye(4, dtype=complex), np.zeros((4, 4), dtype=complex))
    blocks = derive_blocks(pair)
    np.testing.assert_allclose(blocks.t11, np.eye(4), atol=1e-15)
    assert np.abs(blocks.t12).max() == 0.0
    assert np.abs(blocks.t22).max() == 0.0


def test_block_relations(rng):
    for _ in range(20):
        params = sample_general_params(rng)
        blocks = derive_blocks(build_general(params))
        np.testing.assert_array_equal(blocks.t21, blocks.t12.conj().T)
        assert np.linalg.norm(blocks.t22 - (np.eye(4) - blocks.t11)) <= 1e-12
        for blk in (blocks.e11, blocks.f11):
            eigs = np.linalg.eigvalsh(blk)
            assert eigs[0] >= -1e-10 and eigs[-1] <= 1 + 1e-10


def test_derive_blocks_rejects_off_block():
    m = np.eye(4, dtype=complex)
    m[0, 3] = 0.5
    with pytest.raises(StructureError):
        derive_blocks(KrausPair(m, np.zeros((4, 4), dtype=complex)))


# ---------------------------------------------------------------------------
# general channel


def test_general_rejects_figure_vector():
    # sum of squared entries is 4.43 > 4 = tr(I4): no trace-preserving pair
    # can carry these as its free entries, and the first failure is b1
    with pytest.raises(DomainError, match="b1 radicand"):
        GeneralParams.from_vector(FIG3_VECTOR)


def test_general_rejects_big_column():
    vec = (0.9, 0.1, 0.9, 0.1, 0.1, 0.1, 0.1, 0.1, 0.9, 0.1)
    with pytest.raises(DomainError, match="b1 radicand"):
        GeneralParams.from_vector(vec)


def test_general_rejects_out_of_range_entry():
    with pytest.raises(DomainError, match="a3"):
        GeneralParams.from_vector((0.5, 0.5, 1.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5))


def test_general_scaled_figure_vector_valid():
    vec = tuple(x / math.sqrt(2) for x in FIG3_VECTOR)
    pair = build_general(GeneralParams.from_vector(vec))
    assert check_trace_preserving(pair).dagger_left <= 1e-10


def test_general_rejection_sampler(rng):
    for _ in range(25):
        params = sample_general_params(rng)
        pair = build_general(params)
        assert check_trace_preserving(pair).dagger_left <= 1e-10
        assert len(params.b) == 6 and len(params.c) == 2


def test_general_dependent_entries_recorded():
    vec = tuple(x / math.sqrt(2) for x in FIG3_VECTOR)
    params = GeneralParams.from_vector(vec)
    a1, a3, a9 = params.a[0], params.a[2], params.a[8]
    assert params.b[0] == pytest.approx(math.sqrt(1 - a1**2 - a3**2 - a9**2))
    pair = build_general(params)
    assert pair.a2[0, 0] == pytest.approx(params.b[0])
    assert pair.a2[1, 0] == pytest.approx(a9)
    assert pair.a2[3, 2] == pytest.approx(params.a[9])


# ---------------------------------------------------------------------------
# validation and JSON


def test_validate_rejects_nonzero_off_block():
    m = np.eye(4, dtype=complex)
    m[0, 2] = 1e-14
    with pytest.raises(StructureError):
        validate_kraus_pair(KrausPair(m, np.zeros((4, 4), dtype=complex)))


def test_validate_rejects_trace_violation():
    pair = KrausPair(np.eye(4, dtype=complex) * 0.9, np.zeros((4, 4), dtype=complex))
    with pytest.raises(StructureError, match="trace"):
        validate_kraus_pair(pair)


def test_channel_json_roundtrip_ad():
    ch = ADChannel(ADParams(0.25, 0.75))
    doc = channel_to_json(ch)
    assert doc == {"kind": "ad", "p1": 0.25, "p2": 0.75}
    assert channel_from_json(doc) == ch


def test_channel_json_roundtrip_general():
    vec = tuple(x / math.sqrt(2) for x in FIG3_VECTOR)
    ch = GeneralChannel(GeneralParams.from_vector(vec))
    back = channel_from_json(channel_to_json(ch))
    assert back.params.a == pytest.approx(ch.params.a)
    assert back.params.b == pytest.approx(ch.params.b)


def test_channel_json_roundtrip_raw():
    pair = build_ad(ADParams(0.3, 0.6))
    ch = RawChannel(pair)
    back = channel_from_json(channel_to_json(ch))
    np.testing.assert_array_equal(back.pair.a1, pair.a1)
    np.testing.assert_array_equal(back.pair.a2, pair.a2)


def test_channel_json_rejects_unknown_kind():
    with pytest.raises(DomainError):
        channel_from_json({"kind": "mystery"})
