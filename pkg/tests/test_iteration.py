"""Fixed-point oracle: traces, convergence, and batch limits."""

import math

import numpy as np
import pytest

from cooprob import (
    DegenerateWeightsError,
    DomainError,
    GameTag,
    PayoffTable2,
    PayoffTable3,
    balanced_p,
    classify2,
    iterate2,
    iterate2_limits,
    iterate3,
    iterate3_limits,
    iterate_asym,
    AsymmetricTable2,
    UnsupportedClassError,
)


def test_trace_shape_and_bookkeeping():
    t = PayoffTable2(9, 8, 5, 2)
    trace = iterate2(t, classify2(t), p0=0.5)
    assert trace.iterates[0] == 0.5
    assert trace.converged
    assert trace.iterations_used == len(trace.iterates) - 1
    assert trace.limit == trace.iterates[-1]
    assert all(0.0 <= p <= 1.0 for p in trace.iterates)


@pytest.mark.parametrize("p0", [0.0, 0.25, 0.5, 1.0])
def test_dilemma_limit_is_seed_independent(p0):
    t = PayoffTable2(9, 8, 5, 2)
    trace = iterate2(t, classify2(t), p0=p0)
    assert trace.converged
    assert trace.limit == pytest.approx((3.0 - math.sqrt(3.0)) / 2.0, abs=1e-9)


def test_stag_hunt_escapes_the_repelling_corner():
    # p = 1 is a fixed point but repels when an interior root exists;
    # the repelling seed is detected and restarted from the interior
    t = PayoffTable2(10, 11, 1, -30)
    trace = iterate2(t, classify2(t), p0=1.0)
    assert trace.converged
    assert trace.limit == pytest.approx(1.0 / 3.0, abs=1e-9)


def test_stag_hunt_full_cooperation_attracts():
    t = PayoffTable2(2, 3, 1, 0)
    trace = iterate2(t, classify2(t), p0=0.25)
    assert trace.converged
    assert trace.limit == pytest.approx(1.0, abs=1e-9)


def test_translators_collapse_in_one_step():
    t = PayoffTable2(5, 3, 4, 1)
    trace = iterate2(t, classify2(t), p0=0.7)
    assert trace.converged
    assert trace.limit == 0.0
    assert trace.iterations_used <= 2


def test_iterate2_validates_inputs():
    t = PayoffTable2(9, 8, 5, 2)
    with pytest.raises(DomainError):
        iterate2(t, classify2(t), p0=1.5)
    bad = PayoffTable2(1, 2, 3, 4)
    with pytest.raises(UnsupportedClassError):
        iterate2(bad, classify2(bad), p0=0.5)


def test_iterate3_known_limits():
    assert iterate3(PayoffTable3(10, 8, 7, 5, 4, 2)).limit == pytest.approx(
        1.0 / 3.0, abs=1e-9
    )
    assert iterate3(PayoffTable3(9, 8, 7, 6, 3, 2)).limit == pytest.approx(
        (3.0 - math.sqrt(3.0)) / 2.0, abs=1e-9
    )
    # the tied-rung table: iteration lands on the attracting cubic root
    assert iterate3(PayoffTable3(10, 4, 1, -2, -2, -4)).limit == pytest.approx(
        (-5.0 + math.sqrt(33.0)) / 4.0, abs=1e-9
    )


def test_iterate3_degenerate_weights_raise():
    with pytest.raises(DegenerateWeightsError):
        iterate3(PayoffTable3(1, 1, 1, 1, 1, 1))


def test_iterate_asym_symmetric_input_matches_scalar():
    t = PayoffTable2(9, 8, 5, 2)
    sym = iterate2(t, classify2(t)).limit
    trace = iterate_asym(AsymmetricTable2(9, 8, 5, 2, 9, 8, 5, 2))
    assert trace.converged
    px, py = trace.limit
    assert px == pytest.approx(sym, abs=1e-9)
    assert py == pytest.approx(sym, abs=1e-9)


def test_iterate_asym_mixed_sides():
    trace = iterate_asym(AsymmetricTable2(10, 7, 5, 1, 9, 8, 5, 2))
    assert trace.converged
    px, py = trace.limit
    assert px == pytest.approx(0.36832267997260637, abs=1e-9)
    assert py == pytest.approx(0.5699786932785461, abs=1e-9)


def test_batch_limits_match_scalar_runs():
    tables = [(9, 8, 5, 2), (10, 7, 5, 1), (8, 2, -2, -4), (100, 51, 50, 0)]
    a, b, c, d = (np.array([t[i] for t in tables], dtype=float) for i in range(4))
    limits, converged = iterate2_limits(GameTag.PRISONERS_DILEMMA, a, b, c, d, p0=0.5)
    assert converged.all()
    for pos, vals in enumerate(tables):
        t = PayoffTable2(*vals)
        scalar = iterate2(t, classify2(t), p0=0.5).limit
        assert limits[pos] == pytest.approx(scalar, abs=1e-12)


def test_batch_limits_stag_hunt_corner_seed():
    a = np.array([10.0, 2.0])
    b = np.array([11.0, 3.0])
    c = np.array([1.0, 1.0])
    d = np.array([-30.0, 0.0])
    limits, converged = iterate2_limits(GameTag.STAG_HUNT, a, b, c, d, p0=1.0)
    assert converged.all()
    assert limits[0] == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert limits[1] == pytest.approx(1.0, abs=1e-9)


def test_batch_limits3():
    f = np.array([10.0, 9.0])
    g = np.array([8.0, 8.0])
    h = np.array([7.0, 7.0])
    j = np.array([5.0, 6.0])
    k = np.array([4.0, 3.0])
    m = np.array([2.0, 2.0])
    limits, converged = iterate3_limits(f, g, h, j, k, m, p0=0.5)
    assert converged.all()
    assert limits[0] == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert limits[1] == pytest.approx((3.0 - math.sqrt(3.0)) / 2.0, abs=1e-9)


def test_batch_agrees_with_closed_form_on_a_seeded_sample():
    from conftest import sample_tables

    a, b, c, d = sample_tables(GameTag.PRISONERS_DILEMMA, 300, seed=7)
    limits, converged = iterate2_limits(GameTag.PRISONERS_DILEMMA, a, b, c, d)
    assert converged.all()
    closed = np.array([balanced_p(PayoffTable2(*v)).p for v in zip(a, b, c, d)])
    assert np.max(np.abs(limits - closed)) < 1e-9
