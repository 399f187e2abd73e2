"""Table verification, greedy balance search, and the tables file format."""

import json
import math

import pytest

from cooprob import (
    BalanceTarget,
    DomainError,
    GameTag,
    InvalidTableError,
    PayoffTable2,
    PayoffTable3,
    balance_search,
    classify2,
    load_table_entries,
    verify_table,
)


def test_balance_target_validation():
    with pytest.raises(DomainError):
        BalanceTarget(p=1.5, mu=1.0, p_tol=0.01, mu_tol=0.01)
    with pytest.raises(DomainError):
        BalanceTarget(p=0.5, mu=math.inf, p_tol=0.01, mu_tol=0.01)
    with pytest.raises(DomainError):
        BalanceTarget(p=0.5, mu=1.0, p_tol=0.0, mu_tol=0.01)


def test_verify_two_player_pass():
    report = verify_table(
        PayoffTable2(8, 2, -2, -4), BalanceTarget(p=0.5, mu=1.0, p_tol=1e-9, mu_tol=1e-9)
    )
    assert report.passed
    assert report.p_computed == pytest.approx(0.5, abs=1e-12)
    assert report.mu_computed == pytest.approx(1.0, abs=1e-12)
    assert report.delta_p == pytest.approx(0.0, abs=1e-12)
    assert report.game_class.tag is GameTag.PRISONERS_DILEMMA


def test_verify_reports_signed_deltas_on_miss():
    report = verify_table(
        PayoffTable2(9, 8, 5, 2), BalanceTarget(p=0.5, mu=6.0, p_tol=0.01, mu_tol=0.01)
    )
    assert not report.passed
    assert report.delta_p > 0  # this table leans cooperative of the target
    assert report.delta_mu > 0


def test_verify_three_player():
    report = verify_table(
        PayoffTable3(10, 8, 7, 5, 4, 2),
        BalanceTarget(p=1.0 / 3.0, mu=16.0 / 3.0, p_tol=1e-9, mu_tol=1e-9),
    )
    assert report.passed


def test_verify_unclassified_table_raises():
    with pytest.raises(Exception):
        verify_table(PayoffTable2(1, 2, 3, 4), BalanceTarget(0.5, 1.0, 0.1, 0.1))


def test_balance_search_reaches_a_nearby_target():
    result = balance_search(
        PayoffTable2(9, 8, 5, 2), BalanceTarget(p=0.5, mu=6.0, p_tol=0.01, mu_tol=0.05)
    )
    assert result.met_target
    assert not result.stalled
    assert result.report.passed
    # class preservation is a hard constraint of the search
    assert classify2(result.table).tag is GameTag.PRISONERS_DILEMMA


def test_balance_search_integer_mode_keeps_integers():
    result = balance_search(
        PayoffTable2(9, 8, 5, 2),
        BalanceTarget(p=0.5, mu=6.0, p_tol=0.02, mu_tol=0.1),
        step=1.0,
        integer_mode=True,
    )
    for v in result.table.values():
        assert v == int(v)


def test_balance_search_stalls_honestly():
    # an unreachable target with a tiny iteration budget must not pretend
    result = balance_search(
        PayoffTable2(9, 8, 5, 2),
        BalanceTarget(p=0.0, mu=-100.0, p_tol=1e-6, mu_tol=1e-6),
        step=0.25,
        max_iters=3,
    )
    assert not result.met_target
    assert result.iterations <= 3


def test_balance_search_validates_knobs():
    target = BalanceTarget(p=0.5, mu=1.0, p_tol=0.01, mu_tol=0.01)
    with pytest.raises(DomainError):
        balance_search(PayoffTable2(9, 8, 5, 2), target, step=0.0)
    with pytest.raises(DomainError):
        balance_search(PayoffTable2(9, 8, 5, 2), target, max_iters=0)


def _write_tables(tmp_path, payload):
    path = tmp_path / "tables.json"
    path.write_text(json.dumps(payload))
    return path


def test_load_table_entries_roundtrip(tmp_path):
    path = _write_tables(
        tmp_path,
        [
            {
                "name": "duel",
                "players": 2,
                "table": {"a": 8, "b": 2, "c": -2, "d": -4},
                "target": {"p": 0.5, "mu": 1.0, "p_tol": 1e-6, "mu_tol": 1e-6},
            },
            {
                "name": "trio",
                "players": 3,
                "table": {"f": 10, "g": 8, "h": 7, "j": 5, "k": 4, "m": 2},
                "target": {"p": 0.3333333333, "mu": 5.34, "p_tol": 0.01, "mu_tol": 0.05},
            },
        ],
    )
    entries = load_table_entries(path)
    assert [e.name for e in entries] == ["duel", "trio"]
    assert isinstance(entries[0].table, PayoffTable2)
    assert isinstance(entries[1].table, PayoffTable3)
    assert verify_table(entries[0].table, entries[0].target).passed
    assert verify_table(entries[1].table, entries[1].target).passed


def test_load_table_entries_rejects_garbage(tmp_path):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{not json")
    with pytest.raises(InvalidTableError):
        load_table_entries(bad_json)

    with pytest.raises(InvalidTableError):
        load_table_entries(_write_tables(tmp_path, {"name": "not-a-list"}))

    with pytest.raises(InvalidTableError):
        load_table_entries(
            _write_tables(
                tmp_path,
                [{"name": "x", "players": 5, "table": {}, "target": {}}],
            )
        )

    with pytest.raises(InvalidTableError):
        load_table_entries(
            _write_tables(
                tmp_path,
                [{"players": 2, "table": {"a": 1, "b": 0, "c": -1, "d": -2}}],
            )
        )
