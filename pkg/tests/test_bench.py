from __future__ import annotations

import pytest

from itaxotools.ntru_witt.bench import BenchRecord, run_bench, run_trial
from itaxotools.ntru_witt.config import Settings
from itaxotools.ntru_witt.types import Backend


def test_trial_recovers():
    record = run_trial(11, 128, 4, 4, Settings())
    assert record.recovered
    assert record.n_eqs == 33
    assert record.n_solutions >= 1
    assert record.max_degree <= 8
    assert 0 < record.max_terms_b1 <= record.max_terms_b2 <= record.max_terms_b3


def test_trial_groebner():
    record = run_trial(7, 128, 0, 3, Settings(), Backend.Groebner)
    assert record.recovered


def test_trial_failure_row():
    record = run_trial(7, 128, 0, 4, Settings(max_pairs=1), Backend.Groebner)
    assert record.n_solutions == -1
    assert not record.recovered
    assert record.n_eqs == 21


def test_row_format():
    record = BenchRecord(7, 128, 3, 2, 7, 2, 10, 0, 0, 5, 6, 1, True)
    assert record.row() == ["7", "128", "3", "2", "7", "2", "10", "0", "0", "5", "6", "1", "true"]
    assert BenchRecord.header()[-1] == "recovered"


def test_seeds_in_order():
    records = run_bench([7], 128, 10, 4, 2, Settings(workers=3))
    assert [r.seed for r in records] == [10, 11, 12, 13]


@pytest.mark.slow
def test_bench_N17():
    records = run_bench([17], 128, 0, 10, 3, Settings(workers=2))
    assert all(r.recovered for r in records)
    assert all(450 <= r.max_terms_b2 <= 1814 for r in records)
