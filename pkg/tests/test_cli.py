from __future__ import annotations

import csv

import pytest

from itaxotools.ntru_witt import parse_args, run
from itaxotools.ntru_witt.bench import BenchRecord
from itaxotools.ntru_witt.commands import cmd_attack
from itaxotools.ntru_witt.config import Settings
from itaxotools.ntru_witt.formats import read_anf_system, read_key_file


@pytest.fixture
def keyfile(tmp_path):
    path = tmp_path / "keys.txt"
    assert run(["keygen", "--n", "7", "--q", "128", "--seed", "1", "--out", str(path)]) == 0
    return path


@pytest.fixture
def systemfile(tmp_path, keyfile):
    path = tmp_path / "system.anf"
    assert run(["attack", "--keys", str(keyfile), "--bits", "3", "--out", str(path)]) == 0
    return path


def test_settings_from_args():
    args = parse_args(["selftest", "--workers", "3", "--cap", "5", "--progress"])
    settings = Settings.from_dict(vars(args))
    assert settings.workers == 3
    assert settings.solution_cap == 5
    assert settings.progress
    assert settings.block_bits == 16
    assert not settings.verbose


def test_settings_validation():
    with pytest.raises(ValueError):
        Settings.from_dict({"workers": 0})
    with pytest.raises(ValueError):
        Settings.from_dict({"block_bits": 30})
    with pytest.raises(ValueError):
        Settings.from_dict({"solution_cap": -1})
    with pytest.raises(ValueError):
        Settings.from_dict({"max_pairs": 0})
    assert run(["selftest", "--workers", "0"]) == 2
    assert run(["selftest", "--cap", "-1"]) == 2


def test_keygen_deterministic(tmp_path, keyfile, capsys):
    again = tmp_path / "again.txt"
    assert run(["keygen", "--n", "7", "--q", "128", "--seed", "1", "--out", str(again)]) == 0
    assert again.read_bytes() == keyfile.read_bytes()
    assert "retries:" in capsys.readouterr().out


@pytest.mark.parametrize("n, q", [("24", "128"), ("7", "100"), ("7", "8")])
def test_keygen_rejects(tmp_path, n, q):
    assert run(["keygen", "--n", n, "--q", q, "--out", str(tmp_path / "k.txt")]) == 2


def test_attack(tmp_path, keyfile, capsys):
    path = tmp_path / "system.anf"
    assert run(["attack", "--keys", str(keyfile), "--bits", "3", "--out", str(path)]) == 0
    system = read_anf_system(path)
    assert len(system.equations) == 14
    out = capsys.readouterr().out
    assert "bit 1: 7 equations" in out
    assert "bit 2: 7 equations" in out


def test_attack_bad_keys(tmp_path):
    path = tmp_path / "keys.txt"
    path.write_text("garbage\n")
    assert run(["attack", "--keys", str(path), "--bits", "2", "--out", str(tmp_path / "s.anf")]) == 2
    assert run(["attack", "--keys", str(tmp_path / "missing"), "--bits", "2", "--out", str(tmp_path / "s.anf")]) == 2


def test_attack_methods_agree(tmp_path, keyfile):
    fold, symmetric = tmp_path / "fold.anf", tmp_path / "symmetric.anf"
    assert run(["attack", "--keys", str(keyfile), "--bits", "4", "--out", str(fold), "--method", "fold"]) == 0
    assert run(["attack", "--keys", str(keyfile), "--bits", "4", "--out", str(symmetric), "--workers", "2"]) == 0
    assert fold.read_bytes() == symmetric.read_bytes()


def test_attack_term_warning(tmp_path, keyfile, caplog):
    args = parse_args(["attack", "--keys", str(keyfile), "--bits", "4", "--out", str(tmp_path / "system.anf")])
    assert cmd_attack(args, Settings(term_warning=1)) == 0
    assert any("Bit 3 equations reach" in r.message for r in caplog.records)


@pytest.mark.parametrize("backend", ["exhaustive", "groebner"])
def test_solve_recovers(systemfile, keyfile, backend, capsys):
    keys = read_key_file(keyfile)
    code = run(["solve", "--system", str(systemfile), "--backend", backend, "--keys", str(keyfile)])
    out = capsys.readouterr().out
    assert code == 0
    assert "recovered: true" in out
    assert f"F = {''.join(str(b) for b in keys.F)}" in out


@pytest.mark.parametrize("backend", ["exhaustive", "groebner"])
def test_solve_capped_listing(systemfile, keyfile, backend, capsys):
    keys = read_key_file(keyfile)
    assert run(["solve", "--system", str(systemfile), "--backend", backend, "--keys", str(keyfile), "--cap", "0"]) == 0
    out = capsys.readouterr().out
    assert "recovered: true" in out
    assert f"F = {''.join(str(b) for b in keys.F)}" not in out


def test_solve_lex_order(systemfile, capsys):
    assert run(["solve", "--system", str(systemfile), "--backend", "groebner", "--order", "lex"]) == 0
    assert "solutions:" in capsys.readouterr().out


def test_solve_foreign_key(tmp_path, systemfile, caplog):
    other = tmp_path / "other.txt"
    assert run(["keygen", "--n", "7", "--q", "128", "--seed", "2", "--out", str(other)]) == 0
    assert run(["solve", "--system", str(systemfile), "--keys", str(other)]) == 0
    assert any("does not come from the given key" in r.message for r in caplog.records)


def test_solve_empty_system(tmp_path, capsys, caplog):
    path = tmp_path / "empty.anf"
    path.write_text("ntru-witt-anf v1\nvars 7\neqs 0\n")
    assert run(["solve", "--system", str(path), "--cap", "4"]) == 0
    out = capsys.readouterr().out
    assert "solutions: 128" in out
    assert out.count("F = ") == 4
    assert any("capped" in r.message for r in caplog.records)


def test_solve_no_solution(tmp_path, capsys):
    path = tmp_path / "unsat.anf"
    path.write_text("ntru-witt-anf v1\nvars 5\neqs 2\n# bit 1 k 0\nx0\n# bit 1 k 1\nx0 + 1\n")
    assert run(["solve", "--system", str(path)]) == 1
    assert run(["solve", "--system", str(path), "--backend", "groebner"]) == 1
    assert "solutions: 0" in capsys.readouterr().out


def test_solve_budget(tmp_path, systemfile):
    assert run(["solve", "--system", str(systemfile), "--backend", "groebner", "--max-pairs", "1"]) == 2
    path = tmp_path / "wide.anf"
    path.write_text("ntru-witt-anf v1\nvars 30\neqs 0\n")
    assert run(["solve", "--system", str(path)]) == 2


def test_solve_parse_error(tmp_path):
    path = tmp_path / "bad.anf"
    path.write_text("ntru-witt-anf v1\nvars 2\n")
    assert run(["solve", "--system", str(path)]) == 2


def test_export_cnf(tmp_path, systemfile):
    out = tmp_path / "system.cnf"
    assert run(["export-cnf", "--system", str(systemfile), "--out", str(out)]) == 0
    text = out.read_text()
    assert "p cnf" in text
    assert any(line.startswith("x") for line in text.splitlines())


def test_bench(tmp_path, capsys):
    path = tmp_path / "bench.csv"
    assert run(["bench", "--n-list", "7", "11", "--trials", "2", "--bits", "3", "--csv", str(path), "--workers", "2"]) == 0
    with open(path, newline="") as file:
        rows = list(csv.DictReader(file))
    assert list(rows[0]) == BenchRecord.header()
    assert [(r["N"], r["seed"]) for r in rows] == [("7", "0"), ("7", "1"), ("11", "0"), ("11", "1")]
    assert all(r["recovered"] == "true" for r in rows)
    assert all(r["n_eqs"] == str(2 * int(r["N"])) for r in rows)
    assert all(r["max_terms_b3"] == "0" for r in rows)


def test_bench_appends(tmp_path):
    path = tmp_path / "bench.csv"
    for _ in range(2):
        assert run(["bench", "--n-list", "7", "--bits", "2", "--csv", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert len(lines) == 3
    assert lines[1].split(",")[:6] == lines[2].split(",")[:6]


def test_bench_rejects_params(tmp_path):
    assert run(["bench", "--n-list", "8", "--csv", str(tmp_path / "b.csv")]) == 2


@pytest.mark.slow
def test_selftest(capsys):
    assert run(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "In witt pairs: 512/512 checks passed" in out
    assert "In end to end" in out
