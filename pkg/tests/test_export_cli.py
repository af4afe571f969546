import json

import pytest

from src import config
from src.abp.core import expand
from src.abp.export import from_json, load_abp, save_json, to_dot, to_json
from src.algebra.scalars import PrimeField
from src.cli import verify
from src.cli.bench import BENCH_CONSTRUCTIONS, ratio_outliers, run_bench
from src.cli.main import run
from src.constructions.determinant import construct_ncdet, construct_weak_S_star
from src.constructions.symmetric import construct_S_star, s_star_size_bound
from src.errors import InvalidParameterError
from src.poly.ncpoly import RectMatrixVars
from src.poly.oracle import brute_S_star


# ── JSON / DOT ──

def test_json_round_trip_is_byte_stable():
    b = construct_S_star(4, 3)
    text = to_json(b)
    again = from_json(text)
    assert to_json(again) == text
    assert expand(again) == expand(b)


def test_json_keeps_prime_field():
    f7 = PrimeField(7)
    b = construct_weak_S_star(3, 2, field=f7)
    again = from_json(to_json(b))
    assert again.field == f7
    assert expand(again) == expand(b)


def test_json_rejects_out_of_range_variable():
    doc = json.loads(to_json(construct_ncdet(2)))
    doc["edges"][0]["terms"][0]["var"] = 99
    with pytest.raises(InvalidParameterError):
        from_json(json.dumps(doc))


def test_dot_output():
    text = to_dot(construct_ncdet(2), RectMatrixVars(2, 2))
    assert text.startswith("digraph abp {")
    assert "y_{1,1}" in text
    assert "doublecircle" in text


def test_save_json_creates_folders(tmp_path):
    path = tmp_path / "a" / "b" / "x.json"
    save_json(str(path), {"k": 1})
    assert json.loads(path.read_text(encoding="utf-8")) == {"k": 1}


# ── CLI ──

def test_construct_s_star(tmp_path):
    out = tmp_path / "abp.json"
    assert run(["construct", "s-star", "--n", "4", "--k", "2", "--out", str(out), "--quiet"]) == 0
    b = load_abp(str(out))
    assert expand(b) == brute_S_star(4, 2)
    assert b.size <= s_star_size_bound(4, 2)


def test_construct_then_expand_round_trip(tmp_path, capsys):
    out = tmp_path / "ncdet.json"
    run(["construct", "ncdet", "--k", "2", "--out", str(out), "--quiet"])
    capsys.readouterr()
    assert run(["expand", "--abp", str(out)]) == 0
    from_file = capsys.readouterr().out
    assert run(["expand", "ncdet", "--k", "2"]) == 0
    direct = capsys.readouterr().out
    assert from_file.splitlines()[0].split()[0] == direct.splitlines()[0].split()[0] == "1"
    assert direct == "1  y_{1,1} y_{2,2}\n-1  y_{1,2} y_{2,1}\n"


def test_construct_dot(capsys):
    assert run(["construct", "filter", "--n", "2", "--k", "1", "--format", "dot", "--quiet"]) == 0
    assert capsys.readouterr().out.startswith("digraph")


def test_eval_point(capsys):
    assert run(["eval", "ncdet", "--k", "2", "--point", "1,2,3,4"]) == 0
    assert capsys.readouterr().out.strip() == "-2"


def test_eval_ones_over_prime_field(capsys):
    assert run(["eval", "s-star", "--n", "4", "--k", "2", "--ones", "--field", "fp:5"]) == 0
    assert capsys.readouterr().out.strip() == "2 mod 5"


def test_count_paths_rdet(triangle_file, capsys):
    assert run(["count-paths", "--graph", triangle_file, "--k", "3", "--method", "rdet"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_hadamard_files(tmp_path, capsys):
    a = tmp_path / "a.json"
    save_json(str(a), to_json(construct_S_star(3, 2)))
    out = tmp_path / "h.json"
    assert run(["hadamard", str(a), str(a), "--out", str(out), "--quiet"]) == 0
    assert expand(load_abp(str(out))) == brute_S_star(3, 2)


def test_rdet_matrix_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[1, 2, 3], [4, 5, 6]]), encoding="utf-8")
    assert run(["rdet", "--matrix", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "-12"
    assert run(["rper", "--matrix", str(path)]) == 0
    assert capsys.readouterr().out.strip() == str(1 * 5 + 1 * 6 + 2 * 4 + 2 * 6 + 3 * 4 + 3 * 5)


def test_rper_over_matrix_algebra(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[[[0, 1], [0, 0]], [[1, 0], [0, 1]]]]), encoding="utf-8")
    assert run(["rper", "--matrix", str(path)]) == 0
    assert capsys.readouterr().out.split() == ["1", "1", "0", "1"]


def test_invalid_parameters_exit_1(capsys):
    assert run(["construct", "s-star", "--n", "2", "--k", "3"]) == 1
    assert run(["construct", "nope", "--n", "2", "--k", "1"]) == 1
    assert run(["eval", "ncdet", "--k", "2", "--point", "1,2"]) == 1


def test_missing_file_exit_1(tmp_path):
    assert run(["count-paths", "--graph", str(tmp_path / "missing.txt"), "--k", "2"]) == 1


def test_guard_exit_2(monkeypatch):
    monkeypatch.setattr(config, "EXPAND_GUARD", 1)
    assert run(["expand", "ncdet", "--k", "3"]) == 2


def test_verify_failure_exit_3(monkeypatch):
    def broken(max_n, max_k, rng):
        yield "always", lambda: (False, "forced")

    monkeypatch.setitem(verify.SUITES, "sign", broken)
    assert run(["verify", "--suite", "sign", "--quiet"]) == 3


def test_verify_small_suites(capsys):
    assert run(["verify", "--suite", "sign", "ncdet", "hadamard", "--max-k", "3", "--quiet"]) == 0


def test_verify_all():
    assert run(["verify", "--suite", "all", "--max-n", "5", "--max-k", "3", "--quiet"]) == 0


def test_bench_table(capsys):
    assert run(["bench", "--max-n", "3", "--max-k", "2", "--quiet"]) == 0
    out = capsys.readouterr().out
    assert "us_per_node" in out
    assert "s-star" in out


def test_bench_time_per_node_stays_within_factor():
    df = run_bench(5, 3, quiet=True)
    assert set(df["construction"]) == set(BENCH_CONSTRUCTIONS)
    assert ratio_outliers(df).empty


def test_count_paths_over_prime_field_prints_exact_count(tmp_path, capsys):
    graph = tmp_path / "two.txt"
    graph.write_text("1 2\n2 1\n", encoding="utf-8")
    assert run(["count-paths", "--graph", str(graph), "--k", "2", "--method", "rdet", "--field", "fp:3"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_malformed_matrix_cell_exit_1(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[{"coord": [1]}]]), encoding="utf-8")
    assert run(["rper", "--matrix", str(path)]) == 1
    assert "coords" in capsys.readouterr().err


def test_rper_coordinate_cells_with_r(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[{"coords": [0, 1, 0, 0]}, {"coords": [1, 0, 0, 1]}]]), encoding="utf-8")
    assert run(["rper", "--matrix", str(path), "--r", "2"]) == 0
    assert capsys.readouterr().out.split() == ["1", "1", "0", "1"]
    assert run(["rper", "--matrix", str(path), "--r", "3"]) == 1


def test_rdet_over_diagonal_algebra(tmp_path, capsys):
    path = tmp_path / "m.json"
    cells = [[{"algebra": "diagonal:2", "coords": [1, 2]}, {"algebra": "diagonal:2", "coords": [3, 4]}]]
    path.write_text(json.dumps(cells), encoding="utf-8")
    assert run(["rdet", "--matrix", str(path)]) == 0
    assert capsys.readouterr().out.split() == ["4", "6"]
