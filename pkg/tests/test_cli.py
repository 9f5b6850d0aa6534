import csv
import io
import json

import pytest

from arborite.cli import main
from arborite.generators import gen_class_A


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_class_json(capsys):
    code, out, _ = run(capsys, "check-class", "fixture:K:4", "--json")
    data = json.loads(out)
    assert code == 0 and data["class_A"] is False and data["girth"] == 3


def test_verify_exit_codes(capsys, tmp_path):
    good = tmp_path / "good.col"
    good.write_text("t=2\n0 1\n1 2\n2 1\n3 2\n")
    assert run(capsys, "verify", "fixture:C:4", str(good))[0] == 0
    bad = tmp_path / "bad.col"
    bad.write_text("t=1\n0 1\n1 1\n2 1\n3 1\n")
    code, out, _ = run(capsys, "verify", "fixture:C:4", str(bad), "--json")
    assert code == 1 and json.loads(out)["forests"] is False


def test_color_then_verify(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(gen_class_A(12, 5).to_json())
    col, trace = tmp_path / "c.txt", tmp_path / "t.txt"
    code, _, _ = run(capsys, "color", str(g), "--t", "3", "--out", str(col), "--trace", str(trace))
    assert code == 0 and trace.read_text().startswith("trace n=12 t=3")
    assert run(capsys, "verify", str(g), str(col))[0] == 0


def test_audit_c4_thm3_total(capsys):
    code, out, _ = run(capsys, "audit", "fixture:C:4", "--scheme", "thm3")
    assert code == 0 and "final_total=-20/1" in out.splitlines()[0]
    code, out, _ = run(capsys, "audit", "fixture:C:4", "--scheme", "thm3", "--json")
    assert json.loads(out)["total"] == "-20"


def test_a_star_eq_tree_prints_one(capsys):
    code, out, _ = run(capsys, "a-star-eq", "fixture:P:7")
    assert code == 0 and out.strip() == "1"


def test_exact(capsys):
    code, out, _ = run(capsys, "exact", "fixture:C:4", "--t", "1", "--json")
    assert json.loads(out)["status"] == "no"
    code, out, _ = run(capsys, "exact", "fixture:C:4")
    assert out.strip() == "a_eq=2"


def test_graph6_literal_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "check-class", "Cl", "--json")
    assert json.loads(out)["girth"] == 4
    f = tmp_path / "g.g6"
    f.write_text("Cl\n")
    assert json.loads(run(capsys, "check-class", str(f), "--json")[1])["n"] == 4


def test_usage_and_input_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["color", "fixture:C:4"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["nope"])
    assert info.value.code == 2
    assert run(capsys, "check-class", "fixture:nonsense")[0] == 2
    assert run(capsys, "gen", "A")[0] == 2
    assert run(capsys, "check-class", "?")[0] == 0  # K0 is a valid graph6 string
    assert run(capsys, "check-class", "C~~~")[0] == 2


def test_gen_and_seed_env(capsys, tmp_path, monkeypatch):
    out = tmp_path / "a.jsonl"
    assert run(capsys, "gen", "A", "--n", "9", "--count", "3", "--out", str(out))[0] == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3 and json.loads(lines[0])["provenance"]["seed"] == 0
    monkeypatch.setenv("ARBORITE_SEED", "40")
    _, text, _ = run(capsys, "gen", "B", "--n", "9", "--known")
    data = json.loads(text)
    assert data["provenance"]["seed"] == 40 and data["known"]["class_B"] is True
    assert data["known"]["a_star_eq"] >= data["known"]["a_eq"]


def test_bench_csv_and_figures(capsys, tmp_path):
    csv_path, figs = tmp_path / "b.csv", tmp_path / "figs"
    code, _, _ = run(capsys, "bench", "--count", "3", "--nmin", "6", "--nmax", "8",
                     "--csv", str(csv_path), "--figures", str(figs))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(csv_path.read_text())))
    assert {"instance", "n", "t", "method", "success", "nodes", "steps"} <= set(rows[0])
    assert all(r["success"] == "true" for r in rows)
    assert sorted(p.name for p in figs.iterdir()) == ["bench_effort.png", "bench_fallback.png"]


def test_every_subcommand_has_json_and_help(capsys):
    for cmd in ("check-class", "color", "verify", "exact", "a-star-eq", "audit", "gen", "bench"):
        with pytest.raises(SystemExit) as info:
            main([cmd, "--help"])
        assert info.value.code == 0
        assert "--json" in capsys.readouterr().out
