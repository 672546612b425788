import json

import pytest

from chainorder import cli
from chainorder.cli import RunConfig, main, run, table_taus
from chainorder.posets import as_tau_shape, poset_from_json


def run_main(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_roundtrip(capsys):
    code, out, _ = run_main(capsys, "gen", "--tau", "2,1")
    assert code == 0
    p = poset_from_json(out)
    assert as_tau_shape(p) == (2, 1)


def test_dd_order_json(capsys):
    code, out, _ = run_main(capsys, "dd", "--tau", "2,2", "--polytope", "order")
    assert code == 0
    data = json.loads(out)
    assert data["vars"] == ["y1_1", "y1_2", "y2_1", "y2_2"]
    assert len(data["vertices"]) == 7
    assert len(data["ineqs"]) == 8
    assert data["eqs"] == []


def test_dd_chain_order(capsys):
    code, out, _ = run_main(capsys, "dd", "--tau", "2,2", "--polytope", "chain-order", "--k", "1")
    assert code == 0
    data = json.loads(out)
    assert len(data["vertices"]) == 7
    assert len(data["ineqs"]) == 8


def test_fvector_segment_csv(capsys):
    code, out, _ = run_main(capsys, "fvector", "--tau", "1", "--k", "0")
    assert code == 0
    assert out == "1,0,order,2\n"


def test_fvector_both_methods_quoted_tau(capsys):
    code, out, _ = run_main(capsys, "fvector", "--tau", "2,2,2", "--k", "1", "--method", "both")
    assert code == 0
    assert out.startswith('"2,2,2",1,chain-order,')
    row = out.strip().rsplit(",", 6)
    assert [int(x) for x in row[1:]] == list(__import__("chainorder").f_vector_normal_form((2, 2, 2), 1))


def test_fvector_flagship_row(capsys):
    code, out, _ = run_main(capsys, "fvector", "--tau", "2,2,2,2,2", "--k", "5", "--method", "both")
    assert code == 0
    assert out.strip().endswith(",285,42")


def test_fvector_json_format(capsys):
    code, out, _ = run_main(capsys, "fvector", "--tau", "2,2", "--k", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["polytope"] == "chain"
    assert data["f"] == [7, 17, 18, 8]


def test_fvector_export_lattice(tmp_path, capsys):
    out_path = tmp_path / "lattice.json"
    code, _, _ = run_main(
        capsys, "fvector", "--tau", "1,1", "--k", "0", "--method", "geometric",
        "--export-lattice", str(out_path),
    )
    assert code == 0
    data = json.loads(out_path.read_text())
    # triangle: bottom + 3 vertices + 3 edges + top
    assert len(data["faces"]) == 8
    dims = sorted(f["dim"] for f in data["faces"])
    assert dims == [-1, 0, 0, 0, 1, 1, 1, 2]
    assert all(len(e) == 2 for e in data["covers"])


def test_fvector_poset_file(tmp_path, capsys):
    poset_path = tmp_path / "p.json"
    code, out, _ = run_main(capsys, "gen", "--tau", "2,2", "--output", str(poset_path))
    assert code == 0
    code, out, _ = run_main(
        capsys, "fvector", "--poset", str(poset_path), "--method", "geometric", "--polytope", "chain"
    )
    assert code == 0
    assert out.endswith(",chain,7,17,18,8\n")


def test_fvector_config_errors(capsys):
    assert run_main(capsys, "fvector", "--tau", "2,2")[0] == 2  # missing k
    assert run_main(capsys, "fvector", "--tau", "0,2", "--k", "0")[0] == 2
    assert run_main(capsys, "fvector", "--tau", "2,2", "--k", "9")[0] == 2


def test_fvector_poset_rejects_normalform(tmp_path, capsys):
    poset_path = tmp_path / "p.json"
    run_main(capsys, "gen", "--tau", "1,1", "--output", str(poset_path))
    code, _, err = run_main(capsys, "fvector", "--poset", str(poset_path), "--method", "both")
    assert code == 2
    assert "geometric" in err


def test_mismatch_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli, "f_vector_normal_form", lambda tau, k: (99,))
    code, _, err = run_main(capsys, "fvector", "--tau", "1,1", "--k", "0", "--method", "both")
    assert code == 1
    assert "mismatch" in err


def test_verify_monotone(capsys, tmp_path):
    json_path = tmp_path / "report.json"
    code, out, _ = run_main(
        capsys, "verify", "monotone", "--tau", "2,2,2", "--json", str(json_path)
    )
    assert code == 0
    assert "monotone=True" in out
    data = json.loads(json_path.read_text())
    assert data["ok"] is True
    assert data["f_vectors"]["0"][0] == data["f_vectors"]["3"][0]


def test_verify_injectivity(capsys):
    code, out, _ = run_main(capsys, "verify", "injectivity", "--tau", "2,2", "--k", "0")
    assert code == 0
    assert "injective=True" in out and "codim_preserved=True" in out


def test_verify_injectivity_all_cuts(capsys):
    code, out, _ = run_main(capsys, "verify", "injectivity", "--tau", "2,1,1")
    assert code == 0
    assert out.count("injective=True") == 3


def test_table_selects_figure_rows():
    rows = table_taus(10)
    assert len(rows) == 28
    assert rows[0] == (2, 2, 1, 1, 1, 1, 1, 1)
    assert rows[3] == (2, 2, 2, 2, 2)
    assert rows[-1] == (7, 2, 1)
    # at least three ranks, at least two ranks of size >= 2, no repeats
    assert all(len(t) >= 3 and sum(x >= 2 for x in t) >= 2 for t in rows)
    assert all(tuple(sorted(t, reverse=True)) == t for t in rows)
    assert len(set(rows)) == 28


def test_table_small(capsys):
    code, out, _ = run_main(capsys, "table", "--n", "6", "--method", "both")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6  # three rows, order and chain each
    assert lines[0].startswith('"2,2,1,1",0,order,')
    assert lines[1].startswith('"2,2,1,1",4,chain,')
    assert lines[-1].startswith('"3,2,1",3,chain,')


def test_table_json(capsys):
    code, out, _ = run_main(capsys, "table", "--n", "5", "--format", "json", "--method", "normalform")
    assert code == 0
    data = json.loads(out)
    assert [d["tau"] for d in data] == ["2,2,1", "2,2,1"]
    assert data[0]["polytope"] == "order" and data[1]["polytope"] == "chain"


def test_run_config_direct():
    cfg = RunConfig(command="fvector", tau=(1, 1), k=1, method="normalform")
    assert run(cfg) == 0


def test_unknown_flags_exit_two():
    with pytest.raises(SystemExit) as err:
        main(["fvector", "--bogus"])
    assert err.value.code == 2
