import json

import pytest

from chromacount.cli import (assignment_from_text, assignment_to_text,
                             build_parser, main)
from chromacount.counting import ListAssignment


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_witness_text_round_trip():
    L = ListAssignment.from_sets([{1, 3}, {0, 2, 5}, {4}])
    assert assignment_from_text(assignment_to_text(L)).masks == L.masks


def test_chrompoly(capsys):
    code, out, _ = run(capsys, "chrompoly", "theta:2,2,4", "--m", "3")
    assert code == 0 and "= 102" in out
    code, out, _ = run(capsys, "chrompoly", "cycle:5", "--m", "2", "--json")
    assert code == 0
    assert json.loads(out)["value"] == 0


def test_listcf_exact_with_witness(capsys):
    code, out, _ = run(capsys, "listcf", "theta:2,2,4", "--m", "2",
                       "--exact", "--witness")
    assert code == 0
    assert "P_l(theta:2,2,4, 2) = 1" in out
    witness_lines = [l for l in out.splitlines() if l.startswith("v")]
    L = assignment_from_text("\n".join(witness_lines))
    assert L.n == 7 and L.is_m_assignment(2)


def test_listcf_json_schema(capsys):
    code, out, _ = run(capsys, "listcf", "cycle:4", "--m", "2", "--json",
                       "--witness")
    doc = json.loads(out)
    assert code == 0
    assert doc["status"] == "exact" and doc["lo"] == doc["hi"] == 2
    assert len(doc["witness"]) == 4


def test_listcf_heuristic(capsys):
    code, out, _ = run(capsys, "listcf", "theta:2,2,6", "--m", "2",
                       "--heuristic", "--budget", "100", "--seed", "1",
                       "--json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "upper-bound" and doc["hi"] == 1


def test_dpcf(capsys):
    code, out, _ = run(capsys, "dpcf", "theta:2,2,4", "--m", "3")
    assert code == 0 and "= 78" in out and "36 covers" in out


def test_nu_tau(capsys):
    code, out, _ = run(capsys, "nu-tau", "cycle:4", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["chi"] == 2 and doc["nu"] == [2, 2] and doc["tau"] == [2, 2]


def test_check_ecc_weak(capsys):
    code, out, _ = run(capsys, "check-ecc", "theta:2,2,4", "--weak")
    assert code == 0 and "False" in out


def test_classify(tmp_path, capsys):
    from chromacount.graph import build_family_text, to_graph6
    f = tmp_path / "graphs.g6"
    f.write_text("\n".join(to_graph6(build_family_text(s))
                           for s in ("cycle:6", "theta:2,2,4", "path:3")) + "\n")
    code, out, _ = run(capsys, "classify", "--in", str(f), "--json")
    doc = json.loads(out)
    assert code == 0
    kinds = [r["core"] for r in doc["graphs"]]
    assert kinds == ["even-cycle", "theta-2-2-2k", "K1"]
    theta_rec = doc["graphs"][1]
    assert theta_rec["ecc"] is False and theta_rec["witness_count"] == 1


def test_witness_commands(capsys):
    code, out, _ = run(capsys, "witness", "theta", "--k", "3")
    assert code == 0 and "count = 1" in out
    code, out, _ = run(capsys, "witness", "k224", "--json")
    assert code == 0 and json.loads(out)["count"] == 4
    code, _, err = run(capsys, "witness", "theta")
    assert code == 2 and "requires --k" in err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--lemma", "T1.6",
                       "--trials", "10", "--seed", "3")
    assert code == 0 and "holds" in out


def test_bad_spec_is_usage_error(capsys):
    code, _, err = run(capsys, "chrompoly", "cycle:banana", "--m", "2")
    assert code == 2 and "error" in err


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["frobnicate"])
    assert exc.value.code == 2


def test_reproduce_paper_only_rows(tmp_path, capsys):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "reproduce-paper", "--seed", "42",
                       "--only", "theta-unique-witness",
                       "--only", "dp-theta",
                       "--format", "json", "--out", str(out_file))
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and len(doc["rows"]) == 2
    assert json.loads(out_file.read_text()) == doc


def test_reproduce_paper_unknown_row(capsys):
    code, _, err = run(capsys, "reproduce-paper", "--only", "nope")
    assert code == 2 and "unknown row" in err
