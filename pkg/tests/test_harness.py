import json

import pytest

from cycbound.harness import (ResultsCache, apply_bound_ii_gate, evaluate_code, main, score, summary_csv,
                              table_csv, table_rows)

from expected import CODE21_BOUNDS, CODE21_DISTANCE, PUBLISHED_ROWS


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_all(capsys):
    code, out, _ = _run(capsys, "bound", "--q", "2", "--n", "21", "--set", "C1+C3+C7+C9")
    assert code == 0
    doc = json.loads(out)
    assert {k: v["value"] for k, v in doc.items()} == CODE21_BOUNDS


def test_bound_single_kind(capsys):
    code, out, _ = _run(capsys, "bound", "--q", "2", "--n", "21", "--set", "C1+C3+C7+C9", "--kind", "roos")
    assert code == 0 and json.loads(out)["value"] == 8


def test_distance(capsys):
    code, out, _ = _run(capsys, "distance", "--q", "2", "--n", "21", "--set", "C1+C3+C7+C9")
    doc = json.loads(out)
    assert code == 0 and doc["d"] == CODE21_DISTANCE
    assert sum(1 for x in doc["weight_witness"] if x) == CODE21_DISTANCE


def test_pattern_and_cosets(capsys):
    code, out, _ = _run(capsys, "pattern", "(0^2)D", "0DND0")
    assert code == 0 and json.loads(out) == {"included": True, "shift": 4}
    code, out, _ = _run(capsys, "cosets", "--q", "2", "--n", "7")
    assert json.loads(out) == {"C0": [0], "C1": [1, 2, 4], "C3": [3, 5, 6]}


def test_schaub(capsys):
    code, out, err = _run(capsys, "schaub", "--q", "2", "--n", "7", "--set", "C1")
    assert code == 0 and int(out) == 3 and "warning" in err


def test_proof(capsys):
    code, out, _ = _run(capsys, "proof", "--n", "29", "--ell", "7", "--m", "2", "--r", "1", "--s", "5")
    assert code == 0
    assert "REMOVED" in out
    assert json.loads(out.strip().splitlines()[-1])["min_survivors"] == 11


@pytest.mark.parametrize("argv,code", [
    (["bound", "--q", "2", "--n", "14", "--set", "1"], 3),
    (["bound", "--q", "2", "--n", "21", "--set", "C1+X"], 2),
    (["bound", "--q", "2", "--n", "21", "--kind", "nope"], 2),
    (["pattern", "0Q", "000"], 2),
    (["distance", "--q", "2", "--n", "31", "--set", "C1", "--distance-cap", "10"], 4),
])
def test_exit_codes(capsys, argv, code):
    assert _run(capsys, *argv)[0] == code


def test_table_jobs_and_resume(tmp_path):
    one = table_csv(table_rows(2, [15, 17], jobs=1))
    two = table_csv(table_rows(2, [15, 17], jobs=2))
    assert one == two
    cache = ResultsCache(tmp_path)
    first = table_csv(table_rows(2, [15, 17], cache=cache))
    assert (tmp_path / "q2_n15.json").exists() and (tmp_path / "q2_n17.json").exists()
    again = table_csv(table_rows(2, [15, 17], cache=ResultsCache(tmp_path)))
    assert first == again == one
    assert one.splitlines()[1] == "15," + ",".join(map(str, PUBLISHED_ROWS[2][15]))


def test_table_cli_writes_summary(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, _ = _run(capsys, "table", "--q", "3", "--n-min", "8", "--n-max", "10", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,N_codes,BCH,HT,BS,RS,BC"
    assert [l.split(",")[0] for l in lines[1:]] == ["8", "10"]      # n=9 skipped, gcd
    summary = out.with_suffix(".summary.csv").read_text().splitlines()
    assert summary[-1].startswith("total,48,")


def test_table_skips_over_cap(capsys):
    code, out, _ = _run(capsys, "table", "--q", "2", "--n", "15", "--distance-cap", "3")
    assert code == 0
    assert int(out.splitlines()[1].split(",")[1]) < 32


def test_gate_lowers_bound_ii_excess():
    entry = {"S": [1, 2], "distance": 5, "bounds": {"BOUND_C": 7},
             "witnesses": {"BOUND_C": {"case": "II", "lam": 1, "mu": 3, "s": 2}}}
    apply_bound_ii_gate(entry)
    assert entry["bounds"]["BOUND_C"] == 6 and len(entry["incidents"]) == 1
    ok = {"S": [1], "distance": 7, "bounds": {"BOUND_C": 7},
          "witnesses": {"BOUND_C": {"case": "II", "lam": 1, "mu": 3, "s": 2}}}
    assert "incidents" not in apply_bound_ii_gate(ok)


def test_score_excess_semantics():
    entries = [evaluate_code(2, 21, S) for S in [(), (1, 2, 4, 8, 11, 16), tuple(range(21))]]
    row = score(21, entries)
    assert row.N_codes == 3
    assert score(21, entries, exclude_trivial=True).N_codes == 1
    text = summary_csv([row])
    assert text.splitlines()[0] == "n,N_codes,BCH,HT,BS,RS,BC,skipped,incidents,status"
