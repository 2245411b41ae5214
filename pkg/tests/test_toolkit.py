import json
from pathlib import Path

import pytest

from eulerian_lab.counting import count_by_enumeration, eulerian_recurrence, eulerian_table
from eulerian_lab.exceptions import BFileError, CacheError
from eulerian_lab.identities import Ranges
from eulerian_lab.perm_core import StatFamily
from eulerian_lab.toolkit.cache import (FORMAT_VERSION, cache_key, default_cache_path,
                                        load_cache, save_cache)
from eulerian_lab.toolkit.cli import cli_main
from eulerian_lab.toolkit.export import (export_table, report_to_json, table_from_json_obj,
                                         table_to_json_obj)
from eulerian_lab.toolkit.oeis import (BFileSequence, crosscheck_sequence, footnote_check,
                                       format_bfile, parse_bfile, read_bfile, read_triangle,
                                       t_triangle)
from eulerian_lab.trees import r_class_counts

DATA = Path(__file__).parent / "data"


# --- b-files ---------------------------------------------------------------

def test_parse_bfile_examples():
    seq = parse_bfile("1 1\n2 4\n3 1\n")
    assert (seq.offset, seq.values) == (1, (1, 4, 1))
    seq = parse_bfile("# comment\n0 1\n1 2\n")
    assert (seq.offset, seq.values) == (0, (1, 2))
    big = parse_bfile(f"5 {10 ** 40}\n")
    assert big.values == (10 ** 40,)


@pytest.mark.parametrize("text", ["1 1\n3 5\n", "1 1 1\n", "a 1\n", "1 x\n", "# only\n", ""])
def test_parse_bfile_errors(text):
    with pytest.raises(BFileError):
        parse_bfile(text)


def test_format_roundtrip_and_source_id(tmp_path):
    path = tmp_path / "b120434.txt"
    path.write_text(format_bfile([3, 1, 4], offset=2, header="synthetic"))
    seq = read_bfile(path)
    assert seq == BFileSequence(2, (3, 1, 4), "A120434")
    with pytest.raises(BFileError):
        read_bfile(tmp_path / "missing.txt")


def test_eulerian_rows_bfile_crosscheck():
    ref = read_bfile(DATA / "eulerian_rows_1_6.txt")
    assert len(ref) == 21
    rep = crosscheck_sequence(eulerian_recurrence(6), ref)
    assert rep.passed and rep.checked == 21


def test_crosscheck_against_itself():
    table = eulerian_recurrence(8)
    ref = parse_bfile(format_bfile(read_triangle(table), offset=1))
    assert crosscheck_sequence(table, ref).passed
    tt = t_triangle(7)
    assert crosscheck_sequence(tt, parse_bfile(format_bfile(read_triangle(tt)))).passed


def test_crosscheck_off_by_one_fails_at_zero():
    table = eulerian_recurrence(6)
    vals = read_triangle(table)
    tt = t_triangle(6)
    rep = crosscheck_sequence(tt, parse_bfile(format_bfile(read_triangle(tt)[1:])))
    assert rep.verdict == "FAIL"
    assert rep.counterexample.params["position"] == 0
    # the triangle opens with four ones, so a one-step shift first shows at position 3
    rep = crosscheck_sequence(table, parse_bfile(format_bfile(vals[1:], offset=1)))
    assert rep.counterexample.params["position"] == 3


def test_crosscheck_empty_overlap():
    from eulerian_lab.toolkit.oeis import crosscheck_values
    with pytest.raises(BFileError):
        crosscheck_values([], parse_bfile("0 1\n"))


def test_read_triangle_reverse():
    assert read_triangle(eulerian_recurrence(3), reverse=True) == [1, 1, 1, 1, 4, 1]
    assert read_triangle(t_triangle(4)) == [1, 2, 4, 2]


# --- footnote check on synthetic fixtures ----------------------------------

def test_footnote_requires_references():
    with pytest.raises(BFileError):
        footnote_check(None)
    with pytest.raises(BFileError):
        footnote_check({})


def test_footnote_synthetic_aligned():
    # a fixture built from the tree counts themselves must align (start row 3, ascending)
    vals = read_triangle(t_triangle(7), rows=range(3, 8))
    fake = BFileSequence(1, tuple(vals), "A120434")
    rep = footnote_check({"A120434": fake}, Ranges(max_n=7))
    assert rep.passed
    assert any("A120434 aligns with" in n and "n>=3, ell ascending" in n for n in rep.notes)


def test_footnote_synthetic_doubled():
    # rows n >= 3 are all even, so a halved fixture is exact; A144696 is compared doubled
    vals = read_triangle(t_triangle(6), rows=range(3, 7))
    assert all(v % 2 == 0 for v in vals)
    ref = BFileSequence(0, tuple(v // 2 for v in vals), "A144696")
    rep = footnote_check({"A144696": ref}, Ranges(max_n=6))
    assert rep.passed
    assert any("A144696 aligns with" in n for n in rep.notes)
    undoubled = BFileSequence(0, tuple(vals), "A144696")
    assert footnote_check({"A144696": undoubled}, Ranges(max_n=6)).verdict == "FAIL"


def test_footnote_synthetic_mismatch_revalidated():
    fake = BFileSequence(0, (7, 7, 7, 7, 7, 7), "A120434")
    rep = footnote_check({"A120434": fake}, Ranges(max_n=6))
    assert rep.verdict == "FAIL"
    ce = rep.counterexample
    assert ce.revalidated and ce.brute_lhs == ce.lhs and ce.lhs != ce.rhs
    assert rep.notes


# --- export ---------------------------------------------------------------

def test_json_export_support_only():
    obj = json.loads(export_table(eulerian_recurrence(4), "json"))
    assert obj["kind"] == "eulerian" and len(obj["entries"]) == 10
    assert all(isinstance(e["value"], str) for e in obj["entries"])
    assert {"n": 4, "m": 1, "value": "11"} in obj["entries"]


def test_csv_matches_golden_file(tmp_path):
    golden = (DATA / "eulerian_rows_1_6.csv").read_bytes()
    out = tmp_path / "t.csv"
    export_table(eulerian_recurrence(6), "csv", out)
    assert out.read_bytes() == golden


def test_export_errors(tmp_path):
    with pytest.raises(ValueError):
        export_table(eulerian_recurrence(2), "xml")
    with pytest.raises(OSError):
        export_table(eulerian_recurrence(2), "csv", tmp_path / "no" / "such" / "dir.csv")


def test_json_roundtrip_is_lossless():
    t = eulerian_recurrence(40)
    back = table_from_json_obj(json.loads(json.dumps(table_to_json_obj(t))))
    assert back.same_counts(t) and back.kind == t.kind and back.params == t.params


def test_report_json():
    from eulerian_lab.identities import verify
    doc = json.loads(report_to_json(verify("t_closed_form", Ranges(max_n=4))))
    assert doc[0]["verdict"] == "FAIL" and doc[0]["counterexample"]["lhs"] == "4"


# --- cache ----------------------------------------------------------------

def _counting_tables():
    tables = {}
    for n in range(1, 9):
        tables[cache_key("eulerian/recurrence", n)] = eulerian_table(n)
        for family in StatFamily:
            for r in (1, 2):
                tables[cache_key(family.value, n, r)] = count_by_enumeration(n, r, family)
    return tables


def test_cache_roundtrip(tmp_path):
    tables = _counting_tables()
    path = save_cache(tmp_path / "c" / "tables.json", tables)
    loaded = load_cache(path)
    assert loaded.format_version == FORMAT_VERSION
    assert set(loaded.tables) == set(tables)
    for key, t in tables.items():
        got = loaded.tables[key]
        assert got.same_counts(t) and got.kind == t.kind and got.method == t.method


def test_cache_corrupted_checksum(tmp_path):
    path = save_cache(tmp_path / "tables.json", {"k": eulerian_recurrence(4)})
    doc = json.loads(path.read_text())
    doc["payload"]["tables"]["k"]["entries"][0]["value"] = "2"
    path.write_text(json.dumps(doc))
    with pytest.raises(CacheError, match="checksum"):
        load_cache(path)


def test_cache_version_mismatch(tmp_path):
    path = save_cache(tmp_path / "tables.json", {"k": eulerian_recurrence(4)})
    doc = json.loads(path.read_text())
    doc["format_version"] = FORMAT_VERSION + 1
    path.write_text(json.dumps(doc))
    with pytest.raises(CacheError, match="version"):
        load_cache(path)


def test_cache_unreadable(tmp_path):
    with pytest.raises(CacheError):
        load_cache(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(CacheError):
        load_cache(bad)


def test_cache_env_var(tmp_path, monkeypatch):
    target = tmp_path / "env.json"
    monkeypatch.setenv("EULERIAN_LAB_CACHE", str(target))
    assert default_cache_path() == target
    assert cli_main(["triangle", "--n", "5", "--use-cache"]) == 0
    assert target.exists()
    assert cache_key("eulerian/recurrence", 5, 1) in load_cache(target).tables
    # second run is served from the file
    assert cli_main(["triangle", "--n", "5", "--use-cache"]) == 0
    assert cli_main(["cache", "info"]) == 0
    assert cli_main(["cache", "clear"]) == 0
    assert not target.exists()


# --- CLI ------------------------------------------------------------------

def test_cli_triangle_text(capsys):
    assert cli_main(["triangle", "--kind", "eulerian", "--n", "6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["1", "1 1", "1 4 1", "1 11 11 1", "1 26 66 26 1", "1 57 302 302 57 1"]


def test_cli_triangle_csv(capsys):
    assert cli_main(["triangle", "--kind", "eulerian", "--n", "6", "--format", "csv"]) == 0
    assert capsys.readouterr().out == (DATA / "eulerian_rows_1_6.csv").read_text()


def test_cli_other_kinds(capsys, tmp_path):
    out = tmp_path / "d.json"
    assert cli_main(["triangle", "--kind", "r_descent", "--n", "4", "--r", "2",
                     "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert sum(int(e["value"]) for e in doc["entries"]) == 24
    assert cli_main(["triangle", "--kind", "trees_R", "--n", "4"]) == 0
    assert cli_main(["trees", "--n", "4"]) == 0
    text = capsys.readouterr().out
    assert "R(4,2,3) = 2" in text and "T(4,2) = 4" in text


def test_cli_foata_and_stats(capsys):
    assert cli_main(["foata", "51283647"]) == 0
    out = capsys.readouterr().out
    assert "512 | 83647" in out and out.splitlines()[-1] == "25671483"
    assert cli_main(["foata", "--exc-to-desc", "6214573"]) == 0
    assert capsys.readouterr().out.strip() == "2457613"
    assert cli_main(["foata", "--inverse", "3,2,7,4,5,1,6"]) == 0
    assert capsys.readouterr().out.strip() == "2457613"
    assert cli_main(["stats", "6214573"]) == 0
    assert "r_excedance r=1: 2" in capsys.readouterr().out


def test_cli_verify_exit_codes(capsys):
    assert cli_main(["verify", "--id", "thm4_desc_exc", "--max-n", "6"]) == 0
    assert cli_main(["verify", "--id", "t_closed_form", "--max-n", "6"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "re-validated by brute force: yes" in out
    assert cli_main(["verify", "--id", "t_closed_form", "--max-n", "6", "--min-n", "4"]) == 1
    assert "(n=4, ell=2): lhs=16 rhs=4" in capsys.readouterr().out
    assert cli_main(["verify", "--id", "worpitzky_generalized", "--variant", "corrected"]) == 0
    assert cli_main(["verify", "--id", "all", "--max-n", "5"]) == 1


def test_cli_verify_json(tmp_path):
    out = tmp_path / "r.json"
    assert cli_main(["verify", "--id", "row_sums", "--format", "json", "--out", str(out)]) == 0
    assert json.loads(out.read_text())[0]["verdict"] == "PASS"


def test_cli_usage_errors(tmp_path):
    assert cli_main([]) == 2
    assert cli_main(["triangle"]) == 2
    assert cli_main(["verify", "--id", "nope"]) == 2
    assert cli_main(["foata", "1123"]) == 2
    assert cli_main(["trees", "--n", "40"]) == 2
    assert cli_main(["verify", "--id", "thm4_desc_exc", "--max-n", "20"]) == 2
    assert cli_main(["verify", "--id", "footnote_2eulerian"]) == 2
    assert cli_main(["oeis-check"]) == 2
    assert cli_main(["--config", str(tmp_path / "missing.json"), "stats", "21"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n3 1\n")
    assert cli_main(["oeis-check", "--bfile", str(bad)]) == 2


def test_cli_config_layering(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_n": 4}))
    assert cli_main(["--config", str(cfg), "verify", "--id", "row_sums"]) == 0
    assert "(4 tuples" in capsys.readouterr().out
    assert cli_main(["--config", str(cfg), "verify", "--id", "row_sums", "--max-n", "6"]) == 0
    assert "(6 tuples" in capsys.readouterr().out


def test_cli_oeis_check(tmp_path, capsys):
    assert cli_main(["oeis-check", "--bfile", str(DATA / "eulerian_rows_1_6.txt")]) == 0
    ref = tmp_path / "b120434.txt"
    ref.write_text(format_bfile(read_triangle(t_triangle(7), rows=range(2, 8)), offset=1))
    assert cli_main(["oeis-check", "--footnote", "--ref", str(ref), "--max-n", "7"]) == 0
    assert "A120434 aligns with" in capsys.readouterr().out
    assert cli_main(["oeis-check", "--footnote", "--max-n", "7"]) == 2


def test_t_triangle_matches_classes():
    t = t_triangle(6)
    for n in range(2, 7):
        total = sum(v for (nn, _), v in t.entries.items() if nn == n)
        assert total == sum(r_class_counts(n).values())
