import csv
import io
import json

import pytest

from eulerlab import cli
from eulerlab.asymptotics import TermBreakdown, drh_ratio, rhs_aim
from eulerlab.characters import character_from_label


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_characters_q4(capsys):
    code, out, _ = run(capsys, "characters", "--q", "4")
    assert code == 0
    table = rows(out)
    assert [r["label"] for r in table] == ["4.0", "4.1"]
    assert table[1]["tau_im"] == "2" and table[1]["eps_re"] == "1"


def test_drh_matches_library(capsys):
    code, out, _ = run(capsys, "drh", "--chi", "4.1", "--x", "1e3:1e6:1")
    assert code == 0
    table = rows(out)
    assert len(table) == 4
    chi = character_from_label("4.1")
    for r in table:
        ref = drh_ratio(chi, 0.0, float(r["x"]))
        assert float(r["ratio_re"]) == ref.real
        assert r["ratio_re"] == format(ref.real, ".17g")


def test_grid_parsing():
    assert cli.parse_grid("1e3:1e6:1") == (1e3, 1e4, 1e5, 1e6)
    assert cli.parse_grid("1e3:1e4:2") == (1e3, 3162.27766017, 1e4)
    assert cli.parse_grid("500") == (500.0,)
    for bad in ("1:2", "a:b:c", "1e4:1e3:1", "1e3:1e4:0"):
        with pytest.raises(cli.ConfigError):
            cli.parse_grid(bad)


def test_sweep_csv_schema(capsys):
    code, out, err = run(capsys, "aim", "--chi", "4.1", "--s", "0.75", "--x", "1e3:1e5:1", "--no-zeros")
    assert code == 0
    assert out.splitlines()[0] == ",".join(cli.SWEEP_COLUMNS)
    assert len(rows(out)) == 3
    assert "omitted" in err


def test_determinism(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.run(["aim", "--chi", "5.1", "--s", "0.7+3j", "--x", "1e3:1e5:2", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_json_breakdown_round_trip(tmp_path, bank):
    out = tmp_path / "aim.json"
    assert cli.run(["aim", "--chi", "4.1", "--s", "0.75", "--x", "1e4", "--format", "json",
                    "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    parsed = TermBreakdown.from_dict(payload["breakdowns"][0])
    ref = rhs_aim(0.75, character_from_label("4.1"), 1e4, bank)
    assert parsed.case_tag == ref.case_tag
    for a, b in zip(parsed.parts(), ref.parts()):
        assert abs(a - b) <= 1e-15 * max(1, abs(b))
    assert abs(parsed.total_rhs_log - ref.total_rhs_log) <= 1e-15


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "aim", "--chi", "4.1", "--s", "0.5")[0] == 2
    assert run(capsys, "aim", "--chi", "4.1", "--s", "0.6", "--on-line")[0] == 2
    assert run(capsys, "product", "--chi", "4.9", "--s", "2")[0] == 2
    assert run(capsys, "sieve", "--x", "1e4:1e3:1")[0] == 2
    assert run(capsys, "aim", "--chi", "7.1", "--s", "0.75", "--x", "1e3")[0] == 3
    assert run(capsys, "aim", "--chi", "4.1", "--s", "0.75", "--x", "1e3", "--zeros", str(tmp_path))[0] == 3
    with pytest.raises(SystemExit) as exc:
        cli.run(["aim", "--format", "xml"])
    assert exc.value.code == 2


def test_env_overrides_flag(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("EULERLAB_ZEROS", str(tmp_path))
    assert run(capsys, "aim", "--chi", "4.1", "--s", "0.75", "--x", "1e3")[0] == 3


def test_other_subcommands(capsys):
    code, out, _ = run(capsys, "sieve", "--q", "4", "--x", "10")
    assert code == 0 and [r["a"] for r in rows(out)] == ["1", "3"]
    code, out, _ = run(capsys, "product", "--chi", "4.1", "--s", "2", "--x", "100")
    assert code == 0 and abs(float(rows(out)[0]["value_re"]) - 0.9159655942) < 3e-3
    code, out, _ = run(capsys, "ramanujan", "--s", "0.75", "--x", "1e3:1e4:1")
    assert code == 0 and len(rows(out)) == 2
    code, out, _ = run(capsys, "bv", "--x", "10", "--Q", "1")
    assert code == 0 and abs(float(rows(out)[0]["bv_sum"]) - 4.6528924692825315) < 1e-12
    code, out, _ = run(capsys, "appendix", "--x", "10")
    r = rows(out)[0]
    assert code == 0 and r["mertens"] == "-1" and r["liouville"] == "0"


def test_verify_exit_code_reflects_suite(capsys):
    code, out, _ = run(capsys, "verify")
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert len([l for l in lines if not l.startswith("[INFO]")]) == 13
    failed = any(l.startswith("[FAIL]") for l in lines)
    assert code == (4 if failed else 0)


def test_verify_clean_checkout_exits_zero(capsys):
    assert run(capsys, "verify")[0] == 0
