import csv

import pytest

from optical_fuse_sim.cli.simulate import main
from optical_fuse_sim.core.constants import CSV_COLUMNS, ENV, EXIT_CODES
from optical_fuse_sim.core.filesystem import format_value, write_csv


def read_rows(path):
    with path.open(encoding="utf-8", newline="") as f:
        return list(csv.reader(f))


def test_preset_run_is_deterministic(tmp_path, monkeypatch) -> None:
    """The same preset twice gives byte-identical CSV"""
    monkeypatch.delenv(ENV.OUTPUT_DIR, raising=False)
    assert main(["--preset", "fig3b", "--out", str(tmp_path / "a")]) == EXIT_CODES.SUCCESS
    assert main(["--preset", "fig3b", "--out", str(tmp_path / "b")]) == EXIT_CODES.SUCCESS
    first = (tmp_path / "a" / "fig3b.v1.csv").read_bytes()
    second = (tmp_path / "b" / "fig3b.v1.csv").read_bytes()
    assert first == second

    rows = read_rows(tmp_path / "a" / "fig3b.v1.csv")
    assert rows[0] == CSV_COLUMNS["static"]
    assert len(rows) == 1 + 46
    onchip = [float(row[2]) for row in rows[1:]]
    assert onchip[0] == -35.0 and onchip[-1] == 10.0


def test_skr_power_preset(tmp_path, monkeypatch) -> None:
    """The key-rate preset keeps about 3.9 % of the rate at a 10 dBm attack"""
    monkeypatch.delenv(ENV.OUTPUT_DIR, raising=False)
    assert main(["--preset", "fig5a", "--out", str(tmp_path)]) == EXIT_CODES.SUCCESS
    rows = read_rows(tmp_path / "fig5a.v1.csv")
    assert rows[0] == CSV_COLUMNS["skr-power"]
    last = dict(zip(rows[0], rows[-1]))
    assert float(last["attack_dbm"]) == 10.0
    assert float(last["skr_ratio"]) == pytest.approx(0.039, abs=0.01)


def test_descriptive_preset_alias(tmp_path, monkeypatch) -> None:
    monkeypatch.delenv(ENV.OUTPUT_DIR, raising=False)
    assert main(["--preset", "offset-attack", "--out", str(tmp_path)]) == EXIT_CODES.SUCCESS
    rows = read_rows(tmp_path / "offset-attack.v1.csv")
    assert float(rows[1][0]) == pytest.approx(1548.091)


def test_invalid_config_exit_code(tmp_path) -> None:
    path = tmp_path / "bad.ini"
    path.write_text("[scenario]\nkind = static\n", encoding="utf-8")
    assert main(["--config", str(path), "--out", str(tmp_path)]) == EXIT_CODES.VALIDATION
    assert not list(tmp_path.glob("*.csv"))


def test_numerical_failure_exit_code(tmp_path) -> None:
    """An unreachable operating point is a numerical failure, not a config error"""
    path = tmp_path / "impossible.ini"
    path.write_text(
        "[channel]\nsifted_rate = 0.5\n[scenario]\nkind = skr-power\npowers_dbm = 0\n",
        encoding="utf-8",
    )
    assert main(["--config", str(path), "--out", str(tmp_path)]) == EXIT_CODES.NUMERICAL


def test_csv_formatting(tmp_path) -> None:
    assert format_value(0.1) == "1.00000000000000006e-01"
    assert format_value(True) == "1"
    assert format_value(float("-inf")) == "-inf"
    path = write_csv(tmp_path, "demo", ["a", "b"], [[1.0, False]])
    assert path.name == "demo.v1.csv"
    assert path.read_text(encoding="utf-8") == "a,b\n1.00000000000000000e+00,0\n"
    assert [p.name for p in tmp_path.iterdir()] == ["demo.v1.csv"]
