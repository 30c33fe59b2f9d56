import json
import math
import os

import msgspec
import pytest

from bearingcap import report
from bearingcap.report import emit, format_number, summary, to_csv, write_atomic, write_json
from bearingcap.sweep import CellFailure, SweepReport, report_from_columns


@pytest.fixture
def rep():
    return report_from_columns(
        "outer ring, section-i",
        [0.5, 1.0],
        {"B": [1.5e-10, None], "F": [1.0e-10, 0.8e-10]},
        {"B": "F/m", "F": "F/m"},
        "F",
    )


def test_module_dir():
    assert set(dir(report)) == set(report.__all__)


@pytest.mark.parametrize(
    "value, expected",
    [
        (None, ""),
        (math.nan, ""),
        (1.0, "1.00000000e+00"),
        (-0.125, "-1.25000000e-01"),
        (1.234567891234e-11, "1.23456789e-11"),
        (0, "0.00000000e+00"),
    ],
)
def test_format_number(value, expected):
    assert format_number(value) == expected


class TestCsv:
    def test_content(self, rep):
        lines = to_csv(rep).splitlines()
        assert lines[0] == "gap_um,B [F/m],F [F/m],dev_B,dev_F"
        assert lines[1] == (
            "5.00000000e-01,1.50000000e-10,1.00000000e-10,5.00000000e-01,0.00000000e+00"
        )
        assert lines[2] == "1.00000000e+00,,8.00000000e-11,,0.00000000e+00"
        assert len(lines) == 3

    def test_without_reference(self):
        rep = report_from_columns("t", [1.0], {"A3D": [2e-12]}, {"A3D": "F"})
        assert to_csv(rep) == "gap_um,A3D [F]\n1.00000000e+00,2.00000000e-12\n"

    def test_deterministic(self, rep):
        again = msgspec.json.decode(msgspec.json.encode(rep), type=SweepReport)
        assert to_csv(again) == to_csv(rep)


class TestSummary:
    def test_deviations(self, rep):
        text = summary(rep)
        assert text.startswith("outer ring, section-i\n=====")
        assert "2 gaps in [0.5, 1] um, columns: B, F" in text
        assert "deviations relative to F:" in text
        assert "+50.0000%" in text
        # the reference column is not listed
        assert "       F:" not in text

    def test_failures(self):
        rep = SweepReport(
            title="t",
            gaps_um=[200.0],
            columns=["F"],
            units=["F/m"],
            values=[[None]],
            reference="F",
            deviations=[[None]],
            failures=[CellFailure(200.0, "F", "InvalidGeometry: sigma")],
        )
        text = summary(rep)
        assert "1 failed cell(s):" in text
        assert "s=200 um F: InvalidGeometry: sigma" in text

    def test_values_without_reference(self):
        rep = report_from_columns("t", [1.0, 2.0], {"E": [3e-12, 2e-12]}, {"E": "F"})
        assert "2.000000e-12 .. 3.000000e-12 [F]" in summary(rep)

    def test_smallest_gap_is_found_by_row(self):
        units = {"B": "F/m", "F": "F/m"}
        rep = report_from_columns(
            "t", [2.0, 1.0, 0.5], {"B": [1.1, 1.2, 1.3], "F": [1.0, 1.0, 1.0]}, units, "F"
        )
        assert "at smallest gap +30.0000%" in summary(rep)
        rep = report_from_columns(
            "t", [0.5, 1.0, 2.0], {"B": [None, 1.2, 1.3], "F": [1.0, 1.0, 1.0]}, units, "F"
        )
        text = summary(rep)
        assert "min +20.0000%" in text
        assert "at smallest gap n/a" in text


class TestWrite:
    def test_emit(self, rep, tmp_path):
        out = tmp_path / "nested" / "out"
        paths = emit(rep, out, "fig10")
        assert [os.path.basename(p) for p in paths] == ["fig10.csv", "fig10.txt"]
        assert (out / "fig10.csv").read_text() == to_csv(rep)
        assert (out / "fig10.txt").read_text() == summary(rep)
        assert not list(out.glob("*.tmp"))

    def test_json(self, rep, tmp_path):
        path = tmp_path / "report.json"
        write_json(rep, path)
        data = json.loads(path.read_text())
        assert data["columns"] == ["B", "F"]
        assert data["values"][1] == [None, 0.8e-10]
        assert msgspec.json.decode(path.read_bytes(), type=SweepReport) == rep

    def test_overwrites(self, tmp_path):
        path = tmp_path / "x.bin"
        write_atomic(path, b"one")
        write_atomic(path, b"two")
        assert path.read_bytes() == b"two"

    def test_error_names_path(self, tmp_path):
        path = tmp_path / "missing" / "x.bin"
        with pytest.raises(OSError, match="missing"):
            write_atomic(path, b"data")

    def test_error_leaves_no_temporary(self, tmp_path):
        # a directory cannot be replaced by a file
        path = tmp_path / "x.bin"
        path.mkdir()
        with pytest.raises(OSError, match="x.bin"):
            write_atomic(path, b"data")
        assert [p.name for p in tmp_path.iterdir()] == ["x.bin"]
