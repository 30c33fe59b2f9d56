import msgspec
import numpy as np
import pytest

from bearingcap import studies
from bearingcap.config import FemConfig, GridConfig, SweepConfig
from bearingcap.result import Method
from bearingcap.studies import (
    ALIASES,
    STUDIES,
    closed_forms,
    height_profiles,
    models_2d,
    models_3d,
    rim_share,
)

LABELS = ["Ry-inner", "Ry-outer", "Rx-inner", "Rx-outer"]


def at(*gaps):
    return GridConfig(start_um=gaps[0], stop_um=gaps[-1], points=len(gaps))


def test_module_dir():
    assert set(dir(studies)) == set(studies.__all__)


def test_registry():
    assert STUDIES == {
        "fig7": closed_forms,
        "fig8": height_profiles,
        "fig10": models_2d,
        "fig11": rim_share,
        "fig12": models_3d,
    }
    assert set(ALIASES) == set(STUDIES)
    assert ALIASES["fig10"] == "models-2d"
    assert len(set(ALIASES.values())) == len(ALIASES)


def test_closed_forms():
    report = closed_forms(SweepConfig(grid=GridConfig(start_um=0.1, stop_um=5.0, points=6)))
    assert report.columns == LABELS
    assert report.units == ["1"] * 4
    assert report.reference is None
    for label in LABELS:
        dev = report.column(label)
        assert np.all(np.abs(dev) < 0.01)
        assert np.all(np.diff(np.abs(dev)) > 0)
    assert np.all(report.column("Rx-inner") > 0)
    for label in ("Ry-inner", "Ry-outer", "Rx-outer"):
        assert np.all(report.column(label) < 0)


def test_closed_forms_parallel():
    cfg = SweepConfig(grid=at(0.5, 2.0))
    assert closed_forms(msgspec.structs.replace(cfg, jobs=2)) == closed_forms(cfg)


def test_height_profiles():
    report = height_profiles(SweepConfig(grid=at(4.0)))
    assert report.columns == [f"effective:{c}" for c in LABELS] + [f"true:{c}" for c in LABELS]
    for label in LABELS:
        effective = report.column(f"effective:{label}")[0]
        assert 0 < effective < 0.01
    for label in ("Ry-inner", "Ry-outer"):
        assert report.column(f"true:{label}")[0] >= 2 * report.column(f"effective:{label}")[0]


def test_models_2d():
    cfg = SweepConfig(grid=at(1.0), fem=FemConfig(refinement=2))
    report = models_2d(cfg)
    assert report.columns == ["A2D", "B", "C", "D", "G", "F"]
    assert report.reference == "F"
    assert "outer ring, section-i" in report.title
    assert 0.03 <= report.deviation("A2D")[0] <= 0.15
    assert report.deviation("B")[0] < 0
    assert report.deviation("C")[0] >= 0
    assert report.deviation("D")[0] <= 0
    assert abs(report.deviation("G")[0]) < 0.05


@pytest.mark.slow
def test_rim_share():
    report = rim_share(SweepConfig(grid=at(0.5, 2.0)))
    assert report.columns == [
        "D3D-inner",
        "E-inner",
        "rim-inner",
        "D3D-outer",
        "E-outer",
        "rim-outer",
    ]
    assert report.units == ["F", "F", "1", "F", "F", "1"]
    for side in ("inner", "outer"):
        share = report.column(f"rim-{side}")
        assert np.all(share > 0)
        assert share[1] > share[0]
        assert np.all(report.column(f"E-{side}") > report.column(f"D3D-{side}"))


@pytest.mark.slow
def test_models_3d():
    report = models_3d(SweepConfig(grid=at(1.0)))
    assert report.columns == ["A3D", "D3D", "E"]
    assert report.reference == Method.E.value
    assert report.units == ["F", "F", "F"]
    assert "inner ring" in report.title
    assert report.deviation("A3D")[0] > 0
    assert report.deviation("D3D")[0] < 0
