"""Writing reports: CSV table, text summary and JSON sidecar.

Files are written to a temporary name next to the target and renamed into
place, so readers never see partial output. Numbers are formatted with nine
significant digits, which makes the CSV of a given report byte-identical
across runs.
"""

from __future__ import annotations

import contextlib
import io
import math
import os
from typing import List, Union

import msgspec

from .sweep import SweepReport

__all__ = ("format_number", "to_csv", "summary", "emit", "write_json", "write_atomic")

PathLike = Union[str, os.PathLike]


def __dir__():
    return __all__


def format_number(value: Union[float, None]) -> str:
    """Scientific notation with nine significant digits, empty for a missing value."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return "%.8e" % value


def _header(report: SweepReport) -> List[str]:
    header = ["gap_um"] + [f"{c} [{u}]" for c, u in zip(report.columns, report.units)]
    if report.deviations:
        header += [f"dev_{c}" for c in report.columns]
    return header


def to_csv(report: SweepReport) -> str:
    """One row per gap, one column per value, then one per deviation."""
    buf = io.StringIO()
    buf.write(",".join(_header(report)) + "\n")
    for i, gap in enumerate(report.gaps_um):
        cells = [format_number(gap)] + [format_number(v) for v in report.values[i]]
        if report.deviations:
            cells += [format_number(d) for d in report.deviations[i]]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def summary(report: SweepReport) -> str:
    """Human readable overview: deviation ranges and failed cells."""
    lines = [report.title, "=" * len(report.title)]
    lines.append(
        f"{len(report.gaps_um)} gaps in [{report.gaps_um[0]:.4g}, "
        f"{report.gaps_um[-1]:.4g}] um, columns: {', '.join(report.columns)}"
        if report.gaps_um
        else "no gaps"
    )
    if report.deviations:
        lines.append(f"deviations relative to {report.reference}:")
        smallest = min(range(len(report.gaps_um)), key=report.gaps_um.__getitem__)
        for j, name in enumerate(report.columns):
            devs = [row[j] for row in report.deviations if row[j] is not None]
            if name == report.reference:
                continue
            if not devs:
                lines.append(f"  {name:>8}: n/a")
                continue
            first = report.deviations[smallest][j]
            lines.append(
                f"  {name:>8}: min {min(devs):+.4%}  max {max(devs):+.4%}  "
                f"at smallest gap " + ("n/a" if first is None else f"{first:+.4%}")
            )
    else:
        for j, name in enumerate(report.columns):
            vals = [row[j] for row in report.values if row[j] is not None]
            if vals:
                lines.append(
                    f"  {name:>16}: {min(vals):.6e} .. {max(vals):.6e} [{report.units[j]}]"
                )
    if report.failures:
        lines.append(f"{len(report.failures)} failed cell(s):")
        lines.extend(
            f"  s={f.gap_um:.6g} um {f.column}: {f.error}" for f in report.failures
        )
    return "\n".join(lines) + "\n"


def write_atomic(path: PathLike, data: bytes) -> None:
    tmp = os.fspath(path) + ".tmp"
    try:
        with open(tmp, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except OSError as exc:
        with contextlib.suppress(OSError):
            os.remove(tmp)
        raise OSError(exc.errno, exc.strerror, os.fspath(path)) from None


def emit(report: SweepReport, out_dir: PathLike, stem: str = "report") -> List[str]:
    """Write ``<stem>.csv`` and ``<stem>.txt`` into ``out_dir``.

    Returns the written paths.

    Raises
    ------
    OSError
        Naming the file that could not be written.
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise OSError(exc.errno, exc.strerror, os.fspath(out_dir)) from None
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    txt_path = os.path.join(out_dir, f"{stem}.txt")
    write_atomic(csv_path, to_csv(report).encode("utf-8"))
    write_atomic(txt_path, summary(report).encode("utf-8"))
    return [csv_path, txt_path]


def write_json(report: SweepReport, path: PathLike) -> None:
    """Write the full report, timings and failures included, as JSON."""
    write_atomic(path, msgspec.json.format(msgspec.json.encode(report), indent=2))
