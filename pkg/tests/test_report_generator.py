import os

import pytest

import report_generator
from app import AppConfig
from cli import degeneration_rows, orbit_payload
from cover import cover_report
from models import Algebra, Partition, ReportWriteError, Series
from orbit import make_orbit
from report_generator import generate_pdf_report


def orbit_content(series, size, *parts):
    o = make_orbit(Algebra(series, size), Partition(parts))
    return {
        'orbit': orbit_payload(o),
        'children': degeneration_rows(o),
        'cover': cover_report(o).namikawa.to_dict(),
    }


def test_orbit_report(tmp_path):
    target = tmp_path / "sp30.pdf"
    content = orbit_content(Series.SP, 30, 10, 8, 4, 3, 3, 1, 1)
    path = generate_pdf_report("Orbit 10,8,4,3,3,1,1 in sp30", 'orbit', content, output_path=str(target))
    assert path == str(target)
    assert target.read_bytes().startswith(b"%PDF")


def test_zero_orbit_report(tmp_path):
    target = tmp_path / "nested" / "zero.pdf"
    content = orbit_content(Series.SO, 5, 1, 1, 1, 1, 1)
    assert content['children'] == []
    generate_pdf_report("Zero orbit", 'orbit', content, output_path=str(target))
    assert target.exists()


def test_default_path_uses_reports_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(report_generator, 'app', AppConfig(reports_dir=str(tmp_path)))
    path = generate_pdf_report("Orbit 2,2 in sp4", 'orbit', orbit_content(Series.SP, 4, 2, 2))
    assert os.path.dirname(path) == str(tmp_path)
    assert os.path.basename(path).startswith("orbit_")
    assert os.path.exists(path)


def test_unwritable_path_raises_report_write_error(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    with pytest.raises(ReportWriteError) as excinfo:
        generate_pdf_report("Orbit 2,2 in sp4", 'orbit', orbit_content(Series.SP, 4, 2, 2),
                            output_path=str(blocker / "sub" / "out.pdf"))
    assert isinstance(excinfo.value.__cause__, OSError)
