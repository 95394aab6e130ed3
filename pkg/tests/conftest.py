import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from design_testability import load_design_model

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def three_class():
    return load_design_model(DATA / "three_class.json")


@pytest.fixture
def golden():
    doc = json.loads((DATA / "three_class_golden.json").read_text())
    frac = lambda d: {k: Fraction(v) for k, v in d.items()}  # noqa: E731
    return {
        "classes": {name: frac(v) for name, v in doc["classes"].items()},
        "project": frac(doc["project"]),
    }


@pytest.fixture
def write_model(tmp_path):
    def _write(doc, name="model.json"):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return p

    return _write


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    VERDICTS = getattr(module, "VERDICTS", None)
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
