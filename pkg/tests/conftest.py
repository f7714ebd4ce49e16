from __future__ import annotations

from pathlib import Path

import pytest

from reactive_graphs import parse

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "goldens"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def vm():
    return parse(fixture_text("vending.rg")).primary


@pytest.fixture(scope="session")
def fts():
    return parse(fixture_text("fts.rg")).primary


@pytest.fixture(scope="session")
def usr():
    return parse(fixture_text("user.rg")).primary


@pytest.fixture(scope="session")
def vm_vs_lts():
    return parse(fixture_text("vm_vs_lts.rg"))


@pytest.fixture(scope="session")
def vm_vs_noh5():
    return parse(fixture_text("vm_vs_noh5.rg"))
