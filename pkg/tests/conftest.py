from pathlib import Path

import pytest

from hfgt import SystemModel, compute_bundle, parse_lfes

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
DESK3_XML = FIXTURES / "desk3.xml"
DESK3_EVENTS = FIXTURES / "desk3_events.csv"
TWO_OPERAND_XML = FIXTURES / "two_operand.xml"
TWO_OPERAND_EVENTS = FIXTURES / "two_operand_events.csv"


@pytest.fixture
def desk3_raw():
    return parse_lfes(DESK3_XML.read_bytes())


@pytest.fixture
def desk3_model(desk3_raw):
    return SystemModel.build(desk3_raw)


@pytest.fixture
def desk3_bundle(desk3_model):
    return compute_bundle(desk3_model)


@pytest.fixture
def two_operand_model():
    return SystemModel.build(parse_lfes(TWO_OPERAND_XML.read_bytes()))
