import random

import pytest
from hypothesis import given, strategies as st

from hfgt.errors import EventListError, LfesParseError, LfesSchemaError
from hfgt.ingest import parse_event_list, parse_lfes, serialize_lfes, validate_raw

from conftest import DESK3_XML
from sysgen import random_system


def test_desk3_element_counts(desk3_raw):
    assert len(desk3_raw.machines) == 1
    assert len(desk3_raw.ind_buffers) == 2
    assert len(desk3_raw.transporters) == 1
    assert len(desk3_raw.controllers) == 2
    assert desk3_raw.data_state == "raw"


def test_empty_lfes():
    raw = parse_lfes(b'<LFES name="X" type="Y"></LFES>')
    assert raw.name == "X" and raw.type == "Y"
    assert raw.machines == [] and raw.ind_buffers == [] and raw.transporters == []
    assert raw.controllers == [] and raw.services == [] and raw.operands == []
    assert raw.abstractions.methods_port == []


def test_ev_abstraction_refinements():
    xml = b"""<LFES name="EV">
      <Abstractions>
        <MethodxPort name="transport EV" ref="park EV" operand="EV" output="EV"/>
        <MethodxPort name="transport EV" ref="charge EV by wire" operand="EV" output="EV"/>
        <MethodxPort name="transport EV" ref="discharge EV" operand="EV" output="EV"/>
        <MethodxPort name="transport EV" ref="charge EV wirelessly" operand="EV" output="EV"/>
      </Abstractions>
    </LFES>"""
    raw = parse_lfes(xml)
    assert len(raw.abstractions.methods_port) == 4
    assert [m.ref for m in raw.abstractions.methods_port] == [
        "park EV",
        "charge EV by wire",
        "discharge EV",
        "charge EV wirelessly",
    ]


def test_unknown_attributes_preserved(desk3_raw):
    assert desk3_raw.machines[0].extra == {"label": "WaterPlant"}
    assert desk3_raw.transporters[0].extra == {"label": "Pipe"}


def test_operand_list_splitting():
    raw = parse_lfes(
        b'<LFES name="X"><Machine name="M">'
        b'<MethodxForm name="mix" operand=" a , b,c " output="d"/>'
        b"</Machine></LFES>"
    )
    assert raw.machines[0].methods_form[0].operand == ["a", "b", "c"]


def test_missing_status_defaults_active(desk3_raw):
    assert all(c.status == "active" for c in desk3_raw.controllers)


def test_malformed_xml_reports_position():
    with pytest.raises(LfesParseError) as excinfo:
        parse_lfes(b'<LFES name="X"><Machine name="M">')
    assert excinfo.value.line == 1
    assert "line 1" in str(excinfo.value)


def test_missing_name_reports_element_path():
    with pytest.raises(LfesSchemaError) as excinfo:
        parse_lfes(b'<LFES name="X"><Machine gpsX="1"/></LFES>')
    assert "LFES/Machine" in str(excinfo.value)
    assert "name" in str(excinfo.value)


def test_unknown_element_rejected():
    with pytest.raises(LfesSchemaError):
        parse_lfes(b'<LFES name="X"><Widget name="W"/></LFES>')


def test_negative_inittokens_rejected():
    with pytest.raises(LfesSchemaError):
        parse_lfes(b'<LFES name="X"><IndBuffer name="B" initTokens="-1"/></LFES>')


def test_bad_status_rejected():
    with pytest.raises(LfesSchemaError):
        parse_lfes(b'<LFES name="X"><Controller name="C" status="maybe"/></LFES>')


def test_roundtrip_desk3(desk3_raw):
    assert parse_lfes(serialize_lfes(desk3_raw)) == desk3_raw


def test_roundtrip_two_operand():
    from conftest import TWO_OPERAND_XML

    raw = parse_lfes(TWO_OPERAND_XML.read_bytes())
    assert parse_lfes(serialize_lfes(raw)) == raw
    assert validate_raw(raw) == []


def test_roundtrip_random_systems():
    for seed in range(25):
        raw = random_system(random.Random(seed), with_services=True, with_pairs=True, petri=seed % 2 == 0)
        assert parse_lfes(serialize_lfes(raw)) == raw


def test_parse_never_invents_elements():
    text = DESK3_XML.read_text()
    raw = parse_lfes(text.encode())
    assert len(raw.machines) == text.count("<Machine ")
    assert len(raw.ind_buffers) == text.count("<IndBuffer ")
    assert len(raw.transporters) == text.count("<Transporter ")
    assert len(raw.controllers) == text.count("<Controller ")
    assert len(raw.services) == text.count("<Service ")
    assert len(raw.operands) == text.count("<Operand ")


# -- validate_raw ----------------------------------------------------------

def test_validate_desk3_clean(desk3_raw):
    assert validate_raw(desk3_raw) == []


def test_validate_random_systems_clean():
    for seed in range(25):
        raw = random_system(random.Random(100 + seed), with_services=True, with_pairs=True)
        assert validate_raw(raw) == [], f"seed {seed}"


def test_validate_dangling_dest(desk3_raw):
    desk3_raw.transporters[0].methods_port[0].dest = "B9"
    diags = validate_raw(desk3_raw)
    assert len(diags) == 1
    assert diags[0].severity == "error"
    assert "unknown buffer B9" in diags[0].message


def test_validate_bad_method_link(desk3_raw):
    desk3_raw.services[0].transitions[0].method_link_name = "no such process"
    diags = validate_raw(desk3_raw)
    assert any(
        "ServiceTransition[treat]" in d.path and "no such process" in d.message for d in diags
    )


@pytest.mark.parametrize(
    "mutate",
    [
        lambda raw: setattr(raw.machines[0], "controller", "C9"),
        lambda raw: setattr(raw.controllers[0], "peer_recipients", ["C9"]),
        lambda raw: setattr(raw.machines[0].methods_port[0], "ref", "no such holding"),
        lambda raw: setattr(raw.services[0].transitions[0], "preset", "nowhere"),
        lambda raw: setattr(raw.ind_buffers[0], "name", "M1"),
    ],
)
def test_validate_single_dangling_name_yields_error(desk3_raw, mutate):
    mutate(desk3_raw)
    assert any(d.severity == "error" for d in validate_raw(desk3_raw))


# -- scheduled event list ---------------------------------------------------

def test_event_list_parse_and_sort():
    events = parse_event_list(b"idxToken,tStart,idxResource,idxProcess\n1,1,3,5\n1,0,2,3\n")
    assert [(e.idx_token, e.t_start, e.idx_resource, e.idx_process) for e in events.rows] == [
        (1, 0.0, 2, 3),
        (1, 1.0, 3, 5),
    ]
    assert [e.row for e in events.rows] == [2, 1]


def test_event_list_header_only():
    assert parse_event_list(b"idxToken,tStart,idxResource,idxProcess\n").rows == ()


def test_event_list_header_any_order():
    events = parse_event_list(b"tStart,idxProcess,idxToken,idxResource\n2.5,7,1,4\n")
    event = events.rows[0]
    assert (event.idx_token, event.t_start, event.idx_resource, event.idx_process) == (1, 2.5, 4, 7)


def test_event_list_stable_on_ties():
    events = parse_event_list(
        b"idxToken,tStart,idxResource,idxProcess\n1,5,1,1\n2,5,2,2\n3,0,3,3\n4,5,4,4\n"
    )
    assert [e.idx_token for e in events.rows] == [3, 1, 2, 4]


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(1, 9)), max_size=20))
def test_event_list_sort_is_stable_property(rows):
    body = "".join(f"{token},{t},1,1\n" for t, token in rows)
    events = parse_event_list(f"idxToken,tStart,idxResource,idxProcess\n{body}")
    expected = [token for t, token in sorted(rows, key=lambda r: r[0])]
    assert [e.idx_token for e in events.rows] == expected


def test_event_list_bad_header():
    with pytest.raises(EventListError):
        parse_event_list(b"idxToken,tStart,idxResource\n")
    with pytest.raises(EventListError):
        parse_event_list(b"idxToken,tStart,idxResource,idxProcess,extra\n")


def test_event_list_non_numeric_cell_names_row():
    with pytest.raises(EventListError) as excinfo:
        parse_event_list(b"idxToken,tStart,idxResource,idxProcess\n1,0,2,3\n1,x,2,3\n")
    assert excinfo.value.row == 2
    assert "row 2" in str(excinfo.value)


def test_event_list_negative_time_rejected():
    with pytest.raises(EventListError):
        parse_event_list(b"idxToken,tStart,idxResource,idxProcess\n1,-1,2,3\n")


def test_event_list_nonpositive_index_rejected():
    with pytest.raises(EventListError):
        parse_event_list(b"idxToken,tStart,idxResource,idxProcess\n0,1,2,3\n")
