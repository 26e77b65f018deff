import json

from hfgt.cli import main
from hfgt.export import export_bundle, write_matrix_market, write_tensor
from hfgt.sparse import SparseBoolMatrix, SparseBoolTensor3, SparseIntTensor3

from conftest import DESK3_EVENTS, DESK3_XML


def test_matrix_market_pattern_format(tmp_path):
    m = SparseBoolMatrix(3, 2, {(2, 1), (1, 2)})
    path = tmp_path / "m.mtx"
    write_matrix_market(m, path)
    assert path.read_text() == (
        "%%MatrixMarket matrix coordinate pattern general\n3 2 2\n1 2\n2 1\n"
    )


def test_tensor_format(tmp_path):
    t = SparseBoolTensor3((2, 2, 2), {(1, 2, 1)})
    path = tmp_path / "t.tns"
    write_tensor(t, path, ("a", "b", "c"))
    header, row = path.read_text().splitlines()
    assert json.loads(header) == {"dims": [2, 2, 2], "modes": ["a", "b", "c"], "indexBase": 1, "value": "pattern"}
    assert row == "1 2 1 1"


def test_signed_tensor_format(tmp_path):
    t = SparseIntTensor3((2, 2, 2), {(1, 1, 1): -1, (2, 2, 2): 1})
    path = tmp_path / "t.tns"
    write_tensor(t, path, ("a", "b", "c"))
    lines = path.read_text().splitlines()
    assert json.loads(lines[0])["value"] == "integer"
    assert lines[1:] == ["1 1 1 -1", "2 2 2 1"]


def test_export_bundle_manifest(desk3_model, desk3_bundle, tmp_path):
    manifest = export_bundle(desk3_bundle, desk3_model, tmp_path)
    assert manifest["schema"] == "hfgt-manifest/1"
    assert manifest["system"] == "DESK-3"
    counts = manifest["counts"]
    assert counts["machines"] == 1 and counts["buffers"] == 3 and counts["resources"] == 4
    assert counts["transportProcesses"] == 9 and counts["refinedTransportProcesses"] == 18
    dof = manifest["dof"]
    assert (dof["DOFM"], dof["DOFH"], dof["DOFHref"], dof["systemDOF"]) == (1, 3, 3, 4)
    assert [c["psi"] for c in manifest["realizedCapabilities"]] == [1, 5, 64, 72]
    assert len(manifest["artifacts"]) == 49
    for artifact in manifest["artifacts"]:
        assert (tmp_path / artifact["path"]).is_file()
    names = [a["name"] for a in manifest["artifacts"]]
    for required in ("JM", "AS", "MRT", "ARproj", "AQ", "AC", "SAMproj"):
        assert required in names


# -- CLI ------------------------------------------------------------------------

def test_cli_build(tmp_path, capsys):
    code = main(["build", str(DESK3_XML), "-o", str(tmp_path / "out")])
    assert code == 0
    out = capsys.readouterr().out
    for line in ("DOFM       1", "DOFH       3", "DOFHref    3", "sigma(AS)  4"):
        assert line in out
    manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
    assert len(manifest["artifacts"]) == 49


def test_cli_build_deterministic(tmp_path, capsys):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["build", str(DESK3_XML), "-o", str(out1)]) == 0
    assert main(["build", str(DESK3_XML), "-o", str(out2)]) == 0
    capsys.readouterr()
    files1 = sorted(p.name for p in out1.iterdir())
    files2 = sorted(p.name for p in out2.iterdir())
    assert files1 == files2
    for name in files1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_cli_missing_file_exits_1(tmp_path, capsys):
    assert main(["build", str(tmp_path / "missing.xml"), "-o", str(tmp_path)]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_missing_events_file_exits_1(tmp_path, capsys):
    code = main(["replay", str(DESK3_XML), "--events", str(tmp_path / "no.csv"), "-o", str(tmp_path)])
    assert code == 1
    capsys.readouterr()


def test_cli_invalid_xml_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.xml"
    bad.write_text('<LFES name="x"><Machine name="m">')
    assert main(["build", str(bad), "-o", str(tmp_path / "out")]) == 2
    assert "malformed XML" in capsys.readouterr().err


def test_cli_dangling_reference_exits_2(tmp_path, capsys):
    mutated = tmp_path / "dangling.xml"
    mutated.write_text(DESK3_XML.read_text().replace('dest="B2"', 'dest="B9"'))
    assert main(["build", str(mutated), "-o", str(tmp_path / "out")]) == 2
    err = capsys.readouterr().err
    assert "unknown buffer B9" in err


def test_cli_replay(tmp_path, capsys):
    code = main(["replay", str(DESK3_XML), "--events", str(DESK3_EVENTS), "-o", str(tmp_path)])
    assert code == 0
    qb_lines = (tmp_path / "Qb.csv").read_text().splitlines()
    assert qb_lines[0] == "name,init,0,1,2,3,5"
    assert len(qb_lines) == 1 + 3
    qt_lines = (tmp_path / "Qt.csv").read_text().splitlines()
    assert len(qt_lines) == 1 + 4


def test_cli_replay_single_event(tmp_path, capsys):
    events = tmp_path / "one.csv"
    events.write_text("idxToken,tStart,idxResource,idxProcess\n2,0,4,16\n")
    assert main(["replay", str(DESK3_XML), "--events", str(events), "-o", str(tmp_path)]) == 0
    lines = (tmp_path / "Qb.csv").read_text().splitlines()
    assert lines[0] == "name,init,0,2"
    assert lines[2] == "B1,1,0,0"
    assert lines[3] == "B2,0,0,1"


def test_cli_replay_empty_list(tmp_path, capsys):
    events = tmp_path / "none.csv"
    events.write_text("idxToken,tStart,idxResource,idxProcess\n")
    assert main(["replay", str(DESK3_XML), "--events", str(events), "-o", str(tmp_path)]) == 0
    lines = (tmp_path / "Qb.csv").read_text().splitlines()
    assert lines[0] == "name,0"
    assert [len(line.split(",")) for line in lines] == [2, 2, 2, 2]


def test_cli_infeasible_event_exits_3(tmp_path, capsys):
    events = tmp_path / "bad.csv"
    events.write_text("idxToken,tStart,idxResource,idxProcess\n2,0,4,16\n1,1,1,9\n")
    code = main(["replay", str(DESK3_XML), "--events", str(events), "-o", str(tmp_path)])
    assert code == 3
    assert "row 2" in capsys.readouterr().err


def test_cli_frames(tmp_path, capsys):
    out = tmp_path / "frames.json"
    events = tmp_path / "one.csv"
    events.write_text("idxToken,tStart,idxResource,idxProcess\n2,0,4,16\n")
    assert main(["frames", str(DESK3_XML), "--events", str(events), "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == "hfgt-frames/1"
    assert len(doc["frames"]) == 3


def test_cli_frames_pretty_same_content(tmp_path, capsys):
    compact, pretty = tmp_path / "c.json", tmp_path / "p.json"
    args = ["frames", str(DESK3_XML), "--events", str(DESK3_EVENTS)]
    assert main(args + ["-o", str(compact)]) == 0
    assert main(args + ["-o", str(pretty), "--pretty"]) == 0
    a = json.loads(compact.read_text())
    b = json.loads(pretty.read_text())
    assert a == b
    assert len(pretty.read_text().splitlines()) > len(compact.read_text().splitlines())


def test_cli_inspect(capsys):
    assert main(["inspect", str(DESK3_XML)]) == 0
    out = capsys.readouterr().out
    assert "DESK-3" in out
    assert "1 machines, 2 independent buffers, 1 transporters" in out
    assert "DOFR" in out


def test_cli_local_process_index(tmp_path, capsys):
    events = tmp_path / "local.csv"
    events.write_text("idxToken,tStart,idxResource,idxProcess\n2,0,4,1\n")
    code = main(
        ["replay", str(DESK3_XML), "--events", str(events), "-o", str(tmp_path), "--local-process-index"]
    )
    assert code == 0
    lines = (tmp_path / "Qb.csv").read_text().splitlines()
    assert lines[3] == "B2,0,0,1"
