import json

import pytest

from tperfect import cli
from tperfect.corpus import make
from tperfect.graphio import serialize_graph


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_oddgirth(capsys):
    code, out, _ = run(capsys, "oddgirth", "corpus:C5")
    assert code == 0 and out.strip() == "5"
    code, out, _ = run(capsys, "oddgirth", "corpus:C6")
    assert out.strip() == "inf"


def test_chi_and_chistar(capsys):
    code, out, _ = run(capsys, "chi", "corpus:grotzsch")
    assert code == 0 and out.strip() == "4"
    code, out, _ = run(capsys, "chistar", "corpus:C7")
    assert code == 0 and out.strip() == "7/3"


def test_tperfect_exit_codes_and_witness(capsys):
    code, out, _ = run(capsys, "tperfect", "corpus:C5")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "tperfect", "corpus:K4", "--json")
    assert code == 1
    data = json.loads(out)
    assert set(data["point"].values()) == {"1/3"}


def test_hperfect_and_hbarperfect(capsys):
    assert run(capsys, "hperfect", "corpus:K4")[0] == 0
    assert run(capsys, "hperfect", "corpus:co-C7")[0] == 1
    assert run(capsys, "hbarperfect", "corpus:C5")[0] == 0
    assert run(capsys, "hbarperfect", "corpus:C7")[0] == 1


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "corpus:C5", "--ell", "2", "--json")
    assert code == 0
    assert len(json.loads(out)["stable_set"]) == 2


def test_certify_and_verify_loop(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "corpus:fig1b", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "colouring"
    assert data["certificate"]["num_colours"] <= 8
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    code, out, _ = run(capsys, "verify", "corpus:fig1b", str(cert))
    assert code == 0

    code, out, _ = run(capsys, "certify", "corpus:K4", "--json")
    assert code == 1
    cert.write_text(out)
    assert run(capsys, "verify", "corpus:K4", str(cert))[0] == 0


def test_certify_batch(capsys, tmp_path):
    batch = tmp_path / "batch.txt"
    batch.write_text("corpus:C5\ncorpus:K4\n")
    code, out, _ = run(capsys, "certify", "--batch", str(batch))
    assert code == 1
    lines = out.strip().splitlines()
    assert lines[0].startswith("corpus:C5: colouring")
    assert lines[1] == "corpus:K4: witness"


def test_file_inputs(capsys, tmp_path):
    g = make("C5")
    for fmt, suffix in (("graph6", "g6"), ("edges", "txt"), ("json", "json")):
        path = tmp_path / f"g.{suffix}"
        path.write_text(serialize_graph(g, fmt))
        code, out, _ = run(capsys, "tperfect", str(path))
        assert code == 0 and out.strip() == "true"


def test_tcontract(capsys):
    code, out, _ = run(capsys, "tcontract", "corpus:C5", "--vertex", "0", "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["graph"]["adjacency"]) == 3


def test_oddwheel_witness(capsys, tmp_path):
    code, out, _ = run(capsys, "oddwheel-witness", "corpus:W5", "--json")
    assert code == 0
    cert = tmp_path / "w.json"
    cert.write_text(out)
    assert run(capsys, "verify", "corpus:W5", str(cert))[0] == 0
    code, out, _ = run(capsys, "oddwheel-witness", "corpus:C11")
    assert code == 1 and out.strip() == "none"


def test_rope_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "rope", "generate", "2", "7", "8")
    assert code == 0
    data = json.loads(out)
    gpath = tmp_path / "g.json"
    rpath = tmp_path / "r.json"
    gpath.write_text(json.dumps(data["graph"]))
    rpath.write_text(json.dumps(data["rope"]))
    assert run(capsys, "rope", "verify", str(gpath), str(rpath))[0] == 0
    assert run(capsys, "verify", str(gpath), str(rpath))[0] == 0
    code, out, _ = run(capsys, "rope", "find", str(gpath), "--r", "2")
    assert code == 0
    assert json.loads(out)["kind"] == "rope"


def test_corpus_commands(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and "petersen" in out.split()
    code, out, _ = run(capsys, "corpus", "list", "--json")
    assert any(row["name"] == "K4" for row in json.loads(out))
    code, out, _ = run(capsys, "corpus", "emit", "C5", "--format", "graph6")
    assert code == 0 and out.strip()


def test_error_and_usage_codes(capsys):
    code, _, err = run(capsys, "chi", "corpus:nosuchgraph")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "chi", "/nonexistent/file")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["not-a-command"])
    assert exc.value.code == 64
