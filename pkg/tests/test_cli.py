import json
import subprocess
import sys
from fractions import Fraction

import pytest

from crosscap import FLOAT, CrossCapGerm, metric_of_germ, realize, verify_realization
from crosscap import documents as docs
from crosscap.cli import main

from helpers import random_germ, seeded

STANDARD = {"schema": 1, "mode": "crosscap", "order": 4, "ring": "rational",
            "coefficients": {"z": {"0,2": "2"}, "b": {}}}
EXAMPLE = {"schema": 1, "mode": "crosscap", "order": 6, "ring": "rational",
           "coefficients": {"z": {"2,0": "1", "0,2": "1"}, "b": {"3": "1"}}}


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return _write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_fff_standard(write, capsys):
    code, out, _ = run(["fff", write("g.json", STANDARD), "--order", "3"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["coefficients"]["E"] == {"0,0": "1", "0,2": "2"}
    assert doc["coefficients"]["F"] == {"1,1": "1"}
    assert doc["coefficients"]["G"] == {"2,0": "2", "0,2": "8"}
    assert doc["alphas"] == ["0", "0", "2"]


def test_fff_example(write, capsys):
    code, out, _ = run(["fff", write("g.json", EXAMPLE)], capsys)
    assert code == 0
    assert json.loads(out)["coefficients"]["F"]["1,1"] == "2"


def test_fff_needs_germ(write, capsys):
    code, out, _ = run(["fff", write("g.json", EXAMPLE)], capsys)
    code, _, err = run(["fff", write("m.json", out)], capsys)
    assert code == 2 and "crosscap" in err


def test_fff_order_too_high(write, capsys):
    code, _, err = run(["fff", write("g.json", EXAMPLE), "--order", "7"], capsys)
    assert code == 2 and "order" in err


def test_realize_roundtrip_identity(write, capsys, tmp_path):
    doc = dict(EXAMPLE, target_b={"3": "1"})
    out_path = str(tmp_path / "jet.json")
    code, _, _ = run(["realize", write("g.json", doc), "-o", out_path], capsys)
    assert code == 0
    jet = docs.doc_to_jet(docs.load_document(out_path))
    assert jet.X.to_dict() == {(1, 0): 1}
    assert jet.Y.to_dict() == {(0, 1): 1}
    assert jet.Z.to_dict() == {(2, 0): 1, (0, 2): 1}


def test_realize_b_file(write, capsys):
    bfile = write("b.json", {"schema": 1, "mode": "crosscap", "target_b": {"3": "1"}})
    code, out, _ = run(["realize", write("g.json", EXAMPLE), "--b", bfile], capsys)
    assert code == 0
    assert json.loads(out)["coefficients"]["X"] == {"1,0": "1"}


def test_realize_base_case(write, capsys):
    code, out, _ = run(["realize", write("g.json", EXAMPLE), "--b", "zero", "--order", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["coefficients"]["Z"] == {"2,0": "1", "0,2": "1"}
    assert doc["verification"]["ok"]


def test_realize_from_metric_document(write, capsys):
    _, metric_text, _ = run(["fff", write("g.json", EXAMPLE)], capsys)
    code, out, _ = run(["realize", write("m.json", metric_text), "--b", "zero"], capsys)
    assert code == 0 and json.loads(out)["verification"]["ok"]


def test_invariants_example(write, capsys):
    code, out, _ = run(["invariants", write("g.json", EXAMPLE), "--order", "4"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["A"]["3,0"] == "-1/2"
    assert doc["A"]["1,2"] == "1/2"
    assert doc["A"]["0,4"] == "3/4"
    assert doc["closed_form_check"]["ok"]


def test_invariants_no_check_below_four(write, capsys):
    code, out, _ = run(["invariants", write("g.json", EXAMPLE), "--order", "3"], capsys)
    assert code == 0 and "closed_form_check" not in json.loads(out)


def _jet_and_metric(write, capsys):
    g = write("g.json", EXAMPLE)
    _, jet_text, _ = run(["realize", g, "--b", "zero"], capsys)
    _, metric_text, _ = run(["fff", g], capsys)
    return write("jet.json", jet_text), write("metric.json", metric_text), json.loads(jet_text)


def test_check_passes(write, capsys):
    jet, metric, _ = _jet_and_metric(write, capsys)
    code, out, _ = run(["check", jet, metric], capsys)
    assert code == 0 and "pass" in out


def test_check_fails_on_perturbed_jet(write, capsys):
    _, metric, jet_doc = _jet_and_metric(write, capsys)
    z = jet_doc["coefficients"]["Z"]
    z["0,6"] = str(Fraction(z.get("0,6", "0")) + 1)
    code, out, _ = run(["check", write("bad.json", jet_doc), metric], capsys)
    assert code == 1 and "fail" in out


def test_check_fails_on_other_metric(write, capsys):
    jet, _, _ = _jet_and_metric(write, capsys)
    _, other, _ = run(["fff", write("s.json", dict(STANDARD, order=6))], capsys)
    code, _, _ = run(["check", jet, write("other.json", other)], capsys)
    assert code == 1


def _standard_jet(write, capsys):
    _, text, _ = run(["realize", write("s.json", STANDARD)], capsys)
    return write("sjet.json", text)


def test_mesh_standard(write, capsys):
    code, out, _ = run(["mesh", _standard_jet(write, capsys), "--range", "1", "--samples", "3"], capsys)
    assert code == 0
    vertices = [tuple(map(float, line.split()[1:])) for line in out.splitlines() if line.startswith("v ")]
    faces = [line for line in out.splitlines() if line.startswith("f ")]
    assert len(vertices) == 9 and len(faces) == 4
    assert (0.0, 0.0, 0.0) in vertices
    assert (1.0, 1.0, 1.0) in vertices


def test_mesh_deterministic(write, capsys):
    jet = _standard_jet(write, capsys)
    _, a, _ = run(["mesh", jet, "--samples", "7"], capsys)
    _, b, _ = run(["mesh", jet, "--samples", "7"], capsys)
    assert a == b


@pytest.mark.parametrize("flags", [["--range", "0"], ["--range", "-1"], ["--samples", "1"]])
def test_mesh_usage_errors(write, capsys, flags):
    code, _, _ = run(["mesh", _standard_jet(write, capsys), *flags], capsys)
    assert code == 2


def test_parse_error_has_location(write, capsys):
    code, _, err = run(["fff", write("bad.json", '{"mode": "crosscap",\n  "order": }')], capsys)
    assert code == 2 and "line 2" in err


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("mode"),
    lambda d: d.update(order=-1),
    lambda d: d["coefficients"]["z"].update({"0,2": "-1"}),
    lambda d: d["coefficients"]["z"].update({"9,0": "1"}),
    lambda d: d["coefficients"]["z"].update({"a,b": "1"}),
    lambda d: d["coefficients"]["z"].update({"1,1": "x"}),
    lambda d: d["coefficients"]["b"].update({"2": "1"}),
    lambda d: d.update(schema=7),
    lambda d: d.update(ring="complex"),
])
def test_malformed_documents(write, capsys, mutate):
    doc = json.loads(json.dumps(EXAMPLE))
    mutate(doc)
    code, _, err = run(["fff", write("g.json", doc)], capsys)
    assert code == 2 and err.startswith("error:")


def test_missing_file(capsys):
    code, _, _ = run(["fff", "/nonexistent/g.json"], capsys)
    assert code == 2


def test_bad_arguments(capsys):
    assert main([]) == 2
    assert main(["realize"]) == 2
    capsys.readouterr()


def test_float_ring_flag(write, capsys):
    code, out, _ = run(["--ring", "float", "invariants", write("g.json", EXAMPLE), "--order", "4"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["ring"] == "float"
    assert float(doc["A"]["0,4"]) == pytest.approx(0.75)


def test_commands_are_deterministic(write, capsys):
    g = write("g.json", EXAMPLE)
    for argv in (["fff", g], ["realize", g], ["invariants", g]):
        assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_document_roundtrips():
    rng = seeded(61)
    for _ in range(5):
        germ = random_germ(rng, order=5)
        back = docs.doc_to_germ(docs.parse_document(docs.dump_document(docs.germ_to_doc(germ))))
        assert back.a == germ.a and back.b == germ.b
        metric = metric_of_germ(germ)
        mback = docs.doc_to_metric(docs.parse_document(docs.dump_document(docs.metric_to_doc(metric))))
        assert (mback.E, mback.F, mback.G, mback.alphas) == (metric.E, metric.F, metric.G, metric.alphas)
        jet = realize(metric, None, 5)
        jback = docs.doc_to_jet(docs.parse_document(docs.dump_document(docs.jet_to_doc(jet))))
        assert (jback.X, jback.Y, jback.Z) == (jet.X, jet.Y, jet.Z)
        assert verify_realization(jback, metric, 5)


def test_float_document_roundtrip():
    germ = random_germ(seeded(62), order=4).to_ring(FLOAT)
    metric = metric_of_germ(germ)
    back = docs.doc_to_metric(docs.parse_document(docs.dump_document(docs.metric_to_doc(metric))))
    assert back.E.to_dict() == metric.E.to_dict()


def test_module_entry_point(write):
    proc = subprocess.run(
        [sys.executable, "-m", "crosscap", "fff", write("g.json", STANDARD)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["mode"] == "metric"
