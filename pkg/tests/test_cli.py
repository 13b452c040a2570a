import csv
import json

import numpy as np
import pytest

from relspec import io as rio
from relspec import relation as rel
from relspec import spectra, verify
from relspec.banded.region import FLAGS
from relspec.cli import main

from oracles import root_count_winding

SHIFT = {"space": "toeplitz", "symbol": {"1": [1, 0]}, "perturbation": [], "mv_part": []}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def read_grid(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_classify_diag(tmp_path, capsys):
    f = write(tmp_path, "d.json", rio.matrix_to_dict(np.diag([1.0, 2.0])))
    code, out, _ = run(capsys, "classify", "--input", f, "--lambda", "1,5")
    assert code == 0
    rep = json.loads(out)
    p1, p5 = rep["points"]
    assert p1["fredholm"]["alpha"] == 1 and not p1["in_resolvent"]
    assert p5["in_resolvent"]
    assert np.allclose([complex(*z) for z in rep["spectrum"]], [1, 2])


def test_classify_all_of_c(tmp_path, capsys):
    gens = [[[1, 0], [0, 0], [0, 0], [0, 0]]]
    f = write(tmp_path, "g.json", {"dim_x": 2, "dim_y": 2, "kind": "graph", "data": gens})
    code, out, _ = run(capsys, "classify", "--input", f)
    assert code == 0 and json.loads(out)["spectrum"] == "all_of_C"


def test_classify_replays_counterexample(tmp_path, capsys):
    T = verify.gen_relation(5, 4, "with_mv_part")
    f = write(tmp_path, "t.json", rio.relation_to_dict(T))
    code, out, _ = run(capsys, "classify", "--input", f, "--lambda", "0.5")
    want = spectra.classify_point(T, 0.5).fredholm.to_dict()
    assert code == 0 and json.loads(out)["points"][0]["fredholm"] == want


def test_classify_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, _, err = run(capsys, "classify", "--input", str(bad))
    assert code == 2 and "malformed" in err
    f = write(tmp_path, "r.json", rio.matrix_to_dict(np.ones((2, 3))))
    assert run(capsys, "classify", "--input", f, "--lambda", "1")[0] == 2
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_classify_model(tmp_path, capsys):
    f = write(tmp_path, "m.json", SHIFT)
    code, out, _ = run(capsys, "classify", "--input", f, "--lambda", "0,2")
    pts = json.loads(out)["points"]
    assert pts[0]["fredholm"]["kappa"] == -1 and pts[1]["fredholm"]["kappa"] == 0


def test_essential_shift(tmp_path, capsys):
    f = write(tmp_path, "m.json", SHIFT)
    out = tmp_path / "grid.csv"
    code, stdout, _ = run(capsys, "essential", "--input", f, "--out", str(out),
                          "--bounds", "-2,2,-2,2", "--res", "128,128")
    assert code == 0
    rows = read_grid(out)
    assert len(rows) == 128 * 128
    for r in rows:
        assert all(r[c] in ("0", "1") for c in FLAGS)
    rng = np.random.default_rng(0)
    for r in (rows[i] for i in rng.choice(len(rows), 10, replace=False)):
        lam = complex(float(r["re"]), float(r["im"]))
        if r["on_curve"] == "1":
            assert r["e1"] == r["e5"] == "1"
            continue
        w = root_count_winding({1: 1}, lam)
        assert int(r["winding"]) == w
        assert r["e4"] == ("1" if w else "0")
    summary = json.loads((tmp_path / "grid.summary.json").read_text())
    ids = [c["id"] for c in summary["components"]]
    assert ids == sorted(ids)
    assert all("meets_resolvent" in c and "winding" in c for c in summary["components"])


def _columns(path, cols):
    with open(path) as fh:
        return [tuple(r[c] for c in cols) for r in csv.DictReader(fh)]


def test_essential_weyl_invariance_bytes(tmp_path, capsys):
    pert = dict(SHIFT, perturbation=[{"u": [[0, 0.5, 0]], "v": [[1, 1, 0]]}])
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for model, out in ((SHIFT, a), (pert, b)):
        f = write(tmp_path, "m.json", model)
        assert run(capsys, "essential", "--input", f, "--out", str(out), "--res", "64,64")[0] == 0
    cols = ("re", "im", "e1", "e2", "e3", "e4")
    assert _columns(a, cols) == _columns(b, cols)


def test_essential_laurent_e4_equals_e1(tmp_path, capsys):
    f = write(tmp_path, "m.json", dict(SHIFT, space="laurent"))
    out = tmp_path / "g.csv"
    assert run(capsys, "essential", "--input", f, "--out", str(out), "--res", "48,48")[0] == 0
    assert [r["e4"] for r in read_grid(out)] == [r["e1"] for r in read_grid(out)]


def test_essential_errors(tmp_path, capsys):
    f = write(tmp_path, "m.json", SHIFT)
    out = str(tmp_path / "g.csv")
    assert run(capsys, "essential", "--input", f, "--out", out, "--res", "4096,4096")[0] == 2
    assert run(capsys, "essential", "--input", f, "--out", out, "--bounds", "1,0,0,1")[0] == 2
    assert run(capsys, "essential", "--input", f, "--out", out, "--bounds", "1,2")[0] == 2
    assert run(capsys, "essential", "--input", f)[0] == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "prop_5_1_index_theorem", "--seed", "42",
                       "--trials", "50")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["trials"] == 50
    assert run(capsys, "verify", "--suite", "prop_5_1_index_theorm")[0] == 2
    assert run(capsys, "verify")[0] == 2


def test_verify_failure_exit_one(monkeypatch, capsys):
    def bad(rng, trial):
        return verify.Trial(False, 1.0, {"T": rio.relation_to_dict(rel.identity(1))}, "forced")

    monkeypatch.setitem(verify.SUITES, "forced_failure", (bad, 2))
    code, out, _ = run(capsys, "verify", "--suite", "forced_failure")
    assert code == 1 and len(json.loads(out)["failures"]) == 2


def test_verify_all_aggregates(monkeypatch, capsys):
    ok = lambda rng, trial: verify.Trial(True)
    monkeypatch.setattr(verify, "SUITES", {"a": (ok, 1), "b": (ok, 1)})
    code, out, _ = \
        run(capsys, "verify", "--suite", "all")
    rep = json.loads(out)
    assert code == 0 and [r["suite_name"] for r in rep["reports"]] == ["a", "b"]


def test_verify_out_file(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, stdout, _ = run(capsys, "verify", "--suite", "graph_dimension_identities",
                          "--trials", "5", "--out", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["suite_name"] == "graph_dimension_identities"


def test_mobius_relation(tmp_path, capsys):
    f = write(tmp_path, "d.json", rio.matrix_to_dict(np.diag([1.0, 2.0])))
    code, out, _ = run(capsys, "mobius", "--input", f, "--mu", "0", "--lambda", "3")
    rep = json.loads(out)
    assert code == 0 and rep["factor_checks"][0]["holds"]
    Tmu = rio.relation_from_dict(rep["relation"])
    assert np.allclose(rel.operator_part(Tmu).standard, np.diag([-1, -0.5]))
    assert run(capsys, "mobius", "--input", f, "--mu", "1")[0] == 2
    assert run(capsys, "mobius", "--input", f)[0] == 2


def test_mobius_model(tmp_path, capsys):
    f = write(tmp_path, "m.json", dict(SHIFT, space="laurent"))
    code, out, _ = run(capsys, "mobius", "--input", f, "--mu", "2")
    sym = json.loads(out)["model"]["symbol"]
    assert code == 0 and set(sym) == {"num", "den"}
    f2 = write(tmp_path, "t.json", SHIFT)
    assert run(capsys, "mobius", "--input", f2, "--mu", "2")[0] == 2


def test_perturb(tmp_path, capsys):
    T = verify.gen_relation(2, 3, "with_mv_part")
    f = write(tmp_path, "t.json", rio.relation_to_dict(T))
    code, out, _ = run(capsys, "perturb", "--input", f, "--seed", "4")
    rep = json.loads(out)
    assert code == 0 and all(rep["hypotheses"].values())
    f = write(tmp_path, "m.json", SHIFT)
    code, out, _ = run(capsys, "perturb", "--input", f, "--seed", "4")
    assert code == 0 and json.loads(out)["model"]["perturbation"]


def test_outputs_deterministic(tmp_path, capsys):
    f = write(tmp_path, "m.json", SHIFT)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "essential", "--input", f, "--out", str(a), "--res", "40,40")
    run(capsys, "essential", "--input", f, "--out", str(b), "--res", "40,40", "--workers", "4")
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("text", ["1+2j", "1+2i", "-0.5"])
def test_lambda_parsing(tmp_path, capsys, text):
    f = write(tmp_path, "d.json", rio.matrix_to_dict(np.eye(2)))
    code, out, _ = run(capsys, "classify", "--input", f, "--lambda", text)
    assert code == 0 and len(json.loads(out)["points"]) == 1
