import json

import pytest

from spinnet.cli import main
from spinnet.evaluation import ExactValue
from spinnet.quadnum import QuadNum


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_theta(capsys):
    code, out, _ = run(["eval", "theta", "2,2,2"], capsys)
    assert code == 0
    assert out == "normalization,value\nP,-24\nstandard,-24\nB,-3\nU,-1\n"


def test_eval_json_roundtrip(capsys):
    code, out, _ = run(["eval", "tetrahedron", "a=2,b=2,c=2,d=2,e=2,f=2", "--format", "json"], capsys)
    rows = {r["normalization"]: r["value"] for r in json.loads(out)}
    assert ExactValue.parse(rows["standard"]).value == 96
    assert ExactValue.parse(rows["U"], "U").value == ExactValue.parse("1/6").value


def test_eval_graph_file(tmp_path, capsys):
    from spinnet.graph import format_graph, standard_graph
    gfile = tmp_path / "t.graph"
    gfile.write_text(format_graph(standard_graph("theta")))
    cfile = tmp_path / "t.col"
    cfile.write_text("e1 2\ne2 2\ne3 2\n")
    code, out, _ = run(["eval", str(gfile), str(cfile), "--method", "state"], capsys)
    assert code == 0 and "standard,-24" in out


def test_classify_minkowskian(capsys):
    code, out, _ = run(["classify", "4", "4", "4", "4", "6", "6", "--format", "json"], capsys)
    rep = json.loads(out)
    assert rep["class"] == "Minkowskian" and rep["det"] == "-2592"


def test_asympt_euclidean(capsys):
    code, out, _ = run(["asympt", "2,2,2,2,2,2", "--depth", "1", "--format", "json", "--precision", "20"], capsys)
    rep = json.loads(out)
    lams = {QuadNum.from_json(b["Lambda_exact"]) for b in rep["branches"]}
    assert lams == {QuadNum.from_json({"m": -2, "p": "329/729", "q": s + "460/729"}) for s in ("", "-")}
    assert all(len(b["mu"]) == 2 for b in rep["branches"])


def test_sequence_and_plot_deterministic(tmp_path, capsys):
    png = tmp_path / "s.png"
    _, out1, _ = run(["sequence", "theta", "2,2,2", "--nmax", "6", "--plot", str(png)], capsys)
    b1 = png.read_bytes()
    _, out2, _ = run(["sequence", "theta", "2,2,2", "--nmax", "6", "--plot", str(png)], capsys)
    assert out1 == out2 and png.read_bytes() == b1
    assert out1.splitlines()[2] == "1,-24"


def test_predict_writes_table_and_figure(tmp_path, capsys):
    svg = tmp_path / "p.svg"
    csvf = tmp_path / "p.csv"
    code, _, _ = run(["predict", "2,2,2,2,2,2", "--nmax", "20", "--depth", "0", "--plot", str(svg),
                      "-o", str(csvf), "--precision", "20"], capsys)
    assert code == 0 and svg.stat().st_size > 1000
    lines = csvf.read_text().splitlines()
    assert lines[0] == "n,value,prediction,abs_error,rel_error"
    assert lines[1].startswith("0,1.0,nan")


def test_guess_rec_and_formal_series(tmp_path, capsys):
    seqf = tmp_path / "cb.txt"
    from math import comb
    seqf.write_text("\n".join(str(comb(2 * n, n)) for n in range(30)) + "\n")
    code, out, _ = run(["guess-rec", str(seqf), "--format", "json"], capsys)
    assert code == 0
    recf = tmp_path / "rec.json"
    recf.write_text(out)
    code, out, _ = run(["formal-series", "--recurrence", str(recf), "--depth", "2"], capsys)
    assert out.splitlines()[1:] == ["0,4,-1/2,0,1", "0,4,-1/2,1,-1/8", "0,4,-1/2,2,1/128"]


def test_radius(capsys):
    code, out, _ = run(["radius", "theta", "--nmax", "80", "--format", "json"], capsys)
    assert abs(json.loads(out)["estimate"] / 27 - 1) < 0.02


def test_genfun_modes(capsys):
    _, out, _ = run(["genfun", "k33", "--fourier"], capsys)
    assert len(out.splitlines()) == 5
    _, out, _ = run(["genfun", "tetrahedron", "--diagonal", "2,2,2,2,2,2", "--nmax", "2"], capsys)
    assert out == "n,coefficient\n0,1\n1,96\n2,-17010\n"
    _, out, _ = run(["genfun", "theta", "--degree", "4"], capsys)
    assert out.splitlines()[0] == "e1,e2,e3,coefficient"


@pytest.mark.parametrize("argv,code,category", [
    (["eval", "nosuch", "1"], 2, "parse"),
    (["eval", "theta", "x,y"], 2, "parse"),
    (["classify", "1", "2"], 2, "parse"),
    (["asympt", "1,1,2,1,1,2"], 4, "degenerate"),
    (["guess-rec", "tet:3,4,4,3,5,5:40", "--rmax", "2"], 5, "not-found"),
])
def test_exit_codes(argv, code, category, capsys):
    c, _, err = run(argv, capsys)
    assert c == code
    assert json.loads(err)["error"] == category


def test_capacity_exit_code(capsys):
    c, _, err = run(["genfun", "drum21", "--fourier"], capsys)
    assert c == 3 and json.loads(err)["error"] == "capacity"


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["eval"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["eval", "theta", "2,2,2", "--format", "xml"])
    assert e.value.code == 2


def test_selftest_subset(capsys):
    code, out, _ = run(["selftest", "--only", "4"], capsys)
    assert code == 0 and "[PASS] criterion  4" in out
