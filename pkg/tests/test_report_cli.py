import json

import pytest

from nilpairs import cli
from nilpairs.catalog import catalog_names, get_entry
from nilpairs.report import GridRender, ReportDocument, q_str
from nilpairs.suite import golden_text, run_suite, select, summary

CHEAP = [n for n in catalog_names() if not n.startswith("e7")]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", CHEAP)
def test_report_json_round_trip(name):
    e = get_entry(name)
    doc, ok = cli.analyze(e.alg, e.pair, e.char, e)
    assert ok
    again = ReportDocument.from_json(doc.to_json())
    assert again == doc
    assert again.grid_render.total == e.alg.dim


def test_schema_version_checked():
    e = get_entry("sl2-trivial")
    doc, _ = cli.analyze(e.alg, e.pair, e.char, e)
    raw = json.loads(doc.to_json())
    raw["schema_version"] = 99
    with pytest.raises(ValueError):
        ReportDocument.from_json(json.dumps(raw))


def test_rationals_as_strings():
    assert q_str(3) == "3/1"
    e = get_entry("sp6-denom")
    doc, _ = cli.analyze(e.alg, e.pair, e.char, e)
    assert ["1/3", "1/3"] in doc.z_eigenvalues


@pytest.mark.parametrize("fig", ["figure1", "figure2"])
def test_grid_parse_round_trip(fig):
    text = golden_text(fig)
    g = GridRender.parse(text)
    assert g.render() == text
    assert g.total == {"figure1": 78, "figure2": 133}[fig]


def test_cli_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and "sp6-denom" in out.split()


def test_cli_build(capsys):
    code, out, _ = run(capsys, "build", "--type", "G2", "--json")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 14 and data["positive_roots"] == 6
    code, out, _ = run(capsys, "build", "--type", "E", "--rank", "6")
    assert code == 0 and out.startswith("E6: dim 78")


def test_cli_analyze_catalog(capsys):
    code, out, _ = run(capsys, "analyze", "--catalog", "sp6-denom", "--json")
    doc = ReportDocument.from_json(out)
    assert code == 0
    assert doc.flags["wonderful"] is True and doc.flags["integral"] is False
    assert doc.verdicts["denominators"]["pass"]


def test_cli_analyze_explicit(capsys):
    code, out, _ = run(capsys, "analyze", "--type", "A1", "--e1", "e", "--e2", "0")
    assert code == 0 and "principal" in out


def test_cli_analyze_given_labels(capsys):
    code, out, _ = run(capsys, "analyze", "--type", "C2", "--e1", "e[2a1+a2]", "--e2", "e[a2]",
                       "--h1-labels", "1/2,0", "--h2-labels=-1/2,1", "--json")
    assert code == 0
    assert ReportDocument.from_json(out).verdicts["characteristic"]["pass"]
    code, _, err = run(capsys, "analyze", "--type", "A1", "--e1", "e", "--e2", "0",
                       "--h1-labels", "2")
    assert code == 2 and "error" in err


def test_cli_input_errors(capsys):
    code, _, err = run(capsys, "analyze", "--type", "A3", "--e1", "v12", "--e2", "v23")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "analyze", "--type", "A2", "--e1", "e[a1]", "--e2", "e[a2]")
    assert code == 2
    code, _, _ = run(capsys, "analyze", "--type", "A1", "--e1", "h", "--e2", "0")
    assert code == 2
    code, _, _ = run(capsys, "build", "--type", "Q7")
    assert code == 2
    code, _, _ = run(capsys, "suite", "--filter", "no-such-property")
    assert code == 2


def test_cli_grid_e6(capsys):
    code, out, _ = run(capsys, "grid", "--type", "E6", "--h1-labels", "1,1,1,1,1,-7",
                       "--h2-labels", "0,0,0,0,0,1")
    assert code == 0
    g = GridRender.parse(out)
    assert g.total == 78
    assert {k: d for k, (d, _) in g.cells.items()} == \
        {k: d for k, (d, _) in GridRender.parse(golden_text("figure1")).cells.items()}


def test_cli_grid_default_labels(capsys):
    code, out, _ = run(capsys, "grid", "--type", "A2", "--json")
    data = json.loads(out)
    assert code == 0 and data["cells"] == [{"p": "0", "q": "0", "dim": 8}]


def test_cli_suite_pass(capsys):
    code, out, _ = run(capsys, "suite", "--filter", "characteristic,denominators")
    assert code == 0 and "characteristic" in out


def test_cli_suite_corrupted_golden(tmp_path, capsys):
    text = golden_text("figure1").replace("6", "7", 1)
    (tmp_path / "figure1.txt").write_text(text, encoding="utf-8")
    code, out, _ = run(capsys, "suite", "--filter", "figures", "--golden", str(tmp_path))
    assert code == 1 and "FAIL figures figure1" in out


def test_suite_select():
    assert select("xarak") == ["xarak"]
    assert select("rectan") == ["rectan"]
    assert set(select("neg")) == {"xarak-negatives"}
    assert select(None)[0] == "algebra-soundness"
    with pytest.raises(KeyError):
        select("zzz")


def test_run_suite_subset():
    out = run_suite("characteristic,sovpad", entries=["sl2-trivial", "sp6-denom"])
    assert summary(out) == [("characteristic", 2, 0), ("sovpad", 2, 0)]
