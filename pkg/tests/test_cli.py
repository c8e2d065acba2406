import json
import subprocess
import sys

from flatmoduli.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "flatmoduli.cli", *args], capture_output=True, text=True)


def test_teich_and_h1(capsys):
    assert main(["teich", "p4"]) == 0
    assert "dimension 1" in capsys.readouterr().out
    assert main(["h1", "pg", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["class"] == [1]


def test_report_json(capsys):
    assert main(["report", "G6", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["h1"]["invariant_factors"] == [2, 2, 2]
    assert doc["mcg"]["finite_kernel"]["order"] == 8


def test_exit_codes(tmp_path):
    assert run("analyze", "wallpaper/none").returncode == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "generators": [{"linear": [[1, 0]]}]}')
    assert run("analyze", str(bad)).returncode == 2
    flat = tmp_path / "flat.json"
    flat.write_text('{"dim": 2, "generators": [{"linear": [[1, 0], [0, 1]], "translation": ["1", "0"]}]}')
    assert run("analyze", str(flat)).returncode == 3


def test_batch(tmp_path):
    d = tmp_path / "groups"
    d.mkdir()
    for name in ("pm", "pg"):
        r = run("report", name, "--json")
        doc = json.loads(r.stdout)
        (d / f"{name}.json").write_text(json.dumps({"dim": 2, "name": name, "generators": doc["group"]["generators"]}))
    out = tmp_path / "out"
    r = run("batch", str(d), "--jobs", "2", "--out", str(out))
    assert r.returncode == 0
    assert sorted(p.name for p in out.iterdir()) == ["pg.report.json", "pm.report.json"]
    r = run("batch", str(d))
    lines = [json.loads(x) for x in r.stdout.splitlines()]
    assert [x["report"]["group"]["name"] for x in lines] == ["pg", "pm"]
