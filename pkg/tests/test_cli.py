import json
import os
import subprocess
import sys

import pytest

from cli_corpus import commands, write_inputs
from graphgeom import generators as gen
from graphgeom.cli import main


@pytest.fixture(scope="module")
def inputs(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    return write_inputs(str(root)), str(root)


def run(capsys, argv):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def payload(out):
    return json.loads(out)


class TestExamples:
    def test_connectivity(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["graph", "connectivity", p["petersen.g"]])
        assert code == 0 and payload(out) == {"kappa": 3}

    def test_layers(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["graph", "layers", p["petersen.g"], "--root", "0"])
        assert payload(out)["sizes"] == [1, 3, 6]

    def test_contract(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["graph", "contract", p["k4.g"], "--edge", "0", "1"])
        assert payload(out) == {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}

    def test_clique_minor_free(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["minor", "clique", p["petersen.g"], "--t", "6"])
        assert code == 1 and payload(out) == {"found": False}

    def test_raise_k6(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["complex", "raise", p["k6.g"], "--x", "2", "--mode", "triangulated"])
        assert code == 0 and payload(out)["face_vector"] == [6, 15, 20]

    def test_discharge_tetra(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["discharge", "run", p["tetra_regions.cx"], "--a", "3", "--b", "2", "--d", "3"])
        rep = payload(out)
        assert code == 0 and rep["total"] == "0" and rep["conserved"] is True

    def test_fill_log(self, capsys, inputs):
        p, root = inputs
        log = os.path.join(root, "fills-test.jsonl")
        run(capsys, ["complex", "raise", p["k4.g"], "--x", "2", "--fills", log])
        with open(log) as fh:
            recs = [json.loads(x) for x in fh]
        assert len(recs) == 4 and all(r["certificate"]["verdict"] == "certified" for r in recs)

    def test_spheres_json_lines(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["certify", "spheres", p["tetra.cx"], "--i", "1", "--size", "3"])
        lines = [json.loads(x) for x in out.splitlines()]
        # certificates look at the i-skeleton, where each triangle is an induced cycle
        assert len(lines) == 4 and code == 0
        assert {tuple(x["vertices"]) for x in lines} == {(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)}


class TestExitCodes:
    def test_parse_error(self, capsys, inputs):
        _, root = inputs
        bad = os.path.join(root, "bad.g")
        with open(bad, "w") as fh:
            fh.write("p graph 3 1\n0 nine\n")
        code, out, err = run(capsys, ["graph", "connectivity", bad])
        rep = payload(out)["error"]
        assert code == 2 and rep["module"] == "graph-core" and "line 2" in rep["message"]

    def test_missing_file(self, capsys):
        code, out, _ = run(capsys, ["graph", "connectivity", "/nonexistent/x.g"])
        assert code == 2

    def test_usage_error(self, capsys):
        assert main(["graph", "layers"]) == 2
        capsys.readouterr()

    def test_hypothesis_violation(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["complex", "raise", p["c5.g"], "--x", "3"])
        assert code == 3 and payload(out)["error"]["kind"] == "hypothesis"

    def test_bound_inapplicable(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["color", "bound", p["k5.g"], "--d", "2"])
        assert code == 3 and payload(out)["applicable"] is False

    def test_budget_exhausted(self, capsys, inputs):
        p, root = inputs
        s3 = os.path.join(root, "s3.cx")
        with open(s3, "w") as fh:
            json.dump(gen.stacked_sphere(4, 2).to_json(), fh)
        code, out, _ = run(capsys, ["certify", "pi1", s3, "--budget", "1"])
        rep = payload(out)
        assert code == 4 and rep["budget_exhausted"] and "budget" in rep["note"]

    def test_not_separator(self, capsys, inputs):
        p, _ = inputs
        code, out, _ = run(capsys, ["graph", "sdecomp", p["k4.g"], "--cut", "0"])
        assert code == 2 and "not a separator" in payload(out)["error"]["message"]


class TestManifest:
    def test_manifest_on_stderr_and_file(self, capsys, inputs):
        p, root = inputs
        mpath = os.path.join(root, "m.json")
        code, out, err = run(capsys, ["graph", "connectivity", p["petersen.g"], "--manifest", mpath])
        line = next(x for x in err.splitlines() if x.startswith("manifest: "))
        m = json.loads(line[len("manifest: "):])
        assert m["command"] == "graph connectivity" and p["petersen.g"] in m["inputs"]
        with open(mpath) as fh:
            assert json.load(fh)["inputs"] == m["inputs"]

    def test_threads_env_and_flag(self, capsys, inputs, monkeypatch):
        p, _ = inputs
        monkeypatch.setenv("GRAPHGEOM_THREADS", "3")
        _, _, err = run(capsys, ["graph", "connectivity", p["k4.g"]])
        assert '"threads": 3' in err
        _, _, err = run(capsys, ["graph", "connectivity", p["k4.g"], "--threads", "2"])
        assert '"threads": 2' in err


def _subprocess(argv):
    env = dict(os.environ, PYTHONHASHSEED="random")
    return subprocess.run([sys.executable, "-m", "graphgeom", *argv], capture_output=True, env=env)


class TestDeterminism:
    @pytest.mark.parametrize("idx", [0, 7, 11, 13, 21, 27, 36])
    def test_double_run_subprocess(self, inputs, idx):
        p, root = inputs
        argv = commands(p, root)[idx]
        a, b = _subprocess(argv), _subprocess(argv)
        assert a.returncode == b.returncode
        assert a.stdout == b.stdout and a.stdout

    def test_every_command_in_process(self, capsys, inputs):
        p, root = inputs
        for argv in commands(p, root):
            first = run(capsys, argv)
            second = run(capsys, argv)
            assert first[:2] == second[:2], argv
