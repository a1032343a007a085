import json
import math

import numpy as np
import pytest

from hitchin_bracket import formats
from hitchin_bracket.cli import main
from hitchin_bracket.diagram import IntersectionDiagram, IntersectionPoint
from hitchin_bracket.fuchsian import hyperbolic_pair


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def matrix_file(tmp_path, name, A):
    return write(tmp_path / name, formats.matrix_to_json(A))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def diagram_file(tmp_path, phi, name="d.json"):
    A, B = hyperbolic_pair(1.0, 1.5, phi)
    d = IntersectionDiagram(2, [IntersectionPoint(1 if phi < math.pi else -1, A, B, phi)])
    return write(tmp_path / name, formats.diagram_to_json(d))


def test_decompose(tmp_path, capsys):
    code, out, _ = run(capsys, "decompose", matrix_file(tmp_path, "m.json", np.diag([2.0, 0.5])))
    assert code == 0
    assert out["eigenvalues"] == [2.0, 0.5]
    assert out["eigen_lengths"] == pytest.approx([math.log(2), -math.log(2)])


def test_decompose_rejects_rotation_and_singular(tmp_path, capsys):
    code, _, err = run(capsys, "decompose", matrix_file(tmp_path, "r.json", [[0.0, -1.0], [1.0, 0.0]]))
    assert code == 2 and "NotHyperbolic" in err
    code, _, err = run(capsys, "decompose", matrix_file(tmp_path, "s.json", [[1.0, 2.0], [2.0, 4.0]]))
    assert code == 2 and "Singular" in err


def test_decompose_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "decompose", str(bad))[0] == 1
    assert run(capsys, "decompose", write(tmp_path / "x.json", {"rows": [[1.0, 2.0]]}))[0] == 1
    assert run(capsys, "decompose", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "nosuchcommand")[0] == 1


def test_tolerance_from_environment(tmp_path, capsys, monkeypatch):
    m = matrix_file(tmp_path, "m.json", np.diag([1.001, 1 / 1.001]))
    assert run(capsys, "decompose", m)[0] == 0
    monkeypatch.setenv("HITCHIN_BRACKET_TOL", "0.01")
    assert run(capsys, "decompose", m)[0] == 2
    assert run(capsys, "decompose", m, "--tol", "1e-8")[0] == 0
    monkeypatch.setenv("HITCHIN_BRACKET_TOL", "abc")
    assert run(capsys, "decompose", m)[0] == 1


def test_crossratio(tmp_path, capsys):
    a = matrix_file(tmp_path, "a.json", np.diag([2.0, 0.5]))
    code, out, _ = run(capsys, "crossratio", a, a, "--i", "1", "--j", "1")
    assert code == 0 and out["trace_route"] == pytest.approx(1.0) and out["quotient_route"] == pytest.approx(1.0)
    # i != j on the same matrix: the numerator <theta^1|xi^2> vanishes
    code, out, _ = run(capsys, "crossratio", a, a, "--i", "1", "--j", "2")
    assert code == 0 and out["trace_route"] == 0.0 and out["quotient_route"] == 0.0
    A, B = hyperbolic_pair(1.0, 1.0, math.pi / 2)
    code, out, _ = run(capsys, "crossratio", matrix_file(tmp_path, "A.json", A), matrix_file(tmp_path, "B.json", B))
    assert code == 0
    assert out["trace_route"] == pytest.approx(0.5, abs=1e-12)
    assert abs(out["difference"]) <= 1e-12
    assert run(capsys, "crossratio", a, a, "--i", "3")[0] == 1


def test_bracket(tmp_path, capsys):
    empty = write(tmp_path / "e.json", {"n": 3, "points": []})
    code, out, _ = run(capsys, "bracket", empty, "--i", "1", "--j", "2")
    assert code == 0 and out["value"] == 0.0 and out["points"] == 0
    d = diagram_file(tmp_path, math.pi / 3)
    code, out, _ = run(capsys, "bracket", d)
    assert code == 0
    assert out["value"] == pytest.approx(0.25)
    assert out["wolpert_cosine_sum"] == pytest.approx(0.25)
    assert out["contributions"][0]["epsilon"] == 1
    code, out, _ = run(capsys, "bracket", d, "--i", "1", "--j", "2")
    assert out["value"] == pytest.approx(-0.25)
    code, out, _ = run(capsys, "bracket", d, "--invariants", "l1,l1")
    assert code == 0 and out["value"] == pytest.approx(0.25)
    code, out, _ = run(capsys, "bracket", d, "--invariants", "trace,trace")
    assert code == 0 and math.isfinite(out["value"])
    assert run(capsys, "bracket", d, "--invariants", "trace")[0] == 1
    assert run(capsys, "bracket", d, "--invariants", "det,trace")[0] == 1


def test_bracket_not_hyperbolic_names_point(tmp_path, capsys):
    obj = {"n": 2, "points": [
        {"epsilon": 1, "A": formats.matrix_to_json(np.diag([2.0, 0.5])),
         "B": formats.matrix_to_json(np.diag([3.0, 1 / 3]))},
        {"epsilon": -1, "A": formats.matrix_to_json(np.diag([2.0, 0.5])),
         "B": formats.matrix_to_json([[0.0, 1.0], [-1.0, 0.0]])},
    ]}
    code, _, err = run(capsys, "bracket", write(tmp_path / "d.json", obj))
    assert code == 2 and "point 1" in err
    obj["points"][0]["epsilon"] = 0
    assert run(capsys, "bracket", write(tmp_path / "d2.json", obj))[0] == 1


def test_fuchsian_groups(tmp_path, capsys):
    code, out, _ = run(capsys, "fuchsian", "genus2")
    assert code == 0 and out["relation_residual"] <= 1e-8
    assert len(out["representation"]["generators"]) == 4
    path = tmp_path / "torus.json"
    code, out, _ = run(capsys, "fuchsian", "holed-torus", "-o", str(path))
    assert code == 0 and out["output"] == str(path)
    rep = formats.rep_from_json(formats.read_json(path))
    assert rep.n == 2 and len(rep.generators) == 2
    assert run(capsys, "fuchsian", "holed-torus", "--t", "0.5")[0] == 1


def test_round_trip_is_exact(tmp_path, capsys):
    path = tmp_path / "g2.json"
    run(capsys, "fuchsian", "genus2", "-o", str(path))
    from hitchin_bracket.fuchsian import genus2_rep

    rep = formats.rep_from_json(formats.read_json(path))
    for g, h in zip(rep.generators, genus2_rep().generators):
        assert np.abs(g - h).max() <= 1e-15
    assert rep.relators == genus2_rep().relators


def test_intersections(tmp_path, capsys):
    rep = tmp_path / "torus.json"
    run(capsys, "fuchsian", "holed-torus", "-o", str(rep))
    code, out, _ = run(capsys, "fuchsian", "intersections", str(rep), "a", "b")
    assert code == 0 and out["count"] == 1
    dpath = tmp_path / "ab.json"
    code, out, _ = run(capsys, "fuchsian", "intersections", str(rep), "ab", "aB", "-o", str(dpath))
    assert code == 0 and out["count"] == 2
    code, out, _ = run(capsys, "bracket", str(dpath))
    assert out["value"] == pytest.approx(out["wolpert_cosine_sum"], abs=1e-9)
    assert run(capsys, "fuchsian", "intersections", str(rep), "a", "a")[0] == 3
    code, out, _ = run(capsys, "fuchsian", "intersections", str(rep), "a", "bab", "--depth", "1")
    assert code == 4 and "counts_by_depth" in out
    assert run(capsys, "fuchsian", "intersections", str(rep), "a", "b", "--depth", "0")[0] == 1
    assert run(capsys, "fuchsian", "intersections", str(rep), "a", "x1")[0] == 1


def test_twist_check(capsys):
    code, out, _ = run(capsys, "fuchsian", "twist-check")
    assert code == 0 and out["passed"]
    assert out["abs_difference"] <= 1e-4
    assert out["cosine_sum"] == pytest.approx(0.5)
    code, out, _ = run(capsys, "fuchsian", "twist-check", "--angle", str(math.pi / 2), "--t", "2.0")
    assert code == 0 and abs(out["twist_derivative"]) <= 1e-4


def test_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck", "--trials", "3")
    assert code == 0 and out["passed"] and len(out["results"]) == 8
    code, out, _ = run(capsys, "selfcheck", "--trials", "0")
    assert code == 0 and out["note"] == "no trials"
    code, out, err = run(capsys, "selfcheck", "--trials", "3", "--inject-fault")
    assert code == 5 and out["first_failure"] == "length_derivative"
    assert "length_derivative" in err


def test_output_is_deterministic(tmp_path, capsys):
    d = diagram_file(tmp_path, 2.0)
    outputs = []
    for _ in range(2):
        for argv in (("bracket", d, "--i", "2", "--j", "1"), ("selfcheck", "--trials", "2", "--seed", "7"),
                     ("fuchsian", "genus2")):
            main(list(argv))
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_pretty_output(tmp_path, capsys):
    code = main(["--pretty", "decompose", matrix_file(tmp_path, "m.json", np.diag([2.0, 0.5]))])
    out = capsys.readouterr().out
    assert code == 0
    assert "eigen_lengths" in out and "0.69314718056" in out


def test_crossratio_degenerate_still_prints_trace_route(tmp_path, capsys, monkeypatch):
    from hitchin_bracket import cli
    from hitchin_bracket.errors import DegeneratePosition

    def degenerate(*args, **kwargs):
        raise DegeneratePosition("<y|x> vanishes")

    monkeypatch.setattr(cli, "cross_ratio_pair", degenerate)
    a = matrix_file(tmp_path, "a.json", np.diag([2.0, 0.5]))
    code, out, err = run(capsys, "crossratio", a, a)
    assert code == 3 and "DegeneratePosition" in err
    assert out["trace_route"] == pytest.approx(1.0) and out["quotient_route"] is None


def test_decompose_reports_dual_plane(tmp_path, capsys):
    code, out, _ = run(capsys, "decompose", matrix_file(tmp_path, "u.json", [[2.0, 1.0], [0.0, 0.5]]))
    assert code == 0
    theta1 = np.array(out["planes"][0])
    assert theta1[0] * 2 == pytest.approx(theta1[1] * 3)
