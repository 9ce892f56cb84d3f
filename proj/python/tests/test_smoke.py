import math

import numpy as np
import pytest

import socpart


def test_bundled_names():
    names = socpart.bundled_names()
    for n in ("intro", "analytic", "counterexample", "transition", "transition_tilted", "degenerate"):
        assert n in names


def test_solve_intro_closed_form():
    inst = socpart.bundled_instance("intro")
    r = socpart.solve(inst, 0.5)
    assert r.triple.objective == pytest.approx(-math.sqrt(0.5), abs=1e-8)
    assert r.triple.primal_residual < 1e-8
    assert isinstance(r.triple.x, np.ndarray)


def test_partition_and_str():
    p = socpart.partition(socpart.bundled_instance("intro"), 0.0)
    assert str(p) == "({},{},{1},({},{2},{}))"
    assert not p.strictly_complementary
    q = socpart.partition(socpart.bundled_instance("intro"), 0.5)
    assert q.strictly_complementary
    assert q.B == [1] and q.R == [0]


def test_nonlinearity_interval():
    d = socpart.nonlinearity_interval(socpart.bundled_instance("intro"), 0.5)
    assert d["alpha_hat"] < 1e-5
    assert d["beta_hat"] > 1 - 1e-5
    assert d["forward"]["stop"] == "CONVERGED"


def test_transition_point():
    d = socpart.classify_point(socpart.bundled_instance("transition"), 0.0)
    assert d["verdict"] == "TRANSITION_POINT"
    assert d["violation"]["order"] == 1
    assert d["violation"]["value"] == pytest.approx(-0.5, abs=1e-8)


def test_errors_carry_code():
    with pytest.raises(socpart.Error) as e:
        socpart.nonlinearity_interval(socpart.bundled_instance("transition"), 0.0, max_iter=5)
    assert e.value.code == "NOT_STRICTLY_COMPLEMENTARY"
    with pytest.raises(socpart.Error) as e:
        socpart.parse_instance("garbage")
    assert e.value.code == "PARSE_ERROR"


def test_custom_instance_roundtrip():
    inst = socpart.Instance([2], np.array([[1.0, 0.0]]), np.array([1.0]), np.array([1.0, 0.0]),
                            np.array([0.0, 1.0]), name="disk")
    again = socpart.parse_instance(inst.to_text())
    assert again.dims == [2]
    assert np.allclose(again.A, inst.A)
    r = socpart.solve(inst, 0.5)
    assert r.triple.gap < 1e-7


def test_grid_scan_and_cli():
    rows, changes = socpart.grid_scan(socpart.bundled_instance("intro"), -0.5, 1.5, 5)
    assert len(rows) == 5 and len(changes) == 4
    code, out, _ = socpart.run_cli(["partition", "--bundled", "intro", "--at", "0.5"])
    assert code == 0
    assert "({2},{},{1},({},{},{}))" in out
    code, _, _ = socpart.run_cli(["partition"])
    assert code == 2
