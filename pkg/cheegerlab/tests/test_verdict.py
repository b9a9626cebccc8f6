import math

from cheegerlab.verdict import DEFAULT_TOL, Status, Verdict


def test_lower_bound():
    v = Verdict.lower_bound("x", "a >= b", 1.0, 0.5)
    assert v.holds
    assert v.slack == 0.5
    assert v.direction == ">="
    assert v.tol == DEFAULT_TOL


def test_upper_bound():
    v = Verdict.upper_bound("x", "a <= b", 1.0, 0.5)
    assert v.failed
    assert v.slack == -0.5
    assert v.direction == "<="


def test_tolerance():
    assert Verdict.lower_bound("x", "", 1.0 - 1e-10, 1.0).holds
    assert Verdict.lower_bound("x", "", 1.0 - 1e-6, 1.0).failed
    assert Verdict.lower_bound("x", "", 1.0 - 1e-6, 1.0, tol=1e-5).holds


def test_nan_fails():
    assert Verdict.lower_bound("x", "", math.nan, 0.0).failed


def test_dependencies_are_strings():
    v = Verdict.lower_bound("x", "", 1, 0, vertex_transitive="verified",
                            cluster_tol=1e-8)
    assert v.dependencies == {
        "vertex_transitive": "verified",
        "cluster_tol": "1e-08",
    }
    assert isinstance(v.lhs, float)


def test_skipped_and_not_applicable():
    s = Verdict.skipped("x", "a", "ratio above one")
    assert s.status is Status.SKIPPED
    assert s.slack is None and not s.holds and not s.failed
    na = Verdict.not_applicable("x", "a", "graph is bipartite")
    assert na.status is Status.NOT_APPLICABLE
    assert na.reason == "graph is bipartite"
