import json
import math

import pytest

import weingarten as w


def test_trace_k1_endpoints():
    c = w.trace(w.GaussConstant(1.0))
    s = c.samples
    assert s.shape[1] == 4
    assert s[0, 0] == pytest.approx(-0.881374, abs=1e-6)
    assert s[-1, 0] == pytest.approx(0.881374, abs=1e-6)
    assert c.right_end["kind"] == "VerticalTangent"


def test_linear_relation_and_contact_angle():
    spec = w.spec_from_linear(1.0, 2.0, 1.0)  # k1 = -2 k2 + 1
    assert w.regime_of(spec) == "LWConcaveGraph"
    c = w.trace(spec)
    assert w.weingarten_residual(spec, c) <= 1e-8
    assert w.contact_angle(c, "left") == pytest.approx(math.acos(1 / 3), abs=1e-6)


def test_classify_reports_pass():
    report = w.classify(w.LinearPrincipal(-2.0, 3.0), math.pi / 2)
    assert report["regime"] == "LWAsymptotic"
    assert report["verification"]["passed"]


def test_closedform():
    assert w.closedform.domain_half_width(-2.0) == pytest.approx(0.555360, abs=1e-6)
    h = w.closedform.height(-2.0)
    assert h["printed_formula"] == pytest.approx(0.202733, abs=1e-6)
    assert h["log_ratio"] == pytest.approx(0.346574, abs=1e-6)


def test_serialization():
    c = w.trace(w.GaussConstant(-0.5))
    assert c.to_csv().startswith("s,x,z,theta\n")
    assert json.loads(c.to_json())["right_end"]["kind"] == "BoundaryContact"
    assert "<svg" in w.render_svg([c], "K = -0.5")
    assert w.mesh_obj(c, 1.0, 3).startswith("v ")


def test_errors():
    with pytest.raises(w.WeingartenError, match="TrivialSpec"):
        w.spec_from_linear(1.0, -1.0, 0.0)
    with pytest.raises(w.WeingartenError, match="NotPeriodic"):
        w.period(w.trace(w.GaussConstant(1.0)))


def test_period():
    c = w.trace(w.LinearPrincipal(1.0, 2.0))
    assert abs(w.period(c)) > 0
