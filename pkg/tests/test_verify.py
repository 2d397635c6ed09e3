import math

import pytest

from doublekit.groups import builtin_group
from doublekit.verify import CHECKS, FAILED_RESIDUAL, Settings, _Residual, run_check, verify_group


def test_report_lists_every_check():
    rep = verify_group(builtin_group("Z2"))
    assert [c.name for c in rep.checks] == list(CHECKS)
    assert len(CHECKS) == 11
    assert rep.passed
    d = rep.to_dict()
    assert d["passed"] and len(d["checks"]) == 11
    assert all(math.isfinite(c["residual"]) for c in d["checks"])
    assert "elapsed" not in d["checks"][0]
    assert len(list(rep.lines())) == 11


def test_skip_above_gate():
    res = run_check("ribbon", builtin_group("S4"))
    assert res.status == "skip" and res.ok
    res = run_check("hopf_axioms", builtin_group("S3"), settings=Settings(gate=3))
    assert res.status == "skip"


def test_failure_reports_names():
    res = run_check("modular_matrices", builtin_group("S3"), settings=Settings(tol=1e-300))
    assert res.status == "fail" and not res.ok
    assert "failed:" in res.detail
    assert math.isfinite(res.residual)


def test_residual_tracker():
    r = _Residual(1e-9)
    r.add("a", 1.0, 1.0 + 1e-12)
    r.exact("b", 2.0, 2.0)
    assert r.failures == []
    r.exact("c", 1.0, 1.0 + 1e-15)
    r.flag("d", ok=True)
    r.add("e", float("nan"))
    assert r.failures == ["c", "e"]
    assert r.parts["e"] == FAILED_RESIDUAL
    r.flag("f")
    assert "f" in r.failures


@pytest.mark.parametrize("name", list(CHECKS))
def test_each_check_passes_on_s3(name):
    res = run_check(name, builtin_group("S3"), settings=Settings(trials=20))
    assert res.status == "pass", res.detail
