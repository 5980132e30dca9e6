import math

import pytest

import orlicz

MIN_QUAD_CFG = """\
[space]
n = 2
[phi]
m = 2
family = min-of
[phi.1]
family = diag-quadratic
weights = 1 0
[phi.2]
family = diag-quadratic
weights = 0 1
[grid]
axis_points = 9
radius = 2
"""


def min_quad():
    return orlicz.Phi.min_of(
        [orlicz.Phi.diag_quadratic([1.0, 0.0]), orlicz.Phi.diag_quadratic([0.0, 1.0])]
    )


def test_phi_families_evaluate():
    power = orlicz.Phi.power(2, 2.0)
    assert power([3.0, 4.0]) == pytest.approx(25.0)
    assert power.dim == 2
    assert power.convex

    half = orlicz.Phi.indicator(2, 0.5)
    assert half([0.5, 0.5]) == math.inf
    assert half([0.25, 0.25]) == 0.0
    assert not half.convex

    assert min_quad()([2.0, 3.0]) == pytest.approx(4.0)


def test_envelope_flattens_min_quad():
    pts, vals = [], []
    phi = min_quad()
    for i in range(5):
        for j in range(5):
            p = [-2.0 + i, -2.0 + j]
            pts.append(p)
            vals.append(phi(p))
    env = orlicz.Envelope(pts, vals)
    assert env.eval([1.0, 1.0]) <= 1e-9
    assert env.values()[pts.index([2.0, 2.0])] == pytest.approx(4.0)
    assert env.max_slack >= 0.0


def test_envelope_rejects_duplicate_points():
    with pytest.raises(ValueError):
        orlicz.Envelope([[0.0, 0.0], [0.0, 0.0]], [0.0, 1.0])


def test_bruteforce_witness_on_min_quad():
    out = orlicz.almost_convex_bruteforce(
        min_quad(), [[1.0, 0.0], [0.0, 1.0]], [0.5], beta=1.0
    )
    assert not out["pass"]
    assert out["alpha"] == 0.5
    assert out["lhs"] == pytest.approx(0.25)
    assert out["rhs"] == 0.0


def test_run_is_deterministic_and_reports():
    cfg = "[phi]\nfamily = power\np = 2\n"
    first = orlicz.run("a0", cfg)
    second = orlicz.run("a0", cfg)
    assert first["exit_code"] == 0
    assert "PASS" in first["verdict"]
    assert first["report"] == second["report"]


def test_run_envelope_emits_csv():
    out = orlicz.run("envelope", MIN_QUAD_CFG)
    assert out["exit_code"] == 0
    assert "points=81" in out["verdict"]
    assert len(out["csv"].splitlines()) == 82


def test_config_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        orlicz.run("a0", "[phi]\nfamily = nonsense\n")
    with pytest.raises(ValueError):
        orlicz.run("not-a-command", "[phi]\nfamily = power\np = 2\n")


def test_canonical_config_is_a_fixed_point():
    once = orlicz.canonical_config(MIN_QUAD_CFG)
    assert orlicz.canonical_config(once) == once
