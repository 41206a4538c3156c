import json
import math

import numpy as np
import pytest

import scalebench as sb


def test_growth_sample_and_kang():
    s = sb.sample("kang(pow:1,pow:2)", 6)
    assert s["values"] == [1, 1, 2, 3, 4, 4]
    assert sb.canonical_spec("kang(pow:1, pow:2)") == "kang(pow:1,pow:2)"
    assert sb.sample(sb.kang("pow:1", "pow:1"), 4)["values"] == [1, 1, 2, 2]


def test_equivalence_and_invariance():
    assert sb.equivalence_report("pow:1", "exp:e", 500)["verdict"] == "ratio-diverging"
    assert sb.is_shift_invariant("exp:2", 300)
    assert not sb.is_scale_invariant("exp:2", 300)
    f_k, g_k = sb.kang_decompose("exp:e", 3)
    merged = sb.sample(sb.kang(f_k, g_k), 200)["logs"]
    assert merged == sb.sample("exp:e", 200)["logs"]


def test_parse_errors_raise():
    with pytest.raises(sb.SpecParseError) as err:
        sb.sample("kang(pow:1,,exp:2)", 3)
    assert "^" in str(err.value)
    with pytest.raises(sb.ScalebenchError):
        sb.sample("exp:0.5", 3)


def test_pair_growth_recovers_weights():
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    h = np.array([1.0, 2.0, 3.5, 7.0, 8.0, 20.0])
    g1 = q @ np.diag(h) @ q.T
    out = sb.extract_pair_growth(np.eye(6), g1)
    assert np.allclose(out["h"], h, rtol=1e-10)
    t = sb.riesz_operator(np.eye(6), g1)
    assert np.allclose(g1 @ t, np.eye(6), atol=1e-12)


def test_projection_matches_oracle():
    a = sb.WeakHessian.random(7, 3, 4, 0.5)
    p = sb.contour_projection(a, "+")
    assert np.linalg.norm(p - sb.eigenprojection_oracle(a, "+"), 2) < 1e-7
    assert np.linalg.norm(p @ p - p, 2) < 1e-7
    m = sb.contour_projection(a, "-")
    assert np.allclose(p + m, np.eye(a.dim), atol=1e-7)


def test_two_by_two_demo_and_derivative():
    a = sb.WeakHessian.from_spectrum([-1.0], [1.0])
    assert np.allclose(sb.contour_projection(a), np.diag([1.0, 0.0]), atol=1e-12)
    d = np.array([[0.0, 0.8], [0.8, 0.0]])
    assert np.allclose(sb.projection_derivative(a, d), d / 2, atol=1e-7)
    assert sb.hadamard_q(1.0, -1.0) == pytest.approx(math.pi / 4)


def test_schur_bounds():
    a = np.exp(np.linspace(-2, 2, 12))
    window, upper = sb.corollary_matrix(a, a)
    assert upper <= 0.5 + 1e-12
    assert sb.schur_norm_lower_bound(window) <= upper * (1 + 1e-9)
    _, upper3 = sb.example_iii_matrix(a, a)
    assert upper3 <= math.pi / 2 * (1 + 1e-9)
    l1, l2, gap = sb.obstruction_limits()
    assert gap == pytest.approx(1.0, abs=1e-3)


def test_stein():
    rng = np.random.default_rng(1)
    n = 15
    nu = np.arange(1, n + 1, dtype=float)
    rep = sb.stein_check(rng.standard_normal((n, n)), nu**2, nu**3)
    assert rep["pass"]
    assert rep["m_half"] <= rep["bound"] * (1 + 1e-10)


def test_cli_and_smoke_suite():
    code, out, _ = sb.run_cli(["--format", "json", "hessian", "growth"])
    assert code == 0
    assert json.loads(out)["merge_identity_exact"] is True
    code, _, err = sb.run_cli(["growth", "sample", "--f", "nope:1"])
    assert code == 1 and "^" in err
    certs = sb.verify_all(smoke=3)
    assert len(certs) == 12
    assert all(c["pass"] for c in certs)
