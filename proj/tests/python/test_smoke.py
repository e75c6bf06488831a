from fractions import Fraction
from math import comb

import pytest

import freemeixner as fm


def test_catalan_counts():
    for n in range(1, 9):
        assert len(fm.enumerate_nc(n)) == comb(2 * n, n) // (n + 1)


def test_nc_min2_of_four():
    got = sorted(sorted(map(tuple, p)) for p in fm.enumerate_nc_min2(4))
    assert got == [[(1, 2), (3, 4)], [(1, 2, 3, 4)], [(1, 4), (2, 3)]]


def test_low_degree_polynomials():
    lam, eta, k = Fraction(1, 2), Fraction(1, 3), 2
    assert fm.meixner_poly(1, lam, eta, k) == [0, 1]
    # P2 = (x - lam) x - k
    assert fm.meixner_poly(2, lam, eta, k) == [-k, -lam, 1]
    for n in range(8):
        assert fm.meixner_poly(n, lam, eta, k) == fm.genfun_1d_coefficient(n, lam, eta, k)


def test_moments_match_cumulants():
    lam, eta, k = -1, Fraction(1, 4), Fraction(3, 2)
    kappa = fm.free_cumulants(8, lam, eta, k)
    assert fm.vacuum_moment(2, lam, eta, k) == k
    for n in range(1, 9):
        assert fm.vacuum_moment(n, lam, eta, k) == fm.moment_from_cumulants(kappa, n)


def test_fock_dimension():
    assert fm.fock_dimension(2, 3) == 1 + 2 + 4 + 8


def test_demo_run_passes():
    report = fm.run(fm.demo_config(), parallel=False)
    assert report["schema_version"] == 1
    assert report["summary"]["status"] == "pass"
    assert [s["name"] for s in report["suites"]] == list(fm.SUITES)


def test_config_errors_name_the_field():
    cfg = fm.demo_config()
    cfg["space"]["cells"][1]["eta"] = "1/2"
    with pytest.raises(fm.ConfigError, match="/space/cells/1/eta"):
        fm.validate_config(cfg)
    with pytest.raises(ValueError):
        fm.validate_config({"space": {}})


def test_single_suite():
    result = fm.run_suite("1d", fm.demo_config())
    assert result["status"] == "pass"
    assert all(c["passed"] for c in result["checks"])
