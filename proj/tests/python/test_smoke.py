"""Smoke tests for the python bindings and their agreement with the CLI."""

import json
import math
import os
import subprocess

import pytest

import conekit


def test_odd_k_truncated_integral_vanishes():
    assert conekit.tkn_eval(3, 10.0, 0.7) == 0j
    assert conekit.tkn_eval(5, 100.0, 2.0, "paper_literal") == 0j


def test_axis_moment_of_gaussian():
    r = conekit.axis_moment(conekit.gaussian(), 0, 0)
    assert r["converged"]
    assert r["value"] == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_leading_pairing_of_odd_gaussian():
    r = conekit.leading_pairing(conekit.xi1_gaussian())
    assert r["value"].real == 0.0
    assert r["value"].imag == pytest.approx(0.28209479177387814, rel=1e-9)
    assert [name for name, _ in r["terms"]] == ["leading"]


def test_sobolev_window():
    assert conekit.sobolev_condition_check(0.0, 0.0) is True
    assert conekit.sobolev_condition_check(1.0, 0.0) is False


def test_solve_identity_origin():
    pts = conekit.solve_theorem2(conekit.xi1_gaussian(), points=[(0.0, 0.0)])
    assert len(pts) == 1 and pts[0]["ok"]
    target = -math.sqrt(math.pi) / (2.0 * math.pi)
    assert pts[0]["value"].imag == pytest.approx(target, rel=1e-8)


def test_quadrature_spec_round_trip():
    spec = conekit.QuadratureSpec()
    spec.truncation_radius = 12.0
    spec.validate()
    r = conekit.integrate_adaptive(lambda x: math.exp(-x * x), -9.0, 9.0, spec)
    assert r["value"] == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_cli_agrees_with_library():
    cli = os.environ.get("CONEKIT_CLI")
    if cli is None:
        pytest.skip("CONEKIT_CLI not set")
    out = subprocess.run(
        [cli, "tkn", "--k", "2", "--N", "10", "--xi1", "1", "--format", "json"],
        capture_output=True,
        text=True,
        check=True,
    ).stdout
    payload = json.loads(out)
    by_mode = {row["mode"]: row["value"] for row in payload["results"]}
    for mode in ("derived", "paper_literal"):
        lib = conekit.tkn_eval(2, 10.0, 1.0, mode)
        assert abs(by_mode[mode]["re"] - lib.real) <= 1e-15
        assert abs(by_mode[mode]["im"] - lib.imag) <= 1e-15
