"""Smoke tests for the Python bindings: published values and basic plumbing."""

import json
import math

import pytest

import ctpower


def test_bounds():
    assert ctpower.classical_limit(1) == pytest.approx(2 / 3)
    assert ctpower.min_control_power(1) == pytest.approx(1 / 3)
    assert ctpower.classical_limit(2) == pytest.approx(2 / 5)
    assert ctpower.min_control_power(3) == pytest.approx(7 / 9)
    for n in range(1, 8):
        assert ctpower.classical_limit(n) + ctpower.min_control_power(n) == pytest.approx(1.0)
    assert ctpower.controller_qubit_bound(1) == 1


def test_perfect_ct_and_control_power():
    spec = ctpower.make_scheme(ctpower.SchemeConfig("ghz"))
    table = ctpower.derive_corrections(spec)
    assert len(table) == 8

    state = ctpower.haar_random_state(1, seed=7)
    assert ctpower.conditioned_fidelity(spec, table, state) == pytest.approx(1.0)

    # single controller of a GHZ(3) channel: average NCF 2/3, CP 1/3
    assert ctpower.average_ncf_analytic(spec, table, 0) == pytest.approx(2 / 3)


def test_two_copy_scheme_mc_agrees_with_analytic():
    spec = ctpower.make_scheme(ctpower.SchemeConfig("2ghz", n=2))
    table = ctpower.derive_corrections(spec)
    analytic = ctpower.average_ncf_analytic(spec, table, 0)
    assert analytic == pytest.approx(0.4)
    est = ctpower.average_ncf_mc(spec, table, 0, samples=2000, seed=11)
    assert abs(est.mean - analytic) <= 3 * est.stderr_of_mean + 1e-9


def test_verdict_report_and_json():
    report = ctpower.verdict(
        ctpower.SchemeConfig("nghz", n=2), method="analytic", samples=500, seed=3
    )
    assert report.n == 2
    assert report.classical_limit == pytest.approx(2 / 5)
    assert report.controllers[0].cp == pytest.approx(3 / 5)
    assert report.passes()

    doc = json.loads(report.to_json())
    assert doc["scheme"] == "nghz"
    assert doc["controllers"][0]["sufficient"] is True

    failing = ctpower.verdict(
        ctpower.SchemeConfig("man", n=3, m=1), method="analytic", samples=500, seed=3
    )
    assert not failing.passes()
    assert failing.controllers[0].cp == pytest.approx(4 / 9)


def test_pe4_closed_form_and_sweep():
    params = ctpower.Pe4Params.from_squares(0.4, 0.2, 0.2, 0.2)
    assert ctpower.pe4_ncf_analytic(params) == pytest.approx(0.6)

    rows = ctpower.pe4_sweep(resolution=3, samples=300, seed=5)
    assert len(rows) == 10  # simplex grid C(3+2, 3)
    for row in rows:
        assert row.a2 + row.b2 + row.c2 + row.d2 == pytest.approx(1.0)
        assert abs(row.ncf_mc - row.ncf_analytic) <= 3 * row.ncf_stderr + 1e-9
    csv = ctpower.sweep_csv(rows)
    assert csv.splitlines()[0] == "a2,b2,c2,d2,cf,ncf_analytic,ncf_mc,ncf_stderr,pass"


def test_determinism():
    spec = ctpower.make_scheme(ctpower.SchemeConfig("yang", n=2))
    table = ctpower.derive_corrections(spec)
    a = ctpower.average_ncf_mc(spec, table, 0, samples=500, seed=42)
    b = ctpower.average_ncf_mc(spec, table, 0, samples=500, seed=42)
    assert a.mean == b.mean and a.stderr_of_mean == b.stderr_of_mean


def test_no_pauli_frame_error_surfaces():
    state = ctpower.PureState.basis(1, 0)
    assert state.norm() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ctpower.SchemeConfig("pe4", pe4=ctpower.Pe4Params.from_squares(-1, 1, 0.5, 0.5))
