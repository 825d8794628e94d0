"""Smoke tests for the Python module (thin checks; the C++ suites carry the load)."""

import math

import pytest

import ladderlab as ll


@pytest.fixture(scope="module")
def lab():
    return ll.Lab(ll.EngineConfig(), "")  # in-memory store


def test_zeta_surface():
    assert ll.z_value(100.0) == pytest.approx(2.6926970, abs=1e-5)
    assert ll.zeta_sq(100.0) == pytest.approx(ll.z_value(100.0) ** 2, rel=1e-12)
    assert abs(ll.z_value(14.134725)) < 1e-4
    assert ll.theta(100.0) == pytest.approx(87.9721652, abs=1e-5)
    z = ll.oracle_zeta_half(50.0)
    assert abs(abs(z) - abs(ll.z_value(50.0))) < 1e-6


def test_spectrum_layout():
    sp = ll.local_spectrum(1000.0)
    assert len(sp.terms) == 12
    assert sp.terms[3].amplitude == pytest.approx(1.0)
    freqs = [t.frequency for t in sp.terms]
    assert freqs == sorted(freqs, reverse=True)
    assert min(freqs) >= 0.0


def test_errors_are_typed():
    with pytest.raises(ll.LadderlabError):
        ll.z_value(3.0)
    with pytest.raises(ll.LadderlabError):
        ll.prime_pi(1.0)


def test_prime_pi_and_count():
    assert ll.prime_pi(1e4) == 1229
    assert ll.formula_count(10**6) == "1000000000000000000000000"


def test_ladder_round_trip(lab):
    T = 2000.0
    t1 = lab.reverse_iterate(T, 1)
    assert abs(lab.phi1(t1) - T) <= 1e-9 * T
    assert lab.phi1(T) < T
    comps = lab.disconnected_set(math.pi * 500, math.pi / 4, 2)
    assert len(comps) == 3
    assert comps[1].lo > comps[0].hi


def test_factorization_identity(lab):
    T = math.pi * 1000.0
    rep = lab.factorization_check("f1", T, math.pi / 4, 1)
    assert abs(rep.residual_exact) <= 1e-6
    assert rep.rhs > 0.0
    nodes = lab.generate_nodes("f2", T, math.pi / 4, 1)
    assert T < nodes.alpha[0] < T + math.pi / 4


def test_hybrid_identities(lab):
    T = math.pi * 1000.0
    chf = lab.chf_check(T, math.pi / 4, [1], ll.Variant.exact)
    assert chf.ratio == pytest.approx(1.0, abs=1e-6)
    sc = lab.sincos_chf(T, math.pi / 4, 1, 1, ll.Variant.exact)
    assert sc.lhs == pytest.approx(1.0, abs=1e-8)
    sec = lab.secondary_chf_check(T, math.pi / 4, [1], ll.Variant.exact)
    assert sec.ratio == pytest.approx(1.0, abs=1e-5)
    assert len(sec.active_functions) == 6


def test_custom_function(lab):
    T = math.pi * 1000.0
    rep = lab.factorization_check(
        "bump", T, math.pi / 4, 1, custom=lambda s: s * s * (1.0 + math.sin(s) ** 2)
    )
    assert abs(rep.residual_exact) <= 1e-6
