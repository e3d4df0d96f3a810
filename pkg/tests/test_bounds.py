import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from anyonbounds.bounds import (GAS_CONSTANT, LR_CONSTANT, BoundReport, GasParameters, e_lr,
                                e_sr, f_ideal, gas_ideal_lower, gas_lower_bound,
                                lt_coefficients, projection_value, scattering_length,
                                soft_core_gas_bound, soft_core_valid, temple_soft_core)
from anyonbounds.config import DomainError
from anyonbounds.special import j_prime_zero, k_alpha
from oracles import FROZEN

JP1_SQ = j_prime_zero(1.0).value ** 2
alphas = st.fractions(min_value=-5, max_value=5, max_denominator=50)


def test_report_invariants():
    with pytest.raises(ArithmeticError):
        BoundReport(-1.0, "x", {"a": -1.0}, {})
    with pytest.raises(ArithmeticError):
        BoundReport(1.0, "x", {"a": 0.4}, {})
    rep = BoundReport.from_terms("x", {"a": 0.5, "b": 0.25}, k=Fraction(1, 3))
    assert float(rep) == 0.75
    assert rep.to_dict()["parameters"]["k"] == "1/3"


def test_gas_parameters_reject_negative_density():
    with pytest.raises(DomainError):
        GasParameters(1, -0.1)
    assert GasParameters(1, 0.5).constant_C == GAS_CONSTANT


# -- short range --------------------------------------------------------

def test_e_sr_free_and_branches():
    assert e_sr(0, 0.3).value == 0.0
    assert e_sr(1, 2.0, n=3).value == pytest.approx(2 * 3 / 4)
    assert e_sr(1, 2.0).regime == "large-gamma"
    assert e_sr(1, 0.5).regime == "small-gamma"


def test_e_sr_root_two_sides():
    a = 0.7
    below = e_sr(a, math.sqrt(2) * (1 - 1e-12)).value
    assert below == pytest.approx(a / 2, rel=1e-9)
    assert e_sr(a, math.sqrt(2), n=1).value == pytest.approx(a)


def test_e_sr_vanishes_logarithmically():
    vals = [e_sr(1, g).value for g in (1e-2, 1e-4, 1e-8, 1e-16)]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    K = k_alpha(1.0)
    assert vals[-1] == pytest.approx(1 / (K + 2 * math.log(math.sqrt(2) / 1e-16)))


def test_denormal_density_is_finite():
    assert e_sr(1, 5e-324).value > 0
    assert gas_lower_bound(GasParameters(1, 5e-324)).subterms["short_range"] > 0


def test_e_sr_rejects_negative_gamma():
    with pytest.raises(DomainError):
        e_sr(1, -1.0)


def test_scattering_length():
    assert scattering_length(1) == pytest.approx(math.exp(-FROZEN["K(1)"] / 2))
    with pytest.raises(DomainError):
        scattering_length(0)
    assert scattering_length(1e4) > 0.99


@given(st.floats(1e-2, 1e6))
def test_scattering_length_below_radius(a):
    assert 0 < scattering_length(a) < 1


# -- Temple -------------------------------------------------------------

def test_temple_precondition_flag():
    rep = temple_soft_core(1.0, 0.1, 10, 0.1)
    assert rep.regime == "precondition-failed" and rep.value == 0.0


def test_temple_support_cutoff():
    assert temple_soft_core(1e-6, 1.0, 2, 0.5).value == 0.0
    assert temple_soft_core(1e-6, 0.5, 2, 0.5).value == 0.0


def test_temple_large_gamma_vanishes():
    # the support factor (1 - 2 gamma)_+^2 is zero here, so the value cannot
    # approach 2 pi |a| (1 - kappa) n (n - 1)
    rep = temple_soft_core(1e-3, 1e3, 3, 0.5)
    assert rep.value == 0.0
    assert rep.parameters["variance_factor"] == pytest.approx(1.0, abs=1e-8)


def test_temple_kappa_to_one():
    vals = [temple_soft_core(1e-4, 0.2, 2, k).value for k in (0.9, 0.99, 0.999)]
    assert vals[0] > vals[1] > vals[2]


def test_temple_domain():
    with pytest.raises(DomainError):
        temple_soft_core(1, 0.1, 1, 0.5)
    with pytest.raises(DomainError):
        temple_soft_core(1, 0.1, 2, 1.0)


# -- long range ---------------------------------------------------------

def test_e_lr_cutoff_and_zero():
    assert e_lr(1, 1 / 12).value == 0.0
    assert e_lr(0, 0.01).value == 0.0
    assert e_lr(Fraction(2), 0.01).value == 0.0


def test_e_lr_at_zero_gamma():
    rep = e_lr(1, 0.0, n_total=10)
    nu = LR_CONSTANT * 1.0
    assert rep.value == pytest.approx(math.pi / 24 * j_prime_zero(nu).value ** 2, rel=1e-12)


@given(alphas, st.floats(0, 0.09), st.floats(0, 0.09))
def test_e_lr_non_increasing(alpha, g1, g2):
    lo, hi = sorted((g1, g2))
    assert e_lr(alpha, hi, n_total=20).value <= e_lr(alpha, lo, n_total=20).value + 1e-15


# -- f(t) ---------------------------------------------------------------

def test_projection_fixed_operator():
    rep = f_ideal(JP1_SQ, "projection-fixed")
    assert rep.parameters["operator"] >= JP1_SQ / 3
    assert rep.value >= JP1_SQ / 6


def test_projection_mu_balances_branches():
    t = JP1_SQ
    H, mu = projection_value(t, 0.68, 0.68)
    s = 1 + 0.68 ** 2 / 2 - 4 * 0.68 / 3
    first = (1 - mu) * 4 * math.pi * t * 0.32 * s
    second = 0.68 * math.pi ** 2 + (1 - 1 / mu) * 4 * t * 0.32 / 0.68 ** 2
    assert first == pytest.approx(second, rel=1e-12)
    assert H == pytest.approx(first, rel=1e-12)


@pytest.mark.parametrize("method", ["projection-fixed", "projection-opt", "temple-opt", "best"])
def test_f_zero(method):
    assert f_ideal(0.0, method).value == 0.0


def test_f_sandwich_and_monotone():
    ts = np.linspace(JP1_SQ / 50, JP1_SQ, 50)
    vals = [f_ideal(t).value for t in ts]
    for t, v in zip(ts, vals):
        assert t / 6 <= v <= 2 * math.pi * t
    assert np.all(np.diff(vals) >= -1e-12)


@pytest.mark.parametrize("t", [1e-3, 1e-4, 1e-6])
def test_temple_small_t(t):
    rep = f_ideal(t, "temple-opt")
    assert rep.value / (2 * math.pi * t) >= 1 - 5 * t ** (1 / 3)


def test_f_method_and_domain():
    with pytest.raises(DomainError):
        f_ideal(1.0, "guess")
    with pytest.raises(DomainError):
        f_ideal(-1.0)
    rep = f_ideal(1.0)
    assert rep.parameters["method"] in ("projection-opt", "temple-opt")
    assert rep.value == max(rep.parameters["projection"], rep.parameters["temple"])


# -- gas ------------------------------------------------------------------

@given(alphas, st.floats(0, 4))
def test_gas_even_in_alpha(alpha, gb):
    plus = gas_lower_bound(GasParameters(alpha, gb)).value
    minus = gas_lower_bound(GasParameters(-alpha, gb)).value
    assert plus == minus


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(1), Fraction(3), Fraction(7, 2)])
def test_gas_short_range_continuous(alpha):
    left = gas_lower_bound(GasParameters(alpha, 2 - 1e-8)).subterms["short_range"]
    right = gas_lower_bound(GasParameters(alpha, 2 + 1e-8)).subterms["short_range"]
    assert abs(left - right) <= 1e-9


@pytest.mark.parametrize("alpha,C", [(1, 1.0), (20, 1.0), (20, GAS_CONSTANT)])
def test_gas_short_range_gap_shrinks_linearly(alpha, C):
    def gap(delta):
        left = gas_lower_bound(GasParameters(alpha, 2 - delta, C)).subterms["short_range"]
        right = gas_lower_bound(GasParameters(alpha, 2 + delta, C)).subterms["short_range"]
        return abs(left - right)

    slope = 2 * math.pi * C * alpha ** 2 / k_alpha(alpha)
    for delta in (1e-6, 1e-8):
        assert gap(delta) == pytest.approx(slope * delta, rel=1e-2)
    assert gap(1e-13) <= 1e-9


@given(alphas, st.floats(math.sqrt(2) / 12, 50))
def test_gas_long_range_vanishes(alpha, gb):
    assert gas_lower_bound(GasParameters(alpha, gb)).subterms["long_range"] == 0.0


def test_gas_free_and_regimes():
    assert gas_lower_bound(GasParameters(0, 0.5)).value == 0.0
    assert gas_lower_bound(GasParameters(1, 3.0)).regime == "dense"
    assert gas_lower_bound(GasParameters(1, 0.5)).regime == "dilute"
    dense = gas_lower_bound(GasParameters(Fraction(1, 3), 3.0, constant_C=1.0))
    assert dense.value == pytest.approx(2 * math.pi / 3)


def test_gas_finite_n_uses_alpha_n():
    rep = gas_lower_bound(GasParameters(Fraction(2, 3), 0.01), n_total=2)
    assert rep.parameters["alpha_frac"] == Fraction(2, 3)
    rep = gas_lower_bound(GasParameters(Fraction(2, 3), 0.01))
    assert rep.parameters["alpha_frac"] == 0


def test_gas_ideal():
    assert gas_ideal_lower(Fraction(2, 3)).value == 0.0
    rep = gas_ideal_lower(1)
    t = JP1_SQ
    assert t / 24 <= rep.value <= 2 * math.pi * t / 4
    assert rep.value == pytest.approx(f_ideal(t).value / 4)


# -- soft core ------------------------------------------------------------

def _valid_triples(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        eps = rng.uniform(1e-3, 0.2)
        gb = 10 ** rng.uniform(-2, 1)
        limit = eps ** 5 * min(gb ** 2, eps ** 3 / gb ** 4)
        out.append((limit * rng.uniform(0.01, 1.0), gb, eps))
    return out


@pytest.mark.parametrize("alpha,gb,eps", _valid_triples(20, 11))
def test_soft_core_ratio(alpha, gb, eps):
    assert soft_core_valid(alpha, gb, eps)
    rep = soft_core_gas_bound(alpha, gb, eps)
    assert rep.regime == "soft-core"
    assert rep.value >= 1 - 10 * eps


def test_soft_core_flags_violations():
    for alpha, gb, eps in _valid_triples(20, 12):
        bad = eps ** 5 * min(gb ** 2, eps ** 3 / gb ** 4) * 1.5
        rep = soft_core_gas_bound(bad, gb, eps)
        assert rep.regime == "invalid" and not rep.parameters["valid"]
    assert soft_core_gas_bound(1e-30, 1.0, 0.5).regime == "invalid"


def test_soft_core_small_alpha_limit():
    rep = soft_core_gas_bound(1e-17, 1.0, 0.01)
    assert rep.value >= 0.9
    tiny = soft_core_gas_bound(1e-30, 1.0, 0.01).value
    assert tiny >= rep.value


def test_soft_core_small_example_invalid():
    # 1e-11 exceeds eps^5 min(1, eps^3) = 1e-16 at eps = 0.01
    assert not soft_core_valid(1e-11, 1.0, 0.01)


# -- Lieb-Thirring ----------------------------------------------------------

def test_lt_coefficients():
    lt = lt_coefficients(1, 1000)
    assert lt.kinetic_coeff == pytest.approx(3.38996, abs=1e-4)
    assert lt.potential_coeff * lt.kinetic_coeff == pytest.approx(1.0)
    kin, pot = lt.scaled(0.3)
    assert kin * pot * 4 == pytest.approx(1.0)
    flat = lt_coefficients(0, 5)
    assert not flat.potential_defined and flat.potential_coeff == math.inf


@given(st.floats(0.01, 3.0), st.floats(0.01, 3.0))
def test_gas_bound_nonnegative(a, gb):
    assume(a > 0)
    rep = gas_lower_bound(GasParameters(a, gb), n_total=50)
    assert rep.value >= 0
    assert rep.value == rep.subterms["short_range"] + rep.subterms["long_range"]
