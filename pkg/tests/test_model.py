import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mttdl.model import (
    HOURS_PER_YEAR,
    UNDETECTED,
    FaultParams,
    ModelError,
    ScrubPolicy,
    SystemConfig,
    TimeConventions,
    fault_probability,
    fault_probability_linear,
    window_probabilities,
)

MRV = 1 / 3  # 20 minutes
REFERENCE = FaultParams(mv=1.4e6, ml=2.8e5, mrv=MRV, mrl=MRV)

means = st.floats(min_value=1e2, max_value=1e9)
windows = st.floats(min_value=1e-3, max_value=1e4)
alphas = st.floats(min_value=1e-3, max_value=1.0)


@st.composite
def params(draw, detected=True):
    mdl = draw(windows) if detected else UNDETECTED
    return FaultParams(mv=draw(means), ml=draw(means), mrv=draw(windows), mrl=draw(windows),
                       mdl=mdl, alpha=draw(alphas))


def test_year_is_8760_hours():
    assert HOURS_PER_YEAR == 8760
    assert TimeConventions().hours(1) == 8760


class TestFaultProbability:
    def test_zero_time(self):
        assert fault_probability(0, 1000) == 0.0

    def test_at_mttf(self):
        assert fault_probability(500.0, 500.0) == pytest.approx(1 - math.exp(-1), rel=1e-15)
        assert fault_probability(500.0, 500.0) == pytest.approx(0.6321, abs=1e-4)

    def test_fifty_years_at_32_years(self):
        p = fault_probability(50 * 8760, 32.0 * 8760)
        assert round(p, 3) == 0.790

    @pytest.mark.parametrize("t, mttf", [(-1, 10), (1, 0), (1, -5)])
    def test_domain_errors(self, t, mttf):
        with pytest.raises(ModelError):
            fault_probability(t, mttf)
        with pytest.raises(ModelError):
            fault_probability_linear(t, mttf)


class TestLinear:
    def test_small_ratio(self):
        t, mttf = 0.3333, 1.4e6
        lin = fault_probability_linear(t, mttf)
        assert lin == pytest.approx(2.381e-7, rel=1e-3)
        assert abs(lin - fault_probability(t, mttf)) / fault_probability(t, mttf) < 1e-6

    def test_clamp(self):
        assert fault_probability_linear(2e6, 1.4e6) == 1.0

    def test_scrubbed_latent_ratio(self):
        assert fault_probability_linear(1460.333, 2.8e5) == pytest.approx(5.215e-3, rel=1e-3)


@given(t=st.floats(0, 1e7), mttf=st.floats(1e-3, 1e7), dt=st.floats(0, 1e6))
def test_cdf_bounds_and_monotone(t, mttf, dt):
    p = fault_probability(t, mttf)
    assert 0.0 <= p <= 1.0
    assert fault_probability(t + dt, mttf) >= p
    assert fault_probability(t, mttf * 2) <= p
    assert fault_probability_linear(t, mttf) >= p


@given(x=st.floats(1e-9, 0.0999))
def test_linear_close_for_small_ratio(x):
    # relative error is x/(1 - e^-x) - 1 ~ x/2 + x^2/12: 5.08% at x = 0.1
    exact = fault_probability(x, 1.0)
    rel = (fault_probability_linear(x, 1.0) - exact) / exact
    assert rel <= x / 2 + x**2 / 12 + 1e-12
    assert rel < 0.0509
    if x < 0.098:
        assert rel < 0.05


class TestWindows:
    def test_scrubbed_pll(self):
        w = window_probabilities(REFERENCE.replace(mdl=1460.0))
        assert w.pll == pytest.approx(1460.333 / 2.8e5, rel=1e-6)
        assert w.pll == pytest.approx(5.215e-3, rel=1e-3)
        assert w.pvv == pytest.approx(MRV / 1.4e6)
        assert w.plv == pytest.approx(MRV / 2.8e5)
        assert w.pvl == pytest.approx((1460 + MRV) / 1.4e6, rel=1e-12)

    def test_undetected_saturates(self):
        w = window_probabilities(REFERENCE)
        assert w.pvl + w.pll == 1.0
        assert w.pvl / w.pll == pytest.approx(0.2, rel=1e-12)

    def test_zero_windows(self):
        w = window_probabilities(FaultParams(1e6, 1e5, 0.0, 0.0, mdl=0.0))
        assert tuple(w) == (0.0, 0.0, 0.0, 0.0)

    def test_pair_clamp_keeps_ratio(self):
        p = FaultParams(mv=100, ml=300, mrv=150, mrl=1, mdl=1, alpha=1)
        w = window_probabilities(p)
        assert w.pvv + w.plv == pytest.approx(1.0)
        assert w.pvv / w.plv == pytest.approx(3.0)

    def test_no_latent_faults(self):
        w = window_probabilities(FaultParams(1000, math.inf, math.inf, math.inf))
        assert w.pvv == 1.0 and w.plv == 0.0


@given(params())
def test_windows_in_unit_interval(p):
    w = window_probabilities(p)
    assert all(0 <= x <= 1 for x in w)
    assert w.after_visible <= 1 + 1e-12
    assert w.after_latent <= 1 + 1e-12


@given(params(), st.floats(1e-3, 1e3))
def test_windows_invariant_under_time_rescaling(p, c):
    a, b = window_probabilities(p), window_probabilities(p.scaled(c))
    for x, y in zip(a, b):
        assert y == pytest.approx(x, rel=1e-9, abs=1e-300)


@given(params())
def test_halving_alpha_doubles_unclamped(p):
    half = p.replace(alpha=p.alpha / 2)
    w, w2 = window_probabilities(p), window_probabilities(half)
    raw_visible = p.mrv / (half.alpha * p.mv) + p.mrv / (half.alpha * p.ml)
    raw_latent = p.latent_window / (half.alpha * p.mv) + p.latent_window / (half.alpha * p.ml)
    if raw_visible <= 1:
        assert w2.pvv == pytest.approx(2 * w.pvv, rel=1e-12)
        assert w2.plv == pytest.approx(2 * w.plv, rel=1e-12)
    if raw_latent <= 1:
        assert w2.pvl == pytest.approx(2 * w.pvl, rel=1e-12)
        assert w2.pll == pytest.approx(2 * w.pll, rel=1e-12)


class TestTypes:
    @pytest.mark.parametrize("kw", [
        dict(mv=0), dict(ml=-1), dict(mrv=-1), dict(alpha=0), dict(alpha=1.5),
        dict(mdl=-3), dict(mv=float("nan")),
    ])
    def test_invalid_params(self, kw):
        base = dict(mv=1e6, ml=1e5, mrv=1, mrl=1, mdl=10, alpha=1)
        base.update(kw)
        with pytest.raises(ModelError):
            FaultParams(**base)

    def test_diagnostics_flag_weak_assumptions(self):
        assert REFERENCE.diagnostics() == []
        notes = FaultParams(100, 1000, 20, 50, mdl=60).diagnostics()
        assert any("MRV" in n for n in notes)
        assert any("MRL+MDL" in n for n in notes)

    def test_scrub_policy(self):
        assert ScrubPolicy.periodic(2920).mdl == 1460
        assert ScrubPolicy.times_per_year(3).period == pytest.approx(2920)
        assert ScrubPolicy().mdl is UNDETECTED
        with pytest.raises(ModelError):
            ScrubPolicy.periodic(0)
        with pytest.raises(ModelError):
            ScrubPolicy("periodic")
        with pytest.raises(ModelError):
            ScrubPolicy("weekly", 10)

    def test_scrub_overrides_mdl(self):
        c = SystemConfig(REFERENCE.replace(mdl=5.0), scrub=ScrubPolicy.periodic(2920))
        assert c.effective.mdl == 1460

    @pytest.mark.parametrize("r", [1, 0, 2.5, True])
    def test_replication_degree(self, r):
        with pytest.raises(ModelError):
            SystemConfig(REFERENCE, r=r)

    def test_undetected_is_singleton_across_pickle(self):
        import pickle

        assert pickle.loads(pickle.dumps(UNDETECTED)) is UNDETECTED
