import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mttdl.drives import (
    Catalog,
    Cost,
    DriveSpec,
    cost_ratio,
    dump_catalog,
    expected_bit_errors,
    load_catalog,
    mttf_from_service_life,
    parse_catalog,
    repair_time_from_capacity,
)
from mttdl.model import HOURS_PER_YEAR, ModelError, fault_probability


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


def spec(**kw):
    base = dict(name="test", capacity=1e11, sustained_bandwidth=1e8, ber=1e-15,
                service_life=5, service_life_failure_prob=0.05,
                unit_cost=Cost(100.0, "USD"))
    base.update(kw)
    return DriveSpec(**base)


class TestBundled:
    def test_entries(self, catalog):
        assert set(catalog) == {"barracuda", "cheetah"}
        assert catalog["Cheetah"] is catalog["cheetah"]
        assert "CHEETAH" in catalog

    def test_cheetah_mttf(self, catalog):
        # 5 years at 3% failure probability, read through the exponential CDF
        assert mttf_from_service_life(catalog["cheetah"]) == pytest.approx(1.438e6, rel=1e-3)

    def test_barracuda_mttf(self, catalog):
        assert mttf_from_service_life(catalog["barracuda"]) == pytest.approx(6.035e5, rel=1e-3)

    def test_cheetah_repair_minutes(self, catalog):
        c = catalog["cheetah"]
        assert repair_time_from_capacity(c) * 60 == pytest.approx(19.99, abs=0.01)
        assert repair_time_from_capacity(c, 300e6) * 60 == pytest.approx(8.11, abs=0.01)

    def test_cost_ratio(self, catalog):
        ratio = cost_ratio(catalog["cheetah"], catalog["barracuda"])
        assert abs(ratio - 14.4) <= 0.05
        assert cost_ratio(catalog["barracuda"], catalog["cheetah"]) == pytest.approx(1 / ratio)

    def test_cost_per_gb(self, catalog):
        assert catalog["barracuda"].cost_per_gb == pytest.approx(0.57)

    def test_bit_errors_one_percent_duty(self, catalog):
        b, c = catalog["barracuda"], catalog["cheetah"]
        seconds = 5 * 365 * 86400
        assert expected_bit_errors(b, 0.01, 5, b.sustained_bandwidth) == pytest.approx(
            1e-14 * 8 * 65e6 * 0.01 * seconds, rel=1e-12)
        assert expected_bit_errors(b, 0.01, 5, b.sustained_bandwidth) == pytest.approx(8.199,
                                                                                     rel=1e-3)
        assert expected_bit_errors(c, 0.01, 5, c.sustained_bandwidth) == pytest.approx(3.784,
                                                                                     rel=1e-3)

    def test_round_trip_probability(self, catalog):
        c = catalog["cheetah"]
        p = fault_probability(c.service_life * HOURS_PER_YEAR, mttf_from_service_life(c))
        assert abs(p - 0.03) <= 1e-12

    def test_unknown_drive(self, catalog):
        with pytest.raises(KeyError, match="unknown drive"):
            catalog["raptor"]


@given(p=st.floats(1e-6, 0.99), life=st.floats(0.1, 50))
def test_round_trip_any_probability(p, life):
    s = spec(service_life=life, service_life_failure_prob=p)
    back = fault_probability(life * HOURS_PER_YEAR, mttf_from_service_life(s))
    assert back == pytest.approx(p, rel=1e-9, abs=1e-12)


@given(st.floats(0, 1), st.floats(0.1, 20), st.floats(1e6, 1e9), st.floats(1.5, 4))
def test_bit_errors_linear(duty, life, rate, k):
    s = spec()
    base = expected_bit_errors(s, duty / k, life, rate)
    assert expected_bit_errors(s, duty, life, rate) == pytest.approx(k * base, rel=1e-12, abs=1e-300)
    assert expected_bit_errors(s, duty / k, life * k, rate) == pytest.approx(k * base, rel=1e-12,
                                                                            abs=1e-300)
    assert expected_bit_errors(s, duty / k, life, rate * k) == pytest.approx(k * base, rel=1e-12,
                                                                            abs=1e-300)


@given(st.floats(1e9, 1e13), st.floats(1e6, 1e9))
def test_repair_time_scales_with_capacity(cap, rate):
    one = repair_time_from_capacity(spec(capacity=cap), rate)
    assert repair_time_from_capacity(spec(capacity=2 * cap), rate) == pytest.approx(2 * one)


class TestEdges:
    def test_zero_probability_warns(self):
        with pytest.warns(RuntimeWarning):
            assert mttf_from_service_life(spec(service_life_failure_prob=0.0)) == math.inf

    def test_certain_failure_rejected(self):
        with pytest.raises(ModelError):
            mttf_from_service_life(spec(service_life_failure_prob=1.0))

    @pytest.mark.parametrize("kw", [
        dict(capacity=-1), dict(sustained_bandwidth=0), dict(service_life_failure_prob=1.5),
        dict(unit_cost=Cost(0.0, "USD")), dict(effective_recovery_rate=0),
    ])
    def test_invalid_spec(self, kw):
        with pytest.raises(ModelError):
            spec(**kw)

    def test_currency_mismatch(self):
        with pytest.raises(ModelError):
            cost_ratio(spec(), spec(unit_cost=Cost(100.0, "EUR")))

    def test_duty_cycle_range(self):
        with pytest.raises(ModelError):
            expected_bit_errors(spec(), 1.5, 1, 1e8)

    def test_recovery_rate_defaults_to_bandwidth(self):
        assert spec().recovery_rate == 1e8
        assert spec(effective_recovery_rate=5e7).recovery_rate == 5e7


class TestParsing:
    def test_dump_and_parse(self, catalog):
        again = parse_catalog(dump_catalog(catalog))
        assert again == catalog
        assert isinstance(again, Catalog)

    def test_not_a_list(self):
        with pytest.raises(ModelError, match="array"):
            parse_catalog("{}")

    def test_bad_entry_reports_index(self, catalog):
        entries = json.loads(dump_catalog(catalog))
        del entries[1]["capacity"]
        with pytest.raises(ModelError, match=r"\[1\]"):
            parse_catalog(json.dumps(entries))

    def test_load_from_path(self, tmp_path, catalog):
        path = tmp_path / "drives.json"
        path.write_text(dump_catalog(catalog))
        assert load_catalog(path) == catalog
