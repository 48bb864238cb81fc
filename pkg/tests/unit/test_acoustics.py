#  Notch Studio - Acoustics Tests
#
#  Depends on: notchstudio/services/acoustics.py
#  Used by:    pytest

import pytest
from pydantic import ValidationError

from notchstudio.exceptions import DomainError
from notchstudio.models.schemas import DipReport, InsulationCurve, InsulationPoint, RoomMeasurement
from notchstudio.services.acoustics import (
    THIRD_OCTAVE_CENTRES,
    absorption_area,
    curve_from_levels,
    find_dips,
    notch_specs_from_dips,
    sound_reduction,
    transmission_loss,
)
from notchstudio.services.filter_design import design_notch
from notchstudio.utils.csv_io import read_insulation_csv
from tests.conftest import A1_315, A1_2500


def _curve(freqs, values) -> InsulationCurve:
    return InsulationCurve(points=[InsulationPoint(freq=f, r_db=r) for f, r in zip(freqs, values)])


class TestFormulas:
    def test_absorption_area(self):
        assert absorption_area(100, 1.0) == pytest.approx(16.1)
        assert absorption_area(100, 2.0) == pytest.approx(8.05)
        assert absorption_area(161, 1.61) == pytest.approx(16.1)

    def test_absorption_area_scaling(self):
        assert absorption_area(300, 1.5) == pytest.approx(3 * absorption_area(100, 1.5))
        assert absorption_area(100, 3.0) == pytest.approx(absorption_area(100, 1.0) / 3)

    @pytest.mark.parametrize("v,t", [(0, 1), (100, 0), (-1, 1)])
    def test_absorption_area_domain(self, v, t):
        with pytest.raises(DomainError):
            absorption_area(v, t)

    def test_transmission_loss(self):
        assert transmission_loss(80, 50, 10, 10) == 30.0
        assert transmission_loss(80, 50, 20, 10) == pytest.approx(33.0103, abs=1e-4)
        assert transmission_loss(62, 62, 7, 7) == 0.0

    def test_transmission_loss_level_shift_invariant(self):
        base = transmission_loss(80, 50, 12, 9)
        assert transmission_loss(95, 65, 12, 9) == pytest.approx(base)

    @pytest.mark.parametrize("s,a", [(0, 10), (10, 0), (-3, 10)])
    def test_transmission_loss_domain(self, s, a):
        with pytest.raises(DomainError):
            transmission_loss(80, 50, s, a)

    def test_sound_reduction_combines_both(self):
        m = RoomMeasurement(L1=80, L2=50, S=16.1, V=100, T=1.0)
        assert sound_reduction(m) == pytest.approx(30.0)

    def test_room_measurement_validation(self):
        with pytest.raises(ValidationError):
            RoomMeasurement(L1=80, L2=50, S=10, V=0, T=1.0)

    def test_curve_from_levels(self):
        curve = curve_from_levels([315, 400, 500], [80, 80, 80], [50, 40, 45], 16.1, 100, [1.0, 1.0, 1.0])
        assert curve.values == pytest.approx([30.0, 40.0, 35.0])

    def test_curve_from_levels_length_mismatch(self):
        with pytest.raises(DomainError):
            curve_from_levels([315, 400, 500], [80, 80], [50, 40, 45], 10, 100, [1, 1, 1])


class TestInsulationCurve:
    def test_needs_three_points(self):
        with pytest.raises(ValidationError):
            _curve([100, 200], [30, 31])

    def test_frequencies_strictly_increasing(self):
        with pytest.raises(ValidationError, match="increasing"):
            _curve([100, 200, 200], [30, 31, 32])


class TestFindDips:
    def test_fixture_curve(self, insulation_curve_path):
        report = find_dips(read_insulation_csv(insulation_curve_path))
        assert report.resonance_freq == 315.0
        assert report.coincidence_freq == 2500.0
        assert report.resonance_depth_db == 7.0
        assert report.coincidence_depth_db == 8.0

    def test_monotone_curve_has_no_dips(self):
        report = find_dips(_curve(THIRD_OCTAVE_CENTRES, range(30, 30 + 2 * len(THIRD_OCTAVE_CENTRES), 2)))
        assert report.resonance_freq is None
        assert report.coincidence_freq is None
        assert report.frequencies() == []

    def test_single_resonance(self):
        report = find_dips(_curve([250, 315, 400, 500, 630, 800], [35, 37, 39, 33, 41, 43]))
        assert report.resonance_freq == 500
        assert report.coincidence_freq is None

    def test_deepest_minimum_wins(self):
        report = find_dips(_curve(
            [100, 125, 160, 200, 250, 315, 400],
            [40, 38, 40, 41, 30, 42, 43],
        ))
        assert report.resonance_freq == 250
        assert report.resonance_depth_db == 11

    def test_endpoints_are_never_dips(self):
        report = find_dips(_curve([100, 125, 160, 2000, 2500], [20, 30, 40, 50, 10]))
        assert report.frequencies() == []

    def test_plateau_is_not_a_strict_minimum(self):
        report = find_dips(_curve([250, 315, 400, 500], [40, 35, 35, 40]))
        assert report.resonance_freq is None

    def test_constant_offset_preserves_dips(self, insulation_curve_path):
        curve = read_insulation_csv(insulation_curve_path)
        shifted = _curve(curve.freqs, [v + 12.5 for v in curve.values])
        a, b = find_dips(curve), find_dips(shifted)
        assert a.frequencies() == b.frequencies()
        assert a.resonance_depth_db == pytest.approx(b.resonance_depth_db)

    def test_dips_come_from_the_curve(self, insulation_curve_path):
        curve = read_insulation_csv(insulation_curve_path)
        assert set(find_dips(curve).frequencies()) <= set(curve.freqs)

    def test_coincidence_outside_band_rejected(self):
        with pytest.raises(ValidationError):
            DipReport(coincidence_freq=5000.0)


class TestNotchSpecsFromDips:
    def test_reference_dips_give_reference_designs(self):
        specs = notch_specs_from_dips(DipReport(resonance_freq=315, coincidence_freq=2500), 7400, 0.99)
        assert [s.notch_freq for s in specs] == [315, 2500]
        assert design_notch(specs[0]).a1 == pytest.approx(A1_315, abs=1e-10)
        assert design_notch(specs[1]).a1 == pytest.approx(A1_2500, abs=1e-10)

    def test_empty_report(self):
        assert notch_specs_from_dips(DipReport(), 7400, 0.99) == []

    def test_dip_above_nyquist(self):
        with pytest.raises(DomainError, match="4000"):
            notch_specs_from_dips(DipReport(resonance_freq=315, coincidence_freq=4000), 7400, 0.99)

    def test_dip_just_below_nyquist(self):
        specs = notch_specs_from_dips(DipReport(coincidence_freq=3600), 7400, 0.99)
        assert [s.notch_freq for s in specs] == [3600]
