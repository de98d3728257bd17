import numpy as np
import pytest

from spectral.exceptions import BadFraction
from spectral.problems import (
    SpectrumKind,
    SpectrumSpec,
    nonrand_spectrum,
    spectrum_layout,
    spectrum_sample,
)
from spectral.rng import make_stream


class TestSpectrumSpec:
    @pytest.mark.parametrize("value", ["set3", "3", "SET3", SpectrumKind.SET3])
    def test_parse(self, value):
        assert SpectrumSpec.parse(value).kind is SpectrumKind.SET3

    def test_parse_unknown(self):
        with pytest.raises(ValueError):
            SpectrumSpec.parse("set9")

    def test_default_atc_cycle(self):
        assert SpectrumKind.SET1.default_atc_cycle == 30
        assert SpectrumKind.SET5.default_atc_cycle == 30
        assert SpectrumKind.SET3.default_atc_cycle == 8


class TestSpectrumSample:
    @pytest.mark.parametrize("kind", [kind for kind in SpectrumKind if kind is not SpectrumKind.NONRAND])
    def test_extremes_are_exact(self, kind):
        v = spectrum_sample(SpectrumSpec(kind), 100, 1e4, make_stream(3))
        assert v.min() == 1.0 and v.max() == 1e4
        assert v[0] == 1.0 and v[-1] == 1e4

    def test_set4_group_sizes(self):
        v = spectrum_sample(SpectrumSpec(SpectrumKind.SET4), 1000, 1e4, make_stream(0))
        interior = v[1:-1]
        assert np.count_nonzero((interior > 1) & (interior < 100)) == 799
        assert np.count_nonzero((interior > 5e3) & (interior < 1e4)) == 199

    def test_deterministic(self):
        spec = SpectrumSpec(SpectrumKind.SET2)
        first = spectrum_sample(spec, 50, 1e5, make_stream(9))
        np.testing.assert_array_equal(first, spectrum_sample(spec, 50, 1e5, make_stream(9)))

    def test_equispaced(self):
        v = spectrum_sample(SpectrumSpec(SpectrumKind.EVEN, equispaced=True), 5, 9.0, make_stream(0))
        np.testing.assert_allclose(v, [1.0, 3.0, 5.0, 7.0, 9.0])

    def test_too_small_for_layout(self):
        with pytest.raises(BadFraction):
            spectrum_layout(SpectrumKind.SET6, 10, 1e4)

    def test_invalid_kappa(self):
        with pytest.raises(ValueError):
            spectrum_sample(SpectrumSpec(SpectrumKind.SET1), 10, 1.0, make_stream(0))


class TestNonrandSpectrum:
    def test_hand_values(self):
        np.testing.assert_allclose(nonrand_spectrum(4, 1e3), [1.0, 100.0, 10.0, 1000.0])
        np.testing.assert_allclose(nonrand_spectrum(3, 1e2), [1.0, 10.0, 100.0])
