import math

import pytest
from hypothesis import given, strategies as st

from slif.search import bisect_boundary, golden_max


class TestGoldenMax:
    def test_parabola(self):
        x = golden_max(lambda x: -(x - 1.7) ** 2, 0.0, 5.0, 1e-6)
        assert x == pytest.approx(1.7, abs=1e-5)

    def test_reversed_bracket(self):
        x = golden_max(lambda x: -(x - 1.7) ** 2, 5.0, 0.0, 1e-6)
        assert x == pytest.approx(1.7, abs=1e-5)

    def test_maximum_at_an_edge(self):
        assert golden_max(math.sin, 2.0, 4.0, 1e-6) == pytest.approx(2.0, abs=1e-5)

    @given(peak=st.floats(min_value=-3.0, max_value=3.0))
    def test_always_finds_an_interior_peak(self, peak):
        x = golden_max(lambda x: -abs(x - peak), -4.0, 4.0, 1e-7)
        assert abs(x - peak) < 1e-6


class TestBisectBoundary:
    def test_step_up(self):
        x = bisect_boundary(lambda x: x >= 2.25, 0.0, 5.0, 1e-9)
        assert x == pytest.approx(2.25, abs=1e-8)

    def test_step_down(self):
        x = bisect_boundary(lambda x: x < 2.25, 0.0, 5.0, 1e-9)
        assert x == pytest.approx(2.25, abs=1e-8)

    def test_requires_a_flip(self):
        with pytest.raises(ValueError, match="does not flip"):
            bisect_boundary(lambda x: True, 0.0, 1.0, 1e-3)

    @given(cut=st.floats(min_value=0.1, max_value=0.9))
    def test_converges_to_the_cut(self, cut):
        x = bisect_boundary(lambda x: x > cut, 0.0, 1.0, 1e-9)
        assert abs(x - cut) < 1e-8
