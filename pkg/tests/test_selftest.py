import math
import random

import pytest

from app import selftest
from curvelog import paths

ZETA_3 = 1.2020569031595942


@pytest.mark.parametrize('s, expected', [(2, math.pi ** 2 / 6), (3, ZETA_3), (4, math.pi ** 4 / 90)])
def test_zeta_series_with_tail(s, expected):
    assert selftest.zeta_series(s) == pytest.approx(expected, abs=1e-9)
    assert selftest.zeta_series(s, 1000) == pytest.approx(expected, abs=1e-9)


def test_double_zeta_series_is_zeta_3():
    assert selftest.double_zeta_series() == pytest.approx(ZETA_3, abs=1e-9)


def test_random_homotopic_pair(poles_complex):
    rng = random.Random(7)
    first, second = selftest.random_homotopic_pair(rng, poles_complex, 3, -1 + 2j)
    assert paths.homotopic(first, second, poles_complex.points)
    assert first.endpoint == pytest.approx(second.endpoint)


def test_homotopy_criterion_on_a_small_sample():
    assert selftest.check_homotopy(random.Random(1), {'homotopy': 2})


def test_quick_suite_reports_every_criterion(monkeypatch):
    monkeypatch.setattr(selftest, 'CRITERIA', [(12, 'homotopy invariance', selftest.check_homotopy)])
    report = selftest.run_suite(seed=5, quick=True)
    assert report['quick']
    assert [item['id'] for item in report['criteria']] == [12]
    assert report['passed']
