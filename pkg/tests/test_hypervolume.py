import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import hyp_by_raster, hyp_by_strips, random_front
from hvapprox.errors import DomainError, ValidationError
from hvapprox.front import Linear, PowerFamily, Reciprocal
from hvapprox.hypervolume import PointSet, contributions, hyp2d, hypervolume


def test_figure_one_value(fig1_front):
    assert abs(hyp2d(fig1_front, [1, 1.6, 2], (0.5, 0.25)) - 1.865) <= 1e-12


def test_single_box():
    # Reciprocal(4) has f(2) = 2
    assert hyp2d(Reciprocal(4), [2], (0, 0)) == 4


def test_reciprocal_expansion():
    v = hyp2d(Reciprocal(2), [1, math.sqrt(2), 2], (0, 0))
    assert v == pytest.approx(6 - 2 * math.sqrt(2), abs=1e-14)


def test_order_and_duplicates_do_not_matter(fig1_front):
    a = hyp2d(fig1_front, [2, 1, 1.6, 1.6], (0.5, 0.25))
    assert a == hyp2d(fig1_front, [1, 1.6, 2], (0.5, 0.25))


def test_clipped_points_are_reported():
    f = Linear(-1, 3)
    res = hypervolume(f, [1, 1.5, 2], (1.2, 1.2))
    assert res.dropped == (1.0, 2.0)
    assert res.contributing == (1.5,)
    assert res.value == pytest.approx(0.3 * 0.3)
    empty = hypervolume(f, [1, 2], (1.5, 1.5))
    assert empty.value == 0 and empty.no_contributing_points


def test_points_outside_domain_rejected(fig1_front):
    with pytest.raises(DomainError):
        hyp2d(fig1_front, [0.5, 1.5], (0, 0))
    with pytest.raises(ValidationError):
        hyp2d(fig1_front, [], (0, 0))
    with pytest.raises(ValidationError):
        hyp2d(fig1_front, [1.5], (0, math.inf))


def test_pointset_merges_and_sorts():
    ps = PointSet([2, 1, 1 + 1e-14, 1.5])
    assert list(ps) == [1, 1.5, 2]
    assert len(ps) == 3


def test_contribution_examples(fig1_front):
    c = contributions(fig1_front, [1, 1.6, 2], (0.5, 0.25))
    assert c[1] == pytest.approx(0.24, abs=1e-14)
    assert contributions(fig1_front, [1.3], (0, 0)) == [pytest.approx(hyp2d(fig1_front, [1.3], (0, 0)))]
    dup = contributions(fig1_front, [1.2, 1.2, 1.7], (0, 0))
    assert dup[0] == dup[1] == 0


def test_contributions_equal_removal_loss():
    rng = np.random.default_rng(11)
    for _ in range(50):
        f = random_front(rng)
        xs = list(rng.uniform(*f.domain, rng.integers(1, 7)))
        ref = (f.x_min - rng.uniform(0, 1), f.y_range[0] - rng.uniform(0, 1))
        total = hyp2d(f, xs, ref)
        c = contributions(f, xs, ref)
        assert sum(c) <= total + 1e-12
        for i in range(len(xs)):
            rest = xs[:i] + xs[i + 1:]
            loss = total - (hyp2d(f, rest, ref) if rest else 0.0)
            assert c[i] == pytest.approx(loss, rel=1e-9, abs=1e-12)


def test_matches_strip_oracle():
    rng = np.random.default_rng(7)
    for _ in range(100):
        f = random_front(rng)
        lo, hi = f.domain
        xs = rng.uniform(lo, hi, rng.integers(1, 9))
        ylo, yhi = f.y_range
        ref = (rng.uniform(lo - 1, hi), rng.uniform(ylo - 1, yhi))
        assert hyp2d(f, xs, ref) == pytest.approx(hyp_by_strips(f, xs, ref), rel=1e-12, abs=1e-12)


def test_matches_raster_estimate():
    rng = np.random.default_rng(8)
    for _ in range(10):
        f = random_front(rng)
        xs = rng.uniform(*f.domain, 5)
        ref = (f.x_min - 0.3, f.y_range[0] - 0.3)
        exact = hyp2d(f, xs, ref)
        assert hyp_by_raster(f, xs, ref) == pytest.approx(exact, rel=1e-3)


FRONTS = [Linear(-1, 3), Reciprocal(7), PowerFamily.symmetric(0.5), PowerFamily.asymmetric(3, 30)]


@st.composite
def instances(draw):
    f = draw(st.sampled_from(FRONTS))
    lo, hi = f.domain
    xs = draw(st.lists(st.floats(lo, hi), min_size=1, max_size=8))
    extra = draw(st.floats(lo, hi))
    ylo, yhi = f.y_range
    r1 = draw(st.floats(lo - 2, hi))
    r2 = draw(st.floats(ylo - 2, yhi))
    a = draw(st.floats(0, 2))
    b = draw(st.floats(0, 2))
    return f, xs, extra, (r1, r2), a, b


@settings(max_examples=300, deadline=None)
@given(instances())
def test_monotonicity_properties(inst):
    f, xs, extra, ref, a, b = inst
    base = hyp2d(f, xs, ref)
    assert base >= 0
    # adding a front point never hurts
    assert hyp2d(f, xs + [extra], ref) >= base - 1e-12 * max(1, base)
    # lowering the reference point never hurts
    assert hyp2d(f, xs, (ref[0] - a, ref[1] - b)) >= base - 1e-12 * max(1, base)
