import math

import numpy as np
import pytest

from conftest import fd_gradient
from hvapprox import closed_form as cf
from hvapprox.approximation import check_certificate, ratio
from hvapprox.errors import ConstructionError, DegenerateReferenceError, RegimeClassificationError
from hvapprox.front import Linear, Reciprocal
from hvapprox.hypervolume import hyp2d
from hvapprox.numeric import brute_force_best, maximize_hypervolume

L = Linear(-1, 3)
R2 = Reciprocal(2)


def _random_linear(rng):
    c = -rng.uniform(0.1, 4)
    d = 1 - c + rng.uniform(0.05, 5)
    return c, d


# ---------------------------------------------------------------- fixed endpoints


def test_linear_dist_examples():
    assert list(cf.linear_hyp_dist(-1, 3, 3)) == [1, 1.5, 2]
    assert cf.linear_hyp_dist(-1, 3, 12)[1] == pytest.approx(1 + 1 / 11, abs=1e-15)
    assert list(cf.linear_hyp_dist(-2, 4, 2)) == [1, 1.5]


def test_linear_ratio_examples():
    assert cf.linear_hyp_ratio_fixed(-1, 3, 2) == 1.5
    # d(mu-1)/(d(mu-2)-c+1) = 33/32 here; ratio() on the points agrees
    assert cf.linear_hyp_ratio_fixed(-1, 3, 12) == pytest.approx(33 / 32, abs=1e-15)
    assert ratio(L, cf.linear_hyp_dist(-1, 3, 12)).delta == pytest.approx(33 / 32, abs=1e-12)
    assert cf.linear_hyp_ratio_fixed(-1, 3, 10**6) == pytest.approx(1, abs=1e-5)


def test_linear_fixed_ratio_and_certificate_random():
    rng = np.random.default_rng(21)
    for _ in range(20):
        c, d = _random_linear(rng)
        mu = int(rng.integers(2, 51))
        xs = cf.linear_hyp_dist(c, d, mu)
        assert ratio(Linear(c, d), xs).delta == pytest.approx(cf.linear_hyp_ratio_fixed(c, d, mu), abs=1e-10)
        if mu >= 3:
            assert check_certificate(Linear(c, d), xs, cf.linear_hyp_certificate(c, d, mu))


def test_convex_dist_examples():
    assert list(cf.convex_hyp_dist(2, 3)) == [1, pytest.approx(math.sqrt(2), abs=1e-15), 2]
    assert list(cf.convex_hyp_dist(2, 2)) == [1, 2]
    assert cf.convex_hyp_dist(200, 12)[1] == pytest.approx(200 ** (1 / 11), rel=1e-15)
    assert cf.convex_hyp_ratio_fixed(2, 10) == pytest.approx(1.0393, abs=5e-5)
    assert cf.convex_hyp_ratio_fixed(2, 2) == pytest.approx(math.sqrt(2), abs=1e-15)


@pytest.mark.parametrize("c,mu", [(2, 3), (2, 10), (200, 12), (7.5, 25)])
def test_convex_fixed_ratio_and_certificate(c, mu):
    xs = cf.convex_hyp_dist(c, mu)
    assert ratio(Reciprocal(c), xs).delta == pytest.approx(c ** (1 / (2 * mu - 2)), abs=1e-10)
    assert check_certificate(Reciprocal(c), xs, cf.convex_hyp_certificate(c, mu))


# ---------------------------------------------------------------- free optimum


def test_linear_opt_app_examples():
    xs, delta = cf.linear_opt_app_dist(-1, 3, 10)
    assert delta == pytest.approx(31 / 30, abs=1e-15)
    np.testing.assert_allclose(list(xs), [3 * (10 + i) / 31 for i in range(1, 11)], atol=1e-14)
    _, d1 = cf.linear_opt_app_dist(-1, 3, 1)
    assert d1 == pytest.approx(4 / 3)
    grid_best = brute_force_best(L, 1, objective="app", grid_n=1001)
    assert ratio(L, grid_best).delta == pytest.approx(4 / 3, abs=2e-3)
    deltas = [cf.linear_opt_app_dist(-1, 3, mu)[1] for mu in (1, 2, 5, 50, 5000)]
    assert all(a > b for a, b in zip(deltas, deltas[1:])) and deltas[-1] < 1.0002


def test_convex_opt_app_examples():
    xs, delta = cf.convex_opt_app_dist(2, 10)
    assert delta == pytest.approx(1.0353, abs=5e-5)
    assert list(cf.convex_opt_app_dist(2, 1)[0]) == [pytest.approx(math.sqrt(2))]
    xs, delta = cf.convex_opt_app_dist(4, 2)
    assert list(xs) == [pytest.approx(4**0.25), pytest.approx(4**0.75)]
    assert ratio(Reciprocal(4), xs).delta == pytest.approx(delta, abs=1e-10)


def test_opt_app_certificates_random():
    rng = np.random.default_rng(5)
    for _ in range(20):
        c, d = _random_linear(rng)
        mu = int(rng.integers(1, 40))
        xs, delta = cf.linear_opt_app_dist(c, d, mu)
        assert check_certificate(Linear(c, d), xs, cf.linear_opt_app_certificate(c, d, mu))
        assert ratio(Linear(c, d), xs).delta == pytest.approx(delta, abs=1e-10)
        cc = rng.uniform(1.1, 300)
        xs, delta = cf.convex_opt_app_dist(cc, mu)
        assert check_certificate(Reciprocal(cc), xs, cf.convex_opt_app_certificate(cc, mu))
        assert ratio(Reciprocal(cc), xs).delta == pytest.approx(delta, abs=1e-10)


def test_parameter_validation():
    with pytest.raises(ConstructionError):
        cf.linear_hyp_dist(1, 3, 5)
    with pytest.raises(ConstructionError):
        cf.linear_hyp_dist(-1, 3, 1)
    with pytest.raises(ConstructionError):
        cf.convex_opt_app_dist(2, 0)
    with pytest.raises(ConstructionError):
        cf.convex_hyp_dist(0.5, 4)


# ---------------------------------------------------------------- reference point, linear


@pytest.mark.parametrize(
    "ref,expected",
    [((2, 1), 2.0), ((1, 1), 22 / 21), ((0.8, 0.8), 27 / 26), ((30 / 31, 30 / 31), 31 / 30)],
)
def test_linear_ref_spot_values(ref, expected):
    br = cf.linear_hyp_ratio_ref(-1, 3, 10, ref)
    assert br.overall == pytest.approx(expected, abs=1e-9)
    xs, _ = cf.linear_hyp_dist_ref(-1, 3, 10, ref)
    assert ratio(L, xs).delta == pytest.approx(expected, abs=1e-9)
    assert br.overall >= max(br.a_left, br.a_center, br.a_right)


def test_linear_ref_far_away_is_equally_spaced():
    xs, regime = cf.linear_hyp_dist_ref(-1, 3, 10, (-10, -10))
    np.testing.assert_allclose(list(xs), list(cf.linear_hyp_dist(-1, 3, 10)), atol=1e-14)
    assert regime.case_id == "both-extremes"


def test_linear_optimal_reference():
    r = cf.linear_optimal_reference(-1, 3, 10)
    assert r == pytest.approx((30 / 31, 30 / 31), abs=1e-15)


def test_linear_ref_on_front_is_flagged():
    xs, regime = cf.linear_hyp_dist_ref(-1, 3, 10, (2, 1))
    assert regime.degenerate
    assert list(xs) == [2.0]


@pytest.mark.parametrize("ref", [(2.5, 0), (0, 3.5), (1.5, 1.6)])
def test_linear_ref_beyond_front_raises(ref):
    with pytest.raises(DegenerateReferenceError):
        cf.linear_hyp_dist_ref(-1, 3, 10, ref)
    with pytest.raises(DegenerateReferenceError):
        cf.linear_hyp_ratio_ref(-1, 3, 10, ref)


def test_linear_m1_m2_three_way_minima():
    c, d, mu = -1.0, 3.0, 10
    for ref in [(0.5, 0.5), (1, 1), (1.2, 0.3), (-3, 1.4)]:
        r1, r2 = ref
        m1, m2 = cf.linear_m1_m2(c, d, mu, ref)
        assert m1 == min(c + d - r1, mu / (mu - 1) * (c + d - 1),
                         (d - 1) + (d + (mu + 1) * c) / mu + (r2 + d - 1) / (mu * c) + (d - 1) / (mu * c * c))
        assert m2 == min((1 - d) / c - r2, mu / (mu - 1) * (1 - c - d) / c,
                         (1 - c - d) / c + (r1 - c - d) / (mu * c))


def test_linear_ref_ratio_matches_ratio_on_grid():
    for r1 in np.linspace(-0.5, 1.9, 13):
        for r2 in np.linspace(-0.5, 1.9, 13):
            try:
                xs, _ = cf.linear_hyp_dist_ref(-1, 3, 10, (r1, r2))
            except DegenerateReferenceError:
                continue
            br = cf.linear_hyp_ratio_ref(-1, 3, 10, (r1, r2))
            assert br.overall == pytest.approx(ratio(L, xs).delta, rel=1e-9)


def test_linear_ref_matches_numeric_optimizer():
    rng = np.random.default_rng(13)
    for _ in range(8):
        ref = tuple(rng.uniform(0.3, 1.2, 2))
        xs, _ = cf.linear_hyp_dist_ref(-1, 3, 6, ref)
        num = maximize_hypervolume(L, 6, ref)
        assert hyp2d(L, num, ref) == pytest.approx(hyp2d(L, xs, ref), rel=1e-12)
        np.testing.assert_allclose(list(num), list(xs), atol=1e-6)


# ---------------------------------------------------------------- reference point, convex


def test_convex_ref_examples():
    xs, regime = cf.convex_hyp_dist_ref(2, 10, (0, 0))
    assert regime.case_id == "both-extremes"
    np.testing.assert_allclose(list(xs), [2 ** ((i - 1) / 9) for i in range(1, 11)], rtol=1e-15)
    assert cf.convex_hyp_ratio_ref(2, 10, (0.9, 0.9)).overall == pytest.approx(2 ** (1 / 18), abs=1e-12)
    r = 2 ** (-1 / 20)
    xs, regime = cf.convex_hyp_dist_ref(2, 10, (r, r))
    assert regime.case_id == "interior-both"
    assert cf.convex_hyp_ratio_ref(2, 10, (r, r)).overall == pytest.approx(2 ** (1 / 20), abs=1e-12)
    assert ratio(R2, xs).delta == pytest.approx(2 ** (1 / 20), abs=1e-12)
    assert cf.convex_optimal_reference(2, 10) == pytest.approx((r, r))


def test_convex_case_three_uses_corrected_factor():
    c, mu, ref = 2.0, 10, (0.5, 0.99)
    xs, regime = cf.convex_hyp_dist_ref(c, mu, ref)
    assert regime.case_id == "left-fixed"
    br = cf.convex_hyp_ratio_ref(c, mu, ref)
    assert br.overall == pytest.approx(ratio(R2, xs).delta, rel=1e-12)
    printed = max((c / ref[1]) ** (1 / (2 * mu)), c * (c / ref[1]) ** (mu / (mu - 1)))
    assert abs(printed - br.overall) > 1


def test_convex_ref_ratio_matches_ratio_on_grid():
    for c in (2.0, 10.0):
        f = Reciprocal(c)
        for r1 in np.linspace(-0.5, c, 15):
            for r2 in np.linspace(-0.5, c, 15):
                try:
                    xs, regime = cf.convex_hyp_dist_ref(c, 6, (r1, r2))
                except DegenerateReferenceError:
                    continue
                br = cf.convex_hyp_ratio_ref(c, 6, (r1, r2))
                assert br.overall == pytest.approx(ratio(f, xs).delta, rel=1e-9)
                assert br.overall >= c ** (1 / 12) * (1 - 1e-12)


def test_convex_ref_matches_numeric_optimizer():
    rng = np.random.default_rng(17)
    f = Reciprocal(3)
    for _ in range(10):
        ref = tuple(rng.uniform(0.2, 2.5, 2))
        try:
            xs, _ = cf.convex_hyp_dist_ref(3, 5, ref)
        except DegenerateReferenceError:
            continue
        num = maximize_hypervolume(f, 5, ref)
        assert hyp2d(f, num, ref) == pytest.approx(hyp2d(f, xs, ref), rel=1e-12)
        np.testing.assert_allclose(list(num), list(xs), atol=1e-6)


def test_convex_negative_ref_behaves_like_zero():
    a, _ = cf.convex_hyp_dist_ref(2, 10, (-5, -1))
    b, _ = cf.convex_hyp_dist_ref(2, 10, (0, 0))
    assert a == b


def test_convex_free_optimum_dominates_grid():
    c, mu = 2.0, 10
    opt = c ** (1 / (2 * mu))
    best = math.inf
    for r1 in np.linspace(0.8, 1.1, 31):
        for r2 in np.linspace(0.8, 1.1, 31):
            v = cf.convex_hyp_ratio_ref(c, mu, (r1, r2)).overall
            assert v >= opt * (1 - 1e-12)
            best = min(best, v)
    assert best == pytest.approx(opt, rel=1e-3)


def test_regime_grid_coverage():
    # every reference point below the front falls into exactly one reported case
    for c in (1.5, 2.0, 50.0):
        cases = set()
        for r1 in np.linspace(-1, c, 40):
            for r2 in np.linspace(-1, c, 40):
                try:
                    _, regime = cf.convex_hyp_dist_ref(c, 8, (r1, r2))
                except DegenerateReferenceError:
                    continue
                cases.add(regime.case_id)
        assert cases == set(cf.CASE_ORDER)


def test_regime_error_carries_inequalities():
    with pytest.raises(RegimeClassificationError) as exc:
        cf._convex_case(2.0, 10, (3.0, 0.1))
    assert "r1<=c" in exc.value.inequalities


def _path_jumps(dist, start, stop, n=4001):
    prev = None
    worst = 0.0
    for t in np.linspace(0, 1, n):
        ref = tuple(np.add(start, t * np.subtract(stop, start)))
        xs = np.array(list(dist(ref)[0]))
        if prev is not None and xs.size == prev.size:
            worst = max(worst, float(np.max(np.abs(xs - prev))))
        prev = xs
    return worst


@pytest.mark.parametrize("start,stop", [((0.5, 0.5), (0.99, 0.99)), ((0.2, 0.9), (0.2, 1.8)),
                                        ((0.9, 0.2), (1.8, 0.2)), ((0.93, 0.5), (0.93, 1.4))])
def test_convex_regime_continuity(start, stop):
    # the step along the path is 1e-4 in r, so continuous paths move x by O(1e-4);
    # an actual jump between case formulas would show up as O(1e-1)
    n = 4001
    jump = _path_jumps(lambda r: cf.convex_hyp_dist_ref(2.0, 10, r), start, stop, n)
    assert jump < 5e-4
    # refine around each boundary crossing: jumps shrink with the step
    fine = _path_jumps(lambda r: cf.convex_hyp_dist_ref(2.0, 10, r), start, stop, 40001)
    assert fine < jump / 5 or fine < 1e-6


def test_convex_boundaries_coincide_exactly():
    c, mu = 2.0, 10
    t = c ** (-1 / (mu - 1))
    eps = 1e-12
    for ref_a, ref_b in [((t - eps, 0.5), (t + eps, 0.5)), ((0.5, t - eps), (0.5, t + eps))]:
        a, ra = cf.convex_hyp_dist_ref(c, mu, ref_a)
        b, rb = cf.convex_hyp_dist_ref(c, mu, ref_b)
        assert ra.case_id != rb.case_id
        assert np.max(np.abs(np.array(list(a)) - np.array(list(b)))) <= 1e-6
    # interior-both meets left-fixed on r2 = c * r1**mu
    r1 = 0.95
    r2 = c * r1**mu
    a, ra = cf.convex_hyp_dist_ref(c, mu, (r1, r2 * (1 - eps)))
    b, rb = cf.convex_hyp_dist_ref(c, mu, (r1, r2 * (1 + eps)))
    assert ra.case_id != rb.case_id
    assert np.max(np.abs(np.array(list(a)) - np.array(list(b)))) <= 1e-6


def test_linear_regime_continuity():
    for start, stop in [((0.5, 0.5), (1.4, 1.4)), ((0.9, -0.5), (0.9, 1.5)), ((-0.5, 0.9), (1.5, 0.9))]:
        assert _path_jumps(lambda r: cf.linear_hyp_dist_ref(-1, 3, 10, r), start, stop) < 5e-4


def test_closed_forms_are_stationary():
    def objective(front, ref, fixed):
        def fun(inner):
            xs = list(inner)
            if fixed:
                xs = [front.x_min, *xs, front.x_max]
            return hyp2d(front, xs, ref)
        return fun

    xs = list(cf.linear_hyp_dist(-1, 3, 8))
    g = fd_gradient(objective(L, (1, 1), True), xs[1:-1])
    assert np.max(np.abs(g)) <= 1e-6
    xs = list(cf.convex_hyp_dist(5, 8))
    g = fd_gradient(objective(Reciprocal(5), (1, 1), True), xs[1:-1])
    assert np.max(np.abs(g)) <= 1e-6
    for ref in [(0.9, 0.9), (1, 1)]:
        xs = list(cf.linear_hyp_dist_ref(-1, 3, 10, ref)[0])
        inner = [x for x in xs if 1 < x < 2]
        g = fd_gradient(lambda v: hyp2d(L, [x for x in xs if not 1 < x < 2] + list(v), ref), inner)
        assert np.max(np.abs(g)) <= 1e-6
