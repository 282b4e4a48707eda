import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from lipgrowth.graphs import Graph, components, make_family, sample_er
from lipgrowth.randomlab import (LllConfig, bound_report, c_empirical,
                                 c_from_ehrhart, epsilon_upper_bound,
                                 flatness_parameter,
                                 giant_fraction_prediction,
                                 independent_pair_margin,
                                 independent_pair_search, lll_sampler,
                                 poisson_tail_bound, stretch_parameter,
                                 triple_sum_success, wilson_interval)


def mp_lower_exact(d):
    d = mpmath.mpf(d)
    c = mpmath.sqrt(1 - 4 / d) / d
    return ((1 + c) * (1 - c) ** (5 * mpmath.e ** (-d / 4))
            * mpmath.sqrt(1 - 1 / (d - 1)))


def mp_upper_exact(d):
    d = mpmath.mpf(d)
    a = 2 * mpmath.log(d) / d
    return 2 ** mpmath.e ** (-d / 4) * mpmath.e ** (d * a * a
                                                    / (1 - mpmath.e ** (-d / 4)))


def test_bound_report_d100():
    rep = bound_report(100)
    assert rep.lower_exact == pytest.approx(1.0047, abs=5e-4)
    assert rep.lower_asymptotic == pytest.approx(1.005, abs=1e-12)
    assert rep.upper_asymptotic == pytest.approx(1.8484, abs=1e-3)
    assert rep.lower_valid and rep.upper_valid


def test_bound_report_matches_high_precision():
    mpmath.mp.dps = 50
    for d in (5, 10, 100):
        rep = bound_report(d)
        assert abs(rep.lower_exact - float(mp_lower_exact(d))) <= 1e-10
        if d >= 9:
            assert abs(rep.upper_exact - float(mp_upper_exact(d))) <= 1e-10


def test_bound_report_domain_edges():
    rep = bound_report(5)
    # the displayed product is real just above d = 4 (it dips below 1 there;
    # the 1 + 1/(2d) form is only the large-d asymptote)
    assert math.isfinite(rep.lower_exact) and rep.lower_exact > 0
    assert rep.lower_valid and not rep.upper_valid
    assert math.isnan(rep.upper_exact)

    rep4 = bound_report(4)
    assert not rep4.lower_valid and math.isnan(rep4.lower_exact)
    with pytest.raises(ValueError):
        bound_report(0)
    with pytest.raises(ValueError):
        stretch_parameter(4)


def test_lower_exact_below_asymptote_with_slack():
    for d in (5, 10, 20, 50, 100):
        rep = bound_report(d)
        assert rep.lower_exact <= 1 + 1 / (2 * d) + 2 / d ** 2


def test_upper_exact_flagging():
    # the exact upper expression exceeds 2 at moderate d; flagged, not clamped
    rep = bound_report(100)
    assert rep.upper_exact > 2 and not rep.upper_exact_below_two
    rep = bound_report(5000)
    assert rep.upper_exact < 2 and rep.upper_exact_below_two


def test_pair_margin_examples():
    rep = independent_pair_margin(10)
    assert rep.margin == pytest.approx(1.21, abs=0.01)
    assert independent_pair_margin(9).margin > 0
    with pytest.raises(ValueError):
        independent_pair_margin(8.9)


def test_pair_margin_positive_on_log_grid():
    for d in np.geomspace(9, 1e6, 200):
        rep = independent_pair_margin(float(d))
        assert rep.margin > 0
        # proof chain: entropy side < chain value <= d * a^2
        a = flatness_parameter(float(d))
        assert float(d) * a * a - rep.margin < rep.chain_value <= float(d) * a * a + 1e-12


def test_giant_fraction_prediction():
    assert giant_fraction_prediction(2) == pytest.approx(0.7968, abs=1e-4)
    assert abs(giant_fraction_prediction(10) - 1) <= 1e-3
    with pytest.raises(ValueError):
        giant_fraction_prediction(1.0)


def test_giant_fraction_two_formulations_agree():
    # survival form: rho = exp(d (rho - 1)), fraction = 1 - rho
    for d in (1.5, 2.0, 4.0):
        rho = 0.5
        for _ in range(10000):
            rho = math.exp(d * (rho - 1))
        assert giant_fraction_prediction(d) == pytest.approx(1 - rho, abs=1e-9)


def test_giant_fraction_empirical_light():
    pred = giant_fraction_prediction(2)
    fracs = [components(sample_er(5000, 2, s)).giant_size / 5000
             for s in range(3)]
    assert abs(np.mean(fracs) - pred) <= 0.03


def test_poisson_tail_bound():
    assert poisson_tail_bound(7, 0) == 1.0
    assert poisson_tail_bound(4, 4) == pytest.approx(math.exp(-1))
    for d in (1, 4, 10):
        assert poisson_tail_bound(d, d) == pytest.approx(math.exp(-d / 4))
    with pytest.raises(ValueError):
        poisson_tail_bound(0, 1)
    with pytest.raises(ValueError):
        poisson_tail_bound(1, -1)


def test_poisson_tail_dominates_samples():
    # compare the bound against sampled binomial degree counts
    rng = np.random.default_rng(5)
    n, d = 4000, 4.0
    degs = rng.binomial(n - 1, d / n, size=20000)
    for x in (2, 4, 8):
        emp = np.mean(degs >= d + x)
        assert emp <= poisson_tail_bound(d, x) * 1.1 + 1e-3


def test_triple_sum_exact_values():
    assert triple_sum_success(0) == 1
    assert triple_sum_success(1) == Fraction(25, 27)
    # brute-force oracle for small h
    for h in (1, 2, 3):
        good = sum(1 for a in range(-h, h + 1) for b in range(-h, h + 1)
                   for c in range(-h, h + 1) if abs(a + b + c) <= 2 * h)
        assert triple_sum_success(h) == Fraction(good, (2 * h + 1) ** 3)
    # closed form: failures per sign are tetrahedral numbers
    for h in range(1, 60):
        assert triple_sum_success(h) == \
            1 - Fraction(h * (h + 1) * (h + 2), 3 * (2 * h + 1) ** 3)


def test_triple_sum_limit():
    assert abs(float(triple_sum_success(10**4)) - 23 / 24) <= 1e-3


def test_triple_sum_shape():
    """Exact shape of the sequence: 1 at h=0, then below 23/24 and rising.

    The failing corner count h(h+1)(h+2)/3 overshoots the limiting corner
    volume at every finite h >= 1, so the success probability sits below
    23/24 and increases back toward it; only the first step decreases.
    """
    vals = [triple_sum_success(h) for h in range(0, 101)]
    assert vals[0] == 1
    assert all(v < Fraction(23, 24) for v in vals[1:])
    assert all(a < b for a, b in zip(vals[1:], vals[2:]))
    # distance to the limit shrinks monotonically over the whole range
    gaps = [abs(v - Fraction(23, 24)) for v in vals]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_epsilon_upper_bound():
    assert epsilon_upper_bound(1.0) == 2 - 2 ** -18
    assert epsilon_upper_bound(0.5) == 2 - 2 ** -23
    assert 2 - 1e-12 <= epsilon_upper_bound(1e-3) <= 2
    with pytest.raises(ValueError):
        epsilon_upper_bound(0.0)
    with pytest.raises(ValueError):
        epsilon_upper_bound(1.5)


def test_wilson_interval():
    lo, hi = wilson_interval(50, 100)
    assert lo <= 0.5 <= hi
    lo, hi = wilson_interval(0, 20)
    assert lo == 0.0 and hi > 0
    lo, hi = wilson_interval(20, 20)
    assert hi == 1.0 and lo < 1
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_lll_config():
    cfg = LllConfig(h=100, d=5.0)
    assert cfg.degree_threshold == 10
    assert cfg.low_range[0] == 0
    assert cfg.low_range[1] == math.floor((1 + cfg.stretch) * 100)
    assert cfg.high_range == (math.ceil(cfg.stretch * 100), 100)
    assert cfg.high_range[0] <= cfg.high_range[1]
    # every high value is within h of every admissible value
    for h, d in ((10, 4.5), (25, 5.0), (100, 12.0), (1000, 5.0)):
        c = LllConfig(h=h, d=d)
        assert c.low_range[1] >= c.low_range[0]
        assert c.high_range[1] >= c.high_range[0]
        assert c.low_range[1] - c.high_range[0] <= h
    with pytest.raises(ValueError):
        LllConfig(h=10, d=4.0)
    with pytest.raises(ValueError):
        LllConfig(h=-1, d=5.0)


def test_lll_no_edges_always_succeeds():
    g = Graph.from_edges(5, [])
    res = lll_sampler(g, LllConfig(h=10, d=5), trials=40, seed=1)
    assert res.successes == 40 and res.estimate == 1.0
    assert res.ci_low <= res.estimate <= res.ci_high


def test_lll_single_edge_failure_rate():
    cfg = LllConfig(h=2000, d=5)
    g = Graph.from_edges(2, [(0, 1)])
    trials = 4000
    res = lll_sampler(g, cfg, trials=trials, seed=2)
    c = cfg.stretch
    pred = c * c / (1 + c) ** 2
    sigma = math.sqrt(pred * (1 - pred) / trials)
    assert abs(res.edge_failure_rate - pred) <= 3 * sigma


def test_lll_high_degree_edges_never_fail():
    # centre degree 10 >= ceil(2 * 4.5) = 9 puts it in the high range
    star = make_family("star", 11)
    res = lll_sampler(star, LllConfig(h=50, d=4.5), trials=300, seed=3)
    assert res.edge_failure_rate == 0.0
    assert res.successes == 300


def test_lll_monotone_under_added_edges():
    # degrees stay below the threshold, so shared seeds draw identical
    # functions and extra edges can only remove successes
    base = make_family("path", 8)
    cfg = LllConfig(h=30, d=5)
    added = base.add_edge(0, 7).add_edge(2, 5)
    r_base = lll_sampler(base, cfg, trials=400, seed=9)
    r_added = lll_sampler(added, cfg, trials=400, seed=9)
    assert r_added.successes <= r_base.successes


def test_lll_deterministic():
    g = sample_er(40, 5, 4)
    cfg = LllConfig(h=25, d=5)
    a = lll_sampler(g, cfg, trials=60, seed=11)
    b = lll_sampler(g, cfg, trials=60, seed=11)
    assert a == b


def test_pair_search_examples():
    empty = Graph.from_edges(4, [])
    res = independent_pair_search(empty, 2)
    assert res.found and res.definitive
    assert set(res.set_a).isdisjoint(res.set_b)

    k6 = make_family("complete", 6)
    res = independent_pair_search(k6, 2)
    assert not res.found and res.definitive


def test_pair_search_witness_has_no_crossing_edges():
    g = sample_er(16, 2.0, 8)
    res = independent_pair_search(g, 3)
    if res.found:
        for u in res.set_a:
            for v in res.set_b:
                e = (u, v) if u < v else (v, u)
                assert e not in g.edges


def test_pair_search_er_scarcity():
    # two sets of ceil(alpha n) vertices cannot even fit disjointly here,
    # so the observed frequency over seeds is exactly zero, definitively
    size = math.ceil(flatness_parameter(6) * 18)
    assert 2 * size > 18
    found = 0
    for s in range(100):
        res = independent_pair_search(sample_er(18, 6, s), size)
        assert res.definitive
        found += res.found
    assert found == 0


def test_pair_search_modes():
    big = Graph.from_edges(30, [])
    res = independent_pair_search(big, 5)          # auto -> heuristic
    assert res.found and not res.definitive
    with pytest.raises(ValueError):
        independent_pair_search(big, 5, exhaustive=True)
    with pytest.raises(ValueError):
        independent_pair_search(big, 0)


def test_c_empirical_star():
    from lipgrowth.counting import counts_for_fit, ehrhart_fit
    star = make_family("star", 5)
    assert c_from_ehrhart(star) == pytest.approx(2.0, abs=1e-12)
    fit = ehrhart_fit(star, counts_for_fit(star))
    assert fit.leading == 2 ** 4   # the growth constant is exactly 2


def test_c_empirical_complete():
    assert c_from_ehrhart(make_family("complete", 4)) == \
        pytest.approx(4 ** (1 / 3), abs=1e-12)


def test_c_empirical_er_in_growth_window():
    g = sample_er(9, 2, 10)
    c = c_from_ehrhart(g)
    assert 1.0 <= c <= 2.0


def test_c_empirical_sequence_mode():
    g = make_family("cycle", 5)
    seq = c_empirical(g, [2, 4])
    assert len(seq) == 2
    nfree = 4
    for h, v in zip((2, 4), seq):
        assert (h + 1) / h <= v <= (2 * h + 1) / h


def test_c_empirical_tree_dominates_supergraph():
    # a spanning tree has the maximal count at every h
    tree = make_family("path", 5)
    denser = tree.add_edge(0, 4)
    for h in (1, 2, 3):
        t_vals = c_empirical(tree, [h])
        g_vals = c_empirical(denser, [h])
        assert t_vals[0] >= g_vals[0]
    assert c_from_ehrhart(tree) == pytest.approx(2.0, abs=1e-12)
    assert c_from_ehrhart(denser) <= 2.0


def test_c_empirical_validation():
    with pytest.raises(ValueError):
        c_empirical(make_family("path", 3), [1, 1, 2])
    with pytest.raises(ValueError):
        c_empirical(Graph.from_edges(1, []), [1])
