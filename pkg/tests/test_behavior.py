import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxent_ice import behavior, games


def test_distribution_normalizes():
    d = behavior.BehaviorDistribution([2.0, 2.0])
    np.testing.assert_allclose(d.probs, [0.5, 0.5])


def test_distribution_rejects_bad_input():
    with pytest.raises(ValueError):
        behavior.BehaviorDistribution([])
    with pytest.raises(ValueError):
        behavior.BehaviorDistribution([0.5, -0.5])
    with pytest.raises(ValueError):
        behavior.BehaviorDistribution([0.0, 0.0])
    with pytest.raises(ValueError):
        behavior.BehaviorDistribution([np.nan, 1.0])


def test_empirical_counts(mg1):
    s = behavior.SampleSet(outcomes=np.array([0, 0, 3, 1]))
    emp = behavior.empirical(s, mg1)
    np.testing.assert_allclose(emp.probs, [0.5, 0.25, 0.0, 0.25])


def test_empirical_rejects_out_of_range(mg1):
    with pytest.raises(IndexError):
        behavior.empirical(behavior.SampleSet(outcomes=np.array([4])), mg1)


def test_draw_deterministic():
    sigma = behavior.BehaviorDistribution([0.1, 0.2, 0.7])
    a = behavior.draw(sigma, 100, seed=5)
    b = behavior.draw(sigma, 100, seed=5)
    np.testing.assert_array_equal(a.outcomes, b.outcomes)
    c = behavior.draw(sigma, 100, seed=6)
    assert not np.array_equal(a.outcomes, c.outcomes)


def test_draw_law_of_large_numbers():
    sigma = behavior.BehaviorDistribution([0.1, 0.2, 0.7])
    s = behavior.draw(sigma, 200_000, seed=1)
    freq = np.bincount(s.outcomes, minlength=3) / len(s)
    np.testing.assert_allclose(freq, sigma.probs, atol=5e-3)


def test_entropy_uniform_and_point():
    assert behavior.entropy(behavior.uniform(8)) == pytest.approx(np.log(8))
    assert behavior.entropy(behavior.point_mass(8, 2)) == 0.0


def test_log_loss_is_cross_entropy():
    t = behavior.BehaviorDistribution([0.25, 0.75])
    p = behavior.BehaviorDistribution([0.5, 0.5])
    assert behavior.log_loss(t, p) == pytest.approx(np.log(2))
    # log-loss of the truth against itself is its entropy
    assert behavior.log_loss(t, t) == pytest.approx(behavior.entropy(t))


def test_log_loss_missing_support_is_inf():
    t = behavior.point_mass(3, 0)
    p = behavior.BehaviorDistribution([0.0, 0.5, 0.5])
    assert behavior.log_loss(t, p) == float("inf")


def test_log_loss_gibbs_inequality():
    rng = np.random.default_rng(2)
    for _ in range(20):
        t = behavior.BehaviorDistribution(rng.dirichlet(np.ones(6)))
        p = behavior.BehaviorDistribution(rng.dirichlet(np.ones(6)))
        assert behavior.log_loss(t, p) >= behavior.entropy(t) - 1e-12


def test_sample_bound_reference_values():
    # 12 modifications x 4 features at (0.1, 0.05)
    assert behavior.sample_bound(0.1, 0.05, 12, 4) == 1513
    assert behavior.sample_bound(0.1, 0.05, 30, 4) == 1696


def test_sample_bound_halving_epsilon_quadruples():
    m1 = behavior.sample_bound(0.2, 0.05, 12, 4)
    m2 = behavior.sample_bound(0.1, 0.05, 12, 4)
    assert m2 / m1 == pytest.approx(4.0, rel=1e-2)


@given(st.floats(0.01, 1.0), st.floats(0.001, 0.5),
       st.integers(1, 100), st.integers(1, 10))
@settings(max_examples=50, deadline=None)
def test_sample_bound_monotone(eps, delta, n, k):
    m = behavior.sample_bound(eps, delta, n, k)
    assert m >= 1
    assert behavior.sample_bound(eps, delta, n + 1, k) >= m
    assert behavior.sample_bound(eps, delta / 2, n, k) >= m


def test_sample_bound_validation():
    with pytest.raises(ValueError):
        behavior.sample_bound(0.0, 0.05, 12, 4)
    with pytest.raises(ValueError):
        behavior.sample_bound(0.1, 1.5, 12, 4)
    with pytest.raises(ValueError):
        behavior.sample_bound(0.1, 0.05, 0, 4)


def test_expected_regret_vector(mg1):
    mods = games.internal_modifications(mg1)
    sigma = behavior.uniform(4)
    r = games.regret_matrix(mg1, mods[0])
    np.testing.assert_allclose(
        behavior.expected_regret_vector(sigma, r), sigma.probs @ r.rows)


def test_distribution_roundtrip(tmp_path):
    d = behavior.BehaviorDistribution([0.1, 0.2, 0.7])
    path = tmp_path / "sigma.json"
    behavior.save_distribution(d, path)
    np.testing.assert_allclose(behavior.load_distribution(path).probs, d.probs)


def test_samples_roundtrip(tmp_path):
    s = behavior.SampleSet(outcomes=np.array([3, 1, 4, 1, 5]), seed=9)
    path = tmp_path / "samples.csv"
    behavior.save_samples(s, path)
    s2 = behavior.load_samples(path, seed=9)
    np.testing.assert_array_equal(s2.outcomes, s.outcomes)


def test_samples_require_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1\n2\n")
    with pytest.raises(ValueError):
        behavior.load_samples(path)
