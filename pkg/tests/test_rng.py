import numpy as np
from scipy import stats

from minlab import rng


def test_streams_are_pure_functions_of_seed_and_index():
    a = rng.normals(5, [0, 1, 2, 3], 7)
    b = rng.normals(5, [3, 2, 1, 0], 7)[::-1]
    assert np.array_equal(a, b)
    single = np.vstack([rng.normals(5, [i], 7) for i in range(4)])
    assert np.array_equal(a, single)


def test_seed_and_stream_separation():
    assert not np.array_equal(rng.normals(1, [0], 4), rng.normals(2, [0], 4))
    assert not np.array_equal(rng.uniforms(1, [0], 4, stream=0), rng.uniforms(1, [0], 4, stream=1))


def test_prefix_stability():
    # asking for more variates never changes the first ones
    short = rng.normals(9, np.arange(50), 3)
    long = rng.normals(9, np.arange(50), 11)
    assert np.array_equal(short, long[:, :3])


def test_uniform_range_and_distribution():
    u = rng.uniforms(3, np.arange(20000), 2)
    assert u.min() >= 0 and u.max() < 1
    assert stats.kstest(u.ravel(), "uniform").pvalue > 1e-3


def test_normal_distribution():
    g = rng.normals(3, np.arange(20000), 4).ravel()
    assert stats.kstest(g, "norm").pvalue > 1e-3
