import random
from math import inf

import pytest

from beauville import (INFINITE, TruncSeries, commutator, compose, inv_sqrt,
                       inverse, lcs_index, nottingham_generators, power)
from beauville.fpseries import CharacteristicError, unit_mul

from oracles import binomial_series, naive_substitute, series_from_unit


def degree_list(f):
    return [0] + list(f.coeffs)


def from_degrees(p, deg):
    return TruncSeries(p, deg[1:])


def random_series(rng, p, M):
    return TruncSeries(p, [1] + [rng.randrange(p) for _ in range(M - 1)])


def test_identity_neutral():
    rng = random.Random(1)
    for p, M in ((3, 6), (5, 8)):
        e = TruncSeries.identity(p, M)
        f = random_series(rng, p, M)
        assert compose(e, f) == f
        assert compose(f, e) == f


def test_compose_matches_naive_substitution():
    rng = random.Random(2)
    for p, M in ((3, 6), (5, 8), (7, 10)):
        for _ in range(25):
            f, g = random_series(rng, p, M), random_series(rng, p, M)
            expected = naive_substitute(degree_list(g), degree_list(f), M, p)
            assert compose(f, g) == from_degrees(p, expected)


def test_compose_a_closed_form():
    # a(t) = t/(1-t); a.a = t/(1-2t) = sum 2^(i-1) t^i
    p, M = 3, 6
    a, _ = nottingham_generators(p, M)
    expected = [pow(2, i - 1, p) for i in range(1, M + 1)]
    assert list(compose(a, a).coeffs) == expected


def test_compose_b_closed_form():
    # b(t) = t(1-2t^2)^(-1/2); b.b = t(1-4t^2)^(-1/2), checked via the
    # rational binomial oracle
    from fractions import Fraction
    p, M = 5, 8
    _, b = nottingham_generators(p, M)
    expected = series_from_unit(binomial_series(Fraction(-1, 2), -4, 2, M, p), M)
    assert compose(b, b) == from_degrees(p, expected)


def test_compose_rejects_mismatch():
    f = TruncSeries.identity(3, 6)
    g = TruncSeries.identity(3, 7)
    h = TruncSeries.identity(5, 6)
    with pytest.raises(ValueError):
        compose(f, g)
    with pytest.raises(ValueError):
        compose(f, h)


def test_inverse_identity():
    e = TruncSeries.identity(3, 5)
    assert inverse(e) == e


def test_inverse_a_closed_form():
    # a^-1(t) = t/(1+t) = t - t^2 + t^3 - ...
    p, M = 3, 5
    a, _ = nottingham_generators(p, M)
    assert list(inverse(a).coeffs) == [1, 2, 1, 2, 1]


def test_inverse_defining_property():
    rng = random.Random(3)
    for p, M in ((3, 6), (5, 8)):
        for _ in range(20):
            f = random_series(rng, p, M)
            assert compose(f, inverse(f)).is_identity()
            assert compose(inverse(f), f).is_identity()


def test_inv_sqrt_of_one():
    one = (1, 0, 0, 0, 0)
    assert inv_sqrt(one, 3) == one


def test_inv_sqrt_squares_back():
    p, M = 3, 4
    u = (1, -2 % p, 0, 0, 0)  # 1 - 2t
    g = inv_sqrt(u, p)
    gg_u = unit_mul(unit_mul(g, g, p), u, p)
    assert gg_u == (1, 0, 0, 0, 0)


def test_inv_sqrt_rejects_char_2():
    with pytest.raises(CharacteristicError):
        inv_sqrt((1, 0, 0), 2)


def test_generator_a_all_ones():
    a, _ = nottingham_generators(3, 5)
    assert a.coeffs == (1, 1, 1, 1, 1)


def test_generator_b_from_inv_sqrt():
    # b = t * (1 - 2t^2)^(-1/2), depth exactly 2
    for p in (3, 5, 7):
        M = 10
        _, b = nottingham_generators(p, M)
        unit = [0] * (M + 1)
        unit[0], unit[2] = 1, -2 % p
        expected = series_from_unit(inv_sqrt(tuple(unit[:-1]), p) + (0,), M)
        assert b == from_degrees(p, expected[:M + 1])
        assert b.depth() == 2


def test_generator_depths_and_orders():
    for p in (3, 5):
        a, b = nottingham_generators(p, 10)
        assert a.depth() == 1
        assert b.depth() == 2
        assert power(a, p).is_identity()
        assert power(b, p).is_identity()


def test_generator_orders_all_truncations():
    for p in (3, 5):
        for M in range(3, 41):
            a, b = nottingham_generators(p, M)
            assert power(a, p).is_identity()
            assert power(b, p).is_identity()


def test_depth_identity_infinite():
    assert TruncSeries.identity(3, 6).depth() == INFINITE
    assert TruncSeries.identity(3, 6).depth() == inf


def test_depth_commutator_ab():
    a, b = nottingham_generators(3, 10)
    assert commutator(a, b).depth() == 3


def test_commutator_trivial_cases():
    rng = random.Random(4)
    f = random_series(rng, 3, 8)
    e = TruncSeries.identity(3, 8)
    assert commutator(f, f).is_identity()
    assert commutator(f, e).is_identity()
    assert commutator(e, f).is_identity()


def test_group_axioms_sampled():
    rng = random.Random(5)
    for p, M in ((3, 6), (3, 12), (5, 6), (5, 12), (7, 6), (7, 12)):
        e = TruncSeries.identity(p, M)
        for _ in range(200):
            f = random_series(rng, p, M)
            g = random_series(rng, p, M)
            h = random_series(rng, p, M)
            assert compose(compose(f, g), h) == compose(f, compose(g, h))
            assert compose(f, e) == f and compose(e, f) == f
            assert compose(f, inverse(f)) == e


def test_power_by_squaring_matches_iteration():
    rng = random.Random(6)
    f = random_series(rng, 5, 9)
    acc = TruncSeries.identity(5, 9)
    for n in range(10):
        assert power(f, n) == acc
        acc = compose(acc, f)


def test_depth_inequalities_sampled():
    from beauville import commutator_depth_suite
    assert commutator_depth_suite(3, 12, n_pairs=500, seed=0) == []
    assert commutator_depth_suite(5, 12, n_pairs=500, seed=0) == []
    # compose depth >= min of the depths
    rng = random.Random(7)
    from beauville.nottingham import random_series as rnd
    for _ in range(500):
        f, g = rnd(rng, 3, 12), rnd(rng, 3, 12)
        assert compose(f, g).depth() >= min(f.depth(), g.depth())


def test_lcs_index_values():
    for p in (3, 5, 7):
        assert lcs_index(2, p) == 3
    assert lcs_index(4, 3) == 6
    assert lcs_index(5, 5) == 6
    assert lcs_index(6, 5) == 8
    with pytest.raises(ValueError):
        lcs_index(1, 3)


def test_lcs_index_diamond_characterization():
    for p in (3, 5, 7):
        for i in range(2, 31):
            gap = lcs_index(i + 1, p) - lcs_index(i, p)
            assert gap == (2 if i % (p - 1) == 1 else 1)


def test_series_hashable_and_immutable():
    f = TruncSeries(3, (1, 2, 0))
    assert hash(f) == hash(TruncSeries(3, (1, 2, 0)))
    with pytest.raises(AttributeError):
        f.coeffs = (1, 0, 0)
    with pytest.raises(ValueError):
        TruncSeries(3, (2, 1))  # not normalized
