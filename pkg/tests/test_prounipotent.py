import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisweil.prounipotent import (
    CongruenceGroup,
    alpha_factor,
    h1_alpha_trivial,
    in_pattern,
    make_alpha,
    sqrt,
    sqrt_with_trace,
)


def test_sqrt_identity():
    g = CongruenceGroup(2, 3, 4)
    assert np.array_equal(sqrt(g, g.identity()), g.identity())


def test_sqrt_scalar_example():
    # 1x1 case: the square root of 4 in 1 + 3 Z/81 is 79
    g = CongruenceGroup(1, 3, 4)
    root, levels = sqrt_with_trace(g, [[4]])
    assert root[0, 0] == 79
    assert (79 * 79) % 81 == 4
    assert levels == [2, 3, 4]
    # exhaustive uniqueness over the 27 elements of 1 + 3 Z/81
    candidates = [x for x in g.enumerate() if (x[0, 0] ** 2) % 81 == 4]
    assert candidates == [np.array([[79]])]


@pytest.mark.parametrize("n,p,K", [(1, 3, 4), (2, 3, 5), (2, 5, 4), (1, 5, 6)])
def test_sqrt_random_inputs(n, p, K):
    g = CongruenceGroup(n, p, K)
    rng = random.Random(f"{n}{p}{K}")
    for _ in range(60):
        a = g.random_element(rng)
        x = sqrt(g, a)
        assert np.array_equal(g.mul(x, x), a)
        assert g.contains(x)


def test_sqrt_uniqueness_exhaustive_small():
    # |G| = 3^4 = 81 for n=2, p=3, K=2: brute-force the uniqueness claim
    g = CongruenceGroup(2, 3, 2)
    els = g.enumerate()
    rng = random.Random(5)
    for _ in range(15):
        a = g.random_element(rng)
        roots = [x for x in els if np.array_equal(g.mul(x, x), a)]
        assert len(roots) == 1
        assert np.array_equal(roots[0], sqrt(g, a))


def test_sqrt_uniqueness_exhaustive_k3():
    # n=2, p=3, K=3, k0=1: 3^8 = 6561 elements, still within the guard
    g = CongruenceGroup(2, 3, 3)
    els = g.enumerate(guard=10_000)
    a = g.reduce([[4, 3], [6, 16]])
    assert g.contains(a)
    roots = [x for x in els if np.array_equal(g.mul(x, x), a)]
    assert len(roots) == 1
    assert np.array_equal(roots[0], sqrt(g, a))


def test_sqrt_commutes_with_automorphisms():
    g = CongruenceGroup(2, 3, 5)
    alpha = make_alpha(g, "transpose_inverse", perm=(1, 0))
    rng = random.Random(9)
    for _ in range(40):
        a = g.random_element(rng)
        assert np.array_equal(alpha(sqrt(g, a)), sqrt(g, alpha(a)))


def test_sqrt_rejects_outsiders():
    g = CongruenceGroup(2, 3, 4)
    with pytest.raises(ValueError):
        sqrt(g, [[2, 0], [0, 1]])


def test_h1_identity_alpha():
    # alpha = id: Z^1 = elements of order <= 2 = {1} in a pro-p group, p odd
    g = CongruenceGroup(1, 3, 3)
    alpha = make_alpha(g, "identity")
    ok, details = h1_alpha_trivial(g, alpha, mode="exhaustive")
    assert ok and details["z1"] == details["b1"] == 1


def test_h1_exhaustive_transpose_inverse_on_27():
    # 1 + 3 M_2(Z/27): 3^8 = 6561 elements, exhaustive Z^1 = B^1
    g = CongruenceGroup(2, 3, 3)
    alpha = make_alpha(g, "transpose_inverse")
    ok, details = h1_alpha_trivial(g, alpha, mode="exhaustive")
    assert ok
    assert details["z1"] == details["b1"] > 1


def test_h1_constructive_witnesses_k6():
    g = CongruenceGroup(2, 3, 6)
    alpha = make_alpha(g, "transpose_inverse", perm=(1, 0))
    ok, details = h1_alpha_trivial(
        g, alpha, mode="constructive", witnesses=100, seed=2
    )
    assert ok and details["witnesses"] == 100


def test_h1_rejects_non_involution():
    g = CongruenceGroup(2, 3, 3)
    bad = lambda x: g.mul(x, x)  # not an automorphism
    with pytest.raises(ValueError):
        h1_alpha_trivial(g, bad, mode="constructive")


def _cayley_fixed_point(group, alpha_form, rng):
    """Random fixed point of the J0-antitranspose involution via the Cayley
    transform of a form-antisymmetric nilpotent X."""
    n, mod, scale = group.n, group.modulus, group.p**group.k0
    j0 = np.fliplr(np.eye(n, dtype=np.int64))
    while True:
        x = np.array(
            [[rng.randrange(mod // scale) for _ in range(n)] for _ in range(n)],
            dtype=np.int64,
        ) * scale % mod
        # project to tX J0 = -J0 X: X = (X - J0 tX J0) / 2
        inv2 = pow(2, -1, mod)
        x = ((x - j0 @ x.T @ j0) * inv2) % mod
        one = group.identity()
        c = group.mul(group.inv((one - x) % mod), (one + x) % mod)
        if group.contains(c):
            return c


@pytest.mark.parametrize("n,K", [(2, 4), (3, 4)])
def test_alpha_factor_on_fixed_points(n, K):
    g = CongruenceGroup(n, 3, K)
    perm = tuple(range(n - 1, -1, -1))
    alpha = make_alpha(g, "transpose_inverse", perm=perm)
    rng = random.Random(100 + n)
    for _ in range(100):
        c = _cayley_fixed_point(g, alpha, rng)
        assert np.array_equal(alpha(c), c)
        a, b = alpha_factor(g, c, "upper", "lower", alpha)
        assert np.array_equal(g.mul(a, b), c)
        assert np.array_equal(alpha(a), a) and np.array_equal(alpha(b), b)
        assert in_pattern(g, a, "upper") and in_pattern(g, b, "lower")


def test_alpha_factor_trivial_intersection():
    # A = upper unipotent, B = lower: A ^ B = 1, factorization forced
    g = CongruenceGroup(2, 3, 4)
    perm = (1, 0)
    alpha = make_alpha(g, "transpose_inverse", perm=perm)
    rng = random.Random(77)
    c = _cayley_fixed_point(g, alpha, rng)
    a, b = alpha_factor(g, c, "upper_unipotent", "lower", alpha)
    assert in_pattern(g, a, "upper_unipotent")


def test_alpha_factor_accepts_already_fixed():
    g = CongruenceGroup(2, 3, 4)
    alpha = make_alpha(g, "transpose_inverse", perm=(1, 0))
    c = g.reduce(np.diag([4, 61]))  # 4 * 61 = 244 = 1 mod 81: alpha-fixed torus
    assert np.array_equal(alpha(c), c)
    a, b = alpha_factor(g, c, "upper", "lower", alpha)
    assert np.array_equal(g.mul(a, b), c)


def test_alpha_factor_rejects_unfixed():
    g = CongruenceGroup(2, 3, 4)
    alpha = make_alpha(g, "transpose_inverse", perm=(1, 0))
    rng = random.Random(1)
    c = g.random_element(rng)
    if np.array_equal(alpha(c), c):
        c = g.mul(c, g.reduce(np.eye(2, dtype=np.int64) + 3 * np.array([[0, 1], [0, 0]])))
    with pytest.raises(ValueError):
        alpha_factor(g, c, "upper", "lower", alpha)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_sqrt_property_hypothesis(seed):
    rng = random.Random(seed)
    n = rng.choice([1, 2])
    p = rng.choice([3, 5])
    K = rng.choice([3, 4, 5, 6])
    g = CongruenceGroup(n, p, K)
    a = g.random_element(rng)
    x, levels = sqrt_with_trace(g, a)
    assert np.array_equal(g.mul(x, x), a)
    assert levels == list(range(g.k0 + 1, K + 1))
