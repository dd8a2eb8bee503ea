import random
from fractions import Fraction as F

import pytest

from lipfree import FreeElement, free_norm_flow, free_norm_lp
from lipfree.flow import min_cost_transport
from oracles import random_element, random_metric_space


def test_single_edge():
    assert min_cost_transport([F(1)], [F(1)], lambda i, j: F(5)) == 5


def test_split_shipment():
    # two sources of mass 1 onto one sink of mass 2 at costs 1 and 3
    costs = {(0, 0): F(1), (1, 0): F(3)}
    assert min_cost_transport([F(1), F(1)], [F(2)], lambda i, j: costs[i, j]) == 4


def test_assignment_prefers_cheap_matching():
    # crossing costs force the identity matching
    cost = lambda i, j: F(1) if i == j else F(10)
    assert min_cost_transport([F(1), F(1)], [F(1), F(1)], cost) == 2


def test_rational_masses():
    value = min_cost_transport(
        [F(1, 3), F(2, 3)], [F(1, 2), F(1, 2)], lambda i, j: F(abs(i - j) + 1)
    )
    # source 1 covers sink 1 fully plus 1/6 of sink 0 at cost 2
    assert value == F(1, 3) + F(1, 2) + F(1, 6) * 2


def test_unbalanced_rejected():
    with pytest.raises(ValueError):
        min_cost_transport([F(1)], [F(2)], lambda i, j: F(1))


def test_matches_lp_norm_on_random_instances():
    rng = random.Random(4242)
    for _ in range(120):
        n = rng.randint(2, 6)
        space = random_metric_space(rng, n)
        mu = random_element(rng, n, rng.randint(1, n - 1))
        assert free_norm_flow(mu, space) == free_norm_lp(mu, space).value


def test_zero_element():
    rng = random.Random(1)
    space = random_metric_space(rng, 4)
    assert free_norm_flow(FreeElement.from_pairs([]), space) == 0
