import random
from fractions import Fraction
from itertools import product

import pytest

from kuroda import (
    SparsePolynomial,
    System,
    enumerate_t_generators,
    in_r_oracle,
    in_r_star,
    monoid_member,
    monoid_member_oracle,
    oracle_violations,
    pi_variable,
    star_violations,
)
from kuroda.membership import combinations_reach

from conftest import seeded_pi_polynomials

P1, P2, P3 = (pi_variable(i) for i in (1, 2, 3))
ANTISYM = (P1 - P2) * (P2 - P3) * (P3 - P1)


def vectors_up_to(degree):
    for n in product(range(degree + 1), repeat=4):
        if sum(n) <= degree:
            yield n


def test_monoid_member_examples(concrete):
    assert monoid_member((1, 1, 0, 0), concrete)
    assert not monoid_member((1, 0, 0, 0), concrete)
    assert monoid_member((0, 0, 0, 5), concrete)


def test_oracle_examples(concrete):
    assert monoid_member_oracle((2, 1, 0, 0), concrete)
    assert monoid_member_oracle((0, 0, 0, 1), concrete)
    assert not monoid_member_oracle((1, 0, 0, 2), concrete)


def test_monoid_routes_agree_to_degree_eight(concrete, family72):
    for config in (concrete, family72):
        for n in vectors_up_to(8):
            assert monoid_member(n, config) == monoid_member_oracle(n, config)


def test_monoid_closed_under_addition(concrete):
    rng = random.Random(424242)
    members = [n for n in vectors_up_to(6) if monoid_member(n, concrete)]
    for _ in range(300):
        a = rng.choice(members)
        b = rng.choice(members)
        assert monoid_member(tuple(x + y for x, y in zip(a, b)), concrete)


def test_generators_degree_one(concrete):
    listing = enumerate_t_generators(concrete, 1)
    assert listing.generators == ((0, 0, 0, 1),)


def test_generators_degree_two(concrete):
    listing = enumerate_t_generators(concrete, 2)
    gens = set(listing.generators)
    assert {(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0)} <= gens
    assert (0, 0, 0, 2) not in gens
    assert listing.count() == 4


def test_doubled_generator_never_listed(concrete):
    listing = enumerate_t_generators(concrete, 6)
    gens = set(listing.generators)
    for g in list(gens):
        doubled = tuple(2 * v for v in g)
        assert doubled not in gens


def test_generator_counts_are_regression_frozen(concrete):
    # Verified against the exhaustive splitting search: the minimal set of
    # the concrete example is complete at degree 4 (the six extreme-ray
    # vectors of shape (3,1,0,0) are its last members).
    listing = enumerate_t_generators(concrete, 8)
    assert listing.counts_by_degree() == {
        1: 1, 2: 4, 3: 11, 4: 17, 5: 17, 6: 17, 7: 17, 8: 17
    }
    assert not listing.growing_at_bound


def test_generator_completeness_small_degree(concrete):
    listing = enumerate_t_generators(concrete, 5)
    reached = combinations_reach(listing.generators, 5)
    members = {
        n for n in vectors_up_to(5) if n != (0, 0, 0, 0) and monoid_member(n, concrete)
    }
    assert members == reached & members
    assert members <= reached


def test_enumerate_rejects_negative_bound(concrete):
    with pytest.raises(ValueError):
        enumerate_t_generators(concrete, -1)
    assert enumerate_t_generators(concrete, 0).generators == ()


def test_ring_membership_fixtures(concrete):
    one = SparsePolynomial.constant(System.PI3, 1)
    assert in_r_star(one, concrete) and in_r_oracle(one, concrete)
    assert not in_r_star(P1, concrete) and not in_r_oracle(P1, concrete)
    triple = P1 * P2 * P3
    assert not in_r_star(triple, concrete) and not in_r_oracle(triple, concrete)
    assert in_r_star(ANTISYM, concrete) and in_r_oracle(ANTISYM, concrete)


def test_constant_fraction_in_ring(concrete):
    f = SparsePolynomial.constant(System.PI3, Fraction(7, 3))
    assert in_r_star(f, concrete) and in_r_oracle(f, concrete)


def test_star_violation_diagnostics(concrete):
    violations = star_violations(P1, concrete)
    assert violations
    first = violations[0]
    assert first.axis == 1 and first.triple == (1, 0, 0)
    assert first.lhs == 1 and first.rhs == 0
    # the scan keeps going after the first hit and reports every axis
    assert {v.axis for v in star_violations(P1 * P2 * P3, concrete)} == {1, 2, 3}


def test_oracle_violation_diagnostics(concrete):
    bad = oracle_violations(P1 * P2 * P3, concrete)
    assert (1, 0, 0, 2) in bad  # the y1*y4^2 term has a negative first slot


def test_antisym_expansion_monomials_all_in_monoid(concrete):
    from kuroda import expand_pi_to_y

    expanded = expand_pi_to_y(ANTISYM)
    support = set(expanded.support())
    assert support == {
        (2, 1, 0, 0), (1, 2, 0, 0), (2, 0, 1, 0),
        (1, 0, 2, 0), (0, 2, 1, 0), (0, 1, 2, 0),
    }
    from kuroda import expand_y_to_x

    assert expand_y_to_x((2, 1, 0, 0), concrete) == (1, 5, 9, 0)
    assert all(monoid_member_oracle(n, concrete) for n in support)


def test_star_equals_oracle_on_seeded_suite(concrete):
    for f in seeded_pi_polynomials(20250809, 150):
        assert in_r_star(f, concrete) == in_r_oracle(f, concrete)


def test_star_equals_oracle_on_asymmetric_configs():
    """The two routes also agree off the symmetric fixtures: differing column
    minima, a leading-zero tower, and a weighted fourth variable."""
    from kuroda import KurodaConfig

    configs = [
        KurodaConfig.from_signed([[-4, 9, 9, 0], [2, -1, 9, 0], [3, 9, -1, 0]], 1),
        KurodaConfig.from_signed([[-3, 11, 11, 0], [5, -1, 11, 0], [6, 11, -1, 0]], 1),
        KurodaConfig.from_signed([[-1, 3, 4, 2], [3, -1, 5, 0], [4, 3, -1, 1]], 3),
    ]
    polys = seeded_pi_polynomials(555000, 120)
    for config in configs:
        for f in polys:
            assert in_r_star(f, config) == in_r_oracle(f, config)


def test_ring_closure_on_curated_members(concrete):
    g = ANTISYM
    members = [
        SparsePolynomial.constant(System.PI3, 1),
        SparsePolynomial.constant(System.PI3, Fraction(-3, 2)),
        g,
        g + 2,
        g * g,
        Fraction(2, 3) * g,
    ]
    for f in members:
        assert in_r_oracle(f, concrete)
    for a in members:
        for b in members:
            assert in_r_oracle(a + b, concrete)
            assert in_r_oracle(a * b, concrete)
