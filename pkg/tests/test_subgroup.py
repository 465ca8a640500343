"""Tests for subgroup descriptors: membership, normalization, equality."""

import random
from fractions import Fraction

import pytest

from qdrings.errors import GroupMismatchError, UnsupportedCaseError
from qdrings.foundations import INF, Characteristic, char_geq
from qdrings.group import add, build_group, char_of, zmul
from qdrings.oracle import TrialConfig, random_element, random_group, sample_member
from qdrings.ring import make_mult, multiply
from qdrings.subgroup import (
    DescriptorKind,
    contains,
    equals,
    full_inv,
    parse_descriptor,
    plus_cyclic,
    torsion_inv,
)

CHI_A = Characteristic(0, {2: 2, 3: INF})
GA = build_group(CHI_A)
GB = build_group(Characteristic(0, {2: 1}))
GZ = build_group(Characteristic(INF))
CFG = TrialConfig(seed=515151)

E = GA.elem(1)
E2 = GA.elem(0, {2: 1})


def torsion_elements_of_GA():
    return [GA.elem(0, {2: a}) for a in range(4)]


# -- full_inv ----------------------------------------------------------------

def test_full_inv_zero_floor_is_everything():
    d = full_inv(GA, Characteristic(0))
    rng = random.Random(1)
    for _ in range(50):
        assert contains(d, random_element(GA, rng, CFG, torsion=rng.random() < 0.5))


def test_full_inv_example_in_GA():
    d = full_inv(GA, char_of(zmul(2, E)))
    assert contains(d, zmul(2, E))
    assert not contains(d, E)  # its height at 2 is 0, below the floor of 1


def test_full_inv_all_inf_floor_in_GB_is_the_rational_summand():
    d = full_inv(GB, Characteristic(INF))
    for q in (Fraction(1), Fraction(-3, 7), Fraction(5, 2)):
        assert contains(d, GB.elem_qb(q, 0))
    assert not contains(d, GB.elem_qb(0, 1))
    assert not contains(d, GB.elem_qb(1, 1))


def test_full_inv_collapses_to_torsion_when_only_torsion_fits():
    # an infinite floor at a divisible prime leaves only torsion members
    d = full_inv(GA, Characteristic(INF, {2: 0}))
    assert d.kind is DescriptorKind.TORSION
    # a positive floor on infinitely many primes of nonzero cocharacteristic does too
    G = build_group(Characteristic(2))
    d2 = full_inv(G, Characteristic(1))
    assert d2.kind is DescriptorKind.TORSION


# -- torsion_inv ---------------------------------------------------------------

def test_torsion_inv_examples():
    all_t = torsion_inv(GA, char_of(E2))
    members = [g for g in torsion_elements_of_GA() if contains(all_t, g)]
    assert members == torsion_elements_of_GA()

    half = torsion_inv(GA, char_of(zmul(2, E2)))
    assert [g for g in torsion_elements_of_GA() if contains(half, g)] == [
        GA.zero(),
        zmul(2, E2),
    ]

    trivial = torsion_inv(GA, Characteristic(INF))
    assert [g for g in torsion_elements_of_GA() if contains(trivial, g)] == [GA.zero()]
    assert not contains(trivial, E)  # nontorsion elements never belong


# -- plus_cyclic ---------------------------------------------------------------

def test_plus_cyclic_examples():
    trivial = torsion_inv(GA, Characteristic(INF))
    line = plus_cyclic(trivial, E)
    assert line.kind is DescriptorKind.SUM
    assert contains(line, zmul(5, E))
    assert not contains(line, E2)
    assert not contains(line, GA.elem(Fraction(1, 2), {2: 0}))

    collapsed = plus_cyclic(torsion_inv(GA, char_of(E2)), GA.zero())
    assert collapsed.kind is DescriptorKind.TORSION

    with pytest.raises(UnsupportedCaseError):
        plus_cyclic(full_inv(GA, Characteristic(0)), E)
    with pytest.raises(GroupMismatchError):
        plus_cyclic(trivial, GB.elem_qb(1, 0))


def test_cyclic_line_excludes_fractions_of_the_generator():
    e0 = GA.elem(1, {2: 0})
    line = plus_cyclic(torsion_inv(GA, Characteristic(INF)), e0)
    assert contains(line, zmul(-3, e0))
    assert not contains(line, GA.elem(Fraction(1, 2), {2: 0}))


def test_plus_cyclic_with_torsion_generator_uses_bounded_search():
    # generator of order 4 outside the torsion floor at height 1
    floor = torsion_inv(GA, Characteristic(INF, {2: 1}))
    d = plus_cyclic(floor, E2)
    assert d.kind is DescriptorKind.SUM
    for g in torsion_elements_of_GA():
        assert contains(d, g)  # T(floor) + Z*e2 is all of the torsion part
    assert not contains(d, E)
    # and it equals the full torsion descriptor by the cyclic-slot collapse
    assert equals(d, torsion_inv(GA, char_of(E2)))


# -- membership vs the direct definition --------------------------------------

def test_full_membership_matches_characteristic_comparison():
    rng = random.Random(2)
    for _ in range(1000):
        G = random_group(rng, CFG)
        eta = char_of(random_element(G, rng, CFG, torsion=rng.random() < 0.4))
        d = full_inv(G, eta)
        x = random_element(G, rng, CFG, torsion=rng.random() < 0.4)
        assert contains(d, x) == char_geq(char_of(x), eta)


def test_normalization_is_idempotent_and_membership_invariant():
    rng = random.Random(3)
    for _ in range(300):
        G = random_group(rng, CFG)
        eta = char_of(random_element(G, rng, CFG, torsion=rng.random() < 0.4))
        for d in (full_inv(G, eta), torsion_inv(G, eta)):
            renorm = (
                full_inv(G, d.eta) if d.kind is DescriptorKind.FULL else torsion_inv(G, d.eta)
            )
            assert renorm.kind is d.kind and renorm.eta == d.eta
            x = random_element(G, rng, CFG, torsion=rng.random() < 0.4)
            assert contains(d, x) == contains(renorm, x)


def test_monotonicity_of_floors():
    rng = random.Random(4)
    for _ in range(200):
        G = random_group(rng, CFG)
        x = random_element(G, rng, CFG, torsion=rng.random() < 0.4)
        eta1 = char_of(x)
        eta2 = char_of(zmul(rng.randint(2, 9), x))  # multiplying only raises heights
        assert char_geq(eta2, eta1)
        lo, hi = full_inv(G, eta1), full_inv(G, eta2)
        y = sample_member(hi, rng, CFG)
        assert contains(lo, y)


def test_floor_subgroups_are_stable_under_multiples_and_products():
    rng = random.Random(5)
    for _ in range(200):
        G = random_group(rng, CFG)
        eta = char_of(random_element(G, rng, CFG, torsion=rng.random() < 0.4))
        d = full_inv(G, eta)
        x = sample_member(d, rng, CFG)
        assert contains(d, zmul(rng.randint(-20, 20), x))
        mult = make_mult(G, random_element(G, rng, CFG, torsion=rng.random() < 0.4))
        y = random_element(G, rng, CFG, torsion=rng.random() < 0.4)
        assert contains(d, multiply(mult, x, y))


# -- equality ------------------------------------------------------------------

def test_equals_torsion_vs_full_follows_reducedness():
    assert equals(full_inv(GA, char_of(E2)), torsion_inv(GA, char_of(E2)))
    xb = GB.elem_qb(0, 1)
    assert not equals(full_inv(GB, char_of(xb)), torsion_inv(GB, char_of(xb)))


def test_equals_ignores_floor_values_at_dead_primes():
    eta = Characteristic(INF, {2: 1, 3: 0})
    edited = Characteristic(INF, {2: 1, 3: 0, 5: 2})  # 5 has cocharacteristic 0 in GA
    assert GA.cochar.value(5) == 0
    assert equals(full_inv(GA, eta), full_inv(GA, edited))
    assert full_inv(GA, edited).eta.value(5) == INF


def test_equals_distinguishes_genuinely_different_floors():
    assert not equals(
        full_inv(GA, Characteristic(INF, {2: 1, 3: 0})),
        full_inv(GA, Characteristic(INF, {2: 0, 3: 0})),
    )
    assert not equals(torsion_inv(GA, Characteristic(INF, {2: 1})), torsion_inv(GA, Characteristic(INF, {2: 0})))


def test_equals_cyclic_line_against_floor_in_the_integers_group():
    line = plus_cyclic(torsion_inv(GZ, Characteristic(INF)), GZ.elem(-12))
    assert equals(line, full_inv(GZ, Characteristic(0, {2: 2, 3: 1})))
    assert not equals(line, full_inv(GZ, Characteristic(0, {2: 2})))
    # outside the integers-like group a cyclic line never matches a floor
    line_a = plus_cyclic(torsion_inv(GA, Characteristic(INF)), zmul(2, E))
    assert not equals(line_a, full_inv(GA, char_of(zmul(2, E))))


def test_equals_sum_generators_modulo_torsion_part():
    floor = torsion_inv(GA, Characteristic(INF, {2: 0}))  # the whole torsion part
    a = plus_cyclic(floor, E)
    b = plus_cyclic(floor, add(E, E2))  # differs by a torsion member
    assert equals(a, b)
    c = plus_cyclic(floor, zmul(-1, E))  # sign-normalized away
    assert equals(a, c)
    d = plus_cyclic(floor, zmul(2, E))
    assert not equals(a, d)


def test_equal_descriptors_agree_on_sampled_members():
    rng = random.Random(6)
    for _ in range(200):
        G = random_group(rng, CFG)
        base = char_of(random_element(G, rng, CFG, torsion=rng.random() < 0.4))
        candidates = [full_inv(G, base), torsion_inv(G, base)]
        g = random_element(G, rng, CFG, torsion=rng.random() < 0.4)
        if not contains(torsion_inv(G, base), g):
            candidates.append(plus_cyclic(torsion_inv(G, base), g))
        for d1 in candidates:
            for d2 in candidates:
                if equals(d1, d2):
                    x = sample_member(d1, rng, CFG)
                    y = sample_member(d2, rng, CFG)
                    assert contains(d2, x) and contains(d1, y)


def test_descriptor_parse_print_round_trip():
    texts = [
        "G(eta=default=inf;2:1,3:0)",
        "T(eta=default=inf;2:1)",
        "T(eta=default=inf)+Z*r=2",
    ]
    for text in texts:
        d = parse_descriptor(text, GA)
        assert str(d) == text
