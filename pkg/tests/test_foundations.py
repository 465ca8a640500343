"""Tests for the integer primitives and the characteristic calculus."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qdrings.errors import ParseError
from qdrings.foundations import (
    INF,
    Characteristic,
    bezout,
    char_geq,
    crt,
    equivalent,
    factorization,
    is_idempotent_type,
    is_prime,
    is_zero_type,
    meet,
    mod_inverse,
    primes_up_to,
    vp,
)

PRIMES = (2, 3, 5, 7, 11, 13)

ext_values = st.one_of(st.integers(0, 4), st.just(INF))
characteristics = st.builds(
    Characteristic,
    st.one_of(st.just(0), st.integers(1, 4), st.just(INF)),
    st.dictionaries(st.sampled_from(PRIMES), ext_values, max_size=6),
)


# -- extended naturals -------------------------------------------------------


def test_infinity_ordering():
    assert 5 < INF
    assert INF > 5
    assert not INF < INF
    assert INF <= INF
    assert INF >= 10**100
    assert min(3, INF) == 3
    assert min(INF, INF) == INF
    assert INF + 1 == INF
    assert 1 + INF == INF
    assert INF != 7
    assert INF == INF


def test_infinity_rejects_foreign_types():
    with pytest.raises(TypeError):
        INF < 1.5  # noqa: B015


# -- primitives --------------------------------------------------------------


def test_vp_examples():
    assert vp(12, 2) == 2
    assert vp(Fraction(1, 9), 3) == -2
    assert vp(5, 7) == 0
    assert vp(Fraction(-18, 5), 3) == 2


def test_vp_errors():
    with pytest.raises(ValueError):
        vp(0, 2)
    with pytest.raises(ValueError):
        vp(4, 6)


def test_bezout_examples():
    x, y, g = bezout(6, 35)
    assert g == 1 and 6 * x + 35 * y == 1
    assert bezout(4, 0) == (1, 0, 4)
    x, y, g = bezout(12, 18)
    assert g == 6 and 12 * x + 18 * y == 6  # checked by substitution
    with pytest.raises(ValueError):
        bezout(0, 0)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_bezout_identity(a, b):
    if a == 0 and b == 0:
        return
    x, y, g = bezout(a, b)
    assert g > 0
    assert a * x + b * y == g
    assert a % g == 0 and b % g == 0


def test_mod_inverse_examples():
    assert mod_inverse(3, 4) == 3
    assert mod_inverse(1, 27) == 1
    # independent oracle: exhaustive search modulo 9
    expected = next(b for b in range(9) if 5 * b % 9 == 1)
    assert expected == 2
    assert mod_inverse(5, 9) == 2
    with pytest.raises(ValueError):
        mod_inverse(6, 9)


def test_crt():
    r, m = crt([(1, 4), (2, 27)])
    assert m == 108 and r % 4 == 1 and r % 27 == 2
    assert crt([]) == (0, 1)
    with pytest.raises(ValueError):
        crt([(0, 4), (1, 6)])  # moduli share a factor


def test_is_prime():
    assert [p for p in range(60) if is_prime(p)] == primes_up_to(59)
    assert is_prime(2**31 - 1)
    assert not is_prime(2**31)
    assert not is_prime(1) and not is_prime(-7)


def test_factorization():
    assert factorization(360) == {2: 3, 3: 2, 5: 1}
    assert factorization(-17) == {17: 1}
    assert factorization(1) == {}
    with pytest.raises(ValueError):
        factorization(0)


# -- characteristics ---------------------------------------------------------


def test_characteristic_canonical_form():
    c = Characteristic(0, {3: 0, 2: 2, 5: INF})
    assert c.exception_primes == (2, 5)  # the default-valued entry is dropped
    assert c.value(3) == 0
    assert c.value(2) == 2
    assert c.value(5) == INF
    assert c.canonical_str() == "default=0;2:2,5:inf"


def test_characteristic_validation():
    with pytest.raises(ValueError):
        Characteristic(0, {4: 1})
    with pytest.raises(ValueError):
        Characteristic(-1)
    with pytest.raises(ValueError):
        Characteristic(0, {2: -3})


def test_characteristic_parse_round_trip_examples():
    for text in ("default=0", "default=inf", "default=0;2:2,3:inf", "default=2;5:0"):
        assert Characteristic.parse(text).canonical_str() == text


def test_characteristic_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        Characteristic.parse("default=0;4:1")
    assert err.value.pos == 10
    with pytest.raises(ParseError) as err:
        Characteristic.parse("default=x")
    assert err.value.pos == 8
    with pytest.raises(ParseError) as err:
        Characteristic.parse("default=0;2:1,2:2")
    assert err.value.pos == 14


@given(characteristics)
def test_characteristic_parse_print_round_trip(c):
    assert Characteristic.parse(c.canonical_str()) == c


def test_equivalent_examples():
    zero = Characteristic(0)
    assert equivalent(zero, zero)
    assert equivalent(Characteristic(0, {2: 3}), zero)
    assert not equivalent(Characteristic(0, {2: INF}), zero)
    assert not equivalent(Characteristic(0), Characteristic(1))


def _related_pool(rng):
    """Characteristics with plenty of nontrivial equivalences among them."""
    base = Characteristic(
        rng.choice([0, 2, INF]),
        {p: rng.choice([0, 1, 3, INF]) for p in PRIMES if rng.random() < 0.5},
    )
    pool = [base]
    for _ in range(3):
        exc = dict(base.exception_items())
        p = rng.choice(PRIMES)
        exc[p] = rng.choice([0, 1, 2, 3, INF])
        pool.append(Characteristic(base.default, exc))
    return pool


def test_equivalent_is_an_equivalence_relation():
    rng = random.Random(20240)
    for _ in range(1000):
        pool = _related_pool(rng)
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert equivalent(a, a)
        assert equivalent(a, b) == equivalent(b, a)
        if equivalent(a, b) and equivalent(b, c):
            assert equivalent(a, c)


def test_is_zero_type_examples():
    assert is_zero_type(Characteristic(0, {2: 1}))
    assert not is_zero_type(Characteristic(0, {3: INF}))
    assert not is_zero_type(Characteristic(INF))


def test_is_idempotent_type_examples():
    assert is_idempotent_type(Characteristic(INF))
    # one finite change away from an idempotent characteristic
    c = Characteristic(0, {2: 2, 3: INF})
    assert is_idempotent_type(c)
    assert equivalent(c, Characteristic(0, {3: INF}))
    # the finite default would need infinitely many changes
    assert not is_idempotent_type(Characteristic(5))


def test_type_predicates_agree_with_equivalence():
    rng = random.Random(99)
    zero = Characteristic(0)
    for _ in range(300):
        c = rng.choice(_related_pool(rng))
        assert is_zero_type(c) == equivalent(c, zero)
        if is_idempotent_type(c):
            representative = Characteristic(
                c.default, {p: (INF if v == INF else 0) for p, v in c.exception_items()}
            )
            assert equivalent(c, representative)
            assert all(representative.value(p) in (0, INF) for p in PRIMES)
        else:
            for other in (zero, Characteristic(INF), Characteristic(0, {2: INF})):
                assert not equivalent(c, other)


def test_char_geq_examples():
    zero = Characteristic(0)
    top = Characteristic(INF)
    c = Characteristic(0, {2: 1})
    assert char_geq(c, zero)
    assert char_geq(top, c)
    assert not char_geq(c, Characteristic(0, {2: 2}))
    assert c >= zero and c <= top


@given(characteristics, characteristics, characteristics)
def test_char_geq_is_a_partial_order(a, b, c):
    assert char_geq(a, a)
    if char_geq(a, b) and char_geq(b, a):
        assert a == b
    if char_geq(a, b) and char_geq(b, c):
        assert char_geq(a, c)
    assert char_geq(a, Characteristic(0))


@given(characteristics, characteristics, characteristics)
def test_meet_is_the_greatest_lower_bound(a, b, lower):
    m = meet(a, b)
    assert char_geq(a, m) and char_geq(b, m)
    if char_geq(a, lower) and char_geq(b, lower):
        assert char_geq(m, lower)
