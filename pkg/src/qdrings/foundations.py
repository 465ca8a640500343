"""Exact integer arithmetic and the calculus of characteristics.

A characteristic assigns to every prime a value in N ∪ {inf}.  Only
eventually constant characteristics are representable here: a cofinite
default plus finitely many exceptional primes.  That shape covers every
profile the library produces (cocharacteristics of groups, height profiles
of elements) and keeps all derived data finite.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Union

from .errors import ParseError

__all__ = [
    "INF",
    "ExtNat",
    "Characteristic",
    "bezout",
    "char_geq",
    "crt",
    "equivalent",
    "factorization",
    "is_idempotent_type",
    "is_prime",
    "is_zero_type",
    "iter_primes",
    "meet",
    "mod_inverse",
    "primes_up_to",
    "vp",
]


class _Infinity:
    """Singleton infinite value of the extended naturals; larger than every int."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinity)

    def __hash__(self) -> int:
        return hash("extended-natural-infinity")

    def __lt__(self, other) -> bool:
        self._check(other)
        return False

    def __le__(self, other) -> bool:
        self._check(other)
        return isinstance(other, _Infinity)

    def __gt__(self, other) -> bool:
        self._check(other)
        return not isinstance(other, _Infinity)

    def __ge__(self, other) -> bool:
        self._check(other)
        return True

    def __add__(self, other):
        self._check(other)
        return self

    __radd__ = __add__

    @staticmethod
    def _check(other) -> None:
        if not isinstance(other, (int, _Infinity)):
            raise TypeError(f"cannot compare extended natural with {type(other).__name__}")


INF = _Infinity()
ExtNat = Union[int, _Infinity]


def _check_extnat(value, what: str) -> None:
    if isinstance(value, _Infinity):
        return
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError(f"{what} must be a nonnegative integer or INF, got {value!r}")


# ---------------------------------------------------------------------------
# integer primitives


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_BOUND = 3317044064679887385961981  # the 12-base test is exact below this
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _sympy_or_none():
    # optional helper for inputs beyond the self-contained ranges
    try:
        import sympy
    except ImportError:
        return None
    return sympy


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic primality test."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"primality is defined for integers, got {n!r}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= _MR_PROVEN_BOUND:  # beyond the proven base set; defer to a library test
        sympy = _sympy_or_none()
        if sympy is None:
            raise ValueError(
                f"{n} exceeds the deterministically certified primality range; install sympy"
            )
        return bool(sympy.isprime(n))
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    """All primes p <= bound, ascending."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, bound + 1) if sieve[p]]


def iter_primes() -> Iterator[int]:
    """Unbounded ascending prime generator."""
    yield 2
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero rational: x = p**v * (u/w) with p dividing neither u nor w."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    frac = Fraction(x)
    if frac == 0:
        raise ValueError("the valuation of 0 is infinite; handled at the height layer only")

    def count(n: int) -> int:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        return k

    return count(frac.numerator) - count(frac.denominator)


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (x, y, g) with a*x + b*y = g = gcd(a, b) > 0."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_x, old_y, old_r


def mod_inverse(a: int, q: int) -> int:
    """Inverse of a modulo q, in [0, q).  Requires gcd(a, q) = 1."""
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    x, _, g = bezout(a % q if q > 1 else 0, q)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {q} (gcd {g})")
    return x % q


def crt(congruences) -> tuple[int, int]:
    """Combine (residue, modulus) pairs with pairwise coprime moduli.

    Returns (r, M) with r in [0, M) satisfying every congruence; the empty
    system yields (0, 1).
    """
    r, m = 0, 1
    for a, n in congruences:
        if n < 1:
            raise ValueError(f"modulus must be positive, got {n}")
        t = (a - r) * mod_inverse(m % n if n > 1 else 0, n) % n
        r = r + m * t
        m = m * n
    return r % m, m


_TRIAL_LIMIT = 10**5


def _brent_split(n: int) -> int:
    """A nontrivial divisor of an odd composite n, by Brent's cycle method."""
    for c in range(1, 1000):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:  # the batch overshot; replay one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ValueError(f"failed to split composite {n}")


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_split(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factorization(n: int) -> dict[int, int]:
    """Prime factorization of abs(n) as an exponent map; n must be nonzero."""
    if n == 0:
        raise ValueError("0 has no prime factorization")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 7
    while p * p <= n and p < _TRIAL_LIMIT:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        if p * p > n:
            out[n] = out.get(n, 0) + 1  # the remainder is prime
        else:
            _factor_into(n, out)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# characteristics


def _fmt_value(v: ExtNat) -> str:
    return "inf" if isinstance(v, _Infinity) else str(v)


class Characteristic:
    """Eventually constant map from primes to N ∪ {inf}.

    Stored canonically: exception values never equal the default, keys are
    prime and kept sorted.
    """

    __slots__ = ("_default", "_exceptions")

    def __init__(self, default: ExtNat, exceptions: Mapping[int, ExtNat] | None = None):
        _check_extnat(default, "default")
        exc: dict[int, ExtNat] = {}
        for p, v in (exceptions or {}).items():
            if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
                raise ValueError(f"exception key {p!r} is not prime")
            _check_extnat(v, f"value at {p}")
            if v != default:
                exc[p] = v
        self._default = default
        self._exceptions = dict(sorted(exc.items()))

    @property
    def default(self) -> ExtNat:
        return self._default

    @property
    def exception_primes(self) -> tuple[int, ...]:
        return tuple(self._exceptions)

    def exception_items(self) -> tuple[tuple[int, ExtNat], ...]:
        return tuple(self._exceptions.items())

    def value(self, p: int) -> ExtNat:
        """Value at a prime p (primality of p is the caller's responsibility)."""
        return self._exceptions.get(p, self._default)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Characteristic):
            return NotImplemented
        return self._default == other._default and self._exceptions == other._exceptions

    def __hash__(self) -> int:
        return hash((self._default, tuple(self._exceptions.items())))

    def __ge__(self, other: "Characteristic") -> bool:
        return char_geq(self, other)

    def __le__(self, other: "Characteristic") -> bool:
        return char_geq(other, self)

    def canonical_str(self) -> str:
        head = f"default={_fmt_value(self._default)}"
        if not self._exceptions:
            return head
        body = ",".join(f"{p}:{_fmt_value(v)}" for p, v in self._exceptions.items())
        return f"{head};{body}"

    __str__ = canonical_str

    def __repr__(self) -> str:
        return f"Characteristic({self.canonical_str()!r})"

    @classmethod
    def parse(cls, text: str) -> "Characteristic":
        """Parse the `default=<v>[;p:v,...]` grammar; v is a nonnegative integer or `inf`."""
        pos = _expect(text, 0, "default=")
        default, pos = _scan_value(text, pos)
        exc: dict[int, ExtNat] = {}
        if pos < len(text):
            pos = _expect(text, pos, ";")
            while True:
                key_pos = pos
                p, pos = _scan_uint(text, pos)
                if not is_prime(p):
                    raise ParseError(text, key_pos, "a prime")
                if p in exc:
                    raise ParseError(text, key_pos, "a prime not listed before")
                pos = _expect(text, pos, ":")
                v, pos = _scan_value(text, pos)
                exc[p] = v
                if pos == len(text):
                    break
                pos = _expect(text, pos, ",")
        return cls(default, exc)


def equivalent(c1: Characteristic, c2: Characteristic) -> bool:
    """Whether the disagreement set is finite with both values finite at every disagreement."""
    if c1.default != c2.default:
        return False
    for p in set(c1.exception_primes) | set(c2.exception_primes):
        v1, v2 = c1.value(p), c2.value(p)
        if v1 != v2 and (isinstance(v1, _Infinity) or isinstance(v2, _Infinity)):
            return False
    return True


def is_zero_type(c: Characteristic) -> bool:
    """Whether c is equivalent to the all-zero characteristic."""
    return c.default == 0 and all(not isinstance(v, _Infinity) for _, v in c.exception_items())


def is_idempotent_type(c: Characteristic) -> bool:
    """Whether c is equivalent to a characteristic taking only the values 0 and inf."""
    return c.default == 0 or isinstance(c.default, _Infinity)


def char_geq(a: Characteristic, b: Characteristic) -> bool:
    """Pointwise order: a(p) >= b(p) at every prime."""
    if not a.default >= b.default:
        return False
    for p in set(a.exception_primes) | set(b.exception_primes):
        if not a.value(p) >= b.value(p):
            return False
    return True


def meet(a: Characteristic, b: Characteristic) -> Characteristic:
    """Pointwise minimum (the greatest lower bound for char_geq)."""
    default = min(a.default, b.default)
    exc = {p: min(a.value(p), b.value(p)) for p in set(a.exception_primes) | set(b.exception_primes)}
    return Characteristic(default, exc)


# ---------------------------------------------------------------------------
# shared scanning helpers for the textual grammars


def _expect(text: str, pos: int, literal: str) -> int:
    if not text.startswith(literal, pos):
        raise ParseError(text, pos, f"{literal!r}")
    return pos + len(literal)


def _scan_uint(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError(text, pos, "a digit")
    return int(text[start:pos]), pos


def _scan_int(text: str, pos: int) -> tuple[int, int]:
    sign = 1
    if pos < len(text) and text[pos] == "-":
        sign = -1
        pos += 1
    n, pos = _scan_uint(text, pos)
    return sign * n, pos


def _scan_value(text: str, pos: int) -> tuple[ExtNat, int]:
    if text.startswith("inf", pos):
        return INF, pos + 3
    return _scan_uint(text, pos)
