"""Rank-1 quotient divisible groups and exact element arithmetic.

A group is determined by its cocharacteristic.  For a nonzero type the group
is reduced and lives inside a product of cyclic p-adic modules generated by
one coordinate per prime; an element is stored as a rational coefficient of
the basis plus finitely many torsion-coordinate overrides at primes whose
cocharacteristic value is finite and positive.  For the zero type the group
is Q (+) Z_m and the same storage is used with every torsion coordinate kept
explicit, so one arithmetic core serves both kinds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .errors import (
    GroupMismatchError,
    InvalidDenominatorError,
    ParseError,
    UnsupportedCaseError,
)
from .foundations import (
    INF,
    Characteristic,
    ExtNat,
    _Infinity,
    _expect,
    _scan_int,
    _scan_uint,
    crt,
    factorization,
    is_prime,
    is_zero_type,
    mod_inverse,
    vp,
)

__all__ = [
    "Decomposition",
    "GroupElement",
    "Qd1Group",
    "add",
    "build_group",
    "c_of",
    "char_of",
    "coordinate_residue",
    "decompose",
    "elem",
    "height",
    "is_integers",
    "is_torsion",
    "neg",
    "order",
    "zmul",
]


class Qd1Group:
    """A rank-1 quotient divisible group, identified by its cocharacteristic."""

    __slots__ = ("_cochar", "_modulus", "_torsion_keys")

    def __init__(self, cochar: Characteristic):
        self._cochar = cochar
        if is_zero_type(cochar):
            keys = tuple(p for p, v in cochar.exception_items() if isinstance(v, int) and v > 0)
            self._torsion_keys = keys
            self._modulus = math.prod(p ** cochar.value(p) for p in keys)
        else:
            self._torsion_keys = None
            self._modulus = None

    @property
    def cochar(self) -> Characteristic:
        return self._cochar

    @property
    def is_reduced(self) -> bool:
        return self._modulus is None

    @property
    def modulus(self) -> int | None:
        """The torsion modulus m of a nonreduced group Q (+) Z_m; None when reduced."""
        return self._modulus

    def __eq__(self, other) -> bool:
        if not isinstance(other, Qd1Group):
            return NotImplemented
        return self._cochar == other._cochar

    def __hash__(self) -> int:
        return hash(self._cochar)

    def __repr__(self) -> str:
        return f"Qd1Group({self._cochar.canonical_str()!r})"

    def __str__(self) -> str:
        if self.is_reduced:
            return f"reduced cochar={self._cochar.canonical_str()}"
        return f"nonreduced m={self._modulus} (Q (+) Z_{self._modulus})"

    # -- element constructors ------------------------------------------------

    def elem(self, rational, overrides: Mapping[int, int] | None = None) -> "GroupElement":
        """Build the element with the given rational coefficient and torsion overrides.

        Override keys must be primes with finite positive cocharacteristic
        value; residues are reduced into range.  Any prime dividing the
        denominator needs either cocharacteristic 0 or an explicit override.
        """
        ov: dict[int, int] = {}
        for p, a in (overrides or {}).items():
            if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
                raise ValueError(f"override key {p!r} is not prime")
            k = self._cochar.value(p)
            if not isinstance(k, int) or k == 0:
                raise ValueError(f"prime {p} has cocharacteristic {k}; no finite torsion coordinate there")
            if isinstance(a, bool) or not isinstance(a, int):
                raise ValueError(f"override at {p} must be an integer, got {a!r}")
            ov[p] = a % p**k
        return _build(self, Fraction(rational), ov)

    def elem_qb(self, q, b: int = 0) -> "GroupElement":
        """Build a nonreduced element from its (rational, torsion residue) pair."""
        if self.is_reduced:
            raise UnsupportedCaseError("elem_qb applies to nonreduced groups only")
        b %= self._modulus if self._modulus else 1
        ov = {p: b % p ** self._cochar.value(p) for p in self._torsion_keys}
        return _build(self, Fraction(q), ov)

    def zero(self) -> "GroupElement":
        return self.elem(0)

    def basis_element(self, omit=()) -> "GroupElement":
        """The basis element, with the torsion coordinate zeroed at each prime in omit."""
        ov = {}
        for p in omit:
            k = self._cochar.value(p)
            if isinstance(k, _Infinity):
                raise ValueError(f"the coordinate at {p} cannot be zeroed: cocharacteristic is inf")
            if k > 0:
                ov[p] = 0
        return self.elem(1, ov)

    def parse_elem(self, text: str) -> "GroupElement":
        return _parse_element(self, text)


def build_group(cochar: Characteristic) -> Qd1Group:
    """The quotient divisible group of rank 1 with the given cocharacteristic."""
    return Qd1Group(cochar)


def is_integers(G: Qd1Group) -> bool:
    """Whether G is the group determined by the everywhere-infinite cocharacteristic."""
    return G.cochar == Characteristic(INF)


class GroupElement:
    """Canonical finite representation of a group element.

    Immutable; construct through the parent group.  In a reduced group an
    override is kept only where it differs from the residue of the rational
    coefficient; in a nonreduced group every torsion coordinate is explicit.
    """

    __slots__ = ("_group", "_rational", "_overrides")

    def __init__(self, group: Qd1Group, rational: Fraction, overrides: dict[int, int]):
        self._group = group
        self._rational = rational
        self._overrides = overrides

    @property
    def group(self) -> Qd1Group:
        return self._group

    @property
    def rational(self) -> Fraction:
        return self._rational

    @property
    def overrides(self) -> dict[int, int]:
        return dict(self._overrides)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (
            self._group == other._group
            and self._rational == other._rational
            and self._overrides == other._overrides
        )

    def __hash__(self) -> int:
        return hash((self._group, self._rational, tuple(sorted(self._overrides.items()))))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return add(self, neg(other))

    def __neg__(self) -> "GroupElement":
        return neg(self)

    def __rmul__(self, n: int) -> "GroupElement":
        return zmul(n, self)

    def __str__(self) -> str:
        return canonical_elem_str(self)

    def __repr__(self) -> str:
        return f"<{canonical_elem_str(self)} in {self._group}>"

    def as_pair(self) -> tuple[Fraction, int]:
        """The (rational, torsion residue) view of a nonreduced element."""
        if self._group.is_reduced:
            raise UnsupportedCaseError("as_pair applies to nonreduced groups only")
        residue, _ = crt(
            (a, p ** self._group.cochar.value(p)) for p, a in self._overrides.items()
        )
        return self._rational, residue


def _rational_residue(r: Fraction, p: int, q: int) -> int:
    # residue of r modulo q = p**k; requires p not dividing the denominator
    return r.numerator * mod_inverse(r.denominator % q, q) % q


def _build(group: Qd1Group, rational: Fraction, overrides: dict[int, int]) -> GroupElement:
    """Normalize and validate; the single constructor behind all arithmetic."""
    chi = group.cochar
    den = rational.denominator
    if group.is_reduced:
        ov = {}
        for p, a in overrides.items():
            q = p ** chi.value(p)
            a %= q
            if den % p != 0 and a == _rational_residue(rational, p, q):
                continue  # redundant override
            ov[p] = a
    else:
        ov = {}
        for p in group._torsion_keys:
            q = p ** chi.value(p)
            if p in overrides:
                ov[p] = overrides[p] % q
            elif den % p != 0:
                ov[p] = _rational_residue(rational, p, q)
            else:
                raise InvalidDenominatorError(
                    f"denominator prime {p} divides the torsion modulus; give the coordinate explicitly"
                )
    _check_denominator(group, den, ov)
    return GroupElement(group, rational, ov)


def _check_denominator(group: Qd1Group, den: int, overrides: dict[int, int]) -> None:
    chi = group.cochar
    rest = den
    for p in overrides:
        while rest % p == 0:
            rest //= p
    for p in chi.exception_primes:
        while rest % p == 0:
            if chi.value(p) != 0:
                raise InvalidDenominatorError(
                    f"denominator prime {p} has cocharacteristic {chi.value(p)} and no override"
                )
            rest //= p
    if rest > 1 and chi.default != 0:
        p = min(factorization(rest))
        raise InvalidDenominatorError(
            f"denominator prime {p} has cocharacteristic {chi.default} and no override"
        )


def _same_group(g: GroupElement, h: GroupElement) -> Qd1Group:
    if g.group != h.group:
        raise GroupMismatchError("elements belong to different groups")
    return g.group


def coordinate_residue(g: GroupElement, p: int) -> int:
    """The torsion coordinate of g at a prime with finite positive cocharacteristic value."""
    k = g.group.cochar.value(p)
    if not isinstance(k, int) or k == 0:
        raise ValueError(f"prime {p} carries no finite torsion coordinate (cocharacteristic {k})")
    if p in g._overrides:
        return g._overrides[p]
    return _rational_residue(g.rational, p, p**k)


# ---------------------------------------------------------------------------
# group laws


def elem(G: Qd1Group, rational, overrides: Mapping[int, int] | None = None) -> GroupElement:
    return G.elem(rational, overrides)


def add(g: GroupElement, h: GroupElement) -> GroupElement:
    G = _same_group(g, h)
    chi = G.cochar
    ov = {}
    for p in g._overrides.keys() | h._overrides.keys():
        q = p ** chi.value(p)
        ov[p] = (coordinate_residue(g, p) + coordinate_residue(h, p)) % q
    return _build(G, g.rational + h.rational, ov)


def neg(g: GroupElement) -> GroupElement:
    return zmul(-1, g)


def zmul(n: int, g: GroupElement) -> GroupElement:
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"integer multiple expected, got {n!r}")
    G = g.group
    chi = G.cochar
    ov = {p: n * a % p ** chi.value(p) for p, a in g._overrides.items()}
    return _build(G, n * g.rational, ov)


# ---------------------------------------------------------------------------
# invariants


def height(g: GroupElement, p: int) -> ExtNat:
    """The p-height of g: the largest k with g divisible by p**k, INF if unbounded."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = g.group.cochar.value(p)
    if k == 0:
        return INF
    if isinstance(k, _Infinity):
        r = g.rational
        return INF if r == 0 else vp(r, p)
    a = coordinate_residue(g, p)
    return INF if a == 0 else vp(a, p)


def char_of(g: GroupElement) -> Characteristic:
    """The full height profile of g as an eventually constant characteristic."""
    chi = g.group.cochar
    r = g.rational
    default_h: ExtNat = INF if (chi.default == 0 or r == 0) else 0
    candidates = set(chi.exception_primes) | set(g._overrides)
    if r != 0 and chi.default != 0:
        candidates |= set(factorization(r.numerator))
    exc = {}
    for p in candidates:
        h = height(g, p)
        if h != default_h:
            exc[p] = h
    return Characteristic(default_h, exc)


def is_torsion(g: GroupElement) -> bool:
    return g.rational == 0


def order(g: GroupElement) -> ExtNat:
    """The additive order of g."""
    if g.rational != 0:
        return INF
    n = 1
    for p, a in g._overrides.items():
        if a == 0:
            continue
        n = math.lcm(n, p ** (g.group.cochar.value(p) - vp(a, p)))
    return n


def c_of(g: GroupElement) -> int:
    """Product of p**height(g, p) over the primes with infinite cocharacteristic value.

    Zero on torsion elements, one when no such prime exists; always a finite
    positive integer otherwise because only finitely many primes divide the
    rational coefficient.
    """
    if is_torsion(g):
        return 0
    chi = g.group.cochar
    r = g.rational
    result = 1
    if isinstance(chi.default, _Infinity):
        for p, e in factorization(r.numerator).items():
            if isinstance(chi.value(p), _Infinity):
                result *= p**e
    else:
        for p, v in chi.exception_items():
            if isinstance(v, _Infinity):
                result *= p ** max(0, vp(r, p))
    return result


def _finite_positive_chi_divisors(G: Qd1Group, n: int) -> set[int]:
    """Primes p dividing n with 0 < cochar(p) < inf."""
    if n == 0:
        return set()
    chi = G.cochar
    if isinstance(chi.default, int) and chi.default > 0:
        return {p for p in factorization(n) if isinstance(chi.value(p), int) and chi.value(p) > 0}
    return {
        p
        for p, v in chi.exception_items()
        if isinstance(v, int) and v > 0 and n % p == 0
    }


class Decomposition:
    """The canonical splitting of a reduced-group element.

    The element equals scale * rational * e0 + tail, where e0 is the basis
    element with its torsion coordinate zeroed on the support, the tail is a
    torsion element supported there, and the rational is a fraction whose
    primes avoid the complement of the support inside the nonzero-value
    primes of the cocharacteristic.
    """

    __slots__ = ("scale", "rational", "tail", "support")

    def __init__(self, scale: int, rational: Fraction, tail: GroupElement, support: frozenset[int]):
        self.scale = scale
        self.rational = rational
        self.tail = tail
        self.support = support

    def recombine(self) -> GroupElement:
        G = self.tail.group
        free_part = G.elem(self.scale * self.rational, {p: 0 for p in self.support})
        return add(free_part, self.tail)

    def __repr__(self) -> str:
        return (
            f"Decomposition(scale={self.scale}, rational={self.rational}, "
            f"tail={canonical_elem_str(self.tail)}, support={sorted(self.support)})"
        )


def decompose(g: GroupElement) -> Decomposition:
    """Split a reduced-group element into its free part against a punctured basis plus a torsion tail."""
    G = g.group
    if not G.is_reduced:
        raise UnsupportedCaseError("decompose is defined on reduced groups only")
    if is_torsion(g):
        support = frozenset(g._overrides)
        return Decomposition(0, Fraction(0), g, support)
    scale = c_of(g)
    rational = g.rational / scale
    support = set(g._overrides) | _finite_positive_chi_divisors(G, g.rational.numerator)
    tail = _build(G, Fraction(0), {p: coordinate_residue(g, p) for p in support})
    return Decomposition(scale, rational, tail, frozenset(support))


# ---------------------------------------------------------------------------
# textual grammar


def _frac_str(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def canonical_elem_str(g: GroupElement) -> str:
    if g.group.is_reduced:
        head = f"r={_frac_str(g.rational)}"
        if not g._overrides:
            return head
        body = ",".join(f"{p}:{a}" for p, a in sorted(g._overrides.items()))
        return f"{head};{body}"
    q, b = g.as_pair()
    return f"q={_frac_str(q)};b={b}"


def _scan_fraction(text: str, pos: int) -> tuple[Fraction, int]:
    num, pos = _scan_int(text, pos)
    if pos < len(text) and text[pos] == "/":
        den_pos = pos + 1
        den, pos = _scan_uint(text, den_pos)
        if den == 0:
            raise ParseError(text, den_pos, "a nonzero denominator")
        return Fraction(num, den), pos
    return Fraction(num), pos


def _parse_element(G: Qd1Group, text: str) -> GroupElement:
    chi = G.cochar
    if G.is_reduced:
        pos = _expect(text, 0, "r=")
        value_pos = pos
        rational, pos = _scan_fraction(text, pos)
        ov: dict[int, int] = {}
        if pos < len(text):
            pos = _expect(text, pos, ";")
            while True:
                key_pos = pos
                p, pos = _scan_uint(text, key_pos)
                k = chi.value(p) if is_prime(p) else 0
                if not is_prime(p) or not isinstance(k, int) or k == 0:
                    raise ParseError(text, key_pos, "a prime with a finite torsion coordinate")
                if p in ov:
                    raise ParseError(text, key_pos, "a prime not listed before")
                pos = _expect(text, pos, ":")
                res_pos = pos
                a, pos = _scan_uint(text, res_pos)
                if a >= p**k:
                    raise ParseError(text, res_pos, f"a residue below {p}**{k}")
                ov[p] = a
                if pos == len(text):
                    break
                pos = _expect(text, pos, ",")
        try:
            return G.elem(rational, ov)
        except InvalidDenominatorError as exc:
            raise ParseError(text, value_pos, f"a valid denominator ({exc})") from exc
    pos = _expect(text, 0, "q=")
    rational, pos = _scan_fraction(text, pos)
    pos = _expect(text, pos, ";b=")
    res_pos = pos
    b, pos = _scan_uint(text, res_pos)
    if pos != len(text):
        raise ParseError(text, pos, "end of input")
    bound = G.modulus if G.modulus else 1
    if b >= bound:
        raise ParseError(text, res_pos, f"a residue below {bound}")
    return G.elem_qb(rational, b)
