"""Ring structures on a rank-1 quotient divisible group.

A multiplication is determined by the square of the basis element, and the
induced product acts coordinatewise: rational coefficients multiply, torsion
coordinates multiply modulo their slot.  On top of the product sit closed
forms for principal ideals and principal absolute ideals, constructive
membership witnesses that are recomputed before being returned, and the
classification of the rings whose ideals are all absolute (equivalently all
fully invariant).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    GroupMismatchError,
    NotAMemberError,
    RingIsAIError,
    UnsupportedCaseError,
)
from .foundations import (
    INF,
    Characteristic,
    _Infinity,
    bezout,
    crt,
    iter_primes,
    mod_inverse,
    vp,
)
from .group import (
    GroupElement,
    Qd1Group,
    _build,
    _finite_positive_chi_divisors,
    add,
    c_of,
    char_of,
    coordinate_residue,
    is_integers,
    is_torsion,
    order,
    zmul,
)
from .subgroup import (
    SubgroupDescriptor,
    contains,
    equals,
    full_inv,
    plus_cyclic,
    torsion_inv,
)

__all__ = [
    "Multiplication",
    "NonAbsoluteWitness",
    "PrincipalWitness",
    "certify_member",
    "element_of_mult",
    "is_ai_ring",
    "is_fi_ring",
    "is_nai",
    "make_mult",
    "multiply",
    "non_absolute_ideal_witness",
    "principal_absolute_ideal",
    "principal_ideal",
    "solve_in_principal",
    "torsion_witness",
]


class Multiplication:
    """A ring structure on its group, pinned down by the square of the basis element."""

    __slots__ = ("_group", "_m")

    def __init__(self, group: Qd1Group, m_elt: GroupElement):
        if m_elt.group != group:
            raise GroupMismatchError("defining element belongs to a different group")
        self._group = group
        self._m = m_elt

    @property
    def group(self) -> Qd1Group:
        return self._group

    @property
    def m_elt(self) -> GroupElement:
        return self._m

    def product(self, g1: GroupElement, g2: GroupElement) -> GroupElement:
        return multiply(self, g1, g2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiplication):
            return NotImplemented
        return self._group == other._group and self._m == other._m

    def __hash__(self) -> int:
        return hash((self._group, self._m))

    def __repr__(self) -> str:
        return f"<multiplication m={self._m} on {self._group}>"


@dataclass(frozen=True)
class PrincipalWitness:
    """Certificate that b = g x y + k*g inside the ideal generated by g."""

    y: GroupElement
    k: int

    def __str__(self) -> str:
        return f"y={self.y};k={self.k}"


@dataclass(frozen=True)
class NonAbsoluteWitness:
    """Certificate that a ring has an ideal that is not an absolute ideal.

    The principal ideal of e0 is exactly its cyclic group, while the violator
    shares the characteristic of e0 without being one of its multiples.
    """

    e0: GroupElement
    p: int
    violator: GroupElement

    def __str__(self) -> str:
        return f"e0={self.e0};p={self.p};x={self.violator}"


def make_mult(G: Qd1Group, m: GroupElement) -> Multiplication:
    return Multiplication(G, m)


def element_of_mult(mult: Multiplication) -> GroupElement:
    """Round-trip inverse of make_mult."""
    return mult.m_elt


def is_nai(mult: Multiplication) -> bool:
    """Whether the defining element is torsion; the torsion part of the multiplication group."""
    return is_torsion(mult.m_elt)


def multiply(mult: Multiplication, g1: GroupElement, g2: GroupElement) -> GroupElement:
    """The ring product: coordinatewise, weighted by the square of the basis element."""
    G = mult.group
    if g1.group != G or g2.group != G:
        raise GroupMismatchError("factors belong to a different group")
    m = mult.m_elt
    chi = G.cochar
    ov = {}
    for p in g1.overrides.keys() | g2.overrides.keys() | m.overrides.keys():
        q = p ** chi.value(p)
        ov[p] = (
            coordinate_residue(g1, p) * coordinate_residue(g2, p) * coordinate_residue(m, p) % q
        )
    return _build(G, g1.rational * g2.rational * m.rational, ov)


def is_ai_ring(mult: Multiplication) -> bool:
    """Whether every ideal of the ring is an absolute ideal of the group."""
    return is_integers(mult.group) or not is_torsion(mult.m_elt)


def is_fi_ring(mult: Multiplication) -> bool:
    """Whether every ideal is a fully invariant subgroup; coincides with is_ai_ring."""
    return is_ai_ring(mult)


def principal_ideal(mult: Multiplication, g: GroupElement) -> SubgroupDescriptor:
    """The ideal generated by g, in closed form.

    Torsion generators give the torsion descriptor of their characteristic;
    otherwise the outcome splits on whether all products are torsion, which
    happens exactly when the basis square is.
    """
    G = mult.group
    if g.group != G:
        raise GroupMismatchError("generator belongs to a different group")
    if is_torsion(g):
        return torsion_inv(G, char_of(g))
    if not is_torsion(mult.m_elt):
        return full_inv(G, char_of(g))
    g_times_e = multiply(mult, g, G.basis_element())
    return plus_cyclic(torsion_inv(G, char_of(g_times_e)), g)


def principal_absolute_ideal(g: GroupElement) -> SubgroupDescriptor:
    """The smallest subgroup containing g that is an ideal in every ring on the group."""
    G = g.group
    if is_torsion(g):
        return torsion_inv(G, char_of(g))
    return full_inv(G, char_of(g))


# ---------------------------------------------------------------------------
# constructive witnesses


def torsion_witness(g: GroupElement, u: GroupElement) -> int:
    """An integer n with n*g = u, for torsion g and u in the torsion descriptor of char g.

    Built one prime at a time: the coordinate of g is a unit times a prime
    power, so inverting the unit modulo the remaining slot pins n down there;
    the congruences combine by the Chinese remainder theorem and the result
    is verified by recomputation.
    """
    if not is_torsion(g):
        raise UnsupportedCaseError("torsion_witness needs a torsion base element")
    G = g.group
    if u.group != G:
        raise GroupMismatchError("target belongs to a different group")
    if not contains(torsion_inv(G, char_of(g)), u):
        raise NotAMemberError(f"{u} is not an integer multiple of {g}")
    if u == G.zero():
        return int(order(g))
    chi = G.cochar
    congruences = []
    for p, a in g.overrides.items():
        if a == 0:
            continue
        k = vp(a, p)
        modulus = p ** (chi.value(p) - k)
        unit = a // p**k
        c = coordinate_residue(u, p) // p**k
        congruences.append((c * mod_inverse(unit, modulus) % modulus, modulus))
    n, _ = crt(congruences)
    if zmul(n, g) != u:
        raise ArithmeticError("torsion witness failed recomputation")
    return n


def _tail(g: GroupElement, support: set[int]) -> GroupElement:
    """The torsion part of g supported on the given primes."""
    return _build(g.group, Fraction(0), {p: coordinate_residue(g, p) for p in support})


def solve_in_principal(mult: Multiplication, g: GroupElement, b: GroupElement) -> PrincipalWitness | None:
    """A witness b = g x y + k*g when b lies in the ideal of a non-torsion g, or None.

    Requires a non-torsion generator and a non-torsion basis square.  The
    construction works over a finite support holding every torsion override
    and every finite-slot prime of the rational coefficients: there the
    problem splits into a Bezout equation for the free part and an integer
    multiple for the tail.  The witness is recomputed before being returned.
    """
    G = mult.group
    if g.group != G or b.group != G:
        raise GroupMismatchError("arguments belong to a different group")
    m = mult.m_elt
    if is_torsion(g) or is_torsion(m):
        raise UnsupportedCaseError(
            "solve_in_principal needs a non-torsion generator and a non-torsion basis square"
        )
    if not contains(full_inv(G, char_of(g)), b):
        return None

    support = set(g.overrides) | set(m.overrides) | set(b.overrides)
    support |= _finite_positive_chi_divisors(G, g.rational.numerator)
    support |= _finite_positive_chi_divisors(G, m.rational.numerator)

    scale_g = c_of(g)
    scale_m = c_of(m)
    r_frac = g.rational / scale_g  # primes confined to the support and the free primes
    m_frac = m.rational / scale_m
    s_frac = b.rational / scale_g

    tail_g = _tail(g, support)
    tail_b = _tail(b, support)
    n = int(order(tail_g))
    w = torsion_witness(tail_g, tail_b)

    combined = s_frac - w * r_frac
    k1, k2 = combined.numerator, combined.denominator
    x0, y0, gcd = bezout(scale_m, n * r_frac.numerator * k2)
    if gcd != 1:
        raise ArithmeticError("support primes leaked into the Bezout step")
    x, y = x0 * k1, y0 * k1
    z = Fraction(
        r_frac.denominator * m_frac.denominator * x,
        r_frac.numerator * m_frac.numerator * k2,
    )
    y_elt = G.elem(z, {p: 0 for p in support})
    k = n * y * r_frac.denominator + w
    if add(multiply(mult, g, y_elt), zmul(k, g)) != b:
        raise ArithmeticError("principal witness failed recomputation")
    return PrincipalWitness(y_elt, k)


def certify_member(mult: Multiplication, g: GroupElement, b: GroupElement) -> PrincipalWitness | None:
    """A recomputable witness that b lies in the ideal generated by g, or None.

    Dispatches on the generator and the basis square: torsion generators
    reduce to an integer multiple, non-torsion ones either to the full
    construction or to a multiple of the generator plus a multiple of its
    product with the basis.
    """
    G = mult.group
    if g.group != G or b.group != G:
        raise GroupMismatchError("arguments belong to a different group")
    if is_torsion(g):
        if not is_torsion(b):
            return None
        try:
            n = torsion_witness(g, b)
        except NotAMemberError:
            return None
        return PrincipalWitness(G.zero(), n)
    if not is_torsion(mult.m_elt):
        return solve_in_principal(mult, g, b)
    # all products are torsion: members are k*g plus a multiple of g x e
    if is_torsion(b):
        k = 0
    else:
        ratio = b.rational / g.rational
        if ratio.denominator != 1:
            return None
        k = int(ratio)
    t = add(b, zmul(-k, g))
    g_times_e = multiply(mult, g, G.basis_element())
    if g_times_e == G.zero():
        if t != G.zero():
            return None
        y = G.zero()
    else:
        try:
            n = torsion_witness(g_times_e, t)
        except NotAMemberError:
            return None
        y = zmul(n, G.basis_element())
    if add(multiply(mult, g, y), zmul(k, g)) != b:
        raise ArithmeticError("membership witness failed recomputation")
    return PrincipalWitness(y, k)


def _smallest_finite_cochar_prime(G: Qd1Group) -> int:
    chi = G.cochar
    if isinstance(chi.default, _Infinity):
        finite = [p for p, v in chi.exception_items() if isinstance(v, int)]
        if not finite:
            raise RingIsAIError("the cocharacteristic is everywhere infinite")
        return min(finite)
    for p in iter_primes():
        if not isinstance(chi.value(p), _Infinity):
            return p
    raise AssertionError("unreachable")


def non_absolute_ideal_witness(mult: Multiplication) -> NonAbsoluteWitness:
    """For a ring that is not an AI-ring, a verified ideal that is not absolute.

    Chooses the smallest usable prime and the minimal support containing the
    basis square, zeroes the basis there, and exhibits its p-th fraction as an
    element of the matching absolute ideal outside the cyclic principal ideal.
    All three defining facts are checked before the witness is returned.
    """
    if is_ai_ring(mult):
        raise RingIsAIError("every ideal of this ring is an absolute ideal")
    G = mult.group
    chi = G.cochar
    m = mult.m_elt
    if G.is_reduced:
        part = {p for p, a in m.overrides.items() if a != 0}
        if not part:
            part = {_smallest_finite_cochar_prime(G)}
        p = min(part)
        ov = {q: 0 for q in part if isinstance(chi.value(q), int) and chi.value(q) > 0}
        e0 = G.elem(1, ov)
        violator = G.elem(Fraction(1, p), ov)
    else:
        e0 = G.elem_qb(1, 0)
        p = 2
        violator = G.elem_qb(Fraction(1, 2), 0)

    cyclic = plus_cyclic(torsion_inv(G, Characteristic(INF)), e0)
    if not equals(principal_ideal(mult, e0), cyclic):
        raise ArithmeticError("witness ideal is not the cyclic group of e0")
    if not contains(full_inv(G, char_of(e0)), violator):
        raise ArithmeticError("violator left the absolute ideal of e0")
    if contains(cyclic, violator):
        raise ArithmeticError("violator is a multiple of e0")
    return NonAbsoluteWitness(e0, p, violator)
