"""Symbolic subgroup descriptors with exact membership and equality.

Three shapes cover every subgroup the ideal machinery produces: the
height-floor subgroup of all elements whose characteristic dominates a given
one, its torsion analogue (one cyclic slot per prime, shifted by the floor),
and a torsion part plus a single cyclic summand.  Descriptors are normalized
at construction, which makes equality a finite structural comparison in
every case.
"""

from __future__ import annotations

import enum
import math

from .errors import GroupMismatchError, ParseError, UnsupportedCaseError
from .foundations import (
    INF,
    Characteristic,
    _expect,
    _Infinity,
    char_geq,
    meet,
)
from .group import (
    GroupElement,
    Qd1Group,
    _build,
    _rational_residue,
    add,
    canonical_elem_str,
    char_of,
    is_integers,
    is_torsion,
    neg,
    order,
    zmul,
)

__all__ = [
    "DescriptorKind",
    "SubgroupDescriptor",
    "contains",
    "descriptor_str",
    "equals",
    "full_inv",
    "parse_descriptor",
    "plus_cyclic",
    "torsion_inv",
]


class DescriptorKind(enum.Enum):
    FULL = "G"
    TORSION = "T"
    SUM = "T+Z"


class SubgroupDescriptor:
    """A normalized descriptor; build through full_inv, torsion_inv, or plus_cyclic."""

    __slots__ = ("_group", "_kind", "_eta", "_generator")

    def __init__(
        self,
        group: Qd1Group,
        kind: DescriptorKind,
        eta: Characteristic,
        generator: GroupElement | None = None,
    ):
        self._group = group
        self._kind = kind
        self._eta = eta
        self._generator = generator

    @property
    def group(self) -> Qd1Group:
        return self._group

    @property
    def kind(self) -> DescriptorKind:
        return self._kind

    @property
    def eta(self) -> Characteristic:
        return self._eta

    @property
    def generator(self) -> GroupElement | None:
        return self._generator

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupDescriptor):
            return NotImplemented
        return equals(self, other)

    __hash__ = None  # semantic equality is not hash-compatible

    def __str__(self) -> str:
        return descriptor_str(self)

    def __repr__(self) -> str:
        return f"<{descriptor_str(self)} in {self._group}>"


# ---------------------------------------------------------------------------
# normalization

# Heights at a prime with cocharacteristic value k live in {0, ..., k-1, inf}
# for finite k, in {0, 1, 2, ...} ∪ {inf-only-for-torsion} when k is inf, and
# are always inf when k = 0.  Floors are rewritten accordingly.


def _normalize_torsion_eta(G: Qd1Group, eta: Characteristic) -> Characteristic:
    chi = G.cochar

    def rule(k, v):
        if not isinstance(k, int) or k == 0:
            return INF  # no torsion slot at this prime
        return v if isinstance(v, int) and v < k else INF

    default = rule(chi.default, eta.default)
    primes = set(chi.exception_primes) | set(eta.exception_primes)
    return Characteristic(default, {p: rule(chi.value(p), eta.value(p)) for p in primes})


def _normalize_full_eta(G: Qd1Group, eta: Characteristic) -> tuple[Characteristic, bool]:
    """Cap the floor against the cocharacteristic; report whether only torsion can satisfy it."""
    chi = G.cochar

    def rule(k, v):
        if k == 0:
            return INF  # every element has infinite height here
        if isinstance(k, int):
            return v if isinstance(v, int) and v < k else INF
        return v  # divisible prime: finite floors all occur

    default = rule(chi.default, eta.default)
    primes = set(chi.exception_primes) | set(eta.exception_primes)
    norm = Characteristic(default, {p: rule(chi.value(p), eta.value(p)) for p in primes})

    # A nontorsion element has height 0 at all but finitely many primes of
    # nonzero cocharacteristic, and finite height at every divisible prime.
    def ge1(v):
        return isinstance(v, _Infinity) or v >= 1

    collapsed = chi.default != 0 and ge1(norm.default)
    if not collapsed:
        for p in set(chi.exception_primes) | set(norm.exception_primes):
            if isinstance(chi.value(p), _Infinity) and isinstance(norm.value(p), _Infinity):
                collapsed = True
                break
    return norm, collapsed


def full_inv(G: Qd1Group, eta: Characteristic) -> SubgroupDescriptor:
    """Descriptor of all elements whose characteristic dominates eta pointwise."""
    norm, collapsed = _normalize_full_eta(G, eta)
    if collapsed:
        return torsion_inv(G, norm)
    return SubgroupDescriptor(G, DescriptorKind.FULL, norm)


def torsion_inv(G: Qd1Group, eta: Characteristic) -> SubgroupDescriptor:
    """Descriptor of the direct sum over primes of the eta-shifted torsion components."""
    return SubgroupDescriptor(G, DescriptorKind.TORSION, _normalize_torsion_eta(G, eta))


def plus_cyclic(d: SubgroupDescriptor, g: GroupElement) -> SubgroupDescriptor:
    """The descriptor of d plus all integer multiples of g."""
    if d.kind is not DescriptorKind.TORSION:
        raise UnsupportedCaseError("plus_cyclic extends a torsion descriptor")
    if d.group != g.group:
        raise GroupMismatchError("generator belongs to a different group")
    if contains(d, g):
        return d
    return SubgroupDescriptor(d.group, DescriptorKind.SUM, d.eta, _canonical_generator(d.eta, g))


def _canonical_generator(eta: Characteristic, g: GroupElement) -> GroupElement:
    """Reduce g modulo the torsion part and normalize the sign of the rational."""
    if g.rational < 0:
        g = neg(g)
    chi = g.group.cochar
    ov = g.overrides
    for p in list(ov):
        v = eta.value(p)
        if isinstance(v, _Infinity):
            continue
        reduced = ov[p] % p**v
        # prefer the coordinate implied by the rational when the two agree
        if (
            g.group.is_reduced
            and g.rational.denominator % p != 0
            and _rational_residue(g.rational, p, p ** chi.value(p)) % p**v == reduced
        ):
            del ov[p]
        else:
            ov[p] = reduced
    return _build(g.group, g.rational, ov)


# ---------------------------------------------------------------------------
# membership


def _same_group_dx(d: SubgroupDescriptor, x: GroupElement) -> None:
    if d.group != x.group:
        raise GroupMismatchError("element belongs to a different group")


def contains(d: SubgroupDescriptor, x: GroupElement) -> bool:
    """Exact membership for any descriptor variant."""
    _same_group_dx(d, x)
    if d.kind is DescriptorKind.FULL:
        return char_geq(char_of(x), d.eta)
    if d.kind is DescriptorKind.TORSION:
        return is_torsion(x) and char_geq(char_of(x), d.eta)
    g = d.generator
    torsion_part = SubgroupDescriptor(d.group, DescriptorKind.TORSION, d.eta)
    if is_torsion(x):
        if contains(torsion_part, x):
            return True
        if is_torsion(g):
            return any(
                contains(torsion_part, add(x, zmul(-k, g))) for k in range(1, order(g))
            )
        return False
    if is_torsion(g):
        return False
    ratio = x.rational / g.rational
    if ratio.denominator != 1:
        return False
    return contains(torsion_part, add(x, zmul(-int(ratio), g)))


# ---------------------------------------------------------------------------
# equality

# Every variant pair is decidable:
#   * same-variant descriptors compare by normalized data (injectivity comes
#     from explicit separating elements);
#   * a non-collapsed height-floor descriptor always has a nontorsion member,
#     so it never equals a torsion descriptor;
#   * a sum whose generator is torsion collapses, one cyclic slot at a time,
#     to a torsion descriptor with the pointwise-minimum floor;
#   * rational coefficients of sum members form one cyclic subgroup of Q,
#     while a height-floor subgroup has unbounded denominators at any prime
#     of finite cocharacteristic value, so the two can only coincide in the
#     integers-like group, where both are explicit multiples of the basis.


def _eq_form(d: SubgroupDescriptor) -> SubgroupDescriptor:
    if d.kind is DescriptorKind.SUM and is_torsion(d.generator):
        return torsion_inv(d.group, meet(d.eta, char_of(d.generator)))
    return d


def _eta_index(eta: Characteristic) -> int:
    # finite product of p**eta(p); valid once eta has default 0 and finite values
    return math.prod(p**v for p, v in eta.exception_items())


def equals(d1: SubgroupDescriptor, d2: SubgroupDescriptor) -> bool:
    """Exact set equality of two descriptors over the same group."""
    if d1.group != d2.group:
        raise GroupMismatchError("descriptors belong to different groups")
    a, b = _eq_form(d1), _eq_form(d2)
    if a.kind is b.kind:
        if a.kind is DescriptorKind.SUM:
            return a.eta == b.eta and a.generator == b.generator
        return a.eta == b.eta
    kinds = {a.kind, b.kind}
    if kinds == {DescriptorKind.FULL, DescriptorKind.TORSION}:
        return False
    if kinds == {DescriptorKind.SUM, DescriptorKind.TORSION}:
        return False
    summ, full = (a, b) if a.kind is DescriptorKind.SUM else (b, a)
    if not is_integers(summ.group):
        return False
    return abs(summ.generator.rational) == _eta_index(full.eta)


# ---------------------------------------------------------------------------
# textual grammar


def descriptor_str(d: SubgroupDescriptor) -> str:
    if d.kind is DescriptorKind.FULL:
        return f"G(eta={d.eta.canonical_str()})"
    if d.kind is DescriptorKind.TORSION:
        return f"T(eta={d.eta.canonical_str()})"
    return f"T(eta={d.eta.canonical_str()})+Z*{canonical_elem_str(d.generator)}"


def parse_descriptor(text: str, G: Qd1Group) -> SubgroupDescriptor:
    if text.startswith("G(eta="):
        inner, end = _scan_to_close(text, len("G(eta="))
        if end != len(text):
            raise ParseError(text, end, "end of input")
        return full_inv(G, _parse_eta(text, len("G(eta="), inner))
    pos = _expect(text, 0, "T(eta=")
    inner, end = _scan_to_close(text, pos)
    eta = _parse_eta(text, pos, inner)
    if end == len(text):
        return torsion_inv(G, eta)
    end = _expect(text, end, "+Z*")
    try:
        g = G.parse_elem(text[end:])
    except ParseError as exc:
        raise ParseError(text, end + exc.pos, exc.expected) from exc
    return plus_cyclic(torsion_inv(G, eta), g)


def _scan_to_close(text: str, pos: int) -> tuple[str, int]:
    close = text.find(")", pos)
    if close < 0:
        raise ParseError(text, len(text), "')'")
    return text[pos:close], close + 1


def _parse_eta(text: str, offset: int, inner: str) -> Characteristic:
    try:
        return Characteristic.parse(inner)
    except ParseError as exc:
        raise ParseError(text, offset + exc.pos, exc.expected) from exc
