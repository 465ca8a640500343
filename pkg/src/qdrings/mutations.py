"""Deliberately broken variants proving the checkers can detect real bugs.

Each mutant models one defect class the verification layer exists to catch:
a descriptor whose height floor was silently lowered, a product rule that
forgets the defining element, and a witness path that skips the final
recomputation together with the off-by-one slip that recomputation would
have caught.  Feeding these to the oracle checks must produce failures;
the sensitivity test asserts exactly that.
"""

from __future__ import annotations

from .foundations import Characteristic, _Infinity
from .group import GroupElement, _build, coordinate_residue
from .ring import Multiplication, PrincipalWitness, certify_member
from .subgroup import DescriptorKind, SubgroupDescriptor, full_inv, plus_cyclic, torsion_inv

__all__ = ["certifier_skipping_verification", "lowered_eta", "product_dropping_m"]


def lowered_eta(d: SubgroupDescriptor, p: int = 2) -> SubgroupDescriptor:
    """The descriptor with its height floor dropped by one at a single prime."""
    v = d.eta.value(p)
    chi_p = d.group.cochar.value(p)
    if isinstance(v, _Infinity):
        new = chi_p - 1 if isinstance(chi_p, int) and chi_p > 0 else 0
    else:
        new = max(0, v - 1)
    exceptions = dict(d.eta.exception_items())
    exceptions[p] = new
    eta = Characteristic(d.eta.default, exceptions)
    if d.kind is DescriptorKind.FULL:
        return full_inv(d.group, eta)
    if d.kind is DescriptorKind.TORSION:
        return torsion_inv(d.group, eta)
    return plus_cyclic(torsion_inv(d.group, eta), d.generator)


def product_dropping_m(mult: Multiplication, g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Coordinatewise product that forgets the defining element entirely."""
    G = mult.group
    chi = G.cochar
    ov = {}
    for p in g1.overrides.keys() | g2.overrides.keys():
        ov[p] = coordinate_residue(g1, p) * coordinate_residue(g2, p) % p ** chi.value(p)
    return _build(G, g1.rational * g2.rational, ov)


def make_mult_dropping_m(G, m) -> Multiplication:
    """Companion factory for the dropped-factor product; the object itself is untouched."""
    return Multiplication(G, m)


def certifier_skipping_verification(mult: Multiplication, g: GroupElement, b: GroupElement):
    """Witness path with the final recomputation removed and the slip it guarded against."""
    witness = certify_member(mult, g, b)
    if witness is None:
        return None
    return PrincipalWitness(witness.y, witness.k + 1)
