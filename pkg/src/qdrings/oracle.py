"""Independent brute-force checkers certifying the closed-form code paths.

The checkers here never call the closed forms they are judging: the height
oracle decides divisibility by solving one congruence per coordinate, and the
ideal checks accept nothing without a witness identity that is recomputed
from raw element arithmetic.  Everything is a deterministic function of the
configured seed and the check inputs.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidDenominatorError
from .foundations import INF, Characteristic, _Infinity, is_zero_type, mod_inverse, primes_up_to
from .group import (
    GroupElement,
    Qd1Group,
    add,
    build_group,
    canonical_elem_str,
    coordinate_residue,
    zmul,
)
from .ring import Multiplication, certify_member, element_of_mult, make_mult, multiply
from .subgroup import DescriptorKind, SubgroupDescriptor, contains, descriptor_str

__all__ = [
    "CheckReport",
    "TrialConfig",
    "exact_divide",
    "height_oracle",
    "heights_agree",
    "ideal_two_way_check",
    "random_characteristic",
    "random_element",
    "random_group",
    "ring_axiom_check",
    "sample_member",
]

_MAX_ORACLE_BOUND = 12


@dataclass(frozen=True)
class TrialConfig:
    """Bounds and seeding for randomized sweeps."""

    seed: int
    trials: int = 100
    max_prime: int = 13
    max_exp: int = 4
    samples_per_instance: int = 20

    def __post_init__(self):
        if self.trials < 1 or self.max_exp < 1 or self.samples_per_instance < 1:
            raise ValueError("trials, max_exp and samples_per_instance must be positive")
        if self.max_prime < 5:
            raise ValueError("max_prime must be at least 5 so divisible and finite primes coexist")

    def rng(self, *path) -> random.Random:
        """An independent stream derived from the seed and a stable label path."""
        label = ":".join([str(self.seed), *map(str, path)])
        digest = hashlib.sha256(label.encode()).digest()
        return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class CheckReport:
    """Line-oriented outcome of one named check."""

    name: str
    trials: int = 0
    failures: list[str] = field(default_factory=list)
    fail_index: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, index: int, detail: str) -> None:
        if self.fail_index is None:
            self.fail_index = index
        self.failures.append(detail)

    def line(self) -> str:
        if self.passed:
            return f"PASS {self.name} trials={self.trials}"
        return (
            f"FAIL {self.name} trials={self.trials} fail_at={self.fail_index} "
            f"detail={self.failures[0]}"
        )

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "fail_at": self.fail_index,
            "failures": self.failures[:5],
        }


# ---------------------------------------------------------------------------
# heights by iterated division


def exact_divide(g: GroupElement, p: int) -> GroupElement | None:
    """Solve p*y = g coordinate by coordinate; None when no solution exists.

    The rational coefficient divides exactly; at primes other than p the
    coordinate congruence is solved with an inverse, and at p itself the
    residue must shed one factor of p.  The candidate is revalidated and the
    product is recomputed before it is returned.
    """
    G = g.group
    chi = G.cochar
    keys = set(g.overrides)
    if isinstance(chi.value(p), int) and chi.value(p) > 0:
        keys.add(p)
    ov = {}
    for q in keys:
        modulus = q ** chi.value(q)
        a = coordinate_residue(g, q)
        if q != p:
            ov[q] = a * mod_inverse(p % modulus, modulus) % modulus
        elif a == 0:
            ov[q] = 0
        elif a % p == 0:
            ov[q] = a // p
        else:
            return None
    try:
        y = G.elem(g.rational / p, ov)
    except InvalidDenominatorError:
        return None
    if zmul(p, y) != g:
        raise ArithmeticError("division candidate failed recomputation")
    return y


def height_oracle(g: GroupElement, p: int, bound: int) -> int:
    """min(height, bound) by repeatedly dividing by p; bound is capped at 12."""
    if not 0 <= bound <= _MAX_ORACLE_BOUND:
        raise ValueError(f"bound must lie in [0, {_MAX_ORACLE_BOUND}]")
    k = 0
    x = g
    while k < bound:
        y = exact_divide(x, p)
        if y is None:
            break
        x = y
        k += 1
    return k


def heights_agree(closed: int | _Infinity, oracle_value: int, bound: int) -> bool:
    """Agreement of an exact height with a bound-capped oracle measurement."""
    if isinstance(closed, _Infinity) or closed >= bound:
        return oracle_value == bound
    return closed == oracle_value


# ---------------------------------------------------------------------------
# seeded generators


def random_characteristic(rng: random.Random, cfg: TrialConfig, *, force_default=None) -> Characteristic:
    if force_default is None:
        default = rng.choice([0, rng.randint(1, cfg.max_exp), INF])
    else:
        default = force_default
    exceptions = {}
    for p in primes_up_to(cfg.max_prime):
        if rng.random() < 0.5:
            exceptions[p] = rng.choice([0, rng.randint(1, cfg.max_exp), INF])
    return Characteristic(default, exceptions)


def random_group(
    rng: random.Random,
    cfg: TrialConfig,
    *,
    reduced: bool | None = None,
    with_torsion: bool = False,
    force_default=None,
) -> Qd1Group:
    """A random group, optionally constrained to a kind or to visible torsion."""
    for _ in range(200):
        chi = random_characteristic(rng, cfg, force_default=force_default)
        if reduced is not None and is_zero_type(chi) == reduced:
            continue
        if with_torsion and not _torsion_slots(build_group(chi), cfg):
            continue
        return build_group(chi)
    fallback = Characteristic(0 if reduced is False else INF, {2: 2, 3: 1})
    return build_group(fallback)


def _torsion_slots(G: Qd1Group, cfg: TrialConfig) -> list[int]:
    chi = G.cochar
    out = []
    for p in sorted(set(primes_up_to(cfg.max_prime)) | set(chi.exception_primes)):
        v = chi.value(p)
        if isinstance(v, int) and v > 0:
            out.append(p)
    return out


def random_element(
    G: Qd1Group, rng: random.Random, cfg: TrialConfig, *, torsion: bool = False
) -> GroupElement:
    chi = G.cochar
    ov = {}
    den = 1
    for p in _torsion_slots(G, cfg):
        if rng.random() < 0.45:
            ov[p] = rng.randrange(p ** chi.value(p))
            if not torsion and rng.random() < 0.3:
                den *= p
    if torsion:
        return G.elem(0, ov)
    for p in primes_up_to(cfg.max_prime):
        if chi.value(p) == 0 and rng.random() < 0.25:
            den *= p
    num = rng.choice([n for n in range(-40, 41) if n])
    for p in primes_up_to(cfg.max_prime):
        if isinstance(chi.value(p), _Infinity) and rng.random() < 0.3:
            num *= p ** rng.randint(1, cfg.max_exp)
    return G.elem(Fraction(num, den), ov)


def random_nonzero_torsion(G: Qd1Group, rng: random.Random, cfg: TrialConfig) -> GroupElement:
    """A torsion element that is not zero; the group must have a usable torsion slot."""
    slots = _torsion_slots(G, cfg)
    if not slots:
        raise ValueError("group has no torsion slot below the prime bound")
    for _ in range(100):
        g = random_element(G, rng, cfg, torsion=True)
        if g != G.zero():
            return g
    p = slots[0]
    return G.elem(0, {p: 1})


def sample_member(d: SubgroupDescriptor, rng: random.Random, cfg: TrialConfig) -> GroupElement:
    """A member of the described subgroup, generated from the floor rather than by rejection."""
    if d.kind is DescriptorKind.TORSION:
        return _torsion_member(d.group, d.eta, rng, cfg)
    if d.kind is DescriptorKind.SUM:
        k = rng.randint(-6, 6)
        t = _torsion_member(d.group, d.eta, rng, cfg)
        x = add(zmul(k, d.generator), t)
    else:
        x = _full_member(d.group, d.eta, rng, cfg)
    if not contains(d, x):
        raise ArithmeticError(f"member generator left {descriptor_str(d)}: {x}")
    return x


def _torsion_member(G: Qd1Group, eta: Characteristic, rng, cfg) -> GroupElement:
    chi = G.cochar
    ov = {}
    for p in sorted(
        set(primes_up_to(cfg.max_prime)) | set(chi.exception_primes) | set(eta.exception_primes)
    ):
        k, v = chi.value(p), eta.value(p)
        if not isinstance(k, int) or k == 0 or not isinstance(v, int) or v >= k:
            continue  # empty slot under the floor
        if rng.random() < 0.6:
            ov[p] = p**v * rng.randrange(p ** (k - v)) % p**k
    return G.elem(0, ov)


def _full_member(G: Qd1Group, eta: Characteristic, rng, cfg) -> GroupElement:
    chi = G.cochar
    if rng.random() < 0.2:
        # torsion members satisfy any floor they meet on the torsion slots
        return _torsion_member(G, _restrict_to_torsion(G, eta), rng, cfg)
    rho = Fraction(rng.choice([n for n in range(1, 30)]) * rng.choice([1, -1]))
    forced: dict[int, int] = {}
    relevant = sorted(
        set(primes_up_to(cfg.max_prime)) | set(chi.exception_primes) | set(eta.exception_primes)
    )
    for p in relevant:
        k, v = chi.value(p), eta.value(p)
        if isinstance(k, _Infinity):
            if isinstance(v, int) and v > 0:
                rho *= p ** (v + rng.choice([0, 0, 1]))
        elif k > 0:
            if isinstance(v, _Infinity):
                forced[p] = 0
            elif v > 0:
                forced[p] = p**v * rng.randrange(p ** (k - v)) % p**k
            elif rng.random() < 0.3:
                forced[p] = rng.randrange(p**k)
    den = 1
    for p in primes_up_to(cfg.max_prime):
        k = chi.value(p)
        if k == 0 and rng.random() < 0.25:
            den *= p
        elif p in forced and rng.random() < 0.25:
            den *= p
    return G.elem(rho / den, forced)


def _restrict_to_torsion(G: Qd1Group, eta: Characteristic) -> Characteristic:
    from .subgroup import _normalize_torsion_eta

    return _normalize_torsion_eta(G, eta)


# ---------------------------------------------------------------------------
# two-way ideal certification


def _input_digest(*parts) -> str:
    return hashlib.sha256("|".join(map(str, parts)).encode()).hexdigest()[:12]


def ideal_two_way_check(
    mult: Multiplication,
    g: GroupElement,
    d: SubgroupDescriptor,
    cfg: TrialConfig,
    certifier=None,
) -> CheckReport:
    """Sample both inclusions between the ideal of g and the descriptor d.

    Products of g land in d; members of d come back with a witness whose
    defining identity is recomputed here, independently of how the witness
    was produced.
    """
    certifier = certifier or certify_member
    G = mult.group
    rng = cfg.rng("ideal", _input_digest(G.cochar, element_of_mult(mult), g))
    report = CheckReport("ideal-two-way")
    for i in range(cfg.samples_per_instance):
        x = random_element(G, rng, cfg, torsion=rng.random() < 0.3)
        k = rng.randint(-8, 8)
        b = add(multiply(mult, g, x), zmul(k, g))
        report.trials += 1
        if not contains(d, b):
            report.record(i, f"product g*{canonical_elem_str(x)}+{k}g left the descriptor")
    for i in range(cfg.samples_per_instance):
        b = sample_member(d, rng, cfg)
        report.trials += 1
        w = certifier(mult, g, b)
        if w is None:
            report.record(
                cfg.samples_per_instance + i,
                f"member {canonical_elem_str(b)} of {descriptor_str(d)} has no certificate",
            )
            continue
        if add(multiply(mult, g, w.y), zmul(w.k, g)) != b:
            report.record(
                cfg.samples_per_instance + i,
                f"witness {w} does not recompute to {canonical_elem_str(b)}",
            )
    return report


def ring_axiom_check(
    mult: Multiplication,
    cfg: TrialConfig,
    *,
    product=multiply,
    make=make_mult,
) -> CheckReport:
    """Exact commutativity, associativity, bilinearity, and additivity in the defining element."""
    G = mult.group
    rng = cfg.rng("axioms", _input_digest(G.cochar, element_of_mult(mult)))
    report = CheckReport("ring-axioms")
    e = G.basis_element()
    report.trials += 1
    if product(mult, e, e) != element_of_mult(mult):
        report.record(0, "square of the basis element does not round-trip")
    for i in range(cfg.samples_per_instance):
        x = random_element(G, rng, cfg)
        y = random_element(G, rng, cfg, torsion=rng.random() < 0.25)
        z = random_element(G, rng, cfg)
        report.trials += 1
        if product(mult, x, y) != product(mult, y, x):
            report.record(i, "commutativity failed")
            continue
        if product(mult, product(mult, x, y), z) != product(mult, x, product(mult, y, z)):
            report.record(i, "associativity failed")
            continue
        if product(mult, add(x, y), z) != add(product(mult, x, z), product(mult, y, z)):
            report.record(i, "distributivity failed")
            continue
        m2 = random_element(G, rng, cfg)
        lhs = product(make(G, add(element_of_mult(mult), m2)), x, y)
        rhs = add(product(mult, x, y), product(make(G, m2), x, y))
        if lhs != rhs:
            report.record(i, "additivity in the defining element failed")
    return report
