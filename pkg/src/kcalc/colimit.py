"""Inductive limits of cyclic groups and their isomorphism invariants.

Element arithmetic in a colimit prefix, order computation, the order
spectrum, prime-power order witnesses, non-isomorphism tests for limits
built from geometric level rules, and the pipeline identifying the
UHF-tensored odometer tower with the K-theory of a Cuntz algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .abelian import CyclicElement, CyclicHom, tensor_cyclic_with_localized
from .arith import (
    DEFAULT_BUDGET_BITS,
    SupernaturalNumber,
    factorize,
    is_prime,
    multiplicative_order,
    prime_factors,
    valuation,
)

if TYPE_CHECKING:
    from .odometer import KernelCertificate

__all__ = [
    "Geometric",
    "CyclicColimit",
    "ColimitElement",
    "OrderBound",
    "PrimePowerWitness",
    "DistinguishVerdict",
    "StageCongruenceError",
    "IdentificationStage",
    "CuntzIdentification",
    "push",
    "element_order",
    "order_spectrum",
    "prime_power_order_witness",
    "distinguish_colimits",
    "identify_cuntz_k_theory",
]


@dataclass(frozen=True)
class Geometric:
    """The level rule n_i = first * ratio**(i-1), i >= 1."""

    first: int
    ratio: int

    def __post_init__(self):
        if self.first < 1:
            raise ValueError("first level must be positive")
        if self.ratio < 2:
            raise ValueError("ratio must be >= 2 for strictly increasing levels")

    def level(self, i: int) -> int:
        if i < 1:
            raise ValueError("stages are numbered from 1")
        return self.first * self.ratio ** (i - 1)

    def levels(self, count: int) -> tuple[int, ...]:
        return tuple(self.level(i) for i in range(1, count + 1))


@dataclass(frozen=True)
class CyclicColimit:
    """A finite prefix of an inductive sequence of cyclic groups.

    Connecting maps must be injective; a unit thread, when present, must be
    compatible (each map carries the unit of one stage to the next).  When
    the prefix comes from an odometer tower, ``k`` and ``level_rule`` allow
    order-spectrum statements to be certified over all stages, not just the
    stored prefix.
    """

    moduli: tuple[int, ...]
    maps: tuple[CyclicHom, ...]
    unit_thread: tuple[CyclicElement, ...] | None = None
    k: int | None = None
    level_rule: Geometric | None = None

    def __post_init__(self):
        if not self.moduli:
            raise ValueError("a colimit prefix needs at least one stage")
        if len(self.maps) != len(self.moduli) - 1:
            raise ValueError("need exactly one connecting map per adjacent pair")
        for i, h in enumerate(self.maps):
            if h.source_modulus != self.moduli[i] or h.target_modulus != self.moduli[i + 1]:
                raise ValueError(f"connecting map {i + 1} does not match the moduli")
            if not h.is_injective():
                raise ValueError(f"connecting map {i + 1} is not injective")
        if self.unit_thread is not None:
            if len(self.unit_thread) != len(self.moduli):
                raise ValueError("unit thread must have one entry per stage")
            for i, u in enumerate(self.unit_thread):
                if u.modulus != self.moduli[i]:
                    raise ValueError(f"unit at stage {i + 1} has the wrong modulus")
            for i, h in enumerate(self.maps):
                if h(self.unit_thread[i]) != self.unit_thread[i + 1]:
                    raise ValueError(f"unit thread breaks at stage {i + 1}")

    @property
    def stages(self) -> int:
        return len(self.moduli)

    def modulus_at(self, stage: int) -> int:
        self._check_stage(stage)
        return self.moduli[stage - 1]

    def _check_stage(self, stage: int) -> None:
        if not 1 <= stage <= self.stages:
            raise ValueError(f"stage {stage} outside prefix 1..{self.stages}")

    def element(self, stage: int, residue: int) -> "ColimitElement":
        self._check_stage(stage)
        return ColimitElement(stage, CyclicElement(self.moduli[stage - 1], residue))


@dataclass(frozen=True)
class ColimitElement:
    """An element of the colimit, recorded at a stage of the prefix."""

    stage: int
    residue: CyclicElement


def push(colimit: CyclicColimit, e: ColimitElement, stage: int) -> ColimitElement:
    """Move an element to a later stage along the connecting maps.

    Orders are preserved because every connecting map is injective.
    """
    colimit._check_stage(e.stage)
    colimit._check_stage(stage)
    if stage < e.stage:
        raise ValueError("cannot push backwards")
    if e.residue.modulus != colimit.moduli[e.stage - 1]:
        raise ValueError("element does not live at its declared stage")
    cur = e.residue
    for i in range(e.stage - 1, stage - 1):
        cur = colimit.maps[i](cur)
    return ColimitElement(stage, cur)


def element_order(e: ColimitElement) -> int:
    """Order of the element in the colimit: m / gcd(residue, m) at its stage."""
    return e.residue.order()


@dataclass(frozen=True)
class OrderBound:
    """Largest multiplicity of a prime among the prefix moduli.

    ``exact`` is True only when a level rule certifies that the supremum over
    all stages (not just the stored prefix) equals ``prefix_max``.
    """

    prefix_max: int
    exact: bool


def _certified_supremum(k: int, rule: Geometric, q: int) -> int | None:
    """Supremum of v_q(k**n - 1) over all levels n of the rule; None = unbounded.

    Uses the lifted-exponent identities: for odd q with d = ord_q(k) and
    d | n, v_q(k**n - 1) = v_q(k**d - 1) + v_q(n/d); for q = 2 and odd k,
    v_2(k**n - 1) is v_2(k-1) for odd n and v_2(k-1) + v_2(k+1) + v_2(n) - 1
    for even n.
    """
    c, r = rule.first, rule.ratio
    if k % q == 0:
        return 0
    if q == 2:
        if k % 2 == 0:
            return 0
        if r % 2 == 0:
            return None
        if c % 2 == 1:
            return valuation(k - 1, 2)
        return valuation(k - 1, 2) + valuation(k + 1, 2) + valuation(c, 2) - 1
    d = multiplicative_order(k, q)
    for t, e in factorize(d).items():
        if r % t == 0:
            continue
        if valuation(c, t) < e:
            return 0
    if r % q == 0:
        return None
    return valuation(k ** d - 1, q) + valuation(c, q) - valuation(d, q)


def order_spectrum(
    colimit: CyclicColimit, *, budget_bits: int = DEFAULT_BUDGET_BITS
) -> dict[int, OrderBound]:
    """Prime-power element orders visible in the prefix.

    Maps each prime dividing some stage modulus to the largest multiplicity
    seen in the prefix; the flag records whether a level rule certifies that
    this is the supremum over the whole sequence.
    """
    per_prime: dict[int, int] = {}
    for m in colimit.moduli:
        if m == 1:
            continue
        for q, e in factorize(m, budget_bits=budget_bits).items():
            per_prime[q] = max(per_prime.get(q, 0), e)
    certifiable = colimit.k is not None and colimit.level_rule is not None
    spectrum: dict[int, OrderBound] = {}
    for q, prefix_max in sorted(per_prime.items()):
        exact = False
        if certifiable:
            sup = _certified_supremum(colimit.k, colimit.level_rule, q)
            exact = sup is not None and sup == prefix_max
        spectrum[q] = OrderBound(prefix_max, exact)
    return spectrum


@dataclass(frozen=True)
class PrimePowerWitness:
    """A prime power q**r with ord_{q**r}(k) = p**s.

    Consequently q**r divides k**b - 1 exactly when p**s divides b, which is
    what makes the witness useful for telling inductive limits apart.
    """

    k: int
    p: int
    s: int
    q: int
    r: int
    order: int

    def __post_init__(self):
        big, small = self.p ** self.s, self.p ** (self.s - 1)
        qr = self.q ** self.r
        if pow(self.k, big, qr) != 1:
            raise ValueError(f"{qr} does not divide {self.k}**{big} - 1")
        if pow(self.k, small, qr) == 1:
            raise ValueError(f"{qr} divides {self.k}**{small} - 1")
        if self.order != big:
            raise ValueError("order certificate does not equal the prime power")

    @property
    def prime_power(self) -> int:
        return self.q ** self.r

    def divisibility_holds(self, b: int) -> bool:
        """Check q**r | k**b - 1 <=> p**s | b for one exponent b."""
        return (pow(self.k, b, self.prime_power) == 1) == (b % self.p ** self.s == 0)


def prime_power_order_witness(
    k: int, p: int, s: int, *, budget_bits: int = DEFAULT_BUDGET_BITS
) -> PrimePowerWitness:
    """Minimal prime power q**r dividing k**(p**s) - 1 but not k**(p**(s-1)) - 1.

    Minimality: smallest prime q, then the smallest exponent r exceeding the
    multiplicity of q in k**(p**(s-1)) - 1.  The order of k modulo q**r is
    then exactly p**s, which the returned witness certifies.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if s < 1:
        raise ValueError("s must be >= 1")
    big = k ** (p ** s) - 1
    small = k ** (p ** (s - 1)) - 1
    for q, a in sorted(factorize(big, budget_bits=budget_bits).items()):
        b = valuation(small, q)
        if a > b:
            r = b + 1
            return PrimePowerWitness(k, p, s, q, r, order=p ** s)
    raise RuntimeError("no witness found; k**(p**s) - 1 should properly exceed")


@dataclass(frozen=True)
class DistinguishVerdict:
    """Outcome of comparing two geometric level rules at a fixed base k."""

    distinct: bool
    prime: int | None = None
    exponent: int | None = None
    witness: PrimePowerWitness | None = None
    first_stage_with_order: int | None = None

    @property
    def verdict(self) -> str:
        return "distinct" if self.distinct else "inconclusive"


def distinguish_colimits(
    k: int,
    rule_a: Geometric,
    rule_b: Geometric,
    *,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> DistinguishVerdict:
    """Decide whether the two limits of Z_{k**n - 1} towers are non-isomorphic.

    Searches for a prime power p**s dividing some level of rule A but no
    level of rule B; for geometric rules this is a valuation check.  When
    one exists, the returned witness q**r gives an element order present in
    limit A and absent from limit B.  Without a qualifying prime power the
    answer is inconclusive (the limits may or may not be isomorphic).
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    for p in prime_factors(rule_a.first * rule_a.ratio):
        if rule_b.ratio % p == 0:
            continue
        reach_b = valuation(rule_b.first, p)
        reach_a = None if rule_a.ratio % p == 0 else valuation(rule_a.first, p)
        if reach_a is not None and reach_a <= reach_b:
            continue
        s = reach_b + 1
        witness = prime_power_order_witness(k, p, s, budget_bits=budget_bits)
        vc, vr = valuation(rule_a.first, p), valuation(rule_a.ratio, p)
        if vc >= s:
            stage = 1
        else:
            stage = 1 + -(-(s - vc) // vr)
        return DistinguishVerdict(
            distinct=True,
            prime=p,
            exponent=s,
            witness=witness,
            first_stage_with_order=stage,
        )
    return DistinguishVerdict(distinct=False)


class StageCongruenceError(Exception):
    """A stage of the identification pipeline failed its congruence check."""


@dataclass(frozen=True)
class IdentificationStage:
    """One certified stage of the UHF-tensored tower."""

    stage: int
    level: int
    modulus: int
    tensored_modulus: int
    cofactor: int
    cofactor_congruences: tuple[tuple[int, int], ...]
    unit_image: int


@dataclass(frozen=True)
class CuntzIdentification:
    """Certified identification of the tensored tower with K-theory of a Cuntz algebra.

    Every stage of the tower for levels n_i = k**(i-1), tensored with the
    localized group whose denominators avoid the primes of k - 1, is cyclic
    of order k - 1; the induced connecting maps are congruent to 1 modulo
    k - 1 (hence isomorphisms); and the unit thread lands on the generator 1.
    The concluding isomorphism of algebras is cited, not computed.
    """

    k: int
    depth: int
    supernatural: SupernaturalNumber
    levels: tuple[int, ...]
    moduli: tuple[int, ...]
    stages: tuple[IdentificationStage, ...]
    induced_multipliers: tuple[int, ...]
    k0_order: int
    unit_class: int
    k1_trivial: bool
    kernel_certificates: tuple["KernelCertificate", ...]
    citations: tuple[str, ...] = field(
        default=(
            "stage groups and connecting maps: exact computation",
            "Cuntz algebra K-theory K_0 = Z/(k-1), [1] -> 1, K_1 = 0: cited",
            "Kirchberg-Phillips classification: cited, not computed",
        )
    )


def identify_cuntz_k_theory(
    k: int, depth: int, *, budget_bits: int = DEFAULT_BUDGET_BITS
) -> CuntzIdentification:
    """Certify K_0 = Z_{k-1} (unit at 1) and K_1 = 0 for the tensored tower.

    Builds the tower for levels n_i = k**(i-1), tensors each stage with the
    localized group of type ``complement(k-1)``, and verifies stage by stage:
    the tensored group has order exactly k - 1; the cofactor
    (k**n_i - 1)/(k - 1) is congruent to 1 modulo every prime of k - 1; each
    induced connecting multiplier is congruent to 1 modulo k - 1; and the
    unit thread maps to 1.  Any failure raises StageCongruenceError naming
    the failing congruence.
    """
    from .odometer import OdometerSpec, k0_odometer

    if k < 2:
        raise ValueError("k must be >= 2")
    if depth < 2:
        raise ValueError("depth must be >= 2")
    rule = Geometric(1, k)
    spec = OdometerSpec(k, rule.levels(depth), rule=rule)
    tower = k0_odometer(spec)
    s = SupernaturalNumber.coprime_complement(k - 1)
    target = k - 1
    target_primes = prime_factors(target) if target > 1 else []

    stages = []
    for i, (level, m) in enumerate(zip(spec.levels, tower.k0.moduli), start=1):
        tensored = tensor_cyclic_with_localized(m, s)
        if tensored.modulus != target:
            raise StageCongruenceError(
                f"stage {i}: tensored order {tensored.modulus} != {target}"
            )
        cofactor = m // target
        congruences = []
        for p in target_primes:
            residue = cofactor % p
            if residue != 1:
                raise StageCongruenceError(
                    f"stage {i}: cofactor {cofactor} is {residue}, not 1, mod {p}"
                )
            congruences.append((p, residue))
        unit_image = tensored.surjection(tower.k0.unit_thread[i - 1]).residue
        if unit_image != 1 % target:
            raise StageCongruenceError(
                f"stage {i}: unit class lands on {unit_image}, not 1, mod {target}"
            )
        stages.append(
            IdentificationStage(
                stage=i,
                level=level,
                modulus=m,
                tensored_modulus=tensored.modulus,
                cofactor=cofactor,
                cofactor_congruences=tuple(congruences),
                unit_image=unit_image,
            )
        )

    induced = []
    for i, h in enumerate(tower.k0.maps, start=1):
        u = h.multiplier % target
        if u != 1 % target:
            raise StageCongruenceError(
                f"induced map {i}: multiplier is {u}, not 1, mod {target}"
            )
        induced.append(u)

    return CuntzIdentification(
        k=k,
        depth=depth,
        supernatural=s,
        levels=spec.levels,
        moduli=tower.k0.moduli,
        stages=tuple(stages),
        induced_multipliers=tuple(induced),
        k0_order=target,
        unit_class=1 % target,
        k1_trivial=tower.k1_trivial,
        kernel_certificates=tower.kernel_certificates,
    )
