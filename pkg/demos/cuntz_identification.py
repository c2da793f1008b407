"""Collapse the tensored tower onto the K-theory of a Cuntz algebra.

For levels n_i = k**(i-1), tensoring each stage Z_{k**n_i - 1} with the
localized group whose denominators avoid the primes of k - 1 leaves exactly
Z_{k-1}, the induced connecting maps become isomorphisms, and the unit class
lands on the generator.  That k-theoretic picture matches the Cuntz algebra
on k generators; the final isomorphism of algebras is cited, never computed.
"""

from kcalc import identify_cuntz_k_theory

for k in (2, 3, 4, 5, 7):
    outcome = identify_cuntz_k_theory(k, depth=4)
    k0 = "0" if outcome.k0_order == 1 else f"Z_{outcome.k0_order}"
    print(f"k = {k}:  K_0 = {k0}, unit -> {outcome.unit_class}, K_1 = 0")
    print(f"  levels {outcome.levels}")
    for stage in outcome.stages:
        congruences = ", ".join(
            f"cofactor = 1 mod {p}" for p, _ in stage.cofactor_congruences
        ) or "no congruences (k - 1 = 1)"
        print(
            f"  stage {stage.stage}: |Z_m| = {stage.modulus}, tensored order"
            f" {stage.tensored_modulus}; {congruences}"
        )
    for line in outcome.citations:
        print(f"  [{line}]")
    print()
