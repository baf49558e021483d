"""Marginal sizes that pin down the full state, not just its entanglement.

For diagonal symmetric states the determination length comes from linear
algebra on the weight vector: when do the level-k reduction equations have
a second nonnegative solution?
"""

from fractions import Fraction

from edlkit import (
    DickeMixture,
    has_alternative_nonneg,
    sdl_diagonal,
    sdl_full_level,
    solution_family,
)

F = Fraction

# A pure Dicke level is already determined by its two-body marginal.
print("Dicke |D_6^3>:", sdl_diagonal(DickeMixture(6, (0, 0, 0, 1, 0, 0, 0))))

# Mixing levels 0 and 2 of four qubits: the level-2 equations still admit a
# family of solutions, so three-body marginals are required.
mix = DickeMixture(4, (F(1, 2), F(0), F(1, 2), F(0), F(0)))
res = sdl_diagonal(mix)
print("(1/2, 0, 1/2, 0, 0):", res.value, res.certificate)

# The family behind that answer, parametrized by the free top weights.
fam = solution_family(mix, 2)
print("one alternative with the same 2-body marginals:",
      [str(x) for x in fam.member((F(1, 24), F(1, 24)))])

# Alternative solutions vanish monotonically as the marginal grows.
for m in (2, 3):
    print("alternative at level", m, "->", has_alternative_nonneg(mix, m))

# Extremal coherence forces the worst case: only the full state works.
ghz_diag = DickeMixture(5, (F(1, 2), 0, 0, 0, 0, F(1, 2)))
print("(1/2)|D^0> + (1/2)|D^5> mixture:", sdl_diagonal(ghz_diag).value,
      "full-level condition:", sdl_full_level(ghz_diag).condition)

# All-odd support is the other way to hit the ceiling.
odd = DickeMixture(4, (0, F(1, 3), 0, F(2, 3), 0))
print("odd-level mixture:", sdl_diagonal(odd).value,
      "condition:", sdl_full_level(odd).condition)
