"""How many qubits must a marginal cover before it certifies entanglement?

Walks through diagonal symmetric (Dicke-mixture) states, where the answer
comes from a pair of small moment matrices instead of a semidefinite
program.  Everything here is exact rational arithmetic.
"""

from fractions import Fraction

from edlkit import DickeMixture, diagonal_marginal, edl_diagonal, hankel_pair, is_ppt_diagonal

F = Fraction

# A single excitation shared over five qubits. Already the two-body
# marginal is NPT, so two qubits suffice.
w5 = DickeMixture(5, (0, 1, 0, 0, 0, 0))
res = edl_diagonal(w5)
print("W state of 5 qubits: detection length", res.value, res.certificate)

# Mixing in the ground level hides the entanglement from small marginals.
# At lam2 = n/(2n-2) the two-body marginal becomes PPT and the length
# jumps to three.
n = 5
bound = F(n, 2 * n - 2)
for lam2 in (bound / 2, bound, bound + F(1, 50)):
    mix = DickeMixture(n, (1 - lam2, F(0), lam2, F(0), F(0), F(0)))
    print("lam2 =", lam2, "-> l =", edl_diagonal(mix).value)

# The four-qubit mixture below needs three-body marginals; its sibling with
# the weights reshuffled needs all four qubits.
s1 = DickeMixture(4, (F(1, 24), F(1, 3), F(1, 12), F(1, 2), F(1, 24)))
s2 = DickeMixture(4, (F(1, 2), F(1, 3), F(1, 12), F(1, 24), F(1, 24)))
print("s1 detection length:", edl_diagonal(s1).value)
print("s2 detection length:", edl_diagonal(s2).value)

# The decision at each level is PPT of the reduced state, which for a
# diagonal symmetric state is positivity of two Hankel matrices.
pair = hankel_pair(s2)
print("s2 moment matrix M0:")
for row in pair.m0:
    print("   ", [str(x) for x in row])
print("min eigenvalues (M0, M1):", pair.min_eigenvalues())

# Reductions stay exact as long as the weights are rational.
for k in (3, 2):
    red = diagonal_marginal(s1, k)
    print("s1 level-%d weights:" % k, [str(x) for x in red.lam],
          "PPT:", is_ppt_diagonal(red).is_ppt)
