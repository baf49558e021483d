"""States whose entanglement shows up long before the state is pinned down.

Detection length and determination length can differ by as much as n-3
(pure) or n-2 (mixed).  Both constructions come with certificates: an NPT
two-body marginal on one side, an explicit second compatible state on the
other.
"""

import math

from fractions import Fraction

from edlkit import DickeMixture, gap_mixed_family, gap_pure_family

F = Fraction

# Pure family: sqrt(a)|D_n^1> + sqrt(1-a)|D_n^n> with a close to 1.  The
# heavy single-excitation component makes pairs NPT, while the faint
# top-level coherence hides from everything below n-1 qubits.
for n, a2 in ((5, 0.94), (6, 0.97)):
    res = gap_pure_family(n, math.sqrt(a2))
    print("pure n=%d: l=%d, L=%d, gap %d" % (n, res.edl, res.sdl, res.gap))
    print("   two-body moment matrix min eig %.4f" % res.m0_min_eig)
    print("   dephased sibling (lam_1=%.2f, lam_%d=%.2f) agrees on all "
          "%d-body marginals (dev %.1e)"
          % (res.sigma.lam[1], n, res.sigma.lam[n], res.sdl - 1,
             res.sigma_compat_dev))

# Mixed family: diagonal weights tuned so the quadratic two-body criterion
# fires while the weight pattern keeps the full-level condition alive.
m4 = gap_mixed_family(4, DickeMixture(4, (F(1, 24), F(1, 3), F(1, 2), F(1, 12), F(1, 24))))
print("mixed n=4: l=%d, L=%d, gap %d" % (m4.edl, m4.sdl, m4.gap))
print("   quadratic criterion value %s" % m4.quadratic_value)
print("   feasible extremal coherence amplitude %.4f" % m4.ghz_block_amp)

m3 = gap_mixed_family(3, DickeMixture(3, (F(1, 12), F(1, 2), F(1, 3), F(1, 12))))
print("mixed n=3: l=%d, L=%d, gap %d" % (m3.edl, m3.sdl, m3.gap))
