"""Search for an entanglement witness supported on two-qubit marginals.

The program minimizes Tr(W rho) over unit-trace witnesses that decompose,
for every bipartition, into PSD + partially-transposed-PSD.  A negative
value certifies genuine multipartite entanglement from the listed
marginals alone, with an explicit white-noise robustness interval.
"""

import numpy as np

from edlkit import (
    DickeMixture,
    fully_decomposable_alpha,
    noise_threshold,
    refit_certificates,
    to_dense,
    verify_witness,
)

rho = to_dense(DickeMixture(3, (0, 0.5, 0.5, 0))).matrix

# only nearest-neighbour pairs: still enough
alpha, witness = fully_decomposable_alpha(rho, [(1, 2), (2, 3)])
print("alpha over {12, 23}: %.6f (exact optimum is -1/72 = %.6f)" % (alpha, -1 / 72))
print("white-noise tolerance: p < %.4f" % noise_threshold(alpha, 3))

for subset, h in witness.blocks:
    print("block on", subset.indices, "norm %.4f" % np.linalg.norm(h))

# Independent re-check: reconstruct W from the blocks, re-fit every
# bipartition decomposition from scratch, then verify the lot.
refit = refit_certificates(witness)
verdict = verify_witness(refit, rho)
print("verification:", "ok" if verdict.ok else verdict.failures)
print("worst decomposition residual: %.2e" % verdict.max_decomposition_dev)
print("Tr(W rho) = %.6f" % verdict.value)

# The witness is blind to biseparable states by construction; spot-check
# with product states across the 1|23 cut.
w = witness.assemble()
rng = np.random.default_rng(7)
vals = []
for _ in range(200):
    a = rng.normal(size=2) + 1j * rng.normal(size=2)
    b = rng.normal(size=4) + 1j * rng.normal(size=4)
    a /= np.linalg.norm(a)
    b /= np.linalg.norm(b)
    v = np.kron(a, b)
    vals.append(float((v.conj() @ w @ v).real))
print("min over sampled biseparable states: %.6f (must stay >= 0)" % min(vals))
