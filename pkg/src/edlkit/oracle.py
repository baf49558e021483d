"""Brute-force reference implementations used to cross-check the fast paths.

Everything in this module is written as plain loop nests over computational
basis indices and deliberately shares no code with the implementations it
checks (``qcore.partial_trace``, the Hankel criteria, the hypergraph
counting formula).  Sizes are small, clarity wins over speed.

Index convention matches the rest of the package: particle 1 is the most
significant bit of a computational index.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import EdlkitError


def _popcount(x):
    return bin(x).count("1")


def _as_array(rho):
    mat = np.asarray(getattr(rho, "matrix", rho), dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise EdlkitError("DIM_MISMATCH", "expected a square matrix")
    return mat


def dense_from_diagonal(lam, n):
    """Dense density matrix of ``sum_i lam[i] |D_n^i><D_n^i|``."""
    lam = [float(x) for x in lam]
    if len(lam) != n + 1:
        raise EdlkitError("DIM_MISMATCH", "need n+1 weights, got %d for n=%d" % (len(lam), n))
    d = 1 << n
    out = np.zeros((d, d), dtype=complex)
    for r in range(d):
        for c in range(d):
            i = _popcount(r)
            if i == _popcount(c):
                out[r, c] = lam[i] / math.comb(n, i)
    return out


def dense_from_symmetric(a, n):
    """Dense matrix of ``sum_ij a[i,j] |D_n^i><D_n^j|`` from its coefficient matrix."""
    a = np.asarray(getattr(a, "a", a), dtype=complex)
    if a.shape != (n + 1, n + 1):
        raise EdlkitError("DIM_MISMATCH", "coefficient matrix must be (n+1)x(n+1)")
    d = 1 << n
    out = np.zeros((d, d), dtype=complex)
    for r in range(d):
        i = _popcount(r)
        for c in range(d):
            j = _popcount(c)
            out[r, c] = a[i, j] / math.sqrt(math.comb(n, i) * math.comb(n, j))
    return out


def brute_marginal(rho, n, keep):
    """Partial trace by explicit index loops.

    ``keep`` is an iterable of 1-based particle labels; the result orders the
    kept particles ascending.
    """
    mat = _as_array(rho)
    if mat.shape[0] != 1 << n:
        raise EdlkitError("DIM_MISMATCH", "matrix does not match n=%d" % n)
    keep = sorted(set(int(j) for j in keep))
    if not keep:
        raise EdlkitError("EMPTY_SUBSET", "keep set is empty")
    if keep[0] < 1 or keep[-1] > n:
        raise EdlkitError("DIM_MISMATCH", "keep labels outside 1..%d" % n)
    traced = [j for j in range(1, n + 1) if j not in keep]
    k = len(keep)
    out = np.zeros((1 << k, 1 << k), dtype=complex)
    for ra in range(1 << k):
        for ca in range(1 << k):
            acc = 0.0 + 0.0j
            for t in range(1 << len(traced)):
                r = 0
                c = 0
                for j in range(1, n + 1):
                    if j in keep:
                        pos = keep.index(j)
                        rb = ra >> (k - 1 - pos) & 1
                        cb = ca >> (k - 1 - pos) & 1
                    else:
                        pos = traced.index(j)
                        rb = cb = t >> (len(traced) - 1 - pos) & 1
                    r = (r << 1) | rb
                    c = (c << 1) | cb
                acc += mat[r, c]
            out[ra, ca] = acc
    return out


def brute_ppt(rho, n, tol=1e-9):
    """PPT check by an index-level partial transpose of the first floor(n/2) qubits.

    Returns ``(is_ppt, min_eigenvalue)``.
    """
    mat = _as_array(rho)
    if mat.shape[0] != 1 << n:
        raise EdlkitError("DIM_MISMATCH", "matrix does not match n=%d" % n)
    nt = n // 2          # number of transposed (most significant) qubits
    lo_bits = n - nt
    d = 1 << n
    out = np.zeros((d, d), dtype=complex)
    for r in range(d):
        r_hi, r_lo = divmod(r, 1 << lo_bits)
        for c in range(d):
            c_hi, c_lo = divmod(c, 1 << lo_bits)
            out[r, c] = mat[(c_hi << lo_bits) | r_lo, (r_hi << lo_bits) | c_lo]
    min_eig = float(np.linalg.eigvalsh(out)[0])
    return min_eig >= -tol, min_eig


def is_swap_invariant(rho, n, tol=1e-10):
    """True iff the state is invariant under every transposition of two qubits."""
    mat = _as_array(rho)
    if mat.shape[0] != 1 << n:
        raise EdlkitError("DIM_MISMATCH", "matrix does not match n=%d" % n)
    d = 1 << n
    for i, j in itertools.combinations(range(1, n + 1), 2):
        bi, bj = n - i, n - j    # bit positions of the two particles
        perm = np.empty(d, dtype=int)
        for idx in range(d):
            vi = idx >> bi & 1
            vj = idx >> bj & 1
            swapped = idx & ~(1 << bi) & ~(1 << bj) | (vj << bi) | (vi << bj)
            perm[idx] = swapped
        if np.max(np.abs(mat[np.ix_(perm, perm)] - mat)) > tol:
            return False
    return True


def _covers_and_connected(chosen, n):
    verts = set()
    for s in chosen:
        verts |= s
    if verts != set(range(1, n + 1)):
        return False
    # breadth-first search on the intersection graph of the chosen subsets
    seen = {0}
    frontier = [0]
    while frontier:
        cur = frontier.pop()
        for idx in range(len(chosen)):
            if idx not in seen and chosen[cur] & chosen[idx]:
                seen.add(idx)
                frontier.append(idx)
    return len(seen) == len(chosen)


def exhaustive_min_connected_cover(n, k):
    """Minimum number of k-subsets of [n] whose union covers [n] and whose
    intersection graph is connected, found by exhaustive search.

    Returns ``(count, witness)`` where witness is a tuple of sorted tuples.
    Intended for n <= 7 and 2 <= k <= 4.
    """
    if not 2 <= k <= n:
        raise EdlkitError("DIM_MISMATCH", "need 2 <= k <= n, got k=%d, n=%d" % (k, n))
    if n > 7 or k > 4 and k < n:
        raise EdlkitError("TOO_LARGE", "exhaustive search capped at n<=7, k<=4")
    all_subsets = [frozenset(c) for c in itertools.combinations(range(1, n + 1), k)]
    for count in range(1, len(all_subsets) + 1):
        for combo in itertools.combinations(all_subsets, count):
            if _covers_and_connected(list(combo), n):
                witness = tuple(tuple(sorted(s)) for s in combo)
                return count, witness
    raise EdlkitError("SOLVER_FAIL", "no connected cover found (unreachable)")
