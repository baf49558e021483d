"""Semidefinite programming layer: decomposable witnesses and marginal SDPs.

Two convex programs drive everything here.  The witness program minimizes
``Tr(W rho)`` over unit-trace operators that are sums of marginal terms
``H^S (x) I`` and decompose as ``P + Q^(T_S)`` with ``P, Q >= 0`` across
every bipartition; a negative value certifies genuine multipartite
entanglement from the chosen marginals alone.  The determination program
minimizes the fidelity ``<psi| rho |psi>`` over states matching all the
marginals of a pure target; value 1 means the marginals pin the state.

Both are solved by the same first-order operator-splitting loop: alternate
a projection onto the affine constraints (cached least-squares factors, or
a closed form for the witness program's consensus structure) against a
projection onto the semidefinite cones (batched eigenvalue clipping), with
over-relaxation 1.5.  Iterations are deterministic; no external solver is
used.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import qcore
from .errors import EdlkitError
from .hypergraph import SubsetCollection, all_k_subsets
from .symmetric import SymmetricCoeffs, _reduce_coeff_matrix

MAX_SDP_QUBITS = 5
DEFAULT_TOL = 1e-7
MAX_ITER = 50000
RELAX = 1.5


# ---------------------------------------------------------------------------
# Hermitian <-> real vector packing
# ---------------------------------------------------------------------------

def svec(h):
    """Isometric real packing of a Hermitian matrix (diag, sqrt2*Re, sqrt2*Im)."""
    h = np.asarray(h)
    d = h.shape[0]
    iu = np.triu_indices(d, 1)
    return np.concatenate([h.diagonal().real,
                           math.sqrt(2.0) * h[iu].real,
                           math.sqrt(2.0) * h[iu].imag])


def smat(v, d):
    """Inverse of :func:`svec`."""
    v = np.asarray(v, dtype=float)
    iu = np.triu_indices(d, 1)
    k = iu[0].size
    out = np.zeros((d, d), dtype=complex)
    out[np.diag_indices(d)] = v[:d]
    upper = (v[d:d + k] + 1j * v[d + k:]) / math.sqrt(2.0)
    out[iu] = upper
    out[(iu[1], iu[0])] = upper.conj()
    return out


def _linmap_matrix(d_in, d_out, fn):
    """Real matrix of a Hermitian-preserving linear map in svec coordinates."""
    cols = d_in * d_in
    out = np.zeros((d_out * d_out, cols))
    for j in range(cols):
        e = np.zeros(cols)
        e[j] = 1.0
        out[:, j] = svec(fn(smat(e, d_in)))
    return out


# ---------------------------------------------------------------------------
# Problem container and the splitting engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SdpBlock:
    dim: int
    cone: str  # "psd" or "free"

    def __post_init__(self):
        if self.cone not in ("psd", "free"):
            raise EdlkitError("BAD_KIND", "unknown cone %r" % (self.cone,))


@dataclass
class SdpProblem:
    """Minimize ``sum_b <objective[b], X_b>`` s.t. ``rows @ x = rhs`` and cones.

    ``x`` is the concatenation of the svec of every block.  ``objective``
    entries may be None (no cost on that block).
    """

    blocks: list
    objective: list
    rows: np.ndarray
    rhs: np.ndarray

    def block_slices(self):
        out = []
        off = 0
        for b in self.blocks:
            out.append(slice(off, off + b.dim * b.dim))
            off += b.dim * b.dim
        return out

    def dim(self):
        return sum(b.dim * b.dim for b in self.blocks)

    def cost_vector(self):
        c = np.zeros(self.dim())
        for sl, b, obj in zip(self.block_slices(), self.blocks, self.objective):
            if obj is not None:
                c[sl] = svec(obj)
        return c


@dataclass
class SdpSolution:
    status: str           # "OPTIMAL", "MAX_ITER", "INFEASIBLE"
    objective: float
    blocks: list          # affine-side block matrices
    cone_blocks: list     # cone-side block matrices (exactly PSD)
    primal_residual: float
    dual_residual: float
    iterations: int


def _make_cone_projector(blocks, slices):
    psd_groups = {}
    for idx, (b, sl) in enumerate(zip(blocks, slices)):
        if b.cone == "psd":
            psd_groups.setdefault(b.dim, []).append((idx, sl))

    def project(v):
        out = v.copy()
        for d, members in psd_groups.items():
            stack = np.empty((len(members), d, d), dtype=complex)
            for row, (_idx, sl) in enumerate(members):
                stack[row] = smat(v[sl], d)
            stack = (stack + stack.conj().transpose(0, 2, 1)) / 2.0
            w, q = np.linalg.eigh(stack)
            w = np.clip(w, 0.0, None)
            clipped = q * w[:, None, :] @ q.conj().transpose(0, 2, 1)
            for row, (_idx, sl) in enumerate(members):
                out[sl] = svec(clipped[row])
        return out

    return project


def _admm(c, project_affine, project_cone, dim, tol, max_iter, sigma=1.0):
    """Shared over-relaxed splitting loop; returns (x, z, status, res_p, res_d, iters)."""
    x = np.zeros(dim)
    z = np.zeros(dim)
    u = np.zeros(dim)
    shift = c / sigma
    stall_window = []
    status = "MAX_ITER"
    res_p = res_d = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        x = project_affine(z - u - shift)
        xr = RELAX * x + (1.0 - RELAX) * z
        z_new = project_cone(xr + u)
        u += xr - z_new
        res_p = float(np.linalg.norm(x - z_new))
        res_d = float(sigma * np.linalg.norm(z_new - z))
        z = z_new
        scale = max(1.0, float(np.linalg.norm(x)), float(np.linalg.norm(z)))
        if res_p <= tol * scale and res_d <= tol * scale:
            status = "OPTIMAL"
            break
        if it % 200 == 0:
            stall_window.append(res_p / scale)
            if len(stall_window) > 12:
                stall_window.pop(0)
                flat = stall_window[0] < stall_window[-1] * 1.01
                if flat and stall_window[-1] > 1000 * tol and res_d <= 10 * tol * scale:
                    status = "INFEASIBLE"
                    break
    return x, z, status, res_p, res_d, it


def solve_sdp(problem, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Solve an :class:`SdpProblem` with the operator-splitting loop.

    The affine projection uses a cached thin SVD of the constraint matrix;
    an inconsistent linear system reports INFEASIBLE immediately.  Raises
    nothing on nonconvergence: inspect ``status`` on the returned solution.
    """
    A = np.asarray(problem.rows, dtype=float)
    b = np.asarray(problem.rhs, dtype=float).reshape(-1)
    if A.ndim != 2 or A.shape[0] != b.shape[0] or A.shape[1] != problem.dim():
        raise EdlkitError("DIM_MISMATCH", "constraint matrix shape %r mismatch" % (A.shape,))
    slices = problem.block_slices()
    u_svd, s_svd, vt_svd = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s_svd > max(1.0, s_svd[0] if s_svd.size else 1.0) * 1e-12))
    ur, sr, vr = u_svd[:, :rank], s_svd[:rank], vt_svd[:rank]
    # least-norm solution and linear consistency check
    x_ls = vr.T @ (ur.T @ b / sr)
    lin_res = float(np.linalg.norm(A @ x_ls - b))
    if lin_res > 1e-8 * max(1.0, float(np.linalg.norm(b))):
        return SdpSolution("INFEASIBLE", float("nan"),
                           [smat(np.zeros(bl.dim * bl.dim), bl.dim) for bl in problem.blocks],
                           [smat(np.zeros(bl.dim * bl.dim), bl.dim) for bl in problem.blocks],
                           lin_res, 0.0, 0)

    def project_affine(v):
        r = A @ v - b
        return v - vr.T @ (ur.T @ r / sr)

    project_cone = _make_cone_projector(problem.blocks, slices)
    c = problem.cost_vector()
    x, z, status, res_p, res_d, iters = _admm(c, project_affine, project_cone,
                                              problem.dim(), tol, max_iter)
    blocks = [smat(x[sl], bl.dim) for sl, bl in zip(slices, problem.blocks)]
    cone_blocks = [smat(z[sl], bl.dim) for sl, bl in zip(slices, problem.blocks)]
    return SdpSolution(status, float(c @ x), blocks, cone_blocks, res_p, res_d, iters)


# ---------------------------------------------------------------------------
# Pauli locality structure
# ---------------------------------------------------------------------------

def _collection_of(n, subsets):
    if isinstance(subsets, SubsetCollection):
        coll = subsets
    else:
        coll = SubsetCollection.from_lists(n, [list(s) for s in subsets])
    if coll.n != n:
        raise EdlkitError("DIM_MISMATCH", "collection over n=%d, state over n=%d" % (coll.n, n))
    if len(coll) == 0:
        raise EdlkitError("EMPTY_SUBSET", "need at least one marginal subset")
    return coll


def _allowed_strings(n, coll):
    """Pauli label strings whose support fits inside some subset of the collection."""
    allowed = []
    for labels in itertools.product("IXYZ", repeat=n):
        support = 0
        for pos, ch in enumerate(labels):
            if ch != "I":
                support |= 1 << pos  # particle pos+1 on bit pos
        if any(support & ~mask == 0 for mask in coll.edges):
            allowed.append("".join(labels))
    return allowed


def _pauli_basis_rows(n, strings):
    rows = np.empty((len(strings), (1 << n) ** 2))
    norm = 2.0 ** (-n / 2.0)
    for i, s in enumerate(strings):
        rows[i] = svec(qcore.pauli_string(n, s)) * norm
    return rows


def _bipartition_masks(n):
    full = (1 << n) - 1
    return [m for m in range(1, full) if m & 1]


def _pt_permutation(n, mask):
    """Flat index permutation implementing the partial transpose on ``mask``."""
    d = 1 << n
    bits = [n - j for j in range(1, n + 1) if mask >> (j - 1) & 1]
    swap = 0
    for b in bits:
        swap |= 1 << b
    idx = np.arange(d * d)
    r, c = idx // d, idx % d
    r2 = (r & ~swap) | (c & swap)
    c2 = (c & ~swap) | (r & swap)
    return r2 * d + c2


def expand_operator(n, labels, h):
    """Embed an operator on the qubits ``labels`` (ascending) into n qubits."""
    labels = tuple(sorted(int(x) for x in labels))
    k = len(labels)
    h = np.asarray(h, dtype=complex)
    if h.shape != (1 << k, 1 << k):
        raise EdlkitError("DIM_MISMATCH", "block shape %r does not match %d qubits" % (h.shape, k))
    d = 1 << n
    idx = np.arange(d)
    sub = np.zeros(d, dtype=int)
    rest = np.zeros(d, dtype=int)
    for j in range(1, n + 1):
        bit = idx >> (n - j) & 1
        if j in labels:
            sub = (sub << 1) | bit
        else:
            rest = (rest << 1) | bit
    match = rest[:, None] == rest[None, :]
    return h[np.ix_(sub, sub)] * match


# ---------------------------------------------------------------------------
# Witness container
# ---------------------------------------------------------------------------

@dataclass
class Witness:
    """Fully decomposable entanglement witness with locality blocks.

    ``blocks`` maps marginal subsets to Hermitian operators ``H^S`` with
    ``W = sum_S H^S (x) I``; ``certificates`` maps each bipartition subset
    (particle 1 always inside) to the pair ``(P, Q)`` with
    ``W = P + Q^(T_S)`` and both PSD.
    """

    n: int
    collection: SubsetCollection
    alpha: float
    blocks: list          # (Subset, ndarray) pairs
    certificates: list    # (Subset, P, Q) triples

    def assemble(self):
        d = 1 << self.n
        out = np.zeros((d, d), dtype=complex)
        for subset, h in self.blocks:
            out += expand_operator(self.n, subset.indices, h)
        return out


@dataclass
class WitnessVerdict:
    ok: bool
    failures: list
    trace: float
    max_decomposition_dev: float
    min_certificate_eig: float
    value: float | None   # Tr(W rho) when a state was supplied

    def __bool__(self):
        return self.ok


def verify_witness(witness, rho=None, recon_tol=1e-6, trace_tol=1e-7, psd_tol=1e-7):
    """Re-check a witness from scratch: trace, locality, every certificate.

    Locality holds by reconstruction from the blocks; completeness requires
    one certificate per bipartition class.  Returns a verdict carrying the
    failure list and, when ``rho`` is given, the witness value.
    """
    w = witness.assemble()
    failures = []
    trace = float(np.trace(w).real)
    if abs(trace - 1.0) > trace_tol or abs(np.trace(w).imag) > trace_tol:
        failures.append("trace %.9f deviates from 1" % trace)
    for subset, _h in witness.blocks:
        if subset.mask not in witness.collection.edges:
            failures.append("block subset %s not in the collection" % (subset.indices,))
    expected = set(_bipartition_masks(witness.n))
    seen_masks = set()
    max_dev = 0.0
    min_eig = np.inf
    for subset, p, q in witness.certificates:
        seen_masks.add(subset.mask)
        pt_q = qcore.partial_transpose(q, subset)
        dev = float(np.max(np.abs(w - p - pt_q)))
        max_dev = max(max_dev, dev)
        ep = float(np.linalg.eigvalsh((p + p.conj().T) / 2)[0])
        eq = float(np.linalg.eigvalsh((q + q.conj().T) / 2)[0])
        min_eig = min(min_eig, ep, eq)
        if dev > recon_tol:
            failures.append("decomposition residual %.3e at bipartition %s" % (dev, subset.indices))
        if min(ep, eq) < -psd_tol:
            failures.append("certificate not PSD at bipartition %s (eig %.3e)" % (subset.indices, min(ep, eq)))
    if seen_masks != expected:
        failures.append("certificates cover %d of %d bipartitions" % (len(seen_masks), len(expected)))
    value = None
    if rho is not None:
        mat, n_rho = qcore._as_matrix(rho)
        if n_rho != witness.n:
            raise EdlkitError("DIM_MISMATCH", "state and witness qubit counts differ")
        value = float(np.trace(w @ mat).real)
    if min_eig is np.inf:
        min_eig = float("nan")
    return WitnessVerdict(len(failures) == 0, failures, trace, max_dev, float(min_eig), value)


# ---------------------------------------------------------------------------
# Fully decomposable witness program
# ---------------------------------------------------------------------------

def _check_sdp_size(n):
    if n > MAX_SDP_QUBITS:
        raise EdlkitError("TOO_LARGE", "SDP layer capped at %d qubits, got n=%d" % (MAX_SDP_QUBITS, n))


def fully_decomposable_alpha(rho, subsets, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Minimum witness value over unit-trace fully decomposable witnesses
    built from the marginals in ``subsets``.

    Returns ``(alpha, witness)``.  The consensus structure of the program
    (one shared W against per-bipartition decompositions) gives the affine
    projection in closed form, so no constraint matrix is materialized.
    """
    mat, n = qcore._as_matrix(rho)
    _check_sdp_size(n)
    coll = _collection_of(n, subsets)
    d = 1 << n
    masks = _bipartition_masks(n)
    m = len(masks)
    perms = [_pt_permutation(n, mask) for mask in masks]
    strings = _allowed_strings(n, coll)
    basis = _pauli_basis_rows(n, strings)
    eye_sv = svec(np.eye(d))

    dsq = d * d
    dim = (1 + 2 * m) * dsq
    w_sl = slice(0, dsq)
    p_sls = [slice((1 + i) * dsq, (2 + i) * dsq) for i in range(m)]
    q_sls = [slice((1 + m + i) * dsq, (2 + m + i) * dsq) for i in range(m)]

    def pt_apply(vec_sv, perm):
        mtx = smat(vec_sv, d)
        return svec(mtx.ravel()[perm].reshape(d, d))

    def project_affine(v):
        w0 = v[w_sl]
        ks = []
        for i in range(m):
            ks.append(v[p_sls[i]] + pt_apply(v[q_sls[i]], perms[i]))
        mvec = (w0 + 0.5 * np.sum(ks, axis=0)) / (1.0 + m / 2.0)
        w = basis.T @ (basis @ mvec)
        w += (1.0 - float(eye_sv @ w) / 1.0) / d * eye_sv  # eye_sv @ w = trace
        out = np.empty_like(v)
        out[w_sl] = w
        for i in range(m):
            r = w - ks[i]
            out[p_sls[i]] = v[p_sls[i]] + 0.5 * r
            out[q_sls[i]] = v[q_sls[i]] + pt_apply(0.5 * r, perms[i])
        return out

    blocks = [SdpBlock(d, "free")] + [SdpBlock(d, "psd")] * (2 * m)
    slices = [w_sl] + p_sls + q_sls
    project_cone = _make_cone_projector(blocks, slices)

    c = np.zeros(dim)
    c[w_sl] = svec(mat)
    x, z, status, res_p, res_d, iters = _admm(c, project_affine, project_cone, dim, tol, max_iter)
    if status != "OPTIMAL":
        raise EdlkitError("MAX_ITER" if status == "MAX_ITER" else "SOLVER_FAIL",
                          "witness program did not converge (%s, primal %.2e, dual %.2e, %d iters)"
                          % (status, res_p, res_d, iters))
    w_mat = smat(x[w_sl], d)
    alpha = float(np.trace(w_mat @ mat).real)
    witness = _witness_from_solution(n, coll, alpha, w_mat, strings,
                                     masks, [smat(z[sl], d) for sl in p_sls],
                                     [smat(z[sl], d) for sl in q_sls])
    return alpha, witness


def _witness_from_solution(n, coll, alpha, w_mat, strings, masks, p_mats, q_mats):
    # expand W over the allowed strings; each string is charged to the first
    # collection subset containing its support (the identity to the first)
    d = 1 << n
    block_terms = {mask: [] for mask in coll.edges}
    for s in strings:
        support = 0
        for pos, ch in enumerate(s):
            if ch != "I":
                support |= 1 << pos
        coeff = complex(np.trace(qcore.pauli_string(n, s).conj().T @ w_mat)) / d
        if abs(coeff) < 1e-14:
            continue
        home = next(mask for mask in coll.edges if support & ~mask == 0)
        block_terms[home].append((s, coeff))
    blocks = []
    for mask in coll.edges:
        labels = qcore.Subset(n, mask).indices
        k = len(labels)
        h = np.zeros((1 << k, 1 << k), dtype=complex)
        for s, coeff in block_terms[mask]:
            sub = "".join(s[j - 1] for j in labels)
            h += coeff.real * qcore.pauli_string(k, sub)
        blocks.append((qcore.Subset(n, mask), h))
    certificates = [(qcore.Subset(n, mask), p, q)
                    for mask, p, q in zip(masks, p_mats, q_mats)]
    return Witness(n, coll, alpha, blocks, certificates)


def noise_threshold(alpha, n):
    """White-noise robustness: ``(1-p) rho + p I/2^n`` stays detected for
    ``p < 2^n alpha / (2^n alpha - 1)``.
    """
    if not alpha < 0:
        raise EdlkitError("NOT_NEGATIVE", "noise threshold needs a negative witness value")
    scale = (1 << n) * alpha
    return float(scale / (scale - 1.0))


def edl_upper_bound(rho, tol=DEFAULT_TOL):
    """Smallest k whose witness program already certifies entanglement.

    Returns ``(k, alpha, witness)`` or ``(None, last_alpha, None)`` when no
    level is conclusive (the margin is ``alpha < -10 tol``).
    """
    mat, n = qcore._as_matrix(rho)
    _check_sdp_size(n)
    alpha = float("nan")
    for k in range(2, n + 1):
        alpha, witness = fully_decomposable_alpha(mat, all_k_subsets(n, k), tol=tol)
        if alpha < -10.0 * tol:
            return k, alpha, witness
    return None, alpha, None


def refit_certificates(witness, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Recompute the per-bipartition decompositions of a witness from its W.

    Each bipartition is an independent feasibility program: find PSD ``P, Q``
    with ``P + Q^(T_S) = W``.  Returns a new witness with fresh certificates.
    """
    n = witness.n
    _check_sdp_size(n)
    w = witness.assemble()
    d = 1 << n
    eye_rows = np.eye(d * d)
    certificates = []
    for mask in _bipartition_masks(n):
        subset = qcore.Subset(n, mask)
        pt_rows = _linmap_matrix(d, d, lambda x: qcore.partial_transpose(x, subset))
        problem = SdpProblem(
            blocks=[SdpBlock(d, "psd"), SdpBlock(d, "psd")],
            objective=[None, None],
            rows=np.hstack([eye_rows, pt_rows]),
            rhs=svec(w),
        )
        sol = solve_sdp(problem, tol=tol, max_iter=max_iter)
        if sol.status != "OPTIMAL":
            raise EdlkitError("INFEASIBLE" if sol.status == "INFEASIBLE" else "MAX_ITER",
                              "no decomposition found at bipartition %s (%s)"
                              % (subset.indices, sol.status))
        certificates.append((subset, sol.cone_blocks[0], sol.cone_blocks[1]))
    return Witness(witness.n, witness.collection, witness.alpha, witness.blocks, certificates)


def build_fdw_problem(rho, subsets):
    """The witness program as an explicit :class:`SdpProblem` (small n only).

    Kept separate from :func:`fully_decomposable_alpha` so the generic dense
    path can cross-check the structured consensus path.
    """
    mat, n = qcore._as_matrix(rho)
    if n > 3:
        raise EdlkitError("TOO_LARGE", "dense witness assembly capped at 3 qubits")
    coll = _collection_of(n, subsets)
    d = 1 << n
    dsq = d * d
    masks = _bipartition_masks(n)
    m = len(masks)
    strings = set(_allowed_strings(n, coll))
    disallowed = [s for s in ("".join(p) for p in itertools.product("IXYZ", repeat=n))
                  if s not in strings]
    blocks = [SdpBlock(d, "free")] + [SdpBlock(d, "psd")] * (2 * m)
    nvar = (1 + 2 * m) * dsq
    rows = []
    rhs = []
    # unit trace of W
    row = np.zeros(nvar)
    row[:dsq] = svec(np.eye(d))
    rows.append(row)
    rhs.append(1.0)
    # locality: W orthogonal to every Pauli string outside the allowed span
    norm = 2.0 ** (-n / 2.0)
    for s in disallowed:
        row = np.zeros(nvar)
        row[:dsq] = svec(qcore.pauli_string(n, s)) * norm
        rows.append(row)
        rhs.append(0.0)
    # W - P_i - Q_i^(T_i) = 0 for every bipartition
    eye_rows = np.eye(dsq)
    for i, mask in enumerate(masks):
        subset = qcore.Subset(n, mask)
        pt_rows = _linmap_matrix(d, d, lambda x: qcore.partial_transpose(x, subset))
        block_rows = np.zeros((dsq, nvar))
        block_rows[:, :dsq] = eye_rows
        block_rows[:, (1 + i) * dsq:(2 + i) * dsq] = -eye_rows
        block_rows[:, (1 + m + i) * dsq:(2 + m + i) * dsq] = -pt_rows
        rows.append(block_rows)
        rhs.extend([0.0] * dsq)
    objective = [mat] + [None] * (2 * m)
    return SdpProblem(blocks, objective, np.vstack(rows), np.array(rhs))


# ---------------------------------------------------------------------------
# Pure-state determination program
# ---------------------------------------------------------------------------

@dataclass
class DeterminationResult:
    alpha: float
    status: str
    rho: np.ndarray       # the minimizing compatible state
    iterations: int
    primal_residual: float
    dual_residual: float


def pure_determination_alpha(psi, subsets, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Minimum fidelity with ``psi`` over states sharing its listed marginals.

    Value 1 means those marginals determine the state; the minimizer itself
    is returned as the certificate (a different compatible state when the
    value drops below 1).
    """
    if not isinstance(psi, qcore.PureVector):
        raise EdlkitError("DIM_MISMATCH", "expected a PureVector")
    n = psi.n
    _check_sdp_size(n)
    coll = _collection_of(n, subsets)
    d = 1 << n
    target = psi.to_density().matrix
    rows = [svec(np.eye(d))[None, :]]
    rhs = [np.array([1.0])]
    for labels in coll:
        keep = qcore.Subset.from_indices(n, labels)
        lin = _linmap_matrix(d, 1 << keep.size, lambda x: qcore.partial_trace(x, keep))
        rows.append(lin)
        rhs.append(svec(qcore.partial_trace(target, keep)))
    problem = SdpProblem(
        blocks=[SdpBlock(d, "psd")],
        objective=[target],
        rows=np.vstack(rows),
        rhs=np.concatenate(rhs),
    )
    sol = solve_sdp(problem, tol=tol, max_iter=max_iter)
    if sol.status != "OPTIMAL":
        raise EdlkitError("MAX_ITER" if sol.status == "MAX_ITER" else "SOLVER_FAIL",
                          "determination program did not converge (%s)" % sol.status)
    return DeterminationResult(sol.objective, sol.status, sol.blocks[0],
                               sol.iterations, sol.primal_residual, sol.dual_residual)


def sdl_pure(psi, tol=DEFAULT_TOL):
    """Determination length of a pure state by scanning the marginal size.

    Returns ``(value, alphas)`` where alphas records the program value at
    each size; determination is declared at ``alpha >= 1 - 100 tol``.
    """
    n = psi.n
    _check_sdp_size(n)
    alphas = {}
    for k in range(1, n + 1):
        res = pure_determination_alpha(psi, all_k_subsets(n, k), tol=tol)
        alphas[k] = res.alpha
        if res.alpha >= 1.0 - 100.0 * tol:
            return k, alphas
    return n, alphas


# ---------------------------------------------------------------------------
# Symmetric-subspace determination probe
# ---------------------------------------------------------------------------

@dataclass
class ProbeResult:
    verdict: str          # "UNIQUE" or "NONUNIQUE"
    max_deviation: float
    witness_coeffs: np.ndarray | None
    trials: int

    def __bool__(self):
        return self.verdict == "UNIQUE"


def symmetric_sdl_probe(coeffs, k, trials=8, tol=DEFAULT_TOL, seed=20240811):
    """Numerically probe whether the level-k marginals pin a symmetric state
    within the symmetric family.

    Random linear functionals are minimized and maximized over the
    compatible set; any optimum escaping the input's value flags
    NONUNIQUE with the deviating coefficient matrix as witness.  UNIQUE is
    a sampled verdict, not a proof.
    """
    if not isinstance(coeffs, SymmetricCoeffs):
        raise EdlkitError("DIM_MISMATCH", "expected SymmetricCoeffs")
    n = coeffs.n
    if not 1 <= k <= n:
        raise EdlkitError("BAD_LEVEL", "marginal size %d outside 1..%d" % (k, n))
    dd = n + 1
    lin = _linmap_matrix(dd, k + 1, lambda x: _reduce_coeff_matrix(n, k, x))
    target = svec(_reduce_coeff_matrix(n, k, coeffs.a))
    trace_row = svec(np.eye(dd))[None, :]
    rows = np.vstack([trace_row, lin])
    rhs = np.concatenate([[1.0], target])
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _t in range(trials):
        g = rng.normal(size=(dd, dd)) + 1j * rng.normal(size=(dd, dd))
        f = (g + g.conj().T) / 2.0
        f /= np.linalg.norm(f)
        base = float(np.trace(f @ coeffs.a).real)
        for sign in (1.0, -1.0):
            problem = SdpProblem([SdpBlock(dd, "psd")], [sign * f], rows, rhs)
            sol = solve_sdp(problem, tol=tol)
            if sol.status != "OPTIMAL":
                raise EdlkitError("MAX_ITER", "probe solve did not converge")
            dev = abs(sign * sol.objective - base)
            worst = max(worst, dev)
            if dev > 100.0 * tol:
                return ProbeResult("NONUNIQUE", dev, sol.blocks[0], trials)
    return ProbeResult("UNIQUE", worst, None, trials)
