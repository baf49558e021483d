"""Conic solver, witness programs, and determination SDPs."""

import math

import numpy as np
import pytest

from edlkit import oracle, qcore
from edlkit.errors import EdlkitError
from edlkit.hypergraph import SubsetCollection, all_k_subsets
from edlkit.symmetric import SymmetricCoeffs, check_compatibility, dicke_vector, to_dense
from edlkit.witness import (
    SdpBlock,
    SdpProblem,
    Witness,
    build_fdw_problem,
    edl_upper_bound,
    expand_operator,
    fully_decomposable_alpha,
    noise_threshold,
    pure_determination_alpha,
    refit_certificates,
    sdl_pure,
    smat,
    solve_sdp,
    svec,
    symmetric_sdl_probe,
    verify_witness,
    _linmap_matrix,
)

PAIR_CHAIN = [(1, 2), (2, 3)]


def random_hermitian(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + g.conj().T) / 2


def dicke_mix_dense(n, weights):
    out = np.zeros((1 << n, 1 << n), dtype=complex)
    for i, w in enumerate(weights):
        v = dicke_vector(n, i).amplitudes
        out += w * np.outer(v, v.conj())
    return out


# ---------------------------------------------------------------------------
# svec packing and the splitting solver
# ---------------------------------------------------------------------------

def test_svec_roundtrip_and_isometry(rng):
    for d in (1, 2, 3, 5):
        a = random_hermitian(rng, d)
        b = random_hermitian(rng, d)
        assert np.max(np.abs(smat(svec(a), d) - a)) < 1e-13
        hs = float(np.trace(a @ b).real)
        assert svec(a) @ svec(b) == pytest.approx(hs, abs=1e-12)


def test_linmap_matrix_represents_partial_trace(rng):
    n = 3
    keep = qcore.Subset.from_indices(n, (1, 3))
    lin = _linmap_matrix(1 << n, 1 << 2, lambda x: qcore.partial_trace(x, keep))
    a = random_hermitian(rng, 1 << n)
    direct = svec(qcore.partial_trace(a, keep))
    assert np.max(np.abs(lin @ svec(a) - direct)) < 1e-12


def test_sdp_minimum_eigenvalue(rng):
    c = random_hermitian(rng, 4)
    problem = SdpProblem(
        blocks=[SdpBlock(4, "psd")],
        objective=[c],
        rows=svec(np.eye(4))[None, :],
        rhs=np.array([1.0]),
    )
    sol = solve_sdp(problem)
    assert sol.status == "OPTIMAL"
    lam = np.linalg.eigvalsh(c)[0]
    assert sol.objective == pytest.approx(lam, abs=1e-5)
    x = sol.blocks[0]
    assert np.trace(x).real == pytest.approx(1.0, abs=1e-6)
    assert np.linalg.eigvalsh((x + x.conj().T) / 2)[0] > -1e-7


def test_sdp_free_block_equality():
    problem = SdpProblem(
        blocks=[SdpBlock(1, "free")],
        objective=[np.array([[2.0]])],
        rows=np.array([[1.0]]),
        rhs=np.array([3.0]),
    )
    sol = solve_sdp(problem)
    assert sol.status == "OPTIMAL"
    assert sol.objective == pytest.approx(6.0, abs=1e-6)
    assert sol.blocks[0][0, 0].real == pytest.approx(3.0, abs=1e-7)


def test_sdp_flags_inconsistent_equalities():
    row = svec(np.eye(2))[None, :]
    problem = SdpProblem(
        blocks=[SdpBlock(2, "psd")],
        objective=[np.eye(2)],
        rows=np.vstack([row, row]),
        rhs=np.array([1.0, 2.0]),
    )
    sol = solve_sdp(problem)
    assert sol.status == "INFEASIBLE"
    assert sol.iterations == 0


def test_sdp_flags_cone_infeasibility():
    # X00 pinned to -1 contradicts positive semidefiniteness
    row = np.zeros((1, 4))
    row[0, 0] = 1.0
    problem = SdpProblem(
        blocks=[SdpBlock(2, "psd")],
        objective=[np.eye(2)],
        rows=row,
        rhs=np.array([-1.0]),
    )
    sol = solve_sdp(problem)
    assert sol.status == "INFEASIBLE"


def test_sdp_reports_iteration_cap(rng):
    c = random_hermitian(rng, 4)
    problem = SdpProblem(
        blocks=[SdpBlock(4, "psd")],
        objective=[c],
        rows=svec(np.eye(4))[None, :],
        rhs=np.array([1.0]),
    )
    sol = solve_sdp(problem, max_iter=3)
    assert sol.status == "MAX_ITER"


def test_bad_block_kind():
    with pytest.raises(EdlkitError) as err:
        SdpBlock(2, "cone_of_shame")
    assert err.value.code == "BAD_KIND"


# ---------------------------------------------------------------------------
# operator embedding
# ---------------------------------------------------------------------------

def test_expand_operator_places_factors():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    xz = qcore.kron(x, z)
    got = expand_operator(3, (1, 3), xz)
    assert np.max(np.abs(got - qcore.pauli_string(3, "XIZ"))) < 1e-13
    got2 = expand_operator(2, (2,), x)
    assert np.max(np.abs(got2 - qcore.pauli_string(2, "IX"))) < 1e-13


def test_expand_operator_preserves_trace_scaling(rng):
    h = random_hermitian(rng, 4)
    big = expand_operator(4, (2, 4), h)
    assert np.trace(big).real == pytest.approx(4 * np.trace(h).real, abs=1e-10)


# ---------------------------------------------------------------------------
# witness program
# ---------------------------------------------------------------------------

def test_ghz_full_subset_witness():
    ghz = qcore.ghz_vector(3).to_density().matrix
    alpha, witness = fully_decomposable_alpha(ghz, [(1, 2, 3)])
    assert alpha == pytest.approx(-1 / 6, abs=2e-5)
    assert noise_threshold(alpha, 3) == pytest.approx(4 / 7, abs=1e-4)
    verdict = verify_witness(witness, ghz)
    assert verdict.ok, verdict.failures
    assert verdict.value == pytest.approx(alpha, abs=1e-6)


def test_ghz_pair_marginals_carry_no_signal():
    # the diagonal mixture of |000> and |111> shares every 2-marginal
    ghz = qcore.ghz_vector(3).to_density().matrix
    alpha, _ = fully_decomposable_alpha(ghz, all_k_subsets(3, 2))
    assert abs(alpha) < 1e-5


def test_pair_chain_witness_value():
    rho = dicke_mix_dense(3, (0, 0.5, 0.5, 0))
    alpha, witness = fully_decomposable_alpha(rho, PAIR_CHAIN)
    assert alpha == pytest.approx(-1 / 72, abs=2e-5)
    assert noise_threshold(alpha, 3) == pytest.approx(0.1, abs=2e-3)
    # a larger collection can only lower the minimum
    alpha_all, _ = fully_decomposable_alpha(rho, all_k_subsets(3, 2))
    assert alpha_all <= alpha + 1e-6
    verdict = verify_witness(witness, rho)
    assert verdict.ok, verdict.failures
    assert verdict.value == pytest.approx(alpha, abs=1e-6)


def test_dense_path_matches_consensus_path():
    rho = dicke_mix_dense(3, (0, 0.5, 0.5, 0))
    problem = build_fdw_problem(rho, PAIR_CHAIN)
    sol = solve_sdp(problem)
    assert sol.status == "OPTIMAL"
    alpha, _ = fully_decomposable_alpha(rho, PAIR_CHAIN)
    assert sol.objective == pytest.approx(alpha, abs=1e-6)
    with pytest.raises(EdlkitError) as err:
        build_fdw_problem(np.eye(16) / 16, [(1, 2)])
    assert err.value.code == "TOO_LARGE"


def test_witness_is_nonnegative_on_biseparable_states(rng):
    rho = dicke_mix_dense(3, (0, 0.5, 0.5, 0))
    _, witness = fully_decomposable_alpha(rho, PAIR_CHAIN)
    w = witness.assemble()
    for subset_labels in ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3)):
        inside = qcore.Subset.from_indices(3, subset_labels)
        d_in = 1 << inside.size
        d_out = 1 << (3 - inside.size)
        for _ in range(12):
            va = rng.normal(size=d_in) + 1j * rng.normal(size=d_in)
            vb = rng.normal(size=d_out) + 1j * rng.normal(size=d_out)
            va /= np.linalg.norm(va)
            vb /= np.linalg.norm(vb)
            rho_a = np.outer(va, va.conj())
            rho_b = np.outer(vb, vb.conj())
            # interleave the two factors back into global qubit order
            prod = np.zeros((8, 8), dtype=complex)
            a_bits = [3 - j for j in inside.indices]
            b_bits = [3 - j for j in range(1, 4) if j not in inside.indices]
            for r in range(8):
                for c in range(8):
                    ra = sum(((r >> b) & 1) << i for i, b in enumerate(reversed(a_bits)))
                    ca = sum(((c >> b) & 1) << i for i, b in enumerate(reversed(a_bits)))
                    rb = sum(((r >> b) & 1) << i for i, b in enumerate(reversed(b_bits)))
                    cb = sum(((c >> b) & 1) << i for i, b in enumerate(reversed(b_bits)))
                    prod[r, c] = rho_a[ra, ca] * rho_b[rb, cb]
            assert np.trace(w @ prod).real > -1e-5


def test_witness_blocks_live_on_the_collection():
    rho = dicke_mix_dense(3, (0, 0.5, 0.5, 0))
    _, witness = fully_decomposable_alpha(rho, PAIR_CHAIN)
    allowed = set(witness.collection.edges)
    assert all(s.mask in allowed for s, _h in witness.blocks)
    w = witness.assemble()
    assert np.trace(w).real == pytest.approx(1.0, abs=1e-7)


def test_verify_witness_failure_modes():
    ghz = qcore.ghz_vector(3).to_density().matrix
    alpha, witness = fully_decomposable_alpha(ghz, [(1, 2, 3)])
    stripped = Witness(witness.n, witness.collection, alpha, witness.blocks, [])
    verdict = verify_witness(stripped)
    assert not verdict.ok
    assert any("cover 0 of 3" in f for f in verdict.failures)

    scaled_blocks = [(s, 2.0 * h) for s, h in witness.blocks]
    verdict = verify_witness(Witness(witness.n, witness.collection, alpha,
                                     scaled_blocks, witness.certificates))
    assert not verdict.ok
    assert any("trace" in f for f in verdict.failures)

    bad_certs = [(s, -p, q) for s, p, q in witness.certificates]
    verdict = verify_witness(Witness(witness.n, witness.collection, alpha,
                                     witness.blocks, bad_certs))
    assert not verdict.ok

    pairs_only = SubsetCollection.from_lists(3, [[1, 2], [2, 3]])
    verdict = verify_witness(Witness(witness.n, pairs_only, alpha,
                                     witness.blocks, witness.certificates))
    assert any("not in the collection" in f for f in verdict.failures)

    with pytest.raises(EdlkitError) as err:
        verify_witness(witness, np.eye(4) / 4)
    assert err.value.code == "DIM_MISMATCH"


def test_refit_certificates_roundtrip():
    rho = dicke_mix_dense(3, (0, 0.5, 0.5, 0))
    alpha, witness = fully_decomposable_alpha(rho, PAIR_CHAIN)
    bare = Witness(witness.n, witness.collection, alpha, witness.blocks, [])
    refit = refit_certificates(bare)
    verdict = verify_witness(refit, rho)
    assert verdict.ok, verdict.failures
    assert verdict.max_decomposition_dev < 1e-6


def test_edl_upper_bound_scan():
    rho = dicke_mix_dense(3, (0, 0.5, 0.5, 0))
    k, alpha, witness = edl_upper_bound(rho)
    assert k == 2 and alpha < -1e-4 and witness is not None
    ghz = qcore.ghz_vector(3).to_density().matrix
    k, alpha, _ = edl_upper_bound(ghz)
    assert k == 3 and alpha == pytest.approx(-1 / 6, abs=2e-5)
    k, alpha, witness = edl_upper_bound(np.eye(8) / 8)
    assert k is None and witness is None and alpha > -1e-5


def test_noise_threshold_requires_negative_value():
    with pytest.raises(EdlkitError) as err:
        noise_threshold(0.02, 3)
    assert err.value.code == "NOT_NEGATIVE"
    assert noise_threshold(-1 / 6, 3) == pytest.approx(4 / 7, abs=1e-12)


# ---------------------------------------------------------------------------
# determination programs
# ---------------------------------------------------------------------------

def test_pure_determination_ghz():
    ghz = qcore.ghz_vector(3)
    res = pure_determination_alpha(ghz, all_k_subsets(3, 2))
    assert res.alpha < 1e-4
    # the minimizer is a genuinely different state with the same marginals
    subs = [qcore.Subset.from_indices(3, s) for s in ((1, 2), (1, 3), (2, 3))]
    verdict = check_compatibility(res.rho, ghz.to_density().matrix, subs, tol=1e-4)
    assert verdict.compatible
    fid = float(np.real(ghz.amplitudes.conj() @ res.rho @ ghz.amplitudes))
    assert fid < 1e-4
    with pytest.raises(EdlkitError):
        pure_determination_alpha(ghz.to_density().matrix, all_k_subsets(3, 2))


def test_sdl_pure_values():
    k, alphas = sdl_pure(qcore.ghz_vector(3))
    assert k == 3
    assert alphas[2] < 1e-4 and alphas[3] > 1 - 1e-5
    ket = qcore.basis_ket(3, (0, 0, 0))
    k, alphas = sdl_pure(qcore.PureVector(3, ket))
    assert k == 1 and alphas[1] > 1 - 1e-5


def test_determination_solver_honours_iteration_cap():
    ghz = qcore.ghz_vector(3)
    with pytest.raises(EdlkitError) as err:
        pure_determination_alpha(ghz, all_k_subsets(3, 2), max_iter=2)
    assert err.value.code == "MAX_ITER"


def test_sdp_size_cap():
    with pytest.raises(EdlkitError) as err:
        fully_decomposable_alpha(np.eye(64) / 64, [(1, 2)])
    assert err.value.code == "TOO_LARGE"
    with pytest.raises(EdlkitError):
        sdl_pure(qcore.PureVector(6, np.eye(64)[0]))


# ---------------------------------------------------------------------------
# symmetric determination probe
# ---------------------------------------------------------------------------

def test_probe_flags_ghz_mixture_at_pairs():
    a = np.zeros((4, 4), dtype=complex)
    a[0, 0] = a[3, 3] = 0.5
    coeffs = SymmetricCoeffs(3, a)
    res = symmetric_sdl_probe(coeffs, 2)
    assert res.verdict == "NONUNIQUE" and not res
    assert res.max_deviation > 1e-3
    assert res.witness_coeffs is not None
    # the witness shares the level-2 reduction but is a different operator
    from edlkit.symmetric import _reduce_coeff_matrix
    dev = np.max(np.abs(_reduce_coeff_matrix(3, 2, res.witness_coeffs)
                        - _reduce_coeff_matrix(3, 2, coeffs.a)))
    assert dev < 1e-4
    assert np.max(np.abs(res.witness_coeffs - coeffs.a)) > 1e-3


def test_probe_accepts_full_level_and_single_dicke():
    a = np.zeros((4, 4), dtype=complex)
    a[0, 0] = a[3, 3] = 0.5
    res = symmetric_sdl_probe(SymmetricCoeffs(3, a), 3)
    assert res.verdict == "UNIQUE" and bool(res)
    e1 = np.zeros((4, 4), dtype=complex)
    e1[1, 1] = 1.0
    res = symmetric_sdl_probe(SymmetricCoeffs(3, e1), 2, trials=4)
    assert res.verdict == "UNIQUE"


def test_probe_validation():
    a = np.zeros((4, 4), dtype=complex)
    a[0, 0] = 1.0
    with pytest.raises(EdlkitError) as err:
        symmetric_sdl_probe(SymmetricCoeffs(3, a), 0)
    assert err.value.code == "BAD_LEVEL"
    with pytest.raises(EdlkitError) as err:
        symmetric_sdl_probe(np.eye(4) / 4, 2)
    assert err.value.code == "DIM_MISMATCH"
