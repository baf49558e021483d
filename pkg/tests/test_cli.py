"""End-to-end command-line behavior through in-process main() calls."""

import json
from fractions import Fraction

import numpy as np
import pytest

from edlkit import cli, qcore
from edlkit.errors import EdlkitError

ENVELOPE_KEYS = {"command", "inputs", "result", "certificates", "flags", "timing_ms"}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def diagonal_state(n, lam):
    return {"format": cli.STATE_FORMAT, "n": n, "kind": "dicke_diagonal",
            "rational": all(isinstance(x, str) for x in lam), "lambda": list(lam)}


def test_edl_single_dicke(tmp_path, capsys):
    path = write(tmp_path, "state.json", diagonal_state(5, ["0", "0", "1", "0", "0", "0"]))
    code, doc = run(capsys, "edl", "--state", path)
    assert code == 0
    assert set(doc) == ENVELOPE_KEYS
    assert doc["result"]["edl"] == 2
    assert doc["flags"] == ["EXACT"]
    assert doc["timing_ms"] >= 0


def test_sdl_rational_mixture(tmp_path, capsys):
    path = write(tmp_path, "state.json", diagonal_state(4, ["1/2", "0", "1/2", "0", "0"]))
    code, doc = run(capsys, "sdl", "--state", path)
    assert code == 0
    assert doc["result"]["sdl"] == 3
    assert doc["result"]["exact"] is True


def test_marginal_rational_bit_exact(tmp_path, capsys):
    path = write(tmp_path, "state.json", diagonal_state(4, ["1/2", "0", "1/2", "0", "0"]))
    code, doc = run(capsys, "marginal", "--state", path, "--keep", "2,4")
    assert code == 0
    out_state = doc["result"]["state"]
    assert out_state["lambda"] == ["7/12", "1/3", "1/12"]
    # the emitted artifact is itself a valid input; reduce once more
    path2 = write(tmp_path, "marg.json", out_state)
    code, doc2 = run(capsys, "marginal", "--state", path2, "--keep", "1")
    assert code == 0
    lam = [Fraction(x) for x in doc2["result"]["state"]["lambda"]]
    # p(excited) = (1/3)/2 + 1/12
    assert lam == [Fraction(3, 4), Fraction(1, 4)]


def test_marginal_float_round_trip(tmp_path, capsys):
    values = [0.123456789012345, 0.3, 0.576543210987655, 0.0, 0.0]
    path = write(tmp_path, "state.json",
                 {"format": cli.STATE_FORMAT, "n": 4, "kind": "dicke_diagonal",
                  "rational": False, "lambda": values})
    code, doc = run(capsys, "marginal", "--state", path, "--keep", "1,2,3,4")
    assert code == 0
    emitted = doc["result"]["state"]["lambda"]
    assert all(isinstance(x, float) for x in emitted)
    assert max(abs(a - b) for a, b in zip(emitted, values)) < 1e-15


def test_marginal_dense_state(tmp_path, capsys):
    ghz = qcore.ghz_vector(3).to_density().matrix
    doc_in = {"format": cli.STATE_FORMAT, "n": 3, "kind": "dense",
              "rho_real": ghz.real.tolist(), "rho_imag": ghz.imag.tolist()}
    path = write(tmp_path, "ghz.json", doc_in)
    code, doc = run(capsys, "marginal", "--state", path, "--keep", "1,3")
    assert code == 0
    got = np.array(doc["result"]["state"]["rho_real"])
    expect = np.zeros((4, 4))
    expect[0, 0] = expect[3, 3] = 0.5
    assert np.max(np.abs(got - expect)) < 1e-12


def test_edl_symmetric_coeffs(tmp_path, capsys):
    a = np.zeros((4, 4))
    a[0, 0] = a[3, 3] = a[0, 3] = a[3, 0] = 0.25
    a[1, 1] = 0.5
    path = write(tmp_path, "sym.json",
                 {"format": cli.STATE_FORMAT, "n": 3, "kind": "symmetric",
                  "a_real": a.tolist(), "a_imag": np.zeros((4, 4)).tolist()})
    code, doc = run(capsys, "edl", "--state", path)
    assert code == 0
    assert doc["result"]["edl"] == 3
    assert doc["flags"] == ["EXACT"]


def test_edl_sdp_on_pure_state(tmp_path, capsys):
    amp = qcore.ghz_vector(3).amplitudes
    path = write(tmp_path, "psi.json",
                 {"format": cli.STATE_FORMAT, "n": 3, "kind": "pure_dense",
                  "amp_real": amp.real.tolist(), "amp_imag": amp.imag.tolist()})
    code, doc = run(capsys, "edl", "--state", path)
    assert code == 0
    assert doc["inputs"]["method"] == "sdp"
    assert doc["result"]["edl"] == 3
    assert doc["result"]["threshold"] == pytest.approx(4 / 7, abs=1e-3)
    assert doc["flags"] == ["SDP_BOUND"]


def test_witness_verify_pipeline(tmp_path, capsys):
    state_path = write(tmp_path, "state.json", diagonal_state(3, ["0", "1/2", "1/2", "0"]))
    out_path = str(tmp_path / "w.json")
    code, doc = run(capsys, "witness", "--state", state_path, "--k", "2",
                    "--out", out_path)
    assert code == 0
    assert doc["result"]["alpha"] < -1e-3
    assert 0 < doc["result"]["threshold"] < 1
    code, doc = run(capsys, "verify-witness", "--witness", out_path,
                    "--state", state_path)
    assert code == 0
    assert doc["result"]["ok"] is True
    assert doc["result"]["value"] < -1e-3


def test_witness_nonnegative_flag(tmp_path, capsys):
    # the maximally mixed diagonal state is separable: no negative witness
    path = write(tmp_path, "state.json", diagonal_state(3, ["1/4", "1/4", "1/4", "1/4"]))
    code, doc = run(capsys, "witness", "--state", path, "--k", "2")
    assert code == 0
    assert doc["result"]["threshold"] is None
    assert "NOT_NEGATIVE" in doc["flags"]


def test_witness_file_round_trip(tmp_path, capsys):
    state_path = write(tmp_path, "state.json", diagonal_state(3, ["0", "1/2", "1/2", "0"]))
    out_path = str(tmp_path / "w.json")
    run(capsys, "witness", "--state", state_path, "--k", "2", "--out", out_path)
    with open(out_path) as fh:
        doc = json.load(fh)
    w = cli.witness_from_json(doc)
    again = cli.witness_to_json(w)
    assert again == doc


def test_determine_command(tmp_path, capsys):
    amp = qcore.ghz_vector(3).amplitudes
    path = write(tmp_path, "psi.json",
                 {"format": cli.STATE_FORMAT, "n": 3, "kind": "pure_dense",
                  "amp_real": amp.real.tolist(), "amp_imag": amp.imag.tolist()})
    code, doc = run(capsys, "determine", "--state", path, "--k", "2")
    assert code == 0
    assert doc["result"]["determined"] is False
    assert doc["result"]["alpha"] < 1e-4
    sibling = doc["certificates"]["compatible_state"]
    assert sibling["kind"] == "dense" and len(sibling["rho_real"]) == 8
    code, doc = run(capsys, "determine", "--state", path, "--k", "3")
    assert code == 0
    assert doc["result"]["determined"] is True


def test_transitivity_command(tmp_path, capsys):
    coll_path = write(tmp_path, "coll.json", [[1, 2, 3], [3, 4, 5]])
    code, doc = run(capsys, "transitivity", "--collection", coll_path,
                    "--target", "2,3,4", "--edl", "3")
    assert code == 0
    assert doc["result"]["holds"] is True
    code, doc = run(capsys, "transitivity", "--collection", coll_path,
                    "--target", "1,2", "--edl", "3")
    assert code == 0
    assert doc["result"]["holds"] is False and doc["result"]["reasons"]


def test_min_collection_command(capsys):
    code, doc = run(capsys, "min-collection", "--n", "5", "--k", "3")
    assert code == 0
    assert doc["result"]["count"] == 2
    assert all(len(s) == 3 for s in doc["result"]["collection"])


def test_graph_bounds_command(tmp_path, capsys):
    path = write(tmp_path, "g.json",
                 {"format": cli.GRAPH_FORMAT, "n": 4,
                  "edges": [[1, 2], [2, 3], [3, 4], [1, 4], [1, 3]]})
    code, doc = run(capsys, "graph-bounds", "--graph", path)
    assert code == 0
    assert (doc["result"]["lo"], doc["result"]["hi"]) == (3, 3)
    assert doc["certificates"]["orbit_min_max_degree"] == 2
    assert doc["certificates"]["witness_edges"]


def test_gap_demo_families(capsys):
    code, doc = run(capsys, "gap-demo", "--family", "pure", "--n", "5")
    assert code == 0
    assert (doc["result"]["edl"], doc["result"]["sdl"], doc["result"]["gap"]) == (2, 4, 2)
    assert doc["certificates"]["m0_min_eig"] < 0
    code, doc = run(capsys, "gap-demo", "--family", "mixed", "--n", "4")
    assert code == 0
    assert doc["result"]["gap"] == 2
    assert doc["certificates"]["quadratic_value"] < 0
    code, doc = run(capsys, "gap-demo", "--family", "mixed", "--n", "3")
    assert code == 0
    assert doc["result"]["gap"] == 1


def test_input_error_paths(tmp_path, capsys):
    code, doc = run(capsys, "edl", "--state", str(tmp_path / "missing.json"))
    assert code == 2
    assert doc["error"]["code"] == "BAD_FORMAT"

    path = write(tmp_path, "short.json", diagonal_state(4, ["1/2", "1/2"]))
    code, doc = run(capsys, "edl", "--state", path)
    assert code == 2
    assert doc["error"]["code"] == "DIM_MISMATCH"

    path = write(tmp_path, "kind.json",
                 {"format": cli.STATE_FORMAT, "n": 2, "kind": "stabilizer"})
    code, doc = run(capsys, "edl", "--state", path)
    assert code == 2
    assert doc["error"]["code"] == "BAD_KIND"

    path = write(tmp_path, "fmt.json", {"n": 2, "kind": "dicke_diagonal"})
    code, doc = run(capsys, "sdl", "--state", path)
    assert code == 2
    assert doc["error"]["code"] == "BAD_FORMAT"

    path = write(tmp_path, "num.json", diagonal_state(2, ["1/0", "0", "0"]))
    code, doc = run(capsys, "edl", "--state", path)
    assert code == 2
    assert doc["error"]["code"] == "BAD_FORMAT"

    # dense payload that is not a density matrix
    bad = np.eye(4).tolist()
    path = write(tmp_path, "dense.json",
                 {"format": cli.STATE_FORMAT, "n": 2, "kind": "dense",
                  "rho_real": bad, "rho_imag": np.zeros((4, 4)).tolist()})
    code, doc = run(capsys, "edl", "--state", path)
    assert code == 2
    assert doc["error"]["code"] == "NOT_DENSITY"


def test_sdl_rejects_dense_mixed_state(tmp_path, capsys):
    rho = np.eye(8) / 8
    path = write(tmp_path, "dense.json",
                 {"format": cli.STATE_FORMAT, "n": 3, "kind": "dense",
                  "rho_real": rho.tolist(), "rho_imag": np.zeros((8, 8)).tolist()})
    code, doc = run(capsys, "sdl", "--state", path)
    assert code == 2
    assert doc["error"]["code"] == "BAD_KIND"


def test_solver_failures_exit_three(tmp_path, capsys, monkeypatch):
    def boom(*_a, **_k):
        raise EdlkitError("MAX_ITER", "splitting did not converge")

    monkeypatch.setattr(cli.wit, "fully_decomposable_alpha", boom)
    path = write(tmp_path, "state.json", diagonal_state(3, ["0", "1/2", "1/2", "0"]))
    code, doc = run(capsys, "witness", "--state", path, "--k", "2")
    assert code == 3
    assert doc["error"]["code"] == "MAX_ITER"
    assert "converge" in doc["error"]["message"]


def test_gap_demo_rejects_unknown_mixed_size(capsys):
    code, doc = run(capsys, "gap-demo", "--family", "mixed", "--n", "6")
    assert code == 2
    assert doc["error"]["code"] == "BAD_LAMBDA"
