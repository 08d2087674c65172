"""``qclab`` command-line front end.

Every subcommand prints one JSON report on stdout::

    {"schema": "qclab/1", "command": ..., "inputs": {...},
     "results": {...}, "metadata": {"seed", "gate_count", "depth", "wall_time_ms"}}

Keys are sorted, so two runs with the same inputs and seed produce the same
bytes apart from ``wall_time_ms``.  Domain errors exit with status 1 and a
JSON ``error`` object; bad usage exits with status 2 (argparse).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from .errors import BadFormat, QclabError

SCHEMA = "qclab/1"


# ---------------------------------------------------------------------------
# serialization


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def make_report(command: str, inputs: dict, results: dict, seed: int | None = None, circuit=None, wall_ms: float = 0.0) -> dict:
    meta = {
        "seed": seed,
        "gate_count": circuit.gate_count() if circuit is not None else {},
        "depth": circuit.depth() if circuit is not None else 0,
        "wall_time_ms": round(wall_ms, 3),
    }
    return {"schema": SCHEMA, "command": command, "inputs": inputs, "results": results, "metadata": meta}


def emit_report(report: dict, fmt: str = "json") -> str:
    """Serialize a report.

    JSON output sorts every key, which also orders histograms by bitstring.
    CSV output writes ``results["rows"]`` under ``results["columns"]``.
    """
    if fmt == "csv":
        res = report["results"]
        if "rows" not in res or "columns" not in res:
            raise BadFormat(f"{report['command']} has no tabular output")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(res["columns"])
        for row in res["rows"]:
            w.writerow([row[c] for c in res["columns"]])
        return buf.getvalue()
    return json.dumps(_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _amplitudes(state: np.ndarray, tol: float = 1e-12) -> dict[str, list[float]]:
    n = state.shape[0].bit_length() - 1
    return {format(i, f"0{n}b"): [float(a.real), float(a.imag)] for i, a in enumerate(state) if abs(a) > tol}


def _csv_list(text: str, cast: Callable = float) -> list:
    try:
        return [cast(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise BadFormat(f"cannot parse list {text!r}") from None


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise BadFormat(f"cannot parse complex number {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands; each returns (inputs, results, circuit or None)


def cmd_bell(a):
    from .algorithms import bell_circuit
    from .circuit import measure_all, simulate
    from .entangle import entanglement_of_formation, purity, reduced_density, von_neumann_entropy

    c = bell_circuit()
    psi = simulate(c)
    rho = reduced_density(psi, [0])
    rec = measure_all(psi, a.shots, a.seed)
    res = {
        "counts": rec.counts,
        "amplitudes": _amplitudes(psi),
        "purity_reduced": purity(rho),
        "entropy_reduced": von_neumann_entropy(rho),
        "eof": entanglement_of_formation(psi),
    }
    return {"shots": a.shots}, res, c


def _sampled(builder, a):
    from .circuit import measure_all, simulate

    c = builder(a.n)
    psi = simulate(c)
    rec = measure_all(psi, a.shots, a.seed)
    return {"n": a.n, "shots": a.shots}, {"counts": rec.counts, "amplitudes": _amplitudes(psi)}, c


def cmd_ghz(a):
    from .algorithms import ghz_circuit

    return _sampled(ghz_circuit, a)


def cmd_wstate(a):
    from .algorithms import w_state_circuit

    return _sampled(w_state_circuit, a)


def cmd_adder(a):
    from .algorithms import full_adder, full_adder_circuit, full_adder_table

    c = full_adder_circuit()
    if a.a is None and a.b is None and a.cin is None:
        rows = [dict(zip(("a", "b", "cin", "sum", "carry"), r)) for r in full_adder_table()]
        return {}, {"table": rows, "columns": ["a", "b", "cin", "sum", "carry"], "rows": rows}, c
    bits = [a.a or 0, a.b or 0, a.cin or 0]
    s, carry = full_adder(*bits)
    return {"a": bits[0], "b": bits[1], "cin": bits[2]}, {"sum": s, "carry": carry}, c


def cmd_dj(a):
    from .algorithms import OracleSpec, deutsch_jozsa

    if a.kind == "constant":
        spec = OracleSpec("constant", a.n, value=a.value)
    else:
        if a.table is None:
            raise BadFormat("--table is required for a balanced oracle")
        spec = OracleSpec("balanced", a.n, table=tuple(int(ch) for ch in a.table))
    r = deutsch_jozsa(spec)
    return (
        {"n": a.n, "kind": a.kind, "value": a.value, "table": a.table},
        {"answer": r.answer, "measured": r.measured, "probability": r.probability, "oracle_calls": r.oracle_calls},
        r.circuit,
    )


def cmd_bv(a):
    from .algorithms import bernstein_vazirani

    r = bernstein_vazirani(a.s)
    return {"s": a.s}, {"answer": r.answer, "probability": r.probability, "oracle_calls": r.oracle_calls}, r.circuit


def cmd_grover(a):
    from .algorithms import grover

    marked = [m for group in a.marked for m in group.split(",") if m]
    it = a.iterations if a.iterations == "auto" else int(a.iterations)
    r = grover(a.n, marked, it, a.shots, a.seed)
    res = {
        "counts": r.record.counts,
        "iterations": r.iterations,
        "success_probability": r.success_probability,
        "probabilities": r.probabilities,
    }
    return {"n": a.n, "marked": marked, "iterations": a.iterations, "shots": a.shots}, res, r.circuit


def cmd_qft(a):
    from .algorithms import qft, qft_matrix
    from .circuit import circuit_unitary, simulate
    from .core import basis_state

    c = qft(a.n, inverse=a.inverse)
    bits = a.input if a.input is not None else "0" * a.n
    if len(bits) != a.n:
        raise BadFormat(f"--input must have {a.n} bits")
    psi = simulate(c, basis_state(bits))
    err = float(np.max(np.abs(circuit_unitary(c) - qft_matrix(a.n, a.inverse))))
    return {"n": a.n, "inverse": a.inverse, "input": bits}, {"amplitudes": _amplitudes(psi), "matrix_error": err}, c


def cmd_qpe(a):
    from .algorithms import qpe

    r = qpe(a.theta, a.counting, a.shots, a.seed)
    res = {"best": r.best, "counts": r.histogram.counts, "distribution": {format(k, f"0{a.counting}b"): float(p) for k, p in enumerate(r.distribution)}}
    return {"theta": a.theta, "counting": a.counting, "shots": a.shots}, res, r.circuit


def cmd_shor(a):
    from .algorithms import order_quantum, shor_factor

    r = shor_factor(a.N, seed=a.seed, a=a.a, method=a.method, counting=a.counting, strict=a.strict)
    res = {"factors": list(r.factors), "route": r.route, "a": r.a, "r": r.r, "attempts": r.attempts, "history": r.history}
    circ = None
    if a.method == "quantum" and r.route == "order-finding":
        circ = order_quantum(r.a, a.N, counting=a.counting, seed=a.seed + r.attempts).circuit
    return {"N": a.N, "a": a.a, "method": a.method, "counting": a.counting, "strict": a.strict}, res, circ


def _model_hamiltonian(a):
    from .vqe import O3Model, OscillatorModel, build_o3, build_oscillator

    if a.model == "aho":
        return build_oscillator(OscillatorModel(a.qubits, a.g, a.h, a.basis)), {"qubits": a.qubits, "g": a.g, "h": a.h, "basis": a.basis}
    return build_o3(O3Model(a.beta, 4, a.coupling)), {"beta": a.beta, "sites": 4, "coupling": a.coupling}


def cmd_vqe(a):
    from .pauli import pauli_decompose
    from .vqe import Ansatz, OptimizerConfig, exact_ground_energy, vqe_minimize

    hmat, model_inputs = _model_hamiltonian(a)
    h = pauli_decompose(hmat)
    layers = a.layers if a.layers is not None else (2 if a.model == "aho" else 3)
    ansatz = Ansatz(h.n_qubits, layers)
    r = vqe_minimize(h, ansatz, OptimizerConfig(max_iters=a.max_iters, restarts=a.restarts, seed=a.seed))
    exact = exact_ground_energy(hmat)
    res = {
        "energy": r.energy,
        "exact": exact,
        "abs_error": abs(r.energy - exact),
        "params": r.params,
        "iterations": r.iterations,
        "restarts": r.restarts,
        "evaluations": r.evaluations,
    }
    if a.model == "o3":
        res["energy_per_site"] = r.energy / 4
        res["exact_per_site"] = exact / 4
    inputs = {"model": a.model, "layers": layers, "restarts": a.restarts, "max_iters": a.max_iters, **model_inputs}
    return inputs, res, ansatz.circuit(r.params)


def cmd_ed(a):
    from .pauli import load_hamiltonian

    if a.hamiltonian:
        hmat = load_hamiltonian(a.hamiltonian).matrix()
        inputs = {"hamiltonian": a.hamiltonian}
    else:
        hmat, inputs = _model_hamiltonian(a)
        inputs["model"] = a.model
    evals = np.linalg.eigvalsh(hmat)
    res = {"ground_energy": float(evals[0]), "levels": evals[: a.levels]}
    if not a.hamiltonian and a.model == "o3":
        res["ground_energy_per_site"] = float(evals[0]) / 4
    return inputs, res, None


def _hamiltonian_arg(a):
    from .pauli import load_hamiltonian, sum_from_labels

    if a.hamiltonian:
        return load_hamiltonian(a.hamiltonian), {"hamiltonian": a.hamiltonian}
    labels = [s.strip() for s in a.labels.split(",") if s.strip()]
    coeffs = _csv_list(a.coeffs) if a.coeffs else [1.0] * len(labels)
    return sum_from_labels(coeffs, labels), {"labels": labels, "coeffs": coeffs}


def cmd_trotter(a):
    from .hamsim import TrotterPlan, trotter_circuit, trotter_error

    h, inputs = _hamiltonian_arg(a)
    steps = _csv_list(a.steps, int)
    orders = _csv_list(a.order, int)
    rows = []
    for order in orders:
        for r in steps:
            rows.append({"r": r, "order": order, "error": trotter_error(h, TrotterPlan(order, r, a.time))})
    circ = trotter_circuit(h, TrotterPlan(orders[0], steps[0], a.time))
    inputs.update({"time": a.time, "steps": steps, "orders": orders})
    return inputs, {"columns": ["r", "order", "error"], "rows": rows}, circ


def cmd_taylor_bound(a):
    from .hamsim import choose_taylor_order, taylor_truncation_bound

    res = {}
    if a.K is not None:
        res["bound"] = taylor_truncation_bound(a.alpha, a.t, a.r, a.K)
    if a.epsilon is not None:
        res["order"] = choose_taylor_order(a.alpha * a.t / a.r, a.epsilon)
    if not res:
        raise BadFormat("give --K for a bound or --epsilon to choose an order")
    return {"alpha": a.alpha, "t": a.t, "r": a.r, "K": a.K, "epsilon": a.epsilon}, res, None


EXAMPLE_8X8 = "example-8x8"


def _example_matrix() -> np.ndarray:
    from .pauli import sum_from_labels

    return sum_from_labels([0.5, -0.5, -0.5, 0.5], ["ZYZ", "XXX", "YYY", "III"]).matrix()


def _load_matrix(path: str) -> np.ndarray:
    if path == EXAMPLE_8X8:
        return _example_matrix()
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, dict):
        if set(obj) != {"dim", "re", "im"}:
            raise BadFormat("matrix JSON needs exactly the keys dim, re, im")
        m = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
        if m.shape != (obj["dim"], obj["dim"]):
            raise BadFormat("matrix shape disagrees with dim")
        return m
    return np.asarray(obj, dtype=complex)


def cmd_decompose(a):
    from .pauli import pauli_decompose

    m = _load_matrix(a.matrix)
    h = pauli_decompose(m, tol=a.tol)
    terms = {t.label: t.coeff for t in h.terms}
    err = float(np.max(np.abs(h.matrix() - m)))
    return {"matrix": a.matrix, "tol": a.tol}, {"terms": terms, "n_terms": len(terms), "reconstruction_error": err}, None


def cmd_qec(a):
    from . import qec

    code = qec.get_code(a.code)
    logical = [_complex(t) for t in a.logical.split(",")]
    res: dict[str, Any] = {
        "table": {"".join("+" if s > 0 else "-" for s in k): v for k, v in qec.syndrome_table(code).items()},
        "stabilizers": [g.label for g in qec.stabilizers(code)],
    }
    if a.error:
        t = qec.run_trial(code, logical, a.error)
        res["syndrome"] = t.syndromes[0] if len(t.syndromes) == 1 else t.syndromes
        res["syndrome_probabilities"] = t.probabilities
        res["recovered_fidelity"] = t.fidelity
        res["recovered"] = t.recovered
    if a.trials:
        if code.name != "bitflip":
            raise BadFormat("Monte-Carlo runs are available for the bit-flip code only")
        res["monte_carlo_failure_rate"] = qec.monte_carlo_bitflip(a.p, a.trials, a.seed)
        res["analytic_failure_rate"] = qec.failure_probability_bitflip(a.p)
    inputs = {"code": code.name, "error": a.error, "logical": a.logical, "p": a.p, "trials": a.trials}
    return inputs, res, qec.encode_circuit(code)


def cmd_cv(a):
    from . import cvfock as cv

    inputs: dict[str, Any] = {"cutoff": a.cutoff}
    res: dict[str, Any] = {}
    if a.identity:
        inputs["identity"] = a.identity
        res["defect"] = cv.verify_commutator_identity(a.identity, a.cutoff)
        res["kind"] = cv.identity_kind(a.identity)
        res["tolerance"] = cv.IDENTITY_TOLERANCE[res["kind"]]
        return inputs, res, None
    if a.gate:
        params = [_complex(p) for p in a.params.split(",")] if a.params else []
        u = cv.cv_gate(a.gate, params, a.cutoff)
        inputs.update({"gate": a.gate, "params": a.params})
        res["unitarity_defect"] = cv.unitarity_defect(u)
        res["dimension"] = u.shape[0]
        if u.shape[0] == a.cutoff:
            out = u[:, 0]
            res["amplitudes_from_vacuum"] = out
        return inputs, res, None
    alpha = _complex(a.alpha)
    if a.state == "coherent":
        st = cv.coherent_state(alpha, a.cutoff)
    elif a.state == "cat":
        st = cv.cat_state(alpha, a.phi, a.cutoff)
    elif a.state == "squeezed":
        st = cv.squeezed_state(a.r, a.phi, a.cutoff)
    else:
        st = cv.fock_state(a.n, a.cutoff)
    x, p = cv.quadratures(a.cutoff)
    inputs.update({"state": a.state, "alpha": a.alpha, "phi": a.phi, "r": a.r, "n": a.n})
    res = {
        "amplitudes": st.amps,
        "leakage": st.leakage,
        "mean_photon_number": st.photon_number(),
        "x_mean": st.expect(x).real,
        "p_mean": st.expect(p).real,
        "x2_mean": st.expect(x @ x).real,
        "p2_mean": st.expect(p @ p).real,
    }
    return inputs, res, None


def cmd_entropy(a):
    from .algorithms import bell_circuit, ghz_circuit, w_state_circuit
    from .circuit import simulate
    from .entangle import concurrence, purity, reduced_density, schmidt, von_neumann_entropy

    if a.state == "bell":
        psi = simulate(bell_circuit())
    elif a.state == "ghz":
        psi = simulate(ghz_circuit(a.n))
    elif a.state == "w":
        psi = simulate(w_state_circuit(a.n))
    else:
        psi = np.asarray([_complex(t) for t in a.amplitudes.split(",")]) if a.amplitudes else None
        if psi is None:
            raise BadFormat("--amplitudes is required for a custom state")
        psi = psi / np.linalg.norm(psi)
    n = psi.shape[0].bit_length() - 1
    if 2**n != psi.shape[0]:
        raise BadFormat("amplitude count must be a power of two")
    keep = _csv_list(a.keep, int) if a.keep else [0]
    rho = reduced_density(psi, keep)
    res = {
        "purity": purity(rho),
        "entropy": von_neumann_entropy(rho),
        "entropy_bits": von_neumann_entropy(rho, 2),
        "schmidt_number": schmidt(psi, keep).schmidt_number,
    }
    if n == 2:
        res["concurrence"] = concurrence(psi)
    return {"state": a.state, "n": n, "keep": keep}, res, None


def cmd_bounds(a):
    from .hamsim import cnot_cost_bounds

    rows = []
    for n in range(a.n_min, a.n_max + 1):
        lo, hi = cnot_cost_bounds(n)
        rows.append({"n": n, "lower": lo, "qsd": hi})
    return {"n_min": a.n_min, "n_max": a.n_max}, {"columns": ["n", "lower", "qsd"], "rows": rows}, None


def cmd_run(a):
    from .circuit import Circuit, measure_all, simulate

    c = Circuit.load(a.circuit)
    psi = simulate(c)
    res = {"amplitudes": _amplitudes(psi)}
    if a.shots:
        res["counts"] = measure_all(psi, a.shots, a.seed).counts
    return {"circuit": a.circuit, "shots": a.shots}, res, c


# ---------------------------------------------------------------------------
# parser


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qclab", description="Quantum-computing demos on a dense statevector simulator.")
    p.add_argument("--version", action="version", version=f"qclab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_, seed=True, csv_ok=False):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=fn)
        if seed:
            sp.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        if csv_ok:
            sp.add_argument("--csv", action="store_true", help="emit CSV rows instead of JSON")
        return sp

    sp = add("bell", cmd_bell, "prepare a Bell pair, sample it and report its entanglement")
    sp.add_argument("--shots", type=int, default=1024)

    for name, fn, text in (("ghz", cmd_ghz, "GHZ state"), ("wstate", cmd_wstate, "W state")):
        sp = add(name, fn, f"prepare and sample an n-qubit {text}")
        sp.add_argument("--n", type=int, default=3)
        sp.add_argument("--shots", type=int, default=1024)

    sp = add("adder", cmd_adder, "quantum full adder (full truth table without arguments)", seed=False, csv_ok=True)
    for flag in ("--a", "--b", "--cin"):
        sp.add_argument(flag, type=int, choices=(0, 1))

    sp = add("dj", cmd_dj, "Deutsch-Jozsa on a constant or balanced oracle", seed=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--kind", choices=("constant", "balanced"), required=True)
    sp.add_argument("--value", type=int, default=0, choices=(0, 1))
    sp.add_argument("--table", help="balanced truth table as a 0/1 string indexed by x")

    sp = add("bv", cmd_bv, "Bernstein-Vazirani hidden-string recovery", seed=False)
    sp.add_argument("--s", required=True, help="hidden bitstring")

    sp = add("grover", cmd_grover, "Grover search over n qubits")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--marked", action="append", required=True, help="marked bitstring(s); repeat or comma-separate")
    sp.add_argument("--iterations", default="auto")
    sp.add_argument("--shots", type=int, default=1024)

    sp = add("qft", cmd_qft, "apply the QFT circuit to a basis state", seed=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--input", help="input bitstring, highest qubit first")
    sp.add_argument("--inverse", action="store_true")

    sp = add("qpe", cmd_qpe, "phase estimation of the phase gate P(2*pi*theta)")
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--counting", type=int, default=3)
    sp.add_argument("--shots", type=int, default=1024)

    sp = add("shor", cmd_shor, "factor N with classical or phase-estimation order finding")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--a", type=int)
    sp.add_argument("--method", choices=("classical", "quantum"), default="classical")
    sp.add_argument("--counting", type=int, help="counting qubits for the quantum path (default 2*width)")
    sp.add_argument("--strict", action="store_true", help="raise on even or prime-power N")

    def model_flags(sp):
        sp.add_argument("--model", choices=("aho", "o3"), default="aho")
        sp.add_argument("--qubits", type=int, default=3)
        sp.add_argument("--g", type=float, default=0.02)
        sp.add_argument("--h", type=float, default=0.0)
        sp.add_argument("--basis", choices=("energy", "position"), default="energy")
        sp.add_argument("--beta", type=float, default=0.1)
        sp.add_argument("--coupling", choices=("isotropic", "listing"), default="isotropic")

    sp = add("vqe", cmd_vqe, "variational ground-state search with Nelder-Mead")
    model_flags(sp)
    sp.add_argument("--layers", type=int, help="entangling layers (default 2 for aho, 3 for o3)")
    sp.add_argument("--restarts", type=int, default=5)
    sp.add_argument("--max-iters", type=int, default=5000)

    sp = add("ed", cmd_ed, "exact diagonalization of a model or Hamiltonian file", seed=False)
    model_flags(sp)
    sp.add_argument("--hamiltonian", help="Hamiltonian JSON file")
    sp.add_argument("--levels", type=int, default=4)

    sp = add("trotter", cmd_trotter, "product-formula error sweep", seed=False, csv_ok=True)
    sp.add_argument("--hamiltonian", help="Hamiltonian JSON file")
    sp.add_argument("--labels", default="X,Z", help="comma-separated Pauli labels (default X,Z)")
    sp.add_argument("--coeffs", help="comma-separated coefficients (default all 1)")
    sp.add_argument("--time", type=float, default=1.0)
    sp.add_argument("--order", default="1", help="comma-separated orders from {1,2}")
    sp.add_argument("--steps", default="1,2,4,8,16,32,64", help="comma-separated step counts")

    sp = add("taylor-bound", cmd_taylor_bound, "truncated-Taylor error bound or order choice", seed=False)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--K", type=int)
    sp.add_argument("--epsilon", type=float)

    sp = add("decompose", cmd_decompose, "Pauli decomposition of a Hermitian matrix", seed=False)
    sp.add_argument("--matrix", default=EXAMPLE_8X8, help=f"matrix JSON file, or {EXAMPLE_8X8}")
    sp.add_argument("--tol", type=float, default=1e-12)

    sp = add("qec", cmd_qec, "encode, corrupt, correct and decode with a small code")
    sp.add_argument("--code", choices=("bitflip", "phaseflip", "shor9"), default="shor9")
    sp.add_argument("--error", help="error spec such as X@4 or U@7:123")
    sp.add_argument("--logical", default="1,0", help="logical amplitudes a,b (complex allowed, e.g. 0.6,0.8i)")
    sp.add_argument("--p", type=float, default=0.1, help="flip probability for Monte-Carlo")
    sp.add_argument("--trials", type=int, default=0, help="Monte-Carlo trials (bit-flip code)")

    sp = add("cv", cmd_cv, "truncated Fock-space states, gates and identity checks", seed=False)
    sp.add_argument("--cutoff", type=int, default=30)
    sp.add_argument("--state", choices=("coherent", "cat", "squeezed", "fock"), default="coherent")
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--phi", type=float, default=0.0)
    sp.add_argument("--r", type=float, default=0.5)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--gate", help="gate name instead of a state")
    sp.add_argument("--params", help="comma-separated gate parameters")
    sp.add_argument("--identity", help="operator identity name instead of a state")

    sp = add("entropy", cmd_entropy, "purity and entanglement entropy of a pure state", seed=False)
    sp.add_argument("--state", choices=("bell", "ghz", "w", "custom"), default="bell")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--amplitudes", help="comma-separated amplitudes for a custom state")
    sp.add_argument("--keep", help="comma-separated qubits to keep (default 0)")

    sp = add("bounds", cmd_bounds, "CNOT-count lower bound and decomposition cost", seed=False, csv_ok=True)
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=8)

    sp = add("run", cmd_run, "simulate a circuit JSON file")
    sp.add_argument("--circuit", required=True)
    sp.add_argument("--shots", type=int, default=0)
    return p


def parse_and_dispatch(argv: list[str] | None = None) -> dict:
    """Parse ``argv`` and run the subcommand, returning its report.

    Raises ``SystemExit(2)`` on usage errors and lets domain errors escape.
    """
    args = _parser().parse_args(argv)
    t0 = time.perf_counter()
    inputs, results, circ = args.func(args)
    wall = (time.perf_counter() - t0) * 1e3
    report = make_report(args.command, inputs, results, getattr(args, "seed", None), circ, wall)
    report["_format"] = "csv" if getattr(args, "csv", False) else "json"
    return report


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report = parse_and_dispatch(argv)
    except SystemExit as e:  # argparse usage errors and --help
        return int(e.code or 0)
    except (QclabError, ValueError, OSError) as e:
        kind = e.kind if isinstance(e, QclabError) else type(e).__name__
        command = next((t for t in argv if not t.startswith("-")), None)
        err = {"schema": SCHEMA, "command": command, "error": {"kind": kind, "message": str(e)}}
        sys.stdout.write(json.dumps(err, sort_keys=True) + "\n")
        return 1
    fmt = report.pop("_format")
    sys.stdout.write(emit_report(report, fmt))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
