"""Command-line front end with machine-readable JSON reports.

Every report is a single JSON document embedding the tool version and
the fully resolved configuration; identical invocations with the same
seed produce byte-identical output.  Exit codes: 0 success, 1 any
verification failure, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__, gadgets, ring, sim, su2, synth, words
from .cyclotomic import RationalPolynomial, cyclotomic_poly, is_cyclotomic
from .errors import UnsupportedPrecisionError, ValidationError

DEFAULT_SEED = 0

TARGET_TAGS = {
    "h": lambda: words.GATE_MATRICES["H"],
    "t": lambda: words.GATE_MATRICES["T"],
    "s": lambda: words.GATE_MATRICES["S"],
    "z8": lambda: su2.pauli_power("z", 0.125),
}

VERIFY_SUITES = ("identities", "ring", "cyclotomic", "rho", "gadgets", "all")


@dataclass
class RunConfig:
    """Resolved invocation: command, flags, seed, optional output path."""

    command: str
    parameters: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    output_path: str | None = None


class UsageError(Exception):
    pass


def _jsonable(obj):
    """Coerce stray numpy scalars so reports serialize deterministically."""
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def _state_to_json(state: sim.StateVector) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


def _state_from_json(data: dict) -> sim.StateVector:
    if not isinstance(data, dict) or "amplitudes" not in data:
        raise UsageError("state file is missing the field 'amplitudes'")
    try:
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    except (TypeError, ValueError):
        raise UsageError("field 'amplitudes' must hold [re, im] pairs") from None
    n = max(len(amps), 1).bit_length() - 1
    if len(amps) < 2 or 1 << n != len(amps):
        raise UsageError("field 'amplitudes' must have length 2^n")
    return sim.StateVector(n, amps)


def _record_to_json(rec: sim.MeasurementRecord) -> dict:
    return {
        "outcome": rec.outcome,
        "probability": rec.probability,
        "postState": _state_to_json(rec.post_state),
    }


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"cannot open {path!r}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path!r}: {exc}") from None


def _resolve_target(target: str) -> np.ndarray:
    if target in TARGET_TAGS:
        return TARGET_TAGS[target]()
    data = _load_json(target)
    try:
        rows = [[complex(re, im) for re, im in row] for row in data]
    except (TypeError, ValueError):
        raise UsageError(
            f"target file {target!r} must hold a 2x2 matrix of [re, im] pairs"
        ) from None
    mat = np.array(rows)
    if mat.shape != (2, 2):
        raise UsageError(f"target in {target!r} has shape {mat.shape}, expected 2x2")
    return mat


def _run_synth(cfg: RunConfig) -> tuple[int, dict]:
    target = _resolve_target(cfg.parameters["target"])
    result = synth.approx_su2(target, cfg.parameters["eps"])
    return 0, {"result": result.to_json_dict()}


def _run_constants(cfg: RunConfig) -> tuple[int, dict]:
    frame = synth.lambda_frame()
    return 0, {
        "lambda": frame.lam,
        "cosLambdaPi": float(np.cos(frame.lam * np.pi)),
        "axis1": [float(x) for x in frame.axis1],
        "axis2": [float(x) for x in frame.axis2],
        "axisDot": float(frame.axis1 @ frame.axis2),
        "gen1Word": frame.gen1_word.names(),
    }


def _run_simulate(cfg: RunConfig) -> tuple[int, dict]:
    data = _load_json(cfg.parameters["circuit"])
    for fieldname in ("width", "gates"):
        if fieldname not in data:
            raise UsageError(f"circuit file is missing the field {fieldname!r}")
    try:
        gates = tuple(
            words.Gate(entry["name"], tuple(entry["targets"])) for entry in data["gates"]
        )
        w = words.GateWord(gates, int(data["width"]))
    except (KeyError, TypeError):
        raise UsageError("each gate needs fields 'name' and 'targets'") from None
    except ValidationError as exc:
        raise UsageError(f"bad circuit: {exc}") from None
    state = sim.zero_state(w.width)
    state = sim.run_word(state, w)
    rng = np.random.default_rng(cfg.seed)
    recs = []
    for m in data.get("measurements", ()):
        basis = m.get("basis", "z")
        if basis == "z":
            rec = sim.measure_z(state, int(m["qubit"]), rng)
        elif basis == "cat":
            rec = sim.measure_cat_basis(state, tuple(m["block"]), rng)
        else:
            raise UsageError(f"unknown measurement basis {basis!r}")
        state = rec.post_state
        recs.append(_record_to_json(rec))
    return 0, {"state": _state_to_json(state), "records": recs}


def _run_gadget(cfg: RunConfig) -> tuple[int, dict]:
    rng = np.random.default_rng(cfg.seed)
    kind = cfg.parameters["protocol"]
    if kind == "t":
        if cfg.parameters.get("input"):
            psi = _state_from_json(_load_json(cfg.parameters["input"]))
        else:
            psi = sim.plus_state(1)
        run = gadgets.t_gadget(psi, rng, force_branch=cfg.parameters.get("force_branch"))
    elif kind == "eigenprep":
        which = cfg.parameters.get("u", "uphi")
        if which == "uphi":
            psi = (
                _state_from_json(_load_json(cfg.parameters["input"]))
                if cfg.parameters.get("input")
                else sim.plus_state(1)
            )
            run = gadgets.prepare_eigenstate(
                gadgets.uphi(), psi, cat_size=cfg.parameters.get("cat_size", 3), rng=rng
            )
        elif which == "toffoli":
            run = gadgets.toffoli_state_run(rng, cat_size=cfg.parameters.get("cat_size", 3))
        else:
            raise UsageError(f"unknown eigenprep operator {which!r}")
    else:
        raise UsageError(f"unknown gadget {kind!r}")
    return 0, {
        "protocol": run.protocol,
        "outcomes": [_record_to_json(r) for r in run.outcome_trace],
        "output": _state_to_json(run.output),
        "corrections": list(run.corrections_applied),
    }


def _suite_identities() -> dict:
    results = [r.to_json_dict() for r in gadgets.identity_report()]
    return {"identities": results, "holds": all(r["holds"] for r in results)}


def _suite_ring(seed: int, n_words: int = 200) -> dict:
    rng = np.random.default_rng(seed)
    closed = 0
    for _ in range(n_words):
        length = int(rng.integers(1, 51))
        mat = ring.ExactMatrix.identity(8)
        for _ in range(length):
            name = ring.SHOR_BASIS[rng.integers(0, len(ring.SHOR_BASIS))]
            arity = {"CNOT": 2, "TOFFOLI": 3}.get(name, 1)
            targets = tuple(rng.permutation(3)[:arity])
            mat = ring.exact_mul(mat, ring.exact_gate(name, targets, 3))
        if ring.gaussian_obstruction(mat):
            closed += 1
    t_exact = ring.exact_gate("T", (0,), 1)
    t_obstructed = not ring.gaussian_obstruction(t_exact)
    roundtrip = ring.ExactMatrix.from_json_dict(t_exact.to_json_dict()) == t_exact
    return {
        "wordsChecked": n_words,
        "wordsClosed": closed,
        "tGate": {"gaussianReachable": not t_obstructed, "matrix": t_exact.to_json_dict()},
        "serializationRoundtrip": roundtrip,
        "holds": closed == n_words and t_obstructed and roundtrip,
    }


def _suite_cyclotomic() -> dict:
    quartic = RationalPolynomial.from_json(["1/1", "1/1", "1/4", "1/1", "1/1"])
    quadratic = RationalPolynomial.from_json(["1/1", "-1/2", "1/1"])
    v1 = is_cyclotomic(quartic)
    v2 = is_cyclotomic(quadratic)
    matches = all(
        is_cyclotomic(cyclotomic_poly(n)).witness_order == n for n in range(1, 51)
    )
    holds = (
        not v1.rational
        and v1.reason == "non-integer-coefficient"
        and not v2.rational
        and v2.reason == "non-integer-coefficient"
        and matches
    )
    return {
        "quarticRejected": not v1.rational,
        "quadraticRejected": not v2.rational,
        "cyclotomicMatchesUpTo50": matches,
        "holds": holds,
    }


def _suite_rho() -> dict:
    rhos = synth.rho_generators()
    eigs = np.sort_complex(np.linalg.eigvals(rhos["r2"]))
    expected = np.sort_complex(
        np.array([1.0, 1.0, synth.RHO_EIGENVALUE, np.conj(synth.RHO_EIGENVALUE)])
    )
    spectrum_res = float(np.max(np.abs(eigs - expected)))
    fixed_res = max(
        float(np.linalg.norm(rhos[k] @ v - v))
        for k, v in synth.FIXED_STATES.items()
    )
    report = synth.rho_basis_forms()
    worst = max(report.residuals)
    holds = spectrum_res < 1e-10 and fixed_res < 1e-12 and worst < 1e-6
    return {
        "spectrumResidual": spectrum_res,
        "fixedStateResidual": fixed_res,
        "basisForms": report.to_json_dict(),
        "holds": holds,
    }


def _suite_gadgets(seed: int) -> dict:
    rng = np.random.default_rng(seed)
    t_mat = words.GATE_MATRICES["T"]
    worst_fidelity = 1.0
    for _ in range(20):
        raw = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi = sim.StateVector(1, raw / np.linalg.norm(raw))
        for branch in (0, 1):
            run = gadgets.t_gadget(psi, force_branch=branch)
            fid = abs(np.vdot(run.output.amplitudes, t_mat @ psi.amplitudes))
            worst_fidelity = min(worst_fidelity, fid)
    eig_res = 0.0
    plus_count = 0
    trials = 400
    for _ in range(trials):
        run = gadgets.prepare_eigenstate(gadgets.uphi(), sim.zero_state(1), rng=rng)
        sign = run.outcome_trace[0].outcome
        plus_count += sign == 1
        res = np.linalg.norm(gadgets.uphi() @ run.output.amplitudes - sign * run.output.amplitudes)
        eig_res = max(eig_res, float(res))
    toff = gadgets.toffoli_state_run(rng)
    and_state = np.zeros(8, dtype=complex)
    and_state[[0, 2, 4, 7] if toff.outcome_trace[0].outcome == 1 else [1, 3, 5, 6]] = 0.5
    toff_res = float(np.linalg.norm(toff.output.amplitudes - and_state))
    freq = plus_count / trials
    holds = (
        worst_fidelity > 1 - 1e-12
        and eig_res < 1e-10
        and abs(freq - 0.5) < 5 * np.sqrt(0.25 / trials)
        and toff_res < 1e-12
    )
    return {
        "tGadgetWorstFidelity": worst_fidelity,
        "eigenprepResidual": eig_res,
        "eigenprepPlusFrequency": freq,
        "toffoliStateResidual": toff_res,
        "holds": holds,
    }


def _run_verify(cfg: RunConfig) -> tuple[int, dict]:
    suite = cfg.parameters["suite"]
    runners = {
        "identities": lambda: _suite_identities(),
        "ring": lambda: _suite_ring(cfg.seed),
        "cyclotomic": lambda: _suite_cyclotomic(),
        "rho": lambda: _suite_rho(),
        "gadgets": lambda: _suite_gadgets(cfg.seed),
    }
    if suite == "all":
        report = {name: run() for name, run in runners.items()}
        holds = all(sub["holds"] for sub in report.values())
        report["holds"] = holds
    else:
        report = runners[suite]()
        holds = report["holds"]
    return (0 if holds else 1), {"suite": suite, "report": report}


_RUNNERS = {
    "synth": _run_synth,
    "simulate": _run_simulate,
    "gadget": _run_gadget,
    "verify": _run_verify,
    "constants": _run_constants,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a resolved configuration; returns (exit_code, JSON text)."""
    try:
        code, payload = _RUNNERS[cfg.command](cfg)
    except (UsageError, ValidationError, UnsupportedPrecisionError) as exc:
        err = {
            "tool": "ftbasis",
            "version": __version__,
            "command": cfg.command,
            "error": str(exc),
        }
        return 2, json.dumps(err, sort_keys=True, default=_jsonable)
    document = {
        "tool": "ftbasis",
        "version": __version__,
        "command": cfg.command,
        "config": {
            "parameters": cfg.parameters,
            "seed": cfg.seed,
            "out": cfg.output_path,
        },
    }
    document.update(payload)
    return code, json.dumps(document, sort_keys=True, default=_jsonable)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftbasis",
        description="Gate-set compilation and verification over {H, T, CNOT}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="approximate a single-qubit unitary")
    p_synth.add_argument("--target", required=True, help="tag (h|t|s|z8) or JSON path")
    p_synth.add_argument("--eps", type=float, required=True)
    p_synth.add_argument("--out", default=None)

    p_sim = sub.add_parser("simulate", help="run a JSON circuit")
    p_sim.add_argument("--circuit", required=True)
    p_sim.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sim.add_argument("--out", default=None)

    p_gadget = sub.add_parser("gadget", help="run a measurement-based protocol")
    gsub = p_gadget.add_subparsers(dest="protocol", required=True)
    p_t = gsub.add_parser("t")
    p_t.add_argument("--input", default=None)
    p_t.add_argument("--force-branch", type=int, choices=(0, 1), default=None)
    p_t.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_t.add_argument("--out", default=None)
    p_e = gsub.add_parser("eigenprep")
    p_e.add_argument("--u", choices=("uphi", "toffoli"), default="uphi")
    p_e.add_argument("--input", default=None)
    p_e.add_argument("--cat-size", type=int, default=3)
    p_e.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_e.add_argument("--out", default=None)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=VERIFY_SUITES, required=True)
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument("--out", default=None)

    p_const = sub.add_parser("constants", help="print the ladder-frame constants")
    p_const.add_argument("--out", default=None)
    return parser


def config_from_args(argv: list[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    params: dict = {}
    if args.command == "synth":
        params = {"target": args.target, "eps": args.eps}
    elif args.command == "simulate":
        params = {"circuit": args.circuit}
    elif args.command == "gadget":
        params = {"protocol": args.protocol}
        if args.protocol == "t":
            params["input"] = args.input
            params["force_branch"] = args.force_branch
        else:
            params["u"] = args.u
            params["input"] = args.input
            params["cat_size"] = args.cat_size
    elif args.command == "verify":
        params = {"suite": args.suite}
    return RunConfig(
        command=args.command,
        parameters=params,
        seed=getattr(args, "seed", DEFAULT_SEED),
        output_path=args.out,
    )


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    code, text = run(cfg)
    print(text)
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
