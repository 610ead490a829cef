"""Command-line front end: every capability behind one binary.

Exit codes: 0 success, 1 domain error (invalid inputs or state), 2
usage error.  All output is deterministic for fixed arguments (JSON
with sorted keys, fixed seeds, order-independent reductions), so runs
are byte-for-byte reproducible across thread counts.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from .boundscalc import (
    approx_rank_upper,
    hard_state,
    hard_state_coordinates,
    longest_exp_subsequence,
    qubit_power_lower_bound,
    rank_lower_bound,
    t_power_lower_bound,
    truncation_distance,
    verify_subset_sum,
    doubling_targets,
)
from .exactnum import Cyclotomic8, format_rational
from .f2alg import BitVector
from .genericrank import realify_decomposition
from .ranksearch import (
    Decomposition,
    min_spanning_symmetric,
    multiplicativity_check,
    stabilizer_rank,
)
from .stabset import count_stabilizers, enumerate_stabilizers
from .tsim import amplitude, parse_circuit

_COMPLEX_LITERAL = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*(?P<im>[+-]\s*\d+(?:/\d+)?)?\s*i?\s*$"
)


def parse_complex_rational(text: str) -> Cyclotomic8:
    """Parse "a+bi" with rational a, b (e.g. "2", "-1/3+4i", "1/2-1/2i")."""
    t = text.strip().replace(" ", "")
    if not t:
        raise ValueError("empty complex literal")
    if t.endswith("i"):
        body = t[:-1]
        # Split the imaginary coefficient off the tail.
        m = re.match(r"^(?P<re>[+-]?\d+(?:/\d+)?)?(?P<im>[+-]?\d*(?:/\d+)?)$", body)
        if m is None:
            raise ValueError(f"bad complex literal {text!r}")
        re_part = m.group("re") or "0"
        im_part = m.group("im")
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        # A pure-imaginary literal like "2i" parses re="2", im="".
        if m.group("im") == "" and m.group("re") is not None:
            re_part, im_part = "0", m.group("re")
        return Cyclotomic8.from_gaussian(Fraction(re_part), Fraction(im_part))
    return Cyclotomic8.from_gaussian(Fraction(t), Fraction(0))


def _load_state_file(path: str) -> list[Cyclotomic8]:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError("state file must be a JSON list of amplitude quadruples")
    return [Cyclotomic8.from_json(entry) for entry in data]


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        flat = _flatten(payload)
        writer.writerow(sorted(flat))
        writer.writerow([flat[k] for k in sorted(flat)])
        text = buf.getvalue().rstrip("\n")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _flatten(payload, prefix=""):
    out = {}
    if isinstance(payload, dict):
        for k, v in payload.items():
            out.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(payload, list):
        out[prefix.rstrip(".")] = json.dumps(payload)
    else:
        out[prefix.rstrip(".")] = payload
    return out


def _add_common(sub):
    sub.add_argument("--threads", type=int, default=None, help="worker pool size")
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument("--out", default=None, help="write output to a file")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--exact", action="store_true", default=True)
    sub.add_argument("--float", dest="use_float", action="store_true")
    sub.add_argument("--tol", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabrank",
        description="Exact stabilizer-rank toolkit and Clifford+T simulator",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("count", help="number of stabilizer states")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--real", action="store_true")
    _add_common(p)

    p = subs.add_parser("enumerate", help="write the full dictionary as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--real", action="store_true")
    p.add_argument("--out", default=None, required=False)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--exact", action="store_true", default=True)
    p.add_argument("--float", dest="use_float", action="store_true")
    p.add_argument("--tol", type=float, default=None)

    p = subs.add_parser("rank", help="exact stabilizer rank of a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--real", action="store_true")
    p.add_argument("--max-r", type=int, default=None)
    _add_common(p)

    p = subs.add_parser("chi-n", help="smallest symmetric-subspace spanning set")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = subs.add_parser("lower-bound", help="doubling-chain rank lower bounds")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--state", help="dense state JSON file")
    g.add_argument("--t-power", type=int, help="n for the n-fold T state")
    g.add_argument("--qubit", help='single-qubit state "c0,c1" with a+bi entries')
    p.add_argument("--power", type=int, default=None, help="tensor power for --qubit")
    _add_common(p)

    p = subs.add_parser("hard-state", help="the explicit doubling product state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, default=None)
    _add_common(p)

    p = subs.add_parser("moulton-check", help="randomized subset-sum refutations")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    _add_common(p)

    p = subs.add_parser("multiplicativity", help="rank certification for the alpha family")
    p.add_argument("--alpha", required=True, help='Gaussian rational "a+bi"')
    p.add_argument("--stage", choices=("rank1", "pairs", "triples"), default="rank1")
    p.add_argument("--checkpoint", default=None, help="resumable checkpoint file")
    _add_common(p)

    p = subs.add_parser("simulate", help="strong simulation of a Clifford+T circuit")
    p.add_argument("--circuit", required=True)
    p.add_argument("--outcome", required=True)
    p.add_argument("--method", choices=("decomposition", "dense"), default="decomposition")
    _add_common(p)

    p = subs.add_parser("realify", help="convert a decomposition to real stabilizer states")
    p.add_argument("--decomposition", required=True)
    _add_common(p)

    return parser


def _cmd_count(args):
    return {"n": args.n, "real": args.real, "count": count_stabilizers(args.n, args.real)}


def _cmd_enumerate(args):
    dictionary = enumerate_stabilizers(args.n, args.real)
    payload = {
        "n": args.n,
        "real": args.real,
        "count": len(dictionary),
        "states": [s.to_json() for s in dictionary],
    }
    return payload


def _cmd_rank(args):
    psi = _load_state_file(args.state)
    result = stabilizer_rank(psi, real_only=args.real, max_r=args.max_r)
    payload = {
        "rank": result.rank,
        "certified": result.certified_no_smaller,
        "stats": result.stats,
        "witness": result.witness.to_json() if result.witness else None,
    }
    return payload


def _cmd_chi_n(args):
    value, witness, exact = min_spanning_symmetric(args.n)
    dictionary = enumerate_stabilizers(args.n)
    return {
        "n": args.n,
        "chi_n": value,
        "exact": exact,
        "lower_bound": args.n + 1,
        "witness_indices": witness,
        "witness_states": [dictionary[j].to_json() for j in witness],
    }


def _cmd_lower_bound(args):
    if args.t_power is not None:
        value, ceiling = t_power_lower_bound(args.t_power)
        return {"kind": "t-power", "n": args.t_power, "bound": value, "ceil": ceiling}
    if args.qubit is not None:
        if args.power is None:
            raise ValueError("--qubit requires --power")
        c0_text, c1_text = args.qubit.split(",")
        psi = (parse_complex_rational(c0_text), parse_complex_rational(c1_text))
        res = qubit_power_lower_bound(psi, args.power)
        return {
            "kind": "qubit-power",
            "n": args.power,
            "normalization": res.applied,
            "k": res.k,
            "bound": res.value,
            "ceil": res.ceiling,
        }
    psi = _load_state_file(args.state)
    cert = longest_exp_subsequence(psi)
    return {
        "kind": "state",
        "chain_length": cert.p,
        "chain_indices": list(cert.indices),
        "bound_ceil": rank_lower_bound(psi),
    }


def _cmd_hard_state(args):
    cert = longest_exp_subsequence(list(hard_state_coordinates(args.n)))
    payload = {
        "n": args.n,
        "chain_length": cert.p,
        "rank_lower_bound": rank_lower_bound(
            hard_state(args.n) if args.n <= 12 else list(hard_state_coordinates(args.n))
        ),
    }
    if args.delta is not None:
        payload["delta"] = args.delta
        payload["approx_rank_upper"] = approx_rank_upper(args.n, args.delta)
        payload["truncation_distance"] = truncation_distance(
            args.n, payload["approx_rank_upper"]
        )
    return payload


def _cmd_moulton_check(args):
    import math
    import random

    rng = random.Random(args.seed)
    p = args.p
    alpha = doubling_targets(p)
    max_len = math.ceil(p / math.log2(p)) - 1
    failures = 0
    for _ in range(args.trials):
        length = rng.randint(1, max(1, max_len))
        beta = []
        for _ in range(length):
            if rng.random() < 0.5:
                beta.append(Cyclotomic8.from_int(1 << rng.randrange(p)))
            else:
                beta.append(
                    Cyclotomic8.from_gaussian(
                        Fraction(rng.randint(-(1 << p), 1 << p), rng.randint(1, 8)),
                        Fraction(rng.randint(-4, 4), rng.randint(1, 4)),
                    )
                )
        if verify_subset_sum(alpha, beta) is not None:
            failures += 1
    return {
        "p": p,
        "trials": args.trials,
        "max_candidate_length": max_len,
        "counterexamples": failures,
    }


def _cmd_multiplicativity(args):
    alpha = parse_complex_rational(args.alpha)
    chunk_state = None
    if args.checkpoint:
        done: dict[int, set[int]] = {}
        key = {"alpha": alpha.to_json(), "stage": args.stage}
        if os.path.exists(args.checkpoint):
            with open(args.checkpoint) as fh:
                saved = json.load(fh)
            if saved.get("key") == key:
                done = {int(r): set(v) for r, v in saved.get("done", {}).items()}

        def on_chunk(r, c, n_chunks, witness):
            done.setdefault(r, set()).add(c)
            with open(args.checkpoint, "w") as fh:
                json.dump(
                    {"key": key, "done": {str(r): sorted(v) for r, v in done.items()}},
                    fh,
                )

        chunk_state = {"chunks": 16, "done": done, "on_chunk": on_chunk}

    def progress(r, done_n, total):
        print(f"stage r={r}: {done_n}/{total}", file=sys.stderr, flush=True)

    report = multiplicativity_check(
        alpha, args.stage, progress=progress, chunk_state=chunk_state
    )
    return report.to_json()


def _cmd_simulate(args):
    with open(args.circuit) as fh:
        circuit = parse_circuit(fh.read())
    outcome = BitVector.from_string(args.outcome)
    amp = amplitude(circuit, outcome, method=args.method)
    prob = amp.magnitude_sq()
    if args.use_float:
        tol = args.tol if args.tol is not None else 1e-9
        z = amp.to_complex()
        return {
            "outcome": args.outcome,
            "amplitude": [_chop(z.real, tol), _chop(z.imag, tol)],
            "probability": {"float": float(prob)},
        }
    return {
        "outcome": args.outcome,
        "amplitude": amp.to_json(),
        "probability": {
            "u": format_rational(prob.u),
            "v": format_rational(prob.v),
            "float": float(prob),
        },
    }


def _chop(x: float, tol: float) -> float:
    return 0.0 if abs(x) < tol else x


def _cmd_realify(args):
    with open(args.decomposition) as fh:
        d = Decomposition.from_json(json.load(fh))
    real = realify_decomposition(d)
    return {
        "input_terms": len(d),
        "real_terms": len(real),
        "decomposition": real.to_json(),
    }


_HANDLERS = {
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "rank": _cmd_rank,
    "chi-n": _cmd_chi_n,
    "lower-bound": _cmd_lower_bound,
    "hard-state": _cmd_hard_state,
    "moulton-check": _cmd_moulton_check,
    "multiplicativity": _cmd_multiplicativity,
    "simulate": _cmd_simulate,
    "realify": _cmd_realify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", None) is not None and not getattr(args, "use_float", False):
        parser.error("--tol is only valid together with --float")
    if getattr(args, "threads", None):
        os.environ["STABRANK_THREADS"] = str(args.threads)
    try:
        payload = _HANDLERS[args.command](args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(payload, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
