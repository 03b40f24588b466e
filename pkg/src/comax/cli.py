"""Command-line front end.

    comax <command> --input job.json [--oracle] [--max-exponent K] [--output json|text]
    comax <command> --jobs jobs.json [--workers N]

Exit codes: 0 verified success, 1 input error, 2 condition not established,
3 oracle mismatch or failed verification, 4 budget exceeded, 5 unsupported
ring.  Batch runs exit with the largest code among their jobs.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, oracle
from . import serialize as ser
from .config import PID_STABILIZATION_BOUND
from .decomp import (
    check_certificate,
    decompose,
    decompose_crt,
    nontrivial_components,
    p_component_decompose,
)
from .errors import (
    BudgetExceeded,
    ComaxError,
    ConditionNotEstablished,
    UnsupportedRing,
    VerificationError,
)
from .modules import annihilator
from .nilary import minimal_nilary_decomposition, nilary_module_decompose
from .ring_core import partition_of_unity
from .torsion import stability_condition_check, torsion_report, torsion_split

COMMANDS = ("decompose", "crt", "pcomp", "nilary", "gamma", "split", "check-stability", "verify")

EXIT_OK, EXIT_INPUT, EXIT_CONDITION, EXIT_MISMATCH, EXIT_BUDGET, EXIT_UNSUPPORTED = range(6)


class OracleMismatch(Exception):
    pass


class JobError(ValueError):
    pass


# ---------------------------------------------------------------------------
# job parsing

def _ring(job):
    if "ring" not in job:
        raise JobError("job needs a 'ring'")
    return ser.ring_from_json(job["ring"])


def _module(job, R):
    if "module" not in job:
        raise JobError("job needs a 'module'")
    return ser.module_from_json(R, job["module"])


def _ideals(job, R):
    xs = job.get("ideals")
    if not isinstance(xs, list) or not xs:
        raise JobError("job needs a nonempty 'ideals' list")
    return [ser.ideal_from_json(R, x) for x in xs]


def _max_exponent(job):
    k = job.get("options", {}).get("max_exponent", PID_STABILIZATION_BOUND)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise JobError(f"max_exponent must be a positive integer, got {k!r}")
    return k


# ---------------------------------------------------------------------------
# reports

def _decomposition_json(dec, X=None):
    M = dec.module
    R = M.ring
    parts = []
    for p in dec.parts:
        entry = {
            "ideal": ser.ideal_to_json(R, p.ideal),
            "label": str(p.ideal),
            "exponent": p.exponent,
            "component": ser.submodule_to_json(p.component),
        }
        parts.append(entry)
    table = dec.condition_table
    out = {
        "module": ser.module_to_json(M),
        "parts": parts,
        "condition": {
            "J": list(table.J),
            "exponents": list(table.exponents),
            "per_generator": [
                {
                    "generator": e.generator,
                    "annihilator": ser.ideal_to_json(R, e.annihilator),
                    "J": list(e.J),
                    "exponents": list(e.exponents),
                }
                for e in table.entries
            ],
        },
        "witness": ser.witness_to_json(dec.witness),
        "verified": dec.verified,
    }
    if dec.source is not None:
        out["quotient_of"] = ser.module_to_json(dec.source)
    return out


def _certificates_json(M, X):
    """Nontriviality certificates when the exponent-one condition holds."""
    try:
        certs = nontrivial_components(M, X)
    except ConditionNotEstablished:
        return None
    R = M.ring
    out = []
    for c in certs:
        if not check_certificate(M, X, c):
            raise VerificationError("certificate does not re-verify")
        out.append({
            "index": c.index,
            "verdict": c.verdict,
            "J": list(c.J),
            "witness": None if c.witness is None else [ser.element_to_json(R, x) for x in c.witness.coords],
        })
    return out


def _oracle_compare(M, expected: dict):
    """``expected`` maps a label to (oracle query, args, structured submodule)."""
    try:
        model = oracle.enumerate(M)
    except (BudgetExceeded, UnsupportedRing) as exc:
        return {"status": "skipped", "reason": str(exc)}
    checked = []
    for label, (query, args, sub) in expected.items():
        fn = oracle.QUERIES[query]
        got = fn(model, *args)
        want = oracle.structured_set(model, sub)
        if got != want:
            raise OracleMismatch(f"oracle disagrees on {label}: {len(got)} vs {len(want)} elements")
        checked.append(label)
    return {"status": "agree", "checked": checked, "elements": model.size}


def _decomposition_oracle(dec, exact_annihilator=False):
    query = "left_annihilator" if exact_annihilator else "component"
    return _oracle_compare(
        dec.module,
        {f"part {i}": (query, (p.ideal,), p.component) for i, p in enumerate(dec.parts)},
    )


# ---------------------------------------------------------------------------
# commands

def cmd_decompose(job, use_oracle):
    R = _ring(job)
    M = _module(job, R)
    X = _ideals(job, R)
    dec = decompose(M, X, _max_exponent(job))
    res = _decomposition_json(dec)
    res["certificates"] = _certificates_json(M, X)
    return res, (_decomposition_oracle(dec) if use_oracle else None)


def cmd_crt(job, use_oracle):
    R = _ring(job)
    M = _module(job, R)
    X = _ideals(job, R)
    dec = decompose_crt(M, X)
    return _decomposition_json(dec), (_decomposition_oracle(dec, exact_annihilator=True) if use_oracle else None)


def cmd_pcomp(job, use_oracle):
    R = _ring(job)
    M = _module(job, R)
    dec = p_component_decompose(M)
    return _decomposition_json(dec), (_decomposition_oracle(dec) if use_oracle else None)


def cmd_nilary(job, use_oracle):
    R = _ring(job)
    if "ideal" in job and "module" not in job:
        I = ser.ideal_from_json(R, job["ideal"])
        nd = minimal_nilary_decomposition(R, I)
        res = {
            "ideal": ser.ideal_to_json(R, I),
            "factors": [ser.ideal_to_json(R, Q) for Q in nd.factors],
            "pseudo_radicals": [ser.ideal_to_json(R, P) for P in nd.pseudo_radicals],
            "minimal": nd.minimal,
        }
        return res, None
    M = _module(job, R)
    nm = nilary_module_decompose(M)
    res = _decomposition_json(nm.decomposition)
    res["primes"] = [ser.ideal_to_json(R, P) for P in nm.primes]
    res["prime_exponents"] = list(nm.exponents)
    res["generator_factors"] = [
        None if nd is None else [ser.ideal_to_json(R, Q) for Q in nd.factors]
        for nd in nm.generator_decompositions
    ]
    return res, (_decomposition_oracle(nm.decomposition) if use_oracle else None)


def cmd_gamma(job, use_oracle):
    R = _ring(job)
    M = _module(job, R)
    X = _ideals(job, R)
    rep = torsion_report(M, X)
    res = {
        "module": ser.module_to_json(M),
        "gamma": ser.submodule_to_json(rep.gamma),
        "rho": ser.submodule_to_json(rep.rho),
        "pretorsion_free": rep.pretorsion_free,
    }
    orc = None
    if use_oracle:
        orc = _oracle_compare(M, {"gamma": ("gamma", (X,), rep.gamma), "rho": ("rho", (X,), rep.rho)})
    return res, orc


def cmd_split(job, use_oracle):
    R = _ring(job)
    M = _module(job, R)
    X = _ideals(job, R)
    G, F = torsion_split(M, X)
    res = {
        "module": ser.module_to_json(M),
        "gamma": ser.submodule_to_json(G),
        "complement": ser.submodule_to_json(F),
    }
    orc = _oracle_compare(M, {"gamma": ("gamma", (X,), G)}) if use_oracle else None
    return res, orc


def cmd_check_stability(job, use_oracle):
    R = _ring(job)
    X = _ideals(job, R)
    bound = job.get("options", {}).get("exponent_bound", 3)
    rep = stability_condition_check(R, X, bound)
    res = {
        "exponent_bound": rep.exponent_bound,
        "right_ideals": rep.right_ideal_count,
        "essential_right_ideals": rep.essential_count,
        "holds": rep.hypothesis_holds,
        "failure": None if rep.failure is None else {
            "J": list(rep.failure[0]),
            "exponents": list(rep.failure[1]),
            "right_ideal": [ser.element_to_json(R, e) for e in rep.failure[2]],
        },
        "socle_absorbs_intersection": rep.socle_absorbs_intersection,
        "intersection_idempotent_in_socle": rep.intersection_idempotent_in_socle,
    }
    orc = None
    if use_oracle:
        try:
            model = oracle.enumerate(R)
        except (BudgetExceeded, UnsupportedRing) as exc:
            orc = {"status": "skipped", "reason": str(exc)}
        else:
            n_all = len(oracle.right_ideals(model))
            n_ess = len(oracle.essential_right_ideals(model))
            if (n_all, n_ess) != (rep.right_ideal_count, rep.essential_count):
                raise OracleMismatch(f"oracle counts {n_all}/{n_ess} right/essential ideals")
            orc = {"status": "agree", "checked": ["right_ideals", "essential_right_ideals"], "elements": model.size}
    return res, orc


def cmd_verify(job, use_oracle):
    """Re-check supplied partition-of-unity witnesses, and the decomposition
    of the module if one is given."""
    R = _ring(job)
    X = _ideals(job, R)
    exps = job.get("exponents", [1] * len(X))
    if not isinstance(exps, list) or len(exps) != len(X):
        raise JobError("'exponents' must match the ideals")
    if "witnesses" in job:
        ws = job["witnesses"]
        if not isinstance(ws, list) or len(ws) != len(X):
            raise JobError("'witnesses' must match the ideals")
        elements = [ser.element_from_json(R, w) for w in ws]
        check = ser.witness_check(R, X, exps, elements)
        source = "supplied"
    else:
        pou = partition_of_unity(R, X, exps)
        check = ser.witness_to_json(pou)
        source = "constructed"
    ok = check["sum_is_one"] and all(check["memberships"])
    res = {"witnesses": dict(check, source=source)}
    orc = None
    if "module" in job:
        M = _module(job, R)
        dec = decompose(M, X, _max_exponent(job))
        res["decomposition_verified"] = dec.verified
        res["annihilator"] = ser.ideal_to_json(R, annihilator(M))
        if use_oracle:
            orc = _decomposition_oracle(dec)
    res["verified"] = ok
    if not ok:
        raise VerificationError(json.dumps(res, sort_keys=True))
    return res, orc


HANDLERS = {
    "decompose": cmd_decompose,
    "crt": cmd_crt,
    "pcomp": cmd_pcomp,
    "nilary": cmd_nilary,
    "gamma": cmd_gamma,
    "split": cmd_split,
    "check-stability": cmd_check_stability,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------

def run(job, command=None, use_oracle=None) -> tuple[int, dict]:
    """Run one job and return (exit status, report)."""
    report = {"tool": {"name": "comax", "version": __version__}}
    try:
        if not isinstance(job, dict):
            raise JobError("job must be a JSON object")
        cmd = job.get("command", command)
        if command is not None and cmd != command:
            raise JobError(f"job is a {cmd!r} job, not {command!r}")
        if cmd not in HANDLERS:
            raise JobError(f"unknown command {cmd!r}")
        report["command"] = cmd
        if use_oracle is None:
            use_oracle = bool(job.get("options", {}).get("oracle_check", False))
        if "ring" in job:
            report["ring"] = job["ring"]
        result, orc = HANDLERS[cmd](job, use_oracle)
        report["result"] = result
        if orc is not None:
            report["oracle"] = orc
        code, status = EXIT_OK, "ok"
    except ConditionNotEstablished as exc:
        code, status = EXIT_CONDITION, "condition_not_established"
        report["error"] = {"message": str(exc), "generator": exc.generator}
    except (OracleMismatch, VerificationError) as exc:
        code, status = EXIT_MISMATCH, "mismatch"
        report["error"] = {"message": str(exc)}
    except BudgetExceeded as exc:
        code, status = EXIT_BUDGET, "budget_exceeded"
        report["error"] = {"message": str(exc)}
    except UnsupportedRing as exc:
        code, status = EXIT_UNSUPPORTED, "unsupported_ring"
        report["error"] = {"message": str(exc)}
    except (ComaxError, ValueError, TypeError, KeyError) as exc:
        code, status = EXIT_INPUT, "input_error"
        report["error"] = {"message": str(exc), "type": type(exc).__name__}
    report["status"] = status
    report["exit_code"] = code
    return code, report


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_text(report) -> str:
    lines = [f"{report.get('command', '?')}: {report['status']} (exit {report['exit_code']})"]
    if "error" in report:
        lines.append(f"  error: {report['error']['message']}")
    res = report.get("result", {})
    for i, part in enumerate(res.get("parts", [])):
        comp = part["component"]
        inv = comp["invariants"]
        desc = "zero" if comp["zero"] else f"invariant factors {inv['invariant_factors']}, free rank {inv['free_rank']}"
        lines.append(f"  part {i} [{part['label']}] exponent {part['exponent']}: {desc}")
    if "witness" in res:
        w = res["witness"]
        lines.append(f"  witnesses {w['elements']} sum_is_one={w['sum_is_one']} memberships={w['memberships']}")
    for key in ("gamma", "rho", "complement"):
        if key in res:
            inv = res[key]["invariants"]
            lines.append(f"  {key}: invariant factors {inv['invariant_factors']}, free rank {inv['free_rank']}")
    if "factors" in res:
        lines.append(f"  factors: {res['factors']}")
    if "holds" in res:
        lines.append(f"  condition holds: {res['holds']} ({res['essential_right_ideals']} essential of {res['right_ideals']})")
    if "verified" in res and "parts" not in res:
        lines.append(f"  verified: {res['verified']}")
    if "oracle" in report:
        lines.append(f"  oracle: {report['oracle']['status']}")
    return "\n".join(lines) + "\n"


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise JobError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise JobError(f"malformed JSON in {path}: {exc}") from None


def build_parser():
    ap = argparse.ArgumentParser(prog="comax", description="Module decompositions by comaximal ideals.")
    ap.add_argument("--version", action="version", version=f"comax {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="job file (JSON object)")
    src.add_argument("--jobs", help="batch file (JSON list of jobs)")
    ap.add_argument("--oracle", action="store_true", help="cross-check finite instances by enumeration")
    ap.add_argument("--max-exponent", type=int, help="exponent budget for the condition search")
    ap.add_argument("--output", choices=("json", "text"), default="json")
    ap.add_argument("--workers", type=int, default=4, help="threads for --jobs")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    use_oracle = True if args.oracle else None
    try:
        data = _load(args.input or args.jobs)
    except JobError as exc:
        report = {"command": args.command, "error": {"message": str(exc), "type": "JobError"},
                  "exit_code": EXIT_INPUT, "status": "input_error",
                  "tool": {"name": "comax", "version": __version__}}
        sys.stdout.write(dumps(report) if args.output == "json" else render_text(report))
        return EXIT_INPUT

    def prepare(job):
        if isinstance(job, dict) and args.max_exponent is not None:
            job = dict(job, options=dict(job.get("options", {}), max_exponent=args.max_exponent))
        return run(job, args.command, use_oracle)

    if args.jobs:
        if not isinstance(data, list):
            data = [data]
        with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
            results = list(pool.map(prepare, data))
        code = max((c for c, _ in results), default=EXIT_OK)
        reports = [r for _, r in results]
        if args.output == "json":
            sys.stdout.write(json.dumps(reports, sort_keys=True, indent=2) + "\n")
        else:
            sys.stdout.write("".join(render_text(r) for r in reports))
        return code
    code, report = prepare(data)
    sys.stdout.write(dumps(report) if args.output == "json" else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
