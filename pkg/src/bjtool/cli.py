"""Command line front end: JSON problem files in, JSON reports out.

    bjtool <cmd> --input <file> [--mode projective --twist d] [--seed k]
                 [--oracle-precision N] [--output <file>]

Exit codes: 0 success, 1 parse error, 2 assumption violated, 3 unsupported,
4 internal check failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BJError, SchemaError
from .ring_core import Poly, check_bj_characteristic, field_from_descriptor

SCHEMA = "bjtool-report/1"
COMMANDS = ("analyze", "closure", "cyclic", "ramify", "quartic", "quintic-reduce", "cover", "galois", "oracle", "selftest")


@dataclass
class ProblemFile:
    field: object
    raw: dict
    n: int | None = None
    s: Poly | None = None
    t: Poly | None = None
    mode: str = "affine"
    twist: int | None = None
    sigmas: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def echo(self) -> dict:
        return self.raw


# parsing


def _coefficient(F, v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(f"coefficient {v!r} must be an integer or a 'num/den' string")
    if isinstance(v, str):
        try:
            Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"cannot parse coefficient {v!r}") from exc
    return F(v)


def parse_poly(F, value) -> Poly:
    """A coefficient list (ascending) or {"factored": {"unit": u, "factors": [[coeffs, e], ...]}}."""
    if isinstance(value, list):
        return Poly(F, [_coefficient(F, c) for c in value], coerce=False)
    if isinstance(value, dict) and "factored" in value:
        fac = value["factored"]
        if not isinstance(fac, dict) or "unit" not in fac:
            raise SchemaError("factored form needs a unit")
        factors = []
        for item in fac.get("factors", []):
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], int)):
                raise SchemaError("factors are [coefficients, exponent] pairs")
            factors.append((parse_poly(F, item[0]), item[1]))
        out = Poly.const(F, _coefficient(F, fac["unit"]))
        for f, e in factors:
            if e < 0:
                raise SchemaError("negative exponent in factored form")
            out = out * f**e
        return out
    raise SchemaError(f"cannot read polynomial {value!r}")


def parse_problem(data: bytes | str) -> ProblemFile:
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict) or "field" not in raw:
        raise SchemaError("a problem file is a JSON object with a 'field' entry")
    desc = raw["field"]
    if not isinstance(desc, dict) or desc.get("type") not in ("fp", "q", "fq"):
        raise SchemaError("field must be {'type': 'fp', 'p': ...}, {'type': 'q'} or {'type': 'fq', ...}")
    if desc["type"] in ("fp", "fq") and not isinstance(desc.get("p"), int):
        raise SchemaError("finite fields need an integer 'p'")
    F = field_from_descriptor(desc)
    prob = ProblemFile(F, raw)
    if "n" in raw:
        if not isinstance(raw["n"], int) or raw["n"] < 3:
            raise SchemaError("n must be an integer >= 3")
        prob.n = raw["n"]
        check_bj_characteristic(F, prob.n)
    for key in ("s", "t"):
        if key in raw:
            setattr(prob, key, parse_poly(F, raw[key]))
    mode = raw.get("mode", "affine")
    if mode not in ("affine", "projective"):
        raise SchemaError("mode is 'affine' or 'projective'")
    prob.mode = mode
    twist = raw.get("twist")
    if twist is not None and not isinstance(twist, int):
        raise SchemaError("twist must be an integer")
    prob.twist = twist
    sig = raw.get("sigma", {})
    if not isinstance(sig, dict):
        raise SchemaError("sigma must map 'sigma2'.. to polynomials")
    prob.sigmas = {k: parse_poly(F, v) for k, v in sig.items()}
    prob.options = raw.get("options", {})
    return prob


# commands


def _require_bj(prob: ProblemFile):
    if prob.n is None or prob.s is None or prob.t is None:
        raise SchemaError("this command needs n, s and t")
    return prob.n, prob.s, prob.t


def _minimal_dec(prob: ProblemFile, seed: int, warnings: list):
    from .bj_data import decompose, make_minimal

    n, s, t = _require_bj(prob)
    inp, lam, drop = make_minimal(n, s, t, prob.mode, prob.twist, seed)
    if not lam.is_unit() or drop:
        warnings.append("input was not minimal; reduced before analysis")
    minimality = {
        "was_minimal": lam.is_unit() and drop == 0,
        "lambda": lam.to_json(),
        "twist_reduction_at_infinity": drop,
        "s": inp.s.to_json(),
        "t": inp.t.to_json(),
        "twist": inp.twist,
    }
    return decompose(inp, seed), minimality


def _irreducibility(inp, seed: int, warnings: list) -> dict:
    from .ring_core import irreducibility_check

    res = irreducibility_check(inp.z_coeffs(), seed=seed)
    if res.status == "unverified":
        warnings.append("irreducibility of z^n + s z + t unverified")
    return res.to_json()


def cmd_analyze(prob, args, warnings) -> dict:
    from .ring_core import factor_poly

    dec, minimality = _minimal_dec(prob, args.seed, warnings)
    return {
        "minimality": minimality,
        "irreducibility": _irreducibility(dec.input, args.seed, warnings),
        "decomposition": dec.to_json(),
        "delta_factored": factor_poly(dec.delta, args.seed).to_json(),
    }


def cmd_closure(prob, args, warnings) -> dict:
    from .closure import integral_basis, syzygy_matrix, verify_closure
    from .ramification import closure_discriminant

    dec, minimality = _minimal_dec(prob, args.seed, warnings)
    basis = integral_basis(dec)
    D = closure_discriminant(dec)
    ver = verify_closure(basis, expected_disc=D, delta=dec.delta)
    if not ver["ok"]:
        raise _with_report(_internal("closure verification failed"), {"basis": basis.to_json(), "verification": ver})
    return {
        "minimality": minimality,
        "syzygy": syzygy_matrix(dec).to_json(),
        "basis": basis.to_json(),
        "D": {"poly": D.to_json(), "text": D.format()},
        "verification": ver,
    }


def cmd_cyclic(prob, args, warnings) -> dict:
    from .closure import cyclic_basis, verify_closure
    from .cover_geom import cyclic_data

    n = prob.n
    if n is None:
        raise SchemaError("cyclic needs n")
    F = prob.field
    if "ells" in prob.raw:
        ells = [parse_poly(F, e) for e in prob.raw["ells"]]
        u = _coefficient(F, prob.raw.get("u", 1))
    elif prob.t is not None:
        u, ells, m = cyclic_data(n, prob.t)
        if not m.is_one():
            warnings.append(f"t carries the n-th power {m.format()}; it was removed")
    else:
        raise SchemaError("cyclic needs t or ells")
    ells = (ells + [Poly.one(F)] * n)[: n - 1]
    basis = cyclic_basis(n, ells, u)
    ver = verify_closure(basis)
    if not ver["ok"]:
        raise _with_report(_internal("cyclic basis verification failed"), {"basis": basis.to_json(), "verification": ver})
    return {"ells": [e.to_json() for e in ells], "u": F.to_json(u), "basis": basis.to_json(), "verification": ver}


def cmd_ramify(prob, args, warnings) -> dict:
    from .ramification import closure_discriminant_factored, local_profile, ramification_divisor, relevant_places

    dec, minimality = _minimal_dec(prob, args.seed, warnings)
    return {
        "minimality": minimality,
        "D": closure_discriminant_factored(dec, args.seed).to_json(),
        "profiles": [local_profile(dec, p).to_json() for p in relevant_places(dec, args.seed)],
        "R": ramification_divisor(dec, args.seed).to_json(),
    }


def _sigmas(prob, names) -> list:
    missing = [k for k in names if k not in prob.sigmas]
    if missing:
        raise SchemaError(f"missing sigma entries: {', '.join(missing)}")
    return [prob.sigmas[k] for k in names]


def cmd_quartic(prob, args, warnings) -> dict:
    from .quartic import QuarticInput, quartic_presentation, quartic_reduce

    q = QuarticInput(*_sigmas(prob, ("sigma2", "sigma3", "sigma4")))
    red = quartic_reduce(q, args.seed)
    if red.irreducibility == "unverified":
        warnings.append("irreducibility of the quartic unverified")
    out = {"reduction": red.to_json()}
    try:
        out["presentation"] = quartic_presentation(red, args.seed).to_json()
    except BJError as exc:
        raise _with_report(exc, {**out, "obstruction": getattr(exc, "data", None)})
    return out


def cmd_quintic(prob, args, warnings) -> dict:
    from .quintic import QuinticInput, bj_reduce_quintic

    q = QuinticInput(*_sigmas(prob, ("sigma2", "sigma3", "sigma4", "sigma5")))
    try:
        red = bj_reduce_quintic(q, seed=args.seed)
    except BJError as exc:
        raise _with_report(exc, {"partial": getattr(exc, "report", None)})
    return {"reduction": red.to_json()}


def cmd_cover(prob, args, warnings) -> dict:
    from .cover_geom import cover_report

    dec, minimality = _minimal_dec(prob, args.seed, warnings)
    rep = cover_report(dec, args.seed)
    if not dec.input.projective:
        warnings.append("affine mode: linear equivalences on A^1 are vacuous; only exact identities are checked")
    return {"minimality": minimality, **rep.to_json()}


def cmd_galois(prob, args, warnings) -> dict:
    from .cover_geom import check_quintic_conditions, galois_cubic

    n, s, t = prob.n, prob.s, prob.t
    if n is None or t is None:
        raise SchemaError("galois needs n and t")
    if s is None:
        s = Poly.zero(prob.field)
    if n == 3:
        return {"galois": galois_cubic(s, t, prob.mode, prob.twist, args.seed).to_json()}
    if n == 5:
        if s.is_zero():
            return {"galois": check_quintic_conditions(t, prob.mode, prob.twist, args.seed)}
        dec, minimality = _minimal_dec(prob, args.seed, warnings)
        return {"minimality": minimality, "galois": check_quintic_conditions(dec, seed=args.seed)}
    from .errors import WrongDegree

    raise WrongDegree("Galois verdicts are implemented for n = 3 and n = 5")


def cmd_oracle(prob, args, warnings) -> dict:
    from .bj_data import decompose, make_minimal
    from .puiseux_oracle import puiseux_branches, ramification_oracle
    from .ramification import local_profile

    n, s, t = _require_bj(prob)
    inp, lam, drop = make_minimal(n, s, t, prob.mode, prob.twist, args.seed)
    if not lam.is_unit() or drop:
        warnings.append("input was not minimal; reduced before analysis")
    oracle = ramification_oracle(inp, args.seed)
    dec = decompose(inp, args.seed)
    rows = []
    for place, prof in oracle.items():
        mine = local_profile(dec, place).indices()
        row = {**prof.to_json(), "closed_form": mine, "oracle": prof.indices(), "agree": mine == prof.indices()}
        if args.oracle_precision is not None and inp.field.kind == "fp":
            brs = puiseux_branches(inp, place, args.oracle_precision, args.seed)
            row["series"] = [b.to_json() for b in brs]
        rows.append(row)
    if args.oracle_precision is not None and inp.field.kind != "fp":
        warnings.append("series are only reported over prime fields")
    agree = all(r["agree"] for r in rows)
    if not agree:
        raise _with_report(_internal("closed form and oracle disagree"), {"agreement": rows})
    return {"agreement": rows, "all_agree": agree, "precision": args.oracle_precision}


def cmd_selftest(prob, args, warnings) -> dict:
    from .acceptance import SuiteSize, run_suite

    results = run_suite(SuiteSize.reduced())
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {"criteria": [r.to_json() for r in results], "all_passed": all(r.passed for r in results)}
    if not out["all_passed"]:
        raise _with_report(_internal("selftest failed"), out)
    return out


HANDLERS = {
    "analyze": cmd_analyze,
    "closure": cmd_closure,
    "cyclic": cmd_cyclic,
    "ramify": cmd_ramify,
    "quartic": cmd_quartic,
    "quintic-reduce": cmd_quintic,
    "cover": cmd_cover,
    "galois": cmd_galois,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}


def _internal(msg: str) -> BJError:
    from .errors import InternalCheckFailure

    return InternalCheckFailure(msg)


def _with_report(exc: BJError, partial: dict) -> BJError:
    exc.partial = partial
    return exc


# driver


def run_command(cmd: str, prob: ProblemFile | None, args) -> tuple[dict, int]:
    warnings: list = []
    report = {"schema": SCHEMA, "command": cmd, "seed": args.seed}
    if prob is not None:
        report["input"] = prob.echo()
    try:
        sections = HANDLERS[cmd](prob, args, warnings)
        code = 0
    except BJError as exc:
        sections = getattr(exc, "partial", None) or {}
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = exc.exit_code
    report.update(sections)
    report["warnings"] = warnings
    report["exit_code"] = code
    return report, code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bjtool", description="Bring-Jerrard covers: closure, ramification, reductions.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", help="problem file (JSON); '-' reads stdin")
    ap.add_argument("--mode", choices=("affine", "projective"), help="override the mode of the problem file")
    ap.add_argument("--twist", type=int, help="twist d for projective mode")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--oracle-precision", type=int, default=None)
    ap.add_argument("--output", help="write the report here instead of stdout")
    return ap


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    prob = None
    try:
        if args.command != "selftest":
            if not args.input:
                raise SchemaError("--input is required")
            try:
                data = _read(args.input)
            except OSError as exc:
                raise SchemaError(f"cannot read {args.input}: {exc}") from exc
            prob = parse_problem(data)
            if args.mode:
                prob.mode = args.mode
            if args.twist is not None:
                prob.twist = args.twist
        report, code = run_command(args.command, prob, args)
    except BJError as exc:
        code = exc.exit_code
        report = {"schema": SCHEMA, "command": args.command,
                  "error": {"type": type(exc).__name__, "message": str(exc)}, "warnings": [], "exit_code": code}
    text = json.dumps(report, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
