"""``relspec`` command line: classify, essential, verify, mobius, perturb.

Exit codes: 0 success / suite passed, 1 suite failure, 2 usage or input error.
``RELSPEC_TOL`` overrides the default rank tolerance (1e-10).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from relspec import io as rio
from relspec import relation as rel
from relspec import spectra, verify
from relspec.banded import model as bm
from relspec.banded.region import essential_region


class UsageError(Exception):
    pass


def _floats(text, count, name):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--{name}: expected {count} comma-separated numbers") from None
    if len(vals) != count:
        raise UsageError(f"--{name}: expected {count} comma-separated numbers")
    return vals


def _complex(text, name):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"--{name}: cannot parse {text!r} as a complex number") from None


def _lambdas(text):
    if not text:
        return []
    return [_complex(t, "lambda") for t in text.split(",") if t.strip()]


def _emit(args, text):
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _need_input(args):
    if not args.input:
        raise UsageError("--input is required")
    return rio.load_json(args.input)


def _is_model(d):
    return isinstance(d, dict) and "space" in d


def _fd_dict(fd):
    return fd.to_dict()


def _spectrum_json(spec):
    return spec if isinstance(spec, str) else rio.encode_complex_array(spec)


def cmd_classify(args):
    data = _need_input(args)
    lams = _lambdas(args.lam)
    if _is_model(data):
        T = rio.model_from_dict(data)
        points = [{"lambda": [z.real, z.imag],
                   "fredholm": _fd_dict(bm.fredholm_classify(T, z))} for z in lams]
        return {"points": points}, 0
    T = rio.relation_from_dict(data)
    if not T.is_square and lams:
        raise UsageError("point classification needs a relation with dim_x == dim_y")
    points = []
    for z in lams:
        pc = spectra.classify_point(T, z)
        points.append({"lambda": [z.real, z.imag], "fredholm": _fd_dict(pc.fredholm),
                       "in_resolvent": bool(pc.in_resolvent)})
    out = {"fredholm": _fd_dict(rel.fredholm_data(T)), "points": points}
    if T.is_square:
        out["spectrum"] = _spectrum_json(spectra.spectrum(T))
    return out, 0


def cmd_essential(args):
    T = rio.model_from_dict(_need_input(args))
    if not args.out:
        raise UsageError("--out is required for the CSV grid")
    bounds = _floats(args.bounds, 4, "bounds")
    res = _floats(args.res, 2, "res")
    if any(r != int(r) for r in res):
        raise UsageError("--res must be integers")
    grid = essential_region(T, bounds, (int(res[0]), int(res[1])), workers=args.workers)
    out = Path(args.out)
    out.write_text(grid.to_csv())
    summary_path = out.with_suffix(".summary.json")
    summary_path.write_text(grid.summary_json() + "\n")
    return {"csv": str(out), "summary": str(summary_path),
            "components": len(grid.components), "eigenvalues": len(grid.eigenvalues)}, None


def cmd_verify(args):
    name = args.suite
    if not name:
        raise UsageError("--suite is required")
    if name != "all" and name not in verify.SUITES:
        raise UsageError(f"unknown suite {name!r}; known: all, {', '.join(verify.suite_names())}")
    if args.trials is not None and args.trials < 1:
        raise UsageError("--trials must be positive")
    names = verify.suite_names() if name == "all" else [name]
    reports = [verify.run_suite(n, args.seed, args.trials, args.workers) for n in names]
    code = 0 if all(r.passed for r in reports) else 1
    if name == "all":
        body = {"suite_name": "all", "seed": args.seed, "passed": code == 0,
                "reports": [r.to_dict() for r in reports]}
    else:
        body = reports[0].to_dict()
    return body, code


def cmd_mobius(args):
    if args.mu is None:
        raise UsageError("--mu is required")
    mu = _complex(args.mu, "mu")
    data = _need_input(args)
    if _is_model(data):
        T = rio.model_from_dict(data)
        return {"model": rio.model_to_dict(bm.mobius_laurent(T, mu))}, 0
    T = rio.relation_from_dict(data)
    Tmu = spectra.mobius_resolvent(T, mu)
    out = {"relation": rio.relation_to_dict(Tmu)}
    spec = spectra.spectrum(T)
    if not isinstance(spec, str):
        out["mapped_spectrum"] = rio.encode_complex_array(1.0 / (mu - spec))
    checks = []
    for lam in _lambdas(args.lam):
        fc = spectra.mobius_factor_check(T, mu, lam)
        checks.append({"lambda": [lam.real, lam.imag], "holds": bool(fc.holds),
                       "residual": fc.residual})
    if checks:
        out["factor_checks"] = checks
    return out, 0


def cmd_perturb(args):
    data = _need_input(args)
    if _is_model(data):
        T = rio.model_from_dict(data)
        rng = np.random.default_rng(args.seed)
        return {"model": rio.model_to_dict(T.with_perturbation(verify.gen_finite_rank(rng)))}, 0
    T = rio.relation_from_dict(data)
    S = verify.gen_small_perturbation(T, args.seed)
    return {"S": rio.relation_to_dict(S), "T_plus_S": rio.relation_to_dict(rel.add(T, S)),
            "hypotheses": verify.perturbation_hypotheses(T, S)}, 0


COMMANDS = {
    "classify": cmd_classify,
    "essential": cmd_essential,
    "verify": cmd_verify,
    "mobius": cmd_mobius,
    "perturb": cmd_perturb,
}


def build_parser():
    p = argparse.ArgumentParser(prog="relspec", description="Linear-relation spectral toolkit")
    p.add_argument("verb", choices=sorted(COMMANDS))
    p.add_argument("--input", help="relation or model JSON file")
    p.add_argument("--out", help="output path (stdout when omitted, except essential)")
    p.add_argument("--bounds", default="-2,2,-2,2", help="re0,re1,im0,im1")
    p.add_argument("--res", default="128,128", help="nx,ny")
    p.add_argument("--lambda", dest="lam", default="", help="comma-separated points, e.g. 1,2+1j")
    p.add_argument("--mu", help="Möbius centre")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--suite", help="suite name or 'all'")
    p.add_argument("--workers", type=int, default=1, help="threads; results do not depend on it")
    return p


VALUE_FLAGS = ("--bounds", "--lambda", "--mu")


def _glue_values(argv):
    # argparse reads "-2,2,-2,2" as a flag; bind such values with "=" first
    out, i = [], 0
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        body, code = COMMANDS[args.verb](args)
    except (UsageError, ValueError, OSError, KeyError, TypeError) as exc:
        print(f"relspec {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(body, indent=2, sort_keys=True)
    if args.verb == "essential":
        print(text)
        return 0
    _emit(args, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
