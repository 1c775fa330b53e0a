"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a check or witness failed,
2 usage or schema errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebras import (
    field_algebra,
    matrix_algebra,
    normalize_theta,
    opposite,
    product_algebra,
    quotient_algebra,
    truncated_poly,
    upper_triangular,
)
from .fields import QQ
from .linalg import DEFAULT_ELEMENT_CAP, EnumerationCapExceeded
from .mathieu import (
    PRE_NOTE,
    find_algebra_quasi_stable_violation,
    find_algebra_stable_violation,
    find_quasi_stable_violation,
    find_stable_violation,
    is_module_mathieu,
    is_theta_ideal,
    is_theta_mathieu_bruteforce,
    is_theta_mathieu_idempotent,
    sigma,
    tau,
    verify_mathieu_witness,
)
from .modules import column_module, natural_module
from .polyspaces import exact_integral, nba_member, nba_sigma_member, nba_tau_member, \
    nq_member, nq_sigma_member, nq_tau_member, omega_member, support
from .serialize import (
    SchemaError,
    algebra_from_json,
    algebra_to_json,
    eval_config_from_json,
    integral_config_from_json,
    load_json,
    module_from_json,
    module_to_json,
    parse_field,
    parse_vector,
    poly_from_json,
    subspace_from_json,
    vector_to_json,
)
from .verify import Profile, builder_spec_to_algebra, run_suite


def _emit(args, payload, text_lines=None):
    if getattr(args, "format", "json") == "text" and text_lines is not None:
        out = "\n".join(text_lines)
    else:
        out = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _load_algebra(args):
    return algebra_from_json(load_json(args.algebra))


def _load_module(args):
    if getattr(args, "module", None):
        return module_from_json(load_json(args.module),
                                base_dir=os.path.dirname(args.module) or ".")
    return natural_module(_load_algebra(args))


def _load_subspace(args, field, name="subspace"):
    return subspace_from_json(field, load_json(getattr(args, name)))


def _witness_json(field, witness):
    if witness is None:
        return None
    out = {}
    for k, v in witness.items():
        if k in ("a", "b", "c", "element", "left", "right") and v is not None:
            out[k] = vector_to_json(field, v)
        else:
            out[k] = v
    return out


# -- verb implementations ------------------------------------------------------------


def cmd_gen(args):
    if args.builder == "matrix":
        algebra = matrix_algebra(args.n, args.p)
    elif args.builder == "product":
        algebra = product_algebra(args.l, args.p)
    elif args.builder == "truncated":
        algebra = truncated_poly(args.k, args.p)
    elif args.builder == "upper":
        algebra = upper_triangular(args.n, args.p)
    elif args.builder == "field":
        algebra = field_algebra(args.p)
    elif args.builder == "opposite":
        algebra = opposite(_load_algebra(args))
    elif args.builder == "quotient":
        base = _load_algebra(args)
        ideal = subspace_from_json(base.field, load_json(args.ideal))
        algebra, _proj = quotient_algebra(base, ideal)
    elif args.builder == "natural-module":
        module = natural_module(_load_algebra(args))
        _emit(args, module_to_json(module))
        return 0
    elif args.builder == "column-module":
        module = column_module(_load_algebra(args), args.n)
        _emit(args, module_to_json(module))
        return 0
    else:
        raise SchemaError(f"unknown builder {args.builder}")
    _emit(args, algebra_to_json(algebra))
    return 0


def cmd_is_ideal(args):
    algebra = _load_algebra(args)
    j = _load_subspace(args, algebra.field)
    result = is_theta_ideal(algebra, j, args.theta)
    _emit(args, {"result": result},
          [f"{'is' if result else 'is not'} a {args.theta} ideal"])
    return 0


def cmd_is_mathieu(args):
    if args.module:
        module = _load_module(args)
        n = _load_subspace(args, module.field)
        if args.wrt is None:
            raise SchemaError("--module needs --wrt with the reference element")
        u = parse_vector(module.field, json.loads(args.wrt), "--wrt")
        verdict = is_module_mathieu(module, n, u, args.theta,
                                    method=args.method, cap=args.cap)
        field = module.field
    else:
        algebra = _load_algebra(args)
        j = _load_subspace(args, algebra.field)
        if args.method == "brute":
            verdict = is_theta_mathieu_bruteforce(algebra, j, args.theta, args.cap)
        else:
            verdict = is_theta_mathieu_idempotent(algebra, j, args.theta, args.cap)
        field = algebra.field
    payload = {"result": verdict.is_mathieu}
    if verdict.witness is not None:
        payload["witness"] = _witness_json(field, verdict.witness)
    _emit(args, payload,
          [f"{'Mathieu' if verdict.is_mathieu else 'not Mathieu'} ({args.theta})"])
    return 0


def cmd_sigma(args, which="sigma"):
    module = _load_module(args)
    n = _load_subspace(args, module.field)
    if which == "sigma":
        out = sigma(module, n, args.theta, args.cap)
    else:
        out = tau(module, n, args.theta, args.cap, method=args.method)
    payload = {"result": out.to_json()}
    if normalize_theta(args.theta) == "pre":
        payload["note"] = PRE_NOTE
    text = ["capped; use membership queries via the library"] if not out.is_explicit \
        else [f"{len(out.members)} elements"]
    _emit(args, payload, text)
    return 0


def cmd_tau(args):
    return cmd_sigma(args, which="tau")


def cmd_max_submodule(args):
    module = _load_module(args)
    n = _load_subspace(args, module.field)
    result = module.max_submodule(n)
    _emit(args, {"result": result.to_json()}, [f"dimension {result.dim}"])
    return 0


def cmd_radical(args):
    algebra = _load_algebra(args)
    j = _load_subspace(args, algebra.field)
    members = algebra.radical_of_subspace(j, args.cap)
    f = algebra.field
    _emit(args, {"result": {"members": [vector_to_json(f, v) for v in members]}},
          [f"{len(members)} elements"])
    return 0


def cmd_quasi_stable(args):
    theta = args.theta
    if args.module:
        module = _load_module(args)
        finder = find_stable_violation if args.stable else find_quasi_stable_violation
        violation = finder(module, theta, cap=args.cap)
        field = module.field
        if violation is None:
            payload = {"result": True}
        else:
            n, u, witness = violation
            payload = {"result": False,
                       "violation": {"subspace": n.to_json(),
                                     "element": vector_to_json(field, u),
                                     "witness": _witness_json(field, witness)}}
    else:
        algebra = _load_algebra(args)
        field = algebra.field
        if args.stable:
            violation = find_algebra_stable_violation(algebra, theta, cap=args.cap)
        else:
            violation = find_algebra_quasi_stable_violation(algebra, theta, cap=args.cap)
        if violation is None:
            payload = {"result": True}
        else:
            j, witness = violation
            payload = {"result": False,
                       "violation": {"subspace": j.to_json(),
                                     "witness": _witness_json(field, witness)}}
    _emit(args, payload, [str(payload["result"])])
    return 0


def cmd_omega(args):
    spec = args.field
    if isinstance(spec, str) and spec.isdigit():
        spec = int(spec)
    field = parse_field(spec) if spec else QQ
    weights = parse_vector(field, json.loads(args.alpha), "--alpha")
    result = omega_member(weights, field)
    _emit(args, {"result": result, "support": list(support(weights))}, [str(result)])
    return 0


def cmd_nba(args):
    cfg = eval_config_from_json(load_json(args.config))
    poly = poly_from_json(cfg.field, load_json(args.poly))
    fn = {"member": nba_member, "sigma": nba_sigma_member, "tau": nba_tau_member}[args.predicate]
    result = fn(poly, cfg)
    _emit(args, {"result": result}, [str(result)])
    return 0


def cmd_nq(args):
    cfg = integral_config_from_json(load_json(args.config))
    poly = poly_from_json(QQ, load_json(args.poly))
    fn = {"member": nq_member, "sigma": nq_sigma_member, "tau": nq_tau_member}[args.predicate]
    result = fn(poly, cfg)
    _emit(args, {"result": result}, [str(result)])
    return 0


def cmd_integral(args):
    cfg = integral_config_from_json(load_json(args.config))
    poly = poly_from_json(QQ, load_json(args.poly))
    value = exact_integral(poly, cfg)
    _emit(args, {"result": QQ.scalar_to_json(value)}, [QQ.scalar_to_json(value)])
    return 0


def cmd_verify_paper(args):
    if args.profile and args.profile != "default":
        profile = Profile.from_json(load_json(args.profile))
    else:
        profile = Profile()
    if args.cap != DEFAULT_ELEMENT_CAP:
        profile.element_cap = args.cap
    report = run_suite(profile, jobs=args.jobs)
    if args.format == "text":
        out = report.to_text()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(out + "\n")
        else:
            print(out)
    else:
        _emit(args, report.to_json(with_timing=not args.no_timing))
    return 0 if report.passed else 1


def cmd_verify_witness(args):
    obj = load_json(args.input)
    if "algebra" in obj:
        algebra = algebra_from_json(obj["algebra"])
    elif "algebra_builder" in obj:
        algebra = builder_spec_to_algebra(obj["algebra_builder"])
    else:
        raise SchemaError("witness file needs 'algebra' or 'algebra_builder'")
    theta = obj.get("theta", "two")
    j = subspace_from_json(algebra.field, obj["subspace"])
    witness_json = obj["witness"]
    witness = {"kind": witness_json.get("kind", "mathieu")}
    if "power" in witness_json and witness_json["power"] is not None:
        witness["power"] = witness_json["power"]
    for key in ("a", "b", "c", "element", "left", "right"):
        if witness_json.get(key) is not None:
            witness[key] = parse_vector(algebra.field, witness_json[key], key)
        elif key in witness_json:
            witness[key] = None
    ok, reason = verify_mathieu_witness(algebra, j, theta, witness)
    _emit(args, {"result": ok, "reason": reason}, [f"{ok}: {reason}"])
    return 0 if ok else 1


# -- argument parsing ------------------------------------------------------------------


def _add_common(sub, theta=False, cap=True, module=False, method=False):
    sub.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_argument("--out", help="write output to a file instead of stdout")
    if theta:
        sub.add_argument("--theta", default="two",
                         choices=("left", "right", "pre", "two",
                                  "pre-two-sided", "two-sided"))
    if cap:
        sub.add_argument("--cap", type=int, default=DEFAULT_ELEMENT_CAP,
                         help="enumeration cap override")
    if module:
        sub.add_argument("--algebra", help="algebra JSON (used as a module over itself)")
        sub.add_argument("--module", help="module JSON")
    if method:
        sub.add_argument("--method", choices=("idem", "brute"), default="idem",
                         help="Mathieu decider: idempotent criterion or power scan")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mathieuspaces",
        description="Exact deciders for Mathieu subspaces of finite-dimensional "
                    "algebras and their modules")
    subs = parser.add_subparsers(dest="verb", required=True)

    gen = subs.add_parser("gen", help="emit builder algebras/modules as JSON")
    gen.add_argument("builder", choices=("matrix", "product", "truncated", "upper",
                                         "field", "opposite", "quotient",
                                         "natural-module", "column-module"))
    gen.add_argument("--n", type=int, help="matrix size")
    gen.add_argument("--l", type=int, help="number of components")
    gen.add_argument("--k", type=int, help="truncation exponent")
    gen.add_argument("--p", type=int, help="field characteristic")
    gen.add_argument("--algebra", help="input algebra JSON (opposite/quotient/modules)")
    gen.add_argument("--ideal", help="two-sided ideal JSON (quotient)")
    _add_common(gen, cap=False)
    gen.set_defaults(fn=cmd_gen)

    sub = subs.add_parser("is-ideal", help="test the one/two-sided ideal property")
    sub.add_argument("--algebra", required=True)
    sub.add_argument("--subspace", required=True)
    _add_common(sub, theta=True, cap=False)
    sub.set_defaults(fn=cmd_is_ideal)

    sub = subs.add_parser("is-mathieu", help="decide the Mathieu property")
    sub.add_argument("--subspace", required=True)
    sub.add_argument("--wrt", help="module element as a JSON array (with --module)")
    _add_common(sub, theta=True, module=True, method=True)
    sub.set_defaults(fn=cmd_is_mathieu)

    sub = subs.add_parser("sigma", help="stable elements of a subspace")
    sub.add_argument("--subspace", required=True)
    _add_common(sub, theta=True, module=True)
    sub.set_defaults(fn=cmd_sigma)

    sub = subs.add_parser("tau", help="quasi-stable elements of a subspace")
    sub.add_argument("--subspace", required=True)
    _add_common(sub, theta=True, module=True, method=True)
    sub.set_defaults(fn=cmd_tau)

    sub = subs.add_parser("max-submodule", help="largest submodule inside a subspace")
    sub.add_argument("--subspace", required=True)
    _add_common(sub, module=True, cap=False)
    sub.set_defaults(fn=cmd_max_submodule)

    sub = subs.add_parser("radical", help="elements whose power cycle stays inside")
    sub.add_argument("--algebra", required=True)
    sub.add_argument("--subspace", required=True)
    _add_common(sub)
    sub.set_defaults(fn=cmd_radical)

    sub = subs.add_parser("quasi-stable", help="exhaustive quasi-stability test")
    sub.add_argument("--stable", action="store_true",
                     help="test stability (ideals) instead of quasi-stability")
    _add_common(sub, theta=True, module=True, method=True)
    sub.set_defaults(fn=cmd_quasi_stable)

    sub = subs.add_parser("omega", help="subset-sum weight criterion")
    sub.add_argument("--alpha", required=True, help="weights as a JSON array")
    sub.add_argument("--field", help='"Q" or a prime, default Q')
    _add_common(sub, cap=False)
    sub.set_defaults(fn=cmd_omega)

    sub = subs.add_parser("nba", help="weighted-evaluation subspace predicates")
    sub.add_argument("predicate", choices=("member", "sigma", "tau"))
    sub.add_argument("--config", required=True)
    sub.add_argument("--poly", required=True)
    _add_common(sub, cap=False)
    sub.set_defaults(fn=cmd_nba)

    sub = subs.add_parser("nq", help="integration subspace predicates")
    sub.add_argument("predicate", choices=("member", "sigma", "tau"))
    sub.add_argument("--config", required=True)
    sub.add_argument("--poly", required=True)
    _add_common(sub, cap=False)
    sub.set_defaults(fn=cmd_nq)

    sub = subs.add_parser("integral", help="exact weighted integral of a polynomial")
    sub.add_argument("--config", required=True)
    sub.add_argument("--poly", required=True)
    _add_common(sub, cap=False)
    sub.set_defaults(fn=cmd_integral)

    sub = subs.add_parser("verify-paper",
                          help="run the full verification battery of known identities")
    sub.add_argument("--profile", default="default",
                     help='"default" or a profile JSON path')
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--no-timing", action="store_true",
                     help="omit runtime fields for byte-stable output")
    _add_common(sub)
    sub.set_defaults(fn=cmd_verify_paper)

    sub = subs.add_parser("verify-witness",
                          help="re-validate an embedded failure witness")
    sub.add_argument("--input", required=True)
    _add_common(sub, cap=False)
    sub.set_defaults(fn=cmd_verify_witness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SchemaError, EnumerationCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
