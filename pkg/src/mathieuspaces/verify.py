"""The machine-check battery: every named identity of the library is verified
on finite instances and the results are collected in a deterministic report.

Each check compares an independently computed expectation (closed-form
formulas, hand-rolled matrix arithmetic, double-sum integration) against the
library's deciders.  Failing entries embed a witness that the standalone
`verify-witness` verb re-validates.
"""

from __future__ import annotations

import random
import time
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebras import (
    Algebra,
    THETAS,
    field_algebra,
    matrix_algebra,
    product_algebra,
    quotient_algebra,
    truncated_poly,
    upper_triangular,
)
from .fields import GF, QQ, Field
from .linalg import (
    DEFAULT_ELEMENT_CAP,
    Subspace,
    enumerate_subspaces,
    enumerate_vectors,
    mat_vec,
    preimage_subspace,
    solve_right_kernel,
)
from .mathieu import (
    find_algebra_quasi_stable_violation,
    find_algebra_stable_violation,
    has_only_trivial_idempotents,
    is_quasi_stable_algebra,
    is_stable_algebra,
    is_stable_algebra_classified,
    is_theta_mathieu_bruteforce,
    is_theta_mathieu_idempotent,
    sigma,
    tau,
    verify_mathieu_witness,
)
from .modules import ModuleHom, column_module, module_hom_basis, natural_module
from .polyspaces import (
    EvalConfig,
    IntegralConfig,
    Poly,
    alpha_f_B,
    exact_integral,
    nba_member,
    nba_sigma_member,
    nba_tau_member,
    nq_member,
    nq_sigma_member,
    nq_tau_member,
    omega_member,
    reduce_to_product_algebra,
)


@dataclass
class Profile:
    primes: tuple = (2, 3, 5)
    matrix_sizes: tuple = (2,)
    element_cap: int = DEFAULT_ELEMENT_CAP
    subspace_samples: int = 500
    pair_samples: int = 1000
    hom_samples: int = 100
    eval_configs: int = 200
    poly_samples: int = 50
    integral_samples: int = 100
    seed: int = 8627

    @classmethod
    def from_json(cls, obj: dict) -> "Profile":
        known = {f for f in cls.__dataclass_fields__}
        bad = set(obj) - known
        if bad:
            raise ValueError(f"unknown profile keys: {sorted(bad)}")
        kwargs = dict(obj)
        for key in ("primes", "matrix_sizes"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        return cls(**kwargs)


@dataclass
class CheckEntry:
    check: str
    instance: str
    claim: str
    expected: object
    computed: object
    passed: bool
    witness: dict | None = None
    runtime_ms: float = 0.0

    def to_json(self, with_timing: bool = True) -> dict:
        out = {
            "check": self.check,
            "instance": self.instance,
            "claim": self.claim,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if with_timing:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out


@dataclass
class VerificationReport:
    entries: list

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def counts(self) -> tuple:
        ok = sum(1 for e in self.entries if e.passed)
        return ok, len(self.entries) - ok

    def to_json(self, with_timing: bool = True) -> dict:
        ok, bad = self.counts
        return {
            "status": "pass" if self.passed else "fail",
            "passed": ok,
            "failed": bad,
            "entries": [e.to_json(with_timing) for e in self.entries],
        }

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            mark = "PASS" if e.passed else "FAIL"
            lines.append(f"[{mark}] {e.check} :: {e.instance} ({e.runtime_ms:.0f} ms)")
            if not e.passed:
                lines.append(f"       claim:    {e.claim}")
                lines.append(f"       expected: {e.expected}")
                lines.append(f"       computed: {e.computed}")
        ok, bad = self.counts
        lines.append(f"{ok} passed, {bad} failed")
        return "\n".join(lines)


def _rng(profile: Profile, tag: str) -> random.Random:
    return random.Random(profile.seed ^ zlib.crc32(tag.encode()))


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0


def _vec_json(field: Field, v) -> list:
    return [field.scalar_to_json(x) for x in v]


def _witness_payload(algebra: Algebra, builder: list, theta: str, j: Subspace,
                     witness: dict | None) -> dict | None:
    if witness is None:
        return None
    f = algebra.field
    out = {
        "algebra_builder": builder,
        "theta": theta,
        "subspace": j.to_json(),
        "witness": {
            "kind": witness["kind"],
            "power": witness.get("power"),
        },
    }
    for key in ("a", "b", "c", "element", "left", "right"):
        if witness.get(key) is not None:
            out["witness"][key] = _vec_json(f, witness[key])
        elif key in witness:
            out["witness"][key] = None
    return out


# -- builder registry (shared with the CLI) -----------------------------------------


def builder_spec_to_algebra(spec: Sequence) -> Algebra:
    kind, *args = spec
    table = {
        "matrix": matrix_algebra,
        "product": product_algebra,
        "truncated": truncated_poly,
        "upper": upper_triangular,
        "field": field_algebra,
    }
    if kind not in table:
        raise ValueError(f"unknown builder {kind!r}")
    return table[kind](*args)


def _random_subspace(rng: random.Random, field: Field, dim: int) -> Subspace:
    k = rng.randrange(dim + 1)
    rows = [tuple(field.from_int(rng.randrange(field.p)) for _ in range(dim))
            for _ in range(k)]
    return Subspace(field, dim, rows)


# -- check 1: the two Mathieu deciders agree ----------------------------------------


def check_oracle_agreement(profile: Profile) -> list:
    entries = []
    exhaustive = [
        (["product", 2, 2], product_algebra(2, 2)),
        (["truncated", 2, 2], truncated_poly(2, 2)),
        (["truncated", 2, 3], truncated_poly(2, 3)),
        (["upper", 2, 2], upper_triangular(2, 2)),
    ]
    for builder, algebra in exhaustive:
        subspaces = list(enumerate_subspaces(algebra.field, algebra.dim, profile.element_cap))
        entries += _oracle_entries(profile, builder, algebra, subspaces,
                                   f"all {len(subspaces)} subspaces")
    for n, p in ((2, 2), (2, 3)):
        algebra = matrix_algebra(n, p)
        pool = list(enumerate_subspaces(algebra.field, algebra.dim, profile.element_cap))
        rng = _rng(profile, f"oracle/{n}/{p}")
        sample = [pool[rng.randrange(len(pool))] for _ in range(profile.subspace_samples)]
        entries += _oracle_entries(profile, ["matrix", n, p], algebra, sample,
                                   f"{profile.subspace_samples} sampled subspaces")
    return entries


def _oracle_entries(profile, builder, algebra, subspaces, scope):
    claim = "brute-force power scan and the idempotent criterion give the same verdict"
    entries = []
    for theta in THETAS:
        with _Timer() as t:
            disagreement = None
            for j in subspaces:
                brute = is_theta_mathieu_bruteforce(algebra, j, theta, profile.element_cap)
                idem = is_theta_mathieu_idempotent(algebra, j, theta, profile.element_cap)
                if brute.is_mathieu != idem.is_mathieu:
                    disagreement = {
                        "subspace": j.to_json(),
                        "brute": brute.is_mathieu,
                        "idempotent": idem.is_mathieu,
                    }
                    break
        entries.append(CheckEntry(
            check="oracle-agreement",
            instance=f"{algebra.name}, theta={theta}, {scope}",
            claim=claim,
            expected="verdicts agree",
            computed="verdicts agree" if disagreement is None else disagreement,
            passed=disagreement is None,
            runtime_ms=t.ms,
        ))
    return entries


# -- check 2: sigma/tau of subspaces of the column module ----------------------------


def check_column_module_sets(profile: Profile) -> list:
    entries = []
    claim = ("over the n x n matrix algebra acting on columns, sigma and tau of a "
             "subspace are: everything for the full space, everything (left) or zero "
             "(other sides) for the zero space, and zero otherwise")
    for p in profile.primes:
        for n in profile.matrix_sizes:
            if n < 2:
                continue
            instance_base = f"p={p} n={n}"
            if p ** (n * n) > profile.element_cap:
                entries.append(CheckEntry(
                    check="column-module-sets", instance=instance_base, claim=claim,
                    expected="skipped", computed="skipped: element count exceeds cap",
                    passed=True))
                continue
            fld = GF(p)
            algebra = matrix_algebra(n, p)
            module = column_module(algebra, n)
            all_vectors = frozenset(enumerate_vectors(fld, n, profile.element_cap))
            zero_only = frozenset({(0,) * n})
            subspaces = list(enumerate_subspaces(fld, n, profile.element_cap))
            for theta in THETAS:
                with _Timer() as t:
                    mismatch = None
                    for n_space in subspaces:
                        if n_space.is_full():
                            expected = all_vectors
                        elif n_space.is_zero():
                            expected = all_vectors if theta == "left" else zero_only
                        else:
                            expected = zero_only
                        got_sigma = frozenset(sigma(module, n_space, theta, profile.element_cap))
                        got_tau = frozenset(tau(module, n_space, theta, profile.element_cap))
                        if got_sigma != expected or got_tau != expected:
                            mismatch = {"subspace": n_space.to_json(),
                                        "sigma_size": len(got_sigma),
                                        "tau_size": len(got_tau),
                                        "expected_size": len(expected)}
                            break
                entries.append(CheckEntry(
                    check="column-module-sets",
                    instance=f"{instance_base} theta={theta}, all {len(subspaces)} subspaces",
                    claim=claim,
                    expected="three-case classification",
                    computed="matches" if mismatch is None else mismatch,
                    passed=mismatch is None,
                    runtime_ms=t.ms,
                ))
    return entries


# -- check 3: trace-pairing hyperplanes in the matrix algebra ------------------------


def _flat_matmul(p: int, n: int, y: tuple, x: tuple) -> tuple:
    out = [0] * (n * n)
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += y[i * n + k] * x[k * n + j]
            out[i * n + j] = acc % p
    return tuple(out)


def _is_nonzero_scalar_of_identity(p: int, n: int, m: tuple) -> bool:
    c = m[0]
    if not c:
        return False
    for i in range(n):
        for j in range(n):
            want = c if i == j else 0
            if m[i * n + j] != want:
                return False
    return True


def check_trace_hyperplane_sets(profile: Profile) -> list:
    entries = []
    n = 2
    claim = ("for the hyperplane of matrices trace-orthogonal to X, sigma is the left "
             "annihilator of X; tau also admits Y with YX a nonzero multiple of the "
             "identity exactly when the characteristic exceeds n")
    for p in profile.primes:
        if p ** (n * n) > profile.element_cap:
            continue
        fld = GF(p)
        algebra = matrix_algebra(n, p)
        module = natural_module(algebra)
        elements = list(enumerate_vectors(fld, n * n, profile.element_cap))
        zero = (0,) * (n * n)
        with _Timer() as t:
            mismatch = None
            for x in elements:
                # Tr(YX) as a functional of Y: coefficient of Y[i][j] is X[j][i]
                functional = tuple(x[j * n + i] for i in range(n) for j in range(n))
                if any(functional):
                    h_x = solve_right_kernel(fld, [functional], n * n)
                else:
                    h_x = Subspace.full(fld, n * n)
                products = {y: _flat_matmul(p, n, y, x) for y in elements}
                annihilator = frozenset(y for y, yx in products.items() if yx == zero)
                expected_sigma = annihilator
                if p > n:
                    expected_tau = annihilator | frozenset(
                        y for y, yx in products.items()
                        if _is_nonzero_scalar_of_identity(p, n, yx))
                else:
                    expected_tau = annihilator
                for theta in THETAS:
                    got_sigma = frozenset(sigma(module, h_x, theta, profile.element_cap))
                    got_tau = frozenset(tau(module, h_x, theta, profile.element_cap))
                    if got_sigma != expected_sigma or got_tau != expected_tau:
                        mismatch = {"X": _vec_json(fld, x), "theta": theta,
                                    "sigma_ok": got_sigma == expected_sigma,
                                    "tau_ok": got_tau == expected_tau}
                        break
                if mismatch:
                    break
        entries.append(CheckEntry(
            check="trace-hyperplane-sets",
            instance=f"M_{n}(GF({p})), all {len(elements)} matrices X, all sides",
            claim=claim,
            expected="annihilator formula",
            computed="matches" if mismatch is None else mismatch,
            passed=mismatch is None,
            runtime_ms=t.ms,
        ))
    return entries


# -- check 4: the maximum-submodule identity ------------------------------------------


def _module_zoo(profile: Profile) -> list:
    zoo = [
        natural_module(product_algebra(2, 2)),
        natural_module(product_algebra(2, 3)),
        natural_module(truncated_poly(2, 2)),
        natural_module(truncated_poly(3, 2)),
        natural_module(truncated_poly(2, 3)),
        natural_module(upper_triangular(2, 2)),
        natural_module(matrix_algebra(2, 2)),
        column_module(matrix_algebra(2, 2), 2),
        column_module(matrix_algebra(2, 3), 2),
        column_module(matrix_algebra(3, 2), 3),
    ]
    if 3 in profile.primes:
        zoo.append(natural_module(matrix_algebra(2, 3)))
    big = natural_module(truncated_poly(3, 2))
    quot, _ = big.quotient_module(Subspace(big.field, 3, [(0, 0, 1)]))
    zoo.append(quot)
    return zoo


def check_max_submodule(profile: Profile) -> list:
    entries = []
    claim = ("the fixpoint maximum submodule of N equals both N intersect sigma(N) "
             "and N intersect tau(N) for every side selector")
    zoo = _module_zoo(profile)
    rng = _rng(profile, "max-submodule")
    per_module = -(-profile.pair_samples // len(zoo))
    for module in zoo:
        with _Timer() as t:
            mismatch = None
            for _ in range(per_module):
                n_space = _random_subspace(rng, module.field, module.dim)
                inside = frozenset(module.max_submodule(n_space).elements())
                for theta in THETAS:
                    sig = sigma(module, n_space, theta, profile.element_cap)
                    ta = tau(module, n_space, theta, profile.element_cap)
                    n_sig = frozenset(u for u in sig if n_space.contains(u))
                    n_tau = frozenset(u for u in ta if n_space.contains(u))
                    if n_sig != inside or n_tau != inside:
                        mismatch = {"subspace": n_space.to_json(), "theta": theta,
                                    "fixpoint_size": len(inside),
                                    "sigma_cut": len(n_sig), "tau_cut": len(n_tau)}
                        break
                if mismatch:
                    break
        entries.append(CheckEntry(
            check="max-submodule-identity",
            instance=f"{module.name}, {per_module} sampled subspaces, all sides",
            claim=claim,
            expected="both intersections equal the fixpoint",
            computed="equal" if mismatch is None else mismatch,
            passed=mismatch is None,
            runtime_ms=t.ms,
        ))
    return entries


# -- checks 5 and 6: quasi-stable and stable algebras ---------------------------------


def _classified_quasi_stable(algebra: Algebra) -> bool:
    if has_only_trivial_idempotents(algebra):
        return True
    return algebra.dim == 2  # a 2-dim algebra with an extra idempotent splits


def check_quasi_stable_classification(profile: Profile) -> list:
    entries = []
    claim = ("an algebra is quasi-stable exactly when it is local (only trivial "
             "idempotents) or the two-dimensional split pair; verdict is exhaustive "
             "over all unit-avoiding subspaces")
    cases = [
        (["product", 2, 2], product_algebra(2, 2), True),
        (["truncated", 2, 2], truncated_poly(2, 2), True),
        (["truncated", 3, 2], truncated_poly(3, 2), True),
        (["truncated", 2, 3], truncated_poly(2, 3), True),
        (["field", 2], field_algebra(2), True),
        (["field", 3], field_algebra(3), True),
        (["matrix", 2, 2], matrix_algebra(2, 2), False),
        (["upper", 2, 2], upper_triangular(2, 2), False),
    ]
    for builder, algebra, expected in cases:
        with _Timer() as t:
            verdicts = {}
            payload = None
            witness_ok = True
            for theta in THETAS:
                verdicts[theta] = is_quasi_stable_algebra(algebra, theta,
                                                          cap=profile.element_cap)
                if not verdicts[theta] and payload is None:
                    j, witness = find_algebra_quasi_stable_violation(
                        algebra, theta, cap=profile.element_cap)
                    ok, _why = verify_mathieu_witness(algebra, j, theta, witness)
                    witness_ok = ok
                    payload = _witness_payload(algebra, builder, theta, j, witness)
            classified = _classified_quasi_stable(algebra)
            computed_ok = (all(v == expected for v in verdicts.values())
                           and classified == expected and witness_ok)
        entries.append(CheckEntry(
            check="quasi-stable-classification",
            instance=f"{algebra.name}, all sides",
            claim=claim,
            expected=expected,
            computed={"verdicts": verdicts, "classified": classified,
                      "witness_validated": witness_ok},
            passed=computed_ok,
            witness=payload,
            runtime_ms=t.ms,
        ))
    return entries


def check_stable_classification(profile: Profile) -> list:
    entries = []
    claim = ("an algebra is stable exactly when it is the base field itself or the "
             "split pair over GF(2); verdict is exhaustive over all unit-avoiding "
             "subspaces and cross-checked against the closed form")
    cases = [
        (["field", 2], field_algebra(2), True),
        (["field", 3], field_algebra(3), True),
        (["product", 2, 2], product_algebra(2, 2), True),
        (["product", 2, 3], product_algebra(2, 3), False),
        (["truncated", 2, 2], truncated_poly(2, 2), False),
    ]
    for builder, algebra, expected in cases:
        with _Timer() as t:
            verdicts = {}
            payload = None
            witness_ok = True
            for theta in THETAS:
                verdicts[theta] = is_stable_algebra(algebra, theta, cap=profile.element_cap)
                if not verdicts[theta] and payload is None:
                    j, witness = find_algebra_stable_violation(algebra, theta,
                                                               cap=profile.element_cap)
                    ok, _why = verify_mathieu_witness(algebra, j, theta, witness)
                    witness_ok = ok
                    payload = _witness_payload(algebra, builder, theta, j, witness)
            crossed = is_stable_algebra_classified(algebra, cap=profile.element_cap)
            computed_ok = (all(v == expected for v in verdicts.values())
                           and crossed.agree and crossed.classified == expected
                           and witness_ok)
        entries.append(CheckEntry(
            check="stable-classification",
            instance=f"{algebra.name}, all sides",
            claim=claim,
            expected=expected,
            computed={"verdicts": verdicts, "classified": crossed.classified,
                      "witness_validated": witness_ok},
            passed=computed_ok,
            witness=payload,
            runtime_ms=t.ms,
        ))
    return entries


# -- check 7: weight hyperplanes in the componentwise product algebra -----------------


def check_product_weight_hyperplanes(profile: Profile) -> list:
    entries = []
    claim = ("the weight hyperplane is Mathieu in the componentwise product algebra "
             "exactly when every nonempty support subset has a nonzero weight sum; "
             "all four side selectors coincide")
    combos = [(2, 3), (2, 5), (3, 3)]
    for length, p in combos:
        if p not in profile.primes:
            continue
        fld = GF(p)
        with _Timer() as t:
            mismatch = None
            for alpha in enumerate_vectors(fld, length, profile.element_cap):
                cfg = EvalConfig(fld, tuple((fld.from_int(i),) for i in range(length)), alpha)
                algebra, hyperplane = reduce_to_product_algebra(cfg)
                expected = omega_member(alpha, fld)
                for theta in THETAS:
                    brute = is_theta_mathieu_bruteforce(
                        algebra, hyperplane, theta, profile.element_cap).is_mathieu
                    idem = is_theta_mathieu_idempotent(
                        algebra, hyperplane, theta, profile.element_cap).is_mathieu
                    if brute != expected or idem != expected:
                        mismatch = {"alpha": list(alpha), "theta": theta,
                                    "expected": expected, "brute": brute,
                                    "idempotent": idem}
                        break
                if mismatch:
                    break
        entries.append(CheckEntry(
            check="product-weight-hyperplane",
            instance=f"length={length} p={p}, all {p ** length} weight vectors, all sides",
            claim=claim,
            expected="subset-sum criterion",
            computed="matches" if mismatch is None else mismatch,
            passed=mismatch is None,
            runtime_ms=t.ms,
        ))
    return entries


# -- check 8: evaluation-functional subspaces -----------------------------------------


def _random_rational(rng: random.Random, span: int = 6) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, 4)
    return Fraction(num, den)


def _random_poly(rng: random.Random, max_degree: int = 8) -> Poly:
    deg = rng.randrange(max_degree + 1)
    coeffs = [_random_rational(rng) for _ in range(deg + 1)]
    return Poly.univariate(QQ, coeffs)


def _horner_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _independent_twist(cfg: EvalConfig, f: Poly) -> list:
    """Weight twist computed with a separate dense Horner evaluation."""
    coeffs = f.coeffs_univariate()
    return [w * _horner_eval(coeffs, pt[0]) for w, pt in zip(cfg.weights, cfg.points)]


def _subset_sums_nonzero(values: Sequence[Fraction]) -> bool:
    import itertools as it
    nz = [v for v in values if v]
    for size in range(1, len(nz) + 1):
        for combo in it.combinations(nz, size):
            if sum(combo) == 0:
                return False
    return True


def check_evaluation_subspace_identities(profile: Profile) -> list:
    entries = []
    claim = ("twisting the weights by point values implements the colon operation, "
             "and the stable/quasi-stable membership formulas match an independent "
             "dense-evaluation recomputation")
    rng = _rng(profile, "evaluation")
    chunk = 50
    configs_left = profile.eval_configs
    batch_index = 0
    while configs_left > 0:
        todo = min(chunk, configs_left)
        configs_left -= todo
        with _Timer() as t:
            failure = None
            for _ in range(todo):
                length = rng.randint(1, 4)
                points = rng.sample(range(-6, 7), length)
                cfg = EvalConfig(QQ, tuple((Fraction(pt),) for pt in points),
                                 tuple(_random_rational(rng) for _ in range(length)))
                f = _random_poly(rng)
                twisted = EvalConfig(QQ, cfg.points, alpha_f_B(f, cfg))
                for _ in range(profile.poly_samples):
                    g = _random_poly(rng)
                    if nba_member(g * f, cfg) != nba_member(g, twisted):
                        failure = {"what": "colon identity", "points": [str(x) for x in points]}
                        break
                if failure:
                    break
                independent = _independent_twist(cfg, f)
                sigma_expected = sum(1 for v in independent if v) <= 1
                tau_expected = _subset_sums_nonzero(independent)
                if (nba_sigma_member(f, cfg) != sigma_expected
                        or nba_tau_member(f, cfg) != tau_expected):
                    failure = {"what": "membership formula",
                               "points": [str(x) for x in points]}
                    break
        entries.append(CheckEntry(
            check="evaluation-subspace-identities",
            instance=f"batch {batch_index}: {todo} random rational configurations, "
                     f"{profile.poly_samples} sampled polynomials each",
            claim=claim,
            expected="identities hold on every sample",
            computed="hold" if failure is None else failure,
            passed=failure is None,
            runtime_ms=t.ms,
        ))
        batch_index += 1
    return entries


# -- check 9: integration-functional subspaces ----------------------------------------


def _double_sum_integral(f: Poly, q: Poly, a: Fraction, b: Fraction) -> Fraction:
    """Term-by-term pairing without polynomial multiplication."""
    total = Fraction(0)
    for (i,), ci in f.terms.items():
        for (j,), cj in q.terms.items():
            k = i + j
            total += ci * cj * (b ** (k + 1) - a ** (k + 1)) / (k + 1)
    return total


def check_integration_battery(profile: Profile) -> list:
    entries = []
    rng = _rng(profile, "integration")

    with _Timer() as t:
        failure = None
        for _ in range(profile.integral_samples):
            a = _random_rational(rng)
            b = _random_rational(rng)
            if a == b:
                b = a + 1
            f, q = _random_poly(rng), _random_poly(rng)
            cfg = IntegralConfig(a, b, q)
            if exact_integral(f, cfg) != _double_sum_integral(f, q, a, b):
                failure = {"a": str(a), "b": str(b)}
                break
    entries.append(CheckEntry(
        check="integration-battery",
        instance=f"antiderivative route vs double-sum route, {profile.integral_samples} samples",
        claim="the two exact integration routes agree",
        expected="equal values",
        computed="equal" if failure is None else failure,
        passed=failure is None,
        runtime_ms=t.ms,
    ))

    with _Timer() as t:
        failure = None
        for _ in range(profile.integral_samples):
            q = _random_poly(rng)
            while q.is_zero():
                q = _random_poly(rng)
            a = _random_rational(rng)
            b = a + Fraction(rng.randint(1, 5), rng.randint(1, 3))
            cfg = IntegralConfig(a, b, q)
            if exact_integral(q, cfg) <= 0:
                failure = {"a": str(a), "b": str(b)}
                break
    entries.append(CheckEntry(
        check="integration-battery",
        instance=f"positivity of the square pairing, {profile.integral_samples} samples",
        claim="the integral of q*q over a forward interval is strictly positive",
        expected="positive",
        computed="positive" if failure is None else failure,
        passed=failure is None,
    runtime_ms=t.ms,
    ))

    with _Timer() as t:
        failure = None
        for _ in range(profile.integral_samples):
            q = _random_poly(rng)
            while q.is_zero():
                q = _random_poly(rng)
            a = _random_rational(rng)
            b = a + 1
            cfg = IntegralConfig(a, b, q)
            h1 = _random_poly(rng)
            pairing = exact_integral(h1, cfg)
            if pairing != 0:
                # outside the subspace: must be quasi-stable
                if not nq_tau_member(h1, cfg) or nq_sigma_member(h1, cfg) != h1.is_zero():
                    failure = {"case": "complement", "a": str(a)}
                    break
            inside = h1.scale(exact_integral(q, cfg)) - q.scale(pairing)
            if not inside.is_zero():
                if not nq_member(inside, cfg) or nq_tau_member(inside, cfg) \
                        or nq_sigma_member(inside, cfg):
                    failure = {"case": "member", "a": str(a)}
                    break
            if not (nq_tau_member(Poly.zero(QQ), cfg) and nq_sigma_member(Poly.zero(QQ), cfg)):
                failure = {"case": "zero"}
                break
    entries.append(CheckEntry(
        check="integration-battery",
        instance=f"quasi-stable membership consistency, {profile.integral_samples} samples",
        claim=("the quasi-stable set of the integration subspace is its complement "
               "plus zero, and the stable set is zero alone"),
        expected="consistent",
        computed="consistent" if failure is None else failure,
        passed=failure is None,
        runtime_ms=t.ms,
    ))
    return entries


# -- check 10: functorial transfers ---------------------------------------------------


def check_functorial_identities(profile: Profile) -> list:
    entries = []
    rng = _rng(profile, "functorial")
    cap = profile.element_cap

    # module homomorphism pullbacks
    algebras = [truncated_poly(2, 2), truncated_poly(3, 2), product_algebra(2, 2),
                upper_triangular(2, 2), matrix_algebra(2, 2), product_algebra(2, 3)]
    pairs = []
    for algebra in algebras:
        nat = natural_module(algebra)
        pairs.append((nat, nat))
    mats2 = matrix_algebra(2, 2)
    pairs.append((column_module(mats2, 2), natural_module(mats2)))
    pairs.append((natural_module(mats2), column_module(mats2, 2)))
    with _Timer() as t:
        failure = None
        done = 0
        pair_idx = 0
        while done < profile.hom_samples and failure is None:
            source, target = pairs[pair_idx % len(pairs)]
            pair_idx += 1
            basis = module_hom_basis(source, target)
            if not basis:
                continue
            coeffs = [rng.randrange(source.field.p) for _ in basis]
            rows = [[source.field.zero] * source.dim for _ in range(target.dim)]
            for c, mat in zip(coeffs, basis):
                if not c:
                    continue
                for r in range(target.dim):
                    for s in range(source.dim):
                        rows[r][s] = source.field.add(
                            rows[r][s], source.field.mul(c, mat[r][s]))
            phi = ModuleHom(source, target, rows)
            h_space = _random_subspace(rng, target.field, target.dim)
            pulled = phi.pullback_subspace(h_space)
            for theta in THETAS:
                tau_target = tau(target, h_space, theta, cap)
                lhs = frozenset(u for u in enumerate_vectors(source.field, source.dim, cap)
                                if phi.apply(u) in tau_target)
                rhs = frozenset(tau(source, pulled, theta, cap))
                sig_target = sigma(target, h_space, theta, cap)
                lhs_s = frozenset(u for u in enumerate_vectors(source.field, source.dim, cap)
                                  if phi.apply(u) in sig_target)
                rhs_s = frozenset(sigma(source, pulled, theta, cap))
                if lhs != rhs or lhs_s != rhs_s:
                    failure = {"source": source.name, "target": target.name,
                               "theta": theta}
                    break
            done += 1
    entries.append(CheckEntry(
        check="functorial-identities",
        instance=f"module-hom pullbacks, {profile.hom_samples} sampled maps, all sides",
        claim="preimages under module homomorphisms commute with sigma and tau",
        expected="equality",
        computed="equal" if failure is None else failure,
        passed=failure is None,
        runtime_ms=t.ms,
    ))

    # quotient maps of modules
    with _Timer() as t:
        failure = None
        zoo = _module_zoo(profile)
        for i in range(max(10, profile.hom_samples // 4)):
            module = zoo[i % len(zoo)]
            n_space = _random_subspace(rng, module.field, module.dim)
            v_space = module.max_submodule(n_space)
            quot, proj = module.quotient_module(v_space)
            n_image = proj.image_of_subspace(n_space)
            for theta in THETAS:
                tau_quot = tau(quot, n_image, theta, cap)
                pulled = frozenset(
                    u for u in enumerate_vectors(module.field, module.dim, cap)
                    if proj.apply(u) in tau_quot)
                direct = frozenset(tau(module, n_space, theta, cap))
                if pulled != direct:
                    failure = {"module": module.name, "theta": theta, "set": "tau"}
                    break
                sigma_quot = sigma(quot, n_image, theta, cap)
                pulled_s = frozenset(
                    u for u in enumerate_vectors(module.field, module.dim, cap)
                    if proj.apply(u) in sigma_quot)
                direct_s = frozenset(sigma(module, n_space, theta, cap))
                if pulled_s != direct_s:
                    failure = {"module": module.name, "theta": theta, "set": "sigma"}
                    break
                # surjectivity: pushing forward gives the quotient-side sets
                if frozenset(proj.apply(u) for u in direct) != frozenset(tau_quot):
                    failure = {"module": module.name, "theta": theta, "set": "tau image"}
                    break
                if frozenset(proj.apply(u) for u in direct_s) != frozenset(sigma_quot):
                    failure = {"module": module.name, "theta": theta, "set": "sigma image"}
                    break
            if failure:
                break
    entries.append(CheckEntry(
        check="functorial-identities",
        instance="quotient-map transfers over the module zoo, all sides",
        claim=("for the quotient by the maximum submodule of N, sigma and tau of N are "
               "the full preimages of sigma and tau of the image of N"),
        expected="equality",
        computed="equal" if failure is None else failure,
        passed=failure is None,
        runtime_ms=t.ms,
    ))

    # surjective algebra maps
    with _Timer() as t:
        failure = None
        candidates = [truncated_poly(3, 2), truncated_poly(2, 3), upper_triangular(2, 2),
                      product_algebra(2, 2), product_algebra(3, 2)]
        for algebra in candidates:
            ideals = []
            seen = set()
            for a in enumerate_vectors(algebra.field, algebra.dim, cap):
                gen = algebra.theta_ideal_generated(a, "two")
                if gen.is_full() or gen.basis in seen:
                    continue
                seen.add(gen.basis)
                ideals.append(gen)
            for ideal in ideals:
                quot, proj = quotient_algebra(algebra, ideal)
                nat_a = natural_module(algebra)
                nat_b = natural_module(quot)
                for _ in range(3):
                    j_space = _random_subspace(rng, quot.field, quot.dim)
                    pulled = preimage_subspace(algebra.field, proj, j_space, algebra.dim)
                    for theta in THETAS:
                        tau_b = tau(nat_b, j_space, theta, cap)
                        sigma_b = sigma(nat_b, j_space, theta, cap)
                        lhs = frozenset(
                            a for a in enumerate_vectors(algebra.field, algebra.dim, cap)
                            if tuple(_apply_matrix(algebra.field, proj, a)) in tau_b)
                        rhs = frozenset(tau(nat_a, pulled, theta, cap))
                        lhs_s = frozenset(
                            a for a in enumerate_vectors(algebra.field, algebra.dim, cap)
                            if tuple(_apply_matrix(algebra.field, proj, a)) in sigma_b)
                        rhs_s = frozenset(sigma(nat_a, pulled, theta, cap))
                        if lhs != rhs or lhs_s != rhs_s:
                            failure = {"algebra": algebra.name, "theta": theta}
                            break
                    if failure:
                        break
                if failure:
                    break
            if failure:
                break
    entries.append(CheckEntry(
        check="functorial-identities",
        instance="surjective algebra maps (quotients by principal ideals), all sides",
        claim="for surjective algebra maps the tau preimage transfer is an equality",
        expected="equality",
        computed="equal" if failure is None else failure,
        passed=failure is None,
        runtime_ms=t.ms,
    ))
    return entries


def _apply_matrix(field: Field, rows, v):
    return mat_vec(field, rows, v)


# -- check 11: one-dimensional division algebras --------------------------------------


def check_division_algebra_sets(profile: Profile) -> list:
    entries = []
    claim = ("over a one-dimensional algebra the only subspaces are zero and "
             "everything, and both have full stable and quasi-stable sets")
    for p in (2, 3, 5, 7):
        with _Timer() as t:
            algebra = field_algebra(p)
            module = natural_module(algebra)
            everything = frozenset(enumerate_vectors(algebra.field, 1, profile.element_cap))
            mismatch = None
            for n_space in enumerate_subspaces(algebra.field, 1, profile.element_cap):
                for theta in THETAS:
                    got_sigma = frozenset(sigma(module, n_space, theta, profile.element_cap))
                    got_tau = frozenset(tau(module, n_space, theta, profile.element_cap))
                    if got_sigma != everything or got_tau != everything:
                        mismatch = {"subspace": n_space.to_json(), "theta": theta}
                        break
                if mismatch:
                    break
        entries.append(CheckEntry(
            check="division-algebra-sets",
            instance=f"GF({p}) as a one-dimensional algebra, both subspaces, all sides",
            claim=claim,
            expected="full sets",
            computed="full" if mismatch is None else mismatch,
            passed=mismatch is None,
            runtime_ms=t.ms,
        ))
    return entries


# -- suite assembly -------------------------------------------------------------------


SUITE: list = [
    ("oracle-agreement", check_oracle_agreement),
    ("column-module-sets", check_column_module_sets),
    ("trace-hyperplane-sets", check_trace_hyperplane_sets),
    ("max-submodule-identity", check_max_submodule),
    ("quasi-stable-classification", check_quasi_stable_classification),
    ("stable-classification", check_stable_classification),
    ("product-weight-hyperplane", check_product_weight_hyperplanes),
    ("evaluation-subspace-identities", check_evaluation_subspace_identities),
    ("integration-battery", check_integration_battery),
    ("functorial-identities", check_functorial_identities),
    ("division-algebra-sets", check_division_algebra_sets),
]


def _run_check(args):
    name, profile = args
    fn = dict(SUITE)[name]
    return fn(profile)


def run_suite(profile: Profile | None = None, checks: Sequence | None = None,
              jobs: int = 1) -> VerificationReport:
    """Run the verification battery and assemble a deterministic report."""
    profile = profile or Profile()
    suite = list(checks) if checks is not None else SUITE
    if jobs > 1 and checks is None:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_run_check, [(name, profile) for name, _ in suite])
        entries = [e for batch in results for e in batch]
    else:
        entries = []
        for _name, fn in suite:
            entries.extend(fn(profile))
    return VerificationReport(entries)
