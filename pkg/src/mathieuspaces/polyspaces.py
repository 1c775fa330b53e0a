"""Subspaces of polynomial algebras cut out by evaluation and integration
functionals, with closed-form stable/quasi-stable membership predicates.

The ambient polynomial algebra is infinite-dimensional, so these sets are
exposed as predicates, never as enumerated element lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebras import product_algebra
from .fields import QQ, Field
from .linalg import Subspace, solve_right_kernel

MAX_SUPPORT = 20


class SupportCapExceeded(ValueError):
    def __init__(self, size: int):
        super().__init__(f"support of size {size} exceeds the 2^{MAX_SUPPORT} subset-scan cap")
        self.size = size


class Poly:
    """Sparse multivariate polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            coef = field.check_scalar(coef)
            if coef:
                clean[exp] = field.add(clean.get(exp, field.zero), coef) \
                    if exp in clean else coef
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def zero(cls, field: Field, nvars: int = 1) -> "Poly":
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, c, nvars: int = 1) -> "Poly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def univariate(cls, field: Field, coeffs: Sequence) -> "Poly":
        """Dense coefficient list, lowest degree first."""
        return cls(field, 1, {(k,): c for k, c in enumerate(coeffs) if c})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def coeffs_univariate(self) -> list:
        if self.nvars != 1:
            raise ValueError("not univariate")
        if not self.terms:
            return []
        top = max(e[0] for e in self.terms)
        out = [self.field.zero] * (top + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def __add__(self, other: "Poly") -> "Poly":
        self._compat(other)
        terms = dict(self.terms)
        add = self.field.add
        for exp, c in other.terms.items():
            s = add(terms.get(exp, self.field.zero), c)
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return Poly(self.field, self.nvars, terms)

    def __neg__(self) -> "Poly":
        neg = self.field.neg
        return Poly(self.field, self.nvars, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._compat(other)
        field = self.field
        add, mul = field.add, field.mul
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = mul(c1, c2)
                if exp in terms:
                    s = add(terms[exp], prod)
                    if s:
                        terms[exp] = s
                    else:
                        del terms[exp]
                elif prod:
                    terms[exp] = prod
        return Poly(self.field, self.nvars, terms)

    def scale(self, c) -> "Poly":
        mul = self.field.mul
        return Poly(self.field, self.nvars, {e: mul(c, v) for e, v in self.terms.items()})

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("evaluation point has the wrong arity")
        field = self.field
        point = [field.check_scalar(x) for x in point]
        acc = field.zero
        for exp, coef in self.terms.items():
            term = coef
            for x, e in zip(point, exp):
                if e:
                    term = field.mul(term, _pow(field, x, e))
            acc = field.add(acc, term)
        return acc

    def _compat(self, other: "Poly"):
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("polynomial arity or field mismatch")

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self.nvars} vars, {len(self.terms)} terms)"


def _pow(field: Field, x, e: int):
    if field.p is not None:
        return pow(x, e, field.p)
    return x ** e


# -- weighted evaluation subspaces -------------------------------------------------


@dataclass(frozen=True)
class EvalConfig:
    """Distinct evaluation points with weights; cuts out the subspace of
    polynomials killed by the weighted evaluation sum."""

    field: Field
    points: tuple
    weights: tuple

    def __post_init__(self):
        pts = tuple(tuple(self.field.check_scalar(x) for x in p) for p in self.points)
        wts = tuple(self.field.check_scalar(w) for w in self.weights)
        if len(pts) != len(wts):
            raise ValueError("need one weight per point")
        if len(set(pts)) != len(pts):
            raise ValueError("evaluation points must be distinct")
        if pts and len(set(len(p) for p in pts)) != 1:
            raise ValueError("points must share one arity")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    @property
    def nvars(self) -> int:
        return len(self.points[0]) if self.points else 1

    @property
    def length(self) -> int:
        return len(self.points)


def support(weights: Sequence) -> tuple:
    return tuple(i for i, w in enumerate(weights) if w)


def omega_member(weights: Sequence, field: Field | None = None) -> bool:
    """True iff every nonempty subset of the support has a nonzero sum."""
    sup = support(weights)
    if len(sup) > MAX_SUPPORT:
        raise SupportCapExceeded(len(sup))
    vals = [weights[i] for i in sup]
    for size in range(1, len(vals) + 1):
        for combo in itertools.combinations(vals, size):
            total = combo[0]
            for v in combo[1:]:
                total = total + v
            if field is not None and field.p is not None:
                total = total % field.p
            if not total:
                return False
    return True


def alpha_f_B(f: Poly, cfg: EvalConfig) -> tuple:
    """Componentwise weight twist (w_i * f(u_i))."""
    if f.field != cfg.field or f.nvars != cfg.nvars:
        raise ValueError("polynomial does not match the configuration")
    mul = cfg.field.mul
    return tuple(mul(w, f.evaluate(p)) for w, p in zip(cfg.weights, cfg.points))


def nba_member(f: Poly, cfg: EvalConfig) -> bool:
    field = cfg.field
    acc = field.zero
    for w, p in zip(cfg.weights, cfg.points):
        acc = field.add(acc, field.mul(w, f.evaluate(p)))
    return not acc


def nba_sigma_member(f: Poly, cfg: EvalConfig) -> bool:
    return len(support(alpha_f_B(f, cfg))) <= 1


def nba_tau_member(f: Poly, cfg: EvalConfig) -> bool:
    return omega_member(alpha_f_B(f, cfg), cfg.field)


def indicator_poly(cfg: EvalConfig, i: int) -> Poly:
    """A polynomial that is 1 at point i and 0 at every other point."""
    field = cfg.field
    target = cfg.points[i]
    out = Poly.constant(field, field.one, cfg.nvars)
    for j, other in enumerate(cfg.points):
        if j == i:
            continue
        coord = next(c for c in range(cfg.nvars) if other[c] != target[c])
        denom = field.sub(target[coord], other[coord])
        exp = tuple(1 if c == coord else 0 for c in range(cfg.nvars))
        linear = Poly(field, cfg.nvars, {
            exp: field.one,
            (0,) * cfg.nvars: field.neg(other[coord]),
        })
        out = out * linear.scale(field.inv(denom))
    return out


def standard_eval_config(length: int, field: Field, weights: Sequence) -> EvalConfig:
    """Points 0, 1, ..., length-1 on the first coordinate line."""
    if not field.is_rational and length > field.p:
        raise ValueError(
            f"need {length} distinct points on a coordinate line but {field!r} has only {field.p}")
    points = [(field.from_int(t),) for t in range(length)]
    return EvalConfig(field, tuple(points), tuple(weights))


def reduce_to_product_algebra(cfg: EvalConfig):
    """Finite image of the evaluation map: the componentwise product algebra
    together with the weight hyperplane whose Mathieu status mirrors the
    evaluation subspace."""
    field = cfg.field
    if field.is_rational:
        raise ValueError("the finite reduction needs a prime field")
    length = cfg.length
    algebra = product_algebra(length, field)
    if all(not w for w in cfg.weights):
        hyperplane = Subspace.full(field, length)
    else:
        hyperplane = solve_right_kernel(field, [tuple(cfg.weights)], length)
    return algebra, hyperplane


# -- integration subspaces ---------------------------------------------------------


@dataclass(frozen=True)
class IntegralConfig:
    """Interval endpoints and a rational weight polynomial."""

    a: Fraction
    b: Fraction
    q: Poly

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == self.b:
            raise ValueError("endpoints must differ")
        if self.q.field != QQ or self.q.nvars != 1:
            raise ValueError("weight must be a univariate rational polynomial")


def exact_integral(f: Poly, cfg: IntegralConfig) -> Fraction:
    """Exact value of the weighted integral of f over [a, b], via the
    antiderivative of f*q evaluated at the endpoints."""
    if f.field != QQ or f.nvars != 1:
        raise ValueError("integrand must be a univariate rational polynomial")
    h = f * cfg.q
    if h.is_zero():
        return Fraction(0)
    coeffs = h.coeffs_univariate()
    anti = [Fraction(0)] + [Fraction(c, k + 1) for k, c in enumerate(coeffs)]
    return _horner(anti, cfg.b) - _horner(anti, cfg.a)


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def nq_member(f: Poly, cfg: IntegralConfig) -> bool:
    return exact_integral(f, cfg) == 0


def _require_nonzero_weight(cfg: IntegralConfig):
    if cfg.q.is_zero():
        raise ValueError("stable/quasi-stable predicates need a nonzero weight; "
                         "a zero weight makes the subspace the whole algebra")


def nq_sigma_member(h: Poly, cfg: IntegralConfig) -> bool:
    _require_nonzero_weight(cfg)
    return h.is_zero()


def nq_tau_member(h: Poly, cfg: IntegralConfig) -> bool:
    _require_nonzero_weight(cfg)
    return h.is_zero() or exact_integral(h, cfg) != 0
