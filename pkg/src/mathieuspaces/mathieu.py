"""Deciders for the Mathieu property and the stable/quasi-stable element sets.

Conventions for the side selector theta:
  - "pre" at the ideal level means two-sided (left and right);
  - "pre" at the Mathieu level means left Mathieu AND right Mathieu;
  - "two" tests products with multipliers on both sides.

Negative verdicts always carry a witness that `verify_mathieu_witness`
re-validates from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebras import Algebra, normalize_theta
from .linalg import (
    DEFAULT_ELEMENT_CAP,
    EnumerationCapExceeded,
    Subspace,
    enumerate_subspaces,
    enumerate_vectors,
    vector_count,
)
from .modules import ModuleSpace

PRE_NOTE = "pre-two-sided ideals are taken to be two-sided ideals"


@dataclass(frozen=True)
class MathieuVerdict:
    is_mathieu: bool
    witness: dict | None = None

    def __bool__(self):
        return self.is_mathieu


class ElementSet:
    """A set of module elements, explicit when enumeration fits the cap and
    a membership predicate otherwise."""

    def __init__(self, field, ambient_dim, members=None, predicate=None, note=None):
        self.field = field
        self.ambient_dim = ambient_dim
        self.members = None if members is None else tuple(members)
        self._member_set = None if members is None else frozenset(self.members)
        self.predicate = predicate
        self.note = note

    @property
    def is_explicit(self) -> bool:
        return self.members is not None

    def __contains__(self, u) -> bool:
        u = tuple(u)
        if self._member_set is not None:
            return u in self._member_set
        return self.predicate(u)

    def __iter__(self):
        if self.members is None:
            raise ValueError("cannot iterate a capped element set; use membership queries")
        return iter(self.members)

    def __len__(self):
        if self.members is None:
            raise ValueError("capped element set has no materialized length")
        return len(self.members)

    def __eq__(self, other):
        if isinstance(other, ElementSet):
            return self.members == other.members and self.ambient_dim == other.ambient_dim
        return NotImplemented

    def to_json(self):
        if self.members is None:
            return {"capped": True}
        f = self.field
        out = {"members": [[f.scalar_to_json(x) for x in v] for v in self.members]}
        if self.note:
            out["note"] = self.note
        return out


# -- ideal tests -----------------------------------------------------------------


def is_theta_ideal(algebra: Algebra, j: Subspace, theta: str) -> bool:
    theta = normalize_theta(theta)
    basis = [algebra.basis_vector(i) for i in range(algebra.dim)]
    if theta in ("left", "pre", "two"):
        for v in j.basis:
            for b in basis:
                if not j.contains(algebra.multiply(b, v)):
                    return False
    if theta in ("right", "pre", "two"):
        for v in j.basis:
            for b in basis:
                if not j.contains(algebra.multiply(v, b)):
                    return False
    return True


def ideal_violation_witness(algebra: Algebra, j: Subspace, theta: str) -> dict | None:
    """A concrete (element of J, basis multiplier) proof that J is not a theta-ideal."""
    theta = normalize_theta(theta)
    basis = [algebra.basis_vector(i) for i in range(algebra.dim)]
    if theta in ("left", "pre", "two"):
        for v in j.basis:
            for b in basis:
                if not j.contains(algebra.multiply(b, v)):
                    return {"kind": "ideal", "element": v, "left": b, "right": None}
    if theta in ("right", "pre", "two"):
        for v in j.basis:
            for b in basis:
                if not j.contains(algebra.multiply(v, b)):
                    return {"kind": "ideal", "element": v, "left": None, "right": b}
    return None


# -- Mathieu deciders -----------------------------------------------------------


def _check_finite(algebra: Algebra, cap: int):
    if algebra.field.is_rational:
        raise ValueError("exhaustive deciders need a finite field")
    count = algebra.element_count()
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    return count


def is_theta_mathieu_bruteforce(algebra: Algebra, j: Subspace, theta: str,
                                cap: int = DEFAULT_ELEMENT_CAP) -> MathieuVerdict:
    """Scan every a whose full power sequence stays in J and every multiplier.

    The eventual periodicity of powers makes "for all large exponents"
    equivalent to "for every element of the power cycle".
    """
    theta = normalize_theta(theta)
    count = _check_finite(algebra, cap)
    if j.ambient_dim != algebra.dim or j.field != algebra.field:
        raise ValueError("subspace does not live in this algebra")
    if j.is_full():
        return MathieuVerdict(True)
    table = algebra.mult_table()
    if table is not None:
        return _bruteforce_indexed(algebra, j, theta, count, table)
    return _bruteforce_generic(algebra, j, theta, cap)


def _bruteforce_indexed(algebra, j, theta, count, table):
    mem = bytearray(count)
    index_of = algebra.index_of
    for v in j.elements():
        mem[index_of(v)] = 1
    check_left = theta in ("left", "pre")
    check_right = theta in ("right", "pre")
    rng = range(count)
    for a_idx in rng:
        tail, cycle = algebra.trajectory_indices(a_idx)
        if not all(mem[x] for x in tail):
            continue
        if not all(mem[x] for x in cycle):
            continue
        for pos, x in enumerate(cycle):
            power = len(tail) + pos + 1
            if check_left:
                for b in rng:
                    if not mem[table[b][x]]:
                        return _indexed_witness(algebra, a_idx, power, b=b)
            if check_right:
                row = table[x]
                for c in rng:
                    if not mem[row[c]]:
                        return _indexed_witness(algebra, a_idx, power, c=c)
            if theta == "two":
                products = {table[b][x] for b in rng}
                for bx in products:
                    row = table[bx]
                    for c in rng:
                        if not mem[row[c]]:
                            b = next(bb for bb in rng if table[bb][x] == bx)
                            return _indexed_witness(algebra, a_idx, power, b=b, c=c)
    return MathieuVerdict(True)


def _indexed_witness(algebra, a_idx, power, b=None, c=None):
    witness = {
        "kind": "mathieu",
        "a": algebra.vector_at(a_idx),
        "b": None if b is None else algebra.vector_at(b),
        "c": None if c is None else algebra.vector_at(c),
        "power": power,
    }
    return MathieuVerdict(False, witness)


def _bruteforce_generic(algebra, j, theta, cap):
    check_left = theta in ("left", "pre")
    check_right = theta in ("right", "pre")
    elems = algebra.element_list(cap)
    for a in elems:
        traj = algebra.power_trajectory(a)
        if not traj.all_powers_in(j):
            continue
        for pos, x in enumerate(traj.cycle):
            power = len(traj.tail) + pos + 1
            if check_left:
                for b in elems:
                    if not j.contains(algebra.multiply(b, x)):
                        return MathieuVerdict(False, {
                            "kind": "mathieu", "a": a, "b": b, "c": None, "power": power})
            if check_right:
                for c in elems:
                    if not j.contains(algebra.multiply(x, c)):
                        return MathieuVerdict(False, {
                            "kind": "mathieu", "a": a, "b": None, "c": c, "power": power})
            if theta == "two":
                for b in elems:
                    bx = algebra.multiply(b, x)
                    for c in elems:
                        if not j.contains(algebra.multiply(bx, c)):
                            return MathieuVerdict(False, {
                                "kind": "mathieu", "a": a, "b": b, "c": c, "power": power})
    return MathieuVerdict(True)


def is_theta_mathieu_idempotent(algebra: Algebra, j: Subspace, theta: str,
                                cap: int = DEFAULT_ELEMENT_CAP) -> MathieuVerdict:
    """J is theta-Mathieu iff the theta-ideal of every idempotent in J stays in J.

    Valid here because finite-dimensional algebras over a field are algebraic.
    """
    theta = normalize_theta(theta)
    if algebra.field.is_rational:
        raise ValueError("idempotent enumeration needs a finite field")
    if j.ambient_dim != algebra.dim or j.field != algebra.field:
        raise ValueError("subspace does not live in this algebra")
    basis = [algebra.basis_vector(i) for i in range(algebra.dim)]
    for e in algebra.idempotents(cap):
        if not j.contains(e):
            continue
        if theta in ("left", "pre"):
            for b in basis:
                if not j.contains(algebra.multiply(b, e)):
                    return MathieuVerdict(False, {
                        "kind": "mathieu", "a": e, "b": b, "c": None, "power": 1})
        if theta in ("right", "pre"):
            for c in basis:
                if not j.contains(algebra.multiply(e, c)):
                    return MathieuVerdict(False, {
                        "kind": "mathieu", "a": e, "b": None, "c": c, "power": 1})
        if theta == "two":
            for b in basis:
                be = algebra.multiply(b, e)
                for c in basis:
                    if not j.contains(algebra.multiply(be, c)):
                        return MathieuVerdict(False, {
                            "kind": "mathieu", "a": e, "b": b, "c": c, "power": 1})
    return MathieuVerdict(True)


def verify_mathieu_witness(algebra: Algebra, j: Subspace, theta: str, witness: dict):
    """Re-validate a negative verdict from scratch; returns (valid, reason)."""
    theta = normalize_theta(theta)
    kind = witness.get("kind")
    if kind == "ideal":
        v = tuple(witness["element"])
        if not j.contains(v):
            return False, "claimed element is not in the subspace"
        left = witness.get("left")
        right = witness.get("right")
        if left is None and right is None:
            return False, "ideal violations need a multiplier"
        if theta == "left" and right is not None:
            return False, "left-ideal violations admit only a left multiplier"
        if theta == "right" and left is not None:
            return False, "right-ideal violations admit only a right multiplier"
        prod = v
        if left is not None:
            prod = algebra.multiply(tuple(left), prod)
        if right is not None:
            prod = algebra.multiply(prod, tuple(right))
        if j.contains(prod):
            return False, "claimed product actually stays in the subspace"
        return True, "ideal violation confirmed"
    if kind != "mathieu":
        return False, f"unknown witness kind {kind!r}"
    a = tuple(witness["a"])
    traj = algebra.power_trajectory(a)
    if not traj.all_powers_in(j):
        return False, "witness element does not have all powers in the subspace"
    m = witness["power"]
    if m <= len(traj.tail):
        return False, "witness exponent does not reach the power cycle"
    x = traj.power(m)
    prod = x
    b = witness.get("b")
    c = witness.get("c")
    if theta == "left" and (b is None or c is not None):
        return False, "left violations need exactly a left multiplier"
    if theta == "right" and (c is None or b is not None):
        return False, "right violations need exactly a right multiplier"
    if theta == "pre" and (b is None) == (c is None):
        return False, "one-sided violation expected"
    if theta == "two" and (b is None or c is None):
        return False, "two-sided violations need both multipliers"
    if b is not None:
        prod = algebra.multiply(tuple(b), prod)
    if c is not None:
        prod = algebra.multiply(prod, tuple(c))
    if j.contains(prod):
        return False, "claimed product actually stays in the subspace"
    return True, "recurring product escapes the subspace"


# -- memoized bulk verdicts -------------------------------------------------------


def _ideal_bool(algebra: Algebra, j: Subspace, theta: str) -> bool:
    key = ("ideal", theta, j.basis)
    memo = algebra._memo
    if key not in memo:
        memo[key] = is_theta_ideal(algebra, j, theta)
    return memo[key]


def _mathieu_bool(algebra: Algebra, j: Subspace, theta: str, method: str,
                  cap: int) -> bool:
    key = ("mathieu", method, theta, j.basis)
    memo = algebra._memo
    if key not in memo:
        if method == "brute":
            memo[key] = is_theta_mathieu_bruteforce(algebra, j, theta, cap).is_mathieu
        else:
            memo[key] = is_theta_mathieu_idempotent(algebra, j, theta, cap).is_mathieu
    return memo[key]


# -- module-level tests ------------------------------------------------------------


def is_module_mathieu(module: ModuleSpace, n_space: Subspace, u: Sequence, theta: str,
                      method: str = "idem", cap: int = DEFAULT_ELEMENT_CAP) -> MathieuVerdict:
    """Is N a theta-Mathieu subspace of the module with respect to u."""
    j = module.colon(n_space, u)
    if method == "brute":
        return is_theta_mathieu_bruteforce(module.algebra, j, theta, cap)
    return is_theta_mathieu_idempotent(module.algebra, j, theta, cap)


def sigma(module: ModuleSpace, n_space: Subspace, theta: str,
          cap: int = DEFAULT_ELEMENT_CAP) -> ElementSet:
    """Elements u with (N:u) a theta-ideal."""
    theta = normalize_theta(theta)
    module._check_subspace(n_space)
    note = PRE_NOTE if theta == "pre" else None

    def member(u):
        return _ideal_bool(module.algebra, module.colon_cached(n_space, u), theta)

    if module.field.is_rational or vector_count(module.field, module.dim) > cap:
        return ElementSet(module.field, module.dim, predicate=member, note=note)
    members = [u for u in enumerate_vectors(module.field, module.dim, cap) if member(u)]
    return ElementSet(module.field, module.dim, members=members, note=note)


def tau(module: ModuleSpace, n_space: Subspace, theta: str,
        cap: int = DEFAULT_ELEMENT_CAP, method: str = "idem") -> ElementSet:
    """Elements u with (N:u) a theta-Mathieu subspace."""
    theta = normalize_theta(theta)
    module._check_subspace(n_space)

    def member(u):
        return _mathieu_bool(module.algebra, module.colon_cached(n_space, u), theta, method, cap)

    if module.field.is_rational or vector_count(module.field, module.dim) > cap:
        return ElementSet(module.field, module.dim, predicate=member)
    members = [u for u in enumerate_vectors(module.field, module.dim, cap) if member(u)]
    return ElementSet(module.field, module.dim, members=members)


# -- stability of modules and algebras ----------------------------------------------


def find_quasi_stable_violation(module: ModuleSpace, theta: str, method: str = "idem",
                                cap: int = DEFAULT_ELEMENT_CAP):
    """First (N, u, witness) with u outside N and (N:u) not theta-Mathieu."""
    theta = normalize_theta(theta)
    for n_space in enumerate_subspaces(module.field, module.dim, cap):
        if n_space.is_full():
            continue
        for u in enumerate_vectors(module.field, module.dim, cap):
            if n_space.contains(u):
                continue
            j = module.colon_cached(n_space, u)
            if not _mathieu_bool(module.algebra, j, theta, method, cap):
                verdict = (is_theta_mathieu_bruteforce(module.algebra, j, theta, cap)
                           if method == "brute"
                           else is_theta_mathieu_idempotent(module.algebra, j, theta, cap))
                return n_space, u, verdict.witness
    return None


def is_quasi_stable(module: ModuleSpace, theta: str, method: str = "idem",
                    cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """Every element outside any subspace N is quasi-stable for N."""
    return find_quasi_stable_violation(module, theta, method, cap) is None


def find_stable_violation(module: ModuleSpace, theta: str,
                          cap: int = DEFAULT_ELEMENT_CAP):
    theta = normalize_theta(theta)
    for n_space in enumerate_subspaces(module.field, module.dim, cap):
        if n_space.is_full():
            continue
        for u in enumerate_vectors(module.field, module.dim, cap):
            if n_space.contains(u):
                continue
            j = module.colon_cached(n_space, u)
            if not _ideal_bool(module.algebra, j, theta):
                return n_space, u, ideal_violation_witness(module.algebra, j, theta)
    return None


def is_stable(module: ModuleSpace, theta: str, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    return find_stable_violation(module, theta, cap) is None


def find_algebra_quasi_stable_violation(algebra: Algebra, theta: str, method: str = "idem",
                                        cap: int = DEFAULT_ELEMENT_CAP):
    """First unit-avoiding subspace that fails to be theta-Mathieu."""
    theta = normalize_theta(theta)
    for j in enumerate_subspaces(algebra.field, algebra.dim, cap):
        if j.contains(algebra.unit):
            continue
        if not _mathieu_bool(algebra, j, theta, method, cap):
            verdict = (is_theta_mathieu_bruteforce(algebra, j, theta, cap)
                       if method == "brute"
                       else is_theta_mathieu_idempotent(algebra, j, theta, cap))
            return j, verdict.witness
    return None


def is_quasi_stable_algebra(algebra: Algebra, theta: str, method: str = "idem",
                            cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """Every subspace avoiding the unit is theta-Mathieu."""
    return find_algebra_quasi_stable_violation(algebra, theta, method, cap) is None


def find_algebra_stable_violation(algebra: Algebra, theta: str,
                                  cap: int = DEFAULT_ELEMENT_CAP):
    theta = normalize_theta(theta)
    for j in enumerate_subspaces(algebra.field, algebra.dim, cap):
        if j.contains(algebra.unit):
            continue
        if not _ideal_bool(algebra, j, theta):
            return j, ideal_violation_witness(algebra, j, theta)
    return None


def is_stable_algebra(algebra: Algebra, theta: str, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """Every subspace avoiding the unit is a theta-ideal."""
    return find_algebra_stable_violation(algebra, theta, cap) is None


@dataclass(frozen=True)
class StableClassification:
    exhaustive: bool
    classified: bool

    @property
    def agree(self) -> bool:
        return self.exhaustive == self.classified


def is_stable_algebra_classified(algebra: Algebra, theta: str = "two",
                                 cap: int = DEFAULT_ELEMENT_CAP) -> StableClassification:
    """Exhaustive stability versus the closed-form classification:
    stable iff the algebra is the base field itself, or it is the
    two-dimensional split pair over GF(2)."""
    exhaustive = is_stable_algebra(algebra, theta, cap)
    if algebra.dim == 1:
        classified = True
    elif algebra.field.p == 2 and algebra.dim == 2:
        trivial = {algebra.zero(), algebra.unit}
        classified = any(e not in trivial for e in algebra.idempotents(cap))
    else:
        classified = False
    return StableClassification(exhaustive, classified)


def has_only_trivial_idempotents(algebra: Algebra, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    trivial = {algebra.zero(), algebra.unit}
    return all(e in trivial for e in algebra.idempotents(cap))
