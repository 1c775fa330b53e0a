"""Finite-dimensional unital associative algebras given by structure constants.

An algebra is the tensor c[i][j] with e_i * e_j = sum_k c[i][j][k] e_k plus
the coordinates of the unit.  Construction validates associativity and the
unit axiom on all basis triples/pairs unless explicitly disabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .fields import Field, GF
from .linalg import (
    DEFAULT_ELEMENT_CAP,
    Subspace,
    enumerate_vectors,
    index_to_vector,
    vector_count,
    vector_to_index,
    zero_vector,
)

THETAS = ("left", "right", "pre", "two")

_THETA_ALIASES = {
    "left": "left",
    "right": "right",
    "pre": "pre",
    "two": "two",
    "pre-two-sided": "pre",
    "two-sided": "two",
    "twosided": "two",
}

# Full multiplication tables are only materialized for small element counts.
TABLE_MAX_ELEMENTS = 2048


def normalize_theta(theta: str) -> str:
    try:
        return _THETA_ALIASES[theta]
    except KeyError:
        raise ValueError(f"unknown side selector {theta!r}; use one of {THETAS}") from None


class AlgebraAxiomError(ValueError):
    """Structure constants violate an algebra axiom; the message names it."""


@dataclass(frozen=True)
class PowerTrajectory:
    """The eventually periodic sequence a, a^2, a^3, ... split at cycle entry."""

    element: tuple
    tail: tuple
    cycle: tuple

    def all_powers_in(self, s: Subspace) -> bool:
        return all(s.contains(v) for v in self.tail) and self.cycle_in(s)

    def cycle_in(self, s: Subspace) -> bool:
        return all(s.contains(v) for v in self.cycle)

    def power(self, m: int) -> tuple:
        """The value of a^m for m >= 1."""
        if m < 1:
            raise ValueError("powers start at exponent 1")
        t = len(self.tail)
        if m <= t:
            return self.tail[m - 1]
        return self.cycle[(m - 1 - t) % len(self.cycle)]


class Algebra:
    def __init__(self, field: Field, structure, unit, name: str | None = None,
                 check: bool = True):
        dim = len(structure)
        self.field = field
        self.dim = dim
        self.structure = tuple(
            tuple(tuple(field.check_scalar(x) for x in cell) for cell in row)
            for row in structure
        )
        for i, row in enumerate(self.structure):
            if len(row) != dim:
                raise AlgebraAxiomError(f"structure row {i} has {len(row)} cells, expected {dim}")
            for j, cell in enumerate(row):
                if len(cell) != dim:
                    raise AlgebraAxiomError(
                        f"product e_{i}*e_{j} has {len(cell)} coordinates, expected {dim}")
        self.unit = tuple(field.check_scalar(x) for x in unit)
        if len(self.unit) != dim:
            raise AlgebraAxiomError(f"unit has {len(self.unit)} coordinates, expected {dim}")
        self.name = name or f"algebra(dim {dim} over {field!r})"
        self._sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(cell) if c) for cell in row)
            for row in self.structure
        )
        self._elements: tuple | None = None
        self._table: list | None = None
        self._table_failed = False
        self._trajectories: dict = {}
        self._idempotents: tuple | None = None
        self._memo: dict = {}
        if check:
            self._validate()

    # -- construction-time axioms -------------------------------------------

    def _validate(self):
        dim = self.dim
        basis = [tuple(self.field.one if k == i else self.field.zero for k in range(dim))
                 for i in range(dim)]
        for i in range(dim):
            if self.multiply(self.unit, basis[i]) != basis[i]:
                raise AlgebraAxiomError(f"unit axiom fails: 1 * e_{i} != e_{i}")
            if self.multiply(basis[i], self.unit) != basis[i]:
                raise AlgebraAxiomError(f"unit axiom fails: e_{i} * 1 != e_{i}")
        for i in range(dim):
            for j in range(dim):
                ij = self.structure[i][j]
                for k in range(dim):
                    left = self.multiply(ij, basis[k])
                    right = self.multiply(basis[i], self.structure[j][k])
                    if left != right:
                        raise AlgebraAxiomError(
                            f"associativity fails at basis triple ({i},{j},{k})")

    # -- basic arithmetic -----------------------------------------------------

    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def basis_vector(self, i: int) -> tuple:
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    def multiply(self, a: Sequence, b: Sequence) -> tuple:
        dim = self.dim
        if len(a) != dim or len(b) != dim:
            raise ValueError("dimension mismatch in algebra product")
        p = self.field.p
        acc = [0] * dim if p is not None else [Fraction(0)] * dim
        sparse = self._sparse
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = sparse[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                coef = ai * bj
                for k, c in row[j]:
                    acc[k] += coef * c
        if p is not None:
            return tuple(x % p for x in acc)
        return tuple(Fraction(x) for x in acc)

    def power(self, a: Sequence, m: int) -> tuple:
        if m < 1:
            raise ValueError("powers start at exponent 1")
        out = tuple(a)
        for _ in range(m - 1):
            out = self.multiply(out, a)
        return out

    # -- element enumeration ----------------------------------------------------

    def element_count(self) -> int:
        return vector_count(self.field, self.dim)

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> Iterator[tuple]:
        return enumerate_vectors(self.field, self.dim, cap)

    def element_list(self, cap: int = DEFAULT_ELEMENT_CAP) -> tuple:
        if self._elements is None:
            self._elements = tuple(self.elements(cap))
        return self._elements

    def index_of(self, v: Sequence) -> int:
        return vector_to_index(self.field, v)

    def vector_at(self, idx: int) -> tuple:
        return index_to_vector(self.field, self.dim, idx)

    def mult_table(self) -> list | None:
        """Index-based multiplication table, or None if too large to build."""
        if self._table is not None:
            return self._table
        if self._table_failed or self.field.is_rational:
            return None
        count = self.element_count()
        if count > TABLE_MAX_ELEMENTS:
            self._table_failed = True
            return None
        elems = self.element_list()
        idx = self.index_of
        table = [[0] * count for _ in range(count)]
        for i, a in enumerate(elems):
            row = table[i]
            for j, b in enumerate(elems):
                row[j] = idx(self.multiply(a, b))
        self._table = table
        return table

    # -- power trajectories -------------------------------------------------------

    def power_trajectory(self, a: Sequence) -> PowerTrajectory:
        """Tail and minimal cycle of a, a^2, a^3, ... (finite fields only)."""
        if self.field.is_rational:
            raise ValueError("power trajectories need a finite field; "
                             "the sequence may be infinite over the rationals")
        a = tuple(a)
        seen: dict = {}
        seq: list = []
        x = a
        while x not in seen:
            seen[x] = len(seq)
            seq.append(x)
            x = self.multiply(x, a)
        j = seen[x]
        return PowerTrajectory(element=a, tail=tuple(seq[:j]), cycle=tuple(seq[j:]))

    def trajectory_indices(self, idx: int) -> tuple:
        """(tail, cycle) of element #idx as index tuples, via the mult table."""
        cached = self._trajectories.get(idx)
        if cached is not None:
            return cached
        table = self.mult_table()
        if table is None:
            traj = self.power_trajectory(self.vector_at(idx))
            out = (tuple(self.index_of(v) for v in traj.tail),
                   tuple(self.index_of(v) for v in traj.cycle))
        else:
            seen: dict = {}
            seq: list = []
            x = idx
            while x not in seen:
                seen[x] = len(seq)
                seq.append(x)
                x = table[x][idx]
            j = seen[x]
            out = (tuple(seq[:j]), tuple(seq[j:]))
        self._trajectories[idx] = out
        return out

    # -- special element sets ---------------------------------------------------

    def idempotents(self, cap: int = DEFAULT_ELEMENT_CAP) -> tuple:
        """All e with e*e = e, in lexicographic order."""
        if self._idempotents is None:
            found = []
            for a in self.elements(cap):
                if self.multiply(a, a) == a:
                    found.append(a)
            self._idempotents = tuple(found)
        return self._idempotents

    def is_nilpotent(self, a: Sequence) -> bool:
        # a nilpotent iff a^(dim+1) = 0: powers up to the first dependence
        # already witness nilpotency in a finite-dimensional algebra.
        x = tuple(a)
        zero = self.zero()
        for _ in range(self.dim + 1):
            if x == zero:
                return True
            x = self.multiply(x, a)
        return x == zero

    def nil_set(self, cap: int = DEFAULT_ELEMENT_CAP) -> tuple:
        return tuple(a for a in self.elements(cap) if self.is_nilpotent(a))

    # -- generated ideals and radicals --------------------------------------------

    def theta_ideal_generated(self, a: Sequence, theta: str) -> Subspace:
        theta = normalize_theta(theta)
        basis = [self.basis_vector(i) for i in range(self.dim)]
        a = tuple(a)
        if theta == "left":
            gens = [self.multiply(b, a) for b in basis]
        elif theta == "right":
            gens = [self.multiply(a, b) for b in basis]
        elif theta == "pre":
            gens = [self.multiply(b, a) for b in basis]
            gens += [self.multiply(a, b) for b in basis]
        else:
            gens = [self.multiply(self.multiply(b, a), c)
                    for b in basis for c in basis]
        return Subspace(self.field, self.dim, gens)

    def radical_of_subspace(self, j: Subspace, cap: int = DEFAULT_ELEMENT_CAP) -> tuple:
        """All a whose whole power cycle lies in J (tail membership irrelevant)."""
        if j.ambient_dim != self.dim or j.field != self.field:
            raise ValueError("subspace does not live in this algebra")
        out = []
        for a in self.elements(cap):
            if self.power_trajectory(a).cycle_in(j):
                out.append(a)
        return tuple(out)

    def __repr__(self):
        return f"Algebra({self.name})"


# -- builders --------------------------------------------------------------------


def _as_field(p_or_field) -> Field:
    if isinstance(p_or_field, Field):
        return p_or_field
    return GF(p_or_field)


def matrix_algebra(n: int, p_or_field) -> Algebra:
    """n x n matrices; basis is the matrix units in row-major order."""
    field = _as_field(p_or_field)
    dim = n * n
    one, zero = field.one, field.zero

    def unit_index(r, c):
        return r * n + c

    structure = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        structure[unit_index(i, j)][unit_index(k, l)][unit_index(i, l)] = one
    unit = [zero] * dim
    for i in range(n):
        unit[unit_index(i, i)] = one
    return Algebra(field, structure, unit, name=f"M_{n}({field!r})")


def product_algebra(length: int, p_or_field) -> Algebra:
    """K^length with component-wise product."""
    field = _as_field(p_or_field)
    one, zero = field.one, field.zero
    structure = [[[one if i == j and k == i else zero for k in range(length)]
                  for j in range(length)] for i in range(length)]
    unit = [one] * length
    return Algebra(field, structure, unit, name=f"{field!r}^{length} (componentwise)")


def truncated_poly(k: int, p_or_field) -> Algebra:
    """K[x]/(x^k); basis 1, x, ..., x^(k-1)."""
    field = _as_field(p_or_field)
    one, zero = field.one, field.zero
    structure = [[[one if i + j == m else zero for m in range(k)]
                  for j in range(k)] for i in range(k)]
    unit = [one] + [zero] * (k - 1)
    return Algebra(field, structure, unit, name=f"{field!r}[x]/(x^{k})")


def upper_triangular(n: int, p_or_field) -> Algebra:
    """Upper triangular n x n matrices; basis E_ij for i <= j."""
    field = _as_field(p_or_field)
    one, zero = field.one, field.zero
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    pos_index = {pos: idx for idx, pos in enumerate(positions)}
    dim = len(positions)
    structure = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), a in pos_index.items():
        for (k, l), b in pos_index.items():
            if j == k:
                structure[a][b][pos_index[(i, l)]] = one
    unit = [zero] * dim
    for i in range(n):
        unit[pos_index[(i, i)]] = one
    return Algebra(field, structure, unit, name=f"UT_{n}({field!r})")


def field_algebra(p_or_field) -> Algebra:
    """The base field as a one-dimensional algebra."""
    field = _as_field(p_or_field)
    return Algebra(field, [[[field.one]]], [field.one], name=f"{field!r} (1-dim)")


def opposite(a: Algebra) -> Algebra:
    structure = tuple(tuple(a.structure[j][i] for j in range(a.dim)) for i in range(a.dim))
    return Algebra(a.field, structure, a.unit, name=f"op({a.name})", check=False)


def is_two_sided_ideal(a: Algebra, i_space: Subspace) -> bool:
    basis = [a.basis_vector(k) for k in range(a.dim)]
    for v in i_space.basis:
        for b in basis:
            if not i_space.contains(a.multiply(b, v)):
                return False
            if not i_space.contains(a.multiply(v, b)):
                return False
    return True


def quotient_algebra(a: Algebra, i_space: Subspace):
    """Quotient by a two-sided ideal; returns (quotient, projection matrix).

    Quotient coordinates are the non-pivot coordinates of the ideal's
    canonical basis, so the projection is a plain matrix.
    """
    from .linalg import mat_vec, residual_matrix

    if i_space.ambient_dim != a.dim or i_space.field != a.field:
        raise ValueError("subspace does not live in this algebra")
    if not is_two_sided_ideal(a, i_space):
        raise ValueError("quotient requires a two-sided ideal")
    field = a.field
    proj = residual_matrix(i_space)
    pivot_set = set(i_space.pivots)
    free_cols = [c for c in range(a.dim) if c not in pivot_set]
    qdim = len(free_cols)

    def project(v):
        return mat_vec(field, proj, v)

    def section(coord_idx):
        return a.basis_vector(free_cols[coord_idx])

    structure = [[project(a.multiply(section(i), section(j)))
                  for j in range(qdim)] for i in range(qdim)]
    unit = project(a.unit)
    quot = Algebra(field, structure, unit, name=f"{a.name}/(ideal dim {i_space.dim})")
    return quot, proj
