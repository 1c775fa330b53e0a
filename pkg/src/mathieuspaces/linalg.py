"""Dense exact linear algebra and the canonical subspace representation.

Vectors are tuples of scalars, matrices are tuples of row tuples.  Every
subspace is stored as its reduced row-echelon basis, so set equality is
structural equality and membership is a single reduction pass.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .fields import Field, same_field

DEFAULT_ELEMENT_CAP = 1 << 20


class EnumerationCapExceeded(ValueError):
    """An exhaustive scan would visit more elements than the configured cap."""

    def __init__(self, count: int, cap: int, what: str = "elements"):
        self.count = count
        self.cap = cap
        super().__init__(f"enumeration of {count} {what} exceeds cap {cap}")


def zero_vector(field: Field, n: int) -> tuple:
    return (field.zero,) * n


def vec_add(field: Field, u: Sequence, v: Sequence) -> tuple:
    add = field.add
    return tuple(add(a, b) for a, b in zip(u, v))


def vec_scale(field: Field, c, u: Sequence) -> tuple:
    mul = field.mul
    return tuple(mul(c, a) for a in u)


def mat_vec(field: Field, rows: Sequence[Sequence], v: Sequence) -> tuple:
    add, mul, zero = field.add, field.mul, field.zero
    out = []
    for row in rows:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return tuple(out)


def mat_mul(field: Field, a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    add, mul, zero = field.add, field.mul, field.zero
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        out.append(tuple(
            _dot(add, mul, zero, row, col) for col in bt
        ))
    return tuple(out)


def _dot(add, mul, zero, u, v):
    acc = zero
    for x, y in zip(u, v):
        if x and y:
            acc = add(acc, mul(x, y))
    return acc


def identity_matrix(field: Field, n: int) -> tuple:
    one, zero = field.one, field.zero
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def rref_rows(field: Field, rows: Sequence[Sequence]):
    """Gauss-Jordan to canonical reduced row-echelon form.

    Returns (canonical nonzero rows, pivot column list).
    """
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    sub, mul, div = field.sub, field.mul, field.div
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = field.inv(work[r][c])
        if inv != field.one:
            work[r] = [mul(inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [sub(x, mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [tuple(row) for row in work[:r]], pivots


class Subspace:
    """A linear subspace of coordinate space in canonical RREF basis form."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, rows: Sequence[Sequence] = ()):
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError(
                    f"row of length {len(row)} in ambient dimension {ambient_dim}")
        norm = [tuple(field.check_scalar(x) for x in row) for row in rows]
        basis, pivots = rref_rows(field, norm)
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, identity_matrix(field, n))

    @classmethod
    def _from_canonical(cls, field, n, basis, pivots) -> "Subspace":
        s = object.__new__(cls)
        s.field = field
        s.ambient_dim = n
        s.basis = tuple(basis)
        s.pivots = tuple(pivots)
        return s

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def reduce(self, v: Sequence) -> tuple:
        """Residual of v after subtracting its projection on the basis."""
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        sub, mul = self.field.sub, self.field.mul
        w = list(v)
        for row, piv in zip(self.basis, self.pivots):
            f = w[piv]
            if f:
                w = [sub(x, mul(f, y)) for x, y in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def elements(self) -> Iterator[tuple]:
        """All vectors of the subspace (finite fields only)."""
        field = self.field
        if field.is_rational and self.basis:
            raise ValueError("cannot enumerate a rational subspace")
        if not self.basis:
            yield zero_vector(field, self.ambient_dim)
            return
        for coeffs in itertools.product(range(field.p), repeat=len(self.basis)):
            v = zero_vector(field, self.ambient_dim)
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = vec_add(field, v, vec_scale(field, c, row))
            yield v

    def to_json(self):
        f = self.field
        return {
            "ambient": self.ambient_dim,
            "basis": [[f.scalar_to_json(x) for x in row] for row in self.basis],
        }

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.field!r}^{self.ambient_dim})"


def rref(field: Field, rows: Sequence[Sequence]):
    """Row space of a matrix in canonical form, plus its rank."""
    if not rows:
        raise ValueError("rref of an empty matrix; pass Subspace.zero instead")
    width = len(rows[0])
    s = Subspace(field, width, rows)
    return s, s.dim


def solve_right_kernel(field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Canonical basis of {v : rows . v = 0}."""
    if ncols is None:
        if not rows:
            raise ValueError("kernel of an empty matrix needs an explicit width")
        ncols = len(rows[0])
    if not rows:
        return Subspace.full(field, ncols)
    reduced, pivots = rref_rows(field, rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    neg = field.neg
    gens = []
    for fc in free_cols:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, piv in zip(reduced, pivots):
            v[piv] = neg(row[fc])
        gens.append(v)
    return Subspace(field, ncols, gens)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    same_field(u.field, v.field)
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace(u.field, u.ambient_dim, list(u.basis) + list(v.basis))


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked coefficient system."""
    same_field(u.field, v.field)
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    field = u.field
    if u.is_full():
        return v
    if v.is_full():
        return u
    if not u.basis or not v.basis:
        return Subspace.zero(field, u.ambient_dim)
    # columns: u basis then negated v basis; kernel rows give matching combos
    k, l = len(u.basis), len(v.basis)
    stacked = []
    for c in range(u.ambient_dim):
        row = [u.basis[i][c] for i in range(k)]
        row += [field.neg(v.basis[j][c]) for j in range(l)]
        stacked.append(row)
    ker = solve_right_kernel(field, stacked, k + l)
    gens = []
    for coeff in ker.basis:
        w = zero_vector(field, u.ambient_dim)
        for c, row in zip(coeff[:k], u.basis):
            if c:
                w = vec_add(field, w, vec_scale(field, c, row))
        gens.append(w)
    return Subspace(field, u.ambient_dim, gens)


def subspace_contains(u: Subspace, v: Sequence) -> bool:
    return u.contains(v)


def residual_matrix(n_space: Subspace):
    """Matrix of the map sending v to the non-pivot coordinates of v mod N.

    Its kernel is exactly N; composing it with linear maps turns
    "image lands in N" conditions into plain kernels.
    """
    field = n_space.field
    n = n_space.ambient_dim
    pivot_set = set(n_space.pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    rows = []
    neg = field.neg
    for fc in free_cols:
        # residual coordinate fc of v = v[fc] - sum_i basis_i[fc] * v[pivot_i]
        row = [field.zero] * n
        row[fc] = field.one
        for brow, piv in zip(n_space.basis, n_space.pivots):
            row[piv] = neg(brow[fc])
        rows.append(tuple(row))
    return tuple(rows)


def preimage_subspace(field: Field, matrix_rows: Sequence[Sequence], target: Subspace,
                      source_dim: int | None = None) -> Subspace:
    """{v : M v in target} for a linear map given by its matrix."""
    if source_dim is None:
        source_dim = len(matrix_rows[0]) if matrix_rows else target.ambient_dim
    resid = residual_matrix(target)
    if not resid:
        return Subspace.full(field, source_dim)
    composed = mat_mul(field, resid, matrix_rows)
    return solve_right_kernel(field, composed, source_dim)


def image_subspace(field: Field, matrix_rows: Sequence[Sequence], source: Subspace) -> Subspace:
    """Image of a subspace under a linear map."""
    target_dim = len(matrix_rows)
    gens = [mat_vec(field, matrix_rows, b) for b in source.basis]
    return Subspace(field, target_dim, gens)


# -- exhaustive enumeration ----------------------------------------------------


def enumerate_vectors(field: Field, dim: int, cap: int = DEFAULT_ELEMENT_CAP) -> Iterator[tuple]:
    """All p^dim coordinate vectors in lexicographic order."""
    if field.is_rational:
        raise ValueError("cannot enumerate vectors over the rationals")
    count = field.p ** dim
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    for digits in itertools.product(range(field.p), repeat=dim):
        yield digits


def vector_count(field: Field, dim: int) -> int:
    if field.is_rational:
        raise ValueError("infinite")
    return field.p ** dim


def index_to_vector(field: Field, dim: int, idx: int) -> tuple:
    p = field.p
    digits = [0] * dim
    for k in range(dim - 1, -1, -1):
        idx, digits[k] = divmod(idx, p)
    return tuple(digits)


def vector_to_index(field: Field, v: Sequence) -> int:
    p = field.p
    idx = 0
    for d in v:
        idx = idx * p + d
    return idx


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def subspace_count(n: int, p: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def enumerate_subspaces(field: Field, dim: int, cap: int = DEFAULT_ELEMENT_CAP) -> Iterator[Subspace]:
    """Every subspace of F_p^dim exactly once, by RREF pivot profile."""
    if field.is_rational:
        raise ValueError("cannot enumerate subspaces over the rationals")
    total = subspace_count(dim, field.p)
    if total > cap:
        raise EnumerationCapExceeded(total, cap, what="subspaces")
    p = field.p
    yield Subspace.zero(field, dim)
    for k in range(1, dim + 1):
        for pivots in itertools.combinations(range(dim), k):
            pivot_set = set(pivots)
            # free slots: (row, col) with col past that row's pivot, not a pivot col
            free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, dim)
                    if c not in pivot_set]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * dim for _ in range(k)]
                for r in range(k):
                    rows[r][pivots[r]] = 1
                for (r, c), val in zip(free, values):
                    rows[r][c] = val
                yield Subspace._from_canonical(
                    field, dim, [tuple(r) for r in rows], pivots)
