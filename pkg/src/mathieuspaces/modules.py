"""Left modules over a structure-constant algebra.

A module is a list of action matrices, one per algebra basis element.  The
colon space (N:u) = {a : a.u in N} is the bridge from module subspaces to
algebra subspaces and is computed as a kernel.
"""

from __future__ import annotations

from typing import Sequence

from .algebras import Algebra, opposite
from .fields import Field
from .linalg import (
    Subspace,
    identity_matrix,
    image_subspace,
    mat_mul,
    mat_vec,
    preimage_subspace,
    residual_matrix,
    solve_right_kernel,
    subspace_intersect,
    vec_add,
    vec_scale,
    zero_vector,
)


class ModuleAxiomError(ValueError):
    """Action matrices violate a module axiom; the message names it."""


class ModuleSpace:
    def __init__(self, algebra: Algebra, actions: Sequence, name: str | None = None,
                 check: bool = True):
        field = algebra.field
        self.algebra = algebra
        self.field = field
        self.actions = tuple(
            tuple(tuple(field.check_scalar(x) for x in row) for row in m)
            for m in actions
        )
        if len(self.actions) != algebra.dim:
            raise ModuleAxiomError(
                f"{len(self.actions)} action matrices for an algebra of dimension {algebra.dim}")
        self.dim = len(self.actions[0]) if self.actions else 0
        for i, m in enumerate(self.actions):
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ModuleAxiomError(f"action matrix {i} is not {self.dim} x {self.dim}")
        self.name = name or f"module(dim {self.dim} over {algebra.name})"
        self._colon_cache: dict = {}
        if check:
            self._validate()

    def _validate(self):
        field = self.field
        ident = identity_matrix(field, self.dim)
        unit_action = self.action_matrix(self.algebra.unit)
        if unit_action != ident:
            raise ModuleAxiomError("unit does not act as the identity")
        for i in range(self.algebra.dim):
            for j in range(self.algebra.dim):
                composed = mat_mul(field, self.actions[i], self.actions[j])
                expected = self.action_matrix(self.algebra.structure[i][j])
                if composed != expected:
                    raise ModuleAxiomError(
                        f"action is not multiplicative at basis pair ({i},{j})")

    # -- acting -----------------------------------------------------------------

    def action_matrix(self, a: Sequence) -> tuple:
        """Matrix of the action of an algebra element."""
        field = self.field
        add, mul = field.add, field.mul
        rows = [[field.zero] * self.dim for _ in range(self.dim)]
        for i, c in enumerate(a):
            if not c:
                continue
            m = self.actions[i]
            for r in range(self.dim):
                mr = m[r]
                row = rows[r]
                for s in range(self.dim):
                    if mr[s]:
                        row[s] = add(row[s], mul(c, mr[s]))
        return tuple(tuple(r) for r in rows)

    def act(self, a: Sequence, u: Sequence) -> tuple:
        if len(a) != self.algebra.dim or len(u) != self.dim:
            raise ValueError("dimension mismatch in module action")
        field = self.field
        out = zero_vector(field, self.dim)
        for i, c in enumerate(a):
            if not c:
                continue
            out = vec_add(field, out, vec_scale(field, c, mat_vec(field, self.actions[i], u)))
        return out

    # -- colon spaces and friends ---------------------------------------------------

    def colon(self, n_space: Subspace, u: Sequence) -> Subspace:
        """(N:u) = {a in A : a.u in N}, canonical subspace of the algebra."""
        self._check_subspace(n_space)
        field = self.field
        resid = residual_matrix(n_space)
        if not resid:
            return Subspace.full(field, self.algebra.dim)
        # column i of the map a -> a.u is e_i.u
        images = [mat_vec(field, self.actions[i], u) for i in range(self.algebra.dim)]
        rows = []
        for rrow in resid:
            rows.append(tuple(
                _dot(field, rrow, img) for img in images
            ))
        return solve_right_kernel(field, rows, self.algebra.dim)

    def colon_cached(self, n_space: Subspace, u: Sequence) -> Subspace:
        key = (n_space.basis, tuple(u))
        cache = self._colon_cache
        hit = cache.get(key)
        if hit is None:
            hit = self.colon(n_space, u)
            if len(cache) > 200000:
                cache.clear()
            cache[key] = hit
        return hit

    def inverse_image(self, a: Sequence, n_space: Subspace) -> Subspace:
        """{v in M : a.v in N}."""
        self._check_subspace(n_space)
        return preimage_subspace(self.field, self.action_matrix(a), n_space, self.dim)

    def is_submodule(self, v_space: Subspace) -> bool:
        self._check_subspace(v_space)
        for b in v_space.basis:
            for m in self.actions:
                if not v_space.contains(mat_vec(self.field, m, b)):
                    return False
        return True

    def max_submodule(self, n_space: Subspace) -> Subspace:
        """Largest action-invariant subspace inside N, by fixpoint descent."""
        self._check_subspace(n_space)
        current = n_space
        while True:
            nxt = current
            for m in self.actions:
                nxt = subspace_intersect(
                    nxt, preimage_subspace(self.field, m, current, self.dim))
            if nxt == current:
                return current
            current = nxt

    # -- quotients --------------------------------------------------------------

    def quotient_module(self, v_space: Subspace):
        """Quotient by a submodule; returns (quotient, projection hom)."""
        self._check_subspace(v_space)
        if not self.is_submodule(v_space):
            raise ValueError("quotient requires an action-invariant subspace")
        field = self.field
        proj = residual_matrix(v_space)
        pivot_set = set(v_space.pivots)
        free_cols = [c for c in range(self.dim) if c not in pivot_set]
        qdim = len(free_cols)
        actions = []
        for m in self.actions:
            qm = [[field.zero] * qdim for _ in range(qdim)]
            for col, src in enumerate(free_cols):
                img = mat_vec(field, proj, mat_vec(field, m, _unit_vec(field, self.dim, src)))
                for row in range(qdim):
                    qm[row][col] = img[row]
            actions.append(tuple(tuple(r) for r in qm))
        quot = ModuleSpace(self.algebra, actions,
                           name=f"{self.name}/(submodule dim {v_space.dim})")
        return quot, ModuleHom(self, quot, proj)

    def _check_subspace(self, s: Subspace):
        if s.ambient_dim != self.dim or s.field != self.field:
            raise ValueError("subspace does not live in this module")

    def __repr__(self):
        return f"ModuleSpace({self.name})"


def _unit_vec(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if k == i else field.zero for k in range(n))


def _dot(field: Field, u, v):
    acc = field.zero
    add, mul = field.add, field.mul
    for x, y in zip(u, v):
        if x and y:
            acc = add(acc, mul(x, y))
    return acc


class ModuleHom:
    """A linear map between modules over the same algebra that commutes
    with every action matrix."""

    def __init__(self, source: ModuleSpace, target: ModuleSpace, matrix, check: bool = True):
        if source.algebra is not target.algebra and source.algebra.structure != target.algebra.structure:
            raise ValueError("module homomorphisms need a common algebra")
        field = source.field
        self.source = source
        self.target = target
        self.matrix = tuple(tuple(field.check_scalar(x) for x in row) for row in matrix)
        if len(self.matrix) != target.dim or any(len(r) != source.dim for r in self.matrix):
            raise ValueError(f"hom matrix must be {target.dim} x {source.dim}")
        if check:
            for i in range(source.algebra.dim):
                lhs = mat_mul(field, self.matrix, source.actions[i])
                rhs = mat_mul(field, target.actions[i], self.matrix)
                if lhs != rhs:
                    raise ModuleAxiomError(
                        f"map does not commute with the action of basis element {i}")

    def apply(self, u: Sequence) -> tuple:
        return mat_vec(self.source.field, self.matrix, u)

    def pullback_subspace(self, h_space: Subspace) -> Subspace:
        """Preimage of a target subspace."""
        if h_space.ambient_dim != self.target.dim:
            raise ValueError("subspace does not live in the target module")
        return preimage_subspace(self.source.field, self.matrix, h_space, self.source.dim)

    def image_of_subspace(self, s: Subspace) -> Subspace:
        return image_subspace(self.source.field, self.matrix, s)

    @classmethod
    def identity(cls, m: ModuleSpace) -> "ModuleHom":
        return cls(m, m, identity_matrix(m.field, m.dim), check=False)


def natural_module(algebra: Algebra) -> ModuleSpace:
    """The algebra as a left module over itself."""
    field = algebra.field
    actions = []
    for i in range(algebra.dim):
        cols = [algebra.structure[i][j] for j in range(algebra.dim)]
        actions.append(tuple(zip(*cols)))
    return ModuleSpace(algebra, actions, name=f"{algebra.name} as module", check=False)


def right_natural_module(algebra: Algebra) -> ModuleSpace:
    """Right multiplication on the algebra, packaged over the opposite algebra."""
    return natural_module(opposite(algebra))


def column_module(algebra: Algebra, n: int) -> ModuleSpace:
    """K^n under a matrix algebra built with matrix_algebra(n, p)."""
    field = algebra.field
    if algebra.dim != n * n:
        raise ValueError("column module needs the full n x n matrix algebra")
    actions = []
    for i in range(n):
        for j in range(n):
            m = [[field.zero] * n for _ in range(n)]
            m[i][j] = field.one
            actions.append(tuple(tuple(r) for r in m))
    return ModuleSpace(algebra, actions, name=f"{field!r}^{n} (columns)")


def module_hom_basis(source: ModuleSpace, target: ModuleSpace) -> list:
    """Basis of the space of module homomorphisms, as matrices."""
    field = source.field
    rows = []
    s, t = source.dim, target.dim
    # unknowns: X[r][c] flattened row-major; constraints: X A_i - B_i X = 0
    for i in range(source.algebra.dim):
        a_i = source.actions[i]
        b_i = target.actions[i]
        for r in range(t):
            for c in range(s):
                row = [field.zero] * (t * s)
                for k in range(s):
                    row[r * s + k] = field.add(row[r * s + k], a_i[k][c])
                for k in range(t):
                    row[k * s + c] = field.sub(row[k * s + c], b_i[r][k])
                rows.append(tuple(row))
    ker = solve_right_kernel(field, rows, t * s)
    mats = []
    for flat in ker.basis:
        mats.append(tuple(tuple(flat[r * s + c] for c in range(s)) for r in range(t)))
    return mats
