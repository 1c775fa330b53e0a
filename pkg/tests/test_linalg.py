from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mathieuspaces.fields import GF, QQ
from mathieuspaces.linalg import (
    EnumerationCapExceeded,
    Subspace,
    enumerate_subspaces,
    enumerate_vectors,
    gaussian_binomial,
    preimage_subspace,
    rref,
    solve_right_kernel,
    subspace_contains,
    subspace_count,
    subspace_intersect,
    subspace_sum,
)

F2, F3 = GF(2), GF(3)


def test_rref_identity_case():
    s, rank = rref(F2, [(1, 0), (0, 1)])
    assert rank == 2
    assert s.basis == ((1, 0), (0, 1))


def test_rref_zero_case():
    s, rank = rref(F2, [(0, 0), (0, 0)])
    assert rank == 0
    assert s.basis == ()


def test_rref_dependent_rows():
    # hand row-reduction: both rows are (1,1), so rank 1 with basis (1,1)
    s, rank = rref(F2, [(1, 1), (1, 1)])
    assert rank == 1
    assert s.basis == ((1, 1),)


def test_rref_rational():
    s, rank = rref(QQ, [(Fraction(2), Fraction(4)), (Fraction(1), Fraction(3))])
    assert rank == 2
    assert s.basis == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def test_kernel_identity_is_zero():
    k = solve_right_kernel(F2, [(1, 0), (0, 1)], 2)
    assert k.dim == 0


def test_kernel_zero_matrix_is_full():
    k = solve_right_kernel(F2, [(0, 0), (0, 0)], 2)
    assert k.dim == 2


def test_kernel_single_relation_mod_three():
    # x + y = 0 mod 3 has solution line spanned by (1, 2)
    k = solve_right_kernel(F3, [(1, 1)], 2)
    assert k.basis == ((1, 2),)


def test_sum_with_zero_is_identity():
    u = Subspace(F2, 2, [(1, 0)])
    z = Subspace.zero(F2, 2)
    assert subspace_sum(u, z) == u


def test_intersection_of_axes_is_zero():
    u = Subspace(F2, 2, [(1, 0)])
    v = Subspace(F2, 2, [(0, 1)])
    assert subspace_intersect(u, v).dim == 0


def test_sum_of_two_lines_spans_plane():
    # stacked basis has rank 2
    u = Subspace(F2, 2, [(1, 0)])
    v = Subspace(F2, 2, [(1, 1)])
    assert subspace_sum(u, v).is_full()


def test_ambient_mismatch_rejected():
    with pytest.raises(ValueError):
        subspace_sum(Subspace(F2, 2, [(1, 0)]), Subspace(F2, 3, [(1, 0, 0)]))


def _random_subspace_strategy(p, dim, max_rows):
    scalars = st.integers(min_value=0, max_value=p - 1)
    row = st.tuples(*[scalars] * dim)
    return st.lists(row, min_size=0, max_size=max_rows).map(
        lambda rows: Subspace(GF(p), dim, rows))


@settings(max_examples=60, deadline=None)
@given(_random_subspace_strategy(3, 4, 4))
def test_rref_is_idempotent(s):
    again = Subspace(s.field, s.ambient_dim, s.basis)
    assert again == s
    assert again.basis == s.basis


@settings(max_examples=60, deadline=None)
@given(_random_subspace_strategy(2, 4, 3), _random_subspace_strategy(2, 4, 3))
def test_dimension_formula(u, v):
    total = subspace_sum(u, v)
    meet = subspace_intersect(u, v)
    assert total.dim + meet.dim == u.dim + v.dim
    assert total.contains_subspace(u)
    assert u.contains_subspace(meet)


@settings(max_examples=40, deadline=None)
@given(_random_subspace_strategy(3, 3, 3), _random_subspace_strategy(3, 3, 3))
def test_equality_agrees_with_mutual_membership(u, v):
    mutual = (all(subspace_contains(u, row) for row in v.basis)
              and all(subspace_contains(v, row) for row in u.basis))
    assert (u == v) == mutual


def test_enumerate_vectors_dim1():
    assert list(enumerate_vectors(F2, 1)) == [(0,), (1,)]


def test_enumerate_vectors_dim2_count():
    assert len(list(enumerate_vectors(F2, 2))) == 4


def test_enumerate_vectors_lexicographic_endpoints():
    vs = list(enumerate_vectors(F3, 3))
    assert len(vs) == 27
    assert vs[0] == (0, 0, 0)
    assert vs[-1] == (2, 2, 2)
    assert vs == sorted(vs)


def test_enumeration_cap_is_explicit():
    with pytest.raises(EnumerationCapExceeded) as err:
        list(enumerate_vectors(F2, 30, cap=1000))
    assert err.value.count == 2 ** 30


def test_subspace_counts_match_gaussian_binomials():
    # 1 + 3 + 1 lines/planes in F_2^2; 1 + 7 + 7 + 1 in F_2^3
    assert subspace_count(2, 2) == 5
    assert subspace_count(1, 3) == 2
    assert subspace_count(3, 2) == 16
    assert gaussian_binomial(4, 2, 3) == 130


@pytest.mark.parametrize("dim,p", [(2, 2), (3, 2), (2, 3)])
def test_enumerate_subspaces_distinct_and_complete(dim, p):
    fld = GF(p)
    seen = list(enumerate_subspaces(fld, dim))
    assert len(seen) == subspace_count(dim, p)
    assert len({s.basis for s in seen}) == len(seen)
    for s in seen:
        # canonical: re-normalizing must not change the basis
        assert Subspace(fld, dim, s.basis).basis == s.basis


def test_preimage_subspace():
    # map (x, y) -> (x + y) into the zero subspace of F_2^1
    target = Subspace.zero(F2, 1)
    pre = preimage_subspace(F2, [(1, 1)], target, 2)
    assert pre.basis == ((1, 1),)
    full = preimage_subspace(F2, [(1, 1)], Subspace.full(F2, 1), 2)
    assert full.is_full()
