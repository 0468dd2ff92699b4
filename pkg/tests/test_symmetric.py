import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from haarwell.errors import CapExceededError, ParseError, SizeMismatchError
from haarwell.exactmath import N, IntPolynomial, RationalFunction
from haarwell.symmetric import (
    CycleType,
    GroupAlgebraElement,
    Permutation,
    YoungDiagram,
    build_G,
    centralizer_order,
    character,
    compose,
    content_product,
    count_monotone_factorizations,
    cycle_type,
    dimension_sn,
    dimension_un,
    enumerate_group,
    jm_element,
    jm_product,
    partitions,
)


@st.composite
def perms(draw, min_k=1, max_k=7):
    k = draw(st.integers(min_k, max_k))
    return Permutation(tuple(draw(st.permutations(range(1, k + 1)))))


@st.composite
def perm_pairs(draw, max_k=7):
    k = draw(st.integers(1, max_k))
    a = Permutation(tuple(draw(st.permutations(range(1, k + 1)))))
    b = Permutation(tuple(draw(st.permutations(range(1, k + 1)))))
    return a, b


def P(text, k):
    return Permutation.parse(text, k)


# --- permutations ------------------------------------------------------------


def test_compose_examples():
    assert compose(P("(1 2)", 2), P("(1 2)", 2)).is_identity()
    s = P("(1 3)(2 4)", 4)
    assert compose(s, Permutation.identity(4)) == s


def test_compose_follows_pointwise_rule():
    # (a o b)(x) = a(b(x)): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
    r = P("(1 2)", 3) * P("(2 3)", 3)
    assert (r(1), r(2), r(3)) == (2, 3, 1)
    assert r == P("(1 2 3)", 3)


@given(perms())
def test_inverse(s):
    assert (s * s.inverse()).is_identity()
    assert (s.inverse() * s).is_identity()


@given(perms(), perms())
def test_compose_pointwise(a, b):
    if a.k != b.k:
        with pytest.raises(SizeMismatchError):
            compose(a, b)
        return
    c = a * b
    assert all(c(x) == a(b(x)) for x in range(1, a.k + 1))


@given(perms())
def test_cycle_notation_round_trip(s):
    assert Permutation.parse(str(s), s.k) == s


def test_parse_grammar():
    assert P("e", 3).is_identity()
    assert P("()", 3).is_identity()
    assert P(" ( 1 3 2 ) (4 5) ", 5) == P("(1,3,2)(4,5)", 5)
    for bad in ["(1 2", "(1 a)", "(1 2)(2 3)", "(1 4)"]:
        with pytest.raises(ParseError):
            P(bad, 3)


def test_cycle_type_examples():
    t = cycle_type(Permutation.identity(4))
    assert t == (1, 1, 1, 1) and t.ncycles == 4 and t.length == 0
    t = cycle_type(P("(1 2 3)", 3))
    assert t == (3,) and t.ncycles == 1 and t.length == 2
    t = cycle_type(P("(1 2)(3 4)", 5))
    assert t == (2, 2, 1) and t.ncycles == 3 and t.length == 2


@given(perms())
def test_cycle_type_sums_to_k(s):
    t = cycle_type(s)
    assert sum(t) == s.k
    assert list(t) == sorted(t, reverse=True)
    assert cycle_type(t.representative()) == t


def test_enumerate_group():
    assert list(enumerate_group(1)) == [Permutation.identity(1)]
    g3 = list(enumerate_group(3))
    assert len(g3) == 6 and len(set(g3)) == 6
    g4 = list(enumerate_group(4))
    assert len({cycle_type(s) for s in g4}) == 5
    assert [s.images for s in g4] == sorted(s.images for s in g4)
    with pytest.raises(CapExceededError):
        list(enumerate_group(9))


@pytest.mark.parametrize("k", range(1, 7))
def test_class_sizes(k):
    counts = {}
    for s in enumerate_group(k):
        counts[cycle_type(s)] = counts.get(cycle_type(s), 0) + 1
    assert counts == {CycleType(p): CycleType(p).class_size() for p in partitions(k)}


def test_partition_count():
    assert [len(list(partitions(k))) for k in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


# --- characters --------------------------------------------------------------


def test_character_examples():
    for mu in partitions(5):
        assert character((5,), mu) == 1
    assert character((1, 1), (2,)) == -1
    assert character((2, 1), (3,)) == -1
    with pytest.raises(SizeMismatchError):
        character((2, 1), (2,))


def _standard_rep_trace(sigma):
    # permutation representation minus the trivial one
    return sum(1 for x in range(1, sigma.k + 1) if sigma(x) == x) - 1


@pytest.mark.parametrize("k", range(2, 7))
def test_standard_character_matches_fixed_points(k):
    lam = (k - 1, 1)
    for s in enumerate_group(k):
        assert character(lam, cycle_type(s)) == _standard_rep_trace(s)


@pytest.mark.parametrize("k", range(1, 7))
def test_sign_character(k):
    lam = (1,) * k
    for p in partitions(k):
        assert character(lam, p) == (-1) ** CycleType(p).length


@pytest.mark.parametrize("k", range(1, 7))
def test_character_orthogonality(k):
    parts = list(partitions(k))
    for a in parts:
        for b in parts:
            total = sum(CycleType(mu).class_size() * character(a, mu) * character(b, mu) for mu in parts)
            assert total == (math.factorial(k) if a == b else 0)


@pytest.mark.parametrize("k", range(1, 7))
def test_dimension_is_character_at_identity(k):
    for lam in partitions(k):
        assert dimension_sn(lam) == character(lam, (1,) * k)
    assert sum(dimension_sn(lam) ** 2 for lam in partitions(k)) == math.factorial(k)


def test_dimension_examples():
    assert dimension_sn((4,)) == 1
    assert dimension_sn((2, 1)) == 2
    assert YoungDiagram((2, 1)).hooks() == [3, 1, 1]
    assert dimension_un((1,)) == N
    assert dimension_un((2,)) == N * (N + 1) / 2
    assert dimension_un((1, 1)) == N * (N - 1) / 2


@pytest.mark.parametrize("k", range(1, 6))
def test_dimension_un_integrality(k):
    for lam in partitions(k):
        d = dimension_un(lam)
        for n in range(k, k + 4):
            v = d(n)
            assert v.denominator == 1 and v > 0
        for n in range(0, len(lam)):
            assert d(n) == 0


@pytest.mark.parametrize("k", range(1, 7))
def test_content_product_positive(k):
    for lam in partitions(k):
        for n in range(k, k + 3):
            assert content_product(lam, n) > 0


def test_conjugate_and_centralizer():
    assert YoungDiagram((3, 1)).conjugate() == (2, 1, 1)
    assert centralizer_order((2, 2, 1)) == 8


# --- group algebra -----------------------------------------------------------


def test_build_G_examples():
    assert build_G(1).coeffs == {Permutation.identity(1): N}
    g2 = build_G(2)
    assert g2[Permutation.identity(2)] == N ** 2 and g2[P("(1 2)", 2)] == N
    g3 = build_G(3)
    assert sum(1 for c in g3.coeffs.values() if c == N ** 2) == 3
    assert sum(1 for c in g3.coeffs.values() if c == N) == 2


@given(perm_pairs(max_k=4), perm_pairs(max_k=4))
def test_basis_multiplication(ab, cd):
    a, b = ab
    x = GroupAlgebraElement.basis(a) * GroupAlgebraElement.basis(b)
    assert x == GroupAlgebraElement.basis(a * b)


def test_group_algebra_associativity():
    x = build_G(3) + GroupAlgebraElement.basis(P("(1 2)", 3), 2)
    y = jm_element(1, 3) + N
    z = GroupAlgebraElement.basis(P("(1 2 3)", 3), RationalFunction(1, IntPolynomial((1, 1))))
    assert (x * y) * z == x * (y * z)


def test_jm_elements():
    assert jm_element(3, 3).is_zero()
    assert set(jm_element(1, 3).coeffs) == {P("(1 2)", 3), P("(1 3)", 3)}
    with pytest.raises(ValueError):
        jm_element(0, 3)


@pytest.mark.parametrize("k", range(1, 6))
def test_jm_product_factorizes_G(k):
    assert jm_product(k) == build_G(k)


@pytest.mark.parametrize("k", range(2, 5))
def test_jm_product_without_scalar_factor_is_off_by_n(k):
    # (n + J_1)...(n + J_{k-1}) is G / n with J_i = sum_{j > i} (i j)
    prod = GroupAlgebraElement.scalar(1, k)
    for i in range(1, k):
        prod = prod * (jm_element(i, k) + N)
    assert prod != build_G(k)
    assert prod * N == build_G(k)


# --- monotone factorizations -------------------------------------------------


def _brute_monotone(sigma, l):
    k = sigma.k
    trans = [(i, j) for j in range(2, k + 1) for i in range(1, j)]
    count = 0
    for word in itertools.product(trans, repeat=l):
        if any(word[p][1] > word[p + 1][1] for p in range(l - 1)):
            continue
        prod = Permutation.identity(k)
        for i, j in word:
            prod = prod * Permutation.transposition(i, j, k)
        count += prod == sigma
    return count


def test_monotone_examples():
    assert count_monotone_factorizations(P("(1 2)", 2), 1) == 1
    assert count_monotone_factorizations(Permutation.identity(2), 2) == 1
    assert count_monotone_factorizations(P("(1 2 3)", 3), 1) == 0
    assert count_monotone_factorizations(P("(1 2 3)", 3), 3) == 0
    with pytest.raises(CapExceededError):
        count_monotone_factorizations(Permutation.identity(2), 13)


@pytest.mark.parametrize("k,l", [(2, 3), (3, 4), (4, 4), (4, 5)])
def test_monotone_matches_brute_force(k, l):
    for s in enumerate_group(k):
        for length in range(l + 1):
            assert count_monotone_factorizations(s, length) == _brute_monotone(s, length)


@given(perms(max_k=6))
def test_monotone_minimal_length_positive(s):
    assert count_monotone_factorizations(s, s.length) > 0
    assert count_monotone_factorizations(s, s.length + 1) == 0


def test_monotone_transposition():
    for i, j in [(1, 2), (2, 4), (1, 5)]:
        assert count_monotone_factorizations(Permutation.transposition(i, j, 5), 1) == 1
