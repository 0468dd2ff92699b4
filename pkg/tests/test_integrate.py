import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from haarwell.errors import ParseError, PoleError
from haarwell.exactmath import N, RationalFunction
from haarwell.integrate import MomentQuery, integrate, parse_monomial, unbalanced_zero
from haarwell.weingarten import GroupKind


def I(text, group="unitary", n=None):
    return integrate(parse_monomial(text, group, n))


def word(factors):
    return " ".join(f"{'~' if c else ''}u[{r},{col}]" for r, col, c in factors)


# --- parsing -----------------------------------------------------------------


def test_parse():
    q = parse_monomial("u[1,2] ~u[3,4]", "U", 5)
    assert q.factors == ((1, 2, False), (3, 4, True))
    assert q.group is GroupKind.UNITARY and q.n == 5
    assert str(q) == "u[1,2] ~u[3,4]"
    assert parse_monomial("u[ 1 , 2 ]").factors == ((1, 2, False),)
    assert parse_monomial("u[1,1]~u[2,2]").factors == ((1, 1, False), (2, 2, True))
    for bad in ["u[0,1]", "u[1]", "v[1,1]", "u[1,1] x", "~~u[1,1]", "u[-1,2]", "u[1,1,1]"]:
        with pytest.raises(ParseError):
            parse_monomial(bad)
    assert parse_monomial("").factors == ()


# --- spec examples ------------------------------------------------------------


def test_unitary_examples():
    assert I("u[1,1] ~u[1,1]") == 1 / N
    assert I("u[1,1] u[1,1] ~u[1,1] ~u[1,1]") == 2 / (N * (N + 1))
    assert str(I("u[1,1] u[2,2] ~u[1,2] ~u[2,1]")) == "-1/(n^3-n)"


def test_orthogonal_examples():
    assert I("u[1,1] u[1,1]", "orthogonal") == 1 / N
    assert str(I("u[1,1] u[1,1] u[1,1] u[1,1]", "orthogonal")) == "3/(n^2+2n)"


def test_free_example():
    assert I("u[1,1] u[1,1] u[1,1] u[1,1]", "free") == 2 / (N * (N + 1))


def test_unbalanced():
    for text, expected in [("u[1,1]", True), ("u[1,1] ~u[2,2]", False), ("u[1,1] u[1,1] ~u[1,1]", True)]:
        q = parse_monomial(text)
        assert unbalanced_zero(q) is expected
    assert I("u[1,1]") == 0
    assert I("u[1,1]", n=7) == 0
    assert I("u[1,1] u[1,1] ~u[1,1]") == 0
    with pytest.raises(ValueError):
        unbalanced_zero(parse_monomial("u[1,1]", "orthogonal"))


def test_empty_monomial_is_one():
    assert I("") == 1
    assert I("", "orthogonal", 3) == 1


def test_numeric_mode_returns_fraction():
    v = I("u[1,1] u[2,2] ~u[1,2] ~u[2,1]", n=10)
    assert v == Fraction(-1, 990) and isinstance(v, Fraction)
    assert I("u[1,1] u[1,1] u[1,1] u[1,1]", "orthogonal", 10) == Fraction(1, 40)
    assert I("u[1,1] u[1,1] u[1,1] u[1,1]", "free", Fraction(5, 2)) == Fraction(2, Fraction(5, 2) * Fraction(7, 2))


def test_poles():
    with pytest.raises(PoleError):
        I("u[1,1] ~u[1,1]", n=0)
    with pytest.raises(PoleError):
        I("u[1,1] u[1,1] ~u[1,1] ~u[1,1]", n=-1)
    assert I("u[1,1] u[1,1] ~u[1,1] ~u[1,1]", n=-3) == Fraction(1, 3)


def test_non_integer_n_rejected_for_classical_groups():
    with pytest.raises(ValueError):
        I("u[1,1] ~u[1,1]", n=Fraction(5, 2))


# --- closed-form oracles ------------------------------------------------------


@pytest.mark.parametrize("k", range(1, 6))
def test_unitary_power_moment(k):
    # E|u11|^{2k} = 1 / binom(n + k - 1, k)
    val = I(" ".join(["u[1,1]"] * k + ["~u[1,1]"] * k))
    for n0 in range(k, k + 4):
        assert val(n0) == Fraction(1, math.comb(n0 + k - 1, k))


@pytest.mark.parametrize("k", range(1, 5))
def test_orthogonal_power_moment(k):
    # E u11^{2k} = (2k-1)!! / (n (n+2) ... (n+2k-2))
    val = I(" ".join(["u[1,1]"] * (2 * k)), "orthogonal")
    odd = math.prod(range(2 * k - 1, 0, -2))
    for n0 in range(k, k + 4):
        assert val(n0) == Fraction(odd, math.prod(n0 + 2 * j for j in range(k)))


# --- brute-force micro-oracles at n = 1 ---------------------------------------


@pytest.mark.parametrize("deg", range(0, 5))
def test_circle_brute_force(deg):
    # U(1): integral of z^a conj(z)^b is 1 iff a == b
    for a in range(deg + 1):
        b = deg - a
        text = " ".join(["u[1,1]"] * a + ["~u[1,1]"] * b)
        assert I(text, n=1) == (1 if a == b else 0)


@pytest.mark.parametrize("deg", range(0, 7))
def test_two_point_group_brute_force(deg):
    text = " ".join(["u[1,1]"] * deg)
    assert I(text, "orthogonal", 1) == (1 if deg % 2 == 0 else 0)


# --- invariance properties ----------------------------------------------------


@st.composite
def unitary_words(draw, n=3, max_kp=3):
    kp = draw(st.integers(0, max_kp))
    idx = st.integers(1, n)
    plain = [(draw(idx), draw(idx), False) for _ in range(kp)]
    conj = [(draw(idx), draw(idx), True) for _ in range(kp)]
    extra = draw(st.lists(st.tuples(idx, idx, st.booleans()), max_size=1))
    factors = plain + conj + extra
    return draw(st.permutations(factors))


@st.composite
def real_words(draw, n=3, max_len=6):
    m = draw(st.integers(0, max_len))
    idx = st.integers(1, n)
    return [(draw(idx), draw(idx), False) for _ in range(m)]


@given(unitary_words(), st.permutations([1, 2, 3]), st.permutations([1, 2, 3]))
def test_unitary_row_column_relabel(factors, rp, cp):
    base = I(word(factors))
    moved = [(rp[r - 1], cp[c - 1], conj) for r, c, conj in factors]
    assert I(word(moved)) == base


@given(unitary_words())
def test_unitary_conjugation_symmetry(factors):
    swapped = [(c, r, not conj) for r, c, conj in factors]
    assert I(word(swapped)) == I(word(factors))


@given(unitary_words(max_kp=2), st.integers(1, 3))
def test_unitary_row_normalization(factors, r):
    # sum_j u_rj conj(u_rj) = 1 inside any integral (n = 3)
    base = I(word(factors), n=3)
    total = sum(I(word(list(factors) + [(r, j, False), (r, j, True)]), n=3) for j in range(1, 4))
    assert total == base


@given(real_words(max_len=4), st.integers(1, 3), st.sampled_from(["orthogonal", "free"]))
def test_real_row_normalization(factors, r, group):
    # sum_j u_rj u_rj = 1 appended to the word (n = 3)
    base = I(word(factors), group, 3)
    total = sum(I(word(list(factors) + [(r, j, False), (r, j, False)]), group, 3) for j in range(1, 4))
    assert total == base


@given(real_words(), st.permutations([1, 2, 3]), st.permutations([1, 2, 3]))
def test_orthogonal_relabel_and_parity(factors, rp, cp):
    base = I(word(factors), "orthogonal")
    if len(factors) % 2:
        assert base == 0
    moved = [(rp[r - 1], cp[c - 1], False) for r, c, _ in factors]
    assert I(word(moved), "orthogonal") == base


@given(real_words(max_len=6))
def test_orthogonal_ignores_order(factors):
    assert I(word(factors[::-1]), "orthogonal") == I(word(factors), "orthogonal")


@given(real_words(max_len=6))
def test_free_is_tracial(factors):
    if not factors:
        return
    rotated = factors[1:] + factors[:1]
    assert I(word(rotated), "free") == I(word(factors), "free")


def test_free_word_order_matters_for_non_cyclic_rearrangement():
    a = I("u[1,1] u[1,1] u[2,2] u[2,2]", "free")
    b = I("u[1,1] u[2,2] u[1,1] u[2,2]", "free")
    assert a != b
    # the classical group cannot see the order
    assert I("u[1,1] u[1,1] u[2,2] u[2,2]", "orthogonal") == I("u[1,1] u[2,2] u[1,1] u[2,2]", "orthogonal")


def test_moment_query_is_hashable():
    q = MomentQuery(GroupKind.UNITARY, ((1, 1, False), (1, 1, True)))
    assert {q: 1}[q] == 1 and q.degree == 2
    assert integrate(q) == RationalFunction(1) / N
