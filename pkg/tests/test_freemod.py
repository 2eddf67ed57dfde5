import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treelie.freemod import (
    Element,
    TensorElement,
    add,
    filtration_degree,
    invert_matrix,
    is_invariant_1k,
    matrix_rank,
    nullspace,
    parse_element,
    parse_tensor_element,
    permute_slots,
    rank_of_family,
    scale,
    swap_slots,
    tensor,
)
from treelie.nap_coalgebra import coproduct_basis
from treelie.tree_core import enumerate_trees, parse_tree


def E(text):
    return Element.of(parse_tree(text))


POOL = [parse_tree(s) for s in ["a", "b", "a[a]", "a[b]", "b[a]", "a[a,b]", "a[b[a]]"]]

elements = st.builds(
    Element,
    st.dictionaries(
        st.sampled_from(POOL),
        st.fractions(min_value=-4, max_value=4, max_denominator=6),
        max_size=4,
    ),
)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=8)


def test_add_examples():
    x = E("a")
    assert x + Element() == x
    assert x + x == 2 * x
    assert Fraction(1, 2) * E("a[b]") + Fraction(1, 2) * E("a[b]") == E("a[b]")
    assert add(x, x) == 2 * x


def test_scale_examples():
    x = E("a")
    assert 1 * x == x
    assert 0 * x == Element()
    assert scale(Fraction(-1, 6), 3 * x) == Fraction(-1, 2) * x


def test_zero_terms_dropped():
    x = E("a") - E("a")
    assert x.is_zero() and x.terms == {}


def test_coefficients_must_be_exact():
    with pytest.raises(TypeError):
        0.5 * E("a")


@settings(max_examples=60)
@given(elements, elements, elements, rationals, rationals)
def test_vector_space_axioms(x, y, z, c, d):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert c * (x + y) == c * x + c * y
    assert (c + d) * x == c * x + d * x
    assert c * (d * x) == (c * d) * x


def test_tensor_examples():
    a, b, c = E("a"), E("b"), E("a[b]")
    assert tensor(a, b) == TensorElement.of((parse_tree("a"), parse_tree("b")))
    assert tensor(a + b, c) == tensor(a, c) + tensor(b, c)
    assert tensor(2 * a, 3 * b) == 6 * tensor(a, b)


def test_tensor_rank_mismatch():
    with pytest.raises(ValueError):
        tensor(E("a"), E("b")) + tensor(E("a"), E("b"), E("a"))


def test_invariance_examples():
    a, b, c = E("a"), E("b"), E("a[b]")
    assert not is_invariant_1k(tensor(a, b, c))
    assert is_invariant_1k(tensor(a, b, c) + tensor(a, c, b))
    with pytest.raises(ValueError):
        is_invariant_1k(tensor(a))


def test_invariance_agrees_with_all_permutations():
    # transposition generators vs the full k! orbit check, k <= 4
    keys = [parse_tree(s) for s in ["a", "b", "a[a]", "a[b]"]]
    samples = [
        TensorElement.of(tuple(keys[:3])),
        TensorElement.of((keys[0], keys[1], keys[1])),
        sum(
            (TensorElement.of((keys[0],) + p) for p in itertools.permutations(keys[1:])),
            TensorElement(4),
        ),
        TensorElement.of(tuple(keys)) + TensorElement.of((keys[0], keys[2], keys[1], keys[3])),
    ]
    for t in samples:
        brute = all(
            permute_slots(t, (1,) + tuple(x + 1 for x in p)) == t
            for p in itertools.permutations(range(1, t.rank))
        )
        assert is_invariant_1k(t) == brute


def test_swap_and_permute_consistency():
    t = tensor(E("a"), E("b"), E("a[b]"))
    assert swap_slots(t, 1, 2) == permute_slots(t, (1, 3, 2))
    assert permute_slots(permute_slots(t, (2, 3, 1)), (3, 1, 2)) == t


def test_rank_examples():
    a = E("a")
    assert rank_of_family([a, 2 * a], 1) == 1
    assert rank_of_family([], 1) == 0
    with pytest.raises(ValueError):
        rank_of_family([E("a") + E("a[a]")], 1)


def test_rank_independent_family():
    xs = [E("a[a,a]"), E("a[a[a]]"), E("a[a,a]") + E("a[a[a]]")]
    assert rank_of_family(xs, 3) == 2


# -- exact linear algebra -----------------------------------------------------


def test_echelon_rank_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert matrix_rank(rows) == 2
    for vec in nullspace(rows):
        for row in rows:
            assert sum(Fraction(a) * b for a, b in zip(row, vec)) == 0
    assert len(nullspace(rows)) == 1


def test_invert_matrix():
    m = [[2, 1, 0], [1, 1, 1], [0, 3, 1]]
    inv = invert_matrix(m)
    n = len(m)
    prod = [
        [sum(Fraction(m[i][k]) * inv[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    assert prod == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    with pytest.raises(ValueError):
        invert_matrix([[1, 2], [2, 4]])


# -- serialization ------------------------------------------------------------


def test_render_format():
    x = E("a[b,c]") + E("a[b[c]]")
    assert str(x) == "1 * a[b,c] + 1 * a[b[c]]"
    assert str(Element()) == "0"
    assert str(E("a") - E("b")) == "1 * a - 1 * b"
    assert str(Fraction(-1, 2) * E("a")) == "-1/2 * a"


def test_parse_element_round_trip():
    samples = [
        Element(),
        E("a"),
        2 * E("a[b]") - Fraction(3, 7) * E("b") + E("a"),
        Fraction(-5, 2) * E("a[a,a]"),
    ]
    for x in samples:
        assert parse_element(str(x), parse_tree) == x


def test_parse_tensor_round_trip():
    t = tensor(E("a"), E("b")) - Fraction(1, 3) * tensor(E("b"), E("a[a]"))
    assert parse_tensor_element(str(t), parse_tree) == t
    assert parse_tensor_element("0", parse_tree, rank=2) == TensorElement(2)


def test_tensor_render_order_is_graded():
    t = tensor(E("a"), E("b[a]")) + tensor(E("a[a]"), E("b"))
    assert str(t) == "1 * a (x) b[a] + 1 * a[a] (x) b"


# -- filtration ---------------------------------------------------------------


def _cop(t):
    return coproduct_basis(t)


def test_filtration_examples():
    assert filtration_degree(E("a"), _cop) == 1
    assert filtration_degree(E("a[b]"), _cop) == 2
    assert filtration_degree(E("a[b,c]"), _cop) == 3


def test_filtration_equals_max_degree_on_trees():
    for n in range(1, 6):
        for t in enumerate_trees(["a"], n):
            assert filtration_degree(Element.of(t), _cop) == n
    mixed = E("a") + E("a[a]") + E("a[a,a]")
    assert filtration_degree(mixed, _cop) == 3


def test_filtration_zero_error():
    with pytest.raises(ValueError):
        filtration_degree(Element(), _cop)


def test_filtration_infinite_for_nonconnected():
    # a fake coproduct with Delta(x) = x (x) x never reaches the filtration
    x = parse_tree("a")

    def bad(t):
        return TensorElement.of((t, t))

    assert filtration_degree(Element.of(x), bad, basis=lambda d: [x] if d == 1 else []) == math.inf
