import random

import pytest

from treelie import checks
from treelie.freemod import Element, TensorElement, is_invariant_1k
from treelie.nap_coalgebra import (
    coproduct,
    delta_k,
    insert_y,
    is_primitive,
    kronecker_pairing,
    tensor_pairing,
)
from treelie.tree_core import enumerate_trees, parse_tree


def E(text):
    return Element.of(parse_tree(text))


def T(*texts):
    return TensorElement.of(tuple(parse_tree(s) for s in texts))


def test_coproduct_examples():
    assert coproduct(E("a")).is_zero()
    assert coproduct(E("a[b]")) == T("a", "b")
    assert coproduct(E("a[b,c]")) == T("a[c]", "b") + T("a[b]", "c")


def test_coproduct_multiplicity():
    assert coproduct(E("a[b,b]")) == 2 * T("a[b]", "b")


def test_coproduct_degree_split():
    d = coproduct(E("a[b,c[d]]"))
    for (u, v), _ in d.items():
        assert u.degree + v.degree == 4


def test_delta_k_examples():
    x = E("a[b,c]")
    assert delta_k(x, 0) == TensorElement(1, {(parse_tree("a[b,c]"),): 1})
    assert delta_k(x, 2) == T("a", "c", "b") + T("a", "b", "c")
    assert delta_k(E("a[b[c]]"), 2).is_zero()


def test_delta_k_vanishes_beyond_degree():
    # iterates may die earlier (the first slot of a path becomes primitive
    # after one step) but never survive past the filtration degree
    survivors = {"a": 0, "a[a]": 1, "a[a,a]": 2, "a[a[a]]": 1}
    for text, last in survivors.items():
        t = E(text)
        assert not delta_k(t, last).is_zero()
        for k in range(last + 1, t.max_degree() + 2):
            assert delta_k(t, k).is_zero()


def test_delta_k_bracketings_agree():
    assert checks.check_deltak_bracketings(("a",), 5, 3).ok
    assert checks.check_deltak_bracketings(("a", "b"), 4, 3).ok


def test_delta_k_rejects_negative():
    with pytest.raises(ValueError):
        delta_k(E("a"), -1)


def test_insert_y_examples():
    assert insert_y(E("b"), TensorElement.of((parse_tree("a"),))) == T("a", "b")
    assert insert_y(E("c"), T("a", "b")) == T("a", "c", "b") + T("a", "b", "c")
    assert insert_y(E("c"), coproduct(E("a[b]"))) == T("a", "c", "b") + T("a", "b", "c")


def test_is_primitive():
    assert is_primitive(E("a"))
    assert is_primitive(E("a") - 3 * E("b"))
    assert not is_primitive(E("a[b]"))


def test_nap_coalgebra_relation():
    assert checks.check_nap_coalgebra_relation(("a",), 7).ok
    assert checks.check_nap_coalgebra_relation(("a", "b"), 5).ok


def test_deltak_images_invariant():
    assert checks.check_deltak_invariance(("a",), 6, 4).ok
    assert checks.check_deltak_invariance(("a", "b"), 5, 4).ok


def test_delta2_invariant_for_any_degree3_element():
    rng = random.Random(5)
    basis = enumerate_trees(["a", "b"], 3)
    for _ in range(20):
        x = Element()
        for _ in range(rng.randint(1, 4)):
            x = x + rng.randint(-3, 3) * Element.of(rng.choice(basis))
        d2 = delta_k(x, 2)
        if not d2.is_zero():
            assert is_invariant_1k(d2)


def test_distributive_law():
    assert checks.check_distributive_law(("a",), 6).ok
    assert checks.check_distributive_law(("a", "b"), 5).ok


def test_iterated_distributive_law():
    assert checks.check_iterated_distributive_law(("a",), 5, 4).ok


def test_cooperation_vanishing():
    assert checks.check_cooperation_vanishing(4).ok


def test_cofreeness_pairing():
    assert checks.check_cofreeness_pairing(("a",), 5).ok
    assert checks.check_cofreeness_pairing(("a", "b"), 4).ok


def test_pairing_basics():
    assert kronecker_pairing(E("a"), E("a")) == 1
    assert kronecker_pairing(E("a"), E("b")) == 0
    assert kronecker_pairing(2 * E("a[b]") + E("a"), 3 * E("a[b]")) == 6
    assert tensor_pairing(T("a", "b"), T("a", "b")) == 1
    with pytest.raises(ValueError):
        tensor_pairing(T("a", "b"), TensorElement.of((parse_tree("a"),)))


def test_primitives_exhaustive():
    assert checks.check_primitives(("a", "b"), 4).ok
