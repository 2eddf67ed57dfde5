from treelie import checks
from treelie.freemod import Element, TensorElement, tensor
from treelie.prelie import bracket, module_action, nap_product, prelie_product
from treelie.tree_core import parse_tree


def E(text):
    return Element.of(parse_tree(text))


def test_prelie_examples():
    assert prelie_product(E("a"), E("b")) == E("a[b]")
    assert prelie_product(E("a[b]"), E("c")) == E("a[b,c]") + E("a[b[c]]")


def test_prelie_bilinear():
    x, y = E("a") + 2 * E("b"), E("a[b]")
    assert prelie_product(x, y) == prelie_product(E("a"), y) + 2 * prelie_product(E("b"), y)


def test_prelie_degree_additive():
    p = prelie_product(E("a[b]"), E("c[d]"))
    assert p.degrees() == [4]
    assert sum(p.terms.values()) == 2  # one graft per vertex of the left factor


def test_prelie_multiplicity_on_symmetric_host():
    # both grafting positions on the equal children coincide
    p = prelie_product(E("a[a,a]"), E("a"))
    assert p.coeff(parse_tree("a[a,a,a]")) == 1
    assert p.coeff(parse_tree("a[a,a[a]]")) == 2


def test_prelie_relation_exhaustive():
    assert checks.check_prelie_relation(("a",), 6).ok
    assert checks.check_prelie_relation(("a", "b"), 5).ok


def test_nap_examples():
    assert nap_product(E("a"), E("b")) == E("a[b]")
    ab_c = nap_product(nap_product(E("a"), E("b")), E("c"))
    ac_b = nap_product(nap_product(E("a"), E("c")), E("b"))
    assert ab_c == ac_b == E("a[b,c]")
    assert nap_product(E("a[b]"), E("c[d]")) == E("a[b,c[d]]")


def test_nap_relation_exhaustive():
    assert checks.check_nap_relation(("a",), 6).ok
    assert checks.check_nap_relation(("a", "b"), 5).ok


def test_bracket():
    assert bracket(E("a"), E("a")).is_zero()
    assert bracket(E("a"), E("b")) == E("a[b]") - E("b[a]")


def test_jacobi_identity_sample():
    x, y, z = E("a"), E("b"), E("a[b]")
    jac = (
        bracket(bracket(x, y), z)
        + bracket(bracket(y, z), x)
        + bracket(bracket(z, x), y)
    )
    assert jac.is_zero()


def test_module_action_examples():
    m = tensor(E("a"), E("b"))
    assert module_action(m, E("c")) == tensor(E("a[c]"), E("b")) + tensor(E("a"), E("b[c]"))
    rank1 = TensorElement.of((parse_tree("a[b]"),))
    got = module_action(rank1, E("c"))
    expect = prelie_product(E("a[b]"), E("c"))
    assert got == TensorElement(1, {(k,): c for k, c in expect.items()})


def test_module_axiom_random():
    assert checks.check_module_axiom(seed=7).ok
    assert checks.check_module_axiom(seed=12345).ok


def test_trick_formula():
    assert checks.check_trick_formula(("a",), 6).ok
    assert checks.check_trick_formula(("a", "b"), 5).ok


def test_freeness_dimensions():
    assert checks.check_freeness_dimensions(8).ok
