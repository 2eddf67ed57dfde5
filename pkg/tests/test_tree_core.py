import itertools
import random

import pytest

from treelie import tree_core as tc
from treelie.tree_core import (
    LabeledTree,
    TreeSyntaxError,
    act,
    automorphism_count,
    enumerate_heap_ordered,
    enumerate_labeled,
    enumerate_trees,
    graft,
    leaf,
    parse_labeled,
    parse_tree,
    render_tree,
    vertices,
)


def test_parse_single_vertex():
    t = parse_tree("a")
    assert t.degree == 1 and t.label == "a" and render_tree(t) == "a"


def test_parse_children():
    t = parse_tree("a[b,c[d]]")
    assert t.label == "a"
    assert sorted(c.label for c in t.children) == ["b", "c"]
    assert t.degree == 4


def test_parse_is_order_insensitive():
    assert parse_tree("a[c[d],b]") == parse_tree("a[b,c[d]]")
    assert render_tree(parse_tree("a[c[d],b]")) == "a[b,c[d]]"


def test_multiset_children_render():
    assert render_tree(tc.node("a", [leaf("b"), leaf("b")])) == "a[b,b]"


def test_parse_render_round_trip():
    for text in ["a", "a[b,b]", "a[b[c],b]", "z9[_x,a1[a1]]"]:
        t = parse_tree(text)
        assert parse_tree(render_tree(t)) == t


def test_parse_whitespace_insensitive():
    assert parse_tree(" a[ b , c[d] ] ") == parse_tree("a[b,c[d]]")


@pytest.mark.parametrize("bad", ["", "[a]", "a[", "a[]", "a[b", "a]b", "a[b,]", "a b"])
def test_parse_errors(bad):
    with pytest.raises((TreeSyntaxError, ValueError)):
        parse_tree(bad)


def test_parse_error_position():
    with pytest.raises(TreeSyntaxError) as exc:
        parse_tree("a[b,?]")
    assert exc.value.position == 4


def test_label_validation():
    with pytest.raises(ValueError):
        tc.leaf("")
    with pytest.raises(ValueError):
        tc.leaf("a-b")


def test_graft_examples():
    a, b, c = leaf("a"), leaf("b"), leaf("c")
    assert render_tree(graft(a, 0, b)) == "a[b]"
    ab = parse_tree("a[b]")
    assert render_tree(graft(ab, 1, c)) == "a[b[c]]"
    assert render_tree(graft(ab, 0, c)) == "a[b,c]"


def test_graft_out_of_range():
    with pytest.raises(IndexError):
        graft(leaf("a"), 1, leaf("b"))
    with pytest.raises(IndexError):
        graft(leaf("a"), -1, leaf("b"))


def test_graft_degree_and_term_count():
    s = parse_tree("a[a,a[a]]")
    t = parse_tree("b[b]")
    grafts = [graft(s, i, t) for i in range(s.degree)]
    assert len(grafts) == s.degree
    assert all(g.degree == s.degree + t.degree for g in grafts)


def _independent_tree_counts(n_max):
    # unlabeled rooted tree counts by the divisor-sum convolution recursion
    a = [0, 1]
    for n in range(1, n_max):
        total = 0
        for k in range(1, n + 1):
            total += sum(d * a[d] for d in range(1, k + 1) if k % d == 0) * a[n - k + 1]
        a.append(total // n)
    return a[1:]


def test_one_letter_counts_match_recursion():
    expected = _independent_tree_counts(8)
    got = [len(enumerate_trees(["a"], n)) for n in range(1, 9)]
    assert got == expected
    assert got[:7] == [1, 1, 2, 4, 9, 20, 48]


def test_enumerate_two_letters_degree_two():
    got = [render_tree(t) for t in enumerate_trees(["a", "b"], 2)]
    assert got == ["a[a]", "a[b]", "b[a]", "b[b]"]


def test_enumerate_trees_deterministic_and_sorted():
    ts = enumerate_trees(["b", "a"], 3)
    assert ts == sorted(ts)
    assert ts == enumerate_trees(["a", "b"], 3)


def test_enumerate_errors():
    with pytest.raises(ValueError):
        enumerate_trees(["a"], 0)
    with pytest.raises(ValueError):
        enumerate_trees([], 2)


# -- canonical form soundness against an independent isomorphism oracle -----


def _shuffled_nested(t, rng):
    kids = [_shuffled_nested(c, rng) for c in t.children]
    rng.shuffle(kids)
    return (t.label, kids)


def _nested_iso(x, y):
    # brute-force isomorphism of (label, children-list) pairs
    if x[0] != y[0] or len(x[1]) != len(y[1]):
        return False
    for perm in itertools.permutations(range(len(y[1]))):
        if all(_nested_iso(c, y[1][p]) for c, p in zip(x[1], perm)):
            return True
    return not x[1]


def _signature(x):
    kids = sorted(map(_signature, x[1]))
    return (x[0], tuple(kids))


def test_canonical_form_matches_iso_classes_two_letters():
    # complete-signature oracle: renders agree exactly when signatures agree
    rng = random.Random(7)
    for n in range(1, 7):
        seen = {}
        for t in enumerate_trees(["a", "b"], n):
            nested = _shuffled_nested(t, rng)
            sig = _signature(nested)
            assert sig not in seen, "two distinct canonical trees share a signature"
            seen[sig] = t
            rebuilt = _rebuild(nested)
            assert rebuilt == t


def _rebuild(nested):
    return tc.node(nested[0], [_rebuild(c) for c in nested[1]])


def test_canonical_form_pairwise_brute_force_small():
    rng = random.Random(11)
    for n in range(1, 5):
        ts = enumerate_trees(["a", "b"], n)
        nested = [_shuffled_nested(t, rng) for t in ts]
        for i, x in enumerate(nested):
            for j, y in enumerate(nested):
                assert _nested_iso(x, y) == (i == j)


def test_vertices_preorder():
    t = parse_tree("a[b,c[d]]")
    assert [v.label for v in vertices(t)] == ["a", "b", "c", "d"]


def test_automorphism_count():
    assert automorphism_count(parse_tree("a")) == 1
    assert automorphism_count(parse_tree("a[a,a]")) == 2
    assert automorphism_count(parse_tree("a[a,a,a]")) == 6
    assert automorphism_count(parse_tree("a[a[a],a[a]]")) == 2
    assert automorphism_count(parse_tree("a[a,a[a]]")) == 1


# -- labeled and heap-ordered trees -----------------------------------------


def test_labeled_counts_cayley():
    for n in range(1, 7):
        assert len(enumerate_labeled(n)) == n ** (n - 1)


def test_labeled_small_examples():
    assert len(enumerate_labeled(1)) == 1
    assert len(enumerate_labeled(3)) == 9
    assert len(enumerate_labeled(4)) == 64


def test_labeled_validation():
    with pytest.raises(ValueError):
        LabeledTree((0, 0))  # two roots
    with pytest.raises(ValueError):
        LabeledTree((2, 1))  # cycle, no root
    with pytest.raises(ValueError):
        LabeledTree((0, 5))  # parent out of range
    with pytest.raises(ValueError):
        enumerate_labeled(0)


def test_heap_ordered_counts():
    import math

    for n in range(1, 8):
        assert len(enumerate_heap_ordered(n)) == math.factorial(n - 1)


def test_heap_ordered_matches_filter():
    for n in range(1, 6):
        filtered = [t for t in enumerate_labeled(n) if t.is_heap_ordered()]
        assert enumerate_heap_ordered(n) == sorted(filtered)


def test_heap_ordered_two_vertices():
    (t,) = enumerate_heap_ordered(2)
    assert t.root == 1 and t.parent == (0, 1)


def test_labeled_serialization_round_trip():
    for t in enumerate_labeled(4)[:10]:
        assert parse_labeled(str(t)) == t
    assert str(LabeledTree((2, 0, 2))) == "3;2;2,0,2"


def test_to_rooted():
    t = LabeledTree((0, 1, 1))
    assert render_tree(t.to_rooted(["a", "b", "c"])) == "a[b,c]"
    assert render_tree(t.to_rooted(["a", "c", "b"])) == "a[b,c]"


# -- the permutation action --------------------------------------------------


def test_act_identity():
    t = LabeledTree((0, 1, 1))
    assert act((1, 2, 3), t) == t


def test_act_swap_children_fixes_cherry():
    t = LabeledTree((0, 1, 1))  # root 1, children 2 and 3
    assert act((1, 3, 2), t) == t


def test_act_swap_on_path():
    t = LabeledTree((0, 1))  # root 1, child 2
    swapped = act((2, 1), t)
    assert swapped.root == 2 and swapped.parent == (2, 0)


def test_act_is_a_right_action():
    trees = enumerate_labeled(4)[:12]
    perms = list(itertools.permutations((1, 2, 3, 4)))
    rng = random.Random(3)
    for _ in range(60):
        t = rng.choice(trees)
        sigma, tau = rng.choice(perms), rng.choice(perms)
        composed = tuple(sigma[tau[i] - 1] for i in range(4))  # (sigma . tau)(i)
        assert act(composed, t) == act(tau, act(sigma, t))


def test_act_errors():
    t = LabeledTree((0, 1))
    with pytest.raises(ValueError):
        act((1,), t)
    with pytest.raises(ValueError):
        act((1, 1), t)
