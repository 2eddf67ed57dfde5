"""Rooted trees: parsing, rendering, enumeration and vertex surgery.

Two flavours of tree live here.  ``RootedTree`` (the kernel's canonical
unordered tree with labels drawn from a generator alphabet) is the basis of
the free algebras.  ``LabeledTree`` carries a bijective labelling of its
vertices by ``{1..n}`` and underlies the operad components; heap-ordered
trees are the labeled trees whose labels increase away from the root.

Grammar for generator-labeled trees::

    tree  := label ( '[' tree (',' tree)* ']' )?
    label := [A-Za-z0-9_]+

Whitespace between tokens is ignored.  Rendering always emits the canonical
form (children sorted by their own rendering), which makes the rendered
string a complete isomorphism invariant and the interchange format for
golden values.
"""

import itertools
import re
from dataclasses import dataclass

from treelie import kernel
from treelie.kernel import Tree

RootedTree = Tree

_LABEL_RE = re.compile(r"[A-Za-z0-9_]+")


class TreeSyntaxError(ValueError):
    """Raised on malformed tree text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


def check_label(label):
    if not isinstance(label, str) or _LABEL_RE.fullmatch(label) is None:
        raise ValueError("invalid label %r: expected nonempty token over [A-Za-z0-9_]" % (label,))
    return label


def leaf(label):
    return kernel.leaf(check_label(label))


def node(label, children):
    return kernel.node(check_label(label), children)


def parse_tree(text):
    """Parse tree-grammar text into its canonical RootedTree."""
    tree, pos = _parse(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise TreeSyntaxError("unexpected trailing input %r" % text[pos : pos + 10], pos)
    return tree


def _skip_ws(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse(text, pos):
    m = _LABEL_RE.match(text, pos)
    if m is None:
        found = text[pos] if pos < len(text) else "end of input"
        raise TreeSyntaxError("expected label, found %r" % found, pos)
    label = m.group(0)
    pos = _skip_ws(text, m.end())
    if pos < len(text) and text[pos] == "[":
        children = []
        pos = _skip_ws(text, pos + 1)
        while True:
            child, pos = _parse(text, pos)
            children.append(child)
            pos = _skip_ws(text, pos)
            if pos < len(text) and text[pos] == ",":
                pos = _skip_ws(text, pos + 1)
                continue
            if pos < len(text) and text[pos] == "]":
                return kernel.node(label, children), pos + 1
            raise TreeSyntaxError("expected ',' or ']'", pos)
    return kernel.leaf(label), pos


def render_tree(tree):
    """Canonical string form; ``parse_tree(render_tree(t)) == t``."""
    return tree.key


def graft(host, position, shoot):
    """Graft the root of ``shoot`` onto the vertex of ``host`` at ``position``.

    Positions index the canonical preorder traversal, root = 0.
    """
    return kernel.graft_at(host, position, shoot)


def vertices(tree):
    """Subtrees rooted at each vertex, in canonical preorder."""
    out = [tree]
    for c in tree.children:
        out.extend(vertices(c))
    return out


def automorphism_count(tree):
    """Order of the automorphism group: equal sibling subtrees may permute."""
    out = 1
    run = 1
    for i, c in enumerate(tree.children):
        out *= automorphism_count(c)
        if i > 0 and c == tree.children[i - 1]:
            run += 1
            out *= run
        else:
            run = 1
    return out


def enumerate_trees(alphabet, degree):
    """All canonical trees with ``degree`` vertices labeled from ``alphabet``.

    Deterministic output: sorted by canonical rendering within the fixed
    degree.  Labels may repeat freely.
    """
    letters = [check_label(a) for a in alphabet]
    if not letters:
        raise ValueError("alphabet must be nonempty")
    if degree < 1:
        raise ValueError("degree must be >= 1, got %d" % degree)
    return _trees_memo(tuple(sorted(set(letters))), degree)


_TREES_CACHE = {}


def _trees_memo(letters, degree):
    got = _TREES_CACHE.get((letters, degree))
    if got is None:
        got = _enumerate(letters, degree)
        _TREES_CACHE[(letters, degree)] = got
    return got


def _enumerate(letters, degree):
    if degree == 1:
        return sorted(kernel.leaf(a) for a in letters)
    pool = []
    for d in range(1, degree):
        pool.extend(_trees_memo(letters, d))
    out = set()
    for label in letters:
        for combo in _subtree_multisets(pool, 0, degree - 1):
            out.add(kernel.node(label, combo))
    return sorted(out)


def _subtree_multisets(pool, start, budget):
    """Nondecreasing tuples of pool trees (by pool index) with total degree = budget."""
    if budget == 0:
        yield ()
        return
    for i in range(start, len(pool)):
        t = pool[i]
        if t.degree > budget:
            continue
        for rest in _subtree_multisets(pool, i, budget - t.degree):
            yield (t,) + rest


@dataclass(frozen=True, order=True)
class LabeledTree:
    """Rooted tree on vertex set {1..n} given by its parent array.

    ``parent[i-1]`` is the parent id of vertex i, with 0 marking the root.
    Serializes as ``n;root;parent(1),...,parent(n)``.
    """

    parent: tuple

    def __post_init__(self):
        n = len(self.parent)
        if n == 0:
            raise ValueError("labeled tree needs at least one vertex")
        roots = [i + 1 for i, p in enumerate(self.parent) if p == 0]
        if len(roots) != 1:
            raise ValueError("expected exactly one root, found %d" % len(roots))
        for i, p in enumerate(self.parent):
            if p != 0 and not (1 <= p <= n):
                raise ValueError("parent of vertex %d out of range: %d" % (i + 1, p))
        # acyclicity: every vertex must reach the root
        for v in range(1, n + 1):
            seen, cur = set(), v
            while self.parent[cur - 1] != 0:
                if cur in seen:
                    raise ValueError("parent map has a cycle through vertex %d" % v)
                seen.add(cur)
                cur = self.parent[cur - 1]

    @property
    def n(self):
        return len(self.parent)

    @property
    def degree(self):
        return len(self.parent)

    @property
    def root(self):
        return self.parent.index(0) + 1

    def children_of(self, v):
        return [i + 1 for i, p in enumerate(self.parent) if p == v]

    def is_heap_ordered(self):
        return all(p < i + 1 for i, p in enumerate(self.parent) if p != 0)

    def to_rooted(self, labels):
        """Forget the ordering: canonical tree with vertex i labeled ``labels[i-1]``."""
        if len(labels) != self.n:
            raise ValueError("need %d labels, got %d" % (self.n, len(labels)))

        def build(v):
            return kernel.node(labels[v - 1], [build(c) for c in self.children_of(v)])

        return build(self.root)

    def __str__(self):
        return "%d;%d;%s" % (self.n, self.root, ",".join(str(p) for p in self.parent))


def parse_labeled(text):
    """Inverse of ``str(LabeledTree)``."""
    try:
        n_s, root_s, parents_s = text.strip().split(";")
        parent = tuple(int(p) for p in parents_s.split(","))
        n, root = int(n_s), int(root_s)
    except ValueError as exc:
        raise ValueError("malformed labeled tree %r" % text) from exc
    if n != len(parent):
        raise ValueError("vertex count %d does not match parent array length %d" % (n, len(parent)))
    t = LabeledTree(parent)
    if t.root != root:
        raise ValueError("declared root %d does not match parent array" % root)
    return t


def labeled_from_rooted(tree, letter_ids):
    """Labeled tree from a canonical tree whose letters map bijectively to ids.

    ``letter_ids`` maps each distinct label of ``tree`` to a vertex id; every
    label must occur exactly once in the tree.
    """
    parent = [0] * tree.degree

    def walk(t, parent_id):
        v = letter_ids[t.label]
        parent[v - 1] = parent_id
        for c in t.children:
            walk(c, v)

    walk(tree, 0)
    return LabeledTree(tuple(parent))


def enumerate_labeled(n):
    """All labeled rooted trees on {1..n}; there are n^(n-1) of them."""
    if n < 1:
        raise ValueError("n must be >= 1, got %d" % n)
    out = []
    for root in range(1, n + 1):
        others = [v for v in range(1, n + 1) if v != root]
        for choice in itertools.product(range(1, n + 1), repeat=n - 1):
            parent = [0] * n
            ok = True
            for v, p in zip(others, choice):
                if p == v:
                    ok = False
                    break
                parent[v - 1] = p
            if not ok:
                continue
            # reject choices where some vertex does not reach the root
            for v in others:
                cur, steps = v, 0
                while parent[cur - 1] != 0 and steps <= n:
                    cur = parent[cur - 1]
                    steps += 1
                if parent[cur - 1] != 0:
                    ok = False
                    break
            if ok:
                out.append(LabeledTree(tuple(parent)))
    return sorted(out)


def enumerate_heap_ordered(n):
    """All heap-ordered trees on {1..n}; there are (n-1)! of them.

    The root is forced to be 1 and every other vertex picks a smaller parent,
    so no acyclicity filtering is required.
    """
    if n < 1:
        raise ValueError("n must be >= 1, got %d" % n)
    out = []
    for choice in itertools.product(*(range(1, v) for v in range(2, n + 1))):
        parent = (0,) + choice
        out.append(LabeledTree(parent))
    return sorted(out)


def act(sigma, tree):
    """Right action of a permutation on the labeling of a labeled tree.

    ``sigma`` is a sequence with ``sigma[i-1]`` the image of i.  The
    convention is ``parent' = sigma^{-1} . parent . sigma``, which gives
    ``act(sigma . tau, T) == act(tau, act(sigma, T))``.
    """
    n = tree.n
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of 1..%d" % n)
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s - 1] = i + 1
    parent = [0] * n
    for j in range(1, n + 1):
        p = tree.parent[sigma[j - 1] - 1]
        parent[j - 1] = 0 if p == 0 else inv[p - 1]
    return LabeledTree(tuple(parent))
