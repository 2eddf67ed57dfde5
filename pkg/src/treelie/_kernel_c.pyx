# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled tree kernel: canonical rooted trees and grafting surgery.

Behavioural twin of ``treelie._kernel_py``; ``treelie.kernel`` selects one
of the two at import time.  Any behavioural change there must be mirrored
here.
"""

BACKEND = "cython"

cdef dict _INTERN = {}


cdef class Tree:
    """Canonical unordered rooted tree with string vertex labels.

    Children are stored as a tuple sorted by canonical rendering, so the
    rendering ``key`` is a complete isomorphism invariant: two trees are
    equal iff their keys are equal.  Instances are interned by key and
    immutable; build them with ``leaf`` and ``node``, never by calling
    ``Tree`` directly.
    """

    cdef readonly str label
    cdef readonly tuple children
    cdef readonly str key
    cdef readonly int degree
    cdef Py_hash_t _hash

    def __cinit__(self, str label, tuple children, str key, int degree):
        self.label = label
        self.children = children
        self.key = key
        self.degree = degree
        self._hash = hash(key)

    @property
    def arity(self):
        return len(self.children)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self.key == (<Tree> other).key

    def __ne__(self, other):
        if self is other:
            return False
        if not isinstance(other, Tree):
            return NotImplemented
        return self.key != (<Tree> other).key

    def __lt__(self, other):
        cdef Tree o = <Tree?> other
        if self.degree != o.degree:
            return self.degree < o.degree
        return self.key < o.key

    def __le__(self, other):
        cdef Tree o = <Tree?> other
        if self.degree != o.degree:
            return self.degree < o.degree
        return self.key <= o.key

    def __gt__(self, other):
        cdef Tree o = <Tree?> other
        if self.degree != o.degree:
            return self.degree > o.degree
        return self.key > o.key

    def __ge__(self, other):
        cdef Tree o = <Tree?> other
        if self.degree != o.degree:
            return self.degree > o.degree
        return self.key >= o.key

    def __str__(self):
        return self.key

    def __repr__(self):
        return "Tree(%r)" % self.key


cpdef Tree leaf(str label):
    """The one-vertex tree with the given label."""
    cdef Tree t = _INTERN.get(label)
    if t is None:
        t = Tree(label, (), label, 1)
        _INTERN[label] = t
    return t


def node(str label, children):
    """Tree with root ``label`` and the given child subtrees (any order)."""
    cdef list kids = sorted(children, key=_child_key)
    return _node_sorted(label, kids)


cdef Tree _node_sorted(str label, list kids):
    cdef Tree t, c
    cdef int degree
    if not kids:
        return leaf(label)
    cdef str key = label + "[" + ",".join([(<Tree> c).key for c in kids]) + "]"
    t = _INTERN.get(key)
    if t is None:
        degree = 1
        for c in kids:
            degree += c.degree
        t = Tree(label, tuple(kids), key, degree)
        _INTERN[key] = t
    return t


def _child_key(t):
    return (<Tree> t).key


def graft_at(Tree host, int index, Tree shoot):
    """Attach ``shoot`` as a new child of the vertex at preorder position ``index``.

    Positions follow the canonical preorder of the stored form, root = 0.
    Raises IndexError when the position is out of range.
    """
    if index < 0 or index >= host.degree:
        raise IndexError("vertex position %d out of range for degree %d" % (index, host.degree))
    return _graft(host, index, shoot)


cdef Tree _graft(Tree host, int index, Tree shoot):
    cdef tuple children = host.children
    cdef list kids
    cdef Tree c
    cdef int i
    if index == 0:
        kids = sorted(children + (shoot,), key=_child_key)
        return _node_sorted(host.label, kids)
    index -= 1
    for i in range(len(children)):
        c = <Tree> children[i]
        if index < c.degree:
            kids = sorted(children[:i] + (_graft(c, index, shoot),) + children[i + 1:], key=_child_key)
            return _node_sorted(host.label, kids)
        index -= c.degree
    raise IndexError("unreachable")


def root_graft(Tree host, Tree shoot):
    """Attach ``shoot`` as a new child of the root of ``host``."""
    cdef list kids = sorted(host.children + (shoot,), key=_child_key)
    return _node_sorted(host.label, kids)


def prelie_terms(Tree host, Tree shoot):
    """Grafts of ``shoot`` onto every vertex of ``host`` (one per position)."""
    cdef int i
    return [_graft(host, i, shoot) for i in range(host.degree)]


def prelie_counts(Tree host, Tree shoot):
    """Multiset of grafts as a dict tree -> multiplicity."""
    cdef dict out = {}
    cdef Tree t
    cdef int i
    for i in range(host.degree):
        t = _graft(host, i, shoot)
        out[t] = out.get(t, 0) + 1
    return out


def coproduct_terms(Tree t):
    """Pairs (t minus one root subtree, that subtree), one per child position."""
    cdef tuple children = t.children
    cdef list out = []
    cdef int i
    for i in range(len(children)):
        out.append((node(t.label, children[:i] + children[i + 1:]), children[i]))
    return out


def coproduct_counts(Tree t):
    """Same as ``coproduct_terms`` but accumulated into a dict pair -> count."""
    cdef tuple children = t.children
    cdef dict out = {}
    cdef tuple pair
    cdef int i
    for i in range(len(children)):
        pair = (node(t.label, children[:i] + children[i + 1:]), children[i])
        out[pair] = out.get(pair, 0) + 1
    return out


def intern_size():
    return len(_INTERN)
