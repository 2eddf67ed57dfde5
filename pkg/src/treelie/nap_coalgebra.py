"""The permutative coproduct on rooted trees and its iterates.

On a basis tree the coproduct removes one root subtree at a time:
Delta(B(v,T1,...,Tn)) = sum_i B(v,T1,...,without Ti,...,Tn) (x) Ti, so single
vertices are primitive.  Iterates expand the first slot repeatedly; the
insertion operator delta_y plugs an element after each tensor position.
"""

from treelie import kernel
from treelie.freemod import TensorElement, expand_slot


def coproduct_basis(t):
    """Coproduct of a single basis tree as a rank-2 tensor."""
    return TensorElement(2, kernel.coproduct_counts(t))


def coproduct(x):
    """Linear extension of the root-subtree-removal coproduct."""
    acc = {}
    for t, c in x.items():
        for pair, mult in kernel.coproduct_counts(t).items():
            v = acc.get(pair, 0) + c * mult
            if v:
                acc[pair] = v
            else:
                acc.pop(pair, None)
    return TensorElement(2, acc)


def delta_k(x, k, coproduct_map=None):
    """k-th iterated coproduct of an Element, a tensor of rank k+1.

    Delta^0 is the identity (rank-1 tensor); higher iterates apply the
    coproduct to the first slot: Delta^{k+1} = (Delta (x) Id^k) Delta^k.
    ``coproduct_map`` overrides the basis coproduct (key -> rank-2 tensor).
    """
    if k < 0:
        raise ValueError("k must be >= 0, got %d" % k)
    cop = coproduct_basis if coproduct_map is None else coproduct_map
    out = TensorElement(1, {(t,): c for t, c in x.items()})
    for step in range(k):
        out = expand_slot(out, 0, cop, step + 2)
        if out.is_zero():
            return TensorElement(k + 1, {})
    return out


def insert_y(y, t):
    """delta_y: insert ``y`` after each of the k slots of a rank-k tensor,
    giving k summands of rank k+1."""
    if t.rank < 1:
        raise ValueError("insertion needs rank >= 1")
    acc = {}
    for keys, c in t.items():
        for i in range(1, t.rank + 1):
            for ky, cy in y.items():
                key2 = keys[:i] + (ky,) + keys[i:]
                v = acc.get(key2, 0) + c * cy
                if v:
                    acc[key2] = v
                else:
                    acc.pop(key2, None)
    return TensorElement(t.rank + 1, acc)


def is_primitive(x, coproduct_map=None):
    """True iff the coproduct of ``x`` vanishes."""
    if coproduct_map is None:
        return coproduct(x).is_zero()
    return delta_k(x, 1, coproduct_map).is_zero()


def kronecker_pairing(x, y):
    """<x, y> = sum over shared basis keys of the coefficient products."""
    if len(x.terms) > len(y.terms):
        x, y = y, x
    return sum((c * y.terms.get(k, 0) for k, c in x.items()), 0)


def tensor_pairing(t, u):
    """Kronecker pairing of two equal-rank tensors."""
    if t.rank != u.rank:
        raise ValueError("rank mismatch: %d vs %d" % (t.rank, u.rank))
    if len(t.terms) > len(u.terms):
        t, u = u, t
    return sum((c * u.terms.get(k, 0) for k, c in t.items()), 0)
