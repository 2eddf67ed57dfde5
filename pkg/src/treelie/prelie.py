"""Products on the free algebras of rooted trees.

The grafting sum over all vertices realizes the free pre-Lie product; the
single root graft realizes the free permutative (NAP) product.  Both extend
bilinearly to Elements, and the tensor powers become right modules through
slot-wise derivation.
"""

from treelie import kernel
from treelie.freemod import Element, TensorElement


def prelie_product(x, y):
    """Pre-Lie product: sum of grafts of each y-term onto every vertex of each x-term."""
    acc = {}
    for s, cs in x.items():
        for t, ct in y.items():
            c = cs * ct
            for g, mult in kernel.prelie_counts(s, t).items():
                v = acc.get(g, 0) + c * mult
                if v:
                    acc[g] = v
                else:
                    acc.pop(g, None)
    return Element(acc)


def nap_product(x, y):
    """NAP product: graft each y-term onto the root of each x-term."""
    acc = {}
    for s, cs in x.items():
        for t, ct in y.items():
            g = kernel.root_graft(s, t)
            v = acc.get(g, 0) + cs * ct
            if v:
                acc[g] = v
            else:
                acc.pop(g, None)
    return Element(acc)


def bracket(x, y):
    """Lie bracket x o y - y o x of the pre-Lie product."""
    return prelie_product(x, y) - prelie_product(y, x)


def module_action(m, y, product=prelie_product):
    """Right action of an Element on a tensor power by derivation:
    (x1 (x) ... (x) xn) o y = sum_i x1 (x) ... (x) xi o y (x) ... (x) xn.

    ``product`` defaults to the free pre-Lie product; pass an algebra's own
    bilinear product to act in a presented algebra.
    """
    acc = {}
    for keys, c in m.items():
        for i in range(m.rank):
            hit = product(Element.of(keys[i]), y)
            for k2, c2 in hit.items():
                key2 = keys[:i] + (k2,) + keys[i + 1 :]
                v = acc.get(key2, 0) + c * c2
                if v:
                    acc[key2] = v
                else:
                    acc.pop(key2, None)
    return TensorElement(m.rank, acc)
