"""Exact rational linear combinations over tree-like bases.

``Element`` is a finite formal sum of basis keys with rational coefficients;
``TensorElement`` the same over fixed-length tuples of keys.  Keys only need
to be hashable, totally ordered, have a ``degree`` attribute and render via
``str`` (kernel trees, labeled trees and presented-algebra basis names all
qualify).  Coefficients are Python ints or ``fractions.Fraction``, never
floats, since every identity in this package is checked for exact equality.

The module also houses the small exact linear algebra needed elsewhere
(rank, nullspace, span membership over the rationals) and the coalgebra
filtration computation.
"""

import math
from fractions import Fraction

from treelie import tree_core


def _coeff(c):
    if isinstance(c, (int, Fraction)):
        return c
    raise TypeError("coefficient must be int or Fraction, got %r" % type(c).__name__)


def parse_rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("malformed rational %r" % text) from exc


def render_rational(c):
    return str(c)


class Element:
    """Finite rational linear combination of basis keys (zero terms absent)."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        data = dict(terms)
        self.terms = {k: c for k, c in data.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def of(cls, key, coeff=1):
        return cls({key: _coeff(coeff)})

    def is_zero(self):
        return not self.terms

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def support(self):
        return set(self.terms)

    def coeff(self, key):
        return self.terms.get(key, 0)

    def degrees(self):
        return sorted({k.degree for k in self.terms})

    def max_degree(self):
        return max((k.degree for k in self.terms), default=0)

    def is_homogeneous(self, degree=None):
        ds = self.degrees()
        if degree is None:
            return len(ds) <= 1
        return ds == [] or ds == [degree]

    def homogeneous_part(self, degree):
        return Element({k: c for k, c in self.terms.items() if k.degree == degree})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Element(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, coeff):
        c = _coeff(coeff)
        if not c:
            return Element()
        return Element({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return _render_terms(self.sorted_items(), str)

    def __repr__(self):
        return "Element(%s)" % self


class TensorElement:
    """Rational combination of rank-``rank`` tuples of basis keys."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=()):
        if rank < 1:
            raise ValueError("tensor rank must be >= 1, got %d" % rank)
        self.rank = rank
        data = dict(terms)
        for t in data:
            if len(t) != rank:
                raise ValueError("tuple %r does not have rank %d" % (t, rank))
        self.terms = {t: c for t, c in data.items() if c}

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def of(cls, keys, coeff=1):
        keys = tuple(keys)
        return cls(len(keys), {keys: _coeff(coeff)})

    def is_zero(self):
        return not self.terms

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __add__(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch: %d vs %d" % (self.rank, other.rank))
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElement(self.rank, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, coeff):
        c = _coeff(coeff)
        if not c:
            return TensorElement(self.rank)
        return TensorElement(self.rank, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __str__(self):
        return _render_terms(self.sorted_items(), _render_tuple)

    def __repr__(self):
        return "TensorElement(rank=%d, %s)" % (self.rank, self)


def _render_tuple(keys):
    return " (x) ".join(str(k) for k in keys)


def _render_terms(items, render_key):
    if not items:
        return "0"
    parts = []
    for key, c in items:
        mag = -c if c < 0 else c
        body = "%s * %s" % (render_rational(mag), render_key(key))
        if not parts:
            parts.append(("-" + body) if c < 0 else body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def parse_element(text, parse_key):
    """Inverse of ``str(Element)``: ``0`` or signed ``coeff * key`` terms."""
    text = text.strip()
    if text == "0":
        return Element()
    tokens = text.split(" ")
    out = {}
    pos = 0
    sign = 1
    while pos < len(tokens):
        if tokens[pos] in ("+", "-"):
            sign = 1 if tokens[pos] == "+" else -1
            pos += 1
        c = sign * parse_rational(tokens[pos])
        if pos + 2 >= len(tokens) or tokens[pos + 1] != "*":
            raise ValueError("expected 'coeff * key' at %r" % " ".join(tokens[pos:]))
        key = parse_key(tokens[pos + 2])
        out[key] = out.get(key, 0) + c
        pos += 3
        sign = 1
    return Element(out)


def parse_tensor_element(text, parse_key, rank=None):
    """Inverse of ``str(TensorElement)``; ``rank`` disambiguates a bare 0."""
    text = text.strip()
    if text == "0":
        if rank is None:
            raise ValueError("cannot infer the rank of a zero tensor")
        return TensorElement(rank)
    tokens = text.split(" ")
    out = {}
    pos = 0
    sign = 1
    seen_rank = rank
    while pos < len(tokens):
        if tokens[pos] in ("+", "-"):
            sign = 1 if tokens[pos] == "+" else -1
            pos += 1
        c = sign * parse_rational(tokens[pos])
        if pos + 2 >= len(tokens) or tokens[pos + 1] != "*":
            raise ValueError("expected 'coeff * key' at %r" % " ".join(tokens[pos:]))
        pos += 2
        keys = [parse_key(tokens[pos])]
        pos += 1
        while pos + 1 < len(tokens) and tokens[pos] == "(x)":
            keys.append(parse_key(tokens[pos + 1]))
            pos += 2
        keys = tuple(keys)
        if seen_rank is None:
            seen_rank = len(keys)
        elif len(keys) != seen_rank:
            raise ValueError("mixed tensor ranks %d and %d" % (seen_rank, len(keys)))
        out[keys] = out.get(keys, 0) + c
        sign = 1
    return TensorElement(seen_rank, out)


def add(x, y):
    """Sum of two Elements or two TensorElements of equal rank."""
    return x + y


def scale(coeff, x):
    return _coeff(coeff) * x


def tensor(*factors):
    """Tensor product of Elements, one slot per factor."""
    if not factors:
        raise ValueError("tensor needs at least one factor")
    terms = {(): 1}
    for f in factors:
        nxt = {}
        for keys, c in terms.items():
            for k, d in f.items():
                prod = c * d
                if prod:
                    nxt[keys + (k,)] = nxt.get(keys + (k,), 0) + prod
        terms = nxt
    return TensorElement(len(factors), {k: c for k, c in terms.items() if c})


def apply_linear(f, x):
    """Extend a basis-indexed map by linearity.

    ``f`` sends a basis key to an Element or TensorElement; all values must
    share one kind/rank.  Returns the zero Element for zero input.
    """
    out = None
    for k, c in x.items():
        v = c * f(k)
        out = v if out is None else out + v
    return Element() if out is None else out


def map_slot(t, slot, f):
    """Apply a key -> Element map to one tensor slot, keeping the rank."""
    acc = {}
    for keys, c in t.items():
        for k2, c2 in f(keys[slot]).items():
            key2 = keys[:slot] + (k2,) + keys[slot + 1 :]
            s = acc.get(key2, 0) + c * c2
            if s:
                acc[key2] = s
            else:
                acc.pop(key2, None)
    return TensorElement(t.rank, acc)


def expand_slot(t, slot, f, out_rank):
    """Splice a key -> TensorElement(rank r) map into one slot.

    The result has rank ``t.rank + r - 1``; ``out_rank`` makes the zero
    case unambiguous.
    """
    acc = {}
    for keys, c in t.items():
        for mid, c2 in f(keys[slot]).items():
            key2 = keys[:slot] + mid + keys[slot + 1 :]
            s = acc.get(key2, 0) + c * c2
            if s:
                acc[key2] = s
            else:
                acc.pop(key2, None)
    return TensorElement(out_rank, acc)


def permute_slots(t, sigma):
    """Left action of a permutation: slot i of the result is old slot sigma(i).

    ``sigma`` is a sequence with sigma[i-1] = sigma(i), so the result tuple is
    ``(v_{sigma^{-1}(1)}, ..., v_{sigma^{-1}(n)})`` in the usual convention.
    """
    n = t.rank
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of 1..%d" % n)
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s - 1] = i
    return TensorElement(n, {tuple(keys[inv[i]] for i in range(n)): c for keys, c in t.items()})


def swap_slots(t, i, j):
    """Transpose tensor slots i and j (0-based)."""

    def sw(keys):
        out = list(keys)
        out[i], out[j] = out[j], out[i]
        return tuple(out)

    return TensorElement(t.rank, {sw(keys): c for keys, c in t.items()})


def is_invariant_1k(t):
    """True iff the last rank-1 slots can be permuted freely without change.

    Checked on the adjacent transpositions of slots 2..rank, which generate
    the full symmetric group on those slots.
    """
    if t.rank < 2:
        raise ValueError("invariance check needs rank >= 2")
    for i in range(1, t.rank - 1):
        if swap_slots(t, i, i + 1) != t:
            return False
    return True


# ---------------------------------------------------------------------------
# exact linear algebra over the rationals


def echelon(rows):
    """Row echelon form (copies input); returns (rows, pivot column indices)."""
    mat = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def matrix_rank(rows):
    return len(echelon(rows)[0])


def nullspace(rows):
    """Basis of {x : rows . x = 0}, one vector per free column."""
    if not rows:
        return []
    cols = len(rows[0])
    ech, pivots = echelon(rows)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -ech[r][fc]
        basis.append(vec)
    return basis


def reduce_mod_rows(vec, ech, pivots):
    """Remainder of ``vec`` after elimination against echelon rows."""
    out = list(map(Fraction, vec))
    for r, c in enumerate(pivots):
        if out[c] != 0:
            f = out[c]
            out = [a - f * b for a, b in zip(out, ech[r])]
    return out


def in_row_span(vec, ech, pivots):
    return all(v == 0 for v in reduce_mod_rows(vec, ech, pivots))


def invert_matrix(rows):
    """Exact inverse of a square rational matrix; ValueError if singular."""
    n = len(rows)
    aug = [list(map(Fraction, rows[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    ech, pivots = echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in ech]


def element_vector(x, basis_index):
    """Coefficient row of an Element over an indexed basis list."""
    vec = [Fraction(0)] * len(basis_index)
    for k, c in x.items():
        vec[basis_index[k]] += c
    return vec


def rank_of_family(elements, degree):
    """Exact rank of a family of degree-homogeneous Elements.

    Raises ValueError when any member is inhomogeneous or sits in the wrong
    degree; the empty family has rank 0.
    """
    keys = set()
    for x in elements:
        if not x.is_homogeneous(degree):
            raise ValueError("inhomogeneous input: degrees %s, expected %d" % (x.degrees(), degree))
        keys.update(x.support())
    if not keys:
        return 0
    index = {k: i for i, k in enumerate(sorted(keys))}
    return matrix_rank([element_vector(x, index) for x in elements])


# ---------------------------------------------------------------------------
# coalgebra filtration


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def filtration_degree(x, coproduct, basis=None):
    """Least n with x in C_n, for C_1 = ker(coproduct) and
    C_n = preimage of sum_{i} C_i (x) C_{n-i}; ``math.inf`` if no n works.

    ``coproduct`` maps a basis key to a rank-2 TensorElement.  ``basis`` maps
    a degree to the full list of basis keys in that degree; by default the
    keys are assumed to be kernel trees and the basis is every tree over the
    labels occurring in ``x``.  Coproduct terms that fall outside the graded
    blocks (an ungraded coproduct) are kept as genuine extra coordinates, so
    such elements are correctly excluded from every C_n.
    """
    if x.is_zero():
        raise ValueError("the zero element has no filtration degree")
    if basis is None:
        letters = sorted({v.label for k in x.support() for v in tree_core.vertices(k)})

        def basis(d):
            return tree_core.enumerate_trees(letters, d)

    dmax = x.max_degree()
    bases = {d: list(basis(d)) for d in range(1, dmax + 1)}
    index = {d: {k: i for i, k in enumerate(bases[d])} for d in bases}
    deltas = {d: [coproduct(k) for k in bases[d]] for d in bases}

    def locate(key):
        d = key.degree
        i = index.get(d, {}).get(key)
        return (d, i) if i is not None else None

    # column layout per degree: the graded bidegree blocks that occur in some
    # image, then one column per stray (off-block or out-of-basis) pair
    layout = {}
    for d in bases:
        blocks = set()
        strays = {}
        for t in deltas[d]:
            for (u, v), _ in t.items():
                lu, lv = locate(u), locate(v)
                if lu is not None and lv is not None:
                    blocks.add((lu[0], lv[0]))
                elif (u, v) not in strays:
                    strays[(u, v)] = len(strays)
        layout[d] = (sorted(blocks), strays)

    def tensor_vector(t, d):
        blocks, strays = layout[d]
        offsets = {}
        total = 0
        for d1, d2 in blocks:
            offsets[(d1, d2)] = total
            total += len(bases[d1]) * len(bases[d2])
        vec = [Fraction(0)] * (total + len(strays))
        for (u, v), c in t.items():
            lu, lv = locate(u), locate(v)
            if lu is not None and lv is not None:
                vec[offsets[(lu[0], lv[0])] + lu[1] * len(bases[lv[0]]) + lv[1]] += c
            else:
                vec[total + strays[(u, v)]] += c
        return vec

    # c_space[n][d]: echelon row space of C_n within H_d
    c_space = {}
    for n in range(1, dmax + 1):
        c_space[n] = {}
        for d in bases:
            dim = len(bases[d])
            blocks, strays = layout[d]
            # span of sum_i C_i (x) C_{n-i}: zero on stray columns by design
            span = {}
            if n > 1:
                for d1, d2 in blocks:
                    span_rows = []
                    for i in range(1, n):
                        left, _ = c_space[i][d1]
                        right, _ = c_space[n - i][d2]
                        for lv in left:
                            for rv in right:
                                span_rows.append(_outer(lv, rv))
                    span[(d1, d2)] = echelon(span_rows) if span_rows else ([], [])
            reduced = []
            for t in deltas[d]:
                row = []
                full = tensor_vector(t, d)
                pos = 0
                for d1, d2 in blocks:
                    width = len(bases[d1]) * len(bases[d2])
                    vec = full[pos : pos + width]
                    pos += width
                    if n > 1:
                        ech, piv = span[(d1, d2)]
                        vec = reduce_mod_rows(vec, ech, piv)
                    row.extend(vec)
                row.extend(full[pos:])
                reduced.append(row)
            if not reduced or not reduced[0]:
                kern = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
            else:
                kern = nullspace(transpose(reduced))
            c_space[n][d] = echelon(kern) if kern else ([], [])
        ok = True
        for d in x.degrees():
            vec = element_vector(x.homogeneous_part(d), index[d])
            ech, piv = c_space[n][d]
            if not in_row_span(vec, ech, piv):
                ok = False
                break
        if ok:
            return n
    return math.inf


def _outer(u, v):
    out = []
    for a in u:
        out.extend(a * b for b in v)
    return out
