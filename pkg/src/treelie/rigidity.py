"""Rigidity structure: the splitting operators A_k, the primitive projector,
and reconstruction of a presented algebra as a free one.

A "presented algebra" is a graded vector space with finitely many basis
names per degree plus structure constants for a binary product and a binary
coproduct.  After validating the pre-Lie relation, the permutative coalgebra
relation, the product/coproduct compatibility law and connectedness, the
reconstruction builds the unique algebra morphism from the free pre-Lie
algebra on the primitives and reports, degree by degree, whether it is an
isomorphism that also intertwines the coproducts.
"""

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from treelie import kernel, tree_core
from treelie.freemod import (
    Element,
    TensorElement,
    echelon,
    element_vector,
    expand_slot,
    filtration_degree,
    invert_matrix,
    nullspace,
    parse_rational,
    rank_of_family,
    render_rational,
    swap_slots,
    tensor,
)
from treelie.nap_coalgebra import coproduct_basis as _tree_coproduct_basis
from treelie.prelie import module_action, prelie_product


class ValidationError(ValueError):
    """A presented algebra failed its hypothesis checks."""

    def __init__(self, failures):
        super().__init__(failures[0] if failures else "validation failed")
        self.failures = list(failures)


class _CacheMixin:
    def cache(self, name):
        return self._caches.setdefault(name, {})


class FreeTreeAlgebra(_CacheMixin):
    """The free pre-Lie algebra / permutative coalgebra on labeled rooted trees.

    Serves as the product/coproduct oracle for the operators below; basis
    keys are kernel trees over a fixed finite alphabet.
    """

    def __init__(self, alphabet):
        self.alphabet = tuple(sorted({tree_core.check_label(a) for a in alphabet}))
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        self._caches = {}

    def basis(self, degree):
        return tree_core.enumerate_trees(self.alphabet, degree)

    def product_basis(self, s, t):
        cache = self.cache("product")
        got = cache.get((s, t))
        if got is None:
            got = Element(kernel.prelie_counts(s, t))
            cache[(s, t)] = got
        return got

    def coproduct_basis(self, t):
        return _tree_coproduct_basis(t)

    def product(self, x, y):
        return prelie_product(x, y)

    def coproduct(self, x):
        out = TensorElement(2)
        for t, c in x.items():
            out = out + c * self.coproduct_basis(t)
        return out


@dataclass(frozen=True, order=True)
class BasisKey:
    """Named basis element of a presented algebra; ordered by (degree, name)."""

    degree: int
    name: str

    def __str__(self):
        return self.name


class PresentedAlgebra(_CacheMixin):
    """Graded algebra/coalgebra given by basis names and structure constants.

    ``generators`` maps degree -> list of names; ``product`` maps a name pair
    to a dict name -> coefficient; ``coproduct`` maps a name to a dict
    (name, name) -> coefficient.  Unspecified entries are zero.
    """

    def __init__(self, generators, product, coproduct):
        self._by_degree = {}
        self._by_name = {}
        for d in sorted(generators):
            names = list(generators[d])
            if d < 1:
                raise ValueError("generator degrees must be >= 1, got %d" % d)
            keys = []
            for name in names:
                if name in self._by_name:
                    raise ValueError("duplicate basis name %r" % name)
                key = BasisKey(int(d), str(name))
                self._by_name[name] = key
                keys.append(key)
            self._by_degree[int(d)] = keys
        self._product = {}
        for (a, b), terms in product.items():
            self._require(a), self._require(b)
            elem = Element({self._require(n): c for n, c in terms.items()})
            if not elem.is_zero():
                self._product[(a, b)] = elem
        self._coproduct = {}
        for a, terms in coproduct.items():
            self._require(a)
            tens = TensorElement(
                2, {(self._require(u), self._require(v)): c for (u, v), c in terms.items()}
            )
            if not tens.is_zero():
                self._coproduct[a] = tens
        self._caches = {}

    def _require(self, name):
        key = self._by_name.get(name)
        if key is None:
            raise ValueError("unknown basis name %r" % name)
        return key

    @property
    def max_degree(self):
        return max(self._by_degree, default=0)

    def degrees(self):
        return sorted(self._by_degree)

    def basis(self, degree):
        return list(self._by_degree.get(degree, ()))

    def key(self, name):
        return self._require(name)

    def product_basis(self, a, b):
        return self._product.get((a.name, b.name), Element())

    def coproduct_basis(self, a):
        return self._coproduct.get(a.name, TensorElement(2))

    def product(self, x, y):
        out = Element()
        for a, ca in x.items():
            for b, cb in y.items():
                out = out + (ca * cb) * self.product_basis(a, b)
        return out

    def coproduct(self, x):
        out = TensorElement(2)
        for a, c in x.items():
            out = out + c * self.coproduct_basis(a)
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self):
        gens = {str(d): [k.name for k in self._by_degree[d]] for d in sorted(self._by_degree)}
        prod = {}
        for (a, b) in sorted(self._product):
            elem = self._product[(a, b)]
            prod.setdefault(a, {})[b] = [
                [render_rational(c), k.name] for k, c in elem.sorted_items()
            ]
        cop = {}
        for a in sorted(self._coproduct):
            tens = self._coproduct[a]
            cop[a] = [
                [render_rational(c), u.name, v.name] for (u, v), c in tens.sorted_items()
            ]
        return {"generators": gens, "product": prod, "coproduct": cop}

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict):
            raise ValueError("presented algebra document must be a JSON object")
        try:
            generators = {int(d): list(names) for d, names in doc.get("generators", {}).items()}
            product = {}
            for a, by_right in doc.get("product", {}).items():
                for b, terms in by_right.items():
                    product[(a, b)] = {}
                    for c, name in terms:
                        product[(a, b)][name] = product[(a, b)].get(name, 0) + parse_rational(c)
            coproduct = {}
            for a, terms in doc.get("coproduct", {}).items():
                coproduct[a] = {}
                for c, u, v in terms:
                    coproduct[a][(u, v)] = coproduct[a].get((u, v), 0) + parse_rational(c)
        except (TypeError, ValueError, AttributeError) as exc:
            raise ValueError("malformed presented algebra document: %s" % exc) from exc
        return cls(generators, product, coproduct)

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError("invalid JSON in %s: %s" % (path, exc)) from exc
        return cls.from_json(doc)


def free_presentation(alphabet, max_degree):
    """Structure constants of the free tree algebra, truncated at ``max_degree``.

    Basis names are the canonical tree renderings.
    """
    alg = FreeTreeAlgebra(alphabet)
    generators = {d: [t.key for t in alg.basis(d)] for d in range(1, max_degree + 1)}
    product = {}
    coproduct = {}
    for d1 in range(1, max_degree + 1):
        for s in alg.basis(d1):
            cop = alg.coproduct_basis(s)
            if not cop.is_zero():
                coproduct[s.key] = {(u.key, v.key): c for (u, v), c in cop.items()}
            for d2 in range(1, max_degree - d1 + 1):
                for t in alg.basis(d2):
                    prod = alg.product_basis(s, t)
                    product[(s.key, t.key)] = {g.key: c for g, c in prod.items()}
    return PresentedAlgebra(generators, product, coproduct)


def change_of_basis(alg, seed, prefix="f"):
    """Conjugate all structure constants by a random degree-preserving
    invertible map (seeded, exact); returns a new PresentedAlgebra."""
    rng = random.Random(seed)
    degrees = alg.degrees()
    mats, invs = {}, {}
    for d in degrees:
        m = len(alg.basis(d))
        mat = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        for _ in range(3 * m):
            i, j = rng.randrange(m), rng.randrange(m)
            if i == j:
                continue
            lam = rng.choice([-2, -1, 1, 2])
            mat[j] = [a + lam * b for a, b in zip(mat[j], mat[i])]
        mats[d] = mat
        invs[d] = invert_matrix(mat)

    names = {d: ["%s%d_%d" % (prefix, d, i) for i in range(len(alg.basis(d)))] for d in degrees}
    old_index = {d: {k: i for i, k in enumerate(alg.basis(d))} for d in degrees}

    def to_new(x):
        """Element over old keys -> dict name -> coeff in the new basis."""
        out = {}
        for d in x.degrees():
            part = x.homogeneous_part(d)
            vec = element_vector(part, old_index[d])
            for i in range(len(vec)):
                c = sum(invs[d][i][j] * vec[j] for j in range(len(vec)))
                if c:
                    out[names[d][i]] = c
        return out

    def psi(d, i):
        """New basis vector i of degree d as an Element over old keys."""
        basis = alg.basis(d)
        return Element({basis[j]: mats[d][j][i] for j in range(len(basis))})

    generators = {d: list(names[d]) for d in degrees}
    product = {}
    coproduct = {}
    for d1 in degrees:
        for i in range(len(names[d1])):
            cop = alg.coproduct(psi(d1, i))
            terms = {}
            for (u, v), c in cop.items():
                left = to_new(Element.of(u, c))
                for nu, cu in left.items():
                    right = to_new(Element.of(v))
                    for nv, cv in right.items():
                        pair = (nu, nv)
                        terms[pair] = terms.get(pair, 0) + cu * cv
            if terms:
                coproduct[names[d1][i]] = terms
            for d2 in degrees:
                if d1 + d2 > alg.max_degree:
                    continue
                for j in range(len(names[d2])):
                    prod = alg.product(psi(d1, i), psi(d2, j))
                    product[(names[d1][i], names[d2][j])] = to_new(prod)
    return PresentedAlgebra(generators, product, coproduct)


# ---------------------------------------------------------------------------
# validation of the hypotheses


def validate(alg, max_degree, limit=5):
    """Check grading, the pre-Lie relation, the permutative coalgebra relation,
    the compatibility law and connectedness on all basis data up to
    ``max_degree``.  Returns a list of failure descriptions (empty = valid).
    """
    failures = []

    def fail(msg):
        if len(failures) < limit:
            failures.append(msg)

    basis_upto = [b for d in range(1, max_degree + 1) for b in alg.basis(d)]

    # grading of the structure constants
    for a in basis_upto:
        for (u, v), _ in alg.coproduct_basis(a).items():
            if u.degree + v.degree != a.degree:
                fail("grading: coproduct of %s has term %s (x) %s" % (a, u, v))
    for a in basis_upto:
        for b in basis_upto:
            if a.degree + b.degree > max_degree:
                continue
            for t, _ in alg.product_basis(a, b).items():
                if t.degree != a.degree + b.degree:
                    fail("grading: product %s o %s has term %s" % (a, b, t))
    if failures:
        return failures

    # compatibility: Delta(a o b) = a (x) b + Delta(a) o b
    for a in basis_upto:
        for b in basis_upto:
            if a.degree + b.degree > max_degree:
                continue
            lhs = alg.coproduct(alg.product_basis(a, b))
            rhs = tensor(Element.of(a), Element.of(b)) + module_action(
                alg.coproduct_basis(a), Element.of(b), product=alg.product
            )
            if lhs != rhs:
                fail("distributive law fails at (%s, %s)" % (a, b))

    # permutative coalgebra relation (Id - swap23)(Delta (x) Id)Delta = 0
    for a in basis_upto:
        t3 = expand_slot(alg.coproduct_basis(a), 0, alg.coproduct_basis, 3)
        if swap_slots(t3, 1, 2) != t3:
            fail("coalgebra relation fails at %s" % a)
    if failures:
        return failures

    # pre-Lie relation on basis triples
    for a in basis_upto:
        for b in basis_upto:
            if a.degree + b.degree >= max_degree:
                continue
            ab = alg.product_basis(a, b)
            for c in basis_upto:
                if a.degree + b.degree + c.degree > max_degree:
                    continue
                ac = alg.product_basis(a, c)
                assoc1 = alg.product(ab, Element.of(c)) - alg.product(
                    Element.of(a), alg.product_basis(b, c)
                )
                assoc2 = alg.product(ac, Element.of(b)) - alg.product(
                    Element.of(a), alg.product_basis(c, b)
                )
                if assoc1 != assoc2:
                    fail("pre-Lie relation fails at (%s, %s, %s)" % (a, b, c))

    # connectedness: finite filtration degree for every basis element
    for a in basis_upto:
        n = filtration_degree(Element.of(a), alg.coproduct_basis, alg.basis)
        if n is math.inf:
            fail("connectedness fails at %s" % a)
    return failures


# ---------------------------------------------------------------------------
# the operators A_k, U_k and the projector


def _ak_tuple(keys, alg, cache):
    got = cache.get(keys)
    if got is None:
        k = len(keys)
        if k == 1:
            got = Element.of(keys[0])
        else:
            got = Element()
            for l in range(1, k):
                left = _ak_tuple(keys[:l], alg, cache)
                right = _ak_tuple(keys[l:], alg, cache)
                got = got + math.comb(k - 2, l - 1) * alg.product(left, right)
        cache[keys] = got
    return got


def ak_apply(k, x, alg):
    """Apply A_k to a rank-k tensor: A_1 = Id, A_2 = the product, and
    A_{k+1} = sum_l binom(k-1, l-1) mu(A_l (x) A_{k+1-l})."""
    if x.rank != k:
        raise ValueError("rank mismatch: A_%d applied to rank %d" % (k, x.rank))
    cache = alg.cache("ak")
    out = Element()
    for keys, c in x.items():
        out = out + c * _ak_tuple(keys, alg, cache)
    return out


def uk_apply(x, alg):
    """Apply U_k (k = rank of x >= 2): sum_l binom(k-2, l-1) A_l (x) A_{k-l},
    so that mu . U_k = A_k."""
    k = x.rank
    if k < 2:
        raise ValueError("U_k needs rank >= 2, got %d" % k)
    cache = alg.cache("ak")
    out = TensorElement(2)
    for keys, c in x.items():
        for l in range(1, k):
            left = _ak_tuple(keys[:l], alg, cache)
            right = _ak_tuple(keys[l:], alg, cache)
            out = out + (c * math.comb(k - 2, l - 1)) * tensor(left, right)
    return out


def mu_of_tensor(w, alg):
    """Apply the product to each pair of a rank-2 tensor."""
    if w.rank != 2:
        raise ValueError("expected rank 2, got %d" % w.rank)
    out = Element()
    for (u, v), c in w.items():
        out = out + c * alg.product_basis(u, v)
    return out


def _delta_iterates(t, alg):
    """Yield (k, Delta^k(t)) for k = 1, 2, ... until the iterate vanishes."""
    cur = TensorElement(1, {(t,): 1})
    k = 0
    while True:
        k += 1
        cur = expand_slot(cur, 0, alg.coproduct_basis, k + 1)
        if cur.is_zero():
            return
        if k > t.degree:
            raise ValidationError(
                ["coproduct iterates of %s do not terminate; the coalgebra is not connected" % t]
            )
        yield k, cur


def idempotent_e(x, alg):
    """The projector e(x) = x + sum_k ((-1)^k / k!) A_{k+1}(Delta^k(x)).

    The sum is finite because the iterated coproduct of a connected element
    vanishes beyond its filtration degree.  Basis values are cached on the
    algebra, so linear extension is cheap.
    """
    cache = alg.cache("e")
    out = Element()
    for t, c in x.items():
        got = cache.get(t)
        if got is None:
            got = Element.of(t)
            for k, dk in _delta_iterates(t, alg):
                got = got + Fraction((-1) ** k, math.factorial(k)) * ak_apply(k + 1, dk, alg)
            cache[t] = got
        out = out + c * got
    return out


def mu_image_witness(x, alg):
    """Rank-2 tensor w with mu(w) = x - e(x), built from the U operators."""
    out = TensorElement(2)
    for t, c in x.items():
        for k, dk in _delta_iterates(t, alg):
            out = out + (-c * Fraction((-1) ** k, math.factorial(k))) * uk_apply(dk, alg)
    return out


def primitives_basis(alg, degree):
    """Echelonized basis of the image of e on the degree-``degree`` piece."""
    basis = alg.basis(degree)
    if not basis:
        return []
    index = {k: i for i, k in enumerate(basis)}
    rows = []
    for b in basis:
        img = idempotent_e(Element.of(b), alg)
        if not img.is_homogeneous(degree):
            raise ValueError("projector broke the grading at %s" % b)
        rows.append(element_vector(img, index))
    ech, _ = echelon(rows)
    return [Element({basis[j]: row[j] for j in range(len(basis))}) for row in ech]


def decomposables_rank(alg, degree):
    """Rank of the span of all products landing in the given degree."""
    products = []
    for d1 in range(1, degree):
        for a in alg.basis(d1):
            for b in alg.basis(degree - d1):
                p = alg.product_basis(a, b)
                if not p.is_zero():
                    products.append(p)
    return rank_of_family(products, degree)


# ---------------------------------------------------------------------------
# heap-ordered expansion of A_k


@dataclass(frozen=True)
class HeapCoefficients:
    """Expansion of A_k over heap-ordered trees: A_k = sum_U c(U) . U."""

    arity: int
    coeffs: dict = field(compare=False)

    def evaluate(self, letters):
        """Element obtained by relabeling each tree's vertex i with letters[i-1]."""
        out = Element()
        for u, c in self.coeffs.items():
            out = out + c * Element.of(u.to_rooted(letters))
        return out


def heap_coefficients(k):
    """Coefficients read off by expanding A_k on k distinct ordered generators
    in the free tree algebra."""
    if k < 1:
        raise ValueError("arity must be >= 1, got %d" % k)
    letters = ["x%d" % i for i in range(1, k + 1)]
    alg = FreeTreeAlgebra(letters)
    x = TensorElement.of(tuple(kernel.leaf(a) for a in letters))
    expanded = ak_apply(k, x, alg)
    ids = {a: i + 1 for i, a in enumerate(letters)}
    coeffs = {}
    for t, c in expanded.items():
        coeffs[tree_core.labeled_from_rooted(t, ids)] = c
    return HeapCoefficients(k, coeffs)


def graft_labeled(host, v, shoot):
    """Graft a labeled tree onto vertex v of another, shifting the shoot's
    labels above the host's."""
    n = host.n
    parent = list(host.parent) + [0] * shoot.n
    for i, p in enumerate(shoot.parent):
        parent[n + i] = v if p == 0 else n + p
    return tree_core.LabeledTree(tuple(parent))


def heap_coefficients_recursive(k):
    """The coefficients by the inductive rule: summing, over splits l,
    binom(k-2, l-1) c(T) c(T') <T o T', U> with T' relabeled above T.

    Grafting a shifted heap-ordered tree anywhere on a heap-ordered tree is
    again heap-ordered, so the support stays inside the heap-ordered trees.
    """
    if k < 1:
        raise ValueError("arity must be >= 1, got %d" % k)
    if k == 1:
        return HeapCoefficients(1, {tree_core.LabeledTree((0,)): 1})
    coeffs = {}
    for l in range(1, k):
        weight = math.comb(k - 2, l - 1)
        left = heap_coefficients_recursive(l)
        right = heap_coefficients_recursive(k - l)
        for t, ct in left.coeffs.items():
            for tp, ctp in right.coeffs.items():
                for v in range(1, t.n + 1):
                    u = graft_labeled(t, v, tp)
                    coeffs[u] = coeffs.get(u, 0) + weight * ct * ctp
    return HeapCoefficients(k, {u: c for u, c in coeffs.items() if c})


# ---------------------------------------------------------------------------
# reconstruction


@dataclass
class DegreeReport:
    degree: int
    algebra_dim: int
    tree_count: int
    image_rank: int
    coalgebra_ok: bool

    @property
    def isomorphic(self):
        return self.algebra_dim == self.tree_count == self.image_rank and self.coalgebra_ok


@dataclass
class ReconstructionReport:
    max_degree: int
    validation_failures: list
    primitive_dims: dict
    degrees: list
    kernel_witness: str = None

    @property
    def ok(self):
        return not self.validation_failures and all(d.isomorphic for d in self.degrees)

    def dims(self):
        return [d.algebra_dim for d in self.degrees]

    def summary(self):
        lines = []
        if self.validation_failures:
            for f in self.validation_failures:
                lines.append("validation failed: %s" % f)
            return "\n".join(lines)
        lines.append("validation: ok (degree <= %d)" % self.max_degree)
        prim = ", ".join(
            "degree %d: %d" % (d, n) for d, n in sorted(self.primitive_dims.items()) if n
        )
        lines.append("primitives: %s" % (prim or "none"))
        for rep in self.degrees:
            lines.append(
                "degree %d: algebra dim %d, tree monomials %d, image rank %d, coalgebra %s -> %s"
                % (
                    rep.degree,
                    rep.algebra_dim,
                    rep.tree_count,
                    rep.image_rank,
                    "ok" if rep.coalgebra_ok else "FAIL",
                    "isomorphic" if rep.isomorphic else "NOT isomorphic",
                )
            )
        if self.kernel_witness:
            lines.append("kernel witness: %s" % self.kernel_witness)
        if self.ok:
            lines.append(
                "isomorphism up to degree %d, dims %s"
                % (self.max_degree, ",".join(str(d) for d in self.dims()))
            )
        else:
            lines.append("reconstruction failed")
        return "\n".join(lines)


def _weighted_trees(letter_degrees, weight):
    """All trees over the letter alphabet whose vertex degrees sum to ``weight``."""
    letters = sorted(letter_degrees)
    memo = {}

    def upto(w):
        got = memo.get(w)
        if got is None:
            got = []
            for v in range(1, w + 1):
                got.extend(exact(v))
            memo[w] = got
        return got

    def exact(w):
        out = set()
        for a in letters:
            d = letter_degrees[a]
            if d > w:
                continue
            if d == w:
                out.add(kernel.leaf(a))
                continue
            pool = upto(w - d)
            for combo in _weighted_multisets(pool, letter_degrees, 0, w - d):
                out.add(kernel.node(a, combo))
        return sorted(out)

    return exact(weight)


def _weighted_multisets(pool, letter_degrees, start, budget):
    if budget == 0:
        yield ()
        return
    for i in range(start, len(pool)):
        t = pool[i]
        w = _tree_weight(t, letter_degrees)
        if w > budget:
            continue
        for rest in _weighted_multisets(pool, letter_degrees, i, budget - w):
            yield (t,) + rest


def _tree_weight(t, letter_degrees):
    return letter_degrees[t.label] + sum(_tree_weight(c, letter_degrees) for c in t.children)


def phi_by_substitution(tree, leaf_map):
    """Direct evaluation when every primitive is represented by a single
    letter: relabel each vertex through ``leaf_map`` (label -> label)."""
    return kernel.node(leaf_map[tree.label], [phi_by_substitution(c, leaf_map) for c in tree.children])


def _phi(tree, reps, alg, memo):
    """Evaluate a tree monomial in ``alg`` by peeling root subtrees.

    A root with subtrees is rewritten as (tree minus its last subtree) o
    (last subtree) minus the grafting corrections, which recurses strictly
    downward in (degree, arity).
    """
    got = memo.get(tree)
    if got is not None:
        return got
    if tree.arity == 0:
        out = reps[tree.label]
    else:
        children = tree.children
        head = kernel.node(tree.label, children[:-1])
        tail = children[-1]
        out = alg.product(_phi(head, reps, alg, memo), _phi(tail, reps, alg, memo))
        for i in range(len(children) - 1):
            correction = prelie_product(Element.of(children[i]), Element.of(tail))
            for s, c in correction.items():
                smaller = kernel.node(tree.label, children[:i] + (s,) + children[i + 1 : -1])
                out = out - c * _phi(smaller, reps, alg, memo)
    memo[tree] = out
    return out


def reconstruct(alg, max_degree):
    """Validate ``alg`` and rebuild it from its primitives as a free algebra.

    Returns a ReconstructionReport; no reconstruction is attempted when
    validation fails.
    """
    failures = validate(alg, max_degree)
    if failures:
        return ReconstructionReport(max_degree, failures, {}, [])

    reps = {}
    letter_degrees = {}
    primitive_dims = {}
    for d in range(1, max_degree + 1):
        prims = primitives_basis(alg, d)
        primitive_dims[d] = len(prims)
        for i, p in enumerate(prims):
            label = "p%d_%d" % (d, i)
            reps[label] = p
            letter_degrees[label] = d

    # direct substitution cross-check applies when every primitive is a
    # single basis key that is itself a one-vertex tree
    leaf_map = {}
    for label, rep in reps.items():
        items = list(rep.items())
        if (
            len(items) == 1
            and items[0][1] == 1
            and isinstance(items[0][0], kernel.Tree)
            and items[0][0].arity == 0
        ):
            leaf_map[label] = items[0][0].label
        else:
            leaf_map = None
            break

    memo = {}
    degrees = []
    witness = None
    for n in range(1, max_degree + 1):
        trees = _weighted_trees(letter_degrees, n) if letter_degrees else []
        images = []
        coalgebra_ok = True
        for t in trees:
            img = _phi(t, reps, alg, memo)
            if leaf_map is not None and img != Element.of(phi_by_substitution(t, leaf_map)):
                raise RuntimeError("substitution cross-check failed at %s" % t)
            images.append(img)
            # coalgebra morphism: (phi (x) phi) Delta = Delta_alg phi
            lhs = TensorElement(2)
            for (u, v), c in _tree_coproduct_basis(t).items():
                lhs = lhs + c * tensor(_phi(u, reps, alg, memo), _phi(v, reps, alg, memo))
            if lhs != alg.coproduct(img):
                coalgebra_ok = False
        dim = len(alg.basis(n))
        rank = rank_of_family(images, n)
        rep = DegreeReport(n, dim, len(trees), rank, coalgebra_ok)
        degrees.append(rep)
        if rank < len(trees) and witness is None:
            witness = _kernel_witness(trees, images, n, alg)
    return ReconstructionReport(max_degree, [], primitive_dims, degrees, witness)


def _kernel_witness(trees, images, degree, alg):
    keys = set()
    for x in images:
        keys.update(x.support())
    if not keys:
        return "1 * %s" % trees[0] if trees else None
    index = {k: i for i, k in enumerate(sorted(keys))}
    rows = [element_vector(x, index) for x in images]
    null = nullspace([list(col) for col in zip(*rows)])
    if not null:
        return None
    combo = null[0]
    parts = []
    for c, t in zip(combo, trees):
        if c:
            parts.append("%s * %s" % (render_rational(c), t))
    return " + ".join(parts)
