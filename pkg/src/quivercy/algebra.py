"""Finite dimensional algebras with an explicit basis and structure constants.

An Algebra is a based algebra: the first ``len(vertices)`` basis elements
are the vertex idempotents, every other basis element has a positive
degree, and the span of the positive-degree elements is the (nilpotent)
radical.  Path algebras modulo relations, opposites, tensor products and
tensor algebras all produce this shape.

Multiplication composes like functions: ``x * y`` means "y first, then x"
and is nonzero only if ``src(x) == tgt(y)``.  A basis element b acts on a
left module as a map M[src(b)] -> M[tgt(b)].
"""

from __future__ import annotations

import itertools
import random

from .errors import MalformedRelation, NotFiniteDimensional, NotAHomomorphism
from .linalg import QQ, Mat, span_basis, in_span
from .quiver import Path, Quiver, Relation


class BasisElt:
    __slots__ = ("name", "src", "tgt", "degree", "path")

    def __init__(self, name, src, tgt, degree, path=None):
        self.name = name
        self.src = src
        self.tgt = tgt
        self.degree = degree
        self.path = path  # Path instance for path-built algebras

    def __repr__(self):
        return str(self.name)


class Algebra:
    def __init__(self, field, vertices, basis, mult, name="algebra", quiver=None):
        self.field = field
        self.vertices = list(vertices)
        self.basis = basis
        self.mult = mult  # (i, j) -> {k: coeff}, only nonzero products stored
        self.name = name
        self.quiver = quiver
        self.idem = {v: i for i, v in enumerate(self.vertices)}
        for i, v in enumerate(self.vertices):
            b = basis[i]
            if not (b.src == v and b.tgt == v and b.degree == 0):
                raise ValueError("basis must start with the vertex idempotents")
        if any(b.degree <= 0 for b in basis[len(self.vertices):]):
            raise ValueError("non-idempotent basis elements need positive degree")
        self._generators = None
        self._env = None
        self._cache = {}

    @property
    def dim(self):
        return len(self.basis)

    def nvert(self):
        return len(self.vertices)

    def mul(self, i, j):
        """basis[i] * basis[j] as a sparse {index: coeff} dict."""
        return self.mult.get((i, j), {})

    def mul_elt(self, x, y):
        """Product of sparse elements {index: coeff}."""
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                prod = self.mult.get((i, j))
                if prod:
                    c = ci * cj
                    for k, ck in prod.items():
                        v = out.get(k, self.field.zero()) + c * ck
                        if v:
                            out[k] = v
                        elif k in out:
                            del out[k]
        return out

    def radical_indices(self):
        return [i for i, b in enumerate(self.basis) if b.degree > 0]

    def generators(self):
        """Indices of basis elements spanning rad/rad^2 (Gabriel arrows)."""
        if self._generators is not None:
            return self._generators
        rad = self.radical_indices()
        pos = {idx: k for k, idx in enumerate(rad)}
        rad2 = []
        for i in rad:
            for j in rad:
                prod = self.mult.get((i, j))
                if prod:
                    vec = [self.field.zero()] * len(rad)
                    for k, c in prod.items():
                        vec[pos[k]] = c
                    rad2.append(vec)
        span = span_basis(rad2, self.field)
        gens = []
        order = sorted(rad, key=lambda i: (self.basis[i].degree, i))
        for i in order:
            vec = [self.field.zero()] * len(rad)
            vec[pos[i]] = self.field.one()
            if not in_span(span, vec, self.field):
                gens.append(i)
                span = span_basis(span + [vec], self.field)
        self._generators = gens
        return gens

    def set_generators(self, gens):
        self._generators = list(gens)

    def gabriel_quiver(self):
        """Quiver with the generator elements as arrows (src/tgt swapped to
        traversal direction: a generator acts M[src] -> M[tgt])."""
        arrows = [(f"g{k}", self.basis[g].src, self.basis[g].tgt) for k, g in enumerate(self.generators())]
        return Quiver(self.vertices, arrows)

    def is_connected(self):
        return self.gabriel_quiver().is_connected()

    def check_associativity(self, rng=None, max_full=32):
        """Associativity of the structure constants; full check for small
        algebras, sampled for larger ones.  Raises on failure."""
        n = self.dim
        if n <= max_full:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = rng or random.Random(0)
            triples = (tuple(rng.randrange(n) for _ in range(3)) for _ in range(2000))
        for i, j, k in triples:
            lhs = self.mul_elt(self.mul(i, j), {k: self.field.one()})
            rhs = self.mul_elt({i: self.field.one()}, self.mul(j, k))
            if lhs != rhs:
                raise ValueError(f"associativity fails at basis triple ({i},{j},{k})")

    def elt_of_path(self, path):
        """Residue class of a Path as a sparse element (path-built only)."""
        if path in self._path_classes:
            return dict(self._path_classes[path])
        return {}

    def __repr__(self):
        return f"Algebra({self.name}, dim {self.dim})"


def semisimple_algebra(labels, field=QQ, name=None):
    """Product of copies of the ground field, one per label."""
    basis = [BasisElt(f"e[{v}]", v, v, 0) for v in labels]
    mult = {(i, i): {i: field.one()} for i in range(len(basis))}
    a = Algebra(field, labels, basis, mult, name=name or "semisimple")
    a._path_classes = {}
    return a


def build_algebra(quiver, relations, length_cap=64, field=QQ, name=None, check=True):
    """Quotient of the path algebra KQ by length-homogeneous relations.

    The basis consists of residue classes of paths, computed degree by
    degree; the class representative for each degree is chosen by a
    deterministic pivot rule on the lexicographic path order.
    """
    for r in relations:
        if not isinstance(r, Relation):
            raise MalformedRelation(f"not a Relation: {r!r}")
        if not r.is_homogeneous():
            raise MalformedRelation(f"relation {r!r} mixes path lengths")

    one = field.one()
    # all paths per length, and the reduction of each path to basis classes
    paths_by_len = [[Path(quiver, v, ()) for v in quiver.vertices]]
    basis_paths = list(paths_by_len[0])  # trivial paths are the idempotents
    reduction = {p: {p: one} for p in paths_by_len[0]}

    rels_by_len = {}
    for r in relations:
        rels_by_len.setdefault(r.length(), []).append(r)

    d = 0
    while True:
        d += 1
        prev = paths_by_len[-1]
        cur = []
        for p in prev:
            for a in quiver.out_arrows[p.end]:
                cur.append(Path(quiver, p.start, p.labels + (a.label,)))
        paths_by_len.append(cur)
        if not cur:
            break
        # group parallel paths
        blocks = {}
        for p in cur:
            blocks.setdefault((p.start, p.end), []).append(p)
        new_basis = []
        for key in sorted(blocks, key=lambda k: (str(k[0]), str(k[1]))):
            block = sorted(blocks[key], key=lambda p: tuple(str(l) for l in p.labels))
            col = {p: c for c, p in enumerate(block)}
            # span of degree-d relation consequences u * r * v inside this block
            rows = []
            for rl, rs in rels_by_len.items():
                if rl > d:
                    continue
                for r in rs:
                    for lu in range(d - rl + 1):
                        for u in paths_by_len[lu]:
                            # u is the prefix walk, continuing into r
                            if u.end != r.source or u.start != key[0]:
                                continue
                            # suffix walks v completing the degree
                            for v in paths_by_len[d - rl - lu]:
                                if v.start != r.target or v.end != key[1]:
                                    continue
                                vec = [field.zero()] * len(block)
                                for c, pp in r.terms:
                                    full = Path(quiver, u.start, u.labels + pp.labels + v.labels)
                                    vec[col[full]] = vec[col[full]] + c
                                if any(vec):
                                    rows.append(vec)
            if rows:
                R, pivots = Mat.from_rows(rows, field).rref()
            else:
                R, pivots = None, []
            pivset = set(pivots)
            free = [c for c in range(len(block)) if c not in pivset]
            for c in free:
                new_basis.append(block[c])
            # reduction of every path in the block
            for c in range(len(block)):
                p = block[c]
                if c in pivset:
                    i = pivots.index(c)
                    red = {}
                    for fc in free:
                        val = -R.a[i][fc]
                        if val:
                            red[block[fc]] = val
                    reduction[p] = red
                else:
                    reduction[p] = {p: one}
        basis_paths.extend(new_basis)
        if not new_basis:
            # nothing survives at this length, hence nothing later either
            break
        if d >= length_cap:
            raise NotFiniteDimensional(
                f"nonzero path classes persist at length {d} (cap {length_cap})"
            )

    index = {p: i for i, p in enumerate(basis_paths)}
    basis = []
    for p in basis_paths:
        deg = len(p)
        nm = f"e[{p.start}]" if deg == 0 else "*".join(str(l) for l in p.labels)
        basis.append(BasisElt(nm, p.start, p.end, deg, path=p))

    max_len = len(paths_by_len) - 1
    mult = {}
    for i, p in enumerate(basis_paths):
        for j, q in enumerate(basis_paths):
            # basis[i] * basis[j]: q traversed first, then p
            if q.end != p.start:
                continue
            if len(p) + len(q) > max_len:
                continue
            walk = Path(quiver, q.start, q.labels + p.labels)
            red = reduction.get(walk)
            if red:
                mult[(i, j)] = {index[b]: c for b, c in red.items()}

    alg = Algebra(field, quiver.vertices, basis, mult, name=name or "KQ/I", quiver=quiver)
    alg._path_classes = {p: {index[b]: c for b, c in red.items()} for p, red in reduction.items()}
    alg.max_path_length = max_len
    if check:
        alg.check_associativity()
    return alg


def path_algebra(quiver, field=QQ, name=None, length_cap=64):
    return build_algebra(quiver, [], length_cap=length_cap, field=field, name=name or "KQ")


def opposite(a: Algebra) -> Algebra:
    """Same basis, reversed multiplication and src/tgt."""
    basis = [BasisElt(b.name, b.tgt, b.src, b.degree, path=b.path) for b in a.basis]
    mult = {(j, i): dict(prod) for (i, j), prod in a.mult.items()}
    op = Algebra(a.field, a.vertices, basis, mult, name=f"{a.name}^op",
                 quiver=a.quiver.reversed() if a.quiver else None)
    op._path_classes = getattr(a, "_path_classes", {})
    op.op_of = a
    if a._generators is not None:
        op.set_generators(a._generators)
    return op


def tensor_product(a: Algebra, b: Algebra, name=None) -> Algebra:
    """a (x) b over the ground field; vertices are pairs."""
    if a.field != b.field:
        raise ValueError("mismatched ground fields")
    field = a.field
    vertices = [(u, v) for u in a.vertices for v in b.vertices]
    # order basis so that the idempotent pairs come first, matching vertices
    pairs = [(i, j) for i in range(a.nvert()) for j in range(b.nvert())]
    pairs += [
        (i, j)
        for i in range(a.dim)
        for j in range(b.dim)
        if a.basis[i].degree + b.basis[j].degree > 0
    ]
    pair_index = {p: k for k, p in enumerate(pairs)}
    basis = []
    for (i, j) in pairs:
        x, y = a.basis[i], b.basis[j]
        basis.append(
            BasisElt(
                f"{x.name}(x){y.name}",
                (x.src, y.src),
                (x.tgt, y.tgt),
                x.degree + y.degree,
            )
        )
    mult = {}
    for (i1, i2), pa in a.mult.items():
        for (j1, j2), pb in b.mult.items():
            out = {}
            for k1, c1 in pa.items():
                for k2, c2 in pb.items():
                    out[pair_index[(k1, k2)]] = c1 * c2
            mult[(pair_index[(i1, j1)], pair_index[(i2, j2)])] = out
    t = Algebra(field, vertices, basis, mult, name=name or f"{a.name}(x){b.name}")
    t.tensor_info = (a, b, pair_index)
    t._path_classes = {}
    # Gabriel arrows of a product are g(x)e and e(x)g
    ga = a.generators()
    gb = b.generators()
    gens = [pair_index[(g, j)] for g in ga for j in range(b.nvert())]
    gens += [pair_index[(i, g)] for i in range(a.nvert()) for g in gb]
    t.set_generators([g for g in gens])
    return t


def enveloping(a: Algebra) -> Algebra:
    """a (x) a^op; bimodules over a are left modules over this."""
    if a._env is None:
        aop = opposite(a)
        e = tensor_product(a, aop, name=f"{a.name}^env")
        e.env_of = a
        e.env_op = aop
        a._env = e
    return a._env


def algebra_map_from_quiver_map(a: Algebra, b: Algebra, vmap, amap):
    """Linear map a -> b sending vertex v to vmap[v] and each arrow label
    l to the arrow label amap[l], extended along paths.  Verifies that the
    result is an algebra homomorphism; raises NotAHomomorphism otherwise.

    Returns the map as {basis index of a: sparse element of b}.
    """
    if a.quiver is None or b.quiver is None:
        raise NotAHomomorphism("both algebras must be path-built")
    images = {}
    for i, e in enumerate(a.basis):
        p = e.path
        w = vmap[p.start]
        labels = tuple(amap[l] for l in p.labels)
        try:
            q = Path(b.quiver, w, labels)
        except (ValueError, KeyError) as exc:
            raise NotAHomomorphism(f"image walk of {p!r} is invalid: {exc}")
        images[i] = b.elt_of_path(q)
    one = a.field.one()
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = {}
            for k, c in a.mul(i, j).items():
                for l, cl in images[k].items():
                    v = lhs.get(l, a.field.zero()) + c * cl
                    if v:
                        lhs[l] = v
                    elif l in lhs:
                        del lhs[l]
            rhs = b.mul_elt(images[i], images[j])
            if lhs != rhs:
                raise NotAHomomorphism(
                    f"map fails multiplicativity at basis pair ({a.basis[i]}, {a.basis[j]})"
                )
    return images
