"""Finite dimensional left modules over a based algebra, and bimodules.

A Module stores one vector space dimension per algebra vertex and one
matrix per basis element that acts nontrivially; the matrix for a basis
element b is a map M[src(b)] -> M[tgt(b)].  Idempotents act as identity
on their own vertex and are not stored.
"""

from __future__ import annotations

import random

import sympy

from .algebra import Algebra, opposite, enveloping
from .errors import NotAHomomorphism, UNDECIDED
from .linalg import Mat, span_basis


class Module:
    def __init__(self, alg: Algebra, dims, act, name="M", check=False):
        self.alg = alg
        self.dims = dict(dims)
        # keep only the nonzero action matrices
        self.act = {i: m for i, m in act.items() if not m.is_zero()}
        self.name = name
        if check:
            self.check()

    def act_mat(self, i):
        m = self.act.get(i)
        if m is not None:
            return m
        b = self.alg.basis[i]
        if b.degree == 0:
            return Mat.identity(self.dims[b.src], self.alg.field)
        return Mat.zero(self.dims[b.tgt], self.dims[b.src], self.alg.field)

    def elt_act(self, elt):
        """Action of a sparse algebra element, as {(tgt, src): Mat} summed
        per (tgt, src) vertex pair."""
        out = {}
        for i, c in elt.items():
            b = self.alg.basis[i]
            m = self.act_mat(i).scale(c)
            key = (b.tgt, b.src)
            out[key] = out[key] + m if key in out else m
        return out

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def dim_vector(self):
        return tuple(self.dims[v] for v in self.alg.vertices)

    def is_zero(self):
        return self.total_dim == 0

    def check(self):
        """Verify the module axioms on the multiplication table."""
        f = self.alg.field
        for i, b in enumerate(self.alg.basis):
            m = self.act_mat(i)
            if m.rows != self.dims[b.tgt] or m.cols != self.dims[b.src]:
                raise ValueError(f"action of {b} has wrong shape")
        for (i, j), prod in self.alg.mult.items():
            bi, bj = self.alg.basis[i], self.alg.basis[j]
            if bj.src != bi.src or False:
                pass
            if self.alg.basis[i].src != self.alg.basis[j].tgt:
                continue
            lhs = self.act_mat(i) * self.act_mat(j)
            rhs = Mat.zero(lhs.rows, lhs.cols, f)
            for k, c in prod.items():
                rhs = rhs + self.act_mat(k).scale(c)
            if lhs != rhs:
                raise ValueError(f"action breaks product {bi} * {bj}")

    def __repr__(self):
        return f"Module({self.name}, dims {self.dim_vector()})"


class Morphism:
    def __init__(self, src: Module, tgt: Module, mats, check=False):
        self.src = src
        self.tgt = tgt
        self.mats = mats  # vertex -> Mat(tgt.dims[v] x src.dims[v])
        if check:
            self.check()

    def check(self):
        for g in self.src.alg.generators():
            b = self.src.alg.basis[g]
            lhs = self.tgt.act_mat(g) * self.mats[b.src]
            rhs = self.mats[b.tgt] * self.src.act_mat(g)
            if lhs != rhs:
                raise NotAHomomorphism(f"square fails at generator {b}")

    def compose(self, other):
        """self after other."""
        return Morphism(other.src, self.tgt, {v: self.mats[v] * other.mats[v] for v in self.mats})

    def add(self, other):
        return Morphism(self.src, self.tgt, {v: self.mats[v] + other.mats[v] for v in self.mats})

    def scale(self, c):
        return Morphism(self.src, self.tgt, {v: self.mats[v].scale(c) for v in self.mats})

    def is_zero(self):
        return all(m.is_zero() for m in self.mats.values())

    def is_iso(self):
        return all(
            self.mats[v].rows == self.mats[v].cols and self.mats[v].is_invertible()
            for v in self.mats
        )

    def __repr__(self):
        return f"Morphism({self.src.name} -> {self.tgt.name})"


def zero_module(alg, name="0"):
    return Module(alg, {v: 0 for v in alg.vertices}, {}, name=name)


def simple_module(alg, v, name=None):
    dims = {u: (1 if u == v else 0) for u in alg.vertices}
    return Module(alg, dims, {}, name=name or f"S[{v}]")


def projective_module(alg, v, name=None):
    """P_v = (algebra) e_v, spanned by basis elements with src == v."""
    by_vertex = {u: [] for u in alg.vertices}
    for i, b in enumerate(alg.basis):
        if b.src == v:
            by_vertex[b.tgt].append(i)
    pos = {}
    for u, lst in by_vertex.items():
        for c, i in enumerate(lst):
            pos[i] = c
    dims = {u: len(lst) for u, lst in by_vertex.items()}
    act = {}
    f = alg.field
    for j, bj in enumerate(alg.basis):
        if bj.degree == 0:
            continue
        m = Mat.zero(dims[bj.tgt], dims[bj.src], f)
        for col, i in enumerate(by_vertex[bj.src]):
            for k, c in alg.mul(j, i).items():
                m.a[pos[k]][col] = c
        act[j] = m
    M = Module(alg, dims, act, name=name or f"P[{v}]")
    M.basis_indices = by_vertex  # algebra basis element at each coordinate
    return M


def injective_module(alg, v, name=None):
    """I_v, the dual of e_v (algebra), spanned by duals of basis elements
    with tgt == v."""
    by_vertex = {u: [] for u in alg.vertices}
    for i, b in enumerate(alg.basis):
        if b.tgt == v:
            by_vertex[b.src].append(i)
    pos = {}
    for u, lst in by_vertex.items():
        for c, i in enumerate(lst):
            pos[i] = c
    dims = {u: len(lst) for u, lst in by_vertex.items()}
    act = {}
    f = alg.field
    for j, bj in enumerate(alg.basis):
        if bj.degree == 0:
            continue
        # dual basis xi_b (b: src -> v) goes to the functional x |-> coeff
        # of b in x * b_j, supported on x with src == tgt(b_j)
        m = Mat.zero(dims[bj.tgt], dims[bj.src], f)
        for col, b in enumerate(by_vertex[bj.src]):
            for row, x in enumerate(by_vertex[bj.tgt]):
                c = alg.mul(x, j).get(b)
                if c:
                    m.a[row][col] = c
        act[j] = m
    M = Module(alg, dims, act, name=name or f"I[{v}]")
    M.basis_indices = by_vertex
    return M


def regular_module(alg, name=None):
    summands = [projective_module(alg, v) for v in alg.vertices]
    M, incs, projs = direct_sum(summands, name=name or "reg")
    return M


def dual_module(M: Module, op=None, name=None):
    """k-dual as a left module over the opposite algebra."""
    op = op or opposite(M.alg)
    act = {i: m.transpose() for i, m in M.act.items()}
    return Module(op, dict(M.dims), act, name=name or f"D({M.name})")


def direct_sum(mods, name=None):
    """Returns (sum, inclusions, projections)."""
    if not mods:
        raise ValueError("empty direct sum")
    alg = mods[0].alg
    f = alg.field
    dims = {v: sum(m.dims[v] for m in mods) for v in alg.vertices}
    offs = []
    run = {v: 0 for v in alg.vertices}
    for m in mods:
        offs.append(dict(run))
        for v in alg.vertices:
            run[v] += m.dims[v]
    act = {}
    keys = set()
    for m in mods:
        keys.update(m.act)
    for i in keys:
        act[i] = Mat.block_diag([m.act_mat(i) for m in mods], f)
    total = Module(alg, dims, act, name=name or "(+)".join(m.name for m in mods))
    incs, projs = [], []
    for k, m in enumerate(mods):
        im, pm = {}, {}
        for v in alg.vertices:
            inc = Mat.zero(dims[v], m.dims[v], f)
            prj = Mat.zero(m.dims[v], dims[v], f)
            for r in range(m.dims[v]):
                inc.a[offs[k][v] + r][r] = f.one()
                prj.a[r][offs[k][v] + r] = f.one()
            im[v] = inc
            pm[v] = prj
        incs.append(Morphism(m, total, im))
        projs.append(Morphism(total, m, pm))
    return total, incs, projs


def _sub_from_columns(N: Module, cols_by_vertex, name="sub"):
    """Submodule spanned by the given column vectors (assumed invariant).
    Returns (sub, inclusion)."""
    f = N.alg.field
    inc = {}
    dims = {}
    for v in N.alg.vertices:
        cols = cols_by_vertex.get(v, [])
        m = Mat.zero(N.dims[v], len(cols), f)
        for j, c in enumerate(cols):
            for i in range(N.dims[v]):
                m.a[i][j] = c[i]
        inc[v] = m
        dims[v] = len(cols)
    act = {}
    for i in list(N.act):
        b = N.alg.basis[i]
        rhs = N.act_mat(i) * inc[b.src]
        sol = inc[b.tgt].solve_matrix(rhs)
        if sol is None:
            raise ValueError("given columns do not span a submodule")
        act[i] = sol
    S = Module(N.alg, dims, act, name=name)
    return S, Morphism(S, N, inc)


def kernel(fm: Morphism, name=None):
    cols = {v: fm.mats[v].kernel_basis() for v in fm.mats}
    return _sub_from_columns(fm.src, cols, name=name or f"ker({fm.src.name})")


def image(fm: Morphism, name=None):
    cols = {v: fm.mats[v].column_space_basis() for v in fm.mats}
    return _sub_from_columns(fm.tgt, cols, name=name or "im")


def quotient(N: Module, cols_by_vertex, name="quot"):
    """Quotient of N by the invariant subspace spanned by the given column
    vectors.  Returns (Q, projection)."""
    f = N.alg.field
    proj = {}
    sect = {}
    dims = {}
    for v in N.alg.vertices:
        rows = span_basis([list(c) for c in cols_by_vertex.get(v, [])], f)
        if rows:
            R, pivots = Mat.from_rows(rows, f).rref()
        else:
            R, pivots = None, []
        pivset = set(pivots)
        free = [j for j in range(N.dims[v]) if j not in pivset]
        dims[v] = len(free)
        p = Mat.zero(len(free), N.dims[v], f)
        for r, j in enumerate(free):
            p.a[r][j] = f.one()
        for i, pc in enumerate(pivots):
            for r, j in enumerate(free):
                if R.a[i][j]:
                    p.a[r][pc] = -R.a[i][j]
        s = Mat.zero(N.dims[v], len(free), f)
        for r, j in enumerate(free):
            s.a[j][r] = f.one()
        proj[v] = p
        sect[v] = s
    act = {}
    for i in list(N.act):
        b = N.alg.basis[i]
        act[i] = proj[b.tgt] * (N.act_mat(i) * sect[b.src])
    Q = Module(N.alg, dims, act, name=name)
    return Q, Morphism(N, Q, proj)


def cokernel(fm: Morphism, name=None):
    cols = {v: [fm.mats[v].column(j) for j in range(fm.mats[v].cols)] for v in fm.mats}
    return quotient(fm.tgt, cols, name=name or "coker")


def radical_submodule(M: Module):
    """rad M = (radical of the algebra) . M, with its inclusion."""
    cols = {v: [] for v in M.alg.vertices}
    for g in M.alg.radical_indices():
        b = M.alg.basis[g]
        m = M.act_mat(g)
        for j in range(m.cols):
            c = m.column(j)
            if any(c):
                cols[b.tgt].append(c)
    for v in cols:
        cols[v] = [list(r) for r in span_basis(cols[v], M.alg.field)]
        # span_basis returns rows; reuse them as column coordinates
    return _sub_from_columns(M, cols, name=f"rad({M.name})")


def top_of(M: Module):
    """M / rad M, with the projection."""
    cols = {v: [] for v in M.alg.vertices}
    for g in M.alg.radical_indices():
        b = M.alg.basis[g]
        m = M.act_mat(g)
        for j in range(m.cols):
            c = m.column(j)
            if any(c):
                cols[b.tgt].append(c)
    return quotient(M, cols, name=f"top({M.name})")


def socle_vertices(M: Module):
    """Dimension of the socle at each vertex (vectors killed by the radical)."""
    f = M.alg.field
    out = {}
    for v in M.alg.vertices:
        rows = []
        for g in M.alg.radical_indices():
            b = M.alg.basis[g]
            if b.src != v:
                continue
            rows.extend(M.act_mat(g).a)
        if rows:
            out[v] = len(Mat.from_rows(rows, f, ncols=M.dims[v]).kernel_basis())
        else:
            out[v] = M.dims[v]
    return out


def hom(M: Module, N: Module):
    """Basis of Hom(M, N) as a list of Morphisms."""
    alg = M.alg
    f = alg.field
    verts = alg.vertices
    off = {}
    n = 0
    for v in verts:
        off[v] = n
        n += N.dims[v] * M.dims[v]
    if n == 0:
        return []
    rows = []
    for g in alg.generators():
        b = alg.basis[g]
        u, w = b.src, b.tgt
        NA = N.act_mat(g)
        MA = M.act_mat(g)
        for r in range(N.dims[w]):
            for c in range(M.dims[u]):
                row = [f.zero()] * n
                for k in range(N.dims[u]):
                    if NA.a[r][k]:
                        row[off[u] + k * M.dims[u] + c] += NA.a[r][k]
                for k in range(M.dims[w]):
                    if MA.a[k][c]:
                        row[off[w] + r * M.dims[w] + k] -= MA.a[k][c]
                if any(row):
                    rows.append(row)
    if rows:
        kb = Mat.from_rows(rows, f).kernel_basis()
    else:
        kb = [[f.zero()] * n for _ in range(0)]
        kb = Mat.zero(0, n, f).kernel_basis()
    out = []
    for vec in kb:
        mats = {}
        for v in verts:
            m = Mat.zero(N.dims[v], M.dims[v], f)
            for r in range(N.dims[v]):
                for c in range(M.dims[v]):
                    m.a[r][c] = vec[off[v] + r * M.dims[v] + c]
            mats[v] = m
        out.append(Morphism(M, N, mats))
    return out


def hom_dim(M: Module, N: Module):
    return len(hom(M, N))


def _random_combo(mors, rng, bound=10**6):
    f = mors[0].src.alg.field
    out = mors[0].scale(f.of(rng.randint(-bound, bound)))
    for m in mors[1:]:
        out = out.add(m.scale(f.of(rng.randint(-bound, bound))))
    return out


def is_isomorphic(M: Module, N: Module, seed=0, tries=64):
    """Isomorphism test.  A found isomorphism certifies True; after the
    search fails the dimension bookkeeping makes False reliable (the
    invertible locus in Hom is open, random integer points miss it only
    with negligible probability)."""
    if M.dim_vector() != N.dim_vector():
        return False
    if M.total_dim == 0:
        return True
    H = hom(M, N)
    if not H:
        return False
    for h in H:
        if h.is_iso():
            return True
    rng = random.Random(seed)
    for _ in range(tries):
        if _random_combo(H, rng).is_iso():
            return True
    return False


def _min_poly(blocks, f):
    """Minimal polynomial (coeff list, low degree first, monic) of the
    block-diagonal endomorphism given per-vertex square matrices."""
    big = Mat.block_diag([b for b in blocks if b.rows], f)
    n = big.rows
    if n == 0:
        return [f.one()]
    # Krylov on the flattened powers
    powers = [Mat.identity(n, f)]
    vecs = [[x for row in powers[0].a for x in row]]
    while True:
        nxt = powers[-1] * big
        v = [x for row in nxt.a for x in row]
        A = Mat.from_rows(vecs, f).transpose()
        sol = A.solve(v)
        if sol is not None:
            coeffs = [-c for c in sol] + [f.one()]
            return coeffs
        powers.append(nxt)
        vecs.append(v)


def _factor_poly(coeffs):
    """Irreducible factors over Q via sympy; returns [(coeff list, mult)]."""
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(str(c)) * x**i for i, c in enumerate(coeffs))
    _, facs = sympy.Poly(expr, x).factor_list()
    out = []
    for p, m in facs:
        cl = [sympy.Rational(c) for c in reversed(sympy.Poly(p, x).all_coeffs())]
        out.append((cl, m))
    return out


def _poly_of_morphism(fm: Morphism, coeffs):
    """p(f) as a Morphism, p given low-to-high over sympy Rationals."""
    alg = fm.src.alg
    fl = alg.field
    mats = {}
    for v in alg.vertices:
        m = fm.mats[v]
        acc = Mat.zero(m.rows, m.rows, fl)
        pw = Mat.identity(m.rows, fl)
        for c in coeffs:
            if c:
                acc = acc + pw.scale(fl.of(int(sympy.numer(c)), int(sympy.denom(c))))
            pw = pw * m
        mats[v] = acc
    return Morphism(fm.src, fm.src, mats)


def _end_is_local(M: Module, E):
    """True if End(M)/rad is one dimensional (then M is indecomposable
    over any extension field).  Uses the trace form, valid in char 0."""
    f = M.alg.field
    n = len(E)
    # multiplication table of End in the basis E
    big = [Mat.block_diag([e.mats[v] for v in M.alg.vertices if M.dims[v]], f) for e in E]
    flat = [[x for row in b.a for x in row] for b in big]
    B = Mat.from_rows(flat, f).transpose()
    coords = []
    for i in range(n):
        for j in range(n):
            prod = big[i] * big[j]
            v = [x for row in prod.a for x in row]
            coords.append((i, j, B.solve(v)))
    table = {}
    for i, j, sol in coords:
        table[(i, j)] = sol
    # trace of left multiplication by x*y, as a bilinear form
    gram = Mat.zero(n, n, f)
    for i in range(n):
        for j in range(n):
            xy = table[(i, j)]
            tr = f.zero()
            for k in range(n):
                s = f.zero()
                for l in range(n):
                    s += xy[l] * table[(l, k)][k]
                tr += s
            gram.a[i][j] = tr
    radical_dim = len(gram.kernel_basis())
    return n - radical_dim == 1


def decompose(M: Module, seed=0, tries=40):
    """Split M into indecomposable summands.

    Returns (summands, certified) where summands is a list of Modules and
    certified is True when every piece has local endomorphism ring, or
    UNDECIDED when some piece resisted both splitting and certification.
    """
    if M.total_dim == 0:
        return [], True
    E = hom(M, M)
    if len(E) == 1:
        return [M], True
    rng = random.Random(seed)
    candidates = list(E)
    for _ in range(tries):
        candidates.append(_random_combo(E, rng, bound=50))
    for fm in candidates:
        blocks = [fm.mats[v] for v in M.alg.vertices]
        mp = _min_poly(blocks, M.alg.field)
        facs = _factor_poly(mp)
        if len(facs) < 2:
            continue
        summands = []
        certified = True
        for coeffs, mult in facs:
            # power the factor enough to reach the generalized kernel
            pc = [sympy.Rational(c) for c in coeffs]
            pw = [sympy.Rational(1)]
            for _ in range(mult):
                new = [sympy.Rational(0)] * (len(pw) + len(pc) - 1)
                for i, a in enumerate(pw):
                    for j, b in enumerate(pc):
                        new[i + j] += a * b
                pw = new
            K, _inc = kernel(_poly_of_morphism(fm, pw), name=f"{M.name}~")
            subs, cert = decompose(K, seed=rng.randrange(1 << 30), tries=tries)
            summands.extend(subs)
            if cert is not True:
                certified = cert
        return summands, certified
    # no splitting endomorphism found
    if _end_is_local(M, E):
        return [M], True
    return [M], UNDECIDED


# -- bimodules ---------------------------------------------------------


class Bimodule:
    """An (A, B)-bimodule with one space per vertex pair (u, v).

    lact[(i, v)] is the action of the A-basis element i on the spaces with
    right vertex v, a map X[(src_i, v)] -> X[(tgt_i, v)].  ract[(u, j)] is
    right multiplication by the B-basis element j, X[(u, tgt_j)] ->
    X[(u, src_j)].  Only nonzero matrices are stored.
    """

    def __init__(self, left_alg, right_alg, dims, lact, ract, name="X"):
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.dims = dict(dims)
        self.lact = {k: m for k, m in lact.items() if not m.is_zero()}
        self.ract = {k: m for k, m in ract.items() if not m.is_zero()}
        self.name = name

    def lact_mat(self, i, v):
        m = self.lact.get((i, v))
        if m is not None:
            return m
        b = self.left_alg.basis[i]
        if b.degree == 0:
            return Mat.identity(self.dims[(b.src, v)], self.left_alg.field)
        return Mat.zero(self.dims[(b.tgt, v)], self.dims[(b.src, v)], self.left_alg.field)

    def ract_mat(self, u, j):
        m = self.ract.get((u, j))
        if m is not None:
            return m
        b = self.right_alg.basis[j]
        if b.degree == 0:
            return Mat.identity(self.dims[(u, b.src)], self.right_alg.field)
        return Mat.zero(self.dims[(u, b.src)], self.dims[(u, b.tgt)], self.right_alg.field)

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def left_module(self):
        """Forget the right action: a left A-module with vertex spaces
        collecting all right vertices.  Returns (module, offsets) where
        offsets[(u, v)] locates X[(u, v)] inside M[u]."""
        A = self.left_alg
        B = self.right_alg
        f = A.field
        offs = {}
        dims = {}
        for u in A.vertices:
            n = 0
            for v in B.vertices:
                offs[(u, v)] = n
                n += self.dims[(u, v)]
            dims[u] = n
        act = {}
        for i, b in enumerate(A.basis):
            if b.degree == 0:
                continue
            m = Mat.zero(dims[b.tgt], dims[b.src], f)
            nonzero = False
            for v in B.vertices:
                blk = self.lact.get((i, v))
                if blk is None:
                    continue
                nonzero = True
                r0, c0 = offs[(b.tgt, v)], offs[(b.src, v)]
                for r in range(blk.rows):
                    m.a[r0 + r][c0 : c0 + blk.cols] = blk.a[r][:]
            if nonzero:
                act[i] = m
        return Module(A, dims, act, name=self.name), offs

    def __repr__(self):
        return f"Bimodule({self.name}, dim {self.total_dim})"


def regular_bimodule(alg: Algebra, name=None):
    """The algebra over itself; X[(u, v)] has the basis elements with
    tgt == u and src == v as coordinates."""
    by_pair = {(u, v): [] for u in alg.vertices for v in alg.vertices}
    for i, b in enumerate(alg.basis):
        by_pair[(b.tgt, b.src)].append(i)
    pos = {}
    for key, lst in by_pair.items():
        for c, i in enumerate(lst):
            pos[i] = c
    dims = {k: len(lst) for k, lst in by_pair.items()}
    f = alg.field
    lact, ract = {}, {}
    for j, bj in enumerate(alg.basis):
        if bj.degree == 0:
            continue
        for v in alg.vertices:
            m = Mat.zero(dims[(bj.tgt, v)], dims[(bj.src, v)], f)
            for col, i in enumerate(by_pair[(bj.src, v)]):
                for k, c in alg.mul(j, i).items():
                    m.a[pos[k]][col] = c
            if not m.is_zero():
                lact[(j, v)] = m
        for u in alg.vertices:
            m = Mat.zero(dims[(u, bj.src)], dims[(u, bj.tgt)], f)
            for col, i in enumerate(by_pair[(u, bj.tgt)]):
                for k, c in alg.mul(i, j).items():
                    m.a[pos[k]][col] = c
            if not m.is_zero():
                ract[(u, j)] = m
    X = Bimodule(alg, alg, dims, lact, ract, name=name or "reg")
    X.basis_indices = by_pair
    return X


def dual_regular_bimodule(alg: Algebra, name=None):
    """The k-dual of the algebra as a bimodule; X[(u, v)] is the dual of
    the span of basis elements with src == u and tgt == v."""
    by_pair = {(u, v): [] for u in alg.vertices for v in alg.vertices}
    for i, b in enumerate(alg.basis):
        by_pair[(b.src, b.tgt)].append(i)
    pos = {}
    for key, lst in by_pair.items():
        for c, i in enumerate(lst):
            pos[i] = c
    dims = {k: len(lst) for k, lst in by_pair.items()}
    f = alg.field
    lact, ract = {}, {}
    for j, bj in enumerate(alg.basis):
        if bj.degree == 0:
            continue
        # left action: (a.xi)(x) = xi(x * a), maps (src_a, v) -> (tgt_a, v)
        for v in alg.vertices:
            m = Mat.zero(dims[(bj.tgt, v)], dims[(bj.src, v)], f)
            for col, b in enumerate(by_pair[(bj.src, v)]):
                for row, x in enumerate(by_pair[(bj.tgt, v)]):
                    c = alg.mul(x, j).get(b)
                    if c:
                        m.a[row][col] = c
            if not m.is_zero():
                lact[(j, v)] = m
        # right action: (xi.b)(x) = xi(b * x), maps (u, tgt_b) -> (u, src_b)
        for u in alg.vertices:
            m = Mat.zero(dims[(u, bj.src)], dims[(u, bj.tgt)], f)
            for col, b in enumerate(by_pair[(u, bj.tgt)]):
                for row, x in enumerate(by_pair[(u, bj.src)]):
                    c = alg.mul(j, x).get(b)
                    if c:
                        m.a[row][col] = c
            if not m.is_zero():
                ract[(u, j)] = m
    X = Bimodule(alg, alg, dims, lact, ract, name=name or "D(reg)")
    X.basis_indices = by_pair
    return X


def _coequalize(spaces, rel_rows, field):
    """Shared quotient helper: spaces is {key: dim}, rel_rows is
    {key: list of coordinate rows}.  Returns per-key (projection, section)."""
    out = {}
    for key, n in spaces.items():
        rows = span_basis(rel_rows.get(key, []), field)
        if rows:
            R, pivots = Mat.from_rows(rows, field).rref()
        else:
            R, pivots = None, []
        pivset = set(pivots)
        free = [j for j in range(n) if j not in pivset]
        p = Mat.zero(len(free), n, field)
        for r, j in enumerate(free):
            p.a[r][j] = field.one()
        for i, pc in enumerate(pivots):
            for r, j in enumerate(free):
                if R.a[i][j]:
                    p.a[r][pc] = -R.a[i][j]
        s = Mat.zero(n, len(free), field)
        for r, j in enumerate(free):
            s.a[j][r] = field.one()
        out[key] = (p, s)
    return out


def tensor_bimod_module(T: Bimodule, M: Module, name=None):
    """T tensor_B M for an (A, B)-bimodule T and a left B-module M.
    Returns (result, data) where data gives, per left vertex u, the
    projection from the direct sum over v of T[(u,v)] (x) M[v]."""
    A, B = T.left_alg, T.right_alg
    if M.alg is not B and M.alg.name != B.name:
        pass
    f = A.field
    offs = {}
    wdims = {}
    for u in A.vertices:
        n = 0
        for v in B.vertices:
            offs[(u, v)] = n
            n += T.dims[(u, v)] * M.dims[v]
        wdims[u] = n
    rel_rows = {u: [] for u in A.vertices}
    for g in B.generators():
        bg = B.basis[g]
        s, t = bg.src, bg.tgt
        gm = M.act_mat(g)  # M[s] -> M[t]
        for u in A.vertices:
            rg = T.ract_mat(u, g)  # T[(u,t)] -> T[(u,s)]
            dts, dms = T.dims[(u, t)], M.dims[s]
            for a in range(dts):
                for b in range(dms):
                    row = [f.zero()] * wdims[u]
                    # (t.g) (x) m  lives in the v = s block
                    for c in range(T.dims[(u, s)]):
                        if rg.a[c][a]:
                            row[offs[(u, s)] + c * M.dims[s] + b] += rg.a[c][a]
                    # t (x) (g.m)  lives in the v = t block
                    for d in range(M.dims[t]):
                        if gm.a[d][b]:
                            row[offs[(u, t)] + a * M.dims[t] + d] -= gm.a[d][b]
                    if any(row):
                        rel_rows[u].append(row)
    ps = _coequalize(wdims, rel_rows, f)
    dims = {u: ps[u][0].rows for u in A.vertices}
    act = {}
    for i, bi in enumerate(A.basis):
        if bi.degree == 0:
            continue
        # action on the big sum: lact on the T factor, identity on M
        m = Mat.zero(wdims[bi.tgt], wdims[bi.src], f)
        nonzero = False
        for v in B.vertices:
            la = T.lact.get((i, v))
            if la is None:
                continue
            nonzero = True
            dm = M.dims[v]
            r0, c0 = offs[(bi.tgt, v)], offs[(bi.src, v)]
            for r in range(la.rows):
                for c in range(la.cols):
                    x = la.a[r][c]
                    if x:
                        for k in range(dm):
                            m.a[r0 + r * dm + k][c0 + c * dm + k] = x
        if nonzero:
            act[i] = ps[bi.tgt][0] * (m * ps[bi.src][1])
    res = Module(A, dims, act, name=name or f"{T.name}(x){M.name}")
    data = {"offsets": offs, "proj": {u: ps[u][0] for u in A.vertices},
            "sect": {u: ps[u][1] for u in A.vertices}, "big_dims": wdims}
    return res, data


def tensor_bimod_bimod(T: Bimodule, S: Bimodule, name=None):
    """T tensor_B S for an (A, B)-bimodule T and a (B, C)-bimodule S,
    giving an (A, C)-bimodule."""
    A, B, C = T.left_alg, T.right_alg, S.right_alg
    f = A.field
    offs = {}
    wdims = {}
    for u in A.vertices:
        for w in C.vertices:
            n = 0
            for v in B.vertices:
                offs[(u, v, w)] = n
                n += T.dims[(u, v)] * S.dims[(v, w)]
            wdims[(u, w)] = n
    rel_rows = {k: [] for k in wdims}
    for g in B.generators():
        bg = B.basis[g]
        s, t = bg.src, bg.tgt
        for u in A.vertices:
            rg = T.ract_mat(u, g)  # T[(u,t)] -> T[(u,s)]
            for w in C.vertices:
                lg = S.lact_mat(g, w)  # S[(s,w)] -> S[(t,w)]
                dts = T.dims[(u, t)]
                dss = S.dims[(s, w)]
                for a in range(dts):
                    for b in range(dss):
                        row = [f.zero()] * wdims[(u, w)]
                        for c in range(T.dims[(u, s)]):
                            if rg.a[c][a]:
                                row[offs[(u, s, w)] + c * dss + b] += rg.a[c][a]
                        for d in range(S.dims[(t, w)]):
                            if lg.a[d][b]:
                                row[offs[(u, t, w)] + a * S.dims[(t, w)] + d] -= lg.a[d][b]
                        if any(row):
                            rel_rows[(u, w)].append(row)
    ps = _coequalize(wdims, rel_rows, f)
    dims = {k: ps[k][0].rows for k in wdims}
    lact, ract = {}, {}
    for i, bi in enumerate(A.basis):
        if bi.degree == 0:
            continue
        for w in C.vertices:
            m = Mat.zero(wdims[(bi.tgt, w)], wdims[(bi.src, w)], f)
            nonzero = False
            for v in B.vertices:
                la = T.lact.get((i, v))
                if la is None:
                    continue
                nonzero = True
                dm = S.dims[(v, w)]
                r0, c0 = offs[(bi.tgt, v, w)], offs[(bi.src, v, w)]
                for r in range(la.rows):
                    for c in range(la.cols):
                        x = la.a[r][c]
                        if x:
                            for k in range(dm):
                                m.a[r0 + r * dm + k][c0 + c * dm + k] = x
            if nonzero:
                res = ps[(bi.tgt, w)][0] * (m * ps[(bi.src, w)][1])
                if not res.is_zero():
                    lact[(i, w)] = res
    for j, bj in enumerate(C.basis):
        if bj.degree == 0:
            continue
        for u in A.vertices:
            # right action by bj on the S factor: S[(v,tgt)] -> S[(v,src)]
            m = Mat.zero(wdims[(u, bj.src)], wdims[(u, bj.tgt)], f)
            nonzero = False
            for v in B.vertices:
                ra = S.ract.get((v, j))
                if ra is None:
                    continue
                nonzero = True
                dt = T.dims[(u, v)]
                dcols = S.dims[(v, bj.tgt)]
                drows = S.dims[(v, bj.src)]
                r0, c0 = offs[(u, v, bj.src)], offs[(u, v, bj.tgt)]
                for a in range(dt):
                    for r in range(drows):
                        for c in range(dcols):
                            x = ra.a[r][c]
                            if x:
                                m.a[r0 + a * drows + r][c0 + a * dcols + c] = x
            if nonzero:
                res = ps[(u, bj.src)][0] * (m * ps[(u, bj.tgt)][1])
                if not res.is_zero():
                    ract[(u, j)] = res
    out = Bimodule(A, C, dims, lact, ract, name=name or f"{T.name}(x){S.name}")
    out.tensor_data = {"offsets": offs, "proj": {k: ps[k][0] for k in wdims},
                       "sect": {k: ps[k][1] for k in wdims}, "big_dims": wdims}
    return out


def bimodule_to_env_module(X: Bimodule, env=None):
    """View an (A, A)-bimodule as a left module over A (x) A^op."""
    A = X.left_alg
    E = env or enveloping(A)
    _, _, pair_index = E.tensor_info
    f = A.field
    dims = {}
    for (u, v) in E.vertices:
        dims[(u, v)] = X.dims[(u, v)]
    act = {}
    aop = E.tensor_info[1]
    for (i, j), k in pair_index.items():
        bi = A.basis[i]
        bj = aop.basis[j]  # same index as in A, src/tgt swapped
        if bi.degree + A.basis[j].degree == 0:
            continue
        # (i (x) j^op) sends X[(src_i, tgt_j in A)] to X[(tgt_i, src_j in A)]
        bja = A.basis[j]
        la = X.lact_mat(i, bja.tgt)
        ra = X.ract_mat(bi.tgt, j)
        m = ra * la
        if not m.is_zero():
            act[k] = m
    return Module(E, dims, act, name=X.name)


def env_module_to_bimodule(M: Module, alg: Algebra):
    """Inverse of bimodule_to_env_module for modules over A (x) A^op."""
    E = M.alg
    a, aop, pair_index = E.tensor_info
    lact, ract = {}, {}
    for i, bi in enumerate(a.basis):
        if bi.degree == 0:
            continue
        for v in a.vertices:
            k = pair_index[(i, a.idem[v])]
            m = M.act.get(k)
            if m is not None:
                lact[(i, v)] = m
    for j, bj in enumerate(a.basis):
        if bj.degree == 0:
            continue
        for u in a.vertices:
            k = pair_index[(a.idem[u], j)]
            m = M.act.get(k)
            if m is not None:
                ract[(u, j)] = m
    dims = {key: M.dims[key] for key in M.dims}
    return Bimodule(alg, alg, dims, lact, ract, name=M.name)


def flip_bimodule(X: Bimodule, new_left, new_right, name=None):
    """View an (A, B)-bimodule as a (B^op, A^op)-bimodule: the right
    action becomes the left action and vice versa.  new_left and new_right
    must be the opposite algebras sharing basis indices with B and A."""
    dims = {(v, u): d for (u, v), d in X.dims.items()}
    lact = {(j, u): m for (u, j), m in X.ract.items()}
    ract = {(v, i): m for (i, v), m in X.lact.items()}
    return Bimodule(new_left, new_right, dims, lact, ract, name=name or f"{X.name}^flip")


def outer_tensor_module(M: Module, N: Module, t: Algebra, name=None):
    """M (x) N as a left module over the tensor-product algebra t of
    M.alg and N.alg."""
    a, b, pair_index = t.tensor_info
    dims = {(u, v): M.dims[u] * N.dims[v] for u in a.vertices for v in b.vertices}
    act = {}
    for (i, j), k in pair_index.items():
        if a.basis[i].degree + b.basis[j].degree == 0:
            continue
        m = M.act_mat(i).kron(N.act_mat(j))
        if not m.is_zero():
            act[k] = m
    return Module(t, dims, act, name=name or f"{M.name}(x){N.name}")


def twist_bimodule(alg: Algebra, vmap, images, name=None):
    """The regular bimodule with the right action twisted through the
    algebra automorphism given by a vertex map and basis images:
    x . b := x * phi(b)."""
    by_pair = {}
    pos = {}
    for u in alg.vertices:
        for v in alg.vertices:
            lst = [i for i, b in enumerate(alg.basis) if b.tgt == u and b.src == vmap[v]]
            by_pair[(u, v)] = lst
            for c, i in enumerate(lst):
                pos[(u, v, i)] = c
    dims = {k: len(lst) for k, lst in by_pair.items()}
    f = alg.field
    lact, ract = {}, {}
    for j, bj in enumerate(alg.basis):
        if bj.degree == 0:
            continue
        for v in alg.vertices:
            m = Mat.zero(dims[(bj.tgt, v)], dims[(bj.src, v)], f)
            for col, i in enumerate(by_pair[(bj.src, v)]):
                for k, c in alg.mul(j, i).items():
                    m.a[pos[(bj.tgt, v, k)]][col] = c
            if not m.is_zero():
                lact[(j, v)] = m
        phi_j = images[j]
        for u in alg.vertices:
            m = Mat.zero(dims[(u, bj.src)], dims[(u, bj.tgt)], f)
            for col, i in enumerate(by_pair[(u, bj.tgt)]):
                prod = alg.mul_elt({i: f.one()}, phi_j)
                for k, c in prod.items():
                    m.a[pos[(u, bj.src, k)]][col] = c
            if not m.is_zero():
                ract[(u, j)] = m
    X = Bimodule(alg, alg, dims, lact, ract, name=name or "twist")
    X.basis_indices = by_pair
    return X
    """Pull back M along an algebra automorphism given by a vertex map and
    the image of every basis element (as sparse elements)."""
    alg = M.alg
    dims = {v: M.dims[vmap[v]] for v in alg.vertices}
    act = {}
    for i, b in enumerate(alg.basis):
        if b.degree == 0:
            continue
        pieces = M.elt_act(images[i])
        key = (vmap[b.tgt], vmap[b.src])
        if key in pieces:
            act[i] = pieces[key]
    return Module(alg, dims, act, name=name or f"tw({M.name})")
