"""Projective covers, minimal resolutions, Ext/Tor, bounded complexes of
projectives, and the derived Nakayama functor.

Complexes of projectives are stored in "based" form: a term is a list of
vertices (one per indecomposable projective summand) and a differential is
a matrix of algebra elements.  The entry for a component P_u -> P_v is an
element with src = v and tgt = u, acting by right multiplication.  For the
composite g∘f the element of the composite is elt(f) * elt(g).
"""

from __future__ import annotations

from .algebra import Algebra, opposite
from .errors import CapExceeded
from .linalg import Mat
from .module import (
    Bimodule,
    Module,
    Morphism,
    direct_sum,
    dual_module,
    dual_regular_bimodule,
    injective_module,
    is_isomorphic,
    kernel,
    projective_module,
    quotient,
    regular_module,
    top_of,
    zero_module,
)


def default_cap(alg):
    return 4 * len(alg.vertices) + 8


def _cached_projective(alg, v):
    key = ("proj", v)
    if key not in alg._cache:
        alg._cache[key] = projective_module(alg, v)
    return alg._cache[key]


def _cached_dual_regular(alg):
    if "dreg" not in alg._cache:
        alg._cache["dreg"] = dual_regular_bimodule(alg)
    return alg._cache["dreg"]


class SumInfo:
    """A direct sum of indecomposable projectives with coordinate data.

    coords[w] lists the coordinates of the sum at vertex w as pairs
    (summand index, algebra basis index); e_pos[r] gives the coordinate of
    the idempotent generator of summand r.
    """

    def __init__(self, alg, verts):
        self.alg = alg
        self.verts = list(verts)
        f = alg.field
        coords = {w: [] for w in alg.vertices}
        for r, v in enumerate(self.verts):
            P = _cached_projective(alg, v)
            for w in alg.vertices:
                for bidx in P.basis_indices[w]:
                    coords[w].append((r, bidx))
        self.coords = coords
        self.pos = {}
        for w, lst in coords.items():
            for c, key in enumerate(lst):
                self.pos[key] = c
        self.e_pos = [self.pos[(r, alg.idem[v])] for r, v in enumerate(self.verts)]
        dims = {w: len(coords[w]) for w in alg.vertices}
        act = {}
        for j, bj in enumerate(alg.basis):
            if bj.degree == 0:
                continue
            m = Mat.zero(dims[bj.tgt], dims[bj.src], f)
            hit = False
            for c, (r, bidx) in enumerate(coords[bj.src]):
                for k, cf in alg.mul(j, bidx).items():
                    m.a[self.pos[(r, k)]][c] = cf
                    hit = True
            if hit:
                act[j] = m
        self.module = Module(alg, dims, act, name="P(" + ",".join(str(v) for v in self.verts) + ")")


# -- element matrices --------------------------------------------------


def eltmat_zero(nrows, ncols):
    return [[{} for _ in range(ncols)] for _ in range(nrows)]


def eltmat_is_zero(m):
    return all(not e for row in m for e in row)


def eltmat_compose(alg, g, f):
    """Element matrix of g∘f (f applied first)."""
    nr = len(g)
    nc = len(f[0]) if f else 0
    mid = len(f)
    out = eltmat_zero(nr, nc)
    for t in range(nr):
        for s in range(nc):
            acc = {}
            for r in range(mid):
                fe = f[r][s]
                ge = g[t][r]
                if fe and ge:
                    prod = alg.mul_elt(fe, ge)
                    for k, c in prod.items():
                        v = acc.get(k, alg.field.zero()) + c
                        if v:
                            acc[k] = v
                        elif k in acc:
                            del acc[k]
            out[t][s] = acc
    return out


def eltmat_to_morphism(alg, src: SumInfo, tgt: SumInfo, m):
    """Module morphism src.module -> tgt.module for an element matrix."""
    f = alg.field
    mats = {}
    for w in alg.vertices:
        mat = Mat.zero(len(tgt.coords[w]), len(src.coords[w]), f)
        for c, (s, bcol) in enumerate(src.coords[w]):
            for r in range(len(tgt.verts)):
                elt = m[r][s]
                if not elt:
                    continue
                for tdx, cf in elt.items():
                    for k, cf2 in alg.mul(bcol, tdx).items():
                        mat.a[tgt.pos[(r, k)]][c] += cf * cf2
        mats[w] = mat
    return Morphism(src.module, tgt.module, mats)


def morphism_to_eltmat(alg, src: SumInfo, tgt: SumInfo, fm: Morphism):
    """Inverse of eltmat_to_morphism: read off images of the idempotent
    coordinates."""
    m = eltmat_zero(len(tgt.verts), len(src.verts))
    for s, a in enumerate(src.verts):
        col = fm.mats[a].column(src.e_pos[s])
        for c, val in enumerate(col):
            if val:
                r, bidx = tgt.coords[a][c]
                m[r][s][bidx] = val
    return m


def eltmat_entries_in_radical(alg, m):
    nv = len(alg.vertices)
    return all(all(k >= nv for k in e) for row in m for e in row)


# -- complexes ---------------------------------------------------------


class ModComplex:
    """Bounded cochain complex of modules; diffs[i] maps term i to i+1."""

    def __init__(self, alg, terms, diffs, check=False):
        self.alg = alg
        self.terms = dict(terms)
        self.diffs = dict(diffs)
        if check:
            self.check()

    def degrees(self):
        return sorted(d for d, t in self.terms.items() if t.total_dim)

    def term(self, i):
        t = self.terms.get(i)
        if t is None:
            t = zero_module(self.alg)
        return t

    def diff(self, i):
        return self.diffs.get(i)

    def check(self):
        for i, d in self.diffs.items():
            d.check()
            nxt = self.diffs.get(i + 1)
            if nxt is not None and not nxt.compose(d).is_zero():
                raise ValueError(f"d^2 != 0 at degree {i}")

    def cohomology(self, i):
        return homology_module(self.term(i), self.diff(i - 1), self.diff(i))

    def cohomology_table(self):
        if not self.terms:
            return {}
        lo = min(self.terms)
        hi = max(self.terms)
        out = {}
        for i in range(lo, hi + 1):
            H = self.cohomology(i)
            if H.total_dim:
                out[i] = H
        return out


class PerfComplex:
    """Bounded complex with projective terms in based form."""

    def __init__(self, alg, terms, diffs, check=False):
        self.alg = alg
        self.terms = {i: list(t) for i, t in terms.items() if t}
        self.diffs = {i: d for i, d in diffs.items() if not eltmat_is_zero(d)}
        self._infos = {}
        if check:
            self.check()

    def degrees(self):
        return sorted(self.terms)

    def info(self, i):
        if i not in self._infos:
            self._infos[i] = SumInfo(self.alg, self.terms.get(i, []))
        return self._infos[i]

    def width(self):
        return sum(len(t) for t in self.terms.values())

    def shift(self, k):
        """[k]: term i of the shift is term i+k of the original; odd shifts
        flip the sign of the differential."""
        terms = {i - k: t for i, t in self.terms.items()}
        diffs = {}
        for i, d in self.diffs.items():
            if k % 2:
                d = [[{b: -c for b, c in e.items()} for e in row] for row in d]
            diffs[i - k] = d
        return PerfComplex(self.alg, terms, diffs)

    def check(self):
        for i, d in self.diffs.items():
            nr = len(self.terms.get(i + 1, []))
            nc = len(self.terms.get(i, []))
            if len(d) != nr or (d and len(d[0]) != nc):
                raise ValueError(f"differential shape mismatch at degree {i}")
            nxt = self.diffs.get(i + 1)
            if nxt is not None and not eltmat_is_zero(eltmat_compose(self.alg, nxt, d)):
                raise ValueError(f"d^2 != 0 at degree {i}")

    def is_minimal(self):
        return all(eltmat_entries_in_radical(self.alg, d) for d in self.diffs.values())

    def to_mod_complex(self):
        terms = {i: self.info(i).module for i in self.terms}
        diffs = {}
        for i, d in self.diffs.items():
            diffs[i] = eltmat_to_morphism(self.alg, self.info(i), self.info(i + 1), d)
        return ModComplex(self.alg, terms, diffs)

    def cohomology(self, i):
        return self.to_mod_complex().cohomology(i)

    def cohomology_table(self):
        if not self.terms:
            return {}
        mc = self.to_mod_complex()
        lo, hi = min(self.terms), max(self.terms)
        out = {}
        for i in range(lo, hi + 1):
            H = mc.cohomology(i)
            if H.total_dim:
                out[i] = H
        return out


def stalk_regular(alg):
    """The regular module as a one-term complex of projectives in degree 0."""
    return PerfComplex(alg, {0: list(alg.vertices)}, {})


def homology_module(at: Module, f_in, f_out, name="H"):
    """ker(f_out) / im(f_in) at the module `at`."""
    alg = at.alg
    if f_out is None:
        K = at
        inc = None
    else:
        K, incm = kernel(f_out)
        inc = incm
    if f_in is None:
        return K if f_out is not None else at
    cols = {v: [] for v in alg.vertices}
    for v in alg.vertices:
        m = f_in.mats[v]
        for j in range(m.cols):
            c = m.column(j)
            if not any(c):
                continue
            if inc is None:
                cols[v].append(c)
            else:
                x = inc.mats[v].solve(c)
                if x is None:
                    raise ValueError("image does not land in the kernel (d^2 != 0?)")
                cols[v].append(x)
    Q, _ = quotient(K, cols, name=name)
    return Q


# -- covers and resolutions -------------------------------------------


def projective_cover(M: Module):
    """Returns (info: SumInfo, epi: Morphism info.module -> M)."""
    alg = M.alg
    f = alg.field
    T, pr = top_of(M)
    verts = []
    lifts = []  # per summand: (vertex, lift vector in M_v)
    for v in alg.vertices:
        t = T.dims[v]
        if not t:
            continue
        sect = pr.mats[v].solve_matrix(Mat.identity(t, f))
        for k in range(t):
            verts.append(v)
            lifts.append((v, sect.column(k)))
    info = SumInfo(alg, verts)
    mats = {}
    for w in alg.vertices:
        m = Mat.zero(M.dims[w], len(info.coords[w]), f)
        for c, (r, bidx) in enumerate(info.coords[w]):
            v, vec = lifts[r]
            img = M.act_mat(bidx).apply(vec)
            for i, val in enumerate(img):
                m.a[i][c] = val
        mats[w] = m
    return info, Morphism(info.module, M, mats)


class Resolution:
    """Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0.

    infos[k] is the SumInfo of the k-th term; eltmats[k] (k >= 1) is the
    based differential P_k -> P_{k-1}; complete is False when max_len was
    hit with a nonzero kernel.
    """

    def __init__(self, M, infos, eltmats, epi, complete):
        self.module = M
        self.infos = infos
        self.eltmats = eltmats
        self.epi = epi
        self.complete = complete

    @property
    def length(self):
        return len(self.infos) - 1

    @property
    def proj_dim(self):
        return self.length if self.complete else None

    def term_verts(self, k):
        return self.infos[k].verts if k < len(self.infos) else []

    def to_perf(self):
        """As a complex in degrees [-length, 0]."""
        terms = {-k: info.verts for k, info in enumerate(self.infos)}
        diffs = {-k: self.eltmats[k] for k in range(1, len(self.infos))}
        return PerfComplex(self.module.alg, terms, diffs)


def min_proj_resolution(M: Module, max_len=None, strict=False):
    alg = M.alg
    if max_len is None:
        max_len = default_cap(alg)
    if M.total_dim == 0:
        return Resolution(M, [SumInfo(alg, [])], {}, None, True)
    info0, epi = projective_cover(M)
    infos = [info0]
    eltmats = {}
    cur = epi
    k = 0
    while True:
        K, inc = kernel(cur)
        if K.total_dim == 0:
            return Resolution(M, infos, eltmats, epi, True)
        if k >= max_len:
            if strict:
                raise CapExceeded(f"projective resolution of {M.name} exceeds {max_len}")
            return Resolution(M, infos, eltmats, epi, False)
        info, cov = projective_cover(K)
        dmod = inc.compose(cov)
        em = morphism_to_eltmat(alg, info, infos[-1], dmod)
        assert eltmat_entries_in_radical(alg, em), "resolution differential not minimal"
        infos.append(info)
        eltmats[k + 1] = em
        cur = cov
        k += 1


def _module_resolution(M, upto):
    """Cached resolution prefix keyed on the module object identity."""
    key = ("res", id(M))
    cached = M.alg._cache.get(key)
    if cached is not None and (cached.complete or cached.length >= upto):
        return cached
    res = min_proj_resolution(M, max_len=max(upto, default_cap(M.alg)))
    M.alg._cache[key] = res
    return res


class ExtResult:
    def __init__(self, dim, cocycles, term_verts):
        self.dim = dim
        self.cocycles = cocycles  # coordinate vectors in hom(P_i, N) space
        self.term_verts = term_verts

    def __repr__(self):
        return f"Ext(dim {self.dim})"


def _hom_cochain(res: Resolution, N: Module, top):
    """Spaces and maps of Hom(P_k, N) for k = 0..top as coordinate data.

    Returns (dims, deltas, layouts) where deltas[k]: space k -> space k+1
    and layouts[k] is the list of (summand, vertex, offset) blocks.
    """
    alg = res.module.alg
    f = alg.field
    spaces = []
    layouts = []
    for k in range(top + 1):
        verts = res.term_verts(k)
        lay = []
        n = 0
        for r, u in enumerate(verts):
            lay.append((r, u, n))
            n += N.dims[u]
        spaces.append(n)
        layouts.append(lay)
    deltas = []
    for k in range(top):
        em = res.eltmats.get(k + 1)
        m = Mat.zero(spaces[k + 1], spaces[k], f)
        if em is not None:
            # em rows run over term k, columns over term k+1
            src_lay = {r: (u, off) for r, u, off in layouts[k]}
            tgt_lay = {s: (u, off) for s, u, off in layouts[k + 1]}
            for s in range(len(em[0]) if em else 0):
                us, offs = tgt_lay[s]
                for r in range(len(em)):
                    elt = em[r][s]
                    if not elt:
                        continue
                    ur, offr = src_lay[r]
                    blk = None
                    for bidx, c in elt.items():
                        mm = N.act_mat(bidx).scale(c)
                        blk = mm if blk is None else blk + mm
                    for i in range(blk.rows):
                        for j in range(blk.cols):
                            if blk.a[i][j]:
                                m.a[offs + i][offr + j] = m.a[offs + i][offr + j] + blk.a[i][j]
        deltas.append(m)
    return spaces, deltas, layouts


def ext(i, M: Module, N: Module, max_len=None):
    """Ext^i(M, N); returns an ExtResult with .dim and cocycle basis."""
    if i < 0:
        raise ValueError("negative Ext degree")
    res = _module_resolution(M, i + 1)
    top = min(i + 1, res.length)
    if i > res.length and res.complete:
        return ExtResult(0, [], [])
    if i > res.length and not res.complete:
        raise CapExceeded("resolution too short for requested Ext degree")
    spaces, deltas, layouts = _hom_cochain(res, N, top)
    f = M.alg.field
    if i <= res.length and i < len(deltas):
        dout = deltas[i]
        kerb = dout.kernel_basis()
    else:
        kerb = [
            [f.one() if j == t else f.zero() for j in range(spaces[i])]
            for t in range(spaces[i])
        ]
    if i == 0:
        rank_in = 0
        cocycles = kerb
    else:
        din = deltas[i - 1]
        rank_in = din.rank()
        cocycles = kerb
    return ExtResult(len(kerb) - rank_in, cocycles, res.term_verts(i))


def ext_dims_upto(M: Module, N: Module, n, max_len=None):
    """dim Ext^i(M, N) for i = 0..n, sharing one resolution and one
    cochain complex."""
    res = _module_resolution(M, n + 1)
    top = min(n + 1, res.length)
    spaces, deltas, _ = _hom_cochain(res, N, top)
    ranks = [d.rank() for d in deltas]
    out = []
    for i in range(n + 1):
        if i > res.length:
            out.append(0)
            continue
        ker = spaces[i] - (ranks[i] if i < len(ranks) else 0)
        im = ranks[i - 1] if i >= 1 else 0
        out.append(ker - im)
    return out


def _col_module(X: Bimodule, u, name=None):
    """X e_u as a left module over X.left_alg."""
    dims = {w: X.dims[(w, u)] for w in X.left_alg.vertices}
    act = {}
    for (i, v), m in X.lact.items():
        if v == u:
            act[i] = m
    return Module(X.left_alg, dims, act, name=name or f"{X.name}e[{u}]")


def _col_sum(X: Bimodule, verts):
    """Direct sum of columns X e_u with coordinate offsets, as (module,
    offsets) where offsets[(r, w)] locates column r at vertex w."""
    alg = X.left_alg
    f = alg.field
    offs = {}
    dims = {}
    for w in alg.vertices:
        n = 0
        for r, u in enumerate(verts):
            offs[(r, w)] = n
            n += X.dims[(w, u)]
        dims[w] = n
    act = {}
    for i, b in enumerate(alg.basis):
        if b.degree == 0:
            continue
        m = Mat.zero(dims[b.tgt], dims[b.src], f)
        hit = False
        for r, u in enumerate(verts):
            blk = X.lact.get((i, u))
            if blk is None:
                continue
            hit = True
            r0, c0 = offs[(r, b.tgt)], offs[(r, b.src)]
            for x in range(blk.rows):
                m.a[r0 + x][c0 : c0 + blk.cols] = blk.a[x][:]
        if hit:
            act[i] = m
    return Module(alg, dims, act, name=f"{X.name}(cols)"), offs


def _col_sum_diff(X: Bimodule, src_verts, tgt_verts, em, srcmod, srcoffs, tgtmod, tgtoffs):
    """Morphism between column sums induced by right multiplication with
    the entries of an element matrix."""
    alg = X.left_alg
    f = alg.field
    mats = {}
    for w in alg.vertices:
        m = Mat.zero(tgtmod.dims[w], srcmod.dims[w], f)
        for r in range(len(em)):
            for s in range(len(em[0]) if em else 0):
                elt = em[r][s]
                if not elt:
                    continue
                blk = None
                for bidx, c in elt.items():
                    mm = X.ract_mat(w, bidx).scale(c)
                    blk = mm if blk is None else blk + mm
                r0 = tgtoffs[(r, w)]
                c0 = srcoffs[(s, w)]
                for x in range(blk.rows):
                    for y in range(blk.cols):
                        if blk.a[x][y]:
                            m.a[r0 + x][c0 + y] = m.a[r0 + x][c0 + y] + blk.a[x][y]
        mats[w] = m
    return Morphism(srcmod, tgtmod, mats)


def tor(i, X: Bimodule, M: Module, max_len=None):
    """Tor_i(X, M) as a left module over X.left_alg."""
    if i < 0:
        raise ValueError("negative Tor degree")
    res = _module_resolution(M, i + 1)
    if i > res.length:
        if res.complete:
            return zero_module(X.left_alg)
        raise CapExceeded("resolution too short for requested Tor degree")
    terms = {}
    offs = {}
    for k in (i - 1, i, i + 1):
        if 0 <= k <= res.length:
            terms[k], offs[k] = _col_sum(X, res.term_verts(k))
    f_out = None
    if i >= 1:
        f_out = _col_sum_diff(
            X, res.term_verts(i), res.term_verts(i - 1), res.eltmats[i],
            terms[i], offs[i], terms[i - 1], offs[i - 1],
        )
    f_in = None
    if i + 1 <= res.length:
        f_in = _col_sum_diff(
            X, res.term_verts(i + 1), res.term_verts(i), res.eltmats[i + 1],
            terms[i + 1], offs[i + 1], terms[i], offs[i],
        )
    return homology_module(terms[i], f_in, f_out, name=f"Tor{i}")


def global_dimension(alg: Algebra, cap=None):
    if cap is None:
        cap = default_cap(alg)
    from .module import simple_module

    gd = 0
    for v in alg.vertices:
        res = min_proj_resolution(simple_module(alg, v), max_len=cap, strict=True)
        gd = max(gd, res.length)
    return gd


def _injective_is_projective(alg, v):
    key = ("inj_proj", v)
    if key in alg._cache:
        return alg._cache[key]
    I = injective_module(alg, v)
    ans = False
    for w in alg.vertices:
        P = _cached_projective(alg, w)
        if P.dim_vector() == I.dim_vector() and is_isomorphic(I, P):
            ans = True
            break
    alg._cache[key] = ans
    return ans


def dominant_dimension(alg: Algebra, cap=None):
    """Number of leading projective-injective terms in the minimal
    injective coresolution of the regular module; returns cap when the
    coresolution stays projective-injective throughout (∞ convention)."""
    if cap is None:
        cap = default_cap(alg)
    op = alg._cache.setdefault("op", opposite(alg))
    DM = dual_module(regular_module(alg), op)
    res = min_proj_resolution(DM, max_len=cap, strict=True)
    count = 0
    for k in range(res.length + 1):
        verts = res.term_verts(k)
        if all(_injective_is_projective(alg, v) for v in verts):
            count += 1
        else:
            break
    if count == res.length + 1 and res.complete:
        return cap
    return count


def is_selfinjective(alg: Algebra):
    return all(_injective_is_projective(alg, v) for v in alg.vertices)


# -- projective replacement and minimization ---------------------------


def to_projective_complex(C: ModComplex, cap=None):
    """Quasi-isomorphic based complex of projectives, built from the top
    degree down by projective covers of pullbacks."""
    alg = C.alg
    if cap is None:
        cap = default_cap(alg)
    degs = C.degrees()
    if not degs:
        return PerfComplex(alg, {}, {})
    hi, lo = max(degs), min(degs)
    P_infos = {}
    P_diffs = {}  # i -> eltmat P^i -> P^{i+1}
    pi = {}  # i -> Morphism P^i.module -> C.term(i)
    i = hi
    while True:
        Ci = C.term(i)
        Pnext = P_infos.get(i + 1)
        if Pnext is None:
            Pn_mod = zero_module(alg)
        else:
            Pn_mod = Pnext.module
        if Ci.total_dim == 0 and Pn_mod.total_dim == 0 and i < hi:
            break
        if i < lo - cap:
            raise CapExceeded("projective replacement exceeded the width cap")
        # X = {(c, p) : d_C c = pi(p), d_P p = 0} inside C^i (+) P^{i+1}
        S, incs, projs = direct_sum([Ci, Pn_mod])
        tgt1 = C.term(i + 1)
        dC = C.diff(i)
        f = alg.field
        mats = {}
        pi_next = pi.get(i + 1)
        dP_next = P_diffs.get(i + 1)
        if dP_next is not None:
            Pnn = P_infos[i + 2]
            dP_next_mor = eltmat_to_morphism(alg, Pnext, Pnn, dP_next)
        else:
            Pnn = None
            dP_next_mor = None
        rows2 = Pnn.module.dims if Pnn else {v: 0 for v in alg.vertices}
        for v in alg.vertices:
            r1 = tgt1.dims[v]
            r2 = rows2[v]
            m = Mat.zero(r1 + r2, S.dims[v], f)
            blk_dc = dC.mats[v] if dC is not None else Mat.zero(r1, Ci.dims[v], f)
            blk_pi = pi_next.mats[v] if pi_next is not None else Mat.zero(r1, Pn_mod.dims[v], f)
            # assemble rows: [d_C, -pi_next] and [0, d_P_next]
            for r in range(r1):
                for c in range(Ci.dims[v]):
                    m.a[r][c] = blk_dc.a[r][c]
                for c in range(Pn_mod.dims[v]):
                    m.a[r][Ci.dims[v] + c] = -blk_pi.a[r][c]
            if dP_next_mor is not None:
                dpm = dP_next_mor.mats[v]
                for r in range(r2):
                    for c in range(Pn_mod.dims[v]):
                        m.a[r1 + r][Ci.dims[v] + c] = dpm.a[r][c]
            mats[v] = m
        # kernel columns give X; cover it
        cols = {v: mats[v].kernel_basis() for v in alg.vertices}
        from .module import _sub_from_columns

        X, xinc = _sub_from_columns(S, cols, name="pullback")
        if X.total_dim == 0 and i <= lo:
            break
        info, cov = projective_cover(X)
        tot = xinc.compose(cov)  # P^i.module -> S
        pi_i = projs[0].compose(tot)
        dmod = projs[1].compose(tot)
        P_infos[i] = info
        pi[i] = pi_i
        if Pnext is not None and Pnext.verts:
            P_diffs[i] = morphism_to_eltmat(alg, info, Pnext, dmod)
        i -= 1
    terms = {d: inf.verts for d, inf in P_infos.items() if inf.verts}
    diffs = {d: em for d, em in P_diffs.items()
             if d in terms and (d + 1) in terms}
    return PerfComplex(alg, terms, diffs)


def _elt_inverse(alg, elt):
    """Inverse of an element e_v * (scalar + radical) * e_v."""
    f = alg.field
    c0 = None
    vidx = None
    for k, c in elt.items():
        if alg.basis[k].degree == 0:
            c0 = c
            vidx = k
    if not c0:
        raise ValueError("element is not invertible")
    inv_c0 = f.one() / c0
    # rho = elt/c0 - e; inverse = (e - rho + rho^2 - ...) / c0
    rho = {}
    for k, c in elt.items():
        if k != vidx:
            rho[k] = -(c * inv_c0)
        else:
            extra = c * inv_c0 - f.one()
            if extra:
                rho[k] = -extra
    acc = {vidx: f.one()}
    term = {vidx: f.one()}
    while True:
        term = alg.mul_elt(term, rho)
        if not term:
            break
        for k, c in term.items():
            v = acc.get(k, f.zero()) + c
            if v:
                acc[k] = v
            elif k in acc:
                del acc[k]
    return {k: c * inv_c0 for k, c in acc.items()}


def minimize(P: PerfComplex):
    """Homotopy-equivalent minimal complex via Gaussian elimination on
    differential entries with invertible degree-0 part."""
    alg = P.alg
    nv = len(alg.vertices)
    terms = {i: list(t) for i, t in P.terms.items()}
    diffs = {i: [[dict(e) for e in row] for row in d] for i, d in P.diffs.items()}

    def find_unit():
        for i, d in diffs.items():
            for r, row in enumerate(d):
                for s, elt in enumerate(row):
                    if any(k < nv and c for k, c in elt.items()):
                        return i, r, s
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        i, r, s = hit
        d = diffs[i]
        alpha = d[r][s]
        ainv = _elt_inverse(alg, alpha)
        nrows = len(d)
        ncols = len(d[0])
        # corrected middle differential without row r / column s
        nd = []
        for t in range(nrows):
            if t == r:
                continue
            row = []
            for s2 in range(ncols):
                if s2 == s:
                    continue
                corr = alg.mul_elt(alg.mul_elt(d[r][s2], ainv), d[t][s])
                e = dict(d[t][s2])
                for k, c in corr.items():
                    v = e.get(k, alg.field.zero()) - c
                    if v:
                        e[k] = v
                    elif k in e:
                        del e[k]
                row.append(e)
            nd.append(row)
        # adjacent differentials: drop the eliminated row/column
        if i - 1 in diffs:
            diffs[i - 1] = [row for t, row in enumerate(diffs[i - 1]) if t != s]
        if i + 1 in diffs:
            diffs[i + 1] = [[e for t, e in enumerate(row) if t != r] for row in diffs[i + 1]]
        terms[i] = [v for t, v in enumerate(terms[i]) if t != s]
        terms[i + 1] = [v for t, v in enumerate(terms[i + 1]) if t != r]
        if nd and nd[0]:
            diffs[i] = nd
        else:
            diffs[i] = nd if nd and nd[0] else eltmat_zero(len(terms[i + 1]), len(terms[i]))
    out = PerfComplex(alg, terms, diffs)
    out.check()
    assert out.is_minimal()
    return out


def nakayama(P: PerfComplex, cap=None):
    """The derived Nakayama functor: tensor a complex of projectives with
    the dual regular bimodule, then renormalize to projective terms."""
    alg = P.alg
    DL = _cached_dual_regular(alg)
    terms = {}
    offs = {}
    for i, verts in P.terms.items():
        terms[i], offs[i] = _col_sum(DL, verts)
    diffs = {}
    for i, em in P.diffs.items():
        diffs[i] = _col_sum_diff(
            DL, P.terms[i], P.terms[i + 1], _transpose_eltmat_for_diff(em),
            terms[i], offs[i], terms[i + 1], offs[i + 1],
        )
    mc = ModComplex(alg, terms, diffs)
    return minimize(to_projective_complex(mc, cap=cap))


def _transpose_eltmat_for_diff(em):
    # _col_sum_diff expects entries indexed [target summand][source summand],
    # which is already the layout of our differentials
    return em


def shifted_nakayama(P: PerfComplex, n, cap=None):
    """nu_n = nu followed by [-n]."""
    return nakayama(P, cap=cap).shift(-n)


def is_shifted_regular(P: PerfComplex):
    """Returns m if the complex is isomorphic in the derived category to
    the regular module placed in degree -m, else None."""
    table = P.cohomology_table()
    if len(table) != 1:
        return None
    (deg, H), = table.items()
    reg = P.alg._cache.setdefault("regmod", regular_module(P.alg))
    if H.dim_vector() != reg.dim_vector():
        return None
    if is_isomorphic(H, reg):
        return -deg
    return None


# -- Hom in the derived category ---------------------------------------


def _chain_map_space(P: PerfComplex, Q: PerfComplex, shift=0):
    """Coordinates for degree-`shift` maps P -> Q: per degree i, entries
    (r over Q^{i+shift}, s over P^i, basis elt with matching src/tgt)."""
    alg = P.alg
    coords = []
    for i in sorted(set(P.terms) | set(Q.terms)):
        pv = P.terms.get(i, [])
        qv = Q.terms.get(i + shift, [])
        for s, u in enumerate(pv):
            for r, v in enumerate(qv):
                for bidx, b in enumerate(alg.basis):
                    if b.src == v and b.tgt == u:
                        coords.append((i, r, s, bidx))
    return coords


def _apply_chain_condition(alg, P, Q, coords, vec, shift=0):
    """L(f) = d_Q∘f - (-1)^shift f∘d_P as a dict keyed by (i, t, s, bidx)
    living in degree shift+1 map space."""
    f = alg.field
    bydeg = {}
    for (i, r, s, bidx), c in zip(coords, vec):
        if c:
            bydeg.setdefault(i, {}).setdefault((r, s), {}).setdefault(bidx, f.zero())
            bydeg[i][(r, s)][bidx] += c
    out = {}

    def add(i, t, s, elt, sign=1):
        for k, c in elt.items():
            key = (i, t, s, k)
            v = out.get(key, f.zero()) + (c if sign > 0 else -c)
            if v:
                out[key] = v
            elif key in out:
                del out[key]

    for i in sorted(set(P.terms) | set(Q.terms)):
        fi = bydeg.get(i, {})
        # d_Q component: (d_Q∘f)[t][s] = sum_r f[r][s] * dQ[t][r]
        dQ = Q.diffs.get(i + shift)
        if dQ is not None and fi:
            for (r, s), elt in fi.items():
                for t in range(len(dQ)):
                    ge = dQ[t][r]
                    if ge:
                        add(i, t, s, alg.mul_elt(elt, ge))
        # f component: (f∘d_P)[t][s] = sum_r dP[r][s] * f^{i+1}[t][r]
        dP = P.diffs.get(i)
        fnext = bydeg.get(i + 1, {})
        if dP is not None and fnext:
            for (t, r), elt in fnext.items():
                for s in range(len(dP[0]) if dP else 0):
                    fe = dP[r][s]
                    if fe:
                        add(i, t, s, alg.mul_elt(fe, elt), sign=-1 if shift % 2 == 0 else 1)
    return out


def hom_in_D_dim(P: PerfComplex, Q: PerfComplex):
    """dim Hom of the derived category: degree-0 chain maps between
    complexes of projectives modulo null-homotopies."""
    alg = P.alg
    f = alg.field
    coords0 = _chain_map_space(P, Q, 0)
    coords1 = _chain_map_space(P, Q, 1)
    coordsm1 = _chain_map_space(P, Q, -1)
    idx1 = {key: k for k, key in enumerate(coords1)}
    n0 = len(coords0)
    if n0 == 0:
        return 0
    rows_L = []
    for j in range(n0):
        vec = [f.zero()] * n0
        vec[j] = f.one()
        img = _apply_chain_condition(alg, P, Q, coords0, vec, 0)
        col = [f.zero()] * len(coords1)
        for key, c in img.items():
            col[idx1[key]] = c
        rows_L.append(col)
    L = Mat.from_rows(rows_L, f, ncols=len(coords1)).transpose()
    ker_dim = n0 - L.rank() if L.rows else n0
    # boundaries: h |-> d_Q∘h + h∘d_P
    idx0 = {key: k for k, key in enumerate(coords0)}
    rows_B = []
    for j in range(len(coordsm1)):
        vec = [f.zero()] * len(coordsm1)
        vec[j] = f.one()
        img = _apply_chain_condition(alg, P, Q, coordsm1, vec, -1)
        col = [f.zero()] * n0
        for key, c in img.items():
            col[idx0[key]] = c
        rows_B.append(col)
    rank_B = Mat.from_rows(rows_B, f, ncols=n0).rank() if rows_B else 0
    return ker_dim - rank_B
