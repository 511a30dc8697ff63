"""Fractional Calabi-Yau certificates.

The twisted check is one-sided: it iterates the derived Nakayama functor
on the regular module and looks for a shifted copy of the regular module,
which certifies the isomorphism up to an algebra automorphism.  The
untwisted check works with complexes of bimodules over the enveloping
algebra and compares against the regular bimodule on the nose.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .algebra import enveloping
from .errors import CapExceeded
from .homology import (
    PerfComplex,
    _module_resolution,
    global_dimension,
    is_shifted_regular,
    minimize,
    nakayama,
    stalk_regular,
)
from .module import (
    bimodule_to_env_module,
    is_isomorphic,
    regular_bimodule,
)


class CyCertificate:
    def __init__(self, ell, m, twisted, evidence=None):
        self.ell = ell
        self.m = m
        self.twisted = twisted
        self.evidence = evidence or {}

    def to_dict(self):
        return {"ell": self.ell, "m": self.m, "twisted": self.twisted,
                "dimension": str(cy_dimension(self))}

    def __repr__(self):
        kind = "twisted" if self.twisted else "untwisted"
        return f"CyCertificate({self.m}/{self.ell}, {kind})"


def cy_dimension(cert: CyCertificate) -> Fraction:
    return Fraction(cert.m, cert.ell)


def combine_cy(certs):
    """Tensor rule for Calabi-Yau fractions: the product of algebras with
    certificates (m_i, ell_i) has ell = lcm(ell_i) and m = ell * sum of
    the fractions."""
    ell = lcm(*(c.ell for c in certs))
    total = sum(Fraction(c.m, c.ell) for c in certs)
    m = ell * total
    assert m.denominator == 1
    return int(m), ell


def check_twisted_cy(alg, ell, m, cap=None):
    """True when the ell-th power of the derived Nakayama functor sends
    the regular module to its shift by m, up to automorphism twist."""
    if ell < 1:
        raise ValueError("ell must be positive")
    global_dimension(alg, cap)  # raises CapExceeded when not finite
    C = stalk_regular(alg)
    for _ in range(ell):
        C = nakayama(C, cap=cap)
    return is_shifted_regular(C) == m


def find_twisted_cy(alg, ell_max=24, m_max=24, cap=None):
    """Smallest ell admitting a twisted certificate, or None."""
    try:
        global_dimension(alg, cap)
    except CapExceeded:
        return None
    C = stalk_regular(alg)
    for ell in range(1, ell_max + 1):
        C = nakayama(C, cap=cap)
        m = is_shifted_regular(C)
        if m is not None and 0 <= m <= m_max:
            return CyCertificate(ell, m, twisted=True,
                                 evidence={"route": "one-sided nakayama power"})
    return None


# -- bimodule-level machinery ------------------------------------------


def dual_regular_perf(alg):
    """Minimal resolution of the dual regular bimodule by enveloping-
    algebra projectives, as a complex in degrees [-length, 0]."""
    E = enveloping(alg)
    key = "env_res_mod"
    if key not in alg._cache:
        from .ar import _env_resolution

        _env_resolution(alg, 1)
    res = _module_resolution(alg._cache[key], 0)
    if not res.complete:
        raise CapExceeded("bimodule resolution of the dual regular module")
    return res.to_perf(), E


def tensor_complex_over_base(C: PerfComplex, D: PerfComplex, alg, E):
    """Tensor product over the base algebra of two complexes of
    enveloping-projective bimodules, again based in such bimodules.

    The projective at the vertex pair (u, v) tensored with the one at
    (u2, v2) splits into one copy of the projective at (u, v2) for every
    algebra basis element from u2 to v.
    """
    a, aop, pair_index = E.tensor_info
    f = alg.field
    idem = alg.idem
    mid = {}
    for u in alg.vertices:
        for v in alg.vertices:
            mid[(v, u)] = [i for i, b in enumerate(alg.basis)
                           if b.tgt == v and b.src == u]
    # summand lists per total degree: (p, r, s, middle basis index)
    terms = {}
    layout = {}
    pos = {}
    for p, ct in C.terms.items():
        for q, dt in D.terms.items():
            k = p + q
            for r, (u, v) in enumerate(ct):
                for s, (u2, v2) in enumerate(dt):
                    for bidx in mid[(v, u2)]:
                        terms.setdefault(k, []).append((u, v2))
                        layout.setdefault(k, []).append((p, r, s, bidx))
    for k, lst in layout.items():
        for c, ent in enumerate(lst):
            pos[(k, ent)] = c

    def add_elt(entry, eidx, coeff):
        cur = entry.get(eidx, f.zero()) + coeff
        if cur:
            entry[eidx] = cur
        elif eidx in entry:
            del entry[eidx]

    diffs = {}
    for k in terms:
        if k + 1 not in terms:
            continue
        d = [[{} for _ in layout[k]] for _ in layout[k + 1]]
        for col, (p, r, s, bidx) in enumerate(layout[k]):
            q = k - p
            b = alg.basis[bidx]
            # first-factor differential, degree p -> p+1
            em = C.diffs.get(p)
            if em is not None:
                for r2 in range(len(em)):
                    elt = em[r2][r]
                    if not elt:
                        continue
                    for eidx, cc in elt.items():
                        ii, jj = _rev(E)[eidx]
                        prod = alg.mul(jj, bidx)  # j * b
                        for b2, cb in prod.items():
                            row = pos.get((k + 1, (p + 1, r2, s, b2)))
                            if row is None:
                                continue
                            out_eidx = pair_index[(ii, idem[D.terms[q][s][1]])]
                            add_elt(d[row][col], out_eidx, cc * cb)
            # second-factor differential, degree q -> q+1, sign (-1)^p
            em2 = D.diffs.get(q)
            if em2 is not None:
                sign = f.one() if p % 2 == 0 else -f.one()
                for s2 in range(len(em2)):
                    elt = em2[s2][s]
                    if not elt:
                        continue
                    for eidx, cc in elt.items():
                        ii, jj = _rev(E)[eidx]
                        prod = alg.mul(bidx, ii)  # b * i
                        for b2, cb in prod.items():
                            row = pos.get((k + 1, (p, r, s2, b2)))
                            if row is None:
                                continue
                            u = C.terms[p][r][0]
                            out_eidx = pair_index[(idem[u], jj)]
                            add_elt(d[row][col], out_eidx, sign * cc * cb)
        diffs[k] = d
    out = PerfComplex(E, terms, diffs)
    return out


def _rev(E):
    if "pair_rev" not in E._cache:
        E._cache["pair_rev"] = {k: ij for ij, k in E.tensor_info[2].items()}
    return E._cache["pair_rev"]


def _regular_env_module(alg, E):
    key = "reg_env_mod"
    if key not in alg._cache:
        alg._cache[key] = bimodule_to_env_module(regular_bimodule(alg), E)
    return alg._cache[key]


def check_untwisted_cy(alg, ell, m, cap=None):
    """True when the ell-fold derived tensor power of the dual regular
    bimodule is the regular bimodule shifted by m, with no twist."""
    if ell < 1:
        raise ValueError("ell must be positive")
    global_dimension(alg, cap)
    P0, E = dual_regular_perf(alg)
    C = P0
    for _ in range(ell - 1):
        C = minimize(tensor_complex_over_base(P0, C, alg, E))
    table = C.cohomology_table()
    if set(table) != {-m}:
        return False
    H = table[-m]
    reg = _regular_env_module(alg, E)
    if H.dim_vector() != reg.dim_vector():
        return False
    return bool(is_isomorphic(H, reg))
