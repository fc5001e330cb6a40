"""Dense degreewise linear algebra, independent of the Groebner engine.

Everything here works in a single internal degree ``d`` at a time: the
degree-``d`` piece of ``S = k[x_1..x_n]`` is spanned by monomials, the ideal
piece ``I_d`` by monomial multiples of the original generators, and ranks
are computed by Gaussian elimination modulo a prime.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

import numpy as np


def monomials(nvars, d):
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return sorted(set(out))


def rank_mod_p(rows, p):
    """Rank of an integer matrix (list of rows or 2-d array) over GF(p)."""
    A = np.array(rows, dtype=np.int64) % p
    if A.size == 0:
        return 0
    r = 0
    nrows, ncols = A.shape
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if len(nz):
            A[nz] = (A[nz] - np.outer(col[nz], A[r])) % p
        r += 1
        if r == nrows:
            break
    return r


class DegreeSpace:
    """``(+)_j S_{d - a_j}`` with coordinates indexed by ``(j, monomial)``."""

    def __init__(self, nvars, twists, d):
        self.index = {}
        for j, a in enumerate(twists):
            for m in monomials(nvars, d - a):
                self.index[(j, m)] = len(self.index)

    @property
    def dim(self):
        return len(self.index)

    def vector(self, terms, p):
        v = [0] * self.dim
        for key, c in terms.items():
            v[self.index[key]] = (v[self.index[key]] + int(c)) % p
        return v


def _ideal_rows(space, nvars, twists, d, ideal, p):
    """Spanning rows of ``(+)_j I_{d - a_j}``."""
    rows = []
    for j, a in enumerate(twists):
        for g in ideal:
            gd = sum(next(iter(g)))
            for m in monomials(nvars, d - a - gd):
                terms = {}
                for e, c in g.items():
                    key = (j, tuple(x + y for x, y in zip(e, m)))
                    terms[key] = terms.get(key, 0) + c
                rows.append(space.vector(terms, p))
    return rows


def _image_rows(src_twists, tgt_space, nvars, d, columns, p):
    """Images of the monomial basis of ``(+)_j S_{d - a_j}`` under the given columns."""
    rows = []
    for j, a in enumerate(src_twists):
        for m in monomials(nvars, d - a):
            terms = {}
            for (i, e), c in columns[j].items():
                key = (i, tuple(x + y for x, y in zip(e, m)))
                terms[key] = terms.get(key, 0) + c
            rows.append(tgt_space.vector(terms, p))
    return rows


def homology_dimension(modules, differentials, ideal, nvars, p, n, d):
    """``dim_k H_n(F)_d`` for a complex of free ``S/I``-modules.

    ``modules[n]`` is the twist list of ``F_n``; ``differentials[n]`` the
    columns of ``d_n`` as ``{(row, exponent): coeff}``; ``ideal`` a list of
    ``{exponent: coeff}`` generators of ``I``.
    """
    tw = modules.get(n, ())
    if not tw:
        return 0
    U = DegreeSpace(nvars, tw, d)
    K = _ideal_rows(U, nvars, tw, d, ideal, p)
    rk_K = rank_mod_p(K, p) if K else 0
    # cycles: preimage of I-part of F_{n-1}
    low = modules.get(n - 1, ())
    if low and n in differentials:
        V = DegreeSpace(nvars, low, d)
        KV = _ideal_rows(V, nvars, low, d, ideal, p)
        rk_KV = rank_mod_p(KV, p) if KV else 0
        img = _image_rows(tw, V, nvars, d, differentials[n], p)
        rk_img_mod = rank_mod_p(img + KV, p) - rk_KV if img else 0
        cycles = U.dim - rk_img_mod - rk_K
    else:
        cycles = U.dim - rk_K
    # boundaries
    up = modules.get(n + 1, ())
    if up and (n + 1) in differentials:
        img = _image_rows(up, U, nvars, d, differentials[n + 1], p)
        bounds = (rank_mod_p(img + K, p) if img or K else 0) - rk_K
    else:
        bounds = 0
    return cycles - bounds


def complex_data(F):
    """Plain-data view of a ``FreeComplex`` for the oracle."""
    modules = {n: list(F.twists(n)) for n in F.positions()}
    diffs = {n: [dict(c) for c in F.differential(n)] for n in F.differentials}
    ideal = [dict(g.terms) for g in F.algebra.ideal]
    return modules, diffs, ideal, F.algebra.nvars, F.algebra.field.characteristic


def homology_nonzero_through(F, n, max_degree):
    """Whether ``H_n(F)_d != 0`` for some ``d <= max_degree``."""
    modules, diffs, ideal, nvars, p = complex_data(F)
    lo = min((a for t in modules.values() for a in t), default=0)
    for d in range(lo, max_degree + 1):
        if homology_dimension(modules, diffs, ideal, nvars, p, n, d):
            return True
    return False


def module_hilbert_function(row_twists, columns, ideal, nvars, p, d):
    """``dim_k M_d`` for ``M = coker`` of the given columns over ``S/I``."""
    U = DegreeSpace(nvars, row_twists, d)
    rows = _ideal_rows(U, nvars, row_twists, d, ideal, p)
    for col in columns:
        deg = None
        for (i, e) in col:
            deg = row_twists[i] + sum(e)
            break
        for m in monomials(nvars, d - deg):
            terms = {}
            for (i, e), c in col.items():
                key = (i, tuple(x + y for x, y in zip(e, m)))
                terms[key] = terms.get(key, 0) + c
            rows.append(U.vector(terms, p))
    return U.dim - (rank_mod_p(rows, p) if rows else 0)


def kernel_dimension(src_twists, tgt_twists, columns, ideal, nvars, p, d):
    """``dim_k`` of the degree-``d`` kernel of a map of free ``S/I``-modules."""
    modules = {1: list(src_twists), 0: list(tgt_twists)}
    return homology_dimension(modules, {1: columns}, ideal, nvars, p, 1, d)
