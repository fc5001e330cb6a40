"""Complexes of graded free modules: resolutions, Betti tables and complex calculus.

A :class:`FreeComplex` stores, for each homological position ``n``, the
twists of ``F_n`` and the columns of ``d_n: F_n -> F_{n-1}`` (one vector in
``F_{n-1}`` per basis element of ``F_n``).  Complexes that are finite
prefixes of infinite ones carry ``valid_through``: the highest position at
which their homology (and that of their linear part) is the true one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NonHomogeneousError, PreconditionError, UnsupportedError, UsageError
from .graded import GradedAlgebra, GradedModule
from .groebner import (
    ModuleOrder,
    Vector,
    check_homogeneous,
    groebner,
    kernel,
    poly_times_vector,
    vec_add_scaled,
    vector_from_polys,
    vector_to_polys,
)
from .poly import Polynomial

DEFAULT_CUTOFF = 6


class FreeComplex:
    """A bounded complex of graded free modules with homogeneous degree-0 differentials."""

    def __init__(self, algebra: GradedAlgebra, modules: Dict[int, Sequence[int]],
                 differentials: Optional[Dict[int, Sequence[Vector]]] = None,
                 valid_through: Optional[int] = None, check: bool = True):
        self.algebra = algebra
        self.modules: Dict[int, Tuple[int, ...]] = {
            n: tuple(t) for n, t in sorted(modules.items()) if len(t)}
        differentials = differentials or {}
        self.differentials: Dict[int, Tuple[Vector, ...]] = {}
        for n, cols in differentials.items():
            src = self.twists(n)
            tgt = self.twists(n - 1)
            if len(cols) != len(src):
                raise UsageError(f"d_{n} has {len(cols)} columns but F_{n} has rank {len(src)}")
            reduced = []
            for j, col in enumerate(cols):
                col = algebra.reduce_vector(col, len(tgt)) if col else {}
                if check and col:
                    d = check_homogeneous(col, tgt, f"column {j} of d_{n}")
                    if d != src[j]:
                        raise UsageError(
                            f"column {j} of d_{n} has degree {d} but F_{n} twist is {src[j]}")
                reduced.append(col)
            if any(reduced):
                self.differentials[n] = tuple(reduced)
        self.valid_through = valid_through

    # structure -------------------------------------------------------------------

    @property
    def lo(self) -> Optional[int]:
        return min(self.modules) if self.modules else None

    @property
    def hi(self) -> Optional[int]:
        return max(self.modules) if self.modules else None

    @property
    def is_complete(self) -> bool:
        return self.valid_through is None

    def positions(self) -> List[int]:
        return sorted(self.modules)

    def twists(self, n: int) -> Tuple[int, ...]:
        return self.modules.get(n, ())

    def rank(self, n: int) -> int:
        return len(self.twists(n))

    def differential(self, n: int) -> Tuple[Vector, ...]:
        """Columns of ``d_n``; zero columns are empty dicts."""
        cols = self.differentials.get(n)
        if cols is None:
            return tuple({} for _ in self.twists(n))
        return cols

    def entry(self, n: int, i: int, j: int) -> Polynomial:
        """Entry in row ``i`` (basis of ``F_{n-1}``), column ``j`` (basis of ``F_n``) of ``d_n``."""
        col = self.differential(n)[j]
        return vector_to_polys(col, self.algebra.ring, self.rank(n - 1))[i]

    def matrix(self, n: int) -> List[List[Polynomial]]:
        r = self.rank(n - 1)
        cols = [vector_to_polys(c, self.algebra.ring, r) for c in self.differential(n)]
        return [[cols[j][i] for j in range(len(cols))] for i in range(r)]

    def homology_positions(self) -> List[int]:
        """Positions whose homology is determined by the stored data."""
        out = []
        for n in self.positions():
            if self.valid_through is not None and n > self.valid_through:
                continue
            out.append(n)
        return out

    def is_minimal(self) -> bool:
        return not self.unit_entries()

    def unit_entries(self) -> List[Tuple[int, int, int]]:
        zero = (0,) * self.algebra.nvars
        out = []
        for n, cols in self.differentials.items():
            for j, col in enumerate(cols):
                for (c, e) in col:
                    if e == zero:
                        out.append((n, c, j))
        return out

    def compose_is_zero(self, n: int) -> bool:
        """``d_{n-1} o d_n == 0`` exactly (modulo ``I``)."""
        if n not in self.differentials or (n - 1) not in self.differentials:
            return True
        lower = self.differential(n - 1)
        norm = self.algebra.field.normalize
        r = self.rank(n - 2)
        for col in self.differential(n):
            acc: Vector = {}
            for (c, e), v in col.items():
                vec_add_scaled(acc, lower[c], v, e, norm)
            if self.algebra.reduce_vector(acc, r):
                return False
        return True

    def check_square_zero(self) -> bool:
        return all(self.compose_is_zero(n) for n in self.positions())

    def shift(self, k: int) -> "FreeComplex":
        """``Sigma^k F``: position ``n`` moves to ``n + k``; differentials pick up ``(-1)^k``."""
        norm = self.algebra.field.normalize
        sign = -1 if k % 2 else 1
        diffs = {n + k: [{t: norm(sign * v) for t, v in col.items()} for col in cols]
                 for n, cols in self.differentials.items()}
        vt = None if self.valid_through is None else self.valid_through + k
        return FreeComplex(self.algebra, {n + k: t for n, t in self.modules.items()}, diffs,
                           vt, check=False)

    def __repr__(self):
        ranks = ", ".join(f"{n}:{self.rank(n)}" for n in self.positions())
        return f"FreeComplex({ranks}; valid_through={self.valid_through})"


# ---------------------------------------------------------------------------
# Betti tables


@dataclass
class BettiTable:
    entries: Dict[Tuple[int, int], int]
    cutoff: int
    terminated: bool

    @classmethod
    def from_complex(cls, F: FreeComplex, cutoff: int, terminated: bool) -> "BettiTable":
        entries: Dict[Tuple[int, int], int] = {}
        for n in F.positions():
            for j in F.twists(n):
                entries[(n, j)] = entries.get((n, j), 0) + 1
        return cls(entries, cutoff, terminated)

    def __getitem__(self, key) -> int:
        return self.entries.get(tuple(key), 0)

    def total(self, n: int) -> int:
        return sum(v for (m, _), v in self.entries.items() if m == n)

    def totals(self) -> List[int]:
        if not self.entries:
            return []
        top = max(n for n, _ in self.entries)
        return [self.total(n) for n in range(top + 1)]

    def regularity(self) -> Optional[int]:
        return max((j - n for (n, j), v in self.entries.items() if v), default=None)

    def nonlinear_entries(self, i: int) -> List[Tuple[int, int]]:
        """Positions ``(n, j)`` with ``j != n + i`` and a nonzero Betti number."""
        return sorted((n, j) for (n, j), v in self.entries.items() if v and j != n + i)

    def to_dict(self) -> dict:
        return {
            "betti": [{"n": n, "j": j, "value": v} for (n, j), v in sorted(self.entries.items())],
            "totals": self.totals(),
            "cutoff": self.cutoff,
            "terminated": self.terminated,
        }

    def to_text(self) -> str:
        """Macaulay-style table: rows ``j - n``, columns ``n``."""
        if not self.entries:
            return "0 (zero module)\n"
        ns = range(0, max(n for n, _ in self.entries) + 1)
        rows = sorted({j - n for (n, j) in self.entries})
        cells = [[str(n) for n in ns], [str(self.total(n)) for n in ns]]
        labels = ["", "total:"]
        for r in range(rows[0], rows[-1] + 1):
            labels.append(f"{r}:")
            cells.append([str(self.entries[(n, n + r)]) if self.entries.get((n, n + r)) else "."
                          for n in ns])
        width = max(len(c) for row in cells for c in row)
        lw = max(len(l) for l in labels)
        lines = [f"{l:>{lw}} " + " ".join(f"{c:>{width}}" for c in row)
                 for l, row in zip(labels, cells)]
        tail = "terminated" if self.terminated else f"computed through n = {self.cutoff}"
        return "\n".join(lines) + f"\n({tail})\n"


@dataclass
class ResolutionPrefix:
    complex: FreeComplex
    module: GradedModule
    cutoff: int
    terminated: bool

    @property
    def betti(self) -> BettiTable:
        return BettiTable.from_complex(self.complex, self.cutoff, self.terminated)

    @property
    def projective_dimension(self) -> Optional[int]:
        """``pd`` when the resolution terminated, else ``None``; ``-1`` for the zero module."""
        if not self.terminated:
            return None
        return self.complex.hi if self.complex.modules else -1


def _free_numerator(twists: Sequence[int], ring_num: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for a in twists:
        for k, v in ring_num.items():
            out[k + a] = out.get(k + a, 0) + v
    return {k: v for k, v in out.items() if v}


def _is_injective(cols, source, target, algebra: GradedAlgebra) -> bool:
    """Hilbert-series test that a map of free modules has zero kernel."""
    ring_num = algebra.hilbert_numerator()
    gb = groebner(cols, ModuleOrder(target), algebra.ambient, degrees=source)
    coker = gb.hilbert_numerator()
    lhs = _free_numerator(source, ring_num)
    rhs = _free_numerator(target, ring_num)
    for k, v in coker.items():
        rhs[k] = rhs.get(k, 0) - v
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


def minimal_resolution(M: GradedModule, cutoff: int = DEFAULT_CUTOFF) -> ResolutionPrefix:
    """Minimal graded free resolution of ``M`` through homological position ``cutoff``."""
    if cutoff < 0:
        raise UsageError("cutoff must be non-negative")
    alg = M.algebra
    P = M.minimal_presentation()
    modules: Dict[int, Sequence[int]] = {}
    diffs: Dict[int, Sequence[Vector]] = {}
    if P.rank == 0:
        F = FreeComplex(alg, {}, {}, None, check=False)
        return ResolutionPrefix(F, M, cutoff, True)
    modules[0] = P.row_twists
    terminated = False
    if not P.columns:
        terminated = True
    elif cutoff >= 1:
        modules[1] = P.column_twists
        diffs[1] = P.columns
        for n in range(2, cutoff + 1):
            ker = kernel(diffs[n - 1], modules[n - 1], modules[n - 2], alg.ambient)
            if not ker:
                terminated = True
                break
            degs = [check_homogeneous(v, modules[n - 1]) for v in ker]
            order = sorted(range(len(ker)), key=lambda i: degs[i])
            modules[n] = [degs[i] for i in order]
            diffs[n] = [ker[i] for i in order]
        else:
            terminated = _is_injective(diffs[cutoff], modules[cutoff], modules[cutoff - 1], alg)
    top = max(modules)
    F = FreeComplex(alg, modules, diffs, None if terminated else top - 1, check=False)
    return ResolutionPrefix(F, M, cutoff, terminated)


def betti_table(M: GradedModule, cutoff: int = DEFAULT_CUTOFF) -> BettiTable:
    return minimal_resolution(M, cutoff).betti


def regularity(M: GradedModule, cutoff: Optional[int] = None) -> int:
    """Castelnuovo-Mumford regularity ``max{j - n : beta_{n,j} != 0}``.

    Over a polynomial ring the resolution is always finite.  Over a quotient
    the value is returned only when the resolution terminates within
    ``cutoff``; otherwise :class:`UnsupportedError` carries the lower
    estimate from the computed prefix as ``lower_bound``.
    """
    alg = M.algebra
    if cutoff is None:
        cutoff = alg.nvars + 1 if alg.is_polynomial else DEFAULT_CUTOFF
    res = minimal_resolution(M, cutoff)
    reg = res.betti.regularity()
    if not res.terminated:
        err = UnsupportedError(
            f"resolution over {alg} did not terminate by n = {cutoff}; "
            f"regularity is at least {reg}")
        err.lower_bound = reg
        raise err
    if reg is None:
        raise UnsupportedError("the zero module has no regularity")
    return reg


@dataclass(frozen=True)
class LinearStatus:
    """Outcome of an ``i``-linearity check: ``yes``, ``yes_up_to`` or ``no``."""

    status: str
    cutoff: int
    witness: Optional[Tuple[int, int]] = None

    @property
    def holds(self) -> bool:
        return self.status != "no"

    def to_dict(self) -> dict:
        d = {"status": self.status, "cutoff": self.cutoff}
        if self.witness is not None:
            d["witness"] = {"n": self.witness[0], "j": self.witness[1]}
        return d


def linear_status_from_betti(betti: BettiTable, i: int) -> LinearStatus:
    bad = betti.nonlinear_entries(i)
    if bad:
        return LinearStatus("no", betti.cutoff, bad[0])
    return LinearStatus("yes" if betti.terminated else "yes_up_to", betti.cutoff)


def has_i_linear_resolution(M: GradedModule, i: int, cutoff: int = DEFAULT_CUTOFF) -> LinearStatus:
    """Check ``beta_{n,j}(M) = 0`` for ``j != n + i`` through position ``cutoff``."""
    return linear_status_from_betti(betti_table(M, cutoff), i)


# ---------------------------------------------------------------------------
# homology


def _kernel_generators(F: FreeComplex, n: int) -> List[Vector]:
    twists = F.twists(n)
    one = F.algebra.field.one()
    zero = (0,) * F.algebra.nvars
    if n not in F.differentials:
        return [{(j, zero): one} for j in range(len(twists))]
    return kernel(F.differential(n), twists, F.twists(n - 1), F.algebra.ambient, minimize=False)


def homology_witness_degrees(F: FreeComplex, n: int) -> List[int]:
    """Degrees of kernel generators at position ``n`` that are not boundaries.

    Empty exactly when ``H_n(F) = 0``; ``H_n(F)`` is nonzero in some degree
    ``<= D`` iff some returned degree is ``<= D``.
    """
    twists = F.twists(n)
    if not twists:
        return []
    kers = _kernel_generators(F, n)
    if not kers:
        return []
    image = [c for c in F.differential(n + 1) if c]
    gb = groebner(image, ModuleOrder(twists), F.algebra.ambient)
    out = []
    for v in kers:
        if gb.normal_form(v):
            out.append(check_homogeneous(v, twists))
    return sorted(out)


def homology_is_zero(F: FreeComplex, n: int) -> bool:
    if F.valid_through is not None and n > F.valid_through:
        raise PreconditionError(f"homology at {n} is not determined (valid through {F.valid_through})")
    return not homology_witness_degrees(F, n)


def homology_module(F: FreeComplex, n: int) -> GradedModule:
    """``H_n(F)`` as a finitely presented module."""
    if F.valid_through is not None and n > F.valid_through:
        raise PreconditionError(f"homology at {n} is not determined (valid through {F.valid_through})")
    twists = F.twists(n)
    if not twists:
        return GradedModule(F.algebra, [])
    coker = GradedModule(F.algebra, twists, [c for c in F.differential(n + 1) if c],
                         [F.twists(n + 1)[j] for j, c in enumerate(F.differential(n + 1)) if c])
    if n not in F.differentials:
        return coker
    kers = _kernel_generators(F, n)
    return coker.submodule(kers)


# ---------------------------------------------------------------------------
# complex calculus


def complex_from_map(algebra: GradedAlgebra, target_twists, source_twists, columns,
                     position: int = 1) -> FreeComplex:
    """The two-term complex ``F_position -> F_{position-1}``."""
    return FreeComplex(algebra, {position: source_twists, position - 1: target_twists},
                       {position: columns})


def truncate_above(F: FreeComplex, s: int) -> FreeComplex:
    """The hard truncation ``F_{>=s}`` (positions kept, lower ones dropped)."""
    mods = {n: t for n, t in F.modules.items() if n >= s}
    diffs = {n: c for n, c in F.differentials.items() if n > s}
    return FreeComplex(F.algebra, mods, diffs, F.valid_through, check=False)


def syzygy_module(F: FreeComplex, s: int) -> GradedModule:
    """``W = H_s(F_{>=s}) = coker(d_{s+1}: F_{s+1} -> F_s)``.

    Requires ``H_i(F) = 0`` for every determined position ``i > s``.
    """
    for i in F.homology_positions():
        if i > s and not homology_is_zero(F, i):
            raise PreconditionError(f"H_{i}(F) is nonzero above s = {s}")
    cols = F.differential(s + 1)
    src = F.twists(s + 1)
    return GradedModule(F.algebra, F.twists(s), [c for c in cols if c],
                        [src[j] for j, c in enumerate(cols) if c])


def tensor_basis(F: FreeComplex, G: FreeComplex, n: int) -> List[Tuple[int, int, int, int]]:
    """Canonical basis of ``(F (x) G)_n``: ``(a, i, b, j)`` by ``a`` ascending, then ``i``, then ``j``."""
    out = []
    for a in F.positions():
        b = n - a
        if b not in G.modules:
            continue
        for i in range(F.rank(a)):
            for j in range(G.rank(b)):
                out.append((a, i, b, j))
    return out


def tensor(F: FreeComplex, G: FreeComplex) -> FreeComplex:
    """Total tensor complex with ``d(a (x) b) = da (x) b + (-1)^|a| a (x) db``."""
    if F.algebra != G.algebra:
        raise UsageError("tensor product of complexes over different algebras")
    alg = F.algebra
    norm = alg.field.normalize
    if not F.modules or not G.modules:
        return FreeComplex(alg, {}, {})
    positions = range(F.lo + G.lo, F.hi + G.hi + 1)
    bases = {n: tensor_basis(F, G, n) for n in positions}
    index = {n: {(a, i, b, j): k for k, (a, i, b, j) in enumerate(bases[n])} for n in positions}
    modules = {n: [F.twists(a)[i] + G.twists(b)[j] for (a, i, b, j) in bases[n]] for n in positions}
    diffs = {}
    for n in positions:
        if n - 1 not in index or not bases[n]:
            continue
        tgt = index[n - 1]
        cols = []
        for (a, i, b, j) in bases[n]:
            col: Vector = {}
            if a - 1 in F.modules and a in F.differentials:
                for (c, e), v in F.differential(a)[i].items():
                    col[(tgt[(a - 1, c, b, j)], e)] = v
            if b - 1 in G.modules and b in G.differentials:
                sign = -1 if a % 2 else 1
                for (c, e), v in G.differential(b)[j].items():
                    t = (tgt[(a, i, b - 1, c)], e)
                    val = norm(col.get(t, 0) + sign * v)
                    if val:
                        col[t] = val
                    else:
                        col.pop(t, None)
            cols.append(col)
        diffs[n] = cols
    candidates = []
    if F.valid_through is not None:
        candidates.append(F.valid_through + G.lo)
    if G.valid_through is not None:
        candidates.append(G.valid_through + F.lo)
    vt = min(candidates) if candidates else None
    return FreeComplex(alg, modules, diffs, vt, check=False)


def dual_into_ring(F: FreeComplex) -> FreeComplex:
    """``Hom_R(F, R)``: ``F_n^*`` sits at ``-n`` with twists negated; ``d = (-1)^n d_n^T``."""
    if not F.is_complete:
        raise UnsupportedError("dual of a truncated (possibly infinite) complex")
    alg = F.algebra
    norm = alg.field.normalize
    modules = {-n: [-a for a in t] for n, t in F.modules.items()}
    diffs = {}
    for n in F.positions():
        if n not in F.differentials:
            continue
        sign = -1 if n % 2 else 1
        src_rank = F.rank(n - 1)
        cols = [dict() for _ in range(src_rank)]
        for j, col in enumerate(F.differential(n)):
            for (i, e), v in col.items():
                cols[i][(j, e)] = norm(sign * v)
        diffs[-n + 1] = cols
    return FreeComplex(alg, modules, diffs, None, check=False)


def koszul_complex(forms: Sequence, base: GradedAlgebra,
                   degrees: Optional[Sequence[int]] = None) -> FreeComplex:
    """Koszul complex ``K(forms; R)`` on exterior-algebra basis subsets in lexicographic order.

    Zero forms are allowed; their degree comes from ``degrees`` (default 1).
    """
    polys = [base(f) for f in forms]
    degs = []
    for k, f in enumerate(polys):
        if f.is_zero():
            degs.append(degrees[k] if degrees is not None else 1)
            continue
        d = f.homogeneous_degree()
        if d is None:
            raise NonHomogeneousError(f"Koszul form {f} is not homogeneous")
        if d == 0:
            raise UsageError(f"Koszul form {f} has degree 0")
        if degrees is not None and degrees[k] != d:
            raise UsageError(f"form {f} has degree {d}, not {degrees[k]}")
        degs.append(d)
    c = len(polys)
    norm = base.field.normalize
    bases = {n: list(itertools.combinations(range(c), n)) for n in range(c + 1)}
    index = {n: {s: k for k, s in enumerate(b)} for n, b in bases.items()}
    modules = {n: [sum(degs[i] for i in s) for s in b] for n, b in bases.items()}
    diffs = {}
    for n in range(1, c + 1):
        cols = []
        for s in bases[n]:
            col: Vector = {}
            for k, i in enumerate(s):
                rest = s[:k] + s[k + 1:]
                comp = index[n - 1][rest]
                sign = -1 if k % 2 else 1
                for e, v in polys[i].terms.items():
                    col[(comp, e)] = norm(sign * v)
            cols.append(col)
        diffs[n] = cols
    return FreeComplex(base, modules, diffs, None, check=False)


def base_change_complex(F: FreeComplex, target: GradedAlgebra) -> FreeComplex:
    """``target (x)_R F`` for a quotient ``target = R/J`` of ``F.algebra``."""
    if target.ring != F.algebra.ring:
        raise UsageError("base change target must share the ambient polynomial ring")
    for g in F.algebra.ideal:
        if not target.reduce(g).is_zero():
            raise UsageError(f"target ring does not contain the relation {g}")
    diffs = {n: [target.reduce_vector(c, F.rank(n - 1)) for c in cols]
             for n, cols in F.differentials.items()}
    return FreeComplex(target, F.modules, diffs, F.valid_through, check=False)
