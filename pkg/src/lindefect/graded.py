"""Standard graded algebras, graded free modules and finitely presented modules.

A module ``M`` over ``R = S/I`` is stored as ``coker(P: F_1 -> F_0)`` with
``F_0 = (+) R(-row_twists[i])`` and the columns of ``P`` as vectors in ``F_0``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence

from .errors import DegenerateInputError, NonHomogeneousError, UsageError
from .field import Field
from .groebner import (
    Ambient,
    GroebnerBasis,
    ModuleOrder,
    Vector,
    _Reducer,
    check_homogeneous,
    groebner,
    ideal_reducers,
    kernel,
    minimal_generators,
    monomial_hilbert_numerator,
    poly_times_vector,
    series_coefficients,
    vec_add_scaled,
    vector_from_polys,
    vector_to_polys,
)
from .poly import PolyRing, Polynomial


class GradedAlgebra:
    """``R = k[x_1..x_n]/I`` with ``I`` homogeneous and generated in degrees >= 2."""

    def __init__(self, field: Field, variables: Sequence[str], ideal=()):
        self.ring = PolyRing(field, variables)
        gens = []
        for g in ideal:
            p = self.ring(g)
            if p.is_zero():
                continue
            d = p.homogeneous_degree()
            if d is None:
                raise NonHomogeneousError(f"ideal generator {p} is not homogeneous")
            if d < 2:
                raise UsageError(
                    f"ideal generator {p} has degree {d}; present the ring with relations "
                    "of degree >= 2 (eliminate linear relations first)")
            gens.append(p)
        self.ideal = tuple(gens)
        self.ambient = Ambient(field, self.ring.nvars,
                               ideal_reducers(gens, field, self.ring.nvars) if gens else ())
        self.koszul_status = None
        self._cache: Dict[str, object] = {}

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def variables(self):
        return self.ring.variables

    @property
    def is_polynomial(self) -> bool:
        return not self.ideal

    def __eq__(self, other):
        return (isinstance(other, GradedAlgebra) and self.ring == other.ring
                and self.ambient.reducers == other.ambient.reducers)

    def __hash__(self):
        return hash((self.ring, len(self.ambient.reducers)))

    def __repr__(self):
        if not self.ideal:
            return repr(self.ring)
        return f"{self.ring}/({', '.join(str(g) for g in self.ideal)})"

    # elements ------------------------------------------------------------------

    def __call__(self, value) -> Polynomial:
        return self.reduce(self.ring(value))

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of ``f`` modulo ``I``."""
        f = self.ring(f)
        if not self.ambient.reducers or f.is_zero():
            return f
        vec = _Reducer(ModuleOrder([0]), self.ambient).reduce(vector_from_polys([f]))
        return vector_to_polys(vec, self.ring, 1)[0]

    def reduce_vector(self, vec: Vector, rank: int) -> Vector:
        if not self.ambient.reducers or not vec:
            return dict(vec)
        return _Reducer(ModuleOrder([0] * rank), self.ambient).reduce(vec)

    # related objects ------------------------------------------------------------

    def polynomial_ring(self) -> "GradedAlgebra":
        if self.is_polynomial:
            return self
        return GradedAlgebra(self.field, self.variables)

    def quotient(self, extra) -> "GradedAlgebra":
        return GradedAlgebra(self.field, self.variables, list(self.ideal) + [self.ring(g) for g in extra])

    def free_module(self, twists: Sequence[int]) -> "GradedFreeModule":
        return GradedFreeModule(self, tuple(twists))

    def residue_field(self) -> "GradedModule":
        """``k = R/m`` presented by the variables."""
        zero = (0,) * self.nvars
        cols = [self.ring.gen(i) for i in range(self.nvars)]
        return GradedModule(self, [0], [vector_from_polys([c]) for c in cols], [1] * self.nvars)

    def as_module(self) -> "GradedModule":
        return GradedModule(self, [0], [], [])

    def hilbert_numerator(self) -> Dict[int, int]:
        return monomial_hilbert_numerator(self.ambient.ideal_leads, self.nvars)

    def hilbert_function(self, d: int) -> int:
        return series_coefficients(self.hilbert_numerator(), self.nvars, d, d)[d]

    def dimension(self) -> int:
        return _dim_and_degree(self.hilbert_numerator(), self.nvars)[0]


def make_algebra(field, variables, ideal_gens=()) -> GradedAlgebra:
    if isinstance(field, str):
        field = Field.parse(field)
    return GradedAlgebra(field, variables, ideal_gens)


@dataclass(frozen=True)
class GradedFreeModule:
    """``(+) R(-a_j)`` over ``algebra``."""

    algebra: GradedAlgebra
    twists: tuple

    @property
    def rank(self) -> int:
        return len(self.twists)

    def basis_vector(self, j: int) -> Vector:
        return {(j, (0,) * self.algebra.nvars): self.algebra.field.one()}


class GradedModule:
    """The cokernel of a homogeneous degree-0 map ``(+) R(-col_twists) -> (+) R(-row_twists)``."""

    def __init__(self, algebra: GradedAlgebra, row_twists: Sequence[int],
                 columns: Sequence[Vector] = (), column_twists: Optional[Sequence[int]] = None):
        self.algebra = algebra
        self.row_twists = tuple(int(t) for t in row_twists)
        cols = []
        twists = []
        for j, col in enumerate(columns):
            col = algebra.reduce_vector(col, len(self.row_twists))
            d = check_homogeneous(col, self.row_twists, f"presentation column {j}")
            if column_twists is not None:
                if d is not None and d != column_twists[j]:
                    raise UsageError(
                        f"presentation column {j} has degree {d}, declared twist {column_twists[j]}")
                d = column_twists[j]
            if not col:
                continue  # zero relation
            cols.append(col)
            twists.append(d)
        self.columns = tuple(cols)
        self.column_twists = tuple(twists)
        self._cache: Dict[str, object] = {}

    @classmethod
    def from_matrix(cls, algebra: GradedAlgebra, row_twists: Sequence[int], matrix) -> "GradedModule":
        """Build from a row-major matrix of polynomials or strings (rows index ``F_0``)."""
        rows = len(row_twists)
        if len(matrix) != rows:
            raise UsageError(f"matrix has {len(matrix)} rows but {rows} row twists")
        ncols = len(matrix[0]) if rows else 0
        cols = []
        for j in range(ncols):
            entries = []
            for i in range(rows):
                if len(matrix[i]) != ncols:
                    raise UsageError(f"matrix row {i} has {len(matrix[i])} entries, expected {ncols}")
                try:
                    entries.append(algebra.ring(matrix[i][j]))
                except UsageError as exc:
                    raise type(exc)(f"matrix entry ({i}, {j}): {exc}") from exc
            try:
                cols.append(vector_from_polys(entries))
                check_homogeneous(cols[-1], row_twists, f"matrix column {j}")
            except NonHomogeneousError:
                raise NonHomogeneousError(
                    f"matrix column {j} is not homogeneous with row twists {list(row_twists)}") from None
        return cls(algebra, row_twists, cols)

    @property
    def rank(self) -> int:
        return len(self.row_twists)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self):
        return (f"GradedModule(over={self.algebra!r}, generators={list(self.row_twists)}, "
                f"relations={len(self.columns)})")

    def entry(self, i: int, j: int) -> Polynomial:
        return vector_to_polys(self.columns[j], self.algebra.ring, self.rank)[i]

    def matrix(self) -> List[List[Polynomial]]:
        cols = [vector_to_polys(c, self.algebra.ring, self.rank) for c in self.columns]
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.rank)]

    # Groebner data ----------------------------------------------------------------

    @cached_property
    def presentation_gb(self) -> GroebnerBasis:
        return groebner(self.columns, ModuleOrder(self.row_twists), self.algebra.ambient,
                        degrees=self.column_twists)

    def reduce(self, vec: Vector) -> Vector:
        """Normal form of an element of ``F_0`` modulo relations and ``I``."""
        return self.presentation_gb.normal_form(vec)

    def hilbert_numerator(self) -> Dict[int, int]:
        return self.presentation_gb.hilbert_numerator()

    def hilbert_function(self, d: int) -> int:
        return series_coefficients(self.hilbert_numerator(), self.algebra.nvars, d, d)[d]

    def basis_in_degree(self, d: int) -> List[Vector]:
        one = self.field.one()
        return [{t: one} for t in self.presentation_gb.standard_terms(d)]

    def is_zero(self) -> bool:
        return not self.hilbert_numerator()

    # derived modules -------------------------------------------------------------

    def minimal_presentation(self) -> "GradedModule":
        """An isomorphic module whose generators and relations are both minimal."""
        if "minpres" in self._cache:
            return self._cache["minpres"]
        mp = _minimize_presentation(self)
        mp._cache["minpres"] = mp
        self._cache["minpres"] = mp
        return mp

    def over_polynomial_ring(self) -> "GradedModule":
        """``M`` viewed as a module over the ambient polynomial ring ``S``."""
        alg = self.algebra
        if alg.is_polynomial:
            return self
        S = alg.polynomial_ring()
        cols = list(self.columns)
        twists = list(self.column_twists)
        for i, a in enumerate(self.row_twists):
            for g in alg.ideal:
                cols.append({(i, e): c for e, c in g.terms.items()})
                twists.append(a + g.homogeneous_degree())
        return GradedModule(S, self.row_twists, cols, twists)

    def twist(self, a: int) -> "GradedModule":
        """``M(a)``: degrees shift down by ``a``."""
        return GradedModule(self.algebra, [t - a for t in self.row_twists], self.columns,
                            [t - a for t in self.column_twists])

    def direct_sum(self, other: "GradedModule") -> "GradedModule":
        if other.algebra != self.algebra:
            raise UsageError("direct sum of modules over different algebras")
        r = self.rank
        cols = list(self.columns) + [{(c + r, e): v for (c, e), v in col.items()} for col in other.columns]
        return GradedModule(self.algebra, self.row_twists + other.row_twists, cols,
                            self.column_twists + other.column_twists)

    def submodule(self, gens: Sequence[Vector]) -> "GradedModule":
        """Presentation of the submodule of ``M`` generated by elements of ``F_0``."""
        gens = [dict(g) for g in gens if g]
        if not gens:
            return GradedModule(self.algebra, [])
        degs = [check_homogeneous(g, self.row_twists, f"submodule generator {i}")
                for i, g in enumerate(gens)]
        t = len(gens)
        ker = kernel(gens + list(self.columns), degs + list(self.column_twists),
                     self.row_twists, self.algebra.ambient, minimize=False)
        rels, rel_twists = [], []
        for v in ker:
            d = check_homogeneous(v, degs + list(self.column_twists))
            proj = {(c, e): x for (c, e), x in v.items() if c < t}
            if proj:
                rels.append(proj)
                rel_twists.append(d)
        return GradedModule(self.algebra, degs, rels, rel_twists)

    def quotient_by(self, forms: Sequence[Polynomial]) -> "GradedModule":
        return quotient_by_sequence(self, forms)


def _minimize_presentation(M: GradedModule) -> GradedModule:
    alg = M.algebra
    norm = alg.field.normalize
    zero = (0,) * alg.nvars
    rows = list(range(M.rank))
    cols = [dict(c) for c in M.columns]
    twists = list(M.column_twists)
    while True:
        pivot = None
        for j, col in enumerate(cols):
            for i in rows:
                if (i, zero) in col:
                    pivot = (j, i)
                    break
            if pivot:
                break
        if pivot is None:
            break
        j, i = pivot
        pc = cols[j]
        inv = alg.field.inv(pc[(i, zero)])
        new_cols, new_twists = [], []
        for k, col in enumerate(cols):
            if k == j:
                continue
            entry = {e: c for (ci, e), c in col.items() if ci == i}
            if entry:
                scaled = {e: norm(-c * inv) for e, c in entry.items()}
                col = dict(col)
                col = _add_poly_times_vector(col, scaled, pc, norm)
                col = alg.reduce_vector(col, M.rank)
            if col:
                new_cols.append(col)
                new_twists.append(twists[k])
        cols, twists = new_cols, new_twists
        rows.remove(i)
    index = {old: new for new, old in enumerate(rows)}
    cols = [{(index[c], e): v for (c, e), v in col.items()} for col in cols]
    row_twists = [M.row_twists[i] for i in rows]
    keep = minimal_generators(cols, row_twists, alg.ambient)
    return GradedModule(alg, row_twists, [cols[k] for k in keep], [twists[k] for k in keep])


def _add_poly_times_vector(target: Vector, poly_terms, vec: Vector, norm) -> Vector:
    for e1, c1 in poly_terms.items():
        vec_add_scaled(target, vec, c1, e1, norm)
    return target


# ---------------------------------------------------------------------------
# numerical invariants


@dataclass(frozen=True)
class NumericalProfile:
    hilbert_numerator: Dict[int, int]
    dim: Optional[int]
    depth: Optional[int]
    degree: Optional[int]
    nu: int
    indeg: Optional[int]
    projective_dimension_over_S: Optional[int]
    is_zero: bool = False

    def to_dict(self) -> dict:
        return {
            "hilbert_numerator": {str(k): v for k, v in sorted(self.hilbert_numerator.items())},
            "dim": self.dim,
            "depth": self.depth,
            "degree": self.degree,
            "nu": self.nu,
            "indeg": self.indeg,
            "pd_S": self.projective_dimension_over_S,
            "zero_module": self.is_zero,
        }


def _divide_one_minus_t(num: Dict[int, int]) -> Dict[int, int]:
    """Exact quotient ``num / (1 - t)``; caller checks ``num(1) == 0``."""
    lo, hi = min(num), max(num)
    out, acc = {}, 0
    for k in range(lo, hi):
        acc += num.get(k, 0)
        if acc:
            out[k] = acc
    return out


def _dim_and_degree(num: Dict[int, int], nvars: int):
    """``(dim, degree)`` from ``H(t) = num/(1-t)^nvars``; ``(None, None)`` for zero."""
    num = {k: v for k, v in num.items() if v}
    if not num:
        return None, None
    power = nvars
    while power > 0 and sum(num.values()) == 0:
        num = _divide_one_minus_t(num)
        power -= 1
    return power, sum(num.values())


def betti_numerator(betti: Dict[tuple, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for (n, j), b in betti.items():
        out[j] = out.get(j, 0) + (-1) ** n * b
    return {k: v for k, v in out.items() if v}


def numerical_profile(M: GradedModule) -> NumericalProfile:
    """Hilbert numerator, dim, depth, degree, nu and indeg of ``M``.

    Uses the minimal free resolution over the ambient polynomial ring;
    depth comes from Auslander-Buchsbaum.
    """
    from .complexes import minimal_resolution

    n = M.algebra.nvars
    MS = M.over_polynomial_ring()
    res = minimal_resolution(MS, cutoff=n + 1)
    num = betti_numerator(res.betti.entries)
    mp = M.minimal_presentation()
    if not num:
        return NumericalProfile({}, None, None, None, 0, None, None, is_zero=True)
    dim, degree = _dim_and_degree(num, n)
    pd = res.projective_dimension
    return NumericalProfile(num, dim, n - pd, degree, mp.rank, min(mp.row_twists), pd)


def _nonzero_profile(M: GradedModule) -> NumericalProfile:
    prof = numerical_profile(M)
    if prof.is_zero:
        raise DegenerateInputError("predicate undefined for the zero module")
    return prof


def is_cohen_macaulay(M: GradedModule) -> bool:
    prof = _nonzero_profile(M)
    return prof.dim == prof.depth


def has_minimal_degree(M: GradedModule) -> bool:
    prof = _nonzero_profile(M)
    return prof.dim == prof.depth and prof.degree == prof.nu


def is_regular_element(M: GradedModule, form: Polynomial) -> bool:
    """True iff multiplication by the homogeneous ``form`` is injective on ``M``."""
    form = M.algebra(form)
    if form.is_zero():
        return M.is_zero()
    d = form.homogeneous_degree()
    if d is None:
        raise NonHomogeneousError(f"{form} is not homogeneous")
    r = M.rank
    if r == 0:
        return True
    norm = M.field.normalize
    zero = (0,) * M.algebra.nvars
    cols = []
    for i in range(r):
        cols.append(poly_times_vector(form.terms, {(i, zero): M.field.one()}, norm))
    src = [a + d for a in M.row_twists] + list(M.column_twists)
    ker = kernel(cols + list(M.columns), src, M.row_twists, M.algebra.ambient, minimize=False)
    for v in ker:
        proj = {(c, e): x for (c, e), x in v.items() if c < r}
        # proj lies in the shifted copy F_0(-d); as an element of F_0 it has the same support
        if proj and M.reduce(proj):
            return False
    return True


def find_regular_linear_form(M: GradedModule, attempts: int = 20, seed: int = 0) -> Optional[Polynomial]:
    """A random linear form that is a non-zero-divisor on ``M``, or ``None``."""
    rng = random.Random(seed)
    ring = M.algebra.ring
    for _ in range(attempts):
        coeffs = [M.field.random(rng) for _ in range(ring.nvars)]
        if not any(coeffs):
            continue
        form = ring.from_terms({tuple(int(k == i) for k in range(ring.nvars)): c
                                for i, c in enumerate(coeffs)})
        if is_regular_element(M, form):
            return form
    return None


def quotient_by_sequence(M: GradedModule, forms: Sequence) -> GradedModule:
    """Presentation of ``M / (forms) M``."""
    alg = M.algebra
    cols = list(M.columns)
    twists = list(M.column_twists)
    zero = (0,) * alg.nvars
    norm = alg.field.normalize
    for f in forms:
        f = alg.ring(f)
        if f.is_zero():
            continue
        d = f.homogeneous_degree()
        if d is None:
            raise NonHomogeneousError(f"form {f} is not homogeneous")
        if d < 1:
            raise UsageError(f"form {f} must have positive degree")
        for i, a in enumerate(M.row_twists):
            cols.append(poly_times_vector(f.terms, {(i, zero): alg.field.one()}, norm))
            twists.append(a + d)
    return GradedModule(alg, M.row_twists, cols, twists)
