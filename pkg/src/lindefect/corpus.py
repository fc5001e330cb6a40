"""Seeded random fixtures: algebras over GF(101) and small graded modules."""

from __future__ import annotations

import itertools
import random
from typing import List, Optional, Sequence

from .field import Field
from .graded import GradedAlgebra, GradedModule
from .groebner import vector_from_polys
from .poly import monomials_of_degree

FIELD = Field(101)
VARS = {2: ["x", "y"], 3: ["x", "y", "z"]}


def polynomial_ring(nvars: int) -> GradedAlgebra:
    return GradedAlgebra(FIELD, VARS[nvars])


def cubic_control() -> GradedAlgebra:
    """``k[x]/(x^3)``: the non-Koszul control ring."""
    return GradedAlgebra(FIELD, ["x"], ["x^3"])


def random_monomial_quotient(rng: random.Random, nvars: int, count: Optional[int] = None) -> GradedAlgebra:
    """Quotient of a polynomial ring by random quadratic monomials (always Koszul)."""
    quads = list(monomials_of_degree(nvars, 2))
    if count is None:
        count = rng.randint(1, max(1, min(3, len(quads) - 2)))
    chosen = sorted(rng.sample(quads, count))
    names = VARS[nvars]
    gens = ["*".join(f"{v}^{e}" for v, e in zip(names, m) if e) for m in chosen]
    return GradedAlgebra(FIELD, names, gens)


def koszul_fixtures() -> List[GradedAlgebra]:
    """The fixed Koszul algebras used by the suites."""
    return [
        polynomial_ring(2),
        polynomial_ring(3),
        GradedAlgebra(FIELD, VARS[2], ["x^2", "x*y"]),
        GradedAlgebra(FIELD, VARS[3], ["x*y", "z^2"]),
        GradedAlgebra(FIELD, VARS[3], ["x^2", "y*z"]),
    ]


def gorenstein_fixtures() -> List[GradedAlgebra]:
    return [
        polynomial_ring(2),
        polynomial_ring(3),
        GradedAlgebra(FIELD, VARS[2], ["x^2", "y^2"]),
        GradedAlgebra(FIELD, VARS[3], ["x*y"]),
    ]


def random_form(rng: random.Random, R: GradedAlgebra, degree: int, terms: int = 2):
    """A random homogeneous form with at most ``terms`` monomials (may reduce to zero)."""
    if degree < 0:
        return R.ring.zero()
    monos = list(monomials_of_degree(R.nvars, degree))
    picked = rng.sample(monos, min(terms, len(monos)))
    coeffs = {m: rng.randrange(1, 101) for m in picked}
    return R(R.ring.from_terms(coeffs))


def random_module(rng: random.Random, R: GradedAlgebra, max_gens: int = 3, max_twist: int = 2,
                  max_rels: int = 4, density: float = 0.6) -> GradedModule:
    """A random finitely presented module with homogeneous relations."""
    ngens = rng.randint(1, max_gens)
    twists = sorted(rng.randint(0, max_twist) for _ in range(ngens))
    lo = twists[0]
    twists = [t - lo for t in twists]
    nrels = rng.randint(1, max_rels)
    cols, col_twists = [], []
    for _ in range(nrels):
        d = rng.randint(1, max(twists) + 2)
        entries = []
        for t in twists:
            if d - t >= 1 and rng.random() < density:
                entries.append(random_form(rng, R, d - t, rng.choice([1, 1, 2])))
            else:
                entries.append(R.ring.zero())
        col = vector_from_polys(entries)
        if col:
            cols.append(col)
            col_twists.append(d)
    return GradedModule(R, twists, cols, col_twists)


def cyclic_module(R: GradedAlgebra, gens: Sequence) -> GradedModule:
    polys = [R.ring(g) for g in gens]
    return GradedModule(R, [0], [vector_from_polys([p]) for p in polys],
                        [p.homogeneous_degree() for p in polys])


def monomial_module(rng: random.Random, R: GradedAlgebra) -> GradedModule:
    """A cyclic module ``R/J`` with ``J`` generated by random monomials of degree 1..3."""
    gens = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(1, 3)
        m = rng.choice(list(monomials_of_degree(R.nvars, d)))
        gens.append(R.ring.from_terms({m: 1}))
    return cyclic_module(R, gens)


def module_corpus(rng: random.Random, R: GradedAlgebra, count: int) -> List[GradedModule]:
    """Mix of random presentations and monomial cyclic modules, all nonzero."""
    out = []
    while len(out) < count:
        M = monomial_module(rng, R) if rng.random() < 0.3 else random_module(rng, R)
        if not M.is_zero():
            out.append(M)
    return out
