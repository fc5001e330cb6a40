"""Homogeneous Buchberger algorithm for submodules of graded free modules.

Vectors are dicts ``{(component, exponent_tuple): raw_coefficient}``.  All
computations are over a polynomial ring ``S``; a quotient ``R = S/I`` is
handled by letting the reduced Groebner basis of ``I`` act on every
component ("ideal reducers"), which is the same as adjoining ``I*e_i`` to
every submodule without materialising those generators.
"""

from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import NonHomogeneousError, UsageError
from .field import Field
from .poly import (
    Exp,
    MonomialOrder,
    Polynomial,
    mono_coprime,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
)

Term = Tuple[int, Exp]
Vector = Dict[Term, object]

TOP = "term_over_position"
POT = "position_over_term"

_EXP_BASE = 1 << 12
_COMP_BASE = 1 << 20
_DEG_OFFSET = 1 << 24


class ModuleOrder:
    """A monomial order on terms ``x^a e_c`` of a graded free module.

    ``shifts[c]`` is the twist of component ``c``, so a term has degree
    ``|a| + shifts[c]``.  Optional ``blocks`` give an elimination order:
    a term in a higher block is larger than any term in a lower block.
    Keys are encoded as Python ints so they can be compared and negated
    cheaply inside heaps.
    """

    def __init__(self, shifts: Sequence[int], base: MonomialOrder = MonomialOrder.DEGREVLEX,
                 tie: str = TOP, blocks: Optional[Sequence[int]] = None):
        if tie not in (TOP, POT):
            raise UsageError(f"unknown tie-break {tie!r}")
        self.shifts = tuple(int(s) for s in shifts)
        self.base = base
        self.tie = tie
        self.blocks = tuple(blocks) if blocks is not None else None
        if self.blocks is not None and len(self.blocks) != len(self.shifts):
            raise UsageError("blocks and shifts must have the same length")
        self._cache: Dict[Term, int] = {}

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def degree(self, term: Term) -> int:
        return sum(term[1]) + self.shifts[term[0]]

    def key(self, term: Term) -> int:
        k = self._cache.get(term)
        if k is None:
            k = self._cache[term] = self._make_key(term)
        return k

    def _make_key(self, term: Term) -> int:
        comp, exp = term
        if self.base is MonomialOrder.DEGREVLEX:
            code = 0
            for e in reversed(exp):
                code = code * _EXP_BASE + (_EXP_BASE - 1 - e)
            mono = (sum(exp) + self.shifts[comp] + _DEG_OFFSET) * _EXP_BASE ** len(exp) + code
            mono_span = _DEG_OFFSET * 2 * _EXP_BASE ** len(exp)
        else:
            code = 0
            for e in exp:
                code = code * _EXP_BASE + e
            mono = code
            mono_span = _EXP_BASE ** len(exp)
        pos = _COMP_BASE - 1 - comp
        if self.tie == TOP:
            k = mono * _COMP_BASE + pos
        else:
            k = pos * mono_span + mono
        if self.blocks is not None:
            k += self.blocks[comp] * (mono_span * _COMP_BASE)
        return k

    def lead(self, vec: Vector) -> Term:
        return max(vec, key=self.key)

    def with_blocks(self, blocks: Sequence[int]) -> "ModuleOrder":
        return ModuleOrder(self.shifts, self.base, self.tie, blocks)

    def __eq__(self, other):
        return (isinstance(other, ModuleOrder) and self.shifts == other.shifts
                and self.base == other.base and self.tie == other.tie
                and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.shifts, self.base, self.tie, self.blocks))

    def __repr__(self):
        return f"ModuleOrder(shifts={self.shifts}, base={self.base.value}, tie={self.tie})"


@dataclass(frozen=True)
class Ambient:
    """Coefficient field, variable count and the ideal reducers of ``R = S/I``.

    ``reducers`` is the reduced Groebner basis of ``I`` as a tuple of
    ``(lead_exponent, monic_terms)`` pairs; it is empty for ``R = S``.
    """

    field: Field
    nvars: int
    reducers: tuple = ()

    @property
    def ideal_leads(self) -> List[Exp]:
        return [le for le, _ in self.reducers]


# ---------------------------------------------------------------------------
# vector helpers


def vector_degree(vec: Vector, shifts: Sequence[int]) -> Optional[int]:
    """Common degree of all terms, ``None`` if the vector is not homogeneous or zero."""
    degs = {sum(e) + shifts[c] for c, e in vec}
    return degs.pop() if len(degs) == 1 else None


def check_homogeneous(vec: Vector, shifts: Sequence[int], what: str = "vector") -> Optional[int]:
    if not vec:
        return None
    for c, _ in vec:
        if not 0 <= c < len(shifts):
            raise UsageError(f"{what}: component {c} outside rank {len(shifts)}")
    d = vector_degree(vec, shifts)
    if d is None:
        raise NonHomogeneousError(f"{what} is not homogeneous")
    return d


def vector_from_polys(polys: Sequence[Polynomial]) -> Vector:
    out: Vector = {}
    for c, p in enumerate(polys):
        for e, v in p.terms.items():
            out[(c, e)] = v
    return out


def vector_to_polys(vec: Vector, ring, rank: int) -> List[Polynomial]:
    parts = [dict() for _ in range(rank)]
    for (c, e), v in vec.items():
        parts[c][e] = v
    return [Polynomial(ring, p) for p in parts]


def vec_add_scaled(target: Vector, vec: Vector, coeff, mono: Optional[Exp], norm, comp_map=None):
    """``target += coeff * mono * vec`` in place."""
    for (c, e), v in vec.items():
        if mono is not None:
            e = tuple(a + b for a, b in zip(e, mono))
        if comp_map is not None:
            c = comp_map[c]
        t = (c, e)
        val = norm(target.get(t, 0) + coeff * v)
        if val:
            target[t] = val
        else:
            target.pop(t, None)
    return target


def vec_scale(vec: Vector, coeff, norm) -> Vector:
    return {t: norm(coeff * v) for t, v in vec.items()} if coeff else {}


def poly_times_vector(poly_terms: Dict[Exp, object], vec: Vector, norm) -> Vector:
    out: Vector = {}
    for e1, c1 in poly_terms.items():
        for (c, e2), c2 in vec.items():
            t = (c, tuple(a + b for a, b in zip(e1, e2)))
            out[t] = out.get(t, 0) + c1 * c2
    return {t: v for t, v in ((t, norm(v)) for t, v in out.items()) if v}


# ---------------------------------------------------------------------------
# the engine


class _Reducer:
    """Mutable Groebner-basis state: explicit elements plus ideal reducers."""

    def __init__(self, order: ModuleOrder, ambient: Ambient):
        self.order = order
        self.field = ambient.field
        self.norm = ambient.field.normalize
        self.ideal = ambient.reducers
        self.elements: List[Vector] = []
        self.leads: List[Term] = []
        self.by_comp: Dict[int, List[int]] = defaultdict(list)

    def find(self, term: Term):
        comp, exp = term
        for idx in self.by_comp.get(comp, ()):
            le = self.leads[idx][1]
            if mono_divides(le, exp):
                return self.elements[idx], le, comp, False
        for le, g in self.ideal:
            if mono_divides(le, exp):
                return g, le, comp, True
        return None

    def reduce(self, vec: Vector, full: bool = True) -> Vector:
        """Normal form of ``vec``; all reducers are monic."""
        if not vec:
            return {}
        key = self.order.key
        norm = self.norm
        v = dict(vec)
        heap = [(-key(t), t) for t in v]
        heapq.heapify(heap)
        result: Vector = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = v.get(t)
            if c is None:
                continue
            red = self.find(t)
            if red is None:
                result[t] = c
                del v[t]
                if not full:
                    result.update(v)
                    break
                continue
            rvec, le, comp, is_ideal = red
            mono = tuple(a - b for a, b in zip(t[1], le))
            del v[t]
            neg = -c
            if is_ideal:
                for e2, c2 in rvec.items():
                    t2 = (comp, tuple(a + b for a, b in zip(e2, mono)))
                    if t2 == t:
                        continue
                    old = v.get(t2)
                    if old is None:
                        val = norm(neg * c2)
                        if val:
                            v[t2] = val
                            heapq.heappush(heap, (-key(t2), t2))
                    else:
                        val = norm(old + neg * c2)
                        if val:
                            v[t2] = val
                        else:
                            del v[t2]
            else:
                for (c3, e2), c2 in rvec.items():
                    t2 = (c3, tuple(a + b for a, b in zip(e2, mono)))
                    if t2 == t:
                        continue
                    old = v.get(t2)
                    if old is None:
                        val = norm(neg * c2)
                        if val:
                            v[t2] = val
                            heapq.heappush(heap, (-key(t2), t2))
                    else:
                        val = norm(old + neg * c2)
                        if val:
                            v[t2] = val
                        else:
                            del v[t2]
        return result

    def add(self, vec: Vector) -> int:
        lt = self.order.lead(vec)
        inv = self.field.inv(vec[lt])
        if inv != 1:
            vec = vec_scale(vec, inv, self.norm)
        idx = len(self.elements)
        self.elements.append(vec)
        self.leads.append(lt)
        self.by_comp[lt[0]].append(idx)
        return idx

    def s_vector(self, i: int, j: int) -> Vector:
        """S-vector of elements ``i`` and ``j``; ``j < 0`` names ideal reducer ``-j-1``."""
        ci, ei = self.leads[i]
        fi = self.elements[i]
        if j >= 0:
            ej = self.leads[j][1]
            fj = self.elements[j]
        else:
            ej, gj = self.ideal[-j - 1]
        lcm = mono_lcm(ei, ej)
        out: Vector = {}
        vec_add_scaled(out, fi, 1, tuple(a - b for a, b in zip(lcm, ei)), self.norm)
        mj = tuple(a - b for a, b in zip(lcm, ej))
        if j >= 0:
            vec_add_scaled(out, fj, -1, mj, self.norm)
        else:
            norm = self.norm
            for e2, c2 in gj.items():
                t = (ci, tuple(a + b for a, b in zip(e2, mj)))
                val = norm(out.get(t, 0) - c2)
                if val:
                    out[t] = val
                else:
                    out.pop(t, None)
        return out

    def interreduce(self) -> List[Vector]:
        """Tail-reduce every element; leads are already pairwise non-divisible."""
        out = []
        for vec, lt in zip(self.elements, self.leads):
            tail = dict(vec)
            c = tail.pop(lt)
            red = self.reduce(tail)
            red[lt] = c
            out.append(red)
        self.elements = out
        return out


def _buchberger(gens: Sequence[Vector], order: ModuleOrder, ambient: Ambient, *,
                track: bool = False, stop_degree: Optional[int] = None):
    """Degree-by-degree Buchberger for homogeneous vectors.

    Returns ``(state, kept)`` where ``kept`` lists the indices of inputs that
    were not in the submodule generated by lower-degree data and earlier
    same-degree inputs (a minimal generating subset when ``track`` is set).
    """
    state = _Reducer(order, ambient)
    queue = []
    for idx, g in enumerate(gens):
        if g:
            queue.append((order.degree(next(iter(g))), idx))
    queue.sort()
    pairs: List[Tuple[int, int, int, int]] = []
    counter = itertools.count()
    kept: List[int] = []
    rank1 = order.rank == 1

    def add_element(vec: Vector):
        new = state.add(vec)
        comp, exp = state.leads[new]
        shift = order.shifts[comp]
        for old in state.by_comp[comp]:
            if old == new:
                continue
            oexp = state.leads[old][1]
            if rank1 and mono_coprime(exp, oexp):
                continue
            deg = sum(mono_lcm(exp, oexp)) + shift
            if stop_degree is None or deg <= stop_degree:
                heapq.heappush(pairs, (deg, next(counter), new, old))
        for k, (le, _) in enumerate(state.ideal):
            if mono_coprime(exp, le):
                continue
            deg = sum(mono_lcm(exp, le)) + shift
            if stop_degree is None or deg <= stop_degree:
                heapq.heappush(pairs, (deg, next(counter), new, -k - 1))

    qi = 0
    while qi < len(queue) or pairs:
        next_gen_deg = queue[qi][0] if qi < len(queue) else None
        if pairs and (next_gen_deg is None or pairs[0][0] <= next_gen_deg):
            _, _, i, j = heapq.heappop(pairs)
            h = state.reduce(state.s_vector(i, j))
            if h:
                add_element(h)
            continue
        if stop_degree is not None and next_gen_deg > stop_degree:
            break
        _, idx = queue[qi]
        qi += 1
        h = state.reduce(gens[idx])
        if h:
            kept.append(idx)
            add_element(h)
        elif not track:
            pass
    kept.sort()
    return state, kept


# ---------------------------------------------------------------------------
# public API


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis of a graded submodule of ``R^rank``.

    ``generators`` are the vectors the basis was computed from (kept so that
    syzygies of the original list can be computed later).
    """

    elements: Tuple[Vector, ...]
    order: ModuleOrder
    ambient: Ambient
    generators: Tuple[Vector, ...] = ()
    generator_degrees: Tuple[Optional[int], ...] = ()
    reduced: bool = True
    _state: object = dc_field(default=None, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return self.order.rank

    @property
    def field(self) -> Field:
        return self.ambient.field

    def leads(self) -> List[Term]:
        return [self.order.lead(v) for v in self.elements]

    def _reducer(self) -> _Reducer:
        st = self._state
        if st is None:
            st = _Reducer(self.order, self.ambient)
            for v in self.elements:
                st.add(dict(v))
            object.__setattr__(self, "_state", st)
        return st

    def normal_form(self, vec: Vector) -> Vector:
        for c, _ in vec:
            if not 0 <= c < self.rank:
                raise UsageError(f"component {c} outside rank {self.rank}")
        return self._reducer().reduce(vec)

    def contains(self, vec: Vector) -> bool:
        return not self.normal_form(vec)

    def lead_monomials_by_component(self) -> List[List[Exp]]:
        per = [[] for _ in range(self.rank)]
        for c, e in self.leads():
            per[c].append(e)
        ideal = self.ambient.ideal_leads
        for c in range(self.rank):
            per[c].extend(ideal)
        return per

    def hilbert_numerator(self) -> Dict[int, int]:
        """Numerator ``N`` of the Hilbert series ``N(t)/(1-t)^n`` of ``R^rank / submodule``."""
        out: Dict[int, int] = {}
        for c, leads in enumerate(self.lead_monomials_by_component()):
            num = monomial_hilbert_numerator(leads, self.ambient.nvars)
            for k, v in num.items():
                out[k + self.order.shifts[c]] = out.get(k + self.order.shifts[c], 0) + v
        return {k: v for k, v in out.items() if v}

    def standard_terms(self, degree: int) -> List[Term]:
        """Terms of the given degree not divisible by any leading term (a basis of the quotient)."""
        out = []
        per = self.lead_monomials_by_component()
        for c, shift in enumerate(self.order.shifts):
            for e in monomials_of_degree(self.ambient.nvars, degree - shift):
                if not any(mono_divides(le, e) for le in per[c]):
                    out.append((c, e))
        return out


def groebner(gens: Iterable, order, ambient: Ambient,
             degrees: Optional[Sequence[Optional[int]]] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    ``gens`` are vectors (dicts) or, for ideals, :class:`Polynomial` objects.
    ``order`` is a :class:`ModuleOrder` or, for ideals, a :class:`MonomialOrder`.
    """
    gens = [vector_from_polys([g]) if isinstance(g, Polynomial) else dict(g) for g in gens]
    if isinstance(order, MonomialOrder):
        order = ModuleOrder([0], base=order)
    gdeg = []
    for i, g in enumerate(gens):
        d = check_homogeneous(g, order.shifts, f"generator {i}")
        if d is None and degrees is not None:
            d = degrees[i]
        gdeg.append(d)
    state, _ = _buchberger(gens, order, ambient)
    elements = state.interreduce()
    elements.sort(key=lambda v: order.key(order.lead(v)))
    return GroebnerBasis(tuple(elements), order, ambient, tuple(gens), tuple(gdeg))


def normal_form(vec, gb: GroebnerBasis) -> Vector:
    if isinstance(vec, Polynomial):
        vec = vector_from_polys([vec])
    return gb.normal_form(vec)


def minimal_generators(gens: Sequence[Vector], shifts: Sequence[int], ambient: Ambient,
                       order: Optional[ModuleOrder] = None) -> List[int]:
    """Indices of a minimal generating subset of ``gens`` modulo ``I * R^rank``.

    Generators are visited by increasing degree, ties broken by position, so
    earlier-listed generators are preferred.
    """
    if order is None:
        order = ModuleOrder(shifts)
    degs = []
    for i, g in enumerate(gens):
        degs.append(check_homogeneous(g, order.shifts, f"generator {i}"))
    live = [d for d in degs if d is not None]
    if not live:
        return []
    _, kept = _buchberger(gens, order, ambient, track=True, stop_degree=max(live))
    return kept


def kernel(columns: Sequence[Vector], source_twists: Sequence[int], target_twists: Sequence[int],
           ambient: Ambient, minimize: bool = True) -> List[Vector]:
    """Generators of the kernel of the map ``R(-source) -> R(-target)`` with the given columns.

    Uses an elimination order on ``target (+) source``: the basis elements
    whose leading term lies in the source block have zero target part and
    generate the kernel modulo ``I``.
    """
    r = len(target_twists)
    m = len(columns)
    if len(source_twists) != m:
        raise UsageError(f"{m} columns but {len(source_twists)} source twists")
    zero = (0,) * ambient.nvars
    gens = []
    for j, col in enumerate(columns):
        d = check_homogeneous(col, target_twists, f"column {j}")
        if d is not None and d != source_twists[j]:
            raise UsageError(
                f"column {j} has degree {d} but its source twist is {source_twists[j]}")
        g = dict(col)
        g[(r + j, zero)] = ambient.field.one()
        gens.append(g)
    if m == 0:
        return []
    order = ModuleOrder(list(target_twists) + list(source_twists), blocks=[1] * r + [0] * m)
    state, _ = _buchberger(gens, order, ambient)
    syz = []
    for vec, lt in zip(state.elements, state.leads):
        if lt[0] >= r:
            syz.append({(c - r, e): v for (c, e), v in vec.items()})
    if not minimize:
        return syz
    keep = minimal_generators(syz, source_twists, ambient)
    return [syz[i] for i in keep]


def syzygies(gb: GroebnerBasis) -> List[Vector]:
    """Minimal generators of the syzygy module of ``gb.generators`` (the original list)."""
    degs = list(gb.generator_degrees)
    if any(d is None for d in degs):
        raise UsageError("syzygies of zero generators need explicit generator degrees")
    return kernel(gb.generators, degs, gb.order.shifts, gb.ambient)


def ideal_reducers(polys: Sequence[Polynomial], field: Field, nvars: int) -> tuple:
    """Reduced Groebner basis of an ideal of ``S`` in the form used by :class:`Ambient`."""
    gb = groebner(polys, ModuleOrder([0]), Ambient(field, nvars))
    out = []
    for v in gb.elements:
        lt = gb.order.lead(v)
        out.append((lt[1], {e: c for (_, e), c in v.items()}))
    return tuple(out)


# ---------------------------------------------------------------------------
# Hilbert series of monomial modules


def _minimalize(monos: Iterable[Exp]) -> List[Exp]:
    ms = sorted(set(monos), key=sum)
    out: List[Exp] = []
    for m in ms:
        if not any(mono_divides(o, m) for o in out):
            out.append(m)
    return out


def monomial_hilbert_numerator(gens: Iterable[Exp], nvars: int) -> Dict[int, int]:
    """Numerator ``N(t)`` with ``H_{S/J}(t) = N(t)/(1-t)^nvars`` for a monomial ideal ``J``."""
    memo: Dict[Tuple[Exp, ...], Dict[int, int]] = {}

    def rec(ms: Tuple[Exp, ...]) -> Dict[int, int]:
        if ms in memo:
            return memo[ms]
        if not ms:
            res = {0: 1}
        elif all(mono_coprime(a, b) for a, b in itertools.combinations(ms, 2)):
            res = {0: 1}
            for m in ms:
                d = sum(m)
                nxt: Dict[int, int] = {}
                for k, v in res.items():
                    nxt[k] = nxt.get(k, 0) + v
                    nxt[k + d] = nxt.get(k + d, 0) - v
                res = nxt
        else:
            # pivot on the generator with the most shared variables
            pivot = max(ms, key=lambda m: (sum(1 for o in ms if not mono_coprime(o, m)), m))
            rest = tuple(m for m in ms if m != pivot)
            colon = tuple(_minimalize(tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in rest))
            a = rec(rest)
            b = rec(colon)
            d = sum(pivot)
            res = dict(a)
            for k, v in b.items():
                res[k + d] = res.get(k + d, 0) - v
        res = {k: v for k, v in res.items() if v}
        memo[ms] = res
        return res

    return rec(tuple(_minimalize(gens)))


def hilbert_numerator(gb: GroebnerBasis) -> Dict[int, int]:
    return gb.hilbert_numerator()


def series_coefficients(numerator: Dict[int, int], nvars: int, lo: int, hi: int) -> Dict[int, int]:
    """Coefficients of ``N(t)/(1-t)^nvars`` for degrees ``lo..hi``."""
    out = {}
    for d in range(lo, hi + 1):
        total = 0
        for k, v in numerator.items():
            m = d - k
            if m < 0:
                continue
            total += v * (comb(m + nvars - 1, nvars - 1) if nvars else int(m == 0))
        out[d] = total
    return out
