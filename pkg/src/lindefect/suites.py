"""Seeded property suites over a random corpus.

Each suite draws its instances from :mod:`lindefect.corpus` with a
``random.Random(seed)`` and checks one family of inequalities or
equivalences.  Inequalities are compared only through certified bounds:
an ``exact`` answer gives both bounds, ``at_least`` only a lower bound and
``zero_up_to`` neither beyond the observed homology.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .complexes import (
    FreeComplex,
    has_i_linear_resolution,
    homology_witness_degrees,
    koszul_complex,
    minimal_resolution,
    syzygy_module,
    tensor,
)
from .corpus import (
    FIELD,
    cubic_control,
    cyclic_module,
    gorenstein_fixtures,
    koszul_fixtures,
    module_corpus,
    polynomial_ring,
    random_form,
    random_module,
    random_monomial_quotient,
)
from .errors import UsageError
from .graded import (
    GradedAlgebra,
    GradedModule,
    is_regular_element,
    numerical_profile,
    quotient_by_sequence,
)
from .linearity import (
    EXACT,
    LdResult,
    base_change,
    homology_bitmap,
    injective_linearity_defect,
    is_componentwise_linear,
    is_koszul_algebra,
    koszul_depth,
    linear_part,
    linearity_defect,
    linearity_defect_of_complex,
)
from .poly import linear_component

INF = math.inf


@dataclass
class SuiteReport:
    name: str
    seed: int
    instances: int = 0
    checks: int = 0
    skipped: int = 0
    failures: List[dict] = field(default_factory=list)
    notes: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, what: str, **data):
        self.failures.append({"check": what, **{k: _dump(v) for k, v in data.items()}})

    def note(self, key: str, k: int = 1):
        self.notes[key] = self.notes.get(key, 0) + k

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "instances": self.instances,
            "certified_checks": self.checks,
            "skipped": self.skipped,
            "passed": self.ok,
            "failures": self.failures,
            "notes": dict(sorted(self.notes.items())),
        }


def _dump(v):
    if isinstance(v, GradedModule):
        return {"ring": repr(v.algebra), "row_twists": list(v.row_twists),
                "matrix": [[str(p) for p in row] for row in v.matrix()]}
    if isinstance(v, LdResult):
        return v.to_dict()
    if isinstance(v, FreeComplex):
        return {"ring": repr(v.algebra),
                "modules": {str(n): list(t) for n, t in v.modules.items()},
                "differentials": {str(n): [[str(p) for p in row] for row in v.matrix(n)]
                                  for n in v.differentials}}
    if isinstance(v, GradedAlgebra):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return [_dump(x) for x in v]
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v if isinstance(v, (int, str, bool, dict, type(None))) else str(v)


def lower(r: LdResult) -> float:
    """Certified lower bound on the defect."""
    nz = [n for n, b in r.homology.items() if b]
    return max(nz) if nz else -INF


def upper(r: LdResult) -> float:
    """Certified upper bound on the defect."""
    if r.status == EXACT:
        return -INF if r.value is None else r.value
    return INF


def _geq(rep: SuiteReport, what: str, hi: float, lo: float, **data) -> None:
    """Record the certified check ``X >= Y`` given an upper bound of ``X`` and a lower bound of ``Y``."""
    if hi == INF or lo == -INF:
        rep.note(f"uncertified:{what}")
        return
    rep.checks += 1
    if hi < lo:
        rep.fail(what, upper=hi, lower=lo, **data)


def _random_forms(rng, R, count, degrees=(1, 2)):
    out = []
    while len(out) < count:
        f = random_form(rng, R, rng.choice(degrees), rng.choice([1, 2]))
        if not f.is_zero():
            out.append(f)
    return out


def _cutoff_for(R: GradedAlgebra, cutoff: int) -> int:
    return R.nvars + 1 if R.is_polynomial else cutoff


# ---------------------------------------------------------------------------
# suites


def suite_ldvssup(seed: int = 0, count: int = 20, cutoff: int = 4) -> SuiteReport:
    """Pointwise vanishing transfer from the linear part and the syzygy shift formula."""
    rep = SuiteReport("ldvssup", seed)
    rng = random.Random(seed)
    algebras = koszul_fixtures() + [cubic_control()]
    while rep.instances < count:
        R = rng.choice(algebras)
        M = random_module(rng, R)
        if M.is_zero():
            continue
        c = rng.randint(1, 2)
        forms = _random_forms(rng, R, c)
        res = minimal_resolution(M, _cutoff_for(R, cutoff + c))
        C = tensor(koszul_complex(forms, R), res.complex)
        rep.instances += 1
        lin_bits = homology_bitmap(linear_part(C))
        bits = homology_bitmap(C)
        for n, b in lin_bits.items():
            if not b:
                rep.checks += 1
                if bits.get(n):
                    rep.fail("H_n(lin F) = 0 implies H_n(F) = 0", position=n, complex=C, forms=forms)
        s = max((n for n, b in bits.items() if b), default=None)
        if s is None:
            rep.skipped += 1
            continue
        W = syzygy_module(C, s)
        ldC = linearity_defect_of_complex(C, cutoff + c)
        ldW = linearity_defect(W, max(cutoff + c - s, 0))
        for n, b in ldC.homology.items():
            if n > s and n - s in ldW.homology and n - s >= 1:
                rep.checks += 1
                if ldW.homology[n - s] != b:
                    rep.fail("bitmap shift by sup H", position=n, complex=C, syzygy=W)
        if ldC.is_exact and ldW.is_exact:
            rep.checks += 1
            vC = ldC.value
            vW = ldW.value
            if vW is None or vC != s + vW:
                rep.fail("ld F = s + ld W", s=s, ld_complex=ldC, ld_syzygy=ldW, complex=C)
    return rep


def suite_tensors(seed: int = 0, count: int = 20, cutoff: int = 4) -> SuiteReport:
    """``ld M + pd N >= ld(F (x) G) >= ld M + inf H(N)``, and the regular-ring improvement."""
    rep = SuiteReport("tensors", seed)
    rng = random.Random(seed)
    algebras = [polynomial_ring(2), polynomial_ring(3)]
    while rep.instances < count:
        R = rng.choice(algebras)
        M, N = random_module(rng, R), random_module(rng, R)
        if M.is_zero() or N.is_zero():
            continue
        rep.instances += 1
        FM = minimal_resolution(M, R.nvars + 1)
        FN = minimal_resolution(N, R.nvars + 1)
        ldM = linearity_defect_of_complex(FM.complex)
        ldN = linearity_defect_of_complex(FN.complex)
        ldT = linearity_defect_of_complex(tensor(FM.complex, FN.complex))
        pd = FN.projective_dimension
        _geq(rep, "ld M + pd N >= ld(F(x)G)", upper(ldM) + pd, lower(ldT), M=M, N=N)
        _geq(rep, "ld(F(x)G) >= ld M + inf H(N)", upper(ldT), lower(ldM) + 0, M=M, N=N)
        _geq(rep, "ld(F(x)G) >= ld M + ld N (regular ring)", upper(ldT), lower(ldM) + lower(ldN),
             M=M, N=N)
    return rep


def suite_koszulcx(seed: int = 0, count: int = 20, cutoff: int = 4) -> SuiteReport:
    """``ld M + c >= ld K(x; M) >= ld M`` and ``ld K(x; R) = c`` for forms of degree >= 2."""
    rep = SuiteReport("koszulcx", seed)
    rng = random.Random(seed)
    algebras = [polynomial_ring(2), polynomial_ring(3)] + koszul_fixtures()[2:]
    while rep.instances < count:
        R = rng.choice(algebras)
        M = random_module(rng, R)
        if M.is_zero():
            continue
        rep.instances += 1
        c = rng.randint(1, 2)
        forms = _random_forms(rng, R, c)
        nres = _cutoff_for(R, cutoff + c + 1)
        F = minimal_resolution(M, nres).complex
        ldM = linearity_defect_of_complex(F, nres)
        ldK = linearity_defect_of_complex(tensor(koszul_complex(forms, R), F), nres)
        _geq(rep, "ld M + c >= ld K(x;M)", upper(ldM) + c, lower(ldK), M=M, forms=forms)
        _geq(rep, "ld K(x;M) >= ld M", upper(ldK), lower(ldM), M=M, forms=forms)
        quad = _random_forms(rng, R, c, degrees=(2, 3))
        ldKR = linearity_defect_of_complex(koszul_complex(quad, R))
        rep.checks += 1
        if not (ldKR.is_exact and ldKR.value == c):
            rep.fail("ld K(x;R) = c for forms in m^2", forms=quad, ring=R, result=ldKR)
    return rep


def suite_modx(seed: int = 0, count: int = 20, cutoff: int = 4) -> SuiteReport:
    """For Koszul ``M`` and an ``M``-regular sequence: ``ld(M/xM) = c - grade(x_lin; M)``."""
    rep = SuiteReport("modx", seed)
    rng = random.Random(seed)
    algebras = [polynomial_ring(2), polynomial_ring(3)]
    attempts = 0
    while rep.instances < count and attempts < 50 * count:
        attempts += 1
        R = rng.choice(algebras)
        M = random_module(rng, R) if rng.random() < 0.7 else R.as_module()
        if M.is_zero():
            continue
        ld = linearity_defect(M, R.nvars)
        if not (ld.is_exact and ld.value == 0):
            continue
        forms, Q = [], M
        for _ in range(rng.randint(1, 2)):
            f = _random_forms(rng, R, 1)[0]
            if not is_regular_element(Q, f):
                break
            forms.append(f)
            Q = quotient_by_sequence(M, forms)
        if not forms:
            continue
        rep.instances += 1
        lin = [linear_component(f) for f in forms]
        expected = len(forms) - koszul_depth(lin, M)
        got = linearity_defect(Q, R.nvars)
        rep.checks += 1
        if not (got.is_exact and (got.value or 0) == expected):
            rep.fail("ld(M/xM) = c - grade", M=M, forms=forms, expected=expected, result=got)
    rep.skipped = attempts - rep.instances
    return rep


def suite_changeofrings(seed: int = 0, count: int = 20, cutoff: int = 4) -> SuiteReport:
    """``ld_R M + pd_R(T) >= ld_T(T (x) F) >= ld_R M`` for ``T = R/J`` with ``pd_R T`` finite."""
    rep = SuiteReport("changeofrings", seed)
    rng = random.Random(seed)
    while rep.instances < count:
        n = rng.choice([2, 3])
        R = polynomial_ring(n)
        T = random_monomial_quotient(rng, n) if rng.random() < 0.6 else \
            R.quotient([random_form(rng, R, 2, 2)])
        if not T.ideal:
            continue
        M = random_module(rng, R)
        if M.is_zero():
            continue
        rep.instances += 1
        pdT = minimal_resolution(T.as_module().over_polynomial_ring(), n + 1).projective_dimension
        F = minimal_resolution(M, n + 1).complex
        ldM = linearity_defect_of_complex(F)
        ldT = linearity_defect_of_complex(base_change(F, T))
        _geq(rep, "ld_R M + pd_R T >= ld_T(T(x)F)", upper(ldM) + pdT, lower(ldT), M=M, target=T)
        _geq(rep, "ld_T(T(x)F) >= ld_R M", upper(ldT), lower(ldM), M=M, target=T)
    return rep


def _max_ideal_times(M: GradedModule) -> GradedModule:
    zero = (0,) * M.algebra.nvars
    one = M.field.one()
    gens = []
    for j in range(M.rank):
        for v in range(M.algebra.nvars):
            e = tuple(int(k == v) for k in range(M.algebra.nvars))
            gens.append({(j, e): one})
    return M.submodule([g for g in gens if M.reduce(g)])


def suite_cwlinear(seed: int = 0, count: int = 60, cutoff: int = 5) -> SuiteReport:
    """Over Koszul algebras: ``ld M`` vanishes through the cutoff iff ``M`` is componentwise linear."""
    rep = SuiteReport("cwlinear", seed)
    rng = random.Random(seed)
    algebras = koszul_fixtures()
    per = -(-count // len(algebras))
    for R in algebras:
        for M in module_corpus(rng, R, per):
            if rep.instances >= count:
                break
            rep.instances += 1
            ld = linearity_defect(M, cutoff)
            cw = is_componentwise_linear(M, cutoff)
            rep.checks += 1
            rep.note("koszul_module" if ld.is_zero_up_to(cutoff) else "non_koszul_module")
            if ld.is_zero_up_to(cutoff) != cw.holds:
                rep.fail("ld zero <=> componentwise linear", M=M, ld=ld, cw=cw.to_dict())
            mp = M.minimal_presentation()
            i = min(mp.row_twists)
            if mp.rank and has_i_linear_resolution(mp, i, cutoff).holds:
                mM = _max_ideal_times(mp)
                if mM.is_zero():
                    continue
                rep.checks += 1
                st = has_i_linear_resolution(mM, i + 1, cutoff)
                if not st.holds:
                    rep.fail("m M has an (i+1)-linear resolution", M=M, i=i, witness=st.witness)
    return rep


def _minimal_degree_candidates(rng, R: GradedAlgebra) -> List[GradedModule]:
    """Modules likely to be Cohen-Macaulay of minimal degree, plus random ones."""
    out = [R.residue_field(), R.as_module()]
    lin = [random_form(rng, R, 1, R.nvars) for _ in range(rng.randint(1, R.nvars))]
    lin = [f for f in lin if not f.is_zero()]
    if lin:
        out.append(cyclic_module(R, lin))
    k = R.residue_field()
    out.append(k.direct_sum(k.twist(-rng.randint(0, 2))))
    out.append(random_module(rng, R))
    return out


def suite_mindegree(seed: int = 0, count: int = 20, cutoff: int = 5) -> SuiteReport:
    """``deg M >= nu(M)`` for Cohen-Macaulay modules; minimal-degree modules are Koszul iff ``R`` is."""
    rep = SuiteReport("mindegree", seed)
    rng = random.Random(seed)
    algebras = koszul_fixtures()
    cm_seen = 0
    while cm_seen < count:
        R = rng.choice(algebras)
        for M in _minimal_degree_candidates(rng, R):
            if M.is_zero():
                continue
            rep.instances += 1
            prof = numerical_profile(M)
            if prof.dim != prof.depth:
                rep.note("not_cohen_macaulay")
                continue
            cm_seen += 1
            rep.checks += 1
            if prof.degree < prof.nu:
                rep.fail("deg M >= nu M", M=M, degree=prof.degree, nu=prof.nu)
            if prof.degree == prof.nu:
                rep.note("minimal_degree")
                ld = linearity_defect(M, cutoff)
                rep.checks += 1
                if not ld.is_zero_up_to(cutoff):
                    rep.fail("minimal degree over a Koszul ring implies Koszul", M=M, ld=ld)
    control = cubic_control()
    ld = linearity_defect(control.residue_field(), cutoff)
    rep.instances += 1
    rep.checks += 1
    if lower(ld) < 1 or is_koszul_algebra(control, cutoff).holds:
        rep.fail("k over k[x]/(x^3) has ld >= 1", ld=ld)
    return rep


def _finite_pd_candidates(rng, R: GradedAlgebra) -> List[GradedModule]:
    if R.is_polynomial:
        return [random_module(rng, R)]
    out = [R.as_module()]
    forms = _random_forms(rng, R, rng.randint(1, 2), degrees=(1,))
    out.append(cyclic_module(R, forms))
    out.append(random_module(rng, R))
    return out


def suite_gorbounds(seed: int = 0, count: int = 20, cutoff: int = 5) -> SuiteReport:
    """``dim R >= ild M >= dim M`` over Gorenstein rings for modules of finite projective dimension."""
    rep = SuiteReport("gorbounds", seed)
    rng = random.Random(seed)
    algebras = gorenstein_fixtures()
    while rep.instances < count:
        R = rng.choice(algebras)
        for M in _finite_pd_candidates(rng, R):
            if M.is_zero():
                continue
            res = minimal_resolution(M, _cutoff_for(R, cutoff))
            if not res.terminated:
                rep.skipped += 1
                continue
            rep.instances += 1
            ild = injective_linearity_defect(M, _cutoff_for(R, cutoff))
            dimR = R.dimension()
            dimM = numerical_profile(M).dim
            rep.checks += 1
            if not (dimR >= ild.value >= dimM):
                rep.fail("dim R >= ild M >= dim M", M=M, ild=ild, dim_ring=dimR, dim_module=dimM)
    return rep


def _random_minimal_complex(rng, R: GradedAlgebra, cutoff: int) -> FreeComplex:
    if rng.random() < 0.5:
        return koszul_complex(_random_forms(rng, R, rng.randint(1, 2)), R)
    while True:
        M = random_module(rng, R)
        if not M.is_zero():
            return minimal_resolution(M, rng.randint(1, cutoff)).complex


def complexes_equal(A: FreeComplex, B: FreeComplex) -> bool:
    if A.modules != B.modules:
        return False
    return all(A.differential(n) == B.differential(n) for n in A.positions())


def suite_lintensor(seed: int = 0, count: int = 25, cutoff: int = 3) -> SuiteReport:
    """``lin(F) (x) lin(G)`` equals ``lin(F (x) G)`` entrywise under the canonical basis order."""
    rep = SuiteReport("lintensor", seed)
    rng = random.Random(seed)
    algebras = koszul_fixtures() + [cubic_control()]
    while rep.instances < count:
        R = rng.choice(algebras)
        F = _random_minimal_complex(rng, R, cutoff)
        G = _random_minimal_complex(rng, R, cutoff)
        rep.instances += 1
        rep.checks += 1
        left = tensor(linear_part(F), linear_part(G))
        right = linear_part(tensor(F, G))
        if not complexes_equal(left, right):
            rep.fail("lin F (x) lin G == lin(F (x) G)", F=F, G=G, left=left, right=right)
    return rep


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "ldvssup": suite_ldvssup,
    "tensors": suite_tensors,
    "koszulcx": suite_koszulcx,
    "modx": suite_modx,
    "changeofrings": suite_changeofrings,
    "cwlinear": suite_cwlinear,
    "mindegree": suite_mindegree,
    "gorbounds": suite_gorbounds,
    "lintensor": suite_lintensor,
}


def run_property_suite(name: str, seed: int = 0, count: Optional[int] = None,
                       cutoff: Optional[int] = None) -> SuiteReport:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    kwargs = {"seed": seed}
    if count is not None:
        kwargs["count"] = count
    if cutoff is not None:
        kwargs["cutoff"] = cutoff
    return SUITES[name](**kwargs)
