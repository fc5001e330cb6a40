"""Linear parts of minimal complexes and the invariants built on them.

Answers that depend on a possibly infinite resolution are returned as
statuses: ``exact`` when every homology position was checked, ``at_least``
when nonzero homology was found inside a finite prefix, and ``zero_up_to``
when the prefix shows no homology in positions ``1..N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import (
    DEFAULT_CUTOFF,
    FreeComplex,
    LinearStatus,
    base_change_complex,
    dual_into_ring,
    has_i_linear_resolution,
    homology_witness_degrees,
    koszul_complex,
    linear_status_from_betti,
    minimal_resolution,
    tensor,
)
from .errors import DegenerateInputError, PreconditionError, UnsupportedError, UsageError
from .graded import GradedAlgebra, GradedModule, is_cohen_macaulay

EXACT = "exact"
AT_LEAST = "at_least"
ZERO_UP_TO = "zero_up_to"


@dataclass(frozen=True)
class LdResult:
    """A certified linearity-defect answer.

    ``value`` is ``None`` for ``exact`` when no position carries homology
    (the defect is ``-inf``, e.g. for the zero module) and for ``zero_up_to``.
    ``homology`` maps each checked position to whether it is nonzero.
    """

    status: str
    value: Optional[int]
    cutoff: int
    homology: Dict[int, bool] = field(default_factory=dict)

    @property
    def is_exact(self) -> bool:
        return self.status == EXACT

    @property
    def lower_bound(self) -> Optional[int]:
        """Best certified lower bound (``None`` means nothing beyond ``-inf``)."""
        if self.status == ZERO_UP_TO:
            return 0 if any(self.homology.values()) else None
        return self.value

    def is_zero_up_to(self, n: int) -> bool:
        """No homology in positions ``1..n`` (positions beyond the data are unknown)."""
        if self.status == EXACT:
            return self.value is None or self.value <= 0
        if self.status == ZERO_UP_TO:
            return self.cutoff >= n
        return False

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "value": self.value,
            "cutoff": self.cutoff,
            "homology_nonzero": {str(k): v for k, v in sorted(self.homology.items())},
        }

    def __str__(self):
        if self.status == EXACT:
            return f"Exact({'-inf' if self.value is None else self.value})"
        if self.status == AT_LEAST:
            return f"AtLeast({self.value})"
        return f"ZeroUpTo({self.cutoff})"


# ---------------------------------------------------------------------------
# linear part


def linear_part(F: FreeComplex) -> FreeComplex:
    """Keep exactly the degree-1 entries of every differential.

    Raises :class:`PreconditionError` when ``F`` has a unit entry.
    """
    units = F.unit_entries()
    if units:
        n, i, j = units[0]
        raise PreconditionError(f"complex is not minimal: d_{n} has a unit entry at ({i}, {j})")
    diffs = {}
    for n, cols in F.differentials.items():
        tgt = F.twists(n - 1)
        src = F.twists(n)
        diffs[n] = [{(c, e): v for (c, e), v in col.items() if src[j] - tgt[c] == 1}
                    for j, col in enumerate(cols)]
    L = FreeComplex(F.algebra, F.modules, diffs, F.valid_through, check=False)
    if not L.check_square_zero():
        raise AssertionError("linear part does not square to zero")
    return L


def homology_bitmap(F: FreeComplex, limit: Optional[int] = None) -> Dict[int, bool]:
    """``{n: H_n(F) != 0}`` for the determined positions ``n <= limit``."""
    out = {}
    for n in F.homology_positions():
        if limit is not None and n > limit:
            continue
        out[n] = bool(homology_witness_degrees(F, n))
    return out


def _ld_from_bitmap(bitmap: Dict[int, bool], complete: bool, cutoff: int) -> LdResult:
    nonzero = [n for n, b in bitmap.items() if b]
    top = max(nonzero) if nonzero else None
    if complete:
        return LdResult(EXACT, top, cutoff, bitmap)
    if top is not None and top >= 1:
        return LdResult(AT_LEAST, top, cutoff, bitmap)
    return LdResult(ZERO_UP_TO, None, cutoff, bitmap)


def linearity_defect_of_complex(F: FreeComplex, cutoff: int = DEFAULT_CUTOFF) -> LdResult:
    """Linearity defect of a minimal free complex.

    A complete complex gets an exact answer.  For a prefix the positions
    checked are those ``<= min(cutoff, F.valid_through)``.
    """
    L = linear_part(F)
    if F.is_complete:
        return _ld_from_bitmap(homology_bitmap(L), True, cutoff)
    limit = min(cutoff, F.valid_through)
    return _ld_from_bitmap(homology_bitmap(L, limit), False, limit)


def linearity_defect(M: GradedModule, cutoff: int = DEFAULT_CUTOFF) -> LdResult:
    """Linearity defect of ``M`` from its minimal resolution through ``cutoff + 1``."""
    if cutoff < 0:
        raise UsageError("cutoff must be non-negative")
    res = minimal_resolution(M, cutoff + 1)
    return linearity_defect_of_complex(res.complex, cutoff)


# ---------------------------------------------------------------------------
# Koszul algebras and Koszul depth


KOSZUL = "koszul"
KOSZUL_UP_TO = "koszul_up_to"
NOT_KOSZUL = "not_koszul"


@dataclass(frozen=True)
class KoszulStatus:
    status: str
    cutoff: int
    witness: Optional[Tuple[int, int]] = None
    ld: Optional[LdResult] = None

    @property
    def holds(self) -> bool:
        return self.status != NOT_KOSZUL

    def to_dict(self) -> dict:
        d = {"status": self.status, "cutoff": self.cutoff}
        if self.witness is not None:
            d["witness"] = {"n": self.witness[0], "j": self.witness[1]}
        if self.ld is not None:
            d["ld_residue_field"] = self.ld.to_dict()
        return d


def is_koszul_algebra(R: GradedAlgebra, cutoff: int = DEFAULT_CUTOFF) -> KoszulStatus:
    """Koszulness of ``R`` through the linearity defect of its residue field.

    The witness is the first Betti position ``(n, j)`` of ``k`` off the diagonal.
    """
    res = minimal_resolution(R.residue_field(), cutoff + 1)
    ld = linearity_defect_of_complex(res.complex, cutoff)
    bad = [(n, j) for (n, j) in res.betti.nonlinear_entries(0) if n <= cutoff + 1]
    if ld.status == EXACT and (ld.value is None or ld.value <= 0):
        status = KoszulStatus(KOSZUL, cutoff, None, ld)
    elif ld.status == ZERO_UP_TO:
        status = KoszulStatus(KOSZUL_UP_TO, cutoff, None, ld)
    else:
        status = KoszulStatus(NOT_KOSZUL, cutoff, bad[0] if bad else None, ld)
    R.koszul_status = status
    return status


def koszul_betti_check(R: GradedAlgebra, cutoff: int = DEFAULT_CUTOFF) -> LinearStatus:
    """The equivalent Betti criterion: ``beta_{n,j}(k) = 0`` for ``j != n`` through ``cutoff``."""
    return has_i_linear_resolution(R.residue_field(), 0, cutoff)


def koszul_homology(forms: Sequence, M: GradedModule) -> Dict[int, bool]:
    """``{i: H_i(K(forms; M)) != 0}`` for ``0 <= i <= c``."""
    R = M.algebra
    K = koszul_complex(forms, R)
    c = len(forms)
    res = minimal_resolution(M, c + 1)
    T = tensor(K, res.complex)
    return {i: bool(homology_witness_degrees(T, i)) for i in range(c + 1)}


def koszul_depth(forms: Sequence, M: GradedModule) -> int:
    """Grade of the ideal ``(forms)`` on ``M``: ``c - max{i : H_i(K(forms; M)) != 0}``."""
    if M.is_zero():
        raise DegenerateInputError("Koszul depth of the zero module")
    h = koszul_homology(forms, M)
    return len(forms) - max(i for i, b in h.items() if b)


def koszul_complex_on_module(forms: Sequence, M: GradedModule, cutoff: int = DEFAULT_CUTOFF) -> FreeComplex:
    """A minimal free complex quasi-isomorphic to ``K(forms; M)``: ``K(forms; R) (x) F``."""
    res = minimal_resolution(M, cutoff)
    return tensor(koszul_complex(forms, M.algebra), res.complex)


def base_change(F: FreeComplex, target) -> FreeComplex:
    """``R/J (x)_R F``; ``target`` is the algebra ``R/J`` or a list of generators of ``J``."""
    if not isinstance(target, GradedAlgebra):
        target = F.algebra.quotient(target)
    return base_change_complex(F, target)


# ---------------------------------------------------------------------------
# injective linearity defect


def is_gorenstein(R: GradedAlgebra) -> bool:
    """Cohen-Macaulay over the ambient polynomial ring with last Betti number 1."""
    if "gorenstein" in R._cache:
        return R._cache["gorenstein"]
    RS = R.as_module().over_polynomial_ring()
    res = minimal_resolution(RS, R.nvars + 1)
    pd = res.projective_dimension
    ok = is_cohen_macaulay(R.as_module()) and res.betti.total(pd) == 1
    R._cache["gorenstein"] = ok
    return ok


def injective_linearity_defect(M: GradedModule, cutoff: int = DEFAULT_CUTOFF) -> LdResult:
    """``dim R + sup{n : H_n(lin Hom(F, R)) != 0}`` for finite ``pd_R M`` over Gorenstein ``R``."""
    R = M.algebra
    if not is_gorenstein(R):
        raise PreconditionError(f"base ring {R} is not Gorenstein")
    res = minimal_resolution(M, cutoff)
    if not res.terminated:
        raise UnsupportedError(f"pd possibly infinite at cutoff {cutoff}: resolution did not terminate")
    if not res.complex.modules:
        return LdResult(EXACT, None, cutoff, {})
    L = linear_part(dual_into_ring(res.complex))
    bitmap = homology_bitmap(L)
    nonzero = [n for n, b in bitmap.items() if b]
    return LdResult(EXACT, R.dimension() + max(nonzero), cutoff, bitmap)


# ---------------------------------------------------------------------------
# componentwise linearity


def component_submodule(M: GradedModule, i: int) -> GradedModule:
    """``M_<i>``: the submodule generated by the degree-``i`` piece of ``M``."""
    return M.submodule(M.basis_in_degree(i))


YES = "yes"
YES_UP_TO = "yes_up_to"
NO = "no"


@dataclass(frozen=True)
class CwLinearReport:
    status: str
    cutoff: int
    components: Dict[int, LinearStatus]
    witness: Optional[int] = None
    implied_from: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.status != NO

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "cutoff": self.cutoff,
            "witness": self.witness,
            "components": {str(i): s.to_dict() for i, s in sorted(self.components.items())},
            "implied_from": self.implied_from,
        }


def is_componentwise_linear(M: GradedModule, cutoff: int = DEFAULT_CUTOFF,
                            component_cutoff: Optional[int] = None) -> CwLinearReport:
    """Check that ``M_<i>`` has an ``i``-linear resolution for ``indeg M <= i <= top``.

    ``top`` is the largest minimal generator degree; components above it are
    implied by induction (``m M_<i> = M_<i+1>`` there).  Each component is
    resolved through ``component_cutoff`` (default ``cutoff + 1``) so that the
    verdict lines up with :func:`linearity_defect` at the same cutoff.
    """
    R = M.algebra
    status = R.koszul_status if R.koszul_status is not None and R.koszul_status.cutoff >= cutoff \
        else is_koszul_algebra(R, cutoff)
    if not status.holds:
        raise PreconditionError(f"base ring {R} is not Koszul (witness {status.witness})")
    cc = cutoff + 1 if component_cutoff is None else component_cutoff
    mp = M.minimal_presentation()
    if mp.rank == 0:
        return CwLinearReport(YES, cutoff, {})
    lo, hi = min(mp.row_twists), max(mp.row_twists)
    comps: Dict[int, LinearStatus] = {}
    for i in range(lo, hi + 1):
        Mi = component_submodule(mp, i)
        if Mi.is_zero():
            comps[i] = LinearStatus(YES, cc)
            continue
        comps[i] = linear_status_from_betti(minimal_resolution(Mi, cc).betti, i)
    bad = [i for i, s in comps.items() if s.status == NO]
    if bad:
        overall, witness = NO, bad[0]
    elif all(s.status == YES for s in comps.values()):
        overall, witness = YES, None
    else:
        overall, witness = YES_UP_TO, None
    return CwLinearReport(overall, cutoff, comps, witness, hi + 1)
