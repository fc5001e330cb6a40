"""Job files: parsing, dispatch and report serialization.

A job is a JSON object::

    {"field": "GF(101)", "vars": ["x", "y"], "ideal": ["x^2", "x*y"],
     "modules": {"M": {"row_twists": [0], "matrix": [["x", "y"]]}},
     "command": "ld", "options": {"cutoff": 5, "module": "M"}}

The names ``k`` (residue field) and ``R`` (the ring itself) are available
as modules unless the job defines its own.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from . import __version__
from .complexes import DEFAULT_CUTOFF, minimal_resolution, regularity, tensor, koszul_complex
from .errors import (
    DegenerateInputError,
    LindefectError,
    NonHomogeneousError,
    ParseError,
    UnsupportedError,
    UsageError,
)
from .field import Field
from .graded import GradedAlgebra, GradedModule, has_minimal_degree, is_cohen_macaulay, numerical_profile
from .linearity import (
    injective_linearity_defect,
    is_componentwise_linear,
    is_koszul_algebra,
    koszul_depth,
    linearity_defect,
    linearity_defect_of_complex,
)
from .suites import SUITES, run_property_suite

COMMANDS = ("betti", "reg", "ld", "ild", "koszul", "cwlinear", "profile", "ulrich", "koszulcx", "check")
OPTION_KEYS = ("cutoff", "seed", "module", "i", "forms", "suite", "count")


@dataclass
class JobSpec:
    field: str
    vars: List[str]
    ideal: List[str]
    modules: Dict[str, dict]
    command: str
    options: Dict[str, Any] = field(default_factory=dict)
    algebra: Optional[GradedAlgebra] = None
    parsed_modules: Dict[str, GradedModule] = field(default_factory=dict)

    @property
    def cutoff(self) -> int:
        return self.options.get("cutoff", DEFAULT_CUTOFF)

    @property
    def seed(self) -> int:
        return self.options.get("seed", 0)

    def echo(self) -> dict:
        return {"field": self.field, "vars": self.vars, "ideal": self.ideal, "modules": self.modules,
                "command": self.command, "options": dict(sorted(self.options.items()))}

    def module(self, name: Optional[str] = None) -> GradedModule:
        name = name or self.options.get("module")
        if name is None:
            if len(self.parsed_modules) == 1:
                return next(iter(self.parsed_modules.values()))
            if not self.parsed_modules:
                return self.algebra.residue_field()
            raise UsageError(f"options.module is required: job defines {sorted(self.parsed_modules)}")
        if name in self.parsed_modules:
            return self.parsed_modules[name]
        if name == "k":
            return self.algebra.residue_field()
        if name == "R":
            return self.algebra.as_module()
        raise UsageError(f"options.module: unknown module {name!r}")


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise ParseError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}, got {type(val).__name__}")
    return val


def parse_job(text: str) -> JobSpec:
    """Parse and validate a job file; every polynomial is parsed and homogeneity-checked."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("job must be a JSON object")
    fld = _require(data, "field", str, "job")
    variables = _require(data, "vars", list, "job")
    if not variables or not all(isinstance(v, str) for v in variables):
        raise ParseError("job.vars: expected a non-empty list of variable names")
    ideal = data.get("ideal", [])
    if not isinstance(ideal, list) or not all(isinstance(g, str) for g in ideal):
        raise ParseError("job.ideal: expected a list of polynomial strings")
    modules = data.get("modules", {})
    if not isinstance(modules, dict):
        raise ParseError("job.modules: expected an object")
    command = _require(data, "command", str, "job")
    if command not in COMMANDS:
        raise ParseError(f"job.command: unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("job.options: expected an object")
    for key in options:
        if key not in OPTION_KEYS:
            raise ParseError(f"job.options: unknown option {key!r}")
    for key in ("cutoff", "seed", "i", "count"):
        if key in options and not isinstance(options[key], int):
            raise ParseError(f"job.options.{key}: expected an integer")
    if options.get("cutoff", 1) < 1:
        raise ParseError("job.options.cutoff: must be >= 1")
    spec = JobSpec(fld, list(variables), list(ideal), modules, command, dict(options))
    _build(spec)
    return spec


def _build(spec: JobSpec) -> None:
    field_ = Field.parse(spec.field)
    ring_gens = []
    algebra = GradedAlgebra(field_, spec.vars)
    for idx, g in enumerate(spec.ideal):
        try:
            p = algebra.ring.parse(g)
        except UsageError as exc:
            raise type(exc)(f"ideal[{idx}] {g!r}: {exc}") from None
        if not p.is_zero() and p.homogeneous_degree() is None:
            raise NonHomogeneousError(f"ideal[{idx}] {g!r} is not homogeneous")
        ring_gens.append(p)
    try:
        spec.algebra = GradedAlgebra(field_, spec.vars, ring_gens)
    except UsageError as exc:
        raise type(exc)(f"ideal: {exc}") from None
    for name, mod in spec.modules.items():
        where = f"modules.{name}"
        if not isinstance(mod, dict):
            raise ParseError(f"{where}: expected an object")
        twists = _require(mod, "row_twists", list, where)
        matrix = _require(mod, "matrix", list, where)
        if not all(isinstance(t, int) for t in twists):
            raise ParseError(f"{where}.row_twists: expected integers")
        rows = []
        for i, row in enumerate(matrix):
            if not isinstance(row, list):
                raise ParseError(f"{where}.matrix[{i}]: expected a list")
            parsed = []
            for j, entry in enumerate(row):
                try:
                    parsed.append(spec.algebra.ring.parse(str(entry)))
                except UsageError as exc:
                    raise type(exc)(f"{where}.matrix[{i}][{j}] {entry!r}: {exc}") from None
            rows.append(parsed)
        if not matrix:
            rows = [[] for _ in twists]
        try:
            spec.parsed_modules[name] = GradedModule.from_matrix(spec.algebra, twists, rows)
        except UsageError as exc:
            raise type(exc)(f"{where}: {exc}") from None
    forms = spec.options.get("forms", [])
    if not isinstance(forms, list):
        raise ParseError("job.options.forms: expected a list of polynomial strings")
    for idx, f in enumerate(forms):
        try:
            p = spec.algebra.ring.parse(str(f))
        except UsageError as exc:
            raise type(exc)(f"options.forms[{idx}] {f!r}: {exc}") from None
        if not p.is_zero() and p.homogeneous_degree() is None:
            raise NonHomogeneousError(f"options.forms[{idx}] {f!r} is not homogeneous")
    if "module" in spec.options:
        spec.module()


@dataclass
class Report:
    job: dict
    result: dict
    timing: float
    engine_version: str = __version__
    text: str = ""
    ok: bool = True

    def to_dict(self) -> dict:
        return {"job": self.job, "result": self.result, "timing_seconds": round(self.timing, 6),
                "engine_version": self.engine_version}

    def to_json(self, timing: bool = True) -> str:
        d = self.to_dict()
        if not timing:
            d.pop("timing_seconds")
        return json.dumps(d, indent=2, sort_keys=True)


def _summary_text(result: dict, indent: int = 0) -> str:
    pad = " " * indent
    lines = []
    for key, val in result.items():
        if isinstance(val, dict) and val:
            lines.append(f"{pad}{key}:")
            lines.append(_summary_text(val, indent + 2))
        else:
            lines.append(f"{pad}{key}: {json.dumps(val)}")
    return "\n".join(lines)


def _cmd_betti(spec: JobSpec):
    betti = minimal_resolution(spec.module(), spec.cutoff).betti
    return betti.to_dict(), betti.to_text()


def _cmd_reg(spec: JobSpec):
    M = spec.module()
    out = {"regularity_over_polynomial_ring": regularity(M.over_polynomial_ring())}
    if not spec.algebra.is_polynomial:
        try:
            out["regularity"] = {"status": "exact", "value": regularity(M, spec.cutoff)}
        except UnsupportedError as exc:
            out["regularity"] = {"status": "lower_bound", "value": exc.lower_bound,
                                 "cutoff": spec.cutoff, "reason": str(exc)}
    else:
        out["regularity"] = {"status": "exact", "value": out["regularity_over_polynomial_ring"]}
    return out, None


def _cmd_ld(spec: JobSpec):
    return linearity_defect(spec.module(), spec.cutoff).to_dict(), None


def _cmd_ild(spec: JobSpec):
    return injective_linearity_defect(spec.module(), spec.cutoff).to_dict(), None


def _cmd_koszul(spec: JobSpec):
    return is_koszul_algebra(spec.algebra, spec.cutoff).to_dict(), None


def _cmd_cwlinear(spec: JobSpec):
    return is_componentwise_linear(spec.module(), spec.cutoff).to_dict(), None


def _cmd_profile(spec: JobSpec):
    return numerical_profile(spec.module()).to_dict(), None


def _cmd_ulrich(spec: JobSpec):
    M = spec.module()
    prof = numerical_profile(M)
    if prof.is_zero:
        raise DegenerateInputError("minimal degree is undefined for the zero module")
    cm = is_cohen_macaulay(M)
    mindeg = has_minimal_degree(M)
    return {"profile": prof.to_dict(), "cohen_macaulay": cm, "minimal_degree": mindeg,
            "ulrich": mindeg and prof.dim == spec.algebra.dimension(),
            "ld": linearity_defect(M, spec.cutoff).to_dict()}, None


def _cmd_koszulcx(spec: JobSpec):
    forms = spec.options.get("forms")
    if not forms:
        raise UsageError("options.forms: the koszulcx command needs at least one form")
    M = spec.module("R") if "module" not in spec.options and not spec.parsed_modules else spec.module()
    res = minimal_resolution(M, spec.cutoff + len(forms) + 1)
    C = tensor(koszul_complex(forms, spec.algebra), res.complex)
    ld = linearity_defect_of_complex(C, spec.cutoff + len(forms))
    out = {"ld": ld.to_dict(), "forms": list(forms)}
    if not M.is_zero():
        out["koszul_depth"] = koszul_depth(forms, M)
    return out, None


def _cmd_check(spec: JobSpec):
    names = [spec.options["suite"]] if "suite" in spec.options else list(SUITES)
    reports = [run_property_suite(n, spec.seed, spec.options.get("count"),
                                  spec.options.get("cutoff")) for n in names]
    res = {"suites": [r.to_dict() for r in reports], "passed": all(r.ok for r in reports)}
    return res, None


DISPATCH = {
    "betti": _cmd_betti, "reg": _cmd_reg, "ld": _cmd_ld, "ild": _cmd_ild, "koszul": _cmd_koszul,
    "cwlinear": _cmd_cwlinear, "profile": _cmd_profile, "ulrich": _cmd_ulrich,
    "koszulcx": _cmd_koszulcx, "check": _cmd_check,
}


def run_job(spec: JobSpec) -> Report:
    """Run a parsed job; computation errors propagate with the command named."""
    start = time.perf_counter()
    try:
        result, text = DISPATCH[spec.command](spec)
    except UsageError:
        raise
    except LindefectError as exc:
        raise type(exc)(f"{spec.command}: {exc}") from exc
    elapsed = time.perf_counter() - start
    ok = result.get("passed", True) if spec.command == "check" else True
    return Report(spec.echo(), result, elapsed, text=text or _summary_text(result), ok=ok)


def run_suite_report(name: str, seed: int = 0, count: Optional[int] = None,
                     cutoff: Optional[int] = None) -> Report:
    start = time.perf_counter()
    rep = run_property_suite(name, seed, count, cutoff)
    elapsed = time.perf_counter() - start
    job = {"suite": name, "seed": seed, "count": count, "cutoff": cutoff}
    result = rep.to_dict()
    return Report(job, result, elapsed, text=_summary_text(result), ok=rep.ok)
