import random

import pytest
from hypothesis import given, settings, strategies as st

from oracle import complex_data, homology_dimension
from lindefect.complexes import FreeComplex, complex_from_map, homology_module, koszul_complex, minimal_resolution
from lindefect.corpus import cubic_control, cyclic_module, koszul_fixtures, random_module
from lindefect.errors import PreconditionError, UnsupportedError
from lindefect.graded import GradedModule, make_algebra
from lindefect.linearity import (
    LdResult,
    base_change,
    component_submodule,
    injective_linearity_defect,
    is_componentwise_linear,
    is_gorenstein,
    is_koszul_algebra,
    koszul_betti_check,
    koszul_depth,
    linear_part,
    linearity_defect,
    linearity_defect_of_complex,
)

S = make_algebra("GF(101)", "xy")
R = make_algebra("GF(101)", "xy", ["x^2", "x*y"])
y_map = complex_from_map(R, [0], [1], [{(0, (0, 1)): 1}])


def test_linear_part_examples():
    L = linear_part(y_map)
    assert L.differentials == y_map.differentials
    sq = complex_from_map(S, [0], [2], [{(0, (2, 0)): 1}])
    assert linear_part(sq).differentials == {}
    F = minimal_resolution(cyclic_module(S, ["x^2", "x*y"]), 4).complex
    LF = linear_part(F)
    assert 1 not in LF.differentials
    assert LF.differential(2) == F.differential(2)


def test_linear_part_rejects_units():
    F = FreeComplex(S, {0: [0], 1: [0]}, {1: [{(0, (0, 0)): 1}]})
    with pytest.raises(PreconditionError):
        linear_part(F)


def test_ld_examples():
    r = linearity_defect(R.residue_field(), 5)
    assert r.status == "zero_up_to" and r.cutoff == 5
    assert str(linearity_defect(S.residue_field())) == "Exact(0)"
    r = linearity_defect(cyclic_module(S, ["x^2"]))
    assert r.is_exact and r.value == 1


def test_ld_of_complex_examples():
    r = linearity_defect_of_complex(y_map)
    assert r.is_exact and r.value == 1
    zero_diff = FreeComplex(R, {0: [0], 1: [1], 2: [3]})
    assert linearity_defect_of_complex(zero_diff).value == 2


def test_ld_of_zero_module():
    Z = GradedModule(S, [0], [{(0, (0, 0)): 1}])
    r = linearity_defect(Z)
    assert r.is_exact and r.value is None and str(r) == "Exact(-inf)"


def test_ld_result_helpers():
    r = LdResult("at_least", 2, 4, {0: True, 1: False, 2: True})
    assert r.lower_bound == 2 and not r.is_zero_up_to(3)
    z = LdResult("zero_up_to", None, 4, {0: True})
    assert z.lower_bound == 0 and z.is_zero_up_to(4) and not z.is_zero_up_to(5)
    assert z.to_dict()["homology_nonzero"] == {"0": True}


def test_koszul_statuses():
    assert is_koszul_algebra(S).status == "koszul"
    assert is_koszul_algebra(make_algebra("GF(101)", "xyz")).status == "koszul"
    st_r = is_koszul_algebra(R, 6)
    assert st_r.status == "koszul_up_to" and st_r.cutoff == 6
    cubic = is_koszul_algebra(cubic_control(), 6)
    assert cubic.status == "not_koszul" and cubic.witness == (2, 3)
    assert koszul_betti_check(R, 5).status == "yes_up_to"
    assert koszul_betti_check(cubic_control(), 4).witness == (2, 3)


def test_koszul_depth_examples():
    assert koszul_depth(["x", "y"], S.as_module()) == 2
    assert koszul_depth(["x"], S.residue_field()) == 0
    T = make_algebra("GF(101)", "x")
    assert koszul_depth(["x^2"], cyclic_module(T, ["x^3"])) == 0


def test_base_change_examples():
    F = minimal_resolution(cyclic_module(R, ["x"]), 3).complex
    same = base_change(F, R)
    assert same.differentials == F.differentials
    K = base_change(koszul_complex(["x", "y"], S), R)
    assert K.differentials == koszul_complex(["x", "y"], R).differentials
    G = minimal_resolution(cyclic_module(S, ["x^2"]), 3).complex
    C = make_algebra("GF(101)", "xy", ["x^3"])
    assert base_change(G, C).entry(1, 0, 0) == C.ring.parse("x^2")


def test_gorenstein():
    assert is_gorenstein(S)
    assert is_gorenstein(make_algebra("GF(101)", "xy", ["x^2", "y^2"]))
    assert not is_gorenstein(R)


@pytest.mark.parametrize("p,q,r", [(2, 1, 0), (3, 2, 1), (3, 3, 1)])
def test_ild_family(p, q, r):
    names = [f"x{i}" for i in range(1, q + 1)] + [f"y{i}" for i in range(1, p - q + 1)]
    A = make_algebra("GF(101)", names)
    gens = [f"x{i}^2" for i in range(1, q - r + 1)] + [f"y{i}" for i in range(1, p - q + 1)]
    res = injective_linearity_defect(cyclic_module(A, gens))
    assert res.is_exact and res.value == q


def test_ild_examples():
    assert injective_linearity_defect(S.residue_field()).value == 0
    assert injective_linearity_defect(S.as_module()).value == 2
    with pytest.raises(PreconditionError):
        injective_linearity_defect(R.residue_field())


def test_ild_needs_finite_pd():
    G = make_algebra("GF(101)", "xy", ["x^2", "y^2"])
    with pytest.raises((UnsupportedError, PreconditionError)):
        injective_linearity_defect(cyclic_module(G, ["x"]), 4)


def test_component_submodule():
    k = S.residue_field()
    assert component_submodule(k, 0).hilbert_numerator() == k.hilbert_numerator()
    M = cyclic_module(S, ["x^2"])
    C1 = component_submodule(M, 1)
    assert [C1.hilbert_function(d) for d in range(4)] == [0, 2, 2, 2]
    assert component_submodule(M.twist(-2), 1).is_zero()


def test_componentwise_linear_examples():
    assert is_componentwise_linear(S.residue_field()).status == "yes"
    m = cyclic_module(S, []).submodule([{(0, (1, 0)): 1}, {(0, (0, 1)): 1}])
    assert is_componentwise_linear(m).status == "yes"
    rep = is_componentwise_linear(cyclic_module(S, ["x^2"]))
    assert rep.status == "no" and rep.witness == 0
    with pytest.raises(PreconditionError):
        is_componentwise_linear(cubic_control().residue_field(), 4)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_linear_part_homology_matches_oracle(seed):
    rng = random.Random(seed)
    alg = rng.choice(koszul_fixtures())
    M = random_module(rng, alg)
    r = linearity_defect(M, 3)
    L = linear_part(minimal_resolution(M, 4).complex)
    modules, diffs, ideal, nv, p = complex_data(L)
    for n, nonzero in r.homology.items():
        H = homology_module(L, n)
        assert H.is_zero() == (not nonzero)
        for d in range(6):
            assert H.hilbert_function(d) == homology_dimension(modules, diffs, ideal, nv, p, n, d)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_ld_vanishing_matches_componentwise_linearity(seed):
    rng = random.Random(seed)
    alg = rng.choice(koszul_fixtures())
    M = random_module(rng, alg)
    if M.is_zero():
        return
    ld = linearity_defect(M, 4)
    cw = is_componentwise_linear(M, 4)
    assert ld.is_zero_up_to(4) == cw.holds
