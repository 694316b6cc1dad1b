import dataclasses
from fractions import Fraction

import pytest

from bifrobenius import fixtures
from bifrobenius.algcoalg import (FinDimAlgebra, FinDimCoalgebra, act_dual_on_h_left, act_h_on_dual_left, apply_form,
                                  check_algebra, conv_unit, convolution_inverse)
from bifrobenius.bifrob import (BuildError, build_bifrobenius, conakayama, is_sbf,
                                is_semisimple, left_cointegral_space, left_integral_space,
                                modularity, nakayama, obs3_condition, radford_check, rescaled,
                                right_cointegral_space, right_integral_space, run_pipeline,
                                trace_form, trace_nakayama, trace_s2, verify_all,
                                verify_core_identities)
from bifrobenius.exactlinalg import QQ, FieldSpec, Matrix, inverse, trace
from conftest import sweedler

F = Fraction
ALL = fixtures.fixture_names()


def built(name, field=None):
    return build_bifrobenius(*fixtures.load(name, field))


def vec(*xs):
    return QQ.vector(xs)


# -- integral spaces ---------------------------------------------------------

def test_b4_integral_spaces():
    A, C, _, _ = fixtures.b4()
    assert right_integral_space(A, C) == [vec(0, 0, 0, 1)]
    assert right_cointegral_space(A, C) == [vec(0, 0, 0, 1)]


def test_obs1_integral_spaces():
    A, C, *_ = fixtures.obs1_grouplike()
    assert right_integral_space(A, C) == [vec(1, 1, 1)]
    assert right_cointegral_space(A, C) == [vec(1, 0, 0)]


def test_c2_integral_spaces():
    A, C, _, _ = fixtures.load("c2")
    assert right_integral_space(A, C) == [vec(1, 1)]
    assert right_cointegral_space(A, C) == [vec(1, 0)]
    assert left_integral_space(A, C) == [vec(1, 1)]
    assert left_cointegral_space(A, C) == [vec(1, 0)]


def test_sweedler_left_and_right_integrals_differ():
    A, C = sweedler()
    assert right_integral_space(A, C) != left_integral_space(A, C)


# -- build -------------------------------------------------------------------

def test_b4_build():
    B = built("b4")
    assert B.S == Matrix.identity(4)
    assert apply_form(B.eps, B.t) == 0
    assert apply_form(B.phi, B.one) == 0
    x, x3 = B.basis(1), B.basis(3)
    assert B.mul(x, x3) == vec(0, 0, 0, 0)


def test_obs1_build():
    A, C, t, phi, S, Sigma = fixtures.obs1_grouplike()
    B = build_bifrobenius(A, C, t, phi)
    assert B.S == S
    assert B.S.column(1) == vec(0, 0, 1) and B.S.column(2) == vec(0, 1, 0)
    assert convolution_inverse(C, A, Matrix.identity(3)) == Sigma != S
    assert not is_sbf(B)


@pytest.mark.parametrize("p", [2, 3])
def test_obs1_needs_characteristic_not_2_or_3(p):
    with pytest.raises(ValueError, match="characteristic"):
        fixtures.obs1_grouplike(FieldSpec(p))


def test_build_auto_picks_integrals():
    A, C, t, phi = fixtures.load("s3")
    B = build_bifrobenius(A, C)
    assert B.t == t and B.phi == phi


def test_phi_is_rescaled():
    A, C, t, phi = fixtures.load("c3")
    B = build_bifrobenius(A, C, t, tuple(5 * x for x in phi))
    assert B.phi == phi


def square_zero_pair():
    """k[x, y]/(x, y)^2 with x, y primitive: integrals and cointegrals are 2-dim."""
    z, o = QQ.zero, QQ.one
    one, x, y, nil = vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1), vec(0, 0, 0)
    A = FinDimAlgebra.from_table(QQ, [[one, x, y], [x, nil, nil], [y, nil, nil]], one)

    def prim(k):
        m = [[z] * 3 for _ in range(3)]
        m[0][k] = m[k][0] = o
        return m

    d1 = [[o, z, z], [z, z, z], [z, z, z]]
    C = FinDimCoalgebra.from_table(QQ, [d1, prim(1), prim(2)], one)
    return A, C


def test_integral_not_unique():
    A, C = square_zero_pair()
    assert len(right_integral_space(A, C)) == 2
    with pytest.raises(BuildError) as err:
        build_bifrobenius(A, C)
    assert err.value.step == "integral not unique"


def test_normalization_impossible():
    A, C = square_zero_pair()
    with pytest.raises(BuildError) as err:
        build_bifrobenius(A, C, t=vec(0, 1, 0), phi=vec(0, 0, 1))
    assert err.value.step == "normalization impossible"


def test_supplied_integral_checked():
    A, C, _, _ = fixtures.load("c2")
    with pytest.raises(BuildError) as err:
        build_bifrobenius(A, C, t=vec(1, 0))
    assert err.value.step == "right integral invalid"
    assert err.value.witness is not None
    with pytest.raises(BuildError, match="zero"):
        build_bifrobenius(A, C, t=vec(1, 1), phi=vec(0, 0))


def test_wrong_integral_rejected_with_witness():
    A, C, _, _ = fixtures.b4()
    with pytest.raises(BuildError) as err:
        build_bifrobenius(A, C, t=vec(0, 0, 1, 0))
    w = err.value.witness
    assert w.lhs != w.rhs


def test_non_antipodal_data_not_bifrobenius():
    A, C, t, phi, *_ = fixtures.obs1_grouplike()
    with pytest.raises(BuildError) as err:
        build_bifrobenius(A, C, t, tuple(2 * x for x in phi), normalize=False)
    assert err.value.step == "not biFrobenius"
    assert err.value.witness is not None


def test_unnormalized_phi_fails_normalization_check():
    B = build_bifrobenius(*fixtures.load("obs1"))
    bad = dataclasses.replace(B, phi=tuple(2 * x for x in B.phi))
    c = verify_core_identities(bad).get("phi_normalized")
    assert c.failed
    assert (c.witness.lhs, c.witness.rhs) == (2, 1)


# -- identity suites on every fixture ------------------------------------------

@pytest.mark.parametrize("name", ALL)
def test_every_fixture_passes_everything(name):
    B, rep = run_pipeline(*fixtures.load(name))
    assert B is not None
    assert rep.failures == []


@pytest.mark.parametrize("name", ALL)
def test_failed_or_skipped_never_silent(name):
    B = built(name)
    rep = verify_all(B)
    for c in rep:
        assert c.status in ("pass", "fail", "skipped")
        if c.status == "skipped":
            assert c.detail


def test_s3_nakayama_checked_nontrivially():
    B = built("s3")
    rep = verify_all(B)
    assert rep.get("nakayama.nakayama_formula").passed
    assert nakayama(B) == Matrix.identity(6)


def test_obs1_nakayama_from_gram_matrix():
    B = built("obs1")
    n = B.dim
    N = nakayama(B)
    for i in range(n):
        for j in range(n):
            lhs = apply_form(B.phi, B.mul(B.basis(i), B.basis(j)))
            rhs = apply_form(B.phi, B.mul(B.basis(j), N.column(i)))
            assert lhs == rhs


@pytest.mark.parametrize("name", ["b4", "c2", "c4", "s3-dual"])
def test_trivial_nakayama(name):
    B = built(name)
    assert nakayama(B) == Matrix.identity(B.dim)
    assert conakayama(B) == Matrix.identity(B.dim)


# -- Sweedler: nontrivial modular data -----------------------------------------

NORMALISED_SCALAR_FAILURES = {
    "core.sbar_squared_expansion", "core.a_harpoon_phi_is_lambda", "core.phi_of_s_t",
    "core.lambda_of_t", "core.phi_of_s", "core.alpha_of_a", "nakayama.nakayama_fixes_a",
}


@pytest.fixture(scope="module")
def sw():
    A, C = sweedler()
    return build_bifrobenius(A, C)


def test_sweedler_modular_data(sw):
    assert sw.a == vec(0, 1, 0, 0)
    assert sw.alpha == vec(1, -1, 0, 0)
    assert modularity(sw) == (False, False)
    assert sw.S @ sw.S != Matrix.identity(4)
    assert is_sbf(sw)


def test_sweedler_radford_nontrivial(sw):
    rep = radford_check(sw)
    assert rep.get("radford_formula").passed
    assert sw.S ** 4 == Matrix.identity(4)
    assert rep.get("s4_identity").status == "skipped"


def test_sweedler_fails_exactly_the_scalar_normalisations(sw):
    rep = verify_all(sw)
    assert {c.id for c in rep.failures} == NORMALISED_SCALAR_FAILURES
    for cid in ("nakayama.nakayama_formula", "nakayama.conakayama_formula",
                "traces.trace_s2_convolution", "traces.dimension_trace"):
        assert rep.get(cid).passed


def test_sweedler_corrected_scalar_forms(sw):
    alpha_a = apply_form(sw.alpha, sw.a)
    assert alpha_a == -1
    assert apply_form(sw.phi, sw.s) == alpha_a
    lam_t = apply_form(sw.lam, sw.t)
    assert lam_t == alpha_a
    assert act_h_on_dual_left(sw.algebra, sw.a, sw.phi) == tuple(alpha_a * x for x in sw.lam)
    assert nakayama(sw) @ sw.a == tuple(alpha_a * x for x in sw.a)


def test_sweedler_sbar_squared_expansion_with_scalar(sw):
    # sum phi(S t1 . x) t2 = phi(s) Sbar^2(alpha^-1 -> x) a^-1
    D = sw.delta(sw.t)
    n = sw.dim
    phi_s = apply_form(sw.phi, sw.s)
    Sbar2 = sw.Sbar @ sw.Sbar
    for k in range(n):
        x = sw.basis(k)
        lhs = [QQ.zero] * n
        for i in range(n):
            for j in range(n):
                if D[i, j]:
                    c = D[i, j] * apply_form(sw.phi, sw.mul(sw.S.column(i), x))
                    lhs = [u + c * v for u, v in zip(lhs, sw.basis(j))]
        inner = act_dual_on_h_left(sw.coalgebra, sw.alpha_inv, x)
        rhs = sw.mul(Sbar2 @ inner, sw.a_inv)
        assert tuple(lhs) == tuple(phi_s * v for v in rhs)


# -- metamorphic: rescaling t and phi ------------------------------------------

@pytest.mark.parametrize("name", ["c3", "b4", "obs1", "s3"])
@pytest.mark.parametrize("c", [2, -3, F(1, 5)])
def test_rescaling_invariance(name, c):
    B = built(name)
    R = rescaled(B, c)
    for attr in ("S", "Sbar", "a", "a_inv", "alpha", "alpha_inv", "N", "cN"):
        assert getattr(R, attr) == getattr(B, attr), attr
    rb, rr = verify_all(B), verify_all(R)
    assert [(x.id, x.status) for x in rb] == [(x.id, x.status) for x in rr]
    keys = ("is_sbf", "unimodular", "counimodular", "semisimplicity.semisimple",
            "semisimplicity.cosemisimple", "semisimplicity.obs3_holds")
    assert {k: rb.values[k] for k in keys} == {k: rr.values[k] for k in keys}


# -- traces -----------------------------------------------------------------

def test_b4_traces():
    ts = trace_s2(built("b4"))
    assert ts == (4, 4, 0)


def test_c2_traces():
    B = built("c2")
    assert trace_s2(B) == (2, 2, 2)
    tn = trace_nakayama(B)
    assert tn.tr_N == 2 == tn.tr_N_formula


def test_obs1_traces():
    B = built("obs1")
    ts = trace_s2(B)
    assert ts.tr_value == 3 == ts.phi_conv
    assert trace_nakayama(B).dim_check == 3


def test_eq13_values():
    assert trace_nakayama(built("b4")).dim_check == 4
    assert trace_nakayama(built("obs1")).dim_check == 3


@pytest.mark.parametrize("name,p", [("c3", 5), ("c3", 3), ("c4", 3), ("c2xc2", 2),
                                    ("s3", 5), ("s3", 2), ("c2", 7)])
def test_mod_p_group_reruns(name, p):
    G = FieldSpec(p)
    B, rep = run_pipeline(*fixtures.load(name, G))
    assert rep.failures == []
    assert rep.values["traces.dim_in_field"] == G(B.dim)
    assert rep.values["traces.phi_id_conv_Sbar_t"] == G(B.dim)
    assert rep.values["semisimplicity.semisimple"] is None
    assert rep.get("semisimplicity.semisimple_implies_eps_t_nonzero").status == "skipped"


# -- obs3 and semisimplicity -------------------------------------------------

def test_c3_obs3_and_pipeline():
    B, rep = run_pipeline(*fixtures.load("c3"))
    v = rep.values
    assert v["unimodular"] and v["counimodular"] and v["is_sbf"]
    assert v["semisimplicity.s2_is_identity"]
    assert trace(B.N) == 3 == apply_form(B.phi, B.one) * apply_form(B.eps, B.t)
    assert obs3_condition(B) == (True, vec(3, 0, 0))
    assert v["semisimplicity.semisimple"] and v["semisimplicity.cosemisimple"]
    assert v["collapse.integral_product_value"] == vec(3, 0, 0)


def test_b4_obs3_value():
    held, value = obs3_condition(built("b4"))
    assert value == vec(0, 0, 0, 4)
    assert not held


def test_obs1_obs3_and_scalars():
    B, rep = run_pipeline(*fixtures.load("obs1"))
    assert rep.values["semisimplicity.eps_t"] == 5
    assert rep.values["semisimplicity.phi_1"] == 1
    held, value = obs3_condition(B)
    assert not held


def test_b4_not_semisimple_although_s2_identity():
    B, rep = run_pipeline(*fixtures.load("b4"))
    v = rep.values
    assert v["semisimplicity.semisimple"] is False
    assert v["semisimplicity.cosemisimple"] is False
    assert v["semisimplicity.s2_is_identity"]
    assert v["semisimplicity.s2_identity_without_semisimplicity"]


def test_trace_form_of_nilpotent_is_degenerate():
    A, _, _, _ = fixtures.b4()
    T = trace_form(A)
    # only tr(L_1 L_1) = 4 survives
    assert T[0, 0] == 4 and inverse(T) is None


def test_group_algebras_semisimple_over_q():
    for name in ("c2", "c3", "c4", "c2xc2", "s3"):
        A, *_ = fixtures.load(name)
        assert is_semisimple(A) is True
    assert is_semisimple(fixtures.load("c3", FieldSpec(3))[0]) is None


def test_conv_unit_consistency():
    B = built("c3")
    assert B.conv(B.S, B.identity) == conv_unit(B.coalgebra, B.algebra)


def test_double_dual_verdicts():
    for name in ("b4", "obs1", "c2"):
        B = built(name)
        D = build_bifrobenius(*fixtures.dual_fixture(B))
        DD = build_bifrobenius(*fixtures.dual_fixture(D))
        assert check_algebra(DD.algebra).ok
        assert DD.S == B.S and DD.t == B.t and DD.phi == B.phi
        assert is_sbf(DD) == is_sbf(B) and modularity(DD) == modularity(B)
