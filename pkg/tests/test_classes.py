import numpy as np
import pytest

from frobcat.algrep import Module, ModuleCategory, Verdict, is_isomorphic, path_algebra_a2, truncated_polynomial
from frobcat.classes import (
    HypothesisError,
    NotGorenstein,
    NotStrong,
    all_objects,
    builtin_gp,
    builtin_mod_inj,
    builtin_proj,
    cotorsion_to_frobenius,
    frobenius_window_check,
    hat_class,
    hat_membership,
    injectives,
    lift_pair,
    projectives,
    recover_components,
    restricted_W,
    right_perp,
)
from frobcat.homalg import is_short_exact
from frobcat.scenario import load

from conftest import scenario_path


def dual_setup():
    A = truncated_polynomial(2, 2)
    cat = ModuleCategory(A)
    k = Module(A, np.array([[[1]], [[0]]]), name="k")
    R = cat.regular()
    kk, _, _ = cat.direct_sum([k, k])
    kR, _, _ = cat.direct_sum([k, R])
    window = [("0", cat.zero()), ("k", k), ("A", R), ("kk", kk), ("kA", kR)]
    return cat, k, R, window


def path_simples(A):
    S1 = Module(A, np.array([[[1]], [[0]], [[0]]]), name="S1")
    S2 = Module(A, np.array([[[0]], [[1]], [[0]]]), name="S2")
    return S1, S2


def _failing(entries):
    return [e["check"] for e in entries if e["status"] != "pass"]


def test_mod_inj_strong_flags():
    cat, k, R, window = dual_setup()
    assert builtin_mod_inj(cat).strong
    assert not builtin_mod_inj(ModuleCategory(path_algebra_a2())).strong


def test_mod_inj_right_approximation_of_k():
    cat, k, R, window = dual_setup()
    pair = builtin_mod_inj(cat)
    iota, pi = pair.right_approx(k)
    assert is_short_exact(cat, iota, pi)
    assert is_isomorphic(cat, iota.target, R)[0] is Verdict.YES
    assert is_isomorphic(cat, pi.target, k)[0] is Verdict.YES


def test_mod_inj_window_check_passes():
    cat, k, R, window = dual_setup()
    entries = frobenius_window_check(builtin_mod_inj(cat), window)
    assert _failing(entries) == []
    checks = {e["check"] for e in entries}
    assert {"W.in_perp_X", "W.generator"} <= checks  # strong pair


def test_non_strong_pair_has_no_left_approximations():
    cat = ModuleCategory(path_algebra_a2())
    pair = builtin_mod_inj(cat)
    with pytest.raises(NotStrong):
        pair.left_approx(cat.regular())
    S1, S2 = path_simples(cat.algebra)
    window = [("0", cat.zero()), ("S1", S1), ("S2", S2), ("A", cat.regular())]
    entries = frobenius_window_check(pair, window)
    assert _failing(entries) == []
    assert "W.generator" not in {e["check"] for e in entries}


def test_broken_pair_fails_summands():
    cat, k, R, window = dual_setup()
    RR, _, _ = cat.direct_sum([R, R])
    broken = restricted_W(builtin_mod_inj(cat), [RR], pad_with=R)
    entries = frobenius_window_check(broken, window + [("AA", RR)])
    assert "W.summands" in _failing(entries)


def test_gp_on_selfinjective_algebra():
    cat, k, R, window = dual_setup()
    gp = builtin_gp(cat, 2)
    assert gp.X(k) is Verdict.YES
    assert gp.X(R) is Verdict.YES
    assert _failing(frobenius_window_check(gp, window)) == []


def test_gp_on_hereditary_algebra_is_projectives():
    cat = ModuleCategory(path_algebra_a2())
    gp = builtin_gp(cat, 2)
    S1, S2 = path_simples(cat.algebra)
    assert gp.X(S1) is Verdict.NO
    assert gp.X(S2) is Verdict.YES
    assert gp.X(cat.regular()) is Verdict.YES


def test_gp_refuses_non_gorenstein_bound():
    # the regular module of the path algebra has injective dimension 1, so d = 0 is too small
    cat = ModuleCategory(path_algebra_a2())
    with pytest.raises(NotGorenstein):
        builtin_gp(cat, 0)


def test_cotorsion_examples():
    cat, k, R, window = dual_setup()
    mods = [M for _, M in window]
    base = builtin_mod_inj(cat)
    pair, report = cotorsion_to_frobenius(cat, all_objects(), injectives(cat), mods, 3, lambda M, v: base.right_approx(M, v)[0])
    assert all(e["status"] == "pass" for e in report)
    assert [bool(pair.W(M)) for M in mods] == [bool(base.W(M)) for M in mods]
    proj = builtin_proj(cat)
    pair, report = cotorsion_to_frobenius(
        cat, projectives(cat), all_objects(), mods, 3, lambda M, v: proj.right_approx(M, v)[0], lambda M, v: cat.identity(M)
    )
    assert pair.strong
    assert [bool(pair.W(M)) for M in mods] == [cat.is_projective(M) for M in mods]


def test_cotorsion_gp_and_its_perp():
    cat, k, R, window = dual_setup()
    mods = [M for _, M in window]
    gp = builtin_gp(cat, 2)
    perp = right_perp(cat, [M for M in mods if gp.X(M)], 3)
    pair, report = cotorsion_to_frobenius(cat, gp.X, perp, mods, 3, lambda M, v: gp.right_approx(M, v)[0])
    assert [bool(pair.W(M)) for M in mods] == [cat.is_projective(M) for M in mods]


def test_cotorsion_rejects_non_orthogonal_classes():
    cat, k, R, window = dual_setup()
    mods = [M for _, M in window]
    with pytest.raises(HypothesisError) as info:
        cotorsion_to_frobenius(cat, all_objects(), all_objects(), mods, 2, lambda M, v: cat.identity(M))
    assert info.value.report[0]["check"] == "cotorsion.hereditary_vanishing"


def test_hat_membership():
    cat = ModuleCategory(path_algebra_a2())
    S1, S2 = path_simples(cat.algebra)
    h = hat_class(cat, "proj", 2)
    v, witness = hat_membership(h, cat.regular())
    assert v is Verdict.YES and witness == []
    v, witness = hat_membership(h, cat.zero())
    assert v is Verdict.YES
    v, witness = hat_membership(h, S1)
    assert v is Verdict.YES and len(witness) == 1
    dual_cat, k, R, _ = dual_setup()
    v, _ = hat_membership(hat_class(dual_cat, "proj", 3), k)
    assert v is Verdict.UNDETERMINED


def test_lifted_pair_and_recovery(dual):
    L = dual.lifted()
    assert L.strong
    assert all(e["status"] == "pass" for e in L.hypotheses)
    entries = frobenius_window_check(L, dual.window("C"), window_label="C")
    assert _failing(entries) == []
    rec = recover_components(L, dual.comma, dual.window("A"), dual.window("B"))
    assert _failing(rec) == []


def test_lifted_right_approximation_lands_in_w(dual):
    L = dual.lifted()
    K = dual.comma
    B = dual.comma_objects["socle"]
    iota, pi = L.right_approx(B)
    assert is_short_exact(K, iota, pi)
    assert L.W(iota.target) is Verdict.YES
    assert L.X(pi.target) is Verdict.YES
    # for (T(Y), Y) the middle term has zero cokernel part
    TB = K.T_B(dual.modules["k"])
    mid = L.right_approx(TB)[0].target
    assert K.q(mid).dim == 0


def test_lift_refuses_nonvanishing_derived_tensor():
    sc = load(scenario_path("broken_tor"))
    with pytest.raises(HypothesisError) as info:
        lift_pair(sc.pair("A"), sc.pair("B"), sc.comma, sc.window("B"), sc.depth)
    failing = [e["check"] for e in info.value.report if e["status"] == "fail"]
    assert "hypothesis.LnT_vanishing" in failing


def test_hat_level_hypotheses(dual):
    L = lift_pair(dual.pair("A"), dual.pair("B"), dual.comma, dual.window("B"), dual.depth, level="hat")
    checks = {e["check"]: e["status"] for e in L.hypotheses}
    assert checks == {"hypothesis.LnT_vanishing": "pass", "hypothesis.T(V)_in_W_hat": "pass"}
