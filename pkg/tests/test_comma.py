import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobcat.algrep import Verdict, is_isomorphic
from frobcat.classes import all_objects, injectives
from frobcat.comma import LambdaBridge, comma_ext, triangular_algebra
from frobcat.homalg import ext, is_short_exact


@pytest.fixture(scope="module")
def setting(dual):
    K = dual.comma
    k, R = dual.modules["k"], dual.modules["A"]
    return dual, K, k, R


def test_socle_object_is_valid(setting):
    sc, K, k, R = setting
    B = sc.comma_objects["socle"]
    assert K.validate_object(B) == []
    assert K.is_valid(K.identity(B))


def test_kernel_and_cokernel_of_identity_and_zero(setting):
    sc, K, k, R = setting
    B = sc.comma_objects["socle"]
    Kr, _ = K.kernel(K.identity(B))
    C, _ = K.cokernel(K.identity(B))
    assert K.is_zero_object(Kr) and K.is_zero_object(C)
    C0, pi = K.cokernel(K.zero_morphism(B, B))
    assert K.dims(C0) == K.dims(B) and K.is_iso(pi)


def test_unit_sequence_of_an_object(setting):
    sc, K, k, R = setting
    B = sc.comma_objects["socle"]
    # (T(Y), Y) -> (X, Y) has cokernel (Coker phi, 0)
    unit = K.morphism(K.T_B(B.Y), B, B.phi.matrix, np.eye(B.Y.dim, dtype=np.int64))
    assert K.is_valid(unit)
    C, _ = K.cokernel(unit)
    assert C.Y.dim == 0
    assert is_isomorphic(K.A, C.X, K.q(B))[0] is Verdict.YES


def test_functor_identities(setting):
    sc, K, k, R = setting
    for Y in (k, R):
        assert K.q(K.T_B(Y)).dim == 0
    for X in (k, R):
        assert K.U_B(K.Z_A(X)).dim == 0
        assert K.U_A(K.Z_A(X)).key == X.key
    assert is_isomorphic(K.A, K.q(sc.comma_objects["socle"]), k)[0] is Verdict.YES
    f = K.A.hom(R, R).basis[0]
    assert K.is_valid(K.apply_functor("Z_A", f))
    assert K.is_valid(K.apply_functor("T_B", f))
    assert K.is_valid(K.apply_functor("Z_B", f))


def test_membership_examples(setting):
    sc, K, k, R = setting
    everything = all_objects()
    assert K.membership_B(everything, everything, sc.comma_objects["socle"]) is Verdict.YES
    assert K.membership_B(everything, everything, K.T_B(k)) is Verdict.YES
    # a structure map with a kernel
    phi0 = K.obj(k, k, np.zeros((1, 1), dtype=np.int64))
    assert K.membership_B(everything, everything, phi0) is Verdict.NO
    assert K.membership_B(everything, injectives(K.B), sc.comma_objects["socle"]) is Verdict.NO


def test_projective_cover_is_epi_from_projective(setting):
    sc, K, k, R = setting
    for n, B in sc.window("C"):
        pi = K.projective_cover(B)
        assert K.is_valid(pi)
        assert K.is_epi(pi), n
        assert K.is_projective(pi.source)


def test_comma_ext_of_projective_vanishes(setting):
    sc, K, k, R = setting
    P = K.projective_cover(sc.comma_objects["socle"]).source
    for _, B in sc.window("C")[:6]:
        for i in (1, 2, 3):
            assert comma_ext(K, P, B, i).dim == 0


def test_reduction_patterns_on_window(setting):
    sc, K, k, R = setting
    targets = sc.window("C")[:6]
    for _, N in targets:
        for _, X in sc.window("A"):
            for i in range(4):
                assert comma_ext(K, K.Z_A(X), N, i).dim == ext(K.A, X, N.X, i).dim
        for _, Y in sc.window("B"):
            for i in range(4):
                assert comma_ext(K, K.T_B(Y), N, i).dim == ext(K.B, Y, N.Y, i).dim


def test_reduction_pattern_in_gp_scenario(gp_scenario):
    K = gp_scenario.comma
    for _, N in gp_scenario.window("C")[:6]:
        for _, X in gp_scenario.window("A"):
            for i in range(3):
                assert comma_ext(K, K.Z_A(X), N, i).dim == ext(K.A, X, N.X, i).dim


def test_triangular_algebra_is_valid(dual, path_a2, gp_scenario):
    for sc in (dual, path_a2, gp_scenario):
        lam = triangular_algebra(sc.bimodule)
        assert lam.validate() == []
        assert lam.dim == sc.bimodule.left_algebra.dim + sc.bimodule.dim + sc.bimodule.right_algebra.dim


def test_lambda_bridge_round_trip(setting):
    sc, K, k, R = setting
    br = LambdaBridge(K)
    assert br.to_lambda(K.zero()).dim == 0
    for _, B in sc.window("C"):
        Z = br.to_lambda(B)
        assert Z.validate() == []
        assert Z.dim == B.X.dim + B.Y.dim
        back = br.from_lambda(Z)
        assert is_isomorphic(K, back, B)[0] is Verdict.YES


def test_lambda_bridge_preserves_hom_dimensions(setting):
    sc, K, k, R = setting
    br = LambdaBridge(K)
    objs = [B for _, B in sc.window("C")[:8]]
    for B1 in objs:
        for B2 in objs:
            assert K.hom(B1, B2).dim == br.category.hom(br.to_lambda(B1), br.to_lambda(B2)).dim


@given(st.integers(0, 26), st.integers(0, 26))
@settings(max_examples=40, deadline=None)
def test_hom_closed_under_composition_and_functorial(dual, i, j):
    K = dual.comma
    win = dual.window("C")
    B1, B2 = win[i % len(win)][1], win[j % len(win)][1]
    H = K.hom(B1, B2)
    for f in H.basis:
        assert K.is_valid(f)
        g = K.q_morphism(f)
        assert K.A.hom(g.source, g.target).contains(g)


@given(st.integers(0, 26))
@settings(max_examples=27, deadline=None)
def test_kernel_cokernel_sequences_are_exact(dual, i):
    K = dual.comma
    win = dual.window("C")
    B = win[i % len(win)][1]
    for f in K.hom(B, B).basis:
        Kr, inc = K.kernel(f)
        C, pi = K.cokernel(f)
        assert (f @ inc).is_zero() and (pi @ f).is_zero()
        I, iota = K.image(f)
        assert K.dims(I)[0] + K.dims(Kr)[0] == B.X.dim


def test_direct_sum_of_comma_objects(setting):
    sc, K, k, R = setting
    B = sc.comma_objects["socle"]
    S, inj, proj = K.direct_sum([B, K.T_B(k)])
    assert K.validate_object(S) == []
    for i, q in zip(inj, proj):
        assert K.is_valid(i) and K.is_valid(q)
        assert K.is_iso(q @ i)
    assert is_short_exact(K, inj[0], proj[1])
