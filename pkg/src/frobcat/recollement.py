"""The six stable functors around a lifted Frobenius pair and checks of the recollement.

Three stable categories are involved: the stable category of the pair on
the R-side (``pairA``), of the lifted pair on the comma category, and of
the pair on the S-side (``pairB``).  Every check runs over explicit finite
windows of objects and reports the window, depth and budget it used.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .algrep import Verdict, descend, solve_extension
from .homalg import ext, is_short_exact, yoneda_realize
from .stable import (
    complete_triangle,
    compare_right,
    find_stable_iso,
    is_stable_iso,
    is_stably_zero,
    omega_sigma_unit,
    sigma_omega_unit,
    stable_hom,
    suspend,
)


@dataclass
class RecollementScenario:
    """Everything the verification needs; windows are lists of ``(name, object)``."""

    comma: object
    pairA: object
    pairB: object
    lifted: object
    window_A: list
    window_B: list
    window_C: list
    depth: int = 4
    budget: int = 4096
    seed: int = 0
    samples: int = 2
    memo: dict = field(default_factory=dict)

    @property
    def T(self):
        return self.comma.T


# the functor s-bar -----------------------------------------------------------------

def sbar_apply(sc, Y):
    """``s(Y) = (W, Y, sigma)`` for the chosen approximation ``sigma: T(Y) -> W``."""
    key = ("s", Y.key)
    hit = sc.memo.get(key)
    if hit is None:
        sigma, _ = sc.pairA.right_approx(sc.T(Y))
        hit = sc.comma.obj(sigma.target, Y, sigma.matrix)
        sc.memo[key] = hit
    return hit


def sbar_morphism(sc, g):
    """The pair ``(f, g)`` with ``f sigma = sigma' T(g)``."""
    src, tgt = sbar_apply(sc, g.source), sbar_apply(sc, g.target)
    f = solve_extension(sc.comma.A, src.phi, tgt.phi @ sc.T.on_morphism(g))
    if f is None:
        raise ValueError("lifting system for s on morphisms is inconsistent")
    return sc.comma.morphism(src, tgt, f.matrix, g.matrix)


def functor_table(sc):
    """Name -> (source pair, target pair, on objects, on morphisms)."""
    K = sc.comma
    return {
        "q": (sc.lifted, sc.pairA, K.q, K.q_morphism),
        "Z_A": (sc.pairA, sc.lifted, K.Z_A, K.Z_A_morphism),
        "U_A": (sc.lifted, sc.pairA, K.U_A, lambda f: f.a),
        "T_B": (sc.pairB, sc.lifted, K.T_B, K.T_B_morphism),
        "U_B": (sc.lifted, sc.pairB, K.U_B, lambda f: f.b),
        "s": (sc.pairB, sc.lifted, lambda Y: sbar_apply(sc, Y), lambda g: sbar_morphism(sc, g)),
    }


def window_of(sc, pair):
    if pair is sc.lifted:
        return sc.window_C
    if pair is sc.pairA:
        return sc.window_A
    return sc.window_B


def stable_functor_apply(sc, name, arg):
    """Image of an object or a morphism under one of the stable functors."""
    _, _, on_obj, on_mor = functor_table(sc)[name]
    return on_mor(arg) if hasattr(arg, "parts") else on_obj(arg)


# linear algebra of correspondences ------------------------------------------------------

def _matrix_of(fn, src_space, tgt_space, p):
    cols = [tgt_space.coords(fn(h)) for h in src_space.basis]
    if not cols:
        return la.zeros(tgt_space.dim, 0)
    return np.array(cols, dtype=np.int64).T.reshape(tgt_space.dim, src_space.dim)


def _induced(F, S1, S2, p):
    """Whether F maps the first W-subspace into the second, and the induced map."""
    wd = all(S2.w_subspace.contains(la.mul(F, w.reshape(-1, 1), p)[:, 0]) for w in S1.w_subspace.basis)
    Fbar = la.mul(la.mul(S2._proj, F, p), S1._sec, p)
    return wd, Fbar


def check_correspondence(S1, S2, phi, psi, p):
    """``phi: S1 -> S2`` and ``psi: S2 -> S1`` induce mutually inverse bijections."""
    F = _matrix_of(phi, S1.hom, S2.hom, p)
    G = _matrix_of(psi, S2.hom, S1.hom, p)
    wdF, Fbar = _induced(F, S1, S2, p)
    wdG, Gbar = _induced(G, S2, S1, p)
    out = {"well_defined": bool(wdF and wdG), "dims": [S1.dim, S2.dim]}
    out["bijective"] = bool(S1.dim == S2.dim and la.rank(Fbar, p) == S1.dim)
    out["inverse"] = bool(
        np.array_equal(la.mul(Gbar, Fbar, p), la.identity(S1.dim))
        and np.array_equal(la.mul(Fbar, Gbar, p), la.identity(S2.dim))
    )
    out["ok"] = out["well_defined"] and out["bijective"] and out["inverse"]
    return out


def _entry(sc, check, failures, tested, window, **extra):
    e = {
        "check": check,
        "status": "pass" if not failures else "fail",
        "window": window,
        "depth": sc.depth,
        "budget": sc.budget,
        "instances": tested,
    }
    if failures:
        e["counterexamples"] = failures[:3]
    e.update(extra)
    return e


def _by_size(cat, window):
    return sorted(window, key=lambda nw: (sum(cat.dims(nw[1])), nw[0]))


# adjunctions ----------------------------------------------------------------------------

def adjunction_data(sc, name):
    """``(left name, right name, phi, psi)`` with phi: Hom(LU, V) -> Hom(U, RV)."""
    K = sc.comma
    A = K.A

    if name == ("q", "Z_A"):

        def phi(c, U, V):
            _, pphi = A.cokernel(U.phi)
            return K.make_morphism(U, K.Z_A(V), ((c @ pphi).matrix, la.zeros(0, U.Y.dim)))

        def psi(h, U, V):
            _, pphi = A.cokernel(U.phi)
            return descend(A, pphi, h.a)

    elif name == ("Z_A", "U_A"):

        def phi(h, U, V):
            return h.a

        def psi(a, U, V):
            return K.make_morphism(K.Z_A(U), V, (a.matrix, la.zeros(V.Y.dim, 0)))

    elif name == ("T_B", "U_B"):

        def phi(h, U, V):
            return h.b

        def psi(b, U, V):
            return K.make_morphism(K.T_B(U), V, ((V.phi @ K.T.on_morphism(b)).matrix, b.matrix))

    elif name == ("U_B", "s"):

        def phi(g, U, V):
            sV = sbar_apply(sc, V)
            f = solve_extension(A, U.phi, sV.phi @ K.T.on_morphism(g))
            if f is None:
                raise ValueError("no extension along the structure map")
            return K.make_morphism(U, sV, (f.matrix, g.matrix))

        def psi(h, U, V):
            return h.b

    else:
        raise KeyError(name)
    return phi, psi


def verify_adjunction(sc, left, right):
    """Check the explicit correspondence of an adjoint pair on all window pairs."""
    table = functor_table(sc)
    pU, _, L_obj, L_mor = table[left]
    pV, _, R_obj, R_mor = table[right]
    phi, psi = adjunction_data(sc, (left, right))
    p = sc.comma.p
    failures, tested = [], 0
    nat_fail, nat_tested = [], 0
    wU = _by_size(pU.category, window_of(sc, pU))
    wV = _by_size(pV.category, window_of(sc, pV))
    for nU, U in wU:
        for nV, V in wV:
            S1 = stable_hom(pV, L_obj(U), V)
            S2 = stable_hom(pU, U, R_obj(V))
            res = check_correspondence(S1, S2, lambda h: phi(h, U, V), lambda k: psi(k, U, V), p)
            tested += 1
            if not res["ok"]:
                failures.append({"pair": [nU, nV], **{k: v for k, v in res.items() if k != "ok"}})
    # naturality on sampled morphisms between small window objects
    small_U = [(n, U) for n, U in wU if not pU.category.is_zero_object(U)][: sc.samples + 2]
    small_V = [(n, V) for n, V in wV if not pV.category.is_zero_object(V)][: sc.samples + 2]
    for nU, U in small_U:
        for nV, V in small_V:
            S1 = stable_hom(pV, L_obj(U), V)
            for h in S1.hom.basis[: sc.samples]:
                for nV2, V2 in small_V:
                    for v in pV.category.hom(V, V2).basis[: sc.samples]:
                        lhs = phi(v @ h, U, V2)
                        rhs = R_mor(v) @ phi(h, U, V)
                        nat_tested += 1
                        if not stable_hom(pU, U, R_obj(V2)).is_zero(lhs - rhs):
                            nat_fail.append(f"{nU},{nV}->{nV2}")
                for nU2, U2 in small_U:
                    for u in pU.category.hom(U2, U).basis[: sc.samples]:
                        lhs = phi(h @ L_mor(u), U2, V)
                        rhs = phi(h, U, V) @ u
                        nat_tested += 1
                        if not stable_hom(pU, U2, R_obj(V)).is_zero(lhs - rhs):
                            nat_fail.append(f"{nU2}->{nU},{nV}")
    return [
        _entry(sc, f"adjunction({left},{right}).bijection", failures, tested, f"{len(wU)}x{len(wV)}"),
        _entry(sc, f"adjunction({left},{right}).naturality", nat_fail, nat_tested, f"{len(small_U)}x{len(small_V)}"),
    ]


def verify_fully_faithful(sc, name):
    """The functor induces bijections of stable Hom-spaces on all window pairs."""
    src, tgt, on_obj, on_mor = functor_table(sc)[name]
    p = sc.comma.p
    window = _by_size(src.category, window_of(sc, src))
    failures, tested = [], 0
    for n1, U in window:
        for n2, V in window:
            S1 = stable_hom(src, U, V)
            S2 = stable_hom(tgt, on_obj(U), on_obj(V))
            F = _matrix_of(on_mor, S1.hom, S2.hom, p)
            wd, Fbar = _induced(F, S1, S2, p)
            ok = wd and S1.dim == S2.dim and la.rank(Fbar, p) == S1.dim
            tested += 1
            if not ok:
                failures.append({"pair": [n1, n2], "well_defined": bool(wd), "dims": [S1.dim, S2.dim]})
    return _entry(sc, f"fully_faithful({name})", failures, tested, len(window))


def verify_im_eq_ker(sc):
    """Objects with stably zero S-component are stably the image of their cokernel."""
    K = sc.comma
    A = K.A
    failures, tested, in_kernel = [], 0, []
    for n, B in _by_size(K, sc.window_C):
        tested += 1
        if not is_stably_zero(sc.pairB, B.Y):
            continue
        in_kernel.append(n)
        r = solve_extension(A, B.phi, A.identity(B.phi.source))
        if r is None:
            failures.append({"object": n, "reason": "structure sequence does not split"})
            continue
        C, pphi = A.cokernel(B.phi)
        target = K.Z_A(C)
        f = K.make_morphism(B, target, (pphi.matrix, la.zeros(0, B.Y.dim)))
        if not is_stable_iso(sc.lifted, f)[0]:
            failures.append({"object": n, "reason": "not stably isomorphic to Z_A(Coker phi)"})
    # the image of Z_A lies in the kernel of U_B
    for n, X in sc.window_A:
        tested += 1
        if not is_stably_zero(sc.pairB, K.Z_A(X).Y):
            failures.append({"object": n, "reason": "U_B(Z_A X) not zero"})
    return _entry(sc, "im_eq_ker", failures, tested, len(sc.window_C), kernel_objects=in_kernel)


def verify_composites(sc):
    K = sc.comma
    fails = [n for n, X in sc.window_A if K.U_B(K.Z_A(X)).dim != 0]
    fails += [n for n, Y in sc.window_B if not is_stably_zero(sc.pairA, K.q(K.T_B(Y)))]
    return _entry(sc, "composites_vanish", fails, len(sc.window_A) + len(sc.window_B), "A+B")


# step 1: triangle functors -----------------------------------------------------------

def sigma_comparison(sc, name, U):
    """Canonical ``F(Sigma U) -> Sigma(F U)`` from the image of the approximation sequence."""
    src, tgt, on_obj, on_mor = functor_table(sc)[name]
    iota, pi = src.right_approx(U)
    Fi, Fp = on_mor(iota), on_mor(pi)
    ok_seq = is_short_exact(tgt.category, Fi, Fp) and bool(tgt.W(Fi.target, sc.depth))
    if not ok_seq:
        return None, False
    return compare_right(tgt, (Fi, Fp), tgt.right_approx(on_obj(U))), True


def _sample_sequences(sc, pair, window):
    """Short exact sequences inside the window: approximations and realised Ext^1 classes."""
    cat = pair.category
    seqs = []
    for n, U in window:
        iota, pi = pair.right_approx(U)
        seqs.append((f"approx({n})", iota, pi))
    picks = [(n, U) for n, U in window if not cat.is_zero_object(U)][: sc.samples + 2]
    for n3, U3 in picks:
        for n1, U1 in picks:
            E = ext(cat, U3, U1, 1)
            if E.dim:
                i, q = yoneda_realize(cat, U3, U1, E.representatives[0])
                seqs.append((f"ext({n3},{n1})", i, q))
    return seqs


def verify_triangle_functor(sc, name):
    src, tgt, on_obj, on_mor = functor_table(sc)[name]
    window = _by_size(src.category, window_of(sc, src))
    fails, tested = [], 0
    comparisons = {}
    for n, U in window:
        tested += 1
        c, ok = sigma_comparison(sc, name, U)
        if not ok or not is_stable_iso(tgt, c)[0]:
            fails.append(f"sigma({n})")
        comparisons[U.key] = c
    tri_fails, tri_tested = [], 0
    for label, f, g in _sample_sequences(sc, src, window):
        tri = complete_triangle(src, f, g)
        Ff, Fg = on_mor(f), on_mor(g)
        tri_tested += 1
        if not is_short_exact(tgt.category, Ff, Fg):
            tri_fails.append(f"{label}: image not exact")
            continue
        image_tri = complete_triangle(tgt, Ff, Fg)
        c = comparisons.get(f.source.key)
        if c is None:
            c, ok = sigma_comparison(sc, name, f.source)
            if not ok:
                tri_fails.append(f"{label}: no comparison")
                continue
        diff = image_tri.b - c @ on_mor(tri.b)
        if not stable_hom(tgt, Fg.target, image_tri.b.target).is_zero(diff):
            tri_fails.append(label)
    return [
        _entry(sc, f"step1.{name}.sigma_commutes", fails, tested, len(window)),
        _entry(sc, f"step1.{name}.triangles", tri_fails, tri_tested, len(window)),
    ]


def verify_s_sigma(sc):
    """``Sigma s(Y)`` and ``s(Sigma Y)`` are stably isomorphic (found by a scan)."""
    fails, tested, undetermined = [], 0, []
    for n, Y in _by_size(sc.pairB.category, sc.window_B):
        tested += 1
        S, _, _ = suspend(sc.pairB, Y)
        sS = sbar_apply(sc, S)
        Ss, _, _ = suspend(sc.lifted, sbar_apply(sc, Y))
        v, _ = find_stable_iso(sc.lifted, sS, Ss, sc.budget, np.random.default_rng(sc.seed))
        if v is Verdict.NO:
            fails.append(n)
        elif v is Verdict.UNDETERMINED:
            undetermined.append(n)
    return _entry(sc, "step1.s.sigma_commutes", fails, tested, len(sc.window_B), undetermined=undetermined)


# strong case --------------------------------------------------------------------------

def verify_strong_upgrade(sc):
    claimed = sc.pairA.strong and sc.pairB.strong and sc.lifted.strong
    if not claimed:
        return {
            "check": "strong_upgrade",
            "claimed": False,
            "status": "not_claimed",
            "strong_flags": {"A": sc.pairA.strong, "B": sc.pairB.strong, "lifted": sc.lifted.strong},
            "depth": sc.depth,
            "budget": sc.budget,
            "window": "A+B+C",
        }
    fails, tested = [], 0
    for label, pair in (("A", sc.pairA), ("B", sc.pairB), ("C", sc.lifted)):
        for n, X in window_of(sc, pair):
            tested += 2
            if not is_stable_iso(pair, sigma_omega_unit(pair, X))[0]:
                fails.append(f"{label}:SigmaOmega({n})")
            if not is_stable_iso(pair, omega_sigma_unit(pair, X))[0]:
                fails.append(f"{label}:OmegaSigma({n})")
    e = _entry(sc, "strong_upgrade", fails, tested, "A+B+C")
    e["claimed"] = True
    return e


# aggregate ----------------------------------------------------------------------------

ADJUNCTIONS = (("q", "Z_A"), ("Z_A", "U_A"), ("T_B", "U_B"), ("U_B", "s"))
FULLY_FAITHFUL = ("Z_A", "T_B", "s")
TRIANGLE_FUNCTORS = ("q", "Z_A", "U_A", "T_B", "U_B")


def verify_recollement(sc):
    """Run every check and aggregate; ``status`` is pass only if all sub-checks pass."""
    report = {"hypotheses": list(getattr(sc.lifted, "hypotheses", []))}
    step1 = []
    for name in TRIANGLE_FUNCTORS:
        step1.extend(verify_triangle_functor(sc, name))
    step1.append(verify_s_sigma(sc))
    report["step1"] = step1
    adj = []
    for left, right in ADJUNCTIONS:
        adj.extend(verify_adjunction(sc, left, right))
    report["adjunctions"] = adj
    report["fully_faithful"] = [verify_fully_faithful(sc, n) for n in FULLY_FAITHFUL]
    report["im_eq_ker"] = verify_im_eq_ker(sc)
    report["composites"] = verify_composites(sc)
    report["strong_upgrade"] = verify_strong_upgrade(sc)
    entries = report["hypotheses"] + step1 + adj + report["fully_faithful"] + [report["im_eq_ker"], report["composites"]]
    ok = all(e["status"] == "pass" for e in entries)
    strong = report["strong_upgrade"]
    if strong["claimed"]:
        ok = ok and strong["status"] == "pass"
    report["right_triangulated"] = "pass" if all(e["status"] == "pass" for e in entries) else "fail"
    report["triangulated"] = strong["status"] if strong["claimed"] else "not_claimed"
    report["status"] = "pass" if ok else "fail"
    return report
