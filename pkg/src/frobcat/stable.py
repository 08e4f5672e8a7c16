"""Stable categories of left Frobenius pairs.

The stable Hom-space is ``Hom(X, Y)`` modulo the morphisms that factor
through the second class.  Because that class is Ext-orthogonal to the
first, every such morphism extends along the chosen approximation
``X -> W_X``, so the subspace is the image of ``Hom(W_X, Y)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .algrep import Verdict, descend, restrict_through, solve_extension, solve_lift
from .exactla import Subspace


class StableHom:
    """``Hom(X, Y)`` modulo morphisms factoring through the second class."""

    def __init__(self, pair, X, Y, variant=0):
        cat = pair.category
        p = cat.p
        self.pair = pair
        self.source = X
        self.target = Y
        self.hom = cat.hom(X, Y)
        iota, _ = pair.right_approx(X, variant)
        vecs = [self.hom.coords(h @ iota) for h in cat.hom(iota.target, Y).basis]
        n = self.hom.dim
        self.w_subspace = Subspace.span(np.array(vecs, dtype=np.int64).reshape(-1, n), n, p) if vecs and n else Subspace.zero(n, p)
        self._proj, self._sec, self.dim = la.quotient_map(n, self.w_subspace, p)

    def __repr__(self):
        return f"StableHom(dim {self.dim} = {self.hom.dim} - {self.w_subspace.dim})"

    @property
    def hom_dim(self):
        return self.hom.dim

    @property
    def w_dim(self):
        return self.w_subspace.dim

    def class_of(self, f):
        return la.mul(self._proj, self.hom.coords(f).reshape(-1, 1), self.pair.category.p)[:, 0]

    def is_zero(self, f):
        return not self.class_of(f).any()

    def factors_through_w(self, f):
        return self.w_subspace.contains(self.hom.coords(f))

    def representative(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1, 1)
        return self.hom.element(la.mul(self._sec, coeffs, self.pair.category.p)[:, 0])

    @property
    def basis(self):
        return [self.representative(np.eye(self.dim, dtype=np.int64)[t]) for t in range(self.dim)]

    def report(self):
        return {"hom_dim": self.hom_dim, "w_subspace_dim": self.w_dim, "stable_dim": self.dim}


def stable_hom(pair, X, Y, variant=0):
    key = ("stable", X.key, Y.key, variant)
    hit = pair.memo.get(key)
    if hit is None:
        hit = StableHom(pair, X, Y, variant)
        pair.memo[key] = hit
    return hit


def w_subspace_enumerated(pair, X, Y, ws):
    """Span of all composites ``X -> W -> Y`` over an explicit list of W."""
    cat = pair.category
    H = cat.hom(X, Y)
    vecs = []
    for W in ws:
        for f in cat.hom(X, W).basis:
            for g in cat.hom(W, Y).basis:
                vecs.append(H.coords(g @ f))
    if not vecs:
        return Subspace.zero(H.dim, cat.p)
    return Subspace.span(np.array(vecs, dtype=np.int64).reshape(-1, H.dim), H.dim, cat.p)


def is_stably_zero(pair, X):
    return Verdict.of(stable_hom(pair, X, X).is_zero(pair.category.identity(X)))


def stably_equal(pair, f, g):
    return stable_hom(pair, f.source, f.target).is_zero(f - g)


def is_stable_iso(pair, f):
    """Solve exactly for g with ``g f = 1`` and ``f g = 1`` modulo the second class.

    Returns ``(Verdict, g)``; the system is linear in g, so the answer is never
    undetermined.
    """
    cat = pair.category
    p = cat.p
    X, Y = f.source, f.target
    sXX, sYY = stable_hom(pair, X, X), stable_hom(pair, Y, Y)
    HYX = cat.hom(Y, X)
    # columns: images of the Hom(Y, X) basis in the two stable endomorphism spaces
    cols = [np.concatenate([sXX.class_of(g @ f), sYY.class_of(f @ g)]) for g in HYX.basis]
    rhs = np.concatenate([sXX.class_of(cat.identity(X)), sYY.class_of(cat.identity(Y))])
    if not cols:
        ok = not rhs.any()
        return Verdict.of(ok), (cat.zero_morphism(Y, X) if ok else None)
    mat = np.array(cols, dtype=np.int64).T.reshape(rhs.shape[0], len(cols))
    x = la.solve(mat, rhs, p)
    if x is None:
        return Verdict.NO, None
    return Verdict.YES, HYX.element(x)


def find_stable_iso(pair, X, Y, budget=4096, rng=None):
    """Scan stable ``Hom(X, Y)`` for a stable isomorphism; ``(Verdict, witness)``."""
    cat = pair.category
    p = cat.p
    S = stable_hom(pair, X, Y)
    if is_stably_zero(pair, X) and is_stably_zero(pair, Y):
        return Verdict.YES, cat.zero_morphism(X, Y)
    if S.dim == 0:
        return Verdict.NO, None
    if stable_hom(pair, Y, X).dim != S.dim:
        return Verdict.NO, None
    rng = rng if rng is not None else np.random.default_rng(0)
    if p**S.dim <= budget:
        coeff_iter = (np.array(c, dtype=np.int64) for c in itertools.product(range(p), repeat=S.dim))
        exhaustive = True
    else:
        coeff_iter = iter(rng.integers(0, p, size=(budget, S.dim)))
        exhaustive = False
    for c in coeff_iter:
        if not c.any():
            continue
        f = S.representative(c)
        if is_stable_iso(pair, f)[0]:
            return Verdict.YES, f
    return (Verdict.NO if exhaustive else Verdict.UNDETERMINED), None


# suspension and loops ------------------------------------------------------------

def suspend(pair, X, variant=0):
    """``(Sigma X, iota, pi)`` from the chosen right approximation."""
    iota, pi = pair.right_approx(X, variant)
    return pi.target, iota, pi


def induced_on_cokernels(cat, first, second, f):
    """Map ``coker(first) -> coker(second)`` induced by ``f`` between the subobjects.

    ``first = (i1, p1)``, ``second = (i2, p2)``; the middle map is found by
    extending ``i2 f`` along ``i1``.
    """
    i1, p1 = first
    i2, p2 = second
    h = solve_extension(cat, i1, i2 @ f)
    if h is None:
        raise ValueError("no extension along the approximation (Ext-vanishing violated)")
    return descend(cat, p1, p2 @ h)


def induced_on_kernels(cat, first, second, f):
    """Map ``ker(first) -> ker(second)`` induced by ``f`` between the quotients."""
    k1, p1 = first
    k2, p2 = second
    h = solve_lift(cat, p2, f @ p1)
    if h is None:
        raise ValueError("no lift through the approximation (Ext-vanishing violated)")
    return restrict_through(cat, k2, h @ k1)


def suspend_morphism(pair, f, variant=0):
    return induced_on_cokernels(pair.category, pair.right_approx(f.source, variant), pair.right_approx(f.target, variant), f)


def compare_right(pair, first, second):
    """Canonical comparison between two right approximations of the same object."""
    return induced_on_cokernels(pair.category, first, second, pair.category.identity(first[0].source))


def compare_left(pair, first, second):
    return induced_on_kernels(pair.category, first, second, pair.category.identity(first[1].target))


def loop(pair, X, variant=0):
    """``(Omega X, kappa, pi)`` from the chosen left approximation (strong pairs only)."""
    kappa, pi = pair.left_approx(X, variant)
    return kappa.source, kappa, pi


def loop_morphism(pair, f, variant=0):
    return induced_on_kernels(pair.category, pair.left_approx(f.source, variant), pair.left_approx(f.target, variant), f)


def sigma_omega_unit(pair, X):
    """Comparison ``Sigma Omega X -> X``: the left approximation of X is a right one of its kernel."""
    kappa, pi = pair.left_approx(X)
    return compare_right(pair, pair.right_approx(kappa.source), (kappa, pi))


def omega_sigma_unit(pair, X):
    """Comparison ``X -> Omega Sigma X``: the right approximation of X is a left one of its cokernel."""
    iota, pi = pair.right_approx(X)
    return compare_left(pair, (iota, pi), pair.left_approx(pi.target))


# triangles ---------------------------------------------------------------------------

@dataclass
class RightTriangle:
    """``X1 -f-> X2 -g-> X3 -b-> Sigma X1`` with its witnesses.

    ``a: X2 -> W1`` satisfies ``a f = iota``, and ``b g = pi a``.
    """

    f: object
    g: object
    b: object
    iota: object
    pi: object
    a: object

    @property
    def objects(self):
        return (self.f.source, self.f.target, self.g.target, self.b.target)


def complete_triangle(pair, f, g):
    """Connecting morphism of the short exact sequence ``0 -> X1 -f-> X2 -g-> X3 -> 0``."""
    cat = pair.category
    iota, pi = pair.right_approx(f.source)
    a = solve_extension(cat, f, iota)
    if a is None:
        raise ValueError("lifting system inconsistent: Ext^1(X3, W) does not vanish")
    b = descend(cat, g, pi @ a)
    return RightTriangle(f, g, b, iota, pi, a)


def rotation_check(pair, tri):
    """Complete the cone sequence of ``g`` and compare it with the rotated triangle.

    The cone is ``0 -> X2 -> X3 + W2 -> C -> 0`` built from ``g`` and the
    approximation of X2.  Checks that ``theta: C -> Sigma X1`` is a stable
    isomorphism compatible with ``b``, and that the new connecting map equals
    ``-Sigma f . theta`` stably.
    """
    cat = pair.category
    X2, X3 = tri.g.source, tri.g.target
    iota2, pi2 = pair.right_approx(X2)
    S, inj, proj = cat.direct_sum([X3, iota2.target])
    into = inj[0] @ tri.g + inj[1] @ iota2
    C, q = cat.cokernel(into)
    a_ext = solve_extension(cat, iota2, tri.a)
    theta_on_sum = tri.b @ proj[0] - tri.pi @ a_ext @ proj[1]
    theta = descend(cat, q, theta_on_sum)
    rotated = complete_triangle(pair, into, q)
    sigma_f = suspend_morphism(pair, tri.f)
    iso, _ = is_stable_iso(pair, theta)
    compatible = np.array_equal((theta @ q @ inj[0]).vec % cat.p, tri.b.vec % cat.p)
    connecting = stable_hom(pair, C, sigma_f.target).is_zero(rotated.b + sigma_f @ theta)
    return {"theta_stable_iso": bool(iso), "theta_restricts_to_b": bool(compatible), "connecting_matches": bool(connecting)}
