"""Resolutions, Ext, left derived tensor functors and Yoneda extensions.

Everything here is written against the small category interface shared by
``ModuleCategory`` and ``CommaCategory``: ``hom``, ``kernel``, ``cokernel``,
``direct_sum``, covers, and morphisms that compose with ``@``.

Ext is computed by dimension shifting: for ``i >= 1``,
``Ext^i(X, Y) = Hom(Omega^i X, Y) / {h . iota : h in Hom(F_{i-1}, Y)}``
where ``iota: Omega^i X -> F_{i-1}`` is the syzygy inclusion.  A cocycle is
therefore a morphism out of the i-th syzygy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .algrep import descend, restrict_through, solve_lift
from .exactla import Subspace

COVER_KINDS = ("projective", "reduced", "basis")


def cover(cat, X, kind="projective"):
    """An epimorphism onto X from a projective object, of the requested kind."""
    if kind == "projective":
        return cat.projective_cover(X)
    if kind == "reduced":
        return cat.free_cover(X, reduced=True)
    if kind == "basis":
        return cat.free_cover(X, reduced=False)
    raise ValueError(f"unknown cover kind {kind!r}")


@dataclass
class Resolution:
    """Iterated covers ``F_i ->> Omega^i X`` with ``Omega^{i+1} X = ker``.

    ``epis[i]: F_i -> Omega^i X`` and ``incs[i]: Omega^{i+1} X -> F_i``.
    """

    target: object
    kind: str
    epis: list = field(default_factory=list)
    incs: list = field(default_factory=list)

    @property
    def length(self):
        return len(self.epis)

    def term(self, i):
        return self.epis[i].source

    def syzygy(self, i):
        return self.target if i == 0 else self.incs[i - 1].source

    @property
    def augmentation(self):
        return self.epis[0]

    def differential(self, i):
        """``d_i: F_i -> F_{i-1}`` for ``i >= 1``."""
        return self.incs[i - 1] @ self.epis[i]

    def differentials(self):
        return [self.differential(i) for i in range(1, self.length)]


def resolve(cat, X, n, kind="projective"):
    """Resolution with terms ``F_0 .. F_n`` (n+1 covers), memoised on the category."""
    memo = cat.memo.setdefault("resolutions", {})
    key = (X.key, kind)
    res = memo.get(key)
    if res is None:
        res = Resolution(X, kind)
        memo[key] = res
    while res.length <= n:
        i = res.length
        omega = res.syzygy(i)
        pi = cover(cat, omega, kind)
        K, inc = cat.kernel(pi)
        res.epis.append(pi)
        res.incs.append(inc)
    return res


def syzygy(cat, X, i, kind="projective"):
    if i == 0:
        return X
    return resolve(cat, X, i - 1, kind).syzygy(i)


def is_exact_at(cat, f, g):
    """Exactness of ``A -f-> B -g-> C`` at B (composite zero and ranks add up)."""
    p = cat.p
    if not np.array_equal((g @ f).vec % p, np.zeros_like((g @ f).vec)):
        return False
    middle = sum(cat.dims(f.target))
    return linear_rank(f) + linear_rank(g) == middle


def linear_rank(f):
    return sum(la.rank(m, f.p) for m in f.parts)


def is_short_exact(cat, i, p_):
    return cat.is_mono(i) and cat.is_epi(p_) and is_exact_at(cat, i, p_)


class ExtSpace:
    """``Ext^degree(source, target)`` with cocycles as maps out of the syzygy."""

    def __init__(self, cat, X, Y, degree, kind="projective"):
        self.category = cat
        self.source = X
        self.target = Y
        self.degree = degree
        p = cat.p
        if degree == 0:
            self.syzygy = X
            self.inclusion = None
            self.homspace = cat.hom(X, Y)
            self.coboundaries = Subspace.zero(self.homspace.dim, p)
        else:
            res = resolve(cat, X, degree - 1, kind)
            self.syzygy = res.syzygy(degree)
            self.inclusion = res.incs[degree - 1]
            self.homspace = cat.hom(self.syzygy, Y)
            F = self.inclusion.target
            images = [self.homspace.coords(h @ self.inclusion) for h in cat.hom(F, Y).basis]
            self.coboundaries = (
                Subspace.span(np.array(images), self.homspace.dim, p) if images else Subspace.zero(self.homspace.dim, p)
            )
        self._proj, self._sec, self.dim = la.quotient_map(self.homspace.dim, self.coboundaries, p)

    def __repr__(self):
        return f"Ext^{self.degree} of dimension {self.dim}"

    @property
    def representatives(self):
        """Cocycles whose classes form a basis of the Ext-space."""
        return [self.homspace.element(self._sec[:, t]) for t in range(self.dim)]

    def class_of(self, cocycle):
        """Coordinates of the class of a cocycle ``Omega^degree X -> Y``."""
        return la.mul(self._proj, self.homspace.coords(cocycle).reshape(-1, 1), self.category.p)[:, 0]

    def cocycle(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1, 1)
        return self.homspace.element(la.mul(self._sec, coeffs, self.category.p)[:, 0])


def ext(cat, X, Y, i, kind="projective"):
    return ExtSpace(cat, X, Y, i, kind)


def ext_dims(cat, X, Y, max_degree, kind="projective"):
    return [ext(cat, X, Y, i, kind).dim for i in range(max_degree + 1)]


def ext_vanishes(cat, X, Y, lo, hi, kind="projective"):
    return all(ext(cat, X, Y, i, kind).dim == 0 for i in range(lo, hi + 1))


def derived_tensor(T, Y, n, kind="projective"):
    """Modules ``(L_i T) Y`` for ``i = 0..n`` as homology of ``T`` on a resolution."""
    S = T.source_category
    R = T.target_category
    res = resolve(S, Y, n + 1, kind)
    TF = [T(res.term(i)) for i in range(n + 2)]
    Td = [None] + [T.on_morphism(res.differential(i)) for i in range(1, n + 2)]
    out = []
    for i in range(n + 1):
        if i == 0:
            K, inc = TF[0], R.identity(TF[0])
        else:
            K, inc = R.kernel(Td[i])
        incoming = restrict_through(R, inc, Td[i + 1])
        H, _ = R.cokernel(incoming)
        out.append(H)
    return out


def tor_dims(T, Y, n, kind="projective"):
    return [H.dim for H in derived_tensor(T, Y, n, kind)]


def pushout(cat, f, g):
    """Pushout of ``B <-f- A -g-> C``; returns ``(P, jB, jC)`` with ``jB f = jC g``."""
    B, C = f.target, g.target
    S, inj, proj = cat.direct_sum([B, C])
    into = inj[0] @ f - inj[1] @ g
    P, pi = cat.cokernel(into)
    return P, pi @ inj[0], pi @ inj[1]


def pullback(cat, f, g):
    """Pullback of ``B -f-> D <-g- C``; returns ``(P, pB, pC)`` with ``f pB = g pC``."""
    B, C = f.source, g.source
    S, inj, proj = cat.direct_sum([B, C])
    out = f @ proj[0] - g @ proj[1]
    P, inc = cat.kernel(out)
    return P, proj[0] @ inc, proj[1] @ inc


def yoneda_realize(cat, X, Y, cocycle, kind="projective"):
    """Short exact sequence ``0 -> Y -i-> E -p-> X -> 0`` in the class of ``cocycle``.

    ``cocycle`` is a morphism ``Omega^1 X -> Y``; E is the pushout of the
    first syzygy sequence along it.
    """
    res = resolve(cat, X, 0, kind)
    iota, eps = res.incs[0], res.epis[0]
    if cocycle.source.key != iota.source.key or cocycle.target.key != Y.key:
        raise ValueError("cocycle is not a morphism from the first syzygy to the target")
    S, inj, proj = cat.direct_sum([iota.target, Y])
    E, pi = cat.cokernel(inj[0] @ iota - inj[1] @ cocycle)
    jY = pi @ inj[1]
    # E -> X induced by (eps, 0) on F_0 + Y
    p_ = descend(cat, pi, eps @ proj[0])
    return jY, p_


def classify_extension(cat, i, p_, kind="projective"):
    """A cocycle ``Omega^1 X -> Y`` representing the extension ``0 -> Y -> E -> X -> 0``."""
    X = p_.target
    res = resolve(cat, X, 0, kind)
    iota, eps = res.incs[0], res.epis[0]
    h0 = solve_lift(cat, p_, eps)
    if h0 is None:
        raise ValueError("sequence is not an epimorphism onto its third term")
    return restrict_through(cat, i, h0 @ iota)


def is_projective(cat, X):
    return cat.is_projective(X)


def pd_bound(cat, X, n, kind="projective"):
    """Least ``i <= n`` with ``Omega^i X`` projective, or ``None`` meaning "> n"."""
    for i in range(n + 1):
        if cat.is_projective(syzygy(cat, X, i, kind)):
            return i
    return None


def id_bound(cat, X, n):
    """Injective dimension via the projective dimension of the dual over the opposite algebra."""
    return pd_bound(cat.opposite, cat.dual(X), n)


def hom_precompose_matrix(cat, d, Z):
    """Matrix of ``Hom(B, Z) -> Hom(A, Z), h -> h d`` for ``d: A -> B`` in basis coordinates."""
    src = cat.hom(d.target, Z)
    tgt = cat.hom(d.source, Z)
    cols = [tgt.coords(h @ d) for h in src.basis]
    if not cols:
        return la.zeros(tgt.dim, 0)
    return np.array(cols, dtype=np.int64).T.reshape(tgt.dim, src.dim)


def complex_is_exact(cat, maps):
    """Exactness at every interior spot of a chain ``maps[0], maps[1], ...`` (``maps[k+1] @ maps[k]``)."""
    return [is_exact_at(cat, f, g) for f, g in zip(maps, maps[1:])]


def complete_resolution(cat, G, depth, coapprox, kind="projective"):
    """A window of a totally acyclic complex through G.

    Returns the chain ``F_depth -> ... -> F_0 -> P^0 -> ... -> P^{depth-1}``
    as a list of maps in order of composition.  ``coapprox(M)`` must return a
    monomorphism from M into a projective with cokernel of the same kind.
    """
    res = resolve(cat, G, depth, kind)
    down = [res.differential(i) for i in range(depth, 0, -1)]
    ups = []
    M = G
    for _ in range(depth + 1):
        j = coapprox(M)
        C, pi = cat.cokernel(j)
        ups.append((j, pi))
        M = C
    chain = list(down)
    chain.append(ups[0][0] @ res.epis[0])
    for k in range(1, depth + 1):
        chain.append(ups[k][0] @ ups[k - 1][1])
    return chain


def check_compatible(T, complexes_B, complexes_A, projectives_B, depth):
    """Window checks of the two compatibility conditions for T.

    (C1) T sends each sampled exact complex of projectives in the source
    category to an exact complex.  (C2) ``Hom(P, T(Q))`` is exact for each
    sampled complete resolution P in the target category and projective Q.
    """
    S, R = T.source_category, T.target_category
    report = []
    for idx, chain in enumerate(complexes_B):
        ok_in = all(complex_is_exact(S, chain))
        Tchain = [T.on_morphism(d) for d in chain]
        ok = all(complex_is_exact(R, Tchain))
        report.append({"check": "C1", "complex": idx, "depth": depth, "input_exact": ok_in, "status": "pass" if ok else "fail"})
    for idx, chain in enumerate(complexes_A):
        for qi, Q in enumerate(projectives_B):
            TQ = T(Q)
            mats = [hom_precompose_matrix(R, d, TQ) for d in chain]
            # Hom(-, TQ) reverses arrows: mats[k+1] is followed by mats[k]
            ok = True
            for k in range(len(chain) - 1):
                into, out = mats[k + 1], mats[k]
                mid = into.shape[0]
                if la.mul(out, into, R.p).any() or la.rank(into, R.p) + la.rank(out, R.p) != mid:
                    ok = False
            report.append({"check": "C2", "complex": idx, "projective": qi, "depth": depth, "status": "pass" if ok else "fail"})
    return report
