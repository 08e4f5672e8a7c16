"""The comma category of a tensor functor ``T: S-mod -> R-mod``.

Objects are triples ``(X, Y, phi)`` with ``phi: T(Y) -> X``; a morphism
``(X, Y, phi) -> (X', Y', phi')`` is a pair ``(a, b)`` with
``phi' T(b) = a phi``.  Kernels and cokernels are taken componentwise.
"""

from __future__ import annotations

import numpy as np

from . import exactla as la
from .algrep import (
    Algebra,
    HomSpace,
    Module,
    Morphism,
    Verdict,
    descend,
    restrict_through,
    solve_lift,
)
from .exactla import Subspace


class CommaObject:
    __slots__ = ("X", "Y", "phi", "name", "_key")

    def __init__(self, X, Y, phi, name=None):
        if phi.target.key != X.key:
            raise ValueError("structure map has the wrong target")
        self.X = X
        self.Y = Y
        self.phi = phi
        self.name = name
        self._key = None

    def __repr__(self):
        label = self.name or "object"
        return f"<{label}: ({self.X.dim}, {self.Y.dim})>"

    @property
    def p(self):
        return self.X.p

    @property
    def dim(self):
        return self.X.dim + self.Y.dim

    @property
    def key(self):
        if self._key is None:
            self._key = ("comma", self.X.key, self.Y.key, self.phi.matrix.tobytes())
        return self._key


class CommaMorphism:
    __slots__ = ("source", "target", "a", "b")

    def __init__(self, source, target, a, b):
        self.source = source
        self.target = target
        self.a = a
        self.b = b

    def __repr__(self):
        return f"CommaMorphism({self.source!r} -> {self.target!r})"

    @property
    def p(self):
        return self.a.p

    @property
    def parts(self):
        return (self.a.matrix, self.b.matrix)

    @property
    def vec(self):
        return np.concatenate([self.a.vec, self.b.vec])

    def __matmul__(self, other):
        return CommaMorphism(other.source, self.target, self.a @ other.a, self.b @ other.b)

    def __add__(self, other):
        return CommaMorphism(self.source, self.target, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return CommaMorphism(self.source, self.target, self.a - other.a, self.b - other.b)

    def __neg__(self):
        return CommaMorphism(self.source, self.target, -self.a, -self.b)

    def __rmul__(self, scalar):
        return CommaMorphism(self.source, self.target, scalar * self.a, scalar * self.b)

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()


class CommaCategory:
    """``(T | R-mod)`` for a tensor functor T."""

    def __init__(self, T):
        self.T = T
        self.A = T.target_category
        self.B = T.source_category
        self.p = T.p
        self._hom_memo = {}
        self._proj_memo = {}
        self.memo = {}

    def __repr__(self):
        return f"CommaCategory({self.A.algebra.name} <- {self.B.algebra.name})"

    # objects ----------------------------------------------------------
    def obj(self, X, Y, phi_matrix, name=None):
        return CommaObject(X, Y, Morphism(self.T(Y), X, phi_matrix), name=name)

    def zero(self):
        return self.Z_A(self.A.zero())

    def dims(self, obj):
        return (obj.X.dim, obj.Y.dim)

    def is_zero_object(self, obj):
        return obj.X.dim == 0 and obj.Y.dim == 0

    def validate_object(self, obj):
        failures = []
        if obj.phi.source.key != self.T(obj.Y).key:
            failures.append("structure map source is not T(Y)")
        elif not obj.phi.is_valid():
            failures.append("structure map is not a module morphism")
        return failures

    # morphisms --------------------------------------------------------
    def make_morphism(self, source, target, parts):
        return CommaMorphism(
            source,
            target,
            Morphism(source.X, target.X, parts[0]),
            Morphism(source.Y, target.Y, parts[1]),
        )

    def morphism(self, source, target, a, b):
        return self.make_morphism(source, target, (np.asarray(a), np.asarray(b)))

    def is_valid(self, f):
        lhs = f.target.phi @ self.T.on_morphism(f.b)
        rhs = f.a @ f.source.phi
        return f.a.is_valid() and f.b.is_valid() and np.array_equal(lhs.matrix, rhs.matrix)

    def identity(self, obj):
        return CommaMorphism(obj, obj, self.A.identity(obj.X), self.B.identity(obj.Y))

    def zero_morphism(self, src, tgt):
        return CommaMorphism(src, tgt, self.A.zero_morphism(src.X, tgt.X), self.B.zero_morphism(src.Y, tgt.Y))

    def is_iso(self, f):
        return self.A.is_iso(f.a) and self.B.is_iso(f.b)

    def is_mono(self, f):
        return self.A.is_mono(f.a) and self.B.is_mono(f.b)

    def is_epi(self, f):
        return self.A.is_epi(f.a) and self.B.is_epi(f.b)

    def inverse(self, f):
        return CommaMorphism(f.target, f.source, self.A.inverse(f.a), self.B.inverse(f.b))

    def hom(self, src, tgt):
        key = (src.key, tgt.key)
        space = self._hom_memo.get(key)
        if space is None:
            space = self._compute_hom(src, tgt)
            self._hom_memo[key] = space
        return space

    def _compute_hom(self, src, tgt):
        p = self.p
        HA = self.A.hom(src.X, tgt.X)
        HB = self.B.hom(src.Y, tgt.Y)
        na, nb = src.X.dim * tgt.X.dim, src.Y.dim * tgt.Y.dim
        size = na + nb

        def build(v):
            v = np.asarray(v)
            return CommaMorphism(
                src,
                tgt,
                Morphism(src.X, tgt.X, v[:na].reshape(tgt.X.dim, src.X.dim)),
                Morphism(src.Y, tgt.Y, v[na:].reshape(tgt.Y.dim, src.Y.dim)),
            )

        # unknowns: coefficients on HA.basis then HB.basis; equation a phi - phi' T(b) = 0
        cols = [(a @ src.phi).vec for a in HA.basis]
        cols += [-(tgt.phi @ self.T.on_morphism(b)).vec for b in HB.basis]
        nunk = HA.dim + HB.dim
        if nunk == 0:
            return HomSpace(src, tgt, Subspace.zero(size, p), build)
        eq = np.array(cols, dtype=np.int64).T.reshape(-1, nunk)
        sol = la.null_vectors(eq % p, p) if eq.shape[0] else la.identity(nunk)
        vecs = []
        for x in sol:
            va = (x[: HA.dim] @ HA.matrix) % p if HA.dim else np.zeros(na, dtype=np.int64)
            vb = (x[HA.dim :] @ HB.matrix) % p if HB.dim else np.zeros(nb, dtype=np.int64)
            vecs.append(np.concatenate([va, vb]))
        sub = Subspace.span(np.array(vecs, dtype=np.int64).reshape(-1, size), size, p)
        return HomSpace(src, tgt, sub, build)

    def linear_section(self, f):
        return self.A.linear_section(f.a) + self.B.linear_section(f.b)

    def linear_retraction(self, f):
        return self.A.linear_retraction(f.a) + self.B.linear_retraction(f.b)

    def compose_linear(self, f, parts, after=True):
        p = self.p
        if after:
            return (la.mul(f.a.matrix, parts[0], p), la.mul(f.b.matrix, parts[1], p))
        return (la.mul(parts[0], f.a.matrix, p), la.mul(parts[1], f.b.matrix, p))

    # universal constructions -----------------------------------------
    def kernel(self, f):
        KX, iX = self.A.kernel(f.a)
        KY, iY = self.B.kernel(f.b)
        induced = restrict_through(self.A, iX, f.source.phi @ self.T.on_morphism(iY))
        K = CommaObject(KX, KY, induced)
        return K, CommaMorphism(K, f.source, iX, iY)

    def cokernel(self, f):
        CX, pX = self.A.cokernel(f.a)
        CY, pY = self.B.cokernel(f.b)
        induced = descend(self.A, self.T.on_morphism(pY), pX @ f.target.phi)
        C = CommaObject(CX, CY, induced)
        return C, CommaMorphism(f.target, C, pX, pY)

    def image(self, f):
        IX, iX = self.A.image(f.a)
        IY, iY = self.B.image(f.b)
        induced = restrict_through(self.A, iX, f.target.phi @ self.T.on_morphism(iY))
        I = CommaObject(IX, IY, induced)
        return I, CommaMorphism(I, f.target, iX, iY)

    def direct_sum(self, objs):
        objs = list(objs)
        SX, iXs, pXs = self.A.direct_sum([o.X for o in objs])
        SY, iYs, pYs = self.B.direct_sum([o.Y for o in objs])
        TSY = self.T(SY)
        phi = self.A.zero_morphism(TSY, SX)
        for o, iX, pY in zip(objs, iXs, pYs):
            phi = phi + iX @ o.phi @ self.T.on_morphism(pY)
        S = CommaObject(SX, SY, phi)
        inj = [CommaMorphism(o, S, iX, iY) for o, iX, iY in zip(objs, iXs, iYs)]
        proj = [CommaMorphism(S, o, pX, pY) for o, pX, pY in zip(objs, pXs, pYs)]
        return S, inj, proj

    # the six functors -------------------------------------------------
    def q(self, obj):
        return self.A.cokernel(obj.phi)[0]

    def q_morphism(self, f):
        _, pi = self.A.cokernel(f.source.phi)
        _, pi2 = self.A.cokernel(f.target.phi)
        return descend(self.A, pi, pi2 @ f.a)

    def Z_A(self, X):
        Y0 = self.B.zero()
        return CommaObject(X, Y0, self.A.zero_morphism(self.T(Y0), X))

    def Z_A_morphism(self, a):
        return CommaMorphism(self.Z_A(a.source), self.Z_A(a.target), a, self.B.identity(self.B.zero()))

    def Z_B(self, Y):
        X0 = self.A.zero()
        return CommaObject(X0, Y, self.A.zero_morphism(self.T(Y), X0))

    def Z_B_morphism(self, b):
        return CommaMorphism(self.Z_B(b.source), self.Z_B(b.target), self.A.identity(self.A.zero()), b)

    def T_B(self, Y):
        TY = self.T(Y)
        return CommaObject(TY, Y, self.A.identity(TY))

    def T_B_morphism(self, b):
        return CommaMorphism(self.T_B(b.source), self.T_B(b.target), self.T.on_morphism(b), b)

    @staticmethod
    def U_A(obj):
        return obj.X

    @staticmethod
    def U_B(obj):
        return obj.Y

    def apply_functor(self, name, arg):
        """Apply one of ``q, Z_A, Z_B, U_A, U_B, T_B`` to an object or a morphism."""
        is_morphism = isinstance(arg, (Morphism, CommaMorphism))
        table = {
            "q": (self.q, self.q_morphism),
            "Z_A": (self.Z_A, self.Z_A_morphism),
            "Z_B": (self.Z_B, self.Z_B_morphism),
            "T_B": (self.T_B, self.T_B_morphism),
            "U_A": (self.U_A, lambda f: f.a),
            "U_B": (self.U_B, lambda f: f.b),
        }
        if name not in table:
            raise KeyError(f"unknown functor {name!r}")
        return table[name][1 if is_morphism else 0](arg)

    # projective objects -----------------------------------------------
    def _cover(self, obj, coverA, coverB):
        piQ = coverB(obj.Y)
        Q = piQ.source
        TQ = self.T(Q)
        top = obj.phi @ self.T.on_morphism(piQ)
        C, pC = self.A.cokernel(obj.phi)
        piP = coverA(C)
        u = solve_lift(self.A, pC, piP)
        P = piP.source
        SX, inj, _ = self.A.direct_sum([TQ, P])
        F = CommaObject(SX, Q, inj[0])
        a = Morphism(SX, obj.X, np.hstack([top.matrix, u.matrix]))
        return CommaMorphism(F, obj, a, piQ)

    def projective_cover(self, obj):
        hit = self._proj_memo.get(obj.key)
        if hit is None:
            hit = self._cover(obj, self.A.projective_cover, self.B.projective_cover)
            self._proj_memo[obj.key] = hit
        return hit

    def free_cover(self, obj, reduced=True):
        return self._cover(
            obj,
            lambda X: self.A.free_cover(X, reduced),
            lambda Y: self.B.free_cover(Y, reduced),
        )

    def is_projective(self, obj):
        if self.is_zero_object(obj):
            return True
        return solve_lift(self, self.projective_cover(obj), self.identity(obj)) is not None

    # the lifted class ------------------------------------------------
    def membership_B(self, xclass, yclass, obj, depth=None):
        """``phi`` monic, ``Coker phi`` in the X-class and ``Y`` in the Y-class."""
        if not self.A.is_mono(obj.phi):
            return Verdict.NO
        return Verdict.all([xclass(self.q(obj), depth), yclass(obj.Y, depth)])


# triangular matrix algebra ------------------------------------------------

def triangular_algebra(bimodule, name=None):
    """``[[R, M], [0, S]]`` with basis ordered R | M | S."""
    R, S = bimodule.left_algebra, bimodule.right_algebra
    r, e, s = R.dim, bimodule.dim, S.dim
    n = r + e + s
    p = R.p
    c = np.zeros((n, n, n), dtype=np.int64)
    c[:r, :r, :r] = R.table
    c[r + e :, r + e :, r + e :] = S.table
    # r_i m_a = sum_b lambda(r_i)[b, a] m_b
    c[:r, r : r + e, r : r + e] = bimodule.left_actions.transpose(0, 2, 1)
    # m_a s_j = sum_b rho(s_j)[b, a] m_b
    c[r : r + e, r + e :, r : r + e] = bimodule.right_actions.transpose(2, 0, 1)
    unit = np.concatenate([R.unit, np.zeros(e, dtype=np.int64), S.unit])
    idem = None
    if R.idempotents is not None and S.idempotents is not None:
        idem = [np.concatenate([x, np.zeros(e + s, dtype=np.int64)]) for x in R.idempotents]
        idem += [np.concatenate([np.zeros(r + e, dtype=np.int64), x]) for x in S.idempotents]
    rad = None
    if R.radical is not None and S.radical is not None:
        rows = [np.concatenate([v, np.zeros(e + s, dtype=np.int64)]) for v in R.radical.basis]
        rows += [v for v in la.identity(n)[r : r + e]]
        rows += [np.concatenate([np.zeros(r + e, dtype=np.int64), v]) for v in S.radical.basis]
        rad = np.array(rows, dtype=np.int64).reshape(-1, n)
    return Algebra(c, unit, p, idempotents=idem, radical=rad, name=name or f"[{R.name},{bimodule.name};{S.name}]")


class LambdaBridge:
    """The equivalence between the comma category and modules over the triangular algebra."""

    def __init__(self, comma, lam=None):
        from .algrep import ModuleCategory

        self.comma = comma
        self.bimodule = comma.T.bimodule
        self.algebra = lam or triangular_algebra(self.bimodule)
        self.category = ModuleCategory(self.algebra)
        R, S = self.bimodule.left_algebra, self.bimodule.right_algebra
        self.r, self.e, self.s = R.dim, self.bimodule.dim, S.dim

    def to_lambda(self, obj):
        p = self.comma.p
        X, Y = obj.X, obj.Y
        x, y = X.dim, Y.dim
        acts = []
        for i in range(self.r):
            acts.append(la.block_diag([X.actions[i], la.zeros(y, y)]))
        for a in range(self.e):
            blk = la.zeros(x + y, x + y)
            blk[:x, x:] = la.mul(obj.phi.matrix, self.comma.T.element_action(Y, a), p)
            acts.append(blk)
        for j in range(self.s):
            acts.append(la.block_diag([la.zeros(x, x), Y.actions[j]]))
        return Module(self.algebra, np.array(acts, dtype=np.int64).reshape(self.algebra.dim, x + y, x + y))

    def to_lambda_morphism(self, f):
        return Morphism(self.to_lambda(f.source), self.to_lambda(f.target), la.block_diag([f.a.matrix, f.b.matrix]))

    def _split(self, Z):
        p = self.comma.p
        R, S = self.bimodule.left_algebra, self.bimodule.right_algebra
        eR = np.concatenate([R.unit, np.zeros(self.e + self.s, dtype=np.int64)])
        eS = np.concatenate([np.zeros(self.r + self.e, dtype=np.int64), S.unit])
        bX = la.image_basis(Z.act(eR), p)
        bY = la.image_basis(Z.act(eS), p)
        return bX, bY

    def from_lambda(self, Z):
        """Comma object ``(e_R Z, e_S Z, phi)`` together with the identification maps."""
        p = self.comma.p
        T = self.comma.T
        bX, bY = self._split(Z)
        xp, yp = list(bX.pivots), list(bY.pivots)
        BX, BY = bX.basis.T, bY.basis.T
        x, y = bX.dim, bY.dim
        actsX = np.array([la.mul(Z.actions[i], BX, p)[xp] for i in range(self.r)], dtype=np.int64).reshape(self.r, x, x)
        actsY = np.array(
            [la.mul(Z.actions[self.r + self.e + j], BY, p)[yp] for j in range(self.s)], dtype=np.int64
        ).reshape(self.s, y, y)
        X = Module(self.bimodule.left_algebra, actsX)
        Y = Module(self.bimodule.right_algebra, actsY)
        # Phi_total sends m_a (x) y_b to the X-coordinates of m_a . y_b
        total = la.zeros(x, self.e * y)
        for a in range(self.e):
            total[:, a * y : (a + 1) * y] = la.mul(Z.actions[self.r + a], BY, p)[xp]
        phi = la.mul(total, T.section(Y), p)
        return CommaObject(X, Y, Morphism(T(Y), X, phi))

    def from_lambda_morphism(self, f, src=None, tgt=None):
        p = self.comma.p
        src = src or self.from_lambda(f.source)
        tgt = tgt or self.from_lambda(f.target)
        sX, sY = self._split(f.source)
        tX, tY = self._split(f.target)
        a = la.mul(f.matrix, sX.basis.T, p)[list(tX.pivots)]
        b = la.mul(f.matrix, sY.basis.T, p)[list(tY.pivots)]
        return self.comma.make_morphism(src, tgt, (a, b))


def comma_ext(cat, B1, B2, i, kind="projective"):
    from .homalg import ext

    return ext(cat, B1, B2, i, kind)
