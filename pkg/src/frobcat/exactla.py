"""Exact dense linear algebra over a prime field F_p.

Matrices are ``numpy.int64`` arrays with entries in ``[0, p)``; the modulus is
passed alongside.  Row reduction runs in the compiled kernel when it was
built, otherwise in the numpy fallback.  Set ``FROBCAT_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

if os.environ.get("FROBCAT_PURE_PYTHON"):
    from ._fallback import rref_inplace as _rref_inplace

    KERNEL = "python"
else:
    try:
        from ._ckernels import rref_inplace as _rref_inplace

        KERNEL = "compiled"
    except ImportError:  # pragma: no cover - depends on build
        from ._fallback import rref_inplace as _rref_inplace

        KERNEL = "python"


def is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def as_fp(a, p, shape=None):
    """Copy ``a`` into a contiguous int64 array reduced mod ``p``."""
    arr = np.array(a, dtype=np.int64, copy=True)
    if shape is not None:
        arr = arr.reshape(shape)
    arr %= p
    return np.ascontiguousarray(arr)


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n):
    return np.eye(n, dtype=np.int64)


def mul(a, b, p):
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return (a @ b) % p


def block_diag(blocks):
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


@dataclass(frozen=True)
class FpMatrix:
    """A validated matrix over F_p, the serialisable form of a numpy array."""

    p: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.data.ndim != 2:
            raise ValueError("FpMatrix data must be two-dimensional")
        if self.data.size and (self.data.min() < 0 or self.data.max() >= self.p):
            raise ValueError(f"entries must lie in [0, {self.p})")

    @classmethod
    def from_rows(cls, rows, p, cols=None):
        rows = list(rows)
        if not rows:
            return cls(p, np.zeros((0, cols or 0), dtype=np.int64))
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        data = np.array(rows, dtype=np.int64).reshape(len(rows), width)
        return cls(p, data)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    def to_rows(self):
        return self.data.tolist()


def rref(m, p):
    """Return ``(reduced, pivots, rank)``; the input is left untouched."""
    a = np.array(m, dtype=np.int64, copy=True) % p
    a = np.ascontiguousarray(a)
    if a.size == 0:
        return a, [], 0
    pivots = list(_rref_inplace(a, p))
    return a, pivots, len(pivots)


def rank(m, p):
    m = np.asarray(m)
    if m.size == 0:
        return 0
    # reduce along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return rref(m, p)[2]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^n held as reduced echelon basis rows."""

    p: int
    ambient_dim: int
    basis: np.ndarray = field(repr=False)
    pivots: tuple

    @classmethod
    def span(cls, vectors, ambient_dim, p):
        """Span of the rows of ``vectors``."""
        if ambient_dim == 0:
            return cls.zero(0, p)
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim)
        if v.shape[0] == 0:
            return cls.zero(ambient_dim, p)
        red, piv, r = rref(v, p)
        return cls(p, ambient_dim, np.ascontiguousarray(red[:r]), tuple(piv))

    @classmethod
    def zero(cls, ambient_dim, p):
        return cls(p, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), ())

    @classmethod
    def full(cls, ambient_dim, p):
        return cls(p, ambient_dim, identity(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self):
        return len(self.pivots)

    def coords(self, v):
        """Coordinates of a vector known to lie in the subspace."""
        v = np.asarray(v, dtype=np.int64)
        return v[..., list(self.pivots)] % self.p

    def contains(self, v):
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return not v.any()
        residual = (v - self.coords(v) @ self.basis) % self.p
        return not residual.any()

    def contains_all(self, rows):
        if self.ambient_dim == 0:
            return True
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ambient_dim)
        if rows.shape[0] == 0:
            return True
        if self.dim == 0:
            return not (rows % self.p).any()
        residual = (rows - self.coords(rows) @ self.basis) % self.p
        return not residual.any()

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.pivots, self.basis.tobytes()))

    def sum(self, other):
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim, self.p)


def kernel_basis(m, p):
    """Right null space of ``m``; basis vectors ordered by free column index."""
    m = np.asarray(m, dtype=np.int64)
    return Subspace.span(null_vectors(m, p), m.shape[1], p)


def null_vectors(m, p):
    """Kernel of ``m`` as raw vectors (identity on free columns), unreduced."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    red, piv, r = rref(m, p)
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    vecs = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        vecs[t, f] = 1
        for i, pc in enumerate(piv):
            vecs[t, pc] = (-red[i, f]) % p
    return vecs


def image_basis(m, p):
    """Column space of ``m`` as a Subspace of F_p^rows."""
    m = np.asarray(m, dtype=np.int64)
    return Subspace.span(m.T, m.shape[0], p)


def solve(m, rhs, p):
    """One solution of ``m @ x = rhs`` with free variables zero, or ``None``."""
    m = np.asarray(m, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64).reshape(-1)
    if rhs.shape[0] != m.shape[0]:
        raise ValueError(f"dimension mismatch: {m.shape[0]} rows vs rhs of length {rhs.shape[0]}")
    x = solve_many(m, rhs.reshape(-1, 1), p)
    return None if x is None else x[:, 0]


def solve_many(m, rhs, p):
    """Solve ``m @ X = rhs`` column by column; ``None`` if any column is inconsistent."""
    m = np.asarray(m, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    rows, cols = m.shape
    if rhs.shape[0] != rows:
        raise ValueError(f"dimension mismatch: {rows} rows vs rhs with {rhs.shape[0]} rows")
    k = rhs.shape[1]
    if rows == 0:
        return np.zeros((cols, k), dtype=np.int64)
    aug = np.hstack([m % p, rhs % p])
    red, piv, r = rref(aug, p)
    if piv and piv[-1] >= cols:
        return None
    x = np.zeros((cols, k), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = red[i, cols:]
    return x


def quotient_map(ambient_dim, relations, p=None):
    """Projection onto F_p^n / relations and a linear section of it.

    Returns ``(projection, section, quotient_dim)`` with
    ``projection @ section = I`` and ``ker projection = relations``.
    """
    if p is None:
        p = relations.p
    piv = list(relations.pivots)
    pivset = set(piv)
    free = [c for c in range(ambient_dim) if c not in pivset]
    q = len(free)
    proj = np.zeros((q, ambient_dim), dtype=np.int64)
    sec = np.zeros((ambient_dim, q), dtype=np.int64)
    for t, c in enumerate(free):
        proj[t, c] = 1
        sec[c, t] = 1
    for i, c in enumerate(piv):
        proj[:, c] = (-relations.basis[i, free]) % p
    return proj, sec, q


def left_inverse(m, p):
    """``L`` with ``L @ m = I`` for ``m`` of full column rank."""
    m = np.asarray(m, dtype=np.int64)
    x = solve_many(m.T, identity(m.shape[1]), p)
    if x is None:
        raise ValueError("matrix has no left inverse")
    return np.ascontiguousarray(x.T)


def right_inverse(m, p):
    """``R`` with ``m @ R = I`` for ``m`` of full row rank."""
    m = np.asarray(m, dtype=np.int64)
    x = solve_many(m, identity(m.shape[0]), p)
    if x is None:
        raise ValueError("matrix has no right inverse")
    return x


def is_invertible(m, p):
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def inverse(m, p):
    x = solve_many(m, identity(m.shape[0]), p)
    if x is None or m.shape[0] != m.shape[1]:
        raise ValueError("matrix is singular")
    return x
