"""Rank-factored operators plus small exact/orthogonal eigen helpers.

The ideal elements built in this package are products A V^(k) B where V^(k)
has rank d^(2(p-k)), so they are carried as L @ R factor pairs.  Products,
traces, and Frobenius distances then cost O(dim * rank^2) instead of
O(dim^3), which is what makes the all-pairs composition suites cheap.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class FactoredOperator:
    """A square operator stored as ``L @ R`` with thin factors."""

    __slots__ = ("L", "R")

    def __init__(self, L: np.ndarray, R: np.ndarray):
        L = np.asarray(L, dtype=float)
        R = np.asarray(R, dtype=float)
        if L.ndim != 2 or R.ndim != 2 or L.shape[1] != R.shape[0] or L.shape[0] != R.shape[1]:
            raise ValueError(f"bad factor shapes {L.shape}, {R.shape}")
        self.L = L
        self.R = R

    @classmethod
    def zero(cls, dim: int) -> "FactoredOperator":
        return cls(np.zeros((dim, 0)), np.zeros((0, dim)))

    @classmethod
    def rank_one(cls, left: np.ndarray, right: np.ndarray) -> "FactoredOperator":
        return cls(left.reshape(-1, 1), right.reshape(1, -1))

    @property
    def dim(self) -> int:
        return self.L.shape[0]

    @property
    def rank_bound(self) -> int:
        return self.L.shape[1]

    def __matmul__(self, other: "FactoredOperator") -> "FactoredOperator":
        core = self.R @ other.L
        return FactoredOperator(self.L @ core, other.R)

    def __add__(self, other: "FactoredOperator") -> "FactoredOperator":
        return FactoredOperator(np.hstack([self.L, other.L]), np.vstack([self.R, other.R]))

    def __sub__(self, other: "FactoredOperator") -> "FactoredOperator":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "FactoredOperator":
        return FactoredOperator(self.L * float(scalar), self.R)

    __rmul__ = __mul__

    def transpose(self) -> "FactoredOperator":
        return FactoredOperator(self.R.T, self.L.T)

    def trace(self) -> float:
        return float(np.sum(self.L * self.R.T))

    def frobenius_inner(self, other: "FactoredOperator") -> float:
        """tr(self @ other^T)."""
        return float(np.sum((self.R @ other.R.T) * (self.L.T @ other.L)))

    def frobenius_norm(self) -> float:
        """Frobenius norm, stable also when the factors encode a near-zero sum.

        The gram formula tr(L R R^T L^T) cancels catastrophically for
        differences of nearly equal operators, so the left factor is
        orthogonalized first and the norm read off the small core.
        """
        if self.rank_bound == 0:
            return 0.0
        _, rl = np.linalg.qr(self.L)
        return float(np.linalg.norm(rl @ self.R))

    def distance(self, other: "FactoredOperator") -> float:
        """Frobenius distance (an upper bound on the max-abs-entry distance)."""
        return (self - other).frobenius_norm()

    def to_dense(self) -> np.ndarray:
        return self.L @ self.R

    def apply_dense_left(self, m: np.ndarray) -> "FactoredOperator":
        """m @ self for a dense square m."""
        return FactoredOperator(m @ self.L, self.R)

    def trace_against_dense(self, m: np.ndarray) -> float:
        """tr(m @ self)."""
        return float(np.sum((m @ self.L) * self.R.T))

    def compress(self, tol: float = 1e-13) -> "FactoredOperator":
        """Trim the factor rank by a small SVD; tol is relative to the top singular value."""
        if self.rank_bound == 0:
            return self
        ql, rl = np.linalg.qr(self.L)
        qr_, rr = np.linalg.qr(self.R.T)
        u, s, vt = np.linalg.svd(rl @ rr.T)
        if s.size == 0 or s[0] == 0.0:
            return FactoredOperator.zero(self.dim)
        keep = s > tol * s[0]
        u = u[:, keep] * s[keep]
        vt = vt[keep]
        return FactoredOperator(ql @ u, vt @ qr_.T)


def jacobi_eigh(a: np.ndarray, sweep_tol: float = 1e-14, max_sweeps: int = 60):
    """Cyclic Jacobi diagonalization of a small symmetric matrix.

    Returns (eigenvalues ascending, eigenvector columns).  Deterministic:
    fixed sweep order, stable sort, and each eigenvector's first component
    of significant size is made positive.
    """
    a = np.array(a, dtype=float)
    k = a.shape[0]
    if a.shape != (k, k) or (k and np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a)))):
        raise ValueError("jacobi_eigh needs a symmetric square matrix")
    v = np.eye(k)
    scale = max(1.0, float(np.max(np.abs(a))) if k else 1.0)
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(k - 1):
            for q in range(p + 1, k):
                off = max(off, abs(a[p, q]))
                if abs(a[p, q]) <= sweep_tol * scale:
                    continue
                theta = 0.5 * np.arctan2(2.0 * a[p, q], a[q, q] - a[p, p])
                c, s = np.cos(theta), np.sin(theta)
                rot = np.eye(k)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
        if off <= sweep_tol * scale:
            break
    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    v = v[:, order]
    for col in range(k):
        nz = np.flatnonzero(np.abs(v[:, col]) > 1e-12)
        if nz.size and v[nz[0], col] < 0:
            v[:, col] = -v[:, col]
    return vals, v


def fraction_matrix_rank(rows: list[list[Fraction]]) -> int:
    """Exact rank over the rationals by Gaussian elimination."""
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = 0
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(row + 1, n_rows):
            if m[r][col] != 0:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == n_rows:
            break
    return rank


def fraction_determinant(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant over the rationals."""
    m = [list(r) for r in rows]
    k = len(m)
    if any(len(r) != k for r in m):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, k):
            if m[r][col] != 0:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det
