"""Dense operator algebra on (C^d)^n registers.

Register 1 is the most significant digit of the computational-basis index,
and this convention is used consistently on both sides of the wall.  All
constructions here are real; complex storage is accepted by
:class:`DenseOperator` but nothing in this package produces it.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ResourceLimitError
from .symgroup import Permutation, transposition

MAX_HILBERT_DIM = 2**14


def _check_dim(d: int, n: int) -> int:
    if d < 1 or n < 0:
        raise ValueError(f"bad register parameters d={d}, n={n}")
    dim = d**n
    if dim > MAX_HILBERT_DIM:
        raise ResourceLimitError(f"d^n = {dim} exceeds the desk-scale bound {MAX_HILBERT_DIM}")
    return dim


class DenseOperator:
    """A square matrix acting on ``n`` registers of local dimension ``d``."""

    __slots__ = ("d", "n", "matrix")

    def __init__(self, d: int, n: int, matrix: np.ndarray):
        dim = _check_dim(d, n)
        matrix = np.asarray(matrix)
        if matrix.shape != (dim, dim):
            raise ValueError(f"matrix shape {matrix.shape} != ({dim}, {dim})")
        self.d = d
        self.n = n
        self.matrix = matrix

    @classmethod
    def identity(cls, d: int, n: int) -> "DenseOperator":
        return cls(d, n, np.eye(_check_dim(d, n)))

    @classmethod
    def zeros(cls, d: int, n: int) -> "DenseOperator":
        dim = _check_dim(d, n)
        return cls(d, n, np.zeros((dim, dim)))

    @property
    def dim(self) -> int:
        return self.d**self.n

    def _like(self, matrix: np.ndarray) -> "DenseOperator":
        return DenseOperator(self.d, self.n, matrix)

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_compatible(other)
        return self._like(self.matrix @ other.matrix)

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_compatible(other)
        return self._like(self.matrix + other.matrix)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_compatible(other)
        return self._like(self.matrix - other.matrix)

    def __mul__(self, scalar) -> "DenseOperator":
        return self._like(self.matrix * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "DenseOperator":
        return self._like(-self.matrix)

    def _check_compatible(self, other: "DenseOperator"):
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError(f"register mismatch: ({self.d},{self.n}) vs ({other.d},{other.n})")

    @property
    def T(self) -> "DenseOperator":
        return self._like(self.matrix.T)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.matrix))) if self.matrix.size else 0.0

    def distance(self, other: "DenseOperator") -> float:
        """Max-abs-entry distance, the package-wide comparison metric."""
        self._check_compatible(other)
        return float(np.max(np.abs(self.matrix - other.matrix)))

    def allclose(self, other: "DenseOperator", tol: float = 1e-10) -> bool:
        return self.distance(other) <= tol


def _digit_table(d: int, n: int) -> np.ndarray:
    """(n, d^n) array: digit of each register for every basis index."""
    dim = d**n
    if n == 0:
        return np.zeros((0, dim), dtype=np.int64)
    return np.asarray(np.unravel_index(np.arange(dim), (d,) * n), dtype=np.int64)


def permutation_operator(sigma: Permutation, d: int, n: int) -> DenseOperator:
    """The 0/1 matrix sending |v_1 .. v_n> to |v_{sigma^-1(1)} .. v_{sigma^-1(n)}>."""
    if sigma.degree != n:
        raise ValueError(f"permutation degree {sigma.degree} != n = {n}")
    dim = _check_dim(d, n)
    digs = _digit_table(d, n)
    inv = sigma.inverse()
    rows = np.ravel_multi_index(tuple(digs[inv(i) - 1] for i in range(1, n + 1)), (d,) * n)
    m = np.zeros((dim, dim))
    m[rows, np.arange(dim)] = 1.0
    return DenseOperator(d, n, m)


def partial_transpose(x: DenseOperator, legs) -> DenseOperator:
    """Transpose the row and column digits of the selected registers."""
    legs = sorted(set(int(v) for v in legs))
    if any(v < 1 or v > x.n for v in legs):
        raise ValueError(f"legs out of range 1..{x.n}: {legs}")
    n = x.n
    t = x.matrix.reshape((x.d,) * (2 * n))
    axes = list(range(2 * n))
    for leg in legs:
        axes[leg - 1], axes[n + leg - 1] = axes[n + leg - 1], axes[leg - 1]
    return DenseOperator(x.d, n, t.transpose(axes).reshape(x.dim, x.dim))


def partial_trace(x: DenseOperator, legs) -> DenseOperator:
    """Trace out the selected registers; remaining registers keep their order."""
    legs = sorted(set(int(v) for v in legs))
    if any(v < 1 or v > x.n for v in legs):
        raise ValueError(f"legs out of range 1..{x.n}: {legs}")
    n = x.n
    keep = [v for v in range(1, n + 1) if v not in legs]
    t = x.matrix.reshape((x.d,) * (2 * n))
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    row = [""] * n
    col = [""] * n
    pos = 0
    for leg in legs:
        row[leg - 1] = col[leg - 1] = letters[pos]
        pos += 1
    out_sub = ""
    for leg in keep:
        row[leg - 1] = letters[pos]
        out_sub += letters[pos]
        pos += 1
    for leg in keep:
        col[leg - 1] = letters[pos]
        out_sub += letters[pos]
        pos += 1
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out_sub, t)
    m = len(keep)
    return DenseOperator(x.d, m, reduced.reshape(x.d**m, x.d**m))


def embed_operator(x: DenseOperator, positions, n_total: int) -> DenseOperator:
    """Place ``x`` on the given registers of an ``n_total``-register space.

    ``positions`` lists the target register (1-based) of each register of
    ``x`` in order; every other register carries the identity.
    """
    positions = [int(v) for v in positions]
    if len(positions) != x.n or len(set(positions)) != x.n:
        raise ValueError("positions must be distinct and match x.n")
    if any(v < 1 or v > n_total for v in positions):
        raise ValueError(f"positions out of range 1..{n_total}")
    _check_dim(x.d, n_total)
    rest = [v for v in range(1, n_total + 1) if v not in positions]
    big = np.kron(x.matrix, np.eye(x.d ** len(rest)))
    # big is ordered (positions..., rest...); relabel to 1..n_total
    slot_of = {reg: k for k, reg in enumerate(positions + rest)}
    axes = [slot_of[g] for g in range(1, n_total + 1)]
    t = big.reshape((x.d,) * (2 * n_total))
    t = t.transpose(axes + [n_total + a for a in axes])
    return DenseOperator(x.d, n_total, t.reshape(x.d**n_total, x.d**n_total))


def register_reversal(p: int) -> Permutation:
    return Permutation(tuple(range(p, 0, -1)))


@lru_cache(maxsize=None)
def _pair_product(p: int, k: int) -> Permutation:
    """Product of the disjoint transpositions (p - j + 1, p + j), j = 1..k."""
    sigma = Permutation(tuple(range(1, 2 * p + 1)))
    for j in range(1, k + 1):
        sigma = sigma * transposition(2 * p, p - j + 1, p + j)
    return sigma


def V_generator(p: int, k: int, d: int) -> DenseOperator:
    """The ideal generator V^(k) on 2p registers.

    Tensor product of k partially transposed transpositions pairing register
    p - j + 1 with p + j for j = 1..k, identity on the remaining registers.
    V^(0) is the identity.
    """
    if not 0 <= k <= p:
        raise ValueError(f"need 0 <= k <= p, got k={k}, p={p}")
    base = permutation_operator(_pair_product(p, k), d, 2 * p)
    if k == 0:
        return base
    return partial_transpose(base, range(p + 1, p + k + 1))


def V_outer_pair(p: int, d: int) -> DenseOperator:
    """The two-register ideal generator placed on the outermost pair (1, 2p).

    This is the element whose products satisfy V^(p-1) V = V^(p) and
    V^(p) V = d V^(p); the innermost-pair V_generator(p, 1, d) does not.
    """
    base = permutation_operator(transposition(2 * p, 1, 2 * p), d, 2 * p)
    return partial_transpose(base, [2 * p])


def bell_projector(d: int) -> DenseOperator:
    """|psi+><psi+| on two registers."""
    psi = np.zeros(d * d)
    for i in range(d):
        psi[i * d + i] = 1.0
    psi /= np.sqrt(d)
    return DenseOperator(d, 2, np.outer(psi, psi))


def sandwich_reduce(x: DenseOperator) -> DenseOperator:
    """Reduce a 2p-register operator to the 2-register core of its V^(p-1) sandwich.

    Returns Xt = tr_{2..p, p+1..2p-1}(X V^(p-1)), which satisfies
    V^(p-1) X V^(p-1) = Xt (x) V^(p-1) with Xt on registers (1, 2p).
    """
    if x.n % 2 != 0:
        raise ValueError("operator must act on 2p registers")
    p = x.n // 2
    v = V_generator(p, p - 1, x.d)
    middle = list(range(2, p + 1)) + list(range(p + 1, 2 * p))
    return partial_trace(x @ v, middle)
