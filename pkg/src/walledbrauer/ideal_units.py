"""Spanning operators and irreducible matrix units of the two highest ideals.

Families built here, all on 2p registers and carried in factored low-rank
form:

* F operators: matrix-unit sandwiches of the ideal generators V^(p) and
  V^(p-1), the raw non-redundant spanning sets.
* The exact rational coefficient pair (a, b) of the V^(p-1) sandwich
  identity, and the symmetric coefficient matrix B built from the b values.
* H operators (the almost-units of the second ideal) and the orthonormal
  units G(p), G(p-1), including the reduction that discards zero modes of a
  singular B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import SemisimplicityError, ZeroMultiplicityError
from .lowrank import (
    FactoredOperator,
    fraction_determinant,
    fraction_matrix_rank,
    jacobi_eigh,
)
from .matrix_units import left_side_matrix, right_side_matrix
from .partitions import (
    Partition,
    common_removals,
    dim_irrep,
    multiplicity,
    remove_box,
    schur_weyl_partitions,
)
from .symgroup import prir_position
from .tensorspace import _check_dim, _digit_table

ZERO_MODE_RTOL = 1e-10


# ----------------------------------------------------------------------------
# factored ideal generators


@lru_cache(maxsize=None)
def factored_V(p: int, k: int, d: int) -> FactoredOperator:
    """V^(k) on 2p registers as a sum of d^(2(p-k)) rank-one projectors."""
    if not 0 <= k <= p:
        raise ValueError(f"need 0 <= k <= p, got k={k}")
    dim = _check_dim(d, 2 * p)
    digs = _digit_table(d, 2 * p)
    paired = np.ones(dim, dtype=bool)
    for j in range(1, k + 1):
        paired &= digs[p - j] == digs[p + j - 1]
    free = [r for r in range(1, p - k + 1)] + [r for r in range(p + k + 1, 2 * p + 1)]
    n_free = len(free)
    cols = np.zeros(dim, dtype=np.int64)
    for reg in free:
        cols = cols * d + digs[reg - 1]
    L = np.zeros((dim, d**n_free))
    idx = np.flatnonzero(paired)
    L[idx, cols[idx]] = 1.0
    return FactoredOperator(L, L.T)


def _apply_pair(a: np.ndarray | None, b: np.ndarray | None, block: np.ndarray, d: int, p: int) -> np.ndarray:
    """(a (x) b) applied to columns of ``block``, a on registers 1..p, b on p+1..2p."""
    dp = d**p
    out = block.reshape(dp, dp, -1)
    if a is not None:
        out = np.einsum("xy,yzk->xzk", a, out)
    if b is not None:
        out = np.einsum("zw,xwk->xzk", b, out)
    return out.reshape(dp * dp, -1)


# ----------------------------------------------------------------------------
# F operators


@dataclass(frozen=True)
class FOperator:
    """A spanning operator of an ideal, with its structured labels."""

    kind: str  # "top" or "sub"
    labels: tuple[Partition, ...]
    indices: tuple[int, ...]
    interior: tuple[Partition, ...] | None
    op: FactoredOperator
    vanishing: bool
    p: int
    d: int

    def to_dense(self) -> np.ndarray:
        return self.op.to_dense()


def F_top(mu: Partition, i: int, j: int, nu: Partition, ip: int, jp: int, p: int, d: int) -> FOperator:
    """(E^mu_ij (x) 1) V^(p) (E^nu_{jp,ip} (x) 1), a rank-one operator."""
    dim = _check_dim(d, 2 * p)
    vanishing = multiplicity(mu, d) == 0 or multiplicity(nu, d) == 0
    if vanishing:
        op = FactoredOperator.zero(dim)
    else:
        v = factored_V(p, p, d)
        left = _apply_pair(left_side_matrix(mu, i, j, d), None, v.L, d, p)
        right = _apply_pair(left_side_matrix(nu, ip, jp, d), None, v.R.T, d, p).T
        op = FactoredOperator(left, right)
    return FOperator("top", (mu, nu), (i, j, ip, jp), None, op, vanishing, p, d)


def F_sub(
    mu: Partition,
    nu: Partition,
    mup: Partition,
    nup: Partition,
    i: int,
    j: int,
    ip: int,
    jp: int,
    alpha: Partition,
    alphap: Partition,
    p: int,
    d: int,
    interior_row: int = 1,
    interior_col: int = 1,
) -> FOperator:
    """(E^mu_{i,r_a} (x) E^nu_{j,r_a}) V^(p-1) (E^mup_{c_a',ip} (x) E^nup_{c_a',jp}).

    The interior labels r_a = (alpha, interior_row) and c_a' =
    (alphap, interior_col) default to the first index of their blocks; the
    operator does not depend on that choice.  An alpha outside the common
    removals of the row (or column) pair yields a labelled zero.
    """
    dim = _check_dim(d, 2 * p)
    labels = (mu, nu, mup, nup)
    ok_row = alpha in common_removals(mu, nu)
    ok_col = alphap in common_removals(mup, nup)
    vanishing = (
        not ok_row
        or not ok_col
        or any(multiplicity(m, d) == 0 for m in labels)
    )
    if vanishing:
        op = FactoredOperator.zero(dim)
    else:
        r = prir_position(mu, alpha, interior_row)
        r2 = prir_position(nu, alpha, interior_row)
        c = prir_position(mup, alphap, interior_col)
        c2 = prir_position(nup, alphap, interior_col)
        v = factored_V(p, p - 1, d)
        left = _apply_pair(left_side_matrix(mu, i, r, d), right_side_matrix(nu, j, r2, d), v.L, d, p)
        right = _apply_pair(
            left_side_matrix(mup, ip, c, d), right_side_matrix(nup, jp, c2, d), v.R.T, d, p
        ).T
        op = FactoredOperator(left, right).compress()
    return FOperator("sub", labels, (i, j, ip, jp), (alpha, alphap), op, vanishing, p, d)


# ----------------------------------------------------------------------------
# sandwich coefficients


@dataclass(frozen=True)
class ABCoefficients:
    """Exact coefficients of V^(p-1) X V^(p-1) = a V^(p) + b V^(p-1)."""

    a: Fraction
    b: Fraction
    labels: tuple = ()

    def identity_value(self, d: int) -> Fraction:
        return self.a * d + self.b


def _ab_from_traces(x: Fraction, y: Fraction, d: int, labels: tuple = ()) -> ABCoefficients:
    den = d * (d * d - 1)
    return ABCoefficients(Fraction(d * y - x, den), Fraction(d * x - y, den), labels)


def trace_with_V_top(
    mu: Partition,
    nu: Partition,
    row_mu: tuple[Partition, int],
    col_mu: tuple[Partition, int],
    row_nu: tuple[Partition, int],
    col_nu: tuple[Partition, int],
    d: int,
) -> Fraction:
    """tr((E^mu (x) E^nu) V^(p)) = m_mu when the units are transposes of each other."""
    if mu == nu and row_mu == row_nu and col_mu == col_nu:
        return Fraction(multiplicity(mu, d))
    return Fraction(0)


def trace_with_V_sub(
    mu: Partition,
    nu: Partition,
    row_mu: tuple[Partition, int],
    col_mu: tuple[Partition, int],
    row_nu: tuple[Partition, int],
    col_nu: tuple[Partition, int],
    d: int,
) -> Fraction:
    """tr((E^mu (x) E^nu) V^(p-1)) in subgroup-adapted labels.

    Nonzero only when each unit is block diagonal in the subgroup label,
    both units sit in the same block alpha, and the row inner indices agree
    across the wall, as do the column inner indices; the value is then
    m_mu m_nu / m_alpha.  The row and column inner indices of one unit need
    not match each other.
    """
    m_mu, m_nu = multiplicity(mu, d), multiplicity(nu, d)
    alpha, i_a = row_mu
    alphap, j_a = col_mu
    beta, k_b = row_nu
    betap, l_b = col_nu
    if (
        m_mu * m_nu != 0
        and alpha == alphap == beta == betap
        and i_a == k_b
        and j_a == l_b
    ):
        return Fraction(m_mu * m_nu, multiplicity(alpha, d))
    return Fraction(0)


def ab_general(
    mu: Partition,
    nu: Partition,
    row_mu: tuple[Partition, int],
    col_mu: tuple[Partition, int],
    row_nu: tuple[Partition, int],
    col_nu: tuple[Partition, int],
    d: int,
) -> ABCoefficients:
    """Sandwich coefficients for E^mu_{row,col} (x) E^nu_{row',col'}.

    All four indices are subgroup-adapted labels (block shape, index inside
    the block).  Exact rationals.
    """
    x = trace_with_V_sub(mu, nu, row_mu, col_mu, row_nu, col_nu, d)
    y = trace_with_V_top(mu, nu, row_mu, col_mu, row_nu, col_nu, d)
    return _ab_from_traces(x, y, d, (mu, nu, row_mu, col_mu, row_nu, col_nu))


def ab_fixed(mup: Partition, nup: Partition, alphap: Partition, beta: Partition, d: int) -> ABCoefficients:
    """Fixed-interior coefficients a^{mu'nu'}(alpha', beta), b^{mu'nu'}(alpha', beta)."""
    m1, m2 = multiplicity(mup, d), multiplicity(nup, d)
    y = Fraction(m1) if mup == nup else Fraction(0)
    x = Fraction(0)
    if alphap == beta and m1 * m2 != 0:
        x = Fraction(m1 * m2, multiplicity(alphap, d))
    return _ab_from_traces(x, y, d, (mup, nup, alphap, beta))


def b_entry(mu: Partition, nu: Partition, alpha: Partition, alphap: Partition, d: int) -> Fraction:
    """One entry of the coefficient matrix B^{mu nu}."""
    return ab_fixed(mu, nu, alpha, alphap, d).b


# ----------------------------------------------------------------------------
# the B matrix


def singularity_condition(mu: Partition, d: int) -> bool:
    """Exact integer test: d m_mu equals the sum of m_alpha over alpha = mu - box."""
    return d * multiplicity(mu, d) == sum(multiplicity(a, d) for a in remove_box(mu))


@dataclass(frozen=True)
class BMatrix:
    mu: Partition
    nu: Partition
    d: int
    alphas: tuple[Partition, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    eigenvalues: np.ndarray
    diagonalizer: np.ndarray  # U with B_diag = U B U^T; rows are eigenvectors
    nullity: int
    zero_modes: tuple[int, ...]  # 1-based eigenvalue indices to discard
    singular: bool
    vanishing: bool

    @property
    def size(self) -> int:
        return len(self.alphas)

    def determinant(self) -> Fraction:
        return fraction_determinant([list(r) for r in self.entries])

    def entry_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])

    def is_zero_mode(self, beta: int) -> bool:
        """Whether the 1-based eigenvalue index ``beta`` is a discarded zero mode."""
        if not 1 <= beta <= self.size:
            raise IndexError(f"beta out of range 1..{self.size}")
        return beta in self.zero_modes

    def kept_modes(self) -> tuple[int, ...]:
        return tuple(b for b in range(1, self.size + 1) if b not in self.zero_modes)


@lru_cache(maxsize=None)
def B_matrix(mu: Partition, nu: Partition, d: int) -> BMatrix:
    """The coefficient matrix over the common one-box removals of mu and nu.

    Exact rational entries; the diagonalizer comes from a cyclic Jacobi pass
    (identity when mu != nu, where the matrix is already diagonal).  The
    singular flag is decided by the exact integer condition, and the float
    zero modes are checked against the exact rational nullity.
    """
    alphas = common_removals(mu, nu)
    k = len(alphas)
    entries = tuple(
        tuple(b_entry(mu, nu, a, ap, d) for ap in alphas) for a in alphas
    )
    vanishing = multiplicity(mu, d) == 0 or multiplicity(nu, d) == 0
    dense = np.array([[float(v) for v in row] for row in entries])
    if mu == nu:
        vals, q = jacobi_eigh(dense)
        u = q.T
    else:
        vals = np.diag(dense).copy()
        u = np.eye(k)
    nullity = k - fraction_matrix_rank([list(r) for r in entries])
    top = float(np.max(np.abs(vals))) if k else 0.0
    zero_modes = (
        tuple(b + 1 for b in range(k) if abs(vals[b]) <= ZERO_MODE_RTOL * max(top, 1e-300))
        if k
        else ()
    )
    if len(zero_modes) != nullity:
        raise ArithmeticError(
            f"float zero-mode count {len(zero_modes)} != exact nullity {nullity} for B^({mu},{nu})"
        )
    if mu == nu and not vanishing:
        singular = singularity_condition(mu, d)
        if singular != (nullity > 0):
            raise ArithmeticError(f"integer condition disagrees with exact rank for {mu}, d={d}")
    else:
        singular = nullity > 0
    return BMatrix(mu, nu, d, alphas, entries, vals, u, nullity, zero_modes, singular, vanishing)


# ----------------------------------------------------------------------------
# H operators and G units


@dataclass(frozen=True)
class HOperator:
    labels: tuple[Partition, Partition, Partition, Partition]
    indices: tuple[int, int, int, int]
    interior: tuple[Partition, Partition]
    op: FactoredOperator
    vanishing: bool
    p: int
    d: int

    def to_dense(self) -> np.ndarray:
        return self.op.to_dense()


@lru_cache(maxsize=None)
def H_operator(
    mu: Partition,
    nu: Partition,
    mup: Partition,
    nup: Partition,
    i: int,
    j: int,
    ip: int,
    jp: int,
    alpha: Partition,
    alphap: Partition,
    p: int,
    d: int,
) -> HOperator:
    """d F_sub - F_top delta^{mu nu} delta^{mu' nu'}; spans the second ideal."""
    fs = F_sub(mu, nu, mup, nup, i, j, ip, jp, alpha, alphap, p, d)
    op = d * fs.op
    if mu == nu and mup == nup:
        op = op - F_top(mu, i, j, mup, ip, jp, p, d).op
    op = op.compress()
    vanishing = op.rank_bound == 0 or op.frobenius_norm() <= 1e-12
    return HOperator((mu, nu, mup, nup), (i, j, ip, jp), (alpha, alphap), op, vanishing, p, d)


@dataclass(frozen=True)
class GUnit:
    """An irreducible matrix unit of the top ideal (p) or the second ideal (p-1)."""

    ideal: int  # p or p - 1
    labels: tuple[Partition, ...]
    indices: tuple[int, int, int, int]
    interior: tuple[int, int] | None  # eigenmode labels (beta, beta') for ideal p-1
    op: FactoredOperator
    p: int
    d: int

    def to_dense(self) -> np.ndarray:
        return self.op.to_dense()

    def trace(self) -> float:
        return self.op.trace()

    @property
    def row_key(self):
        if self.ideal == self.p:
            return (self.labels[0], self.indices[0], self.indices[1])
        return (self.labels[0], self.labels[1], self.indices[0], self.indices[1], self.interior[0])

    @property
    def col_key(self):
        if self.ideal == self.p:
            return (self.labels[1], self.indices[2], self.indices[3])
        return (self.labels[2], self.labels[3], self.indices[2], self.indices[3], self.interior[1])


def G_top(mu: Partition, i: int, j: int, nu: Partition, ip: int, jp: int, p: int, d: int) -> GUnit:
    """F_top rescaled by 1 / sqrt(m_mu m_nu)."""
    m1, m2 = multiplicity(mu, d), multiplicity(nu, d)
    if m1 == 0 or m2 == 0:
        raise ZeroMultiplicityError(f"unit undefined: m_{mu} = {m1}, m_{nu} = {m2} at d = {d}")
    f = F_top(mu, i, j, nu, ip, jp, p, d)
    return GUnit(p, (mu, nu), (i, j, ip, jp), None, f.op * (1.0 / math.sqrt(m1 * m2)), p, d)


def G_sub(
    mu: Partition,
    nu: Partition,
    mup: Partition,
    nup: Partition,
    i: int,
    j: int,
    ip: int,
    jp: int,
    beta: int,
    betap: int,
    p: int,
    d: int,
) -> GUnit:
    """Unit of the second ideal for eigenmode labels (beta, beta').

    beta indexes the eigenvalues of B^{mu nu} (ascending for mu = nu,
    block-diagonal order otherwise); requesting a zero mode is an error.
    """
    b_row = B_matrix(mu, nu, d)
    b_col = B_matrix(mup, nup, d)
    for b in (b_row, b_col):
        if b.size == 0:
            raise ZeroMultiplicityError(f"no common removals for {b.mu}, {b.nu}")
    if b_row.is_zero_mode(beta) or b_col.is_zero_mode(betap):
        raise ZeroMultiplicityError(
            f"zero eigenvalue requested: beta={beta} of B^({mu},{nu}), beta'={betap} of B^({mup},{nup})"
        )
    lam_row = b_row.eigenvalues[beta - 1]
    lam_col = b_col.eigenvalues[betap - 1]
    if lam_row <= 0 or lam_col <= 0:
        raise ArithmeticError(f"nonpositive eigenvalue under square root: {lam_row}, {lam_col}")
    dim = _check_dim(d, 2 * p)
    acc = FactoredOperator.zero(dim)
    for r, alpha in enumerate(b_row.alphas):
        w_row = b_row.diagonalizer[beta - 1, r]
        if w_row == 0.0:
            continue
        for c, alphap in enumerate(b_col.alphas):
            w_col = b_col.diagonalizer[betap - 1, c]
            if w_col == 0.0:
                continue
            h = H_operator(mu, nu, mup, nup, i, j, ip, jp, alpha, alphap, p, d)
            acc = acc + (w_row * w_col) * h.op
    scale = 1.0 / (d * math.sqrt(lam_row * lam_col))
    return GUnit(p - 1, (mu, nu, mup, nup), (i, j, ip, jp), (beta, betap), (scale * acc).compress(), p, d)


# ----------------------------------------------------------------------------
# unit enumeration


def top_row_labels(p: int, d: int) -> list[tuple[Partition, int, int]]:
    out = []
    for mu in schur_weyl_partitions(p, d):
        for i in range(1, dim_irrep(mu) + 1):
            for j in range(1, dim_irrep(mu) + 1):
                out.append((mu, i, j))
    return out


def sub_row_labels(p: int, d: int) -> list[tuple[Partition, Partition, int, int, int]]:
    """Composite row labels (mu, nu, i, j, beta) of the second-ideal units."""
    if p < 2:
        return []
    out = []
    shapes = schur_weyl_partitions(p, d)
    for mu in shapes:
        for nu in shapes:
            b = B_matrix(mu, nu, d)
            if b.size == 0:
                continue
            for beta in b.kept_modes():
                for i in range(1, dim_irrep(mu) + 1):
                    for j in range(1, dim_irrep(nu) + 1):
                        out.append((mu, nu, i, j, beta))
    return out


def enumerate_G_top(p: int, d: int) -> list[GUnit]:
    rows = top_row_labels(p, d)
    return [
        G_top(mu, i, j, nu, ip, jp, p, d)
        for (mu, i, j) in rows
        for (nu, ip, jp) in rows
    ]


def enumerate_G_sub(p: int, d: int) -> list[GUnit]:
    rows = sub_row_labels(p, d)
    return [
        G_sub(mu, nu, mup, nup, i, j, ip, jp, beta, betap, p, d)
        for (mu, nu, i, j, beta) in rows
        for (mup, nup, ip, jp, betap) in rows
    ]


# ----------------------------------------------------------------------------
# reduction of a singular block


@dataclass(frozen=True)
class ReducedBasis:
    kept: tuple[int, ...]  # 1-based eigenmode indices that survive
    units: dict[tuple[int, int], FactoredOperator]
    eigenvalues: np.ndarray  # scalar-structure eigenvalues d * b_diag


def reduce_singular_basis(b: BMatrix, generators, tol: float = 1e-9) -> ReducedBasis:
    """Orthonormal matrix units from generators with scalar structure A = d B.

    ``generators[r][c]`` must compose as x_rc x_r'c' = d b(c, r') x_rc'
    (H operators of one diagonal label block do).  Implements the
    diagonalize / discard / rescale pipeline: transform with the B
    eigenvectors, drop the zero modes after checking they really vanish,
    and rescale the survivors into exact matrix units.
    """
    k = b.size
    if k == 0:
        raise ValueError("empty B matrix")
    q = b.diagonalizer.T  # columns are eigenvectors
    lam = b.d * b.eigenvalues
    dim = generators[0][0].dim
    transformed = {}
    for s in range(k):
        for r in range(k):
            acc = FactoredOperator.zero(dim)
            for a in range(k):
                for c in range(k):
                    w = q[a, s] * q[c, r]
                    if w != 0.0:
                        acc = acc + w * generators[a][c]
            transformed[(s, r)] = acc.compress()
    zero_modes = [s for s in range(k) if b.is_zero_mode(s + 1)]
    for z in zero_modes:
        for s in range(k):
            for key in ((s, z), (z, s)):
                norm = transformed[key].frobenius_norm()
                if norm > tol:
                    raise SemisimplicityError(
                        f"discarded generator y[{key}] has norm {norm:.3e} > {tol}"
                    )
    kept = tuple(s + 1 for s in range(k) if s not in zero_modes)
    units = {}
    for s in kept:
        for r in kept:
            scale = 1.0 / math.sqrt(lam[s - 1] * lam[r - 1])
            units[(s, r)] = scale * transformed[(s - 1, r - 1)]
    return ReducedBasis(kept, units, lam)


# ----------------------------------------------------------------------------
# the generator of the second ideal in the constructed basis


@dataclass(frozen=True)
class Vpm1Term:
    kind: str  # "H" or "F_top"
    coefficient: Fraction
    alpha: Partition
    beta: Partition
    labels: tuple[Partition, Partition, Partition, Partition]
    outer: tuple[int, int]


@dataclass(frozen=True)
class Vpm1Decomposition:
    terms: tuple[Vpm1Term, ...]
    residual: float


def decompose_Vpm1(p: int, d: int) -> Vpm1Decomposition:
    """Reassemble V^(p-1) from H operators plus top-ideal units.

    Sums, over all pairs of one-box-smaller shapes (alpha, beta), additions
    mu, mu' of alpha and nu, nu' of beta, and inner indices, the H operator
    with matching subgroup-adapted outer labels plus the diagonal top-ideal
    term when mu = mu' and nu = nu'.  Every term carries coefficient 1/d.
    The reported residual compares the sum against the directly constructed
    V^(p-1).
    """
    from .partitions import add_box, enumerate_partitions
    from .tensorspace import V_generator

    if p < 1:
        raise ValueError("p must be >= 1")
    if p == 1:
        target = V_generator(1, 0, d)
        residual = target.distance(target)
        return Vpm1Decomposition((), residual)
    dim = _check_dim(d, 2 * p)
    acc = np.zeros((dim, dim))
    terms = []
    weight = Fraction(1, d)
    smaller = [a for a in enumerate_partitions(p - 1) if multiplicity(a, d) > 0]
    for alpha in smaller:
        for beta in smaller:
            adds_a = [m for m in add_box(alpha) if multiplicity(m, d) > 0]
            adds_b = [m for m in add_box(beta) if multiplicity(m, d) > 0]
            for mu in adds_a:
                for mup in adds_a:
                    for nu in adds_b:
                        for nup in adds_b:
                            for ia in range(1, dim_irrep(alpha) + 1):
                                for jb in range(1, dim_irrep(beta) + 1):
                                    r1 = prir_position(mu, alpha, ia)
                                    r2 = prir_position(mup, alpha, ia)
                                    c1 = prir_position(nu, beta, jb)
                                    c2 = prir_position(nup, beta, jb)
                                    h = H_operator(mu, mup, nu, nup, r1, r2, c1, c2, alpha, beta, p, d)
                                    acc += float(weight) * h.to_dense()
                                    terms.append(
                                        Vpm1Term("H", weight, alpha, beta, (mu, mup, nu, nup), (ia, jb))
                                    )
                                    if mu == mup and nu == nup:
                                        f = F_top(mu, r1, r1, nu, c1, c1, p, d)
                                        acc += float(weight) * f.to_dense()
                                        terms.append(
                                            Vpm1Term("F_top", weight, alpha, beta, (mu, mu, nu, nu), (ia, jb))
                                        )
    target = V_generator(p, p - 1, d).matrix
    residual = float(np.max(np.abs(acc - target)))
    return Vpm1Decomposition(tuple(terms), residual)
