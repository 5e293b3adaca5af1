import itertools
from fractions import Fraction

import numpy as np
import pytest

from walledbrauer.errors import ZeroMultiplicityError
from walledbrauer.ideal_units import (
    B_matrix,
    F_sub,
    F_top,
    G_sub,
    G_top,
    H_operator,
    ab_fixed,
    ab_general,
    b_entry,
    decompose_Vpm1,
    factored_V,
    reduce_singular_basis,
    singularity_condition,
    sub_row_labels,
    top_row_labels,
    trace_with_V_sub,
    trace_with_V_top,
)
from walledbrauer.lowrank import FactoredOperator
from walledbrauer.matrix_units import left_side_matrix, right_side_matrix
from walledbrauer.partitions import (
    common_removals,
    dim_irrep,
    enumerate_partitions,
    multiplicity,
    partition,
    remove_box,
    schur_weyl_partitions,
)
from walledbrauer.symgroup import prir_map, prir_position
from walledbrauer.tensorspace import V_generator

rng = np.random.default_rng(99)


def embedded_pair(mu, rm, cm, nu, rn, cn, d):
    """Dense (E^mu (x) E^nu) with wall-side frames, indices as global positions."""
    return np.kron(left_side_matrix(mu, rm, cm, d), right_side_matrix(nu, rn, cn, d))


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 3)])
def test_factored_V_matches_dense(p, d):
    for k in range(p + 1):
        assert np.max(np.abs(factored_V(p, k, d).to_dense() - V_generator(p, k, d).matrix)) <= 1e-14


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 3)])
def test_F_top_trace_rule(p, d):
    rows = top_row_labels(p, d)
    for (mu, i, j) in rows:
        for (nu, ip, jp) in rows:
            f = F_top(mu, i, j, nu, ip, jp, p, d)
            expected = multiplicity(mu, d) if (mu == nu and ip == i and jp == j) else 0.0
            assert abs(f.op.trace() - expected) <= 1e-10


def test_F_top_symmetric_shape_idempotent_up_to_multiplicity():
    p, d = 3, 3
    mu = partition(3)
    f = F_top(mu, 1, 1, mu, 1, 1, p, d)
    prod = f.op @ f.op
    assert prod.distance(multiplicity(mu, d) * f.op) <= 1e-9


def test_F_top_vanishing():
    f = F_top(partition(1, 1, 1), 1, 1, partition(3), 1, 1, 3, 2)
    assert f.vanishing and f.op.frobenius_norm() == 0.0


def test_F_sub_trace_rule_p3():
    p, d = 3, 3
    shapes = schur_weyl_partitions(p, d)
    for mu, nu, mup, nup in itertools.product(shapes, repeat=4):
        for alpha in common_removals(mu, nu):
            for alphap in common_removals(mup, nup):
                for i, j, ip, jp in itertools.product(
                    range(1, dim_irrep(mu) + 1),
                    range(1, dim_irrep(nu) + 1),
                    range(1, dim_irrep(mup) + 1),
                    range(1, dim_irrep(nup) + 1),
                ):
                    f = F_sub(mu, nu, mup, nup, i, j, ip, jp, alpha, alphap, p, d)
                    expected = 0.0
                    if alpha == alphap and mu == mup and nu == nup and ip == i and jp == j:
                        expected = multiplicity(mu, d) * multiplicity(nu, d) / multiplicity(alpha, d)
                    assert abs(f.op.trace() - expected) <= 1e-9


def test_F_sub_empty_intersection_is_labelled_zero():
    f = F_sub(
        partition(3), partition(1, 1, 1),
        partition(3), partition(3),
        1, 1, 1, 1,
        partition(2), partition(2),
        3, 3,
    )
    assert f.vanishing and f.op.rank_bound == 0


def test_F_sub_interior_relabel_invariance():
    # needs an interior block of dimension > 1: alpha = (2,1) at p = 4
    p, d = 4, 2
    mu, nu = partition(3, 1), partition(2, 2)
    alpha = partition(2, 1)
    base = F_sub(mu, nu, mu, nu, 1, 1, 1, 1, alpha, alpha, p, d)
    for r in (1, 2):
        for c in (1, 2):
            other = F_sub(mu, nu, mu, nu, 1, 1, 1, 1, alpha, alpha, p, d, interior_row=r, interior_col=c)
            assert base.op.distance(other.op) <= 1e-10


def test_span_reduction_identity():
    """Two-sided unit sandwiches of V^(p) collapse to the non-redundant form."""
    p, d = 2, 2
    v = factored_V(p, p, d)
    shapes = schur_weyl_partitions(p, d)
    for mu, mup, nu, nup in itertools.product(shapes, repeat=4):
        left = embedded_pair(mu, 1, 1, mup, 1, 1, d)
        right = embedded_pair(nu, 1, 1, nup, 1, 1, d)
        lhs = FactoredOperator(left @ v.L, v.R @ right)
        if mu == mup and nu == nup:
            rhs = F_top(mu, 1, 1, nu, 1, 1, p, d).op
        else:
            rhs = FactoredOperator.zero(d ** (2 * p))
        assert lhs.distance(rhs) <= 1e-10


def test_proposition_top_sandwich():
    """V^(p) (E (x) E) V^(p) = m_mu deltas V^(p), random unit pairs."""
    for p, d in ((2, 2), (3, 3)):
        v = factored_V(p, p, d)
        shapes = schur_weyl_partitions(p, d)
        for _ in range(10):
            mu = shapes[rng.integers(len(shapes))]
            nu = shapes[rng.integers(len(shapes))]
            dm, dn = dim_irrep(mu), dim_irrep(nu)
            i, j = rng.integers(1, dm + 1), rng.integers(1, dm + 1)
            k, l = rng.integers(1, dn + 1), rng.integers(1, dn + 1)
            x = embedded_pair(mu, i, j, nu, k, l, d)
            lhs = FactoredOperator(v.L, (v.R @ x) @ v.L @ v.R)
            scale = multiplicity(mu, d) if (mu == nu and i == k and j == l) else 0.0
            assert lhs.distance(scale * v) <= 1e-9


# ----------------------------------------------------------------------------
# coefficients


def test_ab_identity_exact():
    for p, d in ((3, 3), (3, 2), (4, 2)):
        for mu in schur_weyl_partitions(p, d):
            for nu in schur_weyl_partitions(p, d):
                for rm in prir_map(mu):
                    for cm in prir_map(mu):
                        for rn in prir_map(nu):
                            for cn in prir_map(nu):
                                ab = ab_general(
                                    mu, nu,
                                    (rm.alpha, rm.i_alpha), (cm.alpha, cm.i_alpha),
                                    (rn.alpha, rn.i_alpha), (cn.alpha, cn.i_alpha), d,
                                )
                                same = (
                                    mu == nu
                                    and (rm.alpha, rm.i_alpha) == (rn.alpha, rn.i_alpha)
                                    and (cm.alpha, cm.i_alpha) == (cn.alpha, cn.i_alpha)
                                )
                                expected = Fraction(multiplicity(mu, d), d) if same else Fraction(0)
                                assert ab.identity_value(d) == expected


def test_b_entry_fixture():
    assert b_entry(partition(2, 1), partition(2, 1), partition(1, 1), partition(1, 1), 3) == Fraction(7, 3)
    ab = ab_fixed(partition(2, 1), partition(2, 1), partition(1, 1), partition(1, 1), 3)
    assert ab.a * 3 + ab.b == Fraction(8, 3)


@pytest.mark.parametrize("p,d", [(3, 3), (4, 2)])
def test_trace_rules_exhaustive(p, d):
    vp = factored_V(p, p, d)
    vpm1 = factored_V(p, p - 1, d)
    for mu in schur_weyl_partitions(p, d):
        for nu in schur_weyl_partitions(p, d):
            for rm in prir_map(mu):
                for cm in prir_map(mu):
                    for rn in prir_map(nu):
                        for cn in prir_map(nu):
                            x = embedded_pair(
                                mu,
                                prir_position(mu, rm.alpha, rm.i_alpha),
                                prir_position(mu, cm.alpha, cm.i_alpha),
                                nu,
                                prir_position(nu, rn.alpha, rn.i_alpha),
                                prir_position(nu, cn.alpha, cn.i_alpha),
                                d,
                            )
                            args = (
                                mu, nu,
                                (rm.alpha, rm.i_alpha), (cm.alpha, cm.i_alpha),
                                (rn.alpha, rn.i_alpha), (cn.alpha, cn.i_alpha), d,
                            )
                            assert abs(vp.trace_against_dense(x) - float(trace_with_V_top(*args))) <= 1e-10
                            assert abs(vpm1.trace_against_dense(x) - float(trace_with_V_sub(*args))) <= 1e-10


def test_sandwich_decomposition_least_squares_oracle():
    """Fit the sandwiched operator onto {V^(p), V^(p-1)} and compare to (a, b)."""
    p, d = 3, 3
    vpm1 = V_generator(p, p - 1, d).matrix
    vp = V_generator(p, p, d).matrix
    gram = np.array([[np.sum(vp * vp), np.sum(vp * vpm1)], [np.sum(vp * vpm1), np.sum(vpm1 * vpm1)]])
    shapes = schur_weyl_partitions(p, d)
    for _ in range(10):
        mu = shapes[rng.integers(len(shapes))]
        nu = shapes[rng.integers(len(shapes))]
        pm_mu, pm_nu = prir_map(mu), prir_map(nu)
        rm, cm = pm_mu[rng.integers(len(pm_mu))], pm_mu[rng.integers(len(pm_mu))]
        rn, cn = pm_nu[rng.integers(len(pm_nu))], pm_nu[rng.integers(len(pm_nu))]
        x = embedded_pair(
            mu,
            prir_position(mu, rm.alpha, rm.i_alpha),
            prir_position(mu, cm.alpha, cm.i_alpha),
            nu,
            prir_position(nu, rn.alpha, rn.i_alpha),
            prir_position(nu, cn.alpha, cn.i_alpha),
            d,
        )
        sandwiched = vpm1 @ x @ vpm1
        fitted = np.linalg.solve(gram, [np.sum(sandwiched * vp), np.sum(sandwiched * vpm1)])
        assert np.max(np.abs(sandwiched - fitted[0] * vp - fitted[1] * vpm1)) <= 1e-10
        ab = ab_general(
            mu, nu,
            (rm.alpha, rm.i_alpha), (cm.alpha, cm.i_alpha),
            (rn.alpha, rn.i_alpha), (cn.alpha, cn.i_alpha), d,
        )
        assert abs(fitted[0] - float(ab.a)) <= 1e-10
        assert abs(fitted[1] - float(ab.b)) <= 1e-10


# ----------------------------------------------------------------------------
# B matrices


def test_B_matrix_fixture_21():
    b = B_matrix(partition(2, 1), partition(2, 1), 3)
    assert b.alphas == (partition(1, 1), partition(2))
    assert b.entries == ((Fraction(7, 3), Fraction(-1, 3)), (Fraction(-1, 3), Fraction(1)))
    assert abs(b.eigenvalues[0] - (5 - np.sqrt(5)) / 3) <= 1e-12
    assert abs(b.eigenvalues[1] - (5 + np.sqrt(5)) / 3) <= 1e-12
    assert b.determinant() == Fraction(20, 9)
    assert abs(float(b.determinant()) - 2.2222) <= 1e-4
    assert not b.singular
    diag = b.diagonalizer @ b.entry_float() @ b.diagonalizer.T
    assert np.max(np.abs(diag - np.diag(b.eigenvalues))) <= 1e-12


def test_B_matrix_rectangular_case():
    b = B_matrix(partition(3), partition(2, 1), 3)
    assert b.alphas == (partition(2),)
    assert b.entries[0][0] == Fraction(10 * 8, 8 * 6)
    assert np.array_equal(b.diagonalizer, np.eye(1))


def test_singularity_examples():
    assert singularity_condition(partition(1, 1, 1), 3)
    assert not singularity_condition(partition(2, 2), 3)
    assert singularity_condition(partition(3, 2, 1), 3)
    assert B_matrix(partition(2, 2), partition(2, 2), 3).determinant() == Fraction(5, 16)
    assert B_matrix(partition(3, 2), partition(3, 2), 3).determinant() == Fraction(75, 16)
    b211 = B_matrix(partition(2, 1, 1), partition(2, 1, 1), 3)
    assert b211.entries == ((Fraction(1), Fraction(-1, 8)), (Fraction(-1, 8), Fraction(1, 64)))
    assert b211.singular and b211.nullity == 1


def test_singularity_condition_agrees_with_determinant_everywhere():
    for p in range(2, 7):
        for d in (2, 3, 4):
            for mu in enumerate_partitions(p):
                b = B_matrix(mu, mu, d)
                if multiplicity(mu, d) == 0:
                    assert all(v == 0 for row in b.entries for v in row)
                    continue
                assert (b.determinant() == 0) == singularity_condition(mu, d)
                assert b.singular == singularity_condition(mu, d)


def test_determinant_symmetric_polynomial_identity():
    """det B = (prefactor)^k (e_k - e_{k-1}) in the scaled removal multiplicities."""
    for p in range(2, 7):
        for d in (2, 3, 4):
            for mu in enumerate_partitions(p):
                m = multiplicity(mu, d)
                if m == 0:
                    continue
                xs = [Fraction(d * m, multiplicity(a, d)) for a in remove_box(mu)]
                k = len(xs)
                esp = [Fraction(1)] + [Fraction(0)] * k
                for x in xs:
                    for deg in range(k, 0, -1):
                        esp[deg] += x * esp[deg - 1]
                predicted = (esp[k] - esp[k - 1]) * Fraction(m, d * (d * d - 1)) ** k
                assert B_matrix(mu, mu, d).determinant() == predicted


# ----------------------------------------------------------------------------
# H operators and G units


def test_H_composition_scalar():
    p, d = 3, 3
    mu = partition(2, 1)
    alphas = remove_box(mu)
    for a1, a2, a3, a4 in itertools.product(alphas, repeat=4):
        h1 = H_operator(mu, mu, mu, mu, 1, 1, 1, 2, a1, a2, p, d)
        h2 = H_operator(mu, mu, mu, mu, 1, 2, 2, 2, a3, a4, p, d)
        scalar = d * float(b_entry(mu, mu, a2, a3, d))
        expected = scalar * H_operator(mu, mu, mu, mu, 1, 1, 2, 2, a1, a4, p, d).op
        assert (h1.op @ h2.op).distance(expected) <= 1e-9


def test_H_mismatched_indices_give_zero():
    p, d = 3, 3
    mu = partition(2, 1)
    a = remove_box(mu)[0]
    h1 = H_operator(mu, mu, mu, mu, 1, 1, 1, 2, a, a, p, d)
    h2 = H_operator(mu, mu, mu, mu, 2, 2, 2, 2, a, a, p, d)
    assert (h1.op @ h2.op).frobenius_norm() <= 1e-9


def test_H_vanishes_for_single_column_at_d_equal_p():
    ones = partition(1, 1, 1)
    h = H_operator(ones, ones, ones, ones, 1, 1, 1, 1, partition(1, 1), partition(1, 1), 3, 3)
    assert h.vanishing and h.op.frobenius_norm() <= 1e-12


def test_G_top_requires_multiplicity():
    with pytest.raises(ZeroMultiplicityError):
        G_top(partition(1, 1, 1), 1, 1, partition(3), 1, 1, 3, 2)


def test_G_top_composition_and_mismatch():
    p, d = 3, 3
    m21, m3 = partition(2, 1), partition(3)
    u1 = G_top(m21, 1, 2, m3, 1, 1, p, d)
    u2 = G_top(m3, 1, 1, m21, 2, 2, p, d)
    expected = G_top(m21, 1, 2, m21, 2, 2, p, d)
    assert (u1.op @ u2.op).distance(expected.op) <= 1e-9
    mismatched = G_top(m21, 1, 1, m21, 1, 1, p, d)
    assert (u1.op @ mismatched.op).frobenius_norm() <= 1e-9


def test_G_top_diagonal_units_are_rank_one_idempotents():
    p, d = 3, 3
    for (mu, i, j) in top_row_labels(p, d):
        u = G_top(mu, i, j, mu, i, j, p, d)
        assert abs(u.trace() - 1.0) <= 1e-10
        assert (u.op @ u.op).distance(u.op) <= 1e-9


def test_G_sub_zero_mode_rejected():
    ones = partition(1, 1, 1)
    with pytest.raises(ZeroMultiplicityError):
        G_sub(ones, ones, ones, ones, 1, 1, 1, 1, 1, 1, 3, 3)


def test_G_sub_composition_and_cross_block():
    p, d = 3, 3
    mu = partition(2, 1)
    b = B_matrix(mu, mu, d)
    kept = b.kept_modes()
    units = {}
    for i, j, ip, jp in itertools.product((1, 2), repeat=4):
        for b1 in kept:
            for b2 in kept:
                u = G_sub(mu, mu, mu, mu, i, j, ip, jp, b1, b2, p, d)
                units[(u.row_key, u.col_key)] = u
    for (ra, ca), ua in units.items():
        for (rb, cb), ub in units.items():
            prod = ua.op @ ub.op
            if ca == rb:
                assert prod.distance(units[(ra, cb)].op) <= 1e-9
            else:
                assert prod.frobenius_norm() <= 1e-9


def test_G_sub_diagonal_trace_is_d_squared_minus_one():
    for p, d in ((2, 2), (3, 3)):
        for (mu, nu, i, j, beta) in sub_row_labels(p, d):
            u = G_sub(mu, nu, mu, nu, i, j, i, j, beta, beta, p, d)
            assert abs(u.trace() - (d * d - 1)) <= 1e-9


def test_H_reconstruction_from_G_sub():
    p, d = 3, 3
    mu = partition(2, 1)
    b = B_matrix(mu, mu, d)
    alphas = b.alphas
    for a1_idx, a1 in enumerate(alphas):
        for a2_idx, a2 in enumerate(alphas):
            acc = FactoredOperator.zero(d ** (2 * p))
            for b1 in b.kept_modes():
                for b2 in b.kept_modes():
                    w = (
                        d
                        * np.sqrt(b.eigenvalues[b1 - 1] * b.eigenvalues[b2 - 1])
                        * b.diagonalizer[b1 - 1, a1_idx]
                        * b.diagonalizer[b2 - 1, a2_idx]
                    )
                    acc = acc + w * G_sub(mu, mu, mu, mu, 1, 2, 1, 2, b1, b2, p, d).op
            target = H_operator(mu, mu, mu, mu, 1, 2, 1, 2, a1, a2, p, d).op
            assert acc.distance(target) <= 1e-9


# ----------------------------------------------------------------------------
# composition relations of the spanning families


def test_composition_relations_top_sub_mixed():
    """All four product rules of the spanning families at (3, 3)."""
    p, d = 3, 3
    local = np.random.default_rng(17)
    shapes = schur_weyl_partitions(p, d)

    def rand_idx(mu):
        return int(local.integers(1, dim_irrep(mu) + 1))

    # 1) top x top
    for mu, nu, mt, nt in itertools.product(shapes, repeat=4):
        i, j, ip, jp = rand_idx(mu), rand_idx(mu), rand_idx(nu), rand_idx(nu)
        k, l, kp, lp = rand_idx(mt), rand_idx(mt), rand_idx(nt), rand_idx(nt)
        lhs = F_top(mu, i, j, nu, ip, jp, p, d).op @ F_top(mt, k, l, nt, kp, lp, p, d).op
        if nu == mt and ip == k and jp == l:
            expected = multiplicity(nu, d) * F_top(mu, i, j, nt, kp, lp, p, d).op
        else:
            expected = FactoredOperator.zero(d ** (2 * p))
        assert lhs.distance(expected) <= 1e-9
    # 2) top x sub and 3) sub x top and 4) sub x sub
    sub_labels = []
    for mu in shapes:
        for nu in shapes:
            for alpha in common_removals(mu, nu):
                sub_labels.append((mu, nu, alpha))
    for (mu, i, j) in [(m, rand_idx(m), rand_idx(m)) for m in shapes]:
        for (mt, nt, beta) in sub_labels:
            for (mtp, ntp, betap) in sub_labels:
                k, l = rand_idx(mt), rand_idx(nt)
                kp, lp = rand_idx(mtp), rand_idx(ntp)
                ip, jp = rand_idx(mu), rand_idx(mu)
                ftop = F_top(mu, i, j, mu, ip, jp, p, d)
                fsub = F_sub(mt, nt, mtp, ntp, k, l, kp, lp, beta, betap, p, d)
                lhs = ftop.op @ fsub.op
                if mu == mt and mu == nt and ip == k and jp == l:
                    scale = multiplicity(mu, d) / d
                    expected = (
                        scale * F_top(mu, i, j, mtp, kp, lp, p, d).op
                        if mtp == ntp
                        else FactoredOperator.zero(d ** (2 * p))
                    )
                else:
                    expected = FactoredOperator.zero(d ** (2 * p))
                assert lhs.distance(expected) <= 1e-9
                lhs = fsub.op @ ftop.op
                if mtp == mu and ntp == mu and kp == i and lp == j:
                    scale = multiplicity(mu, d) / d
                    expected = (
                        scale * F_top(mt, k, l, mu, ip, jp, p, d).op
                        if mt == nt
                        else FactoredOperator.zero(d ** (2 * p))
                    )
                else:
                    expected = FactoredOperator.zero(d ** (2 * p))
                assert lhs.distance(expected) <= 1e-9
    # 4) sub x sub, matching inner labels
    for (mu, nu, alpha) in sub_labels:
        for (mt, nt, beta) in sub_labels:
            for (m2, n2, beta2) in sub_labels:
                i, j = rand_idx(mu), rand_idx(nu)
                k, l = rand_idx(mt), rand_idx(nt)
                k2, l2 = rand_idx(m2), rand_idx(n2)
                f1 = F_sub(mu, nu, mt, nt, i, j, k, l, alpha, beta, p, d)
                f2 = F_sub(mt, nt, m2, n2, k, l, k2, l2, beta, beta2, p, d)
                ab = ab_fixed(mt, nt, beta, beta, d)
                expected = float(ab.b) * F_sub(mu, nu, m2, n2, i, j, k2, l2, alpha, beta2, p, d).op
                if mu == nu and m2 == n2:
                    expected = expected + float(ab.a) * F_top(mu, i, j, m2, k2, l2, p, d).op
                assert (f1.op @ f2.op).distance(expected) <= 1e-9


# ----------------------------------------------------------------------------
# reduction and the generator decomposition


def test_reduce_nonsingular_keeps_everything():
    p, d = 3, 3
    mu = partition(2, 1)
    b = B_matrix(mu, mu, d)
    gens = [
        [H_operator(mu, mu, mu, mu, 1, 1, 1, 1, a, ap, p, d).op for ap in b.alphas]
        for a in b.alphas
    ]
    reduced = reduce_singular_basis(b, gens)
    assert reduced.kept == (1, 2)
    for s in reduced.kept:
        for r in reduced.kept:
            for s2 in reduced.kept:
                for r2 in reduced.kept:
                    prod = reduced.units[(s, r)] @ reduced.units[(s2, r2)]
                    if r == s2:
                        assert prod.distance(reduced.units[(s, r2)]) <= 1e-9
                    else:
                        assert prod.frobenius_norm() <= 1e-9


def test_reduce_singular_discards_zero_mode():
    p, d = 3, 3
    ones = partition(1, 1, 1)
    b = B_matrix(ones, ones, d)
    assert b.singular
    gens = [[H_operator(ones, ones, ones, ones, 1, 1, 1, 1, b.alphas[0], b.alphas[0], p, d).op]]
    reduced = reduce_singular_basis(b, gens)
    assert reduced.kept == ()


def test_reduce_singular_partial_block_p4():
    p, d = 4, 3
    mu = partition(2, 1, 1)
    b = B_matrix(mu, mu, d)
    assert b.singular and b.nullity == 1
    gens = [
        [H_operator(mu, mu, mu, mu, 1, 1, 1, 1, a, ap, p, d).op for ap in b.alphas]
        for a in b.alphas
    ]
    reduced = reduce_singular_basis(b, gens)
    assert len(reduced.kept) == 1
    (kept,) = reduced.kept
    unit = reduced.units[(kept, kept)]
    assert (unit @ unit).distance(unit) <= 1e-9


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_V_top_reconstruction_from_units(p, d):
    shapes = schur_weyl_partitions(p, d)
    acc = FactoredOperator.zero(d ** (2 * p))
    for mu in shapes:
        for nu in shapes:
            w = float(np.sqrt(multiplicity(mu, d) * multiplicity(nu, d)))
            for i in range(1, dim_irrep(mu) + 1):
                for j in range(1, dim_irrep(nu) + 1):
                    acc = acc + w * G_top(mu, i, i, nu, j, j, p, d).op
    assert np.max(np.abs(acc.to_dense() - V_generator(p, p, d).matrix)) <= 1e-9


def test_singular_block_participates_after_reduction():
    """At d = p - 1 = 2 the two-row-shape block is singular; its zero mode
    must be dropped from the unit labels while the survivor composes."""
    p, d = 3, 2
    mu = partition(2, 1)
    b = B_matrix(mu, mu, d)
    assert b.entries == ((Fraction(1), Fraction(-1, 3)), (Fraction(-1, 3), Fraction(1, 9)))
    assert b.singular and b.nullity == 1 and b.kept_modes() == (2,)
    assert singularity_condition(mu, d)
    labels = sub_row_labels(p, d)
    assert all(beta == 2 for (m, n, i, j, beta) in labels if (m, n) == (mu, mu))
    units = {}
    for row in labels:
        for col in labels:
            u = G_sub(row[0], row[1], col[0], col[1], row[2], row[3], col[2], col[3], row[4], col[4], p, d)
            units[(u.row_key, u.col_key)] = u
    for (ra, ca), ua in units.items():
        for (rb, cb), ub in units.items():
            prod = ua.op @ ub.op
            if ca == rb:
                assert prod.distance(units[(ra, cb)].op) <= 1e-9
            else:
                assert prod.frobenius_norm() <= 1e-9


@pytest.mark.parametrize("p,d", [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_decompose_Vpm1(p, d):
    rec = decompose_Vpm1(p, d)
    assert rec.residual <= 1e-9
    if p > 1:
        assert all(t.coefficient == Fraction(1, d) for t in rec.terms)
