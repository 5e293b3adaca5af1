"""Named verification suites driven by the command line front end.

Each suite returns a list of check results with the worst observed residual,
so the CLI can emit a machine-readable report and a pass/fail exit code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import matrix_units as mx
from . import spectra
from .ideal_units import (
    B_matrix,
    G_sub,
    G_top,
    H_operator,
    ab_general,
    decompose_Vpm1,
    factored_V,
    reduce_singular_basis,
    singularity_condition,
    sub_row_labels,
    top_row_labels,
    trace_with_V_sub,
    trace_with_V_top,
)
from .lowrank import FactoredOperator
from .partitions import (
    Partition,
    count_semistandard_tableaux,
    dim_irrep,
    enumerate_partitions,
    enumerate_standard_tableaux,
    multiplicity,
    remove_box,
    schur_weyl_partitions,
)
from .symgroup import (
    enumerate_group,
    prir_map,
    prir_position,
    restriction_block_check,
    transposition,
    young_orthogonal_rep,
)
from .tensorspace import (
    DenseOperator,
    V_generator,
    V_outer_pair,
    embed_operator,
    permutation_operator,
    sandwich_reduce,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


def _result(name: str, residual: float, tol: float, detail: str = "") -> CheckResult:
    return CheckResult(name, residual <= tol, float(residual), tol, detail)


def _bool_result(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, ok, 0.0 if ok else 1.0, 0.0, detail)


# ----------------------------------------------------------------------------


def suite_partitions(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    bad = sum(
        1
        for q in range(1, 7)
        for mu in enumerate_partitions(q)
        if dim_irrep(mu) != len(enumerate_standard_tableaux(mu))
    )
    out = [_bool_result("hook_length_vs_tableau_count_p<=6", bad == 0)]
    bad = sum(
        1
        for q in range(1, 6)
        for dd in range(1, 5)
        for mu in enumerate_partitions(q)
        if multiplicity(mu, dd) != count_semistandard_tableaux(mu, dd)
    )
    out.append(_bool_result("hook_content_vs_semistandard_count_p<=5_d<=4", bad == 0))
    bad = sum(
        1
        for q in range(1, 6)
        for dd in range(1, 5)
        if sum(dim_irrep(mu) * multiplicity(mu, dd) for mu in enumerate_partitions(q)) != dd**q
    )
    out.append(_bool_result("schur_weyl_dimension_sum_p<=5_d<=4", bad == 0))
    ok = True
    for q in range(1, 6):
        for mu in enumerate_partitions(q):
            from .partitions import add_box

            ok &= all(mu in add_box(a) for a in remove_box(mu))
            ok &= all(mu in remove_box(b) for b in add_box(mu))
    out.append(_bool_result("add_remove_box_inverse_p<=5", ok))
    return out


def suite_representations(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    tol = 1e-12 if tol is None else tol
    q = min(p, 4)
    worst_orth = 0.0
    worst_hom = 0.0
    group = enumerate_group(q)
    for mu in enumerate_partitions(q):
        mats = {s: young_orthogonal_rep(mu, s).matrix for s in group}
        n = dim_irrep(mu)
        for s, m in mats.items():
            worst_orth = max(worst_orth, float(np.max(np.abs(m.T @ m - np.eye(n)))))
        for s in group:
            for t in group:
                worst_hom = max(worst_hom, float(np.max(np.abs(mats[s] @ mats[t] - mats[s * t]))))
    out = [
        _result(f"orthogonality_S{q}", worst_orth, tol),
        _result(f"homomorphism_S{q}", worst_hom, tol),
    ]
    worst = 0.0
    qq = min(p, 4)
    group = enumerate_group(qq)
    fact = len(group)
    for alpha in enumerate_partitions(qq):
        for beta in enumerate_partitions(qq):
            da, db = dim_irrep(alpha), dim_irrep(beta)
            acc = np.zeros((da, da, db, db))
            for s in group:
                acc += np.einsum(
                    "ij,kl->ijkl",
                    young_orthogonal_rep(alpha, s.inverse()).matrix,
                    young_orthogonal_rep(beta, s).matrix,
                )
            expected = np.zeros_like(acc)
            if alpha == beta:
                for i in range(da):
                    for j in range(da):
                        expected[i, j, j, i] = fact / da
            worst = max(worst, float(np.max(np.abs(acc - expected))))
    out.append(_result(f"orthogonality_relation_S{qq}", worst, tol))
    ok = True
    for q2 in range(2, 6):
        gens = [transposition(q2, k, k + 1) for k in range(1, q2 - 1)]
        for mu in enumerate_partitions(q2):
            for g in gens:
                ok &= restriction_block_check(mu, g)
    out.append(_bool_result("subgroup_adaptation_p<=5", ok))
    return out


def suite_tensorspace(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    tol = 1e-10 if tol is None else tol
    rng = np.random.default_rng(11)
    out = []
    worst = 0.0
    for dd in (2, 3, 4):
        x = rng.standard_normal((dd, dd))
        psi = np.zeros(dd * dd)
        for i in range(dd):
            psi[i * dd + i] = 1.0 / np.sqrt(dd)
        worst = max(
            worst,
            float(np.max(np.abs(np.kron(x, np.eye(dd)) @ psi - np.kron(np.eye(dd), x.T) @ psi))),
        )
    out.append(_result("ping_pong_d<=4", worst, 1e-12))
    pp, dd = 2, 2
    v = V_generator(pp, pp, dd)
    worst = 0.0
    for _ in range(5):
        ops = [rng.standard_normal((dd, dd)) for _ in range(2 * pp)]
        a = np.kron(ops[0], ops[1])
        b = np.kron(ops[2], ops[3])
        lhs = DenseOperator(dd, 2 * pp, np.kron(a, b)) @ v
        core = np.kron(ops[0] @ ops[3].T, ops[1] @ ops[2].T)
        rhs = DenseOperator(dd, 2 * pp, np.kron(core, np.eye(dd**pp))) @ v
        worst = max(worst, lhs.distance(rhs))
    out.append(_result("generalized_ping_pong_p2_d2", worst, tol))
    worst = 0.0
    for pq, dq in ((2, 2), (2, 3), (3, 2), (3, 3)):
        vq = V_generator(pq, pq, dq)
        x = rng.standard_normal((dq**pq, dq**pq))
        xe = embed_operator(DenseOperator(dq, pq, x), range(1, pq + 1), 2 * pq)
        worst = max(worst, (vq @ xe @ vq).distance(float(np.trace(x)) * vq))
    out.append(_result("sandwich_fact_p<=3", worst, tol))
    worst = 0.0
    for pq, dq in ((2, 2), (3, 2), (min(p, 3), min(d, 3))):
        v1 = V_outer_pair(pq, dq)
        worst = max(worst, (V_generator(pq, pq - 1, dq) @ v1).distance(V_generator(pq, pq, dq)))
        worst = max(worst, (V_generator(pq, pq, dq) @ v1).distance(dq * V_generator(pq, pq, dq)))
    out.append(_result("generator_products", worst, tol))
    worst = 0.0
    for pq in (2, 3):
        dq = 2
        vq = V_generator(pq, pq - 1, dq)
        for _ in range(10):
            x = DenseOperator(dq, 2 * pq, rng.standard_normal((dq ** (2 * pq), dq ** (2 * pq))))
            xt = sandwich_reduce(x)
            rhs = embed_operator(xt, [1, 2 * pq], 2 * pq) @ vq
            worst = max(worst, (vq @ x @ vq).distance(rhs))
    out.append(_result("sandwich_reduce_identity", worst, tol))
    return out


def suite_matrix_units(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    tol = 1e-10 if tol is None else tol
    out = []
    worst = 0.0
    for pq in (2, min(p, 3)):
        for dq in (2, min(d, 3)):
            units = [
                mx.E_unit(mu, i, j, dq)
                for mu in enumerate_partitions(pq)
                for i in range(1, dim_irrep(mu) + 1)
                for j in range(1, dim_irrep(mu) + 1)
            ]
            for a in units:
                expected_tr = multiplicity(a.mu, dq) if a.i == a.j else 0
                worst = max(worst, abs(a.operator.trace() - expected_tr))
                for b in units:
                    prod = a.operator @ b.operator
                    if a.mu == b.mu and a.j == b.i:
                        expected = mx.E_unit(a.mu, a.i, b.j, dq).operator
                    else:
                        expected = DenseOperator.zeros(dq, pq)
                    worst = max(worst, prod.distance(expected))
    out.append(_result("unit_composition_and_trace_p<=3_d<=3", worst, tol))
    worst = 0.0
    for dq in (2, 3):
        for sigma in enumerate_group(3):
            acc = DenseOperator.zeros(dq, 3)
            for mu in enumerate_partitions(3):
                phi = young_orthogonal_rep(mu, sigma).matrix
                for i in range(1, dim_irrep(mu) + 1):
                    for j in range(1, dim_irrep(mu) + 1):
                        acc = acc + phi[i - 1, j - 1] * mx.E_unit(mu, i, j, dq).operator
            worst = max(worst, acc.distance(permutation_operator(sigma, dq, 3)))
    out.append(_result("permutation_resolution_S3", worst, tol))
    worst = mx.completeness_defect(min(p, 3), d)
    out.append(_result("projector_completeness", worst, tol))
    worst = 0.0
    pq, dq = 2, 2
    v = V_generator(pq, pq, dq)
    for mu in schur_weyl_partitions(pq, dq):
        for nu in schur_weyl_partitions(pq, dq):
            dm, dn = dim_irrep(mu), dim_irrep(nu)
            for i, j, k, l in itertools.product(
                range(1, dm + 1), range(1, dm + 1), range(1, dn + 1), range(1, dn + 1)
            ):
                lhs = (mx.embed_left(mx.E_unit(mu, i, j, dq), pq) @ mx.embed_right(mx.E_unit(nu, k, l, dq), pq)) @ v
                if mu == nu and j == l:
                    rhs = mx.embed_left(mx.E_unit(mu, i, k, dq), pq) @ v
                else:
                    rhs = DenseOperator.zeros(dq, 2 * pq)
                worst = max(worst, lhs.distance(rhs))
    out.append(_result("wall_embedding_identity_p2_d2", worst, tol))
    try:
        mx.branching_expand(Partition((1,)), 1, 1, 2, 2)
        mx.branching_expand(Partition((2,)), 1, 1, 3, 3)
        pmap = prir_map(Partition((2, 1)))
        mx.partial_trace_E(Partition((2, 1)), pmap[0], pmap[0], 3)
        mx.partial_trace_E(Partition((2, 1)), pmap[0], pmap[1], 3)
        out.append(_bool_result("branching_and_partial_trace_forms", True))
    except ArithmeticError as exc:
        out.append(_bool_result("branching_and_partial_trace_forms", False, str(exc)))
    return out


def suite_coefficients(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    tol = 1e-10 if tol is None else tol
    out = []
    ok = True
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
                            ok &= ab.identity_value(d) == expected
    out.append(_bool_result("ad_plus_b_exact", ok))
    rng = np.random.default_rng(5)
    from .matrix_units import left_side_matrix, right_side_matrix

    vpm1 = V_generator(p, p - 1, d).matrix
    vp = V_generator(p, p, d).matrix
    shapes = schur_weyl_partitions(p, d)
    worst = 0.0
    for _ in range(50):
        mu = shapes[rng.integers(len(shapes))]
        nu = shapes[rng.integers(len(shapes))]
        pm_mu, pm_nu = prir_map(mu), prir_map(nu)
        rm, cm = pm_mu[rng.integers(len(pm_mu))], pm_mu[rng.integers(len(pm_mu))]
        rn, cn = pm_nu[rng.integers(len(pm_nu))], pm_nu[rng.integers(len(pm_nu))]
        a_mat = left_side_matrix(mu, prir_position(mu, rm.alpha, rm.i_alpha), prir_position(mu, cm.alpha, cm.i_alpha), d)
        b_mat = right_side_matrix(nu, prir_position(nu, rn.alpha, rn.i_alpha), prir_position(nu, cn.alpha, cn.i_alpha), d)
        x = np.kron(a_mat, b_mat)
        ab = ab_general(
            mu, nu,
            (rm.alpha, rm.i_alpha), (cm.alpha, cm.i_alpha),
            (rn.alpha, rn.i_alpha), (cn.alpha, cn.i_alpha), d,
        )
        res = np.max(np.abs(vpm1 @ x @ vpm1 - float(ab.a) * vp - float(ab.b) * vpm1))
        worst = max(worst, float(res))
    out.append(_result("sandwich_decomposition_50_random", worst, tol))
    worst = 0.0
    vp_f = factored_V(p, p, d)
    vpm1_f = factored_V(p, p - 1, d)
    for mu in shapes:
        for nu in shapes:
            for rm in prir_map(mu):
                for cm in prir_map(mu):
                    a_mat = left_side_matrix(mu, prir_position(mu, rm.alpha, rm.i_alpha), prir_position(mu, cm.alpha, cm.i_alpha), d)
                    for rn in prir_map(nu):
                        for cn in prir_map(nu):
                            b_mat = right_side_matrix(nu, prir_position(nu, rn.alpha, rn.i_alpha), prir_position(nu, cn.alpha, cn.i_alpha), d)
                            x = np.kron(a_mat, b_mat)
                            args = (mu, nu, (rm.alpha, rm.i_alpha), (cm.alpha, cm.i_alpha), (rn.alpha, rn.i_alpha), (cn.alpha, cn.i_alpha), d)
                            worst = max(worst, abs(vp_f.trace_against_dense(x) - float(trace_with_V_top(*args))))
                            worst = max(worst, abs(vpm1_f.trace_against_dense(x) - float(trace_with_V_sub(*args))))
    out.append(_result("trace_rules_exhaustive", worst, tol))
    return out


def suite_composition(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    tol = 1e-9 if tol is None else tol
    out = []
    rows = top_row_labels(p, d)
    units = {}
    for (mu, i, j) in rows:
        for (nu, ip, jp) in rows:
            u = G_top(mu, i, j, nu, ip, jp, p, d)
            units[(u.row_key, u.col_key)] = u
    worst = 0.0
    for (ra, ca), ua in units.items():
        for (rb, cb), ub in units.items():
            prod = ua.op @ ub.op
            if ca == rb:
                dist = prod.distance(units[(ra, cb)].op)
            else:
                dist = prod.frobenius_norm()
            worst = max(worst, dist)
    out.append(_result(f"G_top_all_pairs_{len(units)}_units", worst, tol))
    srows = sub_row_labels(p, d)
    sunits = {}
    for (mu, nu, i, j, beta) in srows:
        for (mup, nup, ip, jp, betap) in srows:
            u = G_sub(mu, nu, mup, nup, i, j, ip, jp, beta, betap, p, d)
            sunits[(u.row_key, u.col_key)] = u
    worst = 0.0
    for (ra, ca), ua in sunits.items():
        for (rb, cb), ub in sunits.items():
            prod = ua.op @ ub.op
            if ca == rb:
                dist = prod.distance(sunits[(ra, cb)].op)
            else:
                dist = prod.frobenius_norm()
            worst = max(worst, dist)
    out.append(_result(f"G_sub_all_pairs_{len(sunits)}_units", worst, tol))
    return out


def suite_generators(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    tol = 1e-9 if tol is None else tol
    out = []
    shapes = schur_weyl_partitions(p, d)
    acc = FactoredOperator.zero(d ** (2 * p))
    for mu in shapes:
        for nu in shapes:
            w = float(np.sqrt(multiplicity(mu, d) * multiplicity(nu, d)))
            for i in range(1, dim_irrep(mu) + 1):
                for j in range(1, dim_irrep(nu) + 1):
                    acc = acc + w * G_top(mu, i, i, nu, j, j, p, d).op
    res = float(np.max(np.abs(acc.to_dense() - V_generator(p, p, d).matrix)))
    out.append(_result("V_top_from_units", res, tol))
    rec = decompose_Vpm1(p, d)
    out.append(_result(f"V_sub_from_H_terms_{len(rec.terms)}_terms", rec.residual, tol))
    return out


def suite_eigenoperators(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    trace_tol = 1e-10 if tol is None else tol
    tol = 1e-9 if tol is None else tol
    out = []
    rho_sub = spectra.rho(p - 1, p, d).matrix
    rho_top = spectra.rho(p, p, d).matrix
    analytic = {
        (rec.ideal, rec.mu, rec.nu, rec.interior): rec
        for rec in spectra.analytic_overlaps(p, d)
        if rec.rho_level == p - 1
    }
    worst = 0.0
    for (mu, i, j) in top_row_labels(p, d):
        unit = G_top(mu, i, j, mu, i, j, p, d)
        lam = analytic[(p, mu, mu, None)].eigenvalue
        shifted = unit.op.apply_dense_left(rho_sub) - lam * unit.op
        worst = max(worst, shifted.frobenius_norm())
    for (mu, nu, i, j, beta) in sub_row_labels(p, d):
        unit = G_sub(mu, nu, mu, nu, i, j, i, j, beta, beta, p, d)
        lam = analytic[(p - 1, mu, nu, beta)].eigenvalue
        shifted = unit.op.apply_dense_left(rho_sub) - lam * unit.op
        worst = max(worst, shifted.frobenius_norm())
    out.append(_result("eigen_operator_property", worst, tol))
    worst = 0.0
    srows = sub_row_labels(p, d)
    for (mu, nu, i, j, beta) in srows:
        for (mup, nup, ip, jp, betap) in srows:
            unit = G_sub(mu, nu, mup, nup, i, j, ip, jp, beta, betap, p, d)
            worst = max(worst, abs(unit.op.trace_against_dense(rho_top)))
    out.append(_result("rho_top_annihilates_second_ideal", worst, trace_tol))
    worst = 0.0
    for (mu, nu, i, j, beta) in srows:
        for (mup, nup, ip, jp, betap) in srows:
            if (mu, nu, i, j, beta) == (mup, nup, ip, jp, betap):
                continue
            unit = G_sub(mu, nu, mup, nup, i, j, ip, jp, beta, betap, p, d)
            worst = max(worst, abs(unit.op.trace_against_dense(rho_sub)))
    for (mu, i, j) in top_row_labels(p, d):
        for (nu, ip, jp) in top_row_labels(p, d):
            if (mu, i, j) == (nu, ip, jp):
                continue
            unit = G_top(mu, i, j, nu, ip, jp, p, d)
            worst = max(worst, abs(unit.op.trace_against_dense(rho_sub)))
    out.append(_result("block_structure_off_diagonal_zero", worst, trace_tol))
    v = V_generator(p, p - 1, d)
    out.append(
        _result("twirl_trace_conservation", abs(spectra.rho(p - 1, p, d).trace() - v.trace()), 1e-10)
    )
    return out


def suite_bmatrix(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    out = []
    b = B_matrix(Partition((2, 1)), Partition((2, 1)), 3)
    fixture_ok = (
        sorted(str(v) for row in b.entries for v in row) == sorted(["7/3", "-1/3", "-1/3", "1"])
        and abs(b.eigenvalues[0] - (5 - np.sqrt(5)) / 3) < 1e-12
        and abs(b.eigenvalues[1] - (5 + np.sqrt(5)) / 3) < 1e-12
        and b.determinant() == Fraction(20, 9)
    )
    out.append(_bool_result("b_matrix_fixture_(2,1)_d3", fixture_ok))
    singular_expected = {
        (3, (1, 1, 1)): True,
        (4, (2, 1, 1)): True,
        (4, (2, 2)): False,
        (5, (2, 2, 1)): True,
        (5, (3, 1, 1)): True,
        (5, (3, 2)): False,
        (6, (2, 2, 2)): True,
        (6, (3, 2, 1)): True,
        (6, (4, 1, 1)): True,
        (6, (3, 3)): False,
        (6, (4, 2)): False,
        (6, (5, 1)): False,
        (6, (6,)): False,
    }
    ok = all(singularity_condition(Partition(mu), 3) == expect for (q, mu), expect in singular_expected.items())
    ok &= B_matrix(Partition((2, 2)), Partition((2, 2)), 3).determinant() == Fraction(5, 16)
    ok &= B_matrix(Partition((3, 2)), Partition((3, 2)), 3).determinant() == Fraction(75, 16)
    out.append(_bool_result("appendix_examples_d3", ok))
    ok = True
    for q in range(2, 7):
        for dd in (2, 3, 4):
            for mu in enumerate_partitions(q):
                if multiplicity(mu, dd) == 0:
                    bm = B_matrix(mu, mu, dd)
                    ok &= all(v == 0 for row in bm.entries for v in row)
                    continue
                bm = B_matrix(mu, mu, dd)
                ok &= (bm.determinant() == 0) == singularity_condition(mu, dd)
    out.append(_bool_result("integer_condition_vs_determinant_p<=6", ok))
    ok = True
    for q in range(2, 7):
        for dd in (2, 3, 4):
            for mu in enumerate_partitions(q):
                m = multiplicity(mu, dd)
                if m == 0:
                    continue
                alphas = remove_box(mu)
                xs = [Fraction(dd * m, multiplicity(a, dd)) for a in alphas]
                k = len(xs)
                esp = [Fraction(0)] * (k + 1)
                esp[0] = Fraction(1)
                for x in xs:
                    for deg in range(k, 0, -1):
                        esp[deg] += x * esp[deg - 1]
                predicted = (esp[k] - esp[k - 1]) * Fraction(m, dd * (dd * dd - 1)) ** k
                bm = B_matrix(mu, mu, dd)
                ok &= bm.determinant() == predicted
    out.append(_bool_result("determinant_symmetric_polynomial_identity", ok))
    return out


def suite_table1(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    tol = 1e-6 if tol is None else tol
    out = []
    for level in (p, p - 1):
        brute = spectra.spectrum_table(p, d, level, "brute")
        analytic = spectra.spectrum_table(p, d, level, "analytic")
        out.append(
            _bool_result(
                f"analytic_matches_brute_level_{level}",
                brute.matches(analytic, tol),
                f"brute={brute.merged()}",
            )
        )
    if (p, d) == (3, 3):
        printed = {
            3: [(1.0, 1), (4.0, 4), (10.0, 1)],
            2: [
                (0.1667, 32),
                (0.2303, 32),
                (0.3333, 1),
                (0.6030, 32),
                (0.8333, 32),
                (1.3333, 4),
                (1.6667, 8),
                (3.3333, 1),
            ],
        }
        for level, expected in printed.items():
            merged = spectra.spectrum_table(p, d, level, "brute").merged()
            ok = len(merged) == len(expected) and all(
                abs(v - ve) <= 1e-4 and m == me for (v, m), (ve, me) in zip(merged, expected)
            )
            out.append(_bool_result(f"printed_table_level_{level}", ok))
    return out


def suite_reduction(p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    tol = 1e-9 if tol is None else tol
    out = []
    cases = [(Partition((2, 1)), 3, 3), (Partition((1, 1, 1)), 3, 3)]
    if p == 4 or (p, d) == (3, 3):
        cases.append((Partition((2, 1, 1)), 4, 3))
    worst = 0.0
    ok = True
    for mu, pp, dd in cases:
        if dd ** (2 * pp) > 2**14:
            continue
        bm = B_matrix(mu, mu, dd)
        if bm.vanishing or bm.size == 0:
            continue
        alphas = bm.alphas
        gens = [
            [H_operator(mu, mu, mu, mu, 1, 1, 1, 1, a, ap, pp, dd).op for ap in alphas]
            for a in alphas
        ]
        reduced = reduce_singular_basis(bm, gens)
        ok &= len(reduced.kept) == bm.size - bm.nullity
        for s in reduced.kept:
            for r in reduced.kept:
                for s2 in reduced.kept:
                    for r2 in reduced.kept:
                        prod = reduced.units[(s, r)] @ reduced.units[(s2, r2)]
                        if r == s2:
                            dist = prod.distance(reduced.units[(s, r2)])
                        else:
                            dist = prod.frobenius_norm()
                        worst = max(worst, dist)
    out.append(_bool_result("reduction_keeps_rank", ok))
    out.append(_result("reduced_units_composition", worst, tol))
    return out


SUITES = {
    "partitions": suite_partitions,
    "representations": suite_representations,
    "tensorspace": suite_tensorspace,
    "matrix_units": suite_matrix_units,
    "coefficients": suite_coefficients,
    "composition": suite_composition,
    "generators": suite_generators,
    "eigenoperators": suite_eigenoperators,
    "bmatrix": suite_bmatrix,
    "reduction": suite_reduction,
    "table1": suite_table1,
}


NEEDS_SECOND_IDEAL = {"coefficients", "composition", "generators", "eigenoperators", "table1", "reduction"}


def run_suite(name: str, p: int, d: int, tol: float | None = None) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in SUITES:
            if key in NEEDS_SECOND_IDEAL and p < 2:
                continue
            results.extend(SUITES[key](p, d, tol))
        return results
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    if name in NEEDS_SECOND_IDEAL and p < 2:
        raise ValueError(f"suite {name!r} needs p >= 2")
    return SUITES[name](p, d, tol)
