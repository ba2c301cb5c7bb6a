from fractions import Fraction

import pytest

from bipencil.analyzer import (AnalysisParams, FunctionData, analyze_point,
                               casimir_variation, combine_function_data,
                               reparameterize_casimir_combination)
from bipencil.catalog import catalog_by_name
from bipencil.errors import PreconditionError, RankDeficientPointError
from bipencil.exactlin import (bilinear, mat_mul, mat_sub, mat_vec, mat_rank,
                               nullspace)
from bipencil.linearization import linearize
from bipencil.pencil import (compute_core, compute_spectrum, quotient_basis,
                             quotient_operator, recursion_operator)
from bipencil.poly import Poly
from bipencil.sampling import SamplingPolicy
from bipencil.scalars import INF
from bipencil.tensorfield import direct_sum, evaluate_pencil
from bipencil.toda import constant_lattice, toda_pencil

F = Fraction


def so3_pencil_at(point):
    e = catalog_by_name()["so3_shift"]
    return e, evaluate_pencil(e.field0, e.field_inf, point)


# ---------------------------------------------------------------------------
# analyze_point
# ---------------------------------------------------------------------------

def test_analyze_so3_elliptic():
    e = catalog_by_name()["so3_shift"]
    rep = analyze_point(e.field0, e.field_inf, e.point,
                        AnalysisParams(seed=1, declared_rank=2))
    assert rep.verdict.kind == "NonDegenerate"
    assert rep.total_type.as_tuple() == (1, 0, 0)
    assert rep.point_rank == 0
    assert rep.pencil_rank == 2 and rep.corank == 1


def test_analyze_so31_focus():
    e = catalog_by_name()["so31_shift"]
    rep = analyze_point(e.field0, e.field_inf, e.point,
                        AnalysisParams(seed=1, declared_rank=4))
    assert rep.verdict.kind == "NonDegenerate"
    assert rep.total_type.as_tuple() == (0, 0, 1)


def test_analyze_bad_example_degenerate():
    e = catalog_by_name()["bad_example"]
    rep = analyze_point(e.field0, e.field_inf, e.point,
                        AnalysisParams(seed=1, declared_rank=2))
    assert rep.verdict.kind == "Degenerate"
    assert rep.verdict.reason.startswith("RootsDependent")
    assert rep.total_type is None


def test_analyze_regular_point():
    e = catalog_by_name()["so3_shift"]
    rep = analyze_point(e.field0, e.field_inf, [F(1), F(1, 2), F(-1)],
                        AnalysisParams(seed=1, declared_rank=2))
    assert rep.verdict.kind == "Regular"
    assert rep.spectrum.is_empty() and rep.per_lambda == []


def test_analyze_refuses_rank_deficient_point():
    # the lattice field degenerates where all a_i vanish, so declaring the
    # generic rank makes such a point refusable
    p0, pinf = toda_pencil(2)
    with pytest.raises(RankDeficientPointError):
        analyze_point(p0, pinf, [F(0), F(0), F(1), F(2)],
                      AnalysisParams(seed=1, declared_rank=2))


def test_count_identity_on_reports():
    for name in ("so3_shift", "so4_shift", "diamond_shift", "so22_shift_saddle_center"):
        e = catalog_by_name()[name]
        rep = analyze_point(e.field0, e.field_inf, e.point,
                            AnalysisParams(seed=2, declared_rank=e.declared_rank))
        t = rep.total_type
        assert t.ke + t.kh + 2 * t.kf == rep.pencil_rank // 2 - rep.point_rank


def test_type_additivity_direct_sum():
    c = catalog_by_name()
    a, b = c["so3_shift"], c["sl2_shift_pos"]
    f0, finf = direct_sum(a.field0, a.field_inf, b.field0, b.field_inf)
    rep = analyze_point(f0, finf, a.point + b.point,
                        AnalysisParams(seed=3, declared_rank=4))
    assert rep.verdict.kind == "NonDegenerate"
    assert rep.total_type.as_tuple() == (1, 1, 0)


def test_report_json_shape():
    e = catalog_by_name()["diamond_shift"]
    rep = analyze_point(e.field0, e.field_inf, e.point,
                        AnalysisParams(seed=1, declared_rank=2))
    doc = rep.to_json_dict()
    assert doc["verdict"]["kind"] == "NonDegenerate"
    assert doc["spectrum"] == [{"lambda": "0", "kernel_dim": 4, "conjugate_pair": False}]
    assert doc["per_lambda"][0]["type"] == {"ke": 1, "kh": 0, "kf": 0}
    assert doc["total_type"] == {"ke": 1, "kh": 0, "kf": 0}


# ---------------------------------------------------------------------------
# Casimir variation operators
# ---------------------------------------------------------------------------

def symbolic_variation_oracle(field0, field_inf, lam, f_poly, point, xi):
    """Independent oracle: differentiate {f, g} symbolically for linear g."""
    d = field0.dim
    bracket_fn = Poly.zero(d)
    for i in range(d):
        for j in range(d):
            entry = field0.entry(i, j) + field_inf.entry(i, j) * lam
            if not entry.is_zero():
                bracket_fn = bracket_fn + entry * f_poly.diff(i) * F(xi[j])
    return [bracket_fn.diff(k).eval(point) for k in range(d)]


def test_variation_matches_symbolic_oracle_and_vanishes_on_kernel():
    e, _ = so3_pencil_at([F(1), F(2), F(3)])
    q = e.casimirs[0]
    point = [F(1), F(2), F(3)]
    p = evaluate_pencil(e.field0, e.field_inf, point)
    D = casimir_variation(p, q, F(0))
    # entry-by-entry agreement with the symbolic derivative of {f, g}
    for j in range(3):
        xi = [F(1) if t == j else F(0) for t in range(3)]
        oracle = symbolic_variation_oracle(e.field0, e.field_inf, F(0), q, point, xi)
        got = mat_vec(D.matrix, xi)
        assert got == oracle
    # vanishes on the kernel of the regular bracket (full-rank orbit point)
    ker = nullspace(p.matrix_at(F(0)))
    assert len(ker) == 1
    assert all(v == 0 for v in mat_vec(D.matrix, ker[0]))


def test_variation_hessian_identity_at_critical_point():
    # with df(x) = 0 the operator is the Hessian composed with the tensor
    e, p = so3_pencil_at([F(0), F(1), F(2)])
    f = Poly.monomial(3, (2, 0, 0))          # x^2, critical on the x = 0 plane
    D = casimir_variation(p, f, F(0))
    A = p.matrix_at(F(0))
    hess = [[h.eval(p.point) for h in row] for row in f.hessian()]
    for j in range(3):
        xi = [F(1) if t == j else F(0) for t in range(3)]
        pxi = mat_vec(A, xi)
        expected = [sum(hess[i][k] * pxi[i] for i in range(3)) for k in range(3)]
        assert mat_vec(D.matrix, xi) == expected


def test_variation_precondition():
    _, p = so3_pencil_at([F(1), F(2), F(3)])
    bad = Poly.variable(3, 0)                # dx is not in Ker P_0 here
    with pytest.raises(PreconditionError):
        casimir_variation(p, bad, F(0))


def toda2_families():
    """Exact polynomial Casimir families of the n = 2 lattice pencil.

    The block determinants of the doubled Lax matrix are Casimirs of the
    quadratic generator; composing with b -> b + alpha gives Casimirs of the
    alpha-slice.
    """
    d = 4
    a1, a2 = Poly.variable(d, 0), Poly.variable(d, 1)
    b1, b2 = Poly.variable(d, 2), Poly.variable(d, 3)
    det_per = b1 * b2 - (a1 + a2) * (a1 + a2)
    det_anti = b1 * b2 - (a1 - a2) * (a1 - a2)

    def family(q):
        def f(alpha):
            return q.shift([F(0), F(0), alpha, alpha])
        return f

    return family(det_per), family(det_anti)


def test_variation_restricted_to_kernel_is_ad():
    # at a singular lattice point the operator of a Casimir combination acts
    # on the kernel algebra as the bracket with an explicit kernel element
    pt = constant_lattice(2)
    point = pt.coordinates()
    p0, pinf = toda_pencil(2)
    p = evaluate_pencil(p0, pinf, point)
    sp = SamplingPolicy(4)
    core = compute_core(p, sp)
    spec = compute_spectrum(p, sp.spawn(1), core=core)
    lam = F(0)
    lp = linearize(p, core, lam, spectrum=spec)
    ker = nullspace(p.matrix_at(lam))

    per, anti = toda2_families()
    alphas = [F(1), F(3)]
    beta = F(2)
    coeffs = [F(1), F(-1, 2)]
    terms = []
    for al, c in zip(alphas, coeffs):
        q = anti(al)
        terms.append(FunctionData(
            gradient=[g.eval(point) for g in q.gradient()],
            hessian=[[h.eval(point) for h in row] for row in q.hessian()],
            description=f"anti-block determinant at {al}"))
    f = combine_function_data(terms, coeffs)
    D = casimir_variation(p, f, beta)

    # xi = sum c_i (beta - alpha_i) / (lam - alpha_i) * df_i, in kernel coordinates
    xi_ambient = [F(0)] * 4
    for al, c, t in zip(alphas, coeffs, terms):
        w = c * (beta - al) / (lam - al)
        xi_ambient = [x + w * g for x, g in zip(xi_ambient, t.gradient)]
    from bipencil.exactlin import coords_in_span
    xi_coords = coords_in_span(ker, xi_ambient)
    assert xi_coords is not None
    ad = lp.algebra.ad_matrix(xi_coords)
    D_on_kernel = D.restrict_to(ker)
    assert D_on_kernel == ad


def test_reparameterize_coefficients():
    assert reparameterize_casimir_combination([F(1), F(2)], F(0), F(0)) == [1, 1]
    got = reparameterize_casimir_combination([F(1), F(2)], F(0), F(5))
    assert got == [F(-1, 4), F(-2, 3)]
    # projective limit at beta = infinity: coefficients (alpha - alpha_i)
    got_inf = reparameterize_casimir_combination([F(1), F(2)], F(0), INF)
    assert got_inf == [F(-1), F(-2)]
    with pytest.raises(PreconditionError):
        reparameterize_casimir_combination([F(1)], F(0), F(1))


def test_reparameterize_operator_equality():
    # D_f P_alpha = D_g P_beta as exact matrices, including beta at infinity
    pt = constant_lattice(2)
    point = pt.coordinates()
    p0, pinf = toda_pencil(2)
    p = evaluate_pencil(p0, pinf, point)
    per, anti = toda2_families()
    alphas = [F(1), F(-2)]
    alpha = F(3)

    def make_terms():
        out = []
        for al in alphas:
            q = anti(al)
            out.append(FunctionData(
                gradient=[g.eval(point) for g in q.gradient()],
                hessian=[[h.eval(point) for h in row] for row in q.hessian()],
                description=f"f_{al}"))
        return out

    terms = make_terms()
    f = combine_function_data(terms, [F(1), F(1)])
    D_f = casimir_variation(p, f, alpha)
    for beta in (F(5), F(-1, 3), INF):
        coeffs = reparameterize_casimir_combination(alphas, alpha, beta)
        g = combine_function_data(terms, coeffs)
        # claim 1: dg(x) lies in the kernel of the target bracket
        assert all(v == 0 for v in mat_vec(p.matrix_at(beta), g.gradient))
        # claim 2: exact operator equality
        D_g = casimir_variation(p, g, beta)
        assert D_f.matrix == D_g.matrix


def test_variation_skew_and_commutes_with_recursion():
    pt = constant_lattice(2)
    point = pt.coordinates()
    p0, pinf = toda_pencil(2)
    p = evaluate_pencil(p0, pinf, point)
    per, anti = toda2_families()
    q = anti(F(2))
    f = FunctionData(gradient=[g.eval(point) for g in q.gradient()],
                     hessian=[[h.eval(point) for h in row] for row in q.hessian()])
    beta = F(2)
    D = casimir_variation(p, f, beta)
    # skew-symmetry with respect to two distinct brackets of the pencil
    for lam in (beta, F(7)):
        A = p.matrix_at(lam)
        lhs = mat_mul([list(r) for r in zip(*D.matrix)], A)   # D^T A
        rhs = mat_mul(A, D.matrix)
        assert all(a + b == 0 for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb))
    # commutation with a recursion operator on the quotient
    sp = SamplingPolicy(6)
    core = compute_core(p, sp)
    qb = quotient_basis(p, core)
    R = recursion_operator(p, core, F(0), INF, qbasis=qb).matrix
    Dq = quotient_operator(D.matrix, qb, core.basis)
    assert mat_mul(Dq, R) == mat_mul(R, Dq)
