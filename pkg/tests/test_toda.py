from fractions import Fraction

import pytest

from bipencil.analyzer import AnalysisParams, analyze_point
from bipencil.errors import PreconditionError
from bipencil.exactlin import char_poly, mat_vec, poly_roots_hybrid, subspace_dim
from bipencil.pencil import compute_spectrum
from bipencil.poly import Poly
from bipencil.sampling import SamplingPolicy
from bipencil.scalars import float_mode
from bipencil.tensorfield import evaluate_pencil
from bipencil.toda import (TodaPoint, casimir_gradient, constant_lattice,
                           double_eigensolutions, kernel_product,
                           lax_matrix, lax_recursion_check, make_singular_point,
                           monodromy, random_point, toda_kernel_algebra_check,
                           toda_pencil, toda_pencil_at, toda_spectrum_via_lax,
                           wronskian, fold_to_covector)

F = Fraction


def test_pencil_tables_and_structure():
    p0, pinf = toda_pencil(3)
    d = 6
    a1, b1, b2 = Poly.variable(d, 0), Poly.variable(d, 3), Poly.variable(d, 4)
    assert p0.entry(0, 3) == a1 * b1              # {a1, b1} = a1 b1
    assert p0.entry(0, 4) == -(a1 * b2)           # {a1, b2} = -a1 b2
    assert p0.entry(3, 4) == -2 * a1 * a1         # {b1, b2} = -2 a1^2
    assert pinf.entry(0, 3) == a1
    assert pinf.entry(0, 4) == -a1


def test_pencil_jacobi_and_compatibility_small_n():
    for n in (2, 3):
        p0, pinf = toda_pencil(n)
        assert p0.verify_jacobi()
        assert pinf.verify_jacobi()
        assert p0.add(pinf).verify_jacobi()


def test_n2_wraparound_entries():
    # the two directed (a1, a2) contributions cancel; the (b1, b2) entries combine
    p0, _ = toda_pencil(2)
    assert p0.entry(0, 1).is_zero()
    d = 4
    a1, a2 = Poly.variable(d, 0), Poly.variable(d, 1)
    assert p0.entry(2, 3) == 2 * a2 * a2 - 2 * a1 * a1


def test_bihamiltonian_vector_field_identity():
    # P_0 dH_0 = P_inf dH_inf as an exact polynomial identity pins the table
    for n in (2, 3):
        p0, pinf = toda_pencil(n)
        d = 2 * n
        h0 = [Poly.zero(d)] * n + [Poly.constant(d, 1)] * n
        hinf = [2 * Poly.variable(d, i) for i in range(n)] + \
               [Poly.variable(d, n + i) for i in range(n)]
        for i in range(d):
            lhs = Poly.zero(d)
            rhs = Poly.zero(d)
            for j in range(d):
                lhs = lhs + p0.entry(i, j) * h0[j]
                rhs = rhs + pinf.entry(i, j) * hinf[j]
            assert lhs == rhs


def test_common_casimir_annihilation():
    sp = SamplingPolicy(8)
    for n in (2, 3, 4):
        p0, pinf = toda_pencil(n)
        for s in range(3):
            pt = random_point(n, 50 + s + 10 * n)
            p = evaluate_pencil(p0, pinf, pt.coordinates())
            dC = casimir_gradient(pt)
            for lam in (F(0), F(5, 3), F(-2)):
                assert all(v == 0 for v in mat_vec(p.matrix_at(lam), dC))


def test_phase_space_constraint():
    with pytest.raises(PreconditionError):
        TodaPoint(n=2, a=[F(1), F(-1)], b=[F(0), F(0)])
    with pytest.raises(PreconditionError):
        TodaPoint(n=1, a=[F(1)], b=[F(0)])


def test_lax_matrix_constant_lattice():
    pt = constant_lattice(2)
    L = lax_matrix(pt)
    assert all(L.matrix[i][i] == 0 for i in range(4))
    exact, _ = poly_roots_hybrid(char_poly(L.matrix))
    assert {(str(r), m) for r, m in exact} == {("2", 1), ("0", 2), ("-2", 1)}


def test_lax_shift_property():
    # adding a constant to b shifts the eigenvalues; the certified pencil
    # parameters move the opposite way (the lambda-slice at (a, b) is the
    # zero-slice at (a, b + lambda))
    c = F(5, 2)
    base = toda_spectrum_via_lax(constant_lattice(2))
    shifted = toda_spectrum_via_lax(constant_lattice(2, b=c))
    assert [e.lax_eigenvalue for e in base] == [e.lax_eigenvalue - c for e in shifted]
    assert [e.lam for e in shifted] == [e.lam - c for e in base]


def test_lax_doubles_n2_n3():
    spec2 = toda_spectrum_via_lax(constant_lattice(2))
    assert [(e.lam, e.which, e.multiplicity) for e in spec2] == [(F(0), "antiperiodic", 2)]
    spec3 = toda_spectrum_via_lax(constant_lattice(3))
    assert {(e.lax_eigenvalue, e.which) for e in spec3} == \
        {(F(1), "antiperiodic"), (F(-1), "periodic")}


def test_generic_point_empty_both_oracles():
    sp = SamplingPolicy(2)
    for n in (2, 3, 4):
        for s in (5, 6):
            pt = random_point(n, 90 + s + n)
            assert toda_spectrum_via_lax(pt) == []
            p = toda_pencil_at(pt)
            assert compute_spectrum(p, sp.spawn(s + n)).is_empty()


def test_pencil_lax_agreement_on_singular_points():
    sp = SamplingPolicy(3)
    for n, seed in ((2, 1), (3, 2), (4, 5)):
        pt = make_singular_point(n, seed=seed, antiperiodic=True, lam=F(1, 3))
        lax_vals = sorted(str(e.lam) for e in toda_spectrum_via_lax(pt))
        p = toda_pencil_at(pt)
        spec = compute_spectrum(p, sp.spawn(10 + n))
        assert sorted(str(e.lam) for e in spec.entries) == lax_vals


def test_kernel_product_properties():
    pt = constant_lattice(2)
    xi, eta, which = double_eigensolutions(pt, F(0))
    assert which == "antiperiodic"
    assert lax_recursion_check(pt, xi, F(0))
    p = toda_pencil_at(pt)
    X = fold_to_covector(pt, *kernel_product(xi, xi))
    Y = fold_to_covector(pt, *kernel_product(eta, eta))
    Z = fold_to_covector(pt, *kernel_product(xi, eta))
    dC = casimir_gradient(pt)
    for v in (X, Y, Z):
        assert all(x == 0 for x in mat_vec(p.matrix_at(F(0)), v))
    # dC completes an independent quadruple
    assert subspace_dim([X, Y, Z, dC]) == 4
    # bilinearity of the product
    s = [x + y for x, y in zip(xi, eta)]
    lhs = kernel_product(s, s)[0]
    rhs = [a + 2 * c + b for a, c, b in zip(kernel_product(xi, xi)[0],
                                            kernel_product(xi, eta)[0],
                                            kernel_product(eta, eta)[0])]
    assert lhs == rhs


def test_wronskian_properties():
    pt = constant_lattice(2)
    xi, eta, _ = double_eigensolutions(pt, F(0))
    assert wronskian(pt, xi, xi) == 0
    W = wronskian(pt, xi, eta)
    assert W != 0
    # constant across all double-period indices
    for i in range(4):
        assert wronskian(pt, xi, eta, i) == W


def test_monodromy_cases():
    pt = constant_lattice(2)
    M0 = monodromy(pt, F(0))          # double antiperiodic eigenvalue
    assert M0.kind == "minus_identity" and M0.determinant == 1
    Mg = monodromy(pt, F(7))
    assert Mg.kind == "generic" and Mg.determinant == 1 and Mg.trace not in (2, -2)
    ptp = make_singular_point(3, seed=4, antiperiodic=False, lam=F(0))
    Mp = monodromy(ptp, F(0))         # double periodic <-> +identity
    assert Mp.kind == "plus_identity" and Mp.determinant == 1


def test_kernel_algebra_check_singular_points():
    cases = [(constant_lattice(2), F(0)),
             (constant_lattice(3), F(-1)),
             (constant_lattice(3), F(1)),
             (make_singular_point(2, seed=1, antiperiodic=True, lam=F(2, 3)), F(2, 3)),
             (make_singular_point(4, seed=5, antiperiodic=True, lam=F(-1, 2)), F(-1, 2))]
    for pt, lam in cases:
        chk = toda_kernel_algebra_check(pt, lam)
        assert chk.ok(), (pt.n, lam, chk.mismatches)
        assert chk.wronskian != 0


def test_kernel_algebra_check_scaled_solutions():
    # the commutator identities scale correctly: rerunning the check after the
    # orthogonalization (which rescales eta) is exactly what the record does
    pt = make_singular_point(3, seed=2, antiperiodic=False, lam=F(0))
    chk = toda_kernel_algebra_check(pt, F(0))
    assert chk.ok() and chk.which == "periodic"


def test_analyze_singular_lattice_points_elliptic():
    for n, seed, lam in ((2, 1, F(2, 3)), (3, 2, F(0))):
        pt = make_singular_point(n, seed=seed, antiperiodic=(n == 2), lam=lam)
        p0, pinf = toda_pencil(n)
        rep = analyze_point(p0, pinf, pt.coordinates(),
                            AnalysisParams(seed=4, declared_rank=2 * n - 2))
        assert rep.verdict.kind == "NonDegenerate"
        t = rep.total_type
        assert t.kh == 0 and t.kf == 0 and t.ke >= 1
