"""Full singular-point verdicts and the Casimir-variation operator machinery.

analyze_point runs: evaluate -> rank/corank -> spectrum -> (empty = Regular)
-> core -> diagonalizability -> per-spectrum-value linearization,
non-degeneracy, type and block classification -> totals.  Degeneracy reasons
are machine-readable; float-mode borderline decisions attach warnings and
never silently flip a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, RankDeficientPointError
from .exactlin import bilinear, mat_vec, mat_rank
from .liealg import COMPLEX, LinearPencil
from .linearization import linearize
from .pencil import (IsotropicCore, Spectrum, compute_core, compute_spectrum,
                     is_diagonalizable, pencil_rank_corank)
from .poly import Poly
from .roots import (BlockDecomposition, RootData, WilliamsonType, classify,
                    is_nondegenerate_linear, linear_pencil_type,
                    root_decomposition)
from .sampling import SamplingPolicy
from .scalars import (EXACT, Mode, as_complex, float_mode, format_scalar,
                      is_exact_scalar, is_inf, simplify_scalar)
from .tensorfield import PencilAtPoint, PoissonTensorField, evaluate_pencil


@dataclass
class AnalysisParams:
    mode: str = "exact"              # "exact" | "float"
    tolerance: float = 1e-9
    seed: int = 0
    declared_rank: int | None = None
    kronecker_spot_check: bool = True

    def arithmetic(self) -> Mode:
        return EXACT if self.mode == "exact" else float_mode(self.tolerance)


@dataclass
class PerLambdaReport:
    lam: object
    kernel_dim: int
    paired: bool
    diagonalizable: bool | None = None
    linear_nondegenerate: bool | None = None
    degeneracy_reason: str | None = None
    type: WilliamsonType | None = None
    blocks: BlockDecomposition | None = None

    def to_json_dict(self):
        return {
            "lambda": format_scalar(self.lam),
            "kernel_dim": self.kernel_dim,
            "conjugate_pair": self.paired,
            "diagonalizable": self.diagonalizable,
            "linear_nondegenerate": self.linear_nondegenerate,
            "degeneracy_reason": self.degeneracy_reason,
            "type": self.type.to_json_dict() if self.type else None,
            "blocks": self.blocks.to_json_dict() if self.blocks else None,
        }


@dataclass
class Verdict:
    kind: str                 # "Regular" | "NonDegenerate" | "Degenerate"
    reason: str | None = None

    def to_json_dict(self):
        return {"kind": self.kind, "reason": self.reason}


@dataclass
class SingularPointReport:
    point: list
    pencil_rank: int
    corank: int
    spectrum: Spectrum
    verdict: Verdict
    per_lambda: list
    total_type: WilliamsonType | None
    point_rank: int
    warnings: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "point": [format_scalar(x) for x in self.point],
            "pencil_rank": self.pencil_rank,
            "corank": self.corank,
            "spectrum": [{"lambda": format_scalar(e.lam), "kernel_dim": e.kernel_dim,
                          "conjugate_pair": e.paired} for e in self.spectrum.entries],
            "verdict": self.verdict.to_json_dict(),
            "per_lambda": [p.to_json_dict() for p in self.per_lambda],
            "total_type": self.total_type.to_json_dict() if self.total_type else None,
            "point_rank": self.point_rank,
            "warnings": list(self.warnings),
        }


def analyze_point(field0: PoissonTensorField, field_inf: PoissonTensorField,
                  point, params: AnalysisParams | None = None) -> SingularPointReport:
    """Decide whether the induced singularity at ``point`` is non-degenerate,
    and of which Williamson type."""
    params = params or AnalysisParams()
    mode = params.arithmetic()
    warnings: list = []
    sampler = SamplingPolicy(params.seed)

    pt = [Fraction(x) if isinstance(x, int) else x for x in point]
    p = evaluate_pencil(field0, field_inf, pt, exact_required=mode.is_exact)

    rank, corank = pencil_rank_corank(p, sampler.spawn(1), mode, warnings)
    _certify_pencil_rank(field0, field_inf, p, rank, params, sampler, mode, warnings)
    if params.kronecker_spot_check:
        _kronecker_spot_check(field0, field_inf, pt, sampler.spawn(5), mode, warnings)

    core = compute_core(p, sampler.spawn(2), mode, rank=rank)
    point_rank = core.dim - corank
    spectrum = compute_spectrum(p, sampler.spawn(3), mode, core=core,
                                warnings=warnings, declared_rank=params.declared_rank)

    if spectrum.is_empty():
        return SingularPointReport(
            point=pt, pencil_rank=rank, corank=corank, spectrum=spectrum,
            verdict=Verdict("Regular"), per_lambda=[], total_type=None,
            point_rank=point_rank, warnings=warnings)

    diag_flags, all_diag = is_diagonalizable(p, core, spectrum, mode, sampler.spawn(4))

    per_lambda = []
    verdict = Verdict("NonDegenerate")
    total = WilliamsonType()
    for entry in spectrum.entries:
        rep = PerLambdaReport(lam=entry.lam, kernel_dim=entry.kernel_dim,
                              paired=entry.paired)
        rep.diagonalizable = diag_flags.get(_key(entry.lam), None)
        per_lambda.append(rep)
        if not rep.diagonalizable:
            rep.degeneracy_reason = f"NonDiagonalizable({format_scalar(entry.lam)})"
            if verdict.kind != "Degenerate":
                verdict = Verdict("Degenerate", rep.degeneracy_reason)
            continue
        lp = linearize(p, core, entry.lam, mode, spectrum=spectrum)
        data = root_decomposition(lp, mode)
        ok, reason = is_nondegenerate_linear(lp, mode, data)
        rep.linear_nondegenerate = ok
        if not ok:
            rep.degeneracy_reason = f"{reason}({format_scalar(entry.lam)})"
            if verdict.kind != "Degenerate":
                verdict = Verdict("Degenerate", rep.degeneracy_reason)
            continue
        if lp.algebra.field == COMPLEX:
            rep.type = WilliamsonType(kf=len(data.pairs))
        else:
            rep.type = linear_pencil_type(data, mode)
        rep.blocks = classify(lp, mode, data)
        total = total + rep.type

    if verdict.kind == "Degenerate":
        total_type = None
    else:
        total_type = total
        expected = rank // 2 - point_rank
        got = total.ke + total.kh + 2 * total.kf
        if got != expected:
            msg = (f"type count identity violated: ke+kh+2kf = {got}, "
                   f"expected rank/2 - point_rank = {expected}")
            if mode.is_exact:
                raise PreconditionError(msg)
            warnings.append(msg)

    return SingularPointReport(
        point=pt, pencil_rank=rank, corank=corank, spectrum=spectrum,
        verdict=verdict, per_lambda=per_lambda, total_type=total_type,
        point_rank=point_rank, warnings=warnings)


def _key(lam):
    from .pencil import _lam_key
    return _lam_key(lam)


def _certify_pencil_rank(field0, field_inf, p, rank, params, sampler, mode, warnings):
    if params.declared_rank is not None:
        if rank < params.declared_rank:
            raise RankDeficientPointError(
                f"pencil rank {rank} at the point is below the declared rank "
                f"{params.declared_rank}")
        return
    sp = sampler.spawn(6)
    best = rank
    for _ in range(5):
        q = evaluate_pencil(field0, field_inf, sp.rational_point(field0.dim))
        r, _ = pencil_rank_corank(q, sp.spawn(sp.randint(0, 10 ** 6)), mode)
        best = max(best, r)
    if best > rank:
        raise RankDeficientPointError(
            f"pencil rank {rank} at the point is below the sampled pencil rank {best}")
    warnings.append("pencil rank certified by sampling 5 random points only; "
                    "declare a rank to make this check exact")


def _kronecker_spot_check(field0, field_inf, pt, sampler, mode, warnings):
    """Spectrum should be empty at 3 nearby perturbations (Kronecker-type pencil)."""
    for _ in range(3):
        nearby = [x + Fraction(sampler.randint(-100, 100), 10 ** 4) for x in pt]
        try:
            q = evaluate_pencil(field0, field_inf, nearby)
            spec = compute_spectrum(q, sampler.spawn(sampler.randint(0, 10 ** 6)), mode)
            if not spec.is_empty():
                warnings.append(
                    "nearby point has non-empty spectrum; the pencil may not be "
                    "of Kronecker type, in which case verdicts are unreliable")
                return
        except RankDeficientPointError:
            continue


# ---------------------------------------------------------------------------
# Casimir variation operators
# ---------------------------------------------------------------------------


@dataclass
class FunctionData:
    """A function known through its first two derivatives at the point."""

    gradient: list
    hessian: list
    description: str = ""


@dataclass
class CasimirVariation:
    matrix: list
    f_description: str
    alpha: object

    def restrict_to(self, basis, mode: Mode = EXACT):
        """Matrix of the operator on an invariant span of covectors."""
        from .exactlin import coords_in_span
        cols = []
        for b in basis:
            img = mat_vec(self.matrix, b)
            coords = coords_in_span(basis, img, mode)
            if coords is None:
                raise PreconditionError("span is not invariant under the operator")
            cols.append(coords)
        m = len(basis)
        return [[cols[j][i] for j in range(m)] for i in range(m)]


def _function_data(f, point, description="") -> FunctionData:
    if isinstance(f, FunctionData):
        return f
    if isinstance(f, Poly):
        grad = [g.eval(point) for g in f.gradient()]
        hess = [[h.eval(point) for h in row] for row in f.hessian()]
        return FunctionData(gradient=grad, hessian=hess,
                            description=description or "polynomial")
    raise PreconditionError("f must be a Poly or FunctionData")


def casimir_variation(p: PencilAtPoint, f, alpha, mode: Mode = EXACT) -> CasimirVariation:
    """The operator D_f P_alpha built from the coordinate formula.

    Requires df(x) in Ker P_alpha(x).  Entry (k, j) is
    sum_i [ d_k P^{ij} * df_i + P^{ij} * d^2f_{ik} ].
    """
    data = _function_data(f, p.point)
    A = p.matrix_at(alpha)
    img = mat_vec(A, data.gradient)
    scale = max([abs(as_complex(x)) for row in A for x in row] + [1.0])
    if any(not mode.zero(v, scale) for v in img):
        raise PreconditionError("df(x) is not in Ker P_alpha(x)")
    d = p.dim
    D = [[Fraction(0)] * d for _ in range(d)]
    for k in range(d):
        dAk = p.derivative_at(alpha, k)
        for j in range(d):
            total = 0
            for i in range(d):
                total = total + dAk[i][j] * data.gradient[i] + A[i][j] * data.hessian[i][k]
            D[k][j] = simplify_scalar(total + Fraction(0)) if is_exact_scalar(total) else total
    return CasimirVariation(matrix=D, f_description=data.description, alpha=alpha)


def reparameterize_casimir_combination(alphas, alpha, beta):
    """Coefficients turning sum f_{alpha_i} with df in Ker P_alpha into the
    matching combination for the target bracket P_beta.

    Finite beta gives (alpha - alpha_i) / (beta - alpha_i); beta at infinity
    gives the projective limit (alpha - alpha_i), obtained by clearing beta.
    """
    if any(is_inf(a) for a in alphas):
        raise PreconditionError("combination members must have finite parameters")
    if not is_inf(beta) and beta in list(alphas):
        raise PreconditionError("beta collides with a combination parameter")
    if is_inf(alpha):
        raise PreconditionError("alpha at infinity is not supported")
    if not is_inf(beta) and beta == alpha:
        return [Fraction(1) for _ in alphas]
    if is_inf(beta):
        return [simplify_scalar(alpha - ai + Fraction(0)) for ai in alphas]
    return [simplify_scalar((alpha - ai) / (beta - ai)) for ai in alphas]


def combine_function_data(terms, coefficients=None) -> FunctionData:
    """Linear combination of FunctionData values (same point)."""
    if coefficients is None:
        coefficients = [Fraction(1)] * len(terms)
    d = len(terms[0].gradient)
    grad = [Fraction(0)] * d
    hess = [[Fraction(0)] * d for _ in range(d)]
    names = []
    for c, t in zip(coefficients, terms):
        for i in range(d):
            grad[i] = grad[i] + c * t.gradient[i]
            for j in range(d):
                hess[i][j] = hess[i][j] + c * t.hessian[i][j]
        names.append(f"{c}*({t.description})")
    return FunctionData(gradient=[simplify_scalar(g + Fraction(0)) if is_exact_scalar(g) else g for g in grad],
                        hessian=[[simplify_scalar(h + Fraction(0)) if is_exact_scalar(h) else h for h in row] for row in hess],
                        description=" + ".join(names))
