"""Point-wise linear algebra of a pencil of skew forms.

Everything here works on a PencilAtPoint: ranks across the parameter,
the spectrum (parameters where the rank drops), the isotropic core L spanned
by regular kernels, induced forms and recursion operators on the quotient
L^perp / L, and the diagonalizability test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import RankDeficientPointError, SingularParameterError, ToleranceError
from .exactlin import (all_entries_real, basis_union, bilinear, coords_in_span,
                       eigenvalues, inverse, mat_mul, mat_rank, mat_vec,
                       nullspace, subspace_dim, transpose)
from .sampling import SamplingPolicy
from .scalars import (EXACT, INF, Mode, QQi, as_complex, cimag, conj, creal,
                      is_exact_scalar, is_inf, simplify_scalar, snap_to_exact)
from .tensorfield import PencilAtPoint


def rank_at(p: PencilAtPoint, lam, mode: Mode = EXACT, warnings=None) -> int:
    """Rank of P_lambda(x) under the mode's rank rule."""
    return mat_rank(p.matrix_at(lam), mode, warnings, what=f"rank at lambda={lam}")


def pencil_rank_corank(p: PencilAtPoint, sampler: SamplingPolicy,
                       mode: Mode = EXACT, warnings=None):
    """(rank, corank) of the pencil at the point.

    The maximum of rank P_lambda over d+1 distinct rational samples: the rank
    minors are polynomials of degree <= d in lambda, so d+1 distinct samples
    must include a generic one.
    """
    samples = sampler.distinct_rationals(p.dim + 1)
    best = 0
    for lam in samples:
        best = max(best, rank_at(p, lam, mode, warnings))
    best = max(best, rank_at(p, INF, mode, warnings))
    return best, p.dim - best


def regular_parameters(p: PencilAtPoint, sampler: SamplingPolicy, count: int,
                       mode: Mode = EXACT, rank: int | None = None,
                       exclude=()):
    """``count`` distinct finite rational parameters where the rank is maximal."""
    if rank is None:
        rank, _ = pencil_rank_corank(p, sampler.spawn(1), mode)
    out = []
    seen = set(exclude)
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 60 * count + 200:
            raise RankDeficientPointError(
                "could not find enough regular parameters; the pencil rank at this "
                "point may be below the declared pencil rank")
        lam = sampler.rational()
        if lam in seen:
            continue
        seen.add(lam)
        if rank_at(p, lam, mode) == rank:
            out.append(lam)
    return out


@dataclass
class SpectrumEntry:
    lam: object            # Fraction | QQi | complex | INF
    kernel_dim: int
    exact: bool = True
    paired: bool = False   # True when the entry stands for a conjugate pair

    def is_real(self) -> bool:
        if is_inf(self.lam):
            return True
        if is_exact_scalar(self.lam):
            return cimag(self.lam) == 0
        return abs(complex(self.lam).imag) == 0


@dataclass
class Spectrum:
    entries: list
    corank: int

    def is_empty(self) -> bool:
        return not self.entries

    def values(self):
        return [e.lam for e in self.entries]


@dataclass
class IsotropicCore:
    basis: list                 # covectors spanning L
    regular_params: list        # the sampled parameters whose kernels were summed
    dim_sequence: list          # accumulated dimension after each kernel
    corank: int

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class RecursionOperator:
    quotient_basis: list
    matrix: list
    alpha: object
    beta: object


def compute_core(p: PencilAtPoint, sampler: SamplingPolicy, mode: Mode = EXACT,
                 rank: int | None = None) -> IsotropicCore:
    """Accumulate kernels of regular brackets until they span L.

    Stops once the span is unchanged for two consecutive additions and at
    least dim-L kernels were used; any dim-L distinct regular parameters
    already suffice, and strictly fewer always leave the span growing.
    """
    if rank is None:
        rank, _ = pencil_rank_corank(p, sampler.spawn(1), mode)
    corank = p.dim - rank
    basis = []
    params = []
    dims = []
    stable = 0
    hard_cap = max(2 * p.dim + 4, 8)
    while True:
        lam = regular_parameters(p, sampler, 1, mode, rank=rank, exclude=params)[0]
        ker = nullspace(p.matrix_at(lam), mode)
        new_basis = basis_union(basis, ker, mode)
        params.append(lam)
        dims.append(len(new_basis))
        if len(new_basis) == len(basis):
            stable += 1
        else:
            stable = 0
        basis = new_basis
        if stable >= 2 and len(params) >= len(basis):
            break
        if len(params) > hard_cap:
            raise ToleranceError(
                "core accumulation failed to stabilize; inconsistent float tolerance")
    return IsotropicCore(basis=basis, regular_params=params, dim_sequence=dims,
                         corank=corank)


def core_perp(p: PencilAtPoint, core: IsotropicCore, mode: Mode = EXACT,
              alpha=None):
    """Basis of L^perp = {xi : P_alpha(xi, L) = 0}; independent of regular alpha."""
    if alpha is None:
        alpha = core.regular_params[0]
    A = p.matrix_at(alpha)
    rows = [mat_vec(A, l) for l in core.basis]
    if not rows:
        from .exactlin import identity
        return identity(p.dim)
    return nullspace(rows, mode)


def quotient_basis(p: PencilAtPoint, core: IsotropicCore, mode: Mode = EXACT):
    """Covectors in L^perp completing a basis of L (deterministic choice)."""
    perp = core_perp(p, core, mode)
    chosen = []
    current = [list(v) for v in core.basis]
    base_dim = len(current)
    for v in perp:
        cand = current + [list(v)]
        if mat_rank(cand, mode) == len(cand):
            current.append(list(v))
            chosen.append(list(v))
    return chosen


def quotient_form(p: PencilAtPoint, core: IsotropicCore, lam,
                  mode: Mode = EXACT, qbasis=None):
    """Matrix of P_lambda on L^perp / L in the fixed quotient basis."""
    if qbasis is None:
        qbasis = quotient_basis(p, core, mode)
    A = p.matrix_at(lam)
    m = len(qbasis)
    return [[simplify_scalar(bilinear(A, qbasis[r], qbasis[s])) for s in range(m)]
            for r in range(m)]


def recursion_operator(p: PencilAtPoint, core: IsotropicCore, alpha, beta,
                       mode: Mode = EXACT, qbasis=None) -> RecursionOperator:
    """R_alpha^beta = P_beta^{-1} P_alpha on the quotient; beta must be regular."""
    if qbasis is None:
        qbasis = quotient_basis(p, core, mode)
    B_beta = quotient_form(p, core, beta, mode, qbasis)
    m = len(qbasis)
    if m and mat_rank(B_beta, mode) < m:
        raise SingularParameterError(f"beta={beta} is singular on the quotient")
    B_alpha = quotient_form(p, core, alpha, mode, qbasis)
    R = mat_mul(inverse(B_beta, mode), B_alpha) if m else []
    return RecursionOperator(quotient_basis=qbasis, matrix=R, alpha=alpha, beta=beta)


def _moebius_to_lambda(mu, t1, t2, mode: Mode):
    """Map an eigenvalue mu of R_{t1}^{t2} to the pencil parameter lambda.

    R u = mu u on the quotient means P_{t1} u = mu P_{t2} u, i.e. u lies in
    the kernel of P_lambda with lambda = (t1 - mu t2) / (1 - mu); mu = 1
    corresponds to lambda = infinity.
    """
    if is_exact_scalar(mu):
        if mu == 1:
            return INF
        return simplify_scalar((t1 - mu * t2) / (1 - mu))
    mu = complex(mu)
    if abs(mu - 1.0) <= 10 * mode.eps * max(1.0, abs(mu)):
        return INF
    return (complex(t1) - mu * complex(t2)) / (1.0 - mu)


def lambda_to_moebius(lam, t1, t2):
    """Inverse map: the R_{t1}^{t2}-eigenvalue corresponding to pencil lambda."""
    if is_inf(lam):
        return Fraction(1)
    if is_exact_scalar(lam):
        return simplify_scalar((t1 - lam) / (t2 - lam))
    lam = complex(lam)
    return (complex(t1) - lam) / (complex(t2) - lam)


def compute_spectrum(p: PencilAtPoint, sampler: SamplingPolicy, mode: Mode = EXACT,
                     core: IsotropicCore | None = None, warnings=None,
                     declared_rank: int | None = None) -> Spectrum:
    """Parameters where rank P_lambda(x) < rank Pi(x), with exact kernel dims.

    Candidates come from the eigenvalues of a recursion operator between two
    regular parameters, mapped back through the Moebius normalization; every
    candidate is then re-verified by an independent rank computation.
    """
    rank, corank = pencil_rank_corank(p, sampler.spawn(1), mode, warnings)
    if declared_rank is not None and rank < declared_rank:
        raise RankDeficientPointError(
            f"rank {rank} at the point is below the declared pencil rank {declared_rank}")
    if core is None:
        core = compute_core(p, sampler.spawn(2), mode, rank=rank)
    qbasis = quotient_basis(p, core, mode)
    if not qbasis:
        return Spectrum(entries=[], corank=corank)
    t1, t2 = regular_parameters(p, sampler.spawn(3), 2, mode, rank=rank)
    R = recursion_operator(p, core, t1, t2, mode, qbasis)
    exact_eigs, float_eigs = eigenvalues(R.matrix, mode)
    entries = []
    seen = []
    for mu, _mult in exact_eigs:
        lam = _moebius_to_lambda(mu, t1, t2, mode)
        kd = p.dim - rank_at(p, lam, mode, warnings)
        if kd > corank:
            entries.append(SpectrumEntry(lam=lam, kernel_dim=kd, exact=True))
            seen.append(as_complex(0) if is_inf(lam) else as_complex(lam))
    for mu, _mult in float_eigs:
        lam = _moebius_to_lambda(mu, t1, t2, mode)
        lam_c = as_complex(0) if is_inf(lam) else as_complex(lam)
        if any(is_inf(lam) == is_inf(e.lam) and abs(lam_c - s) <= 1e-7 * max(1.0, abs(lam_c))
               for e, s in zip(entries, seen)):
            continue
        # the pencil parameter usually has modest height even when the
        # recursion eigenvalue does not, so rationalize lambda itself first
        snapped = None if is_inf(lam) else snap_to_exact(lam_c, 1e-8)
        if snapped is not None and (mode.is_exact or all(
                is_exact_scalar(x) for row in p.A0 + p.Ainf for x in row)):
            kd = p.dim - rank_at(p, snapped, EXACT, warnings)
            if kd > corank:
                entries.append(SpectrumEntry(lam=snapped, kernel_dim=kd, exact=True))
                seen.append(as_complex(snapped))
                continue
        check_mode = mode if not mode.is_exact else Mode("float", 1e-9)
        kd = p.dim - rank_at(p, lam, check_mode, warnings)
        if kd > corank:
            entries.append(SpectrumEntry(lam=lam, kernel_dim=kd, exact=False))
            seen.append(lam_c)
            if warnings is not None and mode.is_exact:
                warnings.append(
                    f"spectrum value {lam} is irrational; verified with float tolerance 1e-9")
    entries = _canonicalize_conjugates(p, entries, mode)
    entries.sort(key=lambda e: (1 if is_inf(e.lam) else 0,
                                (abs(as_complex(e.lam)), as_complex(e.lam).real,
                                 as_complex(e.lam).imag) if not is_inf(e.lam) else (0, 0, 0)))
    return Spectrum(entries=entries, corank=corank)


def _canonicalize_conjugates(p: PencilAtPoint, entries, mode: Mode):
    """For real pencils, store one entry per conjugate pair (Im > 0 kept)."""
    if not (all_entries_real(p.A0) and all_entries_real(p.Ainf)):
        return entries
    out = []
    used = [False] * len(entries)
    eps_pair = 10 * (mode.eps if not mode.is_exact else 1e-12)
    for i, e in enumerate(entries):
        if used[i]:
            continue
        if e.is_real():
            out.append(e)
            used[i] = True
            continue
        lam_c = as_complex(e.lam)
        partner = None
        for j in range(i + 1, len(entries)):
            if used[j] or entries[j].is_real() or is_inf(entries[j].lam):
                continue
            if e.exact and entries[j].exact:
                if conj(e.lam) == entries[j].lam:
                    partner = j
                    break
            elif abs(as_complex(entries[j].lam) - lam_c.conjugate()) <= eps_pair * max(1.0, abs(lam_c)):
                partner = j
                break
        if partner is not None:
            used[i] = used[partner] = True
            rep = e if (cimag(e.lam) > 0 if e.exact else lam_c.imag > 0) else entries[partner]
            rep.paired = True
            out.append(rep)
        else:
            used[i] = True
            out.append(e)
    return out


def is_diagonalizable(p: PencilAtPoint, core: IsotropicCore, spectrum: Spectrum,
                      mode: Mode = EXACT, sampler: SamplingPolicy | None = None):
    """Per-lambda test dim Ker(P_alpha | Ker P_lambda) == corank, and the conjunction.

    One regular alpha suffices: all restrictions of other brackets to the
    kernel agree up to a nonzero factor.
    """
    if sampler is None:
        sampler = SamplingPolicy(17)
    per_lambda = {}
    overall = True
    alpha = core.regular_params[0]
    A_alpha = p.matrix_at(alpha)
    for entry in spectrum.entries:
        ker = kernel_basis(p, entry.lam, mode)
        m = len(ker)
        G = [[simplify_scalar(bilinear(A_alpha, ker[r], ker[s])) for s in range(m)]
             for r in range(m)]
        kd = m - mat_rank(G, mode)
        flag = (kd == spectrum.corank)
        per_lambda[_lam_key(entry.lam)] = flag
        overall = overall and flag
    return per_lambda, overall


def kernel_basis(p: PencilAtPoint, lam, mode: Mode = EXACT):
    """Kernel of P_lambda(x); complexified automatically for non-real lambda."""
    return nullspace(p.matrix_at(lam), mode)


def quotient_operator(op_matrix, qbasis, core_basis, mode: Mode = EXACT):
    """Matrix on L^perp / L induced by an operator preserving L and L^perp.

    Images are resolved in the combined (quotient + core) span and the core
    component is discarded.
    """
    combined = [list(v) for v in qbasis] + [list(v) for v in core_basis]
    cols = []
    for q in qbasis:
        img = mat_vec(op_matrix, q)
        coords = coords_in_span(combined, img, mode)
        if coords is None:
            raise ToleranceError("operator does not preserve the quotient span")
        cols.append(coords[:len(qbasis)])
    m = len(qbasis)
    return [[cols[j][i] for j in range(m)] for i in range(m)]


def _lam_key(lam):
    if is_inf(lam):
        return "inf"
    return str(lam)
