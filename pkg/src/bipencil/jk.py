"""Jordan-Kronecker invariants of a skew pair, and the canonical assembler.

A pair of skew forms decomposes into Jordan blocks (one per spectrum value,
sizes recovered from kernel-power dimensions of a recursion operator, which
sees each block twice) and Kronecker blocks (half-sizes recovered from the
filtration of regular kernels inside the core L).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatchError, ToleranceError
from .exactlin import identity, mat_mul, mat_rank, mat_sub, mat_scale, transpose
from .pencil import (IsotropicCore, compute_core, compute_spectrum,
                     lambda_to_moebius, pencil_rank_corank, quotient_basis,
                     recursion_operator, regular_parameters)
from .sampling import SamplingPolicy
from .scalars import (EXACT, INF, Mode, QQi, as_complex, conj, format_scalar,
                      is_exact_scalar, is_inf, simplify_scalar)
from .tensorfield import PencilAtPoint, constant_pencil


@dataclass
class JKInvariants:
    corank: int
    kronecker_indices: list          # sorted half-sizes, one per Kronecker block
    jordan: dict                     # lambda-key -> sorted list of Jordan sizes
    jordan_values: dict              # lambda-key -> the lambda value itself

    def total_dimension(self) -> int:
        kron = sum(2 * k + 1 for k in self.kronecker_indices)
        jord = sum(2 * s for sizes in self.jordan.values() for s in sizes)
        return kron + jord

    def to_json_dict(self) -> dict:
        return {
            "corank": self.corank,
            "kronecker": sorted(self.kronecker_indices),
            "jordan": {key: sorted(sizes) for key, sizes in sorted(self.jordan.items())},
        }


@dataclass(frozen=True)
class JordanBlock:
    lam: object       # Fraction | QQi | INF
    size: int


@dataclass(frozen=True)
class KroneckerBlock:
    half_size: int


def _jordan_nilpotent(size: int):
    J = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size - 1):
        J[i][i + 1] = Fraction(1)
    return J


def _embed(dst, block, offset):
    for i, row in enumerate(block):
        for j, v in enumerate(row):
            dst[offset + i][offset + j] = v


def _jordan_pair(lam, size: int):
    """Appendix-style Jordan pair: A = [[0, J(lam)], [-J(lam)^T, 0]], B = [[0,-E],[E,0]]."""
    J = _jordan_nilpotent(size)
    for i in range(size):
        J[i][i] = J[i][i] + lam
    n = 2 * size
    A = [[Fraction(0)] * n for _ in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(size):
        for j in range(size):
            A[i][size + j] = J[i][j]
            A[size + j][i] = -J[i][j]
        B[i][size + i] = Fraction(-1)
        B[size + i][i] = Fraction(1)
    return A, B


def _jordan_pair_infinity(size: int):
    """The lambda = infinity Jordan pair: roles of the two forms swapped, J(0)."""
    A0, B0 = _jordan_pair(Fraction(0), size)
    return B0, A0


def _kronecker_pair(half_size: int):
    """Kronecker pair of half-size k: S, T are k x (k+1) shifted identities."""
    k = half_size
    n = 2 * k + 1
    A = [[Fraction(0)] * n for _ in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(k):
        # S has ones on (i, i); T has ones on (i, i+1)
        A[i][k + i] = Fraction(1)
        A[k + i][i] = Fraction(-1)
        B[i][k + i + 1] = Fraction(1)
        B[k + i + 1][i] = Fraction(-1)
    return A, B


def assemble_jk_canonical_pair(blocks) -> PencilAtPoint:
    """Block-diagonal canonical pair from Jordan/Kronecker descriptors.

    Complex Jordan eigenvalues are allowed (Gaussian rationals); derivative
    tensors are zero, so the result is a constant pencil.
    """
    pieces = []
    for b in blocks:
        if isinstance(b, JordanBlock):
            if b.size < 1:
                raise DimensionMismatchError("Jordan size must be >= 1")
            if is_inf(b.lam):
                pieces.append(_jordan_pair_infinity(b.size))
            else:
                lam = b.lam if isinstance(b.lam, QQi) else Fraction(b.lam)
                pieces.append(_jordan_pair(lam, b.size))
        elif isinstance(b, KroneckerBlock):
            if b.half_size < 0:
                raise DimensionMismatchError("Kronecker half-size must be >= 0")
            pieces.append(_kronecker_pair(b.half_size))
        else:
            raise DimensionMismatchError(f"unknown block descriptor {b!r}")
    d = sum(len(a) for a, _ in pieces)
    A = [[Fraction(0)] * d for _ in range(d)]
    B = [[Fraction(0)] * d for _ in range(d)]
    off = 0
    for a, bm in pieces:
        _embed(A, a, off)
        _embed(B, bm, off)
        off += len(a)
    return constant_pencil(A, B)


def congruent_pair(p: PencilAtPoint, U) -> PencilAtPoint:
    """U^T A U, U^T B U for a constant pencil (derivatives stay zero)."""
    Ut = transpose(U)
    A = mat_mul(Ut, mat_mul(p.A0, U))
    B = mat_mul(Ut, mat_mul(p.Ainf, U))
    return constant_pencil(A, B)


def jk_invariants(p: PencilAtPoint, sampler: SamplingPolicy | None = None,
                  mode: Mode = EXACT) -> JKInvariants:
    """Recover the JK block data of the evaluated pair (invariants only)."""
    if sampler is None:
        sampler = SamplingPolicy(23)
    rank, corank = pencil_rank_corank(p, sampler.spawn(1), mode)
    core = compute_core(p, sampler.spawn(2), mode, rank=rank)

    # Kronecker half-sizes from the kernel filtration dimension increments:
    # after m distinct regular parameters the span gains one dimension per
    # block of half-size >= m-1.
    dims = core.dim_sequence
    increments = []
    prev = 0
    for dm in dims:
        increments.append(dm - prev)
        prev = dm
    while increments and increments[-1] == 0:
        increments.pop()
    kronecker = []
    for m, delta in enumerate(increments):
        next_delta = increments[m + 1] if m + 1 < len(increments) else 0
        kronecker.extend([m] * (delta - next_delta))
    if len(kronecker) != corank:
        raise ToleranceError(
            f"Kronecker block count {len(kronecker)} disagrees with corank {corank}")

    # Jordan sizes from kernel powers of a recursion operator on the quotient.
    spectrum = compute_spectrum(p, sampler.spawn(3), mode, core=core)
    qbasis = quotient_basis(p, core, mode)
    jordan: dict = {}
    jordan_values: dict = {}
    if qbasis:
        t1, t2 = regular_parameters(p, sampler.spawn(4), 2, mode, rank=rank)
        R = recursion_operator(p, core, t1, t2, mode, qbasis).matrix
        m = len(qbasis)
        lams = []
        for entry in spectrum.entries:
            lams.append(entry.lam)
            if entry.paired:
                lams.append(conj(entry.lam) if entry.exact
                            else complex(entry.lam).conjugate())
        for lam in lams:
            mu = lambda_to_moebius(lam, t1, t2)
            sizes = _jordan_sizes_at(R, mu, mode)
            key = _jk_key(lam)
            jordan[key] = sizes
            jordan_values[key] = lam
    inv = JKInvariants(corank=corank, kronecker_indices=sorted(kronecker),
                       jordan=jordan, jordan_values=jordan_values)
    if inv.total_dimension() != p.dim:
        raise ToleranceError(
            f"JK dimension accounting failed: blocks sum to {inv.total_dimension()}, "
            f"ambient dimension is {p.dim}")
    return inv


def _jordan_sizes_at(R, mu, mode: Mode):
    """Pencil-level Jordan sizes at the eigenvalue mu of R (R sees each twice)."""
    m = len(R)
    shifted = mat_sub(R, mat_scale(identity(m), mu))
    kdims = [0]
    power = identity(m)
    for _ in range(m):
        power = mat_mul(power, shifted)
        kdims.append(m - mat_rank(power, mode))
        if kdims[-1] == kdims[-2]:
            break
    counts = []  # counts[s] = number of R-blocks of size >= s+1
    for s in range(1, len(kdims)):
        counts.append(kdims[s] - kdims[s - 1])
    sizes = []
    for s in range(len(counts)):
        nxt = counts[s + 1] if s + 1 < len(counts) else 0
        exact_count = counts[s] - nxt
        if exact_count % 2 != 0:
            raise ToleranceError(
                "odd Jordan block count on the quotient; tolerance inconsistency")
        sizes.extend([s + 1] * (exact_count // 2))
    return sorted(sizes)


def _jk_key(lam) -> str:
    if is_inf(lam):
        return "inf"
    if is_exact_scalar(lam):
        return str(lam)
    z = complex(lam)
    return f"{z.real:.12g}{z.imag:+.12g}j" if z.imag else f"{z.real:.12g}"
