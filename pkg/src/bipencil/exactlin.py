"""Dense linear algebra over exact scalars, with a floating fallback.

Rank decisions are the load-bearing primitive of the whole pipeline, so the
exact path uses fraction-free (Bareiss) elimination on denominator-cleared
rows, while the float path thresholds singular values at eps * sigma_max.
Matrices are plain lists of lists holding Fraction / QQi / int entries (or
floats in float mode); vectors are lists.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import EXACT, Mode, QQi, as_complex, conj, is_exact_scalar, simplify_scalar

# ---------------------------------------------------------------------------
# basic matrix utilities
# ---------------------------------------------------------------------------


def shape(M):
    return len(M), len(M[0]) if M else 0


def zeros(n: int, m: int):
    return [[Fraction(0) for _ in range(m)] for _ in range(n)]


def identity(n: int):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(row) for row in zip(*M)] if M else []

def mat_copy(M):
    return [list(row) for row in M]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[c * a for a in row] for row in A]


def mat_mul(A, B):
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise ValueError("matrix shape mismatch")
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def vec_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def bilinear(A, u, v):
    """u^T A v for covectors u, v."""
    return vec_dot(u, mat_vec(A, v))


def is_skew(M, mode: Mode = EXACT) -> bool:
    n, m = shape(M)
    if n != m:
        return False
    scale = _float_scale(M)
    for i in range(n):
        for j in range(n):
            if not mode.zero(M[i][j] + M[j][i], scale):
                return False
    return True


def _float_scale(M) -> float:
    best = 0.0
    for row in M:
        for x in row:
            best = max(best, abs(as_complex(x)))
    return best if best > 0 else 1.0


def to_numpy(M) -> np.ndarray:
    return np.array([[as_complex(x) for x in row] for row in M], dtype=complex)


def all_entries_real(M) -> bool:
    for row in M:
        for x in row:
            if isinstance(x, QQi) and x.im != 0:
                return False
            if isinstance(x, complex) and x.imag != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# rank
# ---------------------------------------------------------------------------


def _clear_row_denominators(row):
    """Scale a row of Fraction/QQi entries to integer entries."""
    dens = []
    for x in row:
        if isinstance(x, QQi):
            dens.append(x.re.denominator)
            dens.append(x.im.denominator)
        else:
            dens.append(Fraction(x).denominator)
    lcm = 1
    for d in dens:
        g = _gcd(lcm, d)
        lcm = lcm // g * d
    return [x * lcm for x in row]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def mat_rank_exact(M) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    if not M or not M[0]:
        return 0
    A = [_clear_row_denominators(list(row)) for row in M]
    n, m = shape(A)
    rank = 0
    prev = 1
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, n):
            if A[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        if piv != row:
            A[row], A[piv] = A[piv], A[row]
        for r in range(row + 1, n):
            for c in range(col + 1, m):
                A[r][c] = simplify_scalar((A[row][col] * A[r][c] - A[r][col] * A[row][c]) / prev)
            A[r][col] = 0
        prev = A[row][col]
        row += 1
        rank += 1
        if row == n:
            break
    return rank


def svd_rank(M, eps: float, warnings=None, what: str = "") -> int:
    A = to_numpy(M)
    if A.size == 0:
        return 0
    sv = np.linalg.svd(A, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    cutoff = eps * sv[0]
    rank = int(np.sum(sv > cutoff))
    if warnings is not None:
        lo = sv[rank] if rank < sv.size else 0.0
        hi = sv[rank - 1] if rank >= 1 else sv[0]
        if rank < sv.size and lo > cutoff / 10:
            warnings.append(f"borderline rank decision{': ' + what if what else ''} "
                            f"(gap {lo / sv[0]:.3e} within 10x of tolerance)")
        elif rank >= 1 and hi < 10 * cutoff:
            warnings.append(f"borderline rank decision{': ' + what if what else ''} "
                            f"(kept value {hi / sv[0]:.3e} within 10x of tolerance)")
    return rank


def has_inexact_entries(M) -> bool:
    return any(not is_exact_scalar(x) for row in M for x in row)


def _effective_eps(mode: Mode) -> float:
    # exact mode degrades to a float tolerance when irrational data leaked in
    return mode.eps if not mode.is_exact else 1e-9


def mat_rank(M, mode: Mode = EXACT, warnings=None, what: str = "") -> int:
    n, m = shape(M)
    if n == 0 or m == 0:
        return 0
    if mode.is_exact and not has_inexact_entries(M):
        return mat_rank_exact(M)
    return svd_rank(M, _effective_eps(mode), warnings, what)


# ---------------------------------------------------------------------------
# reduced row echelon / nullspace / solving (exact field arithmetic)
# ---------------------------------------------------------------------------


def rref(M):
    """Reduced row echelon form over the exact field; returns (R, pivot_cols)."""
    A = [[_to_field(x) for x in row] for row in M]
    n, m = shape(A)
    pivots = []
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, n):
            if A[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = A[row][col]
        A[row] = [simplify_scalar(x / inv) for x in A[row]]
        for r in range(n):
            if r != row and A[r][col] != 0:
                f = A[r][col]
                A[r] = [simplify_scalar(a - f * b) for a, b in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return A, pivots


def _to_field(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


def nullspace_exact(M, ncols=None):
    """Right-kernel basis in pivot-normalized echelon form (deterministic)."""
    if not M or not M[0]:
        n = ncols if ncols is not None else 0
        return [[Fraction(1) if i == j else Fraction(0) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    n, m = shape(M)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = simplify_scalar(-R[r][fc])
        basis.append(v)
    return basis


def nullspace_float(M, eps: float):
    A = to_numpy(M)
    if A.size == 0:
        n = len(M[0]) if M else 0
        return [list(np.eye(n)[j]) for j in range(n)]
    _, sv, vh = np.linalg.svd(A)
    cutoff = eps * (sv[0] if sv.size else 0.0)
    ker = [list(vh[i].conj()) for i in range(len(vh)) if i >= len(sv) or sv[i] <= cutoff]
    return ker


def nullspace(M, mode: Mode = EXACT):
    if mode.is_exact and not has_inexact_entries(M):
        return nullspace_exact(M)
    return nullspace_float(M, _effective_eps(mode))


def solve_exact(A, b):
    """One solution x of A x = b, or None if inconsistent."""
    n, m = shape(A)
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(aug)
    if m in pivots:
        return None
    x = [Fraction(0)] * m
    for r, pc in enumerate(pivots):
        x[pc] = R[r][m]
    return x


def coords_in_span(basis_vectors, w, mode: Mode = EXACT, scale: float = 1.0):
    """Coordinates of w in span(basis_vectors), or None if w is outside."""
    if not basis_vectors:
        if all(mode.zero(x, scale) for x in w):
            return []
        return None
    A = transpose(basis_vectors)
    if mode.is_exact and not has_inexact_entries(A) and all(is_exact_scalar(x) for x in w):
        return solve_exact(A, w)
    An = to_numpy(A)
    bn = np.array([as_complex(x) for x in w])
    x, *_ = np.linalg.lstsq(An, bn, rcond=None)
    resid = An @ x - bn
    norm = max(1.0, float(np.abs(bn).max(initial=0.0)), scale)
    if float(np.abs(resid).max(initial=0.0)) > 100 * _effective_eps(mode) * norm:
        return None
    return list(x)


def inverse_exact(M):
    n, m = shape(M)
    if n != m:
        raise ValueError("inverse of non-square matrix")
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R[:n]]


def inverse(M, mode: Mode = EXACT):
    if mode.is_exact and not has_inexact_entries(M):
        return inverse_exact(M)
    A = np.linalg.inv(to_numpy(M))
    return [list(row) for row in A]


def basis_union(existing, new_vectors, mode: Mode = EXACT):
    """Extend an independent family by the independent members of new_vectors."""
    out = [list(v) for v in existing]
    for v in new_vectors:
        cand = out + [list(v)]
        if mat_rank(cand, mode) == len(cand):
            out.append(list(v))
    return out


def subspace_dim(vectors, mode: Mode = EXACT) -> int:
    if not vectors:
        return 0
    return mat_rank(vectors, mode)


def same_subspace(basis_a, basis_b, mode: Mode = EXACT) -> bool:
    da = subspace_dim(basis_a, mode)
    db = subspace_dim(basis_b, mode)
    if da != db:
        return False
    return subspace_dim(list(basis_a) + list(basis_b), mode) == da


def intersect_dims(basis_a, basis_b, mode: Mode = EXACT) -> int:
    """dim(A cap B) via dim A + dim B - dim(A + B)."""
    da = subspace_dim(basis_a, mode)
    db = subspace_dim(basis_b, mode)
    dsum = subspace_dim(list(basis_a) + list(basis_b), mode)
    return da + db - dsum


def symmetric_signature(S):
    """(positive, negative, zero) inertia of an exact symmetric matrix.

    Congruence diagonalization over the rationals; when no nonzero diagonal
    pivot exists, a row/column addition creates one (the standard trick).
    """
    n = len(S)
    A = [[Fraction(x) for x in row] for row in S]
    pos = neg = 0
    rows = list(range(n))
    k = 0
    while k < n:
        piv = None
        for r in range(k, n):
            if A[r][r] != 0:
                piv = r
                break
        if piv is None:
            hot = None
            for r in range(k, n):
                for c in range(r + 1, n):
                    if A[r][c] != 0:
                        hot = (r, c)
                        break
                if hot:
                    break
            if hot is None:
                break  # remaining block is zero
            r, c = hot
            for t in range(n):
                A[r][t] = A[r][t] + A[c][t]
            for t in range(n):
                A[t][r] = A[t][r] + A[t][c]
            continue
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            for t in range(n):
                A[t][k], A[t][piv] = A[t][piv], A[t][k]
        d = A[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            if A[r][k] != 0:
                f = A[r][k] / d
                for t in range(n):
                    A[r][t] = A[r][t] - f * A[k][t]
        for t in range(k + 1, n):
            if A[k][t] != 0:
                f = A[k][t] / d
                for r in range(n):
                    A[r][t] = A[r][t] - f * A[r][k]
        k += 1
    return pos, neg, n - pos - neg


# ---------------------------------------------------------------------------
# characteristic polynomials and exact root extraction
# ---------------------------------------------------------------------------


def char_poly(M):
    """Monic characteristic polynomial det(xI - M), ascending coefficients.

    Faddeev-LeVerrier recursion; exact whenever the entries are exact.
    """
    n, m = shape(M)
    if n != m:
        raise ValueError("characteristic polynomial of non-square matrix")
    if n == 0:
        return [Fraction(1)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = mat_copy(M)
    for k in range(1, n + 1):
        c = -_trace(Mk) / k
        coeffs[n - k] = simplify_scalar(c)
        if k < n:
            Mk = mat_mul(M, _add_scalar_diag(Mk, c))
    return coeffs


def _trace(M):
    return sum(M[i][i] for i in range(len(M)))


def _add_scalar_diag(M, c):
    out = mat_copy(M)
    for i in range(len(M)):
        out[i][i] = out[i][i] + c
    return out


def poly_eval(coeffs, x):
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


def poly_deriv(coeffs):
    return [c * k for k, c in enumerate(coeffs)][1:] or [Fraction(0)]


def poly_deflate(coeffs, root):
    """Divide by (x - root); returns (quotient, remainder)."""
    q = []
    acc = 0
    for c in reversed(coeffs):
        acc = acc * root + c
        q.append(acc)
    rem = q.pop()
    q.reverse()
    # q currently holds the Horner accumulations shifted by one
    return q, rem


def _poly_degree(coeffs):
    d = len(coeffs) - 1
    while d > 0 and coeffs[d] == 0:
        d -= 1
    return d


def poly_gcd_exact(a, b):
    """Monic gcd over the exact field QQ(i)."""
    a = list(a[:_poly_degree(a) + 1])
    b = list(b[:_poly_degree(b) + 1])
    while any(c != 0 for c in b):
        a, b = b, _poly_mod(a, b)
        b = b[:_poly_degree(b) + 1]
    lead = a[-1]
    if lead == 0:
        return [Fraction(1)]
    return [simplify_scalar(c / lead) for c in a]


def _poly_mod(a, b):
    a = list(a)
    db = _poly_degree(b)
    lead = b[db]
    while _poly_degree(a) >= db and any(c != 0 for c in a):
        da = _poly_degree(a)
        if a[da] == 0:
            a = a[:da]
            continue
        f = a[da] / lead
        for i in range(db + 1):
            a[da - db + i] = simplify_scalar(a[da - db + i] - f * b[i])
        a[da] = 0
    return a


def poly_squarefree_part(coeffs):
    g = poly_gcd_exact(coeffs, poly_deriv(coeffs))
    if _poly_degree(g) == 0:
        return list(coeffs)
    q = _poly_div_exact(coeffs, g)
    return q


def _poly_div_exact(a, b):
    """Exact quotient a / b (remainder must vanish)."""
    a = list(a[:_poly_degree(a) + 1])
    db = _poly_degree(b)
    lead = b[db]
    q = [Fraction(0)] * (max(_poly_degree(a) - db, 0) + 1)
    while _poly_degree(a) >= db and any(c != 0 for c in a):
        da = _poly_degree(a)
        if a[da] == 0:
            a = a[:da]
            continue
        f = simplify_scalar(a[da] / lead)
        q[da - db] = f
        for i in range(db + 1):
            a[da - db + i] = simplify_scalar(a[da - db + i] - f * b[i])
    return q


def _newton_polish(coeffs_float, dcoeffs_float, z: complex, iters: int = 60) -> complex:
    for _ in range(iters):
        p = 0j
        for c in reversed(coeffs_float):
            p = p * z + c
        dp = 0j
        for c in reversed(dcoeffs_float):
            dp = dp * z + c
        if dp == 0:
            break
        step = p / dp
        z = z - step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


def poly_roots_hybrid(coeffs, snap_tol: float = 1e-7):
    """Roots of an exact polynomial.

    Returns (exact_roots, float_roots) where exact_roots is a list of
    (scalar, multiplicity) verified by exact evaluation, and float_roots
    lists (complex, multiplicity) for the residual factor.  Floating roots
    are Newton-polished on the exact square-free part, so simple roots are
    accurate to machine precision even when the original had multiplicities.
    """
    from .scalars import snap_to_exact

    deg = _poly_degree(coeffs)
    coeffs = [simplify_scalar(_to_field(c)) for c in coeffs[:deg + 1]]
    if deg == 0:
        return [], []
    sf = poly_squarefree_part(coeffs)
    sf_float = [as_complex(c) for c in sf]
    dsf_float = [as_complex(c) for c in poly_deriv(sf)]
    approx = np.roots(list(reversed(sf_float)))
    polished = [_newton_polish(sf_float, dsf_float, complex(z)) for z in approx]

    exact_roots = []
    remaining = list(coeffs)
    float_candidates = []
    for z in polished:
        cand = snap_to_exact(z, snap_tol)
        if cand is not None and poly_eval(coeffs, cand) == 0:
            if any(r == cand for r, _ in exact_roots):
                continue
            mult = 0
            while _poly_degree(remaining) >= 1:
                q, rem = poly_deflate(remaining, cand)
                if rem != 0:
                    break
                remaining = [simplify_scalar(c) for c in q]
                mult += 1
            if mult:
                exact_roots.append((cand, mult))
                continue
        float_candidates.append(z)

    float_roots = []
    if _poly_degree(remaining) >= 1 and float_candidates:
        rem_float = [as_complex(c) for c in remaining]
        for z in float_candidates:
            # multiplicity by tolerant synthetic division of the residual factor
            mult = 0
            work = list(rem_float)
            scale = max(abs(c) for c in work)
            while len(work) > 1:
                q, rem = poly_deflate(work, z)
                if abs(rem) > 1e-6 * max(scale, 1.0):
                    break
                work = q
                mult += 1
            if mult == 0:
                mult = 1
            if not any(abs(z - prev) <= 1e-9 * max(1.0, abs(z)) for prev, _ in float_roots):
                float_roots.append((z, mult))
    return exact_roots, float_roots


def eigenvalues(M, mode: Mode = EXACT):
    """Eigenvalues with multiplicity: (exact list, float list)."""
    if not M:
        return [], []
    if not has_inexact_entries(M):
        return poly_roots_hybrid(char_poly(M))
    vals = np.linalg.eigvals(to_numpy(M))
    clusters = []
    scale = max(1.0, float(np.abs(vals).max(initial=0.0)))
    for z in vals:
        for c in clusters:
            if abs(z - c[0]) <= 1000 * _effective_eps(mode) * scale:
                c[1] += 1
                break
        else:
            clusters.append([complex(z), 1])
    return [], [(z, m) for z, m in clusters]
