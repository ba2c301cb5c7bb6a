"""Finite-dimensional Lie algebras with 2-cocycles (linear pencils).

A linear pencil pairs a Lie algebra (structure constants over the reals or
Gaussian rationals) with a skew 2-cocycle; its pencil of forms on the dual is
<x, [xi, eta]> + lambda A(xi, eta).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatchError, InputFormatError, PreconditionError
from .exactlin import (char_poly, intersect_dims, mat_rank, nullspace,
                       poly_eval, poly_squarefree_part, subspace_dim)
from .poly import Poly
from .sampling import SamplingPolicy
from .scalars import (EXACT, Mode, QQi, as_complex, cimag, creal,
                      format_scalar, is_exact_scalar, parse_rational,
                      simplify_scalar)
from .tensorfield import PoissonTensorField

REAL = "real"
COMPLEX = "complex"


class LieAlgebra:
    """Structure constants c_{ij}^k, antisymmetric in (i, j); 0-based indices."""

    def __init__(self, dim: int, field: str = REAL, basis_labels=None):
        if field not in (REAL, COMPLEX):
            raise DimensionMismatchError("field must be 'real' or 'complex'")
        self.dim = dim
        self.field = field
        self.labels = list(basis_labels) if basis_labels else [f"e{i + 1}" for i in range(dim)]
        self._c = {}

    def set_bracket(self, i: int, j: int, vector):
        """Declare [e_i, e_j] = vector (and the antisymmetric partner)."""
        if i == j:
            raise DimensionMismatchError("bracket of a basis vector with itself")
        vec = [simplify_scalar(v) for v in vector]
        if len(vec) != self.dim:
            raise DimensionMismatchError("bracket value arity mismatch")
        if i > j:
            i, j = j, i
            vec = [-v for v in vec]
        if any(v != 0 for v in vec):
            self._c[(i, j)] = vec
        else:
            self._c.pop((i, j), None)

    def structure_vector(self, i: int, j: int):
        if i == j:
            return [Fraction(0)] * self.dim
        if i < j:
            return list(self._c.get((i, j), [Fraction(0)] * self.dim))
        return [-v for v in self._c.get((j, i), [Fraction(0)] * self.dim)]

    def bracket(self, x, y):
        """[x, y] for coefficient vectors x, y."""
        out = [Fraction(0)] * self.dim
        for (i, j), vec in self._c.items():
            coef = x[i] * y[j] - x[j] * y[i]
            if coef != 0:
                for k in range(self.dim):
                    if vec[k] != 0:
                        out[k] = out[k] + coef * vec[k]
        return [simplify_scalar(v) for v in out]

    def ad_matrix(self, x):
        """Matrix of ad_x = [x, .] on the basis."""
        cols = []
        for j in range(self.dim):
            e_j = [Fraction(0)] * self.dim
            e_j[j] = Fraction(1)
            cols.append(self.bracket(x, e_j))
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def verify_jacobi(self) -> bool:
        d = self.dim
        for i in range(d):
            ei = [Fraction(1) if t == i else Fraction(0) for t in range(d)]
            for j in range(i + 1, d):
                ej = [Fraction(1) if t == j else Fraction(0) for t in range(d)]
                for k in range(j + 1, d):
                    ek = [Fraction(1) if t == k else Fraction(0) for t in range(d)]
                    total = [a + b + c for a, b, c in zip(
                        self.bracket(self.bracket(ei, ej), ek),
                        self.bracket(self.bracket(ej, ek), ei),
                        self.bracket(self.bracket(ek, ei), ej))]
                    if any(v != 0 for v in total):
                        return False
        return True

    def jacobi_violation(self):
        """First violating triple (i, j, k) or None."""
        d = self.dim
        basis = [[Fraction(1) if t == i else Fraction(0) for t in range(d)] for i in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    total = [a + b + c for a, b, c in zip(
                        self.bracket(self.bracket(basis[i], basis[j]), basis[k]),
                        self.bracket(self.bracket(basis[j], basis[k]), basis[i]),
                        self.bracket(self.bracket(basis[k], basis[i]), basis[j]))]
                    if any(v != 0 for v in total):
                        return (i, j, k)
        return None

    def center(self, mode: Mode = EXACT):
        """Basis of {x : [x, g] = 0}."""
        rows = []
        for j in range(self.dim):
            for k in range(self.dim):
                rows.append([self.structure_vector(i, j)[k] for i in range(self.dim)])
        return nullspace(rows, mode)

    def derived_basis(self, mode: Mode = EXACT):
        vecs = [vec for vec in self._c.values()]
        out = []
        for v in vecs:
            if subspace_dim(out + [list(v)], mode) > len(out):
                out.append(list(v))
        return out

    def lie_poisson_field(self, varnames=None) -> PoissonTensorField:
        """Linear Poisson field P^{ij}(x) = sum_k c_{ij}^k x_k (real algebras)."""
        if self.field != REAL:
            raise PreconditionError("Lie-Poisson fields are built for real algebras")
        f = PoissonTensorField(self.dim, varnames or self.labels)
        for (i, j), vec in self._c.items():
            poly = Poly.zero(self.dim)
            for k, c in enumerate(vec):
                if c != 0:
                    poly = poly + Poly.variable(self.dim, k) * Fraction(c)
            f.set_entry(i, j, poly)
        return f

    def direct_sum(self, other: "LieAlgebra") -> "LieAlgebra":
        if self.field != other.field:
            raise DimensionMismatchError("direct sum over mixed fields")
        out = LieAlgebra(self.dim + other.dim, self.field,
                         [f"a.{l}" for l in self.labels] + [f"b.{l}" for l in other.labels])
        for (i, j), vec in self._c.items():
            out.set_bracket(i, j, list(vec) + [Fraction(0)] * other.dim)
        for (i, j), vec in other._c.items():
            out.set_bracket(i + self.dim, j + self.dim,
                            [Fraction(0)] * self.dim + list(vec))
        return out

    def quotient_by_central(self, ideal_basis) -> tuple:
        """Quotient by a central ideal; returns (algebra, complement_basis)."""
        for z in ideal_basis:
            adz = self.ad_matrix(z)
            if any(v != 0 for row in adz for v in row):
                raise PreconditionError("ideal basis vector is not central")
        from .exactlin import rref, transpose
        ideal = [list(z) for z in ideal_basis]
        comp_idx = []
        current = [list(z) for z in ideal]
        for i in range(self.dim):
            e = [Fraction(1) if t == i else Fraction(0) for t in range(self.dim)]
            if subspace_dim(current + [e]) > len(current):
                current.append(e)
                comp_idx.append(i)
        m = len(comp_idx)
        out = LieAlgebra(m, self.field, [self.labels[i] for i in comp_idx])
        basis_mat = [[Fraction(1) if t == comp_idx[j] else Fraction(0)
                      for t in range(self.dim)] for j in range(m)]
        full = ideal + basis_mat
        from .exactlin import solve_exact
        A = transpose(full)
        for u in range(m):
            for v in range(u + 1, m):
                w = self.bracket(basis_mat[u], basis_mat[v])
                coords = solve_exact(A, w)
                if coords is None:
                    raise PreconditionError("quotient bracket left the span")
                out.set_bracket(u, v, coords[len(ideal):])
        if not out.verify_jacobi():
            raise PreconditionError("quotient failed the Jacobi identity")
        return out, basis_mat

    def to_json_dict(self) -> dict:
        triples = []
        for (i, j), vec in sorted(self._c.items()):
            for k, c in enumerate(vec):
                if c != 0:
                    triples.append({"i": i + 1, "j": j + 1, "k": k + 1,
                                    "c": format_scalar(c)})
        return {"dim": self.dim, "field": self.field, "basis": self.labels,
                "structure": triples}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LieAlgebra":
        try:
            dim = int(data["dim"])
            field_name = data.get("field", REAL)
            alg = cls(dim, field_name, data.get("basis"))
            acc: dict = {}
            for t in data.get("structure", []):
                i, j, k = int(t["i"]) - 1, int(t["j"]) - 1, int(t["k"]) - 1
                if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim) or i == j:
                    raise InputFormatError(f"bad structure triple {t}", position=t)
                if i > j:
                    i, j = j, i
                    sign = -1
                else:
                    sign = 1
                vec = acc.setdefault((i, j), [Fraction(0)] * dim)
                vec[k] = vec[k] + sign * _parse_scalar(t["c"])
            for (i, j), vec in acc.items():
                alg.set_bracket(i, j, vec)
            return alg
        except (KeyError, ValueError, TypeError) as exc:
            raise InputFormatError(f"malformed Lie algebra file: {exc}") from exc


def _parse_scalar(c):
    if isinstance(c, dict):
        return simplify_scalar(QQi(parse_rational(c["re"]), parse_rational(c["im"])))
    return parse_rational(c)


@dataclass
class TwoCocycle:
    matrix: list

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def value(self, x, y):
        total = 0
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.matrix[i]
            for j, yj in enumerate(y):
                if yj != 0 and row[j] != 0:
                    total = total + xi * row[j] * yj
        return simplify_scalar(total + Fraction(0))

    def scale(self, c) -> "TwoCocycle":
        return TwoCocycle([[simplify_scalar(c * v) for v in row] for row in self.matrix])

    def rank(self, mode: Mode = EXACT) -> int:
        return mat_rank(self.matrix, mode)

    def to_json_dict(self) -> dict:
        pairs = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.matrix[i][j] != 0:
                    pairs.append({"i": i + 1, "j": j + 1,
                                  "c": format_scalar(self.matrix[i][j])})
        return {"dim": self.dim, "cocycle": pairs}

    @classmethod
    def from_json_dict(cls, data: dict, dim: int | None = None) -> "TwoCocycle":
        try:
            d = int(data.get("dim", dim))
            M = [[Fraction(0)] * d for _ in range(d)]
            for t in data.get("cocycle", []):
                i, j = int(t["i"]) - 1, int(t["j"]) - 1
                if not (0 <= i < d and 0 <= j < d) or i == j:
                    raise InputFormatError(f"bad cocycle pair {t}", position=t)
                v = _parse_scalar(t["c"])
                M[i][j] = M[i][j] + v
                M[j][i] = M[j][i] - v
            return cls(M)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputFormatError(f"malformed cocycle file: {exc}") from exc


def argument_shift_cocycle(algebra: LieAlgebra, a) -> TwoCocycle:
    """A_a(xi, eta) = <a, [xi, eta]> for a covector a on the algebra."""
    d = algebra.dim
    M = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            v = sum(ak * ck for ak, ck in zip(a, algebra.structure_vector(i, j)))
            M[i][j] = simplify_scalar(v + Fraction(0))
            M[j][i] = -M[i][j]
    return TwoCocycle(M)


@dataclass
class LinearPencil:
    algebra: LieAlgebra
    cocycle: TwoCocycle
    origin_lambda: object = None     # bookkeeping: which spectrum value it linearizes
    regular_marker: bool = False     # set when the parameter was regular (abelian kernel)

    def pencil_matrix(self, x, lam):
        """<x, [e_i, e_j]> + lambda A(e_i, e_j) as a matrix."""
        d = self.algebra.dim
        M = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                v = sum(xk * ck for xk, ck in zip(x, self.algebra.structure_vector(i, j)))
                v = v + lam * self.cocycle.matrix[i][j]
                M[i][j] = simplify_scalar(v + Fraction(0))
                M[j][i] = -M[i][j]
        return M


def is_cocycle(algebra: LieAlgebra, form: TwoCocycle, mode: Mode = EXACT) -> bool:
    """Exact verification of A([xi,eta],zeta) + A([eta,zeta],xi) + A([zeta,xi],eta) = 0."""
    d = algebra.dim
    basis = [[Fraction(1) if t == i else Fraction(0) for t in range(d)] for i in range(d)]
    scale = max((abs(as_complex(v)) for row in form.matrix for v in row), default=1.0)
    for i in range(d):
        for j in range(i + 1, d):
            bij = algebra.bracket(basis[i], basis[j])
            for k in range(j + 1, d):
                total = (form.value(bij, basis[k])
                         + form.value(algebra.bracket(basis[j], basis[k]), basis[i])
                         + form.value(algebra.bracket(basis[k], basis[i]), basis[j]))
                if not mode.zero(total, scale):
                    return False
    return True


@dataclass
class CocycleKernel:
    basis: list
    abelian: bool
    ad_semisimple: bool
    per_generator_semisimple: list


def matrix_is_semisimple(M, mode: Mode = EXACT) -> bool:
    """Diagonalizable over C: the square-free part of the char poly kills M."""
    if not M:
        return True
    if mode.is_exact or all(is_exact_scalar(x) for row in M for x in row):
        p = char_poly(M)
        sf = poly_squarefree_part(p)
        from .exactlin import identity, mat_mul, mat_scale, mat_add, zeros
        n = len(M)
        acc = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            acc[i][i] = sf[0]
        power = identity(n)
        for c in sf[1:]:
            power = mat_mul(power, M)
            if c != 0:
                acc = mat_add(acc, mat_scale(power, c))
        return all(v == 0 for row in acc for v in row)
    import numpy as np
    from .exactlin import to_numpy, svd_rank
    A = to_numpy(M)
    vals = np.linalg.eigvals(A)
    scale = max(1.0, float(np.abs(vals).max(initial=0.0)))
    clusters = []
    for z in vals:
        for c in clusters:
            if abs(z - c[0]) <= 1000 * mode.eps * scale:
                c[1] += 1
                break
        else:
            clusters.append([complex(z), 1])
    n = len(M)
    for z, mult in clusters:
        shifted = A - z * np.eye(n)
        geo = n - svd_rank([list(r) for r in shifted], 1000 * mode.eps)
        if geo != mult:
            return False
    return True


def kernel_of_cocycle(lp: LinearPencil, mode: Mode = EXACT) -> CocycleKernel:
    """Ker A as a subalgebra, with abelian and ad-semisimplicity flags."""
    basis = nullspace(lp.cocycle.matrix, mode)
    abelian = True
    scale = 1.0
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            br = lp.algebra.bracket(basis[i], basis[j])
            if any(not mode.zero(v, scale) for v in br):
                abelian = False
    per_gen = [matrix_is_semisimple(lp.algebra.ad_matrix(x), mode) for x in basis]
    return CocycleKernel(basis=basis, abelian=abelian,
                         ad_semisimple=all(per_gen),
                         per_generator_semisimple=per_gen)


def central_extension(algebra: LieAlgebra, cocycle: TwoCocycle,
                      check: bool = True) -> LieAlgebra:
    """One-dimensional central extension [x,y]_A = [x,y] + A(x,y) z."""
    d = algebra.dim
    out = LieAlgebra(d + 1, algebra.field, algebra.labels + ["z"])
    for i in range(d):
        for j in range(i + 1, d):
            vec = algebra.structure_vector(i, j) + [cocycle.matrix[i][j]]
            out.set_bracket(i, j, vec)
    if check:
        if not out.verify_jacobi():
            raise PreconditionError("central extension failed Jacobi (form is not closed)")
        # the lift of A must be the coboundary of the new dual coordinate
        for i in range(d):
            for j in range(i + 1, d):
                ei = [Fraction(1) if t == i else Fraction(0) for t in range(d + 1)]
                ej = [Fraction(1) if t == j else Fraction(0) for t in range(d + 1)]
                if out.bracket(ei, ej)[d] != cocycle.matrix[i][j]:
                    raise PreconditionError("lifted form is not the coboundary of z*")
    return out


def is_regular_cocycle(lp: LinearPencil, sampler: SamplingPolicy | None = None,
                       mode: Mode = EXACT) -> bool:
    """rank of the associated pencil equals rank A (sampled, exact re-check)."""
    if sampler is None:
        sampler = SamplingPolicy(31)
    d = lp.algebra.dim
    target = lp.cocycle.rank(mode)
    npoints = 2 * d + 3
    lams = sampler.distinct_rationals(d + 1)
    best = 0
    for _ in range(npoints):
        if lp.algebra.field == COMPLEX:
            x = [simplify_scalar(QQi(sampler.small_rational(), sampler.small_rational()))
                 for _ in range(d)]
        else:
            x = sampler.rational_point(d)
        for lam in lams:
            M = lp.pencil_matrix(x, lam)
            best = max(best, mat_rank(M, mode))
            if best > target:
                return False
    return best == target
