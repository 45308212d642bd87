"""Exact rational linear algebra and a small exact linear-program solver.

Every value in this module is a `fractions.Fraction`; no floating point is
used anywhere, so all comparisons and solver results are exact.  Matrices are
tiny (curve configurations of a dozen-odd curves), so the algorithms favor
exactness and determinism over asymptotic speed: Bareiss fraction-free
elimination for determinants, Sylvester's criterion for definiteness, and a
two-phase simplex with Bland's anti-cycling rule for linear programs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]
RatVector = tuple[Fraction, ...]

#: Principal-minor enumeration walks all 2^n - 1 index subsets.
PRINCIPAL_MINOR_DIM_CAP = 15


class NonSymmetric(ValueError):
    """A symmetric matrix was required but the input is not symmetric."""


class DimensionTooLarge(ValueError):
    """Matrix dimension exceeds the configured enumeration cap."""


class Singular(ValueError):
    """A nonsingular matrix was required but det = 0."""


def rat(value: RationalLike) -> Rational:
    """Coerce an int, a string like ``"3/2"``, or a Fraction to a Rational."""
    return Fraction(value)


def ratvec(values: Iterable[RationalLike]) -> RatVector:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class RatMatrix:
    """Square matrix of exact rationals, immutable after construction."""

    entries: tuple[tuple[Rational, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]]) -> "RatMatrix":
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> tuple[Rational, ...]:
        return self.entries[i]

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.n) for j in range(i))

    def submatrix(self, indices: Sequence[int]) -> "RatMatrix":
        """Principal submatrix on the given index sequence, in that order."""
        e = self.entries
        return RatMatrix(tuple(tuple(e[i][j] for j in indices) for i in indices))

    def mul_vec(self, v: Sequence[Rational]) -> RatVector:
        if len(v) != self.n:
            raise ValueError("dimension mismatch")
        return tuple(sum(row[j] * v[j] for j in range(self.n)) for row in self.entries)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(tuple(tuple(-v for v in row) for row in self.entries))


def determinant(matrix: RatMatrix) -> Rational:
    """Exact determinant by Bareiss fraction-free elimination.

    Deterministic: pivots are searched in row order, each swap flips the sign.
    The 0x0 determinant is 1 by convention.
    """
    n = matrix.n
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in matrix.entries]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            head = a[i][k]
            if head == 0 and prev == 1:
                # row untouched by this step apart from the exact division
                for j in range(k + 1, n):
                    a[i][j] = a[i][j] * pivot
                continue
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - head * a[k][j]) / prev
        prev = pivot
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def leading_principal_minors(matrix: RatMatrix) -> list[Rational]:
    """det of the top-left k x k blocks, k = 1..n."""
    return [determinant(matrix.submatrix(range(k))) for k in range(1, matrix.n + 1)]


def is_negative_definite(matrix: RatMatrix) -> bool:
    """Sylvester test: (-1)^k det(M_k) > 0 for every leading principal minor.

    Exact, no tolerance.  The empty matrix is vacuously negative definite.
    Raises NonSymmetric when the input is not symmetric.
    """
    if not matrix.is_symmetric():
        raise NonSymmetric("negative definiteness is tested on symmetric matrices only")
    for k, minor in enumerate(leading_principal_minors(matrix), start=1):
        if (minor if k % 2 == 0 else -minor) <= 0:
            return False
    return True


def all_principal_minors_nonneg(
    matrix: RatMatrix, dim_cap: int = PRINCIPAL_MINOR_DIM_CAP
) -> bool:
    """True iff every principal minor (all 2^n - 1 index subsets) is >= 0."""
    n = matrix.n
    if n > dim_cap:
        raise DimensionTooLarge(f"principal-minor enumeration capped at {dim_cap}, got {n}")
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            if determinant(matrix.submatrix(subset)) < 0:
                return False
    return True


def solve_linear(matrix: RatMatrix, b: Sequence[Rational]) -> RatVector:
    """Exact unique solution of M x = b via Gaussian elimination.

    Raises Singular when det(M) = 0.  The residual M x - b is identically zero.
    """
    n = matrix.n
    if len(b) != n:
        raise ValueError("right-hand side dimension mismatch")
    aug = [list(row) + [Fraction(bv)] for row, bv in zip(matrix.entries, b)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise Singular("matrix is singular")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [v / pivot for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * p for a, p in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))


# --- exact linear programming -------------------------------------------------

Relation = str  # "<=", ">=", "="
Constraint = tuple[Sequence[RationalLike], Relation, RationalLike]
Bounds = Optional[Sequence[tuple[Optional[RationalLike], Optional[RationalLike]]]]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    point: Optional[RatVector]
    value: Optional[Rational]


def _pivot(tableau: list[list[Fraction]], row: int, col: int) -> None:
    pivot = tableau[row][col]
    prow = [v / pivot for v in tableau[row]]
    tableau[row] = prow
    for i, trow in enumerate(tableau):
        if i == row:
            continue
        factor = trow[col]
        if factor:
            tableau[i] = [a - factor * b for a, b in zip(trow, prow)]


def _simplex(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    ncols: int,
) -> str:
    """Minimize cost over the tableau in place; Bland's rule throughout.

    Entering variable: lowest column index with negative reduced cost.
    Leaving variable: minimum ratio, ties broken by lowest basic index.
    """
    m = len(tableau)
    while True:
        cb = [cost[b] for b in basis]
        enter = -1
        for j in range(ncols):
            rc = cost[j]
            for i in range(m):
                t = tableau[i][j]
                if t:
                    rc -= cb[i] * t
            if rc < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best: Optional[Fraction] = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(tableau, leave, enter)
        basis[leave] = enter


def lp_optimize(
    objective: Sequence[RationalLike],
    direction: str,
    constraints: Sequence[Constraint],
    bounds: Bounds = None,
) -> LPResult:
    """Exact optimum of a rational linear program.

    ``constraints`` is a list of (coefficients, relation, rhs) with relation
    one of "<=", ">=", "=".  ``bounds`` gives per-variable (lower, upper)
    pairs, None meaning unbounded on that side; when omitted all variables
    are free.  Infeasible and unbounded outcomes are statuses, never
    exceptions.  Pivoting follows Bland's rule, so repeated runs return the
    identical vertex.
    """
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    c = [Fraction(v) for v in objective]
    n = len(c)
    rows_in = []
    for coeffs, rel, rhs in constraints:
        row = [Fraction(v) for v in coeffs]
        if len(row) != n:
            raise ValueError("constraint dimension mismatch")
        if rel not in ("<=", ">=", "="):
            raise ValueError(f"unknown relation {rel!r}")
        rows_in.append((row, rel, Fraction(rhs)))
    if bounds is None:
        bnds: list[tuple[Optional[Fraction], Optional[Fraction]]] = [(None, None)] * n
    else:
        if len(bounds) != n:
            raise ValueError("bounds dimension mismatch")
        bnds = [
            (None if lo is None else Fraction(lo), None if hi is None else Fraction(hi))
            for lo, hi in bounds
        ]

    # Substitute each variable by nonnegative columns:
    #   lower bound l:  x = l + y          (upper bound becomes a row y <= u - l)
    #   upper bound u only:  x = u - y
    #   free:  x = y+ - y-
    offsets = [_ZERO] * n
    var_cols: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    ncols_y = 0
    ub_rows: list[tuple[int, Fraction]] = []
    for j in range(n):
        lo, hi = bnds[j]
        if lo is not None and hi is not None and hi < lo:
            return LPResult(INFEASIBLE, None, None)
        if lo is not None:
            offsets[j] = lo
            var_cols[j].append((ncols_y, 1))
            if hi is not None:
                ub_rows.append((ncols_y, hi - lo))
            ncols_y += 1
        elif hi is not None:
            offsets[j] = hi
            var_cols[j].append((ncols_y, -1))
            ncols_y += 1
        else:
            var_cols[j].append((ncols_y, 1))
            var_cols[j].append((ncols_y + 1, -1))
            ncols_y += 2

    norm_rows: list[tuple[list[Fraction], str, Fraction]] = []
    for row, rel, rhs in rows_in:
        shifted = rhs - sum(row[j] * offsets[j] for j in range(n) if row[j])
        arow = [_ZERO] * ncols_y
        for j in range(n):
            aj = row[j]
            if aj:
                for col, sgn in var_cols[j]:
                    arow[col] += aj if sgn > 0 else -aj
        if shifted < 0:
            arow = [-v for v in arow]
            shifted = -shifted
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        norm_rows.append((arow, rel, shifted))
    for col, ub in ub_rows:
        arow = [_ZERO] * ncols_y
        arow[col] = _ONE
        norm_rows.append((arow, "<=", ub))  # ub >= 0 since hi >= lo

    n_slack = sum(1 for _, rel, _ in norm_rows if rel != "=")
    n_art = sum(1 for _, rel, _ in norm_rows if rel != "<=")
    total = ncols_y + n_slack + n_art
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    art_first = ncols_y + n_slack
    si, ai = ncols_y, art_first
    for arow, rel, rhs in norm_rows:
        trow = arow + [_ZERO] * (n_slack + n_art) + [rhs]
        if rel == "<=":
            trow[si] = _ONE
            basis.append(si)
            si += 1
        elif rel == ">=":
            trow[si] = -_ONE
            si += 1
            trow[ai] = _ONE
            basis.append(ai)
            ai += 1
        else:
            trow[ai] = _ONE
            basis.append(ai)
            ai += 1
        tableau.append(trow)

    if n_art:
        phase1 = [_ZERO] * total
        for j in range(art_first, total):
            phase1[j] = _ONE
        _simplex(tableau, basis, phase1, total)
        residue = sum(tableau[i][-1] for i in range(len(tableau)) if basis[i] >= art_first)
        if residue != 0:
            return LPResult(INFEASIBLE, None, None)
        # Drive leftover artificials out of the degenerate basis, then drop
        # their columns (and any all-zero redundant rows).
        for r in range(len(tableau)):
            if basis[r] >= art_first:
                col = next((j for j in range(art_first) if tableau[r][j] != 0), None)
                if col is not None:
                    _pivot(tableau, r, col)
                    basis[r] = col
        keep = [r for r in range(len(tableau)) if basis[r] < art_first]
        tableau = [tableau[r][:art_first] + [tableau[r][-1]] for r in keep]
        basis = [basis[r] for r in keep]

    cmin = c if direction == "min" else [-v for v in c]
    cost = [_ZERO] * (ncols_y + n_slack)
    for j in range(n):
        if cmin[j]:
            for col, sgn in var_cols[j]:
                cost[col] += cmin[j] if sgn > 0 else -cmin[j]
    status = _simplex(tableau, basis, cost, ncols_y + n_slack)
    if status != OPTIMAL:
        return LPResult(UNBOUNDED, None, None)

    yvals = [_ZERO] * ncols_y
    for i, b in enumerate(basis):
        if b < ncols_y:
            yvals[b] = tableau[i][-1]
    point = []
    for j in range(n):
        xj = offsets[j]
        for col, sgn in var_cols[j]:
            xj += yvals[col] if sgn > 0 else -yvals[col]
        point.append(xj)
    value = sum(c[j] * point[j] for j in range(n)) if n else _ZERO
    return LPResult(OPTIMAL, tuple(point), value)
