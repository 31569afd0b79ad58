"""Exact rational dense matrices with a floating-point symmetric eigensolver.

Scalars are stdlib ``fractions.Fraction`` values, so every entry is always
reduced with a positive denominator.  The only place precision is lost is the
explicit conversion to float64 (``RatMatrix.to_float``), used by the Jacobi
eigensolver and the float branch of the PSD check.  Exact products are
computed by scaling to integer matrices; the integer work is delegated to
numpy when it provably fits in int64 and to Python big integers otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

Rat = Fraction

_INT64_SAFE = 2**62


class MatrixShapeError(ValueError):
    """Raised when operands are not square or dimensions do not match."""


class NotSymmetricError(ValueError):
    """Raised when a symmetric-only operation receives an asymmetric matrix."""


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi sweeps fail to reach the off-diagonal threshold."""


class DimensionCapError(ValueError):
    """Raised when exact PSD checking is requested above the dimension cap."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # floats are accepted only when they are exact (e.g. 0.0, 1.0, 0.5)
        return Fraction(x)
    return Fraction(x)


class RatMatrix:
    """Immutable dense square matrix of exact rationals."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise MatrixShapeError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "RatMatrix":
        zero = Fraction(0)
        return cls([[zero] * n for _ in range(n)])

    @classmethod
    def ones(cls, n: int) -> "RatMatrix":
        one = Fraction(1)
        return cls([[one] * n for _ in range(n)])

    @classmethod
    def from_int_array(cls, arr, den: int = 1) -> "RatMatrix":
        """Build from an integer array, dividing every entry by ``den``."""
        return cls([[Fraction(int(v), den) for v in row] for row in arr])

    # -- basics ------------------------------------------------------------

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RatMatrix(n={self.n})"

    def row(self, i) -> tuple:
        return self.rows[i]

    def column(self, j) -> tuple:
        return tuple(row[j] for row in self.rows)

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.n))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        rows = self.rows
        return all(
            rows[i][j] == rows[j][i] for i in range(self.n) for j in range(i + 1, self.n)
        )

    def is_zero_one(self) -> bool:
        return all(x == 0 or x == 1 for row in self.rows for x in row)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.n != other.n:
            raise MatrixShapeError("dimension mismatch")
        return RatMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.n != other.n:
            raise MatrixShapeError("dimension mismatch")
        return RatMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def scale(self, c) -> "RatMatrix":
        c = _as_fraction(c)
        return RatMatrix([[c * x for x in row] for row in self.rows])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return mat_mul(self, other)

    def apply(self, v):
        """Exact matrix-vector product, returns a tuple of Fractions."""
        if len(v) != self.n:
            raise MatrixShapeError("dimension mismatch")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.rows)

    # -- conversions -------------------------------------------------------

    def scaled_integers(self):
        """Return ``(int_array, den)`` with ``self == int_array / den``.

        The array dtype is int64 when every entry fits, object otherwise.
        """
        den = 1
        for row in self.rows:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [[x.numerator * (den // x.denominator) for x in row] for row in self.rows]
        peak = max((abs(v) for row in ints for v in row), default=0)
        dtype = np.int64 if peak < _INT64_SAFE else object
        return np.array(ints, dtype=dtype), den

    def to_float(self) -> np.ndarray:
        """Round-to-nearest float64 image; the single precision-loss point."""
        return np.array([[float(x) for x in row] for row in self.rows], dtype=np.float64)

    # -- JSON --------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "rows": [[f"{x.numerator}/{x.denominator}" for x in row] for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "RatMatrix":
        rows = [[Fraction(s) for s in row] for row in d["rows"]]
        m = cls(rows)
        if m.n != d["n"]:
            raise MatrixShapeError("declared dimension does not match rows")
        return m

    @classmethod
    def from_json(cls, s: str) -> "RatMatrix":
        return cls.from_json_dict(json.loads(s))


def _int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product.

    Routes through float64 BLAS when every intermediate sum provably fits in
    the 2^53 exact-integer range (then results are exact), falls back to int64
    and finally to Python big integers.
    """
    n = a.shape[1]
    if a.dtype != object and b.dtype != object:
        peak_a = int(np.abs(a).max(initial=0))
        peak_b = int(np.abs(b).max(initial=0))
        bound = peak_a * peak_b * max(n, 1)
        if bound < 2**53:
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return np.rint(prod).astype(np.int64)
        if bound < _INT64_SAFE:
            return a.astype(np.int64) @ b.astype(np.int64)
    return np.dot(a.astype(object), b.astype(object))


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Exact product of two square rational matrices."""
    if a.n != b.n:
        raise MatrixShapeError(f"dimension mismatch: {a.n} vs {b.n}")
    ia, da = a.scaled_integers()
    ib, db = b.scaled_integers()
    prod = _int_matmul(ia, ib)
    return RatMatrix.from_int_array(prod, da * db)


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product in row-major block layout.

    Entry ``(i*b.n + k, j*b.n + l)`` equals ``a[i,j] * b[k,l]``.
    """
    na, nb = a.n, b.n
    rows = []
    for i in range(na):
        arow = a.rows[i]
        for k in range(nb):
            brow = b.rows[k]
            rows.append([arow[j] * brow[l] for j in range(na) for l in range(nb)])
    return RatMatrix(rows)


# -- symmetric eigensolver (cyclic Jacobi) ----------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a symmetric matrix, sorted descending, with residual.

    ``residual`` is max ||A v - lambda v||_inf over the computed eigenpairs.
    """

    eigenvalues: tuple
    residual: float

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda_max(self) -> float:
        return self.eigenvalues[0]

    @property
    def lambda_min(self) -> float:
        return self.eigenvalues[-1]


def _round_robin_schedule(n: int):
    """Tournament pairing: each sweep visits every index pair exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            i, j = players[k], players[m - 1 - k]
            if i < n and j < n:
                pairs.append((min(i, j), max(i, j)))
        rounds.append(pairs)
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _jacobi_sweeps_numpy(A: np.ndarray, V: np.ndarray, thresh: float, max_sweeps: int) -> int:
    """Round-robin cyclic Jacobi sweeps, batched over disjoint pairs.

    Pure-numpy fallback used when the compiled kernel is unavailable; rounds
    of pairwise-disjoint rotations are applied as one vectorized update.
    Returns the number of sweeps run, or -1 on non-convergence.
    """
    n = A.shape[0]
    schedule = [
        (
            np.fromiter((p[0] for p in pairs), dtype=np.intp),
            np.fromiter((p[1] for p in pairs), dtype=np.intp),
        )
        for pairs in _round_robin_schedule(n)
    ]
    offdiag = np.empty_like(A)
    for sweep in range(max_sweeps):
        np.copyto(offdiag, A)
        np.fill_diagonal(offdiag, 0.0)
        off = float(np.linalg.norm(offdiag))
        if off <= thresh:
            return sweep
        for ii, jj in schedule:
            apq = A[ii, jj]
            live = np.abs(apq) > 1e-300
            if not np.any(live):
                continue
            i2, j2, apq = ii[live], jj[live], apq[live]
            app = A[i2, i2]
            aqq = A[j2, j2]
            theta = (aqq - app) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            ri, rj = A[i2, :].copy(), A[j2, :].copy()
            A[i2, :] = c[:, None] * ri - s[:, None] * rj
            A[j2, :] = s[:, None] * ri + c[:, None] * rj
            ci, cj = A[:, i2].copy(), A[:, j2].copy()
            A[:, i2] = ci * c - cj * s
            A[:, j2] = ci * s + cj * c
            A[i2, j2] = 0.0
            A[j2, i2] = 0.0
            vi, vj = V[:, i2].copy(), V[:, j2].copy()
            V[:, i2] = vi * c - vj * s
            V[:, j2] = vi * s + vj * c
    return -1


_numba_kernel = None
_numba_failed = False


def _get_numba_kernel():
    """Compile the row-cyclic Jacobi sweep kernel once, if numba is present."""
    global _numba_kernel, _numba_failed
    if _numba_kernel is not None or _numba_failed:
        return _numba_kernel
    try:
        import numba
    except ImportError:
        _numba_failed = True
        return None

    @numba.njit(cache=True, fastmath=True)
    def kernel(A, V, thresh, max_sweeps):  # pragma: no cover - compiled
        n = A.shape[0]
        for sweep in range(max_sweeps):
            off = 0.0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    off += A[i, j] * A[i, j]
            off = math.sqrt(2.0 * off)
            if off <= thresh:
                return sweep
            for i in range(n - 1):
                for j in range(i + 1, n):
                    apq = A[i, j]
                    if apq == 0.0:
                        continue
                    theta = (A[j, j] - A[i, i]) / (2.0 * apq)
                    if theta == 0.0:
                        t = 1.0
                    else:
                        sg = 1.0 if theta > 0.0 else -1.0
                        t = sg / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    c = 1.0 / math.sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        aik = A[i, k]
                        ajk = A[j, k]
                        A[i, k] = c * aik - s * ajk
                        A[j, k] = s * aik + c * ajk
                    for k in range(n):
                        aki = A[k, i]
                        akj = A[k, j]
                        A[k, i] = c * aki - s * akj
                        A[k, j] = s * aki + c * akj
                    A[i, j] = 0.0
                    A[j, i] = 0.0
                    for k in range(n):
                        vki = V[k, i]
                        vkj = V[k, j]
                        V[k, i] = c * vki - s * vkj
                        V[k, j] = s * vki + c * vkj
        return -1

    try:
        kernel(np.eye(2), np.eye(2), 1e-9, 5)
    except Exception:
        _numba_failed = True
        return None
    _numba_kernel = kernel
    return _numba_kernel


def _off_norm(A: np.ndarray) -> float:
    B = A.copy()
    np.fill_diagonal(B, 0.0)
    return float(np.linalg.norm(B))


_BLOCK_THRESHOLD = 384
_BLOCK_WIDTH = 64


def _jacobi_block_sweeps(A, V, thresh, max_sweeps, kernel) -> int:
    """Block-cyclic Jacobi: visit block pairs cyclically, diagonalize each
    cache-resident subproblem with the scalar kernel, and apply the
    accumulated rotations to the rest of the matrix as matrix products."""
    n = A.shape[0]
    nb = (n + _BLOCK_WIDTH - 1) // _BLOCK_WIDTH
    blocks = [
        np.arange(k * _BLOCK_WIDTH, min((k + 1) * _BLOCK_WIDTH, n)) for k in range(nb)
    ]
    local_tol = thresh / nb
    fro = float(np.linalg.norm(A))
    prev = math.inf
    for sweep in range(max_sweeps):
        off = _off_norm(A)
        if off <= thresh:
            return sweep
        if off >= 0.99 * prev and off <= 1e-6 * max(1.0, fro):
            return sweep  # rounding floor of the blocked updates
        prev = off
        for bi in range(nb):
            for bj in range(bi, nb):
                idx = blocks[bi] if bi == bj else np.concatenate((blocks[bi], blocks[bj]))
                S = A[np.ix_(idx, idx)].copy()
                Q = np.eye(len(idx))
                kernel(S, Q, local_tol, 2)
                R = Q.T @ A[idx, :]
                R[:, idx] = S
                A[idx, :] = R
                A[:, idx] = R.T
                V[:, idx] = V[:, idx] @ Q
    return -1


def jacobi_eigensystem(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60):
    """Cyclic Jacobi diagonalization of a symmetric float matrix.

    The pivot order is a fixed cyclic schedule: row-cyclic in the compiled
    kernel, block-cyclic above ``_BLOCK_THRESHOLD`` (subproblems are solved
    by the same scalar kernel and the accumulated rotations applied as matrix
    products), and round-robin in the numpy fallback.  All orderings are
    fixed, so results are deterministic for a given input.  Convergence is
    declared when the off-diagonal Frobenius norm falls below
    ``tol * max(1, ||A||_F)``.
    Returns ``(eigenvalues, eigenvectors)`` unsorted, vectors as columns.
    """
    A = np.array(a, dtype=np.float64)
    n = A.shape[0]
    V = np.eye(n)
    if n <= 1:
        return np.diagonal(A).copy(), V
    fro = float(np.linalg.norm(A))
    # below ~16 n eps ||A|| the rotations cannot push the off-norm further
    thresh = max(tol * max(1.0, fro), 16 * np.finfo(np.float64).eps * n * fro)
    kernel = _get_numba_kernel()
    if kernel is None:
        sweeps = _jacobi_sweeps_numpy(A, V, thresh, max_sweeps)
    elif n <= _BLOCK_THRESHOLD:
        sweeps = kernel(A, V, thresh, max_sweeps)
    else:
        sweeps = _jacobi_block_sweeps(A, V, thresh, max_sweeps, kernel)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi did not reach off-diagonal norm {thresh:g} in {max_sweeps} sweeps"
        )
    return np.diagonal(A).copy(), V


def eig_sym(a: RatMatrix, tol: float = 1e-12) -> Spectrum:
    """All eigenvalues of a symmetric rational matrix via cyclic Jacobi."""
    if not a.is_symmetric():
        raise NotSymmetricError("eig_sym requires an exactly symmetric matrix")
    fa = a.to_float()
    w, v = jacobi_eigensystem(fa, tol=tol)
    if a.n == 0:
        return Spectrum(eigenvalues=(), residual=0.0)
    resid = float(np.max(np.abs(fa @ v - v * w[None, :])))
    order = np.argsort(-w, kind="stable")
    return Spectrum(eigenvalues=tuple(float(x) for x in w[order]), residual=resid)


# -- PSD checking ------------------------------------------------------------


@dataclass(frozen=True)
class PsdReport:
    verdict: str                # "psd" | "not_psd" | "borderline"
    mode: str                   # "exact" | "float"
    witness: tuple | None = None  # vector x with x^T A x < 0 in exact mode
    witness_value: Fraction | None = None
    pivots: tuple | None = None
    lambda_min: float | None = None
    lambda_max: float | None = None

    @property
    def is_psd(self) -> bool:
        return self.verdict == "psd"


def _ldlt_psd(a: RatMatrix):
    """Pivoted rational LDL^T PSD test.

    Pivots on the largest remaining diagonal entry.  A negative diagonal
    refutes PSD outright; an all-zero diagonal forces the remaining block to
    vanish (any surviving off-diagonal entry yields an indefinite 2x2 minor).
    Returns ``(verdict, pivots, witness)`` with an exact certificate vector
    for the not_psd verdict.
    """
    n = a.n
    M = [list(row) for row in a.rows]
    active = list(range(n))
    pivots = []
    elim = []  # (pivot index, {i: L[i,p]}) in elimination order

    def lift(y: dict) -> tuple:
        x = dict(y)
        for p, col in reversed(elim):
            x[p] = -sum(c * x[i] for i, c in col.items() if i in x)
        return tuple(x.get(i, Fraction(0)) for i in range(n))

    def quad_form(x) -> Fraction:
        return sum(
            a.rows[i][j] * x[i] * x[j]
            for i in range(n)
            if x[i] != 0
            for j in range(n)
            if x[j] != 0
        )

    while active:
        neg = [i for i in active if M[i][i] < 0]
        if neg:
            bad = min(neg, key=lambda i: M[i][i])
            x = lift({bad: Fraction(1)})
            return "not_psd", tuple(pivots), (x, quad_form(x))
        p = max(active, key=lambda i: M[i][i])
        d = M[p][p]
        if d == 0:
            for i in active:
                for j in active:
                    if M[i][j] != 0:
                        # minor [[0, s], [s, M[j][j]]] with s != 0 is indefinite
                        s = M[i][j]
                        t = (M[j][j] + 1) / (2 * s)
                        x = lift({i: t, j: Fraction(-1)})
                        return "not_psd", tuple(pivots), (x, quad_form(x))
            pivots.extend(Fraction(0) for _ in active)
            return "psd", tuple(pivots), None
        pivots.append(d)
        active.remove(p)
        col = {i: M[i][p] / d for i in active if M[i][p] != 0}
        for i in active:
            mip = M[i][p]
            if mip == 0:
                continue
            for j in active:
                if M[p][j] != 0:
                    M[i][j] -= mip * M[p][j] / d
        elim.append((p, col))
    return "psd", tuple(pivots), None


def psd_check(
    a: RatMatrix,
    mode: str = "exact",
    tol: float = 1e-9,
    dim_cap: int = 512,
) -> PsdReport:
    """Dual-mode positive semidefiniteness check.

    Exact mode runs pivoted rational LDL^T (PSD iff all pivots >= 0 with
    zero-pivot rows eliminated exactly).  Float mode uses the Jacobi spectrum
    and reports "borderline" when the minimum eigenvalue is within
    ``tol * max(1, lambda_max)`` of zero; callers treat borderline as failure
    unless a closed-form eigenvalue argument is attached.
    """
    if not a.is_symmetric():
        raise NotSymmetricError("psd_check requires a symmetric matrix")
    if mode == "exact":
        if a.n > dim_cap:
            raise DimensionCapError(
                f"exact PSD check refused at n={a.n} > cap {dim_cap}; use float mode"
            )
        verdict, pivots, wit = _ldlt_psd(a)
        if wit is None:
            return PsdReport(verdict=verdict, mode="exact", pivots=pivots)
        x, val = wit
        return PsdReport(
            verdict=verdict, mode="exact", pivots=pivots, witness=x, witness_value=val
        )
    if mode == "float":
        if a.n == 0:
            return PsdReport(verdict="psd", mode="float", lambda_min=0.0, lambda_max=0.0)
        spec = eig_sym(a)
        lmin, lmax = spec.lambda_min, spec.lambda_max
        scale = max(1.0, abs(lmax))
        if abs(lmin) < tol * scale:
            verdict = "borderline"
        elif lmin > 0:
            verdict = "psd"
        else:
            verdict = "not_psd"
        return PsdReport(verdict=verdict, mode="float", lambda_min=lmin, lambda_max=lmax)
    raise ValueError(f"unknown psd mode: {mode!r}")


def float_to_json(x: float) -> str:
    """Shortest round-trip decimal form of a float."""
    return repr(float(x))
