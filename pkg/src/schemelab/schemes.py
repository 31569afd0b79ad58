"""Generic association-scheme machinery.

A scheme is an indexed family of 0/1 matrices on a common ground set that
contains the identity, is closed under transpose, sums to the all-ones
matrix, and whose pairwise products lie in the family's linear span.  This
module verifies those axioms, extracts structure constants from
representative pairs, tests commutativity and symmetry, contracts classes,
forms wreath products, and computes the eigenvalue table (P-matrix) of a
commutative scheme.

Structure constants are deliberately computed from one representative pair
per class (cross-validated on a second) instead of full matrix products:
one pass over the ground set per class suffices, which keeps large functional
schemes tractable without ever materializing their matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .matkit import RatMatrix, jacobi_eigensystem, kron, _int_matmul

FULL_A4_GROUND_CAP = 2000


class SchemeError(ValueError):
    """Raised on malformed scheme input or inconsistent structure counts."""


class AssociationScheme:
    """Indexed family of 0/1 matrices over a ground set.

    By convention index 0 holds the identity matrix when one is present.
    Instances are immutable after construction; heavy derived data (integer
    matrix images and the entrywise class map) is cached lazily.
    """

    def __init__(self, matrices, labels=None):
        matrices = tuple(matrices)
        if not matrices:
            raise SchemeError("scheme needs at least one matrix")
        n = matrices[0].n
        for m in matrices:
            if m.n != n:
                raise SchemeError("all matrices must share the ground size")
            if not m.is_zero_one():
                raise SchemeError("scheme matrices must be 0/1")
        if labels is None:
            labels = tuple(f"A{i}" for i in range(len(matrices)))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != len(matrices):
                raise SchemeError("one label per matrix")
        self._matrices = matrices
        self._labels = labels
        self._ints = None
        self._class_map = None

    @property
    def matrices(self) -> tuple:
        return self._matrices

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def ground_size(self) -> int:
        return self._matrices[0].n

    @property
    def n_classes(self) -> int:
        return len(self._matrices)

    def int_matrices(self):
        """Matrices as uint8 numpy arrays (cached)."""
        if self._ints is None:
            self._ints = tuple(
                np.array([[int(x) for x in row] for row in m.rows], dtype=np.uint8)
                for m in self._matrices
            )
        return self._ints

    def identity_index(self):
        eye = RatMatrix.identity(self.ground_size)
        for i, m in enumerate(self._matrices):
            if m == eye:
                return i
        return None

    def class_map(self) -> np.ndarray:
        """Entrywise class index matrix; requires the matrices to partition J."""
        if self._class_map is None:
            ints = self.int_matrices()
            total = np.zeros(ints[0].shape, dtype=np.int64)
            cmap = np.zeros(ints[0].shape, dtype=np.int64)
            for idx, a in enumerate(ints):
                total += a
                cmap += idx * a.astype(np.int64)
            if not np.all(total == 1):
                raise SchemeError("matrices do not partition the all-ones matrix")
            self._class_map = cmap
        return self._class_map

    # pair-oracle protocol shared with functional schemes
    def class_of(self, x: int, y: int) -> int:
        return int(self.class_map()[x, y])

    def representatives(self, k: int, count: int = 2):
        found = []
        cmap = self.class_map()
        xs, ys = np.nonzero(cmap == k)
        for x, y in zip(xs[:count], ys[:count]):
            found.append((int(x), int(y)))
        return found

    def class_sizes(self) -> tuple:
        cmap = self.class_map()
        return tuple(int(np.sum(cmap == k)) for k in range(self.n_classes))


@dataclass(frozen=True)
class AxiomCheck:
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class AxiomReport:
    a1: AxiomCheck
    a2: AxiomCheck
    a3: AxiomCheck
    a4: AxiomCheck
    transpose_map: tuple | None = None
    method: str = "full"

    @property
    def all_pass(self) -> bool:
        return self.a1.passed and self.a2.passed and self.a3.passed and self.a4.passed


def _transpose_map(scheme: AssociationScheme):
    """Permutation i -> index of A_i^T, or a witness index on failure."""
    ints = scheme.int_matrices()
    table = {a.tobytes(): i for i, a in enumerate(ints)}
    tmap = []
    for i, a in enumerate(ints):
        j = table.get(np.ascontiguousarray(a.T).tobytes())
        if j is None:
            return None, i
        tmap.append(j)
    return tuple(tmap), None


def verify_axioms(scheme: AssociationScheme) -> AxiomReport:
    """Check the four scheme axioms, returning pass/fail with witnesses.

    A4 is checked by confirming that every product A_i A_j is constant on the
    support of each A_k.  Above ``FULL_A4_GROUND_CAP`` ground elements the
    entrywise scan is replaced by representative cross-validation (two
    representative pairs per class must give identical intermediate counts).
    """
    n = scheme.ground_size
    a1 = AxiomCheck(scheme.identity_index() is not None)
    tmap, bad = _transpose_map(scheme)
    a2 = AxiomCheck(tmap is not None, witness=bad)

    ints = scheme.int_matrices()
    total = np.zeros((n, n), dtype=np.int64)
    for a in ints:
        total += a
    if np.all(total == 1):
        a3 = AxiomCheck(True)
    else:
        xs, ys = np.nonzero(total != 1)
        a3 = AxiomCheck(False, witness=(int(xs[0]), int(ys[0]), int(total[xs[0], ys[0]])))

    if not a3.passed:
        a4 = AxiomCheck(False, witness="A3 failed; class supports are not a partition")
        return AxiomReport(a1=a1, a2=a2, a3=a3, a4=a4, transpose_map=tmap)

    if n <= FULL_A4_GROUND_CAP:
        cmap = scheme.class_map()
        supports = [cmap == k for k in range(scheme.n_classes)]
        a4 = AxiomCheck(True)
        for i, ai in enumerate(ints):
            ai64 = ai.astype(np.int64)
            for j, aj in enumerate(ints):
                prod = _int_matmul(ai64, aj.astype(np.int64))
                for k, sup in enumerate(supports):
                    vals = prod[sup]
                    if vals.size and not np.all(vals == vals[0]):
                        a4 = AxiomCheck(False, witness=(i, j, k))
                        break
                if not a4.passed:
                    break
            if not a4.passed:
                break
        method = "full"
    else:
        try:
            structure_constants(scheme)
            a4 = AxiomCheck(True)
        except SchemeError as exc:
            a4 = AxiomCheck(False, witness=str(exc))
        method = "representative"
    return AxiomReport(a1=a1, a2=a2, a3=a3, a4=a4, transpose_map=tmap, method=method)


@dataclass(frozen=True)
class StructureConstants:
    """Intersection numbers p[i][j][k] plus class sizes of the scheme."""

    p: tuple
    class_sizes: tuple
    n_classes: int

    def value(self, i: int, j: int, k: int) -> int:
        return self.p[i][j][k]


def structure_constants(oracle, validate: bool = True) -> StructureConstants:
    """Intersection numbers from representative pairs.

    For each class k one representative pair (S, T) is fixed and a single
    pass over the ground set tallies ``(class(S, U), class(U, T))``; the run
    is repeated on a second representative and any disagreement (an A4
    violation) raises ``SchemeError``.

    ``oracle`` needs ``ground_size``, ``n_classes``, ``class_of(x, y)`` and
    ``representatives(k, count)``.
    """
    n = oracle.ground_size
    q = oracle.n_classes
    class_of = oracle.class_of

    def tally(s, t):
        counts = [[0] * q for _ in range(q)]
        for u in range(n):
            counts[class_of(s, u)][class_of(u, t)] += 1
        return counts

    p = [[[0] * q for _ in range(q)] for _ in range(q)]
    for k in range(q):
        reps = oracle.representatives(k, count=2 if validate else 1)
        if not reps:
            raise SchemeError(f"class {k} has no representative pair")
        counts = tally(*reps[0])
        if validate and len(reps) > 1:
            second = tally(*reps[1])
            if second != counts:
                raise SchemeError(
                    f"structure constants differ between representatives of class {k}"
                )
        for i in range(q):
            for j in range(q):
                p[i][j][k] = counts[i][j]

    if hasattr(oracle, "class_sizes"):
        sizes = tuple(oracle.class_sizes())
    else:
        s0 = 0
        per_class = [0] * q
        for u in range(n):
            per_class[class_of(s0, u)] += 1
        sizes = tuple(n * c for c in per_class)
    return StructureConstants(
        p=tuple(tuple(tuple(row) for row in plane) for plane in p),
        class_sizes=sizes,
        n_classes=q,
    )


def is_commutative(sc_or_scheme):
    """Whether p[i][j][k] == p[j][i][k] throughout; witness is a violating (i,j,k)."""
    sc = (
        sc_or_scheme
        if isinstance(sc_or_scheme, StructureConstants)
        else structure_constants(sc_or_scheme)
    )
    q = sc.n_classes
    for i in range(q):
        for j in range(i + 1, q):
            for k in range(q):
                if sc.p[i][j][k] != sc.p[j][i][k]:
                    return False, (i, j, k)
    return True, None


def is_symmetric(scheme: AssociationScheme):
    """Whether every matrix is symmetric; witness is a non-symmetric index."""
    tmap, bad = _transpose_map(scheme)
    if tmap is None:
        return False, bad
    for i, j in enumerate(tmap):
        if i != j:
            return False, i
    return True, None


def contract(scheme: AssociationScheme, partition) -> tuple:
    """Sum the classes of each block; returns (candidate scheme, axiom report).

    ``partition`` lists blocks of non-identity class indices; the identity is
    kept alone automatically.  The contraction need not be a scheme, so the
    axiom report is part of the result.
    """
    ident = scheme.identity_index()
    if ident is None:
        raise SchemeError("contract requires an identity class")
    blocks = [tuple(sorted(block)) for block in partition]
    flat = [i for block in blocks for i in block]
    expected = sorted(i for i in range(scheme.n_classes) if i != ident)
    if sorted(flat) != expected:
        raise SchemeError("partition must cover each non-identity class exactly once")

    matrices = [scheme.matrices[ident]]
    labels = [scheme.labels[ident]]
    for block in blocks:
        acc = scheme.matrices[block[0]]
        for i in block[1:]:
            acc = acc + scheme.matrices[i]
        matrices.append(acc)
        labels.append("+".join(scheme.labels[i] for i in block))
    contracted = AssociationScheme(matrices, labels)
    return contracted, verify_axioms(contracted)


def wreath(a1: AssociationScheme, a2: AssociationScheme) -> AssociationScheme:
    """Wreath product of two symmetric schemes.

    Ground set is the product; the matrices are A_i x J for the non-identity
    classes of the first scheme and I x A_i for every class of the second.
    """
    for name, sch in (("first", a1), ("second", a2)):
        ok, bad = is_symmetric(sch)
        if not ok:
            raise SchemeError(f"wreath requires symmetric inputs; {name} fails at {bad}")
        if sch.identity_index() is None:
            raise SchemeError(f"wreath requires an identity class in the {name} scheme")
    n1, n2 = a1.ground_size, a2.ground_size
    ident1 = a1.identity_index()
    eye1 = RatMatrix.identity(n1)
    big_j = RatMatrix.ones(n2)
    matrices = []
    labels = []
    for i, m in enumerate(a2.matrices):
        matrices.append(kron(eye1, m))
        labels.append(f"I(x){a2.labels[i]}")
    for i, m in enumerate(a1.matrices):
        if i == ident1:
            continue
        matrices.append(kron(m, big_j))
        labels.append(f"{a1.labels[i]}(x)J")
    ident2 = a2.identity_index()
    order = [ident2] + [i for i in range(len(matrices)) if i != ident2]
    return AssociationScheme([matrices[i] for i in order], [labels[i] for i in order])


@dataclass(frozen=True)
class PMatrix:
    """Eigenvalue table of a commutative scheme.

    Row i gives the eigenvalue of each class on the i-th common eigenspace;
    ``multiplicities[i]`` is that eigenspace's dimension.
    """

    values: tuple
    multiplicities: tuple

    @property
    def n_eigenspaces(self) -> int:
        return len(self.values)

    def rounded(self, tol: float = 1e-6):
        """Integer-rounded table when every entry is within tol of an integer."""
        out = []
        for row in self.values:
            r = []
            for x in row:
                n = round(x)
                if abs(x - n) > tol:
                    return None
                r.append(n)
            out.append(tuple(r))
        return tuple(out)


class EigenspaceGroupingError(RuntimeError):
    """Raised when no generic combination separates the common eigenspaces."""


def p_matrix(
    scheme: AssociationScheme,
    seed: int = 0,
    gap_tol: float = 1e-7,
    max_retries: int = 5,
) -> PMatrix:
    """Eigenvalue table of a commutative scheme via a generic combination.

    Diagonalizes sum(c_i A_i) for seed-derived distinct small integer
    coefficients, groups eigenvectors by the combination's eigenvalues
    (relative gap ``gap_tol``), then reads each class's eigenvalue per group.
    A degenerate coefficient draw (too few groups, or a group that is not a
    common eigenspace) is retried with the next draw, up to ``max_retries``.
    """
    ok, wit = is_commutative(scheme)
    if not ok:
        raise SchemeError(f"p_matrix requires a commutative scheme; witness {wit}")
    floats = [m.to_float() for m in scheme.matrices]
    n = scheme.ground_size
    q = scheme.n_classes

    last_error = None
    for attempt in range(max_retries):
        rng = random.Random((seed, attempt))
        coeffs = rng.sample(range(1, max(8 * q, 16)), q)
        combo = sum(c * f for c, f in zip(coeffs, floats))
        w, v = jacobi_eigensystem(combo)
        order = np.argsort(-w, kind="stable")
        w, v = w[order], v[:, order]
        scale = max(1.0, float(np.max(np.abs(w))))
        groups = []
        start = 0
        for idx in range(1, n + 1):
            if idx == n or abs(w[idx] - w[idx - 1]) > gap_tol * scale:
                groups.append((start, idx))
                start = idx
        if len(groups) != q:
            last_error = f"combination produced {len(groups)} eigenspaces, expected {q}"
            continue
        rows = []
        mults = []
        good = True
        for lo, hi in groups:
            vg = v[:, lo:hi]
            row = []
            for f in floats:
                fv = f @ vg
                lam = float(np.sum(vg * fv) / (hi - lo))
                if float(np.max(np.abs(fv - lam * vg))) > 1e-6 * max(1.0, abs(lam)):
                    good = False
                    break
                row.append(lam)
            if not good:
                break
            rows.append(tuple(row))
            mults.append(hi - lo)
        if not good:
            last_error = "a grouped subspace is not a common eigenspace"
            continue
        # deterministic row order: by eigenvalues of the non-identity classes
        ident = scheme.identity_index()
        key_cols = [j for j in range(q) if j != ident]
        paired = sorted(
            zip(rows, mults),
            key=lambda rm: tuple(-round(rm[0][j], 9) for j in key_cols),
        )
        return PMatrix(
            values=tuple(r for r, _ in paired),
            multiplicities=tuple(m for _, m in paired),
        )
    raise EigenspaceGroupingError(last_error or "no valid coefficient draw found")
