"""Lift-and-project certificates for stable-set and hypermatching polytopes.

The lift operator takes a polytope P in [0,1]^n to the set of points x
admitting a symmetric (n+1) x (n+1) matrix Y with Y e0 = diag(Y) = (1, x),
every column pair Y e_i, Y(e0 - e_i) in the homogenized cone of P, and
Y >= 0.  This module builds the relevant polytopes (fractional stable set,
r-matching packing/covering, b-matching packing/covering of complete
q-uniform hypergraphs), verifies candidate certificate matrices with exact
rational arithmetic, and constructs the closed-form certificates whose
positive semidefiniteness reduces to known scheme eigenvalues.

No semidefinite programming is solved anywhere: equality claims for deeply
vertex-transitive graphs go through the two-parameter symmetric template,
whose feasible region is swept directly, and iterated-lift membership at
level >= 2 is recorded as an induction obligation discharged recursively
down to the base level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .classic import johnson_matrix, johnson_eigenvalue, johnson_multiplicity, subsets_colex
from .graphs import Graph, DvtReport, delta_g, delta_g_exact, dvt_report, snap_eigenvalue
from .hypermatching import enumerate_matchings, matching_count
from .matkit import PsdReport, RatMatrix, eig_sym, psd_check


@dataclass(frozen=True)
class Polytope:
    """Inequality system a x <= beta over the implicit box [0,1]^n.

    Covering constraints are stored as negated rows, so membership and cone
    tests share one code path.
    """

    n: int
    rows: tuple
    names: tuple = ()

    def contains(self, x) -> bool:
        if len(x) != self.n:
            raise ValueError("dimension mismatch")
        if any(v < 0 or v > 1 for v in x):
            return False
        return all(
            sum(c * v for c, v in zip(coeffs, x)) <= rhs for coeffs, rhs in self.rows
        )

    def violated_rows(self, x) -> list:
        out = []
        for idx, (coeffs, rhs) in enumerate(self.rows):
            if sum(c * v for c, v in zip(coeffs, x)) > rhs:
                out.append(idx)
        return out


def build_frac(g: Graph) -> Polytope:
    """Fractional stable set polytope: x_u + x_v <= 1 per edge."""
    rows = []
    names = []
    for u, v in g.edges():
        coeffs = [Fraction(0)] * g.n
        coeffs[u] = Fraction(1)
        coeffs[v] = Fraction(1)
        rows.append((tuple(coeffs), Fraction(1)))
        names.append(f"edge({u},{v})")
    return Polytope(n=g.n, rows=tuple(rows), names=tuple(names))


def _saturation_rows(p: int, q: int, r: int):
    ground = enumerate_matchings(p, q, r)
    rows = []
    for v in range(p):
        coeffs = [
            Fraction(1) if any(v in e for e in matching) else Fraction(0)
            for matching in ground
        ]
        rows.append(tuple(coeffs))
    return ground, rows


def build_mt(p: int, q: int, r: int) -> Polytope:
    """Packing polytope of r-matchings: each vertex saturated at most once.

    Coordinates follow ``enumerate_matchings`` order.
    """
    ground, rows = _saturation_rows(p, q, r)
    return Polytope(
        n=len(ground),
        rows=tuple((c, Fraction(1)) for c in rows),
        names=tuple(f"vertex({v})" for v in range(p)),
    )


def build_mt_cover(p: int, q: int, r: int) -> Polytope:
    """Covering variant: each vertex saturated at least once (negated rows)."""
    ground, rows = _saturation_rows(p, q, r)
    return Polytope(
        n=len(ground),
        rows=tuple((tuple(-x for x in c), Fraction(-1)) for c in rows),
        names=tuple(f"vertex({v})>=" for v in range(p)),
    )


def _incidence_rows(p: int, q: int):
    ground = subsets_colex(p, q)
    rows = []
    for v in range(p):
        rows.append(tuple(Fraction(1) if v in e else Fraction(0) for e in ground))
    return ground, rows


def build_bmt(b: int, p: int, q: int) -> Polytope:
    """b-matching polytope of the complete q-uniform hypergraph.

    Coordinates are q-subsets in colexicographic order, matching the Johnson
    matrix indexing.
    """
    ground, rows = _incidence_rows(p, q)
    return Polytope(
        n=len(ground),
        rows=tuple((c, Fraction(b)) for c in rows),
        names=tuple(f"vertex({v})" for v in range(p)),
    )


def build_bmt_cover(b: int, p: int, q: int) -> Polytope:
    ground, rows = _incidence_rows(p, q)
    return Polytope(
        n=len(ground),
        rows=tuple((tuple(-x for x in c), Fraction(-b)) for c in rows),
        names=tuple(f"vertex({v})>=" for v in range(p)),
    )


def cone_member(p: Polytope, v) -> bool:
    """Membership of a homogenized vector in the cone {(s, s x): s >= 0, x in P}.

    The apex is the only point with vanishing first coordinate: P sits inside
    the unit box, so the cone has no nonzero recession direction.
    """
    v0, rest = v[0], v[1:]
    if v0 == 0:
        return all(x == 0 for x in rest)
    if v0 < 0:
        return False
    return p.contains([x / v0 for x in rest])


@dataclass(frozen=True)
class LsCertificate:
    """Symmetric (n+1) x (n+1) matrix claimed to witness lift membership."""

    y: RatMatrix

    @property
    def x(self) -> tuple:
        return tuple(self.y.rows[i][0] for i in range(1, self.y.n))


@dataclass(frozen=True)
class CertificateReport:
    corner_ok: bool
    cone_failures: tuple      # (column index, "Ye_i" | "Y(e0-e_i)")
    ye0_in_cone: bool
    psd: PsdReport
    warnings: tuple = ()

    @property
    def passed(self) -> bool:
        return (
            self.corner_ok
            and not self.cone_failures
            and self.ye0_in_cone
            and self.psd.verdict == "psd"
        )


def verify_certificate(
    p: Polytope, cert: LsCertificate, psd_mode: str = "exact", tol: float = 1e-9
) -> CertificateReport:
    """Exact check of every lift condition.

    Corner and diagonal identities and all cone memberships are rational;
    positive semidefiniteness uses the requested mode.  A borderline float
    verdict is reported as failure with a warning.
    """
    y = cert.y
    if y.n != p.n + 1:
        raise ValueError(f"certificate is {y.n}x{y.n}, polytope needs {p.n + 1}")
    if not y.is_symmetric():
        return CertificateReport(
            corner_ok=False,
            cone_failures=(),
            ye0_in_cone=False,
            psd=PsdReport(verdict="not_psd", mode="skipped"),
            warnings=("matrix is not symmetric",),
        )
    corner_ok = y.rows[0][0] == 1 and all(
        y.rows[i][0] == y.rows[i][i] for i in range(y.n)
    )
    col0 = y.column(0)
    failures = []
    for i in range(1, y.n):
        col = y.column(i)
        if not cone_member(p, col):
            failures.append((i, "Ye_i"))
        diff = tuple(a - b for a, b in zip(col0, col))
        if not cone_member(p, diff):
            failures.append((i, "Y(e0-e_i)"))
    ye0_ok = cone_member(p, col0)
    psd = psd_check(y, mode=psd_mode, tol=tol)
    warnings = ()
    if psd.verdict == "borderline":
        warnings = ("PSD borderline in float mode; exact mode or closed form needed",)
    return CertificateReport(
        corner_ok=corner_ok,
        cone_failures=tuple(failures),
        ye0_in_cone=ye0_ok,
        psd=psd,
        warnings=warnings,
    )


def rank_one_certificate(x) -> LsCertificate:
    """The certificate (1,x)(1,x)^T that witnesses any integral x in P."""
    vec = [Fraction(1)] + [Fraction(v) for v in x]
    return LsCertificate(
        y=RatMatrix([[a * b for b in vec] for a in vec])
    )


# -- closed-form stable set analysis ------------------------------------------


@dataclass(frozen=True)
class AlphaReport:
    """Output of the regular-graph lift bound (n - k + a)/(a + 1).

    ``bound`` always holds; when the graph is deeply vertex-transitive the
    value is exact, the symmetric two-parameter template is maximized and
    compared against the closed form, and the explicit proof certificate is
    attached with its verification report.
    """

    n: int
    k: int
    lambda2: float
    delta: float
    a: float
    a_exact: Fraction | None
    bound: float
    bound_exact: Fraction | None
    triangle: bool
    dvt: DvtReport
    template_optimum: float | None = None
    template_gap: float | None = None
    certificate: LsCertificate | None = None
    certificate_report: CertificateReport | None = None

    @property
    def is_equality(self) -> bool:
        return self.dvt.deeply_vertex_transitive


def _template_feasible(b: float, n: int, k: int, lam2: float, triangle: bool) -> bool:
    """Feasibility of the symmetric certificate template at column value b.

    Constraints from the symmetry-reduced certificate [1, b e; b e, bI + cA']:
    c <= b/(lam2+1) and c <= b/2 (PSD and punched-edge), b + c(n-k-1) - b^2 n
    >= 0 (Schur), and b <= 1/3 (triangle) or 3b - c <= 1 (triangle-free).
    """
    if b < 0:
        return False
    uppers = [b / 2.0]
    if lam2 > -1.0:
        uppers.append(b / (lam2 + 1.0))
    lowers = []
    if n - k - 1 > 0:
        lowers.append((b * b * n - b) / (n - k - 1))
    elif b * b * n > b:
        return False
    if triangle:
        if b > 1.0 / 3.0 + 1e-15:
            return False
    else:
        lowers.append(3.0 * b - 1.0)
    lo = max(lowers) if lowers else -math.inf
    return lo <= min(uppers) + 1e-14


def maximize_template(g: Graph, lam2: float) -> float:
    """Largest n*b over the feasible template region, by bisection on b."""
    n, k = g.n, g.degree(0)
    triangle = g.has_triangle()
    lo, hi = 0.0, 1.0
    if _template_feasible(hi, n, k, lam2, triangle):
        return n * hi
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if _template_feasible(mid, n, k, lam2, triangle):
            lo = mid
        else:
            hi = mid
    return n * lo


def dvt_certificate(g: Graph, a: Fraction) -> LsCertificate:
    """The explicit proof certificate at parameter a >= max(1, lam2, delta)."""
    n, k = g.n, g.degree(0)
    d = Fraction(n) * (a + 1) ** 2 / (n - k + a)
    comp = g.complement()
    size = n + 1
    rows = [[Fraction(0)] * size for _ in range(size)]
    rows[0][0] = Fraction(1)
    for i in range(n):
        rows[0][i + 1] = rows[i + 1][0] = (a + 1) / d
        rows[i + 1][i + 1] = (a + 1) / d
        for j in range(n):
            if comp.has_edge(i, j):
                rows[i + 1][j + 1] = Fraction(1) / d
    return LsCertificate(y=RatMatrix(rows))


def alpha_lsplus_dvt(g: Graph, psd_mode: str = "exact") -> AlphaReport:
    """Bound (n-k+a)/(a+1) with a = max(1, lambda2, delta), plus the deep
    vertex-transitivity analysis that makes it an equality.

    When the graph is deeply vertex-transitive the template maximum is
    computed independently and must agree with the closed form to 1e-8; the
    explicit certificate is built with an exact rational a whenever the
    maximizing branch is rational, and verified in full.
    """
    if not g.is_regular() or g.n < 4:
        raise ValueError("analysis needs a regular graph on n >= 4 vertices")
    n, k = g.n, g.degree(0)
    lam2 = g.lambda2()
    lam2_exact = snap_eigenvalue(g, lam2)
    delta = delta_g(g)
    delta_exact = delta_g_exact(g)
    a_float = max(1.0, lam2, delta)
    candidates = [Fraction(1)]
    if lam2_exact is not None:
        candidates.append(lam2_exact)
    if delta_exact is not None:
        candidates.append(delta_exact)
    a_exact = max(candidates)
    if abs(float(a_exact) - a_float) > 1e-9:
        a_exact = None
    bound = (n - k + a_float) / (a_float + 1.0)
    bound_exact = None
    if a_exact is not None:
        bound_exact = (n - k + a_exact) / (a_exact + 1)
    report = dvt_report(g)

    template_optimum = None
    template_gap = None
    cert = None
    cert_report = None
    if report.deeply_vertex_transitive:
        template_optimum = maximize_template(g, lam2)
        template_gap = abs(template_optimum - bound)
        if a_exact is not None:
            cert = dvt_certificate(g, a_exact)
            cert_report = verify_certificate(build_frac(g), cert, psd_mode=psd_mode)
    return AlphaReport(
        n=n,
        k=k,
        lambda2=lam2,
        delta=delta,
        a=a_float,
        a_exact=a_exact,
        bound=bound,
        bound_exact=bound_exact,
        triangle=g.has_triangle(),
        dvt=report,
        template_optimum=template_optimum,
        template_gap=template_gap,
        certificate=cert,
        certificate_report=cert_report,
    )


@dataclass(frozen=True)
class ThetaReport:
    value: float
    value_exact: Fraction | None
    dvt: DvtReport

    @property
    def is_equality(self) -> bool:
        return self.dvt.deeply_vertex_transitive


def theta_dvt(g: Graph) -> ThetaReport:
    """Theta-body bound (n - k + lambda2)/(lambda2 + 1); equality under deep
    vertex-transitivity.  No semidefinite program is solved."""
    if not g.is_regular():
        raise ValueError("theta bound needs a regular graph")
    comp = g.complement()
    if not comp.edges():
        raise ValueError("theta bound is undefined for complete graphs")
    n, k = g.n, g.degree(0)
    lam2 = g.lambda2()
    if lam2 <= -1:
        raise ValueError("second eigenvalue at most -1; graph must be complete")
    value = (n - k + lam2) / (lam2 + 1.0)
    lam2_exact = snap_eigenvalue(g, lam2)
    value_exact = None
    if lam2_exact is not None and lam2_exact > -1:
        value_exact = (n - k + lam2_exact) / (lam2_exact + 1)
    return ThetaReport(value=value, value_exact=value_exact, dvt=dvt_report(g))


# -- r-matching rank certificates ------------------------------------------------


@dataclass(frozen=True)
class ObligationRecord:
    """Iterated-lift membership assumed by the induction at levels >= 2."""

    description: str
    status: str                 # "discharged_at_base" | "verified_modulo_induction"
    sub_report: object = None


@dataclass(frozen=True)
class MatchingCertReport:
    p: int
    q: int
    r: int
    level: int
    alpha0: Fraction
    alpha1: Fraction
    corner_ok: bool
    identity_ok: bool
    columns_ok: bool
    base_membership_ok: bool | None
    eigenvalues: tuple           # (value, multiplicity) exact, descending
    eigenvalues_nonneg: bool
    numeric_match: bool
    factorization_ok: bool
    obligations: tuple
    rank_lower_bound: int | None
    theorem_rank: int

    @property
    def passed(self) -> bool:
        checks = [
            self.corner_ok,
            self.identity_ok,
            self.columns_ok,
            self.eigenvalues_nonneg,
            self.numeric_match,
            self.factorization_ok,
        ]
        if self.base_membership_ok is not None:
            checks.append(self.base_membership_ok)
        return all(checks)


def _sat_masks(ground):
    masks = []
    for matching in ground:
        m = 0
        for e in matching:
            for v in e:
                m |= 1 << v
        masks.append(m)
    return masks


def matching_certificate(p: int, q: int, r: int, level: int = 1) -> tuple:
    """Certificate placing the uniform point inside ``level`` lift iterations
    of the r-matching packing polytope of the complete q-uniform hypergraph.

    Returns ``(LsCertificate, MatchingCertReport)``.  The body of the matrix
    is alpha0 (I + alpha1 B) with B the saturation-disjointness matrix; its
    eigenvalues are Johnson values scaled by the matching count, evaluated
    exactly, and cross-checked against the Jacobi spectrum.  The key exact
    check is the averaging identity
    sum_T (|sat(S) cap sat(T)| / qr) Y e_T = Y e_0  for every S,
    which expresses each Y(e0 - e_S) as a cone combination of the columns.
    """
    qr = q * r
    if p < 2 * qr:
        raise ValueError("certificate construction needs p >= 2qr")
    if not (1 <= level < p // qr):
        raise ValueError(f"level must be in [1, p/(qr)); got {level}")
    ground = enumerate_matchings(p, q, r)
    n = len(ground)
    m_inner = matching_count(qr, q, r)
    alpha0 = Fraction(1, comb(p - 1, qr - 1) * m_inner)
    alpha1 = Fraction(1, comb(p - qr - 1, qr - 1) * m_inner)

    masks = _sat_masks(ground)
    disjoint = np.zeros((n, n), dtype=np.int64)
    overlap = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        mi = masks[i]
        for j in range(n):
            inter = (mi & masks[j]).bit_count()
            overlap[i, j] = inter
            if inter == 0:
                disjoint[i, j] = 1

    # Y' = alpha0 (I + alpha1 B); scale by 1/(alpha0 alpha1) to integers
    dm = comb(p - qr - 1, qr - 1) * m_inner
    z_int = dm * np.eye(n, dtype=np.int64) + disjoint

    # corner row: sum_T |sat(S) cap sat(T)| = qr * C(p-1, qr-1) * m for all S
    row_tot = overlap.sum(axis=1)
    corner_identity = bool(np.all(row_tot == qr * comb(p - 1, qr - 1) * m_inner))
    # body: overlap @ z_int = qr * dm * J entrywise
    prod = overlap @ z_int
    identity_ok = corner_identity and bool(np.all(prod == qr * dm))

    # column structure and base membership: w_S has 1 at S, alpha1 on
    # saturation-disjoint matchings; every free vertex carries load exactly
    # deg * alpha1 = 1 and saturated vertices only the load from S itself
    deg = comb(p - qr - 1, qr - 1) * m_inner
    sat_ind = np.array(
        [[1 if masks[i] >> v & 1 else 0 for v in range(p)] for i in range(n)],
        dtype=np.int64,
    )
    loads = disjoint @ sat_ind  # loads[s, v] = # disjoint T saturating v
    columns_ok = bool(np.all(np.where(sat_ind == 1, loads == 0, loads == deg)))

    base_ok = None
    obligations = []
    if level == 1:
        reduced = build_mt(p - qr, q, r)
        point = [alpha1] * reduced.n
        base_ok = reduced.contains(point) and not reduced.violated_rows(point)
        obligations.append(
            ObligationRecord(
                description=(
                    f"w_S restricted to matchings avoiding sat(S) is the uniform"
                    f" point of the (p-qr={p - qr}) packing polytope"
                ),
                status="discharged_at_base",
            )
        )
    else:
        sub_cert, sub_report = matching_certificate(p - qr, q, r, level - 1)
        del sub_cert
        obligations.append(
            ObligationRecord(
                description=(
                    f"uniform point lies in lift^{level - 1} of the reduced"
                    f" (p-qr={p - qr}) packing polytope"
                ),
                status="verified_modulo_induction",
                sub_report=sub_report,
            )
        )
        if not sub_report.passed:
            columns_ok = False

    # exact eigenvalues: alpha0 (1 +- C(p-qr-j, qr-j)/C(p-qr-1, qr-1)) with
    # Johnson multiplicities, plus alpha0 at the (m-1)-per-support kernel
    eigs = []
    base = comb(p - qr - 1, qr - 1)
    for j in range(qr + 1):
        val = alpha0 * (1 + Fraction((-1) ** j * comb(p - qr - j, qr - j), base))
        eigs.append((val, johnson_multiplicity(p, qr, j)))
    kernel_mult = n - comb(p, qr)
    if kernel_mult:
        eigs.append((alpha0, kernel_mult))
    eigs.sort(key=lambda vm: vm[0], reverse=True)
    eigenvalues_nonneg = all(v >= 0 for v, _ in eigs)

    y_body = RatMatrix.from_int_array(z_int, 1).scale(alpha0 * alpha1)
    spec = eig_sym(y_body)
    closed = sorted(
        (float(v) for v, mult in eigs for _ in range(mult)), reverse=True
    )
    tol = 1e-7 * max(1.0, float(alpha0))
    numeric_match = len(closed) == len(spec.eigenvalues) and all(
        abs(a - b) <= tol for a, b in zip(closed, spec.eigenvalues)
    )

    # bordered matrix and its factorization through the body:
    # row sums Y' e = alpha0 (p/qr) e make [qr/p e^T; I] Y' [...] reproduce Y,
    # with corner (qr/p)^2 e^T Y' e = 1
    row_sum = alpha0 * (1 + alpha1 * comb(p - qr, qr) * m_inner)
    factorization_ok = (
        row_sum == alpha0 * Fraction(p, qr)
        and Fraction(qr, p) ** 2 * n * row_sum == 1
    )

    size = n + 1
    rows = [[Fraction(0)] * size for _ in range(size)]
    rows[0][0] = Fraction(1)
    for i in range(n):
        rows[0][i + 1] = rows[i + 1][0] = alpha0
        for j in range(n):
            if i == j:
                rows[i + 1][j + 1] = alpha0
            elif disjoint[i, j]:
                rows[i + 1][j + 1] = alpha0 * alpha1
    cert = LsCertificate(y=RatMatrix(rows))
    corner_ok = cert.y.rows[0][0] == 1 and all(
        cert.y.rows[i][0] == cert.y.rows[i][i] for i in range(size)
    )

    rank_lb = level + 1 if p % qr else None
    report = MatchingCertReport(
        p=p,
        q=q,
        r=r,
        level=level,
        alpha0=alpha0,
        alpha1=alpha1,
        corner_ok=corner_ok,
        identity_ok=identity_ok,
        columns_ok=columns_ok,
        base_membership_ok=base_ok,
        eigenvalues=tuple(eigs),
        eigenvalues_nonneg=eigenvalues_nonneg,
        numeric_match=numeric_match,
        factorization_ok=factorization_ok,
        obligations=tuple(obligations),
        rank_lower_bound=rank_lb,
        theorem_rank=p // qr,
    )
    return cert, report


@dataclass(frozen=True)
class GapReport:
    p: int
    q: int
    r: int
    gap: Fraction
    lp_value: Fraction
    packing_optimum: int
    covering_optimum: int


def mt_gap(p: int, q: int, r: int) -> GapReport:
    """Integrality gap of the r-matching packing relaxation.

    Both displayed forms, (p/qr)/floor(p/qr) and 1 + (p mod qr)/(p - p mod
    qr), are computed and asserted equal; the integer optima floor(p/qr)
    (packing) and ceil(p/qr) (covering) are recomputed by exhaustive
    dynamic programming over saturation sets.
    """
    qr = q * r
    if p <= qr or p % qr == 0:
        raise ValueError("gap needs p > qr with qr not dividing p")
    form1 = Fraction(p, qr) / (p // qr)
    s = p % qr
    form2 = 1 + Fraction(s, p - s)
    assert form1 == form2, "the two gap forms disagree"
    packing = _packing_optimum(p, q, r)
    covering = _covering_optimum(p, q, r)
    assert packing == p // qr, f"brute-force packing {packing} != floor(p/qr)"
    assert covering == -(-p // qr), f"brute-force covering {covering} != ceil(p/qr)"
    return GapReport(
        p=p,
        q=q,
        r=r,
        gap=form1,
        lp_value=Fraction(p, qr),
        packing_optimum=packing,
        covering_optimum=covering,
    )


def _packing_optimum(p: int, q: int, r: int) -> int:
    """Max number of pairwise saturation-disjoint r-matchings, by DP on
    saturated vertex sets."""
    masks = sorted(set(_sat_masks(enumerate_matchings(p, q, r))))
    best = {0: 0}
    frontier = {0}
    depth = 0
    while frontier:
        depth += 1
        nxt = {}
        for state in frontier:
            for m in masks:
                if state & m:
                    continue
                ns = state | m
                if ns not in best:
                    nxt[ns] = depth
        best.update(nxt)
        frontier = set(nxt)
    return max(best.values())


def _covering_optimum(p: int, q: int, r: int) -> int:
    """Min number of r-matchings covering all vertices, by BFS on covered sets."""
    masks = sorted(set(_sat_masks(enumerate_matchings(p, q, r))))
    full = (1 << p) - 1
    seen = {0}
    frontier = {0}
    depth = 0
    while frontier:
        if full in frontier:
            return depth
        depth += 1
        nxt = set()
        for state in frontier:
            for m in masks:
                ns = state | m
                if ns not in seen:
                    seen.add(ns)
                    nxt.add(ns)
        frontier = nxt
    raise RuntimeError("covering search exhausted without covering the ground set")


def mt_lp_value(p: int, q: int, r: int) -> Fraction:
    """Exact LP optimum p/qr of the packing relaxation under the all-ones
    objective: the uniform point is feasible with that value, and summing all
    vertex constraints bounds any feasible value by p/qr."""
    qr = q * r
    pol = build_mt(p, q, r)
    alpha0 = Fraction(1, comb(p - 1, qr - 1) * matching_count(qr, q, r))
    point = [alpha0] * pol.n
    if not pol.contains(point):
        raise AssertionError("uniform point fell outside the packing polytope")
    return Fraction(p, qr)


# -- b-matching rank certificates --------------------------------------------------


@dataclass(frozen=True)
class BMatchingCertReport:
    b: int
    p: int
    q: int
    alpha: tuple                  # (alpha0, alpha1, alpha2, alpha3)
    corner_ok: bool
    eigen_factored: tuple         # exact factored eigenvalue per j
    eigen_match_linear: bool      # factored == linear-combination form, per j
    eigenvalues_nonneg: bool
    numeric_match: bool
    columns_in_polytope: bool
    complement_columns_in_polytope: bool
    z_aggregation_matches: bool | None
    zbar_aggregation_matches: bool | None
    factorization_ok: bool
    rank_lower_bound: int | None

    @property
    def passed(self) -> bool:
        return all(
            (
                self.corner_ok,
                self.eigen_match_linear,
                self.eigenvalues_nonneg,
                self.numeric_match,
                self.columns_in_polytope,
                self.complement_columns_in_polytope,
            )
        )


def _b_matching_body(b: int, p: int, q: int):
    alpha0 = Fraction(b, comb(p - 1, q - 1))
    alpha1 = Fraction(b - 1, q * (p - q))
    alpha2 = Fraction(b - 1, q * comb(p - q, q - 1))
    alpha3 = Fraction(b * p - 2 * b * q + q, q * comb(p - q, q))
    n = comb(p, q)
    eye = RatMatrix.identity(n)
    body = (
        eye
        + johnson_matrix(p, q, 1).scale(alpha1)
        + johnson_matrix(p, q, q - 1).scale(alpha2)
        + johnson_matrix(p, q, q).scale(alpha3)
    ).scale(alpha0)
    return (alpha0, alpha1, alpha2, alpha3), body


def b_matching_certificate(b: int, p: int, q: int, check_averaging: bool | None = None):
    """Certificate for the uniform point of the b-matching relaxation.

    The body combines three Johnson associates; positive semidefiniteness is
    established by the factored closed-form eigenvalues (evaluated exactly
    and checked against the linear-combination form and the Jacobi spectrum).
    Column cone conditions are verified by exact membership of the scaled
    columns in the polytope.  When ``check_averaging`` is enabled (default
    for small instances) the proof's aggregated vectors are rebuilt from the
    swap constructions by direct summation and compared to the certificate
    columns entry by entry.
    """
    if b < 1 or q < 1:
        raise ValueError("need b >= 1 and q >= 1")
    if q * q < b:
        raise ValueError("construction needs b <= q^2")
    if p < b + q - 1:
        raise ValueError("construction needs p >= b + q - 1")
    if p < 2 * q:
        raise ValueError("construction needs disjoint edges: p >= 2q")
    (alpha0, alpha1, alpha2, alpha3), body = _b_matching_body(b, p, q)
    n = body.n
    ground = subsets_colex(p, q)

    size = n + 1
    rows = [[Fraction(0)] * size for _ in range(size)]
    rows[0][0] = Fraction(1)
    for i in range(n):
        rows[0][i + 1] = rows[i + 1][0] = alpha0
        for j in range(n):
            rows[i + 1][j + 1] = body.rows[i][j]
    cert = LsCertificate(y=RatMatrix(rows))
    corner_ok = all(rows[i][0] == rows[i][i] for i in range(size))

    base = comb(p - q - 1, q - 1)
    factored = []
    linear_match = True
    for j in range(q + 1):
        f1 = 1 + Fraction((-1) ** j * comb(p - q - j, q - j), base)
        f2 = 1 + Fraction((b - 1) * ((q - j) * (p - q - j) - j), q * (p - q))
        fv = alpha0 * f1 * f2
        factored.append(fv)
        lin = alpha0 * (
            1
            + alpha1 * johnson_eigenvalue(p, q, 1, j)
            + alpha2 * johnson_eigenvalue(p, q, q - 1, j)
            + alpha3 * johnson_eigenvalue(p, q, q, j)
        )
        if lin != fv:
            linear_match = False
    eigenvalues_nonneg = all(v >= 0 for v in factored)

    spec = eig_sym(body)
    closed = sorted(
        (
            float(v)
            for j, v in enumerate(factored)
            for _ in range(johnson_multiplicity(p, q, j))
        ),
        reverse=True,
    )
    tol = 1e-7 * max(1.0, float(alpha0))
    numeric_match = len(closed) == len(spec.eigenvalues) and all(
        abs(a - c) <= tol for a, c in zip(closed, spec.eigenvalues)
    )

    pol = build_bmt(b, p, q)
    cols_ok = True
    comp_ok = True
    for i in range(n):
        z_need = [body.rows[j][i] / alpha0 for j in range(n)]
        if not pol.contains(z_need):
            cols_ok = False
        zbar = [(alpha0 - body.rows[j][i]) / (1 - alpha0) for j in range(n)]
        if not pol.contains(zbar):
            comp_ok = False
        if not cols_ok and not comp_ok:
            break

    if check_averaging is None:
        check_averaging = n <= 150
    z_match = zbar_match = None
    if check_averaging:
        z_match = _aggregate_swaps(b, p, q, ground, body, alpha0, size=b - 1)
        zbar_match = _aggregate_swaps(b, p, q, ground, body, alpha0, size=b)

    row_sum = sum(body.rows[0])
    factorization_ok = Fraction(q, b * p) * row_sum == alpha0

    rank_lb = None
    if (b * p) % q:
        rank_lb = (p - b - q + 1) // (2 * q) + 1
    report = BMatchingCertReport(
        b=b,
        p=p,
        q=q,
        alpha=(alpha0, alpha1, alpha2, alpha3),
        corner_ok=corner_ok,
        eigen_factored=tuple(factored),
        eigen_match_linear=linear_match,
        eigenvalues_nonneg=eigenvalues_nonneg,
        numeric_match=numeric_match,
        columns_in_polytope=cols_ok,
        complement_columns_in_polytope=comp_ok,
        z_aggregation_matches=z_match,
        zbar_aggregation_matches=zbar_match,
        factorization_ok=factorization_ok,
        rank_lower_bound=rank_lb,
    )
    return cert, report


def _aggregate_swaps(b, p, q, ground, body, alpha0, size):
    """Average the swap vectors w_{i,j,S} over all (j, S) for the first edge.

    ``size`` = b-1 rebuilds the column pattern (target Y'[.,i]/alpha0 with 1
    at i), ``size`` = b rebuilds the complement pattern (target
    (alpha0 - Y'[., i])/(1 - alpha0)).  Returns exact equality with the
    target, or None when the swap family is empty.
    """
    index = {e: i for i, e in enumerate(ground)}
    i_edge = ground[0]
    i_set = frozenset(i_edge)
    n = len(ground)
    disjoint = [e for e in ground if not (set(e) & i_set)]
    total = [Fraction(0)] * n
    count = 0
    tail_den = comb(p - 2 * q - 1, q - 1)
    tail_value = Fraction(b, tail_den) if tail_den else None
    for j_edge in disjoint:
        j_set = frozenset(j_edge)
        pairs = [(v1, v2) for v1 in i_edge for v2 in j_edge]
        for chosen in combinations(pairs, size):
            w = [Fraction(0)] * n
            if size == b - 1:
                w[index[i_edge]] = Fraction(1)
                w[index[j_edge]] = Fraction(1)
            for v1, v2 in chosen:
                h1 = tuple(sorted((set(i_edge) - {v1}) | {v2}))
                h2 = tuple(sorted((set(j_edge) - {v2}) | {v1}))
                w[index[h1]] = Fraction(1)
                w[index[h2]] = Fraction(1)
            for h in ground:
                if not (set(h) & (i_set | j_set)):
                    assert tail_value is not None
                    w[index[h]] = tail_value
            for idx in range(n):
                total[idx] += w[idx]
            count += 1
    if count == 0:
        return None
    avg = [v / count for v in total]
    i0 = index[i_edge]
    if size == b - 1:
        target = [body.rows[j][i0] / alpha0 for j in range(n)]
    else:
        target = [(alpha0 - body.rows[j][i0]) / (1 - alpha0) for j in range(n)]
    return avg == target


# -- the worked 7-cycle certificate ------------------------------------------------


_SEVEN_CYCLE_BODY_FIRST_ROW = (3, 0, 2, 1, 1, 2, 0)


def seven_cycle_certificate() -> LsCertificate:
    """The unique certificate for the uniform point at value 3/7 on the
    7-cycle: circulant body over sevenths."""
    size = 8
    rows = [[Fraction(0)] * size for _ in range(size)]
    rows[0][0] = Fraction(1)
    for i in range(7):
        rows[0][i + 1] = rows[i + 1][0] = Fraction(3, 7)
        for j in range(7):
            rows[i + 1][j + 1] = Fraction(
                _SEVEN_CYCLE_BODY_FIRST_ROW[(j - i) % 7], 7
            )
    return LsCertificate(y=RatMatrix(rows))


def mt_rank_partial_evidence() -> dict:
    """Partial evidence that two lift iterations close the (5,2,1) packing gap.

    The level-1 certificate places the uniform point (objective 5/2 > 2)
    inside one lift, so the rank is at least 2.  The certificate construction
    itself stops below floor(p/qr) = 2, and the general destruction argument
    (any inequality valid on every x_S = 1 face is valid after one lift)
    caps the rank at 2.  This is documentation-level evidence, not a
    decision procedure for the lifted set.
    """
    cert, rep = matching_certificate(5, 2, 1, 1)
    del cert
    try:
        matching_certificate(5, 2, 1, 2)
        level2_available = True
    except ValueError:
        level2_available = False
    return {
        "level1_passed": rep.passed,
        "lp_value": str(mt_lp_value(5, 2, 1)),
        "integer_optimum": 2,
        "rank_lower_bound": rep.rank_lower_bound,
        "level2_construction_available": level2_available,
        "upper_bound_argument": "one lift per removed saturation class",
        "status": "partial evidence",
    }
