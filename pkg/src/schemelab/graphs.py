"""Graphs built from scheme associates: spectra, symmetry tests, and bounds.

Vertices are 0..n-1 and adjacency lives in per-vertex bitmasks, which keeps
the exhaustive searches (automorphisms, cliques, punched-subgraph checks)
fast at the sizes this project needs (n <= 64 for symmetry searches).
Spectra come from the exact adjacency matrix via the Jacobi solver, with
near-rational eigenvalues snapped and re-verified exactly so that integer
bounds like floor(1 - l1/ln) never fall off the wrong side of an integer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .matkit import RatMatrix, Spectrum, eig_sym
from .schemes import AssociationScheme, is_commutative, verify_axioms
from .classic import hamming_matrix, johnson_matrix

AUTOMORPHISM_VERTEX_CAP = 64
DEFAULT_SEARCH_BUDGET = 2_000_000


class GraphInputError(ValueError):
    """Raised on malformed adjacency data."""


class SearchBudgetExceeded(RuntimeError):
    """Raised when a backtracking search exceeds its node budget."""


class Graph:
    """Simple undirected graph over vertices 0..n-1."""

    __slots__ = ("n", "adj", "_spectrum", "_triangle")

    def __init__(self, n: int, adj):
        self.n = n
        self.adj = tuple(adj)
        self._spectrum = None
        self._triangle = None

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"bad edge ({u}, {v}) for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def from_associate(cls, m: RatMatrix) -> "Graph":
        """Graph of a symmetric 0/1 matrix with zero diagonal."""
        if not m.is_symmetric():
            raise GraphInputError("adjacency matrix must be symmetric")
        if not m.is_zero_one():
            raise GraphInputError("adjacency matrix must be 0/1")
        adj = [0] * m.n
        for i, row in enumerate(m.rows):
            if row[i] != 0:
                raise GraphInputError("adjacency matrix must have zero diagonal")
            for j, x in enumerate(row):
                if x == 1:
                    adj[i] |= 1 << j
        return cls(m.n, adj)

    # -- basics --------------------------------------------------------------

    def edges(self) -> list:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if self.adj[u] >> v & 1
        ]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple:
        return tuple(m.bit_count() for m in self.adj)

    def is_regular(self) -> bool:
        degs = self.degrees()
        return len(set(degs)) <= 1

    def adjacency(self) -> RatMatrix:
        return RatMatrix(
            [[1 if self.adj[i] >> j & 1 else 0 for j in range(self.n)] for i in range(self.n)]
        )

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(
            self.n, [full & ~self.adj[v] & ~(1 << v) for v in range(self.n)]
        )

    def induced(self, vertices) -> "Graph":
        verts = sorted(vertices)
        pos = {v: i for i, v in enumerate(verts)}
        adj = [0] * len(verts)
        for v in verts:
            m = self.adj[v]
            for w in verts:
                if m >> w & 1:
                    adj[pos[v]] |= 1 << pos[w]
        return Graph(len(verts), adj)

    def punch(self, i: int) -> "Graph":
        """Induced subgraph on vertices neither equal nor adjacent to i."""
        keep = [v for v in range(self.n) if v != i and not self.has_edge(i, v)]
        return self.induced(keep)

    def has_triangle(self) -> bool:
        if self._triangle is None:
            found = False
            for u in range(self.n):
                mu = self.adj[u]
                for v in range(u + 1, self.n):
                    if mu >> v & 1 and mu & self.adj[v]:
                        found = True
                        break
                if found:
                    break
            self._triangle = found
        return self._triangle

    def connected_components(self) -> list:
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            frontier = 1 << v
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                f = frontier
                while f:
                    u = (f & -f).bit_length() - 1
                    f &= f - 1
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
            comps.append([u for u in range(self.n) if comp >> u & 1])
            seen |= comp
        return comps

    def spectrum(self) -> Spectrum:
        if self._spectrum is None:
            self._spectrum = eig_sym(self.adjacency())
        return self._spectrum

    def lambda1(self) -> float:
        return self.spectrum().lambda_max

    def lambda2(self, dedup_tol: float = 1e-8) -> float:
        """Second largest eigenvalue (by position, not by distinct value)."""
        del dedup_tol
        return self.spectrum().eigenvalues[1]

    def lambda_min(self) -> float:
        return self.spectrum().lambda_min

    # -- I/O -------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges()]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "Graph":
        return cls.from_edges(d["n"], d["edges"])

    @classmethod
    def from_json(cls, s: str) -> "Graph":
        return cls.from_json_dict(json.loads(s))

    @classmethod
    def from_dimacs(cls, text: str) -> "Graph":
        """DIMACS-like reader: 'p edge n m' then 'e u v' lines, 1-based."""
        n = None
        edges = []
        for line in text.splitlines():
            parts = line.split()
            if not parts or parts[0] == "c":
                continue
            if parts[0] == "p":
                n = int(parts[2])
            elif parts[0] == "e":
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        if n is None:
            raise GraphInputError("missing 'p edge' header")
        return cls.from_edges(n, edges)


# -- named families -----------------------------------------------------------


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def antihole(n: int) -> Graph:
    """Complement of the n-cycle."""
    return cycle_graph(n).complement()


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def johnson_graph(p: int, q: int, i: int = 1) -> Graph:
    """Graph of the Johnson associate at intersection q - i."""
    return Graph.from_associate(johnson_matrix(p, q, i))


def kneser_graph(p: int, q: int) -> Graph:
    return johnson_graph(p, q, q)


def petersen_graph() -> Graph:
    return kneser_graph(5, 2)


def hamming_split_graph(ell: int) -> Graph:
    """Binary words of length 2*ell+1, adjacent at Hamming distance ell or ell+1."""
    q = 2 * ell + 1
    m = hamming_matrix(2, q, ell) + hamming_matrix(2, q, ell + 1)
    return Graph.from_associate(m)


_ICOSAHEDRON_EDGES = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
    (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
    (1, 6), (2, 6), (2, 7), (3, 7), (3, 8),
    (4, 8), (4, 9), (5, 9), (5, 10), (1, 10),
    (6, 7), (7, 8), (8, 9), (9, 10), (10, 6),
    (6, 11), (7, 11), (8, 11), (9, 11), (10, 11),
]


def icosahedron_graph() -> Graph:
    g = Graph.from_edges(12, _ICOSAHEDRON_EDGES)
    assert g.degrees() == (5,) * 12
    return g


# -- automorphism search -------------------------------------------------------


class _MappingSearch:
    """Backtracking search for adjacency-preserving bijections g1 -> g2.

    Candidate sets are vertex bitmasks narrowed by degree and, after each
    assignment, by neighborhood consistency (mapped edges must map to edges,
    non-edges to non-edges).
    """

    def __init__(self, g1: Graph, g2: Graph, budget: int = DEFAULT_SEARCH_BUDGET):
        if g1.n > AUTOMORPHISM_VERTEX_CAP:
            raise SearchBudgetExceeded(
                f"n={g1.n} exceeds automorphism search cap {AUTOMORPHISM_VERTEX_CAP}"
            )
        self.g1, self.g2 = g1, g2
        self.budget = budget
        self.nodes = 0

    def find(self, pre_map: dict | None = None):
        g1, g2 = self.g1, self.g2
        n = g1.n
        if g2.n != n or sorted(g1.degrees()) != sorted(g2.degrees()):
            return None
        full = (1 << n) - 1
        cand = []
        for v in range(n):
            dv = g1.degree(v)
            m = 0
            for u in range(n):
                if g2.degree(u) == dv:
                    m |= 1 << u
            cand.append(m)
        mapping = [-1] * n
        used = 0
        if pre_map:
            for v, u in pre_map.items():
                if not (cand[v] >> u & 1) or used >> u & 1:
                    return None
                mapping[v] = u
                used |= 1 << u
            for v, u in pre_map.items():
                for w in range(n):
                    if mapping[w] == -1:
                        if g1.has_edge(v, w):
                            cand[w] &= g2.adj[u]
                        else:
                            cand[w] &= ~g2.adj[u] & full & ~(1 << u)

        def rec(used: int) -> bool:
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded("automorphism search budget exceeded")
            best_v, best_opts = -1, None
            for v in range(n):
                if mapping[v] != -1:
                    continue
                opts = cand[v] & ~used
                cnt = opts.bit_count()
                if cnt == 0:
                    return False
                if best_opts is None or cnt < best_opts.bit_count():
                    best_v, best_opts = v, opts
                    if cnt == 1:
                        break
            if best_v == -1:
                return True
            v = best_v
            opts = best_opts
            saved = cand[:]
            while opts:
                u = (opts & -opts).bit_length() - 1
                opts &= opts - 1
                ok = True
                for w in range(n):
                    if mapping[w] != -1:
                        if g1.has_edge(v, w) != g2.has_edge(u, mapping[w]):
                            ok = False
                            break
                if not ok:
                    continue
                mapping[v] = u
                for w in range(n):
                    if mapping[w] == -1:
                        if g1.has_edge(v, w):
                            cand[w] &= g2.adj[u]
                        else:
                            cand[w] &= ~g2.adj[u] & full & ~(1 << u)
                if rec(used | (1 << u)):
                    return True
                mapping[v] = -1
                for w in range(n):
                    cand[w] = saved[w]
            return False

        if rec(used):
            return tuple(mapping)
        return None


def find_isomorphism(g1: Graph, g2: Graph, budget: int = DEFAULT_SEARCH_BUDGET):
    """An adjacency-preserving bijection between two graphs, or None."""
    return _MappingSearch(g1, g2, budget).find()


def find_automorphism(g: Graph, pre_map: dict, budget: int = DEFAULT_SEARCH_BUDGET):
    """An automorphism extending the given partial vertex assignment, or None."""
    return _MappingSearch(g, g, budget).find(pre_map)


def is_vertex_transitive(g: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Whether the automorphism group has a single vertex orbit.

    Found automorphisms are reused as generators to grow the orbit of vertex
    0 before the next search, so transitive graphs need few searches.
    """
    if g.n <= 1:
        return True
    orbit = {0}
    gens = []

    def close():
        changed = True
        while changed:
            changed = False
            for sigma in gens:
                for v in list(orbit):
                    if sigma[v] not in orbit:
                        orbit.add(sigma[v])
                        changed = True

    for v in range(1, g.n):
        close()
        if v in orbit:
            continue
        sigma = find_automorphism(g, {0: v}, budget)
        if sigma is None:
            return False
        gens.append(sigma)
        orbit.add(v)
    return True


def stabilizer_orbits(g: Graph, i: int, budget: int = DEFAULT_SEARCH_BUDGET) -> list:
    """Orbit partition of the vertices under automorphisms fixing vertex i."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = []

    def close():
        for sigma in gens:
            for v in range(g.n):
                a, b = find(v), find(sigma[v])
                if a != b:
                    parent[a] = b

    for v in range(g.n):
        if v == i:
            continue
        close()
        for w in range(v + 1, g.n):
            if w == i or find(v) == find(w):
                continue
            sigma = find_automorphism(g, {i: i, v: w}, budget)
            if sigma is not None:
                gens.append(sigma)
                parent[find(v)] = find(w)
    close()
    groups = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


# -- deep vertex-transitivity ----------------------------------------------------


@dataclass(frozen=True)
class DvtReport:
    vertex_transitive: bool
    punched_transitive: bool
    complement_has_noncomplete_component: bool

    @property
    def deeply_vertex_transitive(self) -> bool:
        return (
            self.vertex_transitive
            and self.punched_transitive
            and self.complement_has_noncomplete_component
        )


def _component_is_complete(g: Graph, comp) -> bool:
    k = len(comp)
    return all(g.has_edge(u, v) for u, v in combinations(comp, 2)) if k > 1 else True


def dvt_report(g: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> DvtReport:
    """The three deep-vertex-transitivity predicates.

    When g is vertex-transitive all punched graphs are isomorphic, so the
    punched test runs at vertex 0 only.
    """
    vt = is_vertex_transitive(g, budget)
    punched = is_vertex_transitive(g.punch(0), budget)
    comp = g.complement()
    noncomplete = any(
        not _component_is_complete(comp, c) for c in comp.connected_components()
    )
    return DvtReport(
        vertex_transitive=vt,
        punched_transitive=punched,
        complement_has_noncomplete_component=noncomplete,
    )


# -- the regular-graph threshold quantity ---------------------------------------


def delta_g(g: Graph) -> float:
    """Threshold quantity for k-regular graphs on n >= 4 vertices.

    (2n-3k)/(n-3) when a triangle exists, otherwise the positive root of
    (n-3) a^2 - (n-3k+2) a - (n-2k).  Triangle detection is exact.
    """
    if not g.is_regular() or g.n < 4:
        raise ValueError("delta_g needs a regular graph on at least 4 vertices")
    n, k = g.n, g.degree(0)
    if g.has_triangle():
        return (2 * n - 3 * k) / (n - 3)
    b = n - 3 * k + 2
    return (b + math.sqrt(b * b + 4 * (n - 3) * (n - 2 * k))) / (2 * (n - 3))


def delta_g_exact(g: Graph):
    """Exact rational value of delta_g on the triangle branch, else None."""
    if g.has_triangle():
        return Fraction(2 * g.n - 3 * g.degree(0), g.n - 3)
    b = g.n - 3 * g.degree(0) + 2
    disc = b * b + 4 * (g.n - 3) * (g.n - 2 * g.degree(0))
    root = math.isqrt(disc)
    if root * root == disc and (b + root) % (2 * (g.n - 3)) == 0:
        return Fraction(b + root, 2 * (g.n - 3))
    return None


# -- exact stability and clique numbers ------------------------------------------


def omega_bruteforce(g: Graph, budget: int = 50_000_000) -> int:
    """Exact clique number by branch and bound with a greedy coloring bound."""
    n = g.n
    adj = g.adj
    best = 0
    nodes = 0

    def color_bound(cand: int):
        # vertices emitted grouped by color class so bounds are nondecreasing
        color_classes = []
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            for ci, cls in enumerate(color_classes):
                if not (adj[v] & cls):
                    color_classes[ci] = cls | (1 << v)
                    break
            else:
                color_classes.append(1 << v)
        order = []
        bounds = []
        for ci, cls in enumerate(color_classes):
            while cls:
                v = (cls & -cls).bit_length() - 1
                cls &= cls - 1
                order.append(v)
                bounds.append(ci + 1)
        return order, bounds

    def expand(size: int, cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded("clique search budget exceeded")
        order, bounds = color_bound(cand)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best:
                return
            v = order[idx]
            if size + 1 > best:
                best = size + 1
            expand(size + 1, cand & adj[v])
            cand &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best


def alpha_bruteforce(g: Graph, budget: int = 50_000_000) -> int:
    """Exact stability number: clique number of the complement."""
    return omega_bruteforce(g.complement(), budget)


def chromatic_bruteforce(g: Graph, limit: int = 12) -> int:
    """Exact chromatic number by iterative deepening; n <= limit."""
    if g.n > limit:
        raise SearchBudgetExceeded(f"chromatic brute force capped at n={limit}")
    for k in range(1, g.n + 1):
        colors = [-1] * g.n

        def feasible(v: int) -> bool:
            if v == g.n:
                return True
            used = {colors[u] for u in range(g.n) if g.has_edge(u, v) and colors[u] >= 0}
            for c in range(min(k, v + 1)):
                if c not in used:
                    colors[v] = c
                    if feasible(v + 1):
                        return True
                    colors[v] = -1
            return False

        if feasible(0):
            return k
    return g.n


# -- spectral bounds --------------------------------------------------------------


def snap_eigenvalue(g: Graph, x: float, max_den: int = 64, tol: float = 1e-7):
    """Nearest small-denominator rational eigenvalue, verified exactly.

    Returns a Fraction when x is within tol of a rational with denominator
    <= max_den that is exactly an eigenvalue of the adjacency matrix
    (checked by rational elimination at n <= 64), else None.
    """
    cand = Fraction(x).limit_denominator(max_den)
    if abs(float(cand) - x) > tol:
        return None
    if g.n > 64:
        return cand
    m = g.adjacency()
    rows = [
        [m.rows[i][j] - (cand if i == j else 0) for j in range(g.n)]
        for i in range(g.n)
    ]
    # singular iff elimination finds a zero pivot column
    size = g.n
    col = 0
    for row_idx in range(size):
        piv = None
        for r in range(row_idx, size):
            if rows[r][col] != 0:
                piv = r
                break
        while piv is None:
            col += 1
            if col == size:
                return cand  # rank deficiency: (A - cand I) is singular
            for r in range(row_idx, size):
                if rows[r][col] != 0:
                    piv = r
                    break
        rows[row_idx], rows[piv] = rows[piv], rows[row_idx]
        inv = rows[row_idx][col]
        for r in range(row_idx + 1, size):
            if rows[r][col] != 0:
                f = rows[r][col] / inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row_idx])]
        col += 1
        if col == size:
            return cand if row_idx < size - 1 else None
    return None


def _ratio_bound(lam1, lam_min, rounding) -> int:
    """floor/ceil of 1 - lam1/lam_min with exact arithmetic when possible."""
    if isinstance(lam1, Fraction) and isinstance(lam_min, Fraction):
        value = 1 - lam1 / lam_min
        return math.floor(value) if rounding == "floor" else math.ceil(value)
    value = 1.0 - float(lam1) / float(lam_min)
    eps = 1e-9 * max(1.0, abs(value))
    if rounding == "floor":
        return math.floor(value + eps)
    return math.ceil(value - eps)


def _exactish_extremes(g: Graph):
    """(lambda1, lambda_min) as Fractions when verifiable, else floats."""
    spec = g.spectrum()
    if g.is_regular():
        lam1 = Fraction(g.degree(0))
    else:
        lam1 = snap_eigenvalue(g, spec.lambda_max) or spec.lambda_max
    lam_min = snap_eigenvalue(g, spec.lambda_min) or spec.lambda_min
    return lam1, lam_min


def delsarte_clique_bound(g: Graph, scheme: AssociationScheme) -> int:
    """Clique bound floor(1 - l1/ln) for a graph whose adjacency matrix is an
    associate of a commutative scheme; the membership is checked exactly."""
    a = g.adjacency()
    if a not in scheme.matrices:
        raise ValueError("adjacency matrix is not an associate of the scheme")
    ok, wit = is_commutative(scheme)
    if not ok:
        raise ValueError(f"scheme is not commutative; witness {wit}")
    lam1, lam_min = _exactish_extremes(g)
    if float(lam_min) >= 0:
        raise ValueError("degenerate spectrum: no negative eigenvalue")
    return _ratio_bound(lam1, lam_min, "floor")


def hoffman_chromatic_bound(g: Graph) -> int:
    """Chromatic lower bound ceil(1 - l1/ln)."""
    lam1, lam_min = _exactish_extremes(g)
    if float(lam_min) >= 0:
        raise ValueError("degenerate spectrum: no negative eigenvalue")
    return _ratio_bound(lam1, lam_min, "ceil")


def clique_bound_dvt(g: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> int:
    """Clique bound floor(1 - l1/min(ln, -2, -1-delta(complement))).

    Requires the complement to be deeply vertex-transitive.
    """
    comp = g.complement()
    report = dvt_report(comp, budget)
    if not report.deeply_vertex_transitive:
        raise ValueError(f"complement is not deeply vertex-transitive: {report}")
    lam1, lam_min = _exactish_extremes(g)
    dbar = delta_g_exact(comp)
    if dbar is None:
        dbar = delta_g(comp)
    candidates = [lam_min, Fraction(-2), -1 - dbar]
    denom = min(candidates, key=float)
    if not isinstance(denom, Fraction):
        lam1 = float(lam1)
    return _ratio_bound(lam1, denom, "floor")


# -- distance-regularity -----------------------------------------------------------


def distance_matrix(g: Graph) -> list:
    """All-pairs BFS distances; -1 for unreachable pairs."""
    out = []
    for v in range(g.n):
        dist = [-1] * g.n
        dist[v] = 0
        frontier = 1 << v
        seen = frontier
        d = 0
        while frontier:
            d += 1
            nxt = 0
            f = frontier
            while f:
                u = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= g.adj[u]
            frontier = nxt & ~seen
            seen |= frontier
            f = frontier
            while f:
                u = (f & -f).bit_length() - 1
                f &= f - 1
                dist[u] = d
        out.append(dist)
    return out


def diameter(g: Graph) -> int:
    dm = distance_matrix(g)
    flat = [d for row in dm for d in row]
    if any(d < 0 for d in flat):
        raise ValueError("graph is disconnected")
    return max(flat)


def distance_graph(g: Graph, d: int) -> Graph:
    dm = distance_matrix(g)
    return Graph.from_edges(
        g.n,
        [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if dm[u][v] == d],
    )


@dataclass(frozen=True)
class DistanceSchemeResult:
    scheme: AssociationScheme | None
    distance_regular: bool
    witness: object = None


def distance_scheme(g: Graph) -> DistanceSchemeResult:
    """Distance matrices as a candidate scheme; passes iff distance-regular."""
    if any(-1 in row for row in distance_matrix(g)):
        raise ValueError("distance scheme needs a connected graph")
    dia = diameter(g)
    mats = []
    dm = distance_matrix(g)
    for d in range(dia + 1):
        mats.append(
            RatMatrix(
                [[1 if dm[u][v] == d else 0 for v in range(g.n)] for u in range(g.n)]
            )
        )
    scheme = AssociationScheme(mats, labels=[f"G({d})" for d in range(dia + 1)])
    report = verify_axioms(scheme)
    if report.all_pass:
        return DistanceSchemeResult(scheme=scheme, distance_regular=True)
    return DistanceSchemeResult(
        scheme=None, distance_regular=False, witness=report.a4.witness
    )


def dvt_from_distance_regular(g: Graph, d: int, budget: int = DEFAULT_SEARCH_BUDGET):
    """Complement of the distance-d graph, with its DVT report.

    When g is connected, non-complete, distance-regular and vertex-transitive
    and the distance-d graph has a non-complete component, the complement is
    asserted deeply vertex-transitive.
    """
    gd = distance_graph(g, d)
    comp = gd.complement()
    report = dvt_report(comp, budget)
    hypotheses = (
        distance_scheme(g).distance_regular
        and is_vertex_transitive(g, budget)
        and g.complement().edges()
        and any(not _component_is_complete(gd, c) for c in gd.connected_components())
    )
    if hypotheses:
        assert report.deeply_vertex_transitive, (
            "distance-regular vertex-transitive construction failed to produce"
            " a deeply vertex-transitive complement"
        )
    return comp, report
