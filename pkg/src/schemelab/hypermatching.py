"""The hypermatching scheme on r-matchings of the complete q-uniform hypergraph.

Ground elements are sets of r pairwise-disjoint q-subsets of [p].  Two pairs
of matchings are equivalent when some vertex permutation carries one pair to
the other, which happens exactly when their r-by-r tables of pairwise edge
intersections agree up to row/column permutation.  Classes are therefore
keyed by the canonical (lexicographically minimal) meet table, and since the
symmetric group acts transitively on matchings, the full class list is found
by scanning pairs with a fixed first matching.

For q = 2 the classes biject with partitions of 2r into four typed parts
(odd paths with the extra edge on either side, even paths, and even cycles);
the module enumerates those partitions directly and also extracts the
matching generating-function coefficient, which counts classes once p >= 4r.

All heavy per-p analysis (commutativity tables, exhaustive symmetric
subscheme search, stability of a contraction as p grows) runs on structure
constants from representative pairs and never materializes the matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .matkit import RatMatrix
from .schemes import (
    AssociationScheme,
    SchemeError,
    StructureConstants,
    is_commutative,
    structure_constants,
    verify_axioms,
)

DENSE_GROUND_CAP = 5000

# part kinds: odd path with extra S edge, odd path with extra T edge,
# even path, even cycle
PLUS, MINUS, BAR, PRIME = "+", "-", "~", "'"
_KIND_ORDER = {PLUS: 0, MINUS: 1, BAR: 2, PRIME: 3}


def matching_count(p: int, q: int, r: int) -> int:
    """Closed form p! / (r! (q!)^r (p-qr)!)."""
    return math.factorial(p) // (
        math.factorial(r) * math.factorial(q) ** r * math.factorial(p - q * r)
    )


def enumerate_matchings(p: int, q: int, r: int) -> list:
    """All r-matchings of the complete q-uniform hypergraph on [p].

    Each matching is a lexicographically sorted tuple of sorted q-tuples;
    matchings are listed in lexicographic order of their edge sequences.
    The count is asserted against the closed form as a bug trap.
    """
    if p < q * r:
        raise ValueError(f"need p >= q*r, got p={p}, q={q}, r={r}")
    edges = list(combinations(range(p), q))
    masks = [_mask(e) for e in edges]
    out = []
    stack = []

    def rec(start: int, used: int) -> None:
        if len(stack) == r:
            out.append(tuple(stack))
            return
        remaining = r - len(stack)
        for idx in range(start, len(edges) - remaining + 1):
            if masks[idx] & used:
                continue
            stack.append(edges[idx])
            rec(idx + 1, used | masks[idx])
            stack.pop()

    rec(0, 0)
    expected = matching_count(p, q, r)
    if len(out) != expected:
        raise AssertionError(
            f"matching enumeration produced {len(out)}, closed form says {expected}"
        )
    return out


def _mask(edge) -> int:
    m = 0
    for v in edge:
        m |= 1 << v
    return m


def meet_table(s, t) -> tuple:
    """r-by-r table of pairwise intersection sizes between two matchings."""
    ms = [_mask(e) for e in s]
    mt = [_mask(e) for e in t]
    return tuple(tuple((a & b).bit_count() for b in mt) for a in ms)


def canonical_meet_table(table) -> tuple:
    """Lexicographic minimum of the table over all row/column permutations."""
    r = len(table)
    best = None
    for rp in permutations(range(r)):
        rows = [table[i] for i in rp]
        for cp in permutations(range(r)):
            flat = tuple(rows[i][j] for i in range(r) for j in cp)
            if best is None or flat < best:
                best = flat
    return tuple(tuple(best[i * r : (i + 1) * r]) for i in range(r))


def table_is_realizable(table, p: int, q: int) -> bool:
    """Conditions for an r-by-r table to be a meet table inside [p].

    Entries lie in [0, q], every row and column sums to at most q, and the
    total is at least 2qr - p.
    """
    r = len(table)
    total = 0
    for row in table:
        if any(x < 0 or x > q for x in row):
            return False
        if sum(row) > q:
            return False
        total += sum(row)
    for j in range(r):
        if sum(table[i][j] for i in range(r)) > q:
            return False
    return total >= 2 * q * r - p


def saturation_of_table(table, q: int, r: int) -> int:
    """Vertices saturated by the union of a pair with this meet table."""
    return 2 * q * r - sum(sum(row) for row in table)


# -- typed partitions (q = 2) -------------------------------------------------


def pair_signature(s, t) -> tuple:
    """Typed-partition signature of a pair of 2-uniform matchings.

    Components of the union are alternating paths and cycles; a component
    with ell edges becomes ell+ (odd path, extra edge from the first
    matching), ell- (odd path, extra edge from the second), ell~ (even path)
    or ell' (even cycle, which includes doubled edges).  The signature is the
    sorted multiset of (value, kind) parts.
    """
    edges = [(frozenset(e), 0) for e in s] + [(frozenset(e), 1) for e in t]
    n_edges = len(edges)
    parent = list(range(n_edges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n_edges):
        for j in range(i + 1, n_edges):
            if edges[i][0] & edges[j][0]:
                parent[find(i)] = find(j)

    comps = {}
    for i in range(n_edges):
        comps.setdefault(find(i), []).append(i)
    parts = []
    for members in comps.values():
        s_cnt = sum(1 for i in members if edges[i][1] == 0)
        t_cnt = len(members) - s_cnt
        verts = frozenset().union(*(edges[i][0] for i in members))
        total = s_cnt + t_cnt
        if len(verts) == total:
            kind = PRIME
        elif s_cnt == t_cnt:
            kind = BAR
        elif s_cnt > t_cnt:
            kind = PLUS
        else:
            kind = MINUS
        parts.append((total, kind))
    return tuple(sorted(parts, key=lambda vk: (-vk[0], _KIND_ORDER[vk[1]])))


def signature_str(sig) -> str:
    return ",".join(f"{v}{k}" for v, k in sig)


def typed_partitions(r: int, max_nonprimed: int) -> list:
    """Partitions of 2r into typed parts with the path/cycle constraints.

    Odd values take kinds +/-, even values take kinds ~/'; the number of +
    parts equals the number of - parts; at most ``max_nonprimed`` parts are
    not primed.
    """
    universe = []
    for v in range(2 * r, 0, -1):
        kinds = (PLUS, MINUS) if v % 2 else (BAR, PRIME)
        for k in kinds:
            universe.append((v, k))
    results = []
    chosen = []

    def rec(idx: int, remaining: int, plus_minus: int, nonprimed: int) -> None:
        if remaining == 0:
            if plus_minus == 0:
                results.append(tuple(chosen))
            return
        if idx == len(universe):
            return
        v, k = universe[idx]
        max_count = remaining // v
        for count in range(max_count, -1, -1):
            np_extra = count if k != PRIME else 0
            if nonprimed + np_extra > max_nonprimed:
                continue
            delta = count if k == PLUS else (-count if k == MINUS else 0)
            chosen.extend([(v, k)] * count)
            rec(idx + 1, remaining - count * v, plus_minus + delta, nonprimed + np_extra)
            del chosen[len(chosen) - count :]

    rec(0, 2 * r, 0, 0)
    return sorted(results, key=lambda sig: tuple((-v, _KIND_ORDER[k]) for v, k in sig))


def gf_class_count_q2(r: int) -> int:
    """Coefficient of x^(2r) y^r in the typed-partition product generating
    function; equals the class count of the 2-uniform scheme once p >= 4r.

    x tracks total edges in a component, y tracks edges from the first
    matching; factors 1/(1 - x^(2i-1) y^i), 1/(1 - x^(2i-1) y^(i-1)) and
    1/(1 - x^(2i) y^i) squared cover the four part types.
    """
    nx, ny = 2 * r, r
    coeff = [[0] * (ny + 1) for _ in range(nx + 1)]
    coeff[0][0] = 1

    def absorb(a: int, b: int) -> None:
        # multiply by the geometric series of the monomial x^a y^b, truncated
        for dx in range(a, nx + 1):
            row = coeff[dx]
            prev = coeff[dx - a]
            for dy in range(b, ny + 1):
                row[dy] += prev[dy - b]

    for i in range(1, r + 1):
        absorb(2 * i - 1, i)
        absorb(2 * i - 1, i - 1)
        absorb(2 * i, i)
        absorb(2 * i, i)
    return coeff[nx][ny]


def count_classes_q2(p: int, r: int) -> int:
    """Class count of the (p, 2, r) scheme via typed partitions.

    For p >= 4r the generating-function coefficient must agree and is
    asserted as an internal cross-check.
    """
    if p < 2 * r:
        raise ValueError(f"need p >= 2r, got p={p}, r={r}")
    count = len(typed_partitions(r, p - 2 * r))
    if p >= 4 * r:
        gf = gf_class_count_q2(r)
        assert count == gf, f"partition count {count} != gf coefficient {gf}"
    return count


def count_classes_r2(p: int, q: int) -> int:
    """Closed-form class count of the (p, q, 2) scheme, valid for p >= 4q."""
    if p < 4 * q:
        raise ValueError(f"closed form needs p >= 4q; classify smaller p directly")
    if q % 2 == 0:
        num = q**4 + 6 * q**3 + 20 * q**2 + 36 * q + 24
    else:
        num = q**4 + 6 * q**3 + 20 * q**2 + 30 * q + 15
    if num % 24:
        raise AssertionError(f"class-count polynomial not divisible by 24 at q={q}")
    return num // 24


def series_a_p2r(terms: int) -> list:
    """Class counts of (4r, 2, r) for r = 0..terms-1."""
    return [gf_class_count_q2(r) for r in range(terms)]


def series_a_pq2(terms: int) -> list:
    """Class counts of (4q, q, 2) for q = 0..terms-1."""
    return [count_classes_r2(4 * q, q) if q else 1 for q in range(terms)]


# -- the scheme object --------------------------------------------------------


@dataclass(frozen=True)
class HmClass:
    """One equivalence class of matching pairs."""

    table: tuple          # canonical meet table
    saturation: int
    size: int             # number of ordered pairs in the class
    signature: tuple | None  # typed partition, q == 2 only
    label: str

    @property
    def is_identity(self) -> bool:
        return self.saturation == len(self.table) * sum(self.table[0]) // max(
            sum(self.table[0]), 1
        ) and all(
            self.table[i][j] == (sum(self.table[0]) if i == j else 0)
            for i in range(len(self.table))
            for j in range(len(self.table))
        )


# Figure-order labels for the (q, r) = (2, 2) classes, keyed by signature.
X_LABELS_22 = {
    ((2, PRIME), (2, PRIME)): "X0",
    ((4, PRIME),): "X1",
    ((2, BAR), (2, PRIME)): "X2",
    ((4, BAR),): "X3",
    ((2, PRIME), (1, PLUS), (1, MINUS)): "X4",
    ((2, BAR), (2, BAR)): "X5",
    ((3, PLUS), (1, MINUS)): "X6",
    ((3, MINUS), (1, PLUS)): "X7",
    ((2, BAR), (1, PLUS), (1, MINUS)): "X8",
    ((1, PLUS), (1, PLUS), (1, MINUS), (1, MINUS)): "X9",
}


def _normalize_sig_key(sig):
    return tuple(sorted(sig, key=lambda vk: (-vk[0], _KIND_ORDER[vk[1]])))


X_LABELS_22 = {_normalize_sig_key(k): v for k, v in X_LABELS_22.items()}


class HypermatchingScheme:
    """Classified (p, q, r) hypermatching scheme with lazy dense matrices."""

    def __init__(self, p: int, q: int, r: int):
        self.p, self.q, self.r = p, q, r
        self.matchings = enumerate_matchings(p, q, r)
        self._edge_masks = [tuple(_mask(e) for e in m) for m in self.matchings]
        n = len(self.matchings)
        self._index = {m: i for i, m in enumerate(self.matchings)}

        perms = [
            (rp, cp)
            for rp in permutations(range(r))
            for cp in permutations(range(r))
        ]
        self._perms = perms

        counts = {}
        reps0 = {}
        for t_idx in range(n):
            key = self._canon_key(0, t_idx)
            if key not in counts:
                counts[key] = 0
                reps0[key] = t_idx
            counts[key] += 1
        reps1 = {}
        if n > 1:
            for t_idx in range(n):
                key = self._canon_key(1, t_idx)
                if key not in reps1:
                    reps1[key] = t_idx

        keys = sorted(counts, key=lambda k: (2 * q * r - sum(k), k))
        classes = []
        self._key_to_class = {}
        self._reps = []
        for ci, key in enumerate(keys):
            table = tuple(tuple(key[i * r : (i + 1) * r]) for i in range(r))
            sat = saturation_of_table(table, q, r)
            sig = None
            label = f"C{ci}"
            if q == 2:
                sig = pair_signature(self.matchings[0], self.matchings[reps0[key]])
                if r == 2:
                    label = X_LABELS_22[_normalize_sig_key(sig)]
            classes.append(
                HmClass(
                    table=table,
                    saturation=sat,
                    size=n * counts[key],
                    signature=sig,
                    label=label,
                )
            )
            self._key_to_class[key] = ci
            pairs = [(0, reps0[key])]
            if key in reps1:
                pairs.append((1, reps1[key]))
            self._reps.append(pairs)
        self.classes = tuple(classes)
        self._sc = None

    # -- pair-oracle protocol ------------------------------------------------

    @property
    def ground_size(self) -> int:
        return len(self.matchings)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def _canon_key(self, x: int, y: int) -> tuple:
        ms = self._edge_masks[x]
        mt = self._edge_masks[y]
        r = self.r
        if r == 2:
            a = (ms[0] & mt[0]).bit_count()
            b = (ms[0] & mt[1]).bit_count()
            c = (ms[1] & mt[0]).bit_count()
            d = (ms[1] & mt[1]).bit_count()
            return min((a, b, c, d), (c, d, a, b), (b, a, d, c), (d, c, b, a))
        table = [[(a & b).bit_count() for b in mt] for a in ms]
        best = None
        for rp, cp in self._perms:
            flat = tuple(table[i][j] for i in rp for j in cp)
            if best is None or flat < best:
                best = flat
        return best

    def class_of(self, x: int, y: int) -> int:
        return self._key_to_class[self._canon_key(x, y)]

    def class_of_pair(self, s, t) -> int:
        return self._key_to_class[
            tuple(v for row in canonical_meet_table(meet_table(s, t)) for v in row)
        ]

    def representatives(self, k: int, count: int = 2):
        return self._reps[k][:count]

    def class_sizes(self) -> tuple:
        return tuple(c.size for c in self.classes)

    def transpose_class(self, k: int) -> int:
        """Class of the reversed pair; swaps meet-table rows and columns."""
        table = self.classes[k].table
        r = self.r
        flipped = tuple(tuple(table[j][i] for j in range(r)) for i in range(r))
        key = tuple(v for row in canonical_meet_table(flipped) for v in row)
        return self._key_to_class[key]

    def identity_class(self) -> int:
        s0 = self.matchings[0]
        return self.class_of_pair(s0, s0)

    def structure(self) -> StructureConstants:
        if self._sc is None:
            self._sc = structure_constants(self)
        return self._sc

    # -- dense materialization -----------------------------------------------

    def _require_dense(self) -> None:
        if self.ground_size > DENSE_GROUND_CAP:
            raise SchemeError(
                f"ground size {self.ground_size} exceeds dense cap {DENSE_GROUND_CAP};"
                " use structure-constant mode"
            )

    def associate(self, k: int) -> RatMatrix:
        """Dense 0/1 matrix of one class."""
        self._require_dense()
        n = self.ground_size
        rows = [[0] * n for _ in range(n)]
        for x in range(n):
            row = rows[x]
            for y in range(n):
                if self.class_of(x, y) == k:
                    row[y] = 1
        return RatMatrix(rows)

    def to_association_scheme(self) -> AssociationScheme:
        self._require_dense()
        n = self.ground_size
        mats = [[[0] * n for _ in range(n)] for _ in range(self.n_classes)]
        for x in range(n):
            for y in range(n):
                mats[self.class_of(x, y)][x][y] = 1
        return AssociationScheme(
            [RatMatrix(m) for m in mats], labels=[c.label for c in self.classes]
        )

    def saturation_contraction(self) -> AssociationScheme:
        """Dense scheme {I, B_qr - I, B_qr+1, ..., B_min(p, 2qr)}.

        B_i joins pairs whose union saturates exactly i vertices.
        """
        self._require_dense()
        p, q, r = self.p, self.q, self.r
        lo, hi = q * r, min(p, 2 * q * r)
        n = self.ground_size
        unions = [self._union_mask(x) for x in range(n)]
        mats = {i: [[0] * n for _ in range(n)] for i in range(lo, hi + 1)}
        eye = [[0] * n for _ in range(n)]
        for x in range(n):
            eye[x][x] = 1
            ux = unions[x]
            for y in range(n):
                sat = (ux | unions[y]).bit_count()
                mats[sat][x][y] = 1
        b_lo = mats[lo]
        for x in range(n):
            b_lo[x][x] = 0
        matrices = [RatMatrix(eye), RatMatrix(b_lo)]
        labels = ["I", f"B{lo}-I"]
        for i in range(lo + 1, hi + 1):
            matrices.append(RatMatrix(mats[i]))
            labels.append(f"B{i}")
        return AssociationScheme(matrices, labels)

    def _union_mask(self, x: int) -> int:
        m = 0
        for em in self._edge_masks[x]:
            m |= em
        return m


_orbit_verified = set()


def classify(p: int, q: int, r: int) -> HypermatchingScheme:
    """Classify all matching pairs by canonical meet table.

    For p <= 7 the meet-table classification is asserted to coincide with
    the vertex-permutation orbit definition by exhaustive search over the
    stabilizer of a fixed first matching (done once per parameter triple).
    """
    scheme = HypermatchingScheme(p, q, r)
    if p <= 7 and (p, q, r) not in _orbit_verified:
        _verify_orbit_equivalence(scheme)
        _orbit_verified.add((p, q, r))
    return scheme


def _verify_orbit_equivalence(scheme: HypermatchingScheme) -> None:
    """Pairs (S0, T), (S0, T') share a class iff a permutation fixing S0 as a
    matching maps T to T'; checked exhaustively."""
    p, q, r = scheme.p, scheme.q, scheme.r
    s0 = scheme.matchings[0]
    stab = []
    s0_set = frozenset(frozenset(e) for e in s0)
    for sigma in permutations(range(p)):
        image = frozenset(frozenset(sigma[v] for v in e) for e in s0)
        if image == s0_set:
            stab.append(sigma)

    def apply(sigma, matching):
        return tuple(sorted(tuple(sorted(sigma[v] for v in e)) for e in matching))

    n = scheme.ground_size
    orbit_id = [-1] * n
    next_id = 0
    for t in range(n):
        if orbit_id[t] != -1:
            continue
        for sigma in stab:
            orbit_id[scheme._index[apply(sigma, scheme.matchings[t])]] = next_id
        next_id += 1
    by_class = {}
    for t in range(n):
        by_class.setdefault(scheme.class_of(0, t), set()).add(orbit_id[t])
    if any(len(v) != 1 for v in by_class.values()) or next_id != scheme.n_classes:
        raise AssertionError(
            f"meet-table classes differ from permutation orbits at (p,q,r)="
            f"{(p, q, r)}"
        )


# -- commutativity table ------------------------------------------------------


@dataclass(frozen=True)
class CommutativityTable:
    """Per-pair commutation verdicts across a range of p.

    ``verdicts[(i, j)]`` is "always", "never", or a sorted tuple of the p
    values at which the two classes commute; i, j index ``class_keys``.
    A value of p counts as tested for a pair only when both classes are
    non-zero there.
    """

    q: int
    r: int
    p_values: tuple
    class_keys: tuple       # canonical meet tables, stable order
    labels: tuple
    saturations: tuple
    tested: dict
    commuting: dict

    def verdict(self, i: int, j: int):
        key = (min(i, j), max(i, j))
        tested = self.tested[key]
        commuting = self.commuting[key]
        if not tested:
            return "untested"
        if commuting == tested:
            return "always"
        if not commuting:
            return "never"
        return tuple(sorted(commuting))


def stable_class_keys(q: int, r: int):
    """Canonical tables, saturations and labels at the stable regime p = 2qr."""
    scheme = HypermatchingScheme(2 * q * r, q, r)
    keys = tuple(tuple(v for row in c.table for v in row) for c in scheme.classes)
    labels = tuple(c.label for c in scheme.classes)
    sats = tuple(c.saturation for c in scheme.classes)
    return keys, labels, sats


def commutativity_table(q: int, r: int, p_range) -> CommutativityTable:
    """Record, for every class pair, the p values at which they commute.

    Commutation of classes (i, j) at a given p means p[i][j][k] = p[j][i][k]
    for every class k, computed from representative-pair structure constants.
    """
    keys, labels, sats = stable_class_keys(q, r)
    m = len(keys)
    tested = {(i, j): set() for i in range(m) for j in range(i, m)}
    commuting = {(i, j): set() for i in range(m) for j in range(i, m)}
    p_values = tuple(p_range)
    for p in p_values:
        scheme = HypermatchingScheme(p, q, r)
        sc = scheme.structure()
        local_keys = [
            tuple(v for row in c.table for v in row) for c in scheme.classes
        ]
        to_stable = {li: keys.index(k) for li, k in enumerate(local_keys)}
        nloc = scheme.n_classes
        for a in range(nloc):
            for b in range(a, nloc):
                i, j = sorted((to_stable[a], to_stable[b]))
                tested[(i, j)].add(p)
                if all(sc.p[a][b][k] == sc.p[b][a][k] for k in range(nloc)):
                    commuting[(i, j)].add(p)
    return CommutativityTable(
        q=q,
        r=r,
        p_values=p_values,
        class_keys=keys,
        labels=labels,
        saturations=sats,
        tested=tested,
        commuting=commuting,
    )


def scheme_is_commutative(p: int, q: int, r: int):
    """Commutativity of the full scheme from structure constants."""
    return is_commutative(HypermatchingScheme(p, q, r).structure())


# -- symmetric subscheme search ----------------------------------------------


def _set_partitions(items):
    """All set partitions via restricted-growth strings, deterministic order."""
    items = list(items)
    n = len(items)
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, maxval: int):
        if i == n:
            blocks = {}
            for idx, b in enumerate(rgs):
                blocks.setdefault(b, []).append(items[idx])
            yield tuple(tuple(blk) for blk in blocks.values())
            return
        for v in range(maxval + 2):
            rgs[i] = v
            yield from rec(i + 1, max(maxval, v))

    yield from rec(0, -1)


def _contraction_is_symmetric_subscheme(blocks, sc: StructureConstants, tmap, ident):
    """Check transpose closure and closure of products in the block span."""
    for blk in blocks:
        bs = set(blk)
        if any(tmap[c] not in bs for c in blk):
            return False
    all_blocks = [(ident,)] + [tuple(b) for b in blocks]
    nq = sc.n_classes
    for bi in all_blocks:
        for bj in all_blocks:
            if bi == (ident,) or bj == (ident,):
                continue
            vals = [
                sum(sc.p[a][b][k] for a in bi for b in bj) for k in range(nq)
            ]
            for blk in all_blocks:
                first = vals[blk[0]]
                if any(vals[c] != first for c in blk[1:]):
                    return False
    return True


def subscheme_search(q: int, r: int, p: int) -> list:
    """Exhaustive list of contractions of the (p, q, r) scheme that are
    symmetric subschemes.

    Enumerates every set partition of the non-identity classes (restricted
    growth strings), pruning blocks that are not transpose-closed, then tests
    product closure against the structure constants.  Partitions are returned
    as sorted tuples of blocks of class labels.
    """
    scheme = classify(p, q, r)
    if scheme.n_classes > 13:
        raise SchemeError("partition enumeration infeasible beyond 12 classes")
    sc = scheme.structure()
    tmap = [scheme.transpose_class(k) for k in range(scheme.n_classes)]
    ident = scheme.identity_class()
    others = [k for k in range(scheme.n_classes) if k != ident]
    found = []
    for blocks in _set_partitions(others):
        if _contraction_is_symmetric_subscheme(blocks, sc, tmap, ident):
            labeled = tuple(
                sorted(tuple(sorted(scheme.classes[c].label for c in blk)) for blk in blocks)
            )
            found.append(labeled)
    return sorted(found)


@dataclass(frozen=True)
class StabilityReport:
    """Per-p verdicts for one contraction, with the small-p extension check.

    ``hypothesis_holds`` records whether the contraction is a symmetric
    subscheme at every p in [2qr, 3qr]; when it is, the extension result
    predicts a subscheme at every larger p, and ``prediction_consistent``
    confirms the verdicts actually observed up to p_max agree with that.
    """

    q: int
    r: int
    blocks: tuple
    verdicts: dict
    hypothesis_window: tuple
    hypothesis_holds: bool
    prediction_consistent: bool

    @property
    def subscheme_at(self) -> tuple:
        return tuple(sorted(p for p, ok in self.verdicts.items() if ok))


def contraction_stability(q: int, r: int, blocks, p_max: int) -> StabilityReport:
    """Test one contraction (blocks of class labels) at every p in [2qr, p_max]."""
    keys, labels, sats = stable_class_keys(q, r)
    label_to_stable = {lab: i for i, lab in enumerate(labels)}
    wanted = [tuple(sorted(b)) for b in blocks]
    flat = sorted(lab for b in wanted for lab in b)
    ident_label = labels[0]
    expected = sorted(lab for lab in labels if lab != ident_label)
    if flat != expected:
        raise SchemeError("blocks must partition the non-identity stable classes")

    verdicts = {}
    for p in range(2 * q * r, p_max + 1):
        scheme = HypermatchingScheme(p, q, r)
        sc = scheme.structure()
        local = {c.label: i for i, c in enumerate(scheme.classes)}
        blk_local = [tuple(local[lab] for lab in b) for b in wanted]
        tmap = [scheme.transpose_class(k) for k in range(scheme.n_classes)]
        ident = scheme.identity_class()
        verdicts[p] = _contraction_is_symmetric_subscheme(blk_local, sc, tmap, ident)

    window = (2 * q * r, 3 * q * r)
    in_window = [ok for p, ok in verdicts.items() if window[0] <= p <= window[1]]
    holds = bool(in_window) and all(in_window)
    beyond = [ok for p, ok in verdicts.items() if p > window[1]]
    consistent = (not holds) or all(beyond)
    return StabilityReport(
        q=q,
        r=r,
        blocks=tuple(wanted),
        verdicts=verdicts,
        hypothesis_window=window,
        hypothesis_holds=holds,
        prediction_consistent=consistent,
    )
