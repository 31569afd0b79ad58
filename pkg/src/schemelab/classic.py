"""Johnson and Hamming schemes with closed-form eigenvalues.

Subsets are indexed colexicographically and words by their base-p value, so
matrix goldens are stable across runs.  Eigenspace multiplicities follow the
standard theory (binomial differences for Johnson, weighted binomials for
Hamming) and are cross-checked numerically by the test suite rather than
assumed.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .matkit import RatMatrix
from .schemes import AssociationScheme


def subsets_colex(p: int, q: int) -> list:
    """All q-subsets of {0..p-1} in colexicographic order."""
    return sorted(combinations(range(p), q), key=lambda s: tuple(reversed(s)))


def _comb0(n: int, k: int) -> int:
    """Binomial with the zero convention outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _check_johnson_params(p: int, q: int, i: int | None = None) -> None:
    if p < 1 or not (0 <= q <= p):
        raise ValueError(f"need 1 <= p and 0 <= q <= p, got p={p}, q={q}")
    if i is not None and not (0 <= i <= min(q, p - q)):
        raise ValueError(f"associate index i={i} outside 0..min(q, p-q)")


def johnson_matrix(p: int, q: int, i: int) -> RatMatrix:
    """0/1 matrix on q-subsets of [p] with entry 1 iff |S intersect T| = q - i."""
    _check_johnson_params(p, q, i)
    subs = subsets_colex(p, q)
    sets = [frozenset(s) for s in subs]
    want = q - i
    return RatMatrix(
        [[1 if len(a & b) == want else 0 for b in sets] for a in sets]
    )


def johnson_scheme(p: int, q: int) -> AssociationScheme:
    d = min(q, p - q)
    return AssociationScheme(
        [johnson_matrix(p, q, i) for i in range(d + 1)],
        labels=[f"J({p},{q},{i})" for i in range(d + 1)],
    )


def johnson_eigenvalue(p: int, q: int, i: int, j: int) -> int:
    """Eigenvalue of the i-th Johnson associate on the j-th eigenspace.

    Evaluates sum_h (-1)^h C(j,h) C(q-j, i-h) C(p-q-j, i-h); the alternative
    alternating-sum form is asserted equal.
    """
    _check_johnson_params(p, q, i)
    if not (0 <= j <= q):
        raise ValueError(f"eigenspace index j={j} outside 0..q")
    val = sum(
        (-1) ** h * _comb0(j, h) * _comb0(q - j, i - h) * _comb0(p - q - j, i - h)
        for h in range(0, q + 1)
    )
    alt = johnson_eigenvalue_alt(p, q, i, j)
    assert val == alt, f"Johnson eigenvalue forms disagree at {(p, q, i, j)}"
    return val


def johnson_eigenvalue_alt(p: int, q: int, i: int, j: int) -> int:
    """Second closed form: sum_{h=i}^q (-1)^(h-i+j) C(h,i) C(p-2h,q-h) C(p-h-j,h-j)."""
    return sum(
        (-1) ** (h - i + j)
        * _comb0(h, i)
        * _comb0(p - 2 * h, q - h)
        * _comb0(p - h - j, h - j)
        for h in range(i, q + 1)
    )


def johnson_multiplicity(p: int, q: int, j: int) -> int:
    """Dimension of the j-th Johnson eigenspace: C(p,j) - C(p,j-1)."""
    return _comb0(p, j) - _comb0(p, j - 1)


def hamming_words(p: int, q: int) -> list:
    """All words of {0..p-1}^q, indexed by base-p value, least significant last."""
    words = []
    for idx in range(p**q):
        w = []
        x = idx
        for _ in range(q):
            w.append(x % p)
            x //= p
        words.append(tuple(reversed(w)))
    return words


def _check_hamming_params(p: int, q: int, i: int | None = None) -> None:
    if p < 2 or q < 1:
        raise ValueError(f"need alphabet p >= 2 and length q >= 1, got p={p}, q={q}")
    if i is not None and not (0 <= i <= q):
        raise ValueError(f"distance i={i} outside 0..q")


def hamming_matrix(p: int, q: int, i: int) -> RatMatrix:
    """0/1 matrix on words of {0..p-1}^q with entry 1 iff Hamming distance is i."""
    _check_hamming_params(p, q, i)
    words = hamming_words(p, q)
    return RatMatrix(
        [
            [1 if sum(x != y for x, y in zip(a, b)) == i else 0 for b in words]
            for a in words
        ]
    )


def hamming_scheme(p: int, q: int) -> AssociationScheme:
    return AssociationScheme(
        [hamming_matrix(p, q, i) for i in range(q + 1)],
        labels=[f"H({p},{q},{i})" for i in range(q + 1)],
    )


def hamming_eigenvalue(p: int, q: int, i: int, j: int) -> int:
    """Krawtchouk value: sum_h (-1)^h (p-1)^(i-h) C(j,h) C(q-j, i-h)."""
    _check_hamming_params(p, q, i)
    if not (0 <= j <= q):
        raise ValueError(f"eigenspace index j={j} outside 0..q")
    return sum(
        (-1) ** h * (p - 1) ** (i - h) * _comb0(j, h) * _comb0(q - j, i - h)
        for h in range(0, i + 1)
    )


def hamming_multiplicity(p: int, q: int, j: int) -> int:
    """Dimension of the j-th Hamming eigenspace: C(q,j) (p-1)^j."""
    return comb(q, j) * (p - 1) ** j


def folded_hamming_subscheme(ell: int) -> AssociationScheme:
    """Binary Hamming subscheme pairing distances d and 2*ell+1-d.

    Classes on {0,1}^(2*ell+1): the identity, the antipodal permutation
    P = H(2, 2*ell+1, 2*ell+1), and B_j = H(2, 2*ell+1, 2*ell+1-j) +
    H(2, 2*ell+1, j) for j in 1..ell.  B_ell is the adjacency matrix of the
    graph joining words at distance ell or ell+1.  The antipodal class is
    required for the classes to sum to J; since B_j = (P + I) H_j and
    (P + I)^2 = 2 (P + I), the constructor asserts the product identity
    B_i B_j = 2 (P + I) H_i H_j.
    """
    if ell < 2:
        raise ValueError("need ell >= 2")
    q = 2 * ell + 1
    h = [hamming_matrix(2, q, i) for i in range(q + 1)]
    perm = h[q]
    matrices = [h[0], perm]
    labels = ["I", "P"]
    for j in range(1, ell + 1):
        matrices.append(h[q - j] + h[j])
        labels.append(f"B{j}")
    scheme = AssociationScheme(matrices, labels)

    pi = perm + h[0]
    b1, b2 = matrices[2], matrices[3]
    lhs = b1 @ b2
    rhs = (pi @ (h[1] @ h[2])).scale(2)
    assert lhs == rhs, "folded product identity B_i B_j = 2 (P+I) H_i H_j failed"
    return scheme
