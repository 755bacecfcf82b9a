"""Parking polynomials and the degree polynomial of the long cycle ``s_1 ... s_r``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Optional

from .degrees import DegreePolynomial, Y_to_y, d_chains, divided_power, y_to_Y
from .exactpoly import Poly, aux_family, compose, determinant, integrate_aux, poly_sum
from .permgroup import Permutation, long_cycle

ROUTES = ("parking", "ballot", "nested-integral", "det-full", "det-steck",
          "two-power-expansion", "trees", "chains")


# ---------------------------------------------------------------------------
# parking functions


def is_parking_function(b) -> bool:
    r = len(b)
    s = sorted(b)
    return all(1 <= v <= r for v in b) and all(s[k] <= k + 1 for k in range(r))


def parking_functions(r: int) -> Iterator[tuple[int, ...]]:
    """All parking functions of length ``r`` by brute force, lexicographically."""
    for b in itertools.product(range(1, r + 1), repeat=r):
        if is_parking_function(b):
            yield b


def _increasing_parking(r: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix):
        k = len(prefix)
        if k == r:
            yield tuple(prefix)
            return
        lo = prefix[-1] if prefix else 1
        for v in range(lo, k + 2):
            yield from rec(prefix + [v])

    yield from rec([])


@lru_cache(maxsize=None)
def parking_polynomial(r: int, method: str = "sorted") -> Poly:
    """``P_r(Y_1..Y_r)``: sum of ``Y_{b_1} ... Y_{b_r}`` over parking functions.

    ``sorted`` walks weakly increasing parking functions and weights each by
    the number of its rearrangements; ``brute`` enumerates all ``r^r`` words.
    """
    if r == 0:
        return Poly.one("Y", 0)
    terms: dict = {}
    if method == "brute":
        for b in parking_functions(r):
            e = [0] * r
            for v in b:
                e[v - 1] += 1
            e = tuple(e)
            terms[e] = terms.get(e, 0) + 1
    elif method == "sorted":
        for b in _increasing_parking(r):
            e = [0] * r
            for v in b:
                e[v - 1] += 1
            mult = factorial(r)
            for m in e:
                mult //= factorial(m)
            terms[tuple(e)] = mult
    else:
        raise ValueError(f"unknown method {method!r}")
    return Poly("Y", r, terms)


def reverse_variables(p: Poly) -> Poly:
    """``p(v_r, ..., v_1)``."""
    return Poly._raw(p.family, p.arity, {tuple(reversed(e)): c for e, c in p.as_dict().items()})


def shift_variables(p: Poly, offset: int, arity: int) -> Poly:
    return p.shift(offset, arity)


def parking_recurrence(r: int, label_binomial: bool = True) -> Poly:
    """``P_r`` from the first-vertex recurrence.

    ``P_r = sum_k C(r-1, k-1) (Y_1 + ... + Y_k) P_{k-1}(Y_1..Y_{k-1}) P_{r-k}(Y_{k+1}..Y_r)``.
    The binomial counts the ways to split the remaining labels between the
    two sub-intervals; ``label_binomial=False`` drops it, which is wrong from
    ``r = 3`` on and is kept only to exhibit that.
    """
    memo: dict[int, Poly] = {0: Poly.one("Y", 0)}
    for m in range(1, r + 1):
        total = Poly.zero("Y", m)
        Y = Poly.gens("Y", m)
        for k in range(1, m + 1):
            lin = poly_sum(Y[:k], "Y", m)
            left = memo[k - 1].shift(0, m)
            right = memo[m - k].shift(k, m)
            coeff = comb(m - 1, k - 1) if label_binomial else 1
            total = total + coeff * lin * left * right
        memo[m] = total
    return memo[r]


def ballot_sequences(r: int) -> Iterator[tuple[int, ...]]:
    """``c`` with ``c_1 + ... + c_i <= i`` for ``i < r`` and total ``r``."""
    def rec(prefix, s):
        i = len(prefix)
        if i == r - 1:
            yield tuple(prefix) + (r - s,)
            return
        for v in range(0, i + 1 - s + 1):
            yield from rec(prefix + [v], s + v)

    if r == 0:
        yield ()
        return
    yield from rec([], 0)


# ---------------------------------------------------------------------------
# increasing binary trees


@dataclass(frozen=True)
class IncreasingBinaryTree:
    label: int
    left: Optional["IncreasingBinaryTree"] = None
    right: Optional["IncreasingBinaryTree"] = None

    def size(self) -> int:
        return 1 + (self.left.size() if self.left else 0) + (self.right.size() if self.right else 0)

    def labels_increase(self) -> bool:
        for child in (self.left, self.right):
            if child is not None and (child.label <= self.label or not child.labels_increase()):
                return False
        return True


def increasing_binary_trees(labels: tuple[int, ...]) -> Iterator[Optional[IncreasingBinaryTree]]:
    """Every increasing binary tree on ``labels``; the root is the smallest label."""
    if not labels:
        yield None
        return
    root, rest = labels[0], labels[1:]
    for k in range(len(rest) + 1):
        for left_labels in itertools.combinations(rest, k):
            chosen = set(left_labels)
            right_labels = tuple(v for v in rest if v not in chosen)
            for L in increasing_binary_trees(left_labels):
                for R in increasing_binary_trees(right_labels):
                    yield IncreasingBinaryTree(root, L, R)


def tree_weight(tree: Optional[IncreasingBinaryTree], arity: int, offset: int = 0) -> Poly:
    """Product over vertices of the sum of ``Y``'s on leaves below the left edge.

    Leaves of the completed tree are numbered left to right starting at
    ``offset + 1``; a subtree with ``m`` vertices owns ``m + 1`` leaves.
    """
    if tree is None:
        return Poly.one("Y", arity)
    left_size = tree.left.size() if tree.left else 0
    Y = Poly.gens("Y", arity)
    wt = poly_sum(Y[offset:offset + left_size + 1], "Y", arity)
    return (wt * tree_weight(tree.left, arity, offset)
            * tree_weight(tree.right, arity, offset + left_size + 1))


def binary_tree_sum(r: int) -> Poly:
    """Sum of tree weights over all ``r!`` increasing binary trees (in ``Y_1..Y_r``)."""
    if r == 0:
        return Poly.one("Y", 0)
    total = Poly.zero("Y", r + 1)
    for t in increasing_binary_trees(tuple(range(1, r + 1))):
        total = total + tree_weight(t, r + 1)
    return total.extend(r)


# ---------------------------------------------------------------------------
# the long cycle


def _from_Y(r: int, Yp: Poly, route: str) -> DegreePolynomial:
    n = r + 1
    return DegreePolynomial(Permutation.identity(n), long_cycle(r, n), Y_to_y(Yp), route)


def _from_y(r: int, yp: Poly, route: str) -> DegreePolynomial:
    n = r + 1
    return DegreePolynomial(Permutation.identity(n), long_cycle(r, n), yp, route)


def nested_integral(r: int) -> Poly:
    """``D_r(y_1..y_{r+1}) = int_{y_{r+1}}^{y_r} D_{r-1}(y_1..y_{r-1}, t) dt``."""
    p = Poly.one("y", 1)
    for m in range(1, r + 1):
        # p lives in y_1..y_m; rename y_m -> t inside y_1..y_{m+1}, t
        fam = aux_family("y")
        lifted = [Poly.var(fam, m + 2, i) for i in range(1, m)] + [Poly.var(fam, m + 2, m + 2)]
        integrand = compose(p, lifted)
        y = Poly.gens("y", m + 1)
        p = integrate_aux(integrand, y[m], y[m - 1])
    return p


def det_full(r: int) -> Poly:
    """The almost lower-triangular ``(r+1) x (r+1)`` determinant."""
    n = r + 1
    y = Poly.gens("y", n)
    mat = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            e = i + 1 - j if i <= r else r + 1 - j
            row.append(divided_power(y[i - 1], e))
        mat.append(row)
    return determinant(mat)


def det_steck(r: int) -> Poly:
    """``det(y_i^(i - j + 1))`` over ``i, j <= r``: the long-cycle polynomial at ``y_{r+1} = 0``.

    This is the full determinant with its last row reduced to ``(0, ..., 0, 1)``.
    """
    y = Poly.gens("y", r + 1)
    mat = [[divided_power(y[i - 1], i - j + 1) for j in range(1, r + 1)] for i in range(1, r + 1)]
    return determinant(mat, "y", r + 1)


def compositions_of(total: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions_of(total - first):
            yield (first,) + rest


def two_power_expansion(r: int) -> Poly:
    """Signed sum over compositions ``(i_1..i_k)`` of ``r + 1``."""
    n = r + 1
    y = Poly.gens("y", n)
    terms = []
    for comp in compositions_of(n):
        k = len(comp)
        term = Poly.constant("y", n, (-1) ** (n - k))
        s = 0
        for m, part in enumerate(comp):
            s += part
            term = term * divided_power(y[s - 1], part - 1 if m == k - 1 else part)
        terms.append(term)
    return poly_sum(terms, "y", n)


def d_long_cycle(r: int, route: str = "parking") -> DegreePolynomial:
    """Degree polynomial of ``s_1 ... s_r`` in ``S_{r+1}`` by the named route."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if route == "parking":
        return _from_Y(r, reverse_variables(parking_polynomial(r)) / factorial(r), route)
    if route == "trees":
        return _from_Y(r, reverse_variables(binary_tree_sum(r)) / factorial(r), route)
    if route == "ballot":
        terms = {}
        for c in ballot_sequences(r):
            d = 1
            for ci in c:
                d *= factorial(ci)
            terms[c] = Fraction(1, d)
        return _from_Y(r, Poly("Y", r, terms), route)
    if route == "nested-integral":
        return _from_y(r, nested_integral(r), route)
    if route == "det-full":
        return _from_y(r, det_full(r), route)
    if route == "det-steck":
        # translate back: D_r(y) = steck(y_1 - y_{r+1}, ..., y_r - y_{r+1})
        y = Poly.gens("y", r + 1)
        p = compose(det_steck(r), [v - y[r] for v in y[:r]] + [Poly.zero("y", r + 1)])
        return _from_y(r, p, route)
    if route == "two-power-expansion":
        return _from_y(r, two_power_expansion(r), route)
    if route == "chains":
        n = r + 1
        return d_chains(Permutation.identity(n), long_cycle(r, n), n)
    raise ValueError(f"unknown route {route!r}")


def long_cycle_inverse_kostka(a) -> int:
    """``K^-1[a, s_1..s_r]`` with ``r = len(a) - 1`` from the block decomposition.

    ``(a_1, ..., a_r, a_{r+1} + 1)`` must split into blocks ``(0, ..., 0, l)``
    with ``l - 1`` zeros; the value is ``(-1)^{r + 1 - #blocks}``.
    """
    seq = list(a)
    seq[-1] += 1
    n = len(seq)
    k = 0
    pos = 0
    while pos < n:
        run = 0
        while pos < n and seq[pos] == 0:
            pos += 1
            run += 1
        if pos == n or seq[pos] != run + 1:
            return 0
        pos += 1
        k += 1
    return (-1) ** (n - k)


def long_cycle_lambda_volume(lam) -> Fraction:
    """``P_r(lam_r - lam_{r+1}, ..., lam_1 - lam_2) / r!``."""
    r = len(lam) - 1
    Y = [Fraction(lam[i] - lam[i + 1]) for i in range(r)]
    return parking_polynomial(r)(list(reversed(Y))) / factorial(r)


def Y_form_of(p: Poly) -> Poly:
    return y_to_Y(p)
