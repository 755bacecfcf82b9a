"""Demazure characters, flagged Schur polynomials and Gelfand-Tsetlin polytopes."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from . import kernels
from .exactpoly import Poly, determinant, evaluate
from .operators import apply_word
from .permgroup import Permutation, avoids, b_of, reduced_word

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


# ---------------------------------------------------------------------------
# flagged tableaux


def flagged_tableaux(mu: Sequence[int], a: Sequence[int], b: Sequence[int]) -> Iterator[list[list[int]]]:
    """Fillings of ``mu`` with weakly increasing rows, strictly increasing columns
    and row ``i`` entries in ``[a_i, b_i]``; row-major backtracking."""
    mu = [m for m in mu]
    rows = len(mu)
    if len(a) < rows or len(b) < rows:
        raise ValueError("flags must cover every row of the shape")
    cells = [(i, j) for i in range(rows) for j in range(mu[i])]
    T = [[0] * mu[i] for i in range(rows)]

    def rec(k: int):
        if k == len(cells):
            yield [row[:] for row in T]
            return
        i, j = cells[k]
        lo = a[i]
        if j > 0:
            lo = max(lo, T[i][j - 1])
        if i > 0:
            lo = max(lo, T[i - 1][j] + 1)
        for v in range(lo, b[i] + 1):
            T[i][j] = v
            yield from rec(k + 1)

    yield from rec(0)


def tableau_weight(T: list[list[int]], arity: int) -> tuple[int, ...]:
    w = [0] * arity
    for row in T:
        for v in row:
            w[v - 1] += 1
    return tuple(w)


def _trim_shape(mu, a, b):
    m = sum(1 for v in mu if v > 0)
    return tuple(mu[:m]), tuple(a[:m]), tuple(b[:m])


def flagged_schur_tableaux(mu: Sequence[int], a: Sequence[int], b: Sequence[int],
                           arity: int, family: str = "x") -> Poly:
    """Sum of ``x^T`` over flagged semistandard tableaux."""
    mu, a, b = _trim_shape(tuple(mu), tuple(a), tuple(b))
    if any(v > arity for v in b):
        raise ValueError("flag exceeds the number of variables")
    terms: dict = {}
    for T in flagged_tableaux(mu, a, b):
        e = tableau_weight(T, arity)
        terms[e] = terms.get(e, 0) + 1
    return Poly(family, arity, terms)


def complete_homogeneous(m: int, k: int, l: int, arity: int, family: str = "x",
                         empty_is_one: bool = False) -> Poly:
    """``h_m(v_k, ..., v_l)``; zero when ``m < 0`` or ``k > l``.

    With ``empty_is_one`` the empty interval ``l = k - 1`` gives ``h_0 = 1``.
    """
    if m < 0:
        return Poly.zero(family, arity)
    if k > l:
        if empty_is_one and m == 0 and l == k - 1:
            return Poly.one(family, arity)
        return Poly.zero(family, arity)
    terms = {}
    for combo in itertools.combinations_with_replacement(range(k - 1, l), m):
        e = [0] * arity
        for i in combo:
            e[i] += 1
        terms[tuple(e)] = 1
    return Poly(family, arity, terms)


def flagged_schur_det(mu: Sequence[int], a: Sequence[int], b: Sequence[int], arity: int,
                      family: str = "x", empty_is_one: bool = False) -> Poly:
    """Gessel-Viennot determinant ``det(h_{mu_i - i + j}[a_j, b_i])``."""
    mu, a, b = _trim_shape(tuple(mu), tuple(a), tuple(b))
    m = len(mu)
    if m == 0:
        return Poly.one(family, arity)
    mat = [
        [complete_homogeneous(mu[i] - (i + 1) + (j + 1), a[j], b[i], arity, family, empty_is_one)
         for j in range(m)]
        for i in range(m)
    ]
    return determinant(mat)


# ---------------------------------------------------------------------------
# Demazure characters


def _check_partition(lam: Sequence[int]):
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(v < 0 for v in lam):
        raise ValueError(f"{tuple(lam)} is not a partition")


def demazure_character(lam: Sequence[int], w: Permutation) -> Poly:
    """``T_{i_1} ... T_{i_l}(z^lam)`` for a reduced word of ``w``."""
    lam = tuple(lam)
    _check_partition(lam)
    n = len(lam)
    w = w.extend(n)
    return apply_word(reduced_word(w), Poly.monomial("z", lam), "T")


def demazure_flagged(lam: Sequence[int], w: Permutation, route: str = "tableaux") -> Poly:
    """``s_lam^{b(w)}(z)`` for 312-avoiding ``w``."""
    lam = tuple(lam)
    n = len(lam)
    b = b_of(w.extend(n))
    a = (1,) * n
    if route == "tableaux":
        return flagged_schur_tableaux(lam, a, b, n, family="z")
    if route == "det":
        return flagged_schur_det(lam, a, b, n, family="z")
    raise ValueError(f"unknown route {route!r}")


def demazure_dimension(lam: Sequence[int], w: Permutation, method: str = "det",
                       backend: str = "auto") -> int:
    """Dimension of the Demazure module.

    ``det`` uses the binomial determinant (312-avoiding ``w``), ``char``
    evaluates the character at all ones and ``gt`` counts lattice points.
    """
    lam = tuple(lam)
    _check_partition(lam)
    n = len(lam)
    w = w.extend(n)
    if method == "det":
        b = b_of(w)
        mat = [[Fraction(comb(lam[i] + b[i] - (i + 1), b[i] - (j + 1)) if b[i] >= j + 1 else 0)
                for j in range(n)] for i in range(n)]
        return int(determinant(mat))
    if method == "char":
        return int(evaluate(demazure_character(lam, w), [1] * n))
    if method == "gt":
        return gt_count(lam, w, backend=backend)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Gelfand-Tsetlin polytopes


class GTPolytopeSpec:
    """Patterns with top row ``lam`` and entries frozen according to ``b(w)``."""

    def __init__(self, lam: Sequence[int], w: Permutation):
        lam = tuple(lam)
        _check_partition(lam)
        self.lam = lam
        self.n = len(lam)
        self.w = w.extend(self.n)
        if not avoids(self.w, "312"):
            raise ValueError(f"{w} is not 312-avoiding")
        self.b = b_of(self.w)

    def free_count(self) -> int:
        return sum(self.b) - self.n * (self.n + 1) // 2

    def is_frozen(self, i: int, j: int) -> bool:
        return i >= self.b[j - 1]

    def dilate(self, k: int) -> "GTPolytopeSpec":
        return GTPolytopeSpec(tuple(k * v for v in self.lam), self.w)


def gt_lattice_points(spec: GTPolytopeSpec) -> Iterator[dict[tuple[int, int], int]]:
    """Integer patterns as ``{(i, j): p_ij}``, rows filled top-down, left to right."""
    n, lam = spec.n, spec.lam
    P: dict = {(n, j): lam[j - 1] for j in range(1, n + 1)}
    cells = [(i, j) for i in range(n - 1, 0, -1) for j in range(1, i + 1)]

    def rec(k: int):
        if k == len(cells):
            yield dict(P)
            return
        i, j = cells[k]
        hi, lo = P[(i + 1, j)], P[(i + 1, j + 1)]
        if spec.is_frozen(i, j):
            v = lam[j - 1]
            if lo <= v <= hi:
                P[(i, j)] = v
                yield from rec(k + 1)
            return
        for v in range(lo, hi + 1):
            P[(i, j)] = v
            yield from rec(k + 1)

    yield from rec(0)


def gt_weight(P: dict, n: int) -> tuple[int, ...]:
    sums = [0] + [sum(P[(i, j)] for j in range(1, i + 1)) for i in range(1, n + 1)]
    return tuple(sums[i] - sums[i - 1] for i in range(1, n + 1))


def gt_character(spec: GTPolytopeSpec) -> Poly:
    terms: dict = {}
    for P in gt_lattice_points(spec):
        e = gt_weight(P, spec.n)
        terms[e] = terms.get(e, 0) + 1
    return Poly("z", spec.n, terms)


def gt_count(lam: Sequence[int], w: Permutation, backend: str = "auto") -> int:
    spec = GTPolytopeSpec(lam, w)
    return kernels.gt_count(spec.lam, spec.b, backend=backend)


def lagrange_coefficients(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Power-basis coefficients (constant first) of the interpolating polynomial."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t, c in enumerate(basis):
            coeffs[t] += yi * c / denom
    return coeffs


class EhrhartFitError(ArithmeticError):
    pass


def ehrhart_polynomial(lam: Sequence[int], w: Permutation, backend: str = "auto",
                       counter: str = "gt") -> list[Fraction]:
    """Exact fit of ``k -> #lattice points of the k-th dilate`` (``counter="gt"``)
    or of ``k -> dim V_{k lam, w}`` from the determinant (``counter="det"``).

    Fits at ``k = 0..l(w)`` and validates at ``k = l(w) + 1``.
    """
    lam = tuple(lam)
    n = len(lam)
    w = w.extend(n)
    d = w.length

    def count(k):
        kl = tuple(k * v for v in lam)
        if counter == "gt":
            return gt_count(kl, w, backend=backend)
        return demazure_dimension(kl, w, "det")

    pts = [(k, count(k)) for k in range(d + 1)]
    coeffs = lagrange_coefficients(pts)
    k = d + 1
    predicted = sum(c * k**t for t, c in enumerate(coeffs))
    actual = count(k)
    if predicted != actual:
        raise EhrhartFitError(f"dilate {k}: fit predicts {predicted}, count is {actual}")
    return coeffs


def gt_volume(lam: Sequence[int], w: Permutation, backend: str = "auto") -> Fraction:
    """Volume of the generalized GT polytope: the ``k^{l(w)}`` Ehrhart coefficient."""
    if any(Fraction(v).denominator != 1 for v in lam):
        raise ValueError("the Ehrhart route needs an integral lambda")
    lam = tuple(int(v) for v in lam)
    coeffs = ehrhart_polynomial(lam, w, backend)
    return coeffs[w.extend(len(lam)).length]


# ---------------------------------------------------------------------------
# alternating character formula


def w_b(b: Sequence[int]) -> list[Permutation]:
    n = len(b)
    return [Permutation(u) for u in itertools.permutations(range(1, n + 1))
            if all(u[i] <= b[i] for i in range(n))]


def phi_plus(u: Permutation, b: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` for roots ``e_i - e_j`` with ``i < j <= b_{u^-1(i)}``."""
    n = len(b)
    uinv = u.inverse()
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, b[uinv[i] - 1] + 1)]


def act(u: Permutation, v: Sequence) -> tuple:
    """``u(v)``: the entry ``v_i`` moves to position ``u(i)``."""
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[u.word[i] - 1] = x
    return tuple(out)


class PoleError(ZeroDivisionError):
    pass


def alternating_character_value(lam: Sequence[int], w: Permutation, point: Sequence) -> Fraction:
    n = len(lam)
    w = w.extend(n)
    b = b_of(w)
    z = [Fraction(v) for v in point]
    lr = [lam[i] + (n - 1 - i) for i in range(n)]
    total = Fraction(0)
    for u in w_b(b):
        mu = act(u, lr)
        term = Fraction(1)
        for i in range(n):
            term *= z[i] ** (mu[i] - (n - 1 - i))
        for i, j in phi_plus(u, b):
            f = 1 - z[j - 1] / z[i - 1]
            if f == 0:
                raise PoleError(f"pole at root e_{i}-e_{j}")
            term /= f
        total += u.sign() * term
    return total


def generic_points(n: int, seed: int = 0) -> Iterator[tuple[int, ...]]:
    """Deterministic candidate points: consecutive primes, shifted by ``seed``."""
    start = seed
    while start + n <= len(PRIMES):
        yield PRIMES[start:start + n]
        start += 1
    raise PoleError("ran out of evaluation points")


def alternating_character_check(lam: Sequence[int], w: Permutation, point: Sequence | None = None,
                                seed: int = 0) -> dict:
    """Compare the alternating sum over ``W_b`` with the Demazure character at a point."""
    lam = tuple(lam)
    n = len(lam)
    w = w.extend(n)
    b = b_of(w)
    wb = w_b(b)
    expected_size = 1
    for i, bi in enumerate(b):
        expected_size *= bi - i
    sizes_ok = len(wb) == expected_size and all(len(phi_plus(u, b)) == w.length for u in wb)
    candidates = [tuple(point)] if point is not None else generic_points(n, seed)
    ch = demazure_character(lam, w)
    for pt in candidates:
        try:
            lhs = alternating_character_value(lam, w, pt)
        except PoleError:
            if point is not None:
                raise
            continue
        rhs = evaluate(ch, pt)
        return {"point": list(pt), "alternating": lhs, "character": rhs,
                "sizes_ok": sizes_ok, "ok": lhs == rhs and sizes_ok}
    raise PoleError("no pole-free point found")
