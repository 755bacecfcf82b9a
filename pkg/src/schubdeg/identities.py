"""Permanent identities for root systems and the special-permutation comparator."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .degrees import degree_polynomial
from .exactpoly import Poly, as_rational, poly_sum
from .kernels import permanent_int
from .permgroup import Permutation, as_perm, code, perm_from_code


# ---------------------------------------------------------------------------
# permanents


def permanent_naive(M: Sequence[Sequence]) -> Fraction:
    """Sum over all permutations; only for cross-checking."""
    n = len(M)
    total = Fraction(0)
    for sigma in itertools.permutations(range(n)):
        prod = Fraction(1)
        for i, j in enumerate(sigma):
            prod *= as_rational(M[i][j])
            if not prod:
                break
        total += prod
    return total


def permanent_ryser(M: Sequence[Sequence]) -> Fraction:
    """Ryser's inclusion-exclusion formula in exact rationals."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    A = [[as_rational(v) for v in row] for row in M]
    total = Fraction(0)
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = Fraction(1)
        for row in A:
            s = sum((row[j] for j in cols), Fraction(0))
            prod *= s
            if not prod:
                break
        if (n - len(cols)) % 2:
            total -= prod
        else:
            total += prod
    return total


def permanent(M: Sequence[Sequence], method: str = "auto", backend: str = "auto") -> Fraction:
    """Exact permanent of a square matrix.

    ``auto`` uses the 64-bit integer kernel when every entry is an integer
    and no intermediate can overflow, and exact Ryser otherwise.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("permanent needs a square matrix")
    if method == "naive":
        return permanent_naive(M)
    if method == "ryser":
        return permanent_ryser(M)
    if method not in ("auto", "kernel"):
        raise ValueError(f"unknown method {method!r}")
    entries = [as_rational(v) for row in M for v in row]
    if all(v.denominator == 1 for v in entries):
        try:
            return Fraction(permanent_int([[int(as_rational(v)) for v in row] for row in M], backend))
        except OverflowError:
            if method == "kernel":
                raise
    elif method == "kernel":
        raise ValueError("the integer kernel needs integer entries")
    return permanent_ryser(M)


def positive_roots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def root_incidence_matrix(n: int) -> list[list[int]]:
    """Rows ``e_i - e_j`` for ``i < j <= n`` (lex order), columns ``1..n``."""
    rows = []
    for i, j in positive_roots(n):
        row = [0] * n
        row[i - 1] = 1
        row[j - 1] = -1
        rows.append(row)
    return rows


def root_gram_matrix(n: int) -> list[list[int]]:
    """``B B^T``: the pairings ``(alpha, beta^vee)`` of positive roots of ``S_n``."""
    B = root_incidence_matrix(n)
    return [[sum(a * b for a, b in zip(r1, r2)) for r2 in B] for r1 in B]


def cartan_gram_check(n: int, backend: str = "auto") -> dict:
    """Compare ``per(B B^T)`` with ``1! 2! ... n!`` and with ``|W| prod (rho, alpha^vee)``."""
    A = root_gram_matrix(n)
    superfact = 1
    for k in range(1, n + 1):
        superfact *= factorial(k)
    weyl_form = factorial(n)
    for i, j in positive_roots(n):
        weyl_form *= j - i
    via_kernel = permanent(A, "auto", backend)
    via_ryser = permanent_ryser(A) if len(A) <= 10 else via_kernel
    return {
        "n": n,
        "size": len(A),
        "permanent": int(via_kernel),
        "ryser": int(via_ryser),
        "factorial_product": superfact,
        "weyl_form": weyl_form,
        "ok": via_kernel == via_ryser == superfact == weyl_form,
    }


# ---------------------------------------------------------------------------
# special permutations


class NotSpecial(ValueError):
    pass


@dataclass(frozen=True)
class SpecialPermutation:
    w: Permutation
    n: int
    k: int
    a: tuple[int, ...]

    @classmethod
    def from_perm(cls, w) -> "SpecialPermutation":
        w = as_perm(w)
        c = list(code(w))
        info = special_code_data(c)
        if info is None:
            raise NotSpecial(f"{w} is not special (code {tuple(c)})")
        n, a = info
        return cls(w, n, len(a), tuple(a))

    @property
    def ambient(self) -> int:
        return self.n + self.k

    @property
    def length(self) -> int:
        return self.w.length


def special_code_data(c: Sequence[int]):
    """``(n, zero positions)`` when ``c`` reads ``n, *, n-1, *, ..., 2, *, 1, 0, ...``; else None."""
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return None
    n = c[0]
    expected = n
    pos = 0
    zeros = []
    while expected >= 1:
        if pos >= len(c) or c[pos] != expected:
            return None
        pos += 1
        if expected > 1 and pos < len(c) and c[pos] == 0:
            zeros.append(pos + 1)
            pos += 1
        expected -= 1
    if pos != len(c):
        return None
    zeros.append(pos + 1)
    return n, zeros


def special_permutations(n: int) -> list[SpecialPermutation]:
    """All special ``w`` with leading code entry ``n``; there are ``2^(n-1)``."""
    out = []
    for stars in itertools.product((False, True), repeat=max(n - 1, 0)):
        c = []
        for idx, v in enumerate(range(n, 0, -1)):
            c.append(v)
            if v > 1 and stars[idx]:
                c.append(0)
        c.append(0)
        out.append(SpecialPermutation.from_perm(perm_from_code(c)))
    return out


def valid_subsets(sp: SpecialPermutation) -> list[tuple[int, ...]]:
    """Subsets taking ``a_i - a_{i-1} - 1`` elements from each block ``(a_{i-1}, a_i]``."""
    choices = []
    prev = 0
    for ai in sp.a:
        block = range(prev + 1, ai + 1)
        choices.append(list(itertools.combinations(block, ai - prev - 1)))
        prev = ai
    return sorted(tuple(sorted(itertools.chain.from_iterable(p))) for p in itertools.product(*choices))


def maximal_valid_subset(sp: SpecialPermutation) -> tuple[int, ...]:
    removed = {1} | {ai + 1 for ai in sp.a[:-1]}
    return tuple(i for i in range(1, sp.ambient + 1) if i not in removed)


def d_J(sp: SpecialPermutation, J: Sequence[int]) -> int:
    m = sp.ambient
    return comb(m + 1, 2) - 1 - sum(ai + 1 for ai in sp.a[:-1]) - sum(J)


def sign_J(sp: SpecialPermutation, J: Sequence[int]) -> int:
    return -1 if d_J(sp, J) % 2 else 1


def C_nk(n: int, k: int) -> Fraction:
    num = 1
    for m in range(n + 1, n + k):
        num *= factorial(m)
    return Fraction(num, factorial(comb(n + 1, 2)))


def a_delta(args: Sequence[Poly]) -> Poly:
    """``prod_{i<j} (v_i - v_j)`` over the given arguments, in order."""
    out = Poly.one(args[0].family, args[0].arity)
    for i in range(len(args)):
        for j in range(i + 1, len(args)):
            out = out * (args[i] - args[j])
    return out


def rhs_terms(sp: SpecialPermutation) -> list[tuple[int, tuple[int, ...]]]:
    """``(sign, y indices)`` per valid subset, indices increasing."""
    m = sp.ambient
    out = []
    for J in valid_subsets(sp):
        idx = tuple(sorted(m - j + 1 for j in J))
        out.append((sign_J(sp, J), idx))
    return out


def conjecture_rhs(w) -> Poly:
    """The conjectured closed form, evaluated literally in ``y_1..y_{n+k}``."""
    sp = w if isinstance(w, SpecialPermutation) else SpecialPermutation.from_perm(w)
    m = sp.ambient
    y = Poly.gens("y", m)
    parts = [s * a_delta([y[i - 1] for i in idx]) for s, idx in rhs_terms(sp)]
    return C_nk(sp.n, sp.k) * poly_sum(parts, "y", m)


def conjecture_report(n_max: int, method: str = "chains") -> dict:
    """Compare both sides for every special ``w`` with ``n <= n_max``; never raises on mismatch."""
    entries = []
    for n in range(1, n_max + 1):
        for sp in special_permutations(n):
            rhs = conjecture_rhs(sp)
            lhs = degree_polynomial(sp.w, method, n=sp.ambient).y_form
            lhs_deg = lhs.degree()
            rhs_deg = None if rhs.is_zero() else rhs.degree()
            if lhs == rhs:
                status = "equal"
            elif lhs_deg != rhs_deg:
                status = "unequal-degree-mismatch"
            else:
                status = "unequal-same-degree"
            entries.append({
                "w": str(sp.w),
                "code": list(code(sp.w)),
                "n": sp.n,
                "k": sp.k,
                "a": list(sp.a),
                "valid_subsets": [list(J) for J in valid_subsets(sp)],
                "lhs_degree": lhs_deg,
                "rhs_degree": rhs_deg,
                "rhs_is_zero": rhs.is_zero(),
                "status": status,
                "rhs": rhs.to_json(),
            })
    counts: dict[str, int] = {}
    for e in entries:
        counts[e["status"]] = counts.get(e["status"], 0) + 1
    return {"n_max": n_max, "count": len(entries), "summary": dict(sorted(counts.items())),
            "entries": entries}
