"""Schubert polynomials, the Schubert-Kostka matrix and its inverse.

``K[w, a]`` is the coefficient of ``x^a`` in the Schubert polynomial of
``w``.  Its inverse is reachable four ways: an alternating sum over ``S_n``,
closed forms for 312- and 231-avoiding permutations (and the strictly
dominant special case), and the monomial coefficients of the degree
polynomial.  Littlewood-Richardson coefficients come from greedy Schubert
expansion and from an alternating triple-Kostka sum.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .exactpoly import Poly, d_pairing, poly_sum
from .operators import divided_difference
from .permgroup import (
    Permutation,
    all_perms,
    avoids,
    code,
    conjugate_by_longest,
    flag,
    is_strictly_dominant,
    perm_from_code,
    shape,
)

MAX_AMBIENT = 8


class NotApplicable(ValueError):
    """The requested closed form does not cover this permutation."""


def _sign_of_sequence(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def staircase(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


# ---------------------------------------------------------------------------
# Schubert polynomials


@lru_cache(maxsize=None)
def _schubert(trimmed: tuple[int, ...]) -> Poly:
    m = max(len(trimmed), 1)
    w = list(trimmed) if trimmed else [1]
    if w == list(range(m, 0, -1)):
        return Poly.monomial("x", staircase(m))
    for i in range(m - 1):
        if w[i] < w[i + 1]:
            w[i], w[i + 1] = w[i + 1], w[i]
            return divided_difference(i + 1, _schubert(Permutation(w).trimmed).extend(m))
    raise AssertionError("unreachable")


def schubert_poly(w: Permutation, n: int | None = None) -> Poly:
    """Schubert polynomial of ``w`` in ``x_1..x_n`` (default ``n = |w|``)."""
    p = _schubert(w.trimmed)
    n = w.n if n is None else n
    return p.extend(max(n, p.arity)) if n >= p.arity else p.extend(n)


def schubert_vexillary(w: Permutation, n: int | None = None) -> Poly:
    """Flagged Schur polynomial attached to the shape and flag of ``w``."""
    from .demazure import flagged_schur_tableaux

    if not avoids(w, "2143"):
        raise NotApplicable(f"{w} is not vexillary")
    n = w.n if n is None else n
    mu = shape(w)
    b = flag(w)
    return flagged_schur_tableaux(mu, (1,) * len(mu), b, n, family="x")


# ---------------------------------------------------------------------------
# Kostka sectors


@lru_cache(maxsize=None)
def _kostka_row(trimmed: tuple[int, ...], n: int) -> dict:
    p = schubert_poly(Permutation(trimmed) if trimmed else Permutation([1]), n)
    return {e: int(c) for e, c in p.as_dict().items()}


def kostka_row(w: Permutation, n: int | None = None) -> dict[tuple[int, ...], int]:
    """``a -> K[w, a]`` for compositions ``a`` of length ``n``."""
    n = w.n if n is None else n
    return dict(_kostka_row(w.trimmed, n))


def kostka(w: Permutation, a: Sequence[int]) -> int:
    a = tuple(a)
    if any(v < 0 for v in a):
        return 0
    m = max(len(a), w.n)
    row = _kostka_row(w.trimmed, m)
    return row.get(a + (0,) * (m - len(a)), 0)


def _perm_of_rho(v: Sequence[int]) -> int | None:
    """Sign of ``u`` when ``v`` is a rearrangement of ``rho``, else ``None``."""
    n = len(v)
    if sorted(v) != list(range(n)):
        return None
    return _sign_of_sequence([n - x for x in v])


def inverse_kostka(a: Sequence[int], w: Permutation, method: str = "alternating",
                   n: int | None = None) -> Fraction:
    """Entry ``K^-1[a, w]`` of the inverse Schubert-Kostka matrix."""
    a = tuple(a)
    n = max(len(a), w.n) if n is None else n
    if len(a) > n:
        if any(a[n:]):
            return Fraction(0)
        a = a[:n]
    a = a + (0,) * (n - len(a))
    w = w.extend(n)
    if any(v < 0 for v in a):
        return Fraction(0)

    if method == "alternating":
        w0w = Permutation(n + 1 - v for v in w.word)
        row = _kostka_row(w0w.trimmed, n)
        total = 0
        # only u with u(rho) - a in the support of the row contribute
        for b, k in row.items():
            v = tuple(bi + ai for bi, ai in zip(b, a))
            s = _perm_of_rho(v)
            if s is not None:
                total += s * k
        return Fraction(total)

    if method == "closed-312":
        if not avoids(w, "312"):
            raise NotApplicable(f"{w} is not 312-avoiding")
        c = code(Permutation(n + 1 - v for v in w.word))
        s = _perm_of_rho([ai + ci for ai, ci in zip(a, c)])
        return Fraction(s or 0)

    if method == "closed-231":
        if not avoids(w, "231"):
            raise NotApplicable(f"{w} is not 231-avoiding")
        c = code(Permutation(tuple(reversed(w.word))))
        v = [c[i] + a[n - 1 - i] for i in range(n)]
        s = _perm_of_rho(v)
        if s is None:
            return Fraction(0)
        return Fraction(s * (-1) ** sum(a))

    if method == "strictly-dominant":
        if not is_strictly_dominant(w):
            raise NotApplicable(f"{w} is not strictly dominant")
        c = code(w)
        k = c.index(0) + 1
        if any(a[k:]):
            raise NotApplicable("composition has support beyond the strict part of the code")
        head, parts = a[:k], c[:k]
        if sorted(head) != sorted(parts):
            return Fraction(0)
        # parts are distinct, so sigma is determined by positions
        pos = {v: i for i, v in enumerate(parts)}
        return Fraction(_sign_of_sequence([pos[v] for v in head]))

    if method == "dcoeff":
        from .degrees import d_chains

        d = d_chains(Permutation.identity(n), w).y_form
        m = 1
        for ai in a:
            m *= factorial(ai)
        return d.coefficient(a) * m

    raise ValueError(f"unknown method {method!r}")


INVERSE_METHODS = ("alternating", "closed-312", "closed-231", "strictly-dominant", "dcoeff")


def applicable_inverse_methods(w: Permutation, a: Sequence[int] | None = None) -> list[str]:
    out = ["alternating", "dcoeff"]
    if avoids(w, "312"):
        out.append("closed-312")
    if avoids(w, "231"):
        out.append("closed-231")
    if is_strictly_dominant(w):
        k = code(w).index(0) + 1
        if a is None or not any(tuple(a)[k:]):
            out.append("strictly-dominant")
    return out


def compositions(total: int, parts: int, cap: int | None = None):
    """Compositions of ``total`` into ``parts`` non-negative parts, lex descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    hi = total if cap is None else min(total, cap)
    for first in range(hi, -1, -1):
        for rest in compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def inverse_kostka_sector(n: int, degree: int, method: str = "alternating") -> dict:
    """``(a, w) -> K^-1[a, w]`` over ``S_n`` and ``|a| = degree``; zeros omitted."""
    out = {}
    perms = [w for w in all_perms(n) if w.length == degree]
    for a in compositions(degree, n):
        for w in perms:
            v = inverse_kostka(a, w, method, n)
            if v:
                out[(a, w)] = v
    return out


def kostka_inverse_symmetry_check(n: int) -> dict:
    """Check ``K^-1[a, w] = (-1)^|a| K^-1[rev a, w0 w w0]`` over ``S_n``."""
    checked = 0
    failures = []
    for w in all_perms(n):
        ww = conjugate_by_longest(w, n)
        for a in compositions(w.length, n, cap=n):
            lhs = inverse_kostka(a, w, "alternating", n)
            rhs = (-1) ** sum(a) * inverse_kostka(tuple(reversed(a)), ww, "alternating", n)
            checked += 1
            if lhs != rhs:
                failures.append({"w": str(w), "a": list(a), "lhs": str(lhs), "rhs": str(rhs)})
    return {"n": n, "checked": checked, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# standard elementary monomials


@lru_cache(maxsize=None)
def elementary_symmetric(k: int, m: int, arity: int, family: str = "x") -> Poly:
    """``e_k(v_1, ..., v_m)`` inside a ring of ``arity`` variables."""
    if k < 0 or k > m:
        return Poly.zero(family, arity)
    terms = {}
    for idx in itertools.combinations(range(m), k):
        e = [0] * arity
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = 1
    return Poly(family, arity, terms)


def is_standard_elementary(a: Sequence[int]) -> bool:
    return all(0 <= ai <= i for i, ai in enumerate(a))


def elementary_monomial(a: Sequence[int], arity: int | None = None) -> Poly:
    """``e_{a_2}(x_1) e_{a_3}(x_1, x_2) ...``; zero unless ``0 <= a_i <= i-1``."""
    a = tuple(a)
    arity = max(len(a), 1) if arity is None else arity
    if not is_standard_elementary(a):
        return Poly.zero("x", arity)
    p = Poly.one("x", arity)
    for i, ai in enumerate(a):
        if ai:
            p = p * elementary_symmetric(ai, i, arity)
    return p


def schubert_in_e_basis(w: Permutation, n: int | None = None) -> dict[tuple[int, ...], int]:
    """Coefficients of ``S_w`` on standard elementary monomials (alternating formula)."""
    n = w.n if n is None else n
    w = w.extend(n)
    rho = staircase(n)
    target = conjugate_by_longest(w, n)
    row = _kostka_row(target.trimmed, n)
    out: dict = {}
    for u in all_perms(n):
        urho = tuple(rho[u.word[i] - 1] for i in range(n))
        s = u.sign()
        for b, k in row.items():
            # b = rev(a) + u(rho) - rho
            ra = tuple(bi - ui + ri for bi, ui, ri in zip(b, urho, rho))
            a = tuple(reversed(ra))
            if is_standard_elementary(a):
                out[a] = out.get(a, 0) + s * k
    return {a: c for a, c in sorted(out.items()) if c}


def schubert_213_e_basis(w: Permutation, n: int | None = None) -> dict[tuple[int, ...], int]:
    """The signed sum over ``S_{n-1}`` valid for 213-avoiding ``w``."""
    if not avoids(w, "213"):
        raise NotApplicable(f"{w} is not 213-avoiding")
    n = w.n if n is None else n
    w = w.extend(n)
    rho = staircase(n)
    c = code(conjugate_by_longest(w, n))
    out: dict = {}
    for u in all_perms(n - 1) if n > 1 else [Permutation([1])]:
        uu = u.extend(n)
        urho = tuple(rho[uu.word[i] - 1] for i in range(n))
        v = tuple(ci + ri - ui for ci, ri, ui in zip(c, rho, urho))
        a = tuple(reversed(v))
        if is_standard_elementary(a):
            out[a] = out.get(a, 0) + u.sign()
    return {a: c for a, c in sorted(out.items()) if c}


def e_basis_to_poly(coeffs: dict, n: int) -> Poly:
    return poly_sum((c * elementary_monomial(a, n) for a, c in coeffs.items()), "x", n)


def cauchy_check(n: int) -> dict:
    """``e_{rev(rho - a)} = sum_w K[w, a] S_{w w0}`` for every ``a <= rho``."""
    rho = staircase(n)
    w0 = Permutation.longest(n)
    failures = []
    count = 0
    for a in itertools.product(*(range(r + 1) for r in rho)):
        lhs = elementary_monomial(tuple(reversed([r - x for r, x in zip(rho, a)])), n)
        rhs = poly_sum(
            (kostka(w, a) * schubert_poly(w * w0, n) for w in all_perms(n) if kostka(w, a)),
            "x",
            n,
        )
        count += 1
        if lhs != rhs:
            failures.append(list(a))
    return {"n": n, "checked": count, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# Schubert expansion and Littlewood-Richardson coefficients


def _lex_min_exponent(p: Poly) -> tuple[int, ...]:
    return min(p.as_dict())


def ambient_size(a: Sequence[int]) -> int:
    """Smallest ``m`` such that ``a`` is the code of a permutation in ``S_m``."""
    m = len(a)
    for i, ai in enumerate(a, 1):
        m = max(m, i + ai)
    return m


def schubert_expand(f: Poly, cap: int = MAX_AMBIENT) -> dict[Permutation, Fraction]:
    """Write an ``x``-polynomial as a combination of Schubert polynomials.

    Greedy: the lex-smallest monomial of the remainder is the code monomial
    of exactly one Schubert polynomial still to be subtracted.
    """
    n = f.arity
    out: dict = {}
    rest = f
    while not rest.is_zero():
        a = _lex_min_exponent(rest)
        m = ambient_size(a)
        if m > cap:
            raise ValueError(f"expansion needs S_{m}, above the cap S_{cap}")
        w = perm_from_code(a + (0,) * (m - len(a)))
        c = rest.coefficient(a)
        s = schubert_poly(w, max(m, n)).extend(n)
        rest = rest - c * s
        out[w] = out.get(w, 0) + c
    return {w: out[w] for w in sorted(out) if out[w]}


def lr_coefficients(u: Permutation, v: Permutation, n: int | None = None,
                    route: str = "expand") -> dict[Permutation, Fraction]:
    """``w -> c^w_{u,v}`` where ``S_u S_v = sum_w c^w_{u,v} S_w``."""
    n = max(u.n, v.n) if n is None else n
    if route == "expand":
        arity = 2 * n
        prod = schubert_poly(u, arity) * schubert_poly(v, arity)
        return schubert_expand(prod, cap=max(MAX_AMBIENT, arity))
    if route == "alternating":
        out = {}
        for w in all_perms(n):
            c = lr_alternating(u, v, w, n)
            if c:
                out[w] = c
        return dict(sorted(out.items()))
    raise ValueError(f"unknown route {route!r}")


def lr_alternating(u: Permutation, v: Permutation, w: Permutation, n: int) -> Fraction:
    """``c^w_{u,v} = sum_z sgn(z) K[u,a] K[v,b] K[w0 w, c]`` over ``a+b+c = z(rho)``."""
    w0w = Permutation(n + 1 - x for x in w.extend(n).word)
    ru = _kostka_row(u.trimmed, n)
    rv = _kostka_row(v.trimmed, n)
    rw = _kostka_row(w0w.trimmed, n)
    total = 0
    for a, ka in ru.items():
        for b, kb in rv.items():
            ab = tuple(x + y for x, y in zip(a, b))
            for c, kc in rw.items():
                s = _perm_of_rho([x + y for x, y in zip(ab, c)])
                if s is not None:
                    total += s * ka * kb * kc
    return Fraction(total)


def chevalley_rule(i: int, v: Permutation, n: int) -> dict[Permutation, int]:
    """``S_{s_i} S_v``: covers ``v t_ab`` with ``a <= i < b``, coefficient 1."""
    from .permgroup import bruhat_covers_up

    out = {}
    for cov in bruhat_covers_up(v, n):
        if cov.i <= i < cov.j:
            out[cov.target] = 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# L-matrix


def l_matrix_entry(u: Permutation, w: Permutation, n: int | None = None,
                   method: str = "kostka") -> Fraction:
    """``L[u, w] = sum_a K[u,a] K[w,a] a!``, the D-pairing of two Schubert polynomials."""
    n = max(u.n, w.n) if n is None else n
    if method == "kostka":
        ru = _kostka_row(u.trimmed, n)
        rw = _kostka_row(w.trimmed, n)
        total = 0
        for a, k in ru.items():
            kw = rw.get(a)
            if kw:
                m = 1
                for ai in a:
                    m *= factorial(ai)
                total += k * kw * m
        return Fraction(total)
    if method == "pairing":
        return d_pairing(schubert_poly(u, n), schubert_poly(w, n).relabel("y"))
    raise ValueError(f"unknown method {method!r}")
