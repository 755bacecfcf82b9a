"""Divided differences, Demazure operators and integration operators.

Every ``apply_*`` helper composes operators like matrices: the word
``(i_1, ..., i_l)`` means ``O_{i_1} O_{i_2} ... O_{i_l}``, so ``O_{i_l}`` hits
the seed first.  With this convention ``S_w = A_{w^-1 w0}(x^rho)``,
``ch_{lam,w} = T_w(z^lam)`` and ``D_w = I_{w^-1}(1)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .exactpoly import (
    InvariantViolation,
    Poly,
    aux_family,
    compose,
    divides_exactly,
    integrate_aux,
)
from .permgroup import CartanMatrix


def _check_index(i: int, f: Poly, top: int | None = None):
    top = f.arity - 1 if top is None else top
    if not 1 <= i <= top:
        raise IndexError(f"operator index {i} out of range 1..{top}")


def swap_vars(f: Poly, i: int) -> Poly:
    """``s_i f``: exchange variables ``i`` and ``i+1``."""
    k = i - 1
    out = {}
    for e, c in f.as_dict().items():
        e = list(e)
        e[k], e[k + 1] = e[k + 1], e[k]
        out[tuple(e)] = c
    return Poly._raw(f.family, f.arity, out)


def _exact_quotient(num: Poly, den: Poly, what: str) -> Poly:
    ok, q = divides_exactly(den, num)
    if not ok:
        raise InvariantViolation(f"{what}: numerator not divisible by {den}")
    return q


def divided_difference(i: int, f: Poly) -> Poly:
    """``A_i f = (f - s_i f) / (v_i - v_{i+1})``."""
    _check_index(i, f)
    num = f - swap_vars(f, i)
    if num.is_zero():
        return num
    den = Poly.var(f.family, f.arity, i) - Poly.var(f.family, f.arity, i + 1)
    return _exact_quotient(num, den, f"A_{i}")


def demazure_T(i: int, f: Poly) -> Poly:
    """``T_i f = (v_i f - v_{i+1} s_i f) / (v_i - v_{i+1})``."""
    _check_index(i, f)
    vi = Poly.var(f.family, f.arity, i)
    vj = Poly.var(f.family, f.arity, i + 1)
    num = vi * f - vj * swap_vars(f, i)
    if num.is_zero():
        return num
    return _exact_quotient(num, vi - vj, f"T_{i}")


def integrate_I(i: int, g: Poly) -> Poly:
    """Integrate ``g`` along ``y_i -> y_i - t, y_{i+1} -> y_{i+1} + t`` for ``t`` in ``[0, y_i - y_{i+1}]``."""
    _check_index(i, g)
    n = g.arity
    fam = aux_family(g.family)
    lifted = [Poly.var(fam, n + 1, k) for k in range(1, n + 1)]
    t = Poly.var(fam, n + 1, n + 1)
    lifted[i - 1] = lifted[i - 1] - t
    lifted[i] = lifted[i] + t
    if n == 0:
        raise IndexError("no variables to integrate")
    integrand = compose(g, lifted)
    upper = Poly.var(g.family, n, i) - Poly.var(g.family, n, i + 1)
    return integrate_aux(integrand, Poly.zero(g.family, n), upper)


@lru_cache(maxsize=None)
def _generic_monomial(j: int, c: tuple[int, ...], cartan: CartanMatrix):
    """``I_j`` of the ``Y``-monomial with exponent ``c``, as a term dict."""
    r = len(c)
    support = [m for m in range(r) if c[m] and cartan(m + 1, j) != 0]
    out: dict = {}

    def rec(idx: int, ks: list[int], coeff: int):
        if idx == len(support):
            k = sum(ks)
            e = list(c)
            for m, km in zip(support, ks):
                e[m] -= km
            e[j - 1] += k + 1
            val = Fraction((-1) ** k * coeff, k + 1)
            e = tuple(e)
            v = out.get(e, 0) + val
            if v:
                out[e] = v
            else:
                out.pop(e, None)
            return
        m = support[idx]
        a = cartan(m + 1, j)
        for km in range(c[m] + 1):
            ks.append(km)
            rec(idx + 1, ks, coeff * comb(c[m], km) * a**km)
            ks.pop()

    rec(0, [], 1)
    return out


def integrate_I_generic(j: int, g: Poly, cartan: CartanMatrix) -> Poly:
    """Integration operator on ``Y``-monomials for an arbitrary Cartan matrix."""
    if g.arity != cartan.rank:
        raise ValueError(f"arity {g.arity} does not match Cartan rank {cartan.rank}")
    _check_index(j, g, top=g.arity)
    out: dict = {}
    for e, coeff in g.as_dict().items():
        for e2, c2 in _generic_monomial(j, e, cartan).items():
            v = out.get(e2, 0) + coeff * c2
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
    return Poly._raw(g.family, g.arity, out)


_FAMILIES = {
    "A": divided_difference,
    "T": demazure_T,
    "I": integrate_I,
}


def apply_word(word: Sequence[int], seed: Poly, which: str,
               cartan: CartanMatrix | None = None) -> Poly:
    """Apply ``O_{i_1} ... O_{i_l}`` to ``seed``; the last letter acts first.

    ``which`` is one of ``A`` (divided differences), ``T`` (Demazure
    operators), ``I`` (type-A integration on ``y``) or ``IG`` (generic
    integration on ``Y`` with ``cartan``).
    """
    if which == "IG":
        if cartan is None:
            raise ValueError("generic integration needs a Cartan matrix")
        op = lambda i, f: integrate_I_generic(i, f, cartan)  # noqa: E731
    elif which in _FAMILIES:
        op = _FAMILIES[which]
    else:
        raise ValueError(f"unknown operator family {which!r}")
    f = seed
    for i in reversed(tuple(word)):
        f = op(i, f)
    return f
