"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, tagged with a variable family
(``x``, ``y``, ``z``, ``Y`` or an auxiliary-augmented family such as ``y+t``)
and an arity.  Terms iterate in graded lexicographic descending order, which
is also the order used for JSON serialization.

Variable indices in the public API are 1-based, matching the usual
mathematical notation ``x_1, ..., x_n``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

FAMILIES = ("x", "y", "z", "Y")


class ArityMismatchError(ValueError):
    """Operands live in different variable families or have different arity."""


class InvariantViolation(ArithmeticError):
    """An exact identity that must hold failed (e.g. a nonzero remainder)."""


def as_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


def aux_family(family: str) -> str:
    """Family tag of ``family`` extended by one integration variable ``t``."""
    return family + "+t"


class Poly:
    __slots__ = ("family", "arity", "_terms", "_sorted", "_hash")

    def __init__(self, family: str, arity: int, terms: Mapping | None = None):
        if arity < 0:
            raise ValueError("arity must be non-negative")
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != arity:
                    raise ArityMismatchError(f"exponent {e} has length != {arity}")
                if any(v < 0 for v in e):
                    raise ValueError(f"negative exponent in {e}")
                c = as_rational(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.family = family
        self.arity = arity
        self._terms = clean
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, family: str, arity: int, terms: dict) -> "Poly":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.family = family
        p.arity = arity
        p._terms = terms
        p._sorted = None
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, family: str, arity: int) -> "Poly":
        return cls._raw(family, arity, {})

    @classmethod
    def constant(cls, family: str, arity: int, c=1) -> "Poly":
        c = as_rational(c)
        return cls._raw(family, arity, {(0,) * arity: c} if c else {})

    @classmethod
    def one(cls, family: str, arity: int) -> "Poly":
        return cls.constant(family, arity, 1)

    @classmethod
    def var(cls, family: str, arity: int, i: int) -> "Poly":
        if not 1 <= i <= arity:
            raise IndexError(f"variable index {i} out of range 1..{arity}")
        e = [0] * arity
        e[i - 1] = 1
        return cls._raw(family, arity, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, family: str, exponent: Sequence[int], c=1) -> "Poly":
        return cls(family, len(exponent), {tuple(exponent): c})

    @classmethod
    def gens(cls, family: str, arity: int) -> list["Poly"]:
        return [cls.var(family, arity, i) for i in range(1, arity + 1)]

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in canonical (graded lex descending) order."""
        if self._sorted is None:
            self._sorted = sorted(
                self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True
            )
        return self._sorted

    def as_dict(self) -> dict:
        return dict(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.arity, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def variables_used(self) -> set[int]:
        used = set()
        for e in self._terms:
            used.update(i + 1 for i, v in enumerate(e) if v)
        return used

    # -- family handling ------------------------------------------------------
    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.family != self.family or other.arity != self.arity:
            raise ArityMismatchError(
                f"{self.family}[{self.arity}] vs {other.family}[{other.arity}]"
            )

    def relabel(self, family: str) -> "Poly":
        """Same coefficients, different variable family."""
        return Poly._raw(family, self.arity, self._terms)

    def extend(self, arity: int) -> "Poly":
        """Embed into a ring with more variables (appended at the end)."""
        if arity < self.arity:
            unused = all(not any(e[arity:]) for e in self._terms)
            if not unused:
                raise ArityMismatchError(f"cannot shrink to {arity}: variables in use")
            return Poly._raw(self.family, arity, {e[:arity]: c for e, c in self._terms.items()})
        pad = (0,) * (arity - self.arity)
        return Poly._raw(self.family, arity, {e + pad: c for e, c in self._terms.items()})

    def shift(self, offset: int, arity: int) -> "Poly":
        """Move variable ``v_i`` to ``v_{i+offset}`` inside a ring of ``arity`` variables."""
        if offset < 0 or offset + self.arity > arity:
            raise ArityMismatchError("shift does not fit")
        pre = (0,) * offset
        post = (0,) * (arity - offset - self.arity)
        return Poly._raw(self.family, arity, {pre + e + post: c for e, c in self._terms.items()})

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.family, self.arity, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.family, self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.family, self.arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return scale(self, other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.family, self.arity, out)

    def __rmul__(self, other):
        return scale(self, other)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            ok, q = divides_exactly(other, self)
            if not ok:
                raise InvariantViolation("polynomial division left a remainder")
            return q
        return scale(self, Fraction(1) / as_rational(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.family, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (
                self.family == other.family
                and self.arity == other.arity
                and self._terms == other._terms
            )
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {(0,) * self.arity: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.family, self.arity, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate(self, point)

    # -- display --------------------------------------------------------------
    def var_name(self, i: int) -> str:
        if self.family.endswith("+t") and i == self.arity:
            return "t"
        base = self.family.split("+")[0]
        return f"{base}{i}"

    def __str__(self):
        return to_str(self)

    def __repr__(self):
        return f"Poly({self.family!r}, {self.arity}, {to_str(self)!r})"

    def to_json(self) -> dict:
        return to_json(self)


# ---------------------------------------------------------------------------
# module-level operations


def add(p: Poly, q: Poly) -> Poly:
    p._check(q)
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    p._check(q)
    return p * q


def scale(p: Poly, c) -> Poly:
    c = as_rational(c)
    if not c:
        return Poly.zero(p.family, p.arity)
    return Poly._raw(p.family, p.arity, {e: v * c for e, v in p._terms.items()})


def poly_sum(polys: Iterable[Poly], family: str, arity: int) -> Poly:
    out: dict = {}
    for p in polys:
        if p.family != family or p.arity != arity:
            raise ArityMismatchError(f"{p.family}[{p.arity}] in a {family}[{arity}] sum")
        for e, c in p._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                del out[e]
    return Poly._raw(family, arity, out)


def partial_derivative(p: Poly, i: int, times: int = 1) -> Poly:
    if not 1 <= i <= p.arity:
        raise IndexError(f"variable index {i} out of range 1..{p.arity}")
    k = i - 1
    out = {}
    for e, c in p._terms.items():
        a = e[k]
        if a < times:
            continue
        coeff = c * (factorial(a) // factorial(a - times))
        out[e[:k] + (a - times,) + e[k + 1:]] = coeff
    return Poly._raw(p.family, p.arity, out)


def apply_diff_operator(f: Poly, g: Poly) -> Poly:
    """Apply ``f(d/dv_1, ..., d/dv_r)`` to ``g``."""
    if f.arity != g.arity:
        raise ArityMismatchError(f"arity {f.arity} vs {g.arity}")
    out: dict = {}
    for a, cf in f._terms.items():
        for b, cg in g._terms.items():
            m = 1
            ok = True
            for ai, bi in zip(a, b):
                if ai > bi:
                    ok = False
                    break
                if ai:
                    m *= factorial(bi) // factorial(bi - ai)
            if not ok:
                continue
            e = tuple(bi - ai for ai, bi in zip(a, b))
            v = out.get(e, 0) + cf * cg * m
            if v:
                out[e] = v
            else:
                del out[e]
    return Poly._raw(g.family, g.arity, out)


def d_pairing(f: Poly, g: Poly) -> Fraction:
    """Constant term of ``f(d/dy) g(y)``; equals ``sum_a f_a g_a a!``."""
    if f.arity != g.arity:
        raise ArityMismatchError(f"arity {f.arity} vs {g.arity}")
    total = Fraction(0)
    gt = g._terms
    for a, cf in f._terms.items():
        cg = gt.get(a)
        if cg:
            m = 1
            for ai in a:
                m *= factorial(ai)
            total += cf * cg * m
    return total


def compose(p: Poly, images: Sequence[Poly]) -> Poly:
    """Substitute ``v_i -> images[i-1]`` for every variable of ``p``."""
    if len(images) != p.arity:
        raise ArityMismatchError(f"{len(images)} images for {p.arity} variables")
    if p.arity == 0:
        # constants carry no target family; caller must supply one via substitute()
        raise ArityMismatchError("cannot compose a 0-ary polynomial")
    fam, ar = images[0].family, images[0].arity
    for q in images:
        if q.family != fam or q.arity != ar:
            raise ArityMismatchError("substitution targets must share one family")
    powers: list[dict[int, Poly]] = [{0: Poly.one(fam, ar), 1: q} for q in images]

    def power(i: int, k: int) -> Poly:
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i]
        return cache[k]

    out: dict = {}
    for e, c in p._terms.items():
        term = None
        for i, k in enumerate(e):
            if k:
                f = power(i, k)
                term = f if term is None else term * f
        if term is None:
            term = Poly.one(fam, ar)
        for e2, c2 in term._terms.items():
            v = out.get(e2, 0) + c * c2
            if v:
                out[e2] = v
            else:
                del out[e2]
    return Poly._raw(fam, ar, out)


def substitute(p: Poly, assignments: Mapping[int, Poly], family: str | None = None,
               arity: int | None = None) -> Poly:
    """Replace the variables named in ``assignments`` (1-based) by polynomials.

    Unassigned variables map to themselves, which requires the target ring to
    be the ring of ``p``.  If every variable is assigned the target ring is the
    one shared by the assigned polynomials.
    """
    for i in assignments:
        if not 1 <= i <= p.arity:
            raise IndexError(f"variable index {i} out of range 1..{p.arity}")
    targets = list(assignments.values())
    if targets:
        family = family or targets[0].family
        arity = targets[0].arity if arity is None else arity
    else:
        family = family or p.family
        arity = p.arity if arity is None else arity
    images = []
    for i in range(1, p.arity + 1):
        if i in assignments:
            images.append(assignments[i])
        else:
            if family != p.family or arity != p.arity:
                raise ArityMismatchError(f"variable {i} unassigned across rings")
            images.append(Poly.var(p.family, p.arity, i))
    if p.arity == 0:
        return Poly.constant(family, arity, p.constant_term())
    return compose(p, images)


def antiderivative_last(p: Poly) -> Poly:
    """Antiderivative in the last variable (the auxiliary ``t``)."""
    out = {}
    for e, c in p._terms.items():
        k = e[-1]
        out[e[:-1] + (k + 1,)] = c / (k + 1)
    return Poly._raw(p.family, p.arity, out)


def integrate_aux(p: Poly, lower: Poly, upper: Poly) -> Poly:
    """``int_lower^upper p dt`` where ``t`` is the last variable of ``p``.

    ``lower`` and ``upper`` live in the base ring (one variable fewer); the
    result does too.
    """
    if lower.arity != p.arity - 1 or upper.arity != p.arity - 1:
        raise ArityMismatchError("bounds must live in the base ring of p")
    if lower.family != upper.family:
        raise ArityMismatchError("bounds in different families")
    fam, ar = upper.family, upper.arity
    base = [Poly.var(fam, ar, i) for i in range(1, ar + 1)]
    anti = antiderivative_last(p)
    return compose(anti, base + [upper]) - compose(anti, base + [lower])


def evaluate(p: Poly, point: Sequence) -> Fraction:
    if len(point) != p.arity:
        raise ArityMismatchError(f"point of length {len(point)} for arity {p.arity}")
    pt = [as_rational(v) for v in point]
    total = Fraction(0)
    for e, c in p._terms.items():
        v = c
        for x, k in zip(pt, e):
            if k:
                v *= x ** k
        total += v
    return total


def _grlex_key(e):
    return (sum(e), e)


def divides_exactly(d: Poly, p: Poly) -> tuple[bool, Poly | None]:
    """Exact division ``p / d`` by iterated leading-term reduction.

    Returns ``(True, q)`` when ``p == d * q`` and ``(False, None)`` otherwise.
    A single divisor is a Groebner basis of its ideal, so a nonzero remainder
    really means ``d`` does not divide ``p``.
    """
    d._check(p)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lt_e, lt_c = d.leading_term()
    rest = [(e, c) for e, c in d._terms.items() if e != lt_e]
    work = dict(p._terms)
    quot: dict = {}
    remainder = False
    # the divisible part of the work polynomial shrinks in grlex order
    while work:
        e = max(work, key=_grlex_key)
        c = work[e]
        if all(a >= b for a, b in zip(e, lt_e)):
            qe = tuple(a - b for a, b in zip(e, lt_e))
            qc = c / lt_c
            quot[qe] = quot.get(qe, 0) + qc
            del work[e]
            for re_, rc in rest:
                te = tuple(a + b for a, b in zip(qe, re_))
                v = work.get(te, 0) - qc * rc
                if v:
                    work[te] = v
                else:
                    work.pop(te, None)
        else:
            remainder = True
            break
    if remainder:
        return False, None
    quot = {e: c for e, c in quot.items() if c}
    return True, Poly._raw(p.family, p.arity, quot)


# ---------------------------------------------------------------------------
# text and JSON


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.terms:
        mono = "*".join(
            p.var_name(i + 1) + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
        )
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def to_json(p: Poly) -> dict:
    return {
        "family": p.family,
        "arity": p.arity,
        "terms": [{"c": _fmt_coeff(c), "e": list(e)} for e, c in p.terms],
    }


def from_json(obj) -> Poly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    terms = {}
    for t in obj["terms"]:
        e = tuple(t["e"])
        if e in terms:
            raise ValueError(f"duplicate exponent {e} in serialized polynomial")
        terms[e] = Fraction(t["c"])
    return Poly(obj["family"], int(obj["arity"]), terms)


def dumps(p: Poly) -> str:
    return json.dumps(to_json(p), separators=(",", ":"))


def loads(s: str) -> Poly:
    return from_json(json.loads(s))


def determinant(matrix: Sequence[Sequence], family: str | None = None,
                arity: int | None = None):
    """Exact determinant by cofactor expansion along rows, memoized on column sets.

    Entries may be polynomials (all in one ring) or rationals.  Zero entries
    are skipped, which keeps the near-triangular matrices used here cheap.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    polys = [e for row in matrix for e in row if isinstance(e, Poly)]
    if polys:
        family, arity = polys[0].family, polys[0].arity
    if family is not None:
        zero = Poly.zero(family, arity)
        one = Poly.one(family, arity)
    else:
        zero, one = Fraction(0), Fraction(1)
    if n == 0:
        return one

    def is_zero(e):
        return (not e) if not isinstance(e, Poly) else e.is_zero()

    memo: dict = {}

    def rec(row: int, cols: tuple[int, ...]):
        if row == n:
            return one
        key = cols
        if key in memo:
            return memo[key]
        total = zero
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if is_zero(entry):
                continue
            minor = rec(row + 1, cols[:pos] + cols[pos + 1:])
            if is_zero(minor):
                continue
            term = entry * minor if isinstance(entry, Poly) else minor * entry
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return rec(0, tuple(range(n)))
