"""Degree polynomials of Schubert varieties in type A, by several routes.

Every route returns a :class:`DegreePolynomial`.  The canonical form used
for comparison is the ``Y``-form: substitute ``y_i = Y_i + ... + Y_{n-1}``
and ``y_n = 0``.  This is faithful because the polynomials are invariant
under translating all ``y_i`` by a common constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Sequence

from .exactpoly import (
    Poly,
    apply_diff_operator,
    compose,
    determinant,
    divides_exactly,
    evaluate,
    partial_derivative,
)
from .operators import apply_word
from .permgroup import (
    CartanMatrix,
    Permutation,
    all_perms,
    avoids,
    bruhat_covers_up,
    bruhat_leq,
    code,
    conjugate_by_longest,
    flag,
    reduced_word,
    saturated_chains,
    shape,
)

METHODS = ("chains", "integrate", "diff", "det312", "det231", "det3412", "duan")


# ---------------------------------------------------------------------------
# coordinates


def y_to_Y(p: Poly) -> Poly:
    """Rewrite a ``y``-polynomial in ``Y_i = y_i - y_{i+1}`` with ``y_n = 0``."""
    n = p.arity
    if n <= 1:
        return Poly.constant("Y", max(n - 1, 0), p.constant_term()) if p.degree() <= 0 else _fail(p)
    r = n - 1
    Y = Poly.gens("Y", r)
    images = []
    for i in range(n):
        acc = Poly.zero("Y", r)
        for k in range(i, r):
            acc = acc + Y[k]
        images.append(acc)
    return compose(p, images)


def _fail(p: Poly):
    raise ValueError(f"cannot express {p} in simple-root coordinates")


def Y_to_y(p: Poly) -> Poly:
    """Substitute ``Y_i = y_i - y_{i+1}``."""
    r = p.arity
    n = r + 1
    if r == 0:
        return Poly.constant("y", n, p.constant_term())
    y = Poly.gens("y", n)
    return compose(p, [y[i] - y[i + 1] for i in range(r)])


def vandermonde(n: int, family: str = "y") -> Poly:
    v = Poly.one(family, n)
    g = Poly.gens(family, n)
    for i in range(n):
        for j in range(i + 1, n):
            v = v * (g[i] - g[j])
    return v


def superfactorial(n: int) -> int:
    out = 1
    for k in range(1, n):
        out *= factorial(k)
    return out


def divided_power(var: Poly, b: int) -> Poly:
    """``v^(b) = v^b / b!``; zero when ``b < 0``."""
    if b < 0:
        return Poly.zero(var.family, var.arity)
    return (var ** b) / factorial(b)


# ---------------------------------------------------------------------------
# result container


@dataclass(frozen=True)
class DegreePolynomial:
    u: Permutation
    w: Permutation
    y_form: Poly
    provenance: str
    comparable: bool = True
    notes: tuple = field(default=())

    @cached_property
    def Y_form(self) -> Poly:
        return y_to_Y(self.y_form)

    @property
    def n(self) -> int:
        return self.y_form.arity

    def form(self, coords: str = "Y") -> Poly:
        return self.Y_form if coords == "Y" else self.y_form

    def __call__(self, *point) -> Fraction:
        return self.y_form(*point)


def _normalize(u: Permutation, w: Permutation, n: int | None):
    n = max(u.n, w.n, n or 1)
    return u.extend(n), w.extend(n), n


# ---------------------------------------------------------------------------
# routes


def d_chains(u: Permutation, w: Permutation, n: int | None = None,
             enumerate_chains: bool = False) -> DegreePolynomial:
    """Weighted chain sum over the Bruhat interval ``[u, w]``.

    By default the sum is organised as a dynamic program over the interval
    (sum of chain weights ending at each element); ``enumerate_chains=True``
    walks every saturated chain explicitly instead.
    """
    u, w, n = _normalize(u, w, n)
    if not bruhat_leq(u, w):
        return DegreePolynomial(u, w, Poly.zero("y", n), "chains", comparable=False,
                                notes=("u is not below w in Bruhat order",))
    y = Poly.gens("y", n)
    d = w.length - u.length
    if enumerate_chains:
        total = Poly.zero("y", n)
        for chain in saturated_chains(u, w):
            term = Poly.one("y", n)
            for c in chain:
                term = term * (y[c.i - 1] - y[c.j - 1])
            total = total + term
    else:
        total = _chain_dp(u.word, w.word)
    return DegreePolynomial(u, w, total / factorial(d), "chains")


@lru_cache(maxsize=None)
def _chain_dp(uw: tuple[int, ...], ww: tuple[int, ...]) -> Poly:
    n = len(uw)
    u, w = Permutation(uw), Permutation(ww)
    y = Poly.gens("y", n)
    level = {u: Poly.one("y", n)}
    for _ in range(w.length - u.length):
        nxt: dict = {}
        for x in sorted(level):
            fx = level[x]
            for c in bruhat_covers_up(x, n):
                if bruhat_leq(c.target, w):
                    term = fx * (y[c.i - 1] - y[c.j - 1])
                    nxt[c.target] = nxt[c.target] + term if c.target in nxt else term
        level = nxt
    return level.get(w, Poly.zero("y", n))


def d_integration(w: Permutation, n: int | None = None) -> DegreePolynomial:
    """``D_w = I_{w^-1}(1)``."""
    n = max(w.n, n or 1)
    w = w.extend(n)
    word = reduced_word(w.inverse())
    p = apply_word(word, Poly.one("y", n), "I")
    return DegreePolynomial(Permutation.identity(n), w, p, "integrate")


@lru_cache(maxsize=None)
def top_degree_polynomial(n: int) -> Poly:
    """Vandermonde divided by ``1! 2! ... (n-1)!``."""
    return vandermonde(n) / superfactorial(n)


def d_differential(u: Permutation, w: Permutation, n: int | None = None) -> DegreePolynomial:
    """Apply ``S_u(d/dy) S_{w0 w}(d/dy)`` to the normalized Vandermonde."""
    from .schubert import schubert_poly

    u, w, n = _normalize(u, w, n)
    w0w = Permutation(n + 1 - v for v in w.word)
    op = schubert_poly(u, n) * schubert_poly(w0w, n)
    p = apply_diff_operator(op, top_degree_polynomial(n))
    return DegreePolynomial(u, w, p, "diff")


def d_determinant(w: Permutation, form: str = "312", n: int | None = None) -> DegreePolynomial:
    """Determinant / flagged-Schur formulas for pattern-avoiding permutations.

    ``form`` is ``312`` (``det(y_i^(n - c_i - j))``, ``c = code(w0 w)``),
    ``231`` (``det((-y_{n+1-i})^(n - c_i - j))``, ``c = code(w w0)``) or
    ``3412`` (flagged Schur polynomial of ``w0 w`` as a differential operator).
    """
    from .demazure import flagged_schur_tableaux

    n = max(w.n, n or 1)
    w = w.extend(n)
    pattern = {"312": "312", "231": "231", "3412": "3412"}.get(form)
    if pattern is None:
        raise ValueError(f"unknown determinant form {form!r}")
    if not avoids(w, pattern):
        raise ValueError(f"{w} is not {pattern}-avoiding")
    y = Poly.gens("y", n)
    if form == "312":
        c = code(Permutation(n + 1 - v for v in w.word))
        mat = [[divided_power(y[i], n - c[i] - (j + 1)) for j in range(n)] for i in range(n)]
        p = determinant(mat)
    elif form == "231":
        c = code(Permutation(tuple(reversed(w.word))))
        mat = [[divided_power(-y[n - 1 - i], n - c[i] - (j + 1)) for j in range(n)]
               for i in range(n)]
        p = determinant(mat)
    else:
        v = Permutation(n + 1 - x for x in w.word)
        mu, b = shape(v), flag(v)
        op = flagged_schur_tableaux(mu, (1,) * len(mu), b, n, family="x")
        p = apply_diff_operator(op, top_degree_polynomial(n))
    return DegreePolynomial(Permutation.identity(n), w, p, f"det{form}")


def d_duan(cartan: CartanMatrix, word: Sequence[int]) -> Poly:
    """Sum over strictly upper-triangular arrays ``(k_pq)`` of Duan's product.

    The result is a ``Y``-polynomial in ``cartan.rank`` variables and equals
    ``I_{i_l} ... I_{i_1}(1)`` for the word ``(i_1, ..., i_l)``.
    """
    word = tuple(word)
    r = cartan.rank
    l = len(word)
    if any(not 1 <= i <= r for i in word):
        raise ValueError(f"word {word} has letters outside 1..{r}")
    neg = [[-cartan(word[p], word[q]) for q in range(l)] for p in range(l)]
    out: dict = {}
    col = [0] * l  # K_{*s}: sum of entries above the diagonal in column s
    exps = [0] * l

    def finish(coeff: Fraction):
        e = [0] * r
        for s in range(l):
            e[word[s] - 1] += exps[s]
        e = tuple(e)
        v = out.get(e, 0) + coeff
        if v:
            out[e] = v
        else:
            out.pop(e, None)

    def row(s: int, coeff: Fraction):
        if s == l:
            finish(coeff)
            return
        budget = col[s] + 1
        targets = [q for q in range(s + 1, l) if neg[s][q] != 0]

        def fill(t: int, used: int, c: Fraction):
            if t == len(targets):
                e = col[s] + 1 - used
                exps[s] = e
                row(s + 1, c * Fraction(factorial(col[s]), factorial(e)))
                return
            q = targets[t]
            base = neg[s][q]
            for k in range(budget - used + 1):
                col[q] += k
                fill(t + 1, used + k, c * Fraction(base**k, factorial(k)))
                col[q] -= k

        fill(0, 0, coeff)

    row(0, Fraction(1))
    return Poly("Y", r, out)


def degree_polynomial(w: Permutation, method: str = "chains", u: Permutation | None = None,
                      n: int | None = None) -> DegreePolynomial:
    """Dispatch to a route by name; ``u`` is only honoured by ``chains`` and ``diff``."""
    n = max(w.n, (u.n if u else 1), n or 1)
    if u is not None and not u.is_identity() and method not in ("chains", "diff"):
        raise ValueError(f"method {method!r} only computes D_w (u = id)")
    u = u or Permutation.identity(n)
    if method == "chains":
        return d_chains(u, w, n)
    if method == "integrate":
        return d_integration(w, n)
    if method == "diff":
        return d_differential(u, w, n)
    if method in ("det312", "det231", "det3412"):
        return d_determinant(w, method[3:], n)
    if method == "duan":
        w = w.extend(n)
        Yp = d_duan(CartanMatrix.type_a(n - 1), reduced_word(w)) if n > 1 else Poly.one("Y", 0)
        return DegreePolynomial(Permutation.identity(n), w, Y_to_y(Yp), "duan")
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# derived quantities and identities


def degree_of_schubert(w: Permutation, lam: Sequence, n: int | None = None) -> Fraction:
    """``l(w)! * D_w(lam)``."""
    n = max(w.n, len(lam), n or 1)
    d = d_chains(Permutation.identity(n), w, n)
    lam = list(lam) + [0] * (n - len(lam))
    return factorial(w.length) * evaluate(d.y_form, lam)


def solve_in_span(target: Poly, basis: Sequence[Poly]) -> list[Fraction] | None:
    """Exact coefficients ``c`` with ``target = sum c_k basis_k``, or ``None``."""
    monos = sorted({e for p in [target, *basis] for e in p.as_dict()})
    index = {e: i for i, e in enumerate(monos)}
    m, k = len(monos), len(basis)
    # augmented matrix, one row per monomial
    rows = [[Fraction(0)] * (k + 1) for _ in range(m)]
    for j, p in enumerate(basis):
        for e, c in p.as_dict().items():
            rows[index[e]][j] = c
    for e, c in target.as_dict().items():
        rows[index[e]][k] = c
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(rows[i][k] for i in range(r, m)):
        return None
    sol = [Fraction(0)] * k
    for i, col in enumerate(pivots):
        sol[col] = rows[i][k]
    return sol


def lr_via_degrees(u: Permutation, w: Permutation, n: int | None = None) -> dict[Permutation, Fraction]:
    """Expand ``D_{u,w}`` in the basis ``{D_v}`` with ``l(v) = l(w) - l(u)``."""
    u, w, n = _normalize(u, w, n)
    target = d_chains(u, w, n)
    if not target.comparable:
        return {}
    d = w.length - u.length
    vs = [v for v in all_perms(n) if v.length == d]
    basis = [d_chains(Permutation.identity(n), v, n).Y_form for v in vs]
    sol = solve_in_span(target.Y_form, basis)
    if sol is None:
        raise ArithmeticError(f"D_({u},{w}) is not in the span of degree polynomials")
    return {v: c for v, c in zip(vs, sol) if c}


def coproduct_check(w: Permutation, n: int | None = None) -> bool:
    """``D_w(y + z) = sum c^w_{u,v} D_u(y) D_v(z)`` in ``2n`` variables."""
    from .schubert import lr_coefficients

    n = max(w.n, n or 1)
    w = w.extend(n)
    dw = d_chains(Permutation.identity(n), w, n).y_form
    g = Poly.gens("y", 2 * n)
    lhs = compose(dw, [g[i] + g[n + i] for i in range(n)])
    rhs = Poly.zero("y", 2 * n)
    perms = all_perms(n)
    for u in perms:
        for v in perms:
            if u.length + v.length != w.length:
                continue
            c = lr_coefficients(u, v, n).get(w, 0)
            if c:
                du = d_chains(Permutation.identity(n), u, n).y_form.shift(0, 2 * n)
                dv = d_chains(Permutation.identity(n), v, n).y_form.shift(n, 2 * n)
                rhs = rhs + c * du * dv
    return lhs == rhs


def concatenate(blocks: Sequence[Permutation]) -> Permutation:
    out = []
    offset = 0
    for b in blocks:
        out.extend(v + offset for v in b.word)
        offset += b.n
    return Permutation(out)


def block_product_check(blocks: Sequence[Permutation], lam_blocks: Sequence[Sequence]) -> bool:
    """``D_w(lam) = prod D_{w^i}(lam^i)`` for a block-diagonal ``w``."""
    if len(blocks) != len(lam_blocks):
        raise ValueError("one lambda block per permutation block")
    for b, lb in zip(blocks, lam_blocks):
        if len(lb) != b.n:
            raise ValueError("lambda block length must match its permutation block")
        if not (avoids(b, "312") or avoids(b, "231")):
            raise ValueError(f"block {b} is neither 312- nor 231-avoiding")
    w = concatenate(blocks)
    lam = [v for lb in lam_blocks for v in lb]
    lhs = evaluate(d_chains(Permutation.identity(w.n), w).y_form, lam)
    rhs = Fraction(1)
    for b, lb in zip(blocks, lam_blocks):
        form = "312" if avoids(b, "312") else "231"
        rhs *= evaluate(d_determinant(b, form).y_form, lb)
    return lhs == rhs


def is_harmonic(p: Poly) -> bool:
    """``e_k(d/dy) p = 0`` for ``k = 1..n``."""
    from .schubert import elementary_symmetric

    n = p.arity
    return all(
        apply_diff_operator(elementary_symmetric(k, n, n), p).is_zero() for k in range(1, n + 1)
    )


def symmetry_image(w: Permutation, n: int | None = None) -> Poly:
    """``D_{w0 w w0}(-y_n, ..., -y_1)`` as a ``y``-polynomial."""
    n = max(w.n, n or 1)
    ww = conjugate_by_longest(w.extend(n), n)
    d = d_chains(Permutation.identity(n), ww, n).y_form
    y = Poly.gens("y", n)
    return compose(d, [-y[n - 1 - i] for i in range(n)])


def descent_root_product(w: Permutation) -> Poly:
    """Product of ``y_i - y_j`` over positive roots of the parabolic given by the descents."""
    n = w.n
    desc = set(w.descents())
    y = Poly.gens("y", n)
    p = Poly.one("y", n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if all(k in desc for k in range(i, j)):
                p = p * (y[i - 1] - y[j - 1])
    return p


def divisibility_check(w: Permutation) -> bool:
    d = d_chains(Permutation.identity(w.n), w).y_form
    ok, _ = divides_exactly(descent_root_product(w), d)
    return ok


def parabolic_longest(blocks: Sequence[int]) -> Permutation:
    """Longest element of the Young subgroup ``S_{b_1} x S_{b_2} x ...``."""
    return concatenate([Permutation.longest(b) for b in blocks])


def parabolic_constant(blocks: Sequence[int]) -> tuple[Fraction | None, Fraction]:
    """Quotient ``D_{w_I} / prod(y_i - y_j)`` and the constant forced by ``D(rho) = 1``."""
    w = parabolic_longest(blocks)
    n = w.n
    d = d_chains(Permutation.identity(n), w).y_form
    prod = descent_root_product(w)
    ok, q = divides_exactly(prod, d)
    const = q.constant_term() if ok and q.degree() <= 0 else None
    rho = list(range(n - 1, -1, -1))
    forced = 1 / evaluate(prod, rho)
    return const, forced


def derivative_in_last(p: Poly) -> Poly:
    return partial_derivative(p, p.arity)
