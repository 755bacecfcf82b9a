"""Permutations in one-line notation, Bruhat order and related statistics.

Conventions
-----------
* One-line notation is 1-based: ``w = (w_1, ..., w_n)``.
* Products compose as functions: ``(u * v)(i) = u(v(i))``.  Hence ``u * s_i``
  swaps the entries in positions ``i, i+1`` and ``s_i * u`` swaps the values
  ``i, i+1``.
* A reduced word ``(i_1, ..., i_l)`` stands for ``s_{i_1} * ... * s_{i_l}``.
* Equality ignores trailing fixed points, so ``132 == 1324``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence


class Permutation:
    def __init__(self, word: Sequence[int]):
        word = tuple(int(v) for v in word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {word}")
        self.word = word

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(range(n, 0, -1))

    @classmethod
    def simple(cls, i: int, n: int | None = None) -> "Permutation":
        n = max(n or 0, i + 1)
        w = list(range(1, n + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        return cls(w)

    @classmethod
    def transposition(cls, i: int, j: int, n: int | None = None) -> "Permutation":
        n = max(n or 0, i, j)
        w = list(range(1, n + 1))
        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
        return cls(w)

    @classmethod
    def from_word(cls, word: Sequence[int], n: int | None = None) -> "Permutation":
        """The product ``s_{i_1} ... s_{i_l}`` inside ``S_n``."""
        n = max([n or 1] + [i + 1 for i in word])
        w = list(range(1, n + 1))
        for i in word:
            if i < 1:
                raise ValueError(f"invalid generator index {i}")
            w[i - 1], w[i] = w[i], w[i - 1]
        return cls(w)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if "," in text:
            return cls(int(t) for t in text.split(",") if t.strip())
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(int(ch) for ch in text)

    # -- basic data -------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self):
        return len(self.word)

    def __getitem__(self, i: int) -> int:
        """``w(i)`` with 1-based ``i``; fixed beyond the stored range."""
        if i > len(self.word):
            return i
        if i < 1:
            raise IndexError(i)
        return self.word[i - 1]

    @cached_property
    def trimmed(self) -> tuple[int, ...]:
        w = self.word
        m = len(w)
        while m and w[m - 1] == m:
            m -= 1
        return w[:m]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.trimmed == other.trimmed

    def __hash__(self):
        return hash(self.trimmed)

    def __lt__(self, other: "Permutation"):
        # deterministic sort order for reports; not Bruhat order
        m = max(self.n, other.n)
        return self.extend(m).word < other.extend(m).word

    def __str__(self):
        return format_perm(self)

    def __repr__(self):
        return f"Permutation({format_perm(self)!r})"

    def extend(self, n: int) -> "Permutation":
        if n <= self.n:
            if n < len(self.trimmed):
                raise ValueError(f"{self} does not fit in S_{n}")
            return Permutation(self.word[:n])
        return Permutation(self.word + tuple(range(self.n + 1, n + 1)))

    @cached_property
    def length(self) -> int:
        w = self.word
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.word, 1):
            inv[v - 1] = i
        return Permutation(inv)

    def __mul__(self, other: "Permutation") -> "Permutation":
        m = max(self.n, other.n)
        a, b = self.extend(m), other.extend(m)
        return Permutation(a.word[b.word[i] - 1] for i in range(m))

    def swap_positions(self, i: int, j: int) -> "Permutation":
        """``w * t_{ij}``."""
        m = max(self.n, i, j)
        w = list(self.extend(m).word)
        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
        return Permutation(w)

    def swap_values(self, a: int, b: int) -> "Permutation":
        """``t_{ab} * w``."""
        m = max(self.n, a, b)
        w = self.extend(m).word
        return Permutation(b if v == a else a if v == b else v for v in w)

    def descents(self) -> list[int]:
        w = self.word
        return [i for i in range(1, len(w)) if w[i - 1] > w[i]]

    def is_identity(self) -> bool:
        return not self.trimmed

    def sign(self) -> int:
        return -1 if self.length % 2 else 1


def format_perm(w: Permutation) -> str:
    if w.n <= 9:
        return "".join(str(v) for v in w.word)
    return ",".join(str(v) for v in w.word)


def as_perm(w) -> Permutation:
    if isinstance(w, Permutation):
        return w
    if isinstance(w, str):
        return Permutation.parse(w)
    return Permutation(w)


def all_perms(n: int) -> list[Permutation]:
    """All of ``S_n`` in lexicographic order of one-line notation."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def longest(n: int) -> Permutation:
    return Permutation.longest(n)


def long_cycle(r: int, n: int | None = None) -> Permutation:
    """``s_1 s_2 ... s_r``, i.e. ``(2, 3, ..., r+1, 1)``."""
    return Permutation.from_word(range(1, r + 1), n)


def conjugate_by_longest(w: Permutation, n: int | None = None) -> Permutation:
    """``w0 * w * w0`` in ``S_n``."""
    n = n or w.n
    w0 = Permutation.longest(n)
    return w0 * w.extend(n) * w0


# ---------------------------------------------------------------------------
# codes, shapes, flags


def code(w: Permutation) -> tuple[int, ...]:
    w = w.word
    return tuple(sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w)))


def inversion_set(w: Permutation, i: int) -> list[int]:
    """Positions ``j > i`` with ``w_j < w_i`` (1-based)."""
    wi = w[i]
    return [j for j in range(i + 1, w.n + 1) if w[j] < wi]


def shape(w: Permutation) -> tuple[int, ...]:
    return tuple(sorted((c for c in code(w) if c), reverse=True))


def flag(w: Permutation) -> tuple[int, ...]:
    vals = []
    for i in range(1, w.n + 1):
        inv = inversion_set(w, i)
        if inv:
            vals.append(min(inv) - 1)
    return tuple(sorted(vals))


def perm_from_code(c: Sequence[int]) -> Permutation:
    """Inverse of :func:`code` for any code with ``c_i <= n - i``."""
    n = len(c)
    avail = list(range(1, n + 1))
    out = []
    for i, ci in enumerate(c):
        if not 0 <= ci < len(avail):
            raise ValueError(f"invalid code {tuple(c)}")
        out.append(avail.pop(ci))
    return Permutation(out)


def is_partition_in_staircase(c: Sequence[int]) -> bool:
    n = len(c)
    return all(0 <= c[i] <= n - 1 - i for i in range(n)) and all(
        c[i] >= c[i + 1] for i in range(n - 1)
    )


def code_to_dominant(c: Sequence[int]) -> Permutation:
    """The unique 132-avoiding permutation whose code is the partition ``c``."""
    c = tuple(c)
    if not is_partition_in_staircase(c):
        raise ValueError(f"{c} is not a partition inside the staircase")
    used: set[int] = set()
    out = []
    for ci in c:
        j = ci + 1
        while j in used:
            j += 1
        used.add(j)
        out.append(j)
    return Permutation(out)


def is_dominant(w: Permutation) -> bool:
    c = code(w)
    return all(c[i] >= c[i + 1] for i in range(len(c) - 1))


# ---------------------------------------------------------------------------
# patterns


def avoids(w: Permutation, pattern) -> bool:
    pattern = as_perm(pattern).word
    k = len(pattern)
    w = w.word
    if k > len(w):
        return True
    order = sorted(range(k), key=lambda t: pattern[t])
    for idx in itertools.combinations(range(len(w)), k):
        vals = [w[i] for i in idx]
        if all(vals[order[t]] < vals[order[t + 1]] for t in range(k - 1)):
            return False
    return True


def avoiding(n: int, pattern) -> list[Permutation]:
    return [w for w in all_perms(n) if avoids(w, pattern)]


def is_strictly_dominant(w: Permutation) -> bool:
    return avoids(w, "132") and avoids(w, "231")


# ---------------------------------------------------------------------------
# reduced words


@lru_cache(maxsize=None)
def _reduced_word(word: tuple[int, ...]) -> tuple[int, ...]:
    w = list(word)
    out = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                out.append(i + 1)
                break
        else:
            break
    # we peeled letters off the right end: w = w' s_i, so reverse
    return tuple(reversed(out))


def reduced_word(w: Permutation) -> tuple[int, ...]:
    """A reduced word ``(i_1..i_l)`` with ``w = s_{i_1} ... s_{i_l}``."""
    return _reduced_word(w.word)


def is_reduced(word: Sequence[int]) -> bool:
    return Permutation.from_word(word).length == len(word)


@dataclass(frozen=True)
class ReducedWord:
    indices: tuple[int, ...]

    def __post_init__(self):
        if not is_reduced(self.indices):
            raise ValueError(f"{self.indices} is not a reduced word")

    def perm(self, n: int | None = None) -> Permutation:
        return Permutation.from_word(self.indices, n)


def all_reduced_words(w: Permutation) -> list[tuple[int, ...]]:
    if w.length == 0:
        return [()]
    out = []
    for i in w.descents():
        for rest in all_reduced_words(w.swap_positions(i, i + 1)):
            out.append(rest + (i,))
    return sorted(out)


# ---------------------------------------------------------------------------
# Bruhat order


@dataclass(frozen=True)
class Cover:
    target: Permutation
    i: int
    j: int


def bruhat_covers_up(u: Permutation, n: int | None = None) -> list[Cover]:
    """Covers ``u -> u * t_{ij}`` (positions ``i < j``) inside ``S_n``.

    The Chevalley weight of the cover is ``y_i - y_j``.
    """
    n = n or u.n
    w = u.extend(n).word
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] < w[j] and not any(w[i] < w[k] < w[j] for k in range(i + 1, j)):
                out.append(Cover(u.swap_positions(i + 1, j + 1).extend(n), i + 1, j + 1))
    return out


def bruhat_leq(u: Permutation, w: Permutation, method: str = "tableau") -> bool:
    """Bruhat comparison ``u <= w``.

    ``tableau`` uses the sorted-prefix criterion, ``subword`` closes the set of
    subword products of a reduced word of ``w`` and ``chains`` searches for a
    saturated chain of covers.
    """
    m = max(u.n, w.n)
    u, w = u.extend(m), w.extend(m)
    if method == "tableau":
        for i in range(1, m):
            a = sorted(u.word[:i])
            b = sorted(w.word[:i])
            if any(x > y for x, y in zip(a, b)):
                return False
        return True
    if method == "subword":
        return u in _subword_interval(w.word)
    if method == "chains":
        return _reachable(u.word, w.word)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def _subword_interval(word: tuple[int, ...]) -> frozenset:
    w = Permutation(word)
    elems = {Permutation.identity(len(word))}
    for s in reduced_word(w):
        elems |= {x.swap_positions(s, s + 1) for x in elems}
    return frozenset(elems)


@lru_cache(maxsize=None)
def _reachable(u: tuple[int, ...], w: tuple[int, ...]) -> bool:
    pu, pw = Permutation(u), Permutation(w)
    if pu.length > pw.length:
        return False
    if pu.length == pw.length:
        return pu == pw
    return any(_reachable(c.target.word, w) for c in bruhat_covers_up(pu, len(u)))


def saturated_chains(u: Permutation, w: Permutation) -> Iterator[list[Cover]]:
    """All saturated chains ``u = u_0 < u_1 < ... < u_l = w`` as cover lists."""
    m = max(u.n, w.n)
    u, w = u.extend(m), w.extend(m)
    if not bruhat_leq(u, w):
        return
    target_len = w.length

    def rec(x: Permutation, acc: list[Cover]):
        if x.length == target_len:
            if x == w:
                yield list(acc)
            return
        for c in bruhat_covers_up(x, m):
            if bruhat_leq(c.target, w):
                acc.append(c)
                yield from rec(c.target, acc)
                acc.pop()

    yield from rec(u, [])


def bruhat_interval(u: Permutation, w: Permutation) -> list[Permutation]:
    m = max(u.n, w.n)
    u, w = u.extend(m), w.extend(m)
    return [x for x in all_perms(m) if bruhat_leq(u, x) and bruhat_leq(x, w)]


# ---------------------------------------------------------------------------
# 312-avoiding permutations and flags


def is_flag(b: Sequence[int]) -> bool:
    n = len(b)
    return all(i + 1 <= b[i] <= n for i in range(n)) and all(
        b[i] <= b[i + 1] for i in range(n - 1)
    )


def all_flags(n: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        lo = max(i + 1, prefix[-1] if prefix else 1)
        for v in range(lo, n + 1):
            rec(prefix + [v])

    rec([])
    return out


def b_of(w: Permutation) -> tuple[int, ...]:
    """``b_i = n - c_i(w0 w)`` for 312-avoiding ``w``."""
    if not avoids(w, "312"):
        raise ValueError(f"{w} is not 312-avoiding")
    n = w.n
    c = code(Permutation(n + 1 - v for v in w.word))
    return tuple(n - ci for ci in c)


def flag_to_312(b: Sequence[int]) -> Permutation:
    b = tuple(b)
    if not is_flag(b):
        raise ValueError(f"{b} is not a valid flag")
    used: set[int] = set()
    out = []
    for bi in b:
        j = bi
        while j in used:
            j -= 1
        if j < 1:
            raise ValueError(f"{b} is not a valid flag")
        used.add(j)
        out.append(j)
    return Permutation(out)


def isolated_entry_path(b: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """Path from ``(1..n)`` to ``b`` raising isolated entries one at a time.

    Entries are raised right to left, starting at position ``n-1``.  Each
    step is ``(new_flag, k)`` where ``k`` is the entry's value before it was
    raised; ``flag_to_312(b) = s_{k_l} ... s_{k_1}``.
    """
    b = tuple(b)
    if not is_flag(b):
        raise ValueError(f"{b} is not a valid flag")
    n = len(b)
    cur = list(range(1, n + 1))
    path = []
    for pos in range(n - 2, -1, -1):
        while cur[pos] < b[pos]:
            k = cur[pos]
            cur[pos] += 1
            path.append((tuple(cur), k))
    return path


def path_word(b: Sequence[int]) -> tuple[int, ...]:
    """Reduced word for ``flag_to_312(b)`` read off the isolated-entry path."""
    return tuple(k for _, k in reversed(isolated_entry_path(b)))


# ---------------------------------------------------------------------------
# Cartan matrices


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r = len(self.entries)
        if any(len(row) != r for row in self.entries):
            raise ValueError("Cartan matrix must be square")
        if any(self.entries[i][i] != 2 for i in range(r)):
            raise ValueError("Cartan matrix must have 2 on the diagonal")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __call__(self, i: int, j: int) -> int:
        """``a_ij`` with 1-based indices."""
        return self.entries[i - 1][j - 1]

    def is_genuine(self) -> bool:
        """Off-diagonal entries are non-positive and vanish symmetrically."""
        r = self.rank
        for i in range(r):
            for j in range(r):
                if i != j:
                    a, b = self.entries[i][j], self.entries[j][i]
                    if a > 0 or (a == 0) != (b == 0):
                        return False
        return True

    @classmethod
    def type_a(cls, r: int) -> "CartanMatrix":
        return cls(
            tuple(
                tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r))
                for i in range(r)
            )
        )

    @classmethod
    def parse(cls, text: str) -> "CartanMatrix":
        """Rows separated by ``;``, entries by ``,``."""
        return cls(tuple(tuple(int(v) for v in row.split(",")) for row in text.split(";")))
