"""Counting colorings of braid closures.

A coloring of a braid on k strands assigns an element to each strand at the
top; each positive crossing (letter ``s_i``) rewrites the pair at positions
(i-1, i) by ``(a, b) -> (b, a * b)`` and each negative letter applies the
inverse rewrite ``(a, b) -> (b /op a, a)`` where ``/op`` inverts the right
translation.  Colorings of the closure are the assignments the whole word
maps to themselves, and their number is invariant under the moves that
preserve the closure link (conjugation and stabilization), which the tests
exercise.

Text form: ``B2: s1 s1 s1`` is the trefoil as a 2-strand word; inverse
letters are written ``-s2`` (or ``s2^-1``) and exponents expand
(``s1^3`` is s1 s1 s1).

For the linear one-parameter quandles on Z/n the fixed-coloring count is the
number of kernel vectors of an integer matrix mod n, computed exactly by
diagonalizing with unimodular row and column operations; this scales far
beyond the brute-force counter and must agree with it wherever both run.
"""

from __future__ import annotations

import itertools
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .errors import GuardExceeded, InputError
from .quandles import FiniteQuandle, Perm, invert

_HEAD_RE = re.compile(r"^[Bb](\d+)$")
_LETTER_RE = re.compile(r"^(-?)s(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group B_strands; letters are nonzero ints,
    ``+i`` for s_i and ``-i`` for its inverse, with 1 <= i < strands."""

    strands: int
    word: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise InputError("a braid needs at least one strand")
        object.__setattr__(self, "word", tuple(self.word))
        for g in self.word:
            if not isinstance(g, int) or g == 0 or abs(g) >= self.strands:
                raise InputError(
                    f"letter {g!r} out of range for {self.strands} strands")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in reversed(self.word)))

    def underlying_permutation(self) -> Perm:
        """Strand permutation of the word (crossing signs do not matter)."""
        q = list(range(self.strands))
        for g in self.word:
            p = abs(g) - 1
            q[p], q[p + 1] = q[p + 1], q[p]
        return tuple(q)


def parse_braid(text: str) -> BraidWord:
    head, sep, body = text.partition(":")
    if not sep:
        raise InputError(f"braid text needs a 'B<k>:' prefix, got {text!r}")
    m = _HEAD_RE.match(head.strip())
    if not m:
        raise InputError(f"bad strand count in {head.strip()!r}")
    strands = int(m.group(1))
    word: List[int] = []
    for token in body.split():
        lm = _LETTER_RE.match(token)
        if not lm:
            raise InputError(f"bad braid letter {token!r}")
        idx = int(lm.group(2))
        exp = int(lm.group(3)) if lm.group(3) else 1
        if exp == 0:
            raise InputError(f"zero exponent in {token!r}")
        if lm.group(1):
            exp = -exp
        sign = 1 if exp > 0 else -1
        word.extend([sign * idx] * abs(exp))
    return BraidWord(strands, tuple(word))


def braid_text(b: BraidWord) -> str:
    letters = " ".join(f"s{g}" if g > 0 else f"-s{-g}" for g in b.word)
    return f"B{b.strands}:" + (" " + letters if letters else "")


def closure_components(b: BraidWord) -> int:
    """Number of link components of the braid closure (permutation cycles)."""
    perm = b.underlying_permutation()
    seen = [False] * b.strands
    count = 0
    for start in range(b.strands):
        if not seen[start]:
            count += 1
            i = start
            while not seen[i]:
                seen[i] = True
                i = perm[i]
    return count


# ---------------------------------------------------------------------------
# coloring action and brute-force count
# ---------------------------------------------------------------------------

def braid_action(q: FiniteQuandle, b: BraidWord,
                 colors: Iterable[int]) -> Tuple[int, ...]:
    """Apply the braid word to a tuple of top colors, left to right."""
    state = list(colors)
    if len(state) != b.strands:
        raise InputError(f"expected {b.strands} colors, got {len(state)}")
    n = q.n
    for c in state:
        if not 0 <= c < n:
            raise InputError(f"color {c!r} out of range")
    table = q.table
    inverse = [invert(q.column(y)) for y in range(n)] if b.word else []
    for g in b.word:
        p = abs(g) - 1
        a, c = state[p], state[p + 1]
        if g > 0:
            state[p], state[p + 1] = c, table[a][c]
        else:
            state[p], state[p + 1] = inverse[a][c], a
    return tuple(state)


def _count_block(args) -> int:
    table, inv, letters, strands, n, firsts = args
    count = 0
    for first in firsts:
        for rest in itertools.product(range(n), repeat=strands - 1):
            state = [first, *rest]
            for p, positive in letters:
                a, c = state[p], state[p + 1]
                if positive:
                    state[p], state[p + 1] = c, table[a][c]
                else:
                    state[p], state[p + 1] = inv[a][c], a
            if state[0] == first and tuple(state[1:]) == rest:
                count += 1
    return count


def count_colorings(q: FiniteQuandle, b: BraidWord,
                    guard: int = 10_000_000, threads: int = 1) -> int:
    """Number of colorings fixed by the word (colorings of the closure).

    Enumerates all n^strands assignments; refuses beyond ``guard``.
    """
    total = q.n ** b.strands
    if total > guard:
        raise GuardExceeded(
            f"{total} candidate colorings exceed the guard {guard}")
    letters = tuple((abs(g) - 1, g > 0) for g in b.word)
    inv = tuple(invert(q.column(y)) for y in range(q.n))
    if threads > 1 and q.n >= threads and total > 100_000:
        blocks = [range(i, q.n, threads) for i in range(threads)]
        jobs = [(q.table, inv, letters, b.strands, q.n, tuple(block))
                for block in blocks]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(_count_block, jobs))
    return _count_block((q.table, inv, letters, b.strands, q.n,
                         tuple(range(q.n))))


# ---------------------------------------------------------------------------
# linear quandles: exact count by integer diagonalization
# ---------------------------------------------------------------------------

def _letter_rows(m: List[List[int]], g: int, t: int, n: int) -> None:
    """Multiply the accumulated matrix by one letter matrix, in place.

    The letter acts on color vectors, so only the two affected rows of the
    composite change.
    """
    p = abs(g) - 1
    row_a, row_b = m[p], m[p + 1]
    if g > 0:
        new_a = row_b[:]
        new_b = [(t * ra + (1 - t) * rb) % n for ra, rb in zip(row_a, row_b)]
    else:
        t_inv = pow(t, -1, n)
        new_a = [(t_inv * rb - t_inv * (1 - t) * ra) % n
                 for ra, rb in zip(row_a, row_b)]
        new_b = row_a[:]
    m[p], m[p + 1] = new_a, new_b


def _integer_diagonal(a: List[List[int]]) -> List[int]:
    """Diagonal of an equivalent matrix under integer row/column operations.

    Plain elimination with pivot refinement; no divisibility normalization,
    which the kernel-size formula below does not need.
    """
    a = [row[:] for row in a]
    size = len(a)
    diag: List[int] = []
    for step in range(size):
        pivot = None
        for i in range(step, size):
            for j in range(step, size):
                v = a[i][j]
                if v != 0 and (pivot is None or
                               abs(v) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            diag.extend([0] * (size - step))
            return diag
        while True:
            pi, pj = pivot
            a[step], a[pi] = a[pi], a[step]
            for row in a:
                row[step], row[pj] = row[pj], row[step]
            if a[step][step] < 0:
                a[step] = [-v for v in a[step]]
            p = a[step][step]
            for i in range(step + 1, size):
                if a[i][step]:
                    q = a[i][step] // p
                    a[i] = [v - q * w for v, w in zip(a[i], a[step])]
            for j in range(step + 1, size):
                if a[step][j]:
                    q = a[step][j] // p
                    for i in range(step, size):
                        a[i][j] -= q * a[i][step]
            residues = [(abs(a[i][step]), i, step)
                        for i in range(step + 1, size) if a[i][step]]
            residues += [(abs(a[step][j]), step, j)
                         for j in range(step + 1, size) if a[step][j]]
            if not residues:
                break
            _, ri, rj = min(residues)
            pivot = (step, rj) if ri == step else (ri, step)
        diag.append(a[step][step])
    return diag


def alexander_coloring_count(n: int, t: int, b: BraidWord) -> int:
    """Colorings of the closure by the linear operation ``t*x + (1-t)*y``
    on Z/n, counted exactly via the kernel of (M - I) mod n.

    Requires gcd(t, n) = 1 so the translations are invertible.  Agrees with
    ``count_colorings`` on the corresponding finite quandle but runs in
    polynomial time in the strand count.
    """
    if n < 1:
        raise InputError("modulus must be positive")
    t %= n
    if math.gcd(t, n) != 1:
        raise InputError(f"parameter {t} is not a unit mod {n}")
    if n == 1:
        return 1
    k = b.strands
    m = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    for g in b.word:
        _letter_rows(m, g, t, n)
    a = [[(m[i][j] - (1 if i == j else 0)) % n for j in range(k)]
         for i in range(k)]
    count = 1
    for d in _integer_diagonal(a):
        count *= math.gcd(d, n)
    return count


def conjugate(b: BraidWord, g: int) -> BraidWord:
    """``g^-1 w g``, same closure link."""
    if g == 0 or abs(g) >= b.strands:
        raise InputError(f"letter {g!r} out of range for {b.strands} strands")
    return BraidWord(b.strands, (-g, *b.word, g))


def stabilize(b: BraidWord, positive: bool = True) -> BraidWord:
    """Add a strand and one crossing with it, same closure link."""
    g = b.strands if positive else -b.strands
    return BraidWord(b.strands + 1, (*b.word, g))
