"""Finite quandles as explicit operation tables.

A table ``T`` encodes the binary operation ``x * y = T[x][y]``.  The column
``R_y = [T[0][y], T[1][y], ...]`` is the right translation by ``y``; the three
quandle axioms in terms of columns are

* idempotency:            ``T[x][x] == x``
* right invertibility:    every column is a permutation
* self-distributivity:    ``R_k o R_j == R_{R_k(j)} o R_k`` for all ``j, k``

All functions treat tables as immutable; ``FiniteQuandle`` instances are
frozen and safe to share across threads.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import GuardExceeded, InputError, ValidationReport

Table = tuple[tuple[int, ...], ...]
Perm = tuple[int, ...]


# ---------------------------------------------------------------------------
# permutation helpers (composition acts left-to-right on indices: (p o q)(i)
# is written compose(p, q)[i] == p[q[i]], i.e. q applies first)
# ---------------------------------------------------------------------------

def compose(p: Perm, q: Perm) -> Perm:
    """Return the permutation mapping ``i -> p[q[i]]`` (``q`` applied first)."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Sorted cycle lengths of ``p``; invariant under conjugation."""
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _check_shape(rows: Sequence[Sequence[int]]) -> Table:
    n = len(rows)
    if n == 0:
        raise InputError("operation table must be non-empty")
    table = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InputError(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not (0 <= v < n):
                raise InputError(f"entry {v!r} in row {i} is outside [0, {n})")
        table.append(tuple(row))
    return tuple(table)


def validate_quandle(rows: Sequence[Sequence[int]],
                     require_idempotency: bool = True) -> ValidationReport:
    """Check the quandle axioms on an operation table.

    Malformed input (non-square, out-of-range entries) raises ``InputError``;
    an axiom violation is a normal result carried in the report.  Axioms are
    checked in a fixed order (idempotency, right invertibility,
    self-distributivity) and the first violation wins.  With
    ``require_idempotency=False`` only the rack axioms are checked.
    """
    table = _check_shape(rows)
    n = len(table)

    if require_idempotency:
        for i in range(n):
            if table[i][i] != i:
                return ValidationReport(False, "idempotency", (i,))

    for j in range(n):
        seen: dict[int, int] = {}
        for i in range(n):
            v = table[i][j]
            if v in seen:
                return ValidationReport(False, "right_invertibility", (seen[v], i, j))
            seen[v] = i

    for i in range(n):
        for j in range(n):
            a = table[i][j]
            for k in range(n):
                if table[a][k] != table[table[i][k]][table[j][k]]:
                    return ValidationReport(False, "self_distributivity", (i, j, k))

    return ValidationReport(True)


# ---------------------------------------------------------------------------
# the type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteQuandle:
    """An immutable finite quandle; construction verifies the axioms."""

    table: Table

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", _check_shape(self.table))
        report = validate_quandle(self.table)
        if not report.ok:
            raise InputError(
                f"table violates {report.axiom} at witness {report.witness}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "FiniteQuandle":
        return cls(_check_shape(rows))

    @property
    def n(self) -> int:
        return len(self.table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def column(self, y: int) -> Perm:
        """The right translation ``R_y`` as a permutation."""
        return tuple(self.table[i][y] for i in range(self.n))

    def columns(self) -> list[Perm]:
        return [self.column(y) for y in range(self.n)]

    def row(self, x: int) -> tuple[int, ...]:
        return self.table[x]

    def inverse_op(self, x: int, y: int) -> int:
        """The unique ``z`` with ``z * y == x``."""
        return invert(self.column(y))[x]

    def dual(self) -> "FiniteQuandle":
        """The quandle whose columns are the inverse permutations.

        Its operation is ``x *' y = z`` where ``z * y = x`` in the original.
        """
        cols = [invert(self.column(y)) for y in range(self.n)]
        rows = tuple(tuple(cols[j][i] for j in range(self.n)) for i in range(self.n))
        return FiniteQuandle(rows)

    def relabel(self, p: Perm) -> "FiniteQuandle":
        """Transport the structure along ``p``: new table of ``p(x) * p(y) = p(x*y)``."""
        pinv = invert(p)
        n = self.n
        rows = tuple(tuple(p[self.table[pinv[i]][pinv[j]]] for j in range(n))
                     for i in range(n))
        return FiniteQuandle(rows)


def trivial_quandle(n: int) -> FiniteQuandle:
    """``x * y = x`` for all x, y."""
    if n < 1:
        raise InputError("need n >= 1")
    return FiniteQuandle(tuple(tuple(i for _ in range(n)) for i in range(n)))


def dihedral_quandle(n: int) -> FiniteQuandle:
    """``x * y = 2y - x (mod n)``."""
    if n < 1:
        raise InputError("need n >= 1")
    return FiniteQuandle(tuple(tuple((2 * j - i) % n for j in range(n))
                               for i in range(n)))


def alexander_mod(n: int, t: int) -> FiniteQuandle:
    """Affine quandle on Z_n: ``x * y = t*x + (1-t)*y (mod n)``.

    ``t`` must be a unit of Z_n, otherwise columns fail to be bijections.
    """
    import math

    if n < 1:
        raise InputError("need n >= 1")
    t = t % n
    if math.gcd(t, n) != 1:
        raise InputError(f"t={t} is not a unit modulo {n}")
    return FiniteQuandle(tuple(tuple((t * i + (1 - t) * j) % n for j in range(n))
                               for i in range(n)))


def product_quandle(q1: FiniteQuandle, q2: FiniteQuandle) -> FiniteQuandle:
    """Componentwise operation on pairs, with pair ``(i, j)`` at index ``i*n2 + j``."""
    n1, n2 = q1.n, q2.n
    n = n1 * n2
    rows = []
    for x in range(n):
        x1, x2 = divmod(x, n2)
        row = []
        for y in range(n):
            y1, y2 = divmod(y, n2)
            row.append(q1.table[x1][y1] * n2 + q2.table[x2][y2])
        rows.append(tuple(row))
    return FiniteQuandle(tuple(rows))


# ---------------------------------------------------------------------------
# isomorphisms
# ---------------------------------------------------------------------------

def _element_profiles(q: FiniteQuandle) -> list[tuple]:
    """Per-element fingerprints preserved by any isomorphism."""
    profiles = []
    for x in range(q.n):
        col = cycle_type(q.column(x))
        row_counts = tuple(sorted(q.row(x).count(v) for v in set(q.row(x))))
        profiles.append((col, row_counts))
    return profiles


def isomorphisms(q1: FiniteQuandle, q2: FiniteQuandle) -> Iterator[Perm]:
    """Yield every bijection ``p`` with ``p(x*y) == p(x) *' p(y)``.

    Exhaustive backtracking over images in index order, pruned by
    conjugation-invariant element fingerprints, so an empty iterator is a
    proof of non-isomorphism.
    """
    if q1.n != q2.n:
        return
    n = q1.n
    t1, t2 = q1.table, q2.table
    prof1, prof2 = _element_profiles(q1), _element_profiles(q2)
    if sorted(prof1) != sorted(prof2):
        return
    candidates = [[y for y in range(n) if prof2[y] == prof1[x]] for x in range(n)]

    image = [-1] * n
    preimage = [-1] * n

    def extend(k: int) -> Iterator[Perm]:
        if k == n:
            yield tuple(image)
            return
        for y in candidates[k]:
            if preimage[y] != -1:
                continue
            image[k] = y
            preimage[y] = k
            ok = True
            for a in range(k + 1):
                if not ok:
                    break
                for b in range(k + 1):
                    t = t1[a][b]
                    v = t2[image[a]][image[b]]
                    if t <= k:
                        if v != image[t]:
                            ok = False
                            break
                    elif preimage[v] != -1:
                        # v is already taken by an element other than t
                        ok = False
                        break
            if ok:
                yield from extend(k + 1)
            image[k] = -1
            preimage[y] = -1

    yield from extend(0)


def is_isomorphic(q1: FiniteQuandle, q2: FiniteQuandle) -> Optional[Perm]:
    """First isomorphism in search order, or None (a proof of absence)."""
    for p in isomorphisms(q1, q2):
        return p
    return None


# ---------------------------------------------------------------------------
# permutation groups over the quandle carrier
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group given by its full element set."""

    degree: int
    elements: frozenset[Perm]

    @classmethod
    def from_generators(cls, degree: int, generators: Iterable[Perm]) -> "PermGroup":
        gens = [tuple(g) for g in generators]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise InputError(f"{g} is not a permutation of degree {degree}")
        ident = identity_perm(degree)
        elements = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    w = compose(g, h)
                    if w not in elements:
                        elements.add(w)
                        nxt.append(w)
            frontier = nxt
        return cls(degree, frozenset(elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self.elements

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            orbit = {g[start] for g in self.elements}
            for v in orbit:
                seen[v] = True
            out.append(sorted(orbit))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1


def automorphism_group(q: FiniteQuandle, max_n: int = 10) -> PermGroup:
    """All structure-preserving bijections of ``q`` onto itself.

    The search is exhaustive; ``max_n`` guards the backtracking cost and can
    be raised explicitly by the caller.
    """
    if q.n > max_n:
        raise GuardExceeded(
            f"automorphism search on {q.n} elements exceeds max_n={max_n}")
    return PermGroup(q.n, frozenset(isomorphisms(q, q)))


def inner_group(q: FiniteQuandle) -> PermGroup:
    """Subgroup of the symmetric group generated by the columns ``R_y``.

    For finite carriers this is the plain generated subgroup; no closure
    beyond composition is involved.
    """
    return PermGroup.from_generators(q.n, q.columns())


def orbits(q: FiniteQuandle) -> list[list[int]]:
    """Orbits of the inner group action; one orbit means algebraically connected."""
    return inner_group(q).orbits()


def is_connected(q: FiniteQuandle) -> bool:
    return len(orbits(q)) == 1


def is_homogeneous(q: FiniteQuandle, max_n: int = 10) -> bool:
    """True when the automorphism group acts transitively on the carrier."""
    return automorphism_group(q, max_n=max_n).is_transitive()


# ---------------------------------------------------------------------------
# canonical forms and enumeration
# ---------------------------------------------------------------------------

def canonical_form(rows: Sequence[Sequence[int]]) -> Table:
    """Lexicographically least relabeling of the table, row-major.

    The minimum runs over all permutations of the carrier; a first-row bound
    abandons most relabelings early.  Deterministic, so equal canonical forms
    mean isomorphic tables and distinct forms mean non-isomorphic ones.
    """
    table = _check_shape(rows)
    n = len(table)
    best: Optional[Table] = None
    for p in itertools.permutations(range(n)):
        pinv = invert(p)
        first = tuple(p[table[pinv[0]][pinv[j]]] for j in range(n))
        if best is not None and first > best[0]:
            continue
        cand = (first,) + tuple(
            tuple(p[table[pinv[i]][pinv[j]]] for j in range(n))
            for i in range(1, n))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def _column_search(n: int,
                   candidates: Sequence[Sequence[Perm]],
                   pair_check: Optional[Callable[[int, Perm, int, Perm], bool]] = None,
                   preset: Optional[dict[int, Perm]] = None) -> Iterator[Table]:
    """Backtracking over column families closed under conjugation.

    ``candidates[x]`` lists the permutations allowed as column ``x`` (each
    must fix ``x``).  Placing columns j and k forces column ``R_k(j)`` to be
    ``R_k o R_j o R_k^-1``; forcing both prunes and propagates.  An optional
    ``pair_check`` veto runs on every ordered pair of placed columns (used by
    the topology layer for monotonicity of rows).  Yields complete operation
    tables ``T[i][j] = col_j[i]``.
    """
    candidate_sets = [frozenset(c) for c in candidates]

    def consistent(cols: dict[int, Perm]) -> Optional[dict[int, Perm]]:
        cols = dict(cols)
        changed = True
        while changed:
            changed = False
            placed = list(cols.items())
            for k, pk in placed:
                pk_inv = invert(pk)
                for j, pj in placed:
                    target = pk[j]
                    forced = compose(pk, compose(pj, pk_inv))
                    if target in cols:
                        if cols[target] != forced:
                            return None
                    else:
                        if forced not in candidate_sets[target]:
                            return None
                        cols[target] = forced
                        changed = True
            if pair_check is not None:
                for k, pk in cols.items():
                    for j, pj in cols.items():
                        if j < k and not pair_check(j, pj, k, pk):
                            return None
        return cols

    def extend(cols: dict[int, Perm]) -> Iterator[Table]:
        if len(cols) == n:
            yield tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
            return
        # most constrained open column, smallest index on ties
        open_cols = [x for x in range(n) if x not in cols]
        x = min(open_cols, key=lambda c: (len(candidates[c]), c))
        for p in candidates[x]:
            nxt = dict(cols)
            nxt[x] = p
            closed = consistent(nxt)
            if closed is not None:
                yield from extend(closed)

    start: dict[int, Perm] = dict(preset or {})
    closed = consistent(start)
    if closed is not None:
        yield from extend(closed)


def _perms_fixing(n: int, x: int) -> list[Perm]:
    out = []
    for rest in itertools.permutations([v for v in range(n) if v != x]):
        p = list(rest[:x]) + [x] + list(rest[x:])
        out.append(tuple(p))
    return sorted(out)


def all_quandle_tables(n: int) -> Iterator[Table]:
    """Every labeled quandle table on ``[0, n)``, each exactly once."""
    candidates = [_perms_fixing(n, x) for x in range(n)]
    yield from _column_search(n, candidates)


def _enumerate_partition(args: tuple[int, Perm]) -> set[Table]:
    n, first = args
    candidates = [_perms_fixing(n, x) for x in range(n)]
    found = set()
    for table in _column_search(n, candidates, preset={0: first}):
        found.add(canonical_form(table))
    return found


def enumerate_quandles(n: int, max_n: int = 6, threads: int = 1) -> list[FiniteQuandle]:
    """All quandles on ``n`` elements up to isomorphism, canonical tables, sorted.

    Exhaustive and isomorph-free: every labeled table is generated by column
    backtracking with conjugation forcing, then reduced to its canonical
    (lex-least) form.  ``max_n`` guards the search; raise it knowingly.
    ``threads > 1`` partitions the search on the choice of column 0.
    """
    if n < 1:
        raise InputError("need n >= 1")
    if n > max_n:
        raise GuardExceeded(f"enumeration of size {n} exceeds max_n={max_n}; "
                            f"pass a larger max_n to override")
    first_cols = _perms_fixing(n, 0)
    found: set[Table] = set()
    if threads > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_enumerate_partition,
                                 [(n, f) for f in first_cols]):
                found |= part
    else:
        for f in first_cols:
            found |= _enumerate_partition((n, f))
    return [FiniteQuandle(t) for t in sorted(found)]
