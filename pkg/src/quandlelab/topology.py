"""Finite topological spaces and continuity of quandle operations.

Open sets are stored as bitmasks.  A finite topology is equivalent to its
specialization preorder ``x <= y  iff  U_x is a subset of U_y`` (``U_x`` is
the least open set containing ``x``); the opens are exactly the down-closed
sets of that preorder, and a map between finite spaces is continuous exactly
when it is monotone.  Both descriptions are implemented; the preimage-based
continuity check is kept as an independent oracle for the monotone one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import GuardExceeded, InputError, ValidationReport
from .quandles import FiniteQuandle, Perm, Table, _column_search, invert


def _mask_of(members: Iterable[int], n: int) -> int:
    m = 0
    for x in members:
        if not isinstance(x, int) or isinstance(x, bool) or not (0 <= x < n):
            raise InputError(f"point {x!r} outside [0, {n})")
        m |= 1 << x
    return m


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def validate_topology(n: int, opens: Iterable[Iterable[int]]) -> ValidationReport:
    """Check the open-set axioms; first failure wins.

    Axiom names: ``contains_empty``, ``contains_all``, ``union_closed``,
    ``intersection_closed``.  Witnesses are the offending member tuples.
    Malformed input (points out of range, n < 1) raises ``InputError``.
    """
    if n < 1:
        raise InputError("need n >= 1")
    masks = sorted({_mask_of(o, n) for o in opens})
    full = (1 << n) - 1
    if 0 not in masks:
        return ValidationReport(False, "contains_empty", ())
    if full not in masks:
        return ValidationReport(False, "contains_all", (_mask_members(full),))
    mask_set = set(masks)
    for a in masks:
        for b in masks:
            if a | b not in mask_set:
                return ValidationReport(False, "union_closed",
                                        (_mask_members(a), _mask_members(b)))
            if a & b not in mask_set:
                return ValidationReport(False, "intersection_closed",
                                        (_mask_members(a), _mask_members(b)))
    return ValidationReport(True)


@dataclass(frozen=True)
class FiniteSpace:
    """An immutable finite topological space; construction verifies the axioms."""

    n: int
    opens: tuple[int, ...]  # sorted bitmasks, deduplicated

    def __post_init__(self) -> None:
        object.__setattr__(self, "opens", tuple(sorted(set(self.opens))))
        report = validate_topology(self.n, [_mask_members(m) for m in self.opens])
        if not report.ok:
            raise InputError(f"open family violates {report.axiom}")

    @classmethod
    def from_opens(cls, n: int, opens: Iterable[Iterable[int]]) -> "FiniteSpace":
        return cls(n, tuple(_mask_of(o, n) for o in opens))

    def open_sets(self) -> list[tuple[int, ...]]:
        """The opens as sorted member tuples (smallest set first)."""
        return [_mask_members(m) for m in
                sorted(self.opens, key=lambda m: (bin(m).count("1"), m))]

    def is_open(self, members: Iterable[int]) -> bool:
        return _mask_of(members, self.n) in set(self.opens)

    def minimal_open_mask(self, x: int) -> int:
        m = (1 << self.n) - 1
        for o in self.opens:
            if o & (1 << x):
                m &= o
        return m

    def minimal_open(self, x: int) -> tuple[int, ...]:
        return _mask_members(self.minimal_open_mask(x))

    def leq(self, x: int, y: int) -> bool:
        """Specialization preorder: the least open at x is inside the one at y."""
        ux, uy = self.minimal_open_mask(x), self.minimal_open_mask(y)
        return ux | uy == uy

    def leq_matrix(self) -> tuple[tuple[bool, ...], ...]:
        u = [self.minimal_open_mask(x) for x in range(self.n)]
        return tuple(tuple(u[x] | u[y] == u[y] for y in range(self.n))
                     for x in range(self.n))


def chain_topology(n: int) -> FiniteSpace:
    """Opens are the prefixes {}, {0}, {0,1}, ..., so 0 <= 1 <= ... <= n-1."""
    if n < 1:
        raise InputError("need n >= 1")
    return FiniteSpace(n, tuple((1 << k) - 1 for k in range(n + 1)))


def discrete_topology(n: int) -> FiniteSpace:
    if n < 1:
        raise InputError("need n >= 1")
    if n > 16:
        raise GuardExceeded("discrete topology beyond 16 points is not useful here")
    return FiniteSpace(n, tuple(range(1 << n)))


def indiscrete_topology(n: int) -> FiniteSpace:
    if n < 1:
        raise InputError("need n >= 1")
    return FiniteSpace(n, (0, (1 << n) - 1))


def space_from_preorder(n: int, leq: Sequence[Sequence[bool]]) -> FiniteSpace:
    """Space whose opens are the down-closed sets of a reflexive transitive ``leq``."""
    for x in range(n):
        if not leq[x][x]:
            raise InputError("relation is not reflexive")
    for x in range(n):
        for y in range(n):
            if leq[x][y]:
                for z in range(n):
                    if leq[y][z] and not leq[x][z]:
                        raise InputError("relation is not transitive")
    down = [_mask_of([y for y in range(n) if leq[y][x]], n) for x in range(n)]
    opens = set()
    for picks in itertools.product([False, True], repeat=n):
        m = 0
        for x, take in enumerate(picks):
            if take:
                m |= down[x]
        opens.add(m)
    return FiniteSpace(n, tuple(opens))


def enumerate_topologies(n: int, max_n: int = 4) -> list[FiniteSpace]:
    """Every topology on ``[0, n)``, one per labeled preorder, sorted by opens."""
    if n < 1:
        raise InputError("need n >= 1")
    if n > max_n:
        raise GuardExceeded(f"topology enumeration of size {n} exceeds "
                            f"max_n={max_n}")
    offdiag = [(x, y) for x in range(n) for y in range(n) if x != y]
    spaces = []
    for bits in itertools.product([False, True], repeat=len(offdiag)):
        leq = [[x == y for y in range(n)] for x in range(n)]
        for (x, y), b in zip(offdiag, bits):
            if b:
                leq[x][y] = True
        ok = True
        for x in range(n):
            if not ok:
                break
            for y in range(n):
                if leq[x][y]:
                    if any(leq[y][z] and not leq[x][z] for z in range(n)):
                        ok = False
                        break
        if ok:
            spaces.append(space_from_preorder(n, leq))
    return sorted(spaces, key=lambda s: s.opens)


def path_components(space: FiniteSpace) -> list[list[int]]:
    """Connected pieces of the comparability graph of the specialization preorder.

    For finite spaces these coincide with topological path components.
    """
    n = space.n
    leq = space.leq_matrix()
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in range(n):
                if not seen[y] and (leq[x][y] or leq[y][x]):
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# continuity of operations
# ---------------------------------------------------------------------------

def is_continuous_op(q: FiniteQuandle, space: FiniteSpace) -> ValidationReport:
    """Joint monotonicity of ``*`` for the product preorder.

    Witness on failure: ``((x, y), (x2, y2))`` with ``x <= x2``, ``y <= y2``
    but ``x*y !<= x2*y2``.
    """
    if q.n != space.n:
        raise InputError("carrier sizes differ")
    n = q.n
    leq = space.leq_matrix()
    for x in range(n):
        for x2 in range(n):
            if not leq[x][x2]:
                continue
            for y in range(n):
                for y2 in range(n):
                    if leq[y][y2] and not leq[q.table[x][y]][q.table[x2][y2]]:
                        return ValidationReport(False, "operation_continuity",
                                                ((x, y), (x2, y2)))
    return ValidationReport(True)


def continuity_by_preimages(q: FiniteQuandle, space: FiniteSpace) -> bool:
    """Continuity via open preimages in the product topology; test oracle.

    The preimage of each open must be a union of boxes ``U_x x U_y``; on a
    finite space it suffices that every member pair contains its minimal box.
    """
    if q.n != space.n:
        raise InputError("carrier sizes differ")
    n = q.n
    u = [space.minimal_open_mask(x) for x in range(n)]
    for o in space.opens:
        pre = {(x, y) for x in range(n) for y in range(n)
               if o & (1 << q.table[x][y])}
        for (x, y) in pre:
            for a in _mask_members(u[x]):
                for b in _mask_members(u[y]):
                    if (a, b) not in pre:
                        return False
    return True


def is_topological_quandle(q: FiniteQuandle, space: FiniteSpace) -> ValidationReport:
    """Operation continuity plus every translation a homeomorphism.

    Axiom names: ``operation_continuity`` (see ``is_continuous_op``) and
    ``translation_homeomorphism`` with witness ``(y, a, b)`` meaning ``R_y``
    does not preserve the order relation between a and b in both directions.
    """
    report = is_continuous_op(q, space)
    if not report.ok:
        return report
    leq = space.leq_matrix()
    n = q.n
    for y in range(n):
        col = q.column(y)
        for a in range(n):
            for b in range(n):
                if leq[a][b] != leq[col[a]][col[b]]:
                    return ValidationReport(False, "translation_homeomorphism",
                                            (y, a, b))
    return ValidationReport(True)


@dataclass(frozen=True)
class TopQuandle:
    """A quandle carried by a finite space, verified compatible on construction."""

    quandle: FiniteQuandle
    space: FiniteSpace

    def __post_init__(self) -> None:
        report = is_topological_quandle(self.quandle, self.space)
        if not report.ok:
            raise InputError(
                f"operation violates {report.axiom} at witness {report.witness}")


# ---------------------------------------------------------------------------
# homeomorphisms and isomorphisms
# ---------------------------------------------------------------------------

def homeomorphisms(s1: FiniteSpace, s2: FiniteSpace) -> list[Perm]:
    """All bijections carrying opens onto opens; exhaustive, may be empty."""
    if s1.n != s2.n:
        return []
    n = s1.n
    sizes1 = sorted(bin(m).count("1") for m in s1.opens)
    sizes2 = sorted(bin(m).count("1") for m in s2.opens)
    if len(s1.opens) != len(s2.opens) or sizes1 != sizes2:
        return []
    u1 = [bin(s1.minimal_open_mask(x)).count("1") for x in range(n)]
    u2 = [bin(s2.minimal_open_mask(x)).count("1") for x in range(n)]
    if sorted(u1) != sorted(u2):
        return []
    target = set(s2.opens)
    out = []
    for p in itertools.permutations(range(n)):
        if any(u1[x] != u2[p[x]] for x in range(n)):
            continue
        ok = True
        for m in s1.opens:
            im = 0
            for x in _mask_members(m):
                im |= 1 << p[x]
            if im not in target:
                ok = False
                break
        if ok:
            out.append(p)
    return out


def top_quandle_isomorphic(t1: TopQuandle, t2: TopQuandle) -> Optional[Perm]:
    """A bijection that is at once a homeomorphism and a quandle isomorphism.

    Scans the (exhaustively computed) homeomorphisms, so ``None`` is a proof
    of absence.
    """
    q1, q2 = t1.quandle, t2.quandle
    for p in homeomorphisms(t1.space, t2.space):
        if all(p[q1.table[x][y]] == q2.table[p[x]][p[y]]
               for x in range(q1.n) for y in range(q1.n)):
            return p
    return None


def _canonical_under(table: Table, perms: Sequence[Perm]) -> Table:
    n = len(table)
    best = None
    for p in perms:
        pinv = invert(p)
        cand = tuple(tuple(p[table[pinv[i]][pinv[j]]] for j in range(n))
                     for i in range(n))
        if best is None or cand < best:
            best = cand
    return best


def enumerate_top_quandles(space: FiniteSpace, max_n: int = 5) -> list[TopQuandle]:
    """All quandles compatible with ``space``, up to simultaneous isomorphism.

    Columns are restricted upfront to order automorphisms of the space fixing
    their element (the translation axiom), rows are pruned for monotonicity
    during the search, and representatives are deduplicated by the lex-least
    relabeling under the space's own homeomorphism group.
    """
    n = space.n
    if n > max_n:
        raise GuardExceeded(f"enumeration on {n} points exceeds max_n={max_n}")
    autos = homeomorphisms(space, space)
    candidates = [sorted(p for p in autos if p[x] == x) for x in range(n)]
    leq = space.leq_matrix()

    def rows_monotone(j: int, pj: Perm, k: int, pk: Perm) -> bool:
        if leq[j][k] and any(not leq[pj[i]][pk[i]] for i in range(n)):
            return False
        if leq[k][j] and any(not leq[pk[i]][pj[i]] for i in range(n)):
            return False
        return True

    found: set[Table] = set()
    for table in _column_search(n, candidates, pair_check=rows_monotone):
        if is_topological_quandle(FiniteQuandle(table), space).ok:
            found.add(_canonical_under(table, autos))
    return [TopQuandle(FiniteQuandle(t), space) for t in sorted(found)]
