"""Finite groups as Cayley tables and the quandles built from them.

Conventions: elements are indices ``0..n-1``; ``mul[a][b]`` is the product
``a . b``.  When a group is built from permutations (as in
``realize_from_stabilizer``) the product ``a . b`` means "apply a, then b",
which is function composition in the opposite of the usual order.  That
choice makes value-at-a-point maps constant on right cosets of a point
stabilizer, which is exactly what the coset construction needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import GuardExceeded, InputError
from .quandles import (FiniteQuandle, Perm, Table, automorphism_group, compose,
                       identity_perm, invert, _check_shape)


@dataclass(frozen=True)
class GroupTable:
    """A finite group; construction verifies the group laws."""

    mul: Table
    identity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mul", _check_shape(self.mul))
        n = len(self.mul)
        e = self.identity
        if not (0 <= e < n):
            raise InputError(f"identity index {e} out of range")
        for a in range(n):
            if self.mul[e][a] != a or self.mul[a][e] != a:
                raise InputError(f"{e} is not a two-sided identity at {a}")
        for a in range(n):
            if e not in self.mul[a]:
                raise InputError(f"element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                ab = self.mul[a][b]
                for c in range(n):
                    if self.mul[ab][c] != self.mul[a][self.mul[b][c]]:
                        raise InputError(
                            f"associativity fails at ({a}, {b}, {c})")

    @classmethod
    def from_mul(cls, mul: Sequence[Sequence[int]],
                 identity: Optional[int] = None) -> "GroupTable":
        table = _check_shape(mul)
        if identity is None:
            n = len(table)
            ids = [e for e in range(n)
                   if all(table[e][a] == a and table[a][e] == a for a in range(n))]
            if not ids:
                raise InputError("no two-sided identity found")
            identity = ids[0]
        return cls(table, identity)

    @property
    def n(self) -> int:
        return len(self.mul)

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inv(self, a: int) -> int:
        for b in range(self.n):
            if self.mul[a][b] == self.identity:
                return b
        raise AssertionError("validated group lost an inverse")

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a]
                   for a in range(self.n) for b in range(self.n))

    def is_subgroup(self, members: Iterable[int]) -> bool:
        ms = set(members)
        if self.identity not in ms:
            return False
        return all(self.mul[a][self.inv(b)] in ms for a in ms for b in ms)


# ---------------------------------------------------------------------------
# builders and the small-group catalog
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise InputError("need n >= 1")
    return GroupTable(tuple(tuple((a + b) % n for b in range(n))
                            for a in range(n)), 0)


def direct_product_group(g: GroupTable, h: GroupTable) -> GroupTable:
    """Pairs ``(a, b)`` at index ``a * h.n + b``."""
    n1, n2 = g.n, h.n
    rows = []
    for x in range(n1 * n2):
        a1, a2 = divmod(x, n2)
        row = []
        for y in range(n1 * n2):
            b1, b2 = divmod(y, n2)
            row.append(g.mul[a1][b1] * n2 + h.mul[a2][b2])
        rows.append(tuple(row))
    return GroupTable(tuple(rows), 0)


def dihedral_group(m: int) -> GroupTable:
    """Symmetries of the regular ``m``-gon, order ``2m``.

    Element ``e*m + i`` stands for (reflection^e) . (rotation^i).
    """
    if m < 1:
        raise InputError("need m >= 1")
    n = 2 * m

    def prod(x: int, y: int) -> int:
        a, i = divmod(x, m)
        b, j = divmod(y, m)
        sign = -1 if b else 1
        return ((a + b) % 2) * m + (sign * i + j) % m

    return GroupTable(tuple(tuple(prod(x, y) for y in range(n))
                            for x in range(n)), 0)


def quaternion_group() -> GroupTable:
    """The eight units {1, -1, i, -i, j, -j, k, -k}; index = 2*axis + (sign<0)."""
    # structure constants for axes 1, i, j, k
    axis_mul = {(0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
                (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
                (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
                (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1)}

    def prod(x: int, y: int) -> int:
        ax, sx = x // 2, -1 if x % 2 else 1
        ay, sy = y // 2, -1 if y % 2 else 1
        az, sz = axis_mul[(ax, ay)]
        s = sx * sy * sz
        return az * 2 + (0 if s > 0 else 1)

    return GroupTable(tuple(tuple(prod(x, y) for y in range(8))
                            for x in range(8)), 0)


def symmetric_group_3() -> GroupTable:
    return dihedral_group(3)


def small_group_catalog(max_order: int = 8) -> list[tuple[str, GroupTable]]:
    """Every group of order <= max_order (max_order <= 8), up to isomorphism."""
    if max_order > 8:
        raise GuardExceeded("catalog covers orders up to 8")
    z = {k: cyclic_group(k) for k in range(1, 9)}
    named: list[tuple[str, GroupTable]] = []
    for k in range(1, max_order + 1):
        named.append((f"Z{k}", z[k]))
        if k == 4:
            named.append(("Z2xZ2", direct_product_group(z[2], z[2])))
        if k == 6:
            named.append(("S3", symmetric_group_3()))
        if k == 8:
            named.append(("Z4xZ2", direct_product_group(z[4], z[2])))
            named.append(("Z2xZ2xZ2",
                          direct_product_group(direct_product_group(z[2], z[2]), z[2])))
            named.append(("D4", dihedral_group(4)))
            named.append(("Q8", quaternion_group()))
    return named


# ---------------------------------------------------------------------------
# group homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupAutomorphism:
    """A verified automorphism of a ``GroupTable``."""

    group: GroupTable
    perm: Perm

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", tuple(self.perm))
        g, p = self.group, self.perm
        if sorted(p) != list(range(g.n)):
            raise InputError("automorphism map is not a bijection")
        for a in range(g.n):
            for b in range(g.n):
                if p[g.mul[a][b]] != g.mul[p[a]][p[b]]:
                    raise InputError(f"map is not multiplicative at ({a}, {b})")

    def __call__(self, a: int) -> int:
        return self.perm[a]

    def fixes_pointwise(self, members: Iterable[int]) -> bool:
        return all(self.perm[a] == a for a in members)


def group_isomorphisms(g: GroupTable, h: GroupTable) -> Iterator[Perm]:
    """All isomorphisms ``g -> h``, by exhaustive order-profile-pruned search."""
    if g.n != h.n:
        return
    n = g.n
    og = [g.order_of(a) for a in range(n)]
    oh = [h.order_of(a) for a in range(n)]
    if sorted(og) != sorted(oh):
        return
    candidates = [[y for y in range(n) if oh[y] == og[x]] for x in range(n)]
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
                    t = g.mul[a][b]
                    v = h.mul[image[a]][image[b]]
                    if t <= k:
                        if v != image[t]:
                            ok = False
                            break
                    elif preimage[v] != -1:
                        ok = False
                        break
            if ok:
                yield from extend(k + 1)
            image[k] = -1
            preimage[y] = -1

    yield from extend(0)


def group_automorphisms(g: GroupTable) -> list[GroupAutomorphism]:
    return [GroupAutomorphism(g, p) for p in group_isomorphisms(g, g)]


# ---------------------------------------------------------------------------
# quandles from groups
# ---------------------------------------------------------------------------

def conj_quandle(g: GroupTable) -> FiniteQuandle:
    """``x * y = y x y^-1``; trivial exactly when the group is abelian."""
    inv = [g.inv(a) for a in range(g.n)]
    rows = tuple(tuple(g.mul[g.mul[y][x]][inv[y]] for y in range(g.n))
                 for x in range(g.n))
    return FiniteQuandle(rows)


def core_quandle(g: GroupTable) -> FiniteQuandle:
    """``x * y = y x^-1 y``."""
    inv = [g.inv(a) for a in range(g.n)]
    rows = tuple(tuple(g.mul[g.mul[y][inv[x]]][y] for y in range(g.n))
                 for x in range(g.n))
    return FiniteQuandle(rows)


def twist_quandle(g: GroupTable, sigma: GroupAutomorphism) -> FiniteQuandle:
    """``x * y = sigma(x y^-1) y`` for a verified automorphism ``sigma``."""
    if sigma.group is not g and sigma.group != g:
        raise InputError("automorphism belongs to a different group")
    inv = [g.inv(a) for a in range(g.n)]
    rows = tuple(tuple(g.mul[sigma.perm[g.mul[x][inv[y]]]][y] for y in range(g.n))
                 for x in range(g.n))
    return FiniteQuandle(rows)


def right_cosets(g: GroupTable, members: Sequence[int]) -> list[tuple[int, ...]]:
    """Right cosets ``H.x`` of the subgroup with the given members.

    Each coset is a sorted tuple; the list is sorted by least element, so the
    coset of the identity comes first.
    """
    ms = sorted(set(members))
    if not g.is_subgroup(ms):
        raise InputError("member set is not a subgroup")
    seen: set[int] = set()
    cosets = []
    for x in range(g.n):
        if x in seen:
            continue
        coset = tuple(sorted(g.mul[h][x] for h in ms))
        seen.update(coset)
        cosets.append(coset)
    return sorted(cosets)


def coset_quandle(g: GroupTable, sigma: GroupAutomorphism,
                  members: Sequence[int]) -> FiniteQuandle:
    """Quandle on right cosets: ``Hf * Hg = H sigma(f g^-1) g``.

    Requires ``sigma`` to fix every subgroup member; the operation is then
    checked to be independent of the chosen representatives.
    """
    if not sigma.fixes_pointwise(set(members)):
        bad = [a for a in set(members) if sigma.perm[a] != a]
        raise InputError(f"automorphism moves subgroup members {bad}")
    cosets = right_cosets(g, members)
    coset_of = {}
    for i, c in enumerate(cosets):
        for x in c:
            coset_of[x] = i
    inv = [g.inv(a) for a in range(g.n)]

    rows = []
    for ca in cosets:
        row = []
        for cb in cosets:
            results = {coset_of[g.mul[sigma.perm[g.mul[f][inv[y]]]][y]]
                       for f in ca for y in cb}
            if len(results) != 1:
                raise InputError(
                    "coset operation depends on representatives; "
                    "preconditions do not hold")
            row.append(results.pop())
        rows.append(tuple(row))
    return FiniteQuandle(tuple(rows))


# ---------------------------------------------------------------------------
# realization of homogeneous quandles from their symmetries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerRealization:
    """A quandle rebuilt from its own symmetry group.

    ``group`` is the full automorphism group as a Cayley table over the
    sorted list of automorphism permutations (product = apply left factor
    first), ``twist`` conjugates by the translation at ``base``,
    ``stabilizer`` holds the indices fixing ``base``, ``quandle`` is the
    coset quandle, and ``phi`` maps coset index -> original element by
    evaluating any representative at ``base``.  Construction fails unless
    ``phi`` is a verified isomorphism.
    """

    base: int
    group: GroupTable
    twist: GroupAutomorphism
    stabilizer: tuple[int, ...]
    quandle: FiniteQuandle
    phi: tuple[int, ...]


def realize_from_stabilizer(q: FiniteQuandle, base: int = 0,
                            max_n: int = 10) -> StabilizerRealization:
    """Rebuild a homogeneous quandle as a coset quandle over its automorphisms.

    The twist is conjugation by the right translation at ``base``; it fixes
    the stabilizer of ``base`` pointwise because translations commute with
    the automorphisms fixing their point.  Raises ``InputError`` when the
    quandle is not homogeneous (the cosets then cannot cover the carrier).
    """
    if not (0 <= base < q.n):
        raise InputError(f"base {base} out of range")
    aut = automorphism_group(q, max_n=max_n)
    if not aut.is_transitive():
        raise InputError("quandle is not homogeneous; no stabilizer realization")
    perms = sorted(aut.elements)
    idx = {p: i for i, p in enumerate(perms)}

    # product = "a then b", i.e. compose(b_perm, a_perm)
    mul = tuple(tuple(idx[compose(pb, pa)] for pb in perms) for pa in perms)
    group = GroupTable(mul, idx[identity_perm(q.n)])

    rb = q.column(base)
    rb_inv = invert(rb)
    sigma_perm = tuple(idx[compose(rb, compose(perms[a], rb_inv))]
                       for a in range(len(perms)))
    twist = GroupAutomorphism(group, sigma_perm)

    stabilizer = tuple(a for a, p in enumerate(perms) if p[base] == base)
    cosets = right_cosets(group, stabilizer)
    cq = coset_quandle(group, twist, stabilizer)

    phi = tuple(perms[c[0]][base] for c in cosets)
    if sorted(phi) != list(range(q.n)):
        raise InputError("coset evaluation map failed to be a bijection")
    for a in range(cq.n):
        for b in range(cq.n):
            if phi[cq.table[a][b]] != q.table[phi[a]][phi[b]]:
                raise InputError(
                    f"coset evaluation map is not multiplicative at ({a}, {b})")
    return StabilizerRealization(base, group, twist, stabilizer, cq, phi)
