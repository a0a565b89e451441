"""Core table machinery: axioms, isomorphism, enumeration.

The small-size facts are cross-checked against independent brute force:
all 3^9 candidate tables for n = 3, and plain all-permutations search for
isomorphism.  Larger sizes are covered by invariants rather than constants,
except for the published class counts, which are pinned.
"""

import itertools
import random

import pytest

from quandlelab.errors import GuardExceeded, InputError
from quandlelab.quandles import (FiniteQuandle, alexander_mod,
                                 all_quandle_tables, automorphism_group,
                                 canonical_form, compose, cycle_type,
                                 dihedral_quandle, enumerate_quandles,
                                 identity_perm, inner_group, invert,
                                 is_connected, is_homogeneous, is_isomorphic,
                                 isomorphisms, orbits, product_quandle,
                                 trivial_quandle, validate_quandle)

EXAMPLE_3 = ((0, 0, 0), (2, 1, 1), (1, 2, 2))


def brute_validate(rows):
    """Axioms straight from the definition, no shortcuts shared with the
    library (the library checks distributivity via column conjugation)."""
    n = len(rows)
    for x in range(n):
        if rows[x][x] != x:
            return False
    for y in range(n):
        if sorted(rows[x][y] for x in range(n)) != list(range(n)):
            return False
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if rows[rows[x][y]][z] != rows[rows[x][z]][rows[y][z]]:
                    return False
    return True


def brute_isomorphic(t1, t2):
    n = len(t1)
    if len(t2) != n:
        return None
    for p in itertools.permutations(range(n)):
        if all(p[t1[x][y]] == t2[p[x]][p[y]] for x in range(n)
               for y in range(n)):
            return p
    return None


# ---------------------------------------------------------------------------
# permutation helpers
# ---------------------------------------------------------------------------

def test_compose_applies_right_argument_first():
    p = (1, 2, 0)
    q = (0, 2, 1)
    assert compose(p, q) == tuple(p[q[i]] for i in range(3))


def test_invert_round_trip():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randrange(1, 9)
        p = list(range(n))
        rng.shuffle(p)
        p = tuple(p)
        assert compose(p, invert(p)) == identity_perm(n)
        assert compose(invert(p), p) == identity_perm(n)


def test_cycle_type_is_relabeling_invariant():
    rng = random.Random(12)
    for _ in range(30):
        n = rng.randrange(2, 8)
        p = list(range(n))
        rng.shuffle(p)
        g = list(range(n))
        rng.shuffle(g)
        conj = compose(tuple(g), compose(tuple(p), invert(tuple(g))))
        assert cycle_type(tuple(p)) == cycle_type(conj)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_validate_accepts_builders():
    for n in range(1, 9):
        assert validate_quandle(trivial_quandle(n).table).ok
        assert validate_quandle(dihedral_quandle(n).table).ok


def test_validate_reports_idempotency_witness():
    report = validate_quandle([[1, 0], [1, 0]])
    assert not report.ok
    assert report.axiom == "idempotency"
    assert report.witness == (0,)


def test_validate_reports_invertibility_witness():
    # column 0 repeats the value 0
    report = validate_quandle([[0, 0, 0], [0, 1, 1], [1, 2, 2]])
    assert not report.ok
    assert report.axiom == "right_invertibility"


def test_validate_reports_distributivity_witness():
    rows = [[0, 2, 1, 0], [3, 1, 3, 1], [2, 0, 2, 2], [1, 3, 0, 3]]
    report = validate_quandle(rows)
    assert not report.ok
    assert report.axiom == "self_distributivity"
    x, y, z = report.witness
    assert rows[rows[x][y]][z] != rows[rows[x][z]][rows[y][z]]


def test_validate_agrees_with_brute_force_on_random_tables():
    rng = random.Random(977)
    for _ in range(300):
        n = rng.randrange(2, 5)
        rows = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
        assert validate_quandle(rows).ok == brute_validate(rows)


def test_malformed_tables_raise():
    with pytest.raises(InputError):
        validate_quandle([[0, 1], [0]])
    with pytest.raises(InputError):
        validate_quandle([[0, 5], [1, 1]])
    with pytest.raises(InputError):
        FiniteQuandle.from_rows([[0, 0], [0, 1]])  # column 0 not a bijection


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def test_dihedral_formula():
    q = dihedral_quandle(5)
    for x in range(5):
        for y in range(5):
            assert q.op(x, y) == (2 * y - x) % 5


def test_alexander_requires_unit():
    with pytest.raises(InputError):
        alexander_mod(6, 2)
    assert alexander_mod(3, 2).table == dihedral_quandle(3).table


def test_alexander_dual_inverts_parameter():
    for n, t in [(5, 2), (7, 3), (9, 2), (12, 5)]:
        t_inv = pow(t, -1, n)
        assert alexander_mod(n, t).dual().table == alexander_mod(n, t_inv).table


def test_product_projects_to_factors():
    q = product_quandle(dihedral_quandle(3), trivial_quandle(2))
    assert q.n == 6
    assert validate_quandle(q.table).ok


def test_dual_is_involution():
    for q in enumerate_quandles(4):
        assert q.dual().dual().table == q.table
    q = dihedral_quandle(7)
    assert q.dual().table == q.table  # columns are involutions


def test_relabel_preserves_structure():
    rng = random.Random(31)
    q = dihedral_quandle(5)
    for _ in range(20):
        p = list(range(5))
        rng.shuffle(p)
        r = q.relabel(tuple(p))
        assert validate_quandle(r.table).ok
        assert is_isomorphic(q, r) is not None


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

def test_isomorphism_search_matches_brute_force():
    rng = random.Random(202)
    pool = enumerate_quandles(4)
    for _ in range(60):
        a = rng.choice(pool)
        b = rng.choice(pool)
        p = list(range(4))
        rng.shuffle(p)
        b = b.relabel(tuple(p))
        got = is_isomorphic(a, b)
        want = brute_isomorphic(a.table, b.table)
        assert (got is None) == (want is None)
        if got is not None:
            assert all(got[a.table[x][y]] == b.table[got[x]][got[y]]
                       for x in range(4) for y in range(4))


def test_isomorphisms_of_dihedral3_form_s3():
    autos = list(isomorphisms(dihedral_quandle(3), dihedral_quandle(3)))
    assert len(autos) == 6


def test_non_isomorphic_different_sizes():
    assert is_isomorphic(trivial_quandle(2), trivial_quandle(3)) is None


# ---------------------------------------------------------------------------
# groups of symmetries
# ---------------------------------------------------------------------------

def test_automorphism_group_orders():
    # the symmetries of dihedral tables are the affine maps a*x + b, a a unit
    assert automorphism_group(dihedral_quandle(3)).order == 6
    assert automorphism_group(trivial_quandle(4)).order == 24
    assert automorphism_group(dihedral_quandle(5)).order == 20


def test_inner_group_of_dihedral_is_dihedral():
    assert inner_group(dihedral_quandle(3)).order == 6
    assert inner_group(dihedral_quandle(5)).order == 10


def test_connectivity_of_dihedral_depends_on_parity():
    assert is_connected(dihedral_quandle(3))
    assert is_connected(dihedral_quandle(5))
    assert not is_connected(dihedral_quandle(4))
    assert orbits(dihedral_quandle(4)) == [[0, 2], [1, 3]]


def test_trivial_quandle_homogeneous_but_disconnected():
    q = trivial_quandle(3)
    assert is_homogeneous(q)
    assert not is_connected(q)


def test_automorphism_guard():
    with pytest.raises(GuardExceeded):
        automorphism_group(trivial_quandle(11))


# ---------------------------------------------------------------------------
# enumeration against brute force
# ---------------------------------------------------------------------------

def test_all_labeled_tables_n3_match_brute_force():
    brute = set()
    for values in itertools.product(range(3), repeat=9):
        rows = (values[0:3], values[3:6], values[6:9])
        if brute_validate(rows):
            brute.add(rows)
    generated = set(all_quandle_tables(3))
    assert generated == brute


def test_enumerate_matches_brute_force_classes_n3():
    brute_classes = {canonical_form(t) for t in all_quandle_tables(3)}
    reps = enumerate_quandles(3)
    assert {q.table for q in reps} == brute_classes
    assert len(reps) == 3


def test_known_class_counts_small():
    assert [len(enumerate_quandles(n)) for n in range(1, 6)] == [1, 1, 3, 7, 22]


@pytest.mark.slow
def test_known_class_count_n6():
    assert len(enumerate_quandles(6)) == 73


def test_threaded_enumeration_agrees():
    single = enumerate_quandles(4)
    multi = enumerate_quandles(4, threads=2)
    assert [q.table for q in single] == [q.table for q in multi]


def test_canonical_form_is_class_invariant():
    rng = random.Random(88)
    for q in enumerate_quandles(4):
        for _ in range(5):
            p = list(range(4))
            rng.shuffle(p)
            assert canonical_form(q.relabel(tuple(p)).table) == q.table


def test_canonical_form_is_lex_least():
    rng = random.Random(89)
    for _ in range(10):
        q = rng.choice(enumerate_quandles(4))
        flat = [v for row in q.table for v in row]
        for p in itertools.permutations(range(4)):
            relab = q.relabel(p).table
            assert flat <= [v for row in relab for v in row]


def test_enumeration_guard():
    with pytest.raises(GuardExceeded):
        enumerate_quandles(7)


def test_example_table_is_the_middle_class():
    reps = enumerate_quandles(3)
    assert EXAMPLE_3 in {q.table for q in reps}
    q = FiniteQuandle.from_rows(EXAMPLE_3)
    assert not is_connected(q)
    assert orbits(q) == [[0], [1, 2]]
    assert not is_homogeneous(q)
    assert automorphism_group(q).order == 2
