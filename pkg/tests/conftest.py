"""Shared test fixtures: small groups and independent exact oracles.

The oracles deliberately avoid zgdual.int_linalg: ranks come from Fraction
Gaussian elimination, invariant factors from sympy's Smith normal form, so
every cross-check pits two unrelated implementations against each other.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from zgdual.group_core import cyclic_group, group_from_table
from zgdual.int_linalg import IntegerMatrix


# -- groups -------------------------------------------------------------

KLEIN_TABLE = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]


def _perm_group(perms):
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms]
    return group_from_table(table)


def make_klein():
    return group_from_table(KLEIN_TABLE)


def make_sym3():
    return _perm_group(sorted(permutations(range(3))))


def make_dihedral4():
    # symmetries of the square as permutations of its corners
    r = (1, 2, 3, 0)
    s = (1, 0, 3, 2)
    elems = set()
    frontier = [(0, 1, 2, 3)]
    while frontier:
        p = frontier.pop()
        if p in elems:
            continue
        elems.add(p)
        for q in (r, s):
            frontier.append(tuple(q[p[i]] for i in range(4)))
    return _perm_group(sorted(elems))


def make_quaternion8():
    # Q8 = {1, -1, i, -i, j, -j, k, -k} indexed 0..7
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    sign = {n: (-1 if n.startswith("-") else 1) for n in names}
    base = {n: n.lstrip("-") for n in names}
    mul_base = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    idx = {n: i for i, n in enumerate(names)}
    table = []
    for a in names:
        row = []
        for b in names:
            s0, base_prod = mul_base[(base[a], base[b])]
            s_total = sign[a] * sign[b] * s0
            row.append(idx[base_prod if s_total == 1 else "-" + base_prod])
        table.append(row)
    return group_from_table(table)


SMALL_GROUPS = None


def small_groups():
    """Cyclic 1..12 plus Klein, S3, D4, Q8 (orders <= 12)."""
    global SMALL_GROUPS
    if SMALL_GROUPS is None:
        SMALL_GROUPS = [cyclic_group(n) for n in range(1, 13)] + [
            make_klein(),
            make_sym3(),
            make_dihedral4(),
            make_quaternion8(),
        ]
    return SMALL_GROUPS


@pytest.fixture(scope="session")
def groups():
    return small_groups()


# -- independent oracles --------------------------------------------------


def rational_rank(M: IntegerMatrix) -> int:
    """Rank over Q by Fraction Gaussian elimination (no SNF anywhere)."""
    rows = [[Fraction(v) for v in row] for row in M.entries]
    rank = 0
    col = 0
    nrows, ncols = M.rows, M.cols
    while rank < nrows and col < ncols:
        pivot = next((i for i in range(rank, nrows) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        inv = 1 / pr[col]
        rows[rank] = [v * inv for v in pr]
        pr = rows[rank]
        for i in range(nrows):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], pr)]
        rank += 1
        col += 1
    return rank


def sympy_invariant_factors(M: IntegerMatrix) -> list[int]:
    """Nonzero invariant factors via sympy's Smith normal form."""
    if M.rows == 0 or M.cols == 0:
        return []
    S = sympy_snf(Matrix(M.to_lists()), domain=ZZ)
    diag = [abs(int(S[i, i])) for i in range(min(M.rows, M.cols))]
    return [d for d in diag if d]


def oracle_homology(incoming: IntegerMatrix, outgoing: IntegerMatrix):
    """(free_rank, sorted torsion list) of ker(outgoing)/im(incoming).

    Free rank is dim ker - rank im over Q (Fraction elimination only).
    Torsion: the kernel of an integer matrix is a pure sublattice, so
    Z^m / ker(outgoing) is free and 0 -> ker/im -> Z^m/im -> Z^m/ker -> 0
    splits; hence torsion(ker/im) == torsion(Z^m/im), which is the list of
    invariant factors of ``incoming`` that exceed 1 (sympy SNF).
    """
    m = outgoing.cols
    free = (m - rational_rank(outgoing)) - rational_rank(incoming)
    torsion = sorted(d for d in sympy_invariant_factors(incoming) if d > 1)
    return free, torsion


def oracle_group_info(incoming: IntegerMatrix, outgoing: IntegerMatrix):
    """oracle_homology packaged as an AbelianGroupInfo for direct equality."""
    from zgdual.int_linalg import AbelianGroupInfo

    free, torsion = oracle_homology(incoming, outgoing)
    return AbelianGroupInfo(free, tuple(torsion))
