"""Finite groups as multiplication tables, and exact arithmetic in Z[G].

A group of order N is stored as an N x N table of element indices together
with the derived inverse table and identity index.  Elements of the integral
group ring Z[G] are dense integer coefficient vectors indexed the same way.
All coefficients are Python ints, so no operation can overflow.

Everything here is immutable and pure; values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GroupTableError(ValueError):
    """A multiplication table failed one of the group axioms.

    ``reason`` is one of ``"shape"``, ``"range"``, ``"latin"``,
    ``"identity"``, ``"inverse"``, ``"associativity"``.
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


# Exhaustive associativity checking is O(N^3); above this order the table is
# trusted and the group carries associativity_verified=False.
ASSOCIATIVITY_CHECK_LIMIT = 64


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table on indices 0..N-1.

    ``mul_table[i][j]`` is the index of g_i * g_j.  ``inv_table[i]`` is the
    index of the two-sided inverse of g_i.
    """

    order: int
    mul_table: tuple[tuple[int, ...], ...]
    inv_table: tuple[int, ...]
    identity_index: int
    associativity_verified: bool = field(default=True, compare=False)

    def mul(self, i: int, j: int) -> int:
        return self.mul_table[i][j]

    def inv(self, i: int) -> int:
        return self.inv_table[i]

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def cyclic_group(n: int) -> FiniteGroup:
    """The cyclic group of order n, element i standing for t^i."""
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((n - i) % n for i in range(n))
    return FiniteGroup(order=n, mul_table=mul, inv_table=inv, identity_index=0)


def group_from_table(mul_table) -> FiniteGroup:
    """Build and fully validate a group from a square multiplication table.

    Each axiom failure raises GroupTableError with a distinct reason, so
    callers can tell a non-Latin-square from a missing identity, a missing
    inverse, or an associativity failure.  Associativity is checked
    exhaustively only up to order ASSOCIATIVITY_CHECK_LIMIT.
    """
    table = tuple(tuple(row) for row in mul_table)
    n = len(table)
    if n == 0:
        raise GroupTableError("shape", "empty multiplication table")
    if any(len(row) != n for row in table):
        raise GroupTableError("shape", "multiplication table is not square")
    full = set(range(n))
    for i, row in enumerate(table):
        if any(not (0 <= v < n) for v in row):
            raise GroupTableError("range", f"row {i} contains an out-of-range index")
    for i, row in enumerate(table):
        if set(row) != full:
            raise GroupTableError("latin", f"row {i} is not a permutation (not a Latin square)")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise GroupTableError("latin", f"column {j} is not a permutation (not a Latin square)")

    identity = None
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(table[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupTableError("identity", "no two-sided identity element")

    inv = [None] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == identity and table[j][i] == identity:
                inv[i] = j
                break
        if inv[i] is None:
            raise GroupTableError("inverse", f"element {i} has no two-sided inverse")

    verified = n <= ASSOCIATIVITY_CHECK_LIMIT
    if verified:
        for a in range(n):
            ta = table[a]
            for b in range(n):
                tab = table[ta[b]]
                tb = table[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupTableError(
                            "associativity",
                            f"associativity fails at ({a},{b},{c})",
                        )

    return FiniteGroup(
        order=n,
        mul_table=table,
        inv_table=tuple(inv),
        identity_index=identity,
        associativity_verified=verified,
    )


@dataclass(frozen=True)
class GroupRingElement:
    """An element of Z[G]: the formal sum of coeffs[i] * g_i."""

    group: FiniteGroup
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise ValueError(
                f"coefficient vector has length {len(self.coeffs)}, group order is {self.group.order}"
            )

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(group: FiniteGroup) -> GroupRingElement:
        return GroupRingElement(group, (0,) * group.order)

    @staticmethod
    def one(group: FiniteGroup) -> GroupRingElement:
        c = [0] * group.order
        c[group.identity_index] = 1
        return GroupRingElement(group, tuple(c))

    @staticmethod
    def basis(group: FiniteGroup, index: int) -> GroupRingElement:
        c = [0] * group.order
        c[index] = 1
        return GroupRingElement(group, tuple(c))

    @staticmethod
    def from_terms(group: FiniteGroup, terms) -> GroupRingElement:
        """Build from [coefficient, element_index] pairs; repeats accumulate."""
        c = [0] * group.order
        for coeff, idx in terms:
            if not (0 <= idx < group.order):
                raise ValueError(f"element index {idx} out of range for order {group.order}")
            c[idx] += coeff
        return GroupRingElement(group, tuple(c))

    # -- ring structure -----------------------------------------------

    def _check_same_group(self, other: GroupRingElement):
        if self.group != other.group:
            raise ValueError("group ring elements belong to different groups")

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        self._check_same_group(other)
        return GroupRingElement(
            self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        self._check_same_group(other)
        return GroupRingElement(
            self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement(self.group, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, GroupRingElement):
            return gr_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, k: int) -> GroupRingElement:
        return GroupRingElement(self.group, tuple(k * a for a in self.coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def involute(self) -> GroupRingElement:
        """The anti-automorphism sending g to g^{-1} (coefficients follow)."""
        inv = self.group.inv_table
        c = [0] * self.group.order
        for i, a in enumerate(self.coeffs):
            c[inv[i]] = a
        return GroupRingElement(self.group, tuple(c))

    def augmentation(self) -> int:
        """Sum of coefficients: the ring map Z[G] -> Z collapsing G to 1."""
        return sum(self.coeffs)

    def terms(self) -> list[list[int]]:
        """[coefficient, element_index] pairs with zero terms omitted."""
        return [[a, i] for i, a in enumerate(self.coeffs) if a]

    def __repr__(self):
        return f"GroupRingElement({self.terms()!r} over order {self.group.order})"


def gr_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Convolution product in Z[G] via the multiplication table."""
    a._check_same_group(b)
    mul = a.group.mul_table
    c = [0] * a.group.order
    for i, ai in enumerate(a.coeffs):
        if ai:
            row = mul[i]
            for j, bj in enumerate(b.coeffs):
                if bj:
                    c[row[j]] += ai * bj
    return GroupRingElement(a.group, tuple(c))


def gr_involute(a: GroupRingElement) -> GroupRingElement:
    return a.involute()


def augmentation(a: GroupRingElement) -> int:
    return a.augmentation()


def norm_element(group: FiniteGroup) -> GroupRingElement:
    """The sum of all group elements (written Sigma for cyclic groups)."""
    return GroupRingElement(group, (1,) * group.order)
