"""Matrices over Z[G] and the bridge to exact integer linear algebra.

Conventions, fixed once so non-abelian groups work unchanged:

* Modules are free *right* Z[G]-modules of column vectors; a GRMatrix acts
  on the left, entries multiplying entry-wise on the left.  Scalars act on
  the right, so matrix action is a module map.
* ``dual()`` is the involute-transpose.  It represents the Z-dual of the map
  under the pairing that identifies Z[G] with its Z-dual by matching the
  basis element g with the coordinate functional of g.  No signs.
* ``expand()`` replaces each entry c by the |G| x |G| integer matrix of left
  multiplication by c on the Z-basis of Z[G] in table order:
  block[i][j] = coefficient of g_i * g_j^{-1} in c.  With this convention
  expansion is a ring homomorphism, and expand(dual(A)) equals the plain
  transpose of expand(A) -- no basis reindexing is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from zgdual.group_core import FiniteGroup, GroupRingElement
from zgdual.int_linalg import IntegerMatrix, solve_integer


@dataclass(frozen=True)
class GRMatrix:
    """A rows x cols matrix over Z[G]: a map Z[G]^cols -> Z[G]^rows."""

    group: FiniteGroup
    rows: int
    cols: int
    entries: tuple[tuple[GroupRingElement, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entry grid does not match declared shape {self.rows}x{self.cols}")
        for row in self.entries:
            for e in row:
                if e.group != self.group:
                    raise ValueError("matrix entry belongs to a different group")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(group: FiniteGroup, rows) -> GRMatrix:
        grid = tuple(tuple(row) for row in rows)
        nrows = len(grid)
        ncols = len(grid[0]) if nrows else 0
        return GRMatrix(group, nrows, ncols, grid)

    @staticmethod
    def zeros(group: FiniteGroup, rows: int, cols: int) -> GRMatrix:
        z = GroupRingElement.zero(group)
        return GRMatrix(group, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @staticmethod
    def identity(group: FiniteGroup, n: int) -> GRMatrix:
        one = GroupRingElement.one(group)
        z = GroupRingElement.zero(group)
        return GRMatrix(
            group, n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))
        )

    @staticmethod
    def scalar(element: GroupRingElement, n: int) -> GRMatrix:
        """Diagonal matrix acting by left multiplication with ``element``."""
        z = GroupRingElement.zero(element.group)
        return GRMatrix(
            element.group,
            n,
            n,
            tuple(tuple(element if i == j else z for j in range(n)) for i in range(n)),
        )

    @staticmethod
    def one_by_one(element: GroupRingElement) -> GRMatrix:
        return GRMatrix(element.group, 1, 1, ((element,),))

    @staticmethod
    def block(group: FiniteGroup, grid) -> GRMatrix:
        """Assemble from a grid of GRMatrix blocks with consistent shapes.

        Zero-size blocks are allowed anywhere, so complexes with rank-0
        modules assemble without special cases.
        """
        row_heights = []
        for brow in grid:
            heights = {b.rows for b in brow}
            if len(heights) > 1:
                raise ValueError("inconsistent block heights in a block row")
            row_heights.append(heights.pop() if heights else 0)
        ncols_blocks = {len(brow) for brow in grid}
        if len(ncols_blocks) > 1:
            raise ValueError("ragged block grid")
        nblock_cols = ncols_blocks.pop() if ncols_blocks else 0
        col_widths = []
        for jb in range(nblock_cols):
            widths = {brow[jb].cols for brow in grid}
            if len(widths) > 1:
                raise ValueError("inconsistent block widths in a block column")
            col_widths.append(widths.pop() if widths else 0)
        rows = []
        for brow, h in zip(grid, row_heights):
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.entries[i])
                rows.append(tuple(row))
        return GRMatrix(group, sum(row_heights), sum(col_widths), tuple(rows))

    # -- algebra ------------------------------------------------------

    def _check_group(self, other: GRMatrix):
        if self.group != other.group:
            raise ValueError("matrices over different group rings")

    def __matmul__(self, other: GRMatrix) -> GRMatrix:
        self._check_group(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        z = GroupRingElement.zero(self.group)
        grid = []
        for i in range(self.rows):
            arow = self.entries[i]
            out = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = arow[k]
                    b = other.entries[k][j]
                    if not (a.is_zero or b.is_zero):
                        acc = acc + a * b
                out.append(acc)
            grid.append(tuple(out))
        return GRMatrix(self.group, self.rows, other.cols, tuple(grid))

    def __add__(self, other: GRMatrix) -> GRMatrix:
        self._check_group(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return GRMatrix(
            self.group,
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> GRMatrix:
        return GRMatrix(
            self.group, self.rows, self.cols, tuple(tuple(-a for a in row) for row in self.entries)
        )

    def __sub__(self, other: GRMatrix) -> GRMatrix:
        return self + (-other)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    def dual(self) -> GRMatrix:
        """Involute-transpose: the dual map Z[G]^rows -> Z[G]^cols."""
        grid = tuple(
            tuple(self.entries[i][j].involute() for i in range(self.rows))
            for j in range(self.cols)
        )
        return GRMatrix(self.group, self.cols, self.rows, grid)

    def expand(self) -> IntegerMatrix:
        """Integer matrix of the same map on Z-bases (see module docstring)."""
        G = self.group
        N = G.order
        mul = G.mul_table
        inv = G.inv_table
        rows = []
        for i in range(self.rows):
            for a in range(N):
                row = []
                for j in range(self.cols):
                    coeffs = self.entries[i][j].coeffs
                    row.extend(coeffs[mul[a][inv[b]]] for b in range(N))
                rows.append(tuple(row))
        if not rows:
            return IntegerMatrix(0, self.cols * N, ())
        return IntegerMatrix(self.rows * N, self.cols * N, tuple(rows))

    def augmented(self) -> IntegerMatrix:
        """Entrywise augmentation: the induced map on trivial coefficients."""
        if not self.rows:
            return IntegerMatrix(0, self.cols, ())
        return IntegerMatrix(
            self.rows,
            self.cols,
            tuple(tuple(e.augmentation() for e in row) for row in self.entries),
        )


def gr_compose(A: GRMatrix, B: GRMatrix) -> GRMatrix:
    return A @ B


def dual_matrix(A: GRMatrix) -> GRMatrix:
    return A.dual()


def expand_regular(A: GRMatrix) -> IntegerMatrix:
    return A.expand()


def augment_matrix(A: GRMatrix) -> IntegerMatrix:
    return A.augmented()


def _fold_columns(group: FiniteGroup, X: IntegerMatrix, gr_cols: int) -> GRMatrix:
    # inverse of the coefficient-stacking used by expand(): row block j of X
    # holds the coefficient vector of entry (j, l)
    N = group.order
    grid = []
    for j in range(gr_cols):
        row = []
        for l in range(X.cols):
            coeffs = tuple(X.entries[j * N + a][l] for a in range(N))
            row.append(GroupRingElement(group, coeffs))
        grid.append(tuple(row))
    return GRMatrix(group, gr_cols, X.cols, tuple(grid))


def solve_gr_linear(A: GRMatrix, B: GRMatrix):
    """An X over Z[G] with A @ X == B, or None when no solution exists.

    Solved by expanding to an exact integer system and folding the solution
    back; the coordinate bijection makes this faithful, so None really means
    there is no Z[G]-linear solution.  Deterministic via SNF back-substitution.
    """
    A._check_group(B)
    if A.rows != B.rows:
        raise ValueError(f"A has {A.rows} rows but B has {B.rows}")
    N = A.group.order
    E = A.expand()
    # stack each Z[G] column of B into integer coordinates
    rows = []
    for i in range(B.rows):
        for a in range(N):
            rows.append(tuple(B.entries[i][j].coeffs[a] for j in range(B.cols)))
    Bint = IntegerMatrix(B.rows * N, B.cols, tuple(rows)) if rows else IntegerMatrix(0, B.cols, ())
    X = solve_integer(E, Bint)
    if X is None:
        return None
    return _fold_columns(A.group, X, A.cols)


def invert_gr_matrix(A: GRMatrix):
    """Two-sided inverse of a square GRMatrix, or None if not a unit."""
    if A.rows != A.cols:
        raise ValueError("only square matrices can be inverted")
    X = solve_gr_linear(A, GRMatrix.identity(A.group, A.rows))
    if X is None:
        return None
    if (X @ A) != GRMatrix.identity(A.group, A.rows):
        return None
    return X
