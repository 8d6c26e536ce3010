"""Exact integer matrix algebra: Smith normal form, solving, homology.

Matrices are immutable grids of Python ints; every computation is exact.
Empty matrices (zero rows or columns) are first class: rank-0 modules occur
at the ends of chain complexes, so all conventions below degrade gracefully.
For the empty cases: the SNF of a matrix with no nonzero entry has an empty
invariant-factor list, and a kernel basis of a 0 x n matrix is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IntegerMatrix:
    """A rows x cols matrix over Z, stored as a row-major grid."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(
                f"entry grid does not match declared shape {self.rows}x{self.cols}"
            )

    @staticmethod
    def from_rows(rows) -> IntegerMatrix:
        grid = tuple(tuple(int(v) for v in row) for row in rows)
        nrows = len(grid)
        ncols = len(grid[0]) if nrows else 0
        return IntegerMatrix(nrows, ncols, grid)

    @staticmethod
    def zeros(rows: int, cols: int) -> IntegerMatrix:
        return IntegerMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> IntegerMatrix:
        return IntegerMatrix(
            n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        bt = list(zip(*other.entries)) if other.rows else [()] * other.cols
        grid = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in bt) for row in self.entries
        )
        if not self.rows:
            grid = ()
        return IntegerMatrix(self.rows, other.cols, grid)

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntegerMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix(
            self.rows, self.cols, tuple(tuple(-a for a in row) for row in self.entries)
        )

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self + (-other)

    def transpose(self) -> IntegerMatrix:
        if self.rows == 0:
            return IntegerMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    @property
    def is_zero(self) -> bool:
        return all(not v for row in self.entries for v in row)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal.

    ``diagonal`` lists the nonzero invariant factors d_1 | d_2 | ... ; the
    remaining diagonal entries of D are zero, so rank(A) == len(diagonal).
    """

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith_normal_form(A: IntegerMatrix) -> SmithDecomposition:
    """Diagonalize A by unimodular row/column operations.

    Pivoting picks the minimum-absolute-value nonzero entry of the live
    block, which keeps coefficient growth in check on the small dense
    matrices produced by group-ring expansion.
    """
    m, n = A.rows, A.cols
    M = [list(row) for row in A.entries]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_axpy(dst, src, q):
        # row dst += q * row src, mirrored on U
        Md, Ms = M[dst], M[src]
        for j in range(n):
            Md[j] += q * Ms[j]
        Ud, Us = U[dst], U[src]
        for j in range(m):
            Ud[j] += q * Us[j]

    def col_axpy(dst, src, q):
        for i in range(m):
            M[i][dst] += q * M[i][src]
        for i in range(n):
            V[i][dst] += q * V[i][src]

    def row_swap(a, b):
        M[a], M[b] = M[b], M[a]
        U[a], U[b] = U[b], U[a]

    def col_swap(a, b):
        for i in range(m):
            M[i][a], M[i][b] = M[i][b], M[i][a]
        for i in range(n):
            V[i][a], V[i][b] = V[i][b], V[i][a]

    def row_negate(a):
        M[a] = [-v for v in M[a]]
        U[a] = [-v for v in U[a]]

    limit = min(m, n)
    t = 0
    while t < limit:
        # locate min-abs nonzero pivot in the live block
        best = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                v = Mi[j]
                if v:
                    a = -v if v < 0 else v
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if M[t][t] < 0:
            row_negate(t)

        while True:
            # clear column t then row t; re-pivot on any nonzero remainder
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = M[i][t]
                if v:
                    q = v // p
                    if q:
                        row_axpy(i, t, -q)
                    if M[i][t]:
                        row_swap(t, i)  # remainder is smaller than |p|
                        if M[t][t] < 0:
                            row_negate(t)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                v = M[t][j]
                if v:
                    q = v // p
                    if q:
                        col_axpy(j, t, -q)
                    if M[t][j]:
                        col_swap(t, j)
                        if M[t][t] < 0:
                            row_negate(t)
                        dirty = True
                        break
            if dirty:
                continue
            # column and row are clear; enforce divisibility of the block
            p = M[t][t]
            bad = None
            for i in range(t + 1, m):
                Mi = M[i]
                for j in range(t + 1, n):
                    if Mi[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_axpy(t, bad, 1)
        t += 1

    diagonal = tuple(M[i][i] for i in range(limit) if M[i][i])
    D = IntegerMatrix.from_rows(M) if m else IntegerMatrix(0, n, ())
    Um = IntegerMatrix.from_rows(U) if m else IntegerMatrix(0, 0, ())
    Vm = IntegerMatrix.from_rows(V) if n else IntegerMatrix(0, 0, ())
    return SmithDecomposition(U=Um, D=D, V=Vm, diagonal=diagonal)


def rank(A: IntegerMatrix) -> int:
    return smith_normal_form(A).rank


def determinant(A: IntegerMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = [list(row) for row in A.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            Mi, Mk = M[i], M[k]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * pivot - mik * Mk[j]) // prev
            Mi[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def kernel_basis(A: IntegerMatrix) -> IntegerMatrix:
    """Columns spanning ker(A) as a pure sublattice of Z^cols.

    The kernel of an integer matrix is saturated, so the basis obtained from
    the SNF right transform spans every integer kernel vector over Z.
    """
    snf = smith_normal_form(A)
    r = snf.rank
    cols = [snf.V.column(j) for j in range(r, A.cols)]
    if not cols:
        return IntegerMatrix(A.cols, 0, tuple(() for _ in range(A.cols)))
    grid = tuple(tuple(col[i] for col in cols) for i in range(A.cols))
    return IntegerMatrix(A.cols, len(cols), grid)


def solve_integer(A: IntegerMatrix, B: IntegerMatrix):
    """An integral X with A @ X == B, or None when no such X exists.

    Deterministic: free coordinates of the SNF back-substitution are zero.
    """
    if A.rows != B.rows:
        raise ValueError(f"A has {A.rows} rows but B has {B.rows}")
    snf = smith_normal_form(A)
    r = snf.rank
    C = snf.U @ B
    diag = snf.diagonal
    # rows past the rank must vanish; divisibility on the rest
    Y = [[0] * B.cols for _ in range(A.cols)]
    for i in range(A.rows):
        row = C.entries[i]
        if i < r:
            d = diag[i]
            for j in range(B.cols):
                q, rem = divmod(row[j], d)
                if rem:
                    return None
                Y[i][j] = q
        else:
            if any(row):
                return None
    Ym = IntegerMatrix.from_rows(Y) if A.cols else IntegerMatrix(0, B.cols, ())
    return snf.V @ Ym


@dataclass
class ReducedLattice:
    """An LLL-reduced lattice basis with its integral Gram-Schmidt data.

    ``d`` are the Gram determinants (d[0] == 1) and ``lam[i][j]`` the scaled
    projection coefficients d[j+1] * mu_ij, as in the all-integer LLL.
    """

    basis: list[list[int]]
    d: list[int]
    lam: list[list[int]]


def lll_reduce(rows: list[list[int]], delta=(3, 4)) -> ReducedLattice:
    """All-integer LLL reduction of linearly independent lattice basis rows.

    Produces a basis of the same lattice whose vectors are short and nearly
    orthogonal; used to surface sparse elements (e.g. unit-like chain maps)
    of solution lattices.  Exact arithmetic throughout (de Weger's integral
    Gram-Schmidt bookkeeping), Lovasz parameter delta = 3/4.
    """
    b = [list(r) for r in rows]
    m = len(b)
    dn, dd = delta

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    d = [1] * (m + 1)
    lam = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1):
            u = dot(b[i], b[j])
            for k in range(j):
                u = (d[k + 1] * u - lam[i][k] * lam[j][k]) // d[k]
            if j < i:
                lam[i][j] = u
            else:
                d[i + 1] = u
                if u <= 0:
                    raise ValueError("basis rows are not linearly independent")
    if m <= 1:
        return ReducedLattice(b, d, lam)

    def size_reduce(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            bk, bl = b[k], b[l]
            for idx in range(len(bk)):
                bk[idx] -= q * bl[idx]
            for j in range(l):
                lam[k][j] -= q * lam[l][j]
            lam[k][l] -= q * d[l + 1]

    k = 1
    while k < m:
        size_reduce(k, k - 1)
        if dd * (d[k + 1] * d[k - 1] + lam[k][k - 1] ** 2) < dn * d[k] * d[k]:
            # swap b_k and b_{k-1}, updating the integral GSO data
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            lam_prev = lam[k][k - 1]
            newd = (d[k - 1] * d[k + 1] + lam_prev * lam_prev) // d[k]
            for i in range(k + 1, m):
                t = lam[i][k]
                lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_prev * t) // d[k]
                lam[i][k - 1] = (newd * t + lam_prev * lam[i][k]) // d[k + 1]
            d[k] = newd
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return ReducedLattice(b, d, lam)


def lll_reduce_rows(rows: list[list[int]], delta=(3, 4)) -> list[list[int]]:
    return lll_reduce(rows, delta).basis


def babai_nearest(red: ReducedLattice, target: list[int]) -> list[int]:
    """The lattice vector produced by Babai nearest-plane for ``target``.

    With an LLL-reduced basis this lands on a lattice point close to the
    target (exactly the target when it already lies in the lattice).  All
    arithmetic is integral: lam_t[j] is the integer d[j] <t, b*_j>.
    """
    b, d, lam = red.basis, red.d, red.lam
    m = len(b)
    t = list(target)
    if m == 0:
        return [0] * len(target)
    lam_t = [0] * m
    for j in range(m):
        u = sum(x * y for x, y in zip(t, b[j]))
        for k in range(j):
            u = (d[k + 1] * u - lam_t[k] * lam[j][k]) // d[k]
        lam_t[j] = u
    for i in range(m - 1, -1, -1):
        c = (2 * lam_t[i] + d[i + 1]) // (2 * d[i + 1])  # nearest integer
        if c:
            bi = b[i]
            for idx in range(len(t)):
                t[idx] -= c * bi[idx]
            for j in range(i):
                lam_t[j] -= c * lam[i][j]
    return [x - y for x, y in zip(target, t)]


@dataclass(frozen=True)
class AbelianGroupInfo:
    """A finitely generated abelian group in invariant-factor form.

    ``torsion`` lists the invariant factors > 1 with each dividing the next,
    so equality of AbelianGroupInfo is equality of abstract groups.
    """

    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion entries must exceed 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion entries must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @staticmethod
    def trivial() -> AbelianGroupInfo:
        return AbelianGroupInfo(0, ())

    @staticmethod
    def free(rank: int) -> AbelianGroupInfo:
        return AbelianGroupInfo(rank, ())

    @staticmethod
    def cyclic(n: int) -> AbelianGroupInfo:
        return AbelianGroupInfo(0, (n,)) if n > 1 else AbelianGroupInfo(0, ())

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def homology_pair(incoming: IntegerMatrix, outgoing: IntegerMatrix) -> AbelianGroupInfo:
    """ker(outgoing)/im(incoming) where outgoing @ incoming == 0.

    ``incoming`` maps into the middle module Z^m (m = incoming.rows =
    outgoing.cols); ``outgoing`` maps out of it.
    """
    if incoming.rows != outgoing.cols:
        raise ValueError(
            f"middle module mismatch: incoming has {incoming.rows} rows, outgoing has {outgoing.cols} cols"
        )
    if not (outgoing @ incoming).is_zero:
        raise ValueError("outgoing . incoming is nonzero: not a complex at this spot")
    K = kernel_basis(outgoing)
    # express im(incoming) in kernel coordinates; K spans a pure lattice so
    # an integral expression always exists here
    Y = solve_integer(K, incoming)
    if Y is None:
        raise AssertionError("image does not lie in the kernel lattice")
    snf = smith_normal_form(Y)
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return AbelianGroupInfo(free_rank=K.cols - snf.rank, torsion=torsion)
