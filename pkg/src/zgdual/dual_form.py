"""Dual-form machinery for algebraic 5-complexes.

A length-6 complex is *in dual form* when its outer differentials mirror,

    F0* -d1*-> F1* -d2*-> F2* -d3-> F2 -d2-> F1 -d1-> F0,

so boundary(5) == dual(boundary(1)) and boundary(4) == dual(boundary(2)).
The middle map d3 then encodes a G-invariant bilinear form on the dual J of
ker(d2).  This module provides:

* stabilization and simple homotopy moves (expand/collapse a free summand);
* the five-move pipeline taking any algebraic 5-complex to a mirrored
  stage-6 shape, with the middle gluing isomorphism chosen as the identity
  (legitimate because the Euler characteristic forces the two middle ranks
  to agree);
* a best-effort solver for the final chain isomorphism between the tail of
  the stage-6 complex and the dual of its head, plus the conjugation step
  that produces an honest dual-form complex from it;
* normalization of a duality equivalence to the shape
  (-1, -1, theta2, theta1, 1, 1), anti-self-duality (d3* == -d3), and the
  even-order/even-rank parity obstruction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from zgdual.complexes import (
    ChainComplex,
    ChainHomotopy,
    ChainMap,
    compose_maps,
    five_complex_report,
    homology,
    identity_map,
    is_chain_map,
    negate_map,
    validate_complex,
    verify_homotopy,
)
from zgdual.gr_linalg import GRMatrix, invert_gr_matrix, solve_gr_linear
from zgdual.int_linalg import (
    IntegerMatrix,
    babai_nearest,
    determinant,
    kernel_basis,
    lll_reduce,
    smith_normal_form,
)


# -- stabilization and simple homotopy moves ---------------------------


def stabilize(C: ChainComplex, n: int) -> ChainComplex:
    """Add a free rank-n summand to the top module, boundary extended by 0.

    The top kernel grows by Z[G]^n, so the top generator certificate is
    dropped (for n > 0); homology below the top degree is unchanged.
    """
    if n < 0:
        raise ValueError("stabilization rank must be non-negative")
    if n == 0:
        return C
    T = C.top_degree
    if T == 0:
        return ChainComplex(C.group, (C.ranks[0] + n,), ())
    ranks = C.ranks[:T] + (C.ranks[T] + n,)
    old = C.boundary(T)
    zeros = GRMatrix.zeros(C.group, old.rows, n)
    new_top = GRMatrix.block(C.group, [[old, zeros]])
    return ChainComplex(
        C.group,
        ranks,
        C.differentials[: T - 1] + (new_top,),
        top_generator=None,
        bottom_generator=C.bottom_generator,
    )


@dataclass(frozen=True)
class MoveRecord:
    direction: str  # "expand" | "collapse"
    position: int  # the lower of the two degrees touched
    rank: int


@dataclass(frozen=True)
class SimpleMoveResult:
    """``forward``/``backward`` are the mutually inverse equivalences."""

    complex: ChainComplex
    forward: ChainMap  # original -> new
    backward: ChainMap  # new -> original
    record: MoveRecord


def _expand_move(C: ChainComplex, position: int, rank: int) -> SimpleMoveResult:
    G = C.group
    T = C.top_degree
    p = position
    f = rank
    ranks = list(C.ranks)
    ranks[p] += f
    ranks[p + 1] += f
    diffs = list(C.differentials)

    d = C.boundary(p + 1)
    ident = GRMatrix.identity(G, f)
    diffs[p] = GRMatrix.block(
        G,
        [
            [d, GRMatrix.zeros(G, d.rows, f)],
            [GRMatrix.zeros(G, f, d.cols), ident],
        ],
    )
    if p + 2 <= T:
        up = C.boundary(p + 2)
        diffs[p + 1] = GRMatrix.block(G, [[up], [GRMatrix.zeros(G, f, up.cols)]])
    if p >= 1:
        down = C.boundary(p)
        diffs[p - 1] = GRMatrix.block(G, [[down, GRMatrix.zeros(G, down.rows, f)]])

    top = C.top_generator
    bottom = C.bottom_generator
    if top is not None and p + 1 == T:
        top = tuple(top) + (0,) * f
    if bottom is not None and p == 0:
        bottom = tuple(bottom) + (0,) * f
    new = ChainComplex(G, tuple(ranks), tuple(diffs), top_generator=top, bottom_generator=bottom)

    fwd = []
    bwd = []
    for i in range(T + 1):
        if i in (p, p + 1):
            inc = GRMatrix.block(
                G,
                [[GRMatrix.identity(G, C.ranks[i])], [GRMatrix.zeros(G, f, C.ranks[i])]],
            )
            proj = GRMatrix.block(
                G,
                [[GRMatrix.identity(G, C.ranks[i]), GRMatrix.zeros(G, C.ranks[i], f)]],
            )
        else:
            inc = proj = GRMatrix.identity(G, C.ranks[i])
        fwd.append(inc)
        bwd.append(proj)
    record = MoveRecord("expand", p, f)
    return SimpleMoveResult(new, ChainMap(C, new, tuple(fwd)), ChainMap(new, C, tuple(bwd)), record)


def _collapse_move(C: ChainComplex, position: int, rank: int) -> SimpleMoveResult:
    """Inverse of _expand_move; requires the exact trailing block shape."""
    G = C.group
    T = C.top_degree
    p = position
    f = rank
    a = C.ranks[p + 1] - f
    b = C.ranks[p] - f
    if a < 0 or b < 0:
        raise ValueError("collapse rank exceeds the module ranks at the move position")

    d = C.boundary(p + 1)
    core = GRMatrix(G, b, a, tuple(row[:a] for row in d.entries[:b]))
    top_right = GRMatrix(G, b, f, tuple(row[a:] for row in d.entries[:b]))
    bottom_left = GRMatrix(G, f, a, tuple(row[:a] for row in d.entries[b:]))
    bottom_right = GRMatrix(G, f, f, tuple(row[a:] for row in d.entries[b:]))
    if not top_right.is_zero or not bottom_left.is_zero:
        raise ValueError("no identity block to collapse: off-diagonal blocks are nonzero")
    if bottom_right != GRMatrix.identity(G, f):
        raise ValueError("no identity block to collapse: trailing block is not the identity")

    diffs = list(C.differentials)
    diffs[p] = core
    if p + 2 <= T:
        up = C.boundary(p + 2)
        if any(not e.is_zero for row in up.entries[a:] for e in row):
            raise ValueError("cannot collapse: incoming differential hits the added summand")
        diffs[p + 1] = GRMatrix(G, a, up.cols, up.entries[:a])
    if p >= 1:
        down = C.boundary(p)
        if any(not e.is_zero for row in down.entries for e in row[b:]):
            raise ValueError("cannot collapse: outgoing differential reads the added summand")
        diffs[p - 1] = GRMatrix(G, down.rows, b, tuple(row[:b] for row in down.entries))

    ranks = list(C.ranks)
    ranks[p] = b
    ranks[p + 1] = a
    top = C.top_generator
    bottom = C.bottom_generator
    if top is not None and p + 1 == T:
        if any(top[a:]):
            raise ValueError("cannot collapse: top generator touches the added summand")
        top = tuple(top[:a])
    if bottom is not None and p == 0:
        if any(bottom[b:]):
            raise ValueError("cannot collapse: bottom generator touches the added summand")
        bottom = tuple(bottom[:b])
    new = ChainComplex(G, tuple(ranks), tuple(diffs), top_generator=top, bottom_generator=bottom)

    fwd = []
    bwd = []
    for i in range(T + 1):
        if i in (p, p + 1):
            r = new.ranks[i]
            proj = GRMatrix.block(G, [[GRMatrix.identity(G, r), GRMatrix.zeros(G, r, f)]])
            inc = GRMatrix.block(G, [[GRMatrix.identity(G, r)], [GRMatrix.zeros(G, f, r)]])
        else:
            proj = inc = GRMatrix.identity(G, C.ranks[i])
        fwd.append(proj)
        bwd.append(inc)
    record = MoveRecord("collapse", p, f)
    return SimpleMoveResult(new, ChainMap(C, new, tuple(fwd)), ChainMap(new, C, tuple(bwd)), record)


def simple_move(C: ChainComplex, position: int, rank: int, direction: str = "expand") -> SimpleMoveResult:
    """Add (expand) or remove (collapse) a free rank-``rank`` summand at
    degrees position+1 and position, the new differential block being the
    identity.  Neighbouring differentials compose with the inclusion and
    projection, so the result is simple homotopy equivalent to the input.
    """
    if not 0 <= position <= C.top_degree - 1:
        raise ValueError(f"move position {position} out of range 0..{C.top_degree - 1}")
    if rank < 0:
        raise ValueError("move rank must be non-negative")
    if direction == "expand":
        return _expand_move(C, position, rank)
    if direction == "collapse":
        return _collapse_move(C, position, rank)
    raise ValueError(f"unknown direction {direction!r}")


# -- the stage-6 pipeline ----------------------------------------------


@dataclass(frozen=True)
class PipelineResult:
    complex: ChainComplex
    moves: tuple[MoveRecord, ...]
    forward: ChainMap  # input -> stage-6 complex
    backward: ChainMap  # stage-6 complex -> input


def to_dual_form_stage6(C: ChainComplex) -> PipelineResult:
    """Run the five expansion moves taking an algebraic 5-complex to its
    mirrored stage-6 shape with ranks (c5+c0, c4+c0+c1+c5, ...).

    Moves, in order, add: the dual of the degree-5 module at degrees (1,0);
    the dual of degree 0 at (5,4); then duals of the two enlarged modules at
    (4,3) and (2,1); finally the matched middle pair at (3,2), glued by the
    identity isomorphism (the ranks agree exactly because the Euler
    characteristic vanishes).
    """
    report = five_complex_report(C)
    if not report.is_member:
        raise ValueError("stage-6 pipeline requires an algebraic 5-complex")
    c = C.ranks
    middle = c[2] + c[4] + c[0]
    if middle != c[3] + c[1] + c[5]:  # forced by euler == 0
        raise AssertionError("middle ranks disagree despite zero Euler characteristic")
    plan = [
        (0, c[5]),
        (4, c[0]),
        (3, c[1] + c[5]),
        (1, c[4] + c[0]),
        (2, middle),
    ]
    current = C
    moves = []
    forward = identity_map(C)
    backward = identity_map(C)
    for position, rank in plan:
        step = simple_move(current, position, rank, "expand")
        moves.append(step.record)
        forward = compose_maps(step.forward, forward)
        backward = compose_maps(backward, step.backward)
        current = step.complex
    return PipelineResult(current, tuple(moves), forward, backward)


# -- dual-form recognition ----------------------------------------------


@dataclass(frozen=True)
class DualFormView:
    """A recognized dual-form complex with its derived form data.

    ``j_rank`` is the Z-rank of J (the dual of ker(d2)); ``form_rank`` the
    Z-rank of the bilinear form carried by d3.
    """

    base: ChainComplex
    d1: GRMatrix
    d2: GRMatrix
    d3: GRMatrix
    j_rank: int
    form_rank: int


def dual_form_mismatch_reasons(C: ChainComplex) -> tuple[str, ...]:
    reasons = []
    if C.top_degree != 5:
        reasons.append("complex does not have six modules")
        return tuple(reasons)
    if not validate_complex(C).ok:
        reasons.append("compositions are nonzero")
    if (C.ranks[5], C.ranks[4], C.ranks[3]) != (C.ranks[0], C.ranks[1], C.ranks[2]):
        reasons.append("ranks do not mirror")
    if C.boundary(5) != C.boundary(1).dual():
        reasons.append("boundary(5) is not the dual of boundary(1)")
    if C.boundary(4) != C.boundary(2).dual():
        reasons.append("boundary(4) is not the dual of boundary(2)")
    return tuple(reasons)


def recognize_dual_form(C: ChainComplex):
    """The DualFormView of C, or None when C is not in dual form."""
    if dual_form_mismatch_reasons(C):
        return None
    G = C.group
    d1 = C.boundary(1)
    d2 = C.boundary(2)
    d3 = C.boundary(3)
    j_rank = G.order * C.ranks[2] - smith_normal_form(d2.expand()).rank
    form_rank = smith_normal_form(d3.expand()).rank
    return DualFormView(base=C, d1=d1, d2=d2, d3=d3, j_rank=j_rank, form_rank=form_rank)


# -- anti-self-duality and the parity obstruction ------------------------


def is_anti_self_dual(view: DualFormView) -> bool:
    """True exactly when d3* == -d3 (the form is antisymmetric)."""
    return view.d3.dual() == -view.d3


def asd_check(view: DualFormView) -> bool:
    return is_anti_self_dual(view)


@dataclass(frozen=True)
class ObstructionReport:
    """Parity obstruction: an antisymmetric nondegenerate form cannot live
    on an odd-rank lattice, so even |G| plus even rank of the degree-3
    homology of the cover rules out an anti-self-dual representative.
    """

    group_order_even: bool
    h3_free_rank: int
    obstructed: bool
    j_rank_congruence: int  # j_rank mod |G|; always |G| - 1 for these complexes
    j_rank: int
    form_rank: int
    cross_check_ok: bool  # h3_free_rank == j_rank - form_rank (kernel of the form)


def obstruction_check(view: DualFormView) -> ObstructionReport:
    order = view.base.group.order
    h3 = homology(view.base, 3, "integral").free_rank
    even_order = order % 2 == 0
    return ObstructionReport(
        group_order_even=even_order,
        h3_free_rank=h3,
        obstructed=even_order and h3 % 2 == 0,
        j_rank_congruence=view.j_rank % order,
        j_rank=view.j_rank,
        form_rank=view.form_rank,
        cross_check_ok=h3 == view.j_rank - view.form_rank,
    )


# -- normalizing a duality equivalence ------------------------------------


@dataclass(frozen=True)
class NormalizedDuality:
    """A duality equivalence pushed to the shape (-1,-1,theta2,theta1,1,1).

    ``homotopy`` connects psi to the (possibly globally negated) input phi.
    The central square d3 theta2 == theta1 d3* always holds exactly.  The
    diagonal augmentation residues of theta1/theta2 mod |G| are recorded
    but only asserted for specific families by callers.
    """

    phi: ChainMap
    psi: ChainMap
    theta1: GRMatrix
    theta2: GRMatrix
    homotopy: ChainHomotopy
    negated: bool
    theta1_aug_residue: int
    theta2_aug_residue: int


def _diag_aug_residue(A: GRMatrix) -> int:
    order = A.group.order
    total = sum(A.entries[i][i].augmentation() for i in range(min(A.rows, A.cols)))
    return total % order


def _solve_or_fail(A: GRMatrix, B: GRMatrix, what: str) -> GRMatrix:
    X = solve_gr_linear(A, B)
    if X is None:
        raise ValueError(f"lift {what} is unsolvable; the input is not a duality equivalence "
                         "over an algebraic 5-complex in dual form")
    return X


def normalize_duality(view: DualFormView, phi: ChainMap) -> NormalizedDuality:
    """Homotope phi: dual(C) -> C to psi = (-1, -1, theta2, theta1, 1, 1).

    Requires end scalars (1, -1); a phi with scalars (-1, 1) is globally
    negated first, which preserves the complex (the stored d3 is never
    touched).  The lifts I0, I1 and the dualized I4, I3 exist exactly
    because the complex is exact at degrees 1 and 4 with Z ends; I2 = 0.
    """
    C = view.base
    from zgdual.complexes import dualize_complex

    if phi.target != C or phi.source != dualize_complex(C):
        raise ValueError("phi must map the dual of the recognized complex to the complex")
    report = is_chain_map(phi)
    if not report.is_chain_map:
        raise ValueError("phi is not a chain map")
    scalars = report.end_scalars
    negated = False
    if scalars == (-1, 1):
        phi = negate_map(phi)
        negated = True
        scalars = (1, -1)
    if scalars != (1, -1):
        raise ValueError(f"end scalars must be (1, -1) up to global sign, got {scalars}")

    G = C.group
    d1, d2, d3 = view.d1, view.d2, view.d3
    r0, r1, r2 = C.ranks[0], C.ranks[1], C.ranks[2]
    one0 = GRMatrix.identity(G, r0)
    one1 = GRMatrix.identity(G, r1)
    p0, p1, p2, p3, p4, p5 = phi.components

    I0 = _solve_or_fail(d1, one0 - p0, "I0")
    I1 = _solve_or_fail(d2, one1 - p1 - I0 @ d1, "I1")
    I4_dual = _solve_or_fail(d1, -one0 - p5.dual(), "I4*")
    I3_dual = _solve_or_fail(d2, -one1 - p4.dual() - I4_dual @ d1, "I3*")
    I4 = I4_dual.dual()
    I3 = I3_dual.dual()
    I2 = GRMatrix.zeros(G, r2, r2)

    theta1 = p2 + I1 @ d2
    theta2 = p3 + d2.dual() @ I3

    psi = ChainMap(
        phi.source,
        phi.target,
        (one0, one1, theta1, theta2, -one1, -one0),
    )
    psi_report = is_chain_map(psi)
    if not psi_report.is_chain_map:
        raise AssertionError("normalized psi fails the chain map check")
    if d3 @ theta2 != theta1 @ d3.dual():
        raise AssertionError("central square identity fails for the normalized psi")

    homotopy = ChainHomotopy(first=psi, second=phi, components=(I0, I1, I2, I3, I4))
    hreport = verify_homotopy(homotopy)
    if not hreport.ok:
        raise AssertionError("constructed homotopy fails verification")

    return NormalizedDuality(
        phi=phi,
        psi=psi,
        theta1=theta1,
        theta2=theta2,
        homotopy=homotopy,
        negated=negated,
        theta1_aug_residue=_diag_aug_residue(theta1),
        theta2_aug_residue=_diag_aug_residue(theta2),
    )


# -- the final chain isomorphism (tail vs dual head) ----------------------


def tail_segment(C6: ChainComplex) -> ChainComplex:
    """Degrees 0..2 of a length-6 complex, as a 3-term complex."""
    return ChainComplex(
        C6.group,
        C6.ranks[:3],
        (C6.boundary(1), C6.boundary(2)),
        bottom_generator=C6.bottom_generator,
    )


def dual_head_segment(C6: ChainComplex) -> ChainComplex:
    """The dual of degrees 5..3, regraded as a 3-term complex."""
    return ChainComplex(
        C6.group,
        (C6.ranks[5], C6.ranks[4], C6.ranks[3]),
        (C6.boundary(5).dual(), C6.boundary(4).dual()),
    )


@dataclass(frozen=True)
class ChainIsoPair:
    """Mutually inverse chain isomorphisms between two 3-term complexes."""

    h: tuple[GRMatrix, GRMatrix, GRMatrix]
    k: tuple[GRMatrix, GRMatrix, GRMatrix]


def _is_segment_chain_map(a: ChainComplex, b: ChainComplex, comps) -> bool:
    return all(
        b.boundary(i) @ comps[i] == comps[i - 1] @ a.boundary(i) for i in (1, 2)
    )


def _right_mul_block(c) -> list[list[int]]:
    # integer matrix of x |-> x * c on Z-coordinates of Z[G]
    G = c.group
    N = G.order
    mul = G.mul_table
    inv = G.inv_table
    return [[c.coeffs[mul[inv[j]][i]] for j in range(N)] for i in range(N)]


def _left_mul_block(c) -> list[list[int]]:
    G = c.group
    N = G.order
    mul = G.mul_table
    inv = G.inv_table
    return [[c.coeffs[mul[i][inv[j]]] for j in range(N)] for i in range(N)]


def _lattice_offsets(a: ChainComplex, b: ChainComplex):
    N = a.group.order
    sizes = [b.ranks[i] * a.ranks[i] * N for i in range(3)]
    return [0, sizes[0], sizes[0] + sizes[1]], sum(sizes)


def _chain_map_lattice(a: ChainComplex, b: ChainComplex) -> list[list[int]]:
    """A Z-basis (flat coordinate vectors) of the chain-map lattice a -> b.

    Unknowns are the Z-coordinates of the three components; the commuting
    squares are integer-linear constraints, so the lattice is the kernel of
    one big integer matrix.
    """
    G = a.group
    N = G.order
    offsets, total = _lattice_offsets(a, b)

    def var(idx, i, j):
        return offsets[idx] + (i * a.ranks[idx] + j) * N

    rows = []
    for deg in (1, 2):
        D = b.boundary(deg)  # maps b_deg -> b_{deg-1}
        d = a.boundary(deg)
        # D @ h_deg - h_{deg-1} @ d == 0, entry (p, q) over Z[G]
        for p in range(b.ranks[deg - 1]):
            for q in range(a.ranks[deg]):
                block_rows = [[0] * total for _ in range(N)]
                for j in range(b.ranks[deg]):
                    if D.entries[p][j].is_zero:
                        continue
                    L = _left_mul_block(D.entries[p][j])
                    base = var(deg, j, q)
                    for r in range(N):
                        row = block_rows[r]
                        Lr = L[r]
                        for c in range(N):
                            if Lr[c]:
                                row[base + c] += Lr[c]
                for j in range(a.ranks[deg - 1]):
                    if d.entries[j][q].is_zero:
                        continue
                    R = _right_mul_block(d.entries[j][q])
                    base = var(deg - 1, p, j)
                    for r in range(N):
                        row = block_rows[r]
                        Rr = R[r]
                        for c in range(N):
                            if Rr[c]:
                                row[base + c] -= Rr[c]
                rows.extend(block_rows)

    constraint = IntegerMatrix.from_rows(rows) if rows else IntegerMatrix(0, total, ())
    K = kernel_basis(constraint)
    return [[K.entries[i][col] for i in range(K.rows)] for col in range(K.cols)]


def _unflatten_triple(a: ChainComplex, b: ChainComplex, vec):
    from zgdual.group_core import GroupRingElement

    G = a.group
    N = G.order
    offsets, _ = _lattice_offsets(a, b)
    comps = []
    for idx in range(3):
        grid = []
        for i in range(b.ranks[idx]):
            row = []
            for j in range(a.ranks[idx]):
                base = offsets[idx] + (i * a.ranks[idx] + j) * N
                row.append(GroupRingElement(G, tuple(vec[base : base + N])))
            grid.append(tuple(row))
        comps.append(GRMatrix(G, b.ranks[idx], a.ranks[idx], tuple(grid)))
    return tuple(comps)


def _flatten_triple(a: ChainComplex, b: ChainComplex, comps) -> list[int]:
    out = []
    for idx in range(3):
        for i in range(b.ranks[idx]):
            for j in range(a.ranks[idx]):
                out.extend(comps[idx].entries[i][j].coeffs)
    return out


def _try_invert_triple(a, b, comps):
    """Certify comps as a chain isomorphism; return the inverse triple or None."""
    for m in comps:
        if m.rows != m.cols:
            return None
        if abs(determinant(m.expand())) != 1:
            return None
    inverses = []
    for m in comps:
        inv = invert_gr_matrix(m)
        if inv is None:
            return None
        inverses.append(inv)
    if not _is_segment_chain_map(b, a, tuple(inverses)):
        return None
    return tuple(inverses)


def solve_chain_isomorphism(tail: ChainComplex, head: ChainComplex, budget: int = 64):
    """Search for mutually inverse chain isomorphisms tail -> head.

    The chain maps tail -> head form an integer lattice; unit-like
    isomorphisms are short lattice vectors, so the basis is LLL-reduced and
    candidates are tried shortest first (the identity first of all), then
    short pair combinations, then small seeded-random combinations, up to
    ``budget`` invertibility trials.  Returns a ChainIsoPair or None; None
    means the search failed, not that no isomorphism exists.
    """
    if tail.group != head.group or tail.ranks != head.ranks:
        raise ValueError("segments must share the group and the per-degree ranks")
    if tail.top_degree != 2 or head.top_degree != 2:
        raise ValueError("segments must be 3-term complexes")

    G = tail.group
    tried = 0

    def attempt(comps):
        nonlocal tried
        if tried >= budget:
            return None
        tried += 1
        if not _is_segment_chain_map(tail, head, comps):
            return None
        inv = _try_invert_triple(tail, head, comps)
        if inv is None:
            return None
        return ChainIsoPair(h=tuple(comps), k=inv)

    ident = tuple(GRMatrix.identity(G, r) for r in tail.ranks)
    found = attempt(ident)
    if found:
        return found

    vectors = _chain_map_lattice(tail, head)
    if not vectors:
        return None
    red = lll_reduce(vectors)

    # Babai's nearest lattice point to unit-diagonal seeds: conjugations by
    # recorded basis units sit a short distance from such a seed
    from zgdual.group_core import GroupRingElement

    seeds = [ident]
    for g in range(G.order):
        for sign in (1, -1):
            e = GroupRingElement.basis(G, g).scale(sign)
            seeds.append(tuple(GRMatrix.scalar(e, r) for r in tail.ranks))
    seen = set()
    for seed in seeds:
        if tried >= budget:
            return None
        vec = babai_nearest(red, _flatten_triple(tail, head, seed))
        key = tuple(vec)
        if key in seen or not any(vec):
            continue
        seen.add(key)
        found = attempt(_unflatten_triple(tail, head, vec))
        if found:
            return found

    by_norm = sorted(red.basis, key=lambda v: sum(x * x for x in v))
    candidates = []
    for v in by_norm:
        candidates.append(v)
        candidates.append([-x for x in v])
    shortest = by_norm[:12]
    for i in range(len(shortest)):
        for j in range(i + 1, len(shortest)):
            vi, vj = shortest[i], shortest[j]
            candidates.append([x + y for x, y in zip(vi, vj)])
            candidates.append([x - y for x, y in zip(vi, vj)])
    for vec in candidates:
        if tried >= budget:
            return None
        found = attempt(_unflatten_triple(tail, head, vec))
        if found:
            return found

    rng = random.Random(1729)
    while tried < budget:
        vec = [0] * len(by_norm[0])
        for v in by_norm[:8]:
            w = rng.choice((-1, 0, 0, 1))
            if w:
                vec = [x + w * y for x, y in zip(vec, v)]
        found = attempt(_unflatten_triple(tail, head, vec))
        if found:
            return found
    return None


@dataclass(frozen=True)
class AssembledDualForm:
    complex: ChainComplex
    conjugation: ChainMap  # stage-6 complex -> assembled dual form
    view: DualFormView


def assemble_dual_form(C6: ChainComplex, iso: ChainIsoPair) -> AssembledDualForm:
    """Conjugate a stage-6 complex into honest dual form.

    ``iso`` must be a pair of mutually inverse chain isomorphisms from the
    tail of C6 to the dual of its head.  The new middle differential is
    boundary(3) composed with the dual of the inverse's middle component;
    the outer differentials become exact mirror duals.
    """
    if C6.top_degree != 5:
        raise ValueError("assembly requires a length-6 complex")
    tail = tail_segment(C6)
    head = dual_head_segment(C6)
    if tail.ranks != head.ranks:
        raise ValueError("tail and dual head ranks disagree; run the stage-6 pipeline first")
    if not _is_segment_chain_map(tail, head, iso.h) or not _is_segment_chain_map(head, tail, iso.k):
        raise ValueError("iso is not a pair of chain maps between the tail and the dual head")
    for h_i, k_i in zip(iso.h, iso.k):
        if k_i @ h_i != GRMatrix.identity(C6.group, h_i.cols) or h_i @ k_i != GRMatrix.identity(
            C6.group, h_i.rows
        ):
            raise ValueError("iso components are not mutually inverse")

    G = C6.group
    d1 = C6.boundary(1)
    d2 = C6.boundary(2)
    d3 = C6.boundary(3) @ iso.k[2].dual()
    ranks = C6.ranks[:3] + (C6.ranks[2], C6.ranks[1], C6.ranks[0])

    top = None
    if C6.top_generator is not None:
        h0_dual_aug = iso.h[0].dual().augmented()
        top = tuple(
            sum(h0_dual_aug.entries[i][j] * C6.top_generator[j] for j in range(h0_dual_aug.cols))
            for i in range(h0_dual_aug.rows)
        )
        if gcd(*top, 0) != 1:
            top = None

    assembled = ChainComplex(
        G,
        ranks,
        (d1, d2, d3, d2.dual(), d1.dual()),
        top_generator=top,
        bottom_generator=C6.bottom_generator,
    )
    if not validate_complex(assembled).ok:
        raise ValueError("assembled complex has nonzero compositions; iso was not a chain isomorphism")

    conj = ChainMap(
        C6,
        assembled,
        (
            GRMatrix.identity(G, C6.ranks[0]),
            GRMatrix.identity(G, C6.ranks[1]),
            GRMatrix.identity(G, C6.ranks[2]),
            iso.h[2].dual(),
            iso.h[1].dual(),
            iso.h[0].dual(),
        ),
    )
    if not is_chain_map(conj).is_chain_map:
        raise ValueError("conjugation by iso does not commute with the differentials")
    view = recognize_dual_form(assembled)
    if view is None:
        raise ValueError("assembled complex failed dual-form recognition")
    return AssembledDualForm(complex=assembled, conjugation=conj, view=view)
