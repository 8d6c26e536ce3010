"""Chain complexes of free Z[G]-modules, chain maps, and homotopies.

A complex stores ranks by ascending degree and the boundary maps
boundary(i): F_i -> F_{i-1}.  Length-6 complexes (degrees 5..0) model
algebraic 5-complexes: exact at degrees 4 and 1, augmented ends isomorphic
to Z (with trivial G-action), Euler characteristic 0.

The two augmented-end identifications are carried as small integer
*generator certificates* when known:

* ``bottom_generator`` b: the map F_0 -> Z sending a column x to
  sum_j b[j] * augmentation(x_j); it must kill im(boundary(1)).
* ``top_generator`` m: the element (m[0]*Sigma, ..., m[r-1]*Sigma) of the
  top module, a G-fixed generator of ker(boundary(top)).

Homology is available for two coefficient systems: "integral" expands each
boundary map to its integer matrix on Z-bases (homology of the universal
cover), "trivial" applies the augmentation entrywise (homology of the base).
Augmented ends are never included: degree 0 is a cokernel, the top degree a
kernel, exactly as for the raw complex.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import gcd

from zgdual.group_core import FiniteGroup
from zgdual.gr_linalg import GRMatrix
from zgdual.int_linalg import (
    AbelianGroupInfo,
    IntegerMatrix,
    homology_pair,
    kernel_basis,
    smith_normal_form,
)

COEFFS = ("integral", "trivial")


@dataclass(frozen=True)
class ChainComplex:
    """Free Z[G]-complex; differentials[i] is boundary(i+1): F_{i+1} -> F_i."""

    group: FiniteGroup
    ranks: tuple[int, ...]
    differentials: tuple[GRMatrix, ...]
    top_generator: tuple[int, ...] | None = None
    bottom_generator: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ValueError("need exactly one differential per adjacent pair of degrees")
        for i, d in enumerate(self.differentials):
            if d.group != self.group:
                raise ValueError(f"differential {i + 1} lives over a different group")
            if (d.rows, d.cols) != (self.ranks[i], self.ranks[i + 1]):
                raise ValueError(
                    f"boundary({i + 1}) has shape {d.rows}x{d.cols}, "
                    f"expected {self.ranks[i]}x{self.ranks[i + 1]}"
                )
        if self.top_generator is not None and len(self.top_generator) != self.ranks[-1]:
            raise ValueError("top generator length must equal the top rank")
        if self.bottom_generator is not None and len(self.bottom_generator) != self.ranks[0]:
            raise ValueError("bottom generator length must equal the degree-0 rank")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, i: int) -> GRMatrix:
        """The differential F_i -> F_{i-1}, for 1 <= i <= top_degree."""
        if not 1 <= i <= self.top_degree:
            raise ValueError(f"no boundary map at degree {i}")
        return self.differentials[i - 1]

    def with_generators(self, top, bottom) -> ChainComplex:
        return replace(
            self,
            top_generator=None if top is None else tuple(top),
            bottom_generator=None if bottom is None else tuple(bottom),
        )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_complex; failures carry the offending degree."""

    shape_ok: bool
    compositions: tuple[tuple[int, bool], ...]  # (middle degree, boundary.boundary == 0)
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.shape_ok and all(flag for _, flag in self.compositions)


def validate_complex(C: ChainComplex) -> ValidationReport:
    """Check d.d == 0 at every internal degree (shapes hold by construction)."""
    comps = []
    failures = []
    for i in range(1, C.top_degree):
        prod = C.boundary(i) @ C.boundary(i + 1)
        ok = prod.is_zero
        comps.append((i, ok))
        if not ok:
            failures.append(f"boundary({i}) . boundary({i + 1}) is nonzero at degree {i}")
    return ValidationReport(shape_ok=True, compositions=tuple(comps), failures=tuple(failures))


def euler_characteristic(C: ChainComplex) -> int:
    """Alternating sum of Z-ranks: sum (-1)^i * ranks[i] * |G|."""
    sign = 1
    total = 0
    for r in C.ranks:
        total += sign * r * C.group.order
        sign = -sign
    return total


def dualize_complex(C: ChainComplex) -> ChainComplex:
    """Reverse the grading and replace each boundary by its dual.  No signs.

    The generator certificates swap roles: the dual of the degree-0
    augmentation becomes the top kernel generator and vice versa.
    """
    T = C.top_degree
    diffs = tuple(C.boundary(T + 1 - i).dual() for i in range(1, T + 1))
    return ChainComplex(
        group=C.group,
        ranks=tuple(reversed(C.ranks)),
        differentials=diffs,
        top_generator=C.bottom_generator,
        bottom_generator=C.top_generator,
    )


# -- integer matrices of a complex ------------------------------------


def _degree_matrices(C: ChainComplex, degree: int, coefficients: str):
    """(incoming, outgoing) integer matrices at ``degree``; ends are empty maps."""
    if coefficients not in COEFFS:
        raise ValueError(f"coefficients must be one of {COEFFS}")
    if not 0 <= degree <= C.top_degree:
        raise ValueError(f"degree {degree} out of range 0..{C.top_degree}")
    scale = C.group.order if coefficients == "integral" else 1

    def mat(i):
        d = C.boundary(i)
        return d.expand() if coefficients == "integral" else d.augmented()

    n_here = C.ranks[degree] * scale
    if degree < C.top_degree:
        incoming = mat(degree + 1)
    else:
        incoming = IntegerMatrix(n_here, 0, tuple(() for _ in range(n_here)))
    if degree > 0:
        outgoing = mat(degree)
    else:
        outgoing = IntegerMatrix(0, n_here, ())
    return incoming, outgoing


def homology(C: ChainComplex, degree: int, coefficients: str = "integral") -> AbelianGroupInfo:
    incoming, outgoing = _degree_matrices(C, degree, coefficients)
    return homology_pair(incoming, outgoing)


def cohomology(C: ChainComplex, degree: int, coefficients: str = "integral") -> AbelianGroupInfo:
    """Homology of the dual complex at the mirrored spot.

    The dual complex is regraded top-for-bottom, so the classical degree-i
    cochain position sits at degree top-i of dualize_complex(C).
    """
    if not 0 <= degree <= C.top_degree:
        raise ValueError(f"degree {degree} out of range 0..{C.top_degree}")
    return homology(dualize_complex(C), C.top_degree - degree, coefficients)


# -- augmented ends ----------------------------------------------------


@dataclass(frozen=True)
class EndReport:
    """One augmented end: is the (co)kernel Z, with trivial G-action?"""

    group_info: AbelianGroupInfo
    is_z: bool
    trivial_action: bool
    generator: tuple[int, ...] | None  # per-basis-element integers, sign-normalized
    certificate_valid: bool | None  # None when the complex carries no certificate

    @property
    def ok(self) -> bool:
        return self.is_z and self.trivial_action and self.certificate_valid is not False


def _normalize_sign(vec):
    for v in vec:
        if v:
            return tuple(vec) if v > 0 else tuple(-x for x in vec)
    return tuple(vec)


def _blocks_constant(vec, rank, N):
    """Per-block values when vec is constant on each length-N block, else None.

    Right multiplication by g sends Z-coordinate (j, a) to (j, a*g) and acts
    transitively on each block, so block-constancy is exactly G-invariance of
    the vector (or functional) -- the trivial-action condition on the ends.
    """
    out = []
    for j in range(rank):
        block = vec[j * N : (j + 1) * N]
        if any(v != block[0] for v in block):
            return None
        out.append(block[0])
    return tuple(out)


def bottom_end_report(C: ChainComplex) -> EndReport:
    """coker(boundary(1)) with its G-action; derives or validates the certificate."""
    G = C.group
    N = G.order
    r0 = C.ranks[0]
    n0 = r0 * N
    if C.top_degree >= 1:
        E = C.boundary(1).expand()
    else:
        E = IntegerMatrix(n0, 0, tuple(() for _ in range(n0)))
    zero_out = IntegerMatrix(0, n0, ())
    info = homology_pair(E, zero_out)
    is_z = info == AbelianGroupInfo.free(1)

    generator = None
    trivial = False
    if is_z:
        snf = smith_normal_form(E)
        w = list(snf.U.entries[snf.rank])
        b = _blocks_constant(w, r0, N)
        trivial = b is not None
        if trivial:
            generator = _normalize_sign(b)

    cert_valid = None
    if C.bottom_generator is not None:
        b = C.bottom_generator
        cert_valid = gcd(*b, 0) == 1 if b else False
        if C.top_degree >= 1 and cert_valid:
            aug = C.boundary(1).augmented()
            cert_valid = all(
                sum(b[i] * aug.entries[i][k] for i in range(r0)) == 0 for k in range(aug.cols)
            )
        if cert_valid and is_z:
            generator = b
    return EndReport(info, is_z, trivial, generator, cert_valid)


def top_end_report(C: ChainComplex) -> EndReport:
    """ker(boundary(top)) with its G-action; derives or validates the certificate."""
    G = C.group
    N = G.order
    T = C.top_degree
    rt = C.ranks[T]
    nt = rt * N
    if T >= 1:
        E = C.boundary(T).expand()
    else:
        E = IntegerMatrix(0, nt, ())
    K = kernel_basis(E)
    info = AbelianGroupInfo.free(K.cols)
    is_z = K.cols == 1

    generator = None
    trivial = False
    if is_z:
        u = [K.entries[i][0] for i in range(nt)]
        m = _blocks_constant(u, rt, N)
        trivial = m is not None
        if trivial:
            generator = _normalize_sign(m)

    cert_valid = None
    if C.top_generator is not None:
        m = C.top_generator
        cert_valid = gcd(*m, 0) == 1 if m else False
        if T >= 1 and cert_valid:
            aug = C.boundary(T).augmented()
            cert_valid = all(
                sum(aug.entries[i][j] * m[j] for j in range(rt)) == 0 for i in range(aug.rows)
            )
        if cert_valid and is_z:
            generator = m
    return EndReport(info, is_z, trivial, generator, cert_valid)


@dataclass(frozen=True)
class FiveComplexReport:
    """Membership report for the algebraic 5-complex conditions."""

    valid: bool
    length_ok: bool
    exact_at_1: bool
    exact_at_4: bool
    bottom: EndReport | None
    top: EndReport | None
    euler: int

    @property
    def is_member(self) -> bool:
        return (
            self.valid
            and self.length_ok
            and self.exact_at_1
            and self.exact_at_4
            and self.bottom is not None
            and self.bottom.ok
            and self.top is not None
            and self.top.ok
            and self.euler == 0
        )


def five_complex_report(C: ChainComplex) -> FiveComplexReport:
    """Check the algebraic 5-complex conditions on a length-6 complex.

    Exactness at degrees 4 and 1 is integral homology vanishing there; the
    ends must be Z with trivial G-action; the Euler characteristic must be 0.
    """
    length_ok = C.top_degree == 5
    valid = validate_complex(C).ok
    if not (length_ok and valid):
        return FiveComplexReport(valid, length_ok, False, False, None, None, euler_characteristic(C))
    exact1 = homology(C, 1, "integral").is_trivial
    exact4 = homology(C, 4, "integral").is_trivial
    bottom = bottom_end_report(C)
    top = top_end_report(C)
    return FiveComplexReport(valid, length_ok, exact1, exact4, bottom, top, euler_characteristic(C))


def is_five_complex(C: ChainComplex) -> bool:
    return five_complex_report(C).is_member


# -- chain maps and homotopies -----------------------------------------


@dataclass(frozen=True)
class ChainMap:
    """Degreewise components f_i: source_i -> target_i (same grading)."""

    source: ChainComplex
    target: ChainComplex
    components: tuple[GRMatrix, ...]

    def __post_init__(self):
        if self.source.group != self.target.group:
            raise ValueError("source and target complexes over different groups")
        if self.source.top_degree != self.target.top_degree:
            raise ValueError("source and target have different lengths")
        if len(self.components) != len(self.source.ranks):
            raise ValueError("need one component per degree")
        for i, f in enumerate(self.components):
            if (f.rows, f.cols) != (self.target.ranks[i], self.source.ranks[i]):
                raise ValueError(
                    f"component {i} has shape {f.rows}x{f.cols}, expected "
                    f"{self.target.ranks[i]}x{self.source.ranks[i]}"
                )

    def component(self, i: int) -> GRMatrix:
        return self.components[i]


def identity_map(C: ChainComplex) -> ChainMap:
    return ChainMap(C, C, tuple(GRMatrix.identity(C.group, r) for r in C.ranks))


def negate_map(f: ChainMap) -> ChainMap:
    return ChainMap(f.source, f.target, tuple(-c for c in f.components))


def compose_maps(outer: ChainMap, inner: ChainMap) -> ChainMap:
    if inner.target != outer.source:
        raise ValueError("maps do not compose: inner target differs from outer source")
    return ChainMap(
        inner.source,
        outer.target,
        tuple(a @ b for a, b in zip(outer.components, inner.components)),
    )


def dual_map(f: ChainMap) -> ChainMap:
    """The dual chain map dualize(target) -> dualize(source)."""
    T = f.source.top_degree
    return ChainMap(
        dualize_complex(f.target),
        dualize_complex(f.source),
        tuple(f.components[T - i].dual() for i in range(T + 1)),
    )


def scalar_diagonal_map(source: ChainComplex, target: ChainComplex, scalars) -> ChainMap:
    """Chain map candidate with components scalar * identity, by degree."""
    comps = []
    for i, s in enumerate(scalars):
        if source.ranks[i] != target.ranks[i]:
            raise ValueError("scalar diagonal needs equal ranks per degree")
        ident = GRMatrix.identity(source.group, source.ranks[i])
        comps.append(-ident if s == -1 else ident if s == 1 else None)
        if comps[-1] is None:
            raise ValueError("scalars must be +1 or -1")
    return ChainMap(source, target, tuple(comps))


def _proportionality(vec, base) -> int | None:
    """The integer s with vec == s * base, if one exists (base nonzero)."""
    pivot = next((i for i, v in enumerate(base) if v), None)
    if pivot is None:
        return None
    if vec[pivot] % base[pivot]:
        return None
    s = vec[pivot] // base[pivot]
    if tuple(vec) != tuple(s * v for v in base):
        return None
    return s


@dataclass(frozen=True)
class ChainMapReport:
    squares: tuple[tuple[int, bool], ...]  # (degree i, commutes at boundary(i))
    bottom_scalar: int | None  # induced map on coker(boundary(1)) = Z
    top_scalar: int | None  # induced map on ker(boundary(top)) = Z
    failures: tuple[str, ...]

    @property
    def is_chain_map(self) -> bool:
        return all(ok for _, ok in self.squares)

    @property
    def end_scalars(self):
        return (self.bottom_scalar, self.top_scalar)


def _end_generators(C: ChainComplex):
    """(top, bottom) certificates, stored or derived; None where unavailable."""
    top = C.top_generator
    bottom = C.bottom_generator
    if top is None:
        rep = top_end_report(C)
        top = rep.generator if rep.ok else None
    if bottom is None:
        rep = bottom_end_report(C)
        bottom = rep.generator if rep.ok else None
    return top, bottom


def is_chain_map(f: ChainMap) -> ChainMapReport:
    """Exact verification of all commuting squares plus the end scalars.

    The bottom scalar x is the integer induced on coker(boundary(1)) = Z,
    the top scalar y the one induced on ker(boundary(top)) = Z; either is
    None when the corresponding end is not certified Z on both sides.
    """
    squares = []
    failures = []
    for i in range(1, f.source.top_degree + 1):
        lhs = f.target.boundary(i) @ f.components[i]
        rhs = f.components[i - 1] @ f.source.boundary(i)
        ok = lhs == rhs
        squares.append((i, ok))
        if not ok:
            failures.append(f"square at boundary({i}) does not commute")

    src_top, src_bottom = _end_generators(f.source)
    tgt_top, tgt_bottom = _end_generators(f.target)

    bottom_scalar = None
    if src_bottom is not None and tgt_bottom is not None:
        aug0 = f.components[0].augmented()
        u = tuple(
            sum(tgt_bottom[i] * aug0.entries[i][j] for i in range(aug0.rows))
            for j in range(aug0.cols)
        )
        bottom_scalar = _proportionality(u, src_bottom)

    top_scalar = None
    if src_top is not None and tgt_top is not None:
        T = f.source.top_degree
        augT = f.components[T].augmented()
        v = tuple(
            sum(augT.entries[i][j] * src_top[j] for j in range(augT.cols))
            for i in range(augT.rows)
        )
        top_scalar = _proportionality(v, tgt_top)

    return ChainMapReport(tuple(squares), bottom_scalar, top_scalar, tuple(failures))


@dataclass(frozen=True)
class ChainHomotopy:
    """Components I_i: source_i -> target_{i+1} between two parallel maps.

    Claims first.components - second.components == d I + I d degreewise.
    """

    first: ChainMap
    second: ChainMap
    components: tuple[GRMatrix, ...]

    def __post_init__(self):
        if (self.first.source, self.first.target) != (self.second.source, self.second.target):
            raise ValueError("homotopy requires maps with equal source and target")
        T = self.first.source.top_degree
        if len(self.components) != T:
            raise ValueError("need one homotopy component per degree below the top")
        for i, h in enumerate(self.components):
            want = (self.first.target.ranks[i + 1], self.first.source.ranks[i])
            if (h.rows, h.cols) != want:
                raise ValueError(f"homotopy component {i} has shape {h.rows}x{h.cols}, expected {want}")


@dataclass(frozen=True)
class HomotopyReport:
    degrees: tuple[tuple[int, bool], ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return all(flag for _, flag in self.degrees)


def verify_homotopy(h: ChainHomotopy) -> HomotopyReport:
    """Exact check of f_i - g_i == boundary(i+1) I_i + I_{i-1} boundary(i)."""
    f, g = h.first, h.second
    src, tgt = f.source, f.target
    T = src.top_degree
    out = []
    failures = []
    for i in range(T + 1):
        delta = f.components[i] - g.components[i]
        acc = GRMatrix.zeros(src.group, tgt.ranks[i], src.ranks[i])
        if i < T:
            acc = acc + tgt.boundary(i + 1) @ h.components[i]
        if i > 0:
            acc = acc + h.components[i - 1] @ src.boundary(i)
        ok = delta == acc
        out.append((i, ok))
        if not ok:
            failures.append(f"homotopy identity fails at degree {i}")
    return HomotopyReport(tuple(out), tuple(failures))
