"""The lens-space family L(n;1,1) over Z[C_n], fully verified.

The chain complex of the universal cover is the rank-(1,...,1) dual-form
complex with multiplications

    (1-t^-1), Sigma, (1-t^-1), Sigma, (1-t)     (degrees 5 down to 1)

and the duality equivalence phi: dual(A) -> A has components
(-1, -1, -t, 1, 1, 1) read from degree 5 down to degree 0.

For n = 4k+1 the family is anti-self-dual: the unit
beta = sum_{r=-k+1}^{k} t^r - sum_{r=k+2}^{3k} t^r rescales the middle
module so that the form becomes alpha = t^{k+1}+t^k-t^{-k}-t^{-(k+1)},
which is antisymmetric (involuting alpha negates it), and the conjugated
duality equivalence is homotopic to a +-1 diagonal via a single homotopy
component x with alpha x = beta - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from zgdual.complexes import (
    ChainComplex,
    ChainHomotopy,
    ChainMap,
    compose_maps,
    dual_map,
    dualize_complex,
    is_chain_map,
    scalar_diagonal_map,
    verify_homotopy,
)
from zgdual.group_core import FiniteGroup, GroupRingElement, cyclic_group, norm_element
from zgdual.gr_linalg import GRMatrix, invert_gr_matrix, solve_gr_linear


def _t_power(G: FiniteGroup, e: int) -> GroupRingElement:
    return GroupRingElement.basis(G, e % G.order)


def _poly(G: FiniteGroup, terms) -> GroupRingElement:
    """Sum of coeff * t^exponent terms over Z[C_n]."""
    acc = GroupRingElement.zero(G)
    for coeff, e in terms:
        acc = acc + _t_power(G, e).scale(coeff)
    return acc


def lens_complex(n: int) -> ChainComplex:
    """The dual-form complex of L(n;1,1); validated, with end certificates."""
    if n < 2:
        raise ValueError("lens spaces need n >= 2")
    G = cyclic_group(n)
    one_minus_t = _poly(G, [(1, 0), (-1, 1)])
    one_minus_tinv = _poly(G, [(1, 0), (-1, -1)])
    sigma = norm_element(G)
    m = GRMatrix.one_by_one
    return ChainComplex(
        group=G,
        ranks=(1, 1, 1, 1, 1, 1),
        differentials=(
            m(one_minus_t),
            m(sigma),
            m(one_minus_tinv),
            m(sigma),
            m(one_minus_tinv),
        ),
        top_generator=(1,),
        bottom_generator=(1,),
    )


def lens_duality_map(n: int) -> ChainMap:
    """The duality equivalence dual(A) -> A with components (-1,-1,-t,1,1,1).

    Its end scalars are (1, -1): +1 on the degree-0 cokernel, -1 on the
    degree-5 kernel.
    """
    A = lens_complex(n)
    G = A.group
    one = GRMatrix.identity(G, 1)
    minus_t = GRMatrix.one_by_one(_t_power(G, 1).scale(-1))
    return ChainMap(
        source=dualize_complex(A),
        target=A,
        components=(one, one, one, minus_t, -one, -one),
    )


@dataclass(frozen=True)
class AsdUnit:
    alpha: GroupRingElement
    beta: GroupRingElement
    beta_inv: GroupRingElement


def asd_unit(n: int) -> AsdUnit:
    """The unit beta and antisymmetric form alpha for n = 4k+1.

    All defining identities are verified exactly here:
    beta (1 - t^-1) == alpha, Sigma beta == Sigma,
    alpha (t^{1+k} + t^{1-k}) == t^2 - 1, and beta beta_inv == 1.
    """
    if n < 5 or n % 4 != 1:
        raise ValueError(f"anti-self-dual units exist for n = 4k+1, k >= 1; got n={n}")
    k = (n - 1) // 4
    G = cyclic_group(n)
    alpha = _poly(G, [(1, k + 1), (1, k), (-1, -k), (-1, -(k + 1))])
    beta = _poly(G, [(1, r) for r in range(-k + 1, k + 1)] + [(-1, r) for r in range(k + 2, 3 * k + 1)])

    one_minus_tinv = _poly(G, [(1, 0), (-1, -1)])
    sigma = norm_element(G)
    if beta * one_minus_tinv != alpha:
        raise AssertionError("beta (1 - t^-1) != alpha")
    if sigma * beta != sigma:
        raise AssertionError("Sigma beta != Sigma")
    two_shift = _t_power(G, 1 + k) + _t_power(G, 1 - k)
    if alpha * two_shift != _poly(G, [(1, 2), (-1, 0)]):
        raise AssertionError("alpha (t^{1+k} + t^{1-k}) != t^2 - 1")

    beta_inv = invert_gr_matrix(GRMatrix.one_by_one(beta))
    if beta_inv is None:
        raise AssertionError("beta is not a unit")
    return AsdUnit(alpha=alpha, beta=beta, beta_inv=beta_inv.entries[0][0])


@dataclass(frozen=True)
class AsdTransform:
    """The rescaling f: A -> A' plus the verified anti-self-duality data.

    ``diagonal_sign`` records which +-1 diagonal the conjugated duality
    equivalence f phi f* is homotopic to: +1 for (1,1,1,-1,-1,-1) in
    ascending degrees, -1 for its global negation.
    """

    n: int
    complex: ChainComplex  # A' with middle differential x alpha
    f: ChainMap  # A -> A'
    x: GroupRingElement  # the single homotopy component, alpha x = beta - 1
    homotopy: ChainHomotopy
    diagonal_sign: int
    unit: AsdUnit


def lens_asd_transform(n: int) -> AsdTransform:
    """Construct and verify the anti-self-dual representative for n = 4k+1."""
    unit = asd_unit(n)
    A = lens_complex(n)
    G = A.group
    m = GRMatrix.one_by_one

    aprime = ChainComplex(
        group=G,
        ranks=A.ranks,
        differentials=(
            A.boundary(1),
            A.boundary(2),
            m(unit.alpha),
            A.boundary(4),
            A.boundary(5),
        ),
        top_generator=A.top_generator,
        bottom_generator=A.bottom_generator,
    )

    one = GRMatrix.identity(G, 1)
    f = ChainMap(A, aprime, (one, one, m(unit.beta), one, one, one))
    if not is_chain_map(f).is_chain_map:
        raise AssertionError("the rescaling by beta is not a chain map")

    x_mat = solve_gr_linear(m(unit.alpha), m(unit.beta - GroupRingElement.one(G)))
    if x_mat is None:
        raise AssertionError("alpha x = beta - 1 has no solution")
    x = x_mat.entries[0][0]

    phi = lens_duality_map(n)
    conjugated = compose_maps(f, compose_maps(phi, dual_map(f)))

    zero_comp = [GRMatrix.zeros(G, 1, 1)] * 5
    zero_comp[2] = m(x)
    components = tuple(zero_comp)
    source = conjugated.source
    target = conjugated.target
    for sign in (1, -1):
        scalars = tuple(sign * s for s in (1, 1, 1, -1, -1, -1))
        diagonal = scalar_diagonal_map(source, target, scalars)
        homotopy = ChainHomotopy(first=conjugated, second=diagonal, components=components)
        if verify_homotopy(homotopy).ok:
            return AsdTransform(
                n=n,
                complex=aprime,
                f=f,
                x=x,
                homotopy=homotopy,
                diagonal_sign=sign,
                unit=unit,
            )
    raise AssertionError("f phi f* is not homotopic to a +-1 diagonal via the single component x")


@dataclass(frozen=True)
class LensInstance:
    """A lens complex with its duality map and optional anti-self-dual data."""

    n: int
    complex: ChainComplex
    phi: ChainMap
    k: int | None = None
    alpha: GroupRingElement | None = None
    beta: GroupRingElement | None = None
    beta_inv: GroupRingElement | None = None
    x: GroupRingElement | None = None
    asd: AsdTransform | None = None


def lens_instance(n: int, with_asd: bool | None = None) -> LensInstance:
    """Build L(n;1,1); include the anti-self-dual transform when n = 4k+1.

    ``with_asd=None`` means "when available"; True insists (and raises for
    other n); False skips the construction.
    """
    A = lens_complex(n)
    phi = lens_duality_map(n)
    eligible = n % 4 == 1 and n >= 5
    if with_asd is True and not eligible:
        raise ValueError(f"n={n} is not of the form 4k+1")
    if with_asd is False or not eligible:
        return LensInstance(n=n, complex=A, phi=phi)
    asd = lens_asd_transform(n)
    return LensInstance(
        n=n,
        complex=A,
        phi=phi,
        k=(n - 1) // 4,
        alpha=asd.unit.alpha,
        beta=asd.unit.beta,
        beta_inv=asd.unit.beta_inv,
        x=asd.x,
        asd=asd,
    )
