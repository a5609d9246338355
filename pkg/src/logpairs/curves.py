"""Exact resolution of plane-curve germs at rational centers by point blowups.

The germ of a squarefree affine curve at the origin is resolved by iterated
point blowups until the total transform (strict transform plus exceptional
divisors) is a simple normal crossing configuration.  Each blowup center is
recorded as a tree node carrying its multiplicity and its proximity set, the
ancestors whose exceptional divisors pass through it.  Two classical
recursions then produce, for every exceptional divisor, its multiplicity in
the relative canonical divisor (k) and in the total transform of the curve
(v):

    k_i = 1 + sum of k_j over the proximity set of i,
    v_i = m_i + sum of v_j over the proximity set of i.

From the (k, v) table one reads off discrepancies ``k - c*v`` of the pair
(plane, c * curve), the log canonical threshold ``min(1, min (k+1)/v)``, and
per-divisor vanishing-order thresholds defining membership in the three
multiplier-like ideals (round-down, round-up, and the small-perturbation
round-up).

Every center must be rational; a tangent direction that only exists over a
proper extension of Q raises :class:`~logpairs.errors.NonRationalCenterError`
rather than approximating.

Chart bookkeeping keeps exceptional divisors along coordinate axes: after a
blowup, the finite-direction chart is (x, y) -> (x, x*(y + t)) with the new
exceptional divisor at {x = 0}, and the vertical-direction chart is
(x, y) -> (x*y, y) with the new divisor at {y = 0}.  At any center at most
two exceptional divisors pass through, one per axis.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    DepthExceededError,
    InputError,
    NonRationalCenterError,
    ZeroInputError,
)
from .polynomials import Poly2
from .snc import ResolvedPairData, ResolvedRow, SNCPair

PolyLike = Union["AffineCurve", Poly2]


class IdealKind(enum.Enum):
    """The three multiplier-like ideals, ordered H inside J inside I."""

    H = "H"
    J = "J"
    I = "I"


def _as_poly(f: PolyLike) -> Poly2:
    return f.poly if isinstance(f, AffineCurve) else f


def _sympy_xy():
    import sympy

    return sympy, sympy.Symbol("x"), sympy.Symbol("y")


def _is_squarefree(poly: Poly2) -> bool:
    sympy, x, y = _sympy_xy()
    expr = sympy.Add(
        *[
            sympy.Rational(c.numerator, c.denominator) * x**i * y**j
            for (i, j), c in poly.terms.items()
        ]
    )
    g = sympy.gcd(expr, sympy.diff(expr, x))
    g = sympy.gcd(g, sympy.diff(expr, y))
    return sympy.Poly(g, x, y).total_degree() == 0


def _rational_roots(coeffs: list[Fraction]) -> tuple[list[Fraction], bool]:
    """Distinct rational roots of a dense univariate polynomial, sorted.

    Also reports whether the factorization over Q contains an irreducible
    factor of degree at least 2, i.e. roots that are not rational.
    """
    import sympy

    t = sympy.Symbol("t")
    expr = sympy.Add(
        *[sympy.Rational(c.numerator, c.denominator) * t**j for j, c in enumerate(coeffs) if c]
    )
    poly = sympy.Poly(expr, t, domain="QQ")
    if poly.degree() <= 0:
        return [], False
    roots: list[Fraction] = []
    has_irrational = False
    for factor, _mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            lead, const = factor.all_coeffs()
            root = -Fraction(int(const.p), int(const.q)) / Fraction(int(lead.p), int(lead.q))
            roots.append(root)
        elif factor.degree() >= 2:
            has_irrational = True
    return sorted(roots), has_irrational


@dataclass(frozen=True)
class AffineCurve:
    """A reduced affine plane curve: nonzero, nonconstant, squarefree over Q."""

    poly: Poly2

    def __post_init__(self) -> None:
        if self.poly.is_zero:
            raise ZeroInputError("the zero polynomial does not define a curve")
        if self.poly.total_degree() == 0:
            raise InputError("a constant does not define a curve")
        if not _is_squarefree(self.poly):
            raise InputError("curve polynomial must be squarefree over Q")

    @classmethod
    def from_json(cls, data: list) -> "AffineCurve":
        return cls(Poly2.from_json(data))


@dataclass(frozen=True)
class ResolutionNode:
    """One blowup center.

    ``proximate_to`` lists the ancestors whose exceptional divisors pass
    through this center (it always contains the parent).  ``chart`` and
    ``shift`` say how local coordinates at this center arise from the
    parent's: chart "x" is (x, x*(y + shift)), chart "y" is (x*y, y).
    ``local_poly`` is the strict transform of the curve in these
    coordinates, before this center is blown up.  ``axis_x`` and ``axis_y``
    name the exceptional divisors along the two coordinate axes here.
    """

    id: int
    parent: int | None
    proximate_to: frozenset[int]
    mult: int
    chart: str | None
    shift: Fraction | None
    local_poly: Poly2
    axis_x: int | None
    axis_y: int | None


@dataclass(frozen=True)
class ResolutionTree:
    """Blowup centers of a germ at the origin, in creation (parent-first) order.

    ``curve_contacts`` collects the exceptional divisors that the strict
    transform of the curve meets on the final model produced by
    :func:`resolve`; extensions made with :func:`blow_up_point` do not
    refresh it.
    """

    curve: Poly2
    nodes: tuple[ResolutionNode, ...]
    curve_contacts: frozenset[int]

    def node(self, node_id: int) -> ResolutionNode:
        node = self.nodes[node_id - 1]
        if node.id != node_id:
            raise KeyError(node_id)
        return node


@dataclass(frozen=True)
class ValuationData:
    """Per-divisor multiplicities: k in the relative canonical divisor,
    v in the total transform of the curve."""

    k: dict[int, int]
    v: dict[int, int]


@dataclass(frozen=True)
class PullbackOrders:
    """Vanishing orders of an auxiliary polynomial along the tower.

    ``by_divisor`` maps each exceptional divisor to the multiplicity of the
    pulled-back polynomial along it; ``strict`` is the exact power of the
    curve polynomial dividing it.
    """

    by_divisor: dict[int, int]
    strict: int


def multiplicity_at(f: PolyLike, pt: tuple) -> int:
    """Order of the lowest form of f recentred at pt; 0 iff pt is off the curve."""
    poly = _as_poly(f)
    px, py = (Fraction(c) for c in pt)
    return poly.translate(px, py).order()


def resolve(f: PolyLike, max_depth: int = 64) -> ResolutionTree:
    """Resolve the germ at the origin; all centers must be rational.

    Returns the tree of blown-up centers with multiplicities and proximity
    data.  A smooth germ (or a point off the curve) yields an empty tree.
    """
    poly = _as_poly(f)
    if poly.is_zero:
        raise ZeroInputError("cannot resolve the zero polynomial")
    nodes: list[ResolutionNode] = []
    contacts: set[int] = set()

    def visit(
        local: Poly2,
        axis_x: int | None,
        axis_y: int | None,
        parent: int | None,
        chart: str | None,
        shift: Fraction | None,
        depth: int,
    ) -> None:
        m = local.order()
        axes = [a for a in (axis_x, axis_y) if a is not None]
        if m == 1:
            if not axes:
                return
            if len(axes) == 1:
                which = "x" if axis_x is not None else "y"
                if local.contact_order_with_axis(which) == 1:
                    contacts.add(axes[0])
                    return
        if depth > max_depth:
            raise DepthExceededError(f"resolution needs more than {max_depth} blowup levels")
        nid = len(nodes) + 1
        nodes.append(
            ResolutionNode(
                id=nid,
                parent=parent,
                proximate_to=frozenset(axes),
                mult=m,
                chart=chart,
                shift=shift,
                local_poly=local,
                axis_x=axis_x,
                axis_y=axis_y,
            )
        )
        transformed, stripped = local.blowup_x()
        assert stripped == m
        restriction = transformed.on_x_axis_restriction()
        roots, has_irrational = _rational_roots(restriction)
        if has_irrational:
            raise NonRationalCenterError(
                "tangent directions include an irreducible factor of degree >= 2 over Q"
            )
        for t in roots:
            child = transformed.translate(0, t)
            visit(
                child,
                axis_x=nid,
                axis_y=(axis_y if t == 0 else None),
                parent=nid,
                chart="x",
                shift=t,
                depth=depth + 1,
            )
        if len(restriction) - 1 < m:
            child, stripped_y = local.blowup_y()
            assert stripped_y == m
            visit(
                child,
                axis_x=axis_x,
                axis_y=nid,
                parent=nid,
                chart="y",
                shift=None,
                depth=depth + 1,
            )

    if poly.evaluate(0, 0) == 0:
        visit(poly, None, None, None, None, None, depth=1)
    return ResolutionTree(curve=poly, nodes=tuple(nodes), curve_contacts=frozenset(contacts))


def blow_up_point(tree: ResolutionTree, node_id: int, shift: Fraction | int) -> ResolutionTree:
    """Append one extra blowup at the rational point (0, shift) on the
    exceptional divisor of ``node_id``, in that node's post-blowup chart.

    Intended for resolution-independence experiments; the chosen divisor
    must not have been modified by later blowups near that point.  The new
    center may lie off the strict transform, in which case its multiplicity
    is 0.
    """
    shift = Fraction(shift)
    node = tree.node(node_id)
    transformed, _ = node.local_poly.blowup_x(shift)
    prox = {node_id}
    axis_y = None
    if shift == 0 and node.axis_y is not None:
        prox.add(node.axis_y)
        axis_y = node.axis_y
    new = ResolutionNode(
        id=len(tree.nodes) + 1,
        parent=node_id,
        proximate_to=frozenset(prox),
        mult=transformed.order(),
        chart="x",
        shift=shift,
        local_poly=transformed,
        axis_x=node_id,
        axis_y=axis_y,
    )
    return ResolutionTree(
        curve=tree.curve, nodes=tree.nodes + (new,), curve_contacts=tree.curve_contacts
    )


def valuation_data(tree: ResolutionTree) -> ValuationData:
    """Unroll the proximity recursions for k and v over the tree."""
    k: dict[int, int] = {}
    v: dict[int, int] = {}
    for node in tree.nodes:
        k[node.id] = 1 + sum(k[j] for j in node.proximate_to)
        v[node.id] = node.mult + sum(v[j] for j in node.proximate_to)
    return ValuationData(k=k, v=v)


STRICT_ID = "C"


def pair_discrepancies(tree: ResolutionTree, vd: ValuationData, c: Fraction | int) -> ResolvedPairData:
    """Discrepancy table of (plane, c * curve) on the resolved model.

    Each exceptional divisor contributes a = k - c*v and b = c*v; the strict
    transform of the curve contributes a = -c and b = c.
    """
    c = Fraction(c)
    if c < 0:
        raise InputError(f"boundary coefficient must be nonnegative, got {c}")
    rows = [
        ResolvedRow(id=f"E{node.id}", a=vd.k[node.id] - c * vd.v[node.id], b=c * vd.v[node.id], exceptional=True)
        for node in tree.nodes
    ]
    rows.append(ResolvedRow(id=STRICT_ID, a=-c, b=c, exceptional=False))
    return ResolvedPairData(rows=tuple(rows))


def tree_lct(tree: ResolutionTree) -> Fraction:
    """Log canonical threshold from an already computed tree."""
    vd = valuation_data(tree)
    best = Fraction(1)
    for node in tree.nodes:
        cand = Fraction(vd.k[node.id] + 1, vd.v[node.id])
        if cand < best:
            best = cand
    return best


def lct(f: PolyLike, max_depth: int = 64) -> Fraction:
    """Largest c with (plane, c * curve) Kawamata log terminal at the origin."""
    return tree_lct(resolve(f, max_depth=max_depth))


def ord_along(tree: ResolutionTree, g: Poly2) -> PullbackOrders:
    """Vanishing orders of g along every exceptional divisor of the tower,
    plus the exact power of the curve polynomial dividing g.

    Replays the recorded chart transformations on g: the multiplicity of the
    strict transform of g at each center feeds the same recursion that
    produces v for the curve itself.
    """
    if g.is_zero:
        raise ZeroInputError("cannot pull back the zero polynomial")
    local: dict[int, Poly2] = {}
    mult_g: dict[int, int] = {}
    for node in tree.nodes:
        if node.parent is None:
            gi = g
        elif node.chart == "x":
            gi, _ = local[node.parent].blowup_x(node.shift)
        else:
            gi, _ = local[node.parent].blowup_y()
        local[node.id] = gi
        mult_g[node.id] = gi.order()
    w: dict[int, int] = {}
    for node in tree.nodes:
        w[node.id] = mult_g[node.id] + sum(w[j] for j in node.proximate_to)
    strict = 0
    rem = g
    curve = tree.curve
    while True:
        quotient = rem.divide_exact(curve)
        if quotient is None:
            break
        rem = quotient
        strict += 1
    return PullbackOrders(by_divisor=w, strict=strict)


def ideal_threshold(kind: IdealKind, a: Fraction, b: Fraction) -> int:
    """Required vanishing order along a divisor with discrepancy a and
    pullback multiplicity b.

    Round-down ideal: -floor(a).  Round-up ideal: -ceil(a).  The perturbed
    ideal takes the round-up threshold after replacing a by a + eps*b for
    vanishing eps > 0: one less than the round-up value when a is an integer
    actually perturbed (b > 0), the round-up value otherwise.
    """
    if kind is IdealKind.H:
        return -math.floor(a)
    if kind is IdealKind.J:
        return -math.ceil(a)
    if b > 0 and a.denominator == 1:
        return -int(a) - 1
    return -math.ceil(a)


def tree_ideal_member(
    tree: ResolutionTree,
    vd: ValuationData,
    c: Fraction | int,
    g: Poly2,
    kind: IdealKind,
) -> bool:
    """Membership of g in the chosen ideal of (plane, c * curve) at the origin."""
    c = Fraction(c)
    if c < 0:
        raise InputError(f"boundary coefficient must be nonnegative, got {c}")
    orders = ord_along(tree, g)
    for node in tree.nodes:
        a = vd.k[node.id] - c * vd.v[node.id]
        b = c * vd.v[node.id]
        if orders.by_divisor[node.id] < ideal_threshold(kind, a, b):
            return False
    return orders.strict >= ideal_threshold(kind, Fraction(-c), Fraction(c))


def ideal_member(f: PolyLike, c: Fraction | int, g: Poly2, kind: IdealKind, max_depth: int = 64) -> bool:
    """Resolve the curve and test membership of g; see :func:`tree_ideal_member`."""
    tree = resolve(f, max_depth=max_depth)
    return tree_ideal_member(tree, valuation_data(tree), c, g, kind)


def dual_graph_pair(tree: ResolutionTree, data: ResolvedPairData) -> SNCPair:
    """SNC configuration of the resolved model: coefficients -a, edges from
    proximity (two exceptional divisors still meet unless a later center was
    proximate to both) and the recorded strict-transform contacts.

    Valid for trees as produced by :func:`resolve`.
    """
    edges: set[tuple[str, str]] = set()
    for node in tree.nodes:
        for anc in node.proximate_to:
            separated = any(
                {anc, node.id} <= other.proximate_to for other in tree.nodes if other.id > node.id
            )
            if not separated:
                edges.add((f"E{anc}", f"E{node.id}"))
    for anc in tree.curve_contacts:
        edges.add((f"E{anc}", STRICT_ID))
    return SNCPair.build(
        divisors=[(row.id, -row.a) for row in data.rows],
        edges=edges,
    )
