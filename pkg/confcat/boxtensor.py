"""
The pre-tensor product of spaces over N(Fin).

X box_pre Y is the levelwise pullback of X x Y -> N(Fin) x N(Fin) along the
two outer legs (p1, p2) of N(Boxfin); it lies over N(Fin) through the middle
leg p0. An element of degree r is a triple (x, y, beta) with beta a string in
Boxfin whose outer legs are the references of x and y.
"""

import logging
from collections import defaultdict
from collections.abc import Hashable
from dataclasses import dataclass
from functools import cached_property

from .configcat import (
    ConfigCategory,
    as_points,
    config_action,
    config_discrete,
    config_orbit,
    point_action,
    product_point_action,
    product_points,
)
from .exceptions import BoundsError, CategoryError, SimplicialError
from .fincat import (
    FinCat,
    FinCatFunctor,
    FinCatOverFin,
    FiniteGroup,
    SemidirectCategory,
    comma,
    semidirect,
)
from .finset import BoxMor, BoxObj, boxfin_lift, boxfin_morphisms, boxfin_objects
from .homotopy import CheckResult
from .sspace import (
    DiscreteSimplicialSpace,
    FinNerve,
    NerveSpace,
    ProductSpace,
    PullbackSpace,
    SpaceMap,
    nerve_over_fin,
)

logger = logging.getLogger(__name__)

INTERVAL_NOTE = (
    "interval matching holds vacuously: morphisms of configurations in a "
    "discrete space carry only constant paths"
)


@dataclass(frozen=True)
class BoxBounds:
    k_max: int
    r_max: int
    s_max: int

    def covers(self, other: "BoxBounds") -> bool:
        return self.r_max >= other.r_max and self.s_max >= other.s_max

    def to_dict(self) -> dict:
        return {"k_max": self.k_max, "r_max": self.r_max, "s_max": self.s_max}


class BoxfinCategory(FinCat):
    """Boxfin within bounds; selfic=False gives the surjective variant."""

    def __init__(self, bounds: BoxBounds, selfic: bool = True):
        self.bounds = bounds
        self.selfic = selfic
        self._out: dict[BoxObj, list[BoxMor]] = {}

    @cached_property
    def _objects(self) -> list[BoxObj]:
        return boxfin_objects(self.bounds.k_max, self.bounds.r_max, self.bounds.s_max, self.selfic)

    def objects(self):
        return self._objects

    def morphisms(self):
        return [m for kappa in self._objects for m in self.out_morphisms(kappa)]

    def out_morphisms(self, kappa):
        if kappa not in self._out:
            self._out[kappa] = [
                m for lam in self._objects for m in boxfin_morphisms(kappa, lam)
            ]
        return self._out[kappa]

    def hom(self, kappa, lam):
        return boxfin_morphisms(kappa, lam)

    def src(self, m):
        return m.src

    def dst(self, m):
        return m.dst

    def identity(self, kappa):
        return BoxMor.identity(kappa)

    def compose(self, g, f):
        return g.compose(f)

    def is_identity(self, m):
        return m.is_identity


_LEGS = {
    "p0": (lambda kappa: kappa.k, lambda m: m.a),
    "p1": (lambda kappa: kappa.r, lambda m: m.b),
    "p2": (lambda kappa: kappa.s, lambda m: m.c),
}


def boxfin_over_fin(category: BoxfinCategory, leg: str = "p0") -> FinCatOverFin:
    """Boxfin over Fin through one of its three legs."""
    on_obj, on_mor = _LEGS[leg]
    return FinCatOverFin(category, on_obj, on_mor)


def _leg_string(beta: tuple, leg: str) -> tuple:
    on_obj, on_mor = _LEGS[leg]
    return (on_obj(beta[0]), *(on_mor(m) for m in beta[1:]))


class BoxPreSpace(DiscreteSimplicialSpace):
    """
    Triples (x, y, beta) with p1(beta) = ref(x) and p2(beta) = ref(y),
    referenced to N(Fin up to k_max) by p0(beta).
    """

    def __init__(
        self,
        X: DiscreteSimplicialSpace,
        Y: DiscreteSimplicialSpace,
        bounds: BoxBounds,
        selfic: bool = True,
    ):
        cap = min(X.cap, Y.cap)
        super().__init__(cap, FinNerve(bounds.k_max, cap))
        self.X, self.Y = X, Y
        self.bounds = bounds
        self.selfic = selfic
        self.boxfin = BoxfinCategory(bounds, selfic)
        self.boxfin_nerve = NerveSpace(
            self.boxfin, cap, base=self.base, over=boxfin_over_fin(self.boxfin)
        )

    def _over(self, r: int, betas: list) -> list:
        return [
            (x, y, beta)
            for beta in betas
            for x in self.X.fiber(r, _leg_string(beta, "p1"))
            for y in self.Y.fiber(r, _leg_string(beta, "p2"))
        ]

    def _enumerate(self, r):
        return self._over(r, self.boxfin_nerve.level(r))

    def act(self, op, element):
        x, y, beta = element
        return (self.X.act(op, x), self.Y.act(op, y), self.boxfin_nerve.act(op, beta))

    def ref(self, element):
        return _leg_string(element[2], "p0")

    def fiber(self, r, b):
        return self._over(r, self.boxfin_nerve.fiber(r, b))

    def _over_degenerate(self, ell, beta):
        return self._over(ell, self.boxfin_nerve.over_degenerate(ell, beta))

    def weakly_invertible_edges(self):
        x_edges = set(self.X.weakly_invertible_edges())
        y_edges = set(self.Y.weakly_invertible_edges())
        return [
            e
            for e in self.level(1)
            if e[0] in x_edges and e[1] in y_edges and self.boxfin.is_isomorphism(e[2][1])
        ]

    def as_category_string(self, element: tuple) -> tuple:
        """The same element as a string of the category of triples."""
        x, y, beta = element
        return tuple(zip(x, y, beta, strict=True))

    @cached_property
    def category(self) -> "BoxPreCategory":
        """
        The category of triples whose nerve is this space.

        Raises:
            SimplicialError: unless X and Y are nerves of categories over Fin
        """
        overs = [getattr(space, "over", None) for space in (self.X, self.Y)]
        if None in overs:
            raise SimplicialError("The category of triples needs nerves of categories over Fin")
        return BoxPreCategory(overs[0], overs[1], self.boxfin)

    def as_pullback(self) -> PullbackSpace:
        """The generic levelwise pullback with the same elements, as pairs ((x, y), beta)."""
        product = ProductSpace(self.X, self.Y)
        legs = ProductSpace(
            FinNerve(self.bounds.r_max, self.cap), FinNerve(self.bounds.s_max, self.cap)
        )
        f = SpaceMap(product, legs, lambda pair: (self.X.ref(pair[0]), self.Y.ref(pair[1])))
        g = SpaceMap(
            self.boxfin_nerve,
            legs,
            lambda beta: (_leg_string(beta, "p1"), _leg_string(beta, "p2")),
        )
        return PullbackSpace(f, g, base=self.base, ref=lambda pair: _leg_string(pair[1], "p0"))

    def provenance(self) -> dict:
        return {
            "X": repr(self.X),
            "Y": repr(self.Y),
            "bounds": self.bounds.to_dict(),
            "selfic": self.selfic,
            "boxfin_objects": len(self.boxfin.objects()),
        }

    def to_dict(self, max_degree=None):
        data = super().to_dict(max_degree)
        data["provenance"] = self.provenance()
        return data

    def __repr__(self):
        return f"<BoxPreSpace {self.bounds.to_dict()} cap={self.cap}>"


def _leg_need(X: DiscreteSimplicialSpace) -> int:
    return max((X.ref(x)[0] for x in X.level(0)), default=0)


def box_pre(
    X: DiscreteSimplicialSpace,
    Y: DiscreteSimplicialSpace,
    bounds: BoxBounds | tuple[int, int, int] | None = None,
    selfic: bool = True,
) -> BoxPreSpace:
    """
    The pre-tensor product of X and Y.

    Bounds default to the least ones covering the inputs: r and s are the
    largest sizes referenced by X_0 and Y_0, and k_max = r_max * s_max. A
    smaller k_max is accepted and truncates the result.

    Raises:
        BoundsError: if the given bounds miss a referenced size; minimal_bounds
            holds the least sufficient BoxBounds
    """
    r_need, s_need = _leg_need(X), _leg_need(Y)
    minimal = BoxBounds(r_need * s_need, r_need, s_need)
    if bounds is None:
        bounds = minimal
    else:
        bounds = BoxBounds(*bounds) if isinstance(bounds, tuple) else bounds
        if not bounds.covers(minimal):
            raise BoundsError(
                f"Boxfin bounds {bounds.to_dict()} do not cover the inputs",
                minimal_bounds=minimal,
            )
        if bounds.k_max < minimal.k_max:
            logger.info(f"Boxfin bounds truncate the product at k <= {bounds.k_max}")
    logger.debug(f"box_pre with bounds {bounds.to_dict()}")
    return BoxPreSpace(X, Y, bounds, selfic)


class BoxPreCategory(FinCat):
    """
    Triples (x, y, kappa) with kappa a box whose legs have the sizes of x and
    y; morphisms are triples (f, g, m) with f over m.b and g over m.c.
    """

    def __init__(self, X: FinCatOverFin, Y: FinCatOverFin, boxfin: BoxfinCategory):
        self.X, self.Y, self.boxfin = X, Y, boxfin
        self._out: dict[tuple, list[tuple]] = {}

    @cached_property
    def _objects(self) -> list[tuple]:
        xs, ys = defaultdict(list), defaultdict(list)
        for x in self.X.category.objects():
            xs[self.X.to_fin_obj(x)].append(x)
        for y in self.Y.category.objects():
            ys[self.Y.to_fin_obj(y)].append(y)
        return [
            (x, y, kappa) for kappa in self.boxfin.objects() for x in xs[kappa.r] for y in ys[kappa.s]
        ]

    def objects(self):
        return self._objects

    def morphisms(self):
        return [m for obj in self._objects for m in self.out_morphisms(obj)]

    def out_morphisms(self, obj):
        if obj not in self._out:
            x, y, kappa = obj
            X, Y = self.X, self.Y
            self._out[obj] = [
                (f, g, m)
                for m in self.boxfin.out_morphisms(kappa)
                for f in X.category.out_morphisms(x)
                if X.to_fin_mor(f) == m.b
                for g in Y.category.out_morphisms(y)
                if Y.to_fin_mor(g) == m.c
            ]
        return self._out[obj]

    def src(self, m):
        f, g, box = m
        return (self.X.category.src(f), self.Y.category.src(g), box.src)

    def dst(self, m):
        f, g, box = m
        return (self.X.category.dst(f), self.Y.category.dst(g), box.dst)

    def identity(self, obj):
        x, y, kappa = obj
        return (self.X.category.identity(x), self.Y.category.identity(y), BoxMor.identity(kappa))

    def compose(self, second, first):
        return (
            self.X.category.compose(second[0], first[0]),
            self.Y.category.compose(second[1], first[1]),
            second[2].compose(first[2]),
        )

    def is_identity(self, m):
        return (
            self.X.category.is_identity(m[0])
            and self.Y.category.is_identity(m[1])
            and m[2].is_identity
        )


def category_structure_check(W: BoxPreSpace, cap: int | None = None) -> CheckResult:
    """Levels of W agree with the nerve of its category of triples."""
    top = W.cap if cap is None else min(cap, W.cap)
    N = NerveSpace(W.category, top)
    witnesses, details = [], {}
    for r in range(top + 1):
        ours = {W.as_category_string(w) for w in W.level(r)}
        theirs = set(N.level(r))
        details[r] = len(ours)
        if ours != theirs:
            witnesses.append((r, len(ours ^ theirs)))
    return CheckResult("box_pre_category", not witnesses, witnesses, details)


@dataclass
class ComparisonFunctor:
    """
    Triples (x, y, u) go to the configuration (x * y) u of the product;
    morphisms go to the morphism of configurations over their k-component.
    With an action category as target the group labels are carried along.
    """

    category: BoxPreCategory
    target: FinCatOverFin

    @property
    def orbit(self) -> bool:
        return isinstance(self.target.category, SemidirectCategory)

    def on_obj(self, obj: tuple) -> tuple:
        x, y, kappa = obj
        return tuple((x[kappa.p(i) - 1], y[kappa.q(i) - 1]) for i in range(1, kappa.k + 1))

    def on_mor(self, m: tuple) -> Hashable:
        z, z2 = self.on_obj(self.category.src(m)), self.on_obj(self.category.dst(m))
        if not self.orbit:
            return (z, z2)
        gh = (m[0][1], m[1][1])
        return ((z, self.target.category.action.act_obj(gh, z2)), gh)

    def functor(self) -> FinCatFunctor:
        return FinCatFunctor(self.category, self.target.category, self.on_obj, self.on_mor)

    def check(self) -> list[str]:
        """Functoriality, plus compatibility of references with the k-leg."""
        problems = self.functor().check()
        for m in self.category.morphisms():
            if self.target.to_fin_mor(self.on_mor(m)) != m[2].a:
                problems.append(f"reference of the image of {m!r} is not its k-component")
        return problems

    def notes(self) -> list[str]:
        logger.warning(f"Comparison functor: {INTERVAL_NOTE}")
        return [INTERVAL_NOTE]

    def degree0_injective(self) -> bool:
        images = [self.on_obj(obj) for obj in self.category.objects()]
        return len(set(images)) == len(images)

    def space_map(self, W: BoxPreSpace, Z: DiscreteSimplicialSpace) -> SpaceMap:
        def func(element):
            string = W.as_category_string(element)
            return (self.on_obj(string[0]), *(self.on_mor(m) for m in string[1:]))

        return SpaceMap(W, Z, func)


def _product_target(W: BoxPreSpace) -> FinCatOverFin:
    categories = [W.X.over.category, W.Y.over.category]
    points = []
    for category in categories:
        if isinstance(category, SemidirectCategory):
            category = category.base
        if not isinstance(category, ConfigCategory):
            raise CategoryError("The comparison needs configuration categories as inputs")
        points.append(category.points)
    return config_discrete(product_points(*points))


def comparison_functor(W: BoxPreSpace, target: FinCatOverFin | None = None) -> ComparisonFunctor:
    """The comparison to the configuration category of the product of point sets."""
    return ComparisonFunctor(W.category, target or _product_target(W))


def comma_membership(
    w: tuple, u: tuple, X: FinCatOverFin, Y: FinCatOverFin
) -> bool:
    """
    Whether the degree-0 element u of X/x box_pre Y/y lies in W/w, i.e. the
    box of u lifts to the box of w over the references of u's morphisms.

    Raises:
        CategoryError: if u does not lie over the coordinates of w
    """
    (x,), (y,), (lam,) = w
    (hx,), (hy,), (kappa,) = u
    if X.category.dst(hx) != x or Y.category.dst(hy) != y:
        raise CategoryError("u does not lie over the coordinates of w")
    return boxfin_lift(kappa, lam, X.to_fin_mor(hx), Y.to_fin_mor(hy)) is not None


def comma_closure_check(W: BoxPreSpace, w: tuple | None = None) -> CheckResult:
    """
    Membership in W/w is invariant along edges of X/x box_pre Y/y that cover
    an isomorphism on the k-leg. Every degree-0 w is tried unless one is given.
    """
    X, Y = W.X.over, W.Y.over
    vertices = [w] if w is not None else W.level(0)
    witnesses, checked = [], 0
    for vertex in vertices:
        (x,), (y,), _ = vertex
        U = box_pre(
            nerve_over_fin(comma(X, x), 1, fin_bound=W.X.base.t),
            nerve_over_fin(comma(Y, y), 1, fin_bound=W.Y.base.t),
            W.bounds,
            W.selfic,
        )
        for e in U.level(1):
            if not e[2][1].a.is_bijective():
                continue
            checked += 1
            before = comma_membership(vertex, U.face(e, 1, 1), X, Y)
            after = comma_membership(vertex, U.face(e, 1, 0), X, Y)
            if before != after:
                witnesses.append((vertex, e))
    return CheckResult("comma_closure", not witnesses, witnesses, {"edges": checked})


def orbit_target(M, N, G: FiniteGroup, H: FiniteGroup) -> FinCatOverFin:
    """The action category of G x H on the configurations of M x N."""
    M_points, N_points = as_points(M), as_points(N)
    product = config_discrete(product_points(M_points, N_points))
    action = config_action(
        product.category,
        FiniteGroup.direct_product(G, H),
        product_point_action(point_action(M_points), point_action(N_points)),
    )
    return semidirect(product, action)


def box_pre_orbit(
    M,
    N,
    G: FiniteGroup | None = None,
    H: FiniteGroup | None = None,
    bounds: BoxBounds | tuple[int, int, int] | None = None,
    cap: int = 1,
) -> tuple[BoxPreSpace, ComparisonFunctor]:
    """
    box_pre of the two action categories' nerves, with the comparison to the
    action category of G x H on the configurations of M x N.
    """
    C_M, C_N = config_orbit(M, G), config_orbit(N, H)
    W = box_pre(nerve_over_fin(C_M, cap), nerve_over_fin(C_N, cap), bounds)
    target = orbit_target(M, N, C_M.category.group, C_N.category.group)
    return W, comparison_functor(W, target)


def _labels(element: tuple) -> tuple:
    x, y, _beta = element
    return (tuple(m[1] for m in x[1:]), tuple(m[1] for m in y[1:]))


def orbit_fiber_counts(
    W_orbit: BoxPreSpace, W: BoxPreSpace, group_order: int, cap: int | None = None
) -> CheckResult:
    """
    Degree r of the orbit product splits over the group_order^r label tuples,
    each fiber as large as degree r of the plain product.
    """
    top = min(W_orbit.cap, W.cap) if cap is None else cap
    witnesses, details = [], {}
    for r in range(top + 1):
        fibers: dict[tuple, int] = defaultdict(int)
        for element in W_orbit.level(r):
            fibers[_labels(element)] += 1
        plain = len(W.level(r))
        expected_fibers = group_order**r if plain else 0
        details[r] = {"fibers": len(fibers), "plain": plain}
        if len(fibers) != expected_fibers or any(count != plain for count in fibers.values()):
            witnesses.append(r)
    return CheckResult("orbit_fibers", not witnesses, witnesses, details)
