"""
Configuration categories of finite discrete spaces.

For a discrete space M every path is constant, so a morphism from a
configuration x: k -> M to y: l -> M is just a map f: k -> l with x = y f.
Since y is injective, f exists iff the image of x lies in the image of y, and
it is then unique; the category is a preorder on injections and morphisms are
labelled by their endpoints.
"""

import itertools
import logging
import math
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .conservatize import lambda_equivalence_check, lambda_level
from .defaults import get_confcat_setting
from .exceptions import CategoryError
from .fincat import (
    FinCat,
    FinCatFunctor,
    FinCatOverFin,
    FiniteGroup,
    GroupAction,
    comma,
    semidirect,
)
from .finset import FinMap
from .homotopy import PASS, Verdict
from .sspace import nerve_over_fin

logger = logging.getLogger(__name__)


def as_points(M: int | Iterable[Hashable]) -> tuple:
    """Points of a finite discrete space given by its size or its labels."""
    if isinstance(M, int):
        return tuple(range(M))
    return tuple(M)


class ConfigCategory(FinCat):
    """Ordered configurations of distinct points in M."""

    def __init__(self, points: Sequence[Hashable]):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise CategoryError("Configuration points must be distinct")

    @cached_property
    def _objects(self) -> list[tuple]:
        return [
            x
            for k in range(len(self.points) + 1)
            for x in itertools.permutations(self.points, k)
        ]

    @cached_property
    def _out(self) -> dict[tuple, list[tuple]]:
        images = {x: frozenset(x) for x in self._objects}
        return {
            x: [(x, y) for y in self._objects if images[x] <= images[y]]
            for x in self._objects
        }

    def objects(self):
        return self._objects

    def morphisms(self):
        return [m for x in self._objects for m in self._out[x]]

    def out_morphisms(self, x):
        return self._out[x]

    def src(self, m):
        return m[0]

    def dst(self, m):
        return m[1]

    def identity(self, x):
        return (x, x)

    def compose(self, g, f):
        if f[1] != g[0]:
            raise CategoryError(f"{g!r} and {f!r} are not composable")
        return (f[0], g[1])

    def is_identity(self, m):
        return m[0] == m[1]

    def inverse(self, m):
        x, y = m
        return (y, x) if len(x) == len(y) else None

    @staticmethod
    def fin_map(m) -> FinMap:
        x, y = m
        position = {p: i for i, p in enumerate(y, start=1)}
        return FinMap(len(x), len(y), tuple(position[p] for p in x))


def config_discrete(M: int | Iterable[Hashable]) -> FinCatOverFin:
    """The configuration category of the discrete space M over Fin."""
    category = ConfigCategory(as_points(M))
    return FinCatOverFin(category, len, ConfigCategory.fin_map)


def config_comma(C: FinCatOverFin, x: Hashable) -> FinCatOverFin:
    return comma(C, x)


def config_inclusion(M: Iterable[Hashable], M_prime: Iterable[Hashable]) -> FinCatFunctor:
    """
    The functor induced by an inclusion of point sets.

    Raises:
        CategoryError: if M is not contained in M_prime
    """
    small, large = ConfigCategory(as_points(M)), ConfigCategory(as_points(M_prime))
    if not set(small.points) <= set(large.points):
        raise CategoryError("Point set is not contained in the target point set")
    return FinCatFunctor(small, large, lambda x: x, lambda m: m)


def product_points(M: int | Iterable[Hashable], N: int | Iterable[Hashable]) -> tuple:
    return tuple(itertools.product(as_points(M), as_points(N)))


def permutation_group(generators: Iterable[Sequence[int]], degree: int) -> FiniteGroup:
    """
    Closure of permutation generators on range(degree), bounded by the
    MAX_GROUP_ORDER_FACTOR multiple of degree!.
    """
    factor = get_confcat_setting("MAX_GROUP_ORDER_FACTOR")
    return FiniteGroup.from_permutations(
        generators, degree, max_order=factor * math.factorial(degree)
    )


def point_action(points: Sequence[Hashable]) -> Callable[[tuple, Hashable], Hashable]:
    """Action of 0-based permutation tuples on labelled points."""
    position = {p: i for i, p in enumerate(points)}
    return lambda g, p: points[g[position[p]]]


def product_point_action(
    act_m: Callable[[Hashable, Hashable], Hashable], act_n: Callable[[Hashable, Hashable], Hashable]
) -> Callable[[tuple, tuple], tuple]:
    return lambda gh, pq: (act_m(gh[0], pq[0]), act_n(gh[1], pq[1]))


def config_action(
    category: ConfigCategory, group: FiniteGroup, act_point: Callable[[Hashable, Hashable], Hashable]
) -> GroupAction:
    """Postcomposition action on configurations."""

    def act_obj(g, x):
        return tuple(act_point(g, p) for p in x)

    return GroupAction(
        group,
        category,
        act_obj,
        lambda g, m: (act_obj(g, m[0]), act_obj(g, m[1])),
    )


def config_orbit(
    M: int | Iterable[Hashable],
    G: FiniteGroup | None = None,
    act_point: Callable[[Hashable, Hashable], Hashable] | None = None,
    check: bool = True,
) -> FinCatOverFin:
    """
    The action category of G on the configuration category of M.

    G defaults to the trivial group; act_point defaults to 0-based
    permutation tuples acting on the listed points.
    """
    C = config_discrete(M)
    points = C.category.points
    G = G or FiniteGroup.from_permutations([], len(points))
    act_point = act_point or point_action(points)
    return semidirect(C, config_action(C.category, G, act_point), check=check)


@dataclass
class PropertyBetaReport:
    """Per-edge degree-0 verdicts for morphisms over identities of Fin."""

    edges: list[tuple[str, Verdict]] = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def vacuous(self) -> bool:
        return not self.edges

    @property
    def passed(self) -> bool:
        return all(verdict.status == PASS for _, verdict in self.edges)

    def failures(self) -> list[str]:
        return [edge for edge, verdict in self.edges if verdict.status != PASS]

    def to_dict(self) -> dict:
        return {
            "status": "PASS" if self.passed else "FAIL",
            "vacuous": self.vacuous,
            "budget_exhausted": self.budget_exhausted,
            "edges": [{"edge": edge, "verdict": verdict.to_dict()} for edge, verdict in self.edges],
        }


def _postcompose(C: FinCat, f: Hashable) -> Callable[[tuple], tuple]:
    """Stringwise functor A/x -> A/y induced by f: x -> y."""

    def on_string(s: tuple) -> tuple:
        head = C.compose(f, s[0])
        return (head, *((g, C.compose(f, h)) for g, h in s[1:]))

    return on_string


def check_property_beta(
    C: FinCatOverFin,
    edge_budget: int | None = None,
    L: int = 2,
    cap: int = 2,
    probe_degree: int = 1,
) -> PropertyBetaReport:
    """
    For every non-identity morphism f: x -> y over an identity of Fin (up to
    the budget), compare degree-0 Lambda of the comma categories over x and y
    through postcomposition with f.
    """
    budget = edge_budget if edge_budget is not None else get_confcat_setting(
        "PROPERTY_BETA_EDGE_BUDGET"
    )
    category = C.category
    edges = [
        m for m in category.morphisms() if not category.is_identity(m) and C.over_identity(m)
    ]
    report = PropertyBetaReport(budget_exhausted=len(edges) > budget)
    t = C.fin_bound()
    for f in edges[:budget]:
        x, y = category.src(f), category.dst(f)
        A_x = nerve_over_fin(comma(C, x), max(L, cap), fin_bound=t)
        A_y = nerve_over_fin(comma(C, y), max(L, cap), fin_bound=t)
        LL_x = lambda_level(A_x, 0, "flat", L, cap)
        LL_y = lambda_level(A_y, 0, "flat", L, cap)
        verdict = lambda_equivalence_check(LL_x, LL_y, _postcompose(category, f), probe_degree)
        logger.debug(f"Property beta on {f!r}: {verdict.status}")
        report.edges.append((repr(f), verdict))
    if report.vacuous:
        logger.info("Property beta holds vacuously: no non-identity morphisms over identities")
    return report
