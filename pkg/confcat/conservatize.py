"""
Bounded conservatization.

Degree r of Lambda A is the homotopy colimit, over diagrams
[r] -alpha-> [k] <-beta- [l] with beta onto, of the sets A_l x_{B_l} B_k. It
is computed as the nerve of a category of elements over a finite index
category with l <= L; the flat variant also asks alpha to be onto and is the
default. The shriek variant keeps only beta = identity and sits inside the
full one.

Scans over increasing L stand in for the unbounded colimit: pi0 and homology
of each stage are recorded and the scan is STABLE once the last
STABILITY_WINDOW stages agree.
"""

import logging
from collections import Counter
from collections.abc import Callable, Hashable, Iterable
from dataclasses import dataclass, field
from functools import cache, cached_property

from .defaults import get_confcat_setting
from .exceptions import (
    BoundsError,
    CategoryError,
    FiberConditionError,
    HomologyError,
    SimplicialError,
)
from .fincat import (
    FinCat,
    FinCatFunctor,
    FullSubcategory,
    SetDiagram,
    cone_point,
    grothendieck,
    nerve,
    nerve_map,
)
from .homotopy import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    STABLE,
    CheckResult,
    DegreeHomology,
    HomologyReport,
    Verdict,
    component_index,
    homology,
    map_equivalence_check,
    pi0,
)
from .simplicial import CappedSSet, Monotone, SimplicialMap, all_monotone, surjections
from .sspace import DiscreteSimplicialSpace, fin_string_objects

logger = logging.getLogger(__name__)

FLAT = "flat"
FULL = "full"
SHRIEK = "shriek"
VARIANTS = (FLAT, FULL, SHRIEK)


@cache
def _monotone(dom: int, cod: int) -> tuple[Monotone, ...]:
    return tuple(all_monotone(dom, cod))


class IndexE(FinCat):
    """
    Diagrams [r] -alpha-> [k] <-beta- [l] under [r], with l <= L.

    Objects are pairs (alpha, beta); a morphism (e, e', gamma, delta) has
    gamma alpha = alpha' and beta' delta = gamma beta.
    """

    def __init__(self, r: int, variant: str = FLAT, L: int | None = None):
        if variant not in VARIANTS:
            raise CategoryError(f"Unknown index variant {variant!r}")
        L = r if L is None else L
        if L < 0 or (variant == FLAT and L < r):
            raise BoundsError(
                f"Bound L={L} is below the minimum for the {variant} variant in degree {r}",
                minimal_bounds=r if variant == FLAT else 0,
            )
        self.r, self.variant, self.L = r, variant, L
        self._objects = list(self._build_objects())
        self._out: dict[Hashable, list[tuple]] = {}

    def _build_objects(self) -> Iterable[tuple[Monotone, Monotone]]:
        k_top = min(self.r, self.L) if self.variant == FLAT else self.L
        for k in range(k_top + 1):
            alphas = surjections(self.r, k) if self.variant == FLAT else _monotone(self.r, k)
            for alpha in alphas:
                if self.variant == SHRIEK:
                    yield (alpha, Monotone.identity(k))
                    continue
                for ell in range(k, self.L + 1):
                    for beta in surjections(ell, k):
                        yield (alpha, beta)

    def objects(self):
        return self._objects

    def morphisms(self):
        return [m for e in self._objects for m in self.out_morphisms(e)]

    def hom(self, e, e2):
        (alpha, beta), (alpha2, beta2) = e, e2
        result = []
        for gamma in _monotone(alpha.cod, alpha2.cod):
            if gamma.compose(alpha) != alpha2:
                continue
            target = gamma.compose(beta)
            for delta in _monotone(beta.dom, beta2.dom):
                if beta2.compose(delta) == target:
                    result.append((e, e2, gamma, delta))
        return result

    def out_morphisms(self, e):
        if e not in self._out:
            self._out[e] = [m for e2 in self._objects for m in self.hom(e, e2)]
        return self._out[e]

    def src(self, m):
        return m[0]

    def dst(self, m):
        return m[1]

    def identity(self, e):
        alpha, beta = e
        return (e, e, Monotone.identity(alpha.cod), Monotone.identity(beta.dom))

    def compose(self, g, f):
        return (f[0], g[1], g[2].compose(f[2]), g[3].compose(f[3]))

    def is_identity(self, m):
        return m[0] == m[1] and m[2].is_identity and m[3].is_identity

    def __repr__(self):
        return f"<IndexE r={self.r} {self.variant} L={self.L}>"


def lambda_diagram(A: DiscreteSimplicialSpace) -> SetDiagram:
    """
    e = (alpha, beta) goes to the pairs (a, b) with a in A_l, b in B_k and
    ref(a) = beta*(b); a morphism acts by (delta*, gamma*).

    Raises:
        FiberConditionError: whenever a stored or transported pair leaves the
            fiber product
    """
    B = A.base
    by_beta: dict[Monotone, list[tuple]] = {}

    def values(e):
        _alpha, beta = e
        if beta not in by_beta:
            section = beta.section()
            pairs = []
            for a in A.over_degenerate(beta.dom, beta):
                b = B.act(section, A.ref(a))
                if B.act(beta, b) != A.ref(a):
                    raise FiberConditionError(f"{a!r} does not lie over a {beta!r}-degeneracy")
                pairs.append((a, b))
            by_beta[beta] = pairs
        return by_beta[beta]

    def act(m, y):
        e, _e2, gamma, delta = m
        a, b = A.act(delta, y[0]), B.act(gamma, y[1])
        if A.ref(a) != B.act(e[1], b):
            raise FiberConditionError(f"Transport along {m!r} leaves the fiber product")
        return (a, b)

    return SetDiagram(values, act)


def homology_cap(cap: int, degree: int) -> int:
    """The nerve cap homology through degree reads, never above cap."""
    return max(1, min(cap, degree + 1))


@dataclass
class LambdaLevel:
    """
    One bounded level of Lambda A (or of A-shriek).

    skeleton is the nerve through degree 1, which is all pi0 and the vertex
    comparison read. The nerve up to cap is built on first use only.
    Components with an initial or terminal object are contractible, so
    homology builds higher simplices for the other components alone.
    """

    r: int
    variant: str
    L: int
    cap: int
    space: DiscreteSimplicialSpace
    index: IndexE
    category: FinCat
    skeleton: CappedSSet
    _homology: dict[int, HomologyReport] = field(default_factory=dict, repr=False)

    @cached_property
    def nerve(self) -> CappedSSet:
        return nerve(self.category, self.cap)

    @cached_property
    def components(self) -> list[list[Hashable]]:
        return pi0(self.skeleton)

    @cached_property
    def contractible(self) -> frozenset[int]:
        """Indices of the components that have a cone point."""
        return frozenset(
            i
            for i, component in enumerate(self.components)
            if cone_point(self.category, [key[0] for key in component]) is not None
        )

    def objects_of(self, indices: Iterable[int]) -> list[Hashable]:
        return [key[0] for i in sorted(indices) for key in self.components[i]]

    def homology(self, top: int) -> HomologyReport:
        """
        Integral homology through degree top.

        Raises:
            HomologyError: if top is not below the cap
        """
        if top > self.cap - 1:
            raise HomologyError(f"Degree {top} is not computable below cap {self.cap}")
        if top not in self._homology:
            rest = set(range(len(self.components))) - self.contractible
            sub = FullSubcategory(self.category, self.objects_of(rest))
            report = homology(nerve(sub, top + 1), top)
            first = report.degrees[0]
            report.degrees[0] = DegreeHomology(
                0, first.rank + len(self.contractible), first.torsion
            )
            logger.debug(
                f"Lambda r={self.r} L={self.L}: {len(self.contractible)} contractible, "
                f"{len(rest)} computed components"
            )
            self._homology[top] = report
        return self._homology[top]

    def restrict(self, keep: Callable[[Hashable], bool], L: int | None = None) -> "LambdaLevel":
        """The full sub-level on the objects satisfying keep, optionally at a smaller L."""
        L = self.L if L is None else L
        index = self.index if L == self.L else IndexE(self.r, self.variant, L)
        category = FullSubcategory(
            self.category, [obj for obj in self.category.objects() if keep(obj)]
        )
        skeleton = self.skeleton.full_subcomplex(lambda key: keep(key[0]))
        return LambdaLevel(
            self.r, self.variant, L, self.cap, self.space, index, category, skeleton
        )

    def reference(self, key: Hashable) -> Hashable:
        """Image in B_r of a vertex key: alpha*(b)."""
        (alpha, _beta), (_a, b) = key[0]
        return self.space.base.act(alpha, b)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "variant": self.variant,
            "L": self.L,
            "cap": self.cap,
            "index_objects": len(self.index.objects()),
            "counts": self.skeleton.counts(),
            "contractible_components": len(self.contractible),
        }


def lambda_level(
    A: DiscreteSimplicialSpace,
    r: int,
    variant: str = FLAT,
    L: int | None = None,
    cap: int | None = None,
    check: bool = False,
) -> LambdaLevel:
    """
    Degree r of Lambda A at bound L, as a nerve capped at cap.

    Args:
        A: a space over its base B
        r: the simplicial degree
        variant: "flat", "full" or "shriek"
        L: bound on l (defaults to r + ELL_SPAN)
        cap: nerve cap (defaults to NERVE_CAP)
        check: verify functoriality of the diagram on every composable pair

    Raises:
        BoundsError: if L is below the variant's minimum, exceeds A's cap, or cap < 1
        SimplicialError: if A has no base
    """
    L = r + get_confcat_setting("ELL_SPAN") if L is None else L
    cap = get_confcat_setting("NERVE_CAP") if cap is None else cap
    if A.base is None:
        raise SimplicialError("Lambda needs a space over a base")
    if cap < 1:
        raise BoundsError(f"Nerve cap {cap} must be at least 1", minimal_bounds=1)
    if L > A.cap:
        raise BoundsError(f"Bound L={L} exceeds the cap {A.cap} of the input", minimal_bounds=L)
    index = IndexE(r, variant, L)
    category = grothendieck(index, lambda_diagram(A), check=check)
    skeleton = nerve(category, 1)
    logger.debug(f"Lambda level r={r} {variant} L={L}: skeleton {skeleton.counts()}")
    return LambdaLevel(r, variant, L, cap, A, index, category, skeleton)


def lambda_tower(
    A: DiscreteSimplicialSpace,
    r: int,
    L_values: Iterable[int],
    variant: str = FLAT,
    cap: int | None = None,
) -> dict[int, LambdaLevel]:
    """
    lambda_level at every L in L_values. Only the largest is built; the others
    are its full sub-levels on objects with l <= L, which is what they are.
    """
    L_values = sorted(set(L_values))
    if not L_values:
        raise BoundsError("A tower of Lambda levels needs at least one L")
    top = lambda_level(A, r, variant, L_values[-1], cap)
    return {
        L: top if L == top.L else top.restrict(lambda obj: obj[0][1].dom <= L, L)
        for L in L_values
    }


def shriek_level(
    A: DiscreteSimplicialSpace, r: int, bound: int, cap: int | None = None
) -> LambdaLevel:
    """Degree r of A-shriek: the colimit of A_k over [r] -> [k], k <= bound."""
    return lambda_level(A, r, SHRIEK, bound, cap)


def _require_images(images: dict, target: CappedSSet, what: str) -> None:
    for key, (image, _eta) in images.items():
        if image not in target:
            raise SimplicialError(f"{what}: image of {key!r} is not in the target nerve")


def shriek_inclusion(shriek: LambdaLevel, full: LambdaLevel) -> SimplicialMap:
    """
    The inclusion of A-shriek into the full Lambda level with matching bounds.

    Raises:
        SimplicialError: if the levels do not match
    """
    if (shriek.variant, full.variant) != (SHRIEK, FULL) or (shriek.r, shriek.L) != (full.r, full.L):
        raise SimplicialError("Shriek inclusion needs a shriek and a full level with equal r, L")
    images = {
        key: (key, Monotone.identity(n))
        for n in range(shriek.nerve.cap + 1)
        for key in shriek.nerve.nondeg[n]
    }
    _require_images(images, full.nerve, "shriek inclusion")
    return SimplicialMap(shriek.nerve, full.nerve, images)


def pi0_surjective(f: SimplicialMap) -> bool:
    """Whether every component of the target is hit."""
    index = component_index(pi0(f.target))
    hit = {index[f.on_vertex(key)] for key in f.source.nondeg[0]}
    return len(hit) == len(set(index.values()))


def _level_functor(
    source: LambdaLevel, target: LambdaLevel, level_map: Callable[[Hashable], Hashable]
) -> FinCatFunctor:
    if (source.r, source.variant, source.L) != (target.r, target.variant, target.L):
        raise SimplicialError("Lambda levels of different shape cannot be compared")
    return FinCatFunctor(
        source.category,
        target.category,
        lambda obj: (obj[0], (level_map(obj[1][0]), obj[1][1])),
        lambda m: (m[0], (level_map(m[1][0]), m[1][1])),
    )


def lambda_map(
    source: LambdaLevel, target: LambdaLevel, level_map: Callable[[Hashable], Hashable]
) -> SimplicialMap:
    """
    The map of Lambda levels induced by a levelwise map of the inputs over
    their common base: (e, (a, b)) goes to (e, (level_map(a), b)).

    Raises:
        SimplicialError: if the levels have different shapes or the image
            leaves the target
    """
    functor = _level_functor(source, target, level_map)
    induced = nerve_map(functor, source.nerve, target.nerve)
    _require_images(induced.images, target.nerve, "lambda map")
    return induced


def is_isomorphism_on_skeleton(f: SimplicialMap) -> bool:
    """
    Whether the nerve map of a functor is bijective on vertices and edges.

    A functor bijective on objects and on non-identity morphisms is an
    isomorphism of categories, so its nerve map is one in every degree.
    """
    return (
        f.is_injective_on_nondegenerate()
        and all(image in f.target for image, _eta in f.images.values())
        and all(
            len(f.source.nondeg[n]) == len(f.target.nondeg[n]) for n in range(f.source.cap + 1)
        )
    )


def lambda_equivalence_check(
    source: LambdaLevel,
    target: LambdaLevel,
    level_map: Callable[[Hashable], Hashable],
    probe_degree: int,
) -> Verdict:
    """
    map_equivalence_check for the map of Lambda levels induced by level_map.

    pi0 is compared on the skeletons. A map that is an isomorphism on the
    skeletons passes without a cone. Otherwise the mapping cone is only built
    over the target components that lack a cone point or receive a source
    component lacking one; each remaining pair maps a contractible nerve to
    another.

    Raises:
        SimplicialError: if the levels have different shapes or a vertex
            leaves the target
    """
    functor = _level_functor(source, target, level_map)
    target_index = component_index(target.components)
    try:
        images = [
            target_index[(functor.on_obj(component[0][0]),)] for component in source.components
        ]
    except KeyError as e:
        raise SimplicialError(f"lambda map: vertex {e.args[0]!r} is not in the target") from None
    bijective = len(set(images)) == len(images) == len(target.components)
    top = min(probe_degree, source.cap, target.cap - 1)
    summary = {
        "source_components": len(source.components),
        "target_components": len(target.components),
        "pi0_bijective": bijective,
    }
    if bijective and is_isomorphism_on_skeleton(
        nerve_map(functor, source.skeleton, target.skeleton)
    ):
        logger.debug(f"Lambda r={source.r} L={source.L}: the levels are isomorphic")
        return Verdict(
            PASS,
            {**summary, "isomorphism": True},
            {"probe_degree": probe_degree, "cone_degree": None},
        )
    open_targets = set(range(len(target.components))) - target.contractible
    open_targets.update(t for i, t in enumerate(images) if i not in source.contractible)
    open_sources = [i for i, t in enumerate(images) if t in open_targets]
    X_part = FullSubcategory(source.category, source.objects_of(open_sources))
    Y_part = FullSubcategory(target.category, target.objects_of(open_targets))
    Y = nerve(Y_part, top + 1)
    induced = nerve_map(
        FinCatFunctor(X_part, Y_part, functor.on_obj, functor.on_mor), nerve(X_part, top), Y
    )
    _require_images(induced.images, Y, "lambda map")
    verdict = map_equivalence_check(induced, top)
    verdict.diagnostics.update(
        summary,
        isomorphism=False,
        contractible_pairs=len(target.components) - len(open_targets),
    )
    if not bijective:
        verdict.status = FAIL
    return verdict


def lambda_operator(source: LambdaLevel, target: LambdaLevel, theta: Monotone) -> SimplicialMap:
    """
    theta: [r'] -> [r] acting on the full variant by precomposing alpha.

    Raises:
        SimplicialError: unless both levels are full with equal L and theta
            runs from target.r to source.r
    """
    if (source.variant, target.variant) != (FULL, FULL) or source.L != target.L:
        raise SimplicialError("Operators act between full Lambda levels with equal L")
    if (theta.dom, theta.cod) != (target.r, source.r):
        raise SimplicialError(f"{theta!r} does not run from [{target.r}] to [{source.r}]")

    def on_index(e):
        return (e[0].compose(theta), e[1])

    functor = FinCatFunctor(
        source.category,
        target.category,
        lambda obj: (on_index(obj[0]), obj[1]),
        lambda m: ((on_index(m[0][0]), on_index(m[0][1]), m[0][2], m[0][3]), m[1]),
    )
    induced = nerve_map(functor, source.nerve, target.nerve)
    _require_images(induced.images, target.nerve, "lambda operator")
    return induced


def pi0_by_reference(LL: LambdaLevel) -> Counter:
    """Number of components over each element of B_r."""
    return Counter(LL.reference(component[0]) for component in LL.components)


def restrict_to_base(LL: LambdaLevel, k: int) -> LambdaLevel:
    """The part of a Lambda level whose base strings stay within Fin up to k."""
    return LL.restrict(lambda obj: max(fin_string_objects(obj[1][1])) <= k)


def e0_reflection(e: tuple[Monotone, Monotone]) -> tuple[tuple, tuple]:
    """
    Reflect a full index object into the flat one: [k] shrinks to the image of
    alpha and [l] to its preimage under beta.

    Returns:
        (reflected object, counit morphism reflected -> e)
    """
    alpha, beta = e
    image = sorted(set(alpha.values))
    position = {v: i for i, v in enumerate(image)}
    k0 = len(image) - 1
    pre = beta.preimage(image)
    alpha0 = Monotone(tuple(position[v] for v in alpha.values), k0)
    beta0 = Monotone(tuple(position[beta(i)] for i in pre), k0)
    reflected = (alpha0, beta0)
    counit = (reflected, e, Monotone(tuple(image), alpha.cod), Monotone(pre, beta.dom))
    return reflected, counit


def e0_adjunction_check(r: int, L: int) -> CheckResult:
    """hom(incl e, e') and hom(e, reflect e') have equal sizes throughout."""
    full, flat = IndexE(r, FULL, L), IndexE(r, FLAT, L)
    witnesses = []
    for e2 in full.objects():
        reflected, _counit = e0_reflection(e2)
        for e in flat.objects():
            if len(full.hom(e, e2)) != len(flat.hom(e, reflected)):
                witnesses.append((e, e2))
    return CheckResult(
        "e0_adjunction",
        not witnesses,
        witnesses,
        {"flat_objects": len(flat.objects()), "full_objects": len(full.objects())},
    )


@dataclass
class StabilizationStage:
    L: int
    level: LambdaLevel
    components: list
    homology: HomologyReport

    @property
    def pi0(self) -> int:
        return len(self.components)

    def probe(self) -> tuple:
        return (self.pi0, self.homology.signature())


@dataclass
class StabilizationReport:
    r: int
    variant: str
    stages: list[StabilizationStage] = field(default_factory=list)
    merges: list[int] = field(default_factory=list)
    verdict: str = INCONCLUSIVE

    @property
    def final(self) -> StabilizationStage:
        return self.stages[-1]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "variant": self.variant,
            "L": [stage.L for stage in self.stages],
            "pi0": [stage.pi0 for stage in self.stages],
            "homology": [
                [[d.rank, list(d.torsion)] for d in stage.homology.degrees] for stage in self.stages
            ],
            "merges": list(self.merges),
            "verdict": self.verdict,
        }


def _merges(smaller: StabilizationStage, larger: StabilizationStage) -> int:
    index = component_index(larger.components)
    try:
        images = {index[component[0]] for component in smaller.components}
    except KeyError as e:
        raise SimplicialError(f"Stage L={smaller.L} is not contained in stage L={larger.L}") from e
    return len(smaller.components) - len(images)


def stabilization_scan(
    A: DiscreteSimplicialSpace,
    r: int,
    variant: str = FLAT,
    L_range: Iterable[int] | None = None,
    cap: int | None = None,
    probe: int | None = None,
) -> StabilizationReport:
    """
    Probe pi0 and homology of lambda_level at every L in the range.

    Only the largest L is built; smaller stages are its sub-levels, reported
    in L order.
    The verdict is STABLE when the last STABILITY_WINDOW probes agree.
    """
    if L_range is None:
        L_range = range(r, r + get_confcat_setting("ELL_SPAN") + 1)
    L_values = sorted(set(L_range))
    if not L_values:
        raise BoundsError("Stabilization needs a nonempty L range")
    cap = get_confcat_setting("NERVE_CAP") if cap is None else cap
    probe = get_confcat_setting("PROBE_DEGREE") if probe is None else probe
    window = get_confcat_setting("STABILITY_WINDOW")
    report = StabilizationReport(r, variant)
    nerve_cap = homology_cap(cap, probe)
    levels = lambda_tower(A, r, L_values, variant, nerve_cap)
    for L in L_values:
        level = levels[L]
        stage = StabilizationStage(L, level, level.components, level.homology(nerve_cap - 1))
        if report.stages:
            report.merges.append(_merges(report.stages[-1], stage))
        report.stages.append(stage)
        logger.debug(f"Stabilization r={r} L={L}: pi0={stage.pi0}")
    tail = [stage.probe() for stage in report.stages[-window:]]
    if len(tail) == window and len(set(tail)) == 1:
        report.verdict = STABLE
    else:
        logger.warning(
            f"Stabilization in degree {r} is inconclusive over L={L_values[0]}..{L_values[-1]}"
        )
    return report
