"""
Degreewise-discrete simplicial spaces over a base, and their checkers.

A space answers level(r), act(op, x) for a monotone op: [r'] -> [r] and
ref(x) into its base. Levels are enumerated lazily and cached; fibers over a
base simplex are computed directly where the structure allows it (nerves of
categories over Fin are searched morphism by morphism), so pipelines never
enumerate a base level they do not need.

Squares of discrete sets are homotopy cartesian exactly when they are
cartesian, so every checker here reduces to homotopy_cartesian_discrete.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from collections import defaultdict
from collections.abc import Callable, Hashable
from dataclasses import dataclass

from .defaults import get_confcat_setting
from .exceptions import BoundsError, SegalConditionError, SimplicialError
from .fincat import FinCat, FinCatOverFin, FinUpTo, string_act
from .finset import FinMap
from .homotopy import CheckResult, DiscreteSquare, homotopy_cartesian_discrete
from .simplicial import Monotone

logger = logging.getLogger(__name__)


def fin_string_objects(b: tuple) -> tuple[int, ...]:
    """Objects of a string in the nerve of Fin."""
    return (b[0], *(f.cod for f in b[1:]))


class DiscreteSimplicialSpace(ABC):
    """A simplicial space with finite discrete levels, capped at degree cap."""

    def __init__(self, cap: int, base: "DiscreteSimplicialSpace | None" = None):
        self.cap = cap
        self.base = base
        self._levels: dict[int, list] = {}
        self._fiber_index: dict[int, dict] = {}
        self._over_cache: dict[tuple[int, Monotone], list] = {}

    @abstractmethod
    def _enumerate(self, r: int) -> list:
        """All elements of degree r, deterministic order"""

    @abstractmethod
    def act(self, op: Monotone, x: Hashable) -> Hashable:
        """op*(x) for op: [r'] -> [r] and x of degree r"""

    @abstractmethod
    def ref(self, x: Hashable) -> Hashable:
        """Reference of x in the base"""

    def level(self, r: int) -> list:
        if r > self.cap:
            raise SimplicialError(f"Degree {r} exceeds the cap {self.cap}")
        if r not in self._levels:
            self._levels[r] = self._enumerate(r)
            logger.debug(f"{type(self).__name__} level {r}: {len(self._levels[r])} elements")
        return self._levels[r]

    def fiber(self, r: int, b: Hashable) -> list:
        """Elements of degree r over the base simplex b."""
        if r not in self._fiber_index:
            index = defaultdict(list)
            for x in self.level(r):
                index[self.ref(x)].append(x)
            self._fiber_index[r] = index
        return self._fiber_index[r].get(b, [])

    def over_degenerate(self, ell: int, beta: Monotone) -> list:
        """Elements of degree ell whose reference is a beta-degeneracy (cached per beta)."""
        key = (ell, beta)
        if key not in self._over_cache:
            self._over_cache[key] = self._over_degenerate(ell, beta)
        return self._over_cache[key]

    def _over_degenerate(self, ell: int, beta: Monotone) -> list:
        section = beta.section()
        return [
            x
            for x in self.level(ell)
            if self.base.act(beta, self.base.act(section, self.ref(x))) == self.ref(x)
        ]

    def face(self, x: Hashable, r: int, i: int) -> Hashable:
        return self.act(Monotone.coface(r, i), x)

    def degeneracy(self, x: Hashable, r: int, j: int) -> Hashable:
        return self.act(Monotone.codegeneracy(r, j), x)

    def is_degenerate(self, x: Hashable, r: int) -> bool:
        for j in range(r):
            if x == self.act(Monotone.coface(r, j).compose(Monotone.codegeneracy(r - 1, j)), x):
                return True
        return False

    def weakly_invertible_edges(self) -> list:
        """
        Edges e: a -> b with some g: b -> a such that the 2-simplices with
        spines (e, g) and (g, e) have degenerate long edges.
        """
        composite = {}
        for sigma in self.level(2):
            composite[(self.face(sigma, 2, 2), self.face(sigma, 2, 0))] = self.face(sigma, 2, 1)
        by_source = defaultdict(list)
        for e in self.level(1):
            by_source[self.face(e, 1, 1)].append(e)
        result = []
        for e in self.level(1):
            a, b = self.face(e, 1, 1), self.face(e, 1, 0)
            for g in by_source[b]:
                if self.face(g, 1, 0) != a:
                    continue
                if composite.get((e, g)) == self.degeneracy(a, 0, 0) and composite.get(
                    (g, e)
                ) == self.degeneracy(b, 0, 0):
                    result.append(e)
                    break
        return result

    def invertible_edges_at(self, vertex: Hashable, face_index: int = 1) -> list:
        """Weakly invertible edges whose face_index-th face is vertex."""
        return [e for e in self.weakly_invertible_edges() if self.face(e, 1, face_index) == vertex]

    def check_operators(self, max_degree: int | None = None) -> list[tuple]:
        """
        Failures of the operator laws on elements up to max_degree: composites
        of cofaces and codegeneracies act contravariantly and ref is simplicial.
        """
        top = self.cap if max_degree is None else min(max_degree, self.cap)
        failures = []
        for r in range(top + 1):
            ident = Monotone.identity(r)
            generators = [Monotone.coface(r, i) for i in range(r + 1)] if r else []
            if r + 1 <= self.cap:
                generators += [Monotone.codegeneracy(r, j) for j in range(r + 1)]
            for x in self.level(r):
                if self.act(ident, x) != x:
                    failures.append((x, "identity"))
                for theta in generators:
                    y = self.act(theta, x)
                    if self.base is not None and self.base.act(theta, self.ref(x)) != self.ref(y):
                        failures.append((x, "ref", theta))
                    d = theta.dom
                    second = [Monotone.coface(d, i) for i in range(d + 1)] if d else []
                    for phi in second:
                        if self.act(theta.compose(phi), x) != self.act(phi, y):
                            failures.append((x, theta, phi))
        return failures

    def to_dict(self, max_degree: int | None = None) -> dict:
        top = self.cap if max_degree is None else min(max_degree, self.cap)
        levels = []
        for r in range(top + 1):
            elements = self.level(r)
            lower = self.level(r - 1) if r else []
            lower_position = {x: i for i, x in enumerate(lower)}
            ops = {
                f"d{i}": [lower_position[self.face(x, r, i)] for x in elements]
                for i in range(r + 1)
            } if r else {}
            levels.append(
                {
                    "deg": r,
                    "elems": [repr(x) for x in elements],
                    "ops": ops,
                    "ref": [repr(self.ref(x)) for x in elements],
                }
            )
        return {"cap": self.cap, "base": repr(self.base), "levels": levels}


class NerveSpace(DiscreteSimplicialSpace):
    """
    The nerve of a finite category as a discrete simplicial space.

    Level r holds all composable strings (x0, m1, ..., mr), identities
    included. With over set, ref applies the reference to Fin stringwise and
    fibers are found by following morphisms with the required reference.
    """

    def __init__(
        self,
        category: FinCat,
        cap: int,
        base: DiscreteSimplicialSpace | None = None,
        over: FinCatOverFin | None = None,
        ref: Callable[[tuple], Hashable] | None = None,
    ):
        super().__init__(cap, base)
        self.category = category
        self.over = over
        self._ref = ref
        self._by_fin: dict[Hashable, dict[FinMap, list]] = {}
        self._objects_by_size: dict[int, list] | None = None

    def _enumerate(self, r):
        C = self.category
        strings = [(x,) for x in C.objects()]
        for _ in range(r):
            strings = [
                (*s, m)
                for s in strings
                for m in C.out_morphisms(s[0] if len(s) == 1 else C.dst(s[-1]))
            ]
        return strings

    def act(self, op, x):
        return string_act(self.category, op, x)

    def ref(self, x):
        if self._ref is not None:
            return self._ref(x)
        if self.over is not None:
            return (self.over.to_fin_obj(x[0]), *(self.over.to_fin_mor(m) for m in x[1:]))
        return x

    def is_degenerate(self, x, r):
        return any(self.category.is_identity(m) for m in x[1:])

    def last_vertex(self, s: tuple) -> Hashable:
        return s[0] if len(s) == 1 else self.category.dst(s[-1])

    def _fin_out(self, x) -> dict[FinMap, list]:
        index = self._by_fin.get(x)
        if index is None:
            index = defaultdict(list)
            for m in self.category.out_morphisms(x):
                index[self.over.to_fin_mor(m)].append(m)
            self._by_fin[x] = index
        return index

    def _start_objects(self, size: int) -> list:
        if self._objects_by_size is None:
            self._objects_by_size = defaultdict(list)
            for x in self.category.objects():
                self._objects_by_size[self.over.to_fin_obj(x)].append(x)
        return self._objects_by_size.get(size, [])

    def fiber(self, r, b):
        if self.over is None or self._ref is not None:
            return super().fiber(r, b)
        strings = [(x,) for x in self._start_objects(b[0])]
        for f in b[1:]:
            strings = [(*s, m) for s in strings for m in self._fin_out(self.last_vertex(s)).get(f, [])]
        return strings

    def _over_degenerate(self, ell, beta):
        if self.over is None or self._ref is not None:
            return super()._over_degenerate(ell, beta)
        C = self.category
        strings = [(x,) for x in C.objects()]
        for j in range(1, ell + 1):
            collapsed = beta(j - 1) == beta(j)
            grown = []
            for s in strings:
                for m in C.out_morphisms(self.last_vertex(s)):
                    if not collapsed or self.over.over_identity(m):
                        grown.append((*s, m))
            strings = grown
        return strings

    def invertible_edges_at(self, vertex: tuple, face_index: int = 1) -> list[tuple]:
        """Invertible edges whose face_index-th face is the given vertex."""
        C = self.category
        x = vertex[0]
        if face_index == 1:
            candidates = C.out_morphisms(x)
        else:
            candidates = [m for m in C.morphisms() if C.dst(m) == x]
        return [(C.src(m), m) for m in candidates if C.is_isomorphism(m)]

    def weakly_invertible_edges(self) -> list[tuple]:
        return [e for e in self.level(1) if self.category.is_isomorphism(e[1])]

    def __repr__(self):
        return f"<NerveSpace {type(self.category).__name__} cap={self.cap}>"


class FinNerve(NerveSpace):
    """The nerve of Fin up to t; its own reference, no base."""

    def __init__(self, t: int, cap: int):
        super().__init__(FinUpTo(t), cap)
        self.t = t

    def invertible_edges_at(self, vertex, face_index=1):
        k = vertex[0]
        return [(k, f) for f in self.category.automorphisms(k)]

    def weakly_invertible_edges(self):
        return [(k, f) for k in range(self.t + 1) for f in self.category.automorphisms(k)]

    def __repr__(self):
        return f"N(Fin<={self.t})"


def nerve_over_fin(C: FinCatOverFin, cap: int, fin_bound: int | None = None) -> NerveSpace:
    """
    The nerve of C over N(Fin up to t), t the least bound covering C's image
    unless fin_bound is given.
    """
    t = C.fin_bound() if fin_bound is None else fin_bound
    return NerveSpace(C.category, cap, base=FinNerve(t, cap), over=C)


@dataclass
class SpaceMap:
    """A levelwise map of discrete simplicial spaces."""

    source: DiscreteSimplicialSpace
    target: DiscreteSimplicialSpace
    func: Callable[[Hashable], Hashable]

    def __call__(self, x):
        return self.func(x)

    def check(self, max_degree: int | None = None, over_base: bool = False) -> list[tuple]:
        """Elements where the map fails to commute with faces or degeneracies."""
        top = self.source.cap if max_degree is None else min(max_degree, self.source.cap)
        failures = []
        for r in range(top + 1):
            for x in self.source.level(r):
                y = self.func(x)
                if over_base and self.target.ref(y) != self.source.ref(x):
                    failures.append((x, "ref"))
                for i in range(r + 1 if r else 0):
                    if self.func(self.source.face(x, r, i)) != self.target.face(y, r, i):
                        failures.append((x, "d", i))
                if r + 1 <= top:
                    for j in range(r + 1):
                        if self.func(self.source.degeneracy(x, r, j)) != self.target.degeneracy(y, r, j):
                            failures.append((x, "s", j))
        return failures


class ProductSpace(DiscreteSimplicialSpace):
    """Levelwise product; the nerve of a product of categories."""

    def __init__(self, X: DiscreteSimplicialSpace, Y: DiscreteSimplicialSpace):
        base = None
        if X.base is not None and Y.base is not None:
            base = ProductSpace(X.base, Y.base)
        super().__init__(min(X.cap, Y.cap), base)
        self.X, self.Y = X, Y

    def _enumerate(self, r):
        return list(itertools.product(self.X.level(r), self.Y.level(r)))

    def act(self, op, x):
        return (self.X.act(op, x[0]), self.Y.act(op, x[1]))

    def ref(self, x):
        return (self.X.ref(x[0]), self.Y.ref(x[1]))

    def fiber(self, r, b):
        return list(itertools.product(self.X.fiber(r, b[0]), self.Y.fiber(r, b[1])))


class PullbackSpace(DiscreteSimplicialSpace):
    """
    Levelwise pullback of f: P -> Z and g: Q -> Z.

    Elements are pairs (p, q) with f(p) = g(q). The reference defaults to the
    common image in Z.
    """

    def __init__(
        self,
        f: SpaceMap,
        g: SpaceMap,
        base: DiscreteSimplicialSpace | None = None,
        ref: Callable[[tuple], Hashable] | None = None,
    ):
        super().__init__(min(f.source.cap, g.source.cap), base if ref else f.target)
        self.f, self.g = f, g
        self._ref = ref

    def _enumerate(self, r):
        index = defaultdict(list)
        for q in self.g.source.level(r):
            index[self.g(q)].append(q)
        return [(p, q) for p in self.f.source.level(r) for q in index.get(self.f(p), [])]

    def act(self, op, x):
        return (self.f.source.act(op, x[0]), self.g.source.act(op, x[1]))

    def ref(self, x):
        return self._ref(x) if self._ref is not None else self.f(x[0])

    def left_projection(self) -> SpaceMap:
        return SpaceMap(self, self.f.source, lambda x: x[0])

    def right_projection(self) -> SpaceMap:
        return SpaceMap(self, self.g.source, lambda x: x[1])


def pullback(
    f: SpaceMap,
    g: SpaceMap,
    base: DiscreteSimplicialSpace | None = None,
    ref: Callable[[tuple], Hashable] | None = None,
) -> PullbackSpace:
    return PullbackSpace(f, g, base, ref)


class TruncatedSpace(DiscreteSimplicialSpace):
    """The part of a space over N(Fin) whose base strings stay within 0..k."""

    def __init__(self, X: DiscreteSimplicialSpace, k: int):
        super().__init__(X.cap, FinNerve(k, X.cap))
        self.X, self.k = X, k

    def _within(self, b) -> bool:
        return max(fin_string_objects(b)) <= self.k

    def _enumerate(self, r):
        return [x for x in self.X.level(r) if self._within(self.X.ref(x))]

    def act(self, op, x):
        return self.X.act(op, x)

    def ref(self, x):
        return self.X.ref(x)

    def fiber(self, r, b):
        return self.X.fiber(r, b) if self._within(b) else []

    def _over_degenerate(self, ell, beta):
        return [x for x in self.X.over_degenerate(ell, beta) if self._within(self.X.ref(x))]


def truncate(X: DiscreteSimplicialSpace, k: int) -> TruncatedSpace:
    """
    Raises:
        BoundsError: if X is not over N(Fin up to t) with k <= t
    """
    if not isinstance(X.base, FinNerve):
        raise BoundsError("Truncation needs a space over the nerve of Fin")
    if k > X.base.t:
        raise BoundsError(f"Cannot truncate at {k} above the base bound {X.base.t}")
    return TruncatedSpace(X, k)


class TauLowerStarSpace(DiscreteSimplicialSpace):
    """
    Right adjoint to truncation.

    An element over a base string sigma is (sigma, w) with w in W over the
    face of sigma spanned by its vertices of size <= k, or (sigma, None) when
    that face is empty.
    """

    def __init__(self, W: DiscreteSimplicialSpace, t: int):
        if not isinstance(W.base, FinNerve) or W.base.t > t:
            raise BoundsError(f"tau_* needs W over N(Fin<=k) with k <= {t}")
        super().__init__(W.cap, FinNerve(t, W.cap))
        self.W, self.k = W, W.base.t

    def kept(self, sigma) -> tuple[int, ...]:
        """Positions of the vertices of sigma of size at most k."""
        return tuple(i for i, size in enumerate(fin_string_objects(sigma)) if size <= self.k)

    def restricted(self, sigma) -> tuple | None:
        kept = self.kept(sigma)
        if not kept:
            return None
        return self.base.act(Monotone(kept, len(sigma) - 1), sigma)

    def fiber(self, r, sigma):
        restricted = self.restricted(sigma)
        if restricted is None:
            return [(sigma, None)]
        return [(sigma, w) for w in self.W.fiber(len(restricted) - 1, restricted)]

    def _enumerate(self, r):
        return [x for sigma in self.base.level(r) for x in self.fiber(r, sigma)]

    def act(self, op, x):
        sigma, w = x
        kept = self.kept(sigma)
        new_sigma = self.base.act(op, sigma)
        pulled = [j for j in range(op.dom + 1) if op(j) in kept]
        if not pulled:
            return (new_sigma, None)
        rho = Monotone(tuple(kept.index(op(j)) for j in pulled), len(kept) - 1)
        return (new_sigma, self.W.act(rho, w))

    def ref(self, x):
        return x[0]


def tau_lower_star(W: DiscreteSimplicialSpace, t: int) -> TauLowerStarSpace:
    return TauLowerStarSpace(W, t)


def tau_fiber_law_check(W: DiscreteSimplicialSpace, t: int, cap: int | None = None) -> CheckResult:
    """
    Fiber of tau_* W over sigma is W's fiber over the restricted face, or a
    point; the restriction is recomputed here by composing maps of Fin.
    """
    space = tau_lower_star(W, t)
    top = space.cap if cap is None else min(cap, space.cap)
    witnesses = []
    checked = 0
    for r in range(top + 1):
        for sigma in space.base.level(r):
            objects = fin_string_objects(sigma)
            kept = [i for i, size in enumerate(objects) if size <= space.k]
            if not kept:
                expected = [None]
            else:
                maps = []
                for a, b in itertools.pairwise(kept):
                    f = FinMap.identity(objects[a])
                    for step in sigma[a + 1 : b + 1]:
                        f = step.compose(f)
                    maps.append(f)
                expected = W.fiber(len(kept) - 1, (objects[kept[0]], *maps))
            actual = [w for _, w in space.fiber(r, sigma)]
            checked += 1
            if actual != expected:
                witnesses.append(sigma)
    return CheckResult("tau_fiber_law", not witnesses, witnesses, {"base_simplices": checked})


def enumerate_maps_over_base(
    X: DiscreteSimplicialSpace, Y: DiscreteSimplicialSpace, cap: int | None = None
) -> list[dict]:
    """
    All simplicial maps X -> Y over a common base, up to the cap, by
    backtracking over nondegenerate elements; degenerate elements are forced.
    """
    top = min(X.cap, Y.cap) if cap is None else cap
    order = [(r, x) for r in range(top + 1) for x in X.level(r)]
    results: list[dict] = []

    def extend(position: int, assignment: dict):
        if position == len(order):
            results.append(dict(assignment))
            return
        r, x = order[position]
        forced = None
        for j in range(r):
            lower = X.face(x, r, j)
            if X.degeneracy(lower, r - 1, j) == x:
                forced = Y.degeneracy(assignment[(r - 1, lower)], r - 1, j)
                break
        candidates = [forced] if forced is not None else Y.fiber(r, X.ref(x))
        for y in candidates:
            if Y.ref(y) != X.ref(x):
                continue
            if r and any(
                Y.face(y, r, i) != assignment[(r - 1, X.face(x, r, i))] for i in range(r + 1)
            ):
                continue
            assignment[(r, x)] = y
            extend(position + 1, assignment)
            del assignment[(r, x)]

    extend(0, {})
    return results


def _transpose(X: DiscreteSimplicialSpace, space: TauLowerStarSpace, f: dict, cap: int) -> dict:
    """The map X -> tau_* W adjoint to f: truncate(X, k) -> W."""
    g = {}
    for r in range(cap + 1):
        for x in X.level(r):
            sigma = X.ref(x)
            kept = space.kept(sigma)
            if not kept:
                g[(r, x)] = (sigma, None)
                continue
            restricted = X.act(Monotone(kept, r), x)
            g[(r, x)] = (sigma, f[(len(kept) - 1, restricted)])
    return g


def tau_adjunction_check(
    W: DiscreteSimplicialSpace,
    t: int,
    sources: list[DiscreteSimplicialSpace],
    cap: int = 2,
) -> CheckResult:
    """
    Maps truncate(X, k) -> W against maps X -> tau_* W, for each X in sources.

    Both sides are enumerated over the base; every map on the left must
    transpose to a distinct map on the right and the right side must hold
    nothing else. Sources should be small: enumeration is exhaustive.
    """
    space = tau_lower_star(W, t)
    top = min(cap, W.cap)
    witnesses, details = [], []
    for i, X in enumerate(sources):
        left = enumerate_maps_over_base(truncate(X, space.k), W, top)
        right = {frozenset(g.items()) for g in enumerate_maps_over_base(X, space, top)}
        transposed = {frozenset(_transpose(X, space, f, top).items()) for f in left}
        details.append(
            {
                "levels": [len(X.level(r)) for r in range(top + 1)],
                "left": len(left),
                "right": len(right),
            }
        )
        if len(transposed) != len(left) or transposed != right:
            witnesses.append((i, len(left), len(right)))
    return CheckResult("tau_adjunction", not witnesses, witnesses, {"sources": details})


def segal_check(X: DiscreteSimplicialSpace, cap: int | None = None) -> CheckResult:
    """
    The spine map X_n -> X_1 x_{X_0} ... x_{X_0} X_1 is a bijection for
    2 <= n <= cap.
    """
    top = X.cap if cap is None else min(cap, X.cap)
    edges = X.level(1) if top >= 1 else []
    source = {e: X.face(e, 1, 1) for e in edges}
    target = {e: X.face(e, 1, 0) for e in edges}
    witnesses, details = [], {}
    chains_ending = defaultdict(int)
    for e in edges:
        chains_ending[target[e]] += 1
    for n in range(2, top + 1):
        grown = defaultdict(int)
        for e in edges:
            grown[target[e]] += chains_ending[source[e]]
        chains_ending = grown
        spines = defaultdict(list)
        for x in X.level(n):
            spine = tuple(X.act(Monotone.edge(n, i - 1, i), x) for i in range(1, n + 1))
            spines[spine].append(x)
        chains = sum(chains_ending.values())
        duplicates = [group for group in spines.values() if len(group) > 1]
        details[n] = {"simplices": len(X.level(n)), "chains": chains, "spines": len(spines)}
        witnesses.extend(duplicates)
        if len(spines) != chains:
            witnesses.append(("missing_chains", n, chains - len(spines)))
    return CheckResult("segal", not witnesses, witnesses, details)


def cartesian_square_witnesses(X: DiscreteSimplicialSpace, surjection: Monotone) -> CheckResult:
    """
    The square X_m -> X_n over B_m -> B_n for a monotone surjection
    [n] -> [m] is cartesian.
    """
    B = X.base
    section = surjection.section()

    def degenerate_lift(b):
        candidate = B.act(section, b)
        return [candidate] if B.act(surjection, candidate) == b else []

    square = DiscreteSquare(
        top_left=X.level(surjection.cod),
        top_right=X.level(surjection.dom),
        top=lambda x: X.act(surjection, x),
        left=X.ref,
        right=X.ref,
        bottom=lambda b: B.act(surjection, b),
        bottom_preimage=degenerate_lift,
    )
    result = homotopy_cartesian_discrete(square)
    result.name = f"cartesian{list(surjection.values)}"
    return result


def conservative_check(X: DiscreteSimplicialSpace, cap: int | None = None) -> CheckResult:
    """Every elementary codegeneracy square up to the cap is cartesian."""
    top = X.cap if cap is None else min(cap, X.cap)
    witnesses, details = [], {}
    for k in range(top):
        for j in range(k + 1):
            square = cartesian_square_witnesses(X, Monotone.codegeneracy(k, j))
            details[f"s{j}:{k}"] = square.passed
            witnesses.extend(w for w in square.witnesses)
    return CheckResult("conservative", not witnesses, witnesses, details)


def weakly_invertible_edges(X: DiscreteSimplicialSpace) -> list:
    """The he-edges of X (see DiscreteSimplicialSpace.weakly_invertible_edges)."""
    return X.weakly_invertible_edges()


def fiberwise_complete_check(
    X: DiscreteSimplicialSpace, face: str | None = None, cap: int | None = None
) -> CheckResult:
    """
    The square of invertible edges X_1^he -> B_1^he over X_0 -> B_0, both
    columns taken through the chosen face, is cartesian.

    Raises:
        SegalConditionError: if X is not Segal
    """
    face = face or get_confcat_setting("COMPLETENESS_FACE")
    index = 1 if face == "d1" else 0
    segal = segal_check(X, cap)
    if not segal.passed:
        raise SegalConditionError(f"Completeness needs a Segal space: {segal.witnesses[:1]}")
    B = X.base
    square = DiscreteSquare(
        top_left=weakly_invertible_edges(X),
        top_right=X.level(0),
        top=lambda e: X.face(e, 1, index),
        left=X.ref,
        right=X.ref,
        bottom=lambda e: B.face(e, 1, index),
        bottom_preimage=lambda b: B.invertible_edges_at(b, index),
    )
    result = homotopy_cartesian_discrete(square)
    result.name = "fiberwise_complete"
    result.details["face"] = face
    return result


def run_checkers(X: DiscreteSimplicialSpace, cap: int | None = None) -> dict[str, CheckResult]:
    """Segal, fiberwise complete and conservative outcomes for one input."""
    results = {"segal": segal_check(X, cap)}
    if results["segal"].passed:
        results["fiberwise_complete"] = fiberwise_complete_check(X, cap=cap)
    else:
        results["fiberwise_complete"] = CheckResult(
            "fiberwise_complete", False, [], {"skipped": "not Segal"}
        )
    results["conservative"] = conservative_check(X, cap)
    return results
