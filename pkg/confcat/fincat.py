"""
Finite categories and the constructions built from them.

Morphisms are hashable labels; every category answers src/dst/identity/
compose on its own labels, so structural categories (configuration
categories, Boxfin, semidirect products, categories of elements) never need
to materialize a composition table. TableCategory is the explicit form used
for serialized inputs and mutation tests.

Composition is written compose(g, f) = g after f throughout.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from sympy.combinatorics import Permutation, PermutationGroup

from .exceptions import CategoryError, FunctorialityError, GroupActionError
from .finset import FinMap, enumerate_maps
from .simplicial import CappedSSet, Monotone, SimplicialMap

logger = logging.getLogger(__name__)


class FinCat(ABC):
    """
    Abstract finite category.

    Subclasses provide objects, morphism enumeration and the structure maps.
    Hom-sets and outgoing morphisms are indexed lazily from morphisms() unless
    a subclass overrides the faster out_morphisms().
    """

    @abstractmethod
    def objects(self) -> Sequence[Hashable]:
        """All objects, in a deterministic order"""

    @abstractmethod
    def morphisms(self) -> Sequence[Hashable]:
        """All morphisms including identities, in a deterministic order"""

    @abstractmethod
    def src(self, m: Hashable) -> Hashable:
        pass

    @abstractmethod
    def dst(self, m: Hashable) -> Hashable:
        pass

    @abstractmethod
    def identity(self, x: Hashable) -> Hashable:
        pass

    @abstractmethod
    def compose(self, g: Hashable, f: Hashable) -> Hashable:
        """g after f; callers guarantee dst(f) == src(g)"""

    @cached_property
    def _out_index(self) -> dict[Hashable, list[Hashable]]:
        index: dict[Hashable, list[Hashable]] = {x: [] for x in self.objects()}
        for m in self.morphisms():
            index[self.src(m)].append(m)
        return index

    def out_morphisms(self, x: Hashable) -> list[Hashable]:
        """All morphisms with source x, identity included."""
        return self._out_index[x]

    def outgoing(self, x: Hashable) -> list[Hashable]:
        """Non-identity morphisms with source x."""
        return [m for m in self.out_morphisms(x) if not self.is_identity(m)]

    def hom(self, x: Hashable, y: Hashable) -> list[Hashable]:
        return [m for m in self.out_morphisms(x) if self.dst(m) == y]

    def is_identity(self, m: Hashable) -> bool:
        return m == self.identity(self.src(m))

    def is_isomorphism(self, m: Hashable) -> bool:
        return self.inverse(m) is not None

    def inverse(self, m: Hashable) -> Hashable | None:
        x, y = self.src(m), self.dst(m)
        for candidate in self.hom(y, x):
            if self.is_identity(self.compose(candidate, m)) and self.is_identity(
                self.compose(m, candidate)
            ):
                return candidate
        return None

    def composable_pairs(self) -> Iterable[tuple[Hashable, Hashable]]:
        """Pairs (g, f) with dst(f) == src(g)."""
        for f in self.morphisms():
            for g in self.out_morphisms(self.dst(f)):
                yield g, f

    def validate(self) -> list[str]:
        """
        Exhaustively check units, endpoints of composites and associativity.

        Returns:
            List of problems (empty if the tables form a category)
        """
        problems = []
        objects = set(self.objects())
        for x in objects:
            ident = self.identity(x)
            if self.src(ident) != x or self.dst(ident) != x:
                problems.append(f"identity of {x!r} has wrong endpoints")
        for m in self.morphisms():
            if self.src(m) not in objects or self.dst(m) not in objects:
                problems.append(f"morphism {m!r} has an unknown endpoint")
                continue
            if self.compose(m, self.identity(self.src(m))) != m:
                problems.append(f"right unit law fails for {m!r}")
            if self.compose(self.identity(self.dst(m)), m) != m:
                problems.append(f"left unit law fails for {m!r}")
        if problems:
            return problems
        for g, f in self.composable_pairs():
            try:
                gf = self.compose(g, f)
            except CategoryError as e:
                problems.append(str(e))
                continue
            if self.src(gf) != self.src(f) or self.dst(gf) != self.dst(g):
                problems.append(f"composite of {g!r} and {f!r} has wrong endpoints")
                continue
            for h in self.out_morphisms(self.dst(g)):
                try:
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        problems.append(f"associativity fails for {h!r}, {g!r}, {f!r}")
                except CategoryError as e:
                    problems.append(str(e))
        return problems

    def to_dict(self) -> dict:
        """Explicit-table serialization with integer morphism ids."""
        objects = list(self.objects())
        morphisms = list(self.morphisms())
        obj_index = {x: i for i, x in enumerate(objects)}
        mor_index = {m: i for i, m in enumerate(morphisms)}
        comp = []
        for g, f in self.composable_pairs():
            if self.is_identity(g) or self.is_identity(f):
                continue
            comp.append([mor_index[g], mor_index[f], mor_index[self.compose(g, f)]])
        comp.sort()
        return {
            "objects": [str(x) for x in objects],
            "morphisms": [
                {"id": i, "src": obj_index[self.src(m)], "dst": obj_index[self.dst(m)]}
                for i, m in enumerate(morphisms)
            ],
            "comp": comp,
            "ids": [mor_index[self.identity(x)] for x in objects],
        }


class TableCategory(FinCat):
    """
    A category given by explicit tables.

    Compositions with an identity may be omitted from the table; any other
    missing entry makes compose raise CategoryError.
    """

    def __init__(
        self,
        objects: Sequence[Hashable],
        morphisms: dict[Hashable, tuple[Hashable, Hashable]],
        identities: dict[Hashable, Hashable],
        composition: dict[tuple[Hashable, Hashable], Hashable],
    ):
        self._objects = list(objects)
        self._morphisms = dict(morphisms)
        self._identities = dict(identities)
        self._composition = dict(composition)
        for x in self._objects:
            if x not in self._identities:
                raise CategoryError(f"Object {x!r} has no identity")

    @classmethod
    def tabulate(cls, category: FinCat) -> "TableCategory":
        """Freeze any finite category into explicit tables, keeping its labels."""
        composition = {
            (g, f): category.compose(g, f)
            for g, f in category.composable_pairs()
            if not (category.is_identity(g) or category.is_identity(f))
        }
        return cls(
            category.objects(),
            {m: (category.src(m), category.dst(m)) for m in category.morphisms()},
            {x: category.identity(x) for x in category.objects()},
            composition,
        )

    @classmethod
    def from_dict(cls, data: dict) -> "TableCategory":
        """
        Inverse of to_dict: objects keep their names, morphisms their ids.

        A "comp" entry [g, f, h] records that g after f is h.
        """
        objects = list(data["objects"])
        morphisms = {
            m["id"]: (objects[m["src"]], objects[m["dst"]]) for m in data["morphisms"]
        }
        identities = dict(zip(objects, data["ids"], strict=True))
        composition = {(g, f): h for g, f, h in data.get("comp", [])}
        return cls(objects, morphisms, identities, composition)

    def objects(self):
        return self._objects

    def morphisms(self):
        return list(self._morphisms)

    def src(self, m):
        return self._morphisms[m][0]

    def dst(self, m):
        return self._morphisms[m][1]

    def identity(self, x):
        return self._identities[x]

    def compose(self, g, f):
        if self.dst(f) != self.src(g):
            raise CategoryError(f"{g!r} and {f!r} are not composable")
        if (g, f) in self._composition:
            return self._composition[(g, f)]
        if self.is_identity(f):
            return g
        if self.is_identity(g):
            return f
        raise CategoryError(f"Composite of {g!r} after {f!r} is undefined")

    def is_identity(self, m):
        return self._identities.get(self.src(m)) == m

    def without_morphism(self, m: Hashable) -> "TableCategory":
        """Copy with one non-identity morphism and every table entry naming it removed."""
        if self.is_identity(m):
            raise CategoryError("Identities cannot be removed")
        morphisms = {k: v for k, v in self._morphisms.items() if k != m}
        composition = {
            key: value
            for key, value in self._composition.items()
            if m not in key and value != m
        }
        return TableCategory(self._objects, morphisms, self._identities, composition)

    def with_composite(self, g: Hashable, f: Hashable, h: Hashable) -> "TableCategory":
        composition = dict(self._composition)
        composition[(g, f)] = h
        return TableCategory(self._objects, self._morphisms, self._identities, composition)


class FinUpTo(FinCat):
    """The full subcategory of Fin on the objects 0..t."""

    def __init__(self, t: int):
        self.t = t

    def objects(self):
        return list(range(self.t + 1))

    def morphisms(self):
        return [f for k in range(self.t + 1) for f in self.out_morphisms(k)]

    def out_morphisms(self, k):
        return [f for ell in range(self.t + 1) for f in enumerate_maps(k, ell)]

    def src(self, m):
        return m.dom

    def dst(self, m):
        return m.cod

    def identity(self, x):
        return FinMap.identity(x)

    def compose(self, g, f):
        return g.compose(f)

    def is_identity(self, m):
        return m.is_identity

    def inverse(self, m):
        if not m.is_bijective():
            return None
        img = [0] * m.dom
        for i, value in enumerate(m.img, start=1):
            img[value - 1] = i
        return FinMap(m.cod, m.dom, tuple(img))

    def automorphisms(self, k: int) -> list[FinMap]:
        return [FinMap(k, k, p) for p in itertools.permutations(range(1, k + 1))]

    def __eq__(self, other):
        return isinstance(other, FinUpTo) and other.t == self.t

    def __hash__(self):
        return hash(("FinUpTo", self.t))


@dataclass
class FinCatOverFin:
    """A finite category with a reference functor to Fin."""

    category: FinCat
    to_fin_obj: Callable[[Hashable], int]
    to_fin_mor: Callable[[Hashable], FinMap]

    def fin_bound(self) -> int:
        """The least t such that the reference lands in Fin up to t."""
        return max((self.to_fin_obj(x) for x in self.category.objects()), default=0)

    def over_identity(self, m: Hashable) -> bool:
        return self.to_fin_mor(m).is_identity

    def check(self) -> list[str]:
        """Functoriality problems of the reference to Fin."""
        C = self.category
        problems = []
        for x in C.objects():
            if not self.to_fin_mor(C.identity(x)).is_identity:
                problems.append(f"identity of {x!r} does not go to an identity")
        for m in C.morphisms():
            f = self.to_fin_mor(m)
            if (f.dom, f.cod) != (self.to_fin_obj(C.src(m)), self.to_fin_obj(C.dst(m))):
                problems.append(f"reference of {m!r} has wrong endpoints")
        for g, f in C.composable_pairs():
            if self.to_fin_mor(C.compose(g, f)) != self.to_fin_mor(g).compose(self.to_fin_mor(f)):
                problems.append(f"reference does not preserve the composite of {g!r}, {f!r}")
        return problems


@dataclass
class FinCatFunctor:
    """A functor given by its object and morphism maps."""

    source: FinCat
    target: FinCat
    on_obj: Callable[[Hashable], Hashable]
    on_mor: Callable[[Hashable], Hashable]

    def check(self) -> list[str]:
        problems = []
        S, T = self.source, self.target
        for x in S.objects():
            if self.on_mor(S.identity(x)) != T.identity(self.on_obj(x)):
                problems.append(f"identity of {x!r} is not preserved")
        for m in S.morphisms():
            image = self.on_mor(m)
            if T.src(image) != self.on_obj(S.src(m)) or T.dst(image) != self.on_obj(S.dst(m)):
                problems.append(f"image of {m!r} has wrong endpoints")
        if problems:
            return problems
        for g, f in S.composable_pairs():
            if self.on_mor(S.compose(g, f)) != T.compose(self.on_mor(g), self.on_mor(f)):
                problems.append(f"composite of {g!r}, {f!r} is not preserved")
        return problems


class FiniteGroup:
    """A finite group given by its elements and multiplication table."""

    def __init__(self, elements: Sequence[Hashable], table: dict, identity: Hashable):
        self.elements = list(elements)
        self.table = table
        self.unit = identity
        self._inverse = {
            g: next(h for h in self.elements if table[(g, h)] == identity) for g in self.elements
        }

    @classmethod
    def from_permutations(
        cls, generators: Iterable[Sequence[int]], degree: int, max_order: int | None = None
    ) -> "FiniteGroup":
        """
        The permutation group generated by 0-based image lists.

        The product convention is (gh)(i) = g(h(i)).

        Raises:
            GroupActionError: if a generator is not a permutation of range(degree)
                or the closure exceeds max_order
        """
        gens = []
        for g in generators:
            g = tuple(g)
            if sorted(g) != list(range(degree)):
                raise GroupActionError(f"{list(g)} is not a permutation of {degree} points")
            gens.append(g)
        if degree == 0 or not gens:
            elements = [tuple(range(degree))]
        else:
            group = PermutationGroup([Permutation(list(g)) for g in gens])
            order = int(group.order())
            if max_order is not None and order > max_order:
                raise GroupActionError(f"Generated group of order {order} exceeds {max_order}")
            elements = sorted(tuple(p.array_form) for p in group.generate())
        table = {
            (g, h): tuple(g[h[i]] for i in range(degree)) for g in elements for h in elements
        }
        return cls(elements, table, tuple(range(degree)))

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([()], {((), ()): ()}, ())

    @classmethod
    def direct_product(cls, G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        elements = [(g, h) for g in G.elements for h in H.elements]
        table = {
            (a, b): (G.mul(a[0], b[0]), H.mul(a[1], b[1])) for a in elements for b in elements
        }
        return cls(elements, table, (G.unit, H.unit))

    def mul(self, g, h):
        return self.table[(g, h)]

    def inverse(self, g):
        return self._inverse[g]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def validate(self) -> list[str]:
        problems = []
        for g in self.elements:
            if self.mul(self.unit, g) != g or self.mul(g, self.unit) != g:
                problems.append(f"{g!r} breaks the unit law")
        for g, h, k in itertools.product(self.elements, repeat=3):
            if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)):
                problems.append(f"associativity fails on {g!r}, {h!r}, {k!r}")
                break
        return problems


@dataclass
class GroupAction:
    """A left action of a finite group on a category by automorphisms."""

    group: FiniteGroup
    category: FinCat
    act_obj: Callable[[Hashable, Hashable], Hashable]
    act_mor: Callable[[Hashable, Hashable], Hashable]

    def validate(self) -> list[str]:
        G, C = self.group, self.category
        problems = []
        for x in C.objects():
            if self.act_obj(G.unit, x) != x:
                problems.append(f"unit acts nontrivially on {x!r}")
        for m in C.morphisms():
            if self.act_mor(G.unit, m) != m:
                problems.append(f"unit acts nontrivially on {m!r}")
        for g in G.elements:
            for m in C.morphisms():
                image = self.act_mor(g, m)
                if C.src(image) != self.act_obj(g, C.src(m)) or C.dst(image) != self.act_obj(
                    g, C.dst(m)
                ):
                    problems.append(f"{g!r} moves {m!r} to a morphism with wrong endpoints")
            for h in G.elements:
                gh = G.mul(g, h)
                for x in C.objects():
                    if self.act_obj(gh, x) != self.act_obj(g, self.act_obj(h, x)):
                        problems.append(f"action of {g!r}{h!r} is not a composite on {x!r}")
        return problems

    def check_over_fin(self, over: FinCatOverFin) -> list[str]:
        """Problems with compatibility of the action and the reference to Fin."""
        problems = []
        for g in self.group.elements:
            for m in self.category.morphisms():
                if over.to_fin_mor(self.act_mor(g, m)) != over.to_fin_mor(m):
                    problems.append(f"{g!r} changes the reference of {m!r}")
        return problems


class CommaCategory(FinCat):
    """
    The category of morphisms into a fixed object x.

    Objects are morphisms h: z -> x; a morphism (g, h'): h'g -> h' is a
    commuting triangle.
    """

    def __init__(self, base: FinCat, x: Hashable):
        self.base = base
        self.x = x

    @cached_property
    def _objects(self):
        return [h for h in self.base.morphisms() if self.base.dst(h) == self.x]

    def objects(self):
        return self._objects

    def morphisms(self):
        B = self.base
        return [(g, h) for h in self._objects for g in B.morphisms() if B.dst(g) == B.src(h)]

    def src(self, m):
        g, h = m
        return self.base.compose(h, g)

    def dst(self, m):
        return m[1]

    def identity(self, h):
        return (self.base.identity(self.base.src(h)), h)

    def compose(self, second, first):
        return (self.base.compose(second[0], first[0]), second[1])

    def forget(self) -> FinCatFunctor:
        """The projection to the base category."""
        return FinCatFunctor(self, self.base, self.base.src, lambda m: m[0])


def comma(C: FinCatOverFin, x: Hashable) -> FinCatOverFin:
    """The comma category C/x with reference through C."""
    category = CommaCategory(C.category, x)
    return FinCatOverFin(
        category,
        lambda h: C.to_fin_obj(C.category.src(h)),
        lambda m: C.to_fin_mor(m[0]),
    )


@dataclass
class SetDiagram:
    """
    A contravariant set-valued functor on a finite category.

    act(g, y) is F(g) applied to y in F(dst g); the result lies in F(src g).
    """

    values: Callable[[Hashable], Sequence[Hashable]]
    act: Callable[[Hashable, Hashable], Hashable]

    @classmethod
    def constant(cls, point: Hashable = ()) -> "SetDiagram":
        return cls(lambda d: [point], lambda g, y: y)

    def check(self, D: FinCat) -> list[str]:
        problems = []
        for d in D.objects():
            ident = D.identity(d)
            for y in self.values(d):
                if self.act(ident, y) != y:
                    problems.append(f"identity of {d!r} moves {y!r}")
        for g, f in D.composable_pairs():
            admissible = set(self.values(D.src(f)))
            for y in self.values(D.dst(g)):
                composite = self.act(D.compose(g, f), y)
                stepwise = self.act(f, self.act(g, y))
                if composite != stepwise or composite not in admissible:
                    problems.append(f"F does not respect the composite of {g!r}, {f!r}")
                    break
        return problems


class GrothendieckCategory(FinCat):
    """
    The category of elements of a contravariant diagram F on D.

    Objects are pairs (d, x) with x in F(d). A morphism labelled (g, y) with
    g: d -> d' in D and y in F(d') runs from (d, F(g)y) to (d', y). Its nerve
    is the homotopy colimit of F over the opposite of D.
    """

    def __init__(self, D: FinCat, F: SetDiagram):
        self.D = D
        self.F = F
        self._values = {d: list(F.values(d)) for d in D.objects()}
        self._preimages: dict[Hashable, dict[Hashable, list[Hashable]]] = {}

    def objects(self):
        return [(d, x) for d in self.D.objects() for x in self._values[d]]

    def morphisms(self):
        return [m for obj in self.objects() for m in self.out_morphisms(obj)]

    def _preimage(self, g) -> dict[Hashable, list[Hashable]]:
        index = self._preimages.get(g)
        if index is None:
            index = defaultdict(list)
            for y in self._values[self.D.dst(g)]:
                index[self.F.act(g, y)].append(y)
            self._preimages[g] = index
        return index

    def out_morphisms(self, obj):
        d, x = obj
        return [(g, y) for g in self.D.out_morphisms(d) for y in self._preimage(g).get(x, [])]

    def outgoing(self, obj):
        d, x = obj
        result = []
        for g in self.D.out_morphisms(d):
            for y in self._preimage(g).get(x, []):
                if not (self.D.is_identity(g) and y == x):
                    result.append((g, y))
        return result

    def src(self, m):
        g, y = m
        return (self.D.src(g), self.F.act(g, y))

    def dst(self, m):
        g, y = m
        return (self.D.dst(g), y)

    def identity(self, obj):
        d, x = obj
        return (self.D.identity(d), x)

    def compose(self, second, first):
        return (self.D.compose(second[0], first[0]), second[1])

    def is_identity(self, m):
        return self.D.is_identity(m[0])

    def projection(self) -> FinCatFunctor:
        return FinCatFunctor(self, self.D, lambda obj: obj[0], lambda m: m[0])


def grothendieck(D: FinCat, F: SetDiagram, check: bool = True) -> GrothendieckCategory:
    """
    Category of elements of F.

    Raises:
        FunctorialityError: when check is set and F fails on a composable pair
    """
    if check:
        problems = F.check(D)
        if problems:
            raise FunctorialityError(problems[0])
    return GrothendieckCategory(D, F)


class FullSubcategory(FinCat):
    """The full subcategory of C on some of its objects; labels are C's."""

    def __init__(self, C: FinCat, objects: Iterable[Hashable]):
        self.C = C
        self._objects = list(objects)
        self._members = set(self._objects)

    def __contains__(self, x) -> bool:
        return x in self._members

    def objects(self):
        return self._objects

    def morphisms(self):
        return [m for x in self._objects for m in self.out_morphisms(x)]

    def out_morphisms(self, x):
        return [m for m in self.C.out_morphisms(x) if self.C.dst(m) in self._members]

    def outgoing(self, x):
        return [m for m in self.C.outgoing(x) if self.C.dst(m) in self._members]

    def src(self, m):
        return self.C.src(m)

    def dst(self, m):
        return self.C.dst(m)

    def identity(self, x):
        return self.C.identity(x)

    def compose(self, g, f):
        return self.C.compose(g, f)

    def is_identity(self, m):
        return self.C.is_identity(m)


def cone_point(C: FinCat, objects: Sequence[Hashable]) -> Hashable | None:
    """
    An initial or terminal object of the full subcategory on objects, if any.

    Either one makes the nerve of that subcategory contractible. One pass over
    the morphisms out of objects decides both.
    """
    members = set(objects)
    exactly_once: dict[Hashable, int] = defaultdict(int)
    for x in objects:
        targets: dict[Hashable, int] = defaultdict(int)
        for m in C.out_morphisms(x):
            y = C.dst(m)
            if y in members:
                targets[y] += 1
        if len(targets) == len(members) and all(count == 1 for count in targets.values()):
            return x
        for y, count in targets.items():
            if count == 1:
                exactly_once[y] += 1
    for y in objects:
        if exactly_once[y] == len(members):
            return y
    return None


class SemidirectCategory(FinCat):
    """
    The action category of G on C.

    A morphism (phi, g): x -> y is phi: x -> g.y in C; composites twist the
    second morphism by the first group element.
    """

    def __init__(self, action: GroupAction):
        self.action = action
        self.base = action.category
        self.group = action.group

    def objects(self):
        return self.base.objects()

    def morphisms(self):
        return [m for x in self.objects() for m in self.out_morphisms(x)]

    def out_morphisms(self, x):
        return [(phi, g) for phi in self.base.out_morphisms(x) for g in self.group.elements]

    def src(self, m):
        return self.base.src(m[0])

    def dst(self, m):
        phi, g = m
        return self.action.act_obj(self.group.inverse(g), self.base.dst(phi))

    def identity(self, x):
        return (self.base.identity(x), self.group.unit)

    def compose(self, second, first):
        psi, h = second
        phi, g = first
        twisted = self.action.act_mor(g, psi)
        return (self.base.compose(twisted, phi), self.group.mul(g, h))

    def is_identity(self, m):
        return m[1] == self.group.unit and self.base.is_identity(m[0])


def semidirect(C: FinCatOverFin, A: GroupAction, check: bool = True) -> FinCatOverFin:
    """
    The semidirect product of C by a group action; the reference forgets g.

    Raises:
        GroupActionError: if the action is invalid or changes references to Fin
    """
    if check:
        problems = A.validate() or A.check_over_fin(C)
        if problems:
            raise GroupActionError(problems[0])
    return FinCatOverFin(
        SemidirectCategory(A),
        C.to_fin_obj,
        lambda m: C.to_fin_mor(m[0]),
    )


def untwist_string(category: SemidirectCategory, string: tuple) -> tuple[tuple, tuple]:
    """
    Split a string of the action category into a string of C and group labels.

    (x0, (phi_1, g_1), ..., (phi_n, g_n)) goes to the C-string with vertices
    x0, g_1 x1, g_1 g_2 x2, ... and the labels (g_1, ..., g_n).
    """
    action, G = category.action, category.group
    running = G.unit
    base_morphisms, labels = [], []
    for phi, g in string[1:]:
        base_morphisms.append(action.act_mor(running, phi))
        labels.append(g)
        running = G.mul(running, g)
    return (string[0], *base_morphisms), tuple(labels)


def string_vertices(C: FinCat, string: tuple) -> tuple:
    return (string[0], *(C.dst(m) for m in string[1:]))


def string_face(C: FinCat, string: tuple, i: int) -> tuple:
    """The i-th face of a composable string (x0, m1, ..., mn)."""
    n = len(string) - 1
    if i == 0:
        if n == 1:
            return (C.dst(string[1]),)
        return (C.dst(string[1]), *string[2:])
    if i == n:
        return string[:-1]
    return (*string[:i], C.compose(string[i + 1], string[i]), *string[i + 2 :])


def string_act(C: FinCat, op: Monotone, string: tuple) -> tuple:
    """The Delta-operator op: [n'] -> [n] applied to a string of length n."""
    vertices = string_vertices(C, string)
    result = [vertices[op.values[0]]]
    for a, b in itertools.pairwise(op.values):
        if a == b:
            result.append(C.identity(vertices[a]))
            continue
        m = string[a + 1]
        for t in range(a + 2, b + 1):
            m = C.compose(string[t], m)
        result.append(m)
    return tuple(result)


def normalize_string(C: FinCat, string: tuple) -> tuple[tuple, Monotone]:
    """Split a string into its nondegenerate part and the collapsing surjection."""
    kept = [string[0]]
    values, level = [0], 0
    for m in string[1:]:
        if not C.is_identity(m):
            kept.append(m)
            level += 1
        values.append(level)
    return tuple(kept), Monotone(tuple(values), level)


def nerve(C: FinCat, cap: int) -> CappedSSet:
    """
    The nerve of C up to dimension cap.

    Nondegenerate n-simplices are strings of n non-identity morphisms, built
    breadth-first by string length. Face keys are shared with the stored keys
    of the degree below.
    """
    nondeg: dict[int, list[tuple]] = {0: [(x,) for x in C.objects()]}
    faces: dict[tuple, tuple] = {}
    known: dict[tuple, tuple] = {key: key for key in nondeg[0]}
    surjections: dict[Monotone, Monotone] = {}

    def stored(face: tuple[tuple, Monotone]) -> tuple[tuple, Monotone]:
        key, eta = face
        return (known.get(key, key), surjections.setdefault(eta, eta))

    for n in range(1, cap + 1):
        level = []
        for s in nondeg[n - 1]:
            last = s[0] if len(s) == 1 else C.dst(s[-1])
            for m in C.outgoing(last):
                t = (*s, m)
                level.append(t)
                faces[t] = tuple(
                    stored(normalize_string(C, string_face(C, t, i))) for i in range(n + 1)
                )
        known.update((key, key) for key in level)
        nondeg[n] = level
        logger.debug(f"Nerve degree {n}: {len(level)} nondegenerate simplices")
    return CappedSSet(cap, nondeg, faces)


def nerve_map(
    functor: FinCatFunctor, source: CappedSSet, target: CappedSSet
) -> SimplicialMap:
    """The simplicial map induced by a functor between the nerves' categories."""
    images = {}
    for n in range(source.cap + 1):
        for key in source.nondeg[n]:
            image = (functor.on_obj(key[0]), *(functor.on_mor(m) for m in key[1:]))
            images[key] = normalize_string(functor.target, image)
    return SimplicialMap(source, target, images)


@dataclass
class NaturalTransformation:
    """A map of contravariant diagrams F -> F' on D, componentwise."""

    D: FinCat
    source: SetDiagram
    target: SetDiagram
    component: Callable[[Hashable, Hashable], Hashable]

    def induced_functor(
        self, source: GrothendieckCategory, target: GrothendieckCategory
    ) -> FinCatFunctor:
        return FinCatFunctor(
            source,
            target,
            lambda obj: (obj[0], self.component(obj[0], obj[1])),
            lambda m: (m[0], self.component(source.D.dst(m[0]), m[1])),
        )

    def check(self) -> list[str]:
        problems = []
        for g in self.D.morphisms():
            for y in self.source.values(self.D.dst(g)):
                left = self.component(self.D.src(g), self.source.act(g, y))
                right = self.target.act(g, self.component(self.D.dst(g), y))
                if left != right:
                    problems.append(f"naturality fails at {g!r} on {y!r}")
        return problems


def over_fin_to_dict(C: FinCatOverFin) -> dict:
    """
    Table serialization of a category over Fin: to_dict() plus "sizes" per
    object and a "fin" image list on every morphism.
    """
    data = C.category.to_dict()
    data["sizes"] = [C.to_fin_obj(x) for x in C.category.objects()]
    for entry, m in zip(data["morphisms"], C.category.morphisms(), strict=True):
        entry["fin"] = list(C.to_fin_mor(m).img)
    return data


def over_fin_from_dict(data: dict) -> FinCatOverFin:
    """
    Inverse of over_fin_to_dict; morphisms are identified by their ids.

    Raises:
        CategoryError: if sizes or Fin images are missing
    """
    if "sizes" not in data or any("fin" not in m for m in data["morphisms"]):
        raise CategoryError("A category over Fin needs object sizes and morphism images")
    category = TableCategory.from_dict(data)
    sizes = dict(zip(data["objects"], data["sizes"], strict=True))
    images = {m["id"]: tuple(m["fin"]) for m in data["morphisms"]}

    def to_fin_mor(m):
        return FinMap(sizes[category.src(m)], sizes[category.dst(m)], images[m])

    return FinCatOverFin(category, sizes.__getitem__, to_fin_mor)
