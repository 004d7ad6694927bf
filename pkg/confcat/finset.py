"""
Arithmetic of the category Fin.

Objects of Fin are the finite sets {1, ..., k}; elements are 1-based and the
empty set (k = 0) participates everywhere. This module provides maps of
finite sets, selfic surjections and their correspondence with partitions,
and the category Boxfin of diagrams r <- k -> s with selfic legs and an
injective pairing.

All enumerations return lists in lexicographic order of image sequences so
every downstream construction is deterministic and serializable.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cache

from .exceptions import FinMapError, PartitionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class FinMap:
    """A map {1..dom} -> {1..cod}, stored as its image sequence."""

    dom: int
    cod: int
    img: tuple[int, ...]

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0:
            raise FinMapError(f"Negative set size in {self.dom}->{self.cod}")
        if len(self.img) != self.dom:
            raise FinMapError(
                f"Image sequence of length {len(self.img)} for domain {self.dom}"
            )
        for value in self.img:
            if not 1 <= value <= self.cod:
                raise FinMapError(f"Entry {value} outside 1..{self.cod}")

    @classmethod
    def identity(cls, k: int) -> "FinMap":
        return cls(k, k, tuple(range(1, k + 1)))

    @classmethod
    def empty(cls, cod: int) -> "FinMap":
        return cls(0, cod, ())

    @classmethod
    def constant(cls, k: int) -> "FinMap":
        """The map k -> 1 (for k = 0 this is the empty map into a point)."""
        return cls(k, 1, (1,) * k)

    def __call__(self, i: int) -> int:
        return self.img[i - 1]

    def compose(self, other: "FinMap") -> "FinMap":
        """Return self after other."""
        if other.cod != self.dom:
            raise FinMapError(
                f"Cannot compose {self.dom}->{self.cod} after {other.dom}->{other.cod}"
            )
        return FinMap(other.dom, self.cod, tuple(self.img[i - 1] for i in other.img))

    @property
    def is_identity(self) -> bool:
        return self.dom == self.cod and self.img == tuple(range(1, self.dom + 1))

    def image(self) -> frozenset[int]:
        return frozenset(self.img)

    def is_surjective(self) -> bool:
        return len(set(self.img)) == self.cod

    def is_injective(self) -> bool:
        return len(set(self.img)) == self.dom

    def is_bijective(self) -> bool:
        return self.dom == self.cod and self.is_injective()

    def fibers(self) -> "Partition":
        """Nonempty preimages as a partition of the domain."""
        blocks: dict[int, set[int]] = {}
        for i, value in enumerate(self.img, start=1):
            blocks.setdefault(value, set()).add(i)
        return Partition.from_blocks(self.dom, blocks.values())

    def to_dict(self) -> dict:
        return {"dom": self.dom, "cod": self.cod, "img": list(self.img)}

    @classmethod
    def from_dict(cls, data: dict) -> "FinMap":
        return cls(int(data["dom"]), int(data["cod"]), tuple(data["img"]))

    def __repr__(self):
        return f"FinMap({self.dom}->{self.cod}: {list(self.img)})"


@dataclass(frozen=True, slots=True)
class Partition:
    """A partition of {1..ground} into nonempty disjoint blocks."""

    ground: int
    blocks: frozenset[frozenset[int]]

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise PartitionError("Empty block in partition")
            if seen & block:
                raise PartitionError(f"Block {sorted(block)} overlaps another block")
            seen |= block
        if seen != set(range(1, self.ground + 1)):
            raise PartitionError(
                f"Blocks cover {sorted(seen)} instead of 1..{self.ground}"
            )

    @classmethod
    def from_blocks(cls, ground: int, blocks) -> "Partition":
        return cls(ground, frozenset(frozenset(b) for b in blocks))

    @classmethod
    def discrete(cls, k: int) -> "Partition":
        return cls.from_blocks(k, [{i} for i in range(1, k + 1)])

    @classmethod
    def indiscrete(cls, k: int) -> "Partition":
        return cls.from_blocks(k, [set(range(1, k + 1))] if k else [])

    def ordered_blocks(self) -> list[frozenset[int]]:
        """Blocks sorted by their minimum element."""
        return sorted(self.blocks, key=min)

    def __len__(self):
        return len(self.blocks)


def is_selfic(f: FinMap) -> bool:
    """
    True iff f is surjective and x -> min f^-1(x) is strictly increasing.

    Equivalently the image sequence is a restricted growth string whose
    first occurrences appear in the order 1, 2, ..., cod.
    """
    if not f.is_surjective():
        return False
    next_new = 1
    for value in f.img:
        if value > next_new:
            return False
        if value == next_new:
            next_new += 1
    return True


def selfic_of_partition(partition: Partition) -> FinMap:
    """The unique selfic surjection whose fibers are the blocks of the partition."""
    label = {}
    for index, block in enumerate(partition.ordered_blocks(), start=1):
        for element in block:
            label[element] = index
    img = tuple(label[i] for i in range(1, partition.ground + 1))
    return FinMap(partition.ground, len(partition), img)


def enumerate_selfic(k: int, ell: int) -> list[FinMap]:
    """All selfic surjections k -> ell, lexicographic in their image sequences."""
    if ell > k or (k > 0 and ell == 0):
        return []
    result: list[FinMap] = []

    def extend(prefix: list[int], current_max: int):
        position = len(prefix)
        if position == k:
            if current_max == ell:
                result.append(FinMap(k, ell, tuple(prefix)))
            return
        # enough positions must remain to reach ell
        if current_max + (k - position) < ell:
            return
        for value in range(1, min(current_max + 1, ell) + 1):
            prefix.append(value)
            extend(prefix, max(current_max, value))
            prefix.pop()

    extend([], 0)
    return result


def enumerate_surjections(k: int, ell: int) -> list[FinMap]:
    """All surjections k -> ell, lexicographic."""
    return [f for f in enumerate_maps(k, ell) if f.is_surjective()]


def enumerate_maps(k: int, ell: int) -> list[FinMap]:
    """All maps k -> ell, lexicographic."""
    return [
        FinMap(k, ell, img)
        for img in itertools.product(range(1, ell + 1), repeat=k)
    ]


def enumerate_partitions(k: int) -> list[Partition]:
    """
    All partitions of {1..k}, built by inserting each element into an
    existing block or a new one. Independent of the selfic enumeration.
    """
    partial: list[list[set[int]]] = [[]]
    for element in range(1, k + 1):
        grown = []
        for blocks in partial:
            for index in range(len(blocks)):
                copy = [set(b) for b in blocks]
                copy[index].add(element)
                grown.append(copy)
            grown.append([set(b) for b in blocks] + [{element}])
        partial = grown
    return [Partition.from_blocks(k, blocks) for blocks in partial]


@cache
def stirling2(k: int, ell: int) -> int:
    """Number of partitions of a k-set into ell blocks."""
    if k == ell:
        return 1
    if k == 0 or ell == 0:
        return 0
    return ell * stirling2(k - 1, ell) + stirling2(k - 1, ell - 1)


def injection_count(k: int, n: int) -> int:
    """Number of injections k -> n, i.e. n!/(n-k)!."""
    count = 1
    for i in range(k):
        count *= n - i
    return max(count, 0) if k <= n else 0


@dataclass(frozen=True, slots=True)
class BoxObj:
    """An object r <- k -> s of Boxfin."""

    k: int
    r: int
    s: int
    p: FinMap
    q: FinMap

    def __post_init__(self):
        if (self.p.dom, self.p.cod) != (self.k, self.r):
            raise FinMapError(f"Leg p is {self.p.dom}->{self.p.cod}, not {self.k}->{self.r}")
        if (self.q.dom, self.q.cod) != (self.k, self.s):
            raise FinMapError(f"Leg q is {self.q.dom}->{self.q.cod}, not {self.k}->{self.s}")
        if not (self.p.is_surjective() and self.q.is_surjective()):
            raise FinMapError("Boxfin legs must be surjective")
        if len(set(self.pairing())) != self.k:
            raise FinMapError("Boxfin pairing k -> r x s must be injective")

    def pairing(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.p.img, self.q.img, strict=True))

    @property
    def is_selfic(self) -> bool:
        return is_selfic(self.p) and is_selfic(self.q)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "r": self.r,
            "s": self.s,
            "p": self.p.to_dict(),
            "q": self.q.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoxObj":
        return cls(
            data["k"],
            data["r"],
            data["s"],
            FinMap.from_dict(data["p"]),
            FinMap.from_dict(data["q"]),
        )

    def sort_key(self):
        return (self.k, self.r, self.s, self.p.img, self.q.img)


@dataclass(frozen=True, slots=True)
class BoxMor:
    """A natural transformation (a, b, c) between two Boxfin diagrams."""

    src: BoxObj
    dst: BoxObj
    a: FinMap
    b: FinMap
    c: FinMap

    def __post_init__(self):
        if self.b.compose(self.src.p) != self.dst.p.compose(self.a):
            raise FinMapError("Boxfin morphism fails b.p = p'.a")
        if self.c.compose(self.src.q) != self.dst.q.compose(self.a):
            raise FinMapError("Boxfin morphism fails c.q = q'.a")

    @classmethod
    def identity(cls, obj: BoxObj) -> "BoxMor":
        return cls(
            obj, obj, FinMap.identity(obj.k), FinMap.identity(obj.r), FinMap.identity(obj.s)
        )

    def compose(self, other: "BoxMor") -> "BoxMor":
        """Return self after other."""
        if other.dst != self.src:
            raise FinMapError("Boxfin morphisms are not composable")
        return BoxMor(
            other.src,
            self.dst,
            self.a.compose(other.a),
            self.b.compose(other.b),
            self.c.compose(other.c),
        )

    @property
    def is_identity(self) -> bool:
        return self.src == self.dst and self.a.is_identity

    def to_dict(self) -> dict:
        return {
            "src": self.src.to_dict(),
            "dst": self.dst.to_dict(),
            "a": self.a.to_dict(),
            "b": self.b.to_dict(),
            "c": self.c.to_dict(),
        }


def _legs(k: int, target: int, selfic: bool) -> list[FinMap]:
    return enumerate_selfic(k, target) if selfic else enumerate_surjections(k, target)


def boxfin_objects(
    k_max: int, r_max: int, s_max: int, selfic: bool = True
) -> list[BoxObj]:
    """
    All Boxfin objects within the bounds.

    With selfic=False the legs range over all surjections, giving the
    equivalent but larger category used to show what the selfic
    normalization buys.
    """
    objects = []
    for r in range(r_max + 1):
        for s in range(s_max + 1):
            for k in range(min(k_max, r * s) + 1):
                for p in _legs(k, r, selfic):
                    for q in _legs(k, s, selfic):
                        if len(set(zip(p.img, q.img, strict=True))) == k:
                            objects.append(BoxObj(k, r, s, p, q))
    objects.sort(key=BoxObj.sort_key)
    logger.debug(
        f"Enumerated {len(objects)} Boxfin objects within ({k_max}, {r_max}, {s_max})"
    )
    return objects


def _induced_leg(leg: FinMap, leg_target: FinMap, a: FinMap) -> FinMap | None:
    """The map b with b.leg = leg_target.a, if it is well defined."""
    values: dict[int, int] = {}
    for i in range(1, leg.dom + 1):
        wanted = leg_target(a(i))
        if values.setdefault(leg(i), wanted) != wanted:
            return None
    return FinMap(leg.cod, leg_target.cod, tuple(values[x] for x in range(1, leg.cod + 1)))


def boxfin_morphisms(kappa: BoxObj, lam: BoxObj) -> list[BoxMor]:
    """All morphisms kappa -> lam, lexicographic in the k-component."""
    morphisms = []
    for a in enumerate_maps(kappa.k, lam.k):
        b = _induced_leg(kappa.p, lam.p, a)
        if b is None:
            continue
        c = _induced_leg(kappa.q, lam.q, a)
        if c is None:
            continue
        morphisms.append(BoxMor(kappa, lam, a, b, c))
    return morphisms


def boxfin_lift(kappa: BoxObj, lam: BoxObj, u: FinMap, v: FinMap) -> BoxMor | None:
    """
    The unique morphism kappa -> lam over (u, v), or None.

    Injectivity of lam's pairing makes the k-component forced: each i must go
    to the unique j with (p'(j), q'(j)) = (u(p(i)), v(q(i))).
    """
    if (u.dom, u.cod) != (kappa.r, lam.r) or (v.dom, v.cod) != (kappa.s, lam.s):
        raise FinMapError("Lift data does not match the legs of the two boxes")
    position = {pair: j for j, pair in enumerate(lam.pairing(), start=1)}
    assert len(position) == lam.k, "pairing of the target box is not injective"
    img = []
    for i in range(1, kappa.k + 1):
        j = position.get((u(kappa.p(i)), v(kappa.q(i))))
        if j is None:
            return None
        img.append(j)
    return BoxMor(kappa, lam, FinMap(kappa.k, lam.k, tuple(img)), u, v)
