"""
Simplicial substrate: monotone maps of the simplex category and finite
simplicial sets stored by their nondegenerate simplices.

A simplex of a CappedSSet is a pair (key, eta) where key names a
nondegenerate simplex of degree m and eta: [n] -> [m] is a monotone
surjection; by the Eilenberg-Zilber lemma this representation is unique, so
two simplices are equal exactly when their pairs are.
"""

import itertools
import logging
from collections.abc import Callable, Hashable, Iterable
from dataclasses import dataclass

from .exceptions import SimplicialError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Monotone:
    """A weakly increasing map [dom] -> [cod], stored as its value sequence."""

    values: tuple[int, ...]
    cod: int

    def __post_init__(self):
        if not self.values:
            raise SimplicialError("A monotone map needs a nonempty source [n]")
        previous = 0
        for value in self.values:
            if value < previous or value > self.cod:
                raise SimplicialError(f"{self.values} is not monotone into [{self.cod}]")
            previous = value

    @property
    def dom(self) -> int:
        return len(self.values) - 1

    @classmethod
    def identity(cls, n: int) -> "Monotone":
        return cls(tuple(range(n + 1)), n)

    @classmethod
    def coface(cls, n: int, i: int) -> "Monotone":
        """delta_i: [n-1] -> [n], the injection skipping i."""
        if not 0 <= i <= n or n < 1:
            raise SimplicialError(f"No coface {i} into [{n}]")
        return cls(tuple(v for v in range(n + 1) if v != i), n)

    @classmethod
    def codegeneracy(cls, n: int, j: int) -> "Monotone":
        """sigma_j: [n+1] -> [n], hitting j twice."""
        if not 0 <= j <= n:
            raise SimplicialError(f"No codegeneracy {j} onto [{n}]")
        return cls(tuple(v if v <= j else v - 1 for v in range(n + 2)), n)

    @classmethod
    def vertex(cls, n: int, i: int) -> "Monotone":
        return cls((i,), n)

    @classmethod
    def edge(cls, n: int, i: int, j: int) -> "Monotone":
        return cls((i, j), n)

    @property
    def is_identity(self) -> bool:
        return self.dom == self.cod and self.values == tuple(range(self.cod + 1))

    def __call__(self, i: int) -> int:
        return self.values[i]

    def compose(self, other: "Monotone") -> "Monotone":
        """Return self after other."""
        if other.cod != self.dom:
            raise SimplicialError(
                f"Cannot compose [{self.dom}]->[{self.cod}] after [{other.dom}]->[{other.cod}]"
            )
        return Monotone(tuple(self.values[v] for v in other.values), self.cod)

    def is_surjective(self) -> bool:
        return self.values[0] == 0 and self.values[-1] == self.cod and all(
            b - a <= 1 for a, b in itertools.pairwise(self.values)
        )

    def is_injective(self) -> bool:
        return all(a < b for a, b in itertools.pairwise(self.values))

    def factor(self) -> tuple["Monotone", "Monotone"]:
        """Epi-mono factorization: self = mono after epi."""
        image = sorted(set(self.values))
        position = {v: i for i, v in enumerate(image)}
        epi = Monotone(tuple(position[v] for v in self.values), len(image) - 1)
        mono = Monotone(tuple(image), self.cod)
        return epi, mono

    def section(self) -> "Monotone":
        """For a surjection, the section picking the first preimage of each vertex."""
        if not self.is_surjective():
            raise SimplicialError(f"{self.values} is not surjective")
        first = {}
        for i, v in enumerate(self.values):
            first.setdefault(v, i)
        return Monotone(tuple(first[v] for v in range(self.cod + 1)), self.dom)

    def preimage(self, subset: Iterable[int]) -> tuple[int, ...]:
        wanted = set(subset)
        return tuple(i for i, v in enumerate(self.values) if v in wanted)

    def to_list(self) -> list[int]:
        return list(self.values)

    def __repr__(self):
        return f"Monotone({list(self.values)}->[{self.cod}])"


def all_monotone(dom: int, cod: int) -> list[Monotone]:
    """All monotone maps [dom] -> [cod], lexicographic."""
    return [
        Monotone(values, cod)
        for values in itertools.combinations_with_replacement(range(cod + 1), dom + 1)
    ]


def surjections(dom: int, cod: int) -> list[Monotone]:
    return [m for m in all_monotone(dom, cod) if m.is_surjective()]


def injections(dom: int, cod: int) -> list[Monotone]:
    return [
        Monotone(values, cod)
        for values in itertools.combinations(range(cod + 1), dom + 1)
    ]


Simplex = tuple[Hashable, Monotone]


class CappedSSet:
    """
    A finite simplicial set up to dimension cap.

    nondeg maps each degree to its list of nondegenerate simplex keys; faces
    maps each key of positive degree to the tuple of its faces, each given as
    (nondegenerate key, surjection onto that key's degree).
    """

    def __init__(
        self,
        cap: int,
        nondeg: dict[int, list[Hashable]],
        faces: dict[Hashable, tuple[Simplex, ...]],
    ):
        if cap < 0:
            raise SimplicialError("cap must be nonnegative")
        self.cap = cap
        self.nondeg = {n: list(nondeg.get(n, [])) for n in range(cap + 1)}
        self.faces = faces
        self._degree: dict[Hashable, int] = {}
        for n, keys in self.nondeg.items():
            for key in keys:
                self._degree[key] = n

    def __contains__(self, key) -> bool:
        return key in self._degree

    def degree(self, key: Hashable) -> int:
        try:
            return self._degree[key]
        except KeyError:
            raise SimplicialError(f"Unknown simplex {key!r}") from None

    def count(self, n: int) -> int:
        return len(self.nondeg.get(n, []))

    def counts(self) -> list[int]:
        return [self.count(n) for n in range(self.cap + 1)]

    def simplex(self, key: Hashable) -> Simplex:
        return (key, Monotone.identity(self.degree(key)))

    def face(self, key: Hashable, i: int) -> Simplex:
        return self.faces[key][i]

    def apply(self, op: Monotone, simplex: Simplex) -> Simplex:
        """The simplex op*(simplex) for op: [n'] -> [n]."""
        key, eta = simplex
        if op.cod != eta.dom:
            raise SimplicialError(f"Operator into [{op.cod}] applied to a {eta.dom}-simplex")
        epi, mono = eta.compose(op).factor()
        base_key, base_eta = self._restrict(key, mono)
        return (base_key, base_eta.compose(epi))

    def _restrict(self, key: Hashable, mono: Monotone) -> Simplex:
        if mono.is_identity:
            return (key, Monotone.identity(mono.cod))
        missing = max(set(range(mono.cod + 1)) - set(mono.values))
        face_key, face_eta = self.faces[key][missing]
        rest = Monotone(tuple(v if v < missing else v - 1 for v in mono.values), mono.cod - 1)
        return self.apply(rest, (face_key, face_eta))

    def vertices(self, key: Hashable) -> tuple[Hashable, ...]:
        n = self.degree(key)
        return tuple(
            self.apply(Monotone.vertex(n, i), (key, Monotone.identity(n)))[0]
            for i in range(n + 1)
        )

    def check_simplicial_identities(self) -> list[tuple]:
        """Violations of d_i d_j = d_{j-1} d_i over all stored simplices."""
        violations = []
        for n in range(2, self.cap + 1):
            for key in self.nondeg[n]:
                for j in range(n + 1):
                    for i in range(j):
                        left = self.apply(Monotone.coface(n - 1, i), self.face(key, j))
                        right = self.apply(Monotone.coface(n - 1, j - 1), self.face(key, i))
                        if left != right:
                            violations.append((key, i, j))
        for key, stored in self.faces.items():
            n = self.degree(key)
            if len(stored) != n + 1:
                violations.append((key, "face-count", len(stored)))
            for face_key, eta in stored:
                if self.degree(face_key) > n - 1 or eta.dom != n - 1:
                    violations.append((key, "face-degree", face_key))
        return violations

    def full_subcomplex(self, keep_vertex: Callable[[Hashable], bool]) -> "CappedSSet":
        """
        The simplices all of whose vertices satisfy keep_vertex.

        Faces 0 and n of an n-simplex cover its vertices, so one pass in
        increasing degree decides every simplex from two earlier ones.
        """
        kept = {key for key in self.nondeg[0] if keep_vertex(key)}
        nondeg = {0: [key for key in self.nondeg[0] if key in kept]}
        for n in range(1, self.cap + 1):
            nondeg[n] = [
                key
                for key in self.nondeg[n]
                if self.faces[key][0][0] in kept and self.faces[key][n][0] in kept
            ]
            kept.update(nondeg[n])
        faces = {key: self.faces[key] for key in kept if key in self.faces}
        return CappedSSet(self.cap, nondeg, faces)

    def to_dict(self) -> dict:
        index = {key: i for i, key in enumerate(k for n in range(self.cap + 1) for k in self.nondeg[n])}
        return {
            "cap": self.cap,
            "nondeg": [
                [index[key] for key in self.nondeg[n]] for n in range(self.cap + 1)
            ],
            "faces": {
                str(index[key]): [[index[fk], eta.to_list()] for fk, eta in stored]
                for key, stored in self.faces.items()
            },
        }

    def __repr__(self):
        return f"<CappedSSet cap={self.cap} counts={self.counts()}>"


@dataclass
class SimplicialMap:
    """
    A simplicial map between CappedSSets, given on nondegenerate simplices.

    images sends every nondegenerate key of the source to a simplex of the
    target; degenerate simplices follow from compatibility with degeneracies.
    """

    source: CappedSSet
    target: CappedSSet
    images: dict[Hashable, Simplex]

    def __call__(self, simplex: Simplex) -> Simplex:
        key, eta = simplex
        return self.target.apply(eta, self.images[key])

    def on_vertex(self, key: Hashable) -> Hashable:
        return self.images[key][0]

    def check(self) -> list[tuple]:
        """Keys whose image does not commute with a face."""
        failures = []
        for n in range(1, self.source.cap + 1):
            for key in self.source.nondeg[n]:
                image = self.images[key]
                for i in range(n + 1):
                    via_face = self(self.source.face(key, i))
                    via_image = self.target.apply(Monotone.coface(n, i), image)
                    if via_face != via_image:
                        failures.append((key, i))
        return failures

    def is_injective_on_nondegenerate(self) -> bool:
        seen = set()
        for n in range(self.source.cap + 1):
            for key in self.source.nondeg[n]:
                image = self.images[key]
                if not image[1].is_identity or image in seen:
                    return False
                seen.add(image)
        return True
