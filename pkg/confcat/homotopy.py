"""
pi0, integral homology and the comparison machinery behind verification.

Homology is computed from normalized chains (bases are nondegenerate
simplices). Boundary matrices are first reduced by unit pivots on sparse
columns; only the remaining non-unit core goes through the Smith normal form
of sympy's DomainMatrix over ZZ. Everything is exact integer arithmetic.
"""

import logging
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from networkx.utils import UnionFind
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .exceptions import CompressionError, HomologyError
from .simplicial import CappedSSet, Monotone, SimplicialMap

if TYPE_CHECKING:
    from .conservatize import LambdaLevel
    from .sspace import DiscreteSimplicialSpace

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
STABLE = "STABLE"

Column = dict[Hashable, int]


def combine_statuses(statuses: Iterable[str]) -> str:
    """FAIL beats INCONCLUSIVE beats PASS; an empty sequence passes."""
    statuses = list(statuses)
    if FAIL in statuses:
        return FAIL
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return PASS


@dataclass
class Verdict:
    status: str
    diagnostics: dict = field(default_factory=dict)
    probes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"status": self.status, "diagnostics": self.diagnostics, "probes": self.probes}


@dataclass
class CheckResult:
    """Outcome of a checker, with the elements that made it fail."""

    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    @property
    def status(self) -> str:
        return PASS if self.passed else FAIL

    def to_dict(self, witness_limit: int = 5) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness_count": len(self.witnesses),
            "witnesses": [repr(w) for w in self.witnesses[:witness_limit]],
            "details": self.details,
        }


@dataclass
class DegreeHomology:
    degree: int
    rank: int
    torsion: list[int]

    def to_dict(self) -> dict:
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion)}


@dataclass
class HomologyReport:
    degrees: list[DegreeHomology]

    def __getitem__(self, n: int) -> DegreeHomology:
        return self.degrees[n]

    @property
    def top_degree(self) -> int:
        return len(self.degrees) - 1

    def signature(self) -> tuple:
        return tuple((d.rank, tuple(d.torsion)) for d in self.degrees)

    def to_dict(self) -> list[dict]:
        return [d.to_dict() for d in self.degrees]


def reduced_homology_is_trivial(report: HomologyReport, components: int | None = None) -> bool:
    """No torsion anywhere, nothing above degree 0, and H0 free of the given rank."""
    for d in report.degrees:
        if d.torsion:
            return False
        if d.degree > 0 and d.rank:
            return False
    return components is None or report[0].rank == components


@dataclass
class ChainComplex:
    """
    A finite chain complex of free abelian groups.

    boundaries[n] sends each basis element of degree n to its boundary as a
    sparse column over the basis of degree n - 1.
    """

    bases: dict[int, list[Hashable]]
    boundaries: dict[int, dict[Hashable, Column]]

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, []))

    def check_d_squared(self) -> list[tuple[int, Hashable]]:
        """Basis elements whose boundary has nonzero boundary."""
        failures = []
        for n, columns in self.boundaries.items():
            lower = self.boundaries.get(n - 1, {})
            if n < 2:
                continue
            for label, column in columns.items():
                total: dict[Hashable, int] = defaultdict(int)
                for row, coefficient in column.items():
                    for inner, value in lower.get(row, {}).items():
                        total[inner] += coefficient * value
                if any(total.values()):
                    failures.append((n, label))
        return failures

    def homology(self, top: int) -> HomologyReport:
        if top + 1 not in self.bases:
            raise HomologyError(f"Homology in degree {top} needs chains in degree {top + 1}")
        if self.check_d_squared():
            raise HomologyError("Boundary squared is nonzero")
        invariants = {n: integer_invariants(self.boundaries.get(n, {})) for n in range(1, top + 2)}
        degrees = []
        for n in range(top + 1):
            incoming_rank, _ = invariants.get(n, (0, []))
            outgoing_rank, torsion = invariants[n + 1]
            free = self.rank(n) - incoming_rank - outgoing_rank
            degrees.append(DegreeHomology(n, free, torsion))
        return HomologyReport(degrees)


def _add_multiple(
    columns: dict[Hashable, Column],
    rows: dict[Hashable, set],
    target: Hashable,
    source: Hashable,
    factor: int,
):
    column = columns[target]
    for row, value in columns[source].items():
        updated = column.get(row, 0) + factor * value
        if updated:
            column[row] = updated
            rows[row].add(target)
        else:
            column.pop(row, None)
            rows[row].discard(target)


def integer_invariants(columns: dict[Hashable, Column]) -> tuple[int, list[int]]:
    """
    Rank and non-unit invariant factors of a sparse integer matrix.

    Returns:
        (rank, torsion) where torsion lists the invariant factors > 1 in
        divisibility order
    """
    work = {label: dict(column) for label, column in columns.items() if column}
    rows: dict[Hashable, set] = defaultdict(set)
    for label, column in work.items():
        for row in column:
            rows[row].add(label)

    rank = 0
    progress = True
    while progress:
        progress = False
        for pivot_column in list(work):
            column = work.get(pivot_column)
            if column is None:
                continue
            if not column:
                del work[pivot_column]
                continue
            units = [row for row, value in column.items() if value in (1, -1)]
            if not units:
                continue
            pivot_row = min(units, key=lambda row: len(rows[row]))
            unit = column[pivot_row]
            for other in list(rows[pivot_row]):
                if other != pivot_column:
                    _add_multiple(work, rows, other, pivot_column, -work[other][pivot_row] * unit)
                    if not work[other]:
                        del work[other]
            for row in column:
                rows[row].discard(pivot_column)
            del work[pivot_column]
            rank += 1
            progress = True

    if not work:
        return rank, []
    row_order: dict[Hashable, int] = {}
    for column in work.values():
        for row in column:
            row_order.setdefault(row, len(row_order))
    dense = [[ZZ(0)] * len(work) for _ in row_order]
    for j, column in enumerate(work.values()):
        for row, value in column.items():
            dense[row_order[row]][j] = ZZ(value)
    logger.debug(f"Smith normal form on a {len(row_order)}x{len(work)} core")
    matrix = DomainMatrix(dense, (len(row_order), len(work)), ZZ)
    factors = [abs(int(f)) for f in invariant_factors(matrix) if f != 0]
    rank += len(factors)
    return rank, sorted(f for f in factors if f > 1)


def _boundary(X: CappedSSet, key: Hashable) -> Column:
    column: Column = {}
    for i, (face_key, eta) in enumerate(X.faces[key]):
        if eta.is_identity:
            value = column.get(face_key, 0) + (-1) ** i
            if value:
                column[face_key] = value
            else:
                column.pop(face_key)
    return column


def chain_complex(X: CappedSSet, top: int | None = None) -> ChainComplex:
    """Normalized chains of X in degrees 0..top (default: the cap)."""
    top = X.cap if top is None else top
    if top > X.cap:
        raise HomologyError(f"Chains in degree {top} exceed the cap {X.cap}")
    bases = {n: list(X.nondeg[n]) for n in range(top + 1)}
    boundaries = {n: {key: _boundary(X, key) for key in bases[n]} for n in range(1, top + 1)}
    return ChainComplex(bases, boundaries)


def homology(X: CappedSSet, top_degree: int) -> HomologyReport:
    """
    Integral homology of X in degrees 0..top_degree.

    Raises:
        HomologyError: if top_degree > cap - 1 or the complex is malformed
    """
    if top_degree > X.cap - 1:
        raise HomologyError(f"Degree {top_degree} is not computable below cap {X.cap}")
    return chain_complex(X, top_degree + 1).homology(top_degree)


def pi0(X: CappedSSet) -> list[list[Hashable]]:
    """
    Vertex components under the edge relation.

    Components are lists of vertex keys in nerve order, sorted by their first
    vertex.
    """
    order = {key: i for i, key in enumerate(X.nondeg[0])}
    uf = UnionFind(X.nondeg[0])
    if X.cap >= 1:
        for key in X.nondeg[1]:
            uf.union(X.faces[key][0][0], X.faces[key][1][0])
    components = [sorted(component, key=order.__getitem__) for component in uf.to_sets()]
    return sorted(components, key=lambda component: order[component[0]])


def component_index(components: list[list[Hashable]]) -> dict[Hashable, int]:
    return {key: i for i, component in enumerate(components) for key in component}


def cone_complex(f: SimplicialMap, top: int) -> ChainComplex:
    """
    The mapping cone Cone_n = C_{n-1}(X) + C_n(Y) in degrees 0..top.

    d(x) = -dx + f(x) and d(y) = dy, so f is a homology isomorphism exactly
    when the cone is acyclic.
    """
    X, Y = f.source, f.target
    if top > Y.cap or top - 1 > X.cap:
        raise HomologyError(f"Cone degree {top} exceeds the caps of the map")
    bases, boundaries = {}, {}
    for n in range(top + 1):
        x_part = [("x", key) for key in X.nondeg[n - 1]] if n >= 1 else []
        y_part = [("y", key) for key in Y.nondeg[n]]
        bases[n] = x_part + y_part
        if n == 0:
            continue
        columns = {}
        for label in x_part:
            key = label[1]
            column: Column = {}
            if n - 1 >= 1:
                for row, value in _boundary(X, key).items():
                    column[("x", row)] = -value
            image_key, eta = f.images[key]
            if eta.is_identity:
                column[("y", image_key)] = column.get(("y", image_key), 0) + 1
            columns[label] = {row: v for row, v in column.items() if v}
        for label in y_part:
            columns[label] = {("y", row): v for row, v in _boundary(Y, label[1]).items()}
        boundaries[n] = columns
    return ChainComplex(bases, boundaries)


def compress(Z: "DiscreteSimplicialSpace", a: Hashable, beta: Monotone) -> Hashable:
    """
    The unique c in Z_k with beta*(c) = a.

    Raises:
        CompressionError: if a has a nondegenerate edge in a slot collapsed by
            beta; the witness is that edge
    """
    c = Z.act(beta.section(), a)
    if Z.act(beta, c) == a:
        return c
    for j in range(1, beta.dom + 1):
        if beta(j - 1) == beta(j):
            edge = Z.act(Monotone.edge(beta.dom, j - 1, j), a)
            if not Z.is_degenerate(edge, 1):
                raise CompressionError(
                    f"Edge in collapsed slot {j} is not an identity", witness=edge
                )
    raise CompressionError("Simplex is not in the image of the degeneracy", witness=a)


@dataclass
class VertexComparison:
    assignment: dict[Hashable, Hashable]
    constant: bool
    counterexample: Any = None

    def to_dict(self) -> dict:
        return {
            "verdict": "CONSTANT" if self.constant else "NOT_CONSTANT",
            "counterexample": None if self.counterexample is None else repr(self.counterexample),
            "vertices": len(self.assignment),
        }


def vertex_comparison(
    LL: "LambdaLevel",
    phi: Callable[[Hashable], Hashable],
    Z: "DiscreteSimplicialSpace",
) -> VertexComparison:
    """
    Send each vertex (alpha, beta; a, b) to alpha*(compress(phi(a), beta)) in Z_r
    and check that every edge of the nerve has equal endpoint values.
    """
    assignment = {}
    for key in LL.skeleton.nondeg[0]:
        (alpha, beta), (a, _b) = key[0]
        assignment[key] = Z.act(alpha, compress(Z, phi(a), beta))
    for key in LL.skeleton.nondeg[1]:
        target, source = LL.skeleton.faces[key][0][0], LL.skeleton.faces[key][1][0]
        if assignment[source] != assignment[target]:
            logger.warning(f"Vertex comparison is not constant along {key!r}")
            return VertexComparison(assignment, False, key)
    return VertexComparison(assignment, True)


def verify_weak_equiv_to_discrete(
    LL: "LambdaLevel",
    target: Sequence[Hashable],
    probe_degree: int,
    comparison: VertexComparison,
    stabilization: str = STABLE,
    report: HomologyReport | None = None,
) -> Verdict:
    """
    PASS iff pi0 maps bijectively onto target, every component is acyclic up
    to the probe degree and the stabilization scan was STABLE.
    """
    top = min(probe_degree, LL.cap - 1)
    probes = {"probe_degree": top, "cap": LL.cap, "L": LL.L, "r": LL.r}
    if not comparison.constant:
        return Verdict(FAIL, {"vertex_comparison": comparison.to_dict()}, probes)
    components = LL.components
    images = [comparison.assignment[component[0]] for component in components]
    target_set = set(target)
    image_set = set(images)
    diagnostics = {
        "components": len(components),
        "target_size": len(target_set),
        "collisions": len(images) - len(image_set),
        "missing": len(target_set - image_set),
        "stray": len(image_set - target_set),
    }
    bijective = diagnostics["collisions"] == diagnostics["missing"] == diagnostics["stray"] == 0
    diagnostics["pi0_bijective"] = bijective
    report = report or LL.homology(top)
    acyclic = reduced_homology_is_trivial(report, len(components))
    diagnostics["homology"] = report.to_dict()
    diagnostics["acyclic"] = acyclic
    diagnostics["stabilization"] = stabilization
    if not (bijective and acyclic):
        return Verdict(FAIL, diagnostics, probes)
    if stabilization != STABLE:
        logger.warning(f"Degree {LL.r} comparison is inconclusive: stabilization {stabilization}")
        return Verdict(INCONCLUSIVE, diagnostics, probes)
    return Verdict(PASS, diagnostics, probes)


def map_equivalence_check(f: SimplicialMap, probe_degree: int) -> Verdict:
    """
    PASS iff f is a pi0 bijection and its mapping cone is acyclic through the
    probe degree (as far as the caps allow). The source is read up to that
    degree and the target one degree higher.

    This is homology-level evidence; fundamental groups are not compared.
    """
    X, Y = f.source, f.target
    top = min(probe_degree, X.cap, Y.cap - 1)
    probes = {"probe_degree": probe_degree, "cone_degree": top, "caps": [X.cap, Y.cap]}
    source_components, target_components = pi0(X), pi0(Y)
    target_index = component_index(target_components)
    images = [target_index[f.on_vertex(component[0])] for component in source_components]
    bijective = len(set(images)) == len(images) == len(target_components)
    cone = cone_complex(f, top + 1).homology(top)
    acyclic = all(d.rank == 0 and not d.torsion for d in cone.degrees)
    diagnostics = {
        "source_components": len(source_components),
        "target_components": len(target_components),
        "pi0_bijective": bijective,
        "cone_homology": cone.to_dict(),
        "acyclic_cone": acyclic,
    }
    return Verdict(PASS if bijective and acyclic else FAIL, diagnostics, probes)


@dataclass
class DiscreteSquare:
    """
    A commuting square of finite sets

        top_left --top--> top_right
           |                  |
         left               right
           v                  v
        bottom_left --bottom--> bottom_right

    bottom_preimage lists the elements of bottom_left over a point of
    bottom_right; when absent it is derived from bottom_left.
    """

    top_left: Sequence[Hashable]
    top_right: Sequence[Hashable]
    top: Callable[[Hashable], Hashable]
    left: Callable[[Hashable], Hashable]
    right: Callable[[Hashable], Hashable]
    bottom: Callable[[Hashable], Hashable]
    bottom_left: Sequence[Hashable] | None = None
    bottom_preimage: Callable[[Hashable], Iterable[Hashable]] | None = None

    def pullback(self) -> list[tuple[Hashable, Hashable]]:
        preimage = self.bottom_preimage
        if preimage is None:
            index: dict[Hashable, list] = defaultdict(list)
            for q in self.bottom_left or []:
                index[self.bottom(q)].append(q)
            preimage = lambda z: index.get(z, [])  # noqa: E731
        return [(x, q) for x in self.top_right for q in preimage(self.right(x))]


def homotopy_cartesian_discrete(square: DiscreteSquare) -> CheckResult:
    """
    True iff the canonical map top_left -> top_right x bottom_left is a bijection.

    Witnesses are pullback elements that are missed or hit twice.
    """
    seen: dict[tuple, Hashable] = {}
    collisions = []
    for p in square.top_left:
        image = (square.top(p), square.left(p))
        if image in seen:
            collisions.append((seen[image], p))
        seen[image] = p
    pullback = square.pullback()
    missed = [pair for pair in pullback if pair not in seen]
    stray = len(seen) - (len(pullback) - len(missed))
    passed = not collisions and not missed and stray == 0
    return CheckResult(
        "cartesian",
        passed,
        missed + collisions,
        {"top_left": len(square.top_left), "pullback": len(pullback), "stray": stray},
    )
