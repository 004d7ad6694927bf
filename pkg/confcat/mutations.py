"""
Seeded corruptions of verification inputs.

Each mutation turns a correct input into a broken one; a pipeline fed a
mutated input must never report PASS.
"""

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass

from .exceptions import BoundsError, CategoryError
from .fincat import FinCatOverFin, TableCategory

logger = logging.getLogger(__name__)


@dataclass
class Mutation:
    """A mutated input together with what was changed."""

    name: str
    category: FinCatOverFin
    description: str

    def to_dict(self) -> dict:
        return {"name": self.name, "description": self.description}


def _retable(C: FinCatOverFin, table: TableCategory) -> FinCatOverFin:
    return FinCatOverFin(table, C.to_fin_obj, C.to_fin_mor)


def _non_identities(table: TableCategory) -> list:
    return sorted((m for m in table.morphisms() if not table.is_identity(m)), key=repr)


def delete_morphism(C: FinCatOverFin, seed: int = 0) -> Mutation:
    """
    Remove one non-identity morphism chosen by the seed.

    Raises:
        CategoryError: if C has no non-identity morphism
    """
    table = TableCategory.tabulate(C.category)
    candidates = _non_identities(table)
    if not candidates:
        raise CategoryError("Nothing to delete: every morphism is an identity")
    victim = random.Random(seed).choice(candidates)
    logger.info(f"Mutation: deleting {victim!r}")
    return Mutation(
        "delete_morphism", _retable(C, table.without_morphism(victim)), f"deleted {victim!r}"
    )


def corrupt_composition(C: FinCatOverFin, seed: int = 0) -> Mutation:
    """
    Overwrite one composite by a morphism with the wrong endpoints.

    Pairs with an identity factor are used only when no pair of non-identity
    morphisms composes.

    Raises:
        CategoryError: if no replacement with different endpoints exists
    """
    table = TableCategory.tabulate(C.category)
    rng = random.Random(seed)
    pairs = sorted(
        (
            (g, f)
            for g, f in table.composable_pairs()
            if not (table.is_identity(g) or table.is_identity(f))
        ),
        key=repr,
    )
    if not pairs:
        pairs = sorted(
            ((g, f) for g, f in table.composable_pairs() if not table.is_identity(g)), key=repr
        )
    if not pairs:
        raise CategoryError("Nothing to corrupt: the category has no non-identity morphism")
    g, f = rng.choice(pairs)
    endpoints = (table.src(f), table.dst(g))
    replacements = sorted(
        (h for h in table.morphisms() if (table.src(h), table.dst(h)) != endpoints), key=repr
    )
    if not replacements:
        raise CategoryError("Nothing to corrupt: every morphism has the same endpoints")
    h = rng.choice(replacements)
    logger.info(f"Mutation: composite of {g!r} after {f!r} set to {h!r}")
    return Mutation(
        "corrupt_composition",
        _retable(C, table.with_composite(g, f, h)),
        f"{g!r} after {f!r} is now {h!r}",
    )


def break_selfic(C: FinCatOverFin, seed: int = 0) -> Mutation:
    """
    Leave the input alone; the pipeline swaps Boxfin for its surjective variant.

    Raises:
        BoundsError: below two points, where the two variants coincide
    """
    if C.fin_bound() < 2:
        raise BoundsError(
            "Breaking the selfic normalization needs configurations of at least 2 points",
            minimal_bounds=2,
        )
    logger.info("Mutation: Boxfin legs range over all surjections")
    return Mutation("break_selfic", C, "Boxfin legs are arbitrary surjections")


MUTATIONS: dict[str, Callable[[FinCatOverFin, int], Mutation]] = {
    "delete_morphism": delete_morphism,
    "corrupt_composition": corrupt_composition,
    "break_selfic": break_selfic,
}


def apply_mutation(name: str, C: FinCatOverFin, seed: int = 0) -> Mutation:
    """
    Raises:
        CategoryError: for an unknown mutation name
    """
    try:
        mutate = MUTATIONS[name]
    except KeyError:
        raise CategoryError(f"Unknown mutation {name!r}") from None
    return mutate(C, seed)
