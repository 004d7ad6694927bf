"""
Tests for simplicial spaces over N(Fin) and the local-object checkers.
"""

from django.test import SimpleTestCase, override_settings

from ..configcat import config_discrete
from ..exceptions import BoundsError, SegalConditionError
from ..fincat import FinCatOverFin, FinUpTo, TableCategory
from ..finset import FinMap
from ..simplicial import Monotone, surjections
from ..sspace import (
    FinNerve,
    NerveSpace,
    SpaceMap,
    cartesian_square_witnesses,
    conservative_check,
    enumerate_maps_over_base,
    fiberwise_complete_check,
    nerve_over_fin,
    run_checkers,
    segal_check,
    tau_adjunction_check,
    tau_fiber_law_check,
    tau_lower_star,
    truncate,
)
from .test_fincat import chain_category, cyclic_two


def cyclic_over_point():
    """Z/2 with every morphism over the identity of the empty set."""
    return FinCatOverFin(cyclic_two(), lambda x: 0, lambda m: FinMap.identity(0))


class NerveSpaceTest(SimpleTestCase):
    """Nerves of categories over Fin"""

    def test_levels_and_references(self):
        """Test level sizes and stringwise references"""
        X = nerve_over_fin(config_discrete(2), 2)
        self.assertEqual(len(X.level(0)), 5)
        self.assertEqual(len(X.level(1)), 15)
        self.assertIsInstance(X.base, FinNerve)
        self.assertEqual(X.base.t, 2)
        edge = ((0,), ((0,), (1, 0)))
        self.assertEqual(X.ref(edge), (1, FinMap(1, 2, (2,))))

    def test_operator_laws(self):
        """Test faces and degeneracies act contravariantly over the base"""
        X = nerve_over_fin(config_discrete(2), 2)
        self.assertEqual(X.check_operators(), [])

    def test_fibers_match_level(self):
        """Test the direct fiber search agrees with filtering the level"""
        X = nerve_over_fin(config_discrete(2), 2)
        for r in range(3):
            for b in X.base.level(r):
                with self.subTest(r=r, b=b):
                    expected = [x for x in X.level(r) if X.ref(x) == b]
                    self.assertEqual(sorted(X.fiber(r, b), key=repr), sorted(expected, key=repr))

    def test_identity_space_map(self):
        """Test the identity commutes with all operators"""
        X = nerve_over_fin(config_discrete(1), 2)
        self.assertEqual(SpaceMap(X, X, lambda x: x).check(over_base=True), [])


class CheckerTest(SimpleTestCase):
    """Segal, fiberwise completeness and conservativity"""

    def test_configuration_nerves_pass(self):
        """Test configuration categories are local objects"""
        for m in (1, 2):
            with self.subTest(m=m):
                results = run_checkers(nerve_over_fin(config_discrete(m), 3))
                self.assertEqual(
                    {name: result.passed for name, result in results.items()},
                    {"segal": True, "fiberwise_complete": True, "conservative": True},
                )

    def test_group_over_a_point(self):
        """Test a nontrivial group over one object is Segal but neither complete nor conservative"""
        X = nerve_over_fin(cyclic_over_point(), 3)
        self.assertTrue(segal_check(X).passed)
        self.assertFalse(fiberwise_complete_check(X).passed)
        result = conservative_check(X)
        self.assertFalse(result.passed)
        self.assertTrue(result.witnesses)

    @override_settings(CONFCAT={"COMPLETENESS_FACE": "d0"})
    def test_completeness_face_setting(self):
        """Test the face used by the completeness square comes from settings"""
        result = fiberwise_complete_check(nerve_over_fin(config_discrete(2), 2))
        self.assertTrue(result.passed)
        self.assertEqual(result.details["face"], "d0")

    def test_segal_details(self):
        """Test spine counts of a chain"""
        X = NerveSpace(chain_category(), 2, base=FinNerve(0, 2))
        result = segal_check(X)
        self.assertTrue(result.passed)
        self.assertEqual(result.details[2]["chains"], 10)

    def test_completeness_needs_segal(self):
        """Test the completeness check refuses a non-Segal space"""
        X = NerveSpace(chain_category(), 2, base=FinNerve(0, 2))
        X._levels[2] = X.level(2)[:-1]
        with self.assertRaises(SegalConditionError):
            fiberwise_complete_check(X)

    def test_composite_surjection_square(self):
        """Test cartesian elementary squares paste to the composite [3] -> [1]"""
        X = nerve_over_fin(config_discrete(2), 3)
        self.assertTrue(conservative_check(X).passed)
        for surjection in surjections(3, 1) + surjections(3, 2):
            with self.subTest(values=surjection.values):
                self.assertTrue(cartesian_square_witnesses(X, surjection).passed)
        result = cartesian_square_witnesses(X, Monotone((0, 0, 0, 1), 1))
        self.assertEqual(result.name, "cartesian[0, 0, 0, 1]")

    def test_composite_surjection_square_failure(self):
        """Test a group over a point fails the composite square as well"""
        X = nerve_over_fin(cyclic_over_point(), 3)
        result = cartesian_square_witnesses(X, Monotone((0, 0, 0, 1), 1))
        self.assertFalse(result.passed)
        self.assertTrue(result.witnesses)


class TruncationTest(SimpleTestCase):
    """Truncation and its right adjoint"""

    def test_truncate_levels(self):
        """Test truncation keeps configurations of at most k points"""
        X = nerve_over_fin(config_discrete(2), 2)
        T = truncate(X, 1)
        self.assertEqual(len(T.level(0)), 3)
        self.assertEqual(T.base.t, 1)
        self.assertEqual(T.fiber(0, (2,)), [])

    def test_truncate_bounds(self):
        """Test truncation above the base bound or without a Fin base"""
        X = nerve_over_fin(config_discrete(1), 2)
        with self.assertRaises(BoundsError):
            truncate(X, 2)
        with self.assertRaises(BoundsError):
            truncate(NerveSpace(FinUpTo(1), 2), 0)

    def test_tau_fiber_law(self):
        """Test fibers of the right adjoint are restricted fibers or points"""
        T = truncate(nerve_over_fin(config_discrete(2), 2), 1)
        result = tau_fiber_law_check(T, 2)
        self.assertTrue(result.passed)
        self.assertGreater(result.details["base_simplices"], 0)

    def test_maps_over_the_base(self):
        """Test the identity is the only self-map of a one-point configuration nerve"""
        X = nerve_over_fin(config_discrete(1), 1)
        maps = enumerate_maps_over_base(X, X)
        self.assertEqual(len(maps), 1)
        self.assertTrue(all(key[1] == value for key, value in maps[0].items()))

    def test_tau_adjunction(self):
        """Test maps out of a truncation match maps into the right adjoint"""
        W = truncate(nerve_over_fin(config_discrete(2), 2), 1)
        sources = [nerve_over_fin(config_discrete(p), 2, fin_bound=2) for p in (0, 1)]
        result = tau_adjunction_check(W, 2, sources)
        self.assertTrue(result.passed, result.witnesses)
        self.assertEqual(len(result.details["sources"]), 2)
        for counts in result.details["sources"]:
            self.assertEqual(counts["left"], counts["right"])
            self.assertGreater(counts["left"], 0)

    def test_tau_lower_star_rejects_large_bases(self):
        """Test the right adjoint needs W over a smaller nerve of Fin"""
        with self.assertRaises(BoundsError):
            tau_lower_star(nerve_over_fin(config_discrete(2), 2), 1)


class TableNerveTest(SimpleTestCase):
    """Nerves of explicit tables"""

    def test_table_over_fin(self):
        """Test a tabulated configuration category has the same nerve"""
        C = config_discrete(2)
        table = FinCatOverFin(TableCategory.tabulate(C.category), C.to_fin_obj, C.to_fin_mor)
        X, Y = nerve_over_fin(C, 2), nerve_over_fin(table, 2)
        self.assertEqual([len(X.level(r)) for r in range(3)], [len(Y.level(r)) for r in range(3)])
