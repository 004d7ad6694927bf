"""
Tests for the pre-tensor product and the comparison with configurations of
the product.
"""

from django.test import SimpleTestCase

from ..boxtensor import (
    BoxBounds,
    BoxfinCategory,
    box_pre,
    box_pre_orbit,
    boxfin_over_fin,
    category_structure_check,
    comma_closure_check,
    comparison_functor,
    orbit_fiber_counts,
    orbit_target,
)
from ..configcat import config_discrete, permutation_group
from ..exceptions import BoundsError
from ..sspace import conservative_check, fiberwise_complete_check, nerve_over_fin, segal_check


def config_nerve(m, cap=2):
    return nerve_over_fin(config_discrete(m), cap)


class BoxfinNerveTest(SimpleTestCase):
    """The nerve of bounded Boxfin over Fin through p0"""

    def setUp(self):
        category = BoxfinCategory(BoxBounds(2, 2, 2))
        self.X = nerve_over_fin(boxfin_over_fin(category), 3)

    def test_is_a_category(self):
        """Test bounded Boxfin validates"""
        self.assertEqual(BoxfinCategory(BoxBounds(2, 2, 2)).validate(), [])

    def test_segal_and_complete(self):
        """Test the nerve is a fiberwise complete Segal space"""
        self.assertTrue(segal_check(self.X).passed)
        self.assertTrue(fiberwise_complete_check(self.X).passed)

    def test_not_conservative(self):
        """Test the witness over id_2 fails because legs 2 -> 1, 2 -> 1 are not jointly injective"""
        result = conservative_check(self.X)
        self.assertFalse(result.passed)
        self.assertTrue(result.witnesses)


class BoxPreTest(SimpleTestCase):
    """Levels and bounds of the pre-tensor product"""

    def test_one_point_factors(self):
        """Test degree 0 of the product of two one-point configuration nerves"""
        W = box_pre(config_nerve(1), config_nerve(1))
        self.assertEqual(W.bounds, BoxBounds(1, 1, 1))
        self.assertEqual(len(W.level(0)), 2)
        self.assertEqual(sorted(W.ref(w) for w in W.level(0)), [(0,), (1,)])
        self.assertEqual(W.check_operators(1), [])

    def test_bounds_must_cover_inputs(self):
        """Test undersized bounds report the minimal ones"""
        with self.assertRaises(BoundsError) as ctx:
            box_pre(config_nerve(2), config_nerve(1), BoxBounds(2, 1, 1))
        self.assertEqual(ctx.exception.minimal_bounds, BoxBounds(2, 2, 1))

    def test_truncating_bounds(self):
        """Test a smaller k_max truncates the product"""
        W = box_pre(config_nerve(1), config_nerve(2), (1, 1, 2))
        self.assertTrue(all(w[2][0].k <= 1 for w in W.level(0)))

    def test_category_of_triples(self):
        """Test the levels are the nerve of the category of triples"""
        W = box_pre(config_nerve(1), config_nerve(2))
        self.assertTrue(category_structure_check(W, 2).passed)
        self.assertEqual(W.category.validate(), [])

    def test_generic_pullback_agrees(self):
        """Test the triple form and the generic pullback have equal levels"""
        W = box_pre(config_nerve(1), config_nerve(2))
        P = W.as_pullback()
        for r in range(3):
            self.assertEqual(len(W.level(r)), len(P.level(r)))

    def test_surjective_variant_is_larger(self):
        """Test dropping the selfic normalization adds elements"""
        X, Y = config_nerve(2), config_nerve(1)
        selfic = box_pre(X, Y)
        surjective = box_pre(X, Y, selfic=False)
        self.assertGreater(len(surjective.level(0)), len(selfic.level(0)))

    def test_two_by_two_is_segal_and_complete(self):
        """Test the product of two two-point configuration nerves is a complete Segal space"""
        W = box_pre(config_nerve(2), config_nerve(2))
        self.assertEqual(W.bounds, BoxBounds(4, 2, 2))
        segal = segal_check(W)
        self.assertTrue(segal.passed, segal.witnesses[:1])
        self.assertEqual(segal.details[2]["chains"], segal.details[2]["spines"])
        self.assertTrue(fiberwise_complete_check(W).passed)


class ComparisonTest(SimpleTestCase):
    """The comparison functor to configurations of M x N"""

    def test_functor_and_degree_zero(self):
        """Test functoriality and injectivity on objects"""
        W = box_pre(config_nerve(2), config_nerve(1))
        comparison = comparison_functor(W)
        self.assertEqual(comparison.check(), [])
        self.assertTrue(comparison.degree0_injective())
        self.assertEqual(len(comparison.notes()), 1)

    def test_object_image(self):
        """Test (x, y, kappa) goes to the pairs read off the legs"""
        W = box_pre(config_nerve(1), config_nerve(1))
        comparison = comparison_functor(W)
        image = {comparison.on_obj(obj) for obj in W.category.objects()}
        self.assertEqual(image, {(), ((0, 0),)})

    def test_comma_closure(self):
        """Test comma membership is invariant along k-isomorphisms"""
        W = box_pre(config_nerve(1, 1), config_nerve(1, 1))
        result = comma_closure_check(W)
        self.assertTrue(result.passed)


class OrbitProductTest(SimpleTestCase):
    """The product of action categories"""

    def test_orbit_target(self):
        """Test the action category of the product group"""
        swap = permutation_group([[1, 0]], 2)
        trivial = permutation_group([], 1)
        target = orbit_target(2, 1, swap, trivial)
        self.assertEqual(target.check(), [])
        self.assertEqual(target.category.group.order, 2)

    def test_fiber_counts(self):
        """Test degree r splits over |G|^r label tuples"""
        swap = permutation_group([[1, 0]], 2)
        W_orbit, comparison = box_pre_orbit(2, 1, swap, cap=1)
        W = box_pre(config_nerve(2, 1), config_nerve(1, 1))
        self.assertTrue(orbit_fiber_counts(W_orbit, W, 2).passed)
        self.assertEqual(comparison.check(), [])
