"""
Tests for configuration categories of finite discrete spaces.
"""

from django.test import SimpleTestCase

from ..boxtensor import box_pre
from ..configcat import (
    ConfigCategory,
    check_property_beta,
    config_comma,
    config_discrete,
    config_inclusion,
    config_orbit,
    permutation_group,
    product_points,
)
from ..exceptions import CategoryError, GroupActionError
from ..fincat import FinCatOverFin, TableCategory
from ..finset import FinMap, injection_count
from ..sspace import nerve_over_fin


class ConfigCategoryTest(SimpleTestCase):
    """Objects, morphisms and the reference to Fin"""

    def test_two_points(self):
        """Test the configuration category of two points"""
        C = config_discrete(2)
        self.assertEqual(
            C.category.objects(), [(), (0,), (1,), (0, 1), (1, 0)]
        )
        self.assertEqual(len(C.category.morphisms()), 15)
        self.assertEqual(C.category.validate(), [])
        self.assertEqual(C.check(), [])
        self.assertEqual(C.fin_bound(), 2)

    def test_object_counts_are_injection_counts(self):
        """Test configurations of k points in M are injections k -> M"""
        C = config_discrete(3)
        for k in range(4):
            with self.subTest(k=k):
                self.assertEqual(
                    len([x for x in C.category.objects() if len(x) == k]), injection_count(k, 3)
                )

    def test_reference(self):
        """Test positions in the target configuration"""
        self.assertEqual(ConfigCategory.fin_map(((1,), (0, 1))), FinMap(1, 2, (2,)))
        self.assertEqual(ConfigCategory.fin_map(((0, 1), (1, 0))), FinMap(2, 2, (2, 1)))

    def test_isomorphisms(self):
        """Test reorderings invert and inclusions do not"""
        C = ConfigCategory((0, 1))
        self.assertEqual(C.inverse(((0, 1), (1, 0))), ((1, 0), (0, 1)))
        self.assertIsNone(C.inverse(((), (0,))))

    def test_labelled_points(self):
        """Test point sets given by labels"""
        C = config_discrete(["p", "q"])
        self.assertIn(("q", "p"), C.category.objects())
        with self.assertRaises(CategoryError):
            ConfigCategory((0, 0))

    def test_inclusion(self):
        """Test the functor of a point inclusion"""
        self.assertEqual(config_inclusion(1, 2).check(), [])
        with self.assertRaises(CategoryError):
            config_inclusion([5], 2)

    def test_comma(self):
        """Test the comma category over a two-point configuration"""
        C = config_comma(config_discrete(2), (0, 1))
        self.assertEqual(len(C.category.objects()), 5)
        self.assertEqual(C.check(), [])

    def test_product_points(self):
        """Test pairs in product order"""
        self.assertEqual(product_points(2, 1), ((0, 0), (1, 0)))


class OrbitTest(SimpleTestCase):
    """Action categories of permutation groups"""

    def test_permutation_group_bound(self):
        """Test closure is capped by the factorial of the degree"""
        self.assertEqual(permutation_group([[1, 0]], 2).order, 2)
        with self.assertRaises(GroupActionError):
            permutation_group([[1, 0, 3]], 3)

    def test_trivial_group_orbit(self):
        """Test the trivial group adds no morphisms"""
        orbit = config_orbit(2)
        self.assertEqual(len(orbit.category.morphisms()), 15)
        self.assertEqual(orbit.check(), [])

    def test_swap_orbit(self):
        """Test the swap doubles every hom-set"""
        orbit = config_orbit(2, permutation_group([[1, 0]], 2))
        self.assertEqual(len(orbit.category.morphisms()), 30)
        self.assertEqual(orbit.check(), [])
        # the swap of the empty configuration is an automorphism over id_0
        twisted = (((), ()), (1, 0))
        self.assertEqual(orbit.category.dst(twisted), ())
        self.assertTrue(orbit.over_identity(twisted))
        self.assertFalse(orbit.category.is_identity(twisted))


class PropertyBetaTest(SimpleTestCase):
    """Degree-0 comparisons along morphisms over identities"""

    def test_vacuous_on_configuration_categories(self):
        """Test configuration categories have no non-identity morphism over an identity"""
        report = check_property_beta(config_discrete(2))
        self.assertTrue(report.vacuous)
        self.assertTrue(report.passed)
        self.assertEqual(report.to_dict()["status"], "PASS")

    def test_budget(self):
        """Test the edge budget limits the comparisons"""
        orbit = config_orbit(2, permutation_group([[1, 0]], 2))
        report = check_property_beta(orbit, edge_budget=0)
        self.assertTrue(report.budget_exhausted)
        self.assertEqual(report.edges, [])
        self.assertEqual(report.failures(), [])

    def test_pre_tensor_of_points_is_vacuous(self):
        """Test triples over one point by one point have only identities over identities"""
        X = nerve_over_fin(config_discrete(1), 1)
        W = box_pre(X, X)
        C = FinCatOverFin(W.category, lambda obj: obj[2].k, lambda m: m[2].a)
        self.assertEqual(C.check(), [])
        self.assertEqual(len(W.category.objects()), 2)
        report = check_property_beta(C)
        self.assertTrue(report.vacuous)
        self.assertTrue(report.passed)

    def test_counterexample_fails_on_its_edge(self):
        """Test a morphism over an identity that misses a component of the target comma"""
        # f: x -> y over id_1; g: z -> x, f g and h: z -> y all over 0 -> 1.
        # Postcomposing with f sends C/x (id_x, g) to (f, fg) and never reaches h.
        category = TableCategory(
            ["z", "x", "y"],
            {
                "1z": ("z", "z"),
                "1x": ("x", "x"),
                "1y": ("y", "y"),
                "f": ("x", "y"),
                "g": ("z", "x"),
                "fg": ("z", "y"),
                "h": ("z", "y"),
            },
            {"z": "1z", "x": "1x", "y": "1y"},
            {("f", "g"): "fg"},
        )
        sizes = {"z": 0, "x": 1, "y": 1}
        refs = {"1z": FinMap.identity(0), "1x": FinMap.identity(1), "1y": FinMap.identity(1)}
        refs.update(f=FinMap.identity(1), g=FinMap.empty(1), fg=FinMap.empty(1), h=FinMap.empty(1))
        C = FinCatOverFin(category, sizes.get, refs.get)
        self.assertEqual(C.check(), [])
        report = check_property_beta(C, edge_budget=10)
        self.assertFalse(report.vacuous)
        self.assertFalse(report.passed)
        self.assertEqual(report.failures(), [repr("f")])
        verdict = report.edges[0][1]
        self.assertEqual(verdict.status, "FAIL")
        self.assertEqual(verdict.diagnostics["source_components"], 2)
        self.assertEqual(verdict.diagnostics["target_components"], 3)
        self.assertFalse(verdict.diagnostics["pi0_bijective"])
        self.assertEqual(report.to_dict()["status"], "FAIL")
