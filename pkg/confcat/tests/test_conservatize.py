"""
Tests for bounded conservatization.
"""

from collections import Counter

from django.test import SimpleTestCase

from ..configcat import config_discrete
from ..conservatize import (
    FLAT,
    FULL,
    IndexE,
    e0_adjunction_check,
    e0_reflection,
    is_isomorphism_on_skeleton,
    lambda_equivalence_check,
    lambda_level,
    lambda_map,
    lambda_operator,
    lambda_tower,
    pi0_by_reference,
    pi0_surjective,
    restrict_to_base,
    shriek_inclusion,
    shriek_level,
    stabilization_scan,
)
from ..exceptions import BoundsError, CategoryError, HomologyError, SimplicialError
from ..fincat import nerve
from ..homotopy import (
    PASS,
    STABLE,
    homology,
    map_equivalence_check,
    pi0,
    reduced_homology_is_trivial,
)
from ..simplicial import Monotone
from ..sspace import nerve_over_fin


def one_point(cap=3):
    return nerve_over_fin(config_discrete(1), cap)


class IndexCategoryTest(SimpleTestCase):
    """The index category of the bounded colimit"""

    def test_object_counts(self):
        """Test flat index objects for small r and L"""
        self.assertEqual(len(IndexE(0, FLAT, 0).objects()), 1)
        self.assertEqual(len(IndexE(0, FLAT, 1).objects()), 2)

    def test_bounds(self):
        """Test L below r and unknown variants are rejected"""
        with self.assertRaises(BoundsError):
            IndexE(1, FLAT, 0)
        with self.assertRaises(CategoryError):
            IndexE(0, "bogus")

    def test_is_a_category(self):
        """Test index categories validate"""
        self.assertEqual(IndexE(1, FLAT, 2).validate(), [])
        self.assertEqual(IndexE(1, FULL, 1).validate(), [])

    def test_reflection(self):
        """Test the flat reflection of a full index object"""
        alpha = Monotone((0, 0), 1)
        beta = Monotone((0, 1, 1), 1)
        reflected, counit = e0_reflection((alpha, beta))
        self.assertEqual(reflected, (Monotone((0, 0), 0), Monotone((0,), 0)))
        self.assertEqual(counit[2], Monotone((0,), 1))
        self.assertEqual(counit[3], Monotone((0,), 2))

    def test_reflection_is_adjoint(self):
        """Test hom-set sizes agree across the reflection"""
        for r, L in ((0, 1), (1, 2)):
            with self.subTest(r=r, L=L):
                self.assertTrue(e0_adjunction_check(r, L).passed)


class LambdaLevelTest(SimpleTestCase):
    """Bounded levels of the conservatization"""

    def test_one_point_degree_zero(self):
        """Test degree 0 over a one-point configuration nerve has two contractible components"""
        LL = lambda_level(one_point(), 0, FLAT, 1, 2)
        components = pi0(LL.nerve)
        self.assertEqual(len(components), 2)
        self.assertEqual(pi0_by_reference(LL), Counter({(0,): 1, (1,): 1}))
        self.assertTrue(reduced_homology_is_trivial(homology(LL.nerve, 1), 2))

    def test_restriction_to_base(self):
        """Test restricting to configurations of no points"""
        LL = lambda_level(one_point(), 0, FLAT, 1, 2)
        restricted = restrict_to_base(LL, 0)
        self.assertEqual(len(restricted.components), 1)
        self.assertEqual(restricted.skeleton.check_simplicial_identities(), [])

    def test_bounds(self):
        """Test L above the input cap and a zero nerve cap are rejected"""
        with self.assertRaises(BoundsError):
            lambda_level(one_point(), 0, FLAT, 5, 2)
        with self.assertRaises(BoundsError):
            lambda_level(one_point(), 0, FLAT, 1, 0)

    def test_identity_map(self):
        """Test the induced map of the identity is an equivalence"""
        LL = lambda_level(one_point(), 0, FLAT, 1, 2)
        verdict = map_equivalence_check(lambda_map(LL, LL, lambda a: a), 0)
        self.assertEqual(verdict.status, PASS)

    def test_isomorphic_levels_skip_the_cone(self):
        """Test the identity of a level is certified without a mapping cone"""
        LL = lambda_level(one_point(), 1, FLAT, 2, 2)
        verdict = lambda_equivalence_check(LL, LL, lambda a: a, 1)
        self.assertEqual(verdict.status, PASS)
        self.assertTrue(verdict.diagnostics["isomorphism"])
        self.assertIsNone(verdict.probes["cone_degree"])

    def test_proper_inclusion_is_not_an_isomorphism(self):
        """Test an injective map onto part of the target is not certified"""
        A = one_point()
        inclusion = shriek_inclusion(shriek_level(A, 0, 1, 1), lambda_level(A, 0, FULL, 1, 1))
        self.assertTrue(inclusion.is_injective_on_nondegenerate())
        self.assertFalse(is_isomorphism_on_skeleton(inclusion))

    def test_shriek_inclusion(self):
        """Test the shriek level sits inside the full level"""
        A = one_point()
        shriek = shriek_level(A, 0, 1, 2)
        full = lambda_level(A, 0, FULL, 1, 2)
        inclusion = shriek_inclusion(shriek, full)
        self.assertEqual(inclusion.check(), [])
        self.assertTrue(inclusion.is_injective_on_nondegenerate())

    def test_stabilization(self):
        """Test the scan over L is stable with constant pi0"""
        report = stabilization_scan(one_point(), 0, FLAT, [0, 1, 2], cap=2, probe=1)
        self.assertEqual(report.verdict, STABLE)
        self.assertEqual([stage.pi0 for stage in report.stages], [2, 2, 2])
        self.assertEqual(report.merges, [0, 0])
        self.assertEqual(report.to_dict()["L"], [0, 1, 2])

    def test_stabilization_needs_a_range(self):
        """Test an empty L range"""
        with self.assertRaises(BoundsError):
            stabilization_scan(one_point(), 0, FLAT, [], cap=2, probe=1)

    def test_shriek_inclusion_hits_every_component(self):
        """Test every component of the full level contains a shriek vertex"""
        A = one_point()
        for r in (0, 1):
            with self.subTest(r=r):
                full = lambda_level(A, r, FULL, 1, 2)
                inclusion = shriek_inclusion(shriek_level(A, r, 1, 2), full)
                self.assertTrue(pi0_surjective(inclusion))

    def test_operator_on_full_levels(self):
        """Test a vertex of [1] acts from degree 1 to degree 0 as a simplicial map"""
        A = one_point()
        source = lambda_level(A, 1, FULL, 1, 2)
        target = lambda_level(A, 0, FULL, 1, 2)
        for vertex in (0, 1):
            with self.subTest(vertex=vertex):
                induced = lambda_operator(source, target, Monotone.vertex(1, vertex))
                self.assertEqual(induced.check(), [])
        with self.assertRaises(SimplicialError):
            lambda_operator(source, target, Monotone.identity(1))
        with self.assertRaises(SimplicialError):
            lambda_operator(source, lambda_level(A, 0, FLAT, 1, 2), Monotone.vertex(1, 0))

    def test_tower_matches_direct_levels(self):
        """Test sub-levels of the largest L agree with levels built at each L"""
        A = one_point()
        tower = lambda_tower(A, 0, [2, 0, 1], FLAT, 2)
        self.assertEqual(sorted(tower), [0, 1, 2])
        for L, level in tower.items():
            with self.subTest(L=L):
                direct = lambda_level(A, 0, FLAT, L, 2)
                self.assertEqual(level.L, L)
                self.assertEqual(level.skeleton.counts(), direct.skeleton.counts())
                self.assertEqual(len(level.components), len(direct.components))
                self.assertEqual(len(level.index.objects()), len(direct.index.objects()))
        with self.assertRaises(BoundsError):
            lambda_tower(A, 0, [], FLAT, 2)

    def test_contractible_components_skip_the_nerve(self):
        """Test homology with cone points agrees with homology of the whole nerve"""
        LL = lambda_level(one_point(), 0, FLAT, 2, 2)
        self.assertEqual(len(LL.contractible), 2)
        shortcut = LL.homology(1)
        direct = homology(nerve(LL.category, 2), 1)
        self.assertEqual(
            [(d.rank, d.torsion) for d in shortcut.degrees],
            [(d.rank, d.torsion) for d in direct.degrees],
        )
        self.assertIs(LL.homology(1), shortcut)
        with self.assertRaises(HomologyError):
            LL.homology(2)

    def test_degree_one_homology(self):
        """Test homology of a degree 1 level through its shortcut and its full nerve"""
        LL = lambda_level(one_point(), 1, FLAT, 2, 3)
        direct = homology(LL.nerve, 2)
        self.assertEqual(
            [(d.rank, d.torsion) for d in LL.homology(2).degrees],
            [(d.rank, d.torsion) for d in direct.degrees],
        )
