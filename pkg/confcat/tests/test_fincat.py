"""
Tests for finite categories and their constructions.
"""

from django.test import SimpleTestCase

from ..configcat import ConfigCategory, config_discrete, config_orbit
from ..exceptions import CategoryError, FunctorialityError, GroupActionError
from ..fincat import (
    FinCatOverFin,
    FiniteGroup,
    FinUpTo,
    FullSubcategory,
    GroupAction,
    NaturalTransformation,
    SetDiagram,
    TableCategory,
    comma,
    cone_point,
    grothendieck,
    nerve,
    over_fin_from_dict,
    over_fin_to_dict,
    semidirect,
    untwist_string,
)
from ..finset import FinMap
from ..homotopy import homology, reduced_homology_is_trivial
from ..sspace import NerveSpace


def chain_category():
    """a -f-> b -g-> c with h = g f"""
    return TableCategory(
        ["a", "b", "c"],
        {
            "ia": ("a", "a"),
            "ib": ("b", "b"),
            "ic": ("c", "c"),
            "f": ("a", "b"),
            "g": ("b", "c"),
            "h": ("a", "c"),
        },
        {"a": "ia", "b": "ib", "c": "ic"},
        {("g", "f"): "h"},
    )


def cyclic_two():
    """The group of order two as a one-object category."""
    return TableCategory(
        ["*"],
        {"e": ("*", "*"), "g": ("*", "*")},
        {"*": "e"},
        {("g", "g"): "e"},
    )


class TableCategoryTest(SimpleTestCase):
    """Explicit tables and validation"""

    def test_valid_tables(self):
        """Test the chain and the cyclic group validate"""
        self.assertEqual(chain_category().validate(), [])
        self.assertEqual(cyclic_two().validate(), [])

    def test_missing_identity(self):
        """Test an object without identity is rejected"""
        with self.assertRaises(CategoryError):
            TableCategory(["a"], {}, {}, {})

    def test_missing_composite_is_reported(self):
        """Test validate reports an undefined composite"""
        C = chain_category()
        broken = TableCategory(
            C.objects(),
            {m: (C.src(m), C.dst(m)) for m in C.morphisms()},
            {x: C.identity(x) for x in C.objects()},
            {},
        )
        self.assertTrue(broken.validate())
        with self.assertRaises(CategoryError):
            broken.compose("g", "f")

    def test_corrupt_composite_is_reported(self):
        """Test a composite with wrong endpoints fails validation"""
        self.assertTrue(chain_category().with_composite("g", "f", "ia").validate())

    def test_isomorphisms(self):
        """Test inverses in a poset and in a group"""
        C, G = chain_category(), cyclic_two()
        self.assertFalse(C.is_isomorphism("f"))
        self.assertTrue(C.is_isomorphism("ib"))
        self.assertEqual(G.inverse("g"), "g")
        self.assertEqual(C.hom("a", "c"), ["h"])
        self.assertEqual(C.outgoing("a"), ["f", "h"])

    def test_dict_round_trip(self):
        """Test from_dict inverts to_dict"""
        data = chain_category().to_dict()
        self.assertEqual(data["comp"], [[4, 3, 5]])
        restored = TableCategory.from_dict(data)
        self.assertEqual(restored.validate(), [])
        self.assertEqual(restored.to_dict(), data)

    def test_tabulate_keeps_labels(self):
        """Test freezing a structural category"""
        C = ConfigCategory((0, 1))
        table = TableCategory.tabulate(C)
        self.assertEqual(table.validate(), [])
        self.assertEqual(len(table.morphisms()), len(C.morphisms()))
        m = ((0,), (0, 1))
        self.assertEqual(table.compose(((0, 1), (1, 0)), m), ((0,), (1, 0)))

    def test_without_morphism(self):
        """Test deleting a morphism drops its table entries"""
        C = chain_category().without_morphism("h")
        self.assertNotIn("h", C.morphisms())
        self.assertTrue(C.validate())
        with self.assertRaises(CategoryError):
            chain_category().without_morphism("ia")


class FinUpToTest(SimpleTestCase):
    """Fin restricted to 0..t"""

    def test_counts(self):
        """Test morphism counts of small skeleta"""
        self.assertEqual(len(FinUpTo(1).morphisms()), 3)
        self.assertEqual(len(FinUpTo(2).morphisms()), 11)
        self.assertEqual(len(FinUpTo(3).automorphisms(3)), 6)

    def test_is_a_category(self):
        """Test exhaustive validation"""
        self.assertEqual(FinUpTo(2).validate(), [])

    def test_inverse(self):
        """Test bijections invert, other maps do not"""
        fin = FinUpTo(2)
        swap = FinMap(2, 2, (2, 1))
        self.assertEqual(fin.inverse(swap), swap)
        self.assertIsNone(fin.inverse(FinMap(2, 2, (1, 1))))


class FiniteGroupTest(SimpleTestCase):
    """Permutation groups and direct products"""

    def test_generated_orders(self):
        """Test closure of generators"""
        self.assertEqual(FiniteGroup.from_permutations([[1, 2, 0]], 3).order, 3)
        sym = FiniteGroup.from_permutations([[1, 0, 2], [1, 2, 0]], 3)
        self.assertEqual(sym.order, 6)
        self.assertEqual(sym.validate(), [])
        self.assertTrue(FiniteGroup.from_permutations([], 2).is_trivial())

    def test_product_convention(self):
        """Test (gh)(i) = g(h(i))"""
        G = FiniteGroup.from_permutations([[1, 0, 2], [1, 2, 0]], 3)
        self.assertEqual(G.mul((1, 0, 2), (1, 2, 0)), (0, 2, 1))
        self.assertEqual(G.inverse((1, 2, 0)), (2, 0, 1))

    def test_invalid_generators(self):
        """Test non-permutations and oversized closures are rejected"""
        with self.assertRaises(GroupActionError):
            FiniteGroup.from_permutations([[0, 0]], 2)
        with self.assertRaises(GroupActionError):
            FiniteGroup.from_permutations([[1, 0]], 2, max_order=1)

    def test_direct_product(self):
        """Test orders multiply"""
        G = FiniteGroup.from_permutations([[1, 0]], 2)
        H = FiniteGroup.from_permutations([[1, 2, 0]], 3)
        product = FiniteGroup.direct_product(G, H)
        self.assertEqual(product.order, 6)
        self.assertEqual(product.validate(), [])


class ConstructionTest(SimpleTestCase):
    """Comma categories, categories of elements and semidirect products"""

    def test_comma_over_a_point(self):
        """Test the comma category over a one-point configuration"""
        C = comma(config_discrete(1), (0,))
        self.assertEqual(len(C.category.objects()), 2)
        self.assertEqual(C.category.validate(), [])
        self.assertEqual(C.check(), [])
        self.assertEqual(C.category.forget().check(), [])

    def test_grothendieck_of_constant_diagram(self):
        """Test the category of elements of a point is the base"""
        D = FinUpTo(1)
        G = grothendieck(D, SetDiagram.constant())
        self.assertEqual(len(G.objects()), 2)
        self.assertEqual(len(G.morphisms()), 3)
        self.assertEqual(G.projection().check(), [])

    def test_free_action_has_contractible_elements(self):
        """Test the action groupoid of a free transitive action"""
        F = SetDiagram(lambda d: [0, 1], lambda g, y: 1 - y if g == "g" else y)
        G = grothendieck(cyclic_two(), F)
        self.assertEqual(G.validate(), [])
        self.assertEqual(len(G.morphisms()), 4)
        report = homology(nerve(G, 4), 3)
        self.assertTrue(reduced_homology_is_trivial(report, 1))

    def test_grothendieck_rejects_non_functors(self):
        """Test a diagram moving points along identities"""
        F = SetDiagram(lambda d: [0, 1], lambda g, y: 1 - y)
        with self.assertRaises(FunctorialityError):
            grothendieck(cyclic_two(), F)

    def test_semidirect_diagonal_property(self):
        """Test degree n of the action nerve is degree n of C times |G|^n"""
        swap = FiniteGroup.from_permutations([[1, 0]], 2)
        orbit = config_orbit(2, swap)
        plain = config_discrete(2)
        self.assertEqual(orbit.check(), [])
        for n in range(3):
            with self.subTest(n=n):
                self.assertEqual(
                    len(NerveSpace(orbit.category, 2).level(n)),
                    len(NerveSpace(plain.category, 2).level(n)) * 2**n,
                )

    def test_semidirect_is_a_category(self):
        """Test composition in the action category"""
        swap = FiniteGroup.from_permutations([[1, 0]], 2)
        self.assertEqual(config_orbit(2, swap).category.validate(), [])

    def test_semidirect_rejects_reference_changes(self):
        """Test an action that reverses configurations is rejected"""
        C = config_discrete(2)
        swap = FiniteGroup.from_permutations([[1, 0]], 2)

        def act_obj(g, x):
            return x if g == swap.unit else tuple(reversed(x))

        action = GroupAction(
            swap, C.category, act_obj, lambda g, m: (act_obj(g, m[0]), act_obj(g, m[1]))
        )
        with self.assertRaises(GroupActionError):
            semidirect(C, action)

    def test_untwist_string(self):
        """Test an action string splits into a composable string of C and its labels"""
        swap = FiniteGroup.from_permutations([[1, 0]], 2)
        orbit = config_orbit(2, swap).category
        s = (1, 0)
        # (0,) -> (0, 1) = s.(1, 0), then (1, 0) -> (1, 0) = s.(0, 1)
        string = ((0,), (((0,), (0, 1)), s), (((1, 0), (1, 0)), s))
        self.assertEqual(orbit.dst(string[1]), orbit.src(string[2]))
        base, labels = untwist_string(orbit, string)
        self.assertEqual(base, ((0,), ((0,), (0, 1)), ((0, 1), (0, 1))))
        self.assertEqual(labels, (s, s))
        C = orbit.base
        self.assertEqual(C.dst(base[1]), C.src(base[2]))
        composite = orbit.compose(string[2], string[1])
        self.assertEqual(C.compose(base[2], base[1]), composite[0])
        self.assertEqual(composite[1], swap.unit)

    def test_natural_transformation_induces_functor(self):
        """Test a natural map of diagrams gives a functor of categories of elements"""
        free = SetDiagram(lambda d: [0, 1], lambda g, y: 1 - y if g == "g" else y)
        point = SetDiagram.constant()
        D = cyclic_two()
        collapse = NaturalTransformation(D, free, point, lambda d, y: ())
        self.assertEqual(collapse.check(), [])
        functor = collapse.induced_functor(grothendieck(D, free), grothendieck(D, point))
        self.assertEqual(functor.check(), [])
        self.assertEqual({functor.on_obj(x) for x in functor.source.objects()}, {("*", ())})

    def test_natural_transformation_failure(self):
        """Test a constant component on the free diagram is not natural"""
        free = SetDiagram(lambda d: [0, 1], lambda g, y: 1 - y if g == "g" else y)
        constant = NaturalTransformation(cyclic_two(), free, free, lambda d, y: 0)
        self.assertEqual(len(constant.check()), 2)

    def test_full_subcategory(self):
        """Test the full subcategory of a chain on its ends"""
        ends = FullSubcategory(chain_category(), ["a", "c"])
        self.assertIn("a", ends)
        self.assertNotIn("b", ends)
        self.assertEqual(sorted(ends.morphisms()), ["h", "ia", "ic"])
        self.assertEqual(ends.validate(), [])
        self.assertEqual(nerve(ends, 2).counts(), [2, 1, 0])

    def test_cone_point(self):
        """Test initial and terminal objects are found and their absence reported"""
        chain = chain_category()
        self.assertEqual(cone_point(chain, ["a", "b", "c"]), "a")
        self.assertEqual(cone_point(chain, ["b", "c"]), "b")
        self.assertEqual(cone_point(chain, ["a"]), "a")
        discrete = TableCategory(
            ["p", "q"], {"ip": ("p", "p"), "iq": ("q", "q")}, {"p": "ip", "q": "iq"}, {}
        )
        self.assertIsNone(cone_point(discrete, ["p", "q"]))
        self.assertIsNone(cone_point(cyclic_two(), ["*"]))


class NerveTest(SimpleTestCase):
    """Nerves and their homology"""

    def test_chain_nerve(self):
        """Test nondegenerate counts and contractibility of a chain"""
        N = nerve(chain_category(), 3)
        self.assertEqual(N.counts(), [3, 3, 1, 0])
        self.assertEqual(N.check_simplicial_identities(), [])
        self.assertTrue(reduced_homology_is_trivial(homology(N, 2), 1))

    def test_cyclic_group_nerve(self):
        """Test integral homology of the classifying space of Z/2"""
        N = nerve(cyclic_two(), 4)
        self.assertEqual(N.counts(), [1, 1, 1, 1, 1])
        report = homology(N, 3)
        self.assertEqual((report[0].rank, report[0].torsion), (1, []))
        self.assertEqual(report[1].torsion, [2])
        self.assertEqual((report[2].rank, report[2].torsion), (0, []))
        self.assertEqual(report[3].torsion, [2])


class OverFinSerializationTest(SimpleTestCase):
    """Categories over Fin as tables"""

    def test_round_trip(self):
        """Test a configuration category survives serialization"""
        data = over_fin_to_dict(config_discrete(1))
        self.assertEqual(data["sizes"], [0, 1])
        C = over_fin_from_dict(data)
        self.assertIsInstance(C, FinCatOverFin)
        self.assertEqual(C.category.validate(), [])
        self.assertEqual(C.check(), [])
        self.assertEqual(C.fin_bound(), 1)

    def test_missing_sizes(self):
        """Test sizes and images are required"""
        data = chain_category().to_dict()
        with self.assertRaises(CategoryError):
            over_fin_from_dict(data)
