import unittest
import pytest
from exactmaj.algebra import FiniteAlgebra, Operation
from exactmaj.tools.gallery import (
    GALLERY,
    UnknownGalleryError,
    check_group_axioms,
    check_lattice_axioms,
    gallery_names,
    get_algebra,
    is_gallery_name,
    lattice_from_order,
    sanity_check,
    symmetric_group_3,
)


@pytest.mark.parametrize("name", gallery_names())
def test_sanity_checks_pass(name):
    verdicts = sanity_check(name)
    assert all(verdicts), [v.describe() for v in verdicts if not v]


@pytest.mark.parametrize("name", gallery_names())
def test_names_round_trip(name):
    assert get_algebra(name).name == name


def test_every_family_has_an_example():
    families = {name.split(":")[0] for name in gallery_names()}
    assert families == set(GALLERY)


class TestLattices(unittest.TestCase):
    def test_n5_tables(self):
        n5 = get_algebra("n5")
        meet, join = n5.operation("meet"), n5.operation("join")
        self.assertEqual(meet(1, 3), 0)
        self.assertEqual(join(1, 3), 4)
        self.assertEqual(join(1, 2), 2)
        self.assertEqual(meet(2, 3), 0)

    def test_m3_tables(self):
        m3 = get_algebra("m3")
        self.assertEqual(m3.operation("join")(1, 2), 4)
        self.assertEqual(m3.operation("meet")(2, 3), 0)

    def test_chain(self):
        chain = get_algebra("chain:4")
        self.assertEqual(chain.operation("meet")(3, 1), 1)
        self.assertEqual(chain.operation("join")(3, 1), 3)

    def test_not_a_lattice(self):
        with self.assertRaises(ValueError):
            lattice_from_order("bowtie", 4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        with self.assertRaises(ValueError):
            lattice_from_order("cycle", 2, [(0, 1), (1, 0)])

    def test_lattice_axioms_detect_missing_absorption(self):
        both_min = FiniteAlgebra(
            "min-min",
            2,
            [
                Operation.from_function("meet", 2, 2, min),
                Operation.from_function("join", 2, 2, min),
            ],
        )
        failed = [v.label for v in check_lattice_axioms(both_min) if not v]
        self.assertEqual(failed, ["meet absorbs join", "join absorbs meet"])


class TestGroups(unittest.TestCase):
    def test_cyclic(self):
        z4 = get_algebra("z_mod:4")
        self.assertEqual(z4.operation("+")(3, 2), 1)
        self.assertEqual(z4.operation("-")(1), 3)

    def test_symmetric_group_is_not_abelian(self):
        s3 = symmetric_group_3()
        self.assertTrue(all(check_group_axioms(s3, "*", "inv", "e", commutative=False)))
        commutative = check_group_axioms(s3, "*", "inv", "e")[-1]
        self.assertFalse(commutative)
        self.assertEqual(commutative.label, "commutative")

    def test_klein_has_exponent_2(self):
        klein = get_algebra("klein")
        plus = klein.operation("+")
        self.assertTrue(all(plus(a, a) == 0 for a in klein.universe))


class TestNames(unittest.TestCase):
    def test_unknown(self):
        with self.assertRaises(UnknownGalleryError) as context:
            get_algebra("q8")
        self.assertIsInstance(context.exception, KeyError)
        self.assertIn("q8", str(context.exception))
        self.assertFalse(is_gallery_name("q8"))
        self.assertTrue(is_gallery_name("z_mod:7"))

    def test_malformed_parameters(self):
        for name in ["z_mod", "z_mod:2:3", "z_mod:two", "klein:2", "sym:4", "chain:0"]:
            with self.assertRaises(ValueError, msg=name):
                get_algebra(name)

    def test_example4b_side_condition(self):
        with self.assertRaises(ValueError):
            get_algebra("example4b:2:4:2:0")

    def test_example4b_operation(self):
        algebra = get_algebra("example4b:3:4:1:0")
        self.assertEqual(algebra.signature, {"u": 4})
        self.assertEqual(algebra.operation("u")(1, 2, 2, 2), 1)

    def test_witness_algebras(self):
        for name, size in [
            ("v35_lattice_witness", 2),
            ("v35_chain_witness", 3),
            ("v35_group_witness", 4),
        ]:
            algebra = get_algebra(name)
            self.assertEqual(algebra.size, size)
            self.assertEqual(algebra.signature, {"u": 5})
        group = get_algebra("v35_group_witness").operation("u")
        # XOR of all five arguments
        self.assertEqual(group(1, 2, 3, 0, 0), 0)
        self.assertEqual(group(1, 1, 1, 2, 2), 1)
