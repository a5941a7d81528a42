import unittest
import pytest
from exactmaj.algebra import FiniteAlgebra, Operation
from exactmaj.tools.algebra_file import (
    AlgebraFileError,
    dumps,
    load_algebra,
    loads,
    save_algebra,
)
from exactmaj.tools.gallery import gallery_names, get_algebra

Z2_TEXT = """\
algebra z2
size 2
op + 2
0 1
1 0
"""


class TestLoads(unittest.TestCase):
    def test_example(self):
        z2 = loads(Z2_TEXT)
        self.assertEqual(z2.name, "z2")
        self.assertEqual(z2.size, 2)
        self.assertEqual(z2.signature, {"+": 2})
        self.assertEqual(z2.operation("+").flat_table, (0, 1, 1, 0))

    def test_comments_and_free_layout(self):
        text = """\
# the two element group
algebra z2   # name

size 2
op + 2
0 1 1   # first three entries
0
op 0 0
0
"""
        z2 = loads(text)
        self.assertEqual(z2.operation("+").flat_table, (0, 1, 1, 0))
        self.assertEqual(z2.operation("0").flat_table, (0,))

    def test_algebra_without_operations(self):
        self.assertEqual(loads("algebra s\nsize 3\n").signature, {})

    def test_entry_outside_universe(self):
        with self.assertRaises(AlgebraFileError) as context:
            loads("algebra z2\nsize 2\nop + 2\n0 2\n1 0\n")
        self.assertEqual(context.exception.line, 4)
        self.assertTrue(str(context.exception).startswith("line 4: "))

    def test_errors(self):
        cases = {
            "size 2\nalgebra z2\n": 1,
            "algebra z2\nsize two\n": 2,
            "algebra z2\nsize 0\n": 2,
            "algebra z2\nsize 2\n0 1\n": 3,
            "algebra z2\nsize 2\nop +\n": 3,
            "algebra z2\nsize 2\nop + -1\n": 3,
            "algebra z2\nsize 2\nop - 1\n0 1 1\n": 4,
            "algebra z2\nsize 2\nop - 1\n0\nop + 2\n0 1 1 0\n": 5,
            "algebra z2\nsize 2\nop - 1\n1 0\nop - 1\n1 0\n": 5,
        }
        for text, line in cases.items():
            with self.assertRaises(AlgebraFileError, msg=text) as context:
                loads(text)
            self.assertEqual(context.exception.line, line, msg=text)

    def test_missing_entries_at_end(self):
        with self.assertRaises(AlgebraFileError) as context:
            loads("algebra z2\nsize 2\nop + 2\n0 1\n1\n")
        self.assertIn("needs 4 entries, got 3", str(context.exception))

    def test_end_of_file_reports_the_last_line(self):
        cases = {"": 1, "algebra z2\n": 1, "algebra z2\n# only a comment\n\n": 3}
        for text, line in cases.items():
            with self.assertRaises(AlgebraFileError, msg=text) as context:
                loads(text)
            self.assertEqual(context.exception.line, line, msg=text)
            self.assertIn("end of file", str(context.exception))

    def test_is_a_value_error(self):
        with self.assertRaises(ValueError):
            loads("")


class TestDumps(unittest.TestCase):
    def test_unreadable_names_are_rejected(self):
        for name in ["two words", "z#2", ""]:
            with self.assertRaises(ValueError, msg=name):
                dumps(FiniteAlgebra(name, 2))
        spaced = FiniteAlgebra("s", 2, [Operation("x y", 0, [0], 2)])
        with self.assertRaises(ValueError):
            dumps(spaced)

    def test_chain(self):
        self.assertEqual(
            dumps(get_algebra("chain:3")),
            "algebra chain:3\nsize 3\nop meet 2\n0 0 0\n0 1 1\n0 1 2\n"
            "op join 2\n0 1 2\n1 1 2\n2 2 2\n",
        )

    def test_constant_on_its_own_line(self):
        self.assertEqual(
            dumps(get_algebra("z_mod:2")),
            "algebra z_mod:2\nsize 2\nop + 2\n0 1\n1 0\nop - 1\n0 1\nop 0 0\n0\n",
        )


@pytest.mark.parametrize("name", gallery_names())
def test_round_trip(name):
    algebra = get_algebra(name)
    assert loads(dumps(algebra)) == algebra


def test_save_and_load(tmp_path):
    path = tmp_path / "klein.alg"
    save_algebra(get_algebra("klein"), path)
    assert path.read_text().startswith("algebra klein\nsize 4\n")
    assert load_algebra(path) == get_algebra("klein")
