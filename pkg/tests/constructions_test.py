import unittest
import pytest
from exactmaj.constructions import (
    ConstructionParams,
    GummSystem,
    PreconditionError,
    SideConditionError,
    build_generic_majority_operation,
    build_group_sum_term,
    build_lattice_majority_term,
    check_gumm_identities,
    check_maltsev_identities,
    derive_collapse,
    derive_gumm,
    derive_maltsev,
    derive_near_unanimity,
    derive_nu_from_nonexact,
    has_exponent_dividing,
)
from exactmaj.identities import (
    check_exact_majority,
    check_m_majority,
    check_near_unanimity,
)
from exactmaj.terms import App, Var, eval_term, format_term, parse_term
from exactmaj.tools.gallery import chain, cyclic_group, get_algebra, n5

x1, x2, x3 = Var(1), Var(2), Var(3)


def _u(n):
    """The basic operation u applied to x1...xn."""
    return App("u", tuple(Var(i) for i in range(1, n + 1)))


def _slots(*indices):
    return App("u", tuple(Var(i) for i in indices))


class TestConstructionParams(unittest.TestCase):
    def test_range(self):
        with self.assertRaises(SideConditionError):
            ConstructionParams(3, 0)
        with self.assertRaises(SideConditionError):
            ConstructionParams(3, 4)

    def test_messages_spell_out_the_arithmetic(self):
        with self.assertRaises(SideConditionError) as context:
            ConstructionParams(5, 2, k=1, h=1, q=2).require_group_congruence()
        self.assertIn("h*m = 2 is 0, not 1 (mod 2)", str(context.exception))
        with self.assertRaises(SideConditionError) as context:
            ConstructionParams(4, 2).require_below_half()
        self.assertIn("2*m = 4 >= n = 4", str(context.exception))
        with self.assertRaises(SideConditionError):
            ConstructionParams(6, 3, k=2).require_k_divides()

    def test_side_condition_error_is_a_value_error(self):
        self.assertTrue(issubclass(SideConditionError, ValueError))
        self.assertTrue(issubclass(PreconditionError, ValueError))


class TestMaltsev(unittest.TestCase):
    def test_slot_pattern(self):
        self.assertEqual(derive_maltsev(_u(5), 5, 2), _slots(1, 1, 2, 3, 3))
        self.assertEqual(derive_maltsev(_u(3), 3, 1), _slots(1, 2, 3))

    def test_from_group_sum(self):
        z3 = cyclic_group(3)
        u, n = build_group_sum_term(h=1, q=3, k=1, m=1)
        self.assertEqual(n, 4)
        self.assertTrue(check_exact_majority(z3, u, 4, 1))
        t = derive_maltsev(u, 4, 1)
        self.assertEqual(format_term(t), "(+ (+ (+ x1 x2) x2) x3)")
        verdicts = check_maltsev_identities(z3, t)
        self.assertEqual([v.label for v in verdicts], ["t(x,z,z)=x", "t(x,x,z)=z"])
        self.assertTrue(all(verdicts))

    def test_from_generic_operation(self):
        algebra = get_algebra("example4b:3:4:1:0")
        t = derive_maltsev(_u(4), 4, 1)
        self.assertTrue(all(check_maltsev_identities(algebra, t)))

    def test_failing_identity(self):
        t = parse_term("(meet (meet x1 x2) x3)")
        first, second = check_maltsev_identities(chain(2), t)
        self.assertFalse(first)
        self.assertEqual(first.assignment, (1, 0))

    def test_side_condition(self):
        with self.assertRaises(SideConditionError):
            derive_maltsev(_u(4), 4, 2)
        with self.assertRaises(ValueError):
            derive_maltsev(_u(6), 5, 2)


class TestLatticeTerm(unittest.TestCase):
    def test_majority(self):
        self.assertEqual(
            format_term(build_lattice_majority_term(3, 2)),
            "(meet (meet (join x1 x2) (join x1 x3)) (join x2 x3))",
        )

    def test_3_of_5(self):
        u = build_lattice_majority_term(5, 3)
        text = format_term(u)
        # ten blocks of two joins each, nine meets between them
        self.assertEqual(text.count("join"), 20)
        self.assertEqual(text.count("meet"), 9)
        self.assertEqual(eval_term(chain(2), u, (1, 1, 1, 0, 0)), 1)
        self.assertEqual(eval_term(chain(2), u, (0, 1, 0, 0, 1)), 0)

    def test_is_a_majority_in_lattices(self):
        for n, m in [(3, 2), (5, 3), (4, 3), (6, 4)]:
            u = build_lattice_majority_term(n, m)
            self.assertTrue(check_m_majority(chain(3), u, n, m))
            self.assertTrue(check_m_majority(n5(), u, n, m))

    def test_custom_symbols(self):
        u = build_lattice_majority_term(3, 2, meet="min", join="max")
        self.assertEqual(u.op, "min")

    def test_needs_more_than_half(self):
        with self.assertRaises(SideConditionError):
            build_lattice_majority_term(4, 2)


class TestCollapse(unittest.TestCase):
    def test_slot_pattern(self):
        self.assertEqual(derive_collapse(_u(6), 6, 2, 2), _slots(1, 1, 2, 2, 3, 3))
        self.assertEqual(derive_collapse(_u(6), 6, 3, 3), _slots(1, 1, 1, 2, 2, 2))

    def test_generic_operation_collapses(self):
        algebra = get_algebra("example4b:3:6:2:0")
        t = derive_collapse(_u(6), 6, 2, 2)
        self.assertTrue(check_exact_majority(algebra, t, 3, 1))

    def test_k_must_divide(self):
        with self.assertRaises(SideConditionError):
            derive_collapse(_u(6), 6, 2, 4)
        with self.assertRaises(SideConditionError):
            derive_collapse(_u(6), 6, 3, 2)


class TestNearUnanimity(unittest.TestCase):
    def test_slot_pattern(self):
        self.assertEqual(derive_near_unanimity(_u(6), 6, 4), _slots(1, 1, 2, 2, 3, 3))
        self.assertEqual(derive_near_unanimity(_u(5), 5, 4), _u(5))

    def test_lattice_term_gives_majority(self):
        u = build_lattice_majority_term(6, 4)
        v = derive_near_unanimity(u, 6, 4)
        self.assertTrue(check_near_unanimity(chain(2), v, 3))
        self.assertTrue(check_near_unanimity(n5(), v, 3))

    def test_binary_result_warns(self):
        with pytest.warns(UserWarning):
            derive_near_unanimity(_u(4), 4, 2)

    def test_side_conditions(self):
        with self.assertRaises(SideConditionError):
            derive_near_unanimity(_u(5), 5, 3)
        with self.assertRaises(SideConditionError):
            derive_near_unanimity(_u(4), 4, 4)


class TestNearUnanimityFromNonexact(unittest.TestCase):
    def test_slot_pattern(self):
        self.assertEqual(derive_nu_from_nonexact(_u(5), 5, 3), _slots(1, 2, 3, 4, 4))

    def test_lattice_term(self):
        u = build_lattice_majority_term(5, 3)
        v = derive_nu_from_nonexact(u, 5, 3, algebra=chain(2))
        self.assertTrue(check_exact_majority(chain(2), v, 4, 3))

    def test_exact_only_term_is_rejected(self):
        z2 = cyclic_group(2)
        u, _ = build_group_sum_term(h=1, q=2, k=1, m=3)
        with self.assertRaises(PreconditionError) as context:
            derive_nu_from_nonexact(u, 5, 3, algebra=z2)
        self.assertFalse(context.exception.verdict)
        # without an algebra the substitution is done unchecked
        self.assertEqual(derive_nu_from_nonexact(_u(5), 5, 3).op, "u")

    def test_side_conditions(self):
        with self.assertRaises(SideConditionError):
            derive_nu_from_nonexact(_u(5), 5, 2)
        with self.assertRaises(SideConditionError):
            derive_nu_from_nonexact(_u(5), 5, 5)


@pytest.mark.parametrize(
    "n, m, d, q",
    [
        (5, 3, [(1, 2, 2, 3, 3)], (1, 2, 3, 3, 3)),
        (7, 5, [(1, 1, 1, 2, 2, 3, 3), (1, 2, 2, 3, 3, 3, 3)], (1, 2, 3, 3, 3, 3, 3)),
        (6, 4, [(1, 1, 2, 2, 3, 3), (2, 2, 3, 3, 3, 3)], (2, 2, 3, 3, 3, 3)),
    ],
)
def test_gumm_slot_patterns(n, m, d, q):
    system = derive_gumm(_u(n), n, m)
    assert system.k == n - m
    assert system.ell == n // (n - m)
    assert list(system.d) == [_slots(*pattern) for pattern in d]
    assert system.q == _slots(*q)
    assert [name for name, _ in system.terms] == [f"d{i}" for i in range(1, len(d) + 1)] + ["q"]


@pytest.mark.parametrize(
    "algebra, u, n, m",
    [
        (chain(2), build_lattice_majority_term(5, 3), 5, 3),
        (n5(), build_lattice_majority_term(5, 3), 5, 3),
        (cyclic_group(2), build_group_sum_term(h=1, q=2, k=1, m=3)[0], 5, 3),
        (chain(3), build_lattice_majority_term(7, 5), 7, 5),
        (chain(2), build_lattice_majority_term(6, 4), 6, 4),
    ],
)
def test_gumm_identities_hold(algebra, u, n, m):
    verdicts = check_gumm_identities(algebra, derive_gumm(u, n, m))
    assert all(verdicts), [v.label for v in verdicts if not v]


def test_gumm_identity_labels():
    system = derive_gumm(build_lattice_majority_term(7, 5), 7, 5)
    labels = [v.label for v in check_gumm_identities(chain(2), system)]
    assert labels == [
        "d1(x,y,x)=x",
        "d2(x,y,x)=x",
        "d1(x,x,z)=x",
        "d1(x,z,z)=d2(x,x,z)",
        "d2(x,z,z)=q(x,z,z)",
        "q(x,x,z)=z",
    ]


def test_swapped_gumm_terms_fail():
    system = derive_gumm(build_lattice_majority_term(5, 3), 5, 3)
    swapped = GummSystem(
        n=5, m=3, k=system.k, h=system.h, ell=system.ell, d=(system.q,), q=system.d[0]
    )
    verdicts = check_gumm_identities(chain(2), swapped)
    assert not all(verdicts)
    assert not verdicts[-1]


def test_gumm_side_conditions():
    with pytest.raises(SideConditionError):
        derive_gumm(_u(5), 5, 2)
    with pytest.raises(SideConditionError):
        derive_gumm(_u(5), 5, 5)


class TestGroupSum(unittest.TestCase):
    def test_format(self):
        u, n = build_group_sum_term(h=1, q=2, k=1, m=3)
        self.assertEqual(n, 5)
        self.assertEqual(format_term(u), "(+ (+ (+ (+ x1 x2) x3) x4) x5)")

    def test_coefficients_are_repeated(self):
        u, n = build_group_sum_term(h=2, q=3, k=1, m=2)
        self.assertEqual(n, 5)
        self.assertTrue(format_term(u).startswith("(+ (+ (+ (+ (+ (+ (+ (+ (+ x1 x1) x2) x2)"))
        self.assertTrue(check_exact_majority(cyclic_group(3), u, 5, 2))

    def test_custom_symbol(self):
        u, _ = build_group_sum_term(h=1, q=2, k=1, m=1, plus="*")
        self.assertEqual(u.op, "*")

    def test_side_condition(self):
        with self.assertRaises(SideConditionError):
            build_group_sum_term(h=1, q=2, k=1, m=2)
        with self.assertRaises(SideConditionError):
            build_group_sum_term(h=0, q=2, k=1, m=1)

    def test_exponent(self):
        self.assertTrue(has_exponent_dividing(get_algebra("z_mod:2"), 2))
        self.assertFalse(has_exponent_dividing(get_algebra("z_mod:4"), 2))
        self.assertTrue(has_exponent_dividing(get_algebra("z_mod:4"), 4))
        self.assertTrue(has_exponent_dividing(get_algebra("klein"), 2))
        with self.assertRaises(ValueError):
            has_exponent_dividing(get_algebra("klein"), 0)


@pytest.mark.parametrize("h, q, k, m", [(1, 2, 1, 1), (1, 2, 2, 3), (2, 3, 1, 2), (1, 3, 1, 4)])
def test_group_sum_is_exact_in_groups_of_matching_exponent(h, q, k, m):
    u, n = build_group_sum_term(h=h, q=q, k=k, m=m)
    for name in ("z_mod:2", "z_mod:3", "z_mod:4", "klein"):
        algebra = get_algebra(name)
        if has_exponent_dividing(algebra, q):
            assert check_exact_majority(algebra, u, n, m)


class TestGenericOperation(unittest.TestCase):
    def test_values(self):
        u = build_generic_majority_operation(3, 4, 1, 0)
        self.assertEqual(u(1, 2, 2, 2), 1)
        self.assertEqual(u(2, 2, 2, 2), 2)
        self.assertEqual(u(1, 1, 2, 2), 0)
        self.assertEqual(u(0, 1, 2, 2), 0)

    def test_is_exact_majority(self):
        for size, n, m in [(3, 4, 1), (3, 6, 2), (2, 5, 3), (4, 3, 2)]:
            algebra = get_algebra(f"example4b:{size}:{n}:{m}:0")
            self.assertTrue(check_exact_majority(algebra, _u(n), n, m))

    def test_half_is_rejected(self):
        with self.assertRaises(SideConditionError):
            build_generic_majority_operation(2, 4, 2, 0)
        # a one-element set satisfies every condition
        self.assertEqual(build_generic_majority_operation(1, 4, 2, 0).flat_table, (0,))

    def test_anchor_range(self):
        with self.assertRaises(ValueError):
            build_generic_majority_operation(3, 4, 1, 3)
