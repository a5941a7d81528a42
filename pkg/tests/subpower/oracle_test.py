from itertools import product
import pytest
from exactmaj.algebra import FiniteAlgebra, Operation
from exactmaj.identities import table_is_exact_majority
from exactmaj.libs.aux_functions import assignment_columns
from exactmaj.subpower import enumerate_term_operations, find_exact_majority_term
from exactmaj.terms import evaluate_columns
from exactmaj.tools.survey import binary_oracle_survey

TABLES = list(product(range(2), repeat=4))
NAND = (1, 1, 1, 0)
MEET = (0, 0, 0, 1)


def _binary_algebra(table):
    return FiniteAlgebra(
        name="binary:" + "".join(map(str, table)),
        size=2,
        operations=[Operation("f", 2, table, 2)],
    )


def _oracle(algebra, n, m):
    return any(
        table_is_exact_majority((t, 2), n, m)
        for t in enumerate_term_operations(algebra, n)
    )


@pytest.mark.parametrize("table", TABLES)
def test_search_agrees_with_brute_force(table):
    algebra = _binary_algebra(table)
    for n in range(1, 4):
        for m in range(1, n + 1):
            result = find_exact_majority_term(algebra, n, m)
            assert result.found == _oracle(algebra, n, m), (table, n, m)
            if result.found:
                assert table_is_exact_majority(
                    (tuple(_evaluate_all(algebra, result.term, n)), 2), n, m
                )


def _evaluate_all(algebra, term, n):
    columns = list(assignment_columns(2, n))
    return [int(v) for v in evaluate_columns(algebra, term, columns, length=2**n)]


def test_projection_and_idempotence_always_exist():
    for table in TABLES:
        algebra = _binary_algebra(table)
        assert find_exact_majority_term(algebra, 1, 1).found
        assert find_exact_majority_term(algebra, 3, 3).found


def test_nand_generates_everything():
    algebra = _binary_algebra(NAND)
    assert find_exact_majority_term(algebra, 3, 2).found
    assert find_exact_majority_term(algebra, 3, 1).found
    assert len(enumerate_term_operations(algebra, 2)) == 16


def test_semilattice_has_no_majority():
    algebra = _binary_algebra(MEET)
    assert find_exact_majority_term(algebra, 3, 2).status == "NOT-FOUND"
    assert not _oracle(algebra, 3, 2)


def test_survey_agrees_everywhere():
    frame = binary_oracle_survey(n_max=3)
    assert len(frame) == 16 * (1 + 2 + 3)
    assert frame["agree"].all()
    assert set(frame["status"]) <= {"FOUND", "NOT-FOUND", "TRIVIAL-ONLY"}
    half = frame[(frame["n"] == 2) & (frame["m"] == 1)]
    assert (half["status"] == "TRIVIAL-ONLY").all()
    assert not half["oracle"].any()
