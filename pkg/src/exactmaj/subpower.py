"""Subalgebras of finite powers, and the search for exact-m-majority terms.

Whether an algebra A has an n-ary term satisfying a set of two-variable
equations is a membership question in a finite power of A: put one coordinate
per equation instance, let generator g_j hold the value the j-th argument
takes in that instance and let the target hold the demanded value. A term
exists iff the target lies in the subpower generated by g_1...g_n, and the way
the target was derived during the closure spells out such a term.
"""
import logging
from dataclasses import dataclass
from typing import ClassVar, Optional, Tuple
import numpy as np
from .identities import equation_rows, pattern_columns
from .libs.aux_functions import assignment_columns, element_dtype, sorted_subsets
from .terms import App, Var

logger = logging.getLogger(__name__)

DEFAULT_MAX_CLOSURE = 5_000_000
DEFAULT_CHUNK_SIZE = 2**22  # coordinates evaluated per numpy batch
DEFAULT_MAX_WORK = 200_000_000  # argument combinations per closure round


class ClosureOverflow(RuntimeError):
    """The generated subpower would exceed `cap` tuples, or a closure round
    would need more than `budget` argument combinations.

    Attributes
    ----------
    cap : int
    budget : int or None
        Set when the round work, not the size, ran out.
    needed : int or None
        Argument combinations the refused round would have evaluated.

    """

    def __init__(self, cap, budget=None, needed=None):
        if budget is None:
            message = f"Closure exceeded the cap of {cap} tuples"
        else:
            message = (
                f"Closure round needs {needed} argument combinations, "
                f"more than the budget of {budget}"
            )
        super(ClosureOverflow, self).__init__(message)
        self.cap = cap
        self.budget = budget
        self.needed = needed


@dataclass(frozen=True)
class Generator:
    """Node origin: the j-th generator (1-indexed)."""

    index: int


@dataclass(frozen=True)
class Derived:
    """Node origin: operation `op` applied to the nodes `parents`."""

    op: str
    parents: Tuple[int, ...]


class DerivationDag(object):
    """The tuples of a subpower in order of discovery, with their first derivation.

    Every node is a tuple of the power together with its origin, either a
    Generator or a Derived node whose parents were discovered earlier, so the
    graph is acyclic by construction.

    Parameters
    ----------
    length : int
        Length of the tuples (number of coordinates).
    size : int
        Size of the universe.

    """

    def __init__(self, length, size):
        self.length = length
        self.size = size
        self.dtype = element_dtype(size)
        self._rows = np.empty((16, length), dtype=self.dtype)
        self._origins = []
        self._index = {}

    def __len__(self):
        return len(self._origins)

    def __contains__(self, power_tuple):
        return self._key(power_tuple) in self._index

    def _key(self, power_tuple):
        row = np.asarray(power_tuple)
        if row.shape != (self.length,):
            raise ValueError(
                f"Expected a tuple of length {self.length}, got shape {row.shape}"
            )
        return np.ascontiguousarray(row, dtype=self.dtype).tobytes()

    def index(self, power_tuple):
        """Node number of `power_tuple`; raises KeyError if it is not in the DAG."""
        return self._index[self._key(power_tuple)]

    def add(self, power_tuple, origin, key=None):
        """Add a tuple with its origin unless it is present already.

        Returns
        -------
        int or None
            The new node number, None if the tuple was already known.

        """
        if key is None:
            key = self._key(power_tuple)
        if key in self._index:
            return None
        count = len(self._origins)
        if count == len(self._rows):
            grown = np.empty((2 * count, self.length), dtype=self.dtype)
            grown[:count] = self._rows
            self._rows = grown
        self._rows[count] = power_tuple
        self._origins.append(origin)
        self._index[key] = count
        return count

    def rows(self, stop=None):
        """The first `stop` tuples (all by default) as a 2d array view."""
        return self._rows[: len(self) if stop is None else stop]

    def row(self, node):
        return tuple(int(x) for x in self._rows[node])

    def origin(self, node):
        return self._origins[node]

    def tuples(self):
        """All tuples in order of discovery."""
        return [self.row(node) for node in range(len(self))]

    def replay(self, algebra, generators, node):
        """Recompute a node by replaying its derivation from the generators.

        Parameters
        ----------
        algebra : FiniteAlgebra
        generators : np.ndarray
            The generator tuples, one per row.
        node : int

        Returns
        -------
        np.ndarray

        """
        values = {}

        def _value(i):
            if i not in values:
                origin = self._origins[i]
                if isinstance(origin, Generator):
                    values[i] = np.asarray(generators[origin.index - 1], dtype=np.intp)
                else:
                    operation = algebra.operation(origin.op)
                    values[i] = operation.apply_columns(
                        *[_value(parent) for parent in origin.parents], length=self.length
                    )
            return values[i]

        return _value(node)


class Subpower(object):
    """The subalgebra of A^L generated by a list of tuples.

    Operations act coordinatewise. The closure runs in rounds (breadth first):
    each round applies every basic operation to all argument combinations that
    involve at least one tuple found in the previous round, in a fixed order,
    so the discovery order and all derivations are deterministic.

    Parameters
    ----------
    algebra : FiniteAlgebra
    generators : array_like
        Shape (number of generators, L).
    cap : int
        Maximal number of tuples. Default: DEFAULT_MAX_CLOSURE
    length : int or None
        L; only needed when there are no generators.
    chunk_size : int
        Number of coordinates evaluated per numpy batch.
        Default: DEFAULT_CHUNK_SIZE
    max_work : int
        Maximal number of argument combinations a single round may evaluate;
        a round that would need more raises ClosureOverflow before it starts.
        Default: DEFAULT_MAX_WORK

    Attributes
    ----------
    algebra
    generators : np.ndarray
    dag : DerivationDag
    is_closed : bool
        True once the full closure has been computed.
    rounds : int
        Number of completed closure rounds.

    """

    def __init__(
        self,
        algebra,
        generators,
        cap=DEFAULT_MAX_CLOSURE,
        length=None,
        chunk_size=DEFAULT_CHUNK_SIZE,
        max_work=DEFAULT_MAX_WORK,
    ):
        if cap <= 0:
            raise ValueError(f"cap must be positive, got {cap}")
        if max_work <= 0:
            raise ValueError(f"max_work must be positive, got {max_work}")
        generators = [np.asarray(g, dtype=np.int64).ravel() for g in generators]
        lengths = {len(g) for g in generators}
        if len(lengths) > 1:
            raise ValueError(f"Generators have different lengths {sorted(lengths)}")
        if generators:
            length = lengths.pop()
        elif length is None:
            raise ValueError("length is required when there are no generators")
        for g in generators:
            if len(g) and (g.min() < 0 or g.max() >= algebra.size):
                raise ValueError(
                    f"Generator {tuple(g)} has entries outside the universe 0...{algebra.size - 1}"
                )
        self.algebra = algebra
        self.length = length
        self.cap = cap
        self.chunk_size = chunk_size
        self.max_work = max_work
        self.generators = np.array(generators, dtype=np.intp).reshape(-1, length)
        self.dag = DerivationDag(length=length, size=algebra.size)
        self.is_closed = False
        self.rounds = 0
        self._target_key = None
        for j, g in enumerate(self.generators, start=1):
            self._offer(g, Generator(j))

    def __len__(self):
        return len(self.dag)

    def __contains__(self, power_tuple):
        return power_tuple in self.dag

    @property
    def elements(self):
        """The tuples found so far as a frozenset."""
        return frozenset(self.dag.tuples())

    def _offer(self, row, origin, key=None):
        if key is None:
            key = self.dag._key(row)
        if key in self.dag._index:
            return False
        if len(self.dag) >= self.cap:
            raise ClosureOverflow(self.cap)
        self.dag.add(row, origin, key=key)
        return key == self._target_key

    def round_work(self, start, end):
        """Argument combinations of a round whose new tuples are [start, end)."""
        return sum(
            end**operation.arity - start**operation.arity
            for operation in self.algebra.operations
            if operation.arity > 0
        )

    def _combinations(self, arity, start, end):
        """Blocks of argument node numbers with at least one node in [start, end).

        The block for position p has arguments before p from [0, start), at p
        from [start, end) and after p from [0, end).
        """
        batch = max(1, self.chunk_size // max(1, self.length))
        for p in range(arity):
            dims = [start] * p + [end - start] + [end] * (arity - p - 1)
            offsets = np.array([0] * p + [start] + [0] * (arity - p - 1), dtype=np.intp)
            total = int(np.prod(dims, dtype=object))
            for low in range(0, total, batch):
                flat = np.arange(low, min(total, low + batch), dtype=np.intp)
                yield np.array(np.unravel_index(flat, dims)) + offsets[:, None]

    def _apply_block(self, operation, rows, nodes):
        arguments = [rows[nodes[q]] for q in range(operation.arity)]
        candidates = operation.apply_columns(*arguments).astype(self.dag.dtype)
        flat = np.ascontiguousarray(candidates).view(
            np.dtype((np.void, candidates.dtype.itemsize * self.length))
        ).ravel()
        _, first = np.unique(flat, return_index=True)
        for position in np.sort(first):
            row = candidates[position]
            key = row.tobytes()
            if key in self.dag._index:
                continue
            parents = tuple(int(nodes[q][position]) for q in range(operation.arity))
            if self._offer(row, Derived(operation.name, parents), key=key):
                return True
        return False

    def close(self, stop_at=None):
        """Run the closure.

        Parameters
        ----------
        stop_at : array_like or None
            Stop as soon as this tuple is found. Default: None

        Returns
        -------
        bool
            True if `stop_at` is in the subpower. Without `stop_at` the closure
            always runs to the fixpoint and False is returned.

        Raises
        ------
        ClosureOverflow
            If more than `cap` tuples are generated, or a round would
            evaluate more than `max_work` argument combinations.

        """
        if stop_at is not None:
            self._target_key = self.dag._key(stop_at)
            if self._target_key in self.dag._index:
                return True
        if self.is_closed:
            return False
        start = 0
        while True:
            end = len(self.dag)
            if end == start and self.rounds > 0:
                break
            needed = self.round_work(start, end)
            if needed > self.max_work:
                raise ClosureOverflow(self.cap, budget=self.max_work, needed=needed)
            rows = self.dag.rows(end).copy()
            for operation in self.algebra.operations:
                if operation.arity == 0:
                    if self.rounds == 0:
                        constant = operation.apply_columns(length=self.length)
                        if self._offer(constant, Derived(operation.name, ())):
                            return True
                    continue
                for nodes in self._combinations(operation.arity, start, end):
                    if self._apply_block(operation, rows, nodes):
                        return True
            self.rounds += 1
            logger.debug(
                "closure round %d: %d new tuples, %d in total",
                self.rounds,
                len(self.dag) - end,
                len(self.dag),
            )
            start = end
        self.is_closed = True
        return False


def generate_subpower(
    algebra, generators, cap=DEFAULT_MAX_CLOSURE, length=None, max_work=DEFAULT_MAX_WORK
):
    """The subalgebra of a finite power generated by `generators`.

    Parameters
    ----------
    algebra : FiniteAlgebra
    generators : list of tuples
        Tuples of equal length over the universe of `algebra`.
    cap : int
        Maximal number of tuples. Default: DEFAULT_MAX_CLOSURE
    length : int or None
        Tuple length; only needed when `generators` is empty.
    max_work : int
        Maximal argument combinations per round. Default: DEFAULT_MAX_WORK

    Returns
    -------
    Subpower
        Closed under all basic operations; ``subpower.elements`` is the closed
        set and ``subpower.dag`` the derivation of each of its tuples.

    Raises
    ------
    ClosureOverflow

    """
    subpower = Subpower(
        algebra, generators, cap=cap, length=length, max_work=max_work
    )
    subpower.close()
    return subpower


def extract_witness(dag, target):
    """Unfold the derivation of `target` into a term.

    Generator j becomes the variable x_j and a derived node becomes the
    application of its operation to the unfolded parents. Shared nodes give
    shared subterms.

    Parameters
    ----------
    dag : DerivationDag
    target : array_like

    Returns
    -------
    Term

    Raises
    ------
    ValueError
        If `target` is not in the DAG.

    """
    try:
        node = dag.index(target)
    except KeyError:
        raise ValueError(f"Tuple {tuple(target)} is not in the subpower") from None
    terms = {}

    def _term(i):
        if i not in terms:
            origin = dag.origin(i)
            if isinstance(origin, Generator):
                terms[i] = Var(origin.index)
            else:
                terms[i] = App(origin.op, tuple(_term(parent) for parent in origin.parents))
        return terms[i]

    return _term(node)


def enumerate_term_operations(algebra, arity, cap=DEFAULT_MAX_CLOSURE):
    """All `arity`-ary term operations of `algebra`, by brute force.

    The term operations are the subpower of A^(A^arity) generated by the
    projections; each tuple is an operation table in lexicographic argument
    order.

    Parameters
    ----------
    algebra : FiniteAlgebra
    arity : int
    cap : int

    Returns
    -------
    frozenset of tuple

    """
    projections = assignment_columns(algebra.size, arity)
    subpower = generate_subpower(
        algebra, list(projections), cap=cap, length=algebra.size**arity
    )
    return subpower.elements


# ---------------------------------------------------------------------------
# exact-m-majority search


@dataclass(frozen=True)
class Conflict:
    """Two equation instances with identical arguments but different demands.

    Position i holds `a` if i is in `pattern` and `b` otherwise; the second
    instance swaps the roles, so both give the same arguments while one
    demands `a` and the other `b`.
    """

    pattern: Tuple[int, ...]
    complement: Tuple[int, ...]
    a: int
    b: int

    def describe(self):
        first = "{" + ",".join(map(str, self.pattern)) + "}"
        second = "{" + ",".join(map(str, self.complement)) + "}"
        return (
            f"J={first} (a,b)=({self.a},{self.b}) and J={second} (a,b)=({self.b},{self.a})"
            f" share arguments but demand {self.a} and {self.b}"
        )


class CoordinateSet(object):
    """The coordinates (J, a, b) of the power in which a term is searched.

    Parameters
    ----------
    size : int
        Size of the universe.
    n, m : int
    patterns : list of tuple of int or None
        m-subsets J to use. Default: None (all, lexicographic).
    deduplicate : bool
        Merge coordinates whose generator entries and target agree.
        Default: True

    Attributes
    ----------
    instances : list of tuple
        All (J, a, b) before merging.
    coordinates : list of tuple of tuple
        For each kept coordinate, the instances merged into it.
    generators : np.ndarray
        Shape (n, L), generator g_j is row j-1.
    target : np.ndarray
        Length L, the demanded values.

    """

    def __init__(self, size, n, m, patterns=None, deduplicate=True):
        if patterns is None:
            patterns = sorted_subsets(n, m)
        self.size = size
        self.n = n
        self.m = m
        self.patterns = list(patterns)
        columns, a_values, b_values = pattern_columns(size, n, self.patterns)
        self.instances = [
            (self.patterns[i // (size * size)], int(a), int(b))
            for i, (a, b) in enumerate(zip(a_values, b_values))
        ]
        matrix = np.stack(columns + [a_values], axis=1)
        if deduplicate and len(matrix):
            _, first, inverse = np.unique(
                matrix, axis=0, return_index=True, return_inverse=True
            )
            order = np.argsort(first)
            rank = np.empty_like(order)
            rank[order] = np.arange(len(order))
            groups = [[] for _ in order]
            for i, group in enumerate(np.asarray(inverse).ravel()):
                groups[rank[group]].append(self.instances[i])
            keep = np.sort(first)
        else:
            groups = [[instance] for instance in self.instances]
            keep = np.arange(len(matrix))
        self.coordinates = [tuple(group) for group in groups]
        self.generators = matrix[keep, :n].T.copy()
        self.target = matrix[keep, n].copy()

    def __len__(self):
        return len(self.target)

    def conflict(self):
        """First pair of coordinates with equal generator entries but different targets."""
        seen = {}
        for position in range(len(self)):
            column = tuple(int(x) for x in self.generators[:, position])
            target = int(self.target[position])
            if column in seen and seen[column][0] != target:
                J, a, b = seen[column][1]
                complement = tuple(i for i in range(1, self.n + 1) if i not in J)
                return Conflict(pattern=J, complement=complement, a=a, b=b)
            seen.setdefault(column, (target, self.coordinates[position][0]))
        return None


@dataclass(frozen=True)
class SearchResult:
    """Base class of the outcomes of find_exact_majority_term."""

    status: ClassVar[str] = ""

    @property
    def found(self):
        return False


@dataclass(frozen=True)
class Found(SearchResult):
    term: object
    closure_size: int
    coordinates: int
    status: ClassVar[str] = "FOUND"

    @property
    def found(self):
        return True


@dataclass(frozen=True)
class NotFound(SearchResult):
    closure_size: int
    coordinates: int
    status: ClassVar[str] = "NOT-FOUND"


@dataclass(frozen=True)
class TrivialOnly(SearchResult):
    certificate: Conflict
    status: ClassVar[str] = "TRIVIAL-ONLY"


@dataclass(frozen=True)
class Overflow(SearchResult):
    cap: int
    coordinates: Optional[int] = None
    budget: Optional[int] = None
    status: ClassVar[str] = "OVERFLOW"


def find_exact_majority_term(
    algebra,
    n,
    m,
    cap=DEFAULT_MAX_CLOSURE,
    deduplicate=True,
    patterns=None,
    chunk_size=DEFAULT_CHUNK_SIZE,
    max_work=DEFAULT_MAX_WORK,
):
    """Decide whether `algebra` has an n-ary exact-m-majority term and find one.

    Parameters
    ----------
    algebra : FiniteAlgebra
    n, m : int
        1 <= m <= n.
    cap : int
        Maximal closure size. Default: DEFAULT_MAX_CLOSURE
    deduplicate : bool
        Merge coordinates that carry identical information. Never changes the
        result. Default: True
    patterns : list of sets of int or None
        Only demand the equations for these m-subsets J. Default: None (all).
    chunk_size : int
        Coordinates evaluated per numpy batch. Default: DEFAULT_CHUNK_SIZE
    max_work : int
        Maximal argument combinations per closure round. Default: DEFAULT_MAX_WORK

    Returns
    -------
    Found, NotFound, TrivialOnly or Overflow
        Found carries a witness term over the signature of `algebra`.

    """
    if n < 1 or not 1 <= m <= n:
        raise ValueError(f"Need 1 <= m <= n, got n={n}, m={m}")
    if patterns is None and 2 * m == n and algebra.size >= 2:
        J = tuple(range(1, m + 1))
        certificate = Conflict(pattern=J, complement=tuple(range(m + 1, n + 1)), a=0, b=1)
        logger.info("n=%d, m=%d: %s", n, m, TrivialOnly.status)
        return TrivialOnly(certificate=certificate)
    if patterns is not None:
        patterns = sorted({tuple(sorted(J)) for J in patterns})
        for J in patterns:
            if len(J) != m or len(set(J)) != m or any(not 1 <= i <= n for i in J):
                raise ValueError(f"Pattern {J} is not an {m}-subset of 1...{n}")
    coordinates = CoordinateSet(
        algebra.size, n, m, patterns=patterns, deduplicate=deduplicate
    )
    conflict = coordinates.conflict()
    if conflict is not None:
        return TrivialOnly(certificate=conflict)
    logger.info(
        "searching n=%d, m=%d on %s: %d equation rows, %d coordinates",
        n,
        m,
        algebra.name,
        equation_rows(n, m),
        len(coordinates),
    )
    subpower = Subpower(
        algebra,
        coordinates.generators,
        cap=cap,
        chunk_size=chunk_size,
        max_work=max_work,
    )
    try:
        is_member = subpower.close(stop_at=coordinates.target)
    except ClosureOverflow as e:
        logger.info("n=%d, m=%d: %s: %s", n, m, Overflow.status, e)
        return Overflow(cap=cap, coordinates=len(coordinates), budget=e.budget)
    if is_member:
        result = Found(
            term=extract_witness(subpower.dag, coordinates.target),
            closure_size=len(subpower),
            coordinates=len(coordinates),
        )
    else:
        result = NotFound(closure_size=len(subpower), coordinates=len(coordinates))
    logger.info(
        "n=%d, m=%d: %s after %d tuples", n, m, result.status, result.closure_size
    )
    return result
