"""Congruences of finite algebras and the lattice properties built on them.

A congruence is an equivalence relation compatible with every basic operation.
Here equivalences are stored as Partitions in canonical form: for each element
the least element of its block.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Optional, Tuple
import numpy as np
import pandas as pd
from .libs.aux_functions import canonical_labels, set_partitions
from .libs.union_find import UnionFind
from .subpower import ClosureOverflow, generate_subpower

logger = logging.getLogger(__name__)

DEFAULT_MAX_CONGRUENCES = 100_000
ORACLE_MAX_SIZE = 6


class Partition(object):
    """An equivalence relation on 0...size-1.

    Parameters
    ----------
    labels : sequence
        ``labels[x] == labels[y]`` iff x and y are equivalent. Any hashable
        labels are accepted; they are brought into canonical form.

    Attributes
    ----------
    labels : tuple of int
        For each element the least element of its block.
    size : int

    """

    def __init__(self, labels):
        self.labels = canonical_labels(labels)
        self.size = len(self.labels)

    @classmethod
    def from_blocks(cls, size, blocks):
        """Partition whose non-singleton blocks are `blocks`; missing elements are singletons."""
        uf = UnionFind(size)
        seen = set()
        for block in blocks:
            block = list(block)
            for x in block:
                if not 0 <= x < size:
                    raise ValueError(f"Element {x} is outside 0...{size - 1}")
                if x in seen:
                    raise ValueError(f"Element {x} occurs in two blocks")
                seen.add(x)
            for x in block[1:]:
                uf.union(block[0], x)
        return cls(uf.labels())

    @classmethod
    def bottom(cls, size):
        return cls(range(size))

    @classmethod
    def top(cls, size):
        return cls([0] * size)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return self.__class__.__name__ + f"({self.labels})"

    def __str__(self):
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"

    def __le__(self, other):
        """Refinement: every block of self lies inside a block of other."""
        return all(other.labels[x] == other.labels[self.labels[x]] for x in range(self.size))

    def __lt__(self, other):
        return self != other and self <= other

    @property
    def blocks(self):
        """The blocks as sorted tuples, sorted by least element."""
        blocks = {}
        for x, label in enumerate(self.labels):
            blocks.setdefault(label, []).append(x)
        return [tuple(block) for _, block in sorted(blocks.items())]

    @property
    def num_blocks(self):
        return len(set(self.labels))

    def relates(self, x, y):
        return self.labels[x] == self.labels[y]

    @property
    def matrix(self):
        """Boolean relation matrix, ``matrix[x, y]`` iff x and y are equivalent."""
        labels = np.array(self.labels)
        return labels[:, None] == labels[None, :]

    def meet(self, other):
        """Intersection of the two relations."""
        return Partition(list(zip(self.labels, other.labels)))

    def join(self, other):
        """Transitive closure of the union of the two relations."""
        uf = UnionFind(self.size)
        for x in range(self.size):
            uf.union(x, self.labels[x])
            uf.union(x, other.labels[x])
        return Partition(uf.labels())


def is_congruence(algebra, partition):
    """Whether `partition` is compatible with every basic operation of `algebra`.

    It suffices to move one argument at a time within its block: for every
    operation f, position i and argument tuple, replacing the i-th argument by
    the least element of its block must not leave the block of the value.
    """
    if partition.size != algebra.size:
        raise ValueError(
            f"Partition of {partition.size} elements for an algebra of size {algebra.size}"
        )
    labels = np.array(partition.labels, dtype=np.intp)
    for operation in algebra.operations:
        table = operation.table.astype(np.intp)
        for axis in range(operation.arity):
            moved = np.take(table, labels, axis=axis)
            if not np.array_equal(labels[table], labels[moved]):
                return False
    return True


def principal_congruence(algebra, a, b):
    """The least congruence identifying `a` and `b`.

    This is the transitive closure of the subalgebra of A^2 generated by
    (a, b), (b, a) and the diagonal.
    """
    for x in (a, b):
        if not 0 <= x < algebra.size:
            raise ValueError(f"Element {x} is outside the universe 0...{algebra.size - 1}")
    if a == b:
        return Partition.bottom(algebra.size)
    generators = [(a, b), (b, a)] + [(c, c) for c in algebra.universe]
    pairs = generate_subpower(algebra, generators, cap=algebra.size**2)
    uf = UnionFind(algebra.size)
    for x, y in pairs.dag.tuples():
        uf.union(x, y)
    return Partition(uf.labels())


class CongruenceLattice(object):
    """All congruences of a finite algebra, ordered by refinement.

    Elements are sorted by number of blocks (descending, so the bottom comes
    first and the top last), ties broken by their labels.

    Parameters
    ----------
    algebra : FiniteAlgebra
    elements : iterable of Partition

    Attributes
    ----------
    algebra
    elements : tuple of Partition

    """

    def __init__(self, algebra, elements):
        self.algebra = algebra
        self.elements = tuple(
            sorted(set(elements), key=lambda p: (-p.num_blocks, p.labels))
        )
        self._position = {p: i for i, p in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, partition):
        return partition in self._position

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, partition):
        return self._position[partition]

    @property
    def bottom(self):
        return self.elements[0]

    @property
    def top(self):
        return self.elements[-1]

    def principal(self, a, b):
        return principal_congruence(self.algebra, a, b)

    def to_frame(self):
        """The congruences as a pandas DataFrame, one row each.

        Returns
        -------
        pd.DataFrame
            columns: "congruence", "blocks", "num_blocks", "covers"
            (indices of the congruences it covers).

        """
        rows = []
        for i, alpha in enumerate(self.elements):
            below = [j for j, beta in enumerate(self.elements) if beta < alpha]
            covers = [
                j for j in below
                if not any(self.elements[j] < self.elements[k] for k in below)
            ]
            rows.append(
                {
                    "congruence": i,
                    "blocks": str(alpha),
                    "num_blocks": alpha.num_blocks,
                    "covers": tuple(covers),
                }
            )
        return pd.DataFrame(rows, columns=["congruence", "blocks", "num_blocks", "covers"])


def congruence_lattice(algebra, max_congruences=DEFAULT_MAX_CONGRUENCES):
    """Compute Con(A) as the join closure of the principal congruences.

    Parameters
    ----------
    algebra : FiniteAlgebra
    max_congruences : int
        Give up when more congruences than this are found.
        Default: DEFAULT_MAX_CONGRUENCES

    Returns
    -------
    CongruenceLattice

    Raises
    ------
    ClosureOverflow
        If the lattice has more than `max_congruences` elements.

    """
    principals = []
    for a in algebra.universe:
        for b in range(a + 1, algebra.size):
            theta = principal_congruence(algebra, a, b)
            if theta not in principals:
                principals.append(theta)
    found = {Partition.bottom(algebra.size)} | set(principals)
    queue = list(principals)
    while queue:
        theta = queue.pop()
        for psi in principals:
            joined = theta.join(psi)
            if joined not in found:
                found.add(joined)
                queue.append(joined)
                if len(found) > max_congruences:
                    raise ClosureOverflow(max_congruences)
    logger.debug(
        "%s: %d principal congruences, %d in total", algebra.name, len(principals), len(found)
    )
    return CongruenceLattice(algebra, found)


def all_congruences_bruteforce(algebra):
    """All congruences, by testing every partition of the universe.

    Raises
    ------
    ValueError
        If the universe has more than ORACLE_MAX_SIZE elements.

    """
    if algebra.size > ORACLE_MAX_SIZE:
        raise ValueError(
            f"Brute force needs size <= {ORACLE_MAX_SIZE}, algebra {algebra.name} has {algebra.size}"
        )
    candidates = (Partition(labels) for labels in set_partitions(algebra.size))
    return {p for p in candidates if is_congruence(algebra, p)}


@dataclass(frozen=True)
class CongruenceVerdict:
    """Outcome of a lattice property check.

    Attributes
    ----------
    passed : bool
    prop : str
        "permutable", "modular" or "distributive".
    alpha, beta, gamma : Partition or None
        The violating congruences (gamma only for modularity and distributivity).
    pair : tuple of int or None
        For permutability: a pair in alpha∘beta but not in beta∘alpha.

    """

    passed: bool
    prop: str
    alpha: Optional[Partition] = None
    beta: Optional[Partition] = None
    gamma: Optional[Partition] = None
    pair: Optional[Tuple[int, int]] = None

    def __bool__(self):
        return self.passed

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def describe(self):
        if self.passed:
            return "pass"
        if self.pair is not None:
            return f"alpha={self.alpha} beta={self.beta} pair={self.pair}"
        return f"alpha={self.alpha} beta={self.beta} gamma={self.gamma}"


def compose(alpha, beta):
    """Boolean matrix of alpha∘beta: x is related to z iff x alpha y beta z for some y."""
    return (alpha.matrix.astype(np.intp) @ beta.matrix.astype(np.intp)) > 0


def check_permutable(lattice):
    """Whether all congruences permute: alpha∘beta = beta∘alpha.

    Returns
    -------
    CongruenceVerdict
        On failure, the first pair of congruences (in lattice order) that does
        not permute, ordered so that `pair` is the lexicographically first pair
        of elements lying in alpha∘beta but not in beta∘alpha.

    """
    elements = lattice.elements
    for i, alpha in enumerate(elements):
        for beta in elements[i + 1 :]:
            forward = compose(alpha, beta)
            backward = compose(beta, alpha)
            differ = np.argwhere(forward != backward)
            if len(differ) == 0:
                continue
            x, z = (int(v) for v in differ[0])
            if not forward[x, z]:
                alpha, beta = beta, alpha
            return CongruenceVerdict(
                passed=False, prop="permutable", alpha=alpha, beta=beta, pair=(x, z)
            )
    return CongruenceVerdict(passed=True, prop="permutable")


def check_modular(lattice):
    """The modular law alpha∧(beta∨gamma) = (alpha∧beta)∨gamma for all gamma <= alpha."""
    elements = lattice.elements
    for alpha, beta, gamma in product(elements, repeat=3):
        if not gamma <= alpha:
            continue
        if alpha.meet(beta.join(gamma)) != alpha.meet(beta).join(gamma):
            return CongruenceVerdict(
                passed=False, prop="modular", alpha=alpha, beta=beta, gamma=gamma
            )
    return CongruenceVerdict(passed=True, prop="modular")


def check_distributive(lattice):
    """The distributive law alpha∧(beta∨gamma) = (alpha∧beta)∨(alpha∧gamma) for all triples."""
    elements = lattice.elements
    for alpha, beta, gamma in product(elements, repeat=3):
        if alpha.meet(beta.join(gamma)) != alpha.meet(beta).join(alpha.meet(gamma)):
            return CongruenceVerdict(
                passed=False, prop="distributive", alpha=alpha, beta=beta, gamma=gamma
            )
    return CongruenceVerdict(passed=True, prop="distributive")
