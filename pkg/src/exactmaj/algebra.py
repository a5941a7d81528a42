"""Finite algebras given by total operation tables."""
import numpy as np
from itertools import product
from .libs.aux_functions import element_dtype


class SignatureError(ValueError):
    """An operation symbol is unknown or used with the wrong number of arguments.

    Parameters
    ----------
    message : str
        Human-readable description.
    symbol : str
        The offending operation symbol.

    """

    def __init__(self, message, symbol):
        super(SignatureError, self).__init__(message)
        self.symbol = symbol


class Operation(object):
    """A named finitary operation on the universe 0...size-1.

    The table is stored as a read-only numpy array of shape ``(size,) * arity``,
    so ``table[a1, ..., ak]`` is the value of the operation. Flattened in
    C order this is exactly the lexicographic argument order with the last
    argument varying fastest.

    Parameters
    ----------
    name : str
        The operation symbol.
    arity : int
        Number of arguments, 0 for a constant.
    table : array_like
        Either a flat sequence of size**arity entries or an array of shape
        ``(size,) * arity``.
    size : int
        Size of the universe the operation acts on.

    Attributes
    ----------
    name
    arity
    size
    table : np.ndarray

    """

    def __init__(self, name, arity, table, size):
        if not isinstance(name, str) or not name:
            raise TypeError(f"Operation name must be a non-empty str, got {name!r}")
        if arity < 0:
            raise ValueError(f"Operation {name} has negative arity {arity}")
        if size < 1:
            raise ValueError(f"Operation {name} needs a non-empty universe, got size {size}")
        flat = np.asarray(table, dtype=np.int64).ravel()
        if len(flat) != size**arity:
            raise ValueError(
                f"Operation {name} of arity {arity} needs {size**arity} table entries, got {len(flat)}"
            )
        if len(flat) and (flat.min() < 0 or flat.max() >= size):
            bad = flat[(flat < 0) | (flat >= size)][0]
            raise ValueError(
                f"Operation {name} has table entry {bad} outside the universe 0...{size - 1}"
            )
        self.name = name
        self.arity = arity
        self.size = size
        self.table = flat.astype(element_dtype(size)).reshape((size,) * arity)
        self.table.setflags(write=False)
        self._flat = self.table.ravel().astype(np.intp)

    @classmethod
    def from_function(cls, name, arity, size, func):
        """Tabulate a Python callable.

        Parameters
        ----------
        name : str
        arity : int
        size : int
        func : callable
            Called as ``func(a1, ..., ak)`` for every argument tuple.

        Returns
        -------
        Operation

        """
        table = [func(*args) for args in product(range(size), repeat=arity)]
        return cls(name=name, arity=arity, table=table, size=size)

    def __repr__(self):
        return (
            self.__class__.__name__
            + f"(name={self.name!r}, arity={self.arity}, table={self.flat_table}, size={self.size})"
        )

    def __eq__(self, other):
        if not isinstance(other, Operation):
            return NotImplemented
        return (
            self.name == other.name
            and self.arity == other.arity
            and self.size == other.size
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.name, self.arity, self.size, self.table.tobytes()))

    def __call__(self, *args):
        if len(args) != self.arity:
            raise SignatureError(
                f"Operation {self.name} has arity {self.arity}, called with {len(args)} arguments",
                symbol=self.name,
            )
        return int(self.table[tuple(args)])

    @property
    def flat_table(self):
        """The table as a tuple in lexicographic argument order."""
        return tuple(int(x) for x in self._flat)

    def apply_columns(self, *columns, length=None):
        """Apply the operation coordinatewise to equally shaped arrays.

        Parameters
        ----------
        *columns : np.ndarray
            `arity` integer arrays of equal shape, e.g. columns of length L or
            whole blocks of tuples.
        length : int or None
            Only needed for constants, which have no column to take L from.

        Returns
        -------
        np.ndarray
            Array of the same shape (dtype intp) with the coordinatewise values.

        """
        if len(columns) != self.arity:
            raise SignatureError(
                f"Operation {self.name} has arity {self.arity}, applied to {len(columns)} arguments",
                symbol=self.name,
            )
        if self.arity == 0:
            return np.full(length, self._flat[0], dtype=np.intp)
        index = np.asarray(columns[0], dtype=np.intp)
        for column in columns[1:]:
            index = index * self.size + np.asarray(column, dtype=np.intp)
        return self._flat.take(index)


class FiniteAlgebra(object):
    """A finite universe 0...size-1 together with named operations.

    Parameters
    ----------
    name : str
        A human-readable name of the algebra.
    size : int
        Number of elements.
    operations : list of Operation
        The basic operations. Names have to be unique and every table has to
        act on the same universe.

    Attributes
    ----------
    name
    size
    operations : tuple of Operation
    signature : dict
        keys: operation symbols, values: arities

    """

    def __init__(self, name, size, operations=()):
        if size < 1:
            raise ValueError(f"Algebra {name} needs a non-empty universe, got size {size}")
        self.name = name
        self.size = size
        self.operations = tuple(operations)
        self._by_name = {}
        for operation in self.operations:
            if operation.size != size:
                raise ValueError(
                    f"Operation {operation.name} acts on {operation.size} elements, algebra {name} has {size}"
                )
            if operation.name in self._by_name:
                raise ValueError(f"Operation name {operation.name} occurs twice in algebra {name}")
            self._by_name[operation.name] = operation
        self.signature = {op.name: op.arity for op in self.operations}

    def __repr__(self):
        return (
            self.__class__.__name__
            + f"(name={self.name!r}, size={self.size}, operations={list(self.operations)})"
        )

    def __str__(self):
        ops = ", ".join(f"{op.name}/{op.arity}" for op in self.operations)
        return f"{self.name} (size {self.size}; {ops or 'no operations'})"

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (
            self.name == other.name
            and self.size == other.size
            and self.operations == other.operations
        )

    def __hash__(self):
        return hash((self.name, self.size, self.operations))

    def __contains__(self, symbol):
        return symbol in self._by_name

    @property
    def universe(self):
        return range(self.size)

    def operation(self, symbol):
        """Look up a basic operation by its symbol.

        Raises
        ------
        SignatureError
            If the symbol is not in the signature.

        """
        try:
            return self._by_name[symbol]
        except KeyError:
            raise SignatureError(
                f"Unknown operation symbol {symbol!r} for algebra {self.name}",
                symbol=symbol,
            ) from None

    def reduct(self, name, operations):
        """A new algebra on the same universe with the given operations.

        Parameters
        ----------
        name : str
        operations : list of Operation

        Returns
        -------
        FiniteAlgebra

        """
        return FiniteAlgebra(name=name, size=self.size, operations=operations)
