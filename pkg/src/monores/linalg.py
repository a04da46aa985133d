"""Exact label-keyed linear algebra over the rationals.

Vectors and matrices here are total maps from finite sets of opaque string
labels.  There is no positional indexing, no floating point, and no
tolerance anywhere: all arithmetic is done with `fractions.Fraction`.

The componentwise partial order `div_le` (one exponent tuple divides
another) and the extraction of its minimal elements live here too, since
every other module is built on them.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import SingularMatrixError, StructuralError

Rat = Fraction
RatLike = Union[Fraction, int, str]

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(value: RatLike) -> Fraction:
    """Parse an exact rational from "p/q" or "n" notation.

    Fractions and ints pass through.  The denominator, when present, must
    be an unsigned integer, so negative denominators are rejected.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL.match(text):
            raise StructuralError(f"not a rational literal: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise StructuralError(f"zero denominator in {value!r}") from None
    raise StructuralError(f"cannot read a rational out of {type(value).__name__}")


def format_rational(value: RatLike) -> str:
    """Render a rational as "n" for integers and "p/q" otherwise."""
    x = parse_rational(value)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _check_label(label) -> str:
    if not isinstance(label, str) or not label:
        raise StructuralError(f"labels must be nonempty strings, got {label!r}")
    return label


class ExponentVector:
    """A total map from a finite label set to exact rationals.

    Immutable and hashable; entries are accessible by label only.
    """

    __slots__ = ("_items", "_map")

    def __init__(self, entries: Mapping[str, RatLike]):
        m = {_check_label(k): parse_rational(v) for k, v in entries.items()}
        self._map = m
        self._items = tuple(sorted(m.items()))

    @classmethod
    def constant(cls, labels: Iterable[str], value: RatLike) -> "ExponentVector":
        v = parse_rational(value)
        return cls({lab: v for lab in labels})

    @classmethod
    def zero(cls, labels: Iterable[str]) -> "ExponentVector":
        return cls.constant(labels, 0)

    @classmethod
    def ones(cls, labels: Iterable[str]) -> "ExponentVector":
        return cls.constant(labels, 1)

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self._map)

    @property
    def sorted_labels(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self._items)

    def __getitem__(self, label: str) -> Fraction:
        try:
            return self._map[label]
        except KeyError:
            raise StructuralError(f"no entry for label {label!r}") from None

    def items(self) -> Iterator[tuple[str, Fraction]]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for _, v in self._items)

    def is_positive(self) -> bool:
        return all(v > 0 for _, v in self._items)

    def restrict(self, labels: Iterable[str]) -> "ExponentVector":
        """Forget every entry outside `labels` (which must all be present)."""
        keep = set(labels)
        missing = keep - self.labels
        if missing:
            raise StructuralError(f"cannot restrict to absent labels {sorted(missing)}")
        return ExponentVector({k: v for k, v in self._map.items() if k in keep})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentVector):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {format_rational(v)}" for k, v in self._items)
        return f"ExponentVector({{{body}}})"


class ExponentMatrix:
    """A total map (row label, column label) -> exact rational.

    Rows and columns are unordered label sets; any positional rendering
    (serialization, elimination) fixes an explicit label order first.
    """

    __slots__ = ("_rows", "_cols", "_data")

    def __init__(
        self,
        rows: Iterable[str],
        cols: Iterable[str],
        entries: Mapping[tuple[str, str], RatLike],
    ):
        self._rows = frozenset(_check_label(r) for r in rows)
        self._cols = frozenset(_check_label(c) for c in cols)
        data = {}
        for (r, c), v in entries.items():
            if r not in self._rows or c not in self._cols:
                raise StructuralError(f"entry ({r!r},{c!r}) outside {sorted(self._rows)}x{sorted(self._cols)}")
            data[(r, c)] = parse_rational(v)
        missing = len(self._rows) * len(self._cols) - len(data)
        if missing:
            raise StructuralError(f"matrix is missing {missing} entries")
        self._data = data

    @classmethod
    def identity(cls, labels: Iterable[str]) -> "ExponentMatrix":
        labs = list(labels)
        return cls(labs, labs, {(r, c): Fraction(r == c) for r in labs for c in labs})

    @classmethod
    def diagonal(cls, diag: ExponentVector) -> "ExponentMatrix":
        labs = diag.sorted_labels
        return cls(labs, labs, {(r, c): diag[r] if r == c else Fraction(0) for r in labs for c in labs})

    @classmethod
    def from_row_table(
        cls,
        row_order: Sequence[str],
        col_order: Sequence[str],
        table: Sequence[Sequence[RatLike]],
    ) -> "ExponentMatrix":
        """Build from an ordered list of rows, each an ordered list of entries."""
        if len(table) != len(row_order):
            raise StructuralError("row count does not match row label list")
        entries = {}
        for r, row in zip(row_order, table):
            if len(row) != len(col_order):
                raise StructuralError("column count does not match column label list")
            for c, v in zip(col_order, row):
                entries[(r, c)] = v
        return cls(row_order, col_order, entries)

    @property
    def row_labels(self) -> frozenset[str]:
        return self._rows

    @property
    def col_labels(self) -> frozenset[str]:
        return self._cols

    @property
    def sorted_rows(self) -> tuple[str, ...]:
        return tuple(sorted(self._rows))

    @property
    def sorted_cols(self) -> tuple[str, ...]:
        return tuple(sorted(self._cols))

    def entry(self, row: str, col: str) -> Fraction:
        try:
            return self._data[(row, col)]
        except KeyError:
            raise StructuralError(f"no entry at ({row!r},{col!r})") from None

    def row_vector(self, row: str) -> ExponentVector:
        if row not in self._rows:
            raise StructuralError(f"no row {row!r}")
        return ExponentVector({c: self._data[(row, c)] for c in self._cols})

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._data.values())

    def _key(self):
        return tuple(sorted(self._data.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentMatrix):
            return NotImplemented
        return self._rows == other._rows and self._cols == other._cols and self._data == other._data

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._key()))

    def __repr__(self) -> str:
        rows = self.sorted_rows
        cols = self.sorted_cols
        body = "; ".join(
            f"{r}: [" + ", ".join(format_rational(self._data[(r, c)]) for c in cols) + "]"
            for r in rows
        )
        return f"ExponentMatrix(rows={list(rows)}, cols={list(cols)}, {body})"


def div_le(a: ExponentVector, b: ExponentVector) -> bool:
    """Componentwise order: a divides b iff a(i) <= b(i) for every label i."""
    if a.labels != b.labels:
        raise StructuralError("div_le needs vectors over the same label set")
    return all(av <= b[k] for k, av in a.items())


def minimal_elements(vectors: Iterable[ExponentVector]) -> list[ExponentVector]:
    """The elements not strictly dominated by another one; pairwise incomparable.

    Input vectors must share one label set.  Duplicates collapse; the result
    is sorted for determinism.  Empty input gives an empty list.
    """
    vecs = sorted(set(vectors), key=lambda v: tuple(x for _, x in v.items()))
    if not vecs:
        return []
    labels = vecs[0].labels
    for v in vecs:
        if v.labels != labels:
            raise StructuralError("minimal_elements needs a single common label set")
    out = []
    for v in vecs:
        if not any(w != v and div_le(w, v) for w in vecs):
            out.append(v)
    return out


def mat_mul(a: ExponentMatrix, b: ExponentMatrix) -> ExponentMatrix:
    """Exact product; the column labels of `a` must equal the row labels of `b`."""
    if a.col_labels != b.row_labels:
        raise StructuralError("mat_mul: inner label sets differ")
    mid = a.sorted_cols
    entries = {
        (r, c): sum((a.entry(r, m) * b.entry(m, c) for m in mid), Fraction(0))
        for r in a.row_labels
        for c in b.col_labels
    }
    return ExponentMatrix(a.row_labels, b.col_labels, entries)


def mat_inverse(a: ExponentMatrix) -> ExponentMatrix:
    """Exact inverse by Gauss-Jordan elimination.

    For `a` with rows I and columns J (same cardinality), the result has
    rows J and columns I, and both products with `a` are identities.
    """
    rows = a.sorted_rows
    cols = a.sorted_cols
    n = len(rows)
    if n != len(cols):
        raise StructuralError("mat_inverse needs a square matrix")
    work = [[a.entry(r, c) for c in cols] for r in rows]
    aug = [[Fraction(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        pivot = next((k for k in range(i, n) if work[k][i] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix has no exact inverse")
        if pivot != i:
            work[i], work[pivot] = work[pivot], work[i]
            aug[i], aug[pivot] = aug[pivot], aug[i]
        inv_p = 1 / work[i][i]
        work[i] = [x * inv_p for x in work[i]]
        aug[i] = [x * inv_p for x in aug[i]]
        for k in range(n):
            if k != i and work[k][i] != 0:
                f = work[k][i]
                work[k] = [x - f * y for x, y in zip(work[k], work[i])]
                aug[k] = [x - f * y for x, y in zip(aug[k], aug[i])]
    entries = {(cols[i], rows[j]): aug[i][j] for i in range(n) for j in range(n)}
    return ExponentMatrix(cols, rows, entries)


def vec_apply(v: ExponentVector, a: ExponentMatrix) -> ExponentVector:
    """Row-vector times matrix: (vA)(j) = sum_i v(i) A(i,j)."""
    if v.labels != a.row_labels:
        raise StructuralError("vec_apply: vector labels differ from matrix rows")
    rows = v.sorted_labels
    return ExponentVector(
        {c: sum((v[r] * a.entry(r, c) for r in rows), Fraction(0)) for c in a.col_labels}
    )


def hadamard(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    """Entrywise product of two vectors over the same label set."""
    if a.labels != b.labels:
        raise StructuralError("hadamard needs vectors over the same label set")
    return ExponentVector({k: av * b[k] for k, av in a.items()})
