"""Delimited-table ingestion: cell parsing, feature typing, and null handling.

A loaded table is column oriented. Every cell is parsed once into one of
three shapes: ``None`` (null), ``float`` (finite numeric literal) or ``str``
(category token). Feature kinds are assigned afterwards by unique-response
counting, and a per-column null policy may rewrite nulls before any pairwise
statistics are computed.
"""

from __future__ import annotations

import csv
import enum
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

# Reserved token injected by the null-category policy.
NULL_TOKEN = "⟂NULL⟂"

# Tokens treated as null on load, compared case-insensitively.
DEFAULT_NULL_TOKENS = frozenset({"", "na", "nan", "null"})

DEFAULT_DISCRETE_THRESHOLD = 10

# Plain decimal / scientific literals only. Locale forms ("1,5"), hex,
# underscores, inf and whitespace-padded tokens all stay category tokens.
_NUMERIC_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\Z")


class TableError(Exception):
    """A problem with the input table that should abort the run."""


class MissingFileError(TableError):
    pass


class RaggedRowError(TableError):
    pass


class DuplicateHeaderError(TableError):
    pass


class InvalidHeaderError(TableError):
    pass


class EmptyTableError(TableError):
    pass


class NullPolicyError(TableError):
    pass


class FeatureKind(enum.Enum):
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


class NullPolicy(enum.Enum):
    DROP_PAIRWISE = "drop-pairwise"
    NULL_CATEGORY = "null-category"
    FILL_MIN = "fill-min"
    FILL_MEDIAN = "fill-median"


def parse_cell(token: str, null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS):
    """Parse one raw cell into None (null), float (numeric) or str (token)."""
    if token.lower() in null_tokens:
        return None
    if _NUMERIC_RE.fullmatch(token):
        value = float(token)
        if math.isfinite(value):
            # Collapse -0.0 so uniqueness counting sees a single zero.
            return value + 0.0 if value == 0.0 else value
    return token


def canonical_token(value: float) -> str:
    """Exact decimal token for a numeric cell in a force-discrete column.

    Integral values drop the trailing ".0" so 1, 1.0 and 1.000 all map to
    the token "1"; everything else uses the shortest round-trip repr.
    """
    if value == 0.0:
        value = 0.0
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


@dataclass(eq=False)
class FeatureColumn:
    """One feature: a name, parsed cells and (once assigned) a kind.

    Cells are ``None | float | str``. Columns are treated as immutable once
    built; every transformation returns a new column.
    """

    name: str
    cells: list
    kind: FeatureKind | None = None
    _n_unique: int | None = field(default=None, repr=False)
    _mask: np.ndarray | None = field(default=None, repr=False)
    _numeric: np.ndarray | None = field(default=None, repr=False)
    _tokens: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_records(self) -> int:
        return len(self.cells)

    @property
    def n_unique(self) -> int:
        """Count of distinct non-null values."""
        if self._n_unique is None:
            self._n_unique = len({c for c in self.cells if c is not None})
        return self._n_unique

    @property
    def all_null(self) -> bool:
        return self.n_unique == 0

    def non_null_mask(self) -> np.ndarray:
        if self._mask is None:
            self._mask = np.fromiter(
                (c is not None for c in self.cells), dtype=bool, count=len(self.cells)
            )
        return self._mask

    def numeric_values(self) -> np.ndarray:
        """Float array with NaN at nulls. Valid for continuous columns."""
        if self._numeric is None:
            self._numeric = np.array(
                [np.nan if c is None else float(c) for c in self.cells], dtype=float
            )
        return self._numeric

    def token_values(self) -> np.ndarray:
        """Object array of tokens with None at nulls."""
        if self._tokens is None:
            self._tokens = np.array(self.cells, dtype=object)
        return self._tokens

    def values_for_pairing(self, mask: np.ndarray) -> np.ndarray:
        if self.kind is FeatureKind.CONTINUOUS:
            return self.numeric_values()[mask]
        return self.token_values()[mask]


@dataclass(eq=False)
class FeatureTable:
    """Column-oriented table of parsed features."""

    features: list[FeatureColumn]

    def __post_init__(self):
        names = [f.name for f in self.features]
        if any(not n for n in names):
            raise InvalidHeaderError("feature names must be non-empty")
        if len(set(names)) != len(names):
            raise DuplicateHeaderError("feature names must be unique")
        lengths = {f.n_records for f in self.features}
        if len(lengths) > 1:
            raise RaggedRowError(f"columns disagree on record count: {sorted(lengths)}")

    @property
    def n_features(self) -> int:
        return len(self.features)

    @property
    def n_records(self) -> int:
        return self.features[0].n_records if self.features else 0

    def column(self, name: str) -> FeatureColumn:
        for f in self.features:
            if f.name == name:
                return f
        raise KeyError(name)


def load_table(
    path,
    null_tokens=None,
    delimiter: str = ",",
) -> FeatureTable:
    """Load a delimited UTF-8 file (header row, RFC 4180 quoting) into a table.

    Raises MissingFileError, DuplicateHeaderError / InvalidHeaderError,
    RaggedRowError (with the offending row number) or EmptyTableError.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"input file not found: {path}")
    tokens = (
        DEFAULT_NULL_TOKENS
        if null_tokens is None
        else frozenset(t.lower() for t in null_tokens)
    )

    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyTableError(f"{path}: file is empty") from None
        if any(not name for name in header):
            raise InvalidHeaderError(f"{path}: empty feature name in header")
        if len(set(header)) != len(header):
            dupes = sorted({n for n in header if header.count(n) > 1})
            raise DuplicateHeaderError(f"{path}: duplicate feature names {dupes}")

        columns: list[list] = [[] for _ in header]
        n_rows = 0
        for i, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise RaggedRowError(
                    f"{path}: row {i} has {len(row)} fields, expected {len(header)}"
                )
            for col, token in zip(columns, row):
                col.append(parse_cell(token, tokens))
            n_rows += 1

    if n_rows == 0:
        raise EmptyTableError(f"{path}: no data rows")
    return FeatureTable([FeatureColumn(name, cells) for name, cells in zip(header, columns)])


def classify_feature(
    column: FeatureColumn, threshold: int = DEFAULT_DISCRETE_THRESHOLD
) -> FeatureKind:
    """Assign discrete/continuous by unique-response count.

    Discrete when the distinct non-null count is below the threshold, and
    also when it is not (force-classification) unless every non-null value
    parsed as a number. All-null columns come out discrete with n_unique 0.
    """
    if threshold < 2:
        raise ValueError(f"discrete threshold must be >= 2, got {threshold}")
    if column.n_unique < threshold:
        return FeatureKind.DISCRETE
    if all(isinstance(c, float) for c in column.cells if c is not None):
        return FeatureKind.CONTINUOUS
    return FeatureKind.DISCRETE


def classify_table(
    table: FeatureTable, threshold: int = DEFAULT_DISCRETE_THRESHOLD
) -> FeatureTable:
    """Classify every column and tokenize numeric cells of discrete columns."""
    out = []
    for col in table.features:
        kind = classify_feature(col, threshold)
        cells = col.cells
        if kind is FeatureKind.DISCRETE and any(isinstance(c, float) for c in cells):
            cells = [canonical_token(c) if isinstance(c, float) else c for c in cells]
        out.append(FeatureColumn(col.name, cells, kind))
    return FeatureTable(out)


def apply_null_policy(column: FeatureColumn, policy: NullPolicy) -> FeatureColumn:
    """Rewrite a column's nulls according to the policy.

    drop-pairwise leaves the column untouched (nulls are handled later, per
    pair). null-category is discrete-only; fill-min / fill-median are
    continuous-only and require at least one non-null value.
    """
    if policy is NullPolicy.DROP_PAIRWISE:
        return column

    if policy is NullPolicy.NULL_CATEGORY:
        if column.kind is not FeatureKind.DISCRETE:
            raise NullPolicyError(
                f"{column.name}: null-category applies only to discrete features"
            )
        if not any(c is None for c in column.cells):
            return column
        if NULL_TOKEN in column.cells:
            raise NullPolicyError(f"{column.name}: reserved null token already present")
        cells = [NULL_TOKEN if c is None else c for c in column.cells]
        return FeatureColumn(column.name, cells, column.kind)

    # fill-min / fill-median
    if column.kind is not FeatureKind.CONTINUOUS:
        raise NullPolicyError(
            f"{column.name}: {policy.value} applies only to continuous features"
        )
    present = [c for c in column.cells if c is not None]
    if not present:
        raise NullPolicyError(f"{column.name}: cannot fill an all-null column")
    if policy is NullPolicy.FILL_MIN:
        fill = float(np.min(present))
    else:
        fill = float(np.median(present))
    cells = [fill if c is None else c for c in column.cells]
    return FeatureColumn(column.name, cells, column.kind)
