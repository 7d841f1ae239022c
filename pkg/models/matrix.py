"""
Exact Rational Matrices

RatMatrix is the carrier of every differential and action map. It wraps a
sparse sympy DomainMatrix over QQ and keeps the (rows, cols) shape explicit,
so 0 x n and n x 0 matrices behave as zero maps.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Scalar = Union[int, str, Fraction]


def to_qq(value: Scalar):
    """Convert an int, Fraction or "p/q" string to a QQ element."""
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    # already a domain element
    return QQ.convert(value)


def qq_to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class RatMatrix:
    """
    Immutable rational matrix acting on column vectors.

    A matrix of shape (m, n) maps an n-dimensional space to an
    m-dimensional one.
    """

    __slots__ = ("_dm",)

    def __init__(self, dm: DomainMatrix):
        if dm.domain != QQ:
            dm = dm.convert_to(QQ)
        self._dm = dm

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dok(cls, entries: Dict[Tuple[int, int], object], shape: Tuple[int, int]) -> "RatMatrix":
        rows, cols = shape
        sdm: Dict[int, Dict[int, object]] = {}
        for (i, j), value in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside shape {shape}")
            value = to_qq(value) if not isinstance(value, type(QQ.zero)) else value
            if value:
                sdm.setdefault(i, {})[j] = value
        return cls(DomainMatrix(sdm, (rows, cols), QQ))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int = None) -> "RatMatrix":
        """Build from a list of rows; `cols` is required when there are no rows."""
        n_rows = len(rows)
        if cols is None:
            if n_rows == 0:
                raise ValueError("cols must be given for a matrix without rows")
            cols = len(rows[0])
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
            for j, value in enumerate(row):
                entries[(i, j)] = to_qq(value)
        return cls.from_dok(entries, (n_rows, cols))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(DomainMatrix({}, (rows, cols), QQ))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(DomainMatrix({i: {i: QQ.one} for i in range(n)}, (n, n), QQ))

    @classmethod
    def column(cls, values: Sequence[Scalar]) -> "RatMatrix":
        return cls.from_rows([[v] for v in values], cols=1)

    # -- inspection -------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self._dm.shape

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    @property
    def domain_matrix(self) -> DomainMatrix:
        return self._dm

    def dok(self) -> Dict[Tuple[int, int], object]:
        """Nonzero entries keyed by (row, col), as QQ elements."""
        if self.rows == 0 or self.cols == 0:
            return {}
        return {key: value for key, value in self._dm.to_dok().items() if value}

    def is_zero(self) -> bool:
        return not self.dok()

    def entry(self, i: int, j: int) -> Fraction:
        return qq_to_fraction(self.dok().get((i, j), QQ.zero))

    def to_fractions(self) -> List[List[Fraction]]:
        table = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), value in self.dok().items():
            table[i][j] = qq_to_fraction(value)
        return table

    def to_json(self) -> List[List[str]]:
        """Rows of entries as strings ("3", "-1/2"), exact and JSON friendly."""
        return [[str(value) for value in row] for row in self.to_fractions()]

    # -- algebra ----------------------------------------------------------

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return RatMatrix.zeros(self.rows, other.cols)
        return RatMatrix(self._dm * other._dm)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        entries = dict(self.dok())
        for key, value in other.dok().items():
            entries[key] = entries.get(key, QQ.zero) + value
        return RatMatrix.from_dok(entries, self.shape)

    def __neg__(self) -> "RatMatrix":
        return self.scaled(-1)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def scaled(self, factor: Scalar) -> "RatMatrix":
        factor = to_qq(factor)
        return RatMatrix.from_dok({k: v * factor for k, v in self.dok().items()}, self.shape)

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_dok({(j, i): v for (i, j), v in self.dok().items()}, (self.cols, self.rows))

    def select_columns(self, indices: Iterable[int]) -> "RatMatrix":
        indices = list(indices)
        position = {old: new for new, old in enumerate(indices)}
        entries = {(i, position[j]): v for (i, j), v in self.dok().items() if j in position}
        return RatMatrix.from_dok(entries, (self.rows, len(indices)))

    def select_rows(self, indices: Iterable[int]) -> "RatMatrix":
        indices = list(indices)
        position = {old: new for new, old in enumerate(indices)}
        entries = {(position[i], j): v for (i, j), v in self.dok().items() if i in position}
        return RatMatrix.from_dok(entries, (len(indices), self.cols))

    def columns(self) -> List["RatMatrix"]:
        return [self.select_columns([j]) for j in range(self.cols)]

    @staticmethod
    def hstack(blocks: Sequence["RatMatrix"], rows: int = None) -> "RatMatrix":
        if not blocks:
            return RatMatrix.zeros(rows or 0, 0)
        height = blocks[0].rows
        entries = {}
        offset = 0
        for block in blocks:
            if block.rows != height:
                raise ValueError("hstack blocks must share the row count")
            for (i, j), v in block.dok().items():
                entries[(i, j + offset)] = v
            offset += block.cols
        return RatMatrix.from_dok(entries, (height, offset))

    @staticmethod
    def vstack(blocks: Sequence["RatMatrix"], cols: int = None) -> "RatMatrix":
        if not blocks:
            return RatMatrix.zeros(0, cols or 0)
        width = blocks[0].cols
        entries = {}
        offset = 0
        for block in blocks:
            if block.cols != width:
                raise ValueError("vstack blocks must share the column count")
            for (i, j), v in block.dok().items():
                entries[(i + offset, j)] = v
            offset += block.rows
        return RatMatrix.from_dok(entries, (offset, width))

    # -- protocol ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.dok() == other.dok()

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self.dok().items())))

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, {self.to_json()})"


class SparseAssembler:
    """Accumulates signed blocks into one large sparse matrix."""

    def __init__(self, rows: int, cols: int):
        self.shape = (rows, cols)
        self._entries: Dict[Tuple[int, int], object] = {}

    def add_block(self, row_offset: int, col_offset: int, block: RatMatrix, sign: int = 1) -> None:
        factor = QQ(sign)
        for (i, j), value in block.dok().items():
            key = (row_offset + i, col_offset + j)
            self._entries[key] = self._entries.get(key, QQ.zero) + factor * value

    def build(self) -> RatMatrix:
        return RatMatrix.from_dok(self._entries, self.shape)
