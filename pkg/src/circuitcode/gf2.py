"""Dense GF(2) linear algebra on bit-packed rows.

Rows are stored as Python integers, bit ``j`` of a row is column ``j``.
That keeps row operations (xor, popcount) word-level and makes the
weight-ordered enumeration used by the distance search cheap.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence


class BitVector:
    """A fixed-length vector over GF(2), packed into one integer."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("length must be non-negative")
        self.n = n
        self.bits = bits & ((1 << n) - 1) if n else 0

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for v in values:
            if v & 1:
                bits |= 1 << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "BitVector":
        bits = 0
        for j in indices:
            if not 0 <= j < n:
                raise IndexError(f"bit index {j} out of range for length {n}")
            bits |= 1 << j
        return cls(n, bits)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitVector) and self.n == other.n and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"BitVector({self.to01()!r})"

    def to01(self) -> str:
        return "".join(str((self.bits >> j) & 1) for j in range(self.n))

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.n)]

    def weight(self) -> int:
        return self.bits.bit_count()

    def dot(self, other: "BitVector") -> int:
        if self.n != other.n:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> list[int]:
        return [j for j in range(self.n) if (self.bits >> j) & 1]

    def is_zero(self) -> bool:
        return self.bits == 0


class BitMatrix:
    """A dense GF(2) matrix with bit-packed rows; shape fixed at construction."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int, rows: Sequence[int] | None = None):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("shape must be non-negative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        mask = (1 << n_cols) - 1 if n_cols else 0
        if rows is None:
            self.rows = [0] * n_rows
        else:
            if len(rows) != n_rows:
                raise ValueError("row count mismatch")
            self.rows = [r & mask for r in rows]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> "BitMatrix":
        rows = list(rows)
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != n_cols:
                raise ValueError("ragged rows")
            bits = 0
            for j, v in enumerate(row):
                if v & 1:
                    bits |= 1 << j
            packed.append(bits)
        return cls(len(packed), n_cols, packed)

    @classmethod
    def from_vectors(cls, vecs: Sequence[BitVector], n_cols: int | None = None) -> "BitMatrix":
        vecs = list(vecs)
        if n_cols is None:
            if not vecs:
                raise ValueError("cannot infer column count from an empty vector list")
            n_cols = vecs[0].n
        for v in vecs:
            if v.n != n_cols:
                raise ValueError("length mismatch")
        return cls(len(vecs), n_cols, [v.bits for v in vecs])

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols)

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.n_cols, self.rows[i])

    def row_vectors(self) -> Iterator[BitVector]:
        for r in self.rows:
            yield BitVector(self.n_cols, r)

    def column_bits(self, j: int) -> int:
        """Column ``j`` packed into an integer over the row index."""
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return bits

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.n_rows}x{self.n_cols})"

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def transpose(self) -> "BitMatrix":
        out = [0] * self.n_cols
        for i, r in enumerate(self.rows):
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= 1 << i
                r &= r - 1
        return BitMatrix(self.n_cols, self.n_rows, out)

    def mul_vec(self, v: BitVector) -> BitVector:
        """Matrix-vector product ``A v^T`` as a vector over the rows."""
        if v.n != self.n_cols:
            raise ValueError("length mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return BitVector(self.n_rows, bits)

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                k = (rr & -rr).bit_length() - 1
                acc ^= other.rows[k]
                rr &= rr - 1
            out.append(acc)
        return BitMatrix(self.n_rows, other.n_cols, out)

    def stack(self, *others: "BitMatrix") -> "BitMatrix":
        rows = list(self.rows)
        for m in others:
            if m.n_cols != self.n_cols:
                raise ValueError("column count mismatch")
            rows.extend(m.rows)
        return BitMatrix(len(rows), self.n_cols, rows)

    def _elimination(self) -> tuple[list[int], list[int]]:
        """Reduced row echelon form as (rows, pivot columns)."""
        work: list[int] = []
        pivots: list[int] = []
        for r in self.rows:
            for p, col in zip(work, pivots):
                if (r >> col) & 1:
                    r ^= p
            if r == 0:
                continue
            col = (r & -r).bit_length() - 1
            pos = 0
            while pos < len(pivots) and pivots[pos] < col:
                pos += 1
            work.insert(pos, r)
            pivots.insert(pos, col)
            for i in range(len(work)):
                if i != pos and (work[i] >> col) & 1:
                    work[i] ^= r
        return work, pivots

    def rref(self) -> "BitMatrix":
        work, _ = self._elimination()
        return BitMatrix(len(work), self.n_cols, work)

    def rank(self) -> int:
        _, pivots = self._elimination()
        return len(pivots)

    def kernel_basis(self) -> "BitMatrix":
        """Rows form an rref basis of ``{v : A v^T = 0}``."""
        work, pivots = self._elimination()
        pivot_set = set(pivots)
        free = [j for j in range(self.n_cols) if j not in pivot_set]
        basis = []
        for j in free:
            vec = 1 << j
            for p, col in zip(work, pivots):
                if (p >> j) & 1:
                    vec |= 1 << col
            basis.append(vec)
        return BitMatrix(len(basis), self.n_cols, basis).rref()

    def row_space_member(self, v: BitVector) -> bool:
        if v.n != self.n_cols:
            raise ValueError("length mismatch")
        work, pivots = self._elimination()
        r = v.bits
        for p, col in zip(work, pivots):
            if (r >> col) & 1:
                r ^= p
        return r == 0

    def row_space_equal(self, other: "BitMatrix") -> bool:
        if self.n_cols != other.n_cols:
            return False
        a = self.rref()
        b = other.rref()
        return a.rows == b.rows

    def inverse(self) -> "BitMatrix":
        if self.n_rows != self.n_cols:
            raise ValueError("only square matrices invert")
        n = self.n_rows
        aug = BitMatrix(
            n, 2 * n, [r | (1 << (n + i)) for i, r in enumerate(self.rows)]
        )
        work, pivots = aug._elimination()
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ValueError("matrix is singular")
        mask = (1 << n) - 1
        return BitMatrix(n, n, [(r >> n) & mask for r in work[:n]])

    def solve(self, rhs: BitVector) -> BitVector | None:
        """One solution ``x`` of ``A x^T = rhs^T``, or None if inconsistent."""
        if rhs.n != self.n_rows:
            raise ValueError("length mismatch")
        work: list[int] = []
        pivots: list[int] = []
        # Augment each row with its rhs bit one position past the columns.
        aug_bit = 1 << self.n_cols
        for i, r in enumerate(self.rows):
            if (rhs.bits >> i) & 1:
                r |= aug_bit
            for p, col in zip(work, pivots):
                if (r >> col) & 1:
                    r ^= p
            low = r & (aug_bit - 1)
            if low == 0:
                if r:
                    return None
                continue
            col = (low & -low).bit_length() - 1
            pos = 0
            while pos < len(pivots) and pivots[pos] < col:
                pos += 1
            work.insert(pos, r)
            pivots.insert(pos, col)
            for k in range(len(work)):
                if k != pos and (work[k] >> col) & 1:
                    work[k] ^= r
        x = 0
        for p, col in zip(work, pivots):
            if p & aug_bit:
                x |= 1 << col
        return BitVector(self.n_cols, x)


def kron(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Kronecker product; column (j1, j2) maps to j1 * b.n_cols + j2."""
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            bits = 0
            r = ra
            while r:
                j1 = (r & -r).bit_length() - 1
                bits |= rb << (j1 * b.n_cols)
                r &= r - 1
            rows.append(bits)
    return BitMatrix(a.n_rows * b.n_rows, a.n_cols * b.n_cols, rows)


def hstack(*ms: BitMatrix) -> BitMatrix:
    """Concatenate matrices left to right; all must share the row count."""
    if not ms:
        raise ValueError("need at least one matrix")
    n_rows = ms[0].n_rows
    rows = [0] * n_rows
    shift = 0
    for m in ms:
        if m.n_rows != n_rows:
            raise ValueError("row count mismatch")
        for i, r in enumerate(m.rows):
            rows[i] |= r << shift
        shift += m.n_cols
    return BitMatrix(n_rows, shift, rows)


def rank(m: BitMatrix) -> int:
    return m.rank()


def kernel_basis(m: BitMatrix) -> BitMatrix:
    return m.kernel_basis()


def row_space_member(m: BitMatrix, v: BitVector) -> bool:
    return m.row_space_member(v)


def stack_kernel(ms: Sequence[BitMatrix]) -> BitMatrix:
    """Basis of the intersection of the kernels of the given matrices."""
    if not ms:
        raise ValueError("need at least one matrix")
    first = ms[0]
    return first.stack(*ms[1:]).kernel_basis()


def span_union(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """rref basis of rowsp(a) + rowsp(b)."""
    if a.n_cols != b.n_cols:
        raise ValueError("column count mismatch")
    return a.stack(b).rref()


def symplectic_product(b1: BitVector, b2: BitVector) -> int:
    """0 iff the Pauli operators encoded by (x|z) halves commute."""
    if b1.n != b2.n:
        raise ValueError("length mismatch")
    if b1.n % 2:
        raise ValueError("symplectic product needs even length")
    n = b1.n // 2
    mask = (1 << n) - 1
    x1, z1 = b1.bits & mask, b1.bits >> n
    x2, z2 = b2.bits & mask, b2.bits >> n
    return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1


def weight_ordered_supports(n_cols: int, max_weight: int) -> Iterator[tuple[int, ...]]:
    """All column supports of weight 1..max_weight, by weight then lexicographic."""
    for w in range(1, max_weight + 1):
        yield from combinations(range(n_cols), w)


def min_weight_in(
    space_basis: BitMatrix,
    exclude_test: Callable[[BitVector], bool] | None = None,
    max_weight: int | None = None,
) -> tuple[BitVector, int] | None:
    """Minimum-weight nonzero vector of rowsp(space_basis) not hit by exclude_test.

    Enumerates the ambient space by increasing weight (lexicographic within a
    weight class) and tests row-space membership, so the returned witness is
    deterministic. Returns None when nothing is found up to max_weight.
    """
    n = space_basis.n_cols
    if max_weight is None:
        max_weight = n
    if max_weight > n:
        raise ValueError("max_weight exceeds column count")
    work, pivots = space_basis._elimination()
    for support in weight_ordered_supports(n, max_weight):
        bits = 0
        for j in support:
            bits |= 1 << j
        r = bits
        for p, col in zip(work, pivots):
            if (r >> col) & 1:
                r ^= p
        if r != 0:
            continue
        v = BitVector(n, bits)
        if exclude_test is not None and exclude_test(v):
            continue
        return v, len(support)
    return None


# ---------------------------------------------------------------------------
# Text and alist formats


def write_matrix_text(m: BitMatrix) -> str:
    lines = [f"{m.n_rows} {m.n_cols}"]
    for r in m.rows:
        lines.append(" ".join(str((r >> j) & 1) for j in range(m.n_cols)))
    return "\n".join(lines) + "\n"


def read_matrix_text(text: str) -> BitMatrix:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text needs a '<rows> <cols>' header")
    n_rows, n_cols = int(tokens[0]), int(tokens[1])
    values = tokens[2:]
    if len(values) != n_rows * n_cols:
        raise ValueError(
            f"expected {n_rows * n_cols} entries, found {len(values)}"
        )
    rows = []
    for i in range(n_rows):
        bits = 0
        for j in range(n_cols):
            v = values[i * n_cols + j]
            if v not in ("0", "1"):
                raise ValueError(f"matrix entries must be 0 or 1, found {v!r}")
            if v == "1":
                bits |= 1 << j
        rows.append(bits)
    return BitMatrix(n_rows, n_cols, rows)


def write_alist(m: BitMatrix) -> str:
    """Sparse alist format; columns are variable nodes, rows are checks."""
    n, mm = m.n_cols, m.n_rows
    col_supports = [[] for _ in range(n)]
    row_supports = []
    for i, r in enumerate(m.rows):
        sup = []
        rr = r
        while rr:
            j = (rr & -rr).bit_length() - 1
            sup.append(j)
            col_supports[j].append(i)
            rr &= rr - 1
        row_supports.append(sup)
    max_col = max((len(s) for s in col_supports), default=0)
    max_row = max((len(s) for s in row_supports), default=0)
    lines = [f"{n} {mm}", f"{max_col} {max_row}"]
    lines.append(" ".join(str(len(s)) for s in col_supports))
    lines.append(" ".join(str(len(s)) for s in row_supports))
    for s in col_supports:
        padded = [i + 1 for i in s] + [0] * (max_col - len(s))
        lines.append(" ".join(str(v) for v in padded))
    for s in row_supports:
        padded = [j + 1 for j in s] + [0] * (max_row - len(s))
        lines.append(" ".join(str(v) for v in padded))
    return "\n".join(lines) + "\n"


def read_alist(text: str) -> BitMatrix:
    tokens = [int(t) for t in text.split()]
    if len(tokens) < 4:
        raise ValueError("truncated alist")
    it = iter(tokens)
    n = next(it)
    mm = next(it)
    max_col = next(it)
    max_row = next(it)
    col_deg = [next(it) for _ in range(n)]
    row_deg = [next(it) for _ in range(mm)]
    rows = [0] * mm
    for j in range(n):
        entries = [next(it) for _ in range(max_col)]
        seen = 0
        for v in entries:
            if v == 0:
                continue
            rows[v - 1] |= 1 << j
            seen += 1
        if seen != col_deg[j]:
            raise ValueError(f"column {j} degree mismatch")
    for i in range(mm):
        entries = [next(it) for _ in range(max_row)]
        sup = {v - 1 for v in entries if v != 0}
        if len(sup) != row_deg[i]:
            raise ValueError(f"row {i} degree mismatch")
        expect = set(BitVector(n, rows[i]).support())
        if sup != expect:
            raise ValueError(f"row {i} support inconsistent with column lists")
    return BitMatrix(mm, n, rows)
