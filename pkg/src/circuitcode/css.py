"""Closed-form check matrices for transversal circuits on CSS codes.

A CSS-type logical-layer matrix pair (a_X, a_Z) with its deleting blocks and
code generators, combined with a CSS code (G_X, G_Z), yields the full
physical-circuit matrices A, D, B, L as Kronecker blocks. Column layout per
X/Z block: m^B mini-blocks of n qubit columns (operator snapshots), then m^C
mini-blocks of r measurement columns.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix, BitVector, hstack, kron
from .pauli import PauliOperator


@dataclass
class CssCode:
    n: int
    k: int
    g_x: BitMatrix
    g_z: BitMatrix
    j_x: BitMatrix
    j_z: BitMatrix

    @property
    def r_x(self) -> int:
        return self.g_x.n_rows

    @property
    def r_z(self) -> int:
        return self.g_z.n_rows

    def validate(self) -> None:
        if not self.g_x.matmul(self.g_z.transpose()).is_zero():
            raise ValueError("G_X G_Z^T must vanish")
        if not self.g_x.matmul(self.j_z.transpose()).is_zero():
            raise ValueError("G_X J_Z^T must vanish")
        if not self.g_z.matmul(self.j_x.transpose()).is_zero():
            raise ValueError("G_Z J_X^T must vanish")
        if self.j_x.matmul(self.j_z.transpose()) != BitMatrix.identity(self.k):
            raise ValueError("J_X J_Z^T must be the identity")
        if self.k != self.n - self.g_x.rank() - self.g_z.rank():
            raise ValueError("logical count mismatch")


def _complete(base: BitMatrix, space: BitMatrix) -> BitMatrix:
    rows = []
    acc = base
    for v in space.row_vectors():
        candidate = acc.stack(BitMatrix.from_vectors([v], n_cols=space.n_cols))
        if candidate.rank() > acc.rank():
            rows.append(v)
            acc = candidate
    return BitMatrix.from_vectors(rows, n_cols=space.n_cols) if rows else BitMatrix.zeros(0, space.n_cols)


def derive_logicals(g_x: BitMatrix, g_z: BitMatrix) -> CssCode:
    """Logical generator matrices with the canonical pairing J_X J_Z^T = 1."""
    if g_x.n_cols != g_z.n_cols:
        raise ValueError("check matrices must share the qubit count")
    if not g_x.matmul(g_z.transpose()).is_zero():
        raise ValueError("G_X G_Z^T must vanish")
    n = g_x.n_cols
    k = n - g_x.rank() - g_z.rank()
    j_x0 = _complete(g_x.rref(), g_z.kernel_basis())
    j_z0 = _complete(g_z.rref(), g_x.kernel_basis())
    if j_x0.n_rows != k or j_z0.n_rows != k:
        raise AssertionError("logical completion does not match k")
    if k == 0:
        code = CssCode(n, 0, g_x, g_z, j_x0, j_z0)
        code.validate()
        return code
    pairing = j_x0.matmul(j_z0.transpose())
    j_x = pairing.inverse().matmul(j_x0)
    code = CssCode(n, k, g_x, g_z, j_x, j_z0)
    code.validate()
    return code


@dataclass
class LogicalLayer:
    """Symmetric logical-layer data: checks, deleting blocks, generators."""

    a_x: BitMatrix
    a_z: BitMatrix
    d_x: BitMatrix
    d_z: BitMatrix
    gen_x: BitMatrix
    gen_z: BitMatrix

    @property
    def m_x_bits(self) -> int:
        return self.a_x.n_cols

    @property
    def m_z_bits(self) -> int:
        return self.a_z.n_cols

    @property
    def m_x_checks(self) -> int:
        return self.a_x.n_rows

    @property
    def m_z_checks(self) -> int:
        return self.a_z.n_rows

    def validate(self) -> None:
        if self.d_x.n_rows != self.m_x_bits or self.d_x.n_cols != self.m_z_checks:
            raise ValueError("d_X shape mismatch")
        if self.d_z.n_rows != self.m_z_bits or self.d_z.n_cols != self.m_x_checks:
            raise ValueError("d_Z shape mismatch")
        lhs = self.a_x.matmul(self.d_x)
        rhs = self.a_z.matmul(self.d_z).transpose()
        if lhs != rhs:
            raise ValueError("a_X d_X must equal (a_Z d_Z)^T")
        for a, gen in ((self.a_x, self.gen_x), (self.a_z, self.gen_z)):
            if not a.matmul(gen.transpose()).is_zero():
                raise ValueError("generators must satisfy the layer checks")
            if gen.rank() != a.n_cols - a.rank():
                raise ValueError("generators must span the layer code")


def repeated_measurement_layer(m: int) -> LogicalLayer:
    """m cycles of stabiliser-generator measurement: repetition-code checks."""
    if m < 1:
        raise ValueError("need at least one cycle")
    rows = [[1 if j in (i, i + 1) else 0 for j in range(m + 1)] for i in range(m)]
    a = BitMatrix.from_rows(rows)
    d_x = BitMatrix.identity(m).stack(BitMatrix.zeros(1, m))
    d_z = BitMatrix.zeros(1, m).stack(BitMatrix.identity(m))
    gen = BitMatrix.from_rows([[1] * (m + 1)])
    layer = LogicalLayer(a, a, d_x, d_z, gen, gen)
    layer.validate()
    return layer


def logical_cnot_layer() -> LogicalLayer:
    """Transversal controlled-NOT on two code blocks."""
    a_x = BitMatrix.from_rows([[1, 0, 1, 0], [1, 1, 0, 1]])
    a_z = BitMatrix.from_rows([[1, 1, 1, 0], [0, 1, 0, 1]])
    d_x = BitMatrix.from_rows([[1, 0], [0, 0], [0, 0], [0, 1]])
    d_z = BitMatrix.from_rows([[0, 0], [0, 1], [1, 0], [0, 0]])
    gen_x = BitMatrix.from_rows([[1, 0, 1, 1], [0, 1, 0, 1]])
    gen_z = BitMatrix.from_rows([[1, 0, 1, 0], [0, 1, 1, 1]])
    layer = LogicalLayer(a_x, a_z, d_x, d_z, gen_x, gen_z)
    layer.validate()
    return layer


@dataclass
class CssAssembly:
    """Physical-circuit matrices for a CSS code under a logical layer."""

    code: CssCode
    layer: LogicalLayer
    a_x: BitMatrix
    a_z: BitMatrix
    d_x: BitMatrix
    d_z: BitMatrix
    a: BitMatrix
    d: BitMatrix
    b: BitMatrix
    l: BitMatrix

    @property
    def x_cols(self) -> int:
        return self.a_x.n_cols

    @property
    def z_cols(self) -> int:
        return self.a_z.n_cols

    def x_operator_block(self, index: int) -> range:
        """Columns of the X-operator snapshot after `index` logical steps."""
        n = self.code.n
        return range(index * n, (index + 1) * n)

    def measurement_columns(self) -> list[int]:
        n = self.code.n
        cols = []
        start = self.layer.m_x_bits * n
        cols.extend(range(start, self.x_cols))
        start = self.x_cols + self.layer.m_z_bits * n
        cols.extend(range(start, self.x_cols + self.z_cols))
        return cols

    def sigma_in(self, row: BitVector) -> PauliOperator:
        return self._boundary(row, 0)

    def sigma_out(self, row: BitVector) -> PauliOperator:
        return self._boundary(row, -1)

    def _boundary(self, row: BitVector, which: int) -> PauliOperator:
        n = self.code.n
        mask = (1 << n) - 1
        xi = 0 if which == 0 else self.layer.m_x_bits - 1
        zi = 0 if which == 0 else self.layer.m_z_bits - 1
        x = (row.bits >> (xi * n)) & mask
        z = (row.bits >> (self.x_cols + zi * n)) & mask
        return PauliOperator(n, x, z)


def assemble_physical(code: CssCode, layer: LogicalLayer) -> CssAssembly:
    """Kronecker assembly of A, D, B, L with all compatibility checks."""
    code.validate()
    layer.validate()
    n, r_x, r_z = code.n, code.r_x, code.r_z
    eye_n = BitMatrix.identity(n)

    a_x = hstack(
        kron(layer.a_x, eye_n),
        kron(BitMatrix.identity(layer.m_x_checks), code.g_x.transpose()),
    ).stack(
        hstack(
            kron(layer.d_x.transpose(), code.g_z),
            BitMatrix.zeros(layer.m_z_checks * r_z, layer.m_x_checks * r_x),
        )
    )
    a_z = hstack(
        kron(layer.a_z, eye_n),
        kron(BitMatrix.identity(layer.m_z_checks), code.g_z.transpose()),
    ).stack(
        hstack(
            kron(layer.d_z.transpose(), code.g_x),
            BitMatrix.zeros(layer.m_x_checks * r_x, layer.m_z_checks * r_z),
        )
    )
    d_x = hstack(
        kron(layer.d_x, eye_n),
        BitMatrix.zeros(layer.m_x_bits * n, layer.m_x_checks * r_x),
    ).stack(
        hstack(
            BitMatrix.zeros(layer.m_x_checks * r_x, layer.m_z_checks * n),
            BitMatrix.identity(layer.m_x_checks * r_x),
        )
    )
    d_z = hstack(
        kron(layer.d_z, eye_n),
        BitMatrix.zeros(layer.m_z_bits * n, layer.m_z_checks * r_z),
    ).stack(
        hstack(
            BitMatrix.zeros(layer.m_z_checks * r_z, layer.m_x_checks * n),
            BitMatrix.identity(layer.m_z_checks * r_z),
        )
    )

    x_cols, z_cols = a_x.n_cols, a_z.n_cols
    x_rows, z_rows = a_x.n_rows, a_z.n_rows
    a = hstack(BitMatrix.zeros(z_rows, x_cols), a_z).stack(
        hstack(a_x, BitMatrix.zeros(x_rows, z_cols))
    )
    d = hstack(d_x, BitMatrix.zeros(x_cols, x_rows)).stack(
        hstack(BitMatrix.zeros(z_cols, z_rows), d_z)
    )

    b_x = hstack(
        kron(BitMatrix.identity(layer.m_x_bits), code.g_x),
        kron(layer.a_x.transpose(), BitMatrix.identity(r_x)),
    )
    b_z = hstack(
        kron(BitMatrix.identity(layer.m_z_bits), code.g_z),
        kron(layer.a_z.transpose(), BitMatrix.identity(r_z)),
    )
    b = hstack(b_x, BitMatrix.zeros(b_x.n_rows, z_cols)).stack(
        hstack(BitMatrix.zeros(b_z.n_rows, x_cols), b_z)
    )
    l_x = hstack(
        kron(layer.gen_x, code.j_x),
        BitMatrix.zeros(layer.gen_x.n_rows * code.k, layer.m_x_checks * r_x),
    )
    l_z = hstack(
        kron(layer.gen_z, code.j_z),
        BitMatrix.zeros(layer.gen_z.n_rows * code.k, layer.m_z_checks * r_z),
    )
    l = hstack(l_x, BitMatrix.zeros(l_x.n_rows, z_cols)).stack(
        hstack(BitMatrix.zeros(l_z.n_rows, x_cols), l_z)
    )

    assembly = CssAssembly(code, layer, a_x, a_z, d_x, d_z, a, d, b, l)
    _validate_assembly(assembly)
    return assembly


def _validate_assembly(asm: CssAssembly) -> None:
    if not asm.a.matmul(asm.b.transpose()).is_zero():
        raise ValueError("A B^T must vanish")
    if not asm.a.matmul(asm.l.transpose()).is_zero():
        raise ValueError("A L^T must vanish")
    if asm.a_x.matmul(asm.d_x) != asm.a_z.matmul(asm.d_z).transpose():
        raise ValueError("A_X D_X must equal (A_Z D_Z)^T")
    combined = asm.b.stack(asm.l)
    if combined.rank() != asm.b.n_rows + asm.l.n_rows:
        raise ValueError("B and L rows must be independent")
    rows = list(asm.b.row_vectors())
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            for extract in (asm.sigma_in, asm.sigma_out):
                if not extract(rows[i]).commutes_with(extract(rows[j])):
                    raise ValueError("B boundary operators must commute")
