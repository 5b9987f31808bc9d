"""Tanner graphs of stabiliser circuits.

Builds the plain bipartite graph of a circuit from per-operation gadgets,
splits bits, and restores bit-check symmetry with an explicit witness
(deleting matrix plus dual pairing).

Bit vertices carry (kind, qubit, time) labels; x and z bits of layer t
represent the binary components of the Pauli operator at time t. Check rows
encode the operation constraints: for a gate row i of (M | 1), the output
bit i equals the masked sum of input bits.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .circuit import Circuit, OpKind, Operation, PAULI_KINDS
from .gf2 import BitMatrix, BitVector


@dataclass(frozen=True)
class VertexLabel:
    kind: str  # 'x', 'z' wire bits; 's' split-auxiliary bits
    q: int
    t: int
    serial: int = 0
    is_measurement: bool = False
    is_initialisation: bool = False

    @property
    def name(self) -> str:
        if self.kind == "s":
            return f"s{self.serial}"
        return f"{self.kind}[{self.q},{self.t}]"

    def key(self) -> tuple:
        return (self.kind, self.q, self.t, self.serial)


@dataclass(frozen=True)
class SideInfo:
    """Terminal bookkeeping for one qubit side (in/out) of a gadget."""

    q: int
    side: str  # 'in' | 'out'
    short_kind: str  # 'x' | 'z'
    short_bit: int
    long_bit: int | None
    pair_check: int


@dataclass
class GadgetRec:
    layer: int
    kind: OpKind
    qubits: tuple[int, ...]
    checks: list[int]
    sides: list[SideInfo]


class TannerGraph:
    def __init__(
        self,
        bits: list[VertexLabel],
        checks: list[tuple[int, ...]],
        n_qubits: int | None = None,
        depth: int | None = None,
        gadgets: list[GadgetRec] | None = None,
        removed: list[VertexLabel] | None = None,
    ):
        self.bits = bits
        self.checks = [tuple(sorted(c)) for c in checks]
        self.n_qubits = n_qubits
        self.depth = depth
        self.gadgets = gadgets
        self.removed = removed or []
        self._matrix: BitMatrix | None = None
        self._index: dict[tuple, int] | None = None

    @property
    def n_bits(self) -> int:
        return len(self.bits)

    @property
    def n_checks(self) -> int:
        return len(self.checks)

    def check_matrix(self) -> BitMatrix:
        if self._matrix is None:
            rows = []
            for c in self.checks:
                bits = 0
                for j in c:
                    bits |= 1 << j
                rows.append(bits)
            self._matrix = BitMatrix(len(rows), len(self.bits), rows)
        return self._matrix

    def bit_index(self, kind: str, q: int, t: int, serial: int = 0) -> int | None:
        if self._index is None:
            self._index = {lab.key(): i for i, lab in enumerate(self.bits)}
        return self._index.get((kind, q, t, serial))

    def bit_by_name(self, name: str) -> int:
        for i, lab in enumerate(self.bits):
            if lab.name == name:
                return i
        raise KeyError(name)

    def bit_degree(self, i: int) -> int:
        return sum(1 for c in self.checks if i in c)

    def bit_neighbors(self, i: int) -> list[int]:
        return [k for k, c in enumerate(self.checks) if i in c]

    def measurement_bits(self) -> list[int]:
        return [i for i, lab in enumerate(self.bits) if lab.is_measurement]

    def initialisation_bits(self) -> list[int]:
        return [i for i, lab in enumerate(self.bits) if lab.is_initialisation]

    def layer_bits(self, t: int) -> list[int]:
        return [
            i
            for i, lab in enumerate(self.bits)
            if lab.kind in ("x", "z") and lab.t == t
        ]

    def max_degree(self) -> int:
        deg: dict[int, int] = {}
        best = 0
        for c in self.checks:
            best = max(best, len(c))
            for j in c:
                deg[j] = deg.get(j, 0) + 1
        if deg:
            best = max(best, max(deg.values()))
        return best


@dataclass
class CodeMaps:
    """Linear maps between codeword spaces and error spaces of two graphs.

    ``codeword`` sends ker A into ker A'; ``error`` embeds errors so that
    c . e = codeword(c) . error(e) and weights are preserved.
    """

    codeword: BitMatrix  # |V_B'| x |V_B|
    error: BitMatrix  # |V_B'| x |V_B|

    def map_codeword(self, c: BitVector) -> BitVector:
        return self.codeword.mul_vec(c)

    def map_error(self, e: BitVector) -> BitVector:
        return self.error.mul_vec(e)

    def map_matrix(self, m: BitMatrix) -> BitMatrix:
        return BitMatrix.from_vectors(
            [self.map_codeword(v) for v in m.row_vectors()],
            n_cols=self.codeword.n_rows,
        )

    def compose(self, later: "CodeMaps") -> "CodeMaps":
        return CodeMaps(
            codeword=later.codeword.matmul(self.codeword),
            error=later.error.matmul(self.error),
        )

    @classmethod
    def identity(cls, n: int) -> "CodeMaps":
        return cls(BitMatrix.identity(n), BitMatrix.identity(n))


@dataclass
class SymmetryWitness:
    """Dual pairing check -> bit plus the long-terminal set."""

    dual: dict[int, int]
    long_terminals: frozenset[int]

    def deleting_matrix(self, g: TannerGraph) -> BitMatrix:
        rows = [0] * g.n_bits
        for check, bit in self.dual.items():
            rows[bit] |= 1 << check
        return BitMatrix(g.n_bits, g.n_checks, rows)

    def dual_bit_of(self, check: int) -> int:
        return self.dual[check]

    def check_of_bit(self) -> dict[int, int]:
        return {b: c for c, b in self.dual.items()}


# ---------------------------------------------------------------------------
# Gadget tables

_ROW_X, _ROW_Z = "x", "z"


def _gate_rows(op: Operation, t: int):
    """Check rows of a one-layer operation: (edges, row_owner) pairs.

    ``edges`` lists (kind, q, time) references; ``row_owner`` is the (kind, q)
    output coordinate the row constrains, used by the pairing tables.
    """
    tin, tout = t - 1, t
    k = op.kind
    if k is OpKind.CNOT:
        c, g = op.qubits
        return [
            ([("x", c, tin), ("x", c, tout)], ("x", c)),
            ([("x", c, tin), ("x", g, tin), ("x", g, tout)], ("x", g)),
            ([("z", c, tin), ("z", g, tin), ("z", c, tout)], ("z", c)),
            ([("z", g, tin), ("z", g, tout)], ("z", g)),
        ]
    (q,) = op.qubits
    if k is OpKind.H:
        return [
            ([("z", q, tin), ("x", q, tout)], ("x", q)),
            ([("x", q, tin), ("z", q, tout)], ("z", q)),
        ]
    if k is OpKind.S:
        return [
            ([("x", q, tin), ("x", q, tout)], ("x", q)),
            ([("x", q, tin), ("z", q, tin), ("z", q, tout)], ("z", q)),
        ]
    if k is OpKind.I or k in PAULI_KINDS:
        return [
            ([("x", q, tin), ("x", q, tout)], ("x", q)),
            ([("z", q, tin), ("z", q, tout)], ("z", q)),
        ]
    if k is OpKind.INIT_Z:
        return [([("x", q, tout)], ("x", q))]
    if k is OpKind.INIT_X:
        return [([("z", q, tout)], ("z", q))]
    if k is OpKind.MEAS_Z:
        return [([("x", q, tin)], ("x", q))]
    if k is OpKind.MEAS_X:
        return [([("z", q, tin)], ("z", q))]
    raise ValueError(f"no gadget for {k}")


def _other(kind: str) -> str:
    return "z" if kind == "x" else "x"


def _side_table(op_kind: OpKind, q: int, qubits: tuple[int, ...], orient: str | None):
    """Short-terminal kinds and pairing row owners per side of a gadget.

    Returns a list of (side, q, short_kind, pair_row_owner). The pairing rows
    were chosen so that the deleted check matrix A.D is symmetric for every
    composition of gadgets, including across bit splits at asymmetric merges.
    """
    k = op_kind
    if k is OpKind.CNOT:
        c, g = qubits
        if q == c:
            return [("in", "x", ("z", c)), ("out", "z", ("x", c))]
        return [("in", "z", ("x", g)), ("out", "x", ("z", g))]
    if k is OpKind.H:
        return [("in", "z", ("z", q)), ("out", "z", ("x", q))]
    if k is OpKind.S:
        return [("in", "x", ("z", q)), ("out", "z", ("x", q))]
    if k is OpKind.I or k in PAULI_KINDS:
        if orient == "x":  # x-in short
            return [("in", "x", ("z", q)), ("out", "z", ("x", q))]
        return [("in", "z", ("x", q)), ("out", "x", ("z", q))]
    if k is OpKind.INIT_Z:
        return [("out", "z", ("x", q))]
    if k is OpKind.INIT_X:
        return [("out", "x", ("z", q))]
    if k is OpKind.MEAS_Z:
        return [("in", "z", ("x", q))]
    if k is OpKind.MEAS_X:
        return [("in", "x", ("z", q))]
    raise ValueError(f"no side table for {k}")


_IN_SHORT = {
    OpKind.H: "z",
    OpKind.S: "x",
    OpKind.MEAS_Z: "z",
    OpKind.MEAS_X: "x",
}


def _in_short_kind(op: Operation, q: int) -> str:
    if op.kind is OpKind.CNOT:
        return "x" if q == op.qubits[0] else "z"
    return _IN_SHORT[op.kind]


# ---------------------------------------------------------------------------
# Plain graph construction


def build_plain(circuit: Circuit) -> TannerGraph:
    """Plain Tanner graph: one gadget per operation, isolated bits removed.

    Wire segments that carry no state (before a first initialisation, between
    a measurement and the following initialisation, after a final
    measurement) receive no gadgets at all; identity and Pauli operations on
    such segments are sign bookkeeping only.
    """
    circuit.check_valid()
    n, T = circuit.n_qubits, circuit.depth

    spans = {q: circuit.live_spans(q) for q in range(1, n + 1)}
    live_times: dict[int, set[int]] = {q: set() for q in range(1, n + 1)}
    interior: dict[int, set[int]] = {q: set() for q in range(1, n + 1)}
    gadget_layers: dict[int, set[int]] = {q: set() for q in range(1, n + 1)}
    for q, sp in spans.items():
        for t0, t1, opened, closed in sp:
            live_times[q].update(range(t0, t1 + 1))
            interior[q].update(range(t0 + 1, t1 + 1))
            gadget_layers[q].update(range(t0 + 1, t1 + 1))
            if opened:
                gadget_layers[q].add(t0)
            if closed:
                gadget_layers[q].add(t1 + 1)

    # wire bits, ordered by (t, kind, q): per layer x1..xn then z1..zn
    bits: list[VertexLabel] = []
    index: dict[tuple, int] = {}
    for t in range(0, T + 1):
        for kind in ("x", "z"):
            for q in range(1, n + 1):
                if t in live_times[q]:
                    lab = VertexLabel(kind, q, t)
                    index[(kind, q, t)] = len(bits)
                    bits.append(lab)

    # identity orientation per (q, layer): which kind is the short input
    orient: dict[tuple[int, int], str] = {}
    for q in range(1, n + 1):
        for t0, t1, opened, closed in spans[q]:
            pending: list[int] = []
            prev_out_short: str | None = None
            if opened:
                op = circuit.op_on(q, t0 - 1)
                prev_out_short = "z" if op.kind is OpKind.INIT_Z else "x"
            for layer in range(t0 + 1, t1 + 1):
                op = circuit.op_on(q, layer - 1)
                trivial = op is None or op.kind is OpKind.I or op.kind in PAULI_KINDS
                if trivial:
                    pending.append(layer)
                    continue
                if pending:
                    if prev_out_short is not None:
                        kind = _other(prev_out_short)
                    else:
                        kind = _in_short_kind(op, q)
                    for lay in pending:
                        orient[(q, lay)] = kind
                    pending = []
                for side, short_kind, _ in _side_table(op.kind, q, op.qubits, None):
                    if side == "out":
                        prev_out_short = short_kind
            if pending:
                if prev_out_short is not None:
                    kind = _other(prev_out_short)
                elif closed:
                    closer = circuit.op_on(q, t1)
                    kind = _in_short_kind(closer, q)
                else:
                    kind = "x"
                for lay in pending:
                    orient[(q, lay)] = kind

    checks: list[tuple[int, ...]] = []
    gadgets: list[GadgetRec] = []
    meas_marks: set[int] = set()
    init_marks: set[int] = set()

    for t in range(1, T + 1):
        ops: list[Operation] = []
        covered: set[int] = set()
        for op in circuit.layers[t - 1]:
            if all(t in gadget_layers[q] for q in op.qubits):
                ops.append(op)
            covered.update(op.qubits)
        for q in range(1, n + 1):
            if q not in covered and t in interior[q]:
                ops.append(Operation(OpKind.I, (q,)))
        ops.sort(key=lambda o: (min(o.qubits), o.kind.value))
        for op in ops:
            row_specs = _gate_rows(op, t)
            check_ids: list[int] = []
            owner_to_check: dict[tuple, int] = {}
            for edges, owner in row_specs:
                members = tuple(sorted(index[e] for e in edges if e in index))
                cid = len(checks)
                checks.append(members)
                check_ids.append(cid)
                owner_to_check[owner] = cid
            if op.kind is OpKind.MEAS_Z:
                meas_marks.add(index[("z", op.qubits[0], t - 1)])
            elif op.kind is OpKind.MEAS_X:
                meas_marks.add(index[("x", op.qubits[0], t - 1)])
            elif op.kind is OpKind.INIT_Z:
                init_marks.add(index[("z", op.qubits[0], t)])
            elif op.kind is OpKind.INIT_X:
                init_marks.add(index[("x", op.qubits[0], t)])
            sides: list[SideInfo] = []
            for q in op.qubits:
                ori = orient.get((q, t))
                for side, short_kind, owner in _side_table(op.kind, q, op.qubits, ori):
                    tt = t - 1 if side == "in" else t
                    short_bit = index[(short_kind, q, tt)]
                    long_bit = index.get((_other(short_kind), q, tt))
                    sides.append(
                        SideInfo(q, side, short_kind, short_bit, long_bit, owner_to_check[owner])
                    )
            gadgets.append(GadgetRec(t, op.kind, op.qubits, check_ids, sides))

    # apply measurement / initialisation flags
    for i in sorted(meas_marks):
        bits[i] = replace(bits[i], is_measurement=True)
    for i in sorted(init_marks):
        bits[i] = replace(bits[i], is_initialisation=True)

    # remove isolated bits, keeping flagged measurement/initialisation bits
    degree = [0] * len(bits)
    for c in checks:
        for j in c:
            degree[j] += 1
    keep = [
        i
        for i in range(len(bits))
        if degree[i] > 0 or bits[i].is_measurement or bits[i].is_initialisation
    ]
    remap = {old: new for new, old in enumerate(keep)}
    removed = [bits[i] for i in range(len(bits)) if i not in remap]
    new_bits = [bits[i] for i in keep]
    new_checks = [tuple(sorted(remap[j] for j in c)) for c in checks]
    for rec in gadgets:
        rec.sides = [
            SideInfo(
                s.q,
                s.side,
                s.short_kind,
                remap[s.short_bit],
                remap.get(s.long_bit) if s.long_bit is not None else None,
                s.pair_check,
            )
            for s in rec.sides
        ]
    return TannerGraph(new_bits, new_checks, n, T, gadgets, removed)


# ---------------------------------------------------------------------------
# Bit splitting


def bit_split(
    g: TannerGraph,
    v: int,
    partition: tuple[list[int], list[int]],
) -> tuple[TannerGraph, CodeMaps]:
    """Split bit v: checks in N2 move to a fresh bit tied back by a new check.

    Returns the new graph and the codeword/error maps into it. The codeword
    map duplicates the value of v onto the new bit; the error map leaves the
    new bit clean, which preserves weights.
    """
    n1, n2 = partition
    neigh = set(g.bit_neighbors(v))
    if set(n1) | set(n2) != neigh or set(n1) & set(n2):
        raise ValueError("partition must split the neighbourhood of v")
    serials = [lab.serial for lab in g.bits if lab.kind == "s"]
    serial = max(serials, default=-1) + 1
    new_bit = VertexLabel("s", 0, -1, serial)
    bits = g.bits + [new_bit]
    v2 = len(g.bits)
    checks = []
    for idx, c in enumerate(g.checks):
        if idx in n2 and v in c:
            c = tuple(sorted(j for j in c if j != v)) + (v2,)
        checks.append(tuple(sorted(c)))
    checks.append((v, v2))
    fwd = [1 << i for i in range(g.n_bits)] + [1 << v]
    err = [1 << i for i in range(g.n_bits)] + [0]
    maps = CodeMaps(
        BitMatrix(g.n_bits + 1, g.n_bits, fwd),
        BitMatrix(g.n_bits + 1, g.n_bits, err),
    )
    out = TannerGraph(bits, checks, g.n_qubits, g.depth, None, list(g.removed))
    return out, maps


# ---------------------------------------------------------------------------
# Symmetrisation


def symmetrize(
    g: TannerGraph, circuit: Circuit
) -> tuple[TannerGraph, SymmetryWitness, CodeMaps]:
    """Restore bit-check symmetry of a plain circuit graph via bit splitting.

    Splits are applied exactly at asymmetric wire junctions, where an output
    terminal pair and the next input terminal pair are short on the same
    component. The returned maps compose the individual split maps.
    """
    if g.gadgets is None:
        raise ValueError("symmetrize needs the plain graph of the circuit")

    claims: dict[int, list[SideInfo]] = {}
    for rec in g.gadgets:
        for s in rec.sides:
            claims.setdefault(s.short_bit, []).append(s)
            if s.long_bit is not None:
                claims.setdefault(s.long_bit, []).append(s)

    dual: dict[int, int] = {}
    long_bits: set[int] = set()
    splits: list[tuple[int, SideInfo, SideInfo]] = []

    for i in range(g.n_bits):
        sides = claims.get(i, [])
        shorts = [s for s in sides if s.short_bit == i]
        longs = [s for s in sides if s.long_bit == i]
        if not sides:
            continue  # flagged isolated bit with no gadget side (not reachable)
        if len(shorts) == 1 and len(longs) <= 1:
            dual[shorts[0].pair_check] = i
        elif len(shorts) == 0 and len(longs) == 1:
            long_bits.add(i)
        elif len(shorts) == 2:
            early, late = shorts
            if not (early.side == "out" and late.side == "in"):
                early, late = late, early
            splits.append((i, early, late))
        elif len(longs) == 2:
            pass  # handled together with its short-short partner below
        else:
            raise AssertionError(f"unexpected terminal claims on bit {i}")

    current = g
    maps = CodeMaps.identity(g.n_bits)
    for v, early, late in sorted(splits, key=lambda s: s[0]):
        # double-long partner bit on the same wire junction
        partner_kind = _other(current.bits[v].kind)
        lab = current.bits[v]
        partner = current.bit_index(partner_kind, lab.q, lab.t)
        neigh = current.bit_neighbors(v)
        early_rec = [c for c in neigh if c in _gadget_checks(g, early)]
        late_rec = [c for c in neigh if c in _gadget_checks(g, late)]
        if set(early_rec) | set(late_rec) != set(neigh):
            raise AssertionError("junction checks do not cover the split bit")
        new_graph, split_maps = bit_split(current, v, (early_rec, late_rec))
        v2 = new_graph.n_bits - 1
        new_check = new_graph.n_checks - 1
        dual[early.pair_check] = v
        dual[late.pair_check] = v2
        if partner is not None:
            dual[new_check] = partner
        maps = maps.compose(split_maps)
        current = new_graph

    witness = SymmetryWitness(dual, frozenset(long_bits))
    out = TannerGraph(
        current.bits,
        current.checks,
        g.n_qubits,
        g.depth,
        None,
        list(g.removed),
    )
    return out, witness, maps


def _gadget_checks(g: TannerGraph, side: SideInfo) -> set[int]:
    for rec in g.gadgets or []:
        if side in rec.sides:
            return set(rec.checks)
    raise AssertionError("side does not belong to any gadget")


def verify_symmetry(g: TannerGraph, w: SymmetryWitness) -> list[str]:
    """Check the bit-check symmetry conditions; empty list means ok."""
    problems: list[str] = []
    a = g.check_matrix()
    bits_in_dual = set(w.dual.values())
    if len(w.dual) != g.n_checks:
        problems.append("dual pairing must cover every check")
    if len(bits_in_dual) != len(w.dual):
        problems.append("dual pairing must be injective")
    if bits_in_dual & set(w.long_terminals):
        problems.append("a long terminal cannot be a dual bit")
    expected_long = set(range(g.n_bits)) - bits_in_dual
    if set(w.long_terminals) != expected_long:
        problems.append("long terminals must be exactly the unpaired bits")
    if problems:
        return problems

    d = w.deleting_matrix(g)
    ad = a.matmul(d)
    adt = ad.transpose()
    if ad != adt:
        for i in range(ad.n_rows):
            for j in range(ad.n_cols):
                if ad.get(i, j) != adt.get(i, j):
                    problems.append(
                        f"A.D not symmetric at checks ({i},{j}): "
                        f"duals {g.bits[w.dual[j]].name}, {g.bits[w.dual[i]].name}"
                    )
                    break
            if problems:
                break
    for v in sorted(w.long_terminals):
        deg = g.bit_degree(v)
        if deg != 1:
            problems.append(f"long terminal {g.bits[v].name} has degree {deg}")
    seen: dict[int, int] = {}
    for v in sorted(w.long_terminals):
        neigh = g.bit_neighbors(v)
        if len(neigh) == 1:
            c = neigh[0]
            if c in seen:
                problems.append(
                    f"long terminals {g.bits[seen[c]].name} and {g.bits[v].name} share a check"
                )
            seen[c] = v
    return problems


# ---------------------------------------------------------------------------
# Export formats


def export_dot(g: TannerGraph) -> str:
    lines = ["graph tanner {", "  rankdir=LR;"]
    if g.depth is not None:
        for t in range(g.depth + 1):
            members = [g.bits[i].name for i in g.layer_bits(t)]
            if members:
                row = " ".join(f'"{m}";' for m in members)
                lines.append(f"  {{ rank=same; {row} }}")
    for lab in g.bits:
        shape = "ellipse"
        extra = ""
        if lab.is_measurement:
            extra = ", peripheries=2"
        lines.append(f'  "{lab.name}" [shape={shape}{extra}];')
    for k in range(g.n_checks):
        lines.append(f'  "c{k}" [shape=box];')
    for k, c in enumerate(g.checks):
        for j in c:
            lines.append(f'  "{g.bits[j].name}" -- "c{k}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_labels(g: TannerGraph) -> str:
    """Column sidecar: `col kind q t flags` with `-` for empty flags."""
    lines = []
    for i, lab in enumerate(g.bits):
        flags = ""
        if lab.is_measurement:
            flags += "M"
        if lab.is_initialisation:
            flags += "I"
        lines.append(f"{i} {lab.kind} {lab.q} {lab.t} {flags or '-'}")
    return "\n".join(lines) + "\n"


def read_labels(text: str) -> list[VertexLabel]:
    labels = []
    serial = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col, kind, q, t, flags = line.split()
        lab = VertexLabel(
            kind,
            int(q),
            int(t),
            serial if kind == "s" else 0,
            is_measurement="M" in flags,
            is_initialisation="I" in flags,
        )
        if kind == "s":
            serial += 1
        if int(col) != len(labels):
            raise ValueError("label columns out of order")
        labels.append(lab)
    return labels


def write_witness(g: TannerGraph, w: SymmetryWitness) -> str:
    lines = [f"dual {c} {w.dual[c]}" for c in sorted(w.dual)]
    lines.extend(f"long {v}" for v in sorted(w.long_terminals))
    return "\n".join(lines) + "\n"


def read_witness(text: str) -> SymmetryWitness:
    dual: dict[int, int] = {}
    long_bits: set[int] = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "dual":
            dual[int(parts[1])] = int(parts[2])
        elif parts[0] == "long":
            long_bits.add(int(parts[1]))
        else:
            raise ValueError(f"bad witness line {line!r}")
    return SymmetryWitness(dual, frozenset(long_bits))


def graph_from_matrix(
    a: BitMatrix, labels: list[VertexLabel] | None = None
) -> TannerGraph:
    if labels is None:
        labels = [VertexLabel("s", 0, -1, i) for i in range(a.n_cols)]
    if len(labels) != a.n_cols:
        raise ValueError("label count must match columns")
    checks = [tuple(v.support()) for v in a.row_vectors()]
    return TannerGraph(labels, checks)
