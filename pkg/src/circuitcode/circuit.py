"""Circuit intermediate representation, text format, validation, extension.

A circuit is a list of layers; each layer is a set of primitive operations.
Qubits not mentioned in a layer implicitly idle. Indices are 1-based in the
text format and the public API.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field


class OpKind(enum.Enum):
    INIT_Z = "rz"
    INIT_X = "rx"
    MEAS_Z = "mz"
    MEAS_X = "mx"
    CNOT = "cnot"
    H = "h"
    S = "s"
    I = "i"
    PAULI_X = "x"
    PAULI_Y = "y"
    PAULI_Z = "z"
    SWAP = "swap"  # internal to extended circuits, not part of the text format


GATE_KINDS = {OpKind.CNOT, OpKind.H, OpKind.S, OpKind.SWAP}
PAULI_KINDS = {OpKind.PAULI_X, OpKind.PAULI_Y, OpKind.PAULI_Z}
INIT_KINDS = {OpKind.INIT_Z, OpKind.INIT_X}
MEAS_KINDS = {OpKind.MEAS_Z, OpKind.MEAS_X}
TWO_QUBIT_KINDS = {OpKind.CNOT, OpKind.SWAP}


@dataclass(frozen=True)
class Operation:
    kind: OpKind
    qubits: tuple[int, ...]

    def __post_init__(self):
        want = 2 if self.kind in TWO_QUBIT_KINDS else 1
        if len(self.qubits) != want:
            raise ValueError(f"{self.kind.value} takes {want} qubit(s)")
        if self.kind in TWO_QUBIT_KINDS and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.kind.value} needs two distinct qubits")

    def text(self) -> str:
        return " ".join([self.kind.value] + [str(q) for q in self.qubits])


class CircuitError(ValueError):
    """Raised on malformed circuit text or an invalid circuit."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass
class Circuit:
    n_qubits: int
    layers: list[list[Operation]] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.layers)

    def op_on(self, qubit: int, layer_index: int) -> Operation | None:
        """The explicit operation touching `qubit` in layer `layer_index` (0-based)."""
        for op in self.layers[layer_index]:
            if qubit in op.qubits:
                return op
        return None

    def validate(self) -> list[str]:
        """All rule violations, empty when the circuit is well formed."""
        problems = []
        for t, layer in enumerate(self.layers, start=1):
            seen: set[int] = set()
            for op in layer:
                if op.kind is OpKind.SWAP:
                    problems.append(f"layer {t}: swap is not a primitive operation")
                for q in op.qubits:
                    if not 1 <= q <= self.n_qubits:
                        problems.append(f"layer {t}: qubit {q} out of range 1..{self.n_qubits}")
                    if q in seen:
                        problems.append(f"layer {t}: qubit {q} used twice")
                    seen.add(q)
        # Wire discipline: gates may not follow a measurement before the next
        # initialisation, and an initialisation may not follow gates unless a
        # measurement closed the wire first. Identity and Pauli operations are
        # transparent for both rules.
        for q in range(1, self.n_qubits + 1):
            state = "open"  # open wire from t=0
            for t, layer in enumerate(self.layers, start=1):
                op = None
                for cand in layer:
                    if q in cand.qubits:
                        op = cand
                        break
                if op is None or op.kind is OpKind.I or op.kind in PAULI_KINDS:
                    continue
                if op.kind in MEAS_KINDS:
                    if state == "dead":
                        problems.append(
                            f"layer {t}: qubit {q} measured while not carrying a state"
                        )
                    state = "dead"
                elif op.kind in INIT_KINDS:
                    if state == "live":
                        problems.append(
                            f"layer {t}: qubit {q} reinitialised after gates without a measurement"
                        )
                    state = "live"
                else:  # gate
                    if state == "dead":
                        problems.append(
                            f"layer {t}: gate on qubit {q} after measurement without reinitialisation"
                        )
                    elif state == "open":
                        state = "live"
        return problems

    def check_valid(self) -> "Circuit":
        problems = self.validate()
        if problems:
            raise CircuitError("; ".join(problems))
        return self

    def live_spans(self, qubit: int) -> list[tuple[int, int, bool, bool]]:
        """Maximal live wire segments of a qubit as (t_start, t_end, opened, closed).

        Times are bit-layer indices 0..T. ``opened`` means the segment starts
        at an initialisation; ``closed`` means it ends at a measurement. Bits
        outside live segments never receive graph gadgets: a wire between a
        measurement and the next initialisation carries no state.
        """
        spans = []
        start = 0
        opened = False
        alive = True
        for t in range(1, self.depth + 1):
            op = self.op_on(qubit, t - 1)
            if op is None or op.kind is OpKind.I or op.kind in PAULI_KINDS:
                continue
            if op.kind in INIT_KINDS:
                # validate() guarantees the wire is unused here, so any open
                # segment before the init never carried a state: drop it.
                start = t
                opened = True
                alive = True
            elif op.kind in MEAS_KINDS:
                spans.append((start, t - 1, opened, True))
                alive = False
            else:
                if not alive:
                    raise CircuitError(f"gate on dead wire of qubit {qubit}")
        if alive:
            spans.append((start, self.depth, opened, False))
        return spans

    def canonical(self) -> "Circuit":
        layers = [
            sorted(layer, key=lambda op: (min(op.qubits), op.kind.value, op.qubits))
            for layer in self.layers
        ]
        return Circuit(self.n_qubits, layers)


# ---------------------------------------------------------------------------
# Text format

_TEXT_KINDS = {k.value: k for k in OpKind if k is not OpKind.SWAP}


def parse_circuit(text: str) -> Circuit:
    """Parse the line-oriented circuit format.

    ``qubits <n>`` header, ``tick`` separates layers, ``#`` starts a comment.
    """
    n_qubits: int | None = None
    layers: list[list[Operation]] = []
    current: list[Operation] = []
    saw_op_since_tick = False
    saw_tick = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        head = fields[0].lower()
        if head == "qubits":
            if n_qubits is not None:
                raise CircuitError("duplicate qubits header", lineno)
            if len(fields) != 2 or not fields[1].isdigit():
                raise CircuitError("usage: qubits <n>", lineno)
            n_qubits = int(fields[1])
            continue
        if n_qubits is None:
            raise CircuitError("qubits header must come first", lineno)
        if head == "tick":
            layers.append(current)
            current = []
            saw_tick = True
            saw_op_since_tick = False
            continue
        kind = _TEXT_KINDS.get(head)
        if kind is None:
            raise CircuitError(f"unknown operation {head!r}", lineno)
        want = 2 if kind in TWO_QUBIT_KINDS else 1
        if len(fields) != 1 + want:
            raise CircuitError(f"{head} takes {want} qubit argument(s)", lineno)
        try:
            qubits = tuple(int(f) for f in fields[1:])
        except ValueError:
            raise CircuitError("qubit arguments must be integers", lineno) from None
        for q in qubits:
            if not 1 <= q <= n_qubits:
                raise CircuitError(f"qubit {q} out of range 1..{n_qubits}", lineno)
        try:
            op = Operation(kind, qubits)
        except ValueError as exc:
            raise CircuitError(str(exc), lineno) from None
        for prev in current:
            clash = set(prev.qubits) & set(op.qubits)
            if clash:
                raise CircuitError(f"qubit {clash.pop()} used twice in one layer", lineno)
        current.append(op)
        saw_op_since_tick = True
    if n_qubits is None:
        raise CircuitError("missing qubits header")
    if saw_op_since_tick or (current and saw_tick):
        layers.append(current)
    circuit = Circuit(n_qubits, layers).canonical()
    problems = circuit.validate()
    if problems:
        raise CircuitError(problems[0])
    return circuit


def serialize(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.n_qubits}"]
    canon = circuit.canonical()
    for t, layer in enumerate(canon.layers):
        if t:
            lines.append("tick")
        for op in layer:
            if op.kind is OpKind.SWAP:
                raise CircuitError("swap has no text form; expand it first")
            lines.append(op.text())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Extended circuit


@dataclass
class ExtendedCircuit:
    """Equivalent circuit with all initialisations first and measurements last.

    Middle layers contain Clifford gates only; each measurement followed by a
    reinitialisation is rerouted through a fresh ancilla and a swap.
    """

    base: Circuit
    n_original: int
    n_pairs: int
    # bit ids are (kind, qubit, time) with kind "z" or "x" on the original circuit
    v_init_start: list[tuple[int, int]]  # (q, t) output z-bit of first-op inits
    v_init_paired: list[tuple[int, int]]
    v_meas_last: list[tuple[int, int]]  # (q, t) input z-bit of final measurements
    v_meas_paired: list[tuple[int, int]]
    pair_ancilla: dict[int, int]  # pair label -> ancilla qubit (1-based)
    pair_meas: dict[int, tuple[int, int]]
    pair_init: dict[int, tuple[int, int]]
    q_init: set[int]
    q_meas: set[int]
    init_basis: dict[int, OpKind]  # extended qubit -> INIT_Z / INIT_X
    meas_basis: dict[int, OpKind]

    @property
    def n_qubits(self) -> int:
        return self.base.n_qubits

    @property
    def middle_layers(self) -> list[list[Operation]]:
        return self.base.layers[1:-1]


def extend(circuit: Circuit) -> ExtendedCircuit:
    """Move initialisations to the first layer and measurements to the last.

    Each measurement/initialisation pair on a reused qubit becomes an ancilla
    initialised up front, swapped in at the measurement layer and measured at
    the end. Pauli and identity operations on dead wire segments are dropped;
    they act on a state that is discarded before it can matter.
    """
    circuit.check_valid()
    n = circuit.n_qubits
    T = circuit.depth

    v_init_start: list[tuple[int, int]] = []
    v_init_paired: list[tuple[int, int]] = []
    v_meas_last: list[tuple[int, int]] = []
    v_meas_paired: list[tuple[int, int]] = []
    pair_meas: dict[int, tuple[int, int]] = {}
    pair_init: dict[int, tuple[int, int]] = {}
    pair_ancilla: dict[int, int] = {}
    init_basis: dict[int, OpKind] = {}
    meas_basis: dict[int, OpKind] = {}
    # swap placement: pair label -> (q, measurement layer)
    swaps: list[tuple[int, int, int]] = []

    n_pairs = 0
    for q in range(1, n + 1):
        pending_meas: tuple[int, int, OpKind] | None = None  # (q, t_in, kind)
        for t in range(1, T + 1):
            op = circuit.op_on(q, t - 1)
            if op is None or op.kind is OpKind.I or op.kind in PAULI_KINDS:
                continue
            if op.kind in MEAS_KINDS:
                pending_meas = (q, t - 1, op.kind)
            elif op.kind in INIT_KINDS:
                if pending_meas is None:
                    v_init_start.append((q, t))
                    init_basis[q] = op.kind
                else:
                    n_pairs += 1
                    label = n_pairs
                    mq, mt, mkind = pending_meas
                    pair_meas[label] = (mq, mt)
                    pair_init[label] = (q, t)
                    v_meas_paired.append((mq, mt))
                    v_init_paired.append((q, t))
                    anc = n + label
                    pair_ancilla[label] = anc
                    init_basis[anc] = op.kind
                    meas_basis[anc] = mkind
                    swaps.append((label, q, mt + 1))
                    pending_meas = None
        if pending_meas is not None:
            mq, mt, mkind = pending_meas
            v_meas_last.append((mq, mt))
            meas_basis[mq] = mkind

    n_ext = n + n_pairs
    q_init = set(init_basis)
    q_meas = set(meas_basis)

    first_layer = [Operation(kind, (q,)) for q, kind in sorted(init_basis.items())]
    last_layer = [
        Operation(OpKind.MEAS_Z if kind is OpKind.MEAS_Z else OpKind.MEAS_X, (q,))
        for q, kind in sorted(meas_basis.items())
    ]

    swap_by_layer: dict[int, list[Operation]] = {}
    for label, q, layer_t in swaps:
        swap_by_layer.setdefault(layer_t, []).append(
            Operation(OpKind.SWAP, (q, n + label))
        )

    dead: dict[int, set[int]] = {q: set() for q in range(1, n + 1)}
    for q in range(1, n + 1):
        live = set()
        for t0, t1, _, _ in circuit.live_spans(q):
            live.update(range(t0 + 1, t1 + 1))
        dead[q] = set(range(1, T + 1)) - live

    middle: list[list[Operation]] = []
    for t in range(1, T + 1):
        ops: list[Operation] = []
        for op in circuit.layers[t - 1]:
            if op.kind in MEAS_KINDS or op.kind in INIT_KINDS:
                continue
            if op.kind in PAULI_KINDS or op.kind is OpKind.I:
                if all(t in dead[q] for q in op.qubits):
                    continue
            ops.append(op)
        ops.extend(swap_by_layer.get(t, []))
        middle.append(sorted(ops, key=lambda o: (min(o.qubits), o.kind.value)))

    layers = [first_layer] + middle + [last_layer]
    ext = Circuit(n_ext, layers)
    return ExtendedCircuit(
        base=ext,
        n_original=n,
        n_pairs=n_pairs,
        v_init_start=v_init_start,
        v_init_paired=v_init_paired,
        v_meas_last=v_meas_last,
        v_meas_paired=v_meas_paired,
        pair_ancilla=pair_ancilla,
        pair_meas=pair_meas,
        pair_init=pair_init,
        q_init=q_init,
        q_meas=q_meas,
        init_basis=init_basis,
        meas_basis=meas_basis,
    )


# ---------------------------------------------------------------------------
# Random circuits (fuzzing support)


def random_circuit(
    n: int,
    depth: int,
    rng: random.Random,
    p_cnot: float = 0.2,
    p_single: float = 0.4,
    p_meas: float = 0.12,
    p_init_start: float = 0.3,
    x_basis: bool = True,
) -> Circuit:
    """A random valid stabiliser circuit; dead wires are reinitialised lazily."""
    layers: list[list[Operation]] = []
    state = {}
    for q in range(1, n + 1):
        state[q] = "dead" if rng.random() < p_init_start else "open"
    for _ in range(depth):
        ops: list[Operation] = []
        used: set[int] = set()
        qubits = list(range(1, n + 1))
        rng.shuffle(qubits)
        for q in qubits:
            if q in used:
                continue
            r = rng.random()
            if state[q] == "dead":
                if r < 0.55:
                    kind = OpKind.INIT_X if (x_basis and rng.random() < 0.3) else OpKind.INIT_Z
                    ops.append(Operation(kind, (q,)))
                    used.add(q)
                    state[q] = "live"
                continue
            if r < p_cnot:
                partners = [p for p in qubits if p != q and p not in used and state[p] != "dead"]
                if partners:
                    p = rng.choice(partners)
                    ops.append(Operation(OpKind.CNOT, (q, p)))
                    used.update((q, p))
                    state[q] = state[p] = "live"
                    continue
            if r < p_cnot + p_single:
                kind = rng.choice((OpKind.H, OpKind.S, OpKind.PAULI_X, OpKind.PAULI_Z))
                ops.append(Operation(kind, (q,)))
                used.add(q)
                state[q] = "live"
            elif r < p_cnot + p_single + p_meas:
                kind = OpKind.MEAS_X if (x_basis and rng.random() < 0.3) else OpKind.MEAS_Z
                ops.append(Operation(kind, (q,)))
                used.add(q)
                state[q] = "dead"
        layers.append(ops)
    return Circuit(n, layers).canonical().check_valid()
