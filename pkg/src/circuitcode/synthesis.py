"""Circuit synthesis from symmetric Tanner graphs via path partitions.

Dual path pairs become qubits, time labels become gate windows, and each
inter-path edge class contributes one gate. The synthesised circuit's
symmetric Tanner graph relates to the input graph by symmetric splitting;
the returned maps realise that relation explicitly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .circuit import Circuit, OpKind, Operation
from .gf2 import BitMatrix, BitVector
from .tanner import SymmetryWitness, TannerGraph, build_plain

Vertex = tuple[str, int]  # ("b", bit index) or ("c", check index)


@dataclass
class PathPartition:
    paths: list[list[Vertex]]
    tau: dict[Vertex, int]


def _dual_vertex(w: SymmetryWitness, check_of_bit: dict[int, int], v: Vertex) -> Vertex:
    kind, idx = v
    if kind == "b":
        return ("c", check_of_bit[idx])
    return ("b", w.dual[idx])


def trivial_partition(g: TannerGraph, w: SymmetryWitness) -> PathPartition:
    """One vertex per path, every time label 1."""
    paths: list[list[Vertex]] = []
    tau: dict[Vertex, int] = {}
    for a, v in sorted(w.dual.items()):
        paths.append([("b", v)])
        paths.append([("c", a)])
        tau[("b", v)] = 1
        tau[("c", a)] = 1
    return PathPartition(paths, tau)


def validate_partition(
    g: TannerGraph, w: SymmetryWitness, p: PathPartition
) -> list[str]:
    """All violated partition conditions; empty when valid."""
    problems: list[str] = []
    check_of_bit = w.check_of_bit()
    subgraph_bits = set(w.dual.values())
    expected = {("b", v) for v in subgraph_bits} | {("c", a) for a in w.dual}
    seen: set[Vertex] = set()
    for path in p.paths:
        if not path:
            problems.append("empty path")
            continue
        for v in path:
            if v in seen:
                problems.append(f"vertex {v} appears twice")
            seen.add(v)
        for u, v in zip(path, path[1:]):
            bit = u[1] if u[0] == "b" else v[1]
            chk = v[1] if v[0] == "c" else u[1]
            if u[0] == v[0]:
                problems.append(f"path is not alternating at {u}->{v}")
            elif bit not in g.checks[chk]:
                problems.append(f"path edge {u}->{v} is not a graph edge")
        taus = [p.tau.get(v) for v in path]
        if any(t is None for t in taus):
            problems.append("missing time label on a path")
        elif any(t2 <= t1 for t1, t2 in zip(taus, taus[1:])):
            problems.append("time labels must increase strictly along a path")
    if seen != expected:
        problems.append("paths must partition the symmetric subgraph")
        return problems

    index_of: dict[Vertex, int] = {}
    for i, path in enumerate(p.paths):
        for v in path:
            index_of[v] = i
    for i, path in enumerate(p.paths):
        dual = [_dual_vertex(w, check_of_bit, v) for v in path]
        js = {index_of.get(v) for v in dual}
        if len(js) != 1 or None in js:
            problems.append(f"path {i} has no single dual path")
            continue
        j = js.pop()
        if j == i:
            problems.append(f"path {i} is its own dual")
            continue
        other = p.paths[j]
        if dual != other and dual != other[::-1]:
            problems.append(f"dual of path {i} is not a path of the partition")
        for v, d in zip(path, dual):
            if p.tau.get(v) != p.tau.get(d):
                problems.append(f"dual vertices {v},{d} disagree on time labels")
                break

    # inter-path edges must connect equal time labels; long terminals must
    # attach to path end checks
    pos_in_path: dict[Vertex, int] = {}
    for path in p.paths:
        for k, v in enumerate(path):
            pos_in_path[v] = k
    for a, members in enumerate(g.checks):
        for bit in members:
            if bit in w.long_terminals:
                path = p.paths[index_of[("c", a)]]
                if path[0] != ("c", a) and path[-1] != ("c", a):
                    problems.append(
                        f"long terminal {g.bits[bit].name} attaches inside a path"
                    )
                continue
            u, v = ("b", bit), ("c", a)
            if index_of[u] == index_of[v] and abs(pos_in_path[u] - pos_in_path[v]) == 1:
                continue  # intra-path edge
            if p.tau.get(u) != p.tau.get(v):
                problems.append(
                    f"inter-path edge {g.bits[bit].name}-c{a} spans time labels"
                )
    return problems


@dataclass
class QubitLine:
    qubit: int
    x_path: list[Vertex]
    z_path: list[Vertex]
    t_min: int
    t_max: int
    init_kind: OpKind | None
    meas_kind: OpKind | None
    open_in: tuple[int, int] | None  # (end bit, long terminal) indices at t=0
    open_out: tuple[int, int] | None


@dataclass
class SynthesisMaps:
    """Codeword map defined on a kernel basis plus a positional error map."""

    src_kernel: BitMatrix
    images: BitMatrix
    error: BitMatrix

    def map_codeword(self, c: BitVector) -> BitVector:
        coeffs = _express(self.src_kernel, c)
        out = BitVector(self.images.n_cols)
        for i in coeffs:
            out ^= self.images.row(i)
        return out

    def map_error(self, e: BitVector) -> BitVector:
        return self.error.mul_vec(e)

    def map_matrix(self, m: BitMatrix) -> BitMatrix:
        return BitMatrix.from_vectors(
            [self.map_codeword(v) for v in m.row_vectors()],
            n_cols=self.images.n_cols,
        )


def _express(basis: BitMatrix, v: BitVector) -> list[int]:
    """Coefficients of v over an rref basis; raises if outside the span."""
    pivots = []
    for row in basis.rows:
        pivots.append((row & -row).bit_length() - 1)
    bits = v.bits
    used = []
    for i, (row, piv) in enumerate(zip(basis.rows, pivots)):
        if (bits >> piv) & 1:
            bits ^= row
            used.append(i)
    if bits:
        raise ValueError("vector is not in the codeword space")
    return used


@dataclass
class SynthesisResult:
    circuit: Circuit
    maps: SynthesisMaps
    qubits: list[QubitLine]
    dt: int


def synthesize(
    g: TannerGraph, w: SymmetryWitness, p: PathPartition
) -> SynthesisResult:
    problems = validate_partition(g, w, p)
    if problems:
        raise ValueError("invalid partition: " + problems[0])
    check_of_bit = w.check_of_bit()

    # pair paths into qubits; the path holding the smallest bit plays X
    index_of: dict[Vertex, int] = {}
    for i, path in enumerate(p.paths):
        for v in path:
            index_of[v] = i
    paired: set[int] = set()
    lines: list[tuple[list[Vertex], list[Vertex]]] = []
    order = []
    for i, path in enumerate(p.paths):
        if i in paired:
            continue
        dual = [_dual_vertex(w, check_of_bit, v) for v in path]
        j = index_of[dual[0]]
        paired.update((i, j))
        other = p.paths[j]
        if dual != other:
            other = other[::-1]
        min_bit_here = min((v[1] for v in path if v[0] == "b"), default=None)
        min_bit_there = min((v[1] for v in other if v[0] == "b"), default=None)
        if min_bit_there is None or (
            min_bit_here is not None and min_bit_here <= min_bit_there
        ):
            x_path, z_path = path, other
            key = min_bit_here
        else:
            x_path, z_path = other, path
            key = min_bit_there
        order.append((key, x_path, z_path))
    order.sort(key=lambda item: item[0])

    role_of: dict[Vertex, tuple[int, str]] = {}
    qubits: list[QubitLine] = []
    long_on_check: dict[int, int] = {}
    for t in w.long_terminals:
        (chk,) = g.bit_neighbors(t)
        long_on_check[chk] = t
    for q, (_, x_path, z_path) in enumerate(order, start=1):
        for v in x_path:
            role_of[v] = (q, "x")
        for v in z_path:
            role_of[v] = (q, "z")
        taus = [p.tau[v] for v in x_path]
        t_min, t_max = min(taus), max(taus)
        ends_min = (x_path[0], z_path[0])
        ends_max = (x_path[-1], z_path[-1])
        bit_min = ends_min[0] if ends_min[0][0] == "b" else ends_min[1]
        chk_min = ends_min[0] if ends_min[0][0] == "c" else ends_min[1]
        bit_max = ends_max[0] if ends_max[0][0] == "b" else ends_max[1]
        chk_max = ends_max[0] if ends_max[0][0] == "c" else ends_max[1]
        long_min = long_on_check.get(chk_min[1])
        long_max = long_on_check.get(chk_max[1])
        init_kind = meas_kind = None
        open_in = open_out = None
        single_check = chk_min == chk_max
        if long_min is None and not (single_check and long_max is not None):
            init_kind = (
                OpKind.INIT_Z if role_of[bit_min][1] == "z" else OpKind.INIT_X
            )
        else:
            # open input: the wire of the end bit's role carries its value,
            # the partner wire carries the long terminal
            open_in = (bit_min[1], long_min if long_min is not None else long_max)
        if single_check:
            # a single shared end check: one long terminal only suppresses
            # the initialisation, the measurement still closes the wire
            meas_kind = OpKind.MEAS_Z if role_of[bit_max][1] == "z" else OpKind.MEAS_X
        elif long_max is None:
            meas_kind = OpKind.MEAS_Z if role_of[bit_max][1] == "z" else OpKind.MEAS_X
        else:
            open_out = (bit_max[1], long_max)
        qubits.append(
            QubitLine(q, x_path, z_path, t_min, t_max, init_kind, meas_kind, open_in, open_out)
        )

    # gates per inter-path edge class, grouped by time label
    window_gates: dict[int, list[tuple[tuple, list[Operation]]]] = {}
    seen_classes: set[frozenset] = set()
    for a, members in enumerate(g.checks):
        for bit in members:
            if bit in w.long_terminals:
                continue
            u, v = ("b", bit), ("c", a)
            qu, ru = role_of[u]
            qv, rv = role_of[v]
            if index_of[u] == index_of[v]:
                continue  # intra-path wire edge
            dual_edge = (_dual_vertex(w, check_of_bit, v), _dual_vertex(w, check_of_bit, u))
            cls = frozenset((u, v, dual_edge[0], dual_edge[1]))
            if cls in seen_classes:
                continue
            seen_classes.add(cls)
            # canonical representative: the edge whose bit index is smaller
            alt_bit = dual_edge[0]
            if alt_bit[0] == "b" and alt_bit[1] < bit:
                u, v = dual_edge
                qu, ru = role_of[u]
                qv, rv = role_of[v]
            tau = p.tau[u]
            ops = _table_gate(qu, ru, qv, rv)
            sort_key = (len(ops) > 1, qu, qv)
            window_gates.setdefault(tau, []).append((sort_key, ops))

    # schedule each window greedily, single-qubit gates first
    dt = 1
    schedules: dict[int, list[list[Operation]]] = {}
    for tau, gates in window_gates.items():
        gates.sort(key=lambda item: item[0])
        layers: list[list[Operation]] = []
        next_free: dict[int, int] = {}
        for _, ops in gates:
            involved = sorted({q for op in ops for q in op.qubits})
            start = max((next_free.get(q, 0) for q in involved), default=0)
            for k, op in enumerate(ops):
                while len(layers) <= start + k:
                    layers.append([])
                layers[start + k].append(op)
            for q in involved:
                next_free[q] = start + len(ops)
        schedules[tau] = layers
        dt = max(dt, len(layers))

    tau_max_global = max((p.tau[v] for path in p.paths for v in path), default=1)
    n_layers = 1 + tau_max_global * dt + 1
    layers: list[list[Operation]] = [[] for _ in range(n_layers)]
    for line in qubits:
        if line.init_kind is not None:
            layers[0].append(Operation(line.init_kind, (line.qubit,)))
        if line.meas_kind is not None:
            layers[-1].append(Operation(line.meas_kind, (line.qubit,)))
    for tau, window in schedules.items():
        base = 1 + (tau - 1) * dt
        for k, ops in enumerate(window):
            layers[base + k].extend(ops)
    circuit = Circuit(len(qubits), layers).canonical().check_valid()

    maps = _build_maps(g, w, p, circuit, qubits, role_of, dt, tau_max_global)
    return SynthesisResult(circuit, maps, qubits, dt)


def _table_gate(qu: int, ru: str, qv: int, rv: str) -> list[Operation]:
    """Gate for an inter-path edge: bit on (qu, ru), check on (qv, rv)."""
    if qu == qv:
        if ru == "x":
            return [Operation(OpKind.S, (qu,))]
        return [
            Operation(OpKind.H, (qu,)),
            Operation(OpKind.S, (qu,)),
            Operation(OpKind.H, (qu,)),
        ]
    if ru == "x" and rv == "x":
        return [Operation(OpKind.CNOT, (qu, qv))]
    if ru == "z" and rv == "z":
        return [Operation(OpKind.CNOT, (qv, qu))]
    if ru == "x" and rv == "z":
        return [
            Operation(OpKind.H, (qv,)),
            Operation(OpKind.CNOT, (qu, qv)),
            Operation(OpKind.H, (qv,)),
        ]
    return [
        Operation(OpKind.H, (qu,)),
        Operation(OpKind.CNOT, (qu, qv)),
        Operation(OpKind.H, (qu,)),
    ]


def _build_maps(g, w, p, circuit, qubits, role_of, dt, tau_max_global):
    g_out = build_plain(circuit)
    a_out = g_out.check_matrix()
    kernel = g.check_matrix().kernel_basis()
    t_final = circuit.depth

    def window_exit(tau: int) -> int:
        return 1 + tau * dt

    images = []
    for c in kernel.row_vectors():
        x_vals = {}
        z_vals = {}
        for line in qubits:
            q = line.qubit
            if line.open_in is not None:
                bit_end, long_end = line.open_in
                role = role_of[("b", bit_end)][1]
                r_val = c[bit_end]
                o_val = c[long_end]
                x_vals[q] = r_val if role == "x" else o_val
                z_vals[q] = o_val if role == "x" else r_val
            else:
                x_vals[q] = None  # created by the init layer
                z_vals[q] = None
        values: dict[tuple[str, int, int], int] = {}
        for q in x_vals:
            if x_vals[q] is not None:
                values[("x", q, 0)] = x_vals[q]
                values[("z", q, 0)] = z_vals[q]
        for t, layer in enumerate(circuit.layers, start=1):
            for op in layer:
                if op.kind in (OpKind.INIT_Z, OpKind.INIT_X):
                    (q,) = op.qubits
                    line = qubits[q - 1]
                    bit_end = (
                        line.x_path[0] if line.x_path[0][0] == "b" else line.z_path[0]
                    )
                    val = c[bit_end[1]]
                    if op.kind is OpKind.INIT_Z:
                        x_vals[q], z_vals[q] = 0, val
                    else:
                        x_vals[q], z_vals[q] = val, 0
                elif op.kind in (OpKind.MEAS_Z, OpKind.MEAS_X):
                    (q,) = op.qubits
                    dead_kind = "x" if op.kind is OpKind.MEAS_Z else "z"
                    leftover = x_vals[q] if dead_kind == "x" else z_vals[q]
                    if leftover != 0:
                        raise AssertionError(
                            "codeword transport violates a measurement check"
                        )
                    x_vals[q] = z_vals[q] = None
                elif op.kind is OpKind.H:
                    (q,) = op.qubits
                    x_vals[q], z_vals[q] = z_vals[q], x_vals[q]
                elif op.kind is OpKind.S:
                    (q,) = op.qubits
                    z_vals[q] = x_vals[q] ^ z_vals[q]
                elif op.kind is OpKind.CNOT:
                    qc, qt = op.qubits
                    x_vals[qt] ^= x_vals[qc]
                    z_vals[qc] ^= z_vals[qt]
                # identity and Pauli kinds leave values unchanged
            for q in x_vals:
                if x_vals[q] is not None:
                    values[("x", q, t)] = x_vals[q]
                    values[("z", q, t)] = z_vals[q]
        bits = 0
        for i, lab in enumerate(g_out.bits):
            if values.get((lab.kind, lab.q, lab.t)):
                bits |= 1 << i
        img = BitVector(g_out.n_bits, bits)
        if not a_out.mul_vec(img).is_zero():
            raise AssertionError("transported codeword leaves the output code")
        images.append(img)

    image_matrix = BitMatrix.from_vectors(images, n_cols=g_out.n_bits)
    if image_matrix.rank() != kernel.n_rows:
        raise AssertionError("codeword transport is not injective")
    if a_out.kernel_basis().n_rows != kernel.n_rows:
        raise AssertionError("synthesised code has a different dimension")

    # error carriers: boundary bits for long terminals, window-exit wire bits
    # for subgraph bits
    err_rows = [0] * g_out.n_bits
    used = set()

    def carrier(kind: str, q: int, t: int) -> int:
        idx = g_out.bit_index(kind, q, t)
        if idx is None or idx in used:
            raise AssertionError("missing or duplicate error carrier")
        used.add(idx)
        return idx

    for line in qubits:
        if line.open_in is not None:
            bit_end, long_end = line.open_in
            role = role_of[("b", bit_end)][1]
            other = "z" if role == "x" else "x"
            err_rows[carrier(other, line.qubit, 0)] = 1 << long_end
        if line.open_out is not None:
            bit_end, long_end = line.open_out
            role = role_of[("b", bit_end)][1]
            other = "z" if role == "x" else "x"
            err_rows[carrier(other, line.qubit, t_final)] = 1 << long_end
    for v_idx in sorted(w.dual.values()):
        q, role = role_of[("b", v_idx)]
        t_exit = window_exit(p.tau[("b", v_idx)])
        err_rows[carrier(role, q, t_exit)] = 1 << v_idx

    maps = SynthesisMaps(
        src_kernel=kernel,
        images=image_matrix,
        error=BitMatrix(g_out.n_bits, g.n_bits, err_rows),
    )
    return maps


# ---------------------------------------------------------------------------
# Round trip


@dataclass
class RoundTripReport:
    circuit: Circuit
    code_dimension: int
    pairing_ok: bool
    distance_before: object
    distance_after: object
    g_max: int

    @property
    def ok(self) -> bool:
        lower = True
        upper = True
        factor = max(1, self.g_max // 2)
        if self.distance_before.exact and self.distance_after.exact:
            lower = self.distance_after.value * factor >= self.distance_before.value
            upper = self.distance_after.value <= self.distance_before.value
        return self.pairing_ok and lower and upper


def roundtrip_check(
    g: TannerGraph,
    w: SymmetryWitness,
    p: PathPartition,
    b: BitMatrix,
    l: BitMatrix,
    max_weight: int = 5,
    pair_samples: int = 50,
    rng: random.Random | None = None,
) -> RoundTripReport:
    """Synthesise, rebuild, and compare codes, pairings and distances."""
    from .distance import circuit_distance

    result = synthesize(g, w, p)
    maps = result.maps
    kernel = maps.src_kernel
    rng = rng or random.Random(0)

    pairing_ok = True
    basis = list(kernel.row_vectors())
    images = [maps.map_codeword(v) for v in basis]
    for j in range(g.n_bits):
        e = BitVector.from_indices(g.n_bits, [j])
        img_e = maps.map_error(e)
        if img_e.weight() != 1:
            pairing_ok = False
        for v, img in zip(basis, images):
            if v.dot(e) != img.dot(img_e):
                pairing_ok = False
    for _ in range(pair_samples):
        e = BitVector(g.n_bits, rng.getrandbits(g.n_bits))
        img_e = maps.map_error(e)
        if e.weight() != img_e.weight():
            pairing_ok = False
        for v, img in zip(basis, images):
            if v.dot(e) != img.dot(img_e):
                pairing_ok = False

    d1 = circuit_distance(b, l, max_weight)
    d2 = circuit_distance(maps.map_matrix(b), maps.map_matrix(l), max_weight)
    return RoundTripReport(
        result.circuit, kernel.n_rows, pairing_ok, d1, d2, g.max_degree()
    )


# ---------------------------------------------------------------------------
# Partition files and the greedy heuristic


def write_partition(g: TannerGraph, w: SymmetryWitness, p: PathPartition) -> str:
    check_of_bit = w.check_of_bit()
    index_of = {}
    for i, path in enumerate(p.paths):
        for v in path:
            index_of[v] = i

    def vertex_name(v: Vertex) -> str:
        return g.bits[v[1]].name if v[0] == "b" else f"c{v[1]}"

    # reuse the synthesis pairing to emit stable qubit labels and roles
    result_lines = []
    paired = set()
    q = 0
    for i, path in enumerate(p.paths):
        if i in paired:
            continue
        dual = [_dual_vertex(w, check_of_bit, v) for v in path]
        j = index_of[dual[0]]
        paired.update((i, j))
        q += 1
        min_here = min((v[1] for v in path if v[0] == "b"), default=None)
        min_there = min((v[1] for v in p.paths[j] if v[0] == "b"), default=None)
        if min_there is None or (min_here is not None and min_here <= min_there):
            x_path, z_path = path, p.paths[j]
        else:
            x_path, z_path = p.paths[j], path
        result_lines.append(
            f"path {q} X : " + " ".join(vertex_name(v) for v in x_path)
        )
        result_lines.append(
            f"path {q} Z : " + " ".join(vertex_name(v) for v in z_path)
        )
    for v in sorted(p.tau, key=lambda v: (v[0], v[1])):
        result_lines.append(f"tau {vertex_name(v)} {p.tau[v]}")
    return "\n".join(result_lines) + "\n"


def read_partition(g: TannerGraph, text: str) -> PathPartition:
    name_to_bit = {lab.name: i for i, lab in enumerate(g.bits)}

    def parse_vertex(name: str) -> Vertex:
        if name in name_to_bit:
            return ("b", name_to_bit[name])
        if name.startswith("c") and name[1:].isdigit():
            return ("c", int(name[1:]))
        raise ValueError(f"unknown vertex {name!r}")

    paths = []
    tau = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("path "):
            _, rest = line.split(None, 1)
            _, _, names = rest.partition(":")
            paths.append([parse_vertex(nm) for nm in names.split()])
        elif line.startswith("tau "):
            _, name, value = line.split()
            tau[parse_vertex(name)] = int(value)
        else:
            raise ValueError(f"bad partition line {line!r}")
    return PathPartition(paths, tau)


def greedy_partition(
    g: TannerGraph, w: SymmetryWitness, rng: random.Random
) -> PathPartition:
    """Grow dual path pairs greedily; falls back to single vertices.

    Time labels are solved afterwards by offset propagation over inter-path
    edges; paths that would make the labelling inconsistent stay short.
    """
    check_of_bit = w.check_of_bit()
    unused: set[Vertex] = {("b", v) for v in w.dual.values()}
    unused |= {("c", a) for a in w.dual}
    long_checks = set()
    for t in w.long_terminals:
        long_checks.update(g.bit_neighbors(t))

    paths: list[list[Vertex]] = []
    bits_order = sorted(v for v in unused if v[0] == "b")
    for start in bits_order:
        if start not in unused:
            continue
        path = [start]
        dual_path = [_dual_vertex(w, check_of_bit, start)]
        unused.discard(start)
        unused.discard(dual_path[0])
        while True:
            tail = path[-1]
            candidates = []
            if tail[0] == "b":
                for a in g.bit_neighbors(tail[1]):
                    candidates.append(("c", a))
            else:
                if tail[1] in long_checks:
                    break  # long terminals must sit at path ends
                for bit in g.checks[tail[1]]:
                    if bit not in w.long_terminals:
                        candidates.append(("b", bit))
            candidates = [
                v
                for v in candidates
                if v in unused and _dual_vertex(w, check_of_bit, v) in unused
                and _dual_vertex(w, check_of_bit, v) != v
            ]
            extended = False
            stop_after = False
            for v in candidates:
                d = _dual_vertex(w, check_of_bit, v)
                if v == d or v in path or d in path:
                    continue
                # a check with a long terminal (on either side of the dual
                # pair) must end up at a path end
                if v[0] == "c" and v[1] in long_checks:
                    stop_after = True
                if d[0] == "c" and d[1] in long_checks:
                    stop_after = True
                path.append(v)
                dual_path.append(d)
                unused.discard(v)
                unused.discard(d)
                extended = True
                break
            if not extended or stop_after or len(path) >= 4:
                break
        paths.append(path)
        paths.append(dual_path)

    # assign taus: position along the path plus a per-path offset, solved by
    # propagation over inter-path equality constraints
    index_of = {}
    pos = {}
    for i, path in enumerate(paths):
        for k, v in enumerate(path):
            index_of[v] = i
            pos[v] = k

    from collections import deque

    offset = {}
    pair_of = {}
    for i, path in enumerate(paths):
        d0 = _dual_vertex(w, check_of_bit, path[0])
        pair_of[i] = index_of[d0]

    for i in range(len(paths)):
        if i in offset:
            continue
        offset[i] = 0
        queue = deque([i])
        ok = True
        while queue:
            cur = queue.popleft()
            j = pair_of[cur]
            if j not in offset:
                offset[j] = offset[cur]
                queue.append(j)
            elif offset[j] != offset[cur]:
                ok = False
            for v in paths[cur]:
                neighbours = (
                    [("c", a) for a in g.bit_neighbors(v[1])]
                    if v[0] == "b"
                    else [("b", b) for b in g.checks[v[1]] if b not in w.long_terminals]
                )
                for u in neighbours:
                    j2 = index_of[u]
                    if j2 == cur:
                        continue
                    want = offset[cur] + pos[v] - pos[u]
                    if j2 not in offset:
                        offset[j2] = want
                        queue.append(j2)
                    elif offset[j2] != want:
                        ok = False
        if not ok:
            return trivial_partition(g, w)

    base = min(offset.values(), default=0)
    tau = {}
    for i, path in enumerate(paths):
        for k, v in enumerate(path):
            tau[v] = offset[i] - base + k + 1
    p = PathPartition(paths, tau)
    if validate_partition(g, w, p):
        return trivial_partition(g, w)
    return p
