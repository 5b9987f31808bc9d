import random

import pytest

from circuitcode.circuit import parse_circuit, random_circuit
from circuitcode.gf2 import BitMatrix, BitVector
from circuitcode.tanner import (
    bit_split,
    build_plain,
    export_dot,
    graph_from_matrix,
    read_labels,
    read_witness,
    symmetrize,
    verify_symmetry,
    write_labels,
    write_witness,
)
from tests.test_circuit import ZZ_TEXT


def cnot_graph():
    return build_plain(parse_circuit("qubits 2\ncnot 1 2\n"))


def test_cnot_graph_shape_and_codeword():
    g = cnot_graph()
    assert g.n_bits == 8
    assert g.n_checks == 4
    a = g.check_matrix()
    k = a.kernel_basis()
    assert k.n_rows == 4
    # Propagation of X1 to X1X2: bit order per layer is x1 x2 z1 z2.
    v = BitVector.from_bits([1, 0, 0, 0, 1, 1, 0, 0])
    assert a.mul_vec(v).is_zero()


def test_identity_wire_graph():
    g = build_plain(parse_circuit("qubits 1\ni 1\n"))
    assert g.n_bits == 4
    assert g.n_checks == 2
    assert sorted(len(c) for c in g.checks) == [2, 2]
    assert g.max_degree() == 2


def test_zz_graph_structure():
    g = build_plain(parse_circuit(ZZ_TEXT))
    # no isolated bits survive except flagged ones, which all carry edges here
    for i in range(g.n_bits):
        assert g.bit_degree(i) >= 1 or g.bits[i].is_measurement
    assert len(g.measurement_bits()) == 2
    assert len(g.initialisation_bits()) == 2
    # the mid-circuit dead step of the ancilla leaves no bits at t=4
    assert g.bit_index("x", 3, 4) is None
    assert g.bit_index("z", 3, 4) is None
    assert g.max_degree() <= 3


def test_max_degree_invariant_random():
    rng = random.Random(31)
    for _ in range(40):
        c = random_circuit(rng.randrange(1, 5), rng.randrange(1, 8), rng, x_basis=False)
        g = build_plain(c)
        assert g.max_degree() <= 3


def test_bit_split_examples():
    g = cnot_graph()
    a = g.check_matrix()
    k = a.kernel_basis()
    v = g.bit_index("x", 1, 0)
    neigh = g.bit_neighbors(v)
    assert len(neigh) == 2
    g2, maps = bit_split(g, v, ([neigh[0]], [neigh[1]]))
    a2 = g2.check_matrix()
    assert a2.kernel_basis().n_rows == k.n_rows
    for c in k.row_vectors():
        assert a2.mul_vec(maps.map_codeword(c)).is_zero()

    # degenerate split with an empty side still preserves the code
    g3, maps3 = bit_split(g, v, (neigh, []))
    assert g3.check_matrix().kernel_basis().n_rows == k.n_rows
    # the dangling bit copies the value of v in every codeword
    for c in k.row_vectors():
        c3 = maps3.map_codeword(c)
        assert c3[g3.n_bits - 1] == c[v]


def test_bit_split_rejects_bad_partition():
    g = cnot_graph()
    v = g.bit_index("x", 1, 0)
    neigh = g.bit_neighbors(v)
    with pytest.raises(ValueError):
        bit_split(g, v, (neigh, neigh))
    with pytest.raises(ValueError):
        bit_split(g, v, ([neigh[0]], []))


def test_bit_split_pairing_identity():
    rng = random.Random(77)
    for _ in range(20):
        c = random_circuit(rng.randrange(1, 4), rng.randrange(1, 6), rng)
        g = build_plain(c)
        if g.n_bits == 0:
            continue
        v = rng.randrange(g.n_bits)
        neigh = g.bit_neighbors(v)
        rng.shuffle(neigh)
        cut = rng.randrange(len(neigh) + 1)
        g2, maps = bit_split(g, v, (neigh[:cut], neigh[cut:]))
        k = g.check_matrix().kernel_basis()
        for cw in k.row_vectors():
            e = BitVector(g.n_bits, rng.getrandbits(g.n_bits))
            assert cw.dot(e) == maps.map_codeword(cw).dot(maps.map_error(e))
            assert e.weight() == maps.map_error(e).weight()


def test_symmetrize_sh_needs_no_split():
    # H first, then S: every junction merges a long with a short terminal.
    c = parse_circuit("qubits 1\nh 1\ntick\ns 1\n")
    g = build_plain(c)
    g2, w, maps = symmetrize(g, c)
    assert g2.n_bits == g.n_bits
    assert verify_symmetry(g2, w) == []


def test_symmetrize_hs_one_split():
    c = parse_circuit("qubits 1\ns 1\ntick\nh 1\n")
    g = build_plain(c)
    g2, w, maps = symmetrize(g, c)
    assert g2.n_bits == g.n_bits + 1
    assert g2.n_checks == g.n_checks + 1
    assert verify_symmetry(g2, w) == []
    # the plain graph has no valid witness on the same pairing
    assert g.check_matrix().kernel_basis().n_rows == g2.check_matrix().kernel_basis().n_rows


def test_symmetrize_zz_split_count():
    c = parse_circuit(ZZ_TEXT)
    g = build_plain(c)
    g2, w, maps = symmetrize(g, c)
    assert verify_symmetry(g2, w) == []
    # asymmetric merges happen exactly where the ancilla leaves its
    # initialisations into the CNOT target inputs
    assert g2.n_bits - g.n_bits == 2


def test_symmetrize_random_circuits():
    rng = random.Random(97)
    for _ in range(1000):
        c = random_circuit(rng.randrange(1, 7), rng.randrange(1, 11), rng)
        g = build_plain(c)
        g2, w, maps = symmetrize(g, c)
        assert verify_symmetry(g2, w) == [], (serialize_for_debug(c), verify_symmetry(g2, w))
        k = g.check_matrix().kernel_basis()
        a2 = g2.check_matrix()
        assert a2.kernel_basis().n_rows == k.n_rows
        for cw in k.row_vectors():
            assert a2.mul_vec(maps.map_codeword(cw)).is_zero()


def serialize_for_debug(c):
    from circuitcode.circuit import serialize

    return serialize(c)


def test_dual_exchange_is_automorphism():
    c = parse_circuit(ZZ_TEXT)
    g = build_plain(c)
    g2, w, _ = symmetrize(g, c)
    a = g2.check_matrix()
    d = w.deleting_matrix(g2)
    ad = a.matmul(d)
    # exchanging every dual pair maps the deleted subgraph to itself
    assert ad == ad.transpose()


def test_verify_symmetry_reports_violations():
    c = parse_circuit("qubits 1\ns 1\ntick\nh 1\n")
    g = build_plain(c)
    g2, w, _ = symmetrize(g, c)
    # break the witness: swap two dual assignments
    bad = dict(w.dual)
    ks = sorted(bad)
    bad[ks[0]], bad[ks[1]] = bad[ks[1]], bad[ks[0]]
    from circuitcode.tanner import SymmetryWitness

    problems = verify_symmetry(g2, SymmetryWitness(bad, w.long_terminals))
    assert problems


def test_gadget_graphs_have_symmetry():
    for text in ("h 1", "s 1", "i 1", "cnot 1 2", "rz 1", "mz 1", "rx 1", "mx 1"):
        n = 2 if "cnot" in text else 1
        c = parse_circuit(f"qubits {n}\n{text}\n")
        g = build_plain(c)
        g2, w, _ = symmetrize(g, c)
        assert verify_symmetry(g2, w) == [], text


def test_export_dot():
    g = cnot_graph()
    dot = export_dot(g)
    assert dot.count("shape=ellipse") == 8
    assert dot.count("shape=box") == 4
    assert dot == export_dot(cnot_graph())
    empty = graph_from_matrix(BitMatrix.zeros(0, 0))
    assert export_dot(empty).startswith("graph tanner {")


def test_labels_roundtrip():
    g = build_plain(parse_circuit(ZZ_TEXT))
    labs = read_labels(write_labels(g))
    assert labs == g.bits


def test_witness_roundtrip():
    c = parse_circuit(ZZ_TEXT)
    g = build_plain(c)
    g2, w, _ = symmetrize(g, c)
    w2 = read_witness(write_witness(g2, w))
    assert w2.dual == w.dual
    assert w2.long_terminals == w.long_terminals
