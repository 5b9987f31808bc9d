import random

from circuitcode import codewords as cw
from circuitcode.circuit import parse_circuit, random_circuit
from circuitcode.gf2 import BitVector
from circuitcode.synthesis import (
    PathPartition,
    greedy_partition,
    read_partition,
    roundtrip_check,
    synthesize,
    trivial_partition,
    validate_partition,
    write_partition,
)
from circuitcode.tanner import build_plain, symmetrize, verify_symmetry
from tests.test_circuit import ZZ_TEXT


def symmetric_graph(text):
    c = parse_circuit(text)
    g0 = build_plain(c)
    g, w, maps = symmetrize(g0, c)
    return c, g0, g, w, maps


def test_trivial_partition_validates():
    _, _, g, w, _ = symmetric_graph(ZZ_TEXT)
    p = trivial_partition(g, w)
    assert validate_partition(g, w, p) == []
    # one single-vertex path per vertex of the symmetric subgraph
    assert len(p.paths) == 2 * g.n_checks


def test_trivial_partition_empty_graph():
    c = parse_circuit("qubits 1\n")
    g = build_plain(c)
    g2, w, _ = symmetrize(g, c)
    p = trivial_partition(g2, w)
    assert p.paths == []


def test_validate_partition_catches_tau_mismatch():
    _, _, g, w, _ = symmetric_graph(ZZ_TEXT)
    p = trivial_partition(g, w)
    # give one dual pair inconsistent labels
    a = next(iter(w.dual))
    bad_tau = dict(p.tau)
    bad_tau[("c", a)] = 2
    problems = validate_partition(g, w, PathPartition(p.paths, bad_tau))
    assert problems


def test_synthesize_cnot_gadget():
    c, g0, g, w, _ = symmetric_graph("qubits 2\ncnot 1 2\n")
    p = trivial_partition(g, w)
    result = synthesize(g, w, p)
    assert result.circuit.validate() == []
    maps = result.maps
    # codes map bijectively and the boundary pairing carries over
    k = maps.src_kernel
    assert k.n_rows == 4
    for v in k.row_vectors():
        img = maps.map_codeword(v)
        for j in range(g.n_bits):
            e = BitVector.from_indices(g.n_bits, [j])
            assert v.dot(e) == img.dot(maps.map_error(e))


def test_synthesize_gate_count_zz():
    _, _, g, w, _ = symmetric_graph(ZZ_TEXT)
    p = trivial_partition(g, w)
    result = synthesize(g, w, p)
    # every inter-path edge class becomes exactly one gate: count classes
    classes = set()
    check_of_bit = w.check_of_bit()
    for a, members in enumerate(g.checks):
        for bit in members:
            if bit in w.long_terminals:
                continue
            if check_of_bit[bit] == a:
                classes.add(frozenset([("b", bit), ("c", a)]))
            else:
                dual = frozenset(
                    [("b", bit), ("c", a), ("b", w.dual[a]), ("c", check_of_bit[bit])]
                )
                classes.add(dual)
    n_gates = 0
    from circuitcode.circuit import OpKind

    singles = 0
    for layer in result.circuit.layers:
        for op in layer:
            if op.kind is OpKind.CNOT:
                n_gates += 1
            elif op.kind is OpKind.S:
                singles += 1
    # S gates stand alone; H-conjugated forms wrap a CNOT or an S
    assert n_gates + singles == len(classes)


def test_roundtrip_zz():
    c, g0, g, w, maps0 = symmetric_graph(ZZ_TEXT)
    ec = cw.complete_ec_structure(g0)
    b = maps0.map_matrix(ec.b)
    l = maps0.map_matrix(ec.l)
    p = trivial_partition(g, w)
    report = roundtrip_check(g, w, p, b, l, max_weight=3)
    assert report.pairing_ok
    assert report.ok
    assert report.distance_before.value == 1
    assert report.distance_after.value == 1
    # the original parity check transports to a checker of the synthesised
    # circuit whose measurement outcomes still multiply to +1
    from circuitcode import pauli_sim as sim

    result = synthesize(g, w, p)
    g_plain0 = build_plain(c)
    checker0 = cw.code_spaces(g_plain0).checkers.row(0)
    checker_sym = maps0.map_codeword(checker0)
    img = result.maps.map_codeword(checker_sym)
    g2 = build_plain(result.circuit)
    assert cw.classify(g2, img) == cw.CHECKER
    assert len(cw.relevant_measurements(g2, img)) >= 2
    verdict = sim.verify_codeword_equation(result.circuit, g2, img, None, seed=3, trials=4)
    assert verdict.ok, verdict.report(result.circuit, img, None)


def test_roundtrip_random_graphs():
    rng = random.Random(71)
    done = 0
    while done < 12:
        c = random_circuit(rng.randrange(1, 4), rng.randrange(1, 5), rng)
        g0 = build_plain(c)
        if g0.n_bits == 0:
            continue
        ec = cw.complete_ec_structure(g0)
        g, w, maps0 = symmetrize(g0, c)
        b = maps0.map_matrix(ec.b)
        l = maps0.map_matrix(ec.l)
        p = trivial_partition(g, w)
        report = roundtrip_check(g, w, p, b, l, max_weight=4, rng=rng)
        assert report.pairing_ok
        assert report.ok
        done += 1


def test_synthesized_graph_is_symmetric():
    _, _, g, w, _ = symmetric_graph(ZZ_TEXT)
    result = synthesize(g, w, trivial_partition(g, w))
    g2 = build_plain(result.circuit)
    g2s, w2, _ = symmetrize(g2, result.circuit)
    assert verify_symmetry(g2s, w2) == []


def test_partition_file_roundtrip():
    _, _, g, w, _ = symmetric_graph(ZZ_TEXT)
    p = trivial_partition(g, w)
    text = write_partition(g, w, p)
    p2 = read_partition(g, text)
    assert validate_partition(g, w, p2) == []
    assert sorted(map(tuple, p2.paths)) == sorted(map(tuple, p.paths))
    assert p2.tau == p.tau


def test_greedy_partition_validates():
    rng = random.Random(77)
    for _ in range(15):
        c = random_circuit(rng.randrange(1, 4), rng.randrange(1, 6), rng)
        g0 = build_plain(c)
        g, w, _ = symmetrize(g0, c)
        p = greedy_partition(g, w, rng)
        assert validate_partition(g, w, p) == []
        result = synthesize(g, w, p)
        assert result.circuit.validate() == []
        assert result.maps.src_kernel.n_rows == result.maps.images.n_rows


def test_greedy_roundtrip_distances():
    rng = random.Random(79)
    done = 0
    while done < 6:
        c = random_circuit(rng.randrange(1, 4), rng.randrange(1, 5), rng)
        g0 = build_plain(c)
        ec = cw.complete_ec_structure(g0)
        if ec.l.n_rows == 0:
            continue
        g, w, maps0 = symmetrize(g0, c)
        p = greedy_partition(g, w, rng)
        b = maps0.map_matrix(ec.b)
        l = maps0.map_matrix(ec.l)
        report = roundtrip_check(g, w, p, b, l, max_weight=4, rng=rng)
        assert report.pairing_ok
        assert report.ok
        done += 1
