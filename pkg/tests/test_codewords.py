import itertools
import random

import pytest

from circuitcode import codewords as cw
from circuitcode.circuit import parse_circuit, random_circuit
from circuitcode.gf2 import BitMatrix, BitVector
from circuitcode.pauli import PauliOperator
from circuitcode.tanner import build_plain, symmetrize
from tests.test_circuit import ZZ_TEXT


def zz_graph():
    c = parse_circuit(ZZ_TEXT)
    return c, build_plain(c)


def test_sigma_at_layer_cnot():
    g = build_plain(parse_circuit("qubits 2\ncnot 1 2\n"))
    v = BitVector.from_bits([1, 0, 0, 0, 1, 1, 0, 0])
    assert cw.sigma_at_layer(g, v, 0).label() == "X1"
    assert cw.sigma_at_layer(g, v, 1).label() == "X1X2"
    zero = BitVector(g.n_bits)
    assert cw.sigma_at_layer(g, zero, 0).is_identity_kind()


def pauli(label, n):
    return PauliOperator.from_label(label, n)


def test_zz_classification():
    c, g = zz_graph()
    xx = cw.solve_codeword(g, pauli("X1X2", 3), pauli("X1X2", 3))
    assert xx is not None
    assert cw.classify(g, xx) == cw.GENUINE_PROPAGATOR

    z1 = cw.solve_codeword(g, pauli("Z1", 3), pauli("Z1", 3))
    assert z1 is not None
    assert cw.classify(g, z1) == cw.GENUINE_PROPAGATOR

    zz = cw.solve_codeword(g, pauli("Z1Z2", 3), pauli("Z1Z2", 3))
    assert zz is not None
    assert cw.classify(g, zz) == cw.PSEUDO_PROPAGATOR


def test_zz_detectors_emitters_checker():
    c, g = zz_graph()
    m1, m2 = g.measurement_bits()
    ident = pauli("I1", 3)
    d1 = cw.solve_codeword(g, pauli("Z1Z2", 3), ident, {m1: 1, m2: 0})
    d2 = cw.solve_codeword(g, pauli("Z1Z2", 3), ident, {m1: 0, m2: 1})
    assert d1 is not None and d2 is not None
    assert cw.classify(g, d1) == cw.DETECTOR
    assert cw.classify(g, d2) == cw.DETECTOR
    assert cw.relevant_measurements(g, d1) == [m1]
    assert cw.relevant_measurements(g, d2) == [m2]

    e1 = cw.solve_codeword(g, ident, pauli("Z1Z2", 3), {m1: 1, m2: 0})
    e2 = cw.solve_codeword(g, ident, pauli("Z1Z2", 3), {m1: 0, m2: 1})
    assert e1 is not None and e2 is not None
    assert cw.classify(g, e1) == cw.EMITTER
    assert cw.classify(g, e2) == cw.EMITTER

    checker = d1 ^ d2
    assert cw.classify(g, checker) == cw.CHECKER
    assert cw.relevant_measurements(g, checker) == [m1, m2]
    # the checker space of this circuit is one-dimensional
    assert cw.code_spaces(g).checkers.n_rows == 1

    # detector + emitter with the same middle section is a propagator
    prop = d1 ^ e1
    assert cw.classify(g, prop) == cw.PSEUDO_PROPAGATOR


def test_checker_algebra():
    _, g = zz_graph()
    spaces = cw.code_spaces(g)
    ch = spaces.checkers.row(0)
    assert cw.classify(g, ch) == cw.CHECKER
    m1, m2 = g.measurement_bits()
    d1 = cw.solve_codeword(g, pauli("Z1Z2", 3), pauli("I1", 3), {m1: 1, m2: 0})
    assert cw.classify(g, d1 ^ ch) == cw.DETECTOR


def test_propagator_theorem_statement():
    # A codeword is incoherent exactly when its boundary operators commute
    # with those of every codeword; checked exhaustively on small circuits.
    rng = random.Random(6)
    tested = 0
    while tested < 8:
        c = random_circuit(rng.randrange(1, 4), rng.randrange(1, 6), rng)
        g = build_plain(c)
        spaces = cw.code_spaces(g)
        k = spaces.kernel
        if not 1 <= k.n_rows <= 9:
            continue
        tested += 1
        basis = list(k.row_vectors())
        for coeffs in itertools.product([0, 1], repeat=len(basis)):
            v = BitVector(g.n_bits)
            for b, take in zip(basis, coeffs):
                if take:
                    v ^= b
            s_in = cw.sigma_at_layer(g, v, 0)
            s_out = cw.sigma_at_layer(g, v, g.depth)
            commuting = all(
                s_in.commutes_with(cw.sigma_at_layer(g, b, 0))
                and s_out.commutes_with(cw.sigma_at_layer(g, b, g.depth))
                for b in basis
            )
            incoherent = spaces.incoherent.row_space_member(v)
            assert commuting == incoherent


def test_build_ec_structure_zz():
    c, g = zz_graph()
    zz = [pauli("Z1Z2", 3)]
    ec = cw.build_ec_structure(g, zz, zz)
    assert ec.b.n_rows == 3
    assert ec.l.n_rows == 2
    ins = BitMatrix.from_vectors([p.xz_vector() for p in ec.l_in])
    assert ins.row_space_member(pauli("X1X2", 3).xz_vector())
    assert ins.row_space_member(pauli("Z1", 3).xz_vector())
    # B rows are incoherent codewords of the expected kinds
    kinds = {cw.classify(g, r) for r in ec.b.row_vectors()}
    assert kinds <= {cw.CHECKER, cw.DETECTOR, cw.EMITTER, cw.PSEUDO_PROPAGATOR}


def test_build_ec_structure_rejects_noncommuting():
    _, g = zz_graph()
    with pytest.raises(ValueError):
        cw.build_ec_structure(g, [pauli("X1", 3), pauli("Z1", 3)], [])


def test_ec_structure_unitary_circuit():
    c = parse_circuit("qubits 2\ncnot 1 2\ntick\nh 1\n")
    g = build_plain(c)
    ec = cw.build_ec_structure(g, [], [])
    assert ec.b.n_rows == 0
    assert ec.l.n_rows == g.check_matrix().kernel_basis().n_rows


def test_complete_ec_structure():
    c, g = zz_graph()
    ec = cw.complete_ec_structure(g)
    spaces = cw.code_spaces(g)
    assert ec.b.n_rows + ec.l.n_rows == spaces.kernel.n_rows
    s_in_mat = BitMatrix.from_vectors(
        [p.xz_vector() for p in ec.s_in], n_cols=6
    )
    assert s_in_mat.row_space_equal(
        BitMatrix.from_vectors([pauli("Z1Z2", 3).xz_vector()])
    )


def test_derive_codes_from_b():
    c, g = zz_graph()
    ec = cw.build_ec_structure(g, [pauli("Z1Z2", 3)], [pauli("Z1Z2", 3)])
    s_in, s_out = cw.derive_codes_from_b(g, ec.b)
    m = BitMatrix.from_vectors([p.xz_vector() for p in s_in], n_cols=6)
    assert m.row_space_equal(BitMatrix.from_vectors([pauli("Z1Z2", 3).xz_vector()]))
    assert cw.derive_codes_from_b(g, BitMatrix.zeros(0, g.n_bits)) == ([], [])


def test_errors_equivalent():
    _, g = zz_graph()
    a = g.check_matrix()
    e = BitVector.from_indices(g.n_bits, [3])
    assert cw.errors_equivalent(a, e, e)
    row = a.row(0)
    assert cw.errors_equivalent(a, e, e ^ row)

    one = BitMatrix.from_rows([[1, 1, 0]])
    assert not cw.errors_equivalent(
        one, BitVector.from_bits([1, 0, 0]), BitVector.from_bits([0, 0, 1])
    )


def test_split_bit_errors_equivalent():
    # After splitting, single-bit errors on the two halves are equivalent
    # because the new degree-2 check row is exactly their sum.
    c = parse_circuit("qubits 1\ns 1\ntick\nh 1\n")
    g = build_plain(c)
    g2, w, maps = symmetrize(g, c)
    v2 = g2.n_bits - 1  # the added bit
    new_check = g2.n_checks - 1
    v, v2 = g2.checks[new_check]
    a2 = g2.check_matrix()
    e_v = BitVector.from_indices(g2.n_bits, [v])
    e_u = BitVector.from_indices(g2.n_bits, [v2])
    assert cw.errors_equivalent(a2, e_v, e_u)


def test_find_anticommuting_partner_zz():
    c, g = zz_graph()
    xx = cw.solve_codeword(g, pauli("X1X2", 3), pauli("X1X2", 3))
    partner = cw.find_anticommuting_partner(g, xx)
    s_in = cw.sigma_at_layer(g, partner, 0)
    s_out = cw.sigma_at_layer(g, partner, g.depth)
    assert not s_in.commutes_with(pauli("X1X2", 3))
    assert not s_out.commutes_with(pauli("X1X2", 3))


def test_find_anticommuting_partner_identity_wire():
    c = parse_circuit("qubits 1\ni 1\n")
    g = build_plain(c)
    x_line = cw.solve_codeword(g, pauli("X1", 1), pauli("X1", 1))
    partner = cw.find_anticommuting_partner(g, x_line)
    assert cw.sigma_at_layer(g, partner, 0).x == 0  # a Z-type line


def test_find_anticommuting_partner_random():
    rng = random.Random(11)
    found = 0
    while found < 6:
        c = random_circuit(4, rng.randrange(2, 7), rng, p_meas=0.05)
        g = build_plain(c)
        spaces = cw.code_spaces(g)
        genuine = None
        for v in spaces.kernel.row_vectors():
            if cw.classify(g, v) == cw.GENUINE_PROPAGATOR:
                genuine = v
                break
        if genuine is None:
            continue
        found += 1
        partner = cw.find_anticommuting_partner(g, genuine)
        a = cw.sigma_at_layer(g, genuine, 0)
        b = cw.sigma_at_layer(g, partner, 0)
        assert not a.commutes_with(b)


def test_b_and_l_dimension_bound():
    rng = random.Random(21)
    for _ in range(10):
        c = random_circuit(rng.randrange(1, 4), rng.randrange(1, 6), rng)
        g = build_plain(c)
        ec = cw.complete_ec_structure(g)
        k = cw.code_spaces(g).kernel
        assert ec.b.n_rows + ec.l.n_rows <= k.n_rows
