"""Symmetric splitting: replace dual vertex pairs by symmetric trees.

Each dual pair (bit v, check a) of a symmetric Tanner graph is replaced by a
bit tree and a check tree built from one template tree; neighbourhood subsets
decide where the original edges attach. The transformation preserves the
bit-check symmetry and the code, and can only shrink the circuit code
distance by a factor bounded by half the maximum input degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf2 import BitMatrix, BitVector
from .tanner import CodeMaps, SymmetryWitness, TannerGraph, VertexLabel, verify_symmetry


@dataclass
class PairPlan:
    bit: int
    check: int
    subsets: list[list[int]]  # partition of the check's bit neighbourhood
    tree: list[tuple[int, int]]  # template-tree edges on subset indices

    @property
    def order(self) -> int:
        return len(self.subsets)


@dataclass
class SplitPlan:
    pairs: dict[int, PairPlan]  # keyed by check index

    def validate(self, g: TannerGraph, w: SymmetryWitness) -> None:
        if set(self.pairs) != set(w.dual):
            raise ValueError("plan must cover every dual pair exactly once")
        for a, pp in self.pairs.items():
            if w.dual[a] != pp.bit or pp.check != a:
                raise ValueError("plan pair does not match the witness pairing")
            neigh = set(g.checks[a])
            seen: set[int] = set()
            for sub in pp.subsets:
                for u in sub:
                    if u in seen:
                        raise ValueError(f"subset partition of check {a} overlaps")
                    seen.add(u)
            if seen != neigh:
                raise ValueError(f"subsets of check {a} must cover its neighbourhood")
            r = pp.order
            if len(pp.tree) != r - 1:
                raise ValueError(f"template of pair {a} is not a tree")
            if r > 1:
                adj = {i: set() for i in range(r)}
                for i, j in pp.tree:
                    if not (0 <= i < r and 0 <= j < r) or i == j:
                        raise ValueError(f"bad template edge ({i},{j})")
                    adj[i].add(j)
                    adj[j].add(i)
                seen_v = {0}
                stack = [0]
                while stack:
                    x = stack.pop()
                    for y in adj[x]:
                        if y not in seen_v:
                            seen_v.add(y)
                            stack.append(y)
                if len(seen_v) != r:
                    raise ValueError(f"template of pair {a} is disconnected")


def trivial_plan(g: TannerGraph, w: SymmetryWitness) -> SplitPlan:
    pairs = {
        a: PairPlan(v, a, [sorted(g.checks[a])], [])
        for a, v in w.dual.items()
    }
    return SplitPlan(pairs)


def random_plan(
    g: TannerGraph, w: SymmetryWitness, rng: random.Random, max_order: int = 4
) -> SplitPlan:
    pairs = {}
    for a, v in w.dual.items():
        neigh = sorted(g.checks[a])
        r = rng.randrange(1, max(2, min(max_order, max(1, len(neigh))) + 1))
        members = neigh[:]
        rng.shuffle(members)
        subsets: list[list[int]] = [[] for _ in range(r)]
        for i, u in enumerate(members):
            subsets[i % r].append(u)
        for sub in subsets:
            sub.sort()
        tree = [(rng.randrange(i), i) for i in range(1, r)]
        pairs[a] = PairPlan(v, a, subsets, tree)
    return SplitPlan(pairs)


def path_plan(g: TannerGraph, w: SymmetryWitness, order: dict[int, int]) -> SplitPlan:
    """Plans whose templates are paths with one neighbour subset per vertex."""
    pairs = {}
    for a, v in w.dual.items():
        neigh = sorted(g.checks[a])
        r = max(1, min(order.get(a, 1), len(neigh) if neigh else 1))
        subsets: list[list[int]] = [[] for _ in range(r)]
        for i, u in enumerate(neigh):
            subsets[min(i, r - 1)].append(u)
        tree = [(i, i + 1) for i in range(r - 1)]
        pairs[a] = PairPlan(v, a, subsets, tree)
    return SplitPlan(pairs)


def symmetric_split(
    g: TannerGraph, w: SymmetryWitness, plan: SplitPlan
) -> tuple[TannerGraph, SymmetryWitness, CodeMaps]:
    """Apply the plan; returns the new graph, its witness, and the maps."""
    problems = verify_symmetry(g, w)
    if problems:
        raise ValueError("input graph is not symmetric: " + problems[0])
    plan.validate(g, w)
    check_of_bit = w.check_of_bit()
    long_set = set(w.long_terminals)

    new_bits: list[VertexLabel] = []
    bit_rows: list[int] = []  # codeword-map row per new bit (over old coords)
    err_rows: list[int] = []
    bit_tree_pos: dict[tuple[int, int], int] = {}
    edge_bit_pos: dict[tuple[int, tuple[int, int]], int] = {}
    long_pos: dict[int, int] = {}
    serial = 0

    pair_order = sorted(plan.pairs.values(), key=lambda p: p.bit)

    # subtree loads: value carried by a check-tree edge bit, over old coords
    def edge_vectors(pp: PairPlan) -> dict[tuple[int, int], int]:
        r = pp.order
        loads = []
        for sub in pp.subsets:
            vec = 0
            for u in sub:
                vec ^= 1 << u
            loads.append(vec)
        adj = {i: [] for i in range(r)}
        for i, j in pp.tree:
            adj[i].append(j)
            adj[j].append(i)
        parent = {0: None}
        order = [0]
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in parent:
                    parent[y] = x
                    order.append(y)
                    stack.append(y)
        # accumulate subtree loads bottom-up: an edge bit carries the sum of
        # every leaf value hanging below it
        total = [loads[i] for i in range(r)]
        for x in reversed(order):
            p = parent[x]
            if p is not None:
                total[p] ^= total[x]
        out = {}
        for i, j in pp.tree:
            child = j if parent.get(j) == i else i
            out[(i, j)] = total[child]
        return out

    for pp in pair_order:
        v = pp.bit
        for i in range(pp.order):
            bit_tree_pos[(v, i)] = len(new_bits)
            new_bits.append(VertexLabel("s", 0, -1, serial))
            serial += 1
            bit_rows.append(1 << v)
            err_rows.append((1 << v) if i == 0 else 0)
        vectors = edge_vectors(pp)
        for e in pp.tree:
            edge_bit_pos[(pp.check, e)] = len(new_bits)
            new_bits.append(VertexLabel("s", 0, -1, serial))
            serial += 1
            bit_rows.append(vectors[e])
            err_rows.append(0)
    for t in sorted(long_set):
        long_pos[t] = len(new_bits)
        new_bits.append(g.bits[t])
        bit_rows.append(1 << t)
        err_rows.append(1 << t)

    checks: list[tuple[int, ...]] = []
    dual: dict[int, int] = {}

    def subset_index(pp: PairPlan, member: int) -> int:
        for i, sub in enumerate(pp.subsets):
            if member in sub:
                return i
        raise AssertionError("member not found in plan subsets")

    for pp in pair_order:
        a, v = pp.check, pp.bit
        members_by_vertex: dict[int, list[int]] = {i: [] for i in range(pp.order)}
        for u in g.checks[a]:
            i = subset_index(pp, u)
            if u in long_set:
                members_by_vertex[i].append(long_pos[u])
            else:
                # inter-tree edge: the bit tree of u attaches at the subset of
                # u's own partition that contains the dual bit of this check
                j = _bit_side_index(plan, check_of_bit, u, v)
                members_by_vertex[i].append(bit_tree_pos[(u, j)])
        for i in range(pp.order):
            cid = len(checks)
            members = list(members_by_vertex[i])
            for e in pp.tree:
                if i in e:
                    members.append(edge_bit_pos[(pp.check, e)])
            checks.append(tuple(sorted(members)))
            dual[cid] = bit_tree_pos[(v, i)]
        for e in pp.tree:
            cid = len(checks)
            i, j = e
            checks.append(
                tuple(sorted((bit_tree_pos[(v, i)], bit_tree_pos[(v, j)])))
            )
            dual[cid] = edge_bit_pos[(pp.check, e)]

    g2 = TannerGraph(new_bits, checks)
    w2 = SymmetryWitness(dual, frozenset(long_pos.values()))
    maps = CodeMaps(
        BitMatrix(len(new_bits), g.n_bits, bit_rows),
        BitMatrix(len(new_bits), g.n_bits, err_rows),
    )
    return g2, w2, maps


def _bit_side_index(plan: SplitPlan, check_of_bit: dict[int, int], u: int, v: int) -> int:
    """Subset index of bit u's partition that contains the dual bit v."""
    u_pair = plan.pairs[check_of_bit[u]]
    for i, sub in enumerate(u_pair.subsets):
        if v in sub:
            return i
    raise AssertionError("dual bit missing from the partner plan")


def map_codeword(maps: CodeMaps, c: BitVector) -> BitVector:
    return maps.map_codeword(c)


def map_error(maps: CodeMaps, e: BitVector) -> BitVector:
    return maps.map_error(e)


@dataclass
class DistanceBoundReport:
    before: object
    after: object
    g_max: int
    ok_lower: bool
    ok_upper: bool

    @property
    def ok(self) -> bool:
        return self.ok_lower and self.ok_upper


def check_distance_bound(
    g: TannerGraph,
    g2: TannerGraph,
    b: BitMatrix,
    l: BitMatrix,
    maps: CodeMaps,
    max_weight: int = 6,
) -> DistanceBoundReport:
    """Compare distances across a split: d' in [d / floor(g_max/2), d]."""
    from .distance import circuit_distance

    d1 = circuit_distance(b, l, max_weight)
    b2 = maps.map_matrix(b)
    l2 = maps.map_matrix(l)
    d2 = circuit_distance(b2, l2, max_weight)
    g_max = g.max_degree()
    factor = max(1, g_max // 2)
    # flag only genuine refutations; an unresolved search cannot violate
    ok_lower = True
    ok_upper = True
    if d1.exact and d2.exact:
        ok_lower = d2.value * factor >= d1.value
        ok_upper = d2.value <= d1.value
    elif d1.exact and not d2.exact:
        # true d2 exceeds its cap, so d2 <= d1 fails when d1 is within it
        ok_upper = d1.value > d2.max_weight
    elif d2.exact and not d1.exact:
        # true d1 exceeds its cap, so the factor bound needs d2*factor past it
        ok_lower = d2.value * factor >= d1.lower_bound
    return DistanceBoundReport(d1, d2, g_max, ok_lower, ok_upper)


# ---------------------------------------------------------------------------
# Plan files


def write_plan(g: TannerGraph, plan: SplitPlan) -> str:
    lines = []
    for a in sorted(plan.pairs):
        pp = plan.pairs[a]
        subs = ";".join(
            " ".join(g.bits[u].name for u in sub) for sub in pp.subsets
        )
        tree = " ".join(f"{i}-{j}" for i, j in pp.tree)
        lines.append(
            f"pair {g.bits[pp.bit].name} c{a} : subsets {subs} ; tree {tree}"
        )
    return "\n".join(lines) + "\n"


def read_plan(g: TannerGraph, text: str) -> SplitPlan:
    name_to_bit = {lab.name: i for i, lab in enumerate(g.bits)}
    pairs = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        fields = head.split()
        if len(fields) != 3 or fields[0] != "pair":
            raise ValueError(f"bad plan line {line!r}")
        bit = name_to_bit[fields[1]]
        check = int(fields[2].lstrip("c"))
        # subset separators carry no spaces; " ; " separates the tree part
        subs_part, _, tree_part = rest.partition(" ; ")
        subs_tokens = subs_part.split(None, 1)
        if not subs_tokens or subs_tokens[0] != "subsets":
            raise ValueError(f"bad plan line {line!r}")
        subs_text = subs_tokens[1] if len(subs_tokens) > 1 else ""
        subsets = []
        for chunk in subs_text.split(";"):
            names = chunk.split()
            subsets.append([name_to_bit[nm] for nm in names])
        tree_tokens = tree_part.split()
        if not tree_tokens or tree_tokens[0] != "tree":
            raise ValueError(f"bad plan line {line!r}")
        tree = []
        for tok in tree_tokens[1:]:
            i, _, j = tok.partition("-")
            tree.append((int(i), int(j)))
        pairs[check] = PairPlan(bit, check, subsets, tree)
    return SplitPlan(pairs)
