import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncnw.enumeration import iter_partitions
from ncnw.partitions import (
    Arc,
    ArcSet,
    ColoredDiagram,
    Convention,
    Kind,
    Mode,
    PartitionError,
    SetPartition,
    arcs,
    chain_sizes,
    class_flags,
    from_rgs,
    is_chain,
    make_partition,
    max_chain,
    max_chain_bruteforce,
    partition_from_arcs,
    red_nodes_under_black_crossing,
    reflect,
    to_rgs,
)

ONE, ZERO = Convention.ONE, Convention.ZERO
PHI_P = [[0, 4, 8, 15], [1, 3, 10], [2, 11], [5, 16], [6, 13], [7, 9, 12, 14]]
PHI_INV_P = [[0, 3, 5, 10, 13], [1, 6, 8, 12], [2, 9, 15], [4, 11, 16], [7, 14]]
MODES = [(m, k) for m in Mode for k in Kind]


def A(*pairs):
    return {Arc(l, r) for l, r in pairs}


# -- construction -----------------------------------------------------------


def test_make_partition_example():
    p = make_partition(6, [[1, 3], [2, 5, 6], [4]], ONE)
    assert len(p) == 3
    assert p.blocks == ((1, 3), (2, 5, 6), (4,))


def test_empty_partition():
    p = make_partition(0, [], ONE)
    assert len(p) == 0 and p.blocks == ()


def test_overlap_rejected_names_element():
    with pytest.raises(PartitionError, match="2"):
        make_partition(3, [[1, 2], [2, 3]], ONE)


def test_missing_and_out_of_range_rejected():
    with pytest.raises(PartitionError):
        make_partition(3, [[1, 2]], ONE)
    with pytest.raises(PartitionError):
        make_partition(2, [[0, 1]], ONE)


def test_blocks_are_canonicalized():
    p = make_partition(4, [[4, 2], [3, 1]], ONE)
    assert p.blocks == ((1, 3), (2, 4))
    assert str(p) == "{{1,3},{2,4}}"


def test_convention_shift_roundtrip():
    p = make_partition(4, [[1, 3], [2, 4]], ONE)
    z = p.to_convention(ZERO)
    assert z.blocks == ((0, 2), (1, 3))
    assert z.to_convention(ONE) == p


def test_json_roundtrip():
    p = make_partition(17, PHI_P, ZERO)
    assert SetPartition.from_json(json.loads(json.dumps(p.to_json()))) == p
    a = arcs(p)
    assert ArcSet.from_json(a.to_json()) == a


def test_rgs_roundtrip():
    for p in iter_partitions(5):
        assert from_rgs(to_rgs(p)) == p


# -- arcs -------------------------------------------------------------------


def test_arcs_example():
    p = make_partition(6, [[1, 3], [2, 5, 6], [4]], ONE)
    assert arcs(p).arcs == A((1, 3), (2, 5), (5, 6), (4, 4))


def test_arcs_all_loops():
    p = make_partition(3, [[1], [2], [3]], ONE)
    assert arcs(p).arcs == A((1, 1), (2, 2), (3, 3))


def test_arcs_of_phi_example():
    p = make_partition(17, PHI_P, ZERO)
    expected = A((0, 4), (4, 8), (8, 15), (1, 3), (3, 10), (2, 11), (5, 16), (6, 13), (7, 9), (9, 12), (12, 14))
    assert arcs(p).arcs == expected


def test_partition_from_arcs_examples():
    a = ArcSet(6, frozenset(A((1, 3), (2, 5), (5, 6), (4, 4))), ONE)
    assert partition_from_arcs(a) == make_partition(6, [[1, 3], [2, 5, 6], [4]], ONE)
    empty = ArcSet(3, frozenset(), ONE)
    assert partition_from_arcs(empty) == make_partition(3, [[1], [2], [3]], ONE)


def test_partition_from_arcs_rejects_two_incoming():
    with pytest.raises(PartitionError, match="3"):
        partition_from_arcs(ArcSet(3, frozenset(A((1, 3), (2, 3))), ONE))


def test_partition_from_arcs_rejects_loop_on_connected_node():
    with pytest.raises(PartitionError):
        partition_from_arcs(ArcSet(3, frozenset(A((1, 2), (2, 2))), ONE))


@pytest.mark.parametrize("n", range(0, 10))
def test_arcs_roundtrip_exhaustive(n):
    for p in iter_partitions(n):
        assert partition_from_arcs(arcs(p)) == p


@pytest.mark.parametrize("n", range(0, 8))
def test_arc_counts(n):
    for p in iter_partitions(n):
        a = arcs(p).arcs
        nonloops = [x for x in a if not x.is_loop]
        singletons = sum(1 for b in p.blocks if len(b) == 1)
        assert len(nonloops) == n - len(p)
        assert len(a) == len(nonloops) + singletons
        if all(len(b) <= 2 for b in p.blocks):
            assert len(a) == len(p)


# -- chains -----------------------------------------------------------------


def test_three_crossing_example():
    p = make_partition(6, [[1, 4], [2, 5], [3, 6]], ONE)
    size, w = max_chain(arcs(p), Mode.CROSSING, Kind.STRICT)
    assert size == 3
    assert w.arcs == (Arc(1, 4), Arc(2, 5), Arc(3, 6))


def test_weak_three_crossing_example():
    p = make_partition(5, [[1, 3, 5], [2, 4]], ONE)
    size, w = max_chain(arcs(p), Mode.CROSSING, Kind.ENHANCED)
    assert size == 3
    assert w.arcs == (Arc(1, 3), Arc(2, 4), Arc(3, 5))
    assert max_chain_bruteforce(arcs(p).arcs, Mode.CROSSING, Kind.ENHANCED)[0] == 3
    assert max_chain(arcs(p), Mode.CROSSING, Kind.STRICT)[0] == 2


@pytest.mark.parametrize("mode,kind", MODES)
def test_loops_only_size_zero(mode, kind):
    p = make_partition(3, [[1], [2], [3]], ONE)
    assert max_chain(arcs(p), mode, kind) == (0, None)


def test_enhanced_nesting_admits_loop_innermost():
    p = make_partition(3, [[1, 3], [2]], ONE)
    size, w = max_chain(arcs(p), Mode.NESTING, Kind.ENHANCED)
    assert size == 2 and Arc(2, 2) in w.arcs
    assert max_chain(arcs(p), Mode.NESTING, Kind.STRICT)[0] == 1


@pytest.mark.parametrize("n", range(0, 10))
def test_fast_chain_sizes_match_bruteforce(n):
    for p in iter_partitions(n):
        a = arcs(p).arcs
        slow = tuple(
            max_chain_bruteforce(a, m, k)[0]
            for m, k in [
                (Mode.CROSSING, Kind.STRICT),
                (Mode.CROSSING, Kind.ENHANCED),
                (Mode.NESTING, Kind.STRICT),
                (Mode.NESTING, Kind.ENHANCED),
            ]
        )
        assert chain_sizes(a) == slow, p


@pytest.mark.parametrize("n", range(1, 8))
def test_weak_only_matches_bruteforce(n):
    for p in iter_partitions(n):
        a = arcs(p).arcs
        for mode in Mode:
            assert max_chain(a, mode, Kind.WEAK)[0] == max_chain_bruteforce(a, mode, Kind.WEAK)[0]


@pytest.mark.parametrize("n", range(1, 8))
def test_witnesses_are_valid_chains(n):
    for p in iter_partitions(n):
        for mode, kind in MODES:
            size, w = max_chain(arcs(p), mode, kind)
            if size == 0:
                continue
            assert len(w.arcs) == size
            assert is_chain(w.arcs, mode, w.kind)
            if mode is Mode.CROSSING:
                assert not any(x.is_loop for x in w.arcs)


@pytest.mark.parametrize("n", range(1, 9))
def test_reflection_invariance(n):
    for p in iter_partitions(n):
        q = reflect(p)
        assert chain_sizes(arcs(p).arcs)[0] == chain_sizes(arcs(q).arcs)[0]
        assert chain_sizes(arcs(p).arcs)[2] == chain_sizes(arcs(q).arcs)[2]


@pytest.mark.parametrize("n", range(1, 9))
def test_crossing_nesting_equidistribution(n):
    for k in (2, 3, 4):
        nc = sum(chain_sizes(arcs(p).arcs)[0] < k for p in iter_partitions(n))
        nn = sum(chain_sizes(arcs(p).arcs)[2] < k for p in iter_partitions(n))
        assert nc == nn


# -- classes ----------------------------------------------------------------


def test_phi_example_is_in_bnw3():
    # (2,11),(3,10) nest, so the black arcs hold no 3-crossing
    p = make_partition(17, PHI_P, ZERO)
    assert not is_chain((Arc(2, 11), Arc(3, 10), Arc(6, 13)), Mode.CROSSING, Kind.STRICT)
    flags = class_flags(p, 3)
    assert flags.in_BNW is True


def test_class_flags_three_crossing():
    p = make_partition(6, [[1, 4], [2, 5], [3, 6]], ONE)
    flags = class_flags(p, 3)
    assert flags.in_NC is False and flags.in_NW is False and flags.in_BNW is None


def test_class_flags_singletons():
    p = make_partition(4, [[0], [1], [2], [3]], ZERO)
    for k in (2, 3, 5):
        assert class_flags(p, k) == class_flags(p, k).__class__(True, True, True)


def test_class_flags_rejects_small_k():
    with pytest.raises(PartitionError):
        class_flags(make_partition(1, [[1]], ONE), 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_containments(n):
    for p in iter_partitions(n):
        for k in (3, 4):
            if class_flags(p, k - 1).in_NC:
                assert class_flags(p, k).in_NW
            if class_flags(p, k).in_NW:
                assert class_flags(p, k).in_NC


def test_red_under_black_crossing_examples():
    d = ColoredDiagram.of(make_partition(17, PHI_P, ZERO))
    assert red_nodes_under_black_crossing(d, 2)[0] == 8
    d2 = ColoredDiagram.of(make_partition(17, PHI_INV_P, ZERO))
    assert red_nodes_under_black_crossing(d2, 3)[0] == 5
    only_red = ColoredDiagram.of(make_partition(4, [[0, 1, 2, 3]], ZERO))
    assert red_nodes_under_black_crossing(only_red, 1) == []


def test_colored_diagram_needs_zero_based():
    with pytest.raises(PartitionError):
        ColoredDiagram.of(make_partition(2, [[1, 2]], ONE))


@st.composite
def partitions(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    rgs, top = [], -1
    for _ in range(n):
        x = draw(st.integers(0, top + 1))
        rgs.append(x)
        top = max(top, x)
    return from_rgs(rgs, ONE)


@settings(max_examples=200, deadline=None)
@given(partitions())
def test_property_roundtrip_and_oracle(p):
    a = arcs(p)
    assert partition_from_arcs(a) == p
    assert chain_sizes(a.arcs)[1] == max_chain_bruteforce(a.arcs, Mode.CROSSING, Kind.ENHANCED)[0]
