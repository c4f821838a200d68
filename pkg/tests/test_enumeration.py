import pytest

from ncnw import bijections as bij
from ncnw.enumeration import (
    MotzkinError,
    PartitionClass,
    arc_counts,
    class_poly,
    euler_rhs,
    gamma_expansion,
    is_motzkin_word,
    iter_class,
    iter_partitions,
    iter_rgs,
    matching_to_motzkin,
    motzkin_to_matching,
    search_nesting_counterexample,
    shard_prefixes,
    stats_table,
    verify_donaghey,
    verify_euler,
    verify_gamma,
    verify_stirling,
)
from ncnw.numbers import bell, binomial, catalan, gamma, motzkin, number, stirling2
from ncnw.partitions import Convention, make_partition
from ncnw.polynomial import ONE, T, Polynomial

NC, NW, BNW, NONNEST = (
    PartitionClass.NC,
    PartitionClass.NW,
    PartitionClass.BNW,
    PartitionClass.NONNEST_ENH,
)


def P(*coeffs):
    return Polynomial(tuple(coeffs))


# -- numbers ------------------------------------------------------------------


def test_numbers_examples():
    assert catalan(5) == 42
    assert gamma(5, 1) == 6 and gamma(5, 2) == 2
    assert gamma(6, 1) == 10
    assert stirling2(4, 2) == 7
    assert [motzkin(i) for i in range(6)] == [1, 1, 2, 4, 9, 21]
    assert bell(10) == 115975
    assert number("CATALAN", 5) == 42
    with pytest.raises(ValueError):
        number("catalan", 1, 2)
    with pytest.raises(ValueError):
        number("fibonacci", 3)


def test_stirling_recurrence_example():
    assert stirling2(4, 2) == 3 * stirling2(1, 1) + 3 * stirling2(2, 1) + stirling2(3, 1)


# -- enumeration ------------------------------------------------------------


@pytest.mark.parametrize("n", range(0, 9))
def test_bell_counts_and_order(n):
    words = list(iter_rgs(n))
    assert len(words) == bell(n)
    assert words == sorted(words)
    assert len(set(words)) == len(words)


def test_small_enumerations():
    assert len(list(iter_partitions(3))) == 5
    assert [p.blocks for p in iter_partitions(0)] == [()]


def test_shards_tile_the_space():
    n = 7
    tiled = [w for prefix in shard_prefixes(n, 4) for w in iter_rgs(n, prefix)]
    assert tiled == list(iter_rgs(n))


def test_bad_prefix_rejected():
    with pytest.raises(ValueError):
        list(iter_rgs(4, (0, 2)))


def test_class_poly_examples():
    assert class_poly(5, 2, NC) == P(0, 1, 10, 20, 10, 1)
    assert class_poly(3, 2, NW) == P(0, 0, 3, 1)
    for cls in PartitionClass:
        assert class_poly(0, 3, cls) == ONE


def test_class_poly_rejects_small_k():
    with pytest.raises(ValueError):
        class_poly(3, 1, NC)


def test_iter_class_matches_poly():
    members = list(iter_class(6, 3, BNW))
    assert len(members) == class_poly(6, 3, BNW)(1)
    assert all(bij.in_bnw(p, 3) for p in members)


@pytest.mark.parametrize("n", range(0, 11))
def test_catalan_and_motzkin_counts(n):
    assert class_poly(n, 2, NC)(1) == catalan(n)
    assert class_poly(n, 2, NW)(1) == motzkin(n)


@pytest.mark.parametrize("n", range(1, 11))
def test_narayana_is_palindromic(n):
    c = class_poly(n, 2, NC).coeffs
    assert c[1:] == c[1:][::-1]


@pytest.mark.parametrize("n", range(1, 9))
def test_blocks_equal_arcs_plus_one_on_noncrossing(n):
    # sum over NC_n of t^|P| equals the same sum of t^(n - nonloop arcs)
    by_blocks = [0] * (n + 1)
    by_arcs = [0] * (n + 1)
    for p in iter_partitions(n):
        if bij.in_nc(p, 2):
            by_blocks[len(p)] += 1
            by_arcs[n - arc_counts(p)[1]] += 1
    assert by_blocks == by_arcs


@pytest.mark.parametrize("n", range(0, 9))
def test_pruned_route_matches_table(n):
    # n above the exhaustive cap takes the pruned route; here force both ways
    from ncnw.enumeration import _hereditary_poly

    for k in (2, 3, 4):
        for cls in (NC, NW, BNW):
            assert _hereditary_poly(n, k, cls) == class_poly(n, k, cls)


def test_sharded_equals_unsharded():
    assert stats_table(8, jobs=4) == stats_table(8, jobs=1)
    assert verify_euler(6, 3, jobs=4).to_json() == verify_euler(6, 3, jobs=1).to_json()


def test_size_cap():
    with pytest.raises(ValueError, match="capped"):
        stats_table(30)


# -- identities ---------------------------------------------------------------


def test_euler_example():
    r = verify_euler(3, 2)
    assert r.equal and r.mismatch is None
    assert list(r.lhs.coeffs) == [0, 1, 6, 6, 1]
    assert r.to_json()["lhs"]["coeffs"] == ["0", "1", "6", "6", "1"]
    assert euler_rhs(3, 2, NONNEST) == P(0, 1, 7, 5, 1)


@pytest.mark.parametrize("n", range(1, 10))
def test_euler_identity(n):
    for k in range(2, 7):
        assert verify_euler(n, k).equal, (n, k)


def test_euler_via_bijection_double_count():
    for m in range(1, 8):
        for k in (2, 3, 4):
            counts = [0] * (m + 1)
            for p in iter_partitions(m, Convention.ZERO):
                if bij.in_bnw(p, k):
                    counts[len(bij.phi(p, k)[0])] += 1
            assert Polynomial(tuple(counts)) == class_poly(m, k, NC)


def test_gamma_examples():
    assert gamma_expansion(4) == P(0, 1, 10, 20, 10, 1)
    assert gamma_expansion(4) == T * (ONE + T) ** 4 + 6 * T**2 * (ONE + T) ** 2 + 2 * T**3
    r3 = verify_gamma(3)
    assert r3.equal and r3.parts[0].lhs == P(0, 0, 3, 1)
    assert gamma_expansion(0) == T


@pytest.mark.parametrize("n", range(0, 11))
def test_gamma_identity(n):
    assert verify_gamma(n).equal


@pytest.mark.parametrize("n", range(1, 9))
def test_stirling_identity(n):
    r = verify_stirling(n)
    assert r.equal
    assert len(r.parts) == 2


def test_donaghey_examples():
    r = verify_donaghey(3)
    assert r.lhs == P(14) and r.equal
    assert verify_donaghey(0).lhs == P(1)


@pytest.mark.parametrize("n", range(0, 15))
def test_donaghey_identity(n):
    r = verify_donaghey(n)
    assert r.equal
    assert bool(r.parts) == (n <= 9)


def test_nesting_gap():
    gap = search_nesting_counterexample(4)
    w = gap.witness
    assert w is not None and w.params == {"n": 3, "k": 2}
    assert w.lhs == P(0, 1, 6, 6, 1)
    assert w.rhs == P(0, 1, 7, 5, 1)
    assert w.lhs(1) == w.rhs(1) == 14
    assert gap.agree_at_one
    assert search_nesting_counterexample(1).witness is None


def test_report_json_has_no_timing_by_default():
    r = verify_euler(4, 3)
    assert "seconds" not in r.to_json()
    assert "seconds" in r.to_json(timing=True)


# -- Motzkin paths ----------------------------------------------------------


def test_motzkin_figure():
    p = make_partition(12, [[1, 9], [2, 3], [4, 8], [5, 6], [7], [10, 12], [11]])
    assert matching_to_motzkin(p) == "UUDUUDHDDUHD"
    assert motzkin_to_matching("UUDUUDHDDUHD") == p


def test_motzkin_small():
    assert matching_to_motzkin(make_partition(3, [[1], [2], [3]])) == "HHH"
    assert motzkin_to_matching("UUDD") == make_partition(4, [[1, 4], [2, 3]])


def test_motzkin_errors():
    with pytest.raises(MotzkinError):
        matching_to_motzkin(make_partition(3, [[1, 2, 3]]))
    with pytest.raises(MotzkinError):
        matching_to_motzkin(make_partition(4, [[1, 3], [2, 4]]))
    with pytest.raises(MotzkinError):
        motzkin_to_matching("UDD")
    assert not is_motzkin_word("DU")


@pytest.mark.parametrize("n", range(0, 10))
def test_motzkin_roundtrip_and_up_steps(n):
    ups = [0] * (n + 1)
    for p in iter_partitions(n):
        if all(len(b) <= 2 for b in p.blocks) and bij.in_nc(p, 2):
            w = matching_to_motzkin(p)
            assert motzkin_to_matching(w) == p
            assert w.count("H") == sum(len(b) == 1 for b in p.blocks)
            ups[w.count("U")] += 1
    assert ups == [gamma(n + 1, i) for i in range(n + 1)]


def test_polynomial_basics():
    a = P(1, 2)
    assert a * a == P(1, 4, 4)
    assert (a + P(0, -2)).degree == 0
    assert str(P(0, 1, 10)) == "t + 10t^2"
    assert Polynomial.from_json(a.to_json()) == a
    assert P(1, 2, 3).first_mismatch(P(1, 5, 3)) == 1
