from fractions import Fraction
from math import factorial

import pytest

from fploops import linkpat as lp

# Catalan numbers straight from the factorial formula, independent of the
# enumeration code.
CATALAN = {n: factorial(2 * n) // (factorial(n) * factorial(n + 1)) for n in range(1, 12)}


class TestEnumeration:
    def test_counts_match_factorial_formula(self):
        for n in range(1, 9):
            assert len(lp.enumerate_matches(n)) == CATALAN[n]

    def test_table_values(self):
        assert len(lp.enumerate_link_patterns(3)) == 5
        assert len(lp.enumerate_link_patterns(10)) == 16796

    def test_n1_unique(self):
        assert lp.enumerate_link_patterns(1) == [lp.LinkPattern((1, 0))]

    def test_sorted_unique_valid(self):
        for n in range(1, 7):
            ms = lp.enumerate_matches(n)
            assert list(ms) == sorted(set(ms))
            assert all(lp.is_noncrossing_matching(m) for m in ms)

    def test_rejects_n0(self):
        with pytest.raises(ValueError):
            lp.enumerate_link_patterns(0)


class TestLinkPattern:
    def test_invalid_matchings_rejected(self):
        with pytest.raises(ValueError):
            lp.LinkPattern((1, 0, 2, 3))  # fixed points
        with pytest.raises(ValueError):
            lp.LinkPattern((2, 3, 0, 1))  # crossing
        with pytest.raises(ValueError):
            lp.LinkPattern((1, 0, 3))  # odd length

    def test_pair_text_roundtrip(self):
        p = lp.LinkPattern.from_text("(1 6)(2 3)(4 5)")
        assert p.pairs() == [(1, 6), (2, 3), (4, 5)]
        assert lp.LinkPattern.from_text("(1,6)(2,3)(4,5)") == p

    def test_word_text(self):
        # the arch-over-two-small-arches pattern prints as nested parens
        assert lp.LinkPattern.from_text("(1 6)(2 3)(4 5)").to_text() == "(()())"
        assert lp.LinkPattern.from_text("(()())").pairs() == [(1, 6), (2, 3), (4, 5)]

    def test_has_arch(self):
        p = lp.LinkPattern.from_text("(1 2)(3 6)(4 5)")
        assert p.has_arch(3, 6) and p.has_arch(6, 3)
        assert not p.has_arch(1, 6)

    def test_bad_text(self):
        with pytest.raises(ValueError):
            lp.LinkPattern.from_text("  \n ")
        with pytest.raises(ValueError):
            lp.LinkPattern.from_text("(1 2)(3 4 5)")


class TestDihedralAction:
    def test_rotation_by_one(self):
        p = lp.LinkPattern.from_text("(1 2)(3 4)(5 6)")
        q = lp.act(lp.DihedralElement(3, 1), p)
        assert q.pairs() == [(1, 6), (2, 3), (4, 5)]

    def test_identity(self):
        for p in lp.enumerate_link_patterns(3):
            assert lp.act(lp.DihedralElement.identity(3), p) == p

    def test_rotation_by_two_fixes_small_arches(self):
        p = lp.LinkPattern.from_text("(1 2)(3 4)(5 6)")
        assert lp.act(lp.DihedralElement(3, 2), p) == p

    def test_group_order(self):
        for n in (2, 3, 5):
            perms = {g.perm() for g in lp.dihedral_group(n)}
            assert len(perms) == 4 * n

    def test_composition_exhaustive(self):
        group = lp.dihedral_group(3)
        pats = lp.enumerate_link_patterns(3)
        for g in group:
            for h in group:
                gh = g * h
                for p in pats:
                    assert lp.act(g, lp.act(h, p)) == lp.act(gh, p)

    def test_inverse(self):
        for g in lp.dihedral_group(4):
            assert (g * g.inverse()).perm() == lp.DihedralElement.identity(4).perm()

    def test_element_order_divides_group_order(self):
        for g in lp.dihedral_group(4):
            acc = lp.DihedralElement.identity(4)
            for _ in range(16):
                acc = acc * g
            assert acc.perm() == lp.DihedralElement.identity(4).perm()

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            lp.act(lp.DihedralElement(2, 1), lp.nested_pattern(3))


class TestOrbits:
    def test_orbit_counts(self):
        for n, expected in [(1, 1), (2, 1), (3, 2), (4, 3), (5, 6), (6, 12), (7, 27)]:
            assert len(lp.orbits(n)) == expected

    def test_n3_sizes(self):
        assert sorted(o.size for o in lp.orbits(3)) == [2, 3]

    def test_partition_properties(self):
        for n in range(1, 7):
            orbs = lp.orbits(n)
            members = [p.match for o in orbs for p in o.members]
            assert sorted(members) == list(lp.enumerate_matches(n))
            for o in orbs:
                assert (4 * n) % o.size == 0
                assert o.representative == min(o.members)
                assert o.representative.match == lp.canonical_match(o.representative.match)

    def test_orbit_index_consistency(self):
        orbs = lp.orbits(4)
        for k, o in enumerate(orbs):
            for p in o.members:
                assert lp.orbit_index(p) == k


class TestDyckWords:
    def test_nested_word(self):
        assert lp.nested_pattern(4).dyck() == "UUUUDDDD"

    def test_small_arches_word(self):
        assert lp.LinkPattern.from_text("(1 2)(3 4)(5 6)").dyck() == "UDUDUD"

    def test_mixed_word(self):
        assert lp.LinkPattern.from_text("(1 2)(3 6)(4 5)").dyck() == "UDUUDD"

    def test_word_pattern_roundtrip(self):
        for n in range(1, 7):
            for p in lp.enumerate_link_patterns(n):
                assert lp.pattern_of_dyck(p.dyck()) == p

    def test_basepoint_words_are_rotations(self):
        p = lp.LinkPattern.from_text("(1 2)(3 6)(4 5)")
        # every basepoint yields a balanced word of the same length
        for b in range(1, 7):
            w = p.dyck(basepoint=b)
            assert len(w) == 6 and w.count("U") == 3
        with pytest.raises(ValueError):
            p.dyck(basepoint=7)

    def test_unbalanced_words_rejected(self):
        for bad in ("UD D", "DU", "UUD", "UDDU"):
            with pytest.raises(ValueError):
                lp.pattern_of_dyck(bad)


def _word_inversions(word: str) -> int:
    # Independent box-count oracle: area between the word's path and the
    # fully nested one, counted as (D, U) inversion pairs.
    inv = 0
    downs_seen = 0
    for ch in word:
        if ch == "D":
            downs_seen += 1
        else:
            inv += downs_seen
    return inv


class TestYoungEncoding:
    def test_anchor_words(self):
        assert lp.dyck_to_young("UUUUDDDD").rows == ()
        assert lp.dyck_to_young("UDUDUDUD").rows == (3, 2, 1)

    def test_frozen_shapes(self):
        # area-complement convention at n=3 (boxes equal the inversion count)
        assert lp.dyck_to_young("UDUUDD").rows == (2,)
        assert lp.dyck_to_young("UUDDUD").rows == (1, 1)
        assert lp.dyck_to_young("UUDUDD").rows == (1,)

    def test_boxes_equal_inversion_oracle(self):
        for n in range(1, 7):
            for p in lp.enumerate_link_patterns(n):
                w = p.dyck()
                assert lp.dyck_to_young(w).boxes == _word_inversions(w)

    def test_bijection_per_size(self):
        for n in range(1, 7):
            images = {lp.dyck_to_young(p.dyck()).rows for p in lp.enumerate_link_patterns(n)}
            assert len(images) == CATALAN[n]

    def test_roundtrip_through_diagram(self):
        for n in range(1, 7):
            for p in lp.enumerate_link_patterns(n):
                w = p.dyck()
                assert lp.young_to_dyck(lp.dyck_to_young(w), n) == w

    def test_diagram_too_large(self):
        with pytest.raises(ValueError):
            lp.young_to_dyck(lp.YoungDiagram((3,)), 3)  # needs n >= 4


class TestYoungDiagram:
    def test_validation(self):
        with pytest.raises(ValueError):
            lp.YoungDiagram((1, 2))
        with pytest.raises(ValueError):
            lp.YoungDiagram((2, 0))

    def test_hook_products(self):
        assert lp.YoungDiagram((1,)).hook_product() == 1
        assert lp.YoungDiagram((2, 1)).hook_product() == 3
        assert lp.YoungDiagram((2, 2)).hook_product() == 12

    def test_dim_examples(self):
        assert lp.YoungDiagram((1,)).dim() == 1
        assert lp.YoungDiagram((2, 1)).dim() == 2
        assert lp.YoungDiagram((2, 2)).dim() == 2

    def test_dim_against_branching_recursion(self):
        # Independent oracle: the number of standard fillings satisfies
        # f(Y) = sum of f over diagrams with one corner removed.
        def brute_dim(rows: tuple[int, ...]) -> int:
            if not rows:
                return 1
            total = 0
            for i in range(len(rows)):
                if rows[i] > (rows[i + 1] if i + 1 < len(rows) else 0):
                    smaller = list(rows)
                    smaller[i] -= 1
                    if smaller[-1] == 0:
                        smaller.pop()
                    total += brute_dim(tuple(smaller))
            return total

        for b in range(0, 9):
            for rows in _partitions(b):
                assert lp.YoungDiagram(rows).dim() == brute_dim(rows)

    def test_dim_times_hook_product(self):
        for b in range(0, 11):
            for rows in _partitions(b):
                y = lp.YoungDiagram(rows)
                assert y.dim() * y.hook_product() == factorial(b)

    def test_add_box(self):
        assert [d.rows for d in lp.YoungDiagram().add_box()] == [(1,)]
        assert [d.rows for d in lp.YoungDiagram((1,)).add_box()] == [(2,), (1, 1)]
        assert [d.rows for d in lp.YoungDiagram((2, 1)).add_box()] == [(3, 1), (2, 2), (2, 1, 1)]

    def test_box_addition_identity(self):
        # dim(Y)/|Y|! summed over the one-box extensions of Y gives dim(Y)/|Y|!.
        for b in range(0, 11):
            for rows in _partitions(b):
                y = lp.YoungDiagram(rows)
                lhs = Fraction(y.dim(), factorial(b))
                rhs = sum(
                    Fraction(z.dim(), factorial(b + 1)) for z in y.add_box()
                )
                assert lhs == rhs

    def test_transpose(self):
        assert lp.YoungDiagram((3, 1)).transpose().rows == (2, 1, 1)
        assert lp.YoungDiagram((3, 1)).transpose().dim() == lp.YoungDiagram((3, 1)).dim()

    def test_min_arches(self):
        assert lp.YoungDiagram().min_arches() == 0
        assert lp.YoungDiagram((1,)).min_arches() == 2
        assert lp.YoungDiagram((2,)).min_arches() == 3
        assert lp.YoungDiagram((1, 1)).min_arches() == 3
        assert lp.YoungDiagram.staircase(5).min_arches() == 5

    def test_text_roundtrip(self):
        assert lp.YoungDiagram.from_text("3,2,1").rows == (3, 2, 1)
        assert lp.YoungDiagram.from_text("").rows == ()
        assert lp.YoungDiagram((3, 2, 1)).to_text() == "3,2,1"


class TestYoungPairPatterns:
    def test_both_empty_gives_nested(self):
        e = lp.YoungDiagram()
        for n in (1, 3, 5):
            assert lp.pattern_from_young_pair(e, e, n) == lp.nested_pattern(n)

    def test_staircase_gives_small_arches(self):
        e = lp.YoungDiagram()
        for n in (2, 3, 4, 6):
            p = lp.pattern_from_young_pair(lp.YoungDiagram.staircase(n), e, n)
            assert p == lp.LinkPattern.from_text("()" * n)

    def test_single_box_family(self):
        # one box plus a growing wrap: the small-arch family (two unit bundles
        # beside the growing bundle)
        p = lp.pattern_from_young_pair(lp.YoungDiagram((1,)), lp.YoungDiagram(), 3)
        assert p.dyck() == "UDUDUD"

    def test_two_cluster_word_layout(self):
        p = lp.pattern_from_young_pair(lp.YoungDiagram((1,)), lp.YoungDiagram((1,)), 5)
        assert p.dyck() == "UDUD" + "U" + "UDUD" + "D"

    def test_too_small_n(self):
        with pytest.raises(ValueError):
            lp.pattern_from_young_pair(lp.YoungDiagram((1,)), lp.YoungDiagram((1,)), 3)


def _partitions(total: int):
    if total == 0:
        yield ()
        return
    def build(remaining, cap, prefix):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from build(remaining - part, part, prefix + (part,))
    yield from build(total, total, ())
