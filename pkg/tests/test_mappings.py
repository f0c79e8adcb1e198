"""Tests for diagram mappings, permutation groups, and triple enumeration."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hwvbases.errors import CompatibilityError, NotSubgroup, ShapeMismatch, SizeMismatch, WeightMismatch
from hwvbases.mappings import (
    BoxPermutation,
    DiagramMapping,
    Triple,
    admissible_representative,
    admissible_representatives,
    column_stabilizer,
    conjugate_by_mapping,
    enumerate_special_mappings,
    enumerate_triples,
    is_admissible,
    is_special,
    left_coset_reps,
    leq_order,
    prec_order,
    stabilizer_of_tableau,
    twist_subgroup,
    validate_triple,
)
from hwvbases.tableaux import (
    Diagram,
    Partition,
    SkewDiagram,
    Tableau,
    canonical_tableau,
    skew,
)

F22 = skew(Partition((2, 2)))
E321 = skew(Partition((3, 2)), Partition((1,)))


def mapping_by_numbering(source, target, numbering):
    """Box k of the source (reading order) goes to the target box labelled k."""
    src = source.sorted_boxes
    back = {v: b for b, v in numbering.items()}
    return DiagramMapping(source, target, {src[k]: back[k + 1] for k in range(len(src))})


# The three mappings (2,2) -> (3,2)/(1) from the worked four-box example.
ALPHA1 = mapping_by_numbering(F22, E321, {(1, 2): 1, (1, 3): 2, (2, 1): 3, (2, 2): 4})
ALPHA2 = mapping_by_numbering(F22, E321, {(1, 2): 1, (1, 3): 2, (2, 1): 4, (2, 2): 3})
ALPHA3 = mapping_by_numbering(F22, E321, {(1, 2): 2, (1, 3): 1, (2, 1): 4, (2, 2): 3})


class TestOrders:
    def test_leq(self):
        assert leq_order((1, 2), (2, 2))
        assert not leq_order((1, 3), (2, 2))

    def test_prec_same_row(self):
        assert prec_order((1, 3), (1, 2))
        assert not prec_order((1, 2), (1, 3))

    @given(st.tuples(st.integers(1, 6), st.integers(1, 6)), st.tuples(st.integers(1, 6), st.integers(1, 6)))
    def test_prec_total(self, a, b):
        assert prec_order(a, b) or prec_order(b, a)
        if prec_order(a, b) and prec_order(b, a):
            assert a == b


class TestAdmissibleSpecial:
    def test_alpha1_not_admissible(self):
        assert not is_admissible(ALPHA1)

    def test_alpha2_admissible_not_special(self):
        assert is_admissible(ALPHA2)
        assert not is_special(ALPHA2)

    def test_alpha3_special(self):
        assert is_special(ALPHA3)
        assert is_admissible(ALPHA3)

    def test_identity_admissible(self):
        d = skew(Partition((2, 2)))
        ident = DiagramMapping(d, Diagram(d.boxes), {b: b for b in d.boxes})
        assert is_admissible(ident)

    def test_special_iff_inverse_special(self):
        assert is_special(ALPHA3.inverse())
        for alpha in _all_bijections(F22, E321):
            assert is_special(alpha) == is_special(alpha.inverse())

    def test_induced_tableaux_agree(self):
        s = Tableau.from_rows(F22, [[1, 1], [2, 2]])
        assert ALPHA1.induced_tableau() == s
        assert ALPHA2.induced_tableau() == s
        assert ALPHA3.induced_tableau() == s


def _all_bijections(source, target):
    src = source.sorted_boxes
    for images in itertools.permutations(target.sorted_boxes):
        yield DiagramMapping(source, target, dict(zip(src, images)))


class TestEnumerateSpecialMappings:
    def test_example_unique(self):
        got = enumerate_special_mappings(F22, E321)
        assert got == [ALPHA3]

    def test_single_box(self):
        d = Diagram([(1, 1)])
        got = enumerate_special_mappings(d, Diagram([(1, 1)]))
        assert len(got) == 1

    def test_square_to_square_count(self):
        # Independent oracle: filter all 4! bijections by the specialness predicate.
        brute = [a for a in _all_bijections(F22, skew(Partition((2, 2)))) if is_special(a)]
        got = enumerate_special_mappings(F22, skew(Partition((2, 2))))
        assert set(got) == set(brute)
        assert len(got) == 1

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            enumerate_special_mappings(F22, Diagram([(1, 1)]))

    @pytest.mark.parametrize(
        "source,target",
        [
            ((2, 2), ((3, 2), (1,))),
            ((2, 1), ((2, 1), ())),
            ((3, 1), ((2, 2), ())),
            ((2, 2), ((2, 2), ())),
            ((2, 1, 1), ((2, 2), ())),
            ((4,), ((2, 2), ())),
        ],
    )
    def test_against_brute_force(self, source, target):
        src = skew(Partition(source))
        tgt = skew(Partition(target[0]), Partition(target[1]))
        brute = {a for a in _all_bijections(src, tgt) if is_special(a)}
        got = enumerate_special_mappings(src, tgt)
        assert set(got) == brute
        assert len(got) == len(set(got))

    def test_special_implies_admissible_and_semistandard(self):
        for source, target in [((2, 2), ((3, 2), (1,))), ((2, 1), ((3,), ())), ((2, 2), ((2, 2), ()))]:
            src = skew(Partition(source))
            tgt = skew(Partition(target[0]), Partition(target[1]))
            for alpha in enumerate_special_mappings(src, tgt):
                assert is_admissible(alpha)
                assert alpha.induced_tableau().is_semistandard()

    def test_bijection_with_special_tableaux(self):
        # alpha -> induced tableau is injective on special mappings, and the
        # induced tableaux have the right weight.
        for source, target in [((2, 2), ((3, 2), (1,))), ((3, 2, 1), ((3, 2, 1), ())), ((2, 2, 1), ((3, 2), ()))]:
            src = skew(Partition(source))
            tgt = skew(Partition(target[0]), Partition(target[1]))
            got = enumerate_special_mappings(src, tgt)
            induced = {a.induced_tableau() for a in got}
            assert len(induced) == len(got)
            for tab in induced:
                assert list(tab.weight) == [x for x in tgt.row_lengths]

    def test_partition_to_partition_delta(self):
        # For partition shapes the count is 1 on the diagonal and 0 off it.
        parts = [Partition(p) for p in [(3,), (2, 1), (1, 1, 1)]]
        for a in parts:
            for b in parts:
                n = len(enumerate_special_mappings(skew(a), skew(b)))
                assert n == (1 if a == b else 0)


class TestAdmissibleRepresentative:
    def test_unique_special_representative(self):
        s = Tableau.from_rows(F22, [[1, 1], [2, 2]])
        rep = admissible_representative(s, E321)
        assert rep == ALPHA3

    def test_inverse_side(self):
        t = Tableau.from_rows(E321, [[1, 1], [2, 2]])
        rep = admissible_representative(t, F22)
        assert rep == ALPHA3.inverse()

    def test_not_special_tableau(self):
        t = Tableau.from_rows(E321, [[1, 2], [1, 2]])
        assert admissible_representative(t, F22) is None

    def test_identity_case(self):
        e = skew(Partition((2, 1)))
        rep = admissible_representative(canonical_tableau(e), e)
        assert rep is not None
        assert rep.induced_tableau() == canonical_tableau(e)

    def test_weight_mismatch(self):
        s = Tableau.from_rows(F22, [[1, 1], [1, 2]])
        with pytest.raises(WeightMismatch):
            admissible_representative(s, E321)

    def test_condition_equivalence_small(self):
        # Having any representative with the weaker below-in-column condition
        # is equivalent to having a special one (checked by brute force).
        cases = [(F22, E321), (skew(Partition((2, 1))), skew(Partition((2, 1)))),
                 (skew(Partition((3, 1))), skew(Partition((2, 2))))]
        for src, tgt in cases:
            from hwvbases.tableaux import enumerate_tableaux
            for tab in enumerate_tableaux(src, "semistandard", weight=tgt.row_lengths):
                weak = any(
                    all(
                        b[0] > a[0]
                        for a in src.boxes
                        for b in src.boxes
                        if alpha(b)[1] == alpha(a)[1] and alpha(b)[0] > alpha(a)[0]
                    )
                    for alpha in _all_bijections(src, tgt)
                    if alpha.induced_tableau() == tab
                )
                has_special = admissible_representative(tab, tgt) is not None
                assert weak == has_special

    def test_all_admissible_reps_contain_special(self):
        s = Tableau.from_rows(F22, [[1, 1], [2, 2]])
        reps = admissible_representatives(s, E321)
        assert ALPHA3 in reps
        assert ALPHA2 in reps
        assert ALPHA1 not in reps


class TestColumnStabilizer:
    def test_order_square(self):
        assert column_stabilizer(skew(Partition((2, 2)))).order == 4

    def test_order_hook(self):
        assert column_stabilizer(skew(Partition((2, 1, 1)))).order == 6

    def test_trivial_row(self):
        g = column_stabilizer(skew(Partition((3,))))
        assert g.order == 1

    def test_order_formula(self):
        import math

        for parts in [(3, 2), (2, 2, 1), (4,), (1, 1, 1, 1)]:
            d = skew(Partition(parts))
            expect = 1
            for c in d.column_lengths:
                expect *= math.factorial(c)
            assert column_stabilizer(d).order == expect

    def test_elements_fix_columns(self):
        d = skew(Partition((2, 2)))
        for p in column_stabilizer(d):
            for b in d.boxes:
                assert p.apply(b)[1] == b[1]

    def test_signs_multiply(self):
        d = skew(Partition((2, 2, 1)))
        g = column_stabilizer(d)
        for p, q in itertools.product(g.elements[:6], g.elements[:6]):
            assert (p.compose(q)).sign == p.sign * q.sign


class TestStabilizerOfTableau:
    def test_all_distinct_trivial(self):
        d = skew(Partition((2, 2)))
        tab = Tableau.from_rows(d, [[1, 2], [3, 4]])
        assert stabilizer_of_tableau(column_stabilizer(d), tab).order == 1

    def test_constant_full(self):
        d = skew(Partition((2, 2)))
        tab = Tableau.from_rows(d, [[1, 1], [1, 1]])
        g = column_stabilizer(d)
        assert stabilizer_of_tableau(g, tab).order == g.order

    def test_shape_mismatch(self):
        d = skew(Partition((2, 2)))
        tab = Tableau.from_rows(skew(Partition((2, 1))), [[1, 1], [2]])
        with pytest.raises(ShapeMismatch):
            stabilizer_of_tableau(column_stabilizer(d), tab)


def example_two_matrix_triple():
    """The four-box two-matrix triple: Q = 12/22 on (2,2), P = 12/2/2 on
    (2,1,1), alpha by the displayed numbering."""
    f = skew(Partition((2, 2)))
    e = skew(Partition((2, 1, 1)))
    q = Tableau.from_rows(f, [[1, 2], [2, 2]])
    p = Tableau.from_rows(e, [[1, 2], [2], [2]])
    alpha = DiagramMapping(
        f, e, {(1, 1): (1, 1), (1, 2): (2, 1), (2, 1): (1, 2), (2, 2): (3, 1)}
    )
    return p, q, alpha


class TestTwistSubgroup:
    def test_example_order_two(self):
        p, q, alpha = example_two_matrix_triple()
        h = twist_subgroup(p, q, alpha)
        assert h.order == 2
        nontrivial = [g for g in h if g.images != tuple(range(4))]
        assert len(nontrivial) == 1
        g = nontrivial[0]
        # Transposes the second and fourth boxes of (2,2) in reading order.
        assert g.apply((1, 2)) == (2, 2) and g.apply((2, 2)) == (1, 2)
        assert g.apply((1, 1)) == (1, 1) and g.apply((2, 1)) == (2, 1)

    def test_m1_identity_full_diagonal(self):
        d = skew(Partition((2, 2)))
        const = Tableau(d, {b: 1 for b in d.boxes})
        ident = DiagramMapping(d, Diagram(d.boxes), {b: b for b in d.boxes})
        p = Tableau(Diagram(d.boxes), {b: 1 for b in d.boxes})
        h = twist_subgroup(p, const, ident)
        assert h.order == column_stabilizer(d).order

    def test_single_column_arbitrary_bijection(self):
        col = skew(Partition((1, 1, 1)))
        tgt = skew(Partition((1, 1, 1)))
        const_q = Tableau(col, {b: 1 for b in col.boxes})
        const_p = Tableau(tgt, {b: 1 for b in tgt.boxes})
        for alpha in _all_bijections(col, tgt):
            h = twist_subgroup(const_p, const_q, alpha)
            # Independent count: filter C_F x C_E pairs directly.
            cf = column_stabilizer(col)
            ce = column_stabilizer(tgt)
            brute = sum(
                1
                for tau in cf
                for rho in ce
                if conjugate_by_mapping(tau, alpha).images == rho.images
            )
            assert h.order == brute == 6

    def test_compatibility_error(self):
        p, q, alpha = example_two_matrix_triple()
        bad_q = Tableau.from_rows(skew(Partition((2, 2))), [[2, 1], [2, 2]])
        with pytest.raises(CompatibilityError):
            twist_subgroup(p, bad_q, alpha)

    def test_order_divides_both_stabilizers(self):
        p, q, alpha = example_two_matrix_triple()
        h = twist_subgroup(p, q, alpha)
        assert column_stabilizer(alpha.source).order % h.order == 0
        assert column_stabilizer(alpha.target).order % h.order == 0


class TestLeftCosetReps:
    def test_index_two(self):
        d = skew(Partition((2, 2)))
        g = column_stabilizer(d)
        p, q, alpha = example_two_matrix_triple()
        h = twist_subgroup(p, q, alpha)
        reps = left_coset_reps(g, h)
        assert len(reps) == 2

    def test_subgroup_equal_group(self):
        d = skew(Partition((2, 1)))
        g = column_stabilizer(d)
        reps = left_coset_reps(g, g)
        assert len(reps) == 1
        assert reps[0].images == tuple(range(d.size))

    def test_example_reps_are_column_one_swap(self):
        # Representatives of the order-2 twist subgroup inside the full
        # column stabilizer of (2,2): identity and the swap of boxes 1,3.
        p, q, alpha = example_two_matrix_triple()
        h = twist_subgroup(p, q, alpha)
        g = column_stabilizer(alpha.source)
        reps = left_coset_reps(g, h)
        images = sorted(r.images for r in reps)
        assert images == [(0, 1, 2, 3), (2, 1, 0, 3)]

    def test_not_subgroup(self):
        d = skew(Partition((2, 2)))
        d2 = skew(Partition((2, 1, 1)))
        with pytest.raises(NotSubgroup):
            left_coset_reps(column_stabilizer(d), column_stabilizer(d2))

    def test_reps_cover_and_distinct(self):
        for parts in [(2, 2), (2, 2, 1), (3, 3)]:
            d = skew(Partition(parts))
            g = column_stabilizer(d)
            tab = canonical_tableau(d)
            h = stabilizer_of_tableau(g, tab)
            reps = left_coset_reps(g, h)
            assert len(reps) == g.order // h.order
            seen = set()
            for rep in reps:
                coset = frozenset(rep.compose(x).images for x in h)
                assert coset not in seen
                seen.add(coset)
            assert sum(len(c) for c in seen) == g.order

    def test_min_max_variants_differ(self):
        d = skew(Partition((2, 2)))
        g = column_stabilizer(d)
        p, q, alpha = example_two_matrix_triple()
        h = twist_subgroup(p, q, alpha)
        lo = left_coset_reps(g, h, pick="min")
        hi = left_coset_reps(g, h, pick="max")
        assert {r.images for r in lo} != {r.images for r in hi}


class TestPieceExample:
    def test_ten_box_pieces(self):
        # Pieces of the ordered fillings on (4,4,3)/(1) and (4,3,3) with
        # weight (4,6): the 1-pieces admit a unique special mapping and the
        # 2-pieces admit exactly two.
        f = skew(Partition((4, 4, 3)), Partition((1,)))
        e = skew(Partition((4, 3, 3)))
        q = Tableau.from_rows(f, [[1, 1, 2], [1, 1, 2, 2], [2, 2, 2]])
        p = Tableau.from_rows(e, [[1, 1, 2, 2], [1, 1, 2], [2, 2, 2]])
        assert q.is_ordered() and p.is_ordered()
        q1, q2 = q.piece(1), q.piece(2)
        p1, p2 = p.piece(1), p.piece(2)
        assert len(enumerate_special_mappings(q1, p1)) == 1
        specials = enumerate_special_mappings(q2, p2)
        assert len(specials) == 2
        induced = {a.induced_tableau() for a in specials}
        tab_a = Tableau(q2, {(1, 4): 1, (2, 3): 1, (2, 4): 2, (3, 1): 3, (3, 2): 3, (3, 3): 3})
        tab_b = Tableau(q2, {(1, 4): 1, (2, 3): 2, (2, 4): 3, (3, 1): 1, (3, 2): 3, (3, 3): 3})
        assert induced == {tab_a, tab_b}


def brute_triples(r, s, m, mu, lam, nu):
    """Independent enumeration: all bijections with P o alpha = Q whose pieces
    are admissible with special semistandard induced tableaux, one triple per
    induced tuple."""
    from hwvbases.tableaux import enumerate_tableaux

    lam_diag = skew(lam)
    mu_diag = skew(mu)
    count = 0
    for p in enumerate_tableaux(lam_diag, "ordered", weight=nu):
        for q in enumerate_tableaux(mu_diag, "ordered", weight=nu):
            tuples = set()
            for alpha in _all_bijections(mu_diag, lam_diag):
                if any(p(alpha(a)) != q(a) for a in mu_diag.boxes):
                    continue
                ok = True
                induced = []
                for i in range(1, m + 1):
                    piece = alpha.restrict(q.piece(i).boxes)
                    tab = piece.induced_tableau()
                    if not (is_admissible(piece) and tab.is_semistandard()
                            and admissible_representative(tab, p.piece(i)) is not None):
                        ok = False
                        break
                    induced.append(tab)
                if ok:
                    tuples.add(tuple(induced))
            count += len(tuples)
    return count


class TestEnumerateTriples:
    def test_m1_constant_labels(self):
        got = enumerate_triples(2, 2, 1, Partition((2,)), Partition((2,)), (2,))
        assert len(got) == 1
        tr = got[0]
        assert set(tr.P.entries.values()) == {1}
        assert set(tr.Q.entries.values()) == {1}
        assert is_special(tr.alpha)

    def test_m1_cross_shapes_empty(self):
        assert enumerate_triples(2, 2, 1, Partition((2,)), Partition((1, 1)), (2,)) == []
        assert enumerate_triples(2, 2, 1, Partition((1, 1)), Partition((2,)), (2,)) == []

    def test_small_two_matrix_case(self):
        mu = lam = Partition((1, 1))
        got = enumerate_triples(2, 2, 2, mu, lam, (1, 1))
        assert len(got) == brute_triples(2, 2, 2, mu, lam, (1, 1))
        for tr in got:
            validate_triple(tr, 2)

    @pytest.mark.parametrize(
        "r,s,m,mu,lam,nu",
        [
            (2, 2, 2, (2,), (2,), (1, 1)),
            (2, 2, 2, (2, 1), (2, 1), (2, 1)),
            (2, 3, 2, (2, 2), (2, 1, 1), (1, 3)),
            (2, 2, 2, (2, 1), (3,), (1, 2)),
            (3, 3, 1, (2, 1, 1), (2, 1, 1), (4,)),
        ],
    )
    def test_counts_against_brute_force(self, r, s, m, mu, lam, nu):
        got = enumerate_triples(r, s, m, Partition(mu), Partition(lam), nu)
        assert len(got) == brute_triples(r, s, m, Partition(mu), Partition(lam), nu)

    def test_order_is_deterministic_and_decreasing(self):
        from hwvbases.mappings import triple_sort_key

        got = enumerate_triples(2, 3, 2, Partition((2, 2)), Partition((2, 1, 1)), (1, 3))
        keys = [triple_sort_key(t, 2) for t in got]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_example_triple_is_enumerated(self):
        p, q, alpha = example_two_matrix_triple()
        got = enumerate_triples(2, 3, 2, Partition((2, 2)), Partition((2, 1, 1)), (1, 3))
        assert Triple(p, q, alpha) in got

    def test_validate_triple_rejects_bad_alpha(self):
        p, q, alpha = example_two_matrix_triple()
        # Swap the two boxes of the 2-piece inside the first column of the
        # target; P o alpha = Q still holds but piece 2 is no longer special.
        bad = dict(alpha.mapping)
        bad[(1, 2)], bad[(2, 2)] = bad[(2, 2)], bad[(1, 2)]
        tr = Triple(p, q, DiagramMapping(alpha.source, alpha.target, bad))
        with pytest.raises(CompatibilityError):
            validate_triple(tr, 2)

    def test_empty_pieces_allowed(self):
        got = enumerate_triples(2, 2, 2, Partition((2,)), Partition((2,)), (2, 0))
        assert len(got) == 1

    def test_degree_mismatch(self):
        from hwvbases.errors import DegreeMismatch

        with pytest.raises(DegreeMismatch):
            enumerate_triples(2, 2, 2, Partition((2,)), Partition((1,)), (1, 1))
        with pytest.raises(DegreeMismatch):
            enumerate_triples(2, 2, 1, Partition((2,)), Partition((2,)), (1, 1))
