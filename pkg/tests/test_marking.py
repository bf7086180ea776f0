"""Marked points, genericity, and weight assignment."""

import pytest

import corpus
from treefloer.diagram import black_graph, faces_and_coloring, parse_pd
from treefloer.errors import NotGeneric, WeightConflict
from treefloer.marking import (
    Marking,
    OmegaAssignment,
    assign_weights,
    auto_mark,
    check_generic,
    default_omega,
)


def setup(pd, **mark_kw):
    d = parse_pd(pd)
    col = faces_and_coloring(d)
    bg = black_graph(d, col)
    mk = auto_mark(d, bg, col, **mark_kw)
    return d, col, bg, mk


class TestOmega:
    def test_default_powers_of_two(self):
        assert default_omega(3).values == (2, 4, 8)
        assert default_omega(1).values == (2,)

    def test_default_is_generic(self):
        om = check_generic(default_omega(6), 6)
        assert om.mode == "verified"

    def test_not_generic_with_witness(self):
        with pytest.raises(NotGeneric) as err:
            check_generic(OmegaAssignment((1, 2, 3), "assumed"), 3)
        w = err.value.witness
        assert sum(s * v for s, v in zip(w, (1, 2, 3))) == 0
        assert any(w)

    def test_single_value_generic(self):
        assert check_generic(OmegaAssignment((5,), "assumed"), 1).mode == "verified"

    def test_lazy_mode(self):
        om = check_generic(OmegaAssignment((1, 2, 3), "assumed"), 3, exhaustive=False)
        assert om.mode == "assumed"


class TestAutoMark:
    def test_trefoil_no_conflicts(self):
        d, col, bg, mk = setup(corpus.TREFOIL)
        assert mk.m == 6  # one point per arc survives the conflict check

    def test_unknot_kink_subdivides(self):
        # both arcs of the kink end twice at the one crossing
        d, col, bg, mk = setup(corpus.UNKNOT_1)
        assert mk.m == 4

    def test_outer_point_is_last(self):
        d, col, bg, mk = setup(corpus.TREFOIL)
        assert mk.m in mk.points_on_arc[mk.outer_arc]
        assert mk.points_on_arc[mk.outer_arc][-1] == mk.m

    def test_every_arc_marked(self):
        for pd in (corpus.TREFOIL, corpus.FIG8, corpus.UNKNOT_POKE, corpus.UNLINK_2):
            d, col, bg, mk = setup(pd)
            assert all(len(pts) >= 1 for pts in mk.points_on_arc)
            assert sorted(p for pts in mk.points_on_arc for p in pts) == list(
                range(1, mk.m + 1)
            )

    def test_forced_two_per_arc(self):
        d, col, bg, mk = setup(corpus.TREFOIL, points_per_arc={a: 2 for a in range(6)})
        assert mk.m == 12

    def test_auto_mark_always_assignable(self):
        for pd in (
            corpus.UNKNOT_1,
            corpus.UNKNOT_POKE,
            corpus.UNKNOT_2_KINKS,
            corpus.TREFOIL,
            corpus.FIG8,
            corpus.K5_2,
            corpus.TREFOIL_KINK,
            corpus.UNLINK_2,
        ):
            d, col, bg, mk = setup(pd)
            assign_weights(mk, d, bg, default_omega(d.n))


class TestWeights:
    def test_sum_zero_and_multiset(self):
        d, col, bg, mk = setup(corpus.TREFOIL)
        om = default_omega(3)
        wt = assign_weights(mk, d, bg, om)
        assert sum(wt.r) == 0
        nonzero = sorted(abs(w) for w in wt.r if w)
        assert nonzero == sorted([v for v in om.values] * 2)

    def test_special_disjoint_from_weighted(self):
        d, col, bg, mk = setup(corpus.FIG8)
        wt = assign_weights(mk, d, bg, default_omega(4))
        for c in range(4):
            assert not set(wt.special[c]) & set(wt.weighted[c])

    def test_sparse_marking_conflicts(self):
        # the kink with a single point on each arc puts a weight and a
        # special of the same crossing on one point
        d = parse_pd(corpus.UNKNOT_1)
        col = faces_and_coloring(d)
        bg = black_graph(d, col)
        mk = Marking(points_on_arc=((1,), (2,)), m=2, outer_arc=1)
        with pytest.raises(WeightConflict):
            assign_weights(mk, d, bg, default_omega(1))
