"""PD parsing, faces, checkerboard coloring, black graph, signs, mirror."""

import pytest

import corpus
from treefloer.diagram import (
    BLACK,
    WHITE,
    black_graph,
    faces_and_coloring,
    mirror,
    parse_pd,
    pd_text,
    sign_data,
)
from treefloer.errors import ArcMultiplicity, Disconnected, EmptyDiagram, MalformedInput

ALL_PD = [
    corpus.UNKNOT_1,
    corpus.UNKNOT_1_NEG,
    corpus.UNKNOT_2_KINKS,
    corpus.UNKNOT_POKE,
    corpus.TREFOIL,
    corpus.FIG8,
    corpus.K5_1,
    corpus.K5_2,
    corpus.K6_1,
    corpus.TREFOIL_KINK,
    corpus.UNLINK_2,
]


class TestParse:
    def test_trefoil(self):
        d = parse_pd(corpus.TREFOIL)
        assert d.n == 3
        assert d.arc_count == 6
        assert d.components == 1

    def test_json_form(self):
        d = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]")
        assert d.n == 3 and d.components == 1

    def test_kink_accepted(self):
        d = parse_pd("X[2,1,1,2]")
        assert d.n == 1 and d.components == 1

    def test_arc_multiplicity(self):
        with pytest.raises(ArcMultiplicity):
            parse_pd("X[1,4,2,5] X[3,6,4,1]")

    def test_disconnected(self):
        # two disjoint kinks sharing no arcs
        with pytest.raises(Disconnected):
            parse_pd("X[2,1,1,2] X[4,3,3,4]")

    def test_empty(self):
        with pytest.raises(EmptyDiagram):
            parse_pd("   ")

    def test_malformed(self):
        with pytest.raises(MalformedInput):
            parse_pd("X[1,2,3] nonsense")

    def test_roundtrip(self):
        d = parse_pd(corpus.TREFOIL)
        assert parse_pd(pd_text(d)).crossings == d.crossings

    @pytest.mark.parametrize("pd", ALL_PD)
    def test_corpus_parses(self, pd):
        parse_pd(pd)


class TestFaces:
    @pytest.mark.parametrize("pd", ALL_PD)
    def test_euler_formula(self, pd):
        d = parse_pd(pd)
        col = faces_and_coloring(d)
        assert col.face_count == d.n + 2

    def test_unknot_faces(self):
        col = faces_and_coloring(parse_pd(corpus.UNKNOT_1))
        assert col.face_count == 3
        assert col.color[col.unbounded] == WHITE

    def test_trefoil_faces(self):
        # hand count: outer triangle face, inner triangle face, three bigons
        col = faces_and_coloring(parse_pd(corpus.TREFOIL))
        sizes = sorted(len(f) for f in col.faces)
        assert sizes == [2, 2, 2, 3, 3]

    @pytest.mark.parametrize("pd", ALL_PD)
    def test_checkerboard(self, pd):
        d = parse_pd(pd)
        col = faces_and_coloring(d)
        # faces sharing an arc have opposite colors
        for c in range(d.n):
            for s in range(4):
                dart = 4 * c + s
                arc = d.crossings[c][s]
                other = [4 * c2 + s2 for (c2, s2) in d.arc_ends(arc) if 4 * c2 + s2 != dart]
                for od in other:
                    assert col.color[col.face_of_dart[dart]] != col.color[col.face_of_dart[od]]

    def test_trefoil_black_count_depends_on_outer_face(self):
        d = parse_pd(corpus.TREFOIL)
        counts = set()
        for f in range(5):
            col = faces_and_coloring(d, unbounded_face_hint=f)
            counts.add(len(col.black_faces()))
        assert counts == {2, 3}


class TestBlackGraph:
    def test_trefoil_triangle(self):
        d = parse_pd(corpus.TREFOIL)
        col = faces_and_coloring(d)
        bg = black_graph(d, col)
        assert len(bg.vertices) == 3
        assert bg.edge_count == 3
        # a 3-cycle: every vertex hit by exactly two edge endpoints
        from collections import Counter

        degree = Counter()
        for c in range(3):
            u, v = bg.edge(c)
            assert u != v
            degree[u] += 1
            degree[v] += 1
        assert sorted(degree.values()) == [2, 2, 2]

    def test_unknot_kink_graph(self):
        d = parse_pd(corpus.UNKNOT_1)
        col = faces_and_coloring(d)
        bg = black_graph(d, col)
        # default coloring: two black faces joined by one edge
        assert len(bg.vertices) == 2
        assert bg.edge_count == 1
        u, v = bg.edge(0)
        assert u != v

    @pytest.mark.parametrize("pd", ALL_PD)
    def test_one_edge_per_crossing(self, pd):
        d = parse_pd(pd)
        col = faces_and_coloring(d)
        bg = black_graph(d, col)
        assert bg.edge_count == d.n
        for c in range(d.n):
            assert sorted(bg.roles[c]) == [1, 2, 3, 4]

    @pytest.mark.parametrize("pd", ALL_PD)
    def test_joins_black_flips_under_mirror(self, pd):
        d = parse_pd(pd)
        m = mirror(d)
        col_d = faces_and_coloring(d)
        col_m = faces_and_coloring(m, unbounded_face_hint=corpus.matching_face(d, col_d, m))
        bg_d = black_graph(d, col_d)
        bg_m = black_graph(m, col_m)
        for c in range(d.n):
            assert bg_d.joins_black[c] != bg_m.joins_black[c]


class TestSigns:
    def test_trefoil_positive(self):
        sd = sign_data(parse_pd(corpus.TREFOIL))
        assert (sd.n_plus, sd.n_minus, sd.components) == (3, 0, 1)

    def test_mirror_flips_signs(self):
        d = parse_pd(corpus.TREFOIL)
        sd = sign_data(mirror(d))
        assert (sd.n_plus, sd.n_minus) == (0, 3)

    def test_unlink_components(self):
        sd = sign_data(parse_pd(corpus.UNLINK_2))
        assert sd.components == 2
        # two disjoint closed curves always cross with opposite signs
        assert (sd.n_plus, sd.n_minus) == (1, 1)

    def test_fig8_balanced(self):
        sd = sign_data(parse_pd(corpus.FIG8))
        assert {sd.n_plus, sd.n_minus} == {2}

    @pytest.mark.parametrize("pd", ALL_PD)
    def test_sign_count(self, pd):
        sd = sign_data(parse_pd(pd))
        assert sd.n_plus + sd.n_minus == sd.n


class TestMirror:
    @pytest.mark.parametrize("pd", ALL_PD)
    def test_involution(self, pd):
        d = parse_pd(pd)
        assert mirror(mirror(d)).crossings == d.crossings

    @pytest.mark.parametrize("pd", ALL_PD)
    def test_preserves_faces_and_components(self, pd):
        d = parse_pd(pd)
        m = mirror(d)
        assert m.components == d.components
        cd, cm = faces_and_coloring(d), faces_and_coloring(m)
        assert sorted(len(f) for f in cd.faces) == sorted(len(f) for f in cm.faces)

    def test_mirror_kink(self):
        d = parse_pd(corpus.UNKNOT_1)
        assert pd_text(mirror(d)) == "X[1,1,2,2]"
