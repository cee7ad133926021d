from __future__ import annotations

import pytest

from wangtiles.core import (
    ParseError,
    Transducer,
    TransducerRunError,
    WangTile,
    WangTileSet,
    check_equivalence,
    emit_tileset,
    fuse,
    fuse_sets,
    parse_tileset,
    relabel,
    run_transducer,
    to_transducer,
)
from wangtiles.corpus import HORIZONTAL_RELABEL, VERTICAL_RELABEL, builtin

U = builtin("U").payload
V = builtin("V").payload
W = builtin("W").payload


class TestParsing:
    def test_single_line(self):
        ts = parse_tileset("F O J O\n")
        assert ts[0] == WangTile("F", "O", "J", "O")

    def test_empty_input(self):
        assert len(parse_tileset("")) == 0

    def test_comments_and_blank_lines_ignored(self):
        ts = parse_tileset("# header\n\nF O J O\n  # trailing comment\nF O H L\n")
        assert len(ts) == 2

    def test_roundtrip(self):
        text = emit_tileset(U)
        assert parse_tileset(text) == U
        assert emit_tileset(parse_tileset(text)) == text

    def test_wrong_arity_names_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_tileset("F O J O\nF O J\n")

    def test_duplicate_names_line(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_tileset("F O J O\nF O H L\nF O J O\n")

    def test_u_color_alphabets(self):
        assert U.vertical_colors == frozenset("ABCDEFGHIJ")
        assert U.horizontal_colors == frozenset("KLMNOP")

    def test_duplicate_tiles_refused(self):
        t = WangTile("A", "B", "C", "D")
        with pytest.raises(ValueError, match="duplicate"):
            WangTileSet([t, t])

    def test_whitespace_in_color_refused(self):
        with pytest.raises(ValueError):
            WangTile("A B", "C", "D", "E")


class TestDual:
    def test_tile_dual(self):
        assert WangTile("F", "O", "J", "O").dual() == WangTile("O", "F", "O", "J")

    def test_involution(self):
        assert U.dual().dual() == U

    def test_dual_swaps_color_families(self):
        assert len(U.dual().vertical_colors) == 6
        assert len(U.dual().horizontal_colors) == 10


class TestFuse:
    def test_horizontal_example(self):
        out = fuse(U[0], U[2], 1)
        assert out == WangTile("J", "OM", "J", "OP")

    def test_vertical_example(self):
        # tile 8 below tile 0 fuses to the composite (BF, O, IJ, O)
        out = fuse(U[8], U[0], 2)
        assert out == WangTile("BF", "O", "IJ", "O")
        assert out == V[9]

    def test_mismatch_is_undefined(self):
        assert fuse(U[0], U[0], 1) is None

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            fuse(U[0], U[0], 3)

    def test_multichar_tokens_keep_separator(self):
        a = WangTile("x", "AB", "y", "CD")
        b = WangTile("z", "E", "x", "F")
        out = fuse(a, b, 1)
        assert out.top == "AB·E"
        assert out.bottom == "CD·F"

    def test_definedness_matches_colors_for_all_pairs(self):
        for u in U:
            for v in U:
                assert (fuse(u, v, 1) is not None) == (u.right == v.left)
                assert (fuse(u, v, 2) is not None) == (u.top == v.bottom)

    def test_accessor_table_for_all_pairs(self):
        for u in U:
            for v in U:
                f1 = fuse(u, v, 1)
                if f1 is not None:
                    assert f1.as_tuple() == (
                        v.right, u.top + v.top, u.left, u.bottom + v.bottom
                    )
                f2 = fuse(u, v, 2)
                if f2 is not None:
                    assert f2.as_tuple() == (
                        u.right + v.right, v.top, u.left + v.left, u.bottom
                    )


class TestFuseSets:
    def test_empty(self):
        empty = WangTileSet([])
        assert len(fuse_sets(empty, U, 1)) == 0

    def test_trimmed_horizontal_self_fusion_has_35_tiles(self):
        # Trimming acts on the transducer whose states are the fused
        # composite colors, i.e. the column transducer of a row fusion.
        fused = fuse_sets(U, U, 1)
        trimmed = to_transducer(fused.dual(), trim=True).to_tileset().dual()
        assert len(trimmed) == 35
        quads = fuse_sets(trimmed, trimmed, 2)
        assert len(to_transducer(quads, trim=True).to_tileset()) == 55

    def test_dual_distributes_over_fusion(self):
        for T, S in ((U, U), (V, V), (U, U.dual().dual())):
            assert fuse_sets(T, S, 1).dual() == fuse_sets(T.dual(), S.dual(), 2)
            assert fuse_sets(T, S, 2).dual() == fuse_sets(T.dual(), S.dual(), 1)


class TestTransducer:
    def test_tile_to_transition(self):
        tr = to_transducer(U).transitions[0]
        assert (tr.source, tr.input, tr.output, tr.target) == ("J", "O", "O", "F")

    def test_empty(self):
        machine = to_transducer(WangTileSet([]))
        assert not machine.states and not machine.transitions

    def test_u_has_10_states_19_transitions(self):
        machine = to_transducer(U)
        assert len(machine.states) == 10
        assert len(machine.transitions) == 19

    def test_roundtrip(self):
        assert to_transducer(U).to_tileset() == U

    def test_run_example(self):
        machine = to_transducer(U)
        out, end = run_transducer(machine, "G", "KOKPOKOKPOKPO")
        assert "".join(out) == "PLKPLPLKPLPPL"
        assert end == "G"

    def test_run_empty_input(self):
        out, end = run_transducer(to_transducer(U), "G", "")
        assert out == [] and end == "G"

    def test_run_computes_next_row_of_inflation_patch(self):
        # The output word of one row is the input of the row above it.
        from wangtiles.morphism import iterate

        omega = builtin("omega").payload
        patch = iterate(omega, 4, 5)
        machine = to_transducer(U)
        row0 = [U[patch.cell(x, 0)] for x in range(13)]
        row1 = [U[patch.cell(x, 1)] for x in range(13)]
        out, end = run_transducer(machine, row1[0].left, [t.top for t in row0])
        assert out == [t.top for t in row1]
        assert end == row1[-1].right

    def test_run_failure_cites_position(self):
        machine = to_transducer(U)
        with pytest.raises(TransducerRunError) as info:
            run_transducer(machine, "G", "KZ")
        assert info.value.position == 1


class TestEquivalence:
    def test_u_and_w_equivalent_with_reference_bijections(self):
        eq = check_equivalence(U, W)
        assert eq is not None
        assert eq.horizontal == HORIZONTAL_RELABEL
        assert eq.vertical == VERTICAL_RELABEL
        assert eq.tile_map == {i: i for i in range(19)}

    def test_self_equivalence_is_identity(self):
        eq = check_equivalence(U, U)
        assert eq is not None
        assert eq.vertical == {c: c for c in U.vertical_colors}
        assert eq.horizontal == {c: c for c in U.horizontal_colors}

    def test_size_mismatch(self):
        assert check_equivalence(U, V) is None

    def test_symmetry(self):
        forward = check_equivalence(U, W)
        backward = check_equivalence(W, U)
        assert forward is not None and backward is not None
        assert {v: k for k, v in forward.vertical.items()} == backward.vertical
        assert {v: k for k, v in forward.horizontal.items()} == backward.horizontal

    def test_relabel_w_back_to_u(self):
        inv_v = {v: k for k, v in VERTICAL_RELABEL.items()}
        inv_h = {v: k for k, v in HORIZONTAL_RELABEL.items()}
        assert relabel(W, inv_v, inv_h) == U

    def test_inequivalent_same_size(self):
        a = parse_tileset("a x a x\nb y b y\n")
        b = parse_tileset("a x a y\nb y b x\n")
        assert check_equivalence(a, b) is None
