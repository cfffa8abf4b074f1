import pytest

from conftest import s
from deltamat.core import SetSystem, check_symmetric_exchange, direct_sum
from deltamat.gf2 import (
    Shape,
    SymMatrixGF2,
    classify_component,
    components,
    dm_from_matrix,
    format_graph,
    is_nonsingular,
    parse_graph,
    principal_submatrix,
)
from deltamat.twistpoly import make_free, make_odd_complete
from oracles import as_sets, det_gf2, matrix_family, symmetric_matrices

K3 = SymMatrixGF2.complete(3)


def test_symmetry_enforced():
    with pytest.raises(ValueError):
        SymMatrixGF2((0b10, 0b00))


class TestPrincipalSubmatrix:
    def test_empty(self):
        a = principal_submatrix(K3, 0)
        assert a.n == 0 and is_nonsingular(a)

    def test_full(self):
        assert principal_submatrix(K3, 0b111) == K3

    def test_k3_pair(self):
        assert principal_submatrix(K3, s(1, 2)).to_dense() == [[0, 1], [1, 0]]


class TestNonsingular:
    def test_examples(self):
        assert is_nonsingular(SymMatrixGF2.from_dense([[0, 1], [1, 0]]))
        assert not is_nonsingular(SymMatrixGF2.from_dense([[1, 1], [1, 1]]))

    def test_k3_singular(self):
        assert det_gf2(K3.to_dense()) == 0
        assert not is_nonsingular(K3)

    @pytest.mark.parametrize("n", range(0, 5))
    def test_against_cofactor_oracle(self, n):
        for dense in symmetric_matrices(n):
            assert is_nonsingular(SymMatrixGF2.from_dense(dense)) == bool(det_gf2(dense))


class TestDmFromMatrix:
    def test_complete_graphs(self):
        assert dm_from_matrix(K3) == make_odd_complete(1)
        assert dm_from_matrix(SymMatrixGF2.complete(5)) == make_odd_complete(2)
        assert dm_from_matrix(SymMatrixGF2.complete(7)) == make_odd_complete(3)

    def test_identity(self):
        for n in range(6):
            assert dm_from_matrix(SymMatrixGF2.identity(n)) == make_free(n)

    def test_zero(self):
        assert dm_from_matrix(SymMatrixGF2.zeros(4)).word == 1

    @pytest.mark.parametrize("n", range(1, 5))
    def test_matches_determinant_oracle_and_exchange(self, n):
        for dense in symmetric_matrices(n):
            d = dm_from_matrix(SymMatrixGF2.from_dense(dense))
            assert as_sets(d) == matrix_family(dense)
            assert check_symmetric_exchange(SetSystem(d.n, d.word)) is None

    def test_block_diagonal_is_direct_sum(self):
        a1 = SymMatrixGF2.from_dense([[1, 1], [1, 0]])
        a2 = SymMatrixGF2.complete(3)
        assert dm_from_matrix(a1.direct_sum(a2)) == direct_sum(dm_from_matrix(a1), dm_from_matrix(a2))


class TestComponents:
    def test_examples(self):
        assert components(K3) == [0b111]
        assert components(SymMatrixGF2.identity(2)) == [0b01, 0b10]
        a = K3.direct_sum(SymMatrixGF2.identity(1))
        assert components(a) == [0b0111, 0b1000]

    def test_classify(self):
        k5 = SymMatrixGF2.complete(5)
        shape = classify_component(k5, 0b11111)
        assert shape.kind is Shape.ODD_COMPLETE and shape.order == 5
        assert classify_component(SymMatrixGF2.identity(1), 1).kind is Shape.LOOPED_VERTEX
        path = SymMatrixGF2.from_graph(3, [], [(0, 1), (0, 2)])
        assert classify_component(path, 0b111).kind is Shape.OTHER

    def test_isolated_loopless_vertex_is_odd_complete(self):
        shape = classify_component(SymMatrixGF2.zeros(1), 1)
        assert shape.kind is Shape.ODD_COMPLETE and shape.order == 1

    def test_even_complete_and_looped_complete_are_other(self):
        assert classify_component(SymMatrixGF2.complete(4), 0b1111).kind is Shape.OTHER
        looped = SymMatrixGF2(tuple(r | 1 << i for i, r in enumerate(K3.rows)))
        assert classify_component(looped, 0b111).kind is Shape.OTHER


class TestGraphText:
    def test_roundtrip(self):
        a = SymMatrixGF2.from_graph(4, [3], [(0, 1), (0, 2)])
        text = format_graph(a)
        assert text == "loops: 4\n1 2\n1 3\n"
        assert parse_graph(text, 4) == a

    def test_empty_loops_line(self):
        assert format_graph(K3).splitlines()[0] == "loops:"

    @pytest.mark.parametrize("text", ["1 2\n", "loops:\n1 1\n", "loops: 5\n", "loops:\n1 2 3\n"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_graph(text, 3)
