import numpy as np
import pytest
from collections import Counter
from hypothesis import given, settings, strategies as st
from strategies import nonzero_vectors
from src.components.altform import (
    AlternatingMatrix,
    RankClass,
    all_alternating,
    canonical_rank2,
    canonical_rank4,
    congruent,
    coordinate_change_coherent,
    frobenius_matrix_check,
    parse_alternating,
    random_alternating,
    rank_classify,
    surface_from_alternating,
    symplectic_normal_form,
)
from src.components.catalog import full_space
from src.core.gf import field_of_order
from src.core.linalg import Matrix
from src.core.poly import count_zeros
from src.core.projgeom import theta
from src.exception import FormSyntaxError, NotAlternating, ZeroMatrix


class TestMatrices:
    def test_parse(self, F4):
        A = parse_alternating(F4, "[1,0,0,0,0,(t+1)]")
        assert A.upper == (1, 0, 0, 0, 0, 3)
        assert str(A) == "[1,0,0,0,0,(t+1)]"

    @pytest.mark.parametrize("text", ["1,0,0,0,0,1", "[1,0,0]", "[1,0,0,0,0,s]"])
    def test_parse_errors(self, F3, text):
        with pytest.raises(FormSyntaxError):
            parse_alternating(F3, text)

    def test_rows_are_alternating(self, F3):
        A = parse_alternating(F3, "[1,2,0,1,0,1]")
        assert AlternatingMatrix.from_matrix(A.matrix()) == A
        assert A.matrix().transpose().rows == tuple(
            tuple(F3.neg(x) for x in row) for row in A.rows
        )

    def test_from_matrix_rejects(self, F3, F2):
        with pytest.raises(NotAlternating):
            AlternatingMatrix.from_matrix(Matrix.identity(F3, 4))
        symmetric = Matrix.from_rows(F3, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
        with pytest.raises(NotAlternating):
            AlternatingMatrix.from_matrix(symmetric)
        # symmetric with zero diagonal is alternating in characteristic 2
        assert AlternatingMatrix.from_matrix(
            Matrix.from_rows(F2, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
        ) == canonical_rank2(F2)

    def test_zero_matrix(self, F3):
        zero = AlternatingMatrix(F3, (0,) * 6)
        with pytest.raises(ZeroMatrix):
            surface_from_alternating(zero)
        with pytest.raises(ZeroMatrix):
            symplectic_normal_form(zero)

    def test_ranks(self, F2):
        ranks = Counter(A.rank() for A in all_alternating(F2))
        assert ranks == {2: 35, 4: 28}


class TestSurfaces:
    def test_canonical_rank4_is_the_full_space_surface(self, F3):
        assert surface_from_alternating(canonical_rank4(F3)) == full_space(F3)

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_vanishes_on_all_points(self, q):
        ctx = field_of_order(q)
        for A in (canonical_rank2(ctx), canonical_rank4(ctx)):
            assert count_zeros(surface_from_alternating(A)) == theta(q, 3)

    @pytest.mark.parametrize("q", [2, 3])
    def test_rank_classification(self, q):
        ctx = field_of_order(q)
        split = rank_classify(canonical_rank2(ctx))
        assert split.kind is RankClass.RANK2_SPLIT
        assert split.linear_components == q + 1
        assert split.consistent
        extremal = rank_classify(canonical_rank4(ctx))
        assert extremal.kind is RankClass.RANK4_EXTREMAL
        assert extremal.linear_components == 0
        assert extremal.N == theta(q, 3)
        assert extremal.consistent


class TestNormalForm:
    def test_canonical_matrices_are_fixed(self, F3):
        for canonical in (canonical_rank2(F3), canonical_rank4(F3)):
            G, result = symplectic_normal_form(canonical)
            assert result == canonical
            assert G == Matrix.identity(F3, 4)

    def test_exhaustive_over_f2(self, F2):
        seen = 0
        for A in all_alternating(F2):
            G, canonical = symplectic_normal_form(A)
            assert congruent(A, G) == canonical
            assert G.rank() == 4
            assert canonical.rank() == A.rank()
            seen += 1
        assert seen == 63

    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_random_matrices(self, data):
        ctx = field_of_order(data.draw(st.sampled_from([3, 4, 5, 9])))
        A = AlternatingMatrix(ctx, data.draw(nonzero_vectors(ctx, 6)))
        G, canonical = symplectic_normal_form(A)
        assert congruent(A, G) == canonical
        assert G.rank() == 4
        assert frobenius_matrix_check(G)

    def test_frobenius_check_detects_extension_entries(self, F4):
        assert frobenius_matrix_check(Matrix.identity(F4, 4), q=2)
        assert not frobenius_matrix_check(Matrix.from_rows(F4, [[2]]), q=2)

    @pytest.mark.parametrize("text", ["[0,0,0,0,0,1]", "[1,1,1,1,1,1]", "[0,1,2,0,1,0]"])
    def test_coordinate_change(self, F3, text):
        A = parse_alternating(F3, text)
        G, _ = symplectic_normal_form(A)
        assert coordinate_change_coherent(A, G)


class TestRandomClassification:
    @pytest.mark.parametrize("q", [3, 4])
    def test_classes_are_consistent(self, q):
        ctx = field_of_order(q)
        rng = np.random.default_rng(q)
        kinds = Counter()
        for _ in range(200):
            result = rank_classify(random_alternating(ctx, rng))
            assert result.consistent
            assert result.N == theta(q, 3)
            kinds[result.kind] += 1
        assert set(kinds) == {RankClass.RANK2_SPLIT, RankClass.RANK4_EXTREMAL}

    @given(seed=st.integers(0, 2**16))
    @settings(max_examples=30, deadline=None)
    def test_congruence_keeps_the_class(self, seed):
        ctx = field_of_order(4)
        G = Matrix.random_invertible(ctx, 4, np.random.default_rng(seed))
        for canonical in (canonical_rank2(ctx), canonical_rank4(ctx)):
            before = rank_classify(canonical)
            after = rank_classify(congruent(canonical, G))
            assert (after.kind, after.N, after.linear_components) == (
                before.kind,
                before.N,
                before.linear_components,
            )
