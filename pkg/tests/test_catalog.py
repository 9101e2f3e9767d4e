import pytest
from src.components.catalog import (
    CatalogId,
    admissible_degrees,
    build_surface,
    elementary_bound,
    elementary_bound_meaningful,
    full_space,
    full_space_extension_witness,
    hasse_weil_bound,
    hermitian,
    hermitian_matrix,
    hyperbolic,
    is_hermitian_self_conjugate,
    sziklai_bound,
    sziklai_bound_meaningful,
    sziklai_degree_admissible,
    sziklai_hasse_weil_gap,
)
from src.core.gf import field_embedding, field_of_order
from src.core.linalg import Matrix
from src.core.poly import count_zeros, fq_linear_components, parse_form
from src.core.projgeom import theta
from src.exception import FormSyntaxError, QNotSquare


class TestSurfaces:
    @pytest.mark.parametrize(
        "q, expected", [(2, 9), (3, 16), (4, 25), (5, 36), (7, 64), (8, 81), (9, 100)]
    )
    def test_hyperbolic(self, q, expected):
        S = hyperbolic(field_of_order(q))
        assert count_zeros(S) == expected == elementary_bound(2, q)

    @pytest.mark.parametrize("q, expected", [(4, 45), (9, 280)])
    def test_hermitian(self, q, expected):
        S = hermitian(field_of_order(q))
        assert count_zeros(S) == expected == elementary_bound(S.degree, q)
        assert fq_linear_components(S) == []

    def test_hermitian_needs_square_q(self, F3):
        with pytest.raises(QNotSquare):
            hermitian(F3)
        with pytest.raises(QNotSquare):
            CatalogId.HERMITIAN.degree(3)

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_full_space(self, q):
        S = full_space(field_of_order(q))
        assert S.degree == q + 1
        assert count_zeros(S) == theta(q, 3) == elementary_bound(q + 1, q)
        assert fq_linear_components(S) == []

    def test_full_space_extension_witness(self, F2):
        point, big = full_space_extension_witness(F2)
        assert big.q == 4
        rational = set(int(x) for x in field_embedding(F2, big))
        assert not all(x in rational for x in point)

    def test_build_surface(self, F4):
        assert build_surface("Hyperbolic", F4) == hyperbolic(F4)
        assert build_surface("hermitian", F4).degree == 3
        assert build_surface("X0*X1 + X2*X3", F4) == hyperbolic(F4)
        with pytest.raises(FormSyntaxError):
            build_surface("quartic", F4)

    def test_catalog_degrees(self):
        assert CatalogId.HYPERBOLIC.degree(7) == 2
        assert CatalogId.HERMITIAN.degree(9) == 4
        assert CatalogId.FULLSPACE.degree(4) == 5

    def test_hermitian_structure(self, F4, F9):
        for ctx in (F4, F9):
            H = hermitian_matrix(hermitian(ctx))
            assert H == Matrix.identity(ctx, 4)
            assert is_hermitian_self_conjugate(H)
        skewed = parse_form("X0*X1^2 + (t)*X1*X0^2", F4)
        assert not is_hermitian_self_conjugate(hermitian_matrix(skewed))


class TestBounds:
    def test_values(self):
        assert elementary_bound(2, 2) == 9
        assert elementary_bound(3, 4) == 45
        assert elementary_bound(4, 4) == 65
        assert sziklai_bound(4, 4) == 13
        assert sziklai_bound(2, 9) == 10

    def test_hasse_weil(self):
        hw = hasse_weil_bound(3, 9)
        assert hw.floor == 16
        assert hw.value == pytest.approx(16.0)
        assert hasse_weil_bound(3, 2).floor == 5

    @pytest.mark.parametrize("d", range(2, 8))
    @pytest.mark.parametrize("q", [4, 9, 16, 25])
    def test_gap_closed_form(self, q, d):
        direct, closed = sziklai_hasse_weil_gap(d, q)
        assert direct == closed

    def test_gap_example(self):
        assert sziklai_hasse_weil_gap(3, 9) == (3, 3)
        with pytest.raises(QNotSquare):
            sziklai_hasse_weil_gap(3, 8)

    def test_admissible_degrees(self):
        assert admissible_degrees(4) == {2, 3, 5}
        assert admissible_degrees(5) == {2, 6}
        assert admissible_degrees(9) == {2, 4, 10}

    def test_sziklai_degree_predicate(self):
        assert sziklai_degree_admissible(2, 9)
        assert not sziklai_degree_admissible(3, 9)
        assert sziklai_degree_admissible(4, 9)
        assert sziklai_degree_admissible(11, 9)
        assert not sziklai_degree_admissible(12, 9)
        assert not sziklai_degree_admissible(1, 4)

    def test_meaningful(self):
        assert elementary_bound_meaningful(5, 4)
        assert not elementary_bound_meaningful(6, 4)
        assert sziklai_bound_meaningful(6, 4)
        assert not sziklai_bound_meaningful(7, 4)
