import pytest
from hypothesis import given, settings, strategies as st
from strategies import fields
from src.core.gf import (
    FieldElement,
    exact_sqrt,
    field_create,
    field_embedding,
    field_of_order,
    frobenius,
    in_subfield,
    lex_least_irreducible,
    parse_code,
    parse_element,
    prime_power_decomposition,
    render_code,
    render_element,
    sqrt_q_norm,
)
from src.entity.config_entity import BudgetConfig
from src.exception import (
    BudgetExceeded,
    DegreeZero,
    DivisionByZero,
    FieldMismatch,
    FormSyntaxError,
    NotPrime,
    QNotSquare,
)


class TestConstruction:
    def test_defining_polynomials(self):
        assert lex_least_irreducible(2, 2) == (1, 1, 1)
        assert lex_least_irreducible(3, 2) == (1, 0, 1)
        assert lex_least_irreducible(2, 3) == (1, 1, 0, 1)

    def test_orders(self, F2, F4, F9):
        assert (F2.q, F4.q, F9.q) == (2, 4, 9)
        assert repr(F4) == "GF(2^2)"

    def test_contexts_are_cached(self):
        assert field_create(3, 2) is field_of_order(9)

    @pytest.mark.parametrize("p", [0, 1, 4, 9, 15])
    def test_not_prime(self, p):
        with pytest.raises(NotPrime):
            field_create(p, 1)

    def test_degree_zero(self):
        with pytest.raises(DegreeZero):
            field_create(2, 0)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            field_create(2, 7, BudgetConfig(max_field_q=64, max_space_q=16, max_points=40000))

    def test_prime_power_decomposition(self):
        assert prime_power_decomposition(9) == (3, 2)
        assert prime_power_decomposition(7) == (7, 1)
        with pytest.raises(NotPrime):
            prime_power_decomposition(12)

    def test_exact_sqrt(self):
        assert exact_sqrt(9) == 3
        assert exact_sqrt(8) is None


class TestArithmetic:
    def test_f4_generator(self, F4):
        t = FieldElement(F4, 2)
        assert t * t == t + 1
        assert t**3 == FieldElement(F4, 1)

    def test_f9_generator_squares_to_minus_one(self, F9):
        t = FieldElement(F9, F9.generator_code())
        assert t * t == FieldElement(F9, 2)

    def test_division_by_zero(self, F3):
        with pytest.raises(DivisionByZero):
            FieldElement(F3, 1) / FieldElement(F3, 0)

    def test_mixed_fields(self, F2, F3):
        with pytest.raises(FieldMismatch):
            FieldElement(F2, 1) + FieldElement(F3, 1)

    def test_integer_coercion(self, F3):
        assert FieldElement(F3, 2) + 2 == FieldElement(F3, 1)
        assert 1 - FieldElement(F3, 2) == FieldElement(F3, 2)

    @given(data=st.data())
    @settings(max_examples=200)
    def test_field_axioms(self, data):
        ctx = data.draw(fields)
        a, b, c = (FieldElement(ctx, data.draw(st.integers(0, ctx.q - 1))) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == FieldElement(ctx, 0)
        if a:
            assert a * (FieldElement(ctx, 1) / a) == FieldElement(ctx, 1)

    @given(data=st.data())
    def test_fermat(self, data):
        ctx = data.draw(fields)
        a = FieldElement(ctx, data.draw(st.integers(0, ctx.q - 1)))
        assert a**ctx.q == a


class TestFrobenius:
    def test_f4(self, F4):
        t = FieldElement(F4, 2)
        assert frobenius(t) == FieldElement(F4, 3)
        assert frobenius(t, 2) == t

    @given(data=st.data())
    def test_additive(self, data):
        ctx = data.draw(fields)
        a, b = (FieldElement(ctx, data.draw(st.integers(0, ctx.q - 1))) for _ in range(2))
        assert frobenius(a + b) == frobenius(a) + frobenius(b)

    def test_negative_power(self, F4):
        with pytest.raises(ValueError):
            frobenius(FieldElement(F4, 2), -1)

    def test_subfield(self, F4, F9):
        assert in_subfield(FieldElement(F4, 1), 1)
        assert not in_subfield(FieldElement(F4, 2), 1)
        assert sum(in_subfield(FieldElement(F9, v), 1) for v in range(9)) == 3

    def test_norm_lands_in_subfield(self, F9):
        for v in range(9):
            assert in_subfield(sqrt_q_norm(FieldElement(F9, v)), 1)

    def test_norm_needs_square_order(self, F3):
        with pytest.raises(QNotSquare):
            sqrt_q_norm(FieldElement(F3, 1))


class TestSyntax:
    def test_render(self, F3, F4):
        assert render_code(F3, 2) == "2"
        assert render_code(F4, 3) == "(t+1)"
        assert render_code(F4, 1) == "1"

    def test_parse(self, F4, F9):
        assert parse_code(F4, "(t+1)") == 3
        assert parse_code(F4, "t") == 2
        assert parse_code(F9, "2*t+1") == 7
        assert parse_code(F9, "-1") == 2

    @pytest.mark.parametrize("text", ["", "t+", "s", "1**t"])
    def test_parse_errors(self, F4, text):
        with pytest.raises(FormSyntaxError):
            parse_code(F4, text)

    def test_generator_of_prime_field(self, F3):
        with pytest.raises(FormSyntaxError):
            parse_code(F3, "t")

    def test_render_parse(self, F9):
        for v in range(9):
            assert parse_code(F9, render_code(F9, v)) == v

    def test_elements(self, F4):
        a = parse_element(F4, "t^2")
        assert a == FieldElement(F4, 3)
        assert render_element(a) == "(t+1)"


class TestEmbedding:
    def test_prime_subfield(self, F3, F9):
        assert list(field_embedding(F3, F9)) == [0, 1, 2]

    def test_is_a_homomorphism(self, F4):
        F16 = field_create(2, 4)
        image = field_embedding(F4, F16)
        for a in range(4):
            for b in range(4):
                assert image[F4.mul(a, b)] == F16.mul(int(image[a]), int(image[b]))
                assert image[F4.add(a, b)] == F16.add(int(image[a]), int(image[b]))

    def test_incompatible(self, F4):
        with pytest.raises(FieldMismatch):
            field_embedding(F4, field_create(2, 3))
