"""
Sparse homogeneous forms over F_q.

A form keeps its terms as (exponent vector, coefficient code) pairs in
graded lexicographic order, highest first. Forms in 4 variables are
surfaces, in 3 variables plane curves, and binary forms appear as
restrictions to lines.
"""

from __future__ import annotations

import re
import numpy as np
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union
from src.constants import (
    FIELD_GENERATOR_NAME,
    QUATERNARY_VARIABLES,
    TERNARY_ALIASES,
    TERNARY_VARIABLES,
)
from src.core.gf import FieldCtx, FieldElement, field_embedding, render_code
from src.core.linalg import normalize
from src.core.projgeom import (
    PlaneFrame,
    ProjLine,
    ProjPlane,
    ProjPoint,
    enumerate_hyperplanes,
    hyperplane_incidence,
    line_basis,
    plane_coordinate_frame,
    point_array,
)
from src.exception import (
    FieldMismatch,
    FormSyntaxError,
    IdenticallyZeroOnPlane,
    NotHomogeneous,
    ZeroForm,
)

Exponents = Tuple[int, ...]
TermMap = Dict[Exponents, int]


def _clean(terms: TermMap) -> TermMap:
    return {e: c for e, c in terms.items() if c}


def poly_add(ctx: FieldCtx, a: TermMap, b: TermMap) -> TermMap:
    out = dict(a)
    for e, c in b.items():
        out[e] = ctx.add(out.get(e, 0), c)
    return _clean(out)


def poly_scale(ctx: FieldCtx, a: TermMap, c: int) -> TermMap:
    return _clean({e: ctx.mul(c, v) for e, v in a.items()})


def poly_mul(ctx: FieldCtx, a: TermMap, b: TermMap) -> TermMap:
    out: TermMap = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = ctx.add(out.get(e, 0), ctx.mul(c1, c2))
    return _clean(out)


def poly_pow(ctx: FieldCtx, a: TermMap, k: int, nvars: int) -> TermMap:
    result: TermMap = {(0,) * nvars: 1}
    base = a
    while k:
        if k & 1:
            result = poly_mul(ctx, result, base)
        k >>= 1
        if k:
            base = poly_mul(ctx, base, base)
    return result


@dataclass(frozen=True)
class HomogeneousForm:
    """
    A nonzero homogeneous polynomial over F_q.

    Attributes:
        ctx (FieldCtx): Coefficient field.
        nvars (int): Number of variables (2, 3 or 4).
        degree (int): Total degree of every term.
        terms (Tuple[Tuple[Exponents, int], ...]): Nonzero terms, canonical order.
    """

    ctx: FieldCtx
    nvars: int
    degree: int
    terms: Tuple[Tuple[Exponents, int], ...]

    @property
    def term_map(self) -> TermMap:
        return dict(self.terms)

    @property
    def coefficients(self) -> Dict[Exponents, FieldElement]:
        return {e: FieldElement(self.ctx, c) for e, c in self.terms}

    def coefficient(self, exps: Exponents) -> int:
        return self.term_map.get(tuple(exps), 0)

    def scaled(self, c: int) -> "HomogeneousForm":
        return make_form(self.ctx, self.nvars, poly_scale(self.ctx, self.term_map, c))

    def normalized(self) -> "HomogeneousForm":
        """Scale so that the coefficient of the graded-lex-least term is 1."""
        return self.scaled(self.ctx.inv(self.terms[-1][1]))

    def lift(self, big: FieldCtx) -> "HomogeneousForm":
        """The same form with coefficients embedded in an extension field."""
        image = field_embedding(self.ctx, big)
        return make_form(big, self.nvars, {e: int(image[c]) for e, c in self.terms})

    def __str__(self) -> str:
        return render_form(self)


def make_form(ctx: FieldCtx, nvars: int, terms: TermMap) -> HomogeneousForm:
    """
    Validate and canonicalize a term map.

    Raises:
        ZeroForm: When no nonzero term remains.
        NotHomogeneous: When the terms have different total degrees.
    """
    terms = _clean({tuple(int(x) for x in e): int(c) for e, c in terms.items()})
    if not terms:
        raise ZeroForm("the zero polynomial is not a form")
    degrees = {sum(e) for e in terms}
    if len(degrees) != 1:
        raise NotHomogeneous(f"terms of degrees {sorted(degrees)} in one form")
    if any(len(e) != nvars for e in terms):
        raise FormSyntaxError(f"exponent vectors must have length {nvars}")
    return HomogeneousForm(
        ctx=ctx,
        nvars=nvars,
        degree=degrees.pop(),
        terms=tuple(sorted(terms.items(), reverse=True)),
    )


def linear_form(ctx: FieldCtx, coeffs: Sequence[int]) -> HomogeneousForm:
    n = len(coeffs)
    return make_form(
        ctx, n, {tuple(1 if j == i else 0 for j in range(n)): int(c) for i, c in enumerate(coeffs)}
    )


def linear_coefficients(ell: HomogeneousForm) -> Tuple[int, ...]:
    if ell.degree != 1:
        raise ValueError(f"expected a linear form, got degree {ell.degree}")
    return tuple(ell.coefficient(tuple(1 if j == i else 0 for j in range(ell.nvars))) for i in range(ell.nvars))


def dual_point(ell: HomogeneousForm) -> ProjPlane:
    """The hyperplane ell = 0 by its normalized dual coordinates."""
    return ProjPlane(ell.ctx, normalize(ell.ctx, linear_coefficients(ell)))


# text syntax


def variable_names(nvars: int) -> Tuple[str, ...]:
    if nvars == 3:
        return TERNARY_VARIABLES
    return QUATERNARY_VARIABLES[:nvars]


_TOKEN = re.compile(r"\s*(?:(\d+)|(X\d|[A-Za-z])|(\S))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise FormSyntaxError(f"cannot tokenize {text[pos:]!r}")
        number, ident, symbol = match.groups()
        if number is not None:
            tokens.append(("num", number))
        elif ident is not None:
            tokens.append(("id", ident))
        elif symbol in "+-*^()":
            tokens.append(("op", symbol))
        else:
            raise FormSyntaxError(f"unexpected character {symbol!r}")
        pos = match.end()
    return tokens


def _infer_nvars(tokens: List[Tuple[str, str]]) -> int:
    names = {v for kind, v in tokens if kind == "id" and v != FIELD_GENERATOR_NAME}
    if any(n.startswith("X") and len(n) == 2 for n in names):
        return 4
    if names:
        return 3
    return 4


class _FormParser:
    """Recursive descent: expr := [+-] term ([+-] term)*, term := factor (* factor)*,
    factor := atom [^ int], atom := int | variable | t | ( expr )."""

    def __init__(self, ctx: FieldCtx, tokens: List[Tuple[str, str]], nvars: int) -> None:
        self.ctx = ctx
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars
        names = list(variable_names(nvars))
        self.variables = {name: i for i, name in enumerate(names)}
        if nvars == 3:
            self.variables.update({name: i for i, name in enumerate(TERNARY_ALIASES)})

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Tuple[str, str]:
        token = self.peek()
        if token is None:
            raise FormSyntaxError("unexpected end of input")
        self.pos += 1
        return token

    def constant(self, code: int) -> TermMap:
        return _clean({(0,) * self.nvars: code})

    def parse(self) -> TermMap:
        result = self.expr()
        if self.peek() is not None:
            raise FormSyntaxError(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self) -> TermMap:
        sign = "+"
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = self.take()[1]
        result = self.term()
        if sign == "-":
            result = poly_scale(self.ctx, result, self.ctx.neg(1))
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            if op == "-":
                rhs = poly_scale(self.ctx, rhs, self.ctx.neg(1))
            result = poly_add(self.ctx, result, rhs)
        return result

    def term(self) -> TermMap:
        result = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            result = poly_mul(self.ctx, result, self.factor())
        return result

    def factor(self) -> TermMap:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, value = self.take()
            if kind != "num":
                raise FormSyntaxError(f"exponent must be an integer, got {value!r}")
            return poly_pow(self.ctx, base, int(value), self.nvars)
        return base

    def atom(self) -> TermMap:
        kind, value = self.take()
        if kind == "num":
            return self.constant(self.ctx.from_int(int(value)))
        if kind == "id":
            if value == FIELD_GENERATOR_NAME:
                return self.constant(self.ctx.generator_code())
            if value not in self.variables:
                raise FormSyntaxError(f"unknown variable {value!r} for {self.nvars} variables")
            exps = [0] * self.nvars
            exps[self.variables[value]] = 1
            return {tuple(exps): 1}
        if value == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise FormSyntaxError("missing closing parenthesis")
            return inner
        raise FormSyntaxError(f"unexpected token {value!r}")


def parse_form(text: str, ctx: FieldCtx, nvars: Optional[int] = None) -> HomogeneousForm:
    """
    Parse the form syntax, e.g. ``X0*X1 - X2*X3`` or ``(t+1)*U^2 + V*W``.

    Coefficients use the element syntax; parentheses, products and integer
    powers of subexpressions are expanded. Variables are X0..X3 for
    quaternary forms and U, V, W (or X, Y, Z) for ternary ones.

    Raises:
        FormSyntaxError: On malformed text.
        NotHomogeneous: When the expansion is not homogeneous.
        ZeroForm: When the expansion is zero.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise FormSyntaxError("empty form")
    nvars = nvars or _infer_nvars(tokens)
    return make_form(ctx, nvars, _FormParser(ctx, tokens, nvars).parse())


def _render_monomial(exps: Exponents, names: Sequence[str]) -> str:
    parts = []
    for name, a in zip(names, exps):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def render_form(f: HomogeneousForm) -> str:
    """Canonical text of a form; ``parse_form(render_form(f)) == f``."""
    ctx = f.ctx
    names = variable_names(f.nvars)
    minus_one = ctx.neg(1)
    pieces = []
    for exps, c in f.terms:
        mono = _render_monomial(exps, names)
        negative = ctx.p > 2 and c == minus_one
        if c == 1 or negative:
            body = mono or "1"
        else:
            coeff = render_code(ctx, c)
            body = f"{coeff}*{mono}" if mono else coeff
        pieces.append(("-" if negative else "+", body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# evaluation


def _check_point(f: HomogeneousForm, P: ProjPoint) -> None:
    if P.ctx != f.ctx:
        raise FieldMismatch(f"form over {f.ctx!r}, point over {P.ctx!r}")
    if len(P.coords) != f.nvars:
        raise FieldMismatch(f"form in {f.nvars} variables, point with {len(P.coords)} coordinates")


def evaluate(f: HomogeneousForm, P: ProjPoint) -> FieldElement:
    """Value of f at the normalized representative of P."""
    _check_point(f, P)
    ctx = f.ctx
    acc = 0
    for exps, c in f.terms:
        value = c
        for x, a in zip(P.coords, exps):
            if a:
                value = ctx.mul(value, ctx.power(x, a))
        acc = ctx.add(acc, value)
    return FieldElement(ctx, acc)


def evaluate_codes(f: HomogeneousForm, pts: np.ndarray) -> np.ndarray:
    """Values of f on every row of a (n, nvars) code array."""
    ctx = f.ctx
    acc = np.zeros(len(pts), dtype=np.int64)
    for exps, c in f.terms:
        value = np.full(len(pts), c, dtype=np.int64)
        for i, a in enumerate(exps):
            if a:
                value = ctx.mul_table[value, ctx.power(pts[:, i], a)]
        acc = ctx.add_table[acc, value]
    return acc


@lru_cache(maxsize=4096)
def zero_mask(f: HomogeneousForm) -> np.ndarray:
    """Boolean mask over the points of P^{nvars-1}(F_q), in enumeration order."""
    mask = evaluate_codes(f, point_array(f.ctx, f.nvars - 1)) == 0
    mask.flags.writeable = False
    return mask


def count_zeros(f: HomogeneousForm) -> int:
    return int(zero_mask(f).sum())


# substitution


def substitute_linear(f: HomogeneousForm, M: Sequence[Sequence[int]]) -> TermMap:
    """
    Terms of f(M . Y), i.e. X_i = sum_j M[i][j] Y_j.

    Args:
        f (HomogeneousForm): The form.
        M (Sequence[Sequence[int]]): nvars x m matrix of codes.

    Returns:
        TermMap: Terms in the m new variables, possibly empty.
    """
    ctx = f.ctx
    m = len(M[0])
    units = [tuple(1 if k == j else 0 for k in range(m)) for j in range(m)]
    linear = [_clean({units[j]: int(M[i][j]) for j in range(m)}) for i in range(f.nvars)]
    powers: Dict[Tuple[int, int], TermMap] = {}

    def power_of(i: int, a: int) -> TermMap:
        if (i, a) not in powers:
            powers[(i, a)] = poly_pow(ctx, linear[i], a, m)
        return powers[(i, a)]

    result: TermMap = {}
    for exps, c in f.terms:
        product: TermMap = {(0,) * m: c}
        for i, a in enumerate(exps):
            if a:
                product = poly_mul(ctx, product, power_of(i, a))
                if not product:
                    break
        result = poly_add(ctx, result, product)
    return result


def change_coordinates(f: HomogeneousForm, M: Sequence[Sequence[int]]) -> HomogeneousForm:
    """The form f(M . Y) for a square invertible M."""
    return make_form(f.ctx, len(M[0]), substitute_linear(f, M))


def restrict_to_plane(f: HomogeneousForm, H: ProjPlane) -> HomogeneousForm:
    """
    The ternary form g(u, v, w) = f(u P0 + v P1 + w P2) for the canonical frame of H.

    Raises:
        IdenticallyZeroOnPlane: When f vanishes on H, i.e. H is a component.
    """
    if f.nvars != 4 or len(H.coords) != 4:
        raise FieldMismatch("restriction to a plane needs a quaternary form and a plane of P^3")
    if H.ctx != f.ctx:
        raise FieldMismatch(f"form over {f.ctx!r}, plane over {H.ctx!r}")
    frame: PlaneFrame = plane_coordinate_frame(H)
    terms = substitute_linear(f, frame.substitution())
    if not terms:
        raise IdenticallyZeroOnPlane(f"{render_form(f)} vanishes on the plane {H}")
    return make_form(f.ctx, 3, terms)


def restrict_to_line(f: HomogeneousForm, l: ProjLine) -> Optional[HomogeneousForm]:
    """
    The binary form f(s r1 + t r2) for the echelon basis (r1, r2) of the line,
    or None when f vanishes on the whole line.
    """
    if l.ctx != f.ctx:
        raise FieldMismatch(f"form over {f.ctx!r}, line over {l.ctx!r}")
    r1, r2 = line_basis(l)
    terms = substitute_linear(f, tuple(zip(r1, r2)))
    return make_form(f.ctx, 2, terms) if terms else None


def line_parameter(l: ProjLine, P: ProjPoint) -> Tuple[int, int]:
    """Parameters (s, t) with P = s r1 + t r2 on the echelon basis of the line."""
    r1, r2 = line_basis(l)
    k1 = next(i for i, x in enumerate(r1) if x)
    k2 = next(i for i, x in enumerate(r2) if x)
    return P.coords[k1], P.coords[k2]


# division by linear forms


def divide_by_linear(
    f: HomogeneousForm, ell: Union[HomogeneousForm, Sequence[int]]
) -> Tuple[Optional[HomogeneousForm], bool]:
    """
    Divide f by a nonzero linear form.

    Args:
        f (HomogeneousForm): Dividend, degree >= 1.
        ell (Union[HomogeneousForm, Sequence[int]]): Linear form or its coefficients.

    Returns:
        Tuple[Optional[HomogeneousForm], bool]: (quotient, True) when f = ell * quotient
            exactly, otherwise (None, False).
    """
    ctx = f.ctx
    coeffs = linear_coefficients(ell) if isinstance(ell, HomogeneousForm) else tuple(ell)
    if len(coeffs) != f.nvars:
        raise FieldMismatch("linear form and dividend have different variable counts")
    if not any(coeffs):
        raise ZeroForm("division by the zero linear form")
    k = next(i for i, a in enumerate(coeffs) if a)
    lead_inv = ctx.inv(coeffs[k])
    monic = [ctx.mul(lead_inv, a) for a in coeffs]

    remainder = f.term_map
    quotient: TermMap = {}
    while True:
        pending = [e for e in remainder if e[k] > 0]
        if not pending:
            break
        e = max(pending, key=lambda x: (x[k], x))
        c = remainder.pop(e)
        base = e[:k] + (e[k] - 1,) + e[k + 1 :]
        quotient[base] = ctx.add(quotient.get(base, 0), c)
        for j, a in enumerate(monic):
            if j == k or not a:
                continue
            target = base[:j] + (base[j] + 1,) + base[j + 1 :]
            value = ctx.sub(remainder.get(target, 0), ctx.mul(c, a))
            if value:
                remainder[target] = value
            else:
                remainder.pop(target, None)

    if remainder:
        return None, False
    return make_form(ctx, f.nvars, poly_scale(ctx, quotient, lead_inv)), True


def fq_linear_components(f: HomogeneousForm) -> List[HomogeneousForm]:
    """
    All F_q-rational linear factors of f with multiplicity, as normalized
    linear forms in enumeration order of their hyperplanes.

    Candidates are the hyperplanes on which f vanishes at every rational
    point; each candidate is confirmed by trial division.
    """
    ctx = f.ctx
    r = f.nvars - 1
    mask = zero_mask(f)
    incidence = hyperplane_incidence(ctx, r)
    factors: List[HomogeneousForm] = []
    current = f
    for H, on in zip(enumerate_hyperplanes(ctx, r), incidence):
        if current.degree == 0:
            break
        if not mask[on].all():
            continue
        ell = linear_form(ctx, H.coords)
        while current.degree >= 1:
            quotient, exact = divide_by_linear(current, ell)
            if not exact:
                break
            factors.append(ell)
            current = quotient
    return factors


def root_multiplicity(g: HomogeneousForm, root: Tuple[int, int]) -> int:
    """Multiplicity of the rational root (s0 : t0) of a binary form."""
    if g.nvars != 2:
        raise ValueError("root multiplicity is defined for binary forms")
    ctx = g.ctx
    s0, t0 = root
    ell = (t0, ctx.neg(s0))
    multiplicity = 0
    current = g
    while current.degree >= 1:
        quotient, exact = divide_by_linear(current, ell)
        if not exact:
            break
        multiplicity += 1
        current = quotient
    return multiplicity


def partial_derivative(f: HomogeneousForm, i: int) -> Optional[HomogeneousForm]:
    """The formal derivative d f / d X_i, or None when it vanishes."""
    ctx = f.ctx
    terms: TermMap = {}
    for exps, c in f.terms:
        a = exps[i]
        if a and a % ctx.p:
            target = exps[:i] + (a - 1,) + exps[i + 1 :]
            terms[target] = ctx.add(terms.get(target, 0), ctx.mul(c, ctx.from_int(a)))
    terms = _clean(terms)
    return make_form(ctx, f.nvars, terms) if terms else None
