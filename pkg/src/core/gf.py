"""
Exact arithmetic in F_p and F_{p^e}.

Elements are stored as integer codes 0..q-1: the code of
c_0 + c_1 t + ... + c_{e-1} t^{e-1} is sum(c_i * p^i). Every context carries
precomputed addition, multiplication, negation and inversion tables (built
from exp/log tables of a primitive element), so the enumeration code in the
rest of the package can work on numpy arrays of codes.
"""

from __future__ import annotations

import re
import itertools
import numpy as np
from math import isqrt
from functools import lru_cache
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union
from src.constants import FIELD_GENERATOR_NAME
from src.entity.config_entity import BudgetConfig, DEFAULT_BUDGET
from src.exception import (
    BudgetExceeded,
    DegreeZero,
    DivisionByZero,
    FieldMismatch,
    FormSyntaxError,
    NotPrime,
    QNotSquare,
)

Codes = Union[int, np.ndarray]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for k in range(3, isqrt(n) + 1, 2):
        if n % k == 0:
            return False
    return True


def exact_sqrt(n: int) -> Optional[int]:
    """Return the integer square root of ``n`` when ``n`` is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def prime_power_decomposition(q: int) -> Tuple[int, int]:
    """
    Split a prime power into (p, e).

    Args:
        q (int): Candidate field order.

    Returns:
        Tuple[int, int]: The characteristic and the extension degree.

    Raises:
        NotPrime: When q is not a prime power.
    """
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next(k for k in range(2, q + 1) if q % k == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


def _poly_mod(a: List[int], modulus: List[int], p: int) -> List[int]:
    """Remainder of ``a`` modulo the monic polynomial ``modulus`` (coefficients low-to-high)."""
    a = list(a)
    m = len(modulus) - 1
    for k in range(len(a) - 1, m - 1, -1):
        c = a[k] % p
        if c:
            for i in range(m + 1):
                a[k - m + i] = (a[k - m + i] - c * modulus[i]) % p
    return [c % p for c in a[:m]] if m else []


def is_irreducible(coeffs: Tuple[int, ...], p: int) -> bool:
    """
    Decide irreducibility over F_p by trial division with every monic
    polynomial of degree 1..deg/2.

    Args:
        coeffs (Tuple[int, ...]): Monic polynomial, coefficients low-to-high.
        p (int): The characteristic.

    Returns:
        bool: True when no proper factor exists.
    """
    degree = len(coeffs) - 1
    for k in range(1, degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            if not any(_poly_mod(list(coeffs), list(tail) + [1], p)):
                return False
    return True


def lex_least_irreducible(p: int, e: int) -> Tuple[int, ...]:
    """
    The lexicographically least monic irreducible polynomial of degree e over
    F_p, ordering by (c_0, c_1, ..., c_{e-1}).

    Args:
        p (int): The characteristic.
        e (int): The degree.

    Returns:
        Tuple[int, ...]: Coefficients low-to-high, leading 1 included.
    """
    for tail in itertools.product(range(p), repeat=e):
        candidate = tuple(tail) + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise NotPrime(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldCtx:
    """
    Description of F_q = F_p[t]/(defining_poly) together with its code tables.

    Attributes:
        p (int): Prime characteristic.
        e (int): Extension degree.
        defining_poly (Tuple[int, ...]): Monic irreducible, low-to-high.
    """

    p: int
    e: int
    defining_poly: Tuple[int, ...]
    digits: np.ndarray = field(init=False, compare=False, repr=False)
    add_table: np.ndarray = field(init=False, compare=False, repr=False)
    mul_table: np.ndarray = field(init=False, compare=False, repr=False)
    neg_table: np.ndarray = field(init=False, compare=False, repr=False)
    inv_table: np.ndarray = field(init=False, compare=False, repr=False)
    exp_table: np.ndarray = field(init=False, compare=False, repr=False)
    log_table: np.ndarray = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        q = self.q
        weights = self.p ** np.arange(self.e, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // weights[None, :]) % self.p

        add_table = ((digits[:, None, :] + digits[None, :, :]) % self.p) @ weights
        neg_table = ((-digits) % self.p) @ weights

        generator = self._find_generator(digits)
        exp_table = np.zeros(q - 1, dtype=np.int64)
        log_table = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp_table[i] = x
            log_table[x] = i
            x = self._poly_mul_code(x, generator, digits)

        logs = log_table
        nonzero = logs >= 0
        mul_table = np.zeros((q, q), dtype=np.int64)
        idx = (logs[:, None] + logs[None, :]) % (q - 1)
        both = nonzero[:, None] & nonzero[None, :]
        mul_table[both] = exp_table[idx[both]]

        inv_table = np.zeros(q, dtype=np.int64)
        inv_table[nonzero] = exp_table[(-logs[nonzero]) % (q - 1)]

        for name, table in (
            ("digits", digits),
            ("add_table", add_table),
            ("mul_table", mul_table),
            ("neg_table", neg_table),
            ("inv_table", inv_table),
            ("exp_table", exp_table),
            ("log_table", log_table),
        ):
            table.flags.writeable = False
            object.__setattr__(self, name, table)

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"

    def _poly_mul_code(self, a: int, b: int, digits: np.ndarray) -> int:
        da, db = digits[a], digits[b]
        product = [0] * (2 * self.e - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    product[i + j] += int(ca) * int(cb)
        reduced = _poly_mod(product, list(self.defining_poly), self.p) if self.e > 1 else [
            product[0] % self.p
        ]
        return sum(c * self.p**i for i, c in enumerate(reduced))

    def _find_generator(self, digits: np.ndarray) -> int:
        q = self.q
        if q == 2:
            return 1
        for g in range(2, q):
            x, order = g, 1
            while x != 1:
                x = self._poly_mul_code(x, g, digits)
                order += 1
            if order == q - 1:
                return g
        raise NotPrime(f"no primitive element found for {self!r}")

    # code-level arithmetic; scalars in, python ints out; arrays in, arrays out

    def add(self, a: Codes, b: Codes) -> Codes:
        out = self.add_table[a, b]
        return int(out) if np.ndim(out) == 0 else out

    def sub(self, a: Codes, b: Codes) -> Codes:
        out = self.add_table[a, self.neg_table[b]]
        return int(out) if np.ndim(out) == 0 else out

    def mul(self, a: Codes, b: Codes) -> Codes:
        out = self.mul_table[a, b]
        return int(out) if np.ndim(out) == 0 else out

    def neg(self, a: Codes) -> Codes:
        out = self.neg_table[a]
        return int(out) if np.ndim(out) == 0 else out

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        return int(self.inv_table[a])

    def power(self, a: Codes, k: int) -> Codes:
        if k < 0:
            return self.power(self.inv(a), -k)
        if k == 0:
            return 1 if np.ndim(a) == 0 else np.ones_like(a)
        if np.ndim(a) == 0:
            if a == 0:
                return 0
            return int(self.exp_table[(int(self.log_table[a]) * k) % (self.q - 1)])
        a = np.asarray(a)
        out = self.exp_table[(self.log_table[a] * k) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def from_int(self, n: int) -> int:
        """Code of the image of the integer n in the prime subfield."""
        return n % self.p

    def generator_code(self) -> int:
        if self.e == 1:
            raise FormSyntaxError(f"{self!r} is a prime field and has no generator t")
        return self.p


@lru_cache(maxsize=None)
def _build_field(p: int, e: int) -> FieldCtx:
    return FieldCtx(p=p, e=e, defining_poly=lex_least_irreducible(p, e))


def field_create(p: int, e: int = 1, budget: Optional[BudgetConfig] = None) -> FieldCtx:
    """
    Build the canonical context of F_{p^e}.

    The defining polynomial is the lexicographically least monic irreducible
    of degree e, so serialized elements are reproducible across runs.

    Args:
        p (int): Prime characteristic.
        e (int): Extension degree, at least 1.
        budget (Optional[BudgetConfig]): Caps; the default budget when omitted.

    Returns:
        FieldCtx: The (cached) context.

    Raises:
        NotPrime: When p is not prime.
        DegreeZero: When e < 1.
        BudgetExceeded: When p^e exceeds max_field_q.
    """
    budget = budget or DEFAULT_BUDGET
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise DegreeZero(f"extension degree must be at least 1, got {e}")
    budget.check_field(p**e)
    return _build_field(p, e)


def field_of_order(q: int, budget: Optional[BudgetConfig] = None) -> FieldCtx:
    p, e = prime_power_decomposition(q)
    return field_create(p, e, budget)


@dataclass(frozen=True)
class FieldElement:
    """
    Immutable element of a finite field.

    Attributes:
        ctx (FieldCtx): The ambient field.
        value (int): The element code.
    """

    ctx: FieldCtx
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.ctx.q:
            raise FieldMismatch(f"code {self.value} is outside {self.ctx!r}")
        object.__setattr__(self, "value", int(self.value))

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.ctx.digits[self.value])

    def _coerce(self, other: Union["FieldElement", int]) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{self.ctx!r} and {other.ctx!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.ctx.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return b if b is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return b if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return b if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return b if b is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.mul(self.value, self.ctx.inv(b)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, k: int) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.power(self.value, k))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return render_element(self)


def element(ctx: FieldCtx, value: int) -> FieldElement:
    return FieldElement(ctx, value)


def zero(ctx: FieldCtx) -> FieldElement:
    return FieldElement(ctx, 0)


def one(ctx: FieldCtx) -> FieldElement:
    return FieldElement(ctx, 1)


def elements(ctx: FieldCtx) -> List[FieldElement]:
    return [FieldElement(ctx, v) for v in range(ctx.q)]


def _same_field(a: FieldElement, b: FieldElement) -> None:
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx!r} and {b.ctx!r}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.ctx, a.ctx.inv(a.value))


def frobenius(a: FieldElement, k: int = 1) -> FieldElement:
    """
    Apply the p-power Frobenius k times: a -> a^{p^k}.

    Raises:
        ValueError: When k is negative.
    """
    if k < 0:
        raise ValueError("frobenius power count must be nonnegative")
    ctx = a.ctx
    # a^{p^k} only depends on k mod e
    return FieldElement(ctx, ctx.power(a.value, ctx.p ** (k % ctx.e)))


def sqrt_q_norm(a: FieldElement) -> FieldElement:
    """
    The norm to the subfield of order sqrt(q): a -> a^{sqrt(q)+1}.

    Raises:
        QNotSquare: When q is not a square.
    """
    ctx = a.ctx
    if ctx.e % 2:
        raise QNotSquare(f"q={ctx.q} is not a square")
    r = ctx.p ** (ctx.e // 2)
    return FieldElement(ctx, ctx.power(a.value, r + 1))


def in_subfield(a: FieldElement, k: int) -> bool:
    """True when a lies in the subfield F_{p^k}, i.e. is fixed by the k-fold Frobenius."""
    return frobenius(a, k) == a


def render_code(ctx: FieldCtx, value: int) -> str:
    if ctx.e == 1 or value < ctx.p:
        return str(int(value))
    terms = []
    for power, c in reversed(list(enumerate(int(d) for d in ctx.digits[value]))):
        if not c:
            continue
        if power == 0:
            terms.append(str(c))
        else:
            var = FIELD_GENERATOR_NAME if power == 1 else f"{FIELD_GENERATOR_NAME}^{power}"
            terms.append(var if c == 1 else f"{c}*{var}")
    return "(" + "+".join(terms) + ")"


def render_element(a: FieldElement) -> str:
    """Prime field: decimal integer. Extension field: polynomial in t, e.g. ``(t+1)``."""
    return render_code(a.ctx, a.value)


_ELEMENT_TERM = re.compile(r"^(\d+)?(?:\*?(t)(?:\^(\d+))?)?$")


def parse_code(ctx: FieldCtx, text: str) -> int:
    """
    Parse the element syntax into a code.

    Raises:
        FormSyntaxError: When the text is not an element of ``ctx``.
    """
    body = text.replace(" ", "")
    while body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body:
        raise FormSyntaxError(f"empty field element in {text!r}")

    pieces = re.findall(r"([+-]?)([^+-]+)", body)
    if "".join(sign + term for sign, term in pieces) != body:
        raise FormSyntaxError(f"malformed field element {text!r}")

    value = 0
    for sign, term in pieces:
        match = _ELEMENT_TERM.match(term)
        if match is None or (match.group(1) is None and match.group(2) is None):
            raise FormSyntaxError(f"malformed field element {text!r}")
        coeff = ctx.from_int(int(match.group(1)) if match.group(1) else 1)
        if match.group(2):
            power = int(match.group(3)) if match.group(3) else 1
            coeff = ctx.mul(coeff, ctx.power(ctx.generator_code(), power))
        value = ctx.sub(value, coeff) if sign == "-" else ctx.add(value, coeff)
    return value


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    return FieldElement(ctx, parse_code(ctx, text))


@lru_cache(maxsize=None)
def field_embedding(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    """
    Code map F_{p^a} -> F_{p^b} for a | b.

    The generator of the small field goes to the least root (by code) of its
    defining polynomial in the big field.

    Args:
        small (FieldCtx): Source field.
        big (FieldCtx): Target field.

    Returns:
        np.ndarray: ``image[code]`` is the big-field code of the small element.

    Raises:
        FieldMismatch: When the small field does not embed in the big one.
    """
    if small.p != big.p or big.e % small.e:
        raise FieldMismatch(f"{small!r} does not embed in {big!r}")

    def evaluate(coeffs, x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = big.add(big.mul(acc, x), big.from_int(int(c)))
        return acc

    root = next(x for x in range(big.q) if evaluate(small.defining_poly, x) == 0)
    image = np.array(
        [evaluate(small.digits[v], root) for v in range(small.q)], dtype=np.int64
    )
    image.flags.writeable = False
    return image
