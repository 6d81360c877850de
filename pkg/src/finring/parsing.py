"""Text formats: the ring-spec grammar, element literals, presentation matrices.

Ring specs (whitespace insignificant)::

    Z/4                        integers mod 4
    GF(9)                      finite field, sugar for Z/3[x]/(2+2*x+x^2)
    GF(2)[x]/(x^2)             monic quotient; binds to the preceding atom
    SC(2;3;<27 ints>;1,0,0)    structure constants over Z/2, table row-major
    Z/4 x Z/3                  direct product, flattened left-to-right

Element literals: integers for Z/n (reduced mod n), polynomials
``a0+a1*x+...`` for quotients (coefficients are integers, or parenthesized
base literals over a non-prime base), combinations of ``b0..b{d-1}`` for
structure-constant rings, tuples ``(e1,e2)`` for products.

Presentation matrices: rows separated by ``;``, entries by commas at paren
depth 0, each entry an element literal.  Row i lists the coefficients of
generator i across the relation columns; ``2,0;0,4`` over Z/8 presents
R^2 / <(2,0), (0,4)>.
"""

from __future__ import annotations

from .errors import ParseError, ValidationError
from .rings import (
    PolyQuotient,
    PolyQuotientRing,
    Product,
    ProductRing,
    Ring,
    RingSpec,
    StructureConstantRing,
    StructureConstants,
    Zmod,
    ZmodRing,
    spec_text,
)

# monic irreducible moduli (ascending coefficients) for the GF(p^k) sugar,
# shipped for all prime powers p^k <= 64 with k >= 2
GF_MODULI = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    32: (2, (1, 0, 1, 0, 0, 1)),
    64: (2, (1, 1, 0, 1, 1, 0, 1)),
    9: (3, (2, 2, 1)),
    27: (3, (1, 2, 0, 1)),
    25: (5, (2, 4, 1)),
    49: (7, (3, 6, 1)),
}


def _prime_power(q: int):
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
        p += 1
    return (q, 1)


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str):
        if not self.eat(literal):
            raise self.error(f"expected {literal!r}")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])


# ---------------------------------------------------------------------------
# ring specs


def parse_ring_spec(text: str) -> RingSpec:
    cur = _Cursor(text)
    spec = _parse_product(cur)
    if not cur.at_end():
        raise cur.error("unexpected trailing input")
    return spec


def _parse_product(cur: _Cursor) -> RingSpec:
    factors = [_parse_atom(cur)]
    while True:
        save = cur.pos
        cur.skip_ws()
        if cur.pos < len(cur.text) and cur.text[cur.pos] == "x":
            cur.pos += 1
            factors.append(_parse_atom(cur))
        else:
            cur.pos = save
            break
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def _parse_atom(cur: _Cursor) -> RingSpec:
    spec = _parse_base(cur)
    while True:
        save = cur.pos
        if cur.eat("["):
            cur.expect("x")
            cur.expect("]")
            cur.expect("/")
            cur.expect("(")
            coeffs = _parse_int_poly(cur)
            cur.expect(")")
            try:
                spec = PolyQuotient(spec, tuple(coeffs))
            except ValidationError as exc:
                cur.pos = save
                raise cur.error(str(exc)) from exc
        else:
            break
    return spec


def _parse_base(cur: _Cursor) -> RingSpec:
    if cur.eat("Z"):
        cur.expect("/")
        save = cur.pos
        n = cur.integer()
        try:
            return Zmod(n)
        except ValidationError as exc:
            cur.pos = save
            raise cur.error(str(exc)) from exc
    if cur.eat("GF"):
        cur.expect("(")
        save = cur.pos
        q = cur.integer()
        if cur.eat("^"):
            q = q ** cur.integer()
        cur.expect(")")
        pk = _prime_power(q)
        if pk is None:
            cur.pos = save
            raise cur.error(f"GF({q}): {q} is not a prime power")
        p, k = pk
        if k == 1:
            return Zmod(p)
        if q not in GF_MODULI:
            cur.pos = save
            raise cur.error(f"GF({q}): no modulus shipped for prime powers above 64")
        _, coeffs = GF_MODULI[q]
        return PolyQuotient(Zmod(p), coeffs)
    if cur.eat("SC"):
        cur.expect("(")
        save = cur.pos
        n = cur.integer()
        cur.expect(";")
        dim = cur.integer()
        cur.expect(";")
        flat = [cur.integer()]
        while cur.eat(","):
            flat.append(cur.integer())
        cur.expect(";")
        unit = [cur.integer()]
        while cur.eat(","):
            unit.append(cur.integer())
        cur.expect(")")
        if len(flat) != dim**3:
            cur.pos = save
            raise cur.error(
                f"structure-constant table needs {dim ** 3} entries, got {len(flat)}"
            )
        table = tuple(
            tuple(
                tuple(flat[(i * dim + j) * dim + k] for k in range(dim))
                for j in range(dim)
            )
            for i in range(dim)
        )
        try:
            return StructureConstants(n, dim, table, tuple(unit))
        except ValidationError as exc:
            cur.pos = save
            raise cur.error(str(exc)) from exc
    raise cur.error("expected a ring spec (Z/n, GF(q), SC(...) or a quotient)")


def _parse_int_poly(cur: _Cursor) -> list[int]:
    """Polynomial in x with integer coefficients; ascending coefficient list."""
    coeffs: dict[int, int] = {}
    sign = 1
    if cur.eat("-"):
        sign = -1
    while True:
        coef, power = _parse_int_term(cur)
        coeffs[power] = coeffs.get(power, 0) + sign * coef
        if cur.eat("+"):
            sign = 1
        elif cur.eat("-"):
            sign = -1
        else:
            break
    degree = max(coeffs)
    return [coeffs.get(k, 0) for k in range(degree + 1)]


def _parse_int_term(cur: _Cursor):
    cur.skip_ws()
    ch = cur.peek()
    if ch.isdigit():
        coef = cur.integer()
        if cur.eat("*") or cur.peek() == "x":
            cur.expect("x")
            power = cur.integer() if cur.eat("^") else 1
            return coef, power
        return coef, 0
    if ch == "x":
        cur.expect("x")
        power = cur.integer() if cur.eat("^") else 1
        return 1, power
    raise cur.error("expected a polynomial term")


# ---------------------------------------------------------------------------
# element literals


def parse_element(ring: Ring, text: str):
    cur = _Cursor(text)
    value = _parse_element(ring, cur)
    if not cur.at_end():
        raise cur.error("unexpected trailing input in element literal")
    return value


def _parse_element(ring: Ring, cur: _Cursor):
    from .ideals import IdempotentFactorRing  # cycle-free at call time

    if isinstance(ring, ZmodRing):
        return cur.integer() % ring.n
    if isinstance(ring, ProductRing):
        cur.expect("(")
        parts = []
        for i, factor in enumerate(ring.factors):
            if i:
                cur.expect(",")
            parts.append(_parse_element(factor, cur))
        cur.expect(")")
        return tuple(parts)
    if isinstance(ring, PolyQuotientRing):
        return _parse_poly_literal(ring, cur)
    if isinstance(ring, StructureConstantRing):
        return _parse_sc_literal(ring, cur)
    if isinstance(ring, IdempotentFactorRing):
        value = _parse_element(ring.parent, cur)
        if value not in ring.index:
            raise cur.error("element lies outside the factor ring")
        return value
    raise cur.error(f"no literal syntax for {type(ring).__name__}")


def _parse_poly_literal(ring: PolyQuotientRing, cur: _Cursor):
    base = ring.base
    if ring.deg >= 2:
        x = (base.zero, base.one) + (base.zero,) * (ring.deg - 2)
    else:
        # deg 1: x itself reduces to -m0
        x = (base.neg(ring.modulus[0]),)
    result = ring.zero
    sign = 1
    if cur.eat("-"):
        sign = -1
    while True:
        term = _parse_poly_term(ring, x, cur)
        result = ring.add(result, term) if sign == 1 else ring.sub(result, term)
        if cur.eat("+"):
            sign = 1
        elif cur.eat("-"):
            sign = -1
        else:
            break
    return result


def _parse_poly_term(ring: PolyQuotientRing, x, cur: _Cursor):
    base = ring.base
    ch = cur.peek()
    coeff = None
    if ch == "(":
        # parenthesized coefficient literal of the base ring
        cur.expect("(")
        coeff = _parse_element(base, cur)
        cur.expect(")")
    elif ch.isdigit() or ch in "+-":
        coeff = base.scalar_from_int(cur.integer())
    if coeff is not None:
        if cur.eat("*") or cur.peek() == "x":
            cur.expect("x")
            power = cur.integer() if cur.eat("^") else 1
            return _embed_coeff_times_power(ring, coeff, x, power)
        return _embed_coeff_times_power(ring, coeff, x, 0)
    if ch == "x":
        cur.expect("x")
        power = cur.integer() if cur.eat("^") else 1
        return _embed_coeff_times_power(ring, base.one, x, power)
    raise cur.error("expected a polynomial element term")


def _embed_coeff_times_power(ring: PolyQuotientRing, coeff, x, power: int):
    base = ring.base
    embedded = (coeff,) + (base.zero,) * (ring.deg - 1)
    result = embedded
    for _ in range(power):
        result = ring.mul(result, x)
    return result


def _parse_sc_literal(ring: StructureConstantRing, cur: _Cursor):
    result = ring.zero
    sign = 1
    if cur.eat("-"):
        sign = -1
    while True:
        term = _parse_sc_term(ring, cur)
        result = ring.add(result, term) if sign == 1 else ring.sub(result, term)
        if cur.eat("+"):
            sign = 1
        elif cur.eat("-"):
            sign = -1
        else:
            break
    return result


def _parse_sc_term(ring: StructureConstantRing, cur: _Cursor):
    n, dim = ring.n, ring.dim
    ch = cur.peek()
    if ch.isdigit() or ch in "+-":
        coef = cur.integer()
        if cur.eat("*") or cur.peek() == "b":
            cur.expect("b")
            i = cur.integer()
            if not 0 <= i < dim:
                raise cur.error(f"basis name b{i} out of range (dimension {dim})")
            return tuple((coef % n) if t == i else 0 for t in range(dim))
        return ring.scalar_from_int(coef)
    if ch == "b":
        cur.expect("b")
        i = cur.integer()
        if not 0 <= i < dim:
            raise cur.error(f"basis name b{i} out of range (dimension {dim})")
        return tuple(1 if t == i else 0 for t in range(dim))
    raise cur.error("expected a structure-constant element term")


def format_element(ring: Ring, value) -> str:
    """Canonical literal printer; round-trips through :func:`parse_element`."""
    from .ideals import IdempotentFactorRing

    if isinstance(ring, ZmodRing):
        return str(value)
    if isinstance(ring, ProductRing):
        parts = [format_element(f, v) for f, v in zip(ring.factors, value)]
        return "(" + ",".join(parts) + ")"
    if isinstance(ring, PolyQuotientRing):
        base = ring.base
        terms = []
        for k, c in enumerate(value):
            if c == base.zero:
                continue
            if isinstance(base, ZmodRing):
                coeff_txt = format_element(base, c)
            else:
                coeff_txt = "(" + format_element(base, c) + ")"
            if k == 0:
                terms.append(coeff_txt)
                continue
            xk = "x" if k == 1 else f"x^{k}"
            terms.append(xk if c == base.one else f"{coeff_txt}*{xk}")
        return "+".join(terms) if terms else "0"
    if isinstance(ring, StructureConstantRing):
        terms = []
        for k, c in enumerate(value):
            if c == 0:
                continue
            terms.append(f"b{k}" if c == 1 else f"{c}*b{k}")
        return "+".join(terms) if terms else "0"
    if isinstance(ring, IdempotentFactorRing):
        return format_element(ring.parent, value)
    raise ValidationError(f"no literal syntax for {type(ring).__name__}")


# ---------------------------------------------------------------------------
# presentation matrices


def _split_depth0(text: str, sep: str) -> list[str]:
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def parse_presentation(ring: Ring, text: str):
    """Parse a relation matrix into a Presentation over ``ring``.

    An empty string presents the zero module (no generators).
    """
    from .modules import Presentation

    stripped = text.strip()
    if not stripped:
        return Presentation(ring, 0, ())
    rows = []
    for row_text in _split_depth0(stripped, ";"):
        entries = [parse_element(ring, e) for e in _split_depth0(row_text, ",")]
        rows.append(entries)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("ragged presentation matrix", text, 0)
    columns = tuple(
        tuple(rows[i][j] for i in range(len(rows))) for j in range(width)
    )
    # drop all-zero columns; they present nothing
    columns = tuple(c for c in columns if any(v != ring.zero for v in c))
    return Presentation(ring, len(rows), columns)


__all__ = [
    "GF_MODULI",
    "format_element",
    "parse_element",
    "parse_presentation",
    "parse_ring_spec",
    "spec_text",
]
