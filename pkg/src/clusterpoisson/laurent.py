"""Sparse multivariate Laurent polynomials over exact rationals.

Terms live in a map from integer exponent vectors to nonzero Fraction
coefficients.  Coefficients are rational rather than integer so that
intermediate field-of-fractions steps stay exact; integrality of final
cluster-variable expansions is then checked, not assumed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import ClusterPoissonError, DimensionMismatch

Coeff = Union[int, Fraction]


class NotDivisible(ClusterPoissonError, ArithmeticError):
    """No Laurent-polynomial quotient exists."""


class PolyParseError(ClusterPoissonError, ValueError):
    """Malformed polynomial expression."""


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Coeff] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != nvars:
                raise DimensionMismatch(f"exponent vector {exps} has length != {nvars}")
            c = Fraction(coeff)
            if c:
                clean[tuple(int(e) for e in exps)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: Coeff) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, j: int) -> "LaurentPoly":
        if not 0 <= j < nvars:
            raise IndexError(f"variable index {j} out of range for {nvars} variables")
        return cls.monomial(nvars, tuple(1 if i == j else 0 for i in range(nvars)))

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: Coeff = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): coeff})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_integral(self) -> bool:
        """All coefficients are integers."""
        return all(c.denominator == 1 for c in self.terms.values())

    def min_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum exponent over all terms (zero poly: all 0)."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[j] for e in self.terms) for j in range(self.nvars))

    def constant_value(self) -> Fraction | None:
        """The value if this is a constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (exps, c), = self.terms.items()
            if not any(exps):
                return c
        return None

    def key(self) -> tuple:
        """Canonical hashable form (used for dedup and ordering)."""
        return (self.nvars, tuple(sorted(self.terms.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.key())

    # -- ring operations ---------------------------------------------------

    def _check_compat(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"variable counts differ: {self.nvars} != {other.nvars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compat(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", Coeff]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = Fraction(other)
            return LaurentPoly(self.nvars, {e: cc * c for e, cc in self.terms.items()})
        self._check_compat(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            (exps, c), = self.terms.items()
            return LaurentPoly(self.nvars, {tuple(k * e for e in exps): Fraction(1) / c ** (-k)})
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def shift(self, offset: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^offset."""
        return LaurentPoly(self.nvars, {tuple(e + o for e, o in zip(exps, offset)): c for exps, c in self.terms.items()})

    def exact_div(self, q: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient r with r*q == self, as a Laurent polynomial.

        Both operands are exponent-shifted to ordinary polynomials, then
        divided by cancelling leading terms in lexicographic order; any
        failure along the way means no quotient exists.
        """
        self._check_compat(q)
        if q.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        mp, mq = self.min_exponents(), q.min_exponents()
        num = {tuple(e - m for e, m in zip(exps, mp)): c for exps, c in self.terms.items()}
        den = {tuple(e - m for e, m in zip(exps, mq)): c for exps, c in q.terms.items()}
        lead_q = max(den)
        quot: dict[tuple[int, ...], Fraction] = {}
        while num:
            lead_r = max(num)
            t = tuple(a - b for a, b in zip(lead_r, lead_q))
            if any(e < 0 for e in t):
                raise NotDivisible("no Laurent polynomial quotient")
            c = num[lead_r] / den[lead_q]
            quot[t] = c
            for e, cc in den.items():
                key = tuple(a + b for a, b in zip(t, e))
                s = num.get(key, Fraction(0)) - c * cc
                if s:
                    num[key] = s
                else:
                    num.pop(key, None)
        shift = tuple(a - b for a, b in zip(mp, mq))
        return LaurentPoly(self.nvars, {tuple(e + s for e, s in zip(exps, shift)): c for exps, c in quot.items()})

    def derivative(self, j: int) -> "LaurentPoly":
        """Formal partial derivative with respect to variable j."""
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            if exps[j]:
                e = list(exps)
                e[j] -= 1
                out[tuple(e)] = c * exps[j]
        return LaurentPoly(self.nvars, out)

    def support_hits(self, variables: Iterable[int], mode: str = "every") -> bool:
        """Whether every (resp. any) term has a strictly positive exponent
        in at least one of the given variables."""
        idx = set(variables)
        for j in idx:
            if not 0 <= j < self.nvars:
                raise IndexError(f"variable index {j} out of range")
        if mode not in ("every", "any"):
            raise ValueError(f"unknown mode {mode!r}")
        hits = (any(exps[j] > 0 for j in idx) for exps in self.terms)
        return all(hits) if mode == "every" else any(hits)

    def eval_at(self, values: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Substitute values[j] for variable j.

        Negative exponents are handled by separately evaluating the
        monomial denominator and performing exact division, so the call
        fails with NotDivisible when the substituted expression is not
        polynomial in the target ring.
        """
        if len(values) != self.nvars:
            raise DimensionMismatch(f"expected {self.nvars} values, got {len(values)}")
        if not values:
            raise ValueError("cannot evaluate with no target ring")
        target_nvars = values[0].nvars
        mins = self.min_exponents()
        denom_exp = tuple(max(0, -e) for e in mins)
        num = LaurentPoly.zero(target_nvars)
        for exps, c in self.terms.items():
            term = LaurentPoly.constant(target_nvars, c)
            for j, e in enumerate(exps):
                term = term * values[j] ** (e + denom_exp[j])
            num = num + term
        den = LaurentPoly.one(target_nvars)
        for j, e in enumerate(denom_exp):
            if e:
                den = den * values[j] ** e
        return num.exact_div(den)

    # -- text form ---------------------------------------------------------

    def render(self) -> str:
        """Canonical text form, e.g. ``x1^-1*x2*x4 + x1^-1*x3*x5``."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            factors = [f"x{j + 1}" + (f"^{e}" if e != 1 else "") for j, e in enumerate(exps) if e]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"<LaurentPoly {self.render()}>"


def parse_poly(text: str, nvars: int) -> LaurentPoly:
    """Parse the expression mini-grammar.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | VAR ['^' ['-'] INT]
    VAR    := 'x' INT          (1-based variable index)
    """
    tokens = _tokenize(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_factor() -> LaurentPoly:
        tok = peek()
        if tok is None:
            raise PolyParseError("unexpected end of expression")
        if tok.isdigit():
            take()
            return LaurentPoly.constant(nvars, int(tok))
        if tok.startswith("x"):
            take()
            j = int(tok[1:])
            if not 1 <= j <= nvars:
                raise PolyParseError(f"variable {tok} out of range (1..{nvars})")
            exp = 1
            if peek() == "^":
                take()
                sign = 1
                if peek() == "-":
                    take()
                    sign = -1
                etok = peek()
                if etok is None or not etok.isdigit():
                    raise PolyParseError("expected integer exponent after '^'")
                take()
                exp = sign * int(etok)
            return LaurentPoly.monomial(nvars, tuple(exp if i == j - 1 else 0 for i in range(nvars)))
        raise PolyParseError(f"unexpected token {tok!r}")

    def parse_term() -> LaurentPoly:
        out = parse_factor()
        while peek() == "*":
            take()
            out = out * parse_factor()
        return out

    result = LaurentPoly.zero(nvars)
    negate = False
    if peek() == "-":
        take()
        negate = True
    term = parse_term()
    result = result + (-term if negate else term)
    while peek() is not None:
        op = take()
        if op not in "+-":
            raise PolyParseError(f"expected '+' or '-', got {op!r}")
        term = parse_term()
        result = result + (-term if op == "-" else term)
    return result


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolyParseError(f"bare 'x' at position {i}")
            tokens.append(text[i:j])
            i = j
        else:
            raise PolyParseError(f"unexpected character {ch!r} at position {i}")
    if not tokens:
        raise PolyParseError("empty expression")
    return tokens
