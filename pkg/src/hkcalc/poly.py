"""Sparse multivariate polynomials over the 2-element field.

A polynomial is a set of exponent vectors; a coefficient is either 0 or 1, so
addition is symmetric difference of term sets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


class PolyParseError(ValueError):
    """Raised for malformed polynomial text or unknown variables."""


class VariableMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Poly2:
    terms: frozenset[Monomial]
    var_names: tuple[str, ...]

    def __post_init__(self):
        r = len(self.var_names)
        for t in self.terms:
            if len(t) != r or any(e < 0 for e in t):
                raise ValueError(f"bad exponent vector {t!r} for {r} variables")

    @classmethod
    def from_terms(cls, terms: Iterable[Sequence[int]], var_names: Sequence[str]) -> "Poly2":
        """Build a polynomial, cancelling terms that occur an even number of times."""
        acc: set[Monomial] = set()
        for t in terms:
            acc ^= {tuple(int(e) for e in t)}
        return cls(frozenset(acc), tuple(var_names))

    @classmethod
    def one(cls, var_names: Sequence[str]) -> "Poly2":
        return cls(frozenset({(0,) * len(var_names)}), tuple(var_names))

    @classmethod
    def zero(cls, var_names: Sequence[str]) -> "Poly2":
        return cls(frozenset(), tuple(var_names))

    @property
    def r(self) -> int:
        return len(self.var_names)

    def is_zero(self) -> bool:
        return not self.terms

    def has_constant_term(self) -> bool:
        return (0,) * self.r in self.terms

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def __add__(self, other: "Poly2") -> "Poly2":
        _check_vars(self, other)
        return Poly2(self.terms ^ other.terms, self.var_names)

    def __mul__(self, other: "Poly2") -> "Poly2":
        return poly_mul(self, other)

    def __pow__(self, k: int) -> "Poly2":
        return poly_pow(self, k)

    def __str__(self) -> str:
        return canonical(self)

    def truncate(self, q: int) -> "Poly2":
        """Drop every term with some exponent >= q (reduction mod x_i^q)."""
        return Poly2(frozenset(t for t in self.terms if max(t, default=0) < q), self.var_names)

    def key(self) -> str:
        """Cache key: canonical text plus the ambient variable list."""
        return f"{canonical(self)}@{':'.join(self.var_names)}"


def _check_vars(a: Poly2, b: Poly2) -> None:
    if a.var_names != b.var_names:
        raise VariableMismatch(f"variable lists differ: {a.var_names} vs {b.var_names}")


def poly_mul(a: Poly2, b: Poly2, bound: int | None = None) -> Poly2:
    """Product in characteristic 2; with ``bound`` set, terms with an exponent >= bound are dropped."""
    _check_vars(a, b)
    acc: set[Monomial] = set()
    for s in a.terms:
        for t in b.terms:
            m = tuple(i + j for i, j in zip(s, t))
            if bound is not None and max(m, default=0) >= bound:
                continue
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
    return Poly2(frozenset(acc), a.var_names)


def frobenius(f: Poly2) -> Poly2:
    """f^2, which in characteristic 2 just doubles every exponent."""
    return Poly2(frozenset(tuple(2 * e for e in t) for t in f.terms), f.var_names)


def poly_pow(f: Poly2, k: int, bound: int | None = None) -> Poly2:
    if k < 0:
        raise ValueError("negative exponent")
    result = Poly2.one(f.var_names)
    base = f
    while k:
        if k & 1:
            result = poly_mul(result, base, bound)
        k >>= 1
        if k:
            base = frobenius(base)
            if bound is not None:
                base = base.truncate(bound)
    if bound is not None:
        result = result.truncate(bound)
    return result


def _term_str(t: Monomial, var_names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(var_names, t):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def canonical(f: Poly2) -> str:
    """Deterministic text: terms in descending lexicographic order of exponent vectors."""
    if f.is_zero():
        return "0"
    return "+".join(_term_str(t, f.var_names) for t in f.sorted_terms())


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r} at position {pos}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


def _split_names(word: str, var_names: Sequence[str]) -> list[str]:
    """Resolve a juxtaposed identifier such as ``xyz`` into declared variable names."""
    if word in var_names:
        return [word]
    names = sorted(var_names, key=len, reverse=True)
    out, pos = [], 0
    while pos < len(word):
        for v in names:
            if word.startswith(v, pos):
                out.append(v)
                pos += len(v)
                break
        else:
            raise PolyParseError(f"unknown variable in {word!r}")
    return out


def parse_poly(text: str, var_names: Sequence[str]) -> Poly2:
    """Parse a sum of monomials such as ``x^3+y^3+x*y*z`` (``*`` may be omitted).

    Integer coefficients are reduced mod 2 and ``-`` is read as ``+``.
    Parentheses are not supported.
    """
    var_names = tuple(var_names)
    if len(set(var_names)) != len(var_names):
        raise PolyParseError("duplicate variable names")
    index = {v: i for i, v in enumerate(var_names)}
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial")
    terms: list[Monomial] = []
    pos = 0

    def parse_term() -> Monomial | None:
        nonlocal pos
        exps = [0] * len(var_names)
        coeff = 1
        expect_factor = True
        while pos < len(tokens):
            kind, val = tokens[pos]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                if expect_factor:
                    raise PolyParseError("misplaced '*'")
                expect_factor = True
                pos += 1
                continue
            if kind == "op":
                raise PolyParseError(f"unsupported operator {val!r}")
            pos += 1
            power = 1
            if pos < len(tokens) and tokens[pos] == ("op", "^"):
                pos += 1
                if pos >= len(tokens) or tokens[pos][0] != "num":
                    raise PolyParseError("malformed exponent after '^'")
                power = int(tokens[pos][1])
                pos += 1
            if kind == "num":
                coeff *= int(val) ** power
            else:
                names = _split_names(val, var_names)
                for v in names[:-1]:
                    exps[index[v]] += 1
                exps[index[names[-1]]] += power
            expect_factor = False
        if expect_factor:
            raise PolyParseError("empty term")
        return tuple(exps) if coeff % 2 else None

    while True:
        t = parse_term()
        if t is not None:
            terms.append(t)
        if pos >= len(tokens):
            break
        pos += 1  # '+' or '-'
        if pos >= len(tokens):
            raise PolyParseError("dangling operator")
    return Poly2.from_terms(terms, var_names)


def embed(f: Poly2, var_names: Sequence[str]) -> Poly2:
    """Rewrite f over a larger variable list containing all of its variables."""
    var_names = tuple(var_names)
    try:
        pos = [var_names.index(v) for v in f.var_names]
    except ValueError as exc:
        raise VariableMismatch(f"{f.var_names} not contained in {var_names}") from exc
    terms = []
    for t in f.terms:
        e = [0] * len(var_names)
        for p, k in zip(pos, t):
            e[p] = k
        terms.append(tuple(e))
    return Poly2(frozenset(terms), var_names)


def disjoint_sum(polys: Sequence[Poly2]) -> Poly2:
    """f_1 + ... + f_k over the concatenation of their (pairwise disjoint) variable lists."""
    names: list[str] = []
    for f in polys:
        clash = set(names) & set(f.var_names)
        if clash:
            raise VariableMismatch(f"variables {sorted(clash)} are shared")
        names.extend(f.var_names)
    total = Poly2.zero(names)
    for f in polys:
        total = total + embed(f, names)
    return total
