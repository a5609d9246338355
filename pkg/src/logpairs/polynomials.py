"""Exact bivariate polynomials over Q.

This is the small arithmetic kernel behind plane-curve resolution and the
parametrized sampling families: terms are stored sparsely as
``{(i, j): coefficient}`` with Fraction coefficients and no explicit zeros.
Blowup substitutions and exact divisibility are implemented directly so that
every transformation stays in rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ZeroInputError

CoeffLike = Union[Fraction, int, str]


def _coeff(c: CoeffLike) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly2:
    """A polynomial in two variables x, y with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], CoeffLike] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term {(i, j)}")
            c = _coeff(c)
            key = (int(i), int(j))
            c += acc.get(key, Fraction(0))
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
        self.terms = acc

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: CoeffLike) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "Poly2":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "Poly2":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c: CoeffLike = 1) -> "Poly2":
        return cls({(i, j): c})

    @classmethod
    def from_json(cls, data: Iterable) -> "Poly2":
        """Parse ``[[[i, j], "coeff"], ...]`` with rational coefficient strings."""
        return cls(((int(e[0]), int(e[1])), _coeff(c)) for e, c in data)

    def to_json(self) -> list:
        return [[[i, j], str(c)] for (i, j), c in sorted(self.terms.items())]

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroInputError("degree of the zero polynomial")
        return max(i + j for i, j in self.terms)

    def order(self) -> int:
        """Minimal total degree of a term (the multiplicity at the origin)."""
        if not self.terms:
            raise ZeroInputError("order of the zero polynomial")
        return min(i + j for i, j in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {i + j for i, j in self.terms}
        return len(degs) <= 1

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "Poly2":
        return Poly2({k: -c for k, c in self.terms.items()})

    def __add__(self, other: "Poly2") -> "Poly2":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            s = acc.get(k, Fraction(0)) + c
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        out = Poly2.__new__(Poly2)
        out.terms = acc
        return out

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other: "Poly2") -> "Poly2":
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                s = acc.get(key, Fraction(0)) + c * d
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        out = Poly2.__new__(Poly2)
        out.terms = acc
        return out

    def scale(self, c: CoeffLike) -> "Poly2":
        c = _coeff(c)
        if not c:
            return Poly2()
        return Poly2({k: v * c for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly2":
        if n < 0:
            raise ValueError("negative power")
        result = Poly2.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, ax: CoeffLike, ay: CoeffLike) -> Fraction:
        ax, ay = _coeff(ax), _coeff(ay)
        total = Fraction(0)
        for (i, j), c in self.terms.items():
            total += c * ax**i * ay**j
        return total

    def derivative(self, var: str) -> "Poly2":
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i > 0:
                acc[(i - 1, j)] = c * i
            elif var == "y" and j > 0:
                acc[(i, j - 1)] = c * j
        return Poly2(acc)

    # -- substitutions used by blowups --------------------------------------

    def translate(self, ax: CoeffLike, ay: CoeffLike) -> "Poly2":
        """f(x + ax, y + ay), expanded with binomial coefficients."""
        ax, ay = _coeff(ax), _coeff(ay)
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            for r in range(i + 1):
                cr = c * math.comb(i, r) * ax ** (i - r)
                for s in range(j + 1):
                    key = (r, s)
                    val = cr * math.comb(j, s) * ay ** (j - s)
                    t = acc.get(key, Fraction(0)) + val
                    if t:
                        acc[key] = t
                    else:
                        acc.pop(key, None)
        out = Poly2.__new__(Poly2)
        out.terms = acc
        return out

    def blowup_x(self, shift: CoeffLike = 0) -> tuple["Poly2", int]:
        """Strict transform in the chart x = x, y = x*(y + shift).

        Substitutes, strips the exact power of x dividing the result, and
        returns ``(stripped, power)``.  The stripped power equals the
        multiplicity of the polynomial at the origin.
        """
        if not self.terms:
            raise ZeroInputError("blowup of the zero polynomial")
        shift = _coeff(shift)
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            # x^i * (x*(y+shift))^j = x^(i+j) * (y+shift)^j
            for r in range(j + 1):
                key = (i + j, r)
                val = c * math.comb(j, r) * shift ** (j - r)
                t = acc.get(key, Fraction(0)) + val
                if t:
                    acc[key] = t
                else:
                    acc.pop(key, None)
        power = min(i for i, _ in acc)
        out = Poly2.__new__(Poly2)
        out.terms = {(i - power, j): c for (i, j), c in acc.items()}
        return out, power

    def blowup_y(self) -> tuple["Poly2", int]:
        """Strict transform in the chart x = x*y, y = y (the vertical direction)."""
        if not self.terms:
            raise ZeroInputError("blowup of the zero polynomial")
        acc = {(i, i + j): c for (i, j), c in self.terms.items()}
        power = min(j for _, j in acc)
        out = Poly2.__new__(Poly2)
        out.terms = {(i, j - power): c for (i, j), c in acc.items()}
        return out, power

    def on_x_axis_restriction(self) -> list[Fraction]:
        """Coefficients of f(0, y) as a dense list indexed by the power of y."""
        if not self.terms:
            return []
        coeffs = [Fraction(0)] * (max((j for i, j in self.terms if i == 0), default=-1) + 1)
        for (i, j), c in self.terms.items():
            if i == 0:
                coeffs[j] = c
        return coeffs

    def contact_order_with_axis(self, axis: str) -> int:
        """Intersection multiplicity at the origin with {x=0} or {y=0}.

        Returns a large sentinel if the restriction vanishes identically,
        which cannot happen for a strict transform.
        """
        if axis == "x":
            picked = [j for (i, j) in self.terms if i == 0]
        else:
            picked = [i for (i, j) in self.terms if j == 0]
        return min(picked) if picked else 1 << 30

    # -- exact division -----------------------------------------------------

    def _leading(self) -> tuple[tuple[int, int], Fraction]:
        key = max(self.terms, key=lambda k: (k[0] + k[1], k))
        return key, self.terms[key]

    def divide_exact(self, divisor: "Poly2") -> "Poly2 | None":
        """Return self / divisor if the division is exact in Q[x,y], else None."""
        if divisor.is_zero:
            raise ZeroInputError("division by the zero polynomial")
        quotient: dict[tuple[int, int], Fraction] = {}
        rem = self
        (di, dj), dc = divisor._leading()
        while rem.terms:
            (ri, rj), rc = rem._leading()
            if ri < di or rj < dj:
                return None
            key = (ri - di, rj - dj)
            q = rc / dc
            quotient[key] = q
            rem = rem - divisor * Poly2({key: q})
        return Poly2(quotient)

    def __repr__(self) -> str:
        if not self.terms:
            return "Poly2(0)"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0])):
            factors = [str(c)]
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            parts.append("*".join(factors))
        return "Poly2(" + " + ".join(parts) + ")"


def univariate_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of two dense univariate rational polynomials (Euclid)."""

    def trim(p: list[Fraction]) -> list[Fraction]:
        while p and not p[-1]:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        # a mod b
        while len(a) >= len(b) and a:
            factor = a[-1] / b[-1]
            shift = len(a) - len(b)
            for k in range(len(b)):
                a[shift + k] -= factor * b[k]
            a.pop()
            trim(a)
        a, b = b, a
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a
