"""Integer-coefficient Laurent polynomials in one formal variable.

These are the value type for the bracket polynomial (variable A) and the
Jones polynomial (variable t, with exponents stored in quarter units so
that no fractions ever appear).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping


class LaurentPolynomial:
    """Sparse Laurent polynomial with integer coefficients.

    Immutable.  Zero coefficients are never stored, so equality is
    coefficient-wise.  Exponents may be negative.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for exp, c in items:
            exp = int(exp)
            acc[exp] = acc.get(exp, 0) + int(c)
        object.__setattr__(self, "_coeffs", {e: c for e, c in acc.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPolynomial":
        return cls({exp: coeff})

    # -- inspection ----------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        """Copy of the exponent -> coefficient map."""
        return dict(self._coeffs)

    def coefficient(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_one(self) -> bool:
        return self._coeffs == {0: 1}

    @property
    def min_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self._coeffs)

    @property
    def max_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self._coeffs)

    def exponents(self) -> list[int]:
        return sorted(self._coeffs)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc = dict(self._coeffs)
        for e, c in other._coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPolynomial.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by x^k."""
        return LaurentPolynomial({e + k: c for e, c in self._coeffs.items()})

    def scale_exponents(self, k: int) -> "LaurentPolynomial":
        """Substitute x -> x^k (k may be negative)."""
        if k == 0:
            raise ValueError("exponent scale must be nonzero")
        return LaurentPolynomial({e * k: c for e, c in self._coeffs.items()})

    def reciprocal_variable(self) -> "LaurentPolynomial":
        """Substitute x -> 1/x."""
        return self.scale_exponents(-1)

    def is_palindromic(self) -> bool:
        """True when invariant under x -> 1/x."""
        return self == self.reciprocal_variable()

    def evaluate_at_minus_one(self, unit: int = 1) -> int:
        """Exact value at x = -1, with exponents interpreted in 1/unit steps.

        Every stored exponent must be divisible by ``unit``.
        """
        total = 0
        for e, c in self._coeffs.items():
            q, r = divmod(e, unit)
            if r:
                raise ValueError(f"exponent {e} not divisible by {unit}")
            total += c if q % 2 == 0 else -c
        return total

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._coeffs.items())))

    def sort_key(self) -> tuple:
        """Total order usable for canonical tie-breaking."""
        return tuple(sorted(self._coeffs.items()))

    # -- rendering -------------------------------------------------------

    def render(self, var: str = "t", unit: int = 1) -> str:
        """Canonical ascending-exponent text form, e.g. ``-t^-4+t^-3+t^-1``.

        Exponents are divided by ``unit`` and must come out integral; this
        is how quarter-unit Jones exponents are printed in terms of t.
        """
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            q, r = divmod(e, unit)
            if r:
                raise ValueError(f"exponent {e} not divisible by {unit}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if q == 0:
                body = str(mag)
            else:
                power = var if q == 1 else f"{var}^{q}"
                body = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(sign + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.render(var='x')!r})"
