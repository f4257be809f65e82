"""Exact coefficient arithmetic.

Scalars are arbitrary-precision ints, exact ``fractions.Fraction`` values,
or prime-field residues (plain ints in [0, p) with the modulus passed
explicitly).  On top of that sit a sparse multivariate polynomial type
(``MultiPoly``, used for symbolic Hessian entries) and a dense univariate
type (``UniPoly``, used for line restrictions and T-expansions).

No floating point anywhere; every result in this module is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

Scalar = Union[int, Fraction]

#: Word-sized primes just below 2^31, used for identity testing.  A trial
#: with total degree d has failure probability <= d/p per prime.
WORD_PRIMES: tuple[int, ...] = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
)


def prime_for_trial(trial: int) -> int:
    """Deterministic prime selection: trial i uses WORD_PRIMES[i mod len]."""
    return WORD_PRIMES[trial % len(WORD_PRIMES)]


def scalar_from_string(s: str) -> Scalar:
    """Parse a decimal string, optionally 'a/b' for rationals."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return int(s)


def scalar_to_string(x: Scalar) -> str:
    """Serialize exactly; integers (and integral Fractions) as plain decimals."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def scalar_mod(x: Scalar, p: int) -> int:
    """Reduce an exact scalar into [0, p)."""
    if isinstance(x, Fraction):
        den = x.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
        return (x.numerator % p) * pow(den, -1, p) % p
    return x % p


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


def _grlex_key(exp: tuple[int, ...]) -> tuple:
    # graded lex: total degree first, then lexicographic on the exponent vector
    return (sum(exp), exp)


class MultiPoly:
    """Sparse multivariate polynomial: exponent vector -> nonzero coefficient.

    Immutable by convention; all operations return new instances.  The
    canonical term order is graded lex (total degree, then lexicographic
    exponent vector), descending.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], Scalar] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Scalar] = {}
        if terms:
            for exp, c in terms.items():
                if c != 0:
                    if len(exp) != nvars:
                        raise ValueError(f"exponent vector {exp} has arity {len(exp)}, expected {nvars}")
                    self.terms[exp] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for arity {nvars}")
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exp: 1})

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading(self) -> tuple[tuple[int, ...], Scalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, 0)

    def coefficient(self, exp: tuple[int, ...]) -> Scalar:
        return self.terms.get(exp, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            if self.nvars != other.nvars:
                return False
            if len(self.terms) != len(other.terms):
                return False
            return all(other.terms.get(e, 0) == c for e, c in self.terms.items())
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_str()})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.sorted_terms():
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(exp)
                if e
            ]
            if not factors:
                parts.append(scalar_to_string(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(scalar_to_string(c) + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        raise TypeError(f"cannot coerce {other!r} to MultiPoly")

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        out = MultiPoly(self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MultiPoly.zero(self.nvars)
            out = MultiPoly(self.nvars)
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        other = self._coerce(other)
        acc: dict[tuple[int, ...], Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(exp, 0) + c1 * c2
                if s == 0:
                    acc.pop(exp, None)
                else:
                    acc[exp] = s
        out = MultiPoly(self.nvars)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- evaluation and substitution -----------------------------------------

    def eval(self, point: Sequence[Scalar]) -> Scalar:
        """Evaluate at a point of scalars."""
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        total: Scalar = 0
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v *= x**e
            total += v
        return total

    def eval_mod(self, point: Sequence[int], p: int) -> int:
        """Evaluate at an integer point, reducing mod p."""
        total = 0
        for exp, c in self.terms.items():
            v = scalar_mod(c, p)
            for x, e in zip(point, exp):
                if e:
                    v = v * pow(x % p, e, p) % p
            total = (total + v) % p
        return total

    def substitute(self, i: int, value: "MultiPoly | Scalar") -> "MultiPoly":
        """Substitute variable i by a scalar or a same-arity polynomial."""
        if isinstance(value, (int, Fraction)):
            value = MultiPoly.const(self.nvars, value)
        value = self._coerce(value)
        out = MultiPoly.zero(self.nvars)
        powers: dict[int, MultiPoly] = {0: MultiPoly.const(self.nvars, 1)}
        for exp, c in self.terms.items():
            e = exp[i]
            if e not in powers:
                powers[e] = value**e
            rest = tuple(0 if j == i else v for j, v in enumerate(exp))
            out = out + powers[e] * MultiPoly(self.nvars, {rest: c})
        return out

    def derivative(self, i: int) -> "MultiPoly":
        terms: dict[tuple[int, ...], Scalar] = {}
        for exp, c in self.terms.items():
            if exp[i]:
                new = tuple(e - 1 if j == i else e for j, e in enumerate(exp))
                terms[new] = terms.get(new, 0) + c * exp[i]
        return MultiPoly(self.nvars, terms)

    def translate(self, point: Sequence[Scalar]) -> "MultiPoly":
        """Compose with the shift x_i -> x_i + point[i] (exact)."""
        out = self
        for i, v in enumerate(point):
            if v != 0:
                shifted = MultiPoly(self.nvars, {
                    tuple(1 if j == i else 0 for j in range(self.nvars)): 1,
                    (0,) * self.nvars: v,
                })
                out = out.substitute(i, shifted)
        return out

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact division; raises ArithmeticError if the division leaves a remainder.

        Standard leading-term elimination under graded lex: valid whenever
        ``divisor`` genuinely divides ``self`` (the only way it is called from
        the fraction-free elimination kernels).
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return MultiPoly.zero(self.nvars)
        d_exp, d_coef = divisor.leading()
        quotient = MultiPoly.zero(self.nvars)
        rem = self
        while not rem.is_zero():
            r_exp, r_coef = rem.leading()
            q_exp = tuple(a - b for a, b in zip(r_exp, d_exp))
            if any(e < 0 for e in q_exp):
                raise ArithmeticError("exact_divide: not divisible")
            q_coef = Fraction(r_coef, 1) / Fraction(d_coef, 1)
            if q_coef.denominator == 1:
                q_coef = q_coef.numerator
            t = MultiPoly(self.nvars, {q_exp: q_coef})
            quotient = quotient + t
            rem = rem - t * divisor
        return quotient


# ---------------------------------------------------------------------------
# dense univariate polynomials


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial over the rationals, coeffs[i] on t^i."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_coeffs(cls, cs: Iterable[Scalar]) -> "UniPoly":
        cs = [Fraction(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly.from_coeffs([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly.from_coeffs([self[i] - other[i] for i in range(n)])

    def __mul__(self, other: "UniPoly | Scalar") -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly.from_coeffs([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly.from_coeffs(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly.from_coeffs([1])
        for _ in range(n):
            result = result * self
        return result

    def eval(self, x: Scalar) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        return UniPoly.from_coeffs([c / lc for c in self.coeffs])


def uni_root_structure(f: UniPoly, r: int) -> UniPoly | None:
    """Return g with f = c * g**r for some nonzero rational c, else None.

    g is computed by matching coefficients from the leading term down and
    then verified by an exact multiplication, so a non-None answer is a
    proof.  The zero polynomial is reported as g = 0.
    """
    if r not in (2, 3):
        raise ValueError(f"root structure only probed for r in {{2, 3}}, got {r}")
    if f.is_zero():
        return UniPoly.zero()
    d = f.degree()
    if d % r != 0:
        return None
    m = d // r
    lc = f.coeffs[-1]
    fm = f.monic()
    g = [Fraction(0)] * (m + 1)
    g[m] = Fraction(1)
    for j in range(1, m + 1):
        # coefficient of t^(r*m - j) in g^r, with g[m-j] still unknown (0):
        h = UniPoly.from_coeffs(g) ** r
        need = fm[r * m - j] - h[r * m - j]
        g[m - j] = need / r  # the unknown enters as r * g[m-j] * (g[m]^(r-1) = 1)
    cand = UniPoly.from_coeffs(g)
    if (cand**r) * lc == f:
        return cand
    return None


# ---------------------------------------------------------------------------
# prime-field univariate helpers (dense int lists, modulus passed explicitly)


def uni_eval_mod(coeffs: Sequence[int], x: int, p: int) -> int:
    total = 0
    for c in reversed(coeffs):
        total = (total * x + c) % p
    return total


def lagrange_interpolate_mod(xs: Sequence[int], ys: Sequence[int], p: int) -> list[int]:
    """Interpolate the unique polynomial of degree < len(xs) through the points, mod p."""
    n = len(xs)
    if len(ys) != n:
        raise ValueError("point count mismatch")
    out = [0] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (t - xs[j]) / (xs[i] - xs[j])
        num = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            new = [0] * (len(num) + 1)
            for d, c in enumerate(num):
                new[d] -= c * xs[j]
                new[d + 1] += c
            num = [c % p for c in new]
            denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(denom, -1, p) % p
        for d, c in enumerate(num):
            out[d] = (out[d] + c * scale) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def uni_root_structure_mod(coeffs: Sequence[int], r: int, p: int) -> list[int] | None:
    """Mod-p analogue of uni_root_structure; returns g's coefficient list or None."""
    cs = [c % p for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return []
    d = len(cs) - 1
    if d % r != 0:
        return None
    m = d // r
    inv_lc = pow(cs[-1], -1, p)
    fm = [c * inv_lc % p for c in cs]
    g = [0] * (m + 1)
    g[m] = 1
    inv_r = pow(r, -1, p)
    for j in range(1, m + 1):
        h = _uni_pow_mod(g, r, p)
        need = (fm[r * m - j] - (h[r * m - j] if r * m - j < len(h) else 0)) % p
        g[m - j] = need * inv_r % p
    check = _uni_pow_mod(g, r, p)
    check = [c * cs[-1] % p for c in check]
    if len(check) == len(cs) and all((a - b) % p == 0 for a, b in zip(check, cs)):
        return g
    return None


def _uni_mul_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1 or 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _uni_pow_mod(a: Sequence[int], n: int, p: int) -> list[int]:
    out = [1]
    for _ in range(n):
        out = _uni_mul_mod(out, a, p)
    return out
