"""Exact slopes, negative continued fractions and lens space normal forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

from lensbound.errors import InputError


@dataclass(frozen=True)
class Slope:
    """A reduced extended rational ``num/den``; ``Slope(1, 0)`` is infinity.

    The constructor reduces its arguments, so ``Slope(4, -6) == Slope(-2, 3)``
    and every nonzero multiple of ``(1, 0)`` collapses to infinity.
    """

    num: int
    den: int

    def __post_init__(self):
        num, den = int(self.num), int(self.den)
        if num == 0 and den == 0:
            raise InputError("0/0 is not a slope")
        if den < 0 or (den == 0 and num < 0):
            num, den = -num, -den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    @classmethod
    def inf(cls) -> Slope:
        return cls(1, 0)

    @classmethod
    def of(cls, value: int | Fraction | Slope) -> Slope:
        if isinstance(value, Slope):
            return value
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @classmethod
    def parse(cls, text: str) -> Slope:
        text = text.strip()
        if text.lower() in ("inf", "infinity", "1/0", "∞"):
            return cls.inf()
        try:
            if "/" in text:
                a, b = text.split("/")
                return cls(int(a), int(b))
            return cls(int(text), 1)
        except ValueError:
            raise InputError(f"malformed slope {text!r}") from None

    @property
    def is_inf(self) -> bool:
        return self.den == 0

    @property
    def value(self) -> Fraction:
        if self.is_inf:
            raise InputError("infinity has no finite value")
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Slope({self})"


@dataclass(frozen=True, order=True)
class LensSpace:
    """L(p, q) stored with ``0 <= q < p``; L(1, 0) is the 3-sphere."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or not 0 <= self.q < self.p:
            raise InputError(f"L({self.p},{self.q}) is not in normal form")
        if gcd(self.p, self.q) != 1:
            raise InputError(f"gcd({self.p},{self.q}) != 1: not a lens space")

    @classmethod
    def parse(cls, token: str) -> LensSpace:
        parts = token.strip().split(",")
        if len(parts) != 2:
            raise InputError(f"malformed lens token {token!r}, expected 'p,q'")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"malformed lens token {token!r}, expected 'p,q'") from None
        return lens_normalize(p, q)

    @property
    def token(self) -> str:
        return f"{self.p},{self.q}"

    @property
    def is_sphere(self) -> bool:
        return self.p == 1

    @property
    def q_inverse(self) -> int:
        if self.p == 1:
            return 0
        return pow(self.q, -1, self.p)

    @property
    def canonical_q(self) -> int:
        """Smallest of q and q^-1 mod p: labels the oriented homeomorphism class."""
        return min(self.q, self.q_inverse)

    @property
    def canonical(self) -> LensSpace:
        return LensSpace(self.p, self.canonical_q)

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


@dataclass(frozen=True)
class ConnectedSum:
    """A multiset of lens spaces; S^3 summands are dropped."""

    summands: tuple[LensSpace, ...] = field(default=())

    def __post_init__(self):
        kept = tuple(sorted(s for s in self.summands if not s.is_sphere))
        object.__setattr__(self, "summands", kept)

    @classmethod
    def of(cls, summands: Iterable[LensSpace]) -> ConnectedSum:
        return cls(tuple(summands))

    @classmethod
    def parse(cls, text: str) -> ConnectedSum:
        text = text.strip()
        if not text:
            raise InputError("empty connected sum")
        return cls(tuple(LensSpace.parse(tok) for tok in text.split("#")))

    @property
    def token(self) -> str:
        if not self.summands:
            return "1,0"
        return "#".join(s.token for s in self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)


def neg_cf(p: int, q: int) -> list[int]:
    """Expand -p/q as a1 - 1/(a2 - 1/(... - 1/an)) with every ai <= -2.

    >>> neg_cf(8, 3)
    [-3, -3]
    >>> neg_cf(7, 4)
    [-2, -4]
    """
    if p < 2 or not 0 < q < p:
        raise InputError(f"neg_cf needs p >= 2 and 0 < q < p, got ({p},{q})")
    if gcd(p, q) != 1:
        raise InputError(f"gcd({p},{q}) != 1")
    coeffs = []
    # p/q = c - r/q with c = ceil(p/q); continue on q/r
    while q:
        c = -(-p // q)
        coeffs.append(-c)
        p, q = q, c * q - p
    return coeffs


def cf_eval(coeffs: Iterable[int]) -> tuple[int, int]:
    """Inverse of :func:`neg_cf`: returns ``(p, q)`` with value ``-p/q``."""
    coeffs = list(coeffs)
    if not coeffs:
        raise InputError("empty continued fraction")
    if any(a > -2 for a in coeffs):
        raise InputError(f"entries must be <= -2, got {coeffs}")
    num, den = coeffs[-1], 1
    for a in reversed(coeffs[:-1]):
        num, den = a * num - den, num
    if den < 0:
        num, den = -num, -den
    return -num, den


def lens_normalize(p: int, q: int) -> LensSpace:
    if p < 1:
        raise InputError(f"p must be >= 1, got {p}")
    q %= p
    if gcd(p, q) != 1:
        raise InputError(f"gcd({p},{q}) != 1: not a lens space")
    return LensSpace(p, q)


def lens_reverse(lens: LensSpace) -> LensSpace:
    """-L(p,q) = L(p,p-q)."""
    return LensSpace(lens.p, (lens.p - lens.q) % lens.p)


def lens_oriented_homeo(a: LensSpace, b: LensSpace) -> bool:
    if a.p != b.p:
        return False
    return b.q in (a.q, a.q_inverse)


def coprime_pairs(pmax: int, pmin: int = 2):
    """Yield every ``(p, q)`` with ``pmin <= p <= pmax``, ``0 < q < p``, coprime."""
    for p in range(pmin, pmax + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield p, q
