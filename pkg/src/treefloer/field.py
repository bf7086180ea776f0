"""Exact arithmetic in GF(2)[T] and its fraction field GF(2)(T).

Polynomials over GF(2) are stored as nonnegative Python integers, bit k
holding the coefficient of T^k (so addition is XOR and the zero polynomial
is 0).  Field elements are reduced fractions num/den of such integers; a
Laurent monomial T^(-k) is carried as 1/T^k.  Over GF(2) every nonzero
polynomial is monic, so reduced fractions are canonical and equality is
plain tuple equality.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import MalformedInput

# ---------------------------------------------------------------------------
# polynomial layer (plain ints)

ZERO = 0
ONE = 1


def deg(a: int) -> int:
    """Degree of a, with deg(0) = -1."""
    return a.bit_length() - 1


# Bit-spreading tables for carry-less multiplication: each byte of an operand
# is expanded so that integer multiplication accumulates GF(2) convolution
# columns in separate bit slots.  _SPREAD[w] maps a byte to its w-spaced form.
_SPREAD: dict[int, list[int]] = {}


def _spread_table(w: int) -> list[int]:
    tab = _SPREAD.get(w)
    if tab is None:
        tab = []
        for byte in range(256):
            v = 0
            for i in range(8):
                if byte >> i & 1:
                    v |= 1 << (w * i)
            tab.append(v)
        _SPREAD[w] = tab
    return tab


def _spread(a: int, w: int) -> int:
    tab = _spread_table(w)
    out = 0
    shift = 0
    while a:
        out |= tab[a & 0xFF] << (shift * w)
        a >>= 8
        shift += 8
    return out


def _unspread(c: int, w: int) -> int:
    # keep slot parities only
    slots = (c.bit_length() + w - 1) // w
    ones = ((1 << (w * slots)) - 1) // ((1 << w) - 1)  # ..0001 every w bits
    c &= ones
    out = 0
    i = 0
    while c:
        if c & 1:
            out |= 1 << i
        c >>= w
        i += 1
    return out


def mul(a: int, b: int) -> int:
    """Carry-less product of GF(2) polynomials a and b."""
    if a == 0 or b == 0:
        return 0
    if a == 1:
        return b
    if b == 1:
        return a
    ca = bin(a).count("1")
    cb = bin(b).count("1")
    if cb < ca:
        a, b = b, a
        ca, cb = cb, ca
    # shift-XOR over the sparser operand when cheap
    if ca <= 24:
        acc = 0
        aa = a
        shift = 0
        while aa:
            low = aa & -aa
            k = low.bit_length() - 1 + shift
            acc ^= b << k
            shift += low.bit_length()
            aa >>= low.bit_length()
        return acc
    # dense case: spread both operands so integer multiply does the work
    w = max(ca, cb).bit_length() + 1
    prod = _spread(a, w) * _spread(b, w)
    return _unspread(prod, w)


def divmod_poly(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of a by nonzero b."""
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = deg(b)
    q = 0
    da = deg(a)
    while da >= db:
        shift = da - db
        a ^= b << shift
        q |= 1 << shift
        da = deg(a)
    return q, a


def mod(a: int, b: int) -> int:
    return divmod_poly(a, b)[1]


def gcd(a: int, b: int) -> int:
    """GCD of GF(2) polynomials (monic automatically)."""
    while b:
        a, b = b, mod(a, b)
    return a


def divexact(a: int, b: int) -> int:
    q, r = divmod_poly(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def tpower(k: int) -> int:
    """T^k as a polynomial, k >= 0."""
    return 1 << k


def poly_str(a: int) -> str:
    if a == 0:
        return "0"
    terms = []
    k = deg(a)
    while k >= 0:
        if a >> k & 1:
            if k == 0:
                terms.append("1")
            elif k == 1:
                terms.append("T")
            else:
                terms.append(f"T^{k}")
        k -= 1
    return " + ".join(terms)


def poly_parse(text: str) -> int:
    """Inverse of poly_str; accepts any +-separated monomial list."""
    text = text.strip()
    if text in ("0", ""):
        return 0
    acc = 0
    for raw in text.split("+"):
        term = raw.strip()
        if term == "1":
            acc ^= 1
        elif term == "T":
            acc ^= 2
        elif term.startswith("T^"):
            try:
                acc ^= 1 << int(term[2:])
            except ValueError:
                raise MalformedInput(f"bad polynomial term {term!r}")
        else:
            raise MalformedInput(f"bad polynomial term {term!r}")
    return acc


# ---------------------------------------------------------------------------
# fraction field

@lru_cache(maxsize=1 << 16)
def _reduced(num: int, den: int) -> tuple[int, int]:
    if num == 0:
        return 0, 1
    # strip common powers of T first (cheap, very common with Laurent input)
    tn = (num & -num).bit_length() - 1
    td = (den & -den).bit_length() - 1
    t = tn if tn < td else td
    if t:
        num >>= t
        den >>= t
    g = gcd(num, den)
    if g != 1:
        num = divexact(num, g)
        den = divexact(den, g)
    return num, den


class Frac:
    """A reduced fraction in GF(2)(T).  Immutable and hashable."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1, _reduce: bool = True):
        if den == 0:
            raise ZeroDivisionError("zero denominator in GF(2)(T)")
        if _reduce:
            num, den = _reduced(num, den)
        self.num = num
        self.den = den

    def __bool__(self) -> bool:
        return self.num != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Frac)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "Frac") -> "Frac":
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        if self.den == other.den:
            return Frac(self.num ^ other.num, self.den)
        return Frac(
            mul(self.num, other.den) ^ mul(other.num, self.den),
            mul(self.den, other.den),
        )

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "Frac") -> "Frac":
        if self.num == 0 or other.num == 0:
            return F_ZERO
        # cross-reduce to keep intermediate products small
        a, d = _reduced(self.num, other.den)
        b, c = _reduced(other.num, self.den)
        return Frac(mul(a, b), mul(c, d), _reduce=False)

    def inv(self) -> "Frac":
        if self.num == 0:
            raise ZeroDivisionError("inverse of zero in GF(2)(T)")
        return Frac(self.den, self.num, _reduce=False)

    def __truediv__(self, other: "Frac") -> "Frac":
        return self * other.inv()

    def is_one(self) -> bool:
        return self.num == 1 and self.den == 1

    def __repr__(self) -> str:
        return f"Frac({frac_str(self)!r})"


F_ZERO = Frac(0, 1, _reduce=False)
F_ONE = Frac(1, 1, _reduce=False)


def tpow(k: int) -> Frac:
    """T^k in GF(2)(T) for any integer k, negatives included."""
    if k >= 0:
        return Frac(1 << k, 1, _reduce=False)
    return Frac(1, 1 << (-k), _reduce=False)


def one_plus_tpow(w: int) -> Frac:
    """1 + T^w as a field element, for any nonzero integer w.

    Negative w means 1 + T^(-|w|) = (T^|w| + 1)/T^|w|.
    """
    if w == 0:
        raise ZeroDivisionError("1 + T^0 vanishes over GF(2)")
    if w > 0:
        return Frac((1 << w) | 1, 1, _reduce=False)
    return Frac((1 << -w) | 1, 1 << -w, _reduce=False)


def frac_str(x: Frac) -> str:
    num = poly_str(x.num)
    if x.den == 1:
        return num
    num_paren = num if "+" not in num else f"({num})"
    den = poly_str(x.den)
    den_paren = den if "+" not in den else f"({den})"
    return f"{num_paren}/{den_paren}"


def frac_parse(text: str) -> Frac:
    """Exact inverse of frac_str (round-trips test fixtures)."""
    text = text.strip()
    if "/" in text:
        top, bottom = text.split("/", 1)
        return Frac(poly_parse(top.strip().strip("()")), poly_parse(bottom.strip().strip("()")))
    return Frac(poly_parse(text.strip("()")))
