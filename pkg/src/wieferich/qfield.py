"""Exact arithmetic in rings of integers of imaginary quadratic fields.

Elements are stored in integral-basis coordinates x + y*w.  The generator w
depends on the squarefree parameter d: w = sqrt(-d) when d is 1 or 2 mod 4
("sqrt" basis) and w = (1 + sqrt(-d))/2 when d is 3 mod 4 ("half" basis).
A degenerate rational mode (the ring is plain Z, trivial conjugation) lets
the same pipelines run against ordinary integers.

Everything here is immutable and pure; no floating point appears anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

MODE_RATIONAL = "rational"
MODE_IMAGINARY_QUADRATIC = "imaginary-quadratic"

BASIS_SQRT = "sqrt"
BASIS_HALF = "half"


class InexactDivisionError(ArithmeticError):
    """Requested ring quotient does not exist (divisor does not divide)."""


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """An imaginary quadratic field Q(sqrt(-d)), or Q itself in rational mode."""

    mode: str
    d: int | None = None

    def __post_init__(self) -> None:
        if self.mode == MODE_RATIONAL:
            if self.d is not None:
                raise ValueError("rational mode carries no d parameter")
        elif self.mode == MODE_IMAGINARY_QUADRATIC:
            if self.d is None or self.d < 1 or not is_squarefree(self.d):
                raise ValueError(f"d must be a squarefree integer >= 1, got {self.d!r}")
        else:
            raise ValueError(f"unknown field mode {self.mode!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(MODE_RATIONAL)

    @classmethod
    def imaginary_quadratic(cls, d: int) -> FieldSpec:
        return cls(MODE_IMAGINARY_QUADRATIC, d)

    @classmethod
    def from_d(cls, d: int) -> FieldSpec:
        """CLI convention: d = 0 selects the rational degenerate mode."""
        return cls.rational() if d == 0 else cls.imaginary_quadratic(d)

    @property
    def is_rational(self) -> bool:
        return self.mode == MODE_RATIONAL

    @property
    def degree(self) -> int:
        return 1 if self.is_rational else 2

    @property
    def basis_kind(self) -> str | None:
        if self.is_rational:
            return None
        return BASIS_HALF if self.d % 4 == 3 else BASIS_SQRT

    @property
    def discriminant(self) -> int:
        if self.is_rational:
            return 1
        return -self.d if self.d % 4 == 3 else -4 * self.d

    # w satisfies x^2 - omega_trace*x + omega_norm = 0
    @property
    def omega_trace(self) -> int:
        return 1 if self.basis_kind == BASIS_HALF else 0

    @property
    def omega_norm(self) -> int:
        if self.is_rational:
            return 0
        return (1 + self.d) // 4 if self.basis_kind == BASIS_HALF else self.d

    def omega_name(self) -> str:
        if self.is_rational:
            return ""
        if self.d == 1:
            return "i"
        root = f"sqrt(-{self.d})"
        return root if self.basis_kind == BASIS_SQRT else f"(1+{root})/2"

    def element(self, x: int, y: int = 0) -> QuadInt:
        return QuadInt(int(x), int(y), self)

    def zero(self) -> QuadInt:
        return self.element(0)

    def one(self) -> QuadInt:
        return self.element(1)

    def parse_element(self, text: str) -> QuadInt:
        """Parse the CLI element syntax "x" or "x,y" (integral-basis coordinates)."""
        parts = [piece.strip() for piece in text.split(",")]
        if len(parts) not in (1, 2) or any(not piece for piece in parts):
            raise ValueError(f"element syntax is 'x' or 'x,y', got {text!r}")
        try:
            coords = [int(piece) for piece in parts]
        except ValueError:
            raise ValueError(f"element coordinates must be integers, got {text!r}") from None
        y = coords[1] if len(coords) == 2 else 0
        if self.is_rational and y != 0:
            raise ValueError("rational mode elements take a single coordinate")
        return self.element(coords[0], y)

    def describe(self) -> dict:
        if self.is_rational:
            return {"mode": self.mode, "ring": "Z", "degree": 1}
        return {
            "mode": self.mode,
            "d": self.d,
            "discriminant": self.discriminant,
            "basis_kind": self.basis_kind,
            "omega": self.omega_name(),
            "integral_basis": ["1", self.omega_name()],
            "degree": 2,
        }

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"Q(sqrt(-{self.d}))"


@dataclass(frozen=True)
class QuadInt:
    """An algebraic integer x + y*w in the fixed integral basis of its field."""

    x: int
    y: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if self.field.is_rational and self.y != 0:
            raise ValueError("rational-mode elements have no w component")

    def _coerce(self, other) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(other, 0, self.field)
        if isinstance(other, QuadInt):
            if other.field != self.field:
                raise ValueError(f"mixed fields: {self.field} vs {other.field}")
            return other
        raise TypeError(f"cannot combine QuadInt with {type(other).__name__}")

    def __add__(self, other) -> QuadInt:
        other = self._coerce(other)
        return QuadInt(self.x + other.x, self.y + other.y, self.field)

    __radd__ = __add__

    def __sub__(self, other) -> QuadInt:
        other = self._coerce(other)
        return QuadInt(self.x - other.x, self.y - other.y, self.field)

    def __rsub__(self, other) -> QuadInt:
        return self._coerce(other) - self

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.x, -self.y, self.field)

    def __mul__(self, other) -> QuadInt:
        other = self._coerce(other)
        f = self.field
        if f.is_rational:
            return QuadInt(self.x * other.x, 0, f)
        cross = self.x * other.y + self.y * other.x
        yy = self.y * other.y
        if f.basis_kind == BASIS_SQRT:
            # w^2 = -d
            return QuadInt(self.x * other.x - f.d * yy, cross, f)
        # w^2 = w - (1+d)/4
        return QuadInt(self.x * other.x - f.omega_norm * yy, cross + yy, f)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadInt:
        if n < 0:
            raise ValueError("negative exponents leave the ring")
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> QuadInt:
        f = self.field
        if f.is_rational:
            return self
        if f.basis_kind == BASIS_SQRT:
            return QuadInt(self.x, -self.y, f)
        return QuadInt(self.x + self.y, -self.y, f)

    def norm(self) -> int:
        """Field norm.  Non-negative in imaginary quadratic mode; the element
        itself (signed) in rational mode."""
        f = self.field
        if f.is_rational:
            return self.x
        if f.basis_kind == BASIS_SQRT:
            return self.x * self.x + f.d * self.y * self.y
        return self.x * self.x + self.x * self.y + f.omega_norm * self.y * self.y

    def abs_norm(self) -> int:
        return abs(self.norm())

    @property
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_unit(self) -> bool:
        return self.abs_norm() == 1

    def is_rational_int(self) -> bool:
        return self.y == 0

    def exact_div(self, other) -> QuadInt:
        """Quotient self/other inside the ring.

        Computed as self * conjugate(other) with coordinatewise division by
        the divisor norm.  Raises InexactDivisionError when the divisor does
        not divide self, ZeroDivisionError on a zero divisor.
        """
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero element")
        f = self.field
        if f.is_rational:
            if self.x % other.x:
                raise InexactDivisionError(f"{other} does not divide {self}")
            return QuadInt(self.x // other.x, 0, f)
        nm = other.norm()
        num = self * other.conjugate()
        if num.x % nm or num.y % nm:
            raise InexactDivisionError(f"{other} does not divide {self}")
        return QuadInt(num.x // nm, num.y // nm, f)

    def coords(self) -> str:
        return f"{self.x},{self.y}" if not self.field.is_rational else str(self.x)

    def __str__(self) -> str:
        if self.field.is_rational or self.y == 0:
            return str(self.x)
        w = self.field.omega_name()
        if abs(self.y) == 1:
            ypart = w
        else:
            ypart = f"{abs(self.y)}*{w}"
        if self.x == 0:
            return ypart if self.y > 0 else f"-{ypart}"
        sign = "+" if self.y > 0 else "-"
        return f"{self.x}{sign}{ypart}"


class BaseClass(enum.Enum):
    """Bucket of a base element by the squared magnitude of its embeddings."""

    ZERO = "zero"
    ROOT_OF_UNITY = "root-of-unity"
    SMALL = "small"
    ELIGIBLE = "eligible"


def embedding_magnitude_sq(a: QuadInt) -> int:
    """min over embeddings sigma of |sigma(a)|^2, exactly.

    In imaginary quadratic mode the two embeddings are complex conjugates, so
    this is the norm.  In rational mode the single embedding is the identity
    and the value is a^2 (the degree-1 norm is signed and not a magnitude).
    """
    return a.x * a.x if a.field.is_rational else a.norm()


def classify_base(a: QuadInt) -> BaseClass:
    """zero / root-of-unity / small (magnitude^2 in {2,3}) / eligible (>= 4).

    Eligible matches min |sigma(a)| >= 2, the threshold the progression
    census needs; small bases still support the plain census pipeline.
    """
    if a.is_zero:
        return BaseClass.ZERO
    m = embedding_magnitude_sq(a)
    if m == 1:
        return BaseClass.ROOT_OF_UNITY
    if m <= 3:
        return BaseClass.SMALL
    return BaseClass.ELIGIBLE
