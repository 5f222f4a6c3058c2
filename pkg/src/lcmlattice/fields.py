"""Coefficient fields for homology: the rationals or a prime field."""

from dataclasses import dataclass

from .errors import LatticeError


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``characteristic == 0`` means the rationals, otherwise GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise LatticeError(f"GF({c}) is not a field")

    @classmethod
    def parse(cls, text):
        """Parse ``q``, ``f2``, ``f7``, ... (case-insensitive)."""
        t = text.strip().lower()
        if t in ("q", "qq", "0"):
            return cls(0)
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        if t.startswith("gf") and t[2:].isdigit():
            return cls(int(t[2:]))
        raise LatticeError(f"unknown field {text!r}; use q, f2 or f<p>")

    def __str__(self):
        return "q" if self.characteristic == 0 else f"f{self.characteristic}"


QQ = FieldSpec(0)
GF2 = FieldSpec(2)
