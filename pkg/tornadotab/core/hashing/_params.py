from dataclasses import dataclass

from tornadotab.core.errors import ParameterError


@dataclass(frozen=True)
class HashParams:
    """Shape of a tabulation hash function.

    Parameters
    ----------
    c: int
        Number of characters of an input key.
    d: int
        Number of derived characters appended by tornado tabulation.
    char_bits: int
        Bits per character, so that the alphabet has ``2**char_bits`` characters.
    range_bits: int
        Bits of the hash values.
    """

    c: int
    d: int = 0
    char_bits: int = 8
    range_bits: int = 64

    def __post_init__(self):
        for name in ("c", "d", "char_bits", "range_bits"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParameterError(f"{name} must be an integer.")
        if self.c < 1:
            raise ParameterError(f"c must be at least 1, got {self.c}.")
        if self.d < 0:
            raise ParameterError(f"d must be non-negative, got {self.d}.")
        if self.char_bits < 1:
            raise ParameterError(f"char_bits must be at least 1, got {self.char_bits}.")
        if not 1 <= self.range_bits <= 64:
            raise ParameterError(
                f"range_bits must lie in [1, 64], got {self.range_bits}."
            )
        if self.c * self.char_bits > 64:
            raise ParameterError(
                f"Keys of {self.c} characters of {self.char_bits} bits do not fit 64 bits."
            )

    @property
    def sigma_size(self) -> int:
        """Alphabet size."""
        return 1 << self.char_bits

    @property
    def key_bits(self) -> int:
        return self.c * self.char_bits

    @property
    def derived_length(self) -> int:
        return self.c + self.d

    def table_entries(self) -> int:
        """Number of entries over all tornado lookup tables."""
        tables = (self.c - 1) + self.d * (self.c + self.d - 1) + (self.c + self.d)
        return tables * self.sigma_size
