"""
BitStream
Secuencia de bits con cursor de lectura, empaquetado MSB-first y códigos Elias-gamma / unarios
"""

from typing import Optional

from ..infrastructure.errors import CorruptStreamError, DomainError

# Gamma codes longer than this cannot describe a sane length
MAX_GAMMA_ZEROS = 63


def bytes_to_bits(data: bytes) -> str:
    """Interpreta los bytes como cadena de bits, MSB primero en cada byte"""
    if not data:
        return ""
    return format(int.from_bytes(data, "big"), f"0{8 * len(data)}b")


def bits_to_bytes(bits: str) -> bytes:
    """Inversa de bytes_to_bits; completa con ceros hasta el siguiente byte"""
    if not bits:
        return b""
    padded = bits + "0" * (-len(bits) % 8)
    return int(padded, 2).to_bytes(len(padded) // 8, "big")


class BitStream:
    """
    Flujo de bits de escritura al final y lectura secuencial.

    Los bits se guardan como bytes ASCII '0'/'1' para que las lecturas de enteros
    sean una sola llamada a int(..., 2).
    """

    def __init__(self, bits: str = ""):
        self._bits = bytearray(bits.encode("ascii"))
        self._pos = 0

    @classmethod
    def from_bytes(cls, data: bytes) -> 'BitStream':
        return cls(bytes_to_bits(data))

    def __len__(self) -> int:
        return len(self._bits)

    @property
    def position(self) -> int:
        return self._pos

    @property
    def remaining(self) -> int:
        return len(self._bits) - self._pos

    def getvalue(self) -> str:
        return self._bits.decode("ascii")

    def to_bytes(self) -> bytes:
        return bits_to_bytes(self.getvalue())

    # --- escritura ---

    def write_bit(self, bit: int) -> None:
        self._bits.append(0x31 if bit else 0x30)

    def write_bits(self, bits: str) -> None:
        self._bits.extend(bits.encode("ascii"))

    def write_uint(self, value: int, width: int) -> None:
        """Escribe `value` big-endian en exactamente `width` bits"""
        if width == 0:
            if value:
                raise DomainError(f"value {value} does not fit in 0 bits")
            return
        if value < 0 or value.bit_length() > width:
            raise DomainError(f"value {value} does not fit in {width} bits")
        self._bits.extend(format(value, f"0{width}b").encode("ascii"))

    def write_unary(self, value: int) -> None:
        """(value - 1) ceros y un 1"""
        if value < 1:
            raise DomainError(f"unary code needs a value >= 1, got {value}")
        self._bits.extend(b"0" * (value - 1))
        self._bits.append(0x31)

    def write_gamma(self, value: int) -> None:
        self.write_bits(elias_gamma(value))

    # --- lectura ---

    def _require(self, count: int, section: Optional[str]) -> None:
        if count > self.remaining:
            raise CorruptStreamError(
                f"premature end of stream (need {count} bits, {self.remaining} left)",
                section
            )

    def read_bit(self, section: Optional[str] = None) -> int:
        self._require(1, section)
        bit = self._bits[self._pos] - 0x30
        self._pos += 1
        return bit

    def read_bits(self, count: int, section: Optional[str] = None) -> str:
        self._require(count, section)
        chunk = self._bits[self._pos:self._pos + count].decode("ascii")
        self._pos += count
        return chunk

    def read_uint(self, width: int, section: Optional[str] = None) -> int:
        if width == 0:
            return 0
        return int(self.read_bits(width, section), 2)

    def read_unary(self, limit: int, section: Optional[str] = None) -> int:
        """
        Lee un código unario y devuelve su valor (>= 1). Valores mayores que `limit`
        se tratan como corrupción sin consumir el resto del flujo.
        """
        end = min(len(self._bits), self._pos + limit)
        index = self._bits.find(b"1", self._pos, end)
        if index < 0:
            if end == len(self._bits) and self._pos + limit > len(self._bits):
                raise CorruptStreamError("premature end of stream inside a unary code", section)
            raise CorruptStreamError(f"unary value exceeds the limit of {limit}", section)
        value = index - self._pos + 1
        self._pos = index + 1
        return value

    def read_gamma(self, section: Optional[str] = None) -> int:
        zeros = 0
        while self.read_bit(section) == 0:
            zeros += 1
            if zeros > MAX_GAMMA_ZEROS:
                raise CorruptStreamError("Elias-gamma prefix overflow", section)
        if zeros == 0:
            return 1
        return (1 << zeros) | self.read_uint(zeros, section)


def elias_gamma(value: int) -> str:
    """⌊log2 m⌋ ceros seguidos de los dígitos binarios de m"""
    if value < 1:
        raise DomainError(f"Elias-gamma is defined for m >= 1, got {value}")
    digits = format(value, "b")
    return "0" * (len(digits) - 1) + digits


def elias_gamma_decode(bits: str) -> int:
    """Decodifica una cadena que contiene exactamente un código gamma"""
    stream = BitStream(bits)
    value = stream.read_gamma("gamma")
    if stream.remaining:
        raise CorruptStreamError(f"{stream.remaining} trailing bits after gamma code", "gamma")
    return value
