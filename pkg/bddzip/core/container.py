"""
Container
Extiende el codec de S(dyadic) a cadenas arbitrarias: cabecera "BDZ1", longitud en
Elias-gamma, relleno a potencia de dos, reducción de núcleo periódico y literal para
cadenas constantes.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..infrastructure.errors import CorruptStreamError, DomainError, StructuralError
from .bitstream import BitStream, bytes_to_bits, elias_gamma
from .coder import SectionBudget, decode_levels, encode_levels, section_budgets
from .levelstrings import LevelStrings, generate_levels, rebuild_graph
from .robdd import Robdd, build_robdd, expand, terminal_bit

logger = logging.getLogger(__name__)

MAGIC = b"BDZ1"
DEFAULT_MAX_BITS = 1 << 27


@dataclass(frozen=True)
class ContainerTrace:
    """Todo lo que el codificador calcula para una entrada, sin escribir bits"""
    n: int
    k: int
    e: int
    core: str
    graph: Optional[Robdd] = None
    levels: Optional[LevelStrings] = None
    budgets: List[SectionBudget] = field(default_factory=list)
    terminal_bit: Optional[int] = None

    @property
    def is_constant(self) -> bool:
        return len(self.core) == 1

    @property
    def K(self) -> int:
        return self.k - self.e

    @property
    def body_bits(self) -> int:
        """|σ|: bit literal, o bit de terminales más las secciones de nivel"""
        return 1 + sum(budget.actual_bits for budget in self.budgets)

    @property
    def container_bits(self) -> int:
        """Cabecera (magic + gamma(n) + gamma(e+1)) más el cuerpo, redondeado a bytes"""
        total = 8 * len(MAGIC) + len(elias_gamma(self.n)) + len(elias_gamma(self.e + 1)) + self.body_bits
        return total + (-total % 8)


def _check_bits(bits: str) -> None:
    if not bits:
        raise DomainError("cannot encode an empty string (n must be >= 1)")
    if not set(bits) <= {"0", "1"}:
        raise DomainError("bit strings may only contain '0' and '1'")


def reduce_core(bits: str) -> Tuple[str, int]:
    """(núcleo, e): mitad izquierda mientras las dos mitades coincidan"""
    core = bits
    e = 0
    while len(core) > 1:
        half = len(core) // 2
        if core[:half] != core[half:]:
            break
        core = core[:half]
        e += 1
    return core, e


def analyze(bits: str) -> ContainerTrace:
    _check_bits(bits)
    n = len(bits)
    k = (max(n, 2) - 1).bit_length()
    padded = bits + "0" * ((1 << k) - n)
    core, e = reduce_core(padded)

    if len(core) == 1:
        return ContainerTrace(n=n, k=k, e=e, core=core)

    graph = build_robdd(core)
    levels = generate_levels(graph)
    return ContainerTrace(
        n=n,
        k=k,
        e=e,
        core=core,
        graph=graph,
        levels=levels,
        budgets=section_budgets(levels),
        terminal_bit=terminal_bit(graph)
    )


def codeword_length(x: str) -> int:
    """|σ(x)| para |x| potencia de dos, sin cabecera"""
    n = len(x)
    if n < 1 or n & (n - 1):
        raise DomainError(f"codeword length is defined for power-of-two lengths, got {n}")
    return analyze(x).body_bits


def encode(bits: str) -> bytes:
    trace = analyze(bits)
    sink = BitStream()
    sink.write_bits(bytes_to_bits(MAGIC))
    sink.write_gamma(trace.n)
    sink.write_gamma(trace.e + 1)

    if trace.is_constant:
        sink.write_bit(int(trace.core))
    else:
        sink.write_bit(trace.terminal_bit)
        encode_levels(trace.levels, sink)

    data = sink.to_bytes()
    logger.debug(f"Encoded {trace.n} bits (K={trace.K}, e={trace.e}) into {len(data)} bytes")
    return data


def decode(data: bytes, max_bits: int = DEFAULT_MAX_BITS) -> str:
    if len(data) < len(MAGIC) or data[:len(MAGIC)] != MAGIC:
        raise CorruptStreamError("bad magic bytes", "header/magic")

    source = BitStream.from_bytes(data[len(MAGIC):])
    n = source.read_gamma("header/length")
    if n > max_bits:
        raise CorruptStreamError(f"declared length {n} exceeds the limit of {max_bits} bits", "header/length")

    k = (max(n, 2) - 1).bit_length()
    e = source.read_gamma("header/reduction") - 1
    if e > k:
        raise CorruptStreamError(f"reduction exponent {e} exceeds {k}", "header/reduction")

    K = k - e
    if K == 0:
        core = str(source.read_bit("literal"))
    else:
        bit = source.read_bit("terminal bit")
        try:
            levels = decode_levels(source, K)
            graph = rebuild_graph(levels, bit)
        except StructuralError as exc:
            raise CorruptStreamError(str(exc), "graph") from exc
        core = expand(graph, graph.root)
        half = len(core) // 2
        if core[:half] == core[half:]:
            raise CorruptStreamError("decoded core is periodic", "graph")

    if source.remaining >= 8 or "1" in source.read_bits(source.remaining):
        raise CorruptStreamError("unexpected data after the codeword", "trailer")

    padded = core * (1 << e)
    if "1" in padded[n:]:
        raise CorruptStreamError("padding bits are not zero", "trailer")
    return padded[:n]
