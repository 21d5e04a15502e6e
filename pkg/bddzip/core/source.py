"""
Finite-state sources
Fuentes binarias unifilares de s estados: muestreo con semilla, log-probabilidad exacta
y la redundancia puntual |σ(x)| + log2 μ(x).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import yaml
from pydantic import BaseModel, Field, ValidationError

from ..infrastructure.errors import ConfigurationError, DomainError
from .container import analyze

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MarkovSource:
    """
    Fuente unifilar: `transitions[state] = (siguiente si 0, siguiente si 1)` y
    `emit_prob[state]` = P(bit = 1 | state). Estados 0 ... s-1.
    """
    transitions: Tuple[Tuple[int, int], ...]
    emit_prob: Tuple[float, ...]
    initial_state: int = 0
    name: str = "custom"

    def __post_init__(self):
        s = len(self.transitions)
        if s < 1:
            raise ConfigurationError("a source needs at least one state")
        if len(self.emit_prob) != s:
            raise ConfigurationError(f"{len(self.emit_prob)} emission probabilities for {s} states")
        if not all(0.0 <= p <= 1.0 for p in self.emit_prob):
            raise ConfigurationError("emission probabilities must lie in [0, 1]")
        if not all(len(t) == 2 and all(0 <= nxt < s for nxt in t) for t in self.transitions):
            raise ConfigurationError(f"transitions must map every (state, bit) into 0..{s - 1}")
        if not 0 <= self.initial_state < s:
            raise ConfigurationError(f"initial state {self.initial_state} outside 0..{s - 1}")

    @property
    def s(self) -> int:
        return len(self.transitions)

    @classmethod
    def bernoulli(cls, theta: float) -> 'MarkovSource':
        return cls(transitions=((0, 0),), emit_prob=(float(theta),), name=f"bernoulli:{theta}")

    @classmethod
    def markov(cls, order: int, probabilities: Sequence[float]) -> 'MarkovSource':
        """Orden r: el estado son los últimos r bits (estado inicial 0 = r ceros)"""
        if order < 0:
            raise ConfigurationError(f"Markov order must be >= 0, got {order}")
        states = 1 << order
        if len(probabilities) != states:
            raise ConfigurationError(f"order-{order} source needs {states} probabilities, got {len(probabilities)}")
        mask = states - 1
        transitions = tuple(((state << 1) & mask, ((state << 1) | 1) & mask) for state in range(states))
        return cls(
            transitions=transitions,
            emit_prob=tuple(float(p) for p in probabilities),
            name=f"markov:{order}:" + ",".join(str(p) for p in probabilities)
        )

    def state_path(self, x: str) -> List[int]:
        """Estado antes de emitir cada bit de x"""
        path = []
        state = self.initial_state
        for bit in x:
            path.append(state)
            state = self.transitions[state][bit == "1"]
        return path


def log_prob(src: MarkovSource, x: str) -> float:
    """log2 μ(x); -inf si algún paso tiene probabilidad 0"""
    if not x:
        return 0.0
    bits = np.frombuffer(x.encode("ascii"), dtype=np.uint8) == ord("1")
    p_one = np.asarray(src.emit_prob, dtype=np.float64)[np.asarray(src.state_path(x), dtype=np.intp)]
    step = np.where(bits, p_one, 1.0 - p_one)
    if np.any(step <= 0.0):
        return -math.inf
    return float(np.sum(np.log2(step)))


def sample(src: MarkovSource, n: int, seed: int) -> str:
    if n < 1:
        raise DomainError(f"sample length must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    draws = rng.random(n)

    if src.s == 1:
        ones = draws < src.emit_prob[0]
        return (ones.astype(np.uint8) + ord("0")).tobytes().decode("ascii")

    out = bytearray(n)
    state = src.initial_state
    for position in range(n):
        bit = 1 if draws[position] < src.emit_prob[state] else 0
        out[position] = 0x30 + bit
        state = src.transitions[state][bit]
    return out.decode("ascii")


def theorem_budget(s: int) -> float:
    """16 + 4 log2 s"""
    return 16.0 + 4.0 * math.log2(s)


def theorem_bound(n: int, s: int) -> float:
    """(n / log2 n)(16 + 4 log2 s), sin el término o(1)"""
    return n / math.log2(n) * theorem_budget(s)


class RedundancyRecord(BaseModel):
    """
    Redundancia puntual de una muestra frente a la fuente que la generó
    """
    n: int = Field(description="Longitud de la muestra (potencia de dos)")
    codeword_bits: int = Field(description="|σ(x)|, sin cabecera del contenedor")
    container_bits: int = Field(description="Bits del contenedor completo (cabecera y relleno incluidos)")
    log2_mu: float = Field(description="log2 μ(x)")
    redundancy: float = Field(description="|σ(x)| + log2 μ(x); +inf si μ(x) = 0")
    per_sample: float = Field(description="redundancia · log2 n / n")
    theorem_budget: float = Field(description="16 + 4 log2 s")
    flagged: bool = Field(description="True si μ(x) = 0", default=False)


def measure_redundancy(src: MarkovSource, x: str,
                       codec: Optional[Callable[[str], int]] = None) -> RedundancyRecord:
    n = len(x)
    if n < 1 or n & (n - 1):
        raise DomainError(f"redundancy is measured on power-of-two lengths, got {n}")

    trace = analyze(x)
    codeword_bits = codec(x) if codec else trace.body_bits
    log2_mu = log_prob(src, x)
    flagged = log2_mu == -math.inf
    redundancy = math.inf if flagged else codeword_bits + log2_mu
    # log2(1) = 0, so n = 1 has no per-sample normalization
    per_sample = redundancy * math.log2(n) / n if n > 1 else redundancy

    if flagged:
        logger.warning(f"Sample of length {n} has zero probability under {src.name}")

    return RedundancyRecord(
        n=n,
        codeword_bits=codeword_bits,
        container_bits=trace.container_bits,
        log2_mu=log2_mu,
        redundancy=redundancy,
        per_sample=per_sample,
        theorem_budget=theorem_budget(src.s),
        flagged=flagged
    )


class SourcePresetSpec(BaseModel):
    """
    Preset YAML de fuente
    """
    transitions: List[Tuple[int, int]] = Field(description="Siguiente estado para bit 0 y bit 1, por estado")
    emit_prob: List[float] = Field(description="P(bit = 1) en cada estado")
    initial_state: int = Field(description="Estado inicial", default=0)
    s: Optional[int] = Field(description="Número de estados (comprobación opcional)", default=None)
    seed: Optional[int] = Field(description="Semilla por defecto del benchmark", default=None)
    name: Optional[str] = Field(description="Nombre para reportes", default=None)


def load_source_config(path: str) -> Tuple[MarkovSource, Optional[int]]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f)
    except OSError as e:
        raise ConfigurationError(f"cannot read source preset {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigurationError(f"invalid YAML in {path}: {e}") from e

    try:
        spec = SourcePresetSpec.model_validate(raw)
    except ValidationError as e:
        raise ConfigurationError(f"invalid source preset {path}: {e}") from e

    if spec.s is not None and spec.s != len(spec.transitions):
        raise ConfigurationError(f"preset declares s={spec.s} but lists {len(spec.transitions)} states")

    source = MarkovSource(
        transitions=tuple(tuple(t) for t in spec.transitions),
        emit_prob=tuple(spec.emit_prob),
        initial_state=spec.initial_state,
        name=spec.name or f"file:{path}"
    )
    return source, spec.seed


def parse_preset(text: str) -> MarkovSource:
    """`bernoulli:<θ>`, `markov:<r>:<p_0,...>` o `file:<ruta.yaml>`"""
    kind, _, rest = text.partition(":")
    try:
        if kind == "bernoulli":
            return MarkovSource.bernoulli(float(rest))
        if kind == "markov":
            order, _, probabilities = rest.partition(":")
            return MarkovSource.markov(int(order), [float(p) for p in probabilities.split(",") if p])
    except ValueError as e:
        raise ConfigurationError(f"invalid source preset {text!r}: {e}") from e

    if kind == "file" and rest:
        return load_source_config(rest)[0]
    raise ConfigurationError(f"unknown source preset {text!r} (use bernoulli:, markov: or file:)")
