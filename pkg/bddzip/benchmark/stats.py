"""
Stats Report
Diagnóstico por niveles de una entrada: tamaños de S_i, presupuestos de secciones,
cotas de longitud y de tamaño del grafo.
"""

from typing import List

from pydantic import BaseModel, Field

from ..core.container import analyze
from ..core.enumerative import first_appearance_cost
from ..core.levelstrings import decompose_level
from ..core.robdd import quasi_reduced_vertex_count


class LevelStats(BaseModel):
    """
    Estadísticas de la transición S_{i-1} -> S_i
    """
    i: int = Field(description="Índice del nivel")
    S_len: int = Field(description="|S_i|")
    hat_S_len: int = Field(description="|Ŝ_i|")
    Q: int = Field(description="Q_i")
    distinct_type2: int = Field(description="Número de símbolos Tipo II distintos")
    rank1_bits: int = Field(description="⌈H(π_i^1)⌉")
    fa_bits: int = Field(description="Banderas de primera aparición emitidas")
    rank2_bits: int = Field(description="⌈H(π̃_i^2)⌉")
    h_pi2: float = Field(description="h(π_i^2) según el coste de primera aparición")
    five_term_bits: int = Field(description="M_i con cinco términos")
    actual_bits: int = Field(description="Bits realmente emitidos")


class StatsReport(BaseModel):
    """
    Reporte completo de una entrada
    """
    n: int = Field(description="Longitud original en bits")
    K: int = Field(description="log2 de la longitud del núcleo (0 en modo constante)")
    e: int = Field(description="Exponente de reducción periódica")
    constant: bool = Field(description="True si el núcleo es un único bit")
    robdd_vertices: int = Field(description="|V(G)|")
    quasi_reduced_vertices: int = Field(description="|V(G')|")
    S_lengths: List[int] = Field(description="|S_1| ... |S_{K+1}|")
    levels: List[LevelStats] = Field(description="Detalle por nivel i = 2 ... K+1")
    total_codeword_bits: int = Field(description="|σ|: 1 + Σ bits emitidos por nivel")
    five_term_total_bits: int = Field(description="1 + Σ M_i")
    container_bits: int = Field(description="Bits del contenedor completo")
    sum_S: int = Field(description="Σ |S_i|")
    sum_Q: int = Field(description="Σ Q_i")
    length_bound: int = Field(description="4 Σ|S_i| + Σ(⌈H(π^1)⌉ + ⌈H(π̃^2)⌉)")
    length_bound_holds: bool = Field(description="total_codeword_bits <= length_bound")
    level_size_bound: int = Field(description="|V(G')| + |V(G)|")
    level_size_bound_holds: bool = Field(description="Σ|S_i| <= level_size_bound")
    size_reference: float = Field(description="2^{K+1} · 2 / K")
    size_ratio: float = Field(description="Σ|S_i| / size_reference")
    measured_epsilon: float = Field(description="Σ|S_i| · K / 2^{K+1} - 2")


def build_stats_report(bits: str) -> StatsReport:
    trace = analyze(bits)
    container_bits = trace.container_bits

    if trace.is_constant:
        return StatsReport(
            n=trace.n, K=0, e=trace.e, constant=True,
            robdd_vertices=0, quasi_reduced_vertices=0, S_lengths=[], levels=[],
            total_codeword_bits=1, five_term_total_bits=1, container_bits=container_bits,
            sum_S=0, sum_Q=0, length_bound=0, length_bound_holds=True,
            level_size_bound=0, level_size_bound_holds=True,
            size_reference=0.0, size_ratio=0.0, measured_epsilon=0.0
        )

    K = trace.K
    ls = trace.levels
    levels = []
    for budget in trace.budgets:
        i = budget.level
        dec = decompose_level(ls.level(i - 1), ls.level(i))
        levels.append(LevelStats(
            i=i,
            S_len=budget.freq_bits,
            hat_S_len=budget.type_bits,
            Q=budget.power_bits,
            distinct_type2=len(dec.type2_symbols),
            rank1_bits=budget.rank1_bits,
            fa_bits=budget.fa_bits,
            rank2_bits=budget.rank2_bits,
            h_pi2=first_appearance_cost(dec.pi2),
            five_term_bits=budget.five_term_bits,
            actual_bits=budget.actual_bits
        ))

    lengths = ls.lengths()
    sum_S = sum(lengths)
    vertices = len(trace.graph)
    quasi = quasi_reduced_vertex_count(trace.core)
    length_bound = 4 * sum_S + sum(b.rank1_bits + b.rank2_bits for b in trace.budgets)
    reference = (1 << (K + 1)) * 2 / K

    return StatsReport(
        n=trace.n,
        K=K,
        e=trace.e,
        constant=False,
        robdd_vertices=vertices,
        quasi_reduced_vertices=quasi,
        S_lengths=lengths,
        levels=levels,
        total_codeword_bits=trace.body_bits,
        five_term_total_bits=1 + sum(b.five_term_bits for b in trace.budgets),
        container_bits=container_bits,
        sum_S=sum_S,
        sum_Q=sum(b.power_bits for b in trace.budgets),
        length_bound=length_bound,
        length_bound_holds=trace.body_bits <= length_bound,
        level_size_bound=quasi + vertices,
        level_size_bound_holds=sum_S <= quasi + vertices,
        size_reference=reference,
        size_ratio=sum_S / reference,
        measured_epsilon=sum_S * K / (1 << (K + 1)) - 2
    )


def render_table(report: StatsReport) -> str:
    """Tabla de texto para la salida estándar del comando `stats`"""
    lines = [
        f"n={report.n}  K={report.K}  e={report.e}  |V(G)|={report.robdd_vertices}  "
        f"|V(G')|={report.quasi_reduced_vertices}",
    ]
    if report.constant:
        lines.append("constant core: 1 literal bit")
    else:
        lines.append(f"{'i':>3} {'|S_i|':>7} {'|Ŝ_i|':>7} {'Q_i':>5} {'r1':>6} {'fa':>5} "
                     f"{'r2':>6} {'h(π2)':>8} {'M_i':>7} {'actual':>7}")
        lines.append(f"{1:>3} {report.S_lengths[0]:>7}")
        for level in report.levels:
            lines.append(
                f"{level.i:>3} {level.S_len:>7} {level.hat_S_len:>7} {level.Q:>5} {level.rank1_bits:>6} "
                f"{level.fa_bits:>5} {level.rank2_bits:>6} {level.h_pi2:>8.2f} {level.five_term_bits:>7} "
                f"{level.actual_bits:>7}"
            )
    lines.append(f"codeword bits: {report.total_codeword_bits} (five-term total {report.five_term_total_bits}), "
                 f"container bits: {report.container_bits}")
    if not report.constant:
        lines.append(f"length bound: {report.length_bound} ({'ok' if report.length_bound_holds else 'VIOLATED'})  "
                     f"level sizes: Σ|S_i|={report.sum_S} <= {report.level_size_bound} "
                     f"({'ok' if report.level_size_bound_holds else 'VIOLATED'})")
        lines.append(f"Σ|S_i| / (2^(K+1)·2/K) = {report.size_ratio:.4f}  ε = {report.measured_epsilon:.4f}")
    return "\n".join(lines)
