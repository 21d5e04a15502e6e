"""
Redundancy benchmark
Muestrea repeticiones de una fuente para cada n, mide la redundancia puntual de cada
muestra en paralelo y resume la tendencia por n.
"""

import asyncio
import csv
import logging
import math
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from ..core.source import MarkovSource, RedundancyRecord, measure_redundancy, sample
from ..infrastructure.errors import DomainError

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "n", "rep", "codeword_bits", "container_bits", "log2_mu",
    "redundancy", "per_sample", "theorem_budget",
]


class BenchRow(RedundancyRecord):
    """Una fila del CSV: registro de redundancia de la repetición `rep`"""
    rep: int = Field(description="Índice de repetición (base 0)")


class BenchSummary(BaseModel):
    """
    Resumen por n de la redundancia normalizada
    """
    n: int = Field(description="Longitud de las muestras")
    count: int = Field(description="Repeticiones con μ(x) > 0")
    flagged: int = Field(description="Repeticiones con μ(x) = 0")
    mean_per_sample: float = Field(description="Media de redundancia · log2 n / n")
    stderr_per_sample: float = Field(description="Error estándar de la media")
    mean_redundancy: float = Field(description="Media de la redundancia puntual en bits")


def check_seed(seed: int) -> None:
    """Las semillas base son enteros sin signo de 64 bits"""
    if not 0 <= seed < 1 << 64:
        raise DomainError(f"seed {seed} outside 0..2^64-1")


def rep_seed(seed: int, n: int, rep: int) -> int:
    """Semilla independiente y reproducible para cada (n, rep)"""
    check_seed(seed)
    return int(np.random.SeedSequence([seed, n, rep]).generate_state(1, dtype=np.uint64)[0])


def measure_one(source: MarkovSource, n: int, rep: int, seed: int) -> BenchRow:
    x = sample(source, n, rep_seed(seed, n, rep))
    record = measure_redundancy(source, x)
    return BenchRow(rep=rep, **record.model_dump())


async def run_benchmark(source: MarkovSource, sizes: Sequence[int], reps: int, seed: int,
                        workers: int = 1) -> List[BenchRow]:
    """
    Evalúa todas las repeticiones concurrentemente y devuelve las filas ordenadas
    por (n, rep), independientemente del orden de terminación.
    """
    for n in sizes:
        if n < 1 or n & (n - 1):
            raise DomainError(f"benchmark sizes must be powers of two, got {n}")
    if reps < 1:
        raise DomainError(f"reps must be >= 1, got {reps}")
    check_seed(seed)

    loop = asyncio.get_running_loop()
    executor: Optional[Executor] = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        tasks = [
            loop.run_in_executor(executor, measure_one, source, n, rep, seed)
            for n in sizes
            for rep in range(reps)
        ]
        logger.info(f"Running {len(tasks)} benchmark measurements on {workers} worker(s)")
        rows = await asyncio.gather(*tasks)
    finally:
        if executor is not None:
            executor.shutdown()

    return sorted(rows, key=lambda row: (row.n, row.rep))


def write_csv(rows: Iterable[BenchRow], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            data = row.model_dump()
            writer.writerow([data[column] for column in CSV_COLUMNS])


def read_csv(path: str) -> List[dict]:
    with open(path, "r", newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def summarize(rows: Sequence[RedundancyRecord]) -> List[BenchSummary]:
    summaries = []
    for n in sorted({row.n for row in rows}):
        group = [row for row in rows if row.n == n]
        finite = np.array([row.per_sample for row in group if not row.flagged], dtype=np.float64)
        redundancy = np.array([row.redundancy for row in group if not row.flagged], dtype=np.float64)
        if finite.size == 0:
            mean, stderr, mean_redundancy = math.inf, 0.0, math.inf
        else:
            mean = float(finite.mean())
            stderr = float(finite.std(ddof=1) / math.sqrt(finite.size)) if finite.size > 1 else 0.0
            mean_redundancy = float(redundancy.mean())
        summaries.append(BenchSummary(
            n=n,
            count=int(finite.size),
            flagged=len(group) - int(finite.size),
            mean_per_sample=mean,
            stderr_per_sample=stderr,
            mean_redundancy=mean_redundancy
        ))
    return summaries


def is_non_increasing_within_noise(means: Sequence[float], stderrs: Sequence[float], z: float = 3.0) -> bool:
    """Cada media no supera a la anterior en más de z errores estándar combinados"""
    for j in range(1, len(means)):
        slack = z * math.hypot(stderrs[j - 1], stderrs[j])
        if means[j] - means[j - 1] > slack + 1e-12:
            return False
    return True
