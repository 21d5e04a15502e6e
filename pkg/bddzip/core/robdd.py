"""
ROBDD de cadenas diádicas
Construye el diagrama de decisión binario reducido y ordenado de la función booleana
inducida por una cadena de longitud 2^K, con la numeración canónica de vértices.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..infrastructure.errors import DomainError, StructuralError

logger = logging.getLogger(__name__)


def is_dyadic(bits: str) -> bool:
    """True si la longitud es potencia de dos (>= 2) y las mitades difieren"""
    n = len(bits)
    if n < 2 or n & (n - 1):
        return False
    half = n // 2
    return bits[:half] != bits[half:]


@dataclass(frozen=True)
class DyadicCore:
    """Cadena binaria de S(dyadic), entrada nativa del codec"""
    bits: str
    K: int

    @classmethod
    def from_bits(cls, bits: str) -> 'DyadicCore':
        if not set(bits) <= {"0", "1"}:
            raise DomainError("bit strings may only contain '0' and '1'")
        if not is_dyadic(bits):
            raise DomainError(
                f"string of length {len(bits)} is not in S(dyadic) "
                "(length must be a power of two >= 2 with differing halves)"
            )
        return cls(bits=bits, K=len(bits).bit_length() - 1)


@dataclass(frozen=True)
class Vertex:
    """Vértice del grafo; los terminales llevan `value`, los no terminales `lo`/`hi`"""
    id: int
    level: int
    lo: Optional[int] = None
    hi: Optional[int] = None
    value: Optional[int] = None

    @property
    def is_terminal(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class Robdd:
    """
    Grafo G_x. `vertices[m - 1]` es el vértice de id m; la raíz tiene nivel 1 y los
    dos terminales nivel K + 1.
    """
    vertices: Tuple[Vertex, ...]
    K: int
    terminal0: int
    terminal1: int
    root: int = 1

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex(self, m: int) -> Vertex:
        if not isinstance(m, int) or not 1 <= m <= len(self.vertices):
            raise DomainError(f"invalid vertex id {m!r} (graph has {len(self.vertices)} vertices)")
        return self.vertices[m - 1]

    def level(self, m: int) -> int:
        return self.vertex(m).level

    def nonterminals(self) -> Iterator[Vertex]:
        return (v for v in self.vertices if not v.is_terminal)


DyadicInput = Union[DyadicCore, str]


def _as_core(x: DyadicInput) -> DyadicCore:
    return x if isinstance(x, DyadicCore) else DyadicCore.from_bits(x)


def build_robdd(x: DyadicInput) -> Robdd:
    """
    Construye G_x por bisección recursiva. Cada subcadena se reduce primero saltando
    niveles mientras sus mitades coincidan; la tabla única indexada por la subcadena
    reducida garantiza que subcadenas iguales compartan vértice.
    """
    core = _as_core(x)
    K = core.K

    unique: Dict[str, int] = {}
    levels: List[int] = []
    children: List[Optional[Tuple[int, int]]] = []

    def node_for(y: str) -> int:
        while len(y) > 1:
            half = len(y) // 2
            if y[:half] != y[half:]:
                break
            y = y[:half]

        found = unique.get(y)
        if found is not None:
            return found

        if len(y) == 1:
            entry = None
        else:
            half = len(y) // 2
            entry = (node_for(y[:half]), node_for(y[half:]))

        vid = len(levels) + 1
        unique[y] = vid
        levels.append(K + 1 - (len(y).bit_length() - 1))
        children.append(entry)
        return vid

    root = node_for(core.bits)

    vertices = []
    for index, (level, entry) in enumerate(zip(levels, children)):
        vid = index + 1
        if entry is None:
            vertices.append(Vertex(id=vid, level=level, value=1 if vid == unique["1"] else 0))
        else:
            vertices.append(Vertex(id=vid, level=level, lo=entry[0], hi=entry[1]))

    provisional = Robdd(
        vertices=tuple(vertices),
        K=K,
        terminal0=unique["0"],
        terminal1=unique["1"],
        root=root
    )
    graph = relabel(provisional, canonical_order(provisional))
    logger.debug(f"Built ROBDD with {len(graph)} vertices for K={K}")
    return graph


def canonical_order(g: Robdd) -> List[int]:
    """
    Numeración canónica: la raíz primero y luego, recorriendo los no terminales en
    orden de índice, los destinos (lo antes que hi) en orden de primera aparición.
    Devuelve `order` con order[k] = id actual del vértice que pasa a ser A_{k+1}.
    """
    order = [g.root]
    seen = {g.root}
    position = 0
    while position < len(order):
        vertex = g.vertex(order[position])
        position += 1
        if vertex.is_terminal:
            continue
        for child in (vertex.lo, vertex.hi):
            if child not in seen:
                seen.add(child)
                order.append(child)

    if len(order) != len(g.vertices):
        raise StructuralError(
            f"{len(g.vertices) - len(order)} vertices are not reachable from the root"
        )
    return order


def relabel(g: Robdd, order: Sequence[int]) -> Robdd:
    new_id = {old: index + 1 for index, old in enumerate(order)}
    if len(new_id) != len(g.vertices):
        raise StructuralError("relabeling is not a permutation of the vertex ids")

    vertices = []
    for index, old in enumerate(order):
        vertex = g.vertex(old)
        if vertex.is_terminal:
            vertices.append(Vertex(id=index + 1, level=vertex.level, value=vertex.value))
        else:
            vertices.append(Vertex(
                id=index + 1,
                level=vertex.level,
                lo=new_id[vertex.lo],
                hi=new_id[vertex.hi]
            ))

    return Robdd(
        vertices=tuple(vertices),
        K=g.K,
        terminal0=new_id[g.terminal0],
        terminal1=new_id[g.terminal1],
        root=new_id[g.root]
    )


def terminal_bit(g: Robdd) -> int:
    """0 si el terminal de menor id canónico es T⁰"""
    return 0 if g.terminal0 < g.terminal1 else 1


def assign_terminals(g: Robdd, bit: int) -> Robdd:
    """Devuelve g con los valores terminales elegidos según `bit` (misma estructura)"""
    low, high = sorted((g.terminal0, g.terminal1))
    terminal0, terminal1 = (low, high) if bit == 0 else (high, low)
    if terminal0 == g.terminal0:
        return g

    vertices = tuple(
        Vertex(id=v.id, level=v.level, value=0 if v.id == terminal0 else 1) if v.is_terminal else v
        for v in g.vertices
    )
    return Robdd(vertices=vertices, K=g.K, terminal0=terminal0, terminal1=terminal1, root=g.root)


def _expand(g: Robdd, v: int, memo: Dict[int, str]) -> str:
    cached = memo.get(v)
    if cached is not None:
        return cached

    vertex = g.vertices[v - 1]
    if vertex.is_terminal:
        result = str(vertex.value)
    else:
        lo = g.vertices[vertex.lo - 1]
        hi = g.vertices[vertex.hi - 1]
        result = (
            _expand(g, vertex.lo, memo) * (1 << (lo.level - vertex.level - 1))
            + _expand(g, vertex.hi, memo) * (1 << (hi.level - vertex.level - 1))
        )

    memo[v] = result
    return result


def expand(g: Robdd, v: int) -> str:
    """φ_G(v), de longitud 2^(K + 1 - L(v))"""
    g.vertex(v)
    return _expand(g, v, {})


def expand_all(g: Robdd) -> Dict[int, str]:
    memo: Dict[int, str] = {}
    for vertex in g.vertices:
        _expand(g, vertex.id, memo)
    return memo


def quasi_reduced_vertex_count(x: DyadicInput) -> int:
    """
    |V(G')|: número de cadenas distintas en las particiones de x en bloques de
    longitud 1, 2, 4, ..., 2^K (terminales incluidos).
    """
    bits = _as_core(x).bits
    n = len(bits)
    blocks = set()
    width = 1
    while width <= n:
        blocks.update(bits[i:i + width] for i in range(0, n, width))
        width <<= 1
    return len(blocks)


def evaluate(g: Robdd, inputs: Sequence[Union[int, str]]) -> int:
    """
    Evalúa la función booleana inducida f_x. Un vértice de nivel L consulta la
    variable L (la primera variable es el bit más significativo del índice).
    """
    if len(inputs) != g.K:
        raise DomainError(f"expected {g.K} input bits, got {len(inputs)}")

    vertex = g.vertex(g.root)
    while not vertex.is_terminal:
        bit = int(inputs[vertex.level - 1])
        vertex = g.vertices[(vertex.hi if bit else vertex.lo) - 1]
    return vertex.value


def edge_relations(g: Robdd) -> List[Tuple[int, int, int]]:
    """Relaciones A_m -> A_lo, A_hi de los no terminales, en orden de id"""
    return [(v.id, v.lo, v.hi) for v in g.nonterminals()]


def robdd_from_relations(relations: Sequence[Tuple[int, int, int]], levels: Mapping[int, int],
                         terminal0: int, K: int) -> Robdd:
    """
    Reconstruye el grafo a partir de la lista de relaciones y de los niveles. Los dos
    ids que nunca aparecen a la izquierda son los terminales; `terminal0` elige cuál
    vale 0. El resultado se valida y se devuelve con numeración canónica.
    """
    heads = {m for m, _, _ in relations}
    if len(heads) != len(relations):
        raise StructuralError("a vertex has more than one relation")

    ids = set(levels)
    targets = set()
    for m, lo, hi in relations:
        targets.update((lo, hi))
    if not (heads | targets) <= ids:
        missing = sorted((heads | targets) - ids)
        raise StructuralError(f"vertices without a level: {missing[:5]}")

    terminals = sorted(ids - heads)
    if len(terminals) != 2:
        raise StructuralError(f"expected exactly two terminals, found {len(terminals)}")
    if terminal0 not in terminals:
        raise StructuralError(f"vertex {terminal0} is not a terminal")
    terminal1 = terminals[1] if terminals[0] == terminal0 else terminals[0]

    roots = sorted(ids - targets)
    if len(roots) != 1:
        raise StructuralError(f"expected exactly one root, found {len(roots)}")

    # Provisional ids 1..j in sorted order so that Robdd.vertex() indexing holds
    dense = {old: index + 1 for index, old in enumerate(sorted(ids))}
    edges = {m: (lo, hi) for m, lo, hi in relations}
    vertices = []
    for old in sorted(ids):
        if old in edges:
            lo, hi = edges[old]
            vertices.append(Vertex(id=dense[old], level=levels[old], lo=dense[lo], hi=dense[hi]))
        else:
            vertices.append(Vertex(id=dense[old], level=levels[old], value=0 if old == terminal0 else 1))

    provisional = Robdd(
        vertices=tuple(vertices),
        K=K,
        terminal0=dense[terminal0],
        terminal1=dense[terminal1],
        root=dense[roots[0]]
    )
    validate_robdd(provisional)
    return relabel(provisional, canonical_order(provisional))


def validate_robdd(g: Robdd) -> None:
    """
    Comprueba terminales, raíz, niveles crecientes en las aristas, ausencia de
    aristas duplicadas, alcanzabilidad e inyectividad de φ_G.
    Lanza StructuralError en la primera violación encontrada.
    """
    K = g.K
    if K < 1:
        raise StructuralError(f"K must be at least 1, got {K}")

    for index, vertex in enumerate(g.vertices):
        if vertex.id != index + 1:
            raise StructuralError(f"vertex at position {index} carries id {vertex.id}")
        if not 1 <= vertex.level <= K + 1:
            raise StructuralError(f"vertex {vertex.id} has level {vertex.level} outside 1..{K + 1}")

    terminals = [v for v in g.vertices if v.is_terminal]
    if len(terminals) != 2 or {g.terminal0, g.terminal1} != {v.id for v in terminals}:
        raise StructuralError("graph must have exactly two terminals")
    if g.vertex(g.terminal0).value != 0 or g.vertex(g.terminal1).value != 1:
        raise StructuralError("terminal labels do not match terminal values")
    if any(v.level != K + 1 for v in terminals):
        raise StructuralError(f"terminals must sit at level {K + 1}")

    root = g.vertex(g.root)
    if root.level != 1 or root.is_terminal:
        raise StructuralError("root must be a nonterminal at level 1")

    for vertex in g.nonterminals():
        lo = g.vertex(vertex.lo)
        hi = g.vertex(vertex.hi)
        if vertex.lo == vertex.hi:
            raise StructuralError(f"vertex {vertex.id} has both edges to vertex {vertex.lo}")
        if lo.level <= vertex.level or hi.level <= vertex.level:
            raise StructuralError(f"levels do not increase along the edges of vertex {vertex.id}")
        if vertex.level == 1 and vertex.id != g.root:
            raise StructuralError(f"vertex {vertex.id} shares level 1 with the root")

    # Reachability
    canonical_order(g)

    expansions = expand_all(g)
    if len(set(expansions.values())) != len(expansions):
        raise StructuralError("two vertices expand to the same string (graph is not reduced)")
