import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import graphviz
from pydantic import ValidationError

from models.automaton_models import AutomatonDocument, EdgeDocument
from models.config_models import EngineSettings
from services.coxeter_group import CoxeterGroup, GroupElement, Word
from services.voracious_service import VoraciousLanguage
from services.wall_service import EMPTY_WALLS, Root, Wall, WallGeometry, WallSet
from utils.word_utils import format_word, parse_word
from exceptions.coxeter_exceptions import (
    AutomatonConsistencyError,
    AutomatonFileError,
    CoxeterEngineException,
    InvalidCapError,
    SmallRootOverflowError,
    UnknownFormatError,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pivot:
    """枢轴 w: p(w) = id 且 w ≠ id"""
    element: GroupElement
    word: Word
    labels: FrozenSet[Word]


@dataclass(frozen=True)
class PivotSet:
    """长度上限内的全部枢轴"""
    cap: int
    pivots: Tuple[Pivot, ...]
    saturated: bool


@dataclass(frozen=True)
class AutomatonEdge:
    """多重图的一条边, 以 (起点, 枢轴) 为键"""
    source: WallSet
    target: WallSet
    pivot: Pivot

    @property
    def labels(self) -> FrozenSet[Word]:
        return self.pivot.labels


@dataclass
class VoraciousAutomaton:
    """有限状态自动机 Γ: 状态为 𝒰 的子集, 起始状态 ∅, 全部状态都是接受状态"""
    generators: List[str]
    field_order: int
    universe: WallSet
    states: List[WallSet]
    edges: List[AutomatonEdge]
    pivot_cap: int
    saturated: bool = False
    start: WallSet = EMPTY_WALLS
    _outgoing: Dict[WallSet, List[AutomatonEdge]] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        outgoing: Dict[WallSet, List[AutomatonEdge]] = defaultdict(list)
        for edge in self.edges:
            outgoing[edge.source].append(edge)
        self._outgoing = dict(outgoing)

    @property
    def accept_states(self) -> List[WallSet]:
        return self.states

    @property
    def state_space_size(self) -> int:
        """声明的状态空间 𝒫(𝒰) 的大小"""
        return 2 ** len(self.universe)

    def outgoing(self, state: WallSet) -> List[AutomatonEdge]:
        return self._outgoing.get(state, [])

    def ordered_universe(self) -> List[Wall]:
        return self.universe.ordered()

    def ordered_states(self) -> List[WallSet]:
        index = {wall: i for i, wall in enumerate(self.ordered_universe())}
        return sorted(self.states, key=lambda state: (len(state), sorted(index[wall] for wall in state)))

    def ordered_edges(self) -> List[AutomatonEdge]:
        position = {state: i for i, state in enumerate(self.ordered_states())}
        return sorted(self.edges, key=lambda edge: (position[edge.source], position[edge.target], edge.pivot.word))

    def same_structure(self, other: "VoraciousAutomaton") -> bool:
        """结构相等（状态、边、标签、起始状态）"""
        def edge_keys(aut):
            return {(edge.source, edge.target, edge.pivot.element, edge.labels) for edge in aut.edges}
        return (
            self.universe == other.universe
            and set(self.states) == set(other.states)
            and self.start == other.start
            and edge_keys(self) == edge_keys(other)
        )


def run_states(aut: VoraciousAutomaton, word: Sequence[int]) -> Set[WallSet]:
    """按 (前缀位置, 状态) 动态规划, 返回完整读完单词后可达的状态"""
    v = tuple(word)
    n = len(v)
    reach: List[Set[WallSet]] = [set() for _ in range(n + 1)]
    reach[0].add(aut.start)
    for i in range(n + 1):
        for state in list(reach[i]):
            for edge in aut.outgoing(state):
                for label in edge.labels:
                    end = i + len(label)
                    if end <= n and v[i:end] == label:
                        reach[end].add(edge.target)
    return reach[n]


def accepts(aut: VoraciousAutomaton, word: Sequence[int]) -> bool:
    """全部状态都是接受状态, 可达即接受"""
    return bool(run_states(aut, word))


class AutomatonBuilder:
    """小根集合 𝒰、枢轴枚举与自动机构造"""

    def __init__(self, language: VoraciousLanguage, settings: Optional[EngineSettings] = None):
        self.language = language
        self.geometry: WallGeometry = language.geometry
        self.group: CoxeterGroup = language.group
        self.settings = settings or self.group.settings
        self._small_roots: Optional[WallSet] = None
        self._targets: Dict[GroupElement, WallSet] = {}

    # ---- 𝒰 ----

    def small_roots(self) -> WallSet:
        """支配递推: 从单根出发, -1 < B(α_s, β) < 1 时 s(β) 仍是小根"""
        if self._small_roots is not None:
            return self._small_roots
        group = self.group
        found: Dict[Root, None] = {}
        queue = deque()
        for s in range(group.rank):
            root = Root(group.simple_root(s))
            found[root] = None
            queue.append(root)
        while queue:
            beta = queue.popleft()
            for s in range(group.rank):
                b = group.bilinear_simple(s, beta.coords)
                if not b:
                    continue
                image = group.reflect(beta.coords, s)
                if not group.is_positive(image):
                    continue
                if (b + 1).sign() > 0 and (1 - b).sign() > 0:
                    wall = self.geometry.wall_of(image)
                    if wall.root not in found:
                        found[wall.root] = None
                        queue.append(wall.root)
                        if len(found) > self.settings.root_cap:
                            raise SmallRootOverflowError(self.settings.root_cap)
        self._small_roots = WallSet(Wall(root) for root in found)
        logger.info("小根集合 𝒰 共 %d 面墙", len(self._small_roots))
        return self._small_roots

    def small_roots_oracle(self, radius: int) -> WallSet:
        """穿过球的墙中, 没有其他墙把它与 id 分开的那些"""
        walls: Set[Wall] = set()
        for h in self.group.ball(radius):
            walls.update(self.geometry.inversion_walls(h))
        result = []
        for wall in walls:
            chamber = self.geometry.incident_chamber(wall)
            if not any(
                other != wall and not self.geometry.walls_intersect(other, wall)
                for other in self.geometry.inversion_walls(chamber)
            ):
                result.append(wall)
        return WallSet(result)

    # ---- 枢轴 ----

    def is_pivot(self, w: GroupElement) -> bool:
        """每个左下降 s 都满足 W_{α_s} ∈ 𝒲(w)（等价于 p(w) = id）"""
        if w.length == 0:
            return False
        frontier = self.geometry.frontier_set(w)
        return all(self.geometry.simple_wall(s) in frontier for s in self.group.left_descents(w))

    def pivots(self, length_cap: int) -> PivotSet:
        if length_cap < 1:
            raise InvalidCapError(length_cap)
        found = []
        for w in self.group.ball(length_cap):
            if self.is_pivot(w):
                found.append(Pivot(w, self.group.shortlex_word(w), self.group.reduced_words_all(w)))
        saturated = any(pivot.element.length == length_cap for pivot in found)
        if saturated:
            logger.warning("存在长度等于上限 %d 的枢轴, 枢轴集合可能不完整", length_cap)
        found.sort(key=lambda pivot: (len(pivot.word), pivot.word))
        return PivotSet(length_cap, tuple(found), saturated)

    # ---- 边 ----

    def edge_allowed(self, state: WallSet, w: GroupElement) -> bool:
        """(a) w 不被 state 中的墙与 id 分开; (b) state 中每面墙都有另一面墙把它与 w 分开"""
        if state & self.geometry.inversion_walls(w):
            return False
        return all(self.geometry.find_separator(w, wall) is not None for wall in state)

    def edge_target(self, w: GroupElement) -> WallSet:
        """w⁻¹𝒲(w)"""
        cached = self._targets.get(w)
        if cached is None:
            cached = self.geometry.translate_inverse(w, self.geometry.frontier_set(w))
            self._targets[w] = cached
        return cached

    def build_automaton(self, length_cap: int) -> VoraciousAutomaton:
        """从 ∅ 出发探索可达状态直到不动点"""
        universe = self.small_roots()
        pivot_set = self.pivots(length_cap)
        states: Dict[WallSet, None] = {EMPTY_WALLS: None}
        queue = deque([EMPTY_WALLS])
        edges: List[AutomatonEdge] = []
        while queue:
            state = queue.popleft()
            for pivot in pivot_set.pivots:
                if not self.edge_allowed(state, pivot.element):
                    continue
                target = self.edge_target(pivot.element)
                if not target <= universe:
                    raise AutomatonConsistencyError(f"边的终点 {target!r} 不包含于 𝒰")
                edges.append(AutomatonEdge(state, target, pivot))
                if target not in states:
                    states[target] = None
                    queue.append(target)
        automaton = VoraciousAutomaton(
            generators=list(self.group.generators),
            field_order=self.group.field.order,
            universe=universe,
            states=list(states),
            edges=edges,
            pivot_cap=length_cap,
            saturated=pivot_set.saturated,
        )
        logger.info("自动机: %d 个可达状态 (状态空间 2^%d), %d 条边", len(automaton.states), len(universe), len(edges))
        return automaton

    # ---- 序列化 ----

    def to_document(self, aut: VoraciousAutomaton) -> AutomatonDocument:
        walls = aut.ordered_universe()
        wall_index = {wall: i for i, wall in enumerate(walls)}
        states = aut.ordered_states()
        state_index = {state: i for i, state in enumerate(states)}
        generators = aut.generators
        return AutomatonDocument(
            generators=generators,
            field_order=aut.field_order,
            pivot_cap=aut.pivot_cap,
            saturated=aut.saturated,
            universe=[wall.root.coefficient_vectors() for wall in walls],
            states=[sorted(wall_index[wall] for wall in state) for state in states],
            start=state_index[aut.start],
            edges=[
                EdgeDocument(
                    source=state_index[edge.source],
                    target=state_index[edge.target],
                    pivot_word=format_word(edge.pivot.word, generators),
                    labels=[format_word(label, generators) for label in sorted(edge.labels)],
                )
                for edge in aut.ordered_edges()
            ],
        )

    def from_document(self, doc: AutomatonDocument) -> VoraciousAutomaton:
        """由 JSON 文档精确重建自动机"""
        group = self.group
        if doc.generators != group.generators:
            raise AutomatonFileError(f"生成元 {doc.generators} 与群 {group.generators} 不一致")
        if doc.field_order != group.field.order:
            raise AutomatonFileError(f"数域参数 M={doc.field_order} 与群的 M={group.field.order} 不一致")
        try:
            walls = [
                Wall(Root(tuple(group.field.from_coefficients([Fraction(c) for c in coord]) for coord in wall)))
                for wall in doc.universe
            ]
            states = [WallSet(walls[i] for i in state) for state in doc.states]
            edges = []
            for edge in doc.edges:
                word = parse_word(edge.pivot_word, group.generators)
                element = group.element_of_word(word)
                labels = frozenset(parse_word(label, group.generators) for label in edge.labels)
                if not labels:
                    raise ValueError(f"边 {edge.pivot_word} 没有标签")
                for label in labels:
                    if not label or len(label) != element.length or group.element_of_word(label) != element:
                        raise ValueError(f"标签 '{format_word(label, group.generators)}' 不是枢轴 {edge.pivot_word} 的约化字")
                edges.append(AutomatonEdge(states[edge.source], states[edge.target], Pivot(element, word, labels)))
            start = states[doc.start]
        except (IndexError, ValueError, ZeroDivisionError, CoxeterEngineException) as exc:
            raise AutomatonFileError(str(getattr(exc, "detail", exc)))
        return VoraciousAutomaton(
            generators=list(doc.generators),
            field_order=doc.field_order,
            universe=WallSet(walls),
            states=states,
            edges=edges,
            pivot_cap=doc.pivot_cap,
            saturated=doc.saturated,
            start=start,
        )

    def load(self, text: str) -> VoraciousAutomaton:
        try:
            doc = AutomatonDocument.model_validate_json(text)
        except ValidationError as exc:
            raise AutomatonFileError("; ".join(str(err.get("msg", "")) for err in exc.errors()))
        return self.from_document(doc)

    def to_dot(self, aut: VoraciousAutomaton) -> str:
        """DOT 有向图: 状态标注为排序后的根坐标, 边标注为逗号连接的 φ(e)"""
        generators = aut.generators
        states = aut.ordered_states()
        names = {state: f"q{i}" for i, state in enumerate(states)}
        dot = graphviz.Digraph("voracious", graph_attr={"rankdir": "LR"})
        dot.attr("node", shape="doublecircle")
        for state in states:
            label = "{" + ", ".join(str(wall.root) for wall in state.ordered()) + "}"
            if state == aut.start:
                dot.node(names[state], label=label, style="bold")
            else:
                dot.node(names[state], label=label)
        for edge in aut.ordered_edges():
            label = ",".join(format_word(word, generators) for word in sorted(edge.labels))
            dot.edge(names[edge.source], names[edge.target], label=label)
        return dot.source

    def serialize(self, aut: VoraciousAutomaton, fmt: str) -> str:
        if fmt == "dot":
            return self.to_dot(aut)
        if fmt == "json":
            return self.to_document(aut).model_dump_json(by_alias=True, indent=2)
        raise UnknownFormatError(fmt)
