import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from services.coxeter_group import CoxeterGroup, GroupElement, Vector
from exceptions.coxeter_exceptions import InconsistentRootError, InvalidWallPairError


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Root:
    """单根基下的根向量"""
    coords: Vector
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.coords))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Root):
            return NotImplemented
        return self._hash == other._hash and self.coords == other.coords

    def __hash__(self) -> int:
        return self._hash

    def __neg__(self) -> "Root":
        return Root(tuple(-coord for coord in self.coords))

    @property
    def sort_key(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(reversed(coord.coefficients)) for coord in self.coords)

    def coordinate_strings(self) -> List[str]:
        return [str(coord) for coord in self.coords]

    def coefficient_vectors(self) -> List[List[str]]:
        """每个坐标的系数向量（低次在前, "p/q" 字符串）"""
        return [coord.coefficient_strings() for coord in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.coordinate_strings()) + ")"


@dataclass(frozen=True)
class Wall:
    """X¹ 中的墙, 由其反射的正根 β 规范表示"""
    root: Root

    def __lt__(self, other: "Wall") -> bool:
        return self.root.sort_key < other.root.sort_key

    def __str__(self) -> str:
        return f"W{self.root}"


class WallSet(frozenset):
    """去重的有限墙集合"""

    def ordered(self) -> List[Wall]:
        return sorted(self)

    def __repr__(self) -> str:
        return "WallSet{" + ", ".join(str(wall) for wall in self.ordered()) + "}"


EMPTY_WALLS = WallSet()


class HalfSpace(str, Enum):
    """墙的两个半空间"""
    ID_SIDE = "id-side"
    FAR_SIDE = "far-side"


class WallGeometry:
    """墙的几何: 逆序集、分离判定、边界墙集合 𝒲(g)、前缀序、贪婪投影"""

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self._inversions: Dict[GroupElement, WallSet] = {}
        self._frontiers: Dict[GroupElement, WallSet] = {}
        self._projections: Dict[GroupElement, GroupElement] = {}
        self._chambers: Dict[Wall, GroupElement] = {}
        self._intersections: Dict[FrozenSet[Wall], bool] = {}

    # ---- 根与墙 ----

    def wall_of(self, v: Vector) -> Wall:
        """由根（正或负）得到墙, 并检查坐标符号一致"""
        signs = {coord.sign() for coord in v} - {0}
        if len(signs) != 1:
            raise InconsistentRootError("(" + ", ".join(str(coord) for coord in v) + ")")
        root = Root(tuple(v))
        return Wall(root if signs == {1} else -root)

    def simple_wall(self, s: int) -> Wall:
        return Wall(Root(self.group.simple_root(s)))

    def reflect_in(self, wall: Wall, v: Vector) -> Vector:
        """墙的反射 r(v) = v - 2B(β, v)β"""
        beta = wall.root.coords
        shift = 2 * self.group.bilinear(beta, v)
        if not shift:
            return v
        return tuple(coord - shift * b for coord, b in zip(v, beta))

    def translate(self, u: GroupElement, walls: Iterable[Wall]) -> WallSet:
        """u·W_β 规范化为 ±u(β) 中的正根"""
        return WallSet(self.wall_of(self.group.act(u, wall.root.coords)) for wall in walls)

    def translate_inverse(self, u: GroupElement, walls: Iterable[Wall]) -> WallSet:
        """u⁻¹·W_β"""
        return WallSet(self.wall_of(self.group.act_inverse(u, wall.root.coords)) for wall in walls)

    # ---- 逆序集与半空间 ----

    def inversion_walls(self, g: GroupElement) -> WallSet:
        """分离 id 与 g 的墙: 沿约化字扫描 β_i = s₁⋯s_{i-1}(α_{s_i})"""
        cached = self._inversions.get(g)
        if cached is not None:
            return cached
        walls = []
        prefix = self.group.identity
        for s in self.group.shortlex_word(g):
            walls.append(self.wall_of(prefix.column(s)))
            prefix = self.group.apply_generator(prefix, s)
        result = WallSet(walls)
        self._inversions[g] = result
        return result

    def on_far_side(self, wall: Wall, g: GroupElement) -> bool:
        return not self.group.is_positive(self.group.act_inverse(g, wall.root.coords))

    def side_of_wall(self, wall: Wall, g: GroupElement) -> HalfSpace:
        """g⁻¹β 为正根时 g 与 id 同侧"""
        return HalfSpace.FAR_SIDE if self.on_far_side(wall, g) else HalfSpace.ID_SIDE

    def walls_between(self, g: GroupElement, h: GroupElement) -> WallSet:
        """分离 g 与 h 的墙, 个数等于 d(g, h)"""
        return WallSet(self.inversion_walls(g) ^ self.inversion_walls(h))

    # ---- 墙与墙 ----

    def walls_intersect(self, first: Wall, second: Wall) -> bool:
        """|B(β1, β2)| < 1 时两墙相交（⟨r, q⟩ 有限）"""
        if first == second:
            raise InvalidWallPairError(str(first))
        key = frozenset((first, second))
        cached = self._intersections.get(key)
        if cached is not None:
            return cached
        b = self.group.bilinear(first.root.coords, second.root.coords)
        result = (1 - b).sign() > 0 and (1 + b).sign() > 0
        self._intersections[key] = result
        return result

    def incident_chamber(self, wall: Wall) -> GroupElement:
        """与墙相邻且位于 id 一侧的最短元素（深度下降, 下标最小优先）"""
        cached = self._chambers.get(wall)
        if cached is not None:
            return cached
        beta = wall.root.coords
        word = []
        while sum(1 for coord in beta if coord) != 1:
            s = next(s for s in range(self.group.rank) if self.group.bilinear_simple(s, beta).sign() > 0)
            word.append(s)
            beta = self.group.reflect(beta, s)
        chamber = self.group.element_of_word(word)
        self._chambers[wall] = chamber
        return chamber

    def separates_from_wall(self, separator: Wall, g: GroupElement, wall: Wall) -> bool:
        """separator 与 wall 不相交, 且 g 与 wall 位于 separator 的两侧"""
        if separator == wall:
            raise InvalidWallPairError(str(wall))
        if self.walls_intersect(separator, wall):
            return False
        return self.on_far_side(separator, g) != self.on_far_side(separator, self.incident_chamber(wall))

    def find_separator(self, g: GroupElement, wall: Wall) -> Optional[Wall]:
        """在 walls_between(g, incident_chamber(wall)) 中完备地搜索分离墙"""
        for candidate in self.walls_between(g, self.incident_chamber(wall)).ordered():
            if candidate != wall and not self.walls_intersect(candidate, wall):
                return candidate
        return None

    # ---- 𝒲(g), 前缀序, P(g), p(g) ----

    def frontier_set(self, g: GroupElement) -> WallSet:
        """𝒲(g): 没有其他逆序墙把 g 与之分开的逆序墙"""
        cached = self._frontiers.get(g)
        if cached is not None:
            return cached
        inversions = self.inversion_walls(g).ordered()
        result = WallSet(
            wall for wall in inversions
            if not any(other != wall and self.separates_from_wall(other, g, wall) for other in inversions)
        )
        self._frontiers[g] = result
        return result

    def is_prefix(self, p: GroupElement, g: GroupElement) -> bool:
        """p ⪯ g 当且仅当 ℓ(p) + ℓ(p⁻¹g) = ℓ(g), 即 Inv(p) ⊆ Inv(g)"""
        if p.length > g.length:
            return False
        return self.inversion_walls(p) <= self.inversion_walls(g)

    def _ascents_within(self, p: GroupElement, allowed: Set[Wall], excluded: Set[Wall], order: Sequence[int]):
        """p 的右上升 ps, 其新增逆序墙在 allowed 中且不在 excluded 中"""
        for s in order:
            if not self.group.is_right_ascent(p, s):
                continue
            crossed = self.wall_of(p.column(s))
            if crossed in allowed and crossed not in excluded:
                yield s

    def prefix_interval(self, lo: GroupElement, hi: GroupElement) -> List[GroupElement]:
        """{x : lo ⪯ x ⪯ hi}"""
        if not self.is_prefix(lo, hi):
            return []
        allowed = self.inversion_walls(hi)
        found = {lo: None}
        queue = deque([lo])
        while queue:
            x = queue.popleft()
            for s in self._ascents_within(x, allowed, EMPTY_WALLS, range(self.group.rank)):
                y = self.group.apply_generator(x, s)
                if y not in found:
                    found[y] = None
                    queue.append(y)
        return list(found)

    def projection_set(self, g: GroupElement) -> Set[GroupElement]:
        """P(g): 不被 𝒲(g) 中任何墙与 id 分开的前缀（向下封闭, BFS 得到）"""
        allowed = self.inversion_walls(g)
        frontier = self.frontier_set(g)
        found = {self.group.identity}
        queue = deque([self.group.identity])
        while queue:
            p = queue.popleft()
            for s in self._ascents_within(p, allowed, frontier, range(self.group.rank)):
                q = self.group.apply_generator(p, s)
                if q not in found:
                    found.add(q)
                    queue.append(q)
        return found

    def filtered_projection_set(self, g: GroupElement) -> Set[GroupElement]:
        """P(g) 按定义逐个筛选: [id, g] 中 Inv(p) 与 𝒲(g) 不相交的 p"""
        frontier = self.frontier_set(g)
        return {p for p in self.prefix_interval(self.group.identity, g) if not self.inversion_walls(p) & frontier}

    def voracious_projection(self, g: GroupElement, order: Optional[Sequence[int]] = None) -> GroupElement:
        """贪婪地在 P(g) 内上行直到无法继续, 结果是 P(g) 的最大元"""
        if order is None:
            cached = self._projections.get(g)
            if cached is not None:
                return cached
        steps = list(order) if order is not None else list(range(self.group.rank))
        allowed = self.inversion_walls(g)
        frontier = self.frontier_set(g)
        p = self.group.identity
        while True:
            step = next(self._ascents_within(p, allowed, frontier, steps), None)
            if step is None:
                break
            p = self.group.apply_generator(p, step)
        if order is None:
            self._projections[g] = p
        return p

    # ---- 到墙的距离 ----

    def walls_in_ball(self, radius: int) -> WallSet:
        """穿过球内某条边的墙"""
        walls: Set[Wall] = set()
        for h in self.group.ball(radius):
            walls.update(self.inversion_walls(h))
        return WallSet(walls)

    def wall_distance(self, g: GroupElement, wall: Wall) -> int:
        """d(g, W) = g 到 W 的相邻元素的最小距离 = ℓ(inc(g⁻¹W))"""
        translated = self.wall_of(self.group.act_inverse(g, wall.root.coords))
        return self.incident_chamber(translated).length

    def canonical_wall_distance(self, g: GroupElement, wall: Wall) -> int:
        """g 与规范相邻元素之间除 W 以外的墙数"""
        return len(self.walls_between(g, self.incident_chamber(wall)) - {wall})

    def dihedral_orbit(self, first: Wall, second: Wall) -> WallSet:
        """两面相交墙在 ⟨r, q⟩ 作用下的轨道"""
        if not self.walls_intersect(first, second):
            raise ValueError("两墙不相交, 轨道无限")
        found = {first, second}
        queue = deque(found)
        while queue:
            wall = queue.popleft()
            for mirror in (first, second):
                image = self.wall_of(self.reflect_in(mirror, wall.root.coords))
                if image not in found:
                    found.add(image)
                    queue.append(image)
        return WallSet(found)
