import itertools
import logging
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from models.config_models import EngineSettings
from models.group_models import CoxeterMatrix
from utils.field import FieldContext, FieldScalar, make_field_context
from exceptions.coxeter_exceptions import InconsistentRootError, ResourceCapExceededError


logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Vector = Tuple[FieldScalar, ...]
Matrix = Tuple[Vector, ...]


class Side(str, Enum):
    """乘法方向"""
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Coxeter 群元素: 单根基下的几何表示矩阵及其逆, 长度缓存

    相等性只由矩阵决定（几何表示是忠实的）。
    """
    matrix: Matrix
    inverse_matrix: Matrix = field(repr=False)
    length: int
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.matrix))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._hash == other._hash and self.matrix == other.matrix

    def __hash__(self) -> int:
        return self._hash

    def column(self, s: int) -> Vector:
        """g(α_s)"""
        return tuple(row[s] for row in self.matrix)

    def inverse_column(self, s: int) -> Vector:
        """g⁻¹(α_s)"""
        return tuple(row[s] for row in self.inverse_matrix)


def gram_matrix(mat: CoxeterMatrix, ctx: FieldContext) -> Tuple[Tuple[FieldScalar, ...], ...]:
    """双线性型 B(α_s, α_t) = -cos(π/m_st), m_st = ∞ 时取 -1"""
    rows = []
    for i in range(mat.rank):
        row = []
        for j in range(mat.rank):
            if i == j:
                row.append(ctx.one)
                continue
            order = mat.order(i, j)
            row.append(ctx.scalar(-1) if order is None else -ctx.cos_pi_over(order))
        rows.append(tuple(row))
    return tuple(rows)


class CoxeterGroup:
    """Coxeter 群的几何表示及字、长度、下降集、球枚举"""

    def __init__(self, matrix: CoxeterMatrix, settings: Optional[EngineSettings] = None):
        self.matrix = matrix
        self.settings = settings or EngineSettings()
        self.rank = matrix.rank
        self.generators = list(matrix.generators)
        self.field = make_field_context(matrix)
        self.gram = gram_matrix(matrix, self.field)
        self._two_gram = tuple(tuple(2 * entry for entry in row) for row in self.gram)

        zero, one = self.field.zero, self.field.one
        unit = tuple(tuple(one if i == j else zero for j in range(self.rank)) for i in range(self.rank))
        self.identity = GroupElement(unit, unit, 0)

        self._layers: List[List[GroupElement]] = [[self.identity]]
        self._ball_size = 1
        self._ball_lock = threading.Lock()
        self._reduced_words: Dict[GroupElement, FrozenSet[Word]] = {}
        self._shortlex: Dict[GroupElement, Word] = {}

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.matrix.describe()})"

    # ---- 向量与根 ----

    def simple_root(self, s: int) -> Vector:
        zero, one = self.field.zero, self.field.one
        return tuple(one if i == s else zero for i in range(self.rank))

    def bilinear_simple(self, s: int, v: Vector) -> FieldScalar:
        """B(α_s, v)"""
        total = self.field.zero
        for entry, coord in zip(self.gram[s], v):
            if entry and coord:
                total = total + entry * coord
        return total

    def bilinear(self, u: Vector, v: Vector) -> FieldScalar:
        total = self.field.zero
        for s, coord in enumerate(u):
            if coord:
                total = total + coord * self.bilinear_simple(s, v)
        return total

    def reflect(self, v: Vector, s: int) -> Vector:
        """s(v) = v - 2B(α_s, v)α_s"""
        shift = 2 * self.bilinear_simple(s, v)
        if not shift:
            return v
        return tuple(coord - shift if i == s else coord for i, coord in enumerate(v))

    def is_positive(self, v: Vector) -> bool:
        """根的全部非零坐标同号, 否则抛出 InconsistentRootError"""
        signs = {coord.sign() for coord in v if coord}
        if not signs:
            raise ValueError("零向量不是根")
        if len(signs) != 1:
            raise InconsistentRootError("(" + ", ".join(str(coord) for coord in v) + ")")
        return signs == {1}

    def act(self, g: GroupElement, v: Vector) -> Vector:
        """g(v)"""
        return self._mat_vec(g.matrix, v)

    def act_inverse(self, g: GroupElement, v: Vector) -> Vector:
        """g⁻¹(v)"""
        return self._mat_vec(g.inverse_matrix, v)

    def _mat_vec(self, matrix: Matrix, v: Vector) -> Vector:
        zero = self.field.zero
        result = []
        for row in matrix:
            total = zero
            for entry, coord in zip(row, v):
                if entry and coord:
                    total = total + entry * coord
            result.append(total)
        return tuple(result)

    # ---- 元素运算 ----

    def _times_generator(self, matrix: Matrix, s: int) -> Matrix:
        """matrix · σ_s（列变换）"""
        two = self._two_gram[s]
        return tuple(
            tuple(row[t] - two[t] * row[s] if two[t] else row[t] for t in range(self.rank))
            for row in matrix
        )

    def _generator_times(self, matrix: Matrix, s: int) -> Matrix:
        """σ_s · matrix（只改第 s 行）"""
        two = self._two_gram[s]
        new_row = []
        for t in range(self.rank):
            total = matrix[s][t]
            for j in range(self.rank):
                if two[j] and matrix[j][t]:
                    total = total - two[j] * matrix[j][t]
            new_row.append(total)
        return tuple(tuple(new_row) if i == s else row for i, row in enumerate(matrix))

    def is_right_ascent(self, g: GroupElement, s: int) -> bool:
        """ℓ(gs) > ℓ(g) 当且仅当 g(α_s) 为正根"""
        return self.is_positive(g.column(s))

    def is_left_ascent(self, g: GroupElement, s: int) -> bool:
        """ℓ(sg) > ℓ(g) 当且仅当 g⁻¹(α_s) 为正根"""
        return self.is_positive(g.inverse_column(s))

    def apply_generator(self, g: GroupElement, s: int, side: Side = Side.RIGHT) -> GroupElement:
        """返回 gs（右乘）或 sg（左乘）, 长度精确地加一或减一"""
        if side == Side.RIGHT:
            step = 1 if self.is_right_ascent(g, s) else -1
            return GroupElement(
                self._times_generator(g.matrix, s),
                self._generator_times(g.inverse_matrix, s),
                g.length + step,
            )
        step = 1 if self.is_left_ascent(g, s) else -1
        return GroupElement(
            self._generator_times(g.matrix, s),
            self._times_generator(g.inverse_matrix, s),
            g.length + step,
        )

    def generator(self, s: int) -> GroupElement:
        return self.apply_generator(self.identity, s)

    def element_of_word(self, word: Iterable[int]) -> GroupElement:
        g = self.identity
        for s in word:
            g = self.apply_generator(g, s)
        return g

    def inverse(self, g: GroupElement) -> GroupElement:
        return GroupElement(g.inverse_matrix, g.matrix, g.length)

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        for s in self.shortlex_word(h):
            g = self.apply_generator(g, s)
        return g

    def distance(self, g: GroupElement, h: GroupElement) -> int:
        """Cayley 图 X¹ 中的距离 ℓ(g⁻¹h)"""
        return self.multiply(self.inverse(g), h).length

    # ---- 下降集与约化字 ----

    def right_descents(self, g: GroupElement) -> FrozenSet[int]:
        return frozenset(s for s in range(self.rank) if not self.is_right_ascent(g, s))

    def left_descents(self, g: GroupElement) -> FrozenSet[int]:
        return frozenset(s for s in range(self.rank) if not self.is_left_ascent(g, s))

    def length_and_descents(self, g: GroupElement) -> Tuple[int, FrozenSet[int], FrozenSet[int]]:
        return g.length, self.left_descents(g), self.right_descents(g)

    def shortlex_word(self, g: GroupElement) -> Word:
        """反复取下标最小的左下降得到的约化字"""
        cached = self._shortlex.get(g)
        if cached is not None:
            return cached
        word = []
        current = g
        while current.length:
            s = next(s for s in range(self.rank) if not self.is_left_ascent(current, s))
            word.append(s)
            current = self.apply_generator(current, s, Side.LEFT)
        result = tuple(word)
        self._shortlex[g] = result
        return result

    def reduced_words_all(self, g: GroupElement) -> FrozenSet[Word]:
        """g 的全部约化字（按左下降递归）"""
        cached = self._reduced_words.get(g)
        if cached is not None:
            return cached
        if g.length == 0:
            result = frozenset({()})
        else:
            words = set()
            for s in sorted(self.left_descents(g)):
                rest = self.reduced_words_all(self.apply_generator(g, s, Side.LEFT))
                words.update((s,) + tail for tail in rest)
            result = frozenset(words)
        self._reduced_words[g] = result
        return result

    # ---- 球枚举 ----

    def ball(self, radius: int) -> List[GroupElement]:
        """长度 ≤ radius 的全部元素, 按长度分层（X¹ 中从 id 出发的 BFS）"""
        if radius < 0:
            return []
        with self._ball_lock:
            while len(self._layers) <= radius:
                self._grow()
            return [g for layer in self._layers[: radius + 1] for g in layer]

    def sphere(self, radius: int) -> List[GroupElement]:
        self.ball(radius)
        return list(self._layers[radius]) if radius < len(self._layers) else []

    def _grow(self) -> None:
        frontier = self._layers[-1]
        next_layer: Dict[GroupElement, GroupElement] = {}
        for g in frontier:
            for s in range(self.rank):
                if self.is_right_ascent(g, s):
                    h = self.apply_generator(g, s)
                    next_layer.setdefault(h, h)
        limit = self.settings.ball_limit
        if self._ball_size + len(next_layer) > limit:
            raise ResourceCapExceededError("球中元素个数", limit)
        self._layers.append(list(next_layer))
        self._ball_size += len(next_layer)
        logger.debug("球半径 %d: 新增 %d 个元素, 共 %d", len(self._layers) - 1, len(next_layer), self._ball_size)

    # ---- 图自同构 ----

    def diagram_automorphisms(self) -> List[Tuple[int, ...]]:
        """保持 Coxeter 矩阵的非平凡生成元置换"""
        m = self.matrix.m
        result = []
        for perm in itertools.permutations(range(self.rank)):
            if list(perm) == list(range(self.rank)):
                continue
            if all(m[perm[i]][perm[j]] == m[i][j] for i in range(self.rank) for j in range(self.rank)):
                result.append(perm)
        return result

    def permute_word(self, word: Sequence[int], perm: Sequence[int]) -> Word:
        return tuple(perm[s] for s in word)
