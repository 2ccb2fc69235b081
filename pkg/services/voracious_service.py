import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Set

from services.coxeter_group import CoxeterGroup, GroupElement, Word
from services.wall_service import WallGeometry


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorizationChain:
    """投影链 g = g₀ ≻ g₁ ≻ … ≻ g_r = id 及块 w_i = g_{i+1}⁻¹ g_i"""
    elements: List[GroupElement]
    blocks: List[GroupElement]

    @property
    def blocks_from_identity(self) -> List[GroupElement]:
        """从 id 向 g 排列的块（w_{r-1} 在前）"""
        return list(reversed(self.blocks))


class VoraciousLanguage:
    """贪婪语言 𝒱: 成员判定、分解链、规范字与全部代表字"""

    def __init__(self, geometry: WallGeometry):
        self.geometry = geometry
        self.group: CoxeterGroup = geometry.group
        self._chains: Dict[GroupElement, FactorizationChain] = {}
        self._words: Dict[GroupElement, FrozenSet[Word]] = {}

    def block(self, g: GroupElement) -> GroupElement:
        """w = p(g)⁻¹ g"""
        p = self.geometry.voracious_projection(g)
        return self.group.multiply(self.group.inverse(p), g)

    def factorization_chain(self, g: GroupElement) -> FactorizationChain:
        cached = self._chains.get(g)
        if cached is not None:
            return cached
        elements = [g]
        blocks = []
        current = g
        while current.length:
            p = self.geometry.voracious_projection(current)
            blocks.append(self.group.multiply(self.group.inverse(p), current))
            elements.append(p)
            current = p
        chain = FactorizationChain(elements, blocks)
        self._chains[g] = chain
        return chain

    def membership(self, word: Sequence[int]) -> bool:
        """v ∈ 𝒱: 先做测地检查, 再逐块剥离末尾"""
        v = tuple(word)
        while v:
            g = self.group.element_of_word(v)
            if len(v) != g.length:
                return False
            w = self.block(g)
            k = w.length
            if self.group.element_of_word(v[len(v) - k:]) != w:
                return False
            v = v[: len(v) - k]
        return True

    def canonical_word(self, g: GroupElement) -> Word:
        """各块 ShortLex 字按从 id 向外的顺序拼接"""
        word: Word = ()
        for w in self.factorization_chain(g).blocks_from_identity:
            word += self.group.shortlex_word(w)
        return word

    def all_words_of(self, g: GroupElement) -> FrozenSet[Word]:
        """𝒱 中代表 g 的全部单词: 各块全部约化字的笛卡尔拼接"""
        cached = self._words.get(g)
        if cached is not None:
            return cached
        options = [sorted(self.group.reduced_words_all(w)) for w in self.factorization_chain(g).blocks_from_identity]
        result = frozenset(tuple(itertools.chain.from_iterable(parts)) for parts in itertools.product(*options))
        self._words[g] = result
        return result

    def count_words_of(self, g: GroupElement) -> int:
        """|𝒱(g)|, 不展开笛卡尔积"""
        total = 1
        for w in self.factorization_chain(g).blocks:
            total *= len(self.group.reduced_words_all(w))
        return total

    def language_on_ball(self, radius: int) -> Set[Word]:
        """球内全部元素的 𝒱 代表字"""
        words: Set[Word] = set()
        for g in self.group.ball(radius):
            words.update(self.all_words_of(g))
        return words
