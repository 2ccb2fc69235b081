import itertools
import logging
import random
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from models.report_models import CheckResult, Constants, VerificationReport, VerifyConfig
from services.automaton_service import AutomatonBuilder, run_states
from services.coxeter_group import CoxeterGroup, GroupElement, Side, Word
from services.voracious_service import VoraciousLanguage
from services.wall_service import Wall, WallGeometry
from utils.word_utils import all_words, display_word


logger = logging.getLogger(__name__)


class VerifierService:
    """在有限球上逐项检验贪婪投影与贪婪语言的性质, 并估计常数"""

    def __init__(self, builder: AutomatonBuilder):
        self.builder = builder
        self.language: VoraciousLanguage = builder.language
        self.geometry: WallGeometry = builder.geometry
        self.group: CoxeterGroup = builder.group
        self._prefix_elements: Dict[Word, List[GroupElement]] = {}

    # ---- 工具 ----

    def _word(self, word: Sequence[int]) -> str:
        return display_word(word, self.group.generators)

    def _name(self, g: GroupElement) -> str:
        return self._word(self.group.shortlex_word(g))

    def _sorted_ball(self, radius: int) -> List[GroupElement]:
        return sorted(self.group.ball(radius), key=lambda g: (g.length, self.group.shortlex_word(g)))

    def _prefixes(self, word: Word) -> List[GroupElement]:
        """v(0), v(1), …, v(|v|)"""
        cached = self._prefix_elements.get(word)
        if cached is None:
            cached = [self.group.identity]
            for s in word:
                cached.append(self.group.apply_generator(cached[-1], s))
            self._prefix_elements[word] = cached
        return cached

    @staticmethod
    def _result(name: str, failure: Optional[dict], detail: dict) -> CheckResult:
        status = "fail" if failure is not None else "pass"
        logger.info("检查 %s: %s", name, status)
        return CheckResult(name=name, status=status, witness=failure, detail=detail)

    # ---- 最大元唯一性 ----

    def check_unique_max(self, radius: int, all_orders: bool = True) -> CheckResult:
        """穷举 P(g), 断言 ⪯-最大元唯一且等于贪婪投影（在全部生成元顺序下）"""
        orders = list(itertools.permutations(range(self.group.rank))) if all_orders else [tuple(range(self.group.rank))]
        elements = self._sorted_ball(radius)
        for g in elements:
            members = self.geometry.filtered_projection_set(g)
            top_length = max(p.length for p in members)
            tops = [p for p in members if p.length == top_length]
            greedy = self.geometry.voracious_projection(g)
            witness = {"g": self._name(g), "maxima": sorted(self._name(p) for p in tops), "greedy": self._name(greedy)}
            if members != self.geometry.projection_set(g):
                witness["reachable"] = sorted(self._name(p) for p in self.geometry.projection_set(g))
                return self._result("unique_max", witness, {"elements": len(elements)})
            for p in members:
                lower = [self.group.apply_generator(p, s) for s in sorted(self.group.right_descents(p))]
                if any(q not in members for q in lower):
                    witness["not_closed"] = self._name(p)
                    return self._result("unique_max", witness, {"elements": len(elements)})
            if len(tops) != 1:
                return self._result("unique_max", witness, {"elements": len(elements)})
            top = tops[0]
            if any(not self.geometry.is_prefix(p, top) for p in members):
                return self._result("unique_max", witness, {"elements": len(elements)})
            for order in orders:
                if self.geometry.voracious_projection(g, order) != top:
                    witness["order"] = [self.group.generators[s] for s in order]
                    return self._result("unique_max", witness, {"elements": len(elements)})
        return self._result("unique_max", None, {"elements": len(elements), "orders": len(orders)})

    # ---- 常数估计 ----

    def lemma_distance(self, g: GroupElement, wall: Wall) -> int:
        """g 到最近的、被 wall 与 g 分开的前缀 h ⪯ g 的距离"""
        seen = {g}
        queue = deque([g])
        while queue:
            h = queue.popleft()
            if wall not in self.geometry.inversion_walls(h):
                return g.length - h.length
            for s in sorted(self.group.right_descents(h)):
                lower = self.group.apply_generator(h, s)
                if lower not in seen:
                    seen.add(lower)
                    queue.append(lower)
        raise ValueError(f"{wall} 不在 Inv(g) 中")

    def estimate_constants(self, radius: int, margin: int = 2) -> Constants:
        """Ĉ, N̂, Ĉ₀ 取遍整个球; Q̂ 只对 ℓ(g) ≤ radius - margin 统计"""
        c_hat = n_hat = c0_hat = q_hat = q_walls = 0
        for g in self.group.ball(radius):
            c_hat = max(c_hat, self.language.block(g).length)
            frontier = self.geometry.frontier_set(g)
            n_hat = max(n_hat, len(frontier))
            for wall in frontier:
                c0_hat = max(c0_hat, self.lemma_distance(g, wall))
        walls = self.geometry.walls_in_ball(radius)
        for g in self.group.ball(radius - margin):
            for wall in walls.ordered():
                if self.geometry.find_separator(g, wall) is not None:
                    continue
                q_hat = max(q_hat, self.geometry.wall_distance(g, wall))
                q_walls = max(q_walls, self.geometry.canonical_wall_distance(g, wall))
        constants = Constants(C_hat=c_hat, Q_hat=q_hat, Q_hat_walls=q_walls, N_hat=n_hat, C0_hat=c0_hat)
        logger.debug("半径 %d 的常数估计: %s", radius, constants)
        return constants

    def check_radius_monotonicity(self, radius: int, margin: int = 2) -> CheckResult:
        """各常数随半径单调不减"""
        history = [self.estimate_constants(r, margin) for r in range(radius + 1)]
        fields = ("C_hat", "Q_hat", "Q_hat_walls", "N_hat", "C0_hat")
        detail = {name: [getattr(c, name) for c in history] for name in fields}
        for r in range(1, len(history)):
            for name in fields:
                if getattr(history[r], name) < getattr(history[r - 1], name):
                    return self._result("radius_monotonicity", {"constant": name, "radius": r}, detail)
        return self._result("radius_monotonicity", None, detail)

    def check_projection_bound(self, radius: int, constants: Constants) -> Tuple[CheckResult, Optional[str]]:
        """p(g) ⪯ g 且块长等于 p(g) 与 g 之间的墙数; 同时比较 Ĉ 与 Ĉ₀·N̂"""
        detail = {"C_hat": constants.C_hat, "C0_hat": constants.C0_hat, "N_hat": constants.N_hat}
        warning = None
        if constants.C_hat > constants.C0_hat * constants.N_hat:
            warning = f"Ĉ={constants.C_hat} 超过 Ĉ₀·N̂={constants.C0_hat * constants.N_hat}"
        for g in self._sorted_ball(radius):
            p = self.geometry.voracious_projection(g)
            between = self.geometry.walls_between(p, g)
            if not self.geometry.is_prefix(p, g) or len(between) != self.language.block(g).length:
                return self._result("projection_bound", {"g": self._name(g), "p": self._name(p)}, detail), warning
        return self._result("projection_bound", None, detail), warning

    # ---- 投影的性质 ----

    def check_voracity(self, radius: int) -> CheckResult:
        """𝒲(g) 中每面墙都分开 p(g) 与 g"""
        for g in self._sorted_ball(radius):
            p = self.geometry.voracious_projection(g)
            missed = self.geometry.frontier_set(g) & self.geometry.inversion_walls(p)
            if missed:
                witness = {"g": self._name(g), "p": self._name(p), "wall": str(min(missed))}
                return self._result("voracity", witness, {})
        return self._result("voracity", None, {})

    def check_monotonicity(self, radius: int) -> CheckResult:
        """p(g) ⪯ g′ ⪯ g 时 p(g′) ⪯ p(g)"""
        pairs = 0
        for g in self._sorted_ball(radius):
            p = self.geometry.voracious_projection(g)
            for middle in self.geometry.prefix_interval(p, g):
                pairs += 1
                if not self.geometry.is_prefix(self.geometry.voracious_projection(middle), p):
                    witness = {"g": self._name(g), "g_prime": self._name(middle), "p": self._name(p)}
                    return self._result("monotonicity", witness, {"pairs": pairs})
        return self._result("monotonicity", None, {"pairs": pairs})

    def check_language_coverage(self, radius: int) -> CheckResult:
        """每个元素在 𝒱 中有非空有限的代表集合, 规范字属于 𝒱 并代表该元素"""
        total = 0
        for g in self._sorted_ball(radius):
            count = self.language.count_words_of(g)
            total += count
            word = self.language.canonical_word(g)
            if count < 1 or self.group.element_of_word(word) != g or not self.language.membership(word):
                return self._result("language_coverage", {"g": self._name(g), "canonical": self._word(word)}, {})
        return self._result("language_coverage", None, {"words": total})

    # ---- 同伴旅行 ----

    def _pairs(self, first: List[Word], second: List[Word], pair_cap: int, rng: random.Random):
        total = len(first) * len(second)
        if total <= pair_cap:
            return list(itertools.product(first, second)), False
        return [(rng.choice(first), rng.choice(second)) for _ in range(pair_cap)], True

    def _track(self, v: Word, w: Word, left: Optional[int]) -> int:
        """max_i ℓ(v(i)⁻¹ x w(i)), x = s（左乘情形）或 id"""
        first, second = self._prefixes(v), self._prefixes(w)
        worst = 0
        for i in range(max(len(first), len(second))):
            a = first[min(i, len(first) - 1)]
            b = second[min(i, len(second) - 1)]
            if left is not None:
                b = self.group.apply_generator(b, left, side=Side.LEFT)
            worst = max(worst, len(self.geometry.walls_between(a, b)))
        return worst

    def check_fellow_traveller(
        self,
        radius: int,
        constants: Constants,
        pair_cap: int = 20000,
        seed: int = 0,
        estimation_radius: Optional[int] = None,
    ) -> Tuple[CheckResult, List[str]]:
        """条件 (ii) 的界为 2Ĉ, 条件 (iii) 的界为 2Ĉ(Ĉ+2Q̂)+2Q̂

        涉及长度超过 estimation_radius 的元素的违反只记为常数估计不足的警告
        """
        rng = random.Random(seed)
        c, q = constants.C_hat, constants.Q_hat
        bound_ii = 2 * c
        bound_iii = 2 * c * (c + 2 * q) + 2 * q
        estimated_on = radius if estimation_radius is None else estimation_radius
        ii_max = iii_max = 0
        sampled = False
        warnings: List[str] = []
        failure = None
        for g in self._sorted_ball(radius):
            words_g = sorted(self.language.all_words_of(g))
            for s in range(self.group.rank):
                right = self.group.apply_generator(g, s)
                left = self.group.apply_generator(g, s, side=Side.LEFT)
                cases = (("ii", right, None, bound_ii), ("iii", left, s, bound_iii))
                for label, other, letter, bound in cases:
                    pairs, flag = self._pairs(words_g, sorted(self.language.all_words_of(other)), pair_cap, rng)
                    sampled = sampled or flag
                    for v, w in pairs:
                        value = self._track(v, w, letter)
                        if label == "ii":
                            ii_max = max(ii_max, value)
                        else:
                            iii_max = max(iii_max, value)
                        if value > bound and failure is None:
                            witness = {
                                "condition": label, "g": self._name(g), "s": self.group.generators[s],
                                "v": self._word(v), "v_prime": self._word(w), "value": value, "bound": bound,
                            }
                            if max(g.length, other.length) > estimated_on:
                                warnings.append(f"常数估计不足: 条件 ({label}) 在 {self._name(g)} 处取值 {value} > {bound}")
                            else:
                                failure = witness
        constants.ii_max, constants.iii_max = ii_max, iii_max
        if sampled:
            warnings.append(f"单词对个数超过 {pair_cap}, 已按种子 {seed} 抽样")
        detail = {"ii_max": ii_max, "iii_max": iii_max, "ii_bound": bound_ii, "iii_bound": bound_iii, "sampled": sampled}
        return self._result("fellow_traveller", failure, detail), warnings

    # ---- 自动机与小根 ----

    def check_automaton_agreement(self, max_word_length: int, pivot_cap: int = 8) -> Tuple[CheckResult, List[str]]:
        """全部长度 ≤ max_word_length 的单词上: 接受 ⟺ 属于 𝒱, 且接受时状态恰为 {g⁻¹𝒲(g)}"""
        cap = max(pivot_cap, max_word_length, 1)
        automaton = self.builder.build_automaton(cap)
        warnings = [f"枢轴长度上限 {cap} 处存在枢轴, 枢轴集合可能不完整"] if automaton.saturated else []
        checked = 0
        for word in all_words(self.group.rank, max_word_length):
            checked += 1
            reached = run_states(automaton, word)
            member = self.language.membership(word)
            if bool(reached) != member:
                witness = {"word": self._word(word), "accepts": bool(reached), "member": member}
                return self._result("automaton_agreement", witness, {"words": checked}), warnings
            if member:
                g = self.group.element_of_word(word)
                expected = self.geometry.translate_inverse(g, self.geometry.frontier_set(g))
                if reached != {expected}:
                    witness = {"word": self._word(word), "states": len(reached)}
                    return self._result("automaton_agreement", witness, {"words": checked}), warnings
        detail = {"words": checked, "states": len(automaton.states), "edges": len(automaton.edges), "pivot_cap": cap}
        return self._result("automaton_agreement", None, detail), warnings

    def check_small_roots(self, radius: int) -> Tuple[CheckResult, Optional[str]]:
        """递推得到的 𝒰 与球上的穷举判定一致（只比较相邻元素长度 + 1 ≤ radius 的墙）"""
        def visible(wall: Wall) -> bool:
            return self.geometry.incident_chamber(wall).length + 1 <= radius

        universe = self.builder.small_roots()
        recursion = {wall for wall in universe if visible(wall)}
        oracle = {wall for wall in self.builder.small_roots_oracle(radius) if visible(wall)}
        skipped = len(universe) - len(recursion)
        detail = {"small_roots": len(universe), "compared": len(recursion), "skipped": skipped}
        warning = f"{skipped} 个小根的相邻元素超出半径 {radius}, 未参与比较" if skipped else None
        if recursion != oracle:
            witness = {
                "only_recursion": [str(wall) for wall in sorted(recursion - oracle)],
                "only_oracle": [str(wall) for wall in sorted(oracle - recursion)],
            }
            return self._result("small_roots", witness, detail), warning
        return self._result("small_roots", None, detail), warning

    def check_pivots(self, cap: int) -> CheckResult:
        """is_pivot(w) ⟺ p(w) = id"""
        for w in self._sorted_ball(cap):
            if w.length == 0:
                continue
            expected = self.geometry.voracious_projection(w) == self.group.identity
            if self.builder.is_pivot(w) != expected:
                return self._result("pivots", {"w": self._name(w), "projection_is_identity": expected}, {})
        pivots = self.builder.pivots(cap) if cap >= 1 else None
        return self._result("pivots", None, {"pivots": len(pivots.pivots) if pivots else 0})

    def check_symmetry(self, radius: int) -> CheckResult:
        """图自同构把 𝒱(g) 双射到 𝒱(π(g))"""
        automorphisms = self.group.diagram_automorphisms()
        if not automorphisms:
            return CheckResult(name="symmetry", status="skipped", detail={"automorphisms": 0})
        for perm in automorphisms:
            for g in self._sorted_ball(radius):
                image = self.group.element_of_word(self.group.permute_word(self.group.shortlex_word(g), perm))
                mapped = {self.group.permute_word(word, perm) for word in self.language.all_words_of(g)}
                if mapped != set(self.language.all_words_of(image)):
                    witness = {"g": self._name(g), "permutation": [self.group.generators[s] for s in perm]}
                    return self._result("symmetry", witness, {"automorphisms": len(automorphisms)})
        return self._result("symmetry", None, {"automorphisms": len(automorphisms)})

    # ---- 关键引理 ----

    def _sharp_pairs(self, radius: int) -> List[Tuple[GroupElement, Wall, Wall]]:
        """(u, W_r, W_q): r = u s u⁻¹, q = u t u⁻¹, 3 ≤ m_st < ∞"""
        pairs = []
        for s, t in itertools.combinations(range(self.group.rank), 2):
            order = self.group.matrix.order(s, t)
            if order is None or order < 3:
                continue
            for u in self._sorted_ball(radius):
                pairs.append((u, self.geometry.wall_of(u.column(s)), self.geometry.wall_of(u.column(t))))
        return pairs

    def check_key_lemma(self, radius: int, samples: int = 100, seed: int = 0) -> CheckResult:
        """基本区域中被墙与 W_r 或 W_q 分开的 g, 对轨道中其他每面墙 W′ 也存在分离墙"""
        configurations = self._sharp_pairs(radius)
        elements = self._sorted_ball(radius)
        if not configurations or samples <= 0:
            return CheckResult(name="key_lemma", status="skipped", detail={"samples": 0})
        rng = random.Random(seed)
        found = 0
        attempts = 0
        limit = samples * 50
        while found < samples and attempts < limit:
            attempts += 1
            u, first, second = rng.choice(configurations)
            g = rng.choice(elements)
            same_first = self.geometry.on_far_side(first, g) == self.geometry.on_far_side(first, u)
            same_second = self.geometry.on_far_side(second, g) == self.geometry.on_far_side(second, u)
            if same_first != same_second:
                continue
            if self.geometry.find_separator(g, first) is None and self.geometry.find_separator(g, second) is None:
                continue
            found += 1
            for other in self.geometry.dihedral_orbit(first, second).ordered():
                if other in (first, second):
                    continue
                if self.geometry.find_separator(g, other) is None:
                    witness = {"u": self._name(u), "g": self._name(g), "wall": str(other)}
                    return self._result("key_lemma", witness, {"samples": found})
        if not found:
            return CheckResult(name="key_lemma", status="skipped", detail={"samples": 0, "attempts": attempts})
        return self._result("key_lemma", None, {"samples": found, "attempts": attempts})

    # ---- 套件 ----

    def run_suite(self, config: VerifyConfig) -> VerificationReport:
        radius = config.radius
        report = VerificationReport(group=self.group.matrix.describe(), radius=radius)
        if radius == 0:
            report.warnings.append("半径为 0, 球上的检查均为平凡通过")
        constants = self.estimate_constants(radius, config.margin)
        report.constants = constants
        report.checks.append(self.check_unique_max(radius, config.all_orders))
        report.checks.append(self.check_radius_monotonicity(radius, config.margin))
        bound, warning = self.check_projection_bound(radius, constants)
        report.checks.append(bound)
        if warning:
            report.warnings.append(warning)
        report.checks.append(self.check_voracity(radius))
        report.checks.append(self.check_monotonicity(radius))
        report.checks.append(self.check_language_coverage(radius))
        traveller, warnings = self.check_fellow_traveller(
            radius + config.traveller_margin, constants, config.pair_cap, config.seed, estimation_radius=radius,
        )
        report.checks.append(traveller)
        report.warnings.extend(warnings)
        agreement, warnings = self.check_automaton_agreement(config.word_length, config.pivot_cap)
        report.checks.append(agreement)
        report.warnings.extend(warnings)
        small_roots, warning = self.check_small_roots(radius)
        report.checks.append(small_roots)
        if warning:
            report.warnings.append(warning)
        report.checks.append(self.check_pivots(max(radius, 1)))
        report.checks.append(self.check_symmetry(radius))
        report.checks.append(self.check_key_lemma(radius, config.key_lemma_samples, config.seed))
        logger.info("验证完成: %s, %d 项检查, %s", report.group, len(report.checks), "通过" if report.passed else "失败")
        return report


