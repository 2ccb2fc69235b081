import logging
from dataclasses import dataclass
from datetime import datetime
from typing import List, Optional

from fastapi.concurrency import run_in_threadpool

from models.config_models import EngineSettings
from models.group_models import (
    AcceptRequest,
    AcceptResponse,
    AutomatonRequest,
    AutomatonResponse,
    CoxeterMatrix,
    GroupCreate,
    GroupInfo,
    MembershipResponse,
    ProjectionResponse,
    ReduceResponse,
    SmallRootsResponse,
    WallModel,
    WallsResponse,
    parse_group_config,
)
from models.report_models import VerificationReport, VerifyConfig
from services.automaton_service import AutomatonBuilder, VoraciousAutomaton, run_states
from services.coxeter_group import CoxeterGroup
from services.verifier_service import VerifierService
from services.voracious_service import VoraciousLanguage
from services.wall_service import Wall, WallGeometry
from utils.storage import group_storage
from utils.word_utils import display_word, format_word, group_id_for, parse_word
from exceptions.coxeter_exceptions import DuplicateAliasError, GroupNotFoundError, InvalidCoxeterMatrixError


logger = logging.getLogger(__name__)


@dataclass
class CoxeterEngine:
    """一个群的全部计算组件"""
    group: CoxeterGroup
    geometry: WallGeometry
    language: VoraciousLanguage
    builder: AutomatonBuilder
    verifier: VerifierService


def build_engine(matrix: CoxeterMatrix, settings: Optional[EngineSettings] = None) -> CoxeterEngine:
    group = CoxeterGroup(matrix, settings)
    geometry = WallGeometry(group)
    language = VoraciousLanguage(geometry)
    builder = AutomatonBuilder(language, settings)
    return CoxeterEngine(group, geometry, language, builder, VerifierService(builder))


def wall_model(wall: Wall) -> WallModel:
    return WallModel(coords=wall.root.coordinate_strings())


class GroupService:
    """Coxeter 群计算服务层"""

    def __init__(self, settings: Optional[EngineSettings] = None):
        self.settings = settings or EngineSettings()
        self.storage = group_storage

    # ---- 注册表 ----

    async def create_group(self, group_data: GroupCreate) -> GroupInfo:
        """登记群; ID 由配置内容决定"""
        matrix = group_data.config
        group_id = group_id_for(matrix.generators, matrix.m)

        if group_data.alias:
            if await self.storage.alias_exists(group_data.alias):
                existing = await self.storage.get_group(group_data.alias)
                if existing["id"] != group_id:
                    raise DuplicateAliasError(group_data.alias)

        record = await self.storage.get_group(group_id)
        if record is None:
            record = await self.storage.create_group({
                "id": group_id,
                "config": matrix,
                "alias": group_data.alias,
                "engine": build_engine(matrix, self.settings),
                "created_at": datetime.utcnow().isoformat(),
            })
            logger.info("登记群 %s: %s", group_id, matrix.describe())
        elif group_data.alias:
            await self.storage.create_group({"id": group_id, "alias": group_data.alias})

        return self._info(record)

    async def create_group_from_text(self, text: str, alias: Optional[str] = None) -> GroupInfo:
        """由上传的 JSON 文档登记群"""
        matrix = parse_group_config(text)
        try:
            request = GroupCreate(config=matrix, alias=alias)
        except ValueError as exc:
            raise InvalidCoxeterMatrixError(str(exc))
        return await self.create_group(request)

    async def get_group_info(self, group_id: str) -> GroupInfo:
        return self._info(await self._record(group_id))

    async def get_all_groups(self) -> List[GroupInfo]:
        return [self._info(record) for record in await self.storage.get_all_groups()]

    async def delete_group(self, group_id: str) -> bool:
        await self._record(group_id)
        return await self.storage.delete_group(group_id)

    async def get_engine(self, group_id: str) -> CoxeterEngine:
        return (await self._record(group_id))["engine"]

    async def _record(self, group_id: str) -> dict:
        record = await self.storage.get_group(group_id)
        if not record:
            raise GroupNotFoundError(group_id)
        return record

    def _info(self, record: dict) -> GroupInfo:
        matrix: CoxeterMatrix = record["config"]
        field = record["engine"].group.field
        return GroupInfo(
            id=record["id"],
            generators=matrix.generators,
            m=matrix.m,
            rank=matrix.rank,
            field_order=field.order,
            field_degree=field.degree,
            minimal_polynomial=str(field.minimal_polynomial.as_expr()),
            created_at=datetime.fromisoformat(record["created_at"]),
        )

    # ---- 单词运算 ----

    async def reduce(self, group_id: str, word: str) -> ReduceResponse:
        """ShortLex 约化字与字长"""
        engine = await self.get_engine(group_id)
        group = engine.group
        g = group.element_of_word(parse_word(word, group.generators))
        return ReduceResponse(
            word=word,
            reduced_word=format_word(group.shortlex_word(g), group.generators),
            length=g.length,
        )

    async def project(self, group_id: str, word: str) -> ProjectionResponse:
        """投影链 g → p(g) → … → id 及各块"""
        engine = await self.get_engine(group_id)
        group = engine.group
        g = group.element_of_word(parse_word(word, group.generators))
        chain = engine.language.factorization_chain(g)
        names = [display_word(group.shortlex_word(x), group.generators) for x in chain.elements]
        blocks = [format_word(group.shortlex_word(w), group.generators) for w in chain.blocks]
        return ProjectionResponse(
            word=word,
            chain=names,
            blocks=blocks,
            rendering=" → ".join(names),
            canonical_word=format_word(engine.language.canonical_word(g), group.generators),
        )

    async def walls(self, group_id: str, word: str) -> WallsResponse:
        """Inv(g) 与 𝒲(g)"""
        engine = await self.get_engine(group_id)
        g = engine.group.element_of_word(parse_word(word, engine.group.generators))
        return WallsResponse(
            word=word,
            inversions=[wall_model(wall) for wall in engine.geometry.inversion_walls(g).ordered()],
            frontier=[wall_model(wall) for wall in engine.geometry.frontier_set(g).ordered()],
        )

    async def member(self, group_id: str, word: str) -> MembershipResponse:
        engine = await self.get_engine(group_id)
        letters = parse_word(word, engine.group.generators)
        return MembershipResponse(word=word, member=engine.language.membership(letters))

    async def small_roots(self, group_id: str) -> SmallRootsResponse:
        engine = await self.get_engine(group_id)
        roots = engine.builder.small_roots()
        return SmallRootsResponse(count=len(roots), walls=[wall_model(wall) for wall in roots.ordered()])

    # ---- 自动机 ----

    async def get_automaton(self, group_id: str, cap: int) -> VoraciousAutomaton:
        """按枢轴长度上限缓存已构造的自动机"""
        automaton = await self.storage.get_automaton(group_id, cap)
        if automaton is None:
            engine = await self.get_engine(group_id)
            automaton = engine.builder.build_automaton(cap)
            await self.storage.save_automaton(group_id, cap, automaton)
        return automaton

    async def automaton(self, group_id: str, request: AutomatonRequest) -> AutomatonResponse:
        engine = await self.get_engine(group_id)
        automaton = await self.get_automaton(group_id, request.cap)
        return AutomatonResponse(
            format=request.format,
            content=engine.builder.serialize(automaton, request.format),
            state_count=len(automaton.states),
            edge_count=len(automaton.edges),
            saturated=automaton.saturated,
        )

    async def load_automaton(self, group_id: str, text: str) -> VoraciousAutomaton:
        engine = await self.get_engine(group_id)
        return engine.builder.load(text)

    async def accept(self, group_id: str, request: AcceptRequest,
                     automaton: Optional[VoraciousAutomaton] = None) -> AcceptResponse:
        """用自动机判定单词; 未给出自动机时按上限构造"""
        engine = await self.get_engine(group_id)
        if automaton is None:
            automaton = await self.get_automaton(group_id, request.cap)
        letters = parse_word(request.word, engine.group.generators)
        reached = sorted(run_states(automaton, letters), key=lambda state: (len(state), state.ordered()))
        return AcceptResponse(
            word=request.word,
            accepted=bool(reached),
            states=[[wall_model(wall) for wall in state.ordered()] for state in reached],
        )

    # ---- 验证 ----

    async def verify(self, group_id: str, config: VerifyConfig) -> VerificationReport:
        engine = await self.get_engine(group_id)
        return await run_in_threadpool(engine.verifier.run_suite, config)
