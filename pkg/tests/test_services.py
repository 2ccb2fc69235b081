import json
import pytest

from models.group_models import AcceptRequest, AutomatonRequest, CoxeterMatrix, GroupCreate
from models.report_models import VerifyConfig
from exceptions.coxeter_exceptions import (
    DuplicateAliasError,
    GroupNotFoundError,
    InvalidCoxeterMatrixError,
    UnknownGeneratorError,
)


async def register(service, config, alias=None):
    return await service.create_group(GroupCreate(config=CoxeterMatrix(**config), alias=alias))


class TestGroupRegistry:
    """群注册表服务测试"""

    @pytest.mark.asyncio
    async def test_create_group(self, group_service, a2_config):
        """测试登记 A₂"""
        info = await register(group_service, a2_config)

        assert len(info.id) == 8
        assert info.generators == ["s", "t"]
        assert info.rank == 2
        assert info.field_order == 3
        assert info.field_degree == 1

    @pytest.mark.asyncio
    async def test_field_of_infinite_dihedral(self, group_service, d_inf_config):
        """测试没有有限 m_st 时 M = 1"""
        info = await register(group_service, d_inf_config)
        assert info.field_order == 1
        assert info.field_degree == 1

    @pytest.mark.asyncio
    async def test_same_config_same_id(self, group_service, a2_config):
        """测试同一配置重复登记返回同一ID"""
        first = await register(group_service, a2_config)
        second = await register(group_service, a2_config)
        assert first.id == second.id
        assert len(await group_service.get_all_groups()) == 1

    @pytest.mark.asyncio
    async def test_alias(self, group_service, a2_config):
        """测试通过别名访问"""
        info = await register(group_service, a2_config, alias="weyl-a2")
        by_alias = await group_service.get_group_info("weyl-a2")
        assert by_alias.id == info.id

    @pytest.mark.asyncio
    async def test_duplicate_alias(self, group_service, a2_config, d_inf_config):
        """测试别名已被其他群使用"""
        await register(group_service, a2_config, alias="taken")
        await register(group_service, a2_config, alias="taken")

        with pytest.raises(DuplicateAliasError) as exc_info:
            await register(group_service, d_inf_config, alias="taken")
        assert exc_info.value.status_code == 409

    @pytest.mark.asyncio
    async def test_group_not_found(self, group_service):
        """测试群不存在"""
        with pytest.raises(GroupNotFoundError) as exc_info:
            await group_service.get_group_info("missing")
        assert exc_info.value.status_code == 404

    @pytest.mark.asyncio
    async def test_delete_group(self, group_service, a2_config):
        """测试删除群"""
        info = await register(group_service, a2_config, alias="doomed")

        assert await group_service.delete_group("doomed") is True
        with pytest.raises(GroupNotFoundError):
            await group_service.get_group_info(info.id)
        with pytest.raises(GroupNotFoundError):
            await group_service.delete_group(info.id)

    @pytest.mark.asyncio
    async def test_create_from_text(self, group_service, d_inf_config):
        """测试由 JSON 文本登记"""
        info = await group_service.create_group_from_text(json.dumps(d_inf_config), alias="dinf")
        assert info.m == [[1, 0], [0, 1]]

    @pytest.mark.asyncio
    async def test_create_from_bad_text(self, group_service):
        """测试无效的配置文本"""
        with pytest.raises(InvalidCoxeterMatrixError):
            await group_service.create_group_from_text('{"generators": ["s"], "m": [[2]]}')
        with pytest.raises(InvalidCoxeterMatrixError):
            await group_service.create_group_from_text("not json")

    @pytest.mark.asyncio
    async def test_create_from_text_short_alias(self, group_service, a2_config):
        """测试别名过短"""
        with pytest.raises(InvalidCoxeterMatrixError):
            await group_service.create_group_from_text(json.dumps(a2_config), alias="ab")


class TestWordOperations:
    """单词运算服务测试"""

    @pytest.mark.asyncio
    async def test_reduce(self, group_service, a2_config):
        """测试 A₂ 中 stss → st"""
        info = await register(group_service, a2_config)
        result = await group_service.reduce(info.id, "stss")
        assert result.reduced_word == "st"
        assert result.length == 2

    @pytest.mark.asyncio
    async def test_reduce_identity(self, group_service, a2_config):
        """测试空单词"""
        info = await register(group_service, a2_config)
        result = await group_service.reduce(info.id, "")
        assert result.length == 0

    @pytest.mark.asyncio
    async def test_unknown_generator(self, group_service, a2_config):
        """测试未知生成元"""
        info = await register(group_service, a2_config)
        with pytest.raises(UnknownGeneratorError) as exc_info:
            await group_service.reduce(info.id, "sx")
        assert exc_info.value.status_code == 400

    @pytest.mark.asyncio
    async def test_project_infinite_dihedral(self, group_service, d_inf_config):
        """测试 D∞ 的投影链"""
        info = await register(group_service, d_inf_config)
        result = await group_service.project(info.id, "sts")
        assert result.rendering == "sts → st → s → id"
        assert result.chain == ["sts", "st", "s", "id"]
        assert result.blocks == ["s", "t", "s"]
        assert result.canonical_word == "sts"

    @pytest.mark.asyncio
    async def test_project_finite(self, group_service, a2_config):
        """测试 A₂ 中 sts 一步投影到 id"""
        info = await register(group_service, a2_config)
        result = await group_service.project(info.id, "tst")
        assert result.rendering == "sts → id"
        assert len(result.blocks) == 1

    @pytest.mark.asyncio
    async def test_walls(self, group_service, d_inf_config, a2_config):
        """测试 Inv(g) 与 𝒲(g)"""
        d_inf = await register(group_service, d_inf_config)
        result = await group_service.walls(d_inf.id, "sts")
        assert len(result.inversions) == 3
        assert len(result.frontier) == 1

        a2 = await register(group_service, a2_config)
        result = await group_service.walls(a2.id, "sts")
        assert len(result.frontier) == 3

    @pytest.mark.asyncio
    async def test_member(self, group_service, d_inf_config):
        """测试语言成员判定"""
        info = await register(group_service, d_inf_config)
        assert (await group_service.member(info.id, "stst")).member is True
        assert (await group_service.member(info.id, "ss")).member is False

    @pytest.mark.asyncio
    async def test_small_roots(self, group_service, a2_config):
        """测试 A₂ 的小根"""
        info = await register(group_service, a2_config)
        result = await group_service.small_roots(info.id)
        assert result.count == 3
        assert len(result.walls) == 3


class TestAutomatonService:
    """自动机服务测试"""

    @pytest.mark.asyncio
    async def test_build_json(self, group_service, d_inf_config):
        """测试构造 D∞ 自动机"""
        info = await register(group_service, d_inf_config)
        result = await group_service.automaton(info.id, AutomatonRequest(cap=4))
        assert result.format == "json"
        assert result.state_count == 3
        assert result.edge_count == 4
        assert result.saturated is False
        assert json.loads(result.content)["generators"] == ["s", "t"]

    @pytest.mark.asyncio
    async def test_automaton_cached(self, group_service, d_inf_config):
        """测试同一上限的自动机只构造一次"""
        info = await register(group_service, d_inf_config)
        first = await group_service.get_automaton(info.id, 4)
        second = await group_service.get_automaton(info.id, 4)
        assert first is second

    @pytest.mark.asyncio
    async def test_build_dot(self, group_service, a2_config):
        """测试 DOT 输出"""
        info = await register(group_service, a2_config)
        result = await group_service.automaton(info.id, AutomatonRequest(cap=3, format="dot"))
        assert result.content.startswith("digraph")
        assert result.saturated is True

    @pytest.mark.asyncio
    async def test_accept(self, group_service, d_inf_config):
        """测试自动机接受判定"""
        info = await register(group_service, d_inf_config)
        accepted = await group_service.accept(info.id, AcceptRequest(word="stst", cap=4))
        assert accepted.accepted is True
        assert len(accepted.states) == 1
        assert len(accepted.states[0]) == 1

        rejected = await group_service.accept(info.id, AcceptRequest(word="ss", cap=4))
        assert rejected.accepted is False
        assert rejected.states == []

    @pytest.mark.asyncio
    async def test_accept_with_loaded_automaton(self, group_service, d_inf_config):
        """测试使用从 JSON 读入的自动机"""
        info = await register(group_service, d_inf_config)
        content = (await group_service.automaton(info.id, AutomatonRequest(cap=4))).content
        automaton = await group_service.load_automaton(info.id, content)

        result = await group_service.accept(info.id, AcceptRequest(word="tst"), automaton=automaton)
        assert result.accepted is True


class TestVerifyService:
    """验证服务测试"""

    @pytest.mark.asyncio
    async def test_verify(self, group_service, d_inf_config):
        """测试 D∞ 的小半径验证"""
        info = await register(group_service, d_inf_config)
        report = await group_service.verify(info.id, VerifyConfig(radius=3, word_length=4))
        assert report.passed
        assert report.radius == 3
        assert report.constants.C_hat == 1

    @pytest.mark.asyncio
    async def test_verify_runs_in_threadpool(self, group_service, d_inf_config, monkeypatch):
        """测试验证套件交给线程池执行, 不在事件循环中运行"""
        import services.group_service as module
        calls = []
        original = module.run_in_threadpool

        async def recording(func, *args, **kwargs):
            calls.append(func)
            return await original(func, *args, **kwargs)

        monkeypatch.setattr(module, "run_in_threadpool", recording)
        info = await register(group_service, d_inf_config)
        report = await group_service.verify(info.id, VerifyConfig(radius=2, word_length=3))
        assert report.passed
        assert len(calls) == 1
        assert calls[0].__name__ == "run_suite"
