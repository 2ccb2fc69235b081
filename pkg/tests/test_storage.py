import pytest

from utils.storage import GroupStorage


def record(group_id, alias=None):
    return {"id": group_id, "config": None, "alias": alias, "engine": None}


class TestGroupStorage:
    """群注册表存储测试"""

    @pytest.mark.asyncio
    async def test_create_group(self, group_storage):
        """测试登记群"""
        result = await group_storage.create_group(record("abc12345"))

        assert result["id"] == "abc12345"
        assert "created_at" in result
        assert result["automata"] == {}

    @pytest.mark.asyncio
    async def test_create_existing_returns_record(self, group_storage):
        """测试重复登记返回已有记录"""
        first = await group_storage.create_group(record("abc12345"))
        second = await group_storage.create_group({"id": "abc12345", "alias": None})
        assert second is first

    @pytest.mark.asyncio
    async def test_get_group_by_alias(self, group_storage):
        """测试通过别名获取"""
        await group_storage.create_group(record("abc12345", alias="my-group"))

        assert (await group_storage.get_group("my-group"))["id"] == "abc12345"
        assert (await group_storage.get_group("abc12345"))["id"] == "abc12345"
        assert await group_storage.alias_exists("my-group")
        assert not await group_storage.alias_exists("other")

    @pytest.mark.asyncio
    async def test_alias_added_later(self, group_storage):
        """测试为已有记录追加别名"""
        await group_storage.create_group(record("abc12345"))
        await group_storage.create_group({"id": "abc12345", "alias": "later"})
        assert (await group_storage.get_group("later"))["id"] == "abc12345"

    @pytest.mark.asyncio
    async def test_get_nonexistent(self, group_storage):
        """测试获取不存在的群"""
        assert await group_storage.get_group("nonexistent") is None

    @pytest.mark.asyncio
    async def test_delete_group(self, group_storage):
        """测试删除群及其别名"""
        await group_storage.create_group(record("abc12345", alias="gone"))

        assert await group_storage.delete_group("gone") is True
        assert await group_storage.get_group("abc12345") is None
        assert not await group_storage.alias_exists("gone")
        assert await group_storage.delete_group("abc12345") is False

    @pytest.mark.asyncio
    async def test_get_all_groups_sorted(self, group_storage):
        """测试按ID排序列出"""
        for group_id in ("ccc", "aaa", "bbb"):
            await group_storage.create_group(record(group_id))

        groups = await group_storage.get_all_groups()
        assert [group["id"] for group in groups] == ["aaa", "bbb", "ccc"]

    @pytest.mark.asyncio
    async def test_automaton_cache(self, group_storage):
        """测试自动机缓存"""
        await group_storage.create_group(record("abc12345", alias="cached"))
        marker = object()

        assert await group_storage.get_automaton("abc12345", 4) is None
        await group_storage.save_automaton("cached", 4, marker)
        assert await group_storage.get_automaton("abc12345", 4) is marker
        assert await group_storage.get_automaton("abc12345", 5) is None
        assert await group_storage.get_automaton("missing", 4) is None

    @pytest.mark.asyncio
    async def test_automaton_cache_bounded(self):
        """测试每个群的自动机缓存有上限, 淘汰最久未使用的"""
        storage = GroupStorage(max_automata=2)
        await storage.create_group(record("abc12345"))
        first, second, third = object(), object(), object()

        await storage.save_automaton("abc12345", 1, first)
        await storage.save_automaton("abc12345", 2, second)
        assert await storage.get_automaton("abc12345", 1) is first
        await storage.save_automaton("abc12345", 3, third)

        assert await storage.get_automaton("abc12345", 2) is None
        assert await storage.get_automaton("abc12345", 1) is first
        assert await storage.get_automaton("abc12345", 3) is third
        assert len((await storage.get_group("abc12345"))["automata"]) == 2
