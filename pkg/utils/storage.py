from datetime import datetime
from typing import Any, Dict, List, Optional


class GroupStorage:
    """群注册表 - 使用内存存储, 缓存每个群的计算引擎与已构造的自动机"""

    def __init__(self, max_automata: int = 8):
        self.max_automata = max_automata  # 每个群最多缓存的自动机个数
        self._storage: Dict[str, dict] = {}
        self._alias_index: Dict[str, str] = {}  # 别名到ID的映射

    def _resolve(self, group_id: str) -> str:
        return self._alias_index.get(group_id, group_id)

    async def create_group(self, group_data: dict) -> dict:
        """登记群; 同一ID重复登记时返回已有记录"""
        group_id = group_data["id"]
        if group_id not in self._storage:
            group_data.setdefault("created_at", datetime.utcnow().isoformat())
            group_data.setdefault("automata", {})
            self._storage[group_id] = group_data

        if group_data.get("alias"):
            self._alias_index[group_data["alias"]] = group_id

        return self._storage[group_id]

    async def get_group(self, group_id: str) -> Optional[dict]:
        """根据ID或别名获取群记录"""
        return self._storage.get(self._resolve(group_id))

    async def delete_group(self, group_id: str) -> bool:
        """删除群及其别名"""
        actual_id = self._resolve(group_id)
        if actual_id not in self._storage:
            return False

        for alias in [alias for alias, target in self._alias_index.items() if target == actual_id]:
            del self._alias_index[alias]

        del self._storage[actual_id]
        return True

    async def get_all_groups(self) -> List[dict]:
        return [self._storage[key] for key in sorted(self._storage)]

    async def alias_exists(self, alias: str) -> bool:
        return alias in self._alias_index

    async def get_automaton(self, group_id: str, cap: int) -> Optional[Any]:
        record = await self.get_group(group_id)
        if record is None:
            return None
        automata = record["automata"]
        automaton = automata.pop(cap, None)
        if automaton is not None:
            automata[cap] = automaton
        return automaton

    async def save_automaton(self, group_id: str, cap: int, automaton: Any) -> None:
        record = await self.get_group(group_id)
        if record is not None:
            automata = record["automata"]
            automata.pop(cap, None)
            automata[cap] = automaton
            while len(automata) > self.max_automata:
                del automata[next(iter(automata))]


# 全局存储实例
group_storage = GroupStorage()
