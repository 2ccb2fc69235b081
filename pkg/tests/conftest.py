import pytest
from pathlib import Path
from fastapi.testclient import TestClient

from main import app
from models.group_models import CoxeterMatrix, parse_group_config
from services.group_service import CoxeterEngine, GroupService, build_engine
from utils.storage import GroupStorage


GROUPS_DIR = Path(__file__).resolve().parent.parent / "groups"


def load_matrix(name: str) -> CoxeterMatrix:
    """读取 groups/ 下的群配置"""
    return parse_group_config((GROUPS_DIR / f"{name}.json").read_text(encoding="utf-8"))


def group_path(name: str) -> str:
    return str(GROUPS_DIR / f"{name}.json")


@pytest.fixture
def client():
    """创建测试客户端"""
    return TestClient(app)


@pytest.fixture
def group_storage():
    """创建新的存储实例用于测试"""
    return GroupStorage()


@pytest.fixture
def group_service(group_storage):
    """创建群计算服务实例用于测试"""
    service = GroupService()
    service.storage = group_storage
    return service


@pytest.fixture
def a2_config():
    """A₂ 配置数据"""
    return {"generators": ["s", "t"], "m": [[1, 3], [3, 1]]}


@pytest.fixture
def d_inf_config():
    """D∞ 配置数据"""
    return {"generators": ["s", "t"], "m": [[1, 0], [0, 1]]}


# 计算引擎带缓存, 整个测试会话共享


@pytest.fixture(scope="session")
def z2() -> CoxeterEngine:
    return build_engine(load_matrix("z2"))


@pytest.fixture(scope="session")
def a2() -> CoxeterEngine:
    return build_engine(load_matrix("a2"))


@pytest.fixture(scope="session")
def b2() -> CoxeterEngine:
    return build_engine(load_matrix("b2"))


@pytest.fixture(scope="session")
def i2_5() -> CoxeterEngine:
    return build_engine(load_matrix("i2_5"))


@pytest.fixture(scope="session")
def a3() -> CoxeterEngine:
    return build_engine(load_matrix("a3"))


@pytest.fixture(scope="session")
def d_inf() -> CoxeterEngine:
    return build_engine(load_matrix("d_inf"))


@pytest.fixture(scope="session")
def tri_333() -> CoxeterEngine:
    return build_engine(load_matrix("tri_333"))


@pytest.fixture(scope="session")
def tri_334() -> CoxeterEngine:
    return build_engine(load_matrix("tri_334"))
