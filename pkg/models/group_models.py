from datetime import datetime
from typing import List, Optional, Literal
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from exceptions.coxeter_exceptions import InvalidCoxeterMatrixError


# 配置文件中 0 表示 m_st = ∞
INFINITY = 0


class CoxeterMatrix(BaseModel):
    """Coxeter 矩阵配置模型"""
    model_config = ConfigDict(frozen=True)

    generators: List[str] = Field(..., min_length=1, description="生成元名称, 按声明顺序")
    m: List[List[int]] = Field(..., description="Coxeter 矩阵, 0 表示 ∞")

    @field_validator("generators")
    @classmethod
    def check_generators(cls, names: List[str]) -> List[str]:
        for name in names:
            if not name or name != name.strip() or "," in name or any(ch.isspace() for ch in name):
                raise ValueError(f"生成元名称无效: '{name}'")
        if len(set(names)) != len(names):
            raise ValueError("生成元名称重复")
        return names

    @model_validator(mode="after")
    def check_matrix(self) -> "CoxeterMatrix":
        k = len(self.generators)
        if len(self.m) != k or any(len(row) != k for row in self.m):
            raise ValueError(f"矩阵形状必须为 {k}x{k}")
        for i in range(k):
            if self.m[i][i] != 1:
                raise ValueError(f"对角元 m[{i}][{i}] 必须为 1")
            for j in range(k):
                if i == j:
                    continue
                if self.m[i][j] != self.m[j][i]:
                    raise ValueError(f"矩阵不对称: m[{i}][{j}]={self.m[i][j]}, m[{j}][{i}]={self.m[j][i]}")
                if self.m[i][j] != INFINITY and self.m[i][j] < 2:
                    raise ValueError(f"非对角元 m[{i}][{j}]={self.m[i][j]} 必须 >= 2 或为 0(∞)")
        return self

    @property
    def rank(self) -> int:
        return len(self.generators)

    def order(self, i: int, j: int) -> Optional[int]:
        """返回 m_ij, ∞ 时返回 None"""
        value = self.m[i][j]
        return None if value == INFINITY else value

    def finite_orders(self) -> List[int]:
        """所有有限的非对角元"""
        k = self.rank
        return [self.m[i][j] for i in range(k) for j in range(i + 1, k) if self.m[i][j] != INFINITY]

    def describe(self) -> str:
        rows = "; ".join(" ".join("∞" if v == INFINITY else str(v) for v in row) for row in self.m)
        return f"W({','.join(self.generators)} | {rows})"


def parse_group_config(text: str) -> CoxeterMatrix:
    """解析群配置文档（JSON）"""
    try:
        return CoxeterMatrix.model_validate_json(text)
    except ValidationError as exc:
        reason = "; ".join(str(err.get("msg", "")) for err in exc.errors())
        raise InvalidCoxeterMatrixError(reason)


class GroupCreate(BaseModel):
    """注册群的请求模型"""
    config: CoxeterMatrix = Field(..., description="Coxeter 矩阵配置")
    alias: Optional[str] = Field(None, min_length=3, max_length=20, description="自定义别名")


class GroupInfo(BaseModel):
    """群信息响应模型"""
    id: str = Field(..., description="群ID")
    generators: List[str] = Field(..., description="生成元")
    m: List[List[int]] = Field(..., description="Coxeter 矩阵")
    rank: int = Field(..., description="秩")
    field_order: int = Field(..., description="M = 有限 m_st 的最小公倍数")
    field_degree: int = Field(..., description="数域 Q(cos(π/M)) 的次数")
    minimal_polynomial: str = Field(..., description="cos(π/M) 的极小多项式")
    created_at: datetime = Field(..., description="注册时间")


class WordRequest(BaseModel):
    """单词请求模型"""
    word: str = Field("", description="生成元单词, 单字符名称可直接拼接, 否则用逗号分隔")


class ReduceResponse(BaseModel):
    """约化结果模型"""
    word: str = Field(..., description="输入单词")
    reduced_word: str = Field(..., description="ShortLex 约化字")
    length: int = Field(..., description="字长 ℓ(g)")


class ProjectionResponse(BaseModel):
    """贪婪投影链模型"""
    word: str = Field(..., description="输入单词")
    chain: List[str] = Field(..., description="g, p(g), p²(g), …, id 的约化字")
    blocks: List[str] = Field(..., description="块 w_i = g_{i+1}⁻¹ g_i 的约化字")
    rendering: str = Field(..., description="链的文本渲染")
    canonical_word: str = Field(..., description="语言中的规范代表字")


class WallModel(BaseModel):
    """墙（正根坐标）模型"""
    coords: List[str] = Field(..., description="正根在单根基下的坐标")


class WallsResponse(BaseModel):
    """边界墙集合 𝒲(g) 模型"""
    word: str = Field(..., description="输入单词")
    inversions: List[WallModel] = Field(..., description="逆序墙 Inv(g)")
    frontier: List[WallModel] = Field(..., description="边界墙 𝒲(g)")


class MembershipResponse(BaseModel):
    """语言成员判定模型"""
    word: str = Field(..., description="输入单词")
    member: bool = Field(..., description="是否属于语言")


class SmallRootsResponse(BaseModel):
    """小根集合模型"""
    count: int = Field(..., description="|𝒰|")
    walls: List[WallModel] = Field(..., description="𝒰 中的墙")


class AutomatonRequest(BaseModel):
    """自动机构造请求模型"""
    cap: int = Field(8, ge=1, description="枢轴长度上限")
    format: Literal["dot", "json"] = Field("json", description="输出格式")


class AutomatonResponse(BaseModel):
    """自动机构造结果模型"""
    format: str = Field(..., description="输出格式")
    content: str = Field(..., description="序列化内容")
    state_count: int = Field(..., description="可达状态数")
    edge_count: int = Field(..., description="边数")
    saturated: bool = Field(..., description="是否存在长度等于上限的枢轴（完备性警告）")


class AcceptRequest(BaseModel):
    """自动机接受判定请求模型"""
    word: str = Field("", description="输入单词")
    cap: int = Field(8, ge=1, description="枢轴长度上限")


class AcceptResponse(BaseModel):
    """自动机接受判定结果模型"""
    word: str = Field(..., description="输入单词")
    accepted: bool = Field(..., description="是否接受")
    states: List[List[WallModel]] = Field(..., description="读完单词后可达的状态")
