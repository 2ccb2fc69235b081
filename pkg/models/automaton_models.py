from typing import List
from pydantic import BaseModel, ConfigDict, Field


class EdgeDocument(BaseModel):
    """自动机边的序列化模型"""
    model_config = ConfigDict(populate_by_name=True)

    source: int = Field(..., alias="from", description="起点状态下标")
    target: int = Field(..., alias="to", description="终点状态下标")
    pivot_word: str = Field(..., description="枢轴的 ShortLex 字")
    labels: List[str] = Field(..., description="标签 φ(e): 枢轴的全部约化字")


class AutomatonDocument(BaseModel):
    """自动机的 JSON 序列化模型"""
    generators: List[str] = Field(..., description="生成元")
    field_order: int = Field(..., description="数域参数 M")
    pivot_cap: int = Field(..., description="枢轴长度上限")
    saturated: bool = Field(False, description="是否存在长度等于上限的枢轴")
    universe: List[List[List[str]]] = Field(..., description="𝒰: 每面墙的正根坐标, 每个坐标为低次在前的有理系数")
    states: List[List[int]] = Field(..., description="可达状态, 每个状态为 universe 下标")
    start: int = Field(0, description="起始状态下标")
    edges: List[EdgeDocument] = Field(default_factory=list, description="边")
