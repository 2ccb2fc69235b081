from pydantic import BaseModel, Field


class EngineSettings(BaseModel):
    """引擎资源上限配置"""
    ball_limit: int = Field(200000, ge=1, description="球枚举的元素个数上限")
    root_cap: int = Field(10000, ge=1, description="小根递推的根个数上限")
    pivot_cap: int = Field(8, ge=1, description="默认枢轴长度上限")
