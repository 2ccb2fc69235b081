from typing import Any, Dict, List, Literal, Optional
from pydantic import BaseModel, Field, computed_field


class VerifyConfig(BaseModel):
    """验证套件配置"""
    radius: int = Field(4, ge=0, description="球半径")
    margin: int = Field(2, ge=0, description="边界裕量, 到墙距离只对 ℓ(g) ≤ radius - margin 的元素统计")
    word_length: int = Field(6, ge=0, description="自动机一致性检查的单词长度上限")
    pivot_cap: int = Field(8, ge=1, description="枢轴长度上限")
    key_lemma_samples: int = Field(100, ge=0, description="关键引理抽样个数")
    seed: int = Field(0, description="随机种子")
    pair_cap: int = Field(20000, ge=1, description="同伴旅行检查中每个 (g, s) 的单词对个数上限, 超出时抽样")
    traveller_margin: int = Field(1, ge=0, description="同伴旅行检查在 radius + traveller_margin 的球上进行, 常数仍在 radius 上估计")
    all_orders: bool = Field(True, description="是否在全部生成元顺序下比较贪婪投影")


class CheckResult(BaseModel):
    """单项检查结果"""
    name: str = Field(..., description="检查名称")
    status: Literal["pass", "fail", "skipped"] = Field(..., description="检查状态")
    witness: Optional[Dict[str, Any]] = Field(None, description="反例数据（失败时必有）")
    detail: Dict[str, Any] = Field(default_factory=dict, description="统计信息")


class Constants(BaseModel):
    """在球上估计的常数"""
    C_hat: int = Field(0, description="max ℓ(p(g)⁻¹g)")
    Q_hat: int = Field(0, description="没有分离墙时 g 到墙的最大距离（相邻元素距离）")
    Q_hat_walls: int = Field(0, description="同上, 以规范相邻元素间的墙数计")
    N_hat: int = Field(0, description="max |𝒲(g)|")
    C0_hat: int = Field(0, description="单面墙的投影距离上界估计")
    ii_max: Optional[int] = Field(None, description="条件 (ii) 的观测最大值")
    iii_max: Optional[int] = Field(None, description="条件 (iii) 的观测最大值")


class VerificationReport(BaseModel):
    """验证报告"""
    group: str = Field(..., description="群描述")
    radius: int = Field(..., description="球半径")
    constants: Constants = Field(default_factory=Constants, description="估计常数")
    checks: List[CheckResult] = Field(default_factory=list, description="各项检查")
    warnings: List[str] = Field(default_factory=list, description="警告")

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(check for check in self.checks if check.name == name)
