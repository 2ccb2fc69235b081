from fastapi import HTTPException
from typing import Optional


class CoxeterEngineException(HTTPException):
    """Coxeter 引擎基础异常"""
    def __init__(self, status_code: int, detail: str, headers: Optional[dict] = None):
        super().__init__(status_code=status_code, detail=detail, headers=headers)


class InvalidCoxeterMatrixError(CoxeterEngineException):
    """Coxeter 矩阵无效异常"""
    def __init__(self, reason: str):
        super().__init__(
            status_code=400,
            detail=f"无效的Coxeter矩阵: {reason}"
        )


class UnknownGeneratorError(CoxeterEngineException):
    """未知生成元异常"""
    def __init__(self, letter: str):
        super().__init__(
            status_code=400,
            detail=f"未知的生成元 '{letter}'"
        )


class InvalidCapError(CoxeterEngineException):
    """长度上限无效异常"""
    def __init__(self, cap: int):
        super().__init__(
            status_code=400,
            detail=f"长度上限必须为正整数, 收到 {cap}"
        )


class InvalidWallPairError(CoxeterEngineException):
    """墙对无效异常（两墙相同）"""
    def __init__(self, wall: str):
        super().__init__(
            status_code=400,
            detail=f"需要两面不同的墙, 收到相同的墙 {wall}"
        )


class UnknownFormatError(CoxeterEngineException):
    """未知输出格式异常"""
    def __init__(self, fmt: str):
        super().__init__(
            status_code=400,
            detail=f"未知的输出格式 '{fmt}', 可选 dot 或 json"
        )


class AutomatonFileError(CoxeterEngineException):
    """自动机文件无效异常"""
    def __init__(self, reason: str):
        super().__init__(
            status_code=400,
            detail=f"无法读取自动机文件: {reason}"
        )


class GroupNotFoundError(CoxeterEngineException):
    """群未找到异常"""
    def __init__(self, group_id: str):
        super().__init__(
            status_code=404,
            detail=f"群 '{group_id}' 不存在"
        )


class ResourceCapExceededError(CoxeterEngineException):
    """资源上限超出异常"""
    def __init__(self, what: str, limit: int):
        super().__init__(
            status_code=413,
            detail=f"{what} 超出上限 {limit}"
        )


class SmallRootOverflowError(CoxeterEngineException):
    """小根数量超出上限异常（真实集合有限, 视为硬失败）"""
    def __init__(self, limit: int):
        super().__init__(
            status_code=500,
            detail=f"小根递推超过 {limit} 个根仍未终止"
        )


class InconsistentRootError(CoxeterEngineException):
    """根的坐标符号不一致异常"""
    def __init__(self, coords: str):
        super().__init__(
            status_code=500,
            detail=f"根 {coords} 的坐标既有正又有负"
        )


class AutomatonConsistencyError(CoxeterEngineException):
    """自动机内部一致性异常"""
    def __init__(self, reason: str):
        super().__init__(
            status_code=500,
            detail=f"自动机构造不一致: {reason}"
        )


class DuplicateAliasError(CoxeterEngineException):
    """别名重复异常"""
    def __init__(self, alias: str):
        super().__init__(
            status_code=409,
            detail=f"别名 '{alias}' 已被其他群使用"
        )
