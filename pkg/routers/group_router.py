from typing import List, Optional
from fastapi import APIRouter, Depends, File, Form, UploadFile

from models.group_models import (
    AcceptRequest,
    AcceptResponse,
    AutomatonRequest,
    AutomatonResponse,
    GroupCreate,
    GroupInfo,
    MembershipResponse,
    ProjectionResponse,
    ReduceResponse,
    SmallRootsResponse,
    WallsResponse,
    WordRequest,
)
from models.report_models import VerificationReport, VerifyConfig
from services.group_service import GroupService


router = APIRouter()


def get_group_service() -> GroupService:
    """依赖注入：获取群计算服务实例"""
    return GroupService()


@router.post("/api/groups", response_model=GroupInfo, summary="登记Coxeter群")
async def create_group(
    group_data: GroupCreate,
    service: GroupService = Depends(get_group_service)
):
    """
    登记一个 Coxeter 群

    - **config**: 生成元与 Coxeter 矩阵（0 表示 ∞）
    - **alias**: 可选的自定义别名
    """
    return await service.create_group(group_data)


@router.post("/api/groups/upload", response_model=GroupInfo, summary="上传群配置文件")
async def upload_group(
    file: UploadFile = File(...),
    alias: Optional[str] = Form(None),
    service: GroupService = Depends(get_group_service)
):
    """
    上传 JSON 格式的群配置文件并登记
    """
    content = await file.read()
    return await service.create_group_from_text(content.decode("utf-8"), alias)


@router.get("/api/groups", response_model=List[GroupInfo], summary="获取所有群")
async def get_all_groups(
    service: GroupService = Depends(get_group_service)
):
    """
    按ID排序列出全部已登记的群
    """
    return await service.get_all_groups()


@router.get("/api/groups/{group_id}", response_model=GroupInfo, summary="获取群信息")
async def get_group(
    group_id: str,
    service: GroupService = Depends(get_group_service)
):
    """
    - **group_id**: 群ID或别名
    """
    return await service.get_group_info(group_id)


@router.delete("/api/groups/{group_id}", summary="删除群")
async def delete_group(
    group_id: str,
    service: GroupService = Depends(get_group_service)
):
    """
    删除群及其别名与缓存的自动机

    - **group_id**: 群ID或别名
    """
    success = await service.delete_group(group_id)
    return {"message": "群删除成功" if success else "删除失败"}


@router.post("/api/groups/{group_id}/reduce", response_model=ReduceResponse, summary="约化单词")
async def reduce_word(
    group_id: str,
    request: WordRequest,
    service: GroupService = Depends(get_group_service)
):
    """
    返回单词所代表元素的 ShortLex 约化字与字长
    """
    return await service.reduce(group_id, request.word)


@router.post("/api/groups/{group_id}/project", response_model=ProjectionResponse, summary="贪婪投影链")
async def project_word(
    group_id: str,
    request: WordRequest,
    service: GroupService = Depends(get_group_service)
):
    """
    返回 g, p(g), p²(g), …, id 以及各块
    """
    return await service.project(group_id, request.word)


@router.post("/api/groups/{group_id}/walls", response_model=WallsResponse, summary="边界墙集合")
async def frontier_walls(
    group_id: str,
    request: WordRequest,
    service: GroupService = Depends(get_group_service)
):
    """
    返回逆序墙 Inv(g) 与边界墙集合 𝒲(g)

    - **word**: 生成元单词, 不要求约化
    """
    return await service.walls(group_id, request.word)


@router.post("/api/groups/{group_id}/member", response_model=MembershipResponse, summary="语言成员判定")
async def member_word(
    group_id: str,
    request: WordRequest,
    service: GroupService = Depends(get_group_service)
):
    """
    判定单词是否属于贪婪语言 𝒱
    """
    return await service.member(group_id, request.word)


@router.get("/api/groups/{group_id}/small-roots", response_model=SmallRootsResponse, summary="小根集合")
async def small_roots(
    group_id: str,
    service: GroupService = Depends(get_group_service)
):
    """
    返回小根集合 𝒰 中每面墙的根坐标
    """
    return await service.small_roots(group_id)


@router.post("/api/groups/{group_id}/automaton", response_model=AutomatonResponse, summary="构造自动机")
async def build_automaton(
    group_id: str,
    request: AutomatonRequest,
    service: GroupService = Depends(get_group_service)
):
    """
    构造贪婪语言的有限状态自动机

    - **cap**: 枢轴长度上限
    - **format**: dot 或 json
    """
    return await service.automaton(group_id, request)


@router.post("/api/groups/{group_id}/accept", response_model=AcceptResponse, summary="自动机接受判定")
async def accept_word(
    group_id: str,
    request: AcceptRequest,
    service: GroupService = Depends(get_group_service)
):
    """
    用自动机判定单词是否被接受

    - **word**: 输入单词
    - **cap**: 构造自动机时的枢轴长度上限
    """
    return await service.accept(group_id, request)


@router.post("/api/groups/{group_id}/verify", response_model=VerificationReport, summary="运行验证套件")
async def verify_group(
    group_id: str,
    config: VerifyConfig,
    service: GroupService = Depends(get_group_service)
):
    """
    在有限球上运行全部检查并返回报告
    """
    return await service.verify(group_id, config)


@router.get("/api/health", summary="健康检查")
async def health_check():
    """
    服务健康检查
    """
    return {"status": "healthy", "service": "Voracious Coxeter Engine"}
