import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from models.group_models import AcceptRequest, AutomatonRequest, GroupCreate, parse_group_config
from models.report_models import VerifyConfig
from services.group_service import GroupService
from utils.word_utils import IDENTITY_NAME
from exceptions.coxeter_exceptions import CoxeterEngineException


logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help="群配置文件（JSON: generators, m）")
    common.add_argument("--verbose", action="store_true", help="输出调试日志")

    parser = argparse.ArgumentParser(prog="coxeter", description="Coxeter 群贪婪语言引擎")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("reduce", "约化单词, 输出 ShortLex 约化字与字长"),
        ("project", "输出贪婪投影链与各块"),
        ("walls", "输出 Inv(g) 与 𝒲(g)"),
        ("member", "判定单词是否属于贪婪语言"),
    ):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument("word", nargs="?", default="", help="单词")

    commands.add_parser("small-roots", parents=[common], help="输出小根集合 𝒰")

    automaton = commands.add_parser("automaton", parents=[common], help="构造自动机")
    automaton.add_argument("--cap", type=int, default=8, help="枢轴长度上限")
    automaton.add_argument("--format", choices=["dot", "json"], default="dot", help="输出格式")
    automaton.add_argument("--out", help="输出文件, 缺省为标准输出")

    accept = commands.add_parser("accept", parents=[common], help="用自动机判定单词")
    accept.add_argument("word", nargs="?", default="", help="单词")
    accept.add_argument("--automaton", help="JSON 格式的自动机文件, 缺省时按 --cap 现场构造")
    accept.add_argument("--cap", type=int, default=8, help="枢轴长度上限")

    verify = commands.add_parser("verify", parents=[common], help="运行验证套件")
    verify.add_argument("--config", help="验证配置文件（JSON）")
    verify.add_argument("--radius", type=int, help="球半径")
    verify.add_argument("--cap", type=int, help="枢轴长度上限")
    verify.add_argument("--word-length", type=int, dest="word_length", help="自动机一致性检查的单词长度")
    verify.add_argument("--seed", type=int, help="随机种子")
    verify.add_argument("--out", help="报告文件, 缺省为标准输出")
    return parser


def write_output(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def load_verify_config(args: argparse.Namespace) -> VerifyConfig:
    """配置文件打底, 命令行参数覆盖"""
    data = {}
    if args.config:
        data = VerifyConfig.model_validate_json(Path(args.config).read_text(encoding="utf-8")).model_dump()
    overrides = {"radius": args.radius, "pivot_cap": args.cap, "word_length": args.word_length, "seed": args.seed}
    data.update({key: value for key, value in overrides.items() if value is not None})
    return VerifyConfig(**data)


async def run_command(args: argparse.Namespace, service: GroupService) -> int:
    matrix = parse_group_config(Path(args.group).read_text(encoding="utf-8"))
    group_id = (await service.create_group(GroupCreate(config=matrix))).id

    if args.command == "reduce":
        result = await service.reduce(group_id, args.word)
        print(result.reduced_word or IDENTITY_NAME, result.length)
        return EXIT_OK

    if args.command == "project":
        result = await service.project(group_id, args.word)
        print(result.rendering)
        print("blocks:", "|".join(result.blocks) or IDENTITY_NAME)
        print("canonical:", result.canonical_word or IDENTITY_NAME)
        return EXIT_OK

    if args.command == "walls":
        result = await service.walls(group_id, args.word)
        print(f"Inv(g): {len(result.inversions)}")
        for wall in result.inversions:
            print("  (" + ", ".join(wall.coords) + ")")
        print(f"W(g): {len(result.frontier)}")
        for wall in result.frontier:
            print("  (" + ", ".join(wall.coords) + ")")
        return EXIT_OK

    if args.command == "member":
        result = await service.member(group_id, args.word)
        print("member" if result.member else "not member")
        return EXIT_OK if result.member else EXIT_REJECT

    if args.command == "small-roots":
        result = await service.small_roots(group_id)
        print(result.count)
        for wall in result.walls:
            print("(" + ", ".join(wall.coords) + ")")
        return EXIT_OK

    if args.command == "automaton":
        result = await service.automaton(group_id, AutomatonRequest(cap=args.cap, format=args.format))
        if result.saturated:
            logger.warning("枢轴长度上限 %d 处存在枢轴, 自动机可能不完整", args.cap)
        write_output(result.content, args.out)
        return EXIT_OK

    if args.command == "accept":
        automaton = None
        if args.automaton:
            automaton = await service.load_automaton(group_id, Path(args.automaton).read_text(encoding="utf-8"))
        result = await service.accept(group_id, AcceptRequest(word=args.word, cap=args.cap), automaton)
        print("accept" if result.accepted else "reject")
        return EXIT_OK if result.accepted else EXIT_REJECT

    if args.command == "verify":
        report = await service.verify(group_id, load_verify_config(args))
        for warning in report.warnings:
            logger.warning(warning)
        write_output(report.model_dump_json(indent=2), args.out)
        return EXIT_OK if report.passed else EXIT_REJECT

    raise ValueError(f"未知命令 {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return asyncio.run(run_command(args, GroupService()))
    except CoxeterEngineException as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
