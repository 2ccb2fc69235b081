import json
import pytest

from cli import main
from tests.conftest import group_path


class TestWordCommands:
    """单词类子命令测试"""

    def test_reduce(self, capsys):
        """测试 A₂ 中 stss 约化为 st"""
        assert main(["reduce", "--group", group_path("a2"), "stss"]) == 0
        assert capsys.readouterr().out.strip() == "st 2"

    def test_reduce_identity(self, capsys):
        """测试空单词"""
        assert main(["reduce", "--group", group_path("a2"), "ss"]) == 0
        assert capsys.readouterr().out.strip() == "id 0"

    def test_unknown_generator(self, capsys):
        """测试未知生成元返回 2"""
        assert main(["reduce", "--group", group_path("a2"), "x"]) == 2
        assert "error" in capsys.readouterr().err

    def test_project(self, capsys):
        """测试 D∞ 的投影链渲染"""
        assert main(["project", "--group", group_path("d_inf"), "sts"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "sts → st → s → id"
        assert lines[1] == "blocks: s|t|s"
        assert lines[2] == "canonical: sts"

    def test_walls(self, capsys):
        """测试边界墙输出"""
        assert main(["walls", "--group", group_path("d_inf"), "sts"]) == 0
        out = capsys.readouterr().out
        assert "Inv(g): 3" in out
        assert "W(g): 1" in out

    def test_member(self, capsys):
        """测试成员判定的退出码"""
        assert main(["member", "--group", group_path("d_inf"), "stst"]) == 0
        assert main(["member", "--group", group_path("d_inf"), "ss"]) == 1
        assert capsys.readouterr().out.split() == ["member", "not", "member"]

    def test_small_roots(self, capsys):
        """测试小根输出"""
        assert main(["small-roots", "--group", group_path("b2")]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "4"

    def test_missing_group_file(self, tmp_path):
        """测试群配置文件不存在"""
        assert main(["reduce", "--group", str(tmp_path / "none.json"), "s"]) == 2

    def test_invalid_group_file(self, tmp_path):
        """测试无效的群配置"""
        path = tmp_path / "bad.json"
        path.write_text('{"generators": ["s", "t"], "m": [[1, 3], [4, 1]]}', encoding="utf-8")
        assert main(["reduce", "--group", str(path), "s"]) == 2

    def test_missing_subcommand(self):
        """测试缺少子命令"""
        with pytest.raises(SystemExit) as exc_info:
            main([])
        assert exc_info.value.code == 2


class TestAutomatonCommands:
    """自动机子命令测试"""

    def test_automaton_dot(self, capsys):
        """测试默认输出 DOT"""
        assert main(["automaton", "--group", group_path("d_inf"), "--cap", "4"]) == 0
        assert capsys.readouterr().out.startswith("digraph voracious")

    def test_automaton_json_file(self, tmp_path):
        """测试输出 JSON 到文件"""
        out = tmp_path / "d_inf.json"
        assert main(["automaton", "--group", group_path("d_inf"), "--cap", "4", "--format", "json", "--out", str(out)]) == 0
        data = json.loads(out.read_text(encoding="utf-8"))
        assert len(data["states"]) == 3

    def test_invalid_cap(self):
        """测试枢轴长度上限为 0"""
        assert main(["automaton", "--group", group_path("d_inf"), "--cap", "0"]) == 2

    def test_accept_from_file(self, tmp_path, capsys):
        """测试从 JSON 文件读入自动机"""
        out = tmp_path / "d_inf.json"
        main(["automaton", "--group", group_path("d_inf"), "--cap", "4", "--format", "json", "--out", str(out)])
        capsys.readouterr()

        assert main(["accept", "--group", group_path("d_inf"), "--automaton", str(out), "stst"]) == 0
        assert main(["accept", "--group", group_path("d_inf"), "--automaton", str(out), "ss"]) == 1
        assert capsys.readouterr().out.split() == ["accept", "reject"]

    def test_accept_missing_file(self, tmp_path):
        """测试自动机文件不存在"""
        missing = str(tmp_path / "missing.json")
        assert main(["accept", "--group", group_path("d_inf"), "--automaton", missing, "st"]) == 2

    def test_accept_wrong_group(self, tmp_path):
        """测试自动机文件与群不一致"""
        out = tmp_path / "a2.json"
        main(["automaton", "--group", group_path("a2"), "--cap", "3", "--format", "json", "--out", str(out)])
        assert main(["accept", "--group", group_path("d_inf"), "--automaton", str(out), "st"]) == 2

    def test_accept_bad_label(self, tmp_path):
        """测试自动机文件中的空标签返回 2"""
        out = tmp_path / "d_inf.json"
        main(["automaton", "--group", group_path("d_inf"), "--cap", "4", "--format", "json", "--out", str(out)])
        data = json.loads(out.read_text(encoding="utf-8"))
        data["edges"][0]["labels"].append("")
        out.write_text(json.dumps(data), encoding="utf-8")
        assert main(["accept", "--group", group_path("d_inf"), "--automaton", str(out), "st"]) == 2


class TestVerifyCommand:
    """verify 子命令测试"""

    def test_verify_a2(self, tmp_path):
        """测试 A₂ 验证通过"""
        out = tmp_path / "report.json"
        assert main(["verify", "--group", group_path("a2"), "--radius", "3", "--word-length", "4", "--out", str(out)]) == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["passed"] is True
        assert report["radius"] == 3

    def test_verify_radius_zero(self, capsys):
        """测试半径 0 平凡通过"""
        assert main(["verify", "--group", group_path("d_inf"), "--radius", "0", "--word-length", "2"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["warnings"]

    def test_verify_config_file(self, tmp_path, capsys):
        """测试配置文件与命令行参数的合并"""
        config = tmp_path / "verify.json"
        config.write_text(json.dumps({"radius": 5, "word_length": 3, "seed": 3}), encoding="utf-8")
        assert main(["verify", "--group", group_path("d_inf"), "--config", str(config), "--radius", "2"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["radius"] == 2

    def test_verify_invalid_config(self, tmp_path):
        """测试无效的验证配置"""
        config = tmp_path / "verify.json"
        config.write_text(json.dumps({"radius": -1}), encoding="utf-8")
        assert main(["verify", "--group", group_path("d_inf"), "--config", str(config)]) == 2

    def test_verify_unwritable_output(self, tmp_path):
        """测试报告文件无法写入"""
        out = tmp_path / "missing-dir" / "report.json"
        assert main(["verify", "--group", group_path("d_inf"), "--radius", "1", "--word-length", "1", "--out", str(out)]) == 2
