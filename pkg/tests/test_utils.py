import pytest

from utils.word_utils import (
    all_words,
    display_word,
    format_word,
    group_id_for,
    parse_word,
    uses_commas,
)
from exceptions.coxeter_exceptions import UnknownGeneratorError


class TestWordUtils:
    """单词工具函数测试"""

    def test_parse_single_character_word(self):
        """测试单字符生成元的单词解析"""
        assert parse_word("stss", ["s", "t"]) == (0, 1, 0, 0)

    def test_parse_empty_word(self):
        """测试空字"""
        assert parse_word("", ["s", "t"]) == ()
        assert parse_word("   ", ["s", "t"]) == ()

    def test_parse_unknown_generator(self):
        """测试未知生成元"""
        with pytest.raises(UnknownGeneratorError) as exc_info:
            parse_word("x", ["s", "t"])
        assert exc_info.value.status_code == 400
        assert "x" in exc_info.value.detail

    def test_parse_multi_character_names(self):
        """测试多字符名称需要逗号分隔"""
        generators = ["s1", "s2", "s3"]
        assert uses_commas(generators)
        assert parse_word("s1,s3, s2", generators) == (0, 2, 1)
        with pytest.raises(UnknownGeneratorError):
            parse_word("s1s2", generators)

    def test_parse_commas_with_single_characters(self):
        """测试单字符名称也接受逗号分隔"""
        assert parse_word("s,t,s", ["s", "t"]) == (0, 1, 0)

    def test_format_word(self):
        """测试单词格式化"""
        assert format_word((0, 1, 0), ["s", "t"]) == "sts"
        assert format_word((0, 2), ["s1", "s2", "s3"]) == "s1,s3"
        assert format_word((), ["s", "t"]) == ""

    def test_display_identity(self):
        """测试空字显示为 id"""
        assert display_word((), ["s", "t"]) == "id"
        assert display_word((1,), ["s", "t"]) == "t"

    def test_group_id_is_stable(self):
        """测试群ID由内容决定"""
        first = group_id_for(["s", "t"], [[1, 3], [3, 1]])
        second = group_id_for(["s", "t"], [[1, 3], [3, 1]])
        other = group_id_for(["s", "t"], [[1, 4], [4, 1]])
        assert first == second
        assert first != other
        assert len(first) == 8

    def test_all_words_order_and_count(self):
        """测试单词枚举的顺序与个数"""
        words = list(all_words(2, 3))
        assert words[0] == ()
        assert words[1:3] == [(0,), (1,)]
        assert len(words) == 1 + 2 + 4 + 8
        assert len(set(words)) == len(words)
