import hashlib
import json
from typing import Sequence, Tuple

from exceptions.coxeter_exceptions import UnknownGeneratorError


IDENTITY_NAME = "id"


def uses_commas(generators: Sequence[str]) -> bool:
    """存在多字符名称时单词必须用逗号分隔"""
    return any(len(name) != 1 for name in generators)


def parse_word(text: str, generators: Sequence[str]) -> Tuple[int, ...]:
    """把单词文本解析为生成元下标序列"""
    text = text.strip()
    if not text:
        return ()
    index = {name: i for i, name in enumerate(generators)}
    if "," in text or uses_commas(generators):
        letters = [part.strip() for part in text.split(",") if part.strip()]
    else:
        letters = list(text)
    word = []
    for letter in letters:
        if letter not in index:
            raise UnknownGeneratorError(letter)
        word.append(index[letter])
    return tuple(word)


def format_word(word: Sequence[int], generators: Sequence[str]) -> str:
    """把下标序列格式化为单词文本"""
    separator = "," if uses_commas(generators) else ""
    return separator.join(generators[s] for s in word)


def display_word(word: Sequence[int], generators: Sequence[str]) -> str:
    """空字显示为 id"""
    return format_word(word, generators) or IDENTITY_NAME


def group_id_for(generators: Sequence[str], m: Sequence[Sequence[int]]) -> str:
    """由配置内容得到稳定的群ID"""
    payload = json.dumps({"generators": list(generators), "m": [list(row) for row in m]}, sort_keys=True)
    return hashlib.sha1(payload.encode("utf-8")).hexdigest()[:8]


def all_words(rank: int, max_length: int):
    """按长度、再按字典序枚举长度 ≤ max_length 的全部单词"""
    yield ()
    layer = [()]
    for _ in range(max_length):
        layer = [word + (s,) for word in layer for s in range(rank)]
        yield from layer
