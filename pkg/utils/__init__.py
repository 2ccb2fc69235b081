from .field import FieldContext, FieldScalar, make_field_context
from .word_utils import parse_word, format_word, display_word, group_id_for
from .storage import GroupStorage

__all__ = [
    "FieldContext", "FieldScalar", "make_field_context",
    "parse_word", "format_word", "display_word", "group_id_for", "GroupStorage",
]
