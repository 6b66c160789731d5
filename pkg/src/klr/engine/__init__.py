from .algebra import EngineError, KlrAlgebra, KlrElement, words_of_content
from .perms import act, reduced_word

__all__ = ["KlrAlgebra", "KlrElement", "EngineError", "words_of_content", "act", "reduced_word"]
