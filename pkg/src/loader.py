"""Reading and writing grammar files."""

from pathlib import Path
from typing import Union

from src.grammar import Grammar, check
from src.lexer import Lexer
from src.parser import Parser
from src.writer import GrammarWriter


class GrammarLoader:
    """Orchestrates lexing, parsing, validation and serialization of grammars."""

    def __init__(self):
        self.lexer = None
        self.parser = None
        self.writer = GrammarWriter()

    def load(self, text: str) -> Grammar:
        """
        Parse and validate a grammar from its text form.

        Args:
            text: The grammar in the line-oriented text format

        Returns:
            The validated Slp or LinearSlp

        Raises:
            SyntaxError: If the text is not well formed
            GrammarError: If the grammar breaks a structural invariant
        """
        self.lexer = Lexer(text)
        tokens = self.lexer.tokenize()

        self.parser = Parser(tokens)
        grammar = self.parser.parse()

        return check(grammar)

    def load_file(self, file_path: Union[str, Path]) -> Grammar:
        """Load a grammar file."""
        source = Path(file_path).read_text(encoding="ascii")
        return self.load(source)

    def dump(self, grammar: Grammar) -> str:
        """Serialize a grammar to the text format."""
        return self.writer.generate(grammar)

    def dump_file(self, grammar: Grammar, file_path: Union[str, Path]):
        Path(file_path).write_text(self.dump(grammar), encoding="ascii")
