"""Parser turning grammar-file tokens into an Slp or LinearSlp."""

from typing import List, Optional

from src.grammar import Grammar, Leaf, LinearSlp, Node, Rule, Slp
from src.lexer import Token, TokenType


class Parser:
    """Parses records ``leaf``, ``rule``, ``root`` and ``lroot``.

    Records must define ids ``0, 1, 2, ...`` in order and children must refer to
    ids already defined. The last record is the root.
    """

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.nodes: List[Node] = []

    def error(self, message: str, token: Optional[Token] = None):
        """Raise a parser error with position information."""
        if token is None and self.pos < len(self.tokens):
            token = self.tokens[self.pos]
        if token is not None:
            raise SyntaxError(
                f"Parser error at line {token.line}, column {token.column}: {message}"
            )
        raise SyntaxError(f"Parser error at end of input: {message}")

    def current_token(self) -> Optional[Token]:
        """Get the current token."""
        if self.pos >= len(self.tokens):
            return None
        return self.tokens[self.pos]

    def advance(self):
        """Move to the next token."""
        if self.pos < len(self.tokens):
            self.pos += 1

    def expect(self, token_type: TokenType) -> Token:
        """Expect a specific token type."""
        token = self.current_token()
        if token is None or token.type != token_type:
            got = token.type.name if token else "EOF"
            self.error(f"Expected {token_type.name}, got {got}")
        self.advance()
        return token

    def read_numbers(self) -> List[Token]:
        """Read the numbers of one record up to its line end."""
        numbers = []
        while self.current_token() and self.current_token().type == TokenType.NUMBER:
            numbers.append(self.current_token())
            self.advance()
        self.expect(TokenType.NEWLINE)
        return numbers

    def check_arity(self, keyword: Token, numbers: List[Token], arity: int):
        if len(numbers) != arity:
            self.error(
                f"'{keyword.value}' takes {arity} numbers, got {len(numbers)}", keyword
            )

    def check_new_id(self, token: Token) -> int:
        node_id = int(token.value)
        if node_id != len(self.nodes):
            self.error(f"expected id {len(self.nodes)}, got {node_id}", token)
        return node_id

    def check_child(self, token: Token, parent: int) -> int:
        child = int(token.value)
        if child >= parent:
            self.error(f"child {child} is not defined before node {parent}", token)
        return child

    def parse_leaf(self, keyword: Token):
        numbers = self.read_numbers()
        self.check_arity(keyword, numbers, 2)
        self.check_new_id(numbers[0])
        symbol = int(numbers[1].value)
        if symbol > 255:
            self.error(f"leaf symbol {symbol} is not a byte", numbers[1])
        self.nodes.append(Leaf(symbol))

    def parse_rule(self, keyword: Token):
        numbers = self.read_numbers()
        self.check_arity(keyword, numbers, 3)
        node_id = self.check_new_id(numbers[0])
        left = self.check_child(numbers[1], node_id)
        right = self.check_child(numbers[2], node_id)
        self.nodes.append(Rule(left, right))

    def parse_root(self, keyword: Token) -> Slp:
        numbers = self.read_numbers()
        self.check_arity(keyword, numbers, 1)
        root = int(numbers[0].value)
        if root >= len(self.nodes):
            self.error(f"root {root} is not a defined node", numbers[0])
        return Slp(self.nodes, root)

    def parse_lroot(self, keyword: Token) -> LinearSlp:
        numbers = self.read_numbers()
        if len(numbers) < 2:
            self.error("'lroot' needs an id and at least one child", keyword)
        node_id = self.check_new_id(numbers[0])
        children = [self.check_child(t, node_id) for t in numbers[1:]]
        return LinearSlp(self.nodes, children)

    def parse(self) -> Grammar:
        """Parse the whole token stream."""
        grammar = None
        while True:
            token = self.current_token()
            if token is None or token.type == TokenType.EOF:
                break
            if grammar is not None:
                self.error("records after the root record")
            keyword = self.expect(TokenType.KEYWORD)
            if keyword.value == "leaf":
                self.parse_leaf(keyword)
            elif keyword.value == "rule":
                self.parse_rule(keyword)
            elif keyword.value == "root":
                grammar = self.parse_root(keyword)
            else:
                grammar = self.parse_lroot(keyword)

        if grammar is None:
            self.error("missing 'root' or 'lroot' record")
        return grammar
