r"""
Parser of the textual pulse-sequence notation.

Grammar
-------

.. code-block:: text

   sequence := item*
   item     := event | '{' event* '}' '^' (INT | 'N')
   event    := DELAY | PHASE '[' expr ']'
   PHASE    := 'X' | 'Y' | '-X' | '-Y'
   expr     := term (('+' | '-') term)*
   term     := factor (('*' | '/') factor | factor)*
   factor   := '-' factor | NUMBER | 'pi' | SYMBOL | '(' expr ')'

``DELAY`` is any identifier naming a time symbol, usually ``tau``. Events are separated by whitespace or ``-``; a ``-``
directly attached to ``X`` or ``Y`` before ``[`` is part of the phase. A number directly followed by a symbol or a
parenthesis is an implicit product, so ``3pi/4`` reads as ``3*pi/4``.

The group repeated ``N`` times is the block; without one, the first group is the block. Events and groups before the
block form the prologue, the rest the epilogue.

.. code-block:: python

   p = parse("{tau X[pi+eps]}^N")
   events = expand(p, {"tau": "392.5us", "eps": "0.04pi", "N": 128})
"""

import re
from dataclasses import dataclass
from typing import Optional
from typing import Union

from dtcx.pulseq.angle import BinaryOp
from dtcx.pulseq.angle import Expr
from dtcx.pulseq.angle import Negate
from dtcx.pulseq.angle import Number
from dtcx.pulseq.angle import Pi
from dtcx.pulseq.angle import Symbol
from dtcx.pulseq.program import DelaySpec
from dtcx.pulseq.program import EventSpec
from dtcx.pulseq.program import Item
from dtcx.pulseq.program import PulseSpec
from dtcx.pulseq.program import Repeat
from dtcx.pulseq.program import SequenceProgram
from dtcx.utils.exceptions import SequenceParseError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")
_NUMBER = re.compile(r"(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
_OPERATORS = "+-*/()"


@dataclass(frozen=True)
class Token:
    """
    A lexical token with its 0-based offset in the source text.
    """
    kind: str
    text: str
    position: int


class Lexer:
    """
    Splits sequence text into tokens. Outside brackets the tokens are braces, ``^``, integers, identifiers and phases;
    inside brackets they are numbers, identifiers and arithmetic operators.
    """

    def __init__(self, text: str) -> None:
        self.__text = text
        self.__pos = 0
        self.__in_angle = False
        self.__tokens: list[Token] = []

    def tokens(self) -> list[Token]:
        """
        The token list, terminated by an ``END`` token.
        """
        while True:
            self.__skip_whitespace()
            if self.__pos >= len(self.__text):
                break
            if self.__in_angle:
                self.__angle_token()
            else:
                self.__sequence_token()
        if self.__in_angle:
            raise SequenceParseError("unbalanced '['", len(self.__text))
        self.__tokens.append(Token("END", "", len(self.__text)))
        return self.__tokens

    def __skip_whitespace(self) -> None:
        while self.__pos < len(self.__text) and self.__text[self.__pos].isspace():
            self.__pos += 1

    def __emit(self, kind: str, text: str) -> None:
        self.__tokens.append(Token(kind, text, self.__pos))
        self.__pos += len(text)

    def __next_is_bracket(self, end: int) -> bool:
        rest = self.__text[end:].lstrip()
        return rest.startswith("[")

    def __sequence_token(self) -> None:
        text, pos = self.__text, self.__pos
        char = text[pos]
        if char in "{}^":
            self.__emit(char, char)
        elif char == "[":
            self.__emit("[", char)
            self.__in_angle = True
        elif char == "-":
            if self.__tokens and self.__tokens[-1].kind == "^":
                raise SequenceParseError("negative repetition count", pos)
            match = _IDENT.match(text, pos + 1)
            if match and self.__next_is_bracket(match.end()):
                self.__phase("-" + match.group(), pos)
            else:
                self.__pos += 1
        elif _INT.match(text, pos):
            self.__emit("INT", _INT.match(text, pos).group())
        elif _IDENT.match(text, pos):
            name = _IDENT.match(text, pos).group()
            if self.__next_is_bracket(pos + len(name)):
                self.__phase(name, pos)
            else:
                self.__emit("IDENT", name)
        else:
            raise SequenceParseError(f"unexpected character '{char}'", pos)

    def __phase(self, name: str, pos: int) -> None:
        if name not in ("X", "Y", "-X", "-Y"):
            raise SequenceParseError(f"unknown phase token '{name}'", pos)
        self.__emit("PHASE", name)

    def __angle_token(self) -> None:
        text, pos = self.__text, self.__pos
        char = text[pos]
        if char == "]":
            self.__emit("]", char)
            self.__in_angle = False
        elif char in _OPERATORS:
            self.__emit(char, char)
        elif _NUMBER.match(text, pos):
            self.__emit("NUMBER", _NUMBER.match(text, pos).group())
        elif _IDENT.match(text, pos):
            self.__emit("IDENT", _IDENT.match(text, pos).group())
        else:
            raise SequenceParseError(f"unexpected character '{char}' in angle", pos)


@dataclass(frozen=True)
class _Group:
    events: tuple[EventSpec, ...]
    count: Optional[int]
    position: int


class Parser:
    """
    Recursive-descent parser over the tokens of a :class:`Lexer`.
    """

    def __init__(self, text: str) -> None:
        self.__tokens = Lexer(text).tokens()
        self.__index = 0

    def __peek(self) -> Token:
        return self.__tokens[self.__index]

    def __found(self, kind: str) -> bool:
        return self.__peek().kind == kind

    def __consume(self, kind: str) -> Token:
        token = self.__peek()
        if token.kind != kind:
            expected = "end of text" if kind == "END" else f"'{kind}'"
            found = "end of text" if token.kind == "END" else f"'{token.text}'"
            raise SequenceParseError(f"expected {expected}, found {found}", token.position)
        self.__index += 1
        return token

    def sequence(self) -> SequenceProgram:
        """
        Parse the whole text.
        """
        items: list[Union[EventSpec, _Group]] = []
        while not self.__found("END"):
            if self.__found("{"):
                items.append(self.__group())
            elif self.__found("}"):
                raise SequenceParseError("unbalanced '}'", self.__peek().position)
            else:
                items.append(self.__event())
        self.__consume("END")
        return _assemble(items)

    def __group(self) -> _Group:
        start = self.__consume("{").position
        events: list[EventSpec] = []
        while not self.__found("}"):
            if self.__found("END"):
                raise SequenceParseError("unbalanced '{'", start)
            if self.__found("{"):
                raise SequenceParseError("nested groups are not supported", self.__peek().position)
            events.append(self.__event())
        self.__consume("}")
        self.__consume("^")
        if self.__found("INT"):
            return _Group(tuple(events), int(self.__consume("INT").text), start)
        token = self.__consume("IDENT")
        if token.text != "N":
            raise SequenceParseError(f"repetition count must be an integer or N, found '{token.text}'", token.position)
        return _Group(tuple(events), None, start)

    def __event(self) -> EventSpec:
        if self.__found("IDENT"):
            return DelaySpec(self.__consume("IDENT").text)
        if not self.__found("PHASE"):
            token = self.__peek()
            found = "end of text" if token.kind == "END" else f"'{token.text}'"
            raise SequenceParseError(f"expected an event, found {found}", token.position)
        phase = self.__consume("PHASE").text
        self.__consume("[")
        if self.__found("]"):
            raise SequenceParseError("empty angle", self.__peek().position)
        angle = self.__expr()
        self.__consume("]")
        return PulseSpec(phase, angle)

    def __expr(self) -> Expr:
        node = self.__term()
        while self.__found("+") or self.__found("-"):
            op = self.__consume(self.__peek().kind).text
            node = BinaryOp(op, node, self.__term())
        return node

    def __term(self) -> Expr:
        node = self.__factor()
        while True:
            if self.__found("*") or self.__found("/"):
                op = self.__consume(self.__peek().kind).text
                node = BinaryOp(op, node, self.__factor())
            elif isinstance(node, Number) and (self.__found("IDENT") or self.__found("(")):
                node = BinaryOp("*", node, self.__factor())
            else:
                return node

    def __factor(self) -> Expr:
        if self.__found("-"):
            self.__consume("-")
            return Negate(self.__factor())
        if self.__found("NUMBER"):
            return Number(self.__consume("NUMBER").text)
        if self.__found("IDENT"):
            name = self.__consume("IDENT").text
            return Pi() if name == "pi" else Symbol(name)
        if self.__found("("):
            self.__consume("(")
            node = self.__expr()
            self.__consume(")")
            return node
        token = self.__peek()
        found = "']'" if token.kind == "]" else f"'{token.text}'"
        raise SequenceParseError(f"expected a number, symbol or '(', found {found}", token.position)


def _assemble(items: list[Union[EventSpec, _Group]]) -> SequenceProgram:
    groups = [i for i, item in enumerate(items) if isinstance(item, _Group)]
    symbolic = [i for i in groups if items[i].count is None]
    if len(symbolic) > 1:
        raise SequenceParseError("only one group may repeat N times", items[symbolic[1]].position)
    if not groups:
        return SequenceProgram(prologue=tuple(items))
    index = symbolic[0] if symbolic else groups[0]

    def convert(item: Union[EventSpec, _Group]) -> Item:
        return Repeat(item.events, item.count) if isinstance(item, _Group) else item

    block = items[index]
    return SequenceProgram(
        prologue=tuple(convert(item) for item in items[:index]),
        block=block.events,
        repetitions=block.count,
        epilogue=tuple(convert(item) for item in items[index + 1:]),
        has_block=True,
    )


def parse(text: str) -> SequenceProgram:
    """
    Parse sequence text into a program.

    :param str text: the sequence text
    :return: the program
    :rtype: SequenceProgram
    :raises SequenceParseError: if the text does not follow the grammar
    """
    if not text or not text.strip():
        raise SequenceParseError("empty sequence", 0)
    return Parser(text).sequence()


def print_program(p: SequenceProgram) -> str:
    """
    The canonical text of a program; :func:`parse` of the result yields an equal program.

    :param SequenceProgram p: the program
    :return: the text
    :rtype: str
    """
    parts = [str(item) for item in p.prologue]
    if p.has_block:
        count = "N" if p.repetitions is None else str(p.repetitions)
        parts.append("{" + " ".join(str(e) for e in p.block) + "}^" + count)
    parts.extend(str(item) for item in p.epilogue)
    return " ".join(parts)
