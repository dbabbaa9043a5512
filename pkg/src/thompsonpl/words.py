"""Free-group words and their text syntax.

Grammar (whitespace is insignificant)::

    word     := factor (["*"] factor)*  |  "1"
    factor   := atom ["^" ["-"] digits]
    atom     := NAME | "(" word ")" | "[" word "," word "]"
    NAME     := [A-Za-z_][A-Za-z0-9_]* [":" ["-"] digits ["/" digits]]

``[a, b]`` expands to ``a b a^-1 b^-1``.  Parsing keeps juxtaposed letters
as written (no free reduction) except inside commutator expansions, so that
``parse_word(format_word(w)) == w`` for every word.
"""

from __future__ import annotations

import random
import re
from typing import Iterable, Sequence

from .errors import ParseError

Word = tuple  # tuple of (name, nonzero exponent) pairs


def word(*letters) -> Word:
    """Build a word from ``"x0"`` / ``("x0", -2)`` items, dropping zero exponents."""
    out = []
    for item in letters:
        name, exp = (item, 1) if isinstance(item, str) else item
        if exp:
            out.append((name, int(exp)))
    return tuple(out)


def reduce(w: Iterable) -> Word:
    """Free reduction: merge adjacent equal names, drop zero exponents."""
    stack = []
    for name, exp in w:
        if stack and stack[-1][0] == name:
            exp += stack.pop()[1]
        if exp:
            stack.append((name, exp))
    return tuple(stack)


def inverse(w: Sequence) -> Word:
    return tuple((name, -exp) for name, exp in reversed(w))


def power(w: Sequence, n: int) -> Word:
    if n < 0:
        w, n = inverse(w), -n
    return tuple(w) * n


def commutator(a: Sequence, b: Sequence) -> Word:
    """[a, b] = a b a^-1 b^-1 (as maps, read right to left)."""
    return reduce(tuple(a) + tuple(b) + inverse(a) + inverse(b))


def length(w: Sequence) -> int:
    return sum(abs(e) for _, e in w)


def exponent_sums(w: Sequence, generators: Sequence[str]) -> list:
    index = {g: i for i, g in enumerate(generators)}
    row = [0] * len(generators)
    for name, exp in w:
        row[index[name]] += exp
    return row


def format_word(w: Sequence) -> str:
    if not w:
        return "1"
    return " ".join(name if exp == 1 else "%s^%d" % (name, exp) for name, exp in w)


def random_word(rng: random.Random, generators: Sequence[str], length: int) -> Word:
    """A reduced word of exactly ``length`` letters (each of exponent +-1, merged)."""
    letters = []
    while len(letters) < length:
        letter = (rng.choice(generators), rng.choice((1, -1)))
        if letters and letters[-1] == (letter[0], -letter[1]):
            continue
        letters.append(letter)
    return reduce(letters)


# --------------------------------------------------------------------------
# parser

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?::-?\d+(?:/\d+)?)?")
_INT = re.compile(r"-?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos:self.pos + 1]

    def fail(self, *expected):
        self.skip()
        raise ParseError(self.text, self.pos, expected)

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(repr(ch))
        self.pos += 1

    def word(self, stop: str) -> Word:
        out = []
        if self.peek() == "1":
            self.pos += 1
            if self.peek() not in stop:
                self.fail(*map(repr, stop or ["end of input"]))
            return ()
        while True:
            out.extend(self.factor())
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                continue
            if ch == "" or ch in stop:
                return tuple(out)
            if not (ch.isalpha() or ch in "_(["):
                self.fail("name", "'('", "'['", "'*'", "'^'", *map(repr, stop or ["end of input"]))

    def factor(self) -> Word:
        w = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            m = _INT.match(self.text, self.pos)
            if not m:
                self.fail("integer")
            self.pos = m.end()
            n = int(m.group())
            if len(w) == 1:
                return ((w[0][0], w[0][1] * n),) if n else ()
            return power(w, n)
        return w

    def atom(self) -> Word:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            w = self.word(")")
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            a = self.word(",")
            self.expect(",")
            b = self.word("]")
            self.expect("]")
            return commutator(a, b)
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.fail("name", "'('", "'['")
        self.pos = m.end()
        return ((m.group(), 1),)


def parse_word(text: str) -> Word:
    """Parse the word syntax described in the module docstring."""
    parser = _Parser(text)
    if parser.peek() == "":
        parser.fail("name", "'1'", "'('", "'['")
    w = parser.word("")
    if parser.peek() != "":
        parser.fail("end of input")
    return w
