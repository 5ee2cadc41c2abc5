"""Hand-written lexer for SPARC source text.

Produces a flat token list; malformed input yields error tokens that the
parser reports, so lexing never raises on its own.  ``%`` starts a comment
running to end of line.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import Diagnostic
from .syntax import Pos

KEYWORDS = {
    "sorts": "SORTS",
    "predicates": "PREDICATES",
    "rules": "RULES",
    "not": "NOT",
    "extend": "EXTEND",
    "with": "WITH",
}

_PUNCT = {
    ".": "DOT",
    ",": "COMMA",
    "{": "LBRACE",
    "}": "RBRACE",
    "(": "LPAREN",
    ")": "RPAREN",
    "=": "EQ",
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "/": "SLASH",
    "|": "PIPE",
    "?": "QMARK",
    "¬": "NEG",  # ¬, alias for classical negation
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: Pos
    value: object = None


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    toks: list[Token] = []
    errors: list[Diagnostic] = []
    i = 0
    line = 1
    col = 1
    n = len(text)

    def pos() -> Pos:
        return Pos(line, col)

    def advance(k: int = 1):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance()
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                advance()
            continue
        start = pos()
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            lexeme = text[i:j]
            toks.append(Token("NUMBER", lexeme, start, int(lexeme)))
            advance(j - i)
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            lexeme = text[i:j]
            advance(j - i)
            if lexeme in KEYWORDS:
                toks.append(Token(KEYWORDS[lexeme], lexeme, start))
            elif lexeme[0].isupper():
                toks.append(Token("VAR", lexeme, start))
            else:
                toks.append(Token("IDENT", lexeme, start))
            continue
        if c == "#":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i + 1:j]
            advance(j - i)
            if word == "include":
                tok, err = _scan_include_path(text, i, line, col, start)
                if err is not None:
                    errors.append(err)
                if tok is not None:
                    toks.append(tok)
                    advance(len(tok.text))
                continue
            if word == "const":
                toks.append(Token("CONST", "#const", start))
            elif word and word[0].islower():
                toks.append(Token("SORTNAME", "#" + word, start))
            else:
                errors.append(Diagnostic("bad-token", f"malformed sort name '#{word}'", start, found="#" + word))
            continue
        if c == ".":
            if i + 1 < n and text[i + 1] == ".":
                toks.append(Token("DOTS", "..", start))
                advance(2)
            else:
                toks.append(Token("DOT", ".", start))
                advance()
            continue
        if c == ":":
            if i + 1 < n and text[i + 1] == "-":
                toks.append(Token("IMPLIES", ":-", start))
                advance(2)
            else:
                errors.append(Diagnostic("bad-token", "expected ':-'", start, found=":"))
                advance()
            continue
        if c == "!":
            if i + 1 < n and text[i + 1] == "=":
                toks.append(Token("NE", "!=", start))
                advance(2)
            else:
                errors.append(Diagnostic("bad-token", "expected '!='", start, found="!"))
                advance()
            continue
        if c == "<":
            if i + 1 < n and text[i + 1] == "=":
                toks.append(Token("LE", "<=", start))
                advance(2)
            else:
                toks.append(Token("LT", "<", start))
                advance()
            continue
        if c == ">":
            if i + 1 < n and text[i + 1] == "=":
                toks.append(Token("GE", ">=", start))
                advance(2)
            else:
                toks.append(Token("GT", ">", start))
                advance()
            continue
        if c in _PUNCT:
            toks.append(Token(_PUNCT[c], c, start))
            advance()
            continue
        errors.append(Diagnostic("bad-token", f"unexpected character {c!r}", start, found=c))
        advance()

    toks.append(Token("EOF", "", pos()))
    return toks, errors


def _scan_include_path(text: str, i: int, line: int, col: int, start: Pos):
    """Scan the ``<path>`` or ``"path"`` following ``#include``.

    Returns (token, error); the token's ``text`` covers exactly the characters
    to advance past (whitespace + delimited path).
    """
    n = len(text)
    j = i
    while j < n and text[j] in " \t":
        j += 1
    if j >= n or text[j] not in "<\"":
        return None, Diagnostic("bad-include", "expected '<path>' or '\"path\"' after #include", start)
    opener = text[j]
    closer = ">" if opener == "<" else '"'
    k = j + 1
    while k < n and text[k] not in (closer, "\n"):
        k += 1
    if k >= n or text[k] != closer:
        return None, Diagnostic("bad-include", f"unterminated include path (missing '{closer}')", start)
    path = text[j + 1:k]
    consumed = text[i:k + 1]
    tok = Token("INCLUDE", consumed, start, (path, opener == "<"))
    return tok, None
