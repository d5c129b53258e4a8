"""Scheme file formats.

Two formats are supported:

* a human-readable expression format::

      m1 := (a11 + a22) * (b11 + b22);
      ...
      c11 := m1 + m4 + m5 + m7;

  Statements are separated by ``;`` or line breaks and may appear in any
  order.  Entries can be spelled ``a11``, ``a[1,1]`` or ``a_{1,1}`` (indices
  are 1-based; the bare spelling is for single-digit indices only).  ``-``
  is accepted and means ``+`` (characteristic 2), ``=`` is accepted for
  ``:=``.  Dimensions are inferred from the largest indices used; every
  product must be defined exactly once and every result entry exactly once
  (``cIJ := 0`` records an empty sum).

* a bit-exact canonical format: magic ``BMMS1``, then n, m, p, rank as
  32-bit little-endian, then per product the alpha, beta, gamma masks
  row-major with one 64-bit little-endian word per row.  Masks wider than
  64 columns do not fit this format.
"""

from __future__ import annotations

import re
import struct

from .gf2 import BitMatrix
from .scheme import Product, Scheme

MAGIC = b"BMMS1"


class ParseError(ValueError):
    """Expression-format error with a 1-based source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class CanonicalFormatError(ValueError):
    pass


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[ \t\r]+)
    | (?P<newline>\n)
    | (?P<assign>:=|=)
    | (?P<plus>[+-])
    | (?P<star>\*)
    | (?P<semi>;)
    | (?P<lparen>\()
    | (?P<rparen>\))
    | (?P<zero>0(?![0-9]))
    | (?P<entry>[abcmABCM](?:\d+|\[\s*\d+\s*(?:,\s*\d+\s*)?\]|_\{\s*\d+\s*(?:,\s*\d+\s*)?\}))
    """,
    re.VERBOSE,
)

_ENTRY_RE = re.compile(
    r"([abcm])(?:(\d+)|\[\s*(\d+)\s*(?:,\s*(\d+)\s*)?\]|_\{\s*(\d+)\s*(?:,\s*(\d+)\s*)?\})")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _lex(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "newline":
            tokens.append(_Token("sep", "\n", line, col))
            line += 1
            col = 1
        else:
            if kind == "semi":
                tokens.append(_Token("sep", ";", line, col))
            elif kind != "ws":
                tokens.append(_Token(kind, lexeme, line, col))
            col += len(lexeme)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


def _entry_indices(tok: _Token) -> tuple[str, tuple[int, ...]]:
    m = _ENTRY_RE.fullmatch(tok.text.lower())
    if m is None:
        raise ParseError(f"malformed entry {tok.text!r}", tok.line, tok.col)
    family = m.group(1)
    if m.group(2) is not None:  # bare digits
        digits = m.group(2)
        if family == "m":
            idx = (int(digits),)
        elif len(digits) == 2:
            idx = (int(digits[0]), int(digits[1]))
        else:
            raise ParseError(
                f"bare entry {tok.text!r} needs exactly one digit per index "
                "(use the bracketed spelling for larger indices)",
                tok.line, tok.col)
    else:
        parts = [g for g in m.groups()[2:] if g is not None]
        idx = tuple(int(g) for g in parts)
    if family == "m":
        if len(idx) != 1:
            raise ParseError(f"product reference {tok.text!r} takes one index",
                             tok.line, tok.col)
    elif len(idx) != 2:
        raise ParseError(f"entry {tok.text!r} needs two indices", tok.line, tok.col)
    if any(i == 0 for i in idx):
        raise ParseError(f"index 0 in {tok.text!r} (indices are 1-based)",
                         tok.line, tok.col)
    return family, idx


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def skip_separators(self) -> None:
        while self.peek().kind == "sep":
            self.take()

    def skip_soft_newlines(self) -> None:
        # a line break inside an unfinished expression is plain whitespace
        while self.peek().kind == "sep" and self.peek().text == "\n":
            self.take()

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, got {tok.text or 'end of input'!r}",
                             tok.line, tok.col)
        return tok

    def end_statement(self) -> None:
        tok = self.peek()
        if tok.kind == "eof":
            return
        if tok.kind != "sep":
            raise ParseError(f"expected ';' or line break, got {tok.text!r}",
                             tok.line, tok.col)
        self.take()

    def factor(self, want_family: str) -> list[tuple[int, int]]:
        """A parenthesized sum of entries, or a single entry."""
        self.skip_soft_newlines()
        tok = self.peek()
        if tok.kind == "lparen":
            self.take()
            entries = self.entry_sum(want_family)
            self.skip_soft_newlines()
            self.expect("rparen", "')'")
            return entries
        return self.entry_sum(want_family, single=True)

    def entry_sum(self, want_family: str, single: bool = False) -> list[tuple[int, int]]:
        entries = []
        while True:
            self.skip_soft_newlines()
            tok = self.peek()
            if tok.kind == "plus":  # unary sign
                self.take()
                continue
            tok = self.expect("entry", "a matrix entry")
            family, idx = _entry_indices(tok)
            if family != want_family:
                raise ParseError(
                    f"{tok.text!r}: factor must use only {want_family!r} entries",
                    tok.line, tok.col)
            entries.append(idx)
            if single:
                return entries
            self.skip_soft_newlines()
            if self.peek().kind == "plus":
                self.take()
                continue
            return entries


def parse_expression(text: str) -> Scheme:
    """Parse the expression format into a scheme.

    Raises :class:`ParseError` with a source position on any malformed,
    duplicate, missing or inconsistent definition.
    """
    parser = _Parser(text)
    m_defs: dict[int, tuple[list, list, _Token]] = {}
    c_defs: dict[tuple[int, int], tuple[list[int], _Token]] = {}

    while True:
        parser.skip_separators()
        if parser.peek().kind == "eof":
            break
        head = parser.expect("entry", "a definition (mK := ... or cIJ := ...)")
        family, idx = _entry_indices(head)
        parser.skip_soft_newlines()
        parser.expect("assign", "':='")
        if family == "m":
            k = idx[0]
            if k in m_defs:
                raise ParseError(f"duplicate definition of m{k}", head.line, head.col)
            lhs = parser.factor("a")
            parser.skip_soft_newlines()
            parser.expect("star", "'*'")
            rhs = parser.factor("b")
            m_defs[k] = (lhs, rhs, head)
        elif family == "c":
            if idx in c_defs:
                raise ParseError(f"duplicate definition of c{idx[0]}{idx[1]}",
                                 head.line, head.col)
            refs: list[int] = []
            parser.skip_soft_newlines()
            if parser.peek().kind == "zero":
                parser.take()
            else:
                while True:
                    tok = parser.expect("entry", "a product reference mK")
                    fam, ridx = _entry_indices(tok)
                    if fam != "m":
                        raise ParseError(
                            f"{tok.text!r}: result entries are sums of mK terms",
                            tok.line, tok.col)
                    refs.append(ridx[0])
                    parser.skip_soft_newlines()
                    if parser.peek().kind == "plus":
                        parser.take()
                        parser.skip_soft_newlines()
                        continue
                    break
            c_defs[idx] = (refs, head)
        else:
            raise ParseError(f"cannot define {head.text!r} (only mK and cIJ)",
                             head.line, head.col)
        parser.end_statement()

    if not m_defs:
        raise ParseError("no products defined", 1, 1)
    if not c_defs:
        raise ParseError("no result entries defined", 1, 1)

    n = max(max(i for (i, _) in c_defs), max(i for lhs, _, _ in m_defs.values() for (i, _) in lhs))
    mdim = max(max(j for lhs, _, _ in m_defs.values() for (_, j) in lhs),
               max(i for _, rhs, _ in m_defs.values() for (i, _) in rhs))
    p = max(max(j for (_, j) in c_defs), max(j for _, rhs, _ in m_defs.values() for (_, j) in rhs))

    order = sorted(m_defs)
    slot = {k: t for t, k in enumerate(order)}
    gammas = [[0] * n for _ in order]
    for (i, j), (refs, head) in c_defs.items():
        for k in refs:
            if k not in m_defs:
                raise ParseError(f"c{i}{j} references undefined m{k}",
                                 head.line, head.col)
            gammas[slot[k]][i - 1] ^= 1 << (j - 1)
    missing = [(i, j) for i in range(1, n + 1) for j in range(1, p + 1)
               if (i, j) not in c_defs]
    if missing:
        i, j = missing[0]
        raise ParseError(
            f"missing definition of c{i}{j} ({len(missing)} result entries undefined)",
            1, 1)

    products = []
    for t, k in enumerate(order):
        lhs, rhs, _ = m_defs[k]
        arows = [0] * n
        for (i, j) in lhs:
            arows[i - 1] ^= 1 << (j - 1)
        brows = [0] * mdim
        for (i, j) in rhs:
            brows[i - 1] ^= 1 << (j - 1)
        products.append(Product(
            BitMatrix(n, mdim, arows),
            BitMatrix(mdim, p, brows),
            BitMatrix(n, p, gammas[t]),
        ))
    return Scheme(n, mdim, p, tuple(products))


def _spell(letter: str, i: int, j: int, bare: bool) -> str:
    if bare:
        return f"{letter}{i}{j}"
    return f"{letter}[{i},{j}]"


def serialize_expression(s: Scheme) -> str:
    """Deterministic text form; parse(serialize(s)) == s for normalized s."""
    bare = s.n <= 9 and s.m <= 9 and s.p <= 9
    lines = []
    for t, prod in enumerate(s.products):
        lhs = " + ".join(_spell("a", i + 1, j + 1, bare)
                         for i in range(s.n) for j in range(s.m)
                         if prod.alpha.get(i, j))
        rhs = " + ".join(_spell("b", i + 1, j + 1, bare)
                         for i in range(s.m) for j in range(s.p)
                         if prod.beta.get(i, j))
        lines.append(f"m{t + 1} := ({lhs}) * ({rhs});")
    for i in range(s.n):
        for j in range(s.p):
            refs = [f"m{t + 1}" for t, prod in enumerate(s.products)
                    if prod.gamma.get(i, j)]
            total = " + ".join(refs) if refs else "0"
            lines.append(f"{_spell('c', i + 1, j + 1, bare)} := {total};")
    return "\n".join(lines) + "\n"


def write_canonical(s: Scheme) -> bytes:
    """Bit-exact binary form (one 64-bit word per mask row)."""
    if s.m > 64 or s.p > 64:
        raise CanonicalFormatError(
            f"canonical format fits masks up to 64 columns, scheme is <{s.n},{s.m},{s.p}>")
    out = [MAGIC, struct.pack("<4I", s.n, s.m, s.p, s.rank)]
    for prod in s.products:
        out.append(prod.alpha.packed_bytes())
        out.append(prod.beta.packed_bytes())
        out.append(prod.gamma.packed_bytes())
    return b"".join(out)


def read_canonical(data: bytes) -> Scheme:
    if data[:5] != MAGIC:
        raise CanonicalFormatError(f"bad magic {data[:5]!r}, expected {MAGIC!r}")
    if len(data) < 21:
        raise CanonicalFormatError("truncated header")
    n, m, p, rank = struct.unpack_from("<4I", data, 5)
    if min(n, m, p) < 1:
        raise CanonicalFormatError(f"invalid dimensions <{n},{m},{p}>")
    if m > 64 or p > 64:
        raise CanonicalFormatError(f"mask width out of range for <{n},{m},{p}>")
    expected = 21 + rank * (n + m + n) * 8
    if len(data) < expected:
        raise CanonicalFormatError(
            f"truncated payload: {len(data)} bytes, expected {expected}")
    if len(data) > expected:
        raise CanonicalFormatError(
            f"{len(data) - expected} trailing bytes after payload")

    def rows(offset: int, count: int, cols: int) -> tuple[list[int], int]:
        vals = []
        for _ in range(count):
            word = int.from_bytes(data[offset:offset + 8], "little")
            if word >> cols:
                raise CanonicalFormatError(
                    f"nonzero padding bits in row word at offset {offset}")
            vals.append(word)
            offset += 8
        return vals, offset

    pos = 21
    products = []
    for _ in range(rank):
        arows, pos = rows(pos, n, m)
        brows, pos = rows(pos, m, p)
        grows, pos = rows(pos, n, p)
        products.append(Product(BitMatrix(n, m, arows), BitMatrix(m, p, brows),
                                BitMatrix(n, p, grows)))
    return Scheme(n, m, p, tuple(products))


def load_scheme(path) -> Scheme:
    """Read a scheme file in either format (sniffed by the binary magic)."""
    with open(path, "rb") as f:
        data = f.read()
    if data[:5] == MAGIC:
        return read_canonical(data)
    return parse_expression(data.decode("utf-8"))


def save_scheme(path, s: Scheme, fmt: str = "expr") -> None:
    if fmt == "expr":
        with open(path, "w", encoding="utf-8") as f:
            f.write(serialize_expression(s))
    elif fmt == "canonical":
        with open(path, "wb") as f:
            f.write(write_canonical(s))
    else:
        raise ValueError(f"unknown format {fmt!r} (expr or canonical)")
