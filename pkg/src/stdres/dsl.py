"""Text input: polynomials, ring headers and module blocks.

Grammar (whitespace insignificant, ``#`` starts a comment)::

    ring <name> = QQ[<v1>,...,<vk>] order grevlex;
    module <name> twists (d1,...,dr) relations { <poly>,...,<poly>; ... };
    command <word> [<word>];          # optional
    option <key> = <int or word>;     # optional, repeatable

Polynomials use integer and ``p/q`` literals, identifiers, ``+ - * ^`` and
parentheses.  Juxtaposition is not multiplication.
"""

import re
from dataclasses import dataclass, field as dc_field

from .field import QQ
from .ring import PolyRing

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<num>\d+) | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*^/()\[\]{},;=])
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        loc = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(loc + message)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, m.start() - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


class _Stream:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, text):
        if self.peek().text == text and self.peek().kind in ("op", "ident"):
            return self.next()
        return None

    def expect(self, text, what=None):
        t = self.peek()
        if t.text != text:
            found = t.text or "end of input"
            raise ParseError(f"expected {what or repr(text)}, found {found!r}", t.line, t.col)
        return self.next()

    def expect_kind(self, kind, what):
        t = self.peek()
        if t.kind != kind:
            found = t.text or "end of input"
            raise ParseError(f"expected {what}, found {found!r}", t.line, t.col)
        return self.next()


def _expr(s, ring):
    out = _term(s, ring)
    while s.peek().text in ("+", "-") and s.peek().kind == "op":
        op = s.next().text
        rhs = _term(s, ring)
        out = out + rhs if op == "+" else out - rhs
    return out


def _term(s, ring):
    out = _unary(s, ring)
    while s.accept("*"):
        out = out * _unary(s, ring)
    return out


def _unary(s, ring):
    if s.accept("-"):
        return -_unary(s, ring)
    if s.accept("+"):
        return _unary(s, ring)
    return _power(s, ring)


def _power(s, ring):
    base = _atom(s, ring)
    if s.accept("^"):
        t = s.expect_kind("num", "a non-negative integer exponent")
        base = base ** int(t.text)
    return base


def _atom(s, ring):
    t = s.peek()
    if t.kind == "num":
        s.next()
        num = int(t.text)
        if s.accept("/"):
            d = s.expect_kind("num", "a denominator")
            if int(d.text) == 0:
                raise ParseError("zero denominator", d.line, d.col)
            return ring.constant(QQ(num) / int(d.text))
        return ring.constant(num)
    if t.kind == "ident":
        s.next()
        if t.text not in ring.names:
            raise ParseError(f"unknown variable {t.text!r}", t.line, t.col)
        return ring.var(t.text)
    if s.accept("("):
        inner = _expr(s, ring)
        s.expect(")")
        return inner
    raise ParseError(f"expected a polynomial, found {t.text or 'end of input'!r}", t.line, t.col)


def parse_polynomial(text, ring):
    s = _Stream(tokenize(text))
    p = _expr(s, ring)
    t = s.peek()
    if t.kind != "eof":
        raise ParseError(f"unexpected {t.text!r} after polynomial", t.line, t.col)
    return p


def _int(s):
    neg = bool(s.accept("-"))
    t = s.expect_kind("num", "an integer")
    return -int(t.text) if neg else int(t.text)


def _ring_decl(s):
    s.expect("ring")
    name = s.expect_kind("ident", "a ring name").text
    s.expect("=")
    fld = s.expect_kind("ident", "a coefficient field")
    if fld.text != "QQ":
        raise ParseError(f"unsupported coefficient field {fld.text!r}", fld.line, fld.col)
    s.expect("[")
    names = [s.expect_kind("ident", "a variable name")]
    while s.accept(","):
        names.append(s.expect_kind("ident", "a variable name"))
    s.expect("]")
    seen = set()
    for t in names:
        if t.text in seen:
            raise ParseError(f"duplicate variable {t.text!r}", t.line, t.col)
        seen.add(t.text)
    s.expect("order")
    o = s.expect_kind("ident", "a term order")
    if o.text not in ("grevlex", "lex"):
        raise ParseError(f"unknown term order {o.text!r}", o.line, o.col)
    s.expect(";")
    return name, PolyRing([t.text for t in names], order=o.text, homogeneous=True)


def _module_decl(s, ring):
    from .modules import ModulePresentation
    start = s.expect("module")
    name = s.expect_kind("ident", "a module name").text
    s.expect("twists")
    s.expect("(")
    twists = []
    if not s.accept(")"):
        twists.append(_int(s))
        while s.accept(","):
            twists.append(_int(s))
        s.expect(")")
    s.expect("relations")
    s.expect("{")
    columns = []
    while not s.accept("}"):
        first = s.peek()
        col = [_expr(s, ring)]
        while s.accept(","):
            col.append(_expr(s, ring))
        s.expect(";", "';' closing a relation")
        if len(col) != len(twists):
            raise ParseError(f"relation has {len(col)} entries, expected {len(twists)}",
                             first.line, first.col)
        columns.append((first, col))
    s.expect(";")
    for tok, col in columns:
        degs = set()
        for t, p in zip(twists, col):
            if not p:
                continue
            if not p.is_homogeneous():
                raise ParseError(f"inhomogeneous relation entry {p}", tok.line, tok.col)
            degs.add(p.degree() - t)
        if len(degs) > 1:
            raise ParseError("inhomogeneous relation: entries disagree with the twists",
                             tok.line, tok.col)
    try:
        return name, ModulePresentation.graded(ring, twists, [c for _, c in columns])
    except ValueError as exc:
        raise ParseError(str(exc), start.line, start.col) from None


@dataclass
class JobSpec:
    ring_name: str
    ring: PolyRing
    module_name: str
    module: object
    command: str = "resolve"
    args: tuple = ()
    options: dict = dc_field(default_factory=dict)

    def to_text(self):
        """Canonical serialisation; ``parse(spec.to_text())`` reproduces it."""
        lines = [f"ring {self.ring_name} = QQ[{','.join(self.ring.names)}] order {self.ring.order.kind};"]
        m = self.module
        twists = ",".join(str(t) for t in m.target.twists)
        cols = " ".join(", ".join(str(p) for p in col) + ";" for col in m.columns)
        lines.append(f"module {self.module_name} twists ({twists}) relations {{ {cols} }};".replace("{  }", "{ }"))
        lines.append("command " + " ".join((self.command,) + tuple(self.args)) + ";")
        for k in sorted(self.options):
            lines.append(f"option {k} = {self.options[k]};")
        return "\n".join(lines) + "\n"


def parse(text):
    """Parse a job file.  Raises ParseError with a location on bad input."""
    s = _Stream(tokenize(text))
    if s.peek().kind == "eof":
        raise ParseError("no ring declaration", 1, 1)
    if s.peek().text != "ring":
        t = s.peek()
        raise ParseError("no ring declaration", t.line, t.col)
    ring_name, ring = _ring_decl(s)
    if s.peek().text != "module":
        t = s.peek()
        raise ParseError("no module declaration", t.line, t.col)
    module_name, module = _module_decl(s, ring)
    command, args, options = "resolve", (), {}
    while s.peek().kind != "eof":
        t = s.peek()
        if s.accept("command"):
            command = s.expect_kind("ident", "a command").text
            rest = []
            while not s.accept(";"):
                rest.append(s.expect_kind("ident", "a command argument").text)
            args = tuple(rest)
        elif s.accept("option"):
            key = s.expect_kind("ident", "an option name").text
            s.expect("=")
            v = s.peek()
            if v.kind == "num" or v.text == "-":
                val = _int(s)
            else:
                val = s.expect_kind("ident", "an option value").text
            s.expect(";")
            options[key] = val
        else:
            raise ParseError(f"unexpected {t.text!r}", t.line, t.col)
    return JobSpec(ring_name, ring, module_name, module, command, args, options)
