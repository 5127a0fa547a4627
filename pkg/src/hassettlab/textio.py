"""Polynomial text format, example files and JSON report helpers.

Grammar (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coef ['*'] factor ('*'? factor)*  |  factor ('*'? factor)*  |  coef
    factor := var ['^' digits]
    var    := any variable name of the ring, e.g. x_0 or t_2
    coef   := digits
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .polyalg.ring import Poly, PolyRing

SCHEMA_VERSION = "v1"


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col
        self.pos = pos


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.pos = 0
        # longest names first so that x_1 never shadows x_10
        self.names = sorted(ring.names, key=len, reverse=True)

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def digits(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected digits")
        return int(self.text[start:self.pos])

    def var(self) -> int | None:
        self.skip()
        for nm in self.names:
            if self.text.startswith(nm, self.pos):
                end = self.pos + len(nm)
                # reject prefixes of longer identifiers such as x_12 in a 6-variable ring
                if end < len(self.text) and self.text[end].isdigit():
                    continue
                self.pos = end
                return self.ring.index(nm)
        return None

    def term(self) -> tuple[tuple[int, ...], int]:
        exp = [0] * self.ring.nvars
        coef = 1
        seen = False
        if self.peek().isdigit():
            coef = self.digits()
            seen = True
            if self.peek() == "*":
                self.pos += 1
                if self.var_ahead() is None:
                    self.error("expected a variable after '*'")
        while True:
            i = self.var()
            if i is None:
                if self.peek().isalpha() or self.peek() == "_":
                    self.error("unknown variable")
                break
            seen = True
            k = 1
            if self.peek() == "^":
                self.pos += 1
                if not self.peek().isdigit():
                    self.error("malformed exponent")
                k = self.digits()
            exp[i] += k
            if self.peek() == "*":
                self.pos += 1
                if self.var_ahead() is None:
                    self.error("expected a variable after '*'")
        if not seen:
            self.error("expected a term")
        return tuple(exp), coef

    def var_ahead(self) -> int | None:
        save = self.pos
        i = self.var()
        self.pos = save
        return i

    def expr(self) -> Poly:
        terms: dict[tuple[int, ...], int] = {}
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            e, c = self.term()
            terms[e] = terms.get(e, 0) + sign * c
            nxt = self.peek()
            if nxt == "":
                break
            if nxt not in "+-":
                self.error(f"unexpected character {nxt!r}")
            sign = -1 if nxt == "-" else 1
            self.pos += 1
        return Poly(self.ring, terms)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial", text, 0)
    if text == "0":
        return ring.zero()
    return _Parser(text, ring).expr()


def signed_residue(c: int, p: int) -> int:
    c %= p
    return c - p if c > p // 2 else c


def _format_monomial(e, names) -> str:
    parts = []
    for nm, k in zip(names, e):
        if k == 1:
            parts.append(nm)
        elif k > 1:
            parts.append(f"{nm}^{k}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Canonical text: descending in the ring order, signed residues."""
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        s = signed_residue(c, f.ring.p)
        mono = _format_monomial(e, f.ring.names)
        mag = abs(s)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if s < 0:
            out.append("-" + body)
        else:
            out.append(("+" if out else "") + body)
    return "".join(out)


# -- files ------------------------------------------------------------------

def p5_ring(p: int = 31) -> PolyRing:
    return PolyRing.indexed("x", 6, p)


def data_dir() -> Path:
    return Path(str(resources.files("hassettlab") / "data"))


def examples_dir() -> Path:
    return data_dir() / "examples"


def load_schema(name: str) -> dict:
    return json.loads((data_dir() / "schema" / f"{name}.json").read_text())


def validate(obj: Any, schema_name: str) -> None:
    import jsonschema
    jsonschema.validate(obj, load_schema(schema_name))


def read_example_file(path: str | Path) -> dict:
    data = json.loads(Path(path).read_text())
    validate(data, "example")
    return data


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
