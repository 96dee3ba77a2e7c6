"""Reader and writer for the line-oriented model text format.

Example::

    model "forest_fire_disjunctive"
    exo U in {u00, u10, u01, u11}
    var ML1 in {0, 1}
    var ML2 in {0, 1}
    var FB in {0, 1}
    eq ML1(U) = U == u10 or U == u11
    eq ML2(U) = U == u01 or U == u11
    eq FB(U, ML1, ML2) = ML1 or ML2

Table bodies (``eq FB(ML1, ML2) = table { (0,0)->0; (0,1)->1; ... }``) may
span several lines; a statement continues until its braces balance.
"""

from pathlib import Path

from . import expr as _expr
from ._lex import TokenStream, tokenize
from .errors import ParseError
from .model import CausalModel, Equation, Signature


def _strip_comment(line):
    in_string = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_string = not in_string
        elif ch == "#" and not in_string:
            return line[:i]
    return line


def _statements(text, source):
    """Yield (first line number, statement text) pairs."""
    buf, start, depth = [], None, 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not buf and not line.strip():
            continue
        if not buf:
            start = lineno
        buf.append(line)
        depth += line.count("{") - line.count("}")
        if depth < 0:
            raise ParseError("unbalanced '}'", lineno, 1, source)
        if depth == 0:
            yield start, "\n".join(buf)
            buf = []
    if buf:
        raise ParseError("unterminated '{'", start, 1, source)


def parse_model(text, source=None):
    """Parse model text into a :class:`CausalModel` (not yet validated)."""
    name = None
    exo, endo, domains = [], [], {}
    equations = []
    for lineno, stmt in _statements(text, source):
        ts = TokenStream(tokenize(stmt, lineno, source=source), source)
        head = ts.expect_atom("statement keyword")
        kw = head.text
        if kw == "model":
            tok = ts.next()
            if tok.kind not in ("string", "atom"):
                raise ts.error("expected model name", tok)
            name = tok.text.strip('"')
            ts.expect_eof()
        elif kw in ("exo", "var"):
            var = ts.expect_atom("variable name").text
            if var in domains:
                raise ts.error(f"variable {var} declared twice", head)
            in_kw = ts.expect_atom("'in'")
            if in_kw.text != "in":
                raise ts.error("expected 'in'", in_kw)
            domains[var] = _parse_value_set(ts)
            ts.expect_eof()
            (exo if kw == "exo" else endo).append(var)
        elif kw == "eq":
            equations.append(_parse_equation(ts, stmt, lineno, source))
        else:
            raise ts.error(f"unknown statement {kw!r}", head)
    if name is None:
        name = Path(source).stem if source else "model"
    return CausalModel(Signature(tuple(exo), tuple(endo), domains), tuple(equations), name)


def _parse_value_set(ts):
    ts.expect("{")
    values = []
    if not ts.accept("}"):
        values.append(ts.expect_atom("value").text)
        while ts.accept(","):
            values.append(ts.expect_atom("value").text)
        ts.expect("}")
    return tuple(values)


def _parse_equation(ts, stmt, lineno, source):
    target = ts.expect_atom("variable name").text
    pars = []
    if ts.accept("("):
        if not ts.accept(")"):
            pars.append(ts.expect_atom("parent name").text)
            while ts.accept(","):
                pars.append(ts.expect_atom("parent name").text)
            ts.expect(")")
    eq_tok = ts.expect("=")
    tok = ts.peek
    if tok.kind == "atom" and tok.text == "table" and ts.tokens[ts.i + 1].is_op("{"):
        ts.next()
        ts.expect("{")
        rows = []
        while not ts.accept("}"):
            ts.expect("(")
            key = []
            if not ts.accept(")"):
                key.append(ts.expect_atom("value").text)
                while ts.accept(","):
                    key.append(ts.expect_atom("value").text)
                ts.expect(")")
            ts.expect("->")
            rows.append((tuple(key), ts.expect_atom("value").text))
            if not ts.accept(";"):
                ts.expect("}")
                break
        ts.expect_eof()
        return Equation(target, tuple(pars), table=tuple(rows))
    # expression body: everything after '=' on the statement
    lines = stmt.split("\n")
    offset = sum(len(line) + 1 for line in lines[: eq_tok.line - lineno]) + eq_tok.column
    body = stmt[offset:]
    if not body.strip():
        raise ts.error("missing equation body", tok)
    _expr.parse_expr(body, pars, eq_tok.line, eq_tok.column + 1, source)
    return Equation.from_expr(target, pars, " ".join(body.split()))


def load_model(path):
    path = Path(path)
    return parse_model(path.read_text(encoding="utf-8"), source=str(path))


def format_model(model):
    """Render ``model`` in the text format; ``parse_model`` reads it back equal."""
    sig = model.signature
    out = [f'model "{model.name}"']
    for u in sig.exogenous:
        out.append(f"exo {u} in {{{', '.join(sig.domains[u])}}}")
    for v in sig.endogenous:
        out.append(f"var {v} in {{{', '.join(sig.domains[v])}}}")
    for eq in model.equations:
        head = f"eq {eq.target}({', '.join(eq.parents)}) ="
        if eq.expr is not None:
            out.append(f"{head} {eq.expr}")
        else:
            out.append(f"{head} table {{")
            for key, val in eq.table:
                out.append(f"  ({', '.join(key)}) -> {val};")
            out.append("}")
    return "\n".join(out) + "\n"
