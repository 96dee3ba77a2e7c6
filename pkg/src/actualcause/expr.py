"""Expression bodies for structural equations.

Operators, loosest first::

    or  |  and  |  not  |  == != < <= > >=  |  + -  |  unary -

plus the calls ``ite(c, a, b)``, ``min(a, ...)`` and ``max(a, ...)``.
An atom that names a declared parent reads that parent's value; any other
atom is a literal value (integers are numeric, everything else symbolic).
"""

from dataclasses import dataclass

from ._lex import TokenStream, tokenize
from .errors import ParseError

KEYWORDS = frozenset({"and", "or", "not", "ite", "min", "max"})


class ExprError(ValueError):
    """Runtime type error while evaluating an expression body."""


@dataclass(frozen=True)
class Lit:
    value: object


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    arg: object


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple


def atom_value(token):
    """Interpret a value token: integers become ints, the rest stay strings."""
    if token.isdigit():
        return int(token)
    return token


def parse_expr(text, parents, line=1, column=1, source=None):
    parents = frozenset(parents)
    ts = TokenStream(tokenize(text, line, column, source=source), source)
    node = _Parser(ts, parents).parse_or()
    ts.expect_eof()
    return node


class _Parser:
    _CMP = ("==", "!=", "<", "<=", ">", ">=")

    def __init__(self, ts, parents):
        self.ts = ts
        self.parents = parents

    def _keyword(self, word):
        tok = self.ts.peek
        if tok.kind == "atom" and tok.text == word:
            self.ts.next()
            return True
        return False

    def parse_or(self):
        node = self.parse_and()
        while self._keyword("or"):
            node = Binary("or", node, self.parse_and())
        return node

    def parse_and(self):
        node = self.parse_not()
        while self._keyword("and"):
            node = Binary("and", node, self.parse_not())
        return node

    def parse_not(self):
        if self._keyword("not"):
            return Unary("not", self.parse_not())
        return self.parse_cmp()

    def parse_cmp(self):
        node = self.parse_add()
        tok = self.ts.accept(*self._CMP)
        if tok:
            node = Binary(tok.text, node, self.parse_add())
        return node

    def parse_add(self):
        node = self.parse_unary()
        while True:
            tok = self.ts.accept("+", "-")
            if not tok:
                return node
            node = Binary(tok.text, node, self.parse_unary())

    def parse_unary(self):
        if self.ts.accept("-"):
            return Unary("-", self.parse_unary())
        return self.parse_atom()

    def parse_atom(self):
        ts = self.ts
        if ts.accept("("):
            node = self.parse_or()
            ts.expect(")")
            return node
        tok = ts.expect_atom("operand")
        word = tok.text
        if word in ("ite", "min", "max"):
            ts.expect("(")
            args = [self.parse_or()]
            while ts.accept(","):
                args.append(self.parse_or())
            ts.expect(")")
            if word == "ite" and len(args) != 3:
                raise ParseError("ite takes exactly 3 arguments", tok.line, tok.column, ts.source)
            return Call(word, tuple(args))
        if word in KEYWORDS:
            raise ts.error(f"unexpected keyword {word!r}", tok)
        if word in self.parents:
            return Ref(word)
        return Lit(atom_value(word))


def _truth(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int) and v in (0, 1):
        return bool(v)
    raise ExprError(f"{v!r} is not a truth value")


def _num(v):
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    raise ExprError(f"{v!r} is not a number")


def _norm(v):
    # bools compare equal to 1/0, matching their rendering in {0,1} domains
    return int(v) if isinstance(v, bool) else v


def evaluate(node, env):
    """Evaluate ``node`` with parent values ``env`` (name -> value token)."""
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Ref):
        return atom_value(env[node.name])
    if isinstance(node, Unary):
        v = evaluate(node.arg, env)
        return (not _truth(v)) if node.op == "not" else -_num(v)
    if isinstance(node, Binary):
        op = node.op
        if op == "and":
            return _truth(evaluate(node.left, env)) and _truth(evaluate(node.right, env))
        if op == "or":
            return _truth(evaluate(node.left, env)) or _truth(evaluate(node.right, env))
        a = evaluate(node.left, env)
        b = evaluate(node.right, env)
        if op == "==":
            return _norm(a) == _norm(b)
        if op == "!=":
            return _norm(a) != _norm(b)
        if op == "+":
            return _num(a) + _num(b)
        if op == "-":
            return _num(a) - _num(b)
        a, b = _num(a), _num(b)
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
    if isinstance(node, Call):
        if node.fn == "ite":
            c, a, b = node.args
            return evaluate(a, env) if _truth(evaluate(c, env)) else evaluate(b, env)
        vals = [_num(evaluate(a, env)) for a in node.args]
        return min(vals) if node.fn == "min" else max(vals)
    raise TypeError(f"not an expression node: {node!r}")


def references(node):
    """Names of parents the expression actually mentions."""
    if isinstance(node, Ref):
        return {node.name}
    if isinstance(node, Unary):
        return references(node.arg)
    if isinstance(node, Binary):
        return references(node.left) | references(node.right)
    if isinstance(node, Call):
        out = set()
        for a in node.args:
            out |= references(a)
        return out
    return set()


def to_token(value, domain):
    """Render an evaluated value as a token of ``domain``.

    Booleans become '1'/'0' only when the domain is exactly {0, 1}.
    Returns None when the value has no rendering in the domain.
    """
    if isinstance(value, bool):
        if set(domain) != {"0", "1"}:
            return None
        value = int(value)
    token = str(value)
    return token if token in domain else None
