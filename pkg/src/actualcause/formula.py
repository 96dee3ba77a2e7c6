"""Event formulas and causal formulas: AST, parser, printer, semantics.

Concrete syntax::

    event := VAR '=' VALUE
    phi   := phi '|' phi | phi '&' phi | '!' phi | '(' phi ')' | event
    basic := '[' [VAR '<-' VALUE {',' VAR '<-' VALUE}] ']' '(' phi ')'
    psi   := psi '|' psi | psi '&' psi | '!' psi | '(' psi ')' | basic

Precedence is ``!`` over ``&`` over ``|``. A chain such as ``a | b | c``
becomes one n-ary node; explicit parentheses keep their grouping.
"""

from dataclasses import dataclass, field

from ._lex import TokenStream, tokenize
from .errors import ParseError, SignatureError
from .model import intervene, solve, token

__all__ = [
    "Event",
    "Not",
    "And",
    "Or",
    "Basic",
    "parse_event_formula",
    "parse_causal_formula",
    "parse_candidate",
    "to_text",
    "events",
    "eval_event",
    "check_event_formula",
    "satisfies",
]


@dataclass(frozen=True)
class Event:
    var: str
    value: str
    pos: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "value", token(self.value))


@dataclass(frozen=True)
class Not:
    arg: object
    pos: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class And:
    args: tuple
    pos: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Or:
    args: tuple
    pos: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Basic:
    """``[Y1<-y1, ..., Yk<-yk](body)``; ``intervention`` is a tuple of pairs."""

    intervention: tuple
    body: object
    pos: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "intervention", tuple((v, token(x)) for v, x in self.intervention))

    @property
    def assignment(self):
        return dict(self.intervention)


class _Parser:
    def __init__(self, text):
        self.ts = TokenStream(tokenize(text))

    def chain(self, leaf):
        return self._or(leaf)

    def _or(self, leaf):
        first = self.ts.peek
        args = [self._and(leaf)]
        while self.ts.accept("|"):
            args.append(self._and(leaf))
        return args[0] if len(args) == 1 else Or(tuple(args), pos=(first.line, first.column))

    def _and(self, leaf):
        first = self.ts.peek
        args = [self._not(leaf)]
        while self.ts.accept("&"):
            args.append(self._not(leaf))
        return args[0] if len(args) == 1 else And(tuple(args), pos=(first.line, first.column))

    def _not(self, leaf):
        tok = self.ts.accept("!")
        if tok:
            return Not(self._not(leaf), pos=(tok.line, tok.column))
        if self.ts.peek.is_op("("):
            self.ts.next()
            node = self._or(leaf)
            self.ts.expect(")")
            return node
        return leaf()

    def event(self):
        tok = self.ts.expect_atom("variable")
        self.ts.expect("=")
        value = self.ts.expect_atom("value")
        return Event(tok.text, value.text, pos=(tok.line, tok.column))

    def basic(self):
        ts = self.ts
        if not ts.peek.is_op("["):
            raise ts.error("expected '[' starting a basic causal formula")
        open_tok = ts.next()
        pairs = []
        seen = set()
        if not ts.accept("]"):
            while True:
                var = ts.expect_atom("variable")
                ts.expect("<-")
                val = ts.expect_atom("value")
                if var.text in seen:
                    raise ts.error(f"{var.text} intervened twice", var)
                seen.add(var.text)
                pairs.append((var.text, val.text))
                if ts.accept("]"):
                    break
                ts.expect(",")
        ts.expect("(")
        body = self._or(self.event)
        ts.expect(")")
        return Basic(tuple(pairs), body, pos=(open_tok.line, open_tok.column))


def parse_event_formula(text):
    """Parse a boolean combination of primitive events."""
    p = _Parser(text)
    node = p.chain(p.event)
    p.ts.expect_eof()
    return node


def parse_causal_formula(text):
    """Parse a boolean combination of basic causal formulas ``[Y<-y](phi)``."""
    p = _Parser(text)
    node = p.chain(p.basic)
    p.ts.expect_eof()
    return node


def parse_candidate(text):
    """Parse a cause candidate ``X1=x1 & X2=x2`` into an ordered dict."""
    node = parse_event_formula(text)
    leaves = node.args if isinstance(node, And) else (node,)
    out = {}
    for leaf in leaves:
        if not isinstance(leaf, Event):
            line, col = leaf.pos or (1, 1)
            raise ParseError("a cause must be a conjunction of primitive events", line, col)
        if leaf.var in out:
            line, col = leaf.pos or (1, 1)
            raise ParseError(f"{leaf.var} appears twice in the cause", line, col)
        out[leaf.var] = leaf.value
    return out


def to_text(node):
    """Print a formula so that parsing the text gives back an equal AST."""
    if isinstance(node, Event):
        return f"{node.var}={node.value}"
    if isinstance(node, Basic):
        iv = ", ".join(f"{v}<-{x}" for v, x in node.intervention)
        return f"[{iv}]({to_text(node.body)})"
    if isinstance(node, Not):
        return f"!({to_text(node.arg)})"
    if isinstance(node, And):
        return " & ".join(_wrap(a, (And, Or)) for a in node.args)
    if isinstance(node, Or):
        return " | ".join(_wrap(a, (Or,)) for a in node.args)
    raise TypeError(f"not a formula node: {node!r}")


def _wrap(node, kinds):
    text = to_text(node)
    return f"({text})" if isinstance(node, kinds) else text


def events(node):
    """All primitive events in ``node`` (including inside basic formulas)."""
    if isinstance(node, Event):
        yield node
    elif isinstance(node, Basic):
        yield from events(node.body)
    elif isinstance(node, Not):
        yield from events(node.arg)
    else:
        for a in node.args:
            yield from events(a)


def eval_event(world, phi):
    """Truth of event formula ``phi`` in ``world`` (``{var: token}``)."""
    if isinstance(phi, Event):
        try:
            return world[phi.var] == phi.value
        except KeyError:
            raise SignatureError(f"world does not assign {phi.var}") from None
    if isinstance(phi, Not):
        return not eval_event(world, phi.arg)
    if isinstance(phi, And):
        return all([eval_event(world, a) for a in phi.args])
    if isinstance(phi, Or):
        return any([eval_event(world, a) for a in phi.args])
    raise TypeError(f"not an event formula: {phi!r}")


def check_event_formula(model, phi):
    """Raise SignatureError if ``phi`` mentions anything outside ``model``."""
    sig = model.signature
    for ev in events(phi):
        if sig.is_exogenous(ev.var):
            raise SignatureError(f"primitive event on exogenous variable {ev.var}")
        if not sig.is_endogenous(ev.var):
            raise SignatureError(f"unknown variable {ev.var}")
        if ev.value not in sig.domain(ev.var):
            raise SignatureError(f"value {ev.value} not in domain of {ev.var}")


def _check_causal(model, psi):
    if isinstance(psi, Basic):
        model.check_assignment(psi.assignment)
        check_event_formula(model, psi.body)
    elif isinstance(psi, Not):
        _check_causal(model, psi.arg)
    elif isinstance(psi, (And, Or)):
        for a in psi.args:
            _check_causal(model, a)
    else:
        raise TypeError(f"not a causal formula: {psi!r}")


def satisfies(model, context, psi):
    """Whether ``(model, context)`` satisfies causal formula ``psi``."""
    _check_causal(model, psi)
    return _sat(model, context, psi)


def _sat(model, context, psi):
    if isinstance(psi, Basic):
        return eval_event(solve(intervene(model, psi.assignment), context), psi.body)
    if isinstance(psi, Not):
        return not _sat(model, context, psi.arg)
    if isinstance(psi, And):
        return all([_sat(model, context, a) for a in psi.args])
    return any([_sat(model, context, a) for a in psi.args])
