"""Finite recursive structural causal models.

A model is a signature (exogenous and endogenous variables with finite,
ordered domains) plus one structural equation per endogenous variable.
Values are carried around as string tokens; ``0``, ``1`` and ``u11`` are all
tokens, and integer-looking tokens take part in arithmetic inside expression
bodies.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from . import expr as _expr
from .errors import InvalidModelError, ModelError, ParseError, SignatureError

__all__ = [
    "Signature",
    "Equation",
    "CausalModel",
    "Finding",
    "ValidationReport",
    "validate_model",
    "lint_model",
    "parents",
    "causal_network",
    "to_dot",
    "intervene",
    "solve",
    "token",
    "parse_assignment",
]


def token(value):
    """Normalise a user-supplied value to its token form."""
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


def parse_assignment(text, sep=","):
    """Parse ``"U=u11, V=2"`` into an ordered dict of tokens.

    An empty or blank string gives an empty dict.
    """
    out = {}
    for part in text.split(sep):
        part = part.strip()
        if not part:
            continue
        name, eq, value = part.partition("=")
        name, value = name.strip(), value.strip()
        if not eq or not name or not value:
            raise ValueError(f"expected VAR=value, got {part!r}")
        if name in out:
            raise ValueError(f"variable {name} assigned twice")
        out[name] = value
    return out


@dataclass(frozen=True)
class Signature:
    exogenous: tuple
    endogenous: tuple
    domains: dict

    def __post_init__(self):
        object.__setattr__(self, "exogenous", tuple(self.exogenous))
        object.__setattr__(self, "endogenous", tuple(self.endogenous))
        object.__setattr__(
            self, "domains", {k: tuple(token(v) for v in vs) for k, vs in dict(self.domains).items()}
        )

    @property
    def variables(self):
        return self.exogenous + self.endogenous

    def domain(self, var):
        try:
            return self.domains[var]
        except KeyError:
            raise SignatureError(f"unknown variable {var}") from None

    def is_endogenous(self, var):
        return var in self._endo_set

    def is_exogenous(self, var):
        return var in self._exo_set

    @cached_property
    def _endo_set(self):
        return frozenset(self.endogenous)

    @cached_property
    def _exo_set(self):
        return frozenset(self.exogenous)


@dataclass(frozen=True)
class Equation:
    """Structural equation ``target := body(parents)``.

    Exactly one of ``table`` (rows of ``(parent values, value)``) and
    ``expr`` (expression source, see :mod:`actualcause.expr`) is set.
    """

    target: str
    parents: tuple = ()
    table: tuple = None
    expr: str = None

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        if self.table is not None:
            rows = tuple((tuple(token(v) for v in key), token(val)) for key, val in self.table)
            object.__setattr__(self, "table", rows)

    @classmethod
    def from_table(cls, target, parents, mapping):
        """Build a table equation from a dict or from ``(key, value)`` pairs.

        Keys of single-parent tables may be given bare instead of as 1-tuples.
        """
        parents = tuple(parents)
        items = mapping.items() if isinstance(mapping, dict) else mapping
        rows = []
        for key, val in items:
            if not isinstance(key, tuple):
                key = (key,)
            rows.append((key, val))
        return cls(target, parents, table=tuple(rows))

    @classmethod
    def constant(cls, target, value):
        return cls(target, (), table=(((), token(value)),))

    @classmethod
    def from_expr(cls, target, parents, source):
        return cls(target, tuple(parents), expr=source.strip())

    @cached_property
    def ast(self):
        if self.expr is None:
            return None
        return _expr.parse_expr(self.expr, self.parents)

    def evaluate(self, env, domain):
        """Output token for parent values ``env``; raises ValueError if undefined."""
        if self.table is not None:
            key = tuple(env[p] for p in self.parents)
            for k, v in self.table:
                if k == key:
                    return v
            raise ValueError(f"no table row for {self.target}{key}")
        value = _expr.evaluate(self.ast, env)
        out = _expr.to_token(value, domain)
        if out is None:
            raise ValueError(f"{self.target}: value {value!r} not in domain {{{', '.join(domain)}}}")
        return out


@dataclass(frozen=True)
class Finding:
    kind: str
    variables: tuple
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.findings

    def kinds(self):
        return [f.kind for f in self.findings]

    def __iter__(self):
        return iter(self.findings)

    def __len__(self):
        return len(self.findings)


@dataclass(frozen=True)
class CausalModel:
    signature: Signature
    equations: tuple
    name: str = "model"

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))

    @classmethod
    def build(cls, name, exogenous, endogenous, equations):
        """Convenience constructor from ``{var: domain}`` dicts (order kept)."""
        domains = {**exogenous, **endogenous}
        return cls(Signature(tuple(exogenous), tuple(endogenous), domains), tuple(equations), name)

    @property
    def exogenous(self):
        return self.signature.exogenous

    @property
    def endogenous(self):
        return self.signature.endogenous

    def domain(self, var):
        return self.signature.domain(var)

    def equation(self, var):
        try:
            return self._equation_map[var]
        except KeyError:
            raise ModelError(f"no equation for {var}") from None

    @cached_property
    def _equation_map(self):
        out = {}
        for eq in self.equations:
            out.setdefault(eq.target, eq)
        return out

    @cached_property
    def report(self):
        return validate_model(self)

    def check(self):
        """Raise InvalidModelError unless the model validates."""
        if not self.report.ok:
            raise InvalidModelError(self.report.findings)

    @cached_property
    def _compiled(self):
        # endogenous variable -> (parent names, lookup table), in topological order
        self.check()
        tables = {eq.target: (eq.parents, _tabulate(eq, self.signature)) for eq in self.equations}
        return [(v, *tables[v]) for v in self.topological_order]

    @cached_property
    def topological_order(self):
        graph = {
            eq.target: [p for p in eq.parents if self.signature.is_endogenous(p)]
            for eq in self.equations
        }
        rank = {v: i for i, v in enumerate(self.endogenous)}
        return tuple(_stable_topo(graph, rank))

    def evaluate(self, context, fixed=None):
        """Solve with ``fixed`` endogenous variables held at given tokens.

        Equivalent to ``solve(intervene(self, fixed), context)`` without
        building the submodel. ``context`` and ``fixed`` must already be
        checked token dicts.
        """
        values = dict(context)
        fixed = fixed or {}
        for var, pars, table in self._compiled:
            if var in fixed:
                values[var] = fixed[var]
            else:
                values[var] = table[tuple(values[p] for p in pars)]
        return {v: values[v] for v in self.endogenous}

    def check_context(self, context):
        """Return ``context`` as a token dict or raise SignatureError."""
        ctx = {k: token(v) for k, v in dict(context).items()}
        sig = self.signature
        for k, v in ctx.items():
            if not sig.is_exogenous(k):
                raise SignatureError(f"context assigns non-exogenous variable {k}")
            if v not in sig.domain(k):
                raise SignatureError(f"context value {k}={v} not in domain")
        missing = [u for u in sig.exogenous if u not in ctx]
        if missing:
            raise SignatureError(f"context does not assign {', '.join(missing)}")
        return {u: ctx[u] for u in sig.exogenous}

    def check_assignment(self, assignment, what="intervention"):
        """Return ``assignment`` over endogenous variables as a token dict."""
        out = {}
        sig = self.signature
        for k, v in dict(assignment).items():
            v = token(v)
            if not sig.is_endogenous(k):
                kind = "exogenous" if sig.is_exogenous(k) else "unknown"
                raise SignatureError(f"{what} on {kind} variable {k}")
            if v not in sig.domain(k):
                raise SignatureError(f"{what} value {k}={v} not in domain of {k}")
            out[k] = v
        return out


def _stable_topo(graph, rank):
    # Kahn's algorithm choosing the earliest-declared ready variable each step
    indeg = {v: 0 for v in graph}
    children = {v: [] for v in graph}
    for v, ps in graph.items():
        for p in ps:
            indeg[v] += 1
            children[p].append(v)
    ready = sorted((v for v in graph if indeg[v] == 0), key=rank.get)
    out = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        for c in children[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
                ready.sort(key=rank.get)
    return out


def _tabulate(eq, sig):
    domain = sig.domain(eq.target)
    if eq.table is not None:
        return dict(eq.table)
    table = {}
    for combo in itertools.product(*(sig.domain(p) for p in eq.parents)):
        table[combo] = eq.evaluate(dict(zip(eq.parents, combo)), domain)
    return table


def validate_model(model):
    """Check every model invariant and return a ValidationReport.

    Never raises on malformed input; problems come back as findings.
    """
    findings = []

    def add(kind, variables, message):
        findings.append(Finding(kind, tuple(variables), message))

    sig = model.signature
    exo, endo = sig.exogenous, sig.endogenous
    for var in sorted(set(exo) & set(endo)):
        add("signature", [var], f"{var} is both exogenous and endogenous")
    for group, label in ((exo, "exogenous"), (endo, "endogenous")):
        seen = set()
        for var in group:
            if var in seen:
                add("signature", [var], f"{label} variable {var} declared twice")
            seen.add(var)
    if not endo:
        add("signature", [], "no endogenous variables")
    declared = set(exo) | set(endo)
    for var in exo + endo:
        dom = sig.domains.get(var)
        if dom is None:
            add("signature", [var], f"{var} has no domain")
        elif not dom:
            add("signature", [var], f"{var} has an empty domain")
        elif len(set(dom)) != len(dom):
            add("signature", [var], f"domain of {var} repeats a value")
    for var in sig.domains:
        if var not in declared:
            add("signature", [var], f"domain given for undeclared variable {var}")

    seen = set()
    usable = []
    for eq in model.equations:
        t = eq.target
        if t in sig.exogenous:
            add("exogenous-equation", [t], f"equation given for exogenous variable {t}")
            continue
        if t not in endo:
            add("unknown-variable", [t], f"equation for undeclared variable {t}")
            continue
        if t in seen:
            add("duplicate-equation", [t], f"more than one equation for {t}")
            continue
        seen.add(t)
        usable.append(eq)
    for var in endo:
        if var not in seen:
            add("missing-equation", [var], f"no equation for {var}")

    doms = sig.domains
    for eq in usable:
        t = eq.target
        bad_parents = False
        if len(set(eq.parents)) != len(eq.parents):
            add("duplicate-parent", [t], f"{t} lists a parent twice")
            bad_parents = True
        for p in eq.parents:
            if p == t:
                add("cycle", [t], f"{t} lists itself as a parent")
                bad_parents = True
            elif p not in declared:
                add("unknown-parent", [t, p], f"{t} depends on undeclared variable {p}")
                bad_parents = True
            elif not doms.get(p):
                bad_parents = True
        if bad_parents or not doms.get(t):
            continue
        if (eq.table is None) == (eq.expr is None):
            add("bad-body", [t], f"equation for {t} needs exactly one of table or expression")
            continue
        if eq.table is not None:
            _check_table(eq, doms, add)
        else:
            _check_expr(eq, doms, add)

    graph = nx.DiGraph()
    graph.add_nodes_from(endo)
    for eq in usable:
        for p in eq.parents:
            if p in seen and p != eq.target:
                graph.add_edge(p, eq.target)
    rank = {v: i for i, v in enumerate(endo)}
    for comp in nx.strongly_connected_components(graph):
        if len(comp) > 1:
            members = sorted(comp, key=rank.get)
            add("cycle", members, "cyclic dependency among {" + ", ".join(members) + "}")
    return ValidationReport(tuple(findings))


def _check_table(eq, doms, add):
    t = eq.target
    expected = set(itertools.product(*(doms[p] for p in eq.parents)))
    seen = set()
    for key, val in eq.table:
        if len(key) != len(eq.parents):
            add("bad-row", [t], f"row {key} for {t} has {len(key)} entries, expected {len(eq.parents)}")
            continue
        if key not in expected:
            add("out-of-domain", [t], f"row {key} for {t} uses a value outside a parent domain")
            continue
        if key in seen:
            add("duplicate-row", [t], f"row {key} for {t} appears more than once")
        seen.add(key)
        if val not in doms[t]:
            add("out-of-domain", [t], f"{t} row {key} yields {val}, not in domain of {t}")
    missing = expected - seen
    if missing:
        example = min(missing)
        add("partial-table", [t], f"table for {t} misses {len(missing)} row(s), e.g. {example}")


def _check_expr(eq, doms, add):
    t = eq.target
    try:
        eq.ast
    except ParseError as e:
        add("expression-error", [t], f"cannot parse equation for {t}: {e}")
        return
    for combo in itertools.product(*(doms[p] for p in eq.parents)):
        try:
            eq.evaluate(dict(zip(eq.parents, combo)), doms[t])
        except _expr.ExprError as e:
            add("expression-error", [t], f"{t} at {combo}: {e}")
            return
        except ValueError as e:
            add("out-of-domain", [t], f"{t} at {combo}: {e}")
            return


def lint_model(model):
    """Warnings that do not make a model invalid.

    Currently: declared parents the equation never actually reads
    (vacuous parents). Requires a valid model.
    """
    model.check()
    warnings = []
    sig = model.signature
    for eq in model.equations:
        table = _tabulate(eq, sig)
        for i, p in enumerate(eq.parents):
            groups = {}
            for key, val in table.items():
                rest = key[:i] + key[i + 1:]
                groups.setdefault(rest, set()).add(val)
            if all(len(vals) == 1 for vals in groups.values()):
                warnings.append(
                    Finding("vacuous-parent", (eq.target, p), f"{eq.target} never depends on declared parent {p}")
                )
    return warnings


def parents(model, x):
    """Declared parents of endogenous variable ``x``, in declaration order."""
    if not model.signature.is_endogenous(x):
        raise ModelError(f"no equation for {x}")
    return list(model.equation(x).parents)


def causal_network(model):
    """Directed graph over all variables with an edge for every declared parent."""
    model.check()
    g = nx.DiGraph(name=model.name)
    for u in model.exogenous:
        g.add_node(u, kind="exogenous")
    for v in model.endogenous:
        g.add_node(v, kind="endogenous")
    for v in model.endogenous:
        for p in model.equation(v).parents:
            g.add_edge(p, v)
    return g


def to_dot(model):
    """Graphviz rendering of the causal network; exogenous nodes are boxes."""
    g = causal_network(model)
    lines = [f'digraph "{model.name}" {{']
    for u in model.exogenous:
        lines.append(f'  "{u}" [shape=box];')
    for v in model.endogenous:
        lines.append(f'  "{v}" [shape=ellipse];')
    for v in model.endogenous:
        for p in model.equation(v).parents:
            lines.append(f'  "{p}" -> "{v}";')
    lines.append("}")
    assert g.number_of_edges() == sum(len(model.equation(v).parents) for v in model.endogenous)
    return "\n".join(lines) + "\n"


def intervene(model, iv):
    """The submodel with each variable in ``iv`` fixed by a constant equation."""
    iv = model.check_assignment(iv)
    if not iv:
        return model
    eqs = tuple(Equation.constant(eq.target, iv[eq.target]) if eq.target in iv else eq for eq in model.equations)
    return CausalModel(model.signature, eqs, model.name)


def solve(model, context, order=None):
    """Unique solution of ``model`` in ``context`` as a ``{var: token}`` dict.

    ``order`` optionally supplies an alternative topological order of the
    endogenous variables; any valid order yields the same world.
    """
    model.check()
    values = model.check_context(context)
    if order is None:
        return model.evaluate(values)
    sig = model.signature
    order = list(order)
    if sorted(order) != sorted(model.endogenous):
        raise ModelError("order must list every endogenous variable once")
    for v in order:
        eq = model.equation(v)
        missing = [p for p in eq.parents if p not in values]
        if missing:
            raise ModelError(f"order evaluates {v} before its parent {missing[0]}")
        values[v] = eq.evaluate(values, sig.domain(v))
    return {v: values[v] for v in model.endogenous}
