"""Groundedness of truth attributions via the graph of what they refer to.

Each node is a sentence, keyed by its code.  An edge runs from a sentence to
whatever its truth atom ``T(t)`` names: the sentence coded by the value of
``t``, or the sink ``NOT_A_SENTENCE``.  Edge polarity is the parity of the
negations around the atom (an implication's antecedent counts as one).

Classification first runs the strong Kleene valuation to its least fixed
point over the graph, with every node starting Unknown.  A root that ends up
decided is grounded.  An undecided root is paradoxical when it reaches a
cycle of odd polarity and ungrounded otherwise.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .codec import decode, encode
from .evaluation import EvalConfig, EvaluationError, FALSE, Verdict, eval_sentence, eval_term, unknown
from .syntax import (
    And, ExistsBelow, Exists, ForAll, ForAllBelow, Formula, Iff, Implies, Not, Or, TruthAtom,
    is_sentence, to_text,
)

NOT_A_SENTENCE = "not-a-sentence"
DEFAULT_BUDGET = 10_000
UNRESOLVED = "unresolved-truth-attribution"


class GroundVerdict(str, Enum):
    GROUNDED_TRUE = "GroundedTrue"
    GROUNDED_FALSE = "GroundedFalse"
    PARADOXICAL = "Paradoxical"
    UNGROUNDED = "Ungrounded"
    RESOURCE_EXCEEDED = "ResourceExceeded"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Edge:
    source: int
    target: object  # a sentence code, or NOT_A_SENTENCE
    odd: bool

    @property
    def polarity(self) -> str:
        return "odd" if self.odd else "even"


@dataclass
class ReferenceGraph:
    root: int
    nodes: dict = field(default_factory=dict)   # code -> sentence
    edges: list = field(default_factory=list)
    partial: bool = False

    def successors(self, code):
        return [e for e in self.edges if e.source == code]

    def to_dot(self) -> str:
        lines = ["digraph references {"]
        for code, phi in self.nodes.items():
            label = to_text(phi).replace("\\", "\\\\").replace('"', '\\"')
            shape = "doublecircle" if code == self.root else "box"
            lines.append(f'  "{code}" [label="{label}", shape={shape}];')
        if any(e.target == NOT_A_SENTENCE for e in self.edges):
            lines.append(f'  "{NOT_A_SENTENCE}" [shape=plaintext];')
        for e in self.edges:
            style = "dashed" if e.odd else "solid"
            lines.append(f'  "{e.source}" -> "{e.target}" [label="{e.polarity}", style={style}];')
        if self.partial:
            lines.append('  partial [label="budget exhausted", shape=plaintext];')
        lines.append("}")
        return "\n".join(lines)


def _referents(phi, config, env, odd=False):
    """Yield ``(value, odd)`` for each truth atom instance with a computable argument.

    Bounded quantifiers are unrolled (up to the search bound); atoms that
    depend on an unboundedly quantified variable have no single referent and
    are skipped.
    """
    match phi:
        case TruthAtom(arg):
            try:
                yield eval_term(arg, config, env), odd
            except EvaluationError:
                pass
        case Not(inner):
            yield from _referents(inner, config, env, not odd)
        case Implies(l, r):
            yield from _referents(l, config, env, not odd)
            yield from _referents(r, config, env, odd)
        case And(l, r) | Or(l, r) | Iff(l, r):
            yield from _referents(l, config, env, odd)
            yield from _referents(r, config, env, odd)
        case ForAll(v, body) | Exists(v, body):
            inner = {k: val for k, val in env.items() if k != v}
            yield from _referents(body, config, inner, odd)
        case ForAllBelow(v, bound, body) | ExistsBelow(v, bound, body):
            try:
                stop = eval_term(bound, config, env)
            except EvaluationError:
                return
            for value in range(min(stop, config.quantifier_search_bound + 1)):
                yield from _referents(body, config, {**env, v: value}, odd)


def _target(value: int):
    target = decode(value)
    return value if is_sentence(target) else NOT_A_SENTENCE


def build_reference_graph(phi: Formula, config: EvalConfig | None = None,
                          budget: int = DEFAULT_BUDGET) -> ReferenceGraph:
    """Breadth-first closure of ``phi`` under truth attribution, up to ``budget`` nodes.

    Atoms inside bounded quantifiers contribute one edge per instance.
    """
    config = config or EvalConfig()
    if not is_sentence(phi):
        raise ValueError(f"not a sentence: {to_text(phi)}")
    root = encode(phi)
    graph = ReferenceGraph(root, {root: phi})
    queue = deque([root])
    while queue:
        code = queue.popleft()
        for value, odd in _referents(graph.nodes[code], config, {}):
            target = _target(value)
            edge = Edge(code, target, odd)
            if edge not in graph.edges:
                graph.edges.append(edge)
            if target == NOT_A_SENTENCE or target in graph.nodes:
                continue
            if len(graph.nodes) >= budget:
                graph.partial = True
                continue
            graph.nodes[target] = decode(target)
            queue.append(target)
    return graph


def kleene_fixed_point(graph: ReferenceGraph, config: EvalConfig | None = None) -> dict:
    """Least fixed point of the strong Kleene valuation, as code -> Verdict."""
    config = config or EvalConfig()
    values = {code: unknown(UNRESOLVED) for code in graph.nodes}

    def truth(value: int) -> Verdict:
        target = _target(value)
        if target == NOT_A_SENTENCE:
            return FALSE
        return values.get(target, unknown(UNRESOLVED))

    # Monotone: each sweep can only decide more nodes, so |nodes| + 1 sweeps
    # suffice.  Reverse discovery order visits referents before referrers.
    order = list(reversed(graph.nodes))
    for _ in range(len(order) + 1):
        changed = False
        for code in order:
            v = eval_sentence(graph.nodes[code], config, truth=truth)
            if v.value is not None and values[code].value is None:
                values[code] = v
                changed = True
        if not changed:
            break
    return values


def _odd_cycle_nodes(graph: ReferenceGraph) -> set:
    """Codes lying in a strongly connected component that carries an odd cycle."""
    succ = {code: [] for code in graph.nodes}
    for e in graph.edges:
        if e.target in graph.nodes:
            succ[e.source].append(e)

    # Tarjan, iterative.
    index, low, on_stack, stack, comps = {}, {}, set(), [], []
    counter = 0
    for start in sorted(graph.nodes):
        if start in index:
            continue
        work = [(start, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            edges = succ[v]
            if i < len(edges):
                work.append((v, i + 1))
                w = edges[i].target
                if w not in index:
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    odd_nodes = set()
    for comp in comps:
        # Parity labelling: an inconsistency inside a component means an odd closed walk.
        start = min(comp)
        label = {start: False}
        queue = deque([start])
        odd = False
        while queue and not odd:
            v = queue.popleft()
            for e in succ[v]:
                if e.target not in comp:
                    continue
                want = label[v] ^ e.odd
                if e.target not in label:
                    label[e.target] = want
                    queue.append(e.target)
                elif label[e.target] != want:
                    odd = True
                    break
        if odd:
            odd_nodes |= comp
    return odd_nodes


def _reachable(graph: ReferenceGraph, start) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in graph.successors(v):
            if e.target in graph.nodes and e.target not in seen:
                seen.add(e.target)
                queue.append(e.target)
    return seen


@dataclass(frozen=True)
class Analysis:
    verdict: GroundVerdict
    graph: ReferenceGraph
    value: Verdict


def analyze(phi: Formula, config: EvalConfig | None = None, budget: int = DEFAULT_BUDGET) -> Analysis:
    config = config or EvalConfig()
    graph = build_reference_graph(phi, config, budget)
    if graph.partial:
        return Analysis(GroundVerdict.RESOURCE_EXCEEDED, graph, unknown("budget-exhausted"))
    values = kleene_fixed_point(graph, config)
    value = values[graph.root]
    if value.is_true:
        verdict = GroundVerdict.GROUNDED_TRUE
    elif value.is_false:
        verdict = GroundVerdict.GROUNDED_FALSE
    elif _reachable(graph, graph.root) & _odd_cycle_nodes(graph):
        verdict = GroundVerdict.PARADOXICAL
    else:
        verdict = GroundVerdict.UNGROUNDED
    return Analysis(verdict, graph, value)


def classify(phi: Formula, config: EvalConfig | None = None, budget: int = DEFAULT_BUDGET) -> GroundVerdict:
    return analyze(phi, config, budget).verdict
