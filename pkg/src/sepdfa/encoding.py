"""CNF encoding of the bounded search for a separating DFA.

A candidate DFA with n states is described by transition variables
e(i, a, j), acceptance variables f(i) and product-reachability variables
d(p, i) that tie the candidate to an acceptor.  Two optional groups are
layered on top: breadth-first-tree symmetry breaking over auxiliary
variables t(i, j), p(child, parent) and m(i, a, j), and shape constraints
that force the candidate into safety or co-safety form for parity corpora.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .automata import DoubleDFA, LearnedDFA, ThreeValuedDFA

Clause = tuple[int, ...]


class EncodingError(RuntimeError):
    """Inconsistent encoder usage or an unusable solver model."""


@dataclass(frozen=True)
class CnfFormula:
    """Propositional formula in conjunctive normal form.

    Variables are the 1-based integers up to variable_count; a literal is
    a variable or its negation.  Clauses are non-empty.
    """

    variable_count: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(map(tuple, self.clauses)))
        if self.variable_count < 0:
            raise EncodingError("negative variable count")
        for clause in self.clauses:
            if not clause:
                raise EncodingError("empty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise EncodingError(f"literal {lit} out of range")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


class VarMap:
    """Fixed variable layout for one (candidate size, acceptor) pair.

    Ids are contiguous from 1 in the order: all e, then f, then d, then,
    when symmetry breaking is enabled, t, p and m.  d rows exist only for
    the acceptor states handed in (the reachable ones).
    """

    def __init__(self, n: int, alphabet_size: int,
                 acceptor_states: Iterable[int], symmetry: bool):
        if n < 1:
            raise EncodingError("candidate size must be at least 1")
        if alphabet_size < 1:
            raise EncodingError("alphabet size must be at least 1")
        self.n = n
        self.alphabet_size = alphabet_size
        self.acceptor_states = tuple(acceptor_states)
        self.symmetry = symmetry
        self._row = {q: idx for idx, q in enumerate(self.acceptor_states)}
        if len(self._row) != len(self.acceptor_states):
            raise EncodingError("duplicate acceptor state")
        k = alphabet_size
        self._base_e = 0
        self._base_f = n * k * n
        self._base_d = self._base_f + n
        total = self._base_d + len(self.acceptor_states) * n
        # Upper-triangular pairs (i, j) with i < j, row-major in j.
        self._pairs = [(i, j) for j in range(n) for i in range(j)]
        self._pair_index = {pair: idx for idx, pair in enumerate(self._pairs)}
        if symmetry:
            self._base_t = total
            self._base_p = self._base_t + len(self._pairs)
            self._base_m = self._base_p + len(self._pairs)
            total = self._base_m + len(self._pairs) * k
        self.variable_count = total

    def e(self, i: int, a: int, j: int) -> int:
        """Candidate moves from state i to state j on letter a."""
        if not (0 <= i < self.n and 0 <= j < self.n
                and 0 <= a < self.alphabet_size):
            raise EncodingError(f"e({i}, {a}, {j}) out of range")
        return 1 + self._base_e + (i * self.alphabet_size + a) * self.n + j

    def f(self, i: int) -> int:
        """Candidate state i is accepting."""
        if not 0 <= i < self.n:
            raise EncodingError(f"f({i}) out of range")
        return 1 + self._base_f + i

    def d(self, p: int, i: int) -> int:
        """Acceptor state p and candidate state i are reached together."""
        row = self._row.get(p)
        if row is None or not 0 <= i < self.n:
            raise EncodingError(f"d({p}, {i}) out of range")
        return 1 + self._base_d + row * self.n + i

    def _pair(self, base: int, i: int, j: int) -> int:
        if not 0 <= i < j < self.n:
            raise EncodingError(f"node pair ({i}, {j}) out of range")
        return 1 + base + self._pair_index[(i, j)]

    def t(self, i: int, j: int) -> int:
        """Some letter moves the candidate from state i to state j (i < j)."""
        if not self.symmetry:
            raise EncodingError("symmetry variables are disabled")
        return self._pair(self._base_t, i, j)

    def p(self, child: int, parent: int) -> int:
        """Candidate state child has tree parent `parent` (parent < child)."""
        if not self.symmetry:
            raise EncodingError("symmetry variables are disabled")
        return self._pair(self._base_p, parent, child)

    def m(self, i: int, a: int, j: int) -> int:
        """Letter a is the smallest letter moving state i to state j (i < j)."""
        if not self.symmetry:
            raise EncodingError("symmetry variables are disabled")
        if not 0 <= a < self.alphabet_size:
            raise EncodingError(f"m({i}, {a}, {j}) letter out of range")
        if not 0 <= i < j < self.n:
            raise EncodingError(f"m({i}, {a}, {j}) node pair out of range")
        return (1 + self._base_m
                + self._pair_index[(i, j)] * self.alphabet_size + a)

    def decode(self, var: int) -> tuple:
        """Inverse of the id mapping: ('e', i, a, j), ('f', i), and so on."""
        if not 1 <= var <= self.variable_count:
            raise EncodingError(f"variable {var} out of range")
        idx = var - 1
        n, k = self.n, self.alphabet_size
        if idx < self._base_f:
            ia, j = divmod(idx, n)
            i, a = divmod(ia, k)
            return ("e", i, a, j)
        if idx < self._base_d:
            return ("f", idx - self._base_f)
        if idx < self._base_d + len(self.acceptor_states) * n:
            row, i = divmod(idx - self._base_d, n)
            return ("d", self.acceptor_states[row], i)
        if idx < self._base_p:
            i, j = self._pairs[idx - self._base_t]
            return ("t", i, j)
        if idx < self._base_m:
            i, j = self._pairs[idx - self._base_p]
            return ("p", j, i)
        pair, a = divmod(idx - self._base_m, k)
        i, j = self._pairs[pair]
        return ("m", i, a, j)


@dataclass(frozen=True)
class AcceptorFacts:
    """Acceptor data the encoder consumes, restricted to reachable states."""

    alphabet_size: int
    states: tuple[int, ...]
    initials: tuple[int, ...]
    accepting: frozenset[int]
    rejecting: frozenset[int]
    transitions: tuple[tuple[int, int, int], ...]


def acceptor_facts(acceptor: ThreeValuedDFA | DoubleDFA) -> AcceptorFacts:
    """Extract the reachable fragment of an acceptor in a uniform shape."""
    if isinstance(acceptor, DoubleDFA):
        initials = acceptor.initials
        triples = list(acceptor.transition_items())
        accepting = acceptor.accepting
        rejecting = acceptor.rejecting
    elif isinstance(acceptor, ThreeValuedDFA):
        initials = (acceptor.initial,)
        triples = [(q, a, r) for (q, a), r in acceptor.transitions.items()]
        accepting = acceptor.accepting
        rejecting = acceptor.rejecting
    else:
        raise TypeError(f"unsupported acceptor type: {type(acceptor).__name__}")
    outgoing: dict[int, list[tuple[int, int]]] = {}
    for q, a, r in triples:
        outgoing.setdefault(q, []).append((a, r))
    reachable = set(initials)
    frontier = list(initials)
    while frontier:
        q = frontier.pop()
        for _, r in outgoing.get(q, ()):
            if r not in reachable:
                reachable.add(r)
                frontier.append(r)
    states = tuple(sorted(reachable))
    transitions = tuple(sorted((q, a, r) for q, a, r in triples
                               if q in reachable))
    return AcceptorFacts(
        alphabet_size=acceptor.alphabet_size,
        states=states,
        initials=tuple(initials),
        accepting=frozenset(accepting & reachable),
        rejecting=frozenset(rejecting & reachable),
        transitions=transitions,
    )


def encode_dfa_shape(vm: VarMap) -> list[Clause]:
    """Determinism and completeness of the candidate transition function."""
    clauses: list[Clause] = []
    n = vm.n
    for i in range(n):
        for a in range(vm.alphabet_size):
            for j in range(n):
                for jj in range(j + 1, n):
                    clauses.append((-vm.e(i, a, j), -vm.e(i, a, jj)))
            clauses.append(tuple(vm.e(i, a, j) for j in range(n)))
    return clauses


def encode_product(vm: VarMap, facts: AcceptorFacts) -> list[Clause]:
    """Tie the candidate to the acceptor.

    Product pairs seed at the initial states and follow the acceptor's
    transitions; candidate states paired with an accepting acceptor state
    must accept, those paired with a rejecting one must reject.
    """
    if facts.states != vm.acceptor_states:
        raise EncodingError("variable map was built for a different acceptor")
    if facts.alphabet_size != vm.alphabet_size:
        raise EncodingError("alphabet mismatch between acceptor and variables")
    clauses: list[Clause] = []
    n = vm.n
    for q0 in facts.initials:
        clauses.append((vm.d(q0, 0),))
    for p in sorted(facts.accepting):
        for i in range(n):
            clauses.append((-vm.d(p, i), vm.f(i)))
    for p in sorted(facts.rejecting):
        for i in range(n):
            clauses.append((-vm.d(p, i), -vm.f(i)))
    for p, a, r in facts.transitions:
        for i in range(n):
            for j in range(n):
                clauses.append((-vm.d(p, i), -vm.e(i, a, j), vm.d(r, j)))
    return clauses


def encode_symmetry_breaking(vm: VarMap, safety_mode: bool = False) -> list[Clause]:
    """Force the candidate's state numbering into breadth-first order.

    The auxiliary variables are defined from e by biconditionals: t(i, j)
    says some letter joins i to j, p(j, i) picks the smallest such i as
    j's tree parent, m(i, a, j) marks the smallest letter joining i to j.
    Ordering clauses then make consecutive states take consecutive parents
    and force sibling edges into ascending letter order.  In safety mode
    every clause mentioning the sink node n-1 is dropped, because the sink
    shape clauses pin its edges in ways a breadth-first numbering of the
    remaining nodes cannot always satisfy.
    """
    if not vm.symmetry:
        raise EncodingError("variable map was built without symmetry variables")
    n, k = vm.n, vm.alphabet_size
    emitted: list[tuple[tuple[int, ...], Clause]] = []

    def emit(nodes: tuple[int, ...], *lits: int) -> None:
        emitted.append((nodes, lits))

    for j in range(n):
        for i in range(j):
            # p(j, i) holds iff i is the smallest node with an edge into j.
            emit((i, j), -vm.p(j, i), vm.t(i, j))
            for kk in range(i):
                emit((i, j, kk), -vm.p(j, i), -vm.t(kk, j))
            emit((i, j), vm.p(j, i), -vm.t(i, j),
                 *[vm.t(kk, j) for kk in range(i)])
            # t(i, j) holds iff some letter joins i to j.
            emit((i, j), -vm.t(i, j), *[vm.e(i, a, j) for a in range(k)])
            for a in range(k):
                emit((i, j), vm.t(i, j), -vm.e(i, a, j))
            # m(i, a, j) holds iff a is the smallest letter joining i to j.
            for a in range(k):
                emit((i, j), -vm.m(i, a, j), vm.e(i, a, j))
                for b in range(a):
                    emit((i, j), -vm.m(i, a, j), -vm.e(i, b, j))
                emit((i, j), vm.m(i, a, j), -vm.e(i, a, j),
                     *[vm.e(i, b, j) for b in range(a)])
            if j + 1 < n:
                # Children of one parent appear in ascending letter order.
                for b in range(k):
                    for a in range(b):
                        emit((i, j, j + 1), -vm.p(j, i), -vm.p(j + 1, i),
                             -vm.m(i, b, j), -vm.m(i, a, j + 1))
                # Parents are assigned in ascending node order.
                for kk in range(i):
                    emit((i, j, j + 1, kk), -vm.p(j, i), -vm.p(j + 1, kk))
    # Every node except the root has a parent.
    for child in range(1, n):
        emit(tuple(range(child + 1)),
             *[vm.p(child, parent) for parent in range(child)])

    sink = n - 1
    return [clause for nodes, clause in emitted
            if not (safety_mode and sink in nodes)]


def encode_parity_constraints(vm: VarMap, colours: int) -> list[Clause]:
    """Pin the candidate into safety (or co-safety) automaton shape.

    Letters are parity-game colours.  Colours sharing the parity of the
    highest colour loop on the initial state; opponent colours move off
    it.  State n-1 is an absorbing sink, the highest colour resets every
    non-sink state to the initial state, and opponent colours never loop
    on a non-sink state.  When the highest colour is even all non-sink
    states accept and the sink rejects; when it is odd the roles flip.
    Needs n >= 2 so the sink is distinct from the initial state.
    """
    if colours != vm.alphabet_size:
        raise EncodingError("colour count must equal the alphabet size")
    if colours < 2:
        raise EncodingError("parity corpora need at least two colours")
    if vm.n < 2:
        raise EncodingError("safety shape needs at least two candidate states")
    n = vm.n
    sink = n - 1
    highest = colours - 1
    same = [a for a in range(colours) if a % 2 == highest % 2]
    opponent = [a for a in range(colours) if a % 2 != highest % 2]
    clauses: list[Clause] = []
    for a in same:
        clauses.append((vm.e(0, a, 0),))
    for a in opponent:
        middles = [vm.e(0, a, i) for i in range(1, sink)]
        if middles:
            clauses.append(tuple(middles))
        else:
            # No middle states exist at n = 2; with determinism and
            # completeness this pair is the same prohibition.
            clauses.append((-vm.e(0, a, 0),))
            clauses.append((-vm.e(0, a, sink),))
    for i in range(sink):
        for a in same:
            clauses.append((-vm.e(i, a, sink),))
        clauses.append((vm.e(i, highest, 0),))
        for a in opponent:
            clauses.append((-vm.e(i, a, i),))
    for a in range(colours):
        clauses.append((vm.e(sink, a, sink),))
    if highest % 2 == 0:
        for i in range(sink):
            clauses.append((vm.f(i),))
        clauses.append((-vm.f(sink),))
    else:
        for i in range(sink):
            clauses.append((-vm.f(i),))
        clauses.append((vm.f(sink),))
    return clauses


def build_formula(n: int, facts: AcceptorFacts, symmetry: bool = True,
                  safety: bool = False) -> tuple[VarMap, CnfFormula]:
    """Assemble the full formula for one candidate size."""
    vm = VarMap(n, facts.alphabet_size, facts.states, symmetry)
    clauses = encode_dfa_shape(vm)
    clauses += encode_product(vm, facts)
    if symmetry:
        clauses += encode_symmetry_breaking(vm, safety_mode=safety)
    if safety:
        clauses += encode_parity_constraints(vm, facts.alphabet_size)
    return vm, CnfFormula(vm.variable_count, tuple(clauses))


def emit_dimacs(formula: CnfFormula) -> str:
    """Serialise to DIMACS CNF text."""
    lines = [f"p cnf {formula.variable_count} {formula.clause_count}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def decode_model(model: Mapping[int, bool], vm: VarMap) -> LearnedDFA:
    """Read the candidate DFA out of a satisfying assignment.

    Checks that the transition variables describe exactly one target per
    state and letter; anything else means the formula was built wrong.
    """
    transitions: dict[tuple[int, int], int] = {}
    for i in range(vm.n):
        for a in range(vm.alphabet_size):
            targets = []
            for j in range(vm.n):
                var = vm.e(i, a, j)
                if var not in model:
                    raise EncodingError(f"model misses variable {var}")
                if model[var]:
                    targets.append(j)
            if len(targets) != 1:
                raise EncodingError(
                    f"state {i} letter {a}: {len(targets)} targets in model")
            transitions[(i, a)] = targets[0]
    accepting = frozenset(i for i in range(vm.n) if model[vm.f(i)])
    return LearnedDFA(vm.alphabet_size, vm.n, transitions, accepting)
