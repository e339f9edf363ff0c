"""Search for the smallest DFA separating a sample set.

The miner builds an acceptor for the samples, then asks the SAT solver
for candidate DFAs of growing size until one exists.  Acceptor choice is
the mode: the raw prefix tree, the incrementally minimised three-valued
automaton, or the per-polarity double automaton.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .automata import (
    DoubleDFA,
    LearnedDFA,
    ThreeValuedDFA,
    build_apta,
    build_ddfa,
    build_min_3dfa_incremental,
)
from .encoding import acceptor_facts, build_formula, decode_model
from .samples import NEGATIVE, POSITIVE, SampleSet, Word, sort_and_validate
from .solver import DEFAULT_SOLVER_COMMAND, SolverError, solve

MODES = ("apta", "min3dfa", "ddfa")


class MiningError(RuntimeError):
    """Mining could not complete; .report holds the attempts so far."""

    def __init__(self, message: str, report: "MiningReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class SizeAttempt:
    """One candidate size tried against the solver."""

    n: int
    outcome: str  # "sat" or "unsat"
    variables: int
    clauses: int
    solve_seconds: float


@dataclass(frozen=True)
class VerificationOutcome:
    ok: bool
    violations: tuple[tuple[Word, str], ...]


@dataclass
class MiningReport:
    mode: str
    safety: bool
    symmetry_breaking: bool
    acceptor_size: int
    attempts: list[SizeAttempt] = field(default_factory=list)
    dfa: LearnedDFA | None = None
    verified: bool = False

    @property
    def minimal_size(self) -> int | None:
        return self.dfa.state_count if self.dfa is not None else None

    def to_text(self) -> str:
        lines = [
            f"mode {self.mode}",
            f"safety {'on' if self.safety else 'off'}",
            f"symmetry-breaking {'on' if self.symmetry_breaking else 'off'}",
            f"acceptor size {self.acceptor_size}",
        ]
        for att in self.attempts:
            lines.append(
                f"n={att.n} {att.outcome} vars={att.variables} "
                f"clauses={att.clauses} time={att.solve_seconds:.3f}s")
        if self.dfa is not None:
            lines.append(f"minimal size {self.dfa.state_count}")
            lines.append(f"verified {'yes' if self.verified else 'no'}")
        return "\n".join(lines) + "\n"

    def to_kv(self) -> str:
        """Flat key=value dump for machine consumption."""
        pairs = [
            ("mode", self.mode),
            ("safety", int(self.safety)),
            ("symmetry_breaking", int(self.symmetry_breaking)),
            ("acceptor_size", self.acceptor_size),
            ("attempts", len(self.attempts)),
        ]
        for idx, att in enumerate(self.attempts, start=1):
            pairs.append((f"attempt{idx}.n", att.n))
            pairs.append((f"attempt{idx}.outcome", att.outcome))
            pairs.append((f"attempt{idx}.variables", att.variables))
            pairs.append((f"attempt{idx}.clauses", att.clauses))
            pairs.append((f"attempt{idx}.seconds", f"{att.solve_seconds:.3f}"))
        if self.dfa is not None:
            pairs.append(("minimal_size", self.dfa.state_count))
            pairs.append(("verified", int(self.verified)))
        return "\n".join(f"{k}={v}" for k, v in pairs) + "\n"


def upper_bound(acceptor: ThreeValuedDFA | DoubleDFA) -> int:
    """Size at which a separating DFA certainly exists.

    Completing the acceptor (for a double automaton, its positive part)
    with one rejecting sink separates the samples, so the bound is the
    relevant state count plus one.
    """
    if isinstance(acceptor, DoubleDFA):
        return acceptor.pos_part.state_count + 1
    if isinstance(acceptor, ThreeValuedDFA):
        return acceptor.state_count + 1
    raise TypeError(f"unsupported acceptor type: {type(acceptor).__name__}")


def verify_separating(dfa: LearnedDFA, samples: SampleSet) -> VerificationOutcome:
    """Check the DFA accepts every positive and rejects every negative word."""
    if dfa.alphabet_size != samples.alphabet_size:
        raise ValueError(
            f"alphabet mismatch: automaton has {dfa.alphabet_size}, "
            f"samples have {samples.alphabet_size}")
    violations = []
    for w in samples.positives:
        if not dfa.accepts(w):
            violations.append((w, POSITIVE))
    for w in samples.negatives:
        if dfa.accepts(w):
            violations.append((w, NEGATIVE))
    violations.sort()
    return VerificationOutcome(not violations, tuple(violations))


def _build_acceptor(samples: SampleSet, mode: str) -> ThreeValuedDFA | DoubleDFA:
    if mode == "apta":
        return build_apta(sort_and_validate(samples))
    if mode == "min3dfa":
        return build_min_3dfa_incremental(sort_and_validate(samples))
    if mode == "ddfa":
        return build_ddfa(samples)
    raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")


def mine_min_dfa(samples: SampleSet, mode: str = "min3dfa", *,
                 safety: bool = False, symmetry_breaking: bool = True,
                 solver_command=DEFAULT_SOLVER_COMMAND,
                 timeout: float | None = None, n_start: int | None = None,
                 n_max: int | None = None,
                 use_stdin: bool = False) -> MiningReport:
    """Find a smallest separating DFA for the samples.

    Candidate sizes grow one by one from n_start (1 by default, 2 in
    safety mode, where the sink must differ from the initial state); the
    first satisfiable size yields the answer.  Every returned DFA has
    been re-checked against the samples.  Solver failures propagate with
    the partial report attached as .partial_report; exhausting n_max
    (default: the acceptor's size bound) raises MiningError, since the
    bound guarantees a solution exists.
    """
    acceptor = _build_acceptor(samples, mode)
    facts = acceptor_facts(acceptor)
    report = MiningReport(
        mode=mode,
        safety=safety,
        symmetry_breaking=symmetry_breaking,
        acceptor_size=len(facts.states),
    )
    if n_start is None:
        n_start = 2 if safety else 1
    elif safety and n_start < 2:
        raise ValueError("safety mode needs n_start >= 2")
    if n_start < 1:
        raise ValueError("n_start must be at least 1")
    bound = upper_bound(acceptor) if n_max is None else n_max
    n = n_start
    while n <= bound:
        vm, formula = build_formula(n, facts, symmetry=symmetry_breaking,
                                    safety=safety)
        try:
            verdict = solve(formula, solver_command, timeout=timeout,
                            use_stdin=use_stdin)
        except SolverError as err:
            err.partial_report = report
            raise
        report.attempts.append(SizeAttempt(
            n=n,
            outcome=verdict.outcome,
            variables=formula.variable_count,
            clauses=formula.clause_count,
            solve_seconds=verdict.wall_time,
        ))
        if verdict.outcome == "sat":
            dfa = decode_model(verdict.model, vm)
            check = verify_separating(dfa, samples)
            if not check.ok:
                raise MiningError(
                    f"internal error: mined DFA violates "
                    f"{len(check.violations)} samples", report)
            report.dfa = dfa
            report.verified = True
            return report
        n += 1
    if safety and n_max is None:
        # The completion bound only promises an unconstrained separator.
        raise MiningError(
            f"no safety-shaped separating DFA up to size {bound}; the "
            f"sample set may admit none of any size", report)
    raise MiningError(
        f"no separating DFA up to size {bound}; the bound should have "
        f"sufficed, so the encoding or solver is at fault", report)
