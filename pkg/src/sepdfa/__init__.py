"""Learn minimal separating DFAs from labelled word samples via SAT."""

from .samples import (
    DONT_CARE,
    NEGATIVE,
    POSITIVE,
    ConflictingLabelsError,
    OrderedSampleSet,
    SampleError,
    SampleSet,
    classify,
    lex_compare,
    parse_abbadingo,
    sort_and_validate,
    write_abbadingo,
)
from .automata import (
    AutomatonFormatError,
    DoubleDFA,
    LearnedDFA,
    ThreeValuedDFA,
    as_learned_dfa,
    build_apta,
    build_ddfa,
    build_min_3dfa_incremental,
    canonical_form,
    dump_automaton,
    isomorphic,
    minimize_acyclic,
    parse_automaton,
    run,
    run_ddfa,
)
from .encoding import (
    AcceptorFacts,
    CnfFormula,
    EncodingError,
    VarMap,
    acceptor_facts,
    build_formula,
    decode_model,
    emit_dimacs,
    encode_dfa_shape,
    encode_parity_constraints,
    encode_product,
    encode_symmetry_breaking,
)
from .solver import (
    DEFAULT_SOLVER_COMMAND,
    SolverError,
    SolverTimeoutError,
    SolverVerdict,
    find_solver,
    parse_solver_output,
    solve,
)
from .mining import (
    MODES,
    MiningError,
    MiningReport,
    SizeAttempt,
    VerificationOutcome,
    mine_min_dfa,
    upper_bound,
    verify_separating,
)
from .generators import (
    BudgetExceededError,
    ParityConfig,
    classify_parity_word,
    format_stats_line,
    gen_parity_samples,
    gen_random_dfa,
    gen_samples_from_dfa,
    parity_stats,
)

__version__ = "0.1.0"

__all__ = [
    "DONT_CARE",
    "NEGATIVE",
    "POSITIVE",
    "ConflictingLabelsError",
    "OrderedSampleSet",
    "SampleError",
    "SampleSet",
    "classify",
    "lex_compare",
    "parse_abbadingo",
    "sort_and_validate",
    "write_abbadingo",
    "AutomatonFormatError",
    "DoubleDFA",
    "LearnedDFA",
    "ThreeValuedDFA",
    "as_learned_dfa",
    "build_apta",
    "build_ddfa",
    "build_min_3dfa_incremental",
    "canonical_form",
    "dump_automaton",
    "isomorphic",
    "minimize_acyclic",
    "parse_automaton",
    "run",
    "run_ddfa",
    "AcceptorFacts",
    "CnfFormula",
    "EncodingError",
    "VarMap",
    "acceptor_facts",
    "build_formula",
    "decode_model",
    "emit_dimacs",
    "encode_dfa_shape",
    "encode_parity_constraints",
    "encode_product",
    "encode_symmetry_breaking",
    "DEFAULT_SOLVER_COMMAND",
    "SolverError",
    "SolverTimeoutError",
    "SolverVerdict",
    "find_solver",
    "parse_solver_output",
    "solve",
    "MODES",
    "MiningError",
    "MiningReport",
    "SizeAttempt",
    "VerificationOutcome",
    "mine_min_dfa",
    "upper_bound",
    "verify_separating",
    "BudgetExceededError",
    "ParityConfig",
    "classify_parity_word",
    "format_stats_line",
    "gen_parity_samples",
    "gen_random_dfa",
    "gen_samples_from_dfa",
    "parity_stats",
    "__version__",
]
