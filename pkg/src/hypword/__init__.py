"""Word problems and word-hyperbolic structures for monoids presented by
confluent context-free monadic rewriting systems."""

from .core import (
    Alphabet,
    DOLLAR,
    DOLLAR_EPS,
    DomainError,
    FormatError,
    Homomorphism,
    MARKER_1,
    MARKER_2,
    PLAIN,
    ResourceLimitError,
    Symbol,
    TILDE,
    TILDE_EPS,
    Word,
    annotate,
    apply_homomorphism,
    letters,
    parse_word,
    render_word,
    reverse,
)
from .grammar import (
    Cfg,
    cfg_member,
    derives,
    derives_batch,
    disjoint_rename,
    eliminate_epsilon_productions,
    emit_grammar,
    enumerate_language,
    min_word_length,
    parse_grammar,
    relabel_terminals,
    reverse_productions,
    trim_grammar,
)
from .automata import (
    Dfa,
    Nfa,
    Transducer,
    dfa_from_nfa,
    emit_automaton,
    emit_transducer,
    nfa_enumerate,
    nfa_member,
    parse_automaton,
    parse_transducer,
    relation_image,
    relation_member,
    transducer_concat,
    transducer_reverse,
    transducer_star,
)
from .rewriting import (
    MonadicCfSystem,
    RuleApplication,
    check_confluence_bounded,
    emit_system,
    equal_in_monoid,
    find_redex,
    irreducible_descendants,
    normal_form,
    parse_system,
    reduce_once,
    validate_system,
)
from .equality import (
    EqualityGrammar,
    build_equality_grammar,
    dollar_lhs_grammar,
    emit_equality_grammar,
    equality_member,
    mirror_grammar,
    table_member,
    tilde_lhs_grammar,
)
from .structures import (
    GeneratorMap,
    WordHypStructure,
    adjust_identity_rep,
    change_generators,
    counterexample_system,
    substitution_relation,
    table_substitution_relation,
    validate_cross_section,
)
