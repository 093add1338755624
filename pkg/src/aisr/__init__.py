"""Finite additively idempotent semirings, commutative terms and their equational logic."""

from .algebra import (
    FiniteAiSemiring,
    Partition,
    adjoin_zero,
    direct_product,
    enumerate_ai_semirings,
    eval_term,
    find_embedding,
    find_isomorphism,
    is_congruence,
    leq,
    quotient,
    satisfies,
    subalgebra_closure,
    top,
    validate,
)
from .catalog import by_name, d2, flat, sca, scab, scab0, scabc, sr6
from .characterize import decide_d2, decide_s0, decide_scab, decide_sr6, decide_variety, dq_filter
from .families import basis, delta, named, parse_basis, q_n, sigma, u_n
from .freeness import instance_subterm, is_free, is_subterm
from .graph import bipartition, build, component, has_odd_cycle, odd_closure
from .proof import LeqChain, ProofScript, Step, check_leq_chain, check_proof, check_step, search_derivation
from .terms import (
    Identity,
    Inequality,
    Substitution,
    Term,
    Word,
    apply_subst,
    content,
    format_term,
    layer,
    parse_statement,
    parse_term,
    split_identity,
    term_add,
    term_mul,
    word_divides,
    word_mul,
)

__version__ = "0.1.0"
