"""Independent reference engines used to cross-validate the parser."""
from .crosscheck import CrossCheckReport, CrossChecker, cross_check, cross_check_pairs
from .lambek import LambekProver, ProofResult, ProverBoundExceeded, Sequent, balanced, prove_lambek
from .naive import NaiveEngine, Token, TraceItem, interleavings, parse_naive

__all__ = [
    "CrossCheckReport", "CrossChecker", "LambekProver", "NaiveEngine", "ProofResult",
    "ProverBoundExceeded", "Sequent", "Token", "TraceItem", "balanced", "cross_check",
    "cross_check_pairs", "interleavings", "parse_naive", "prove_lambek",
]
