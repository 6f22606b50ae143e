"""Proof pipelines, certificates and their verification."""

from .certificate import STEP_KINDS, Certificate, Step
from .pipeline import PELL_SETUP, PELL_LUCAS_SETUP, ProofConfig, prove, prove_pell, prove_pell_lucas
from .verify import verify_certificate, verify_report

__all__ = [
    "Certificate",
    "PELL_LUCAS_SETUP",
    "PELL_SETUP",
    "ProofConfig",
    "STEP_KINDS",
    "Step",
    "prove",
    "prove_pell",
    "prove_pell_lucas",
    "verify_certificate",
    "verify_report",
]
