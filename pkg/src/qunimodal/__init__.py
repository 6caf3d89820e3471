"""Exact Gaussian binomial coefficients, KOH decompositions and
certificates of strict unimodality."""

from .certify import certify, scan_exceptions, verify_certificate, verify_growth
from .koh import koh_sum, koh_term
from .partitions import Partition, partitions_of
from .polyring import IntPolynomial
from .qbinomial import qbinom, qbinom_oracle, qbinom_top
from .unimodality import is_strictly_unimodal_qbinom

__version__ = "0.1.0"

__all__ = [
    "IntPolynomial",
    "Partition",
    "certify",
    "is_strictly_unimodal_qbinom",
    "koh_sum",
    "koh_term",
    "partitions_of",
    "qbinom",
    "qbinom_oracle",
    "qbinom_top",
    "scan_exceptions",
    "verify_certificate",
    "verify_growth",
]
