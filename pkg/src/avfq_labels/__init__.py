"""Deterministic labels for ideal classes and polarizations of abelian
varieties over finite fields with commutative endomorphism algebra.

The public surface is the pipeline in :mod:`avfq_labels.pipeline` and the
command line interface in :mod:`avfq_labels.cli`; the remaining modules are
the exact-arithmetic machinery the pipeline is built from.
"""

__version__ = "0.1.0"
