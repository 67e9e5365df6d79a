"""Package for entropy convergence diagnostics of density sequences."""

__version__ = "0.1.0"

from . import density, diagnostics, filetools, orlicz, pipelines, sequences
