"""Defeasible logic programs, dialectical trees and argument-driven revision."""

from artifact.kernel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
