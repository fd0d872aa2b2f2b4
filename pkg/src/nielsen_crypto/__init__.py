"""Secret sharing and encryption built on Nielsen transformations of free groups."""

from .errors import NielsenCryptoError
from .nielsen import (
    Delete,
    Invert,
    MultiplyRight,
    Transcript,
    apply_transcript,
    invert_transcript,
    is_nielsen_reduced,
    nielsen_reduce,
)
from .ratmat import RatMatrix, Representation, lehner_generators, trace
from .word import Endomorphism, Word

__version__ = "0.1.0"

__all__ = [
    "Delete",
    "Endomorphism",
    "Invert",
    "MultiplyRight",
    "NielsenCryptoError",
    "RatMatrix",
    "Representation",
    "Transcript",
    "Word",
    "apply_transcript",
    "invert_transcript",
    "is_nielsen_reduced",
    "lehner_generators",
    "nielsen_reduce",
    "trace",
]
