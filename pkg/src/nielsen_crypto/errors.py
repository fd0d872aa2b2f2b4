"""Exception hierarchy.

Every error carries a short machine-readable ``kind`` so the CLI can report
it without parsing messages.
"""

from __future__ import annotations


class NielsenCryptoError(ValueError):
    kind = "error"


class MalformedWordError(NielsenCryptoError):
    kind = "malformed-word"


class RankMismatchError(NielsenCryptoError):
    kind = "rank-mismatch"


class TranscriptError(NielsenCryptoError):
    kind = "bad-transcript"


class ReductionStallError(NielsenCryptoError):
    kind = "reduction-stall"


class LehnerParameterError(NielsenCryptoError):
    kind = "bad-lehner-params"

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class DeterminantError(NielsenCryptoError):
    kind = "not-sl2"


class SizeCapError(NielsenCryptoError):
    kind = "size-cap"


class CoverageError(NielsenCryptoError):
    """Raised when the pooled shares do not cover every item slot."""

    kind = "coverage"

    def __init__(self, message: str, missing: list[int]):
        super().__init__(message)
        self.missing = list(missing)


class SchemeError(NielsenCryptoError):
    kind = "scheme"


class CipherKeyError(NielsenCryptoError):
    kind = "cipher-key"


class DecryptionError(NielsenCryptoError):
    kind = "decryption"

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class BasisCertificateError(NielsenCryptoError):
    kind = "not-a-basis"


class FormatError(NielsenCryptoError):
    kind = "format"
