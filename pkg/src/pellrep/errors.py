"""Exception types shared across the package."""


class PrecisionError(ArithmeticError):
    """A certified result could not be obtained at the allowed precision."""


class CertificationError(RuntimeError):
    """A proof step could not be certified (e.g. every convergent gave eps <= 0)."""


class MalformedCertificate(ValueError):
    """A certificate document is structurally invalid."""
