"""Exception types shared across the package."""


class SatakeFoldError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDatumError(SatakeFoldError):
    """A root datum failed validation; args[0] holds the violation list."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class UnsupportedOrbitError(SatakeFoldError):
    """An automorphism orbit is neither pairwise disconnected nor a single edge."""


class NonSimplyLacedError(SatakeFoldError):
    """An operation needs braid orders in {2, 3} but the datum has larger ones."""


class EnumerationCapError(SatakeFoldError):
    """An enumeration exceeded its configured cap and was refused."""


class InputError(SatakeFoldError):
    """Malformed user input (CLI arguments or JSON files)."""
