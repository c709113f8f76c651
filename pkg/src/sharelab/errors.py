"""Exception types shared by all workbench modules.

Every error that a protocol can produce is surfaced as a distinct class so
that callers (and the session harness) can report it without string matching.
Nothing here is ever swallowed internally.
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class NonInvertibleError(WorkbenchError):
    """A modular inverse does not exist (gcd with the modulus is not 1).

    In an RSA context this event exposes a factor of the modulus, so the
    offending gcd is carried on the exception instead of being discarded.
    """

    def __init__(self, value, modulus, gcd):
        super().__init__(f"{value} is not invertible mod {modulus} (gcd={gcd})")
        self.value = value
        self.modulus = modulus
        self.gcd = gcd


class SearchExhaustedError(WorkbenchError):
    """A randomized parameter search ran out of its attempt budget."""


class BackendMismatchError(WorkbenchError):
    """Group elements from different backends/descriptors were combined."""


class CapacityExceededError(WorkbenchError):
    """A sampling strategy cannot host the requested number of elements."""


class BadPolicyError(WorkbenchError):
    """A sharing policy violates its invariants (threshold, x-coordinates)."""


class DuplicateXError(BadPolicyError):
    """Two interpolation points share the same x-coordinate."""


class MalformedProofError(WorkbenchError):
    """A proof or transcript has an invalid shape."""


class NotCoprimeError(WorkbenchError):
    """A value that must be a unit of the ring is not coprime to the modulus."""


class BadChallengeError(WorkbenchError):
    """A challenge value is outside its declared range."""


class DegenerateSecretError(WorkbenchError):
    """The secret commutes with every share, so publishing would leak it."""


class WrongCoalitionError(WorkbenchError):
    """A coalition does not match any reconstructable share set."""


class BudgetExceededError(WorkbenchError):
    """An enumeration would exceed its configured budget."""


class ConfigError(WorkbenchError):
    """A session configuration is invalid for the chosen scheme."""


class UnauthorizedError(WorkbenchError):
    """An author posted under a label it does not own."""


class UnknownLabelError(WorkbenchError):
    """A post label is not part of the scheme's script."""
