"""Exception hierarchy shared by all opsem modules."""


class OpsemError(Exception):
    """Base class for all errors raised by this package."""


class CapacityMismatch(OpsemError):
    """Two operator tables are defined over different state counts."""


class UnknownState(OpsemError):
    """A state index is out of range for the capacity."""


class UnknownSignal(OpsemError):
    """A signal index is out of range for the language."""


class EmptyLanguage(OpsemError):
    """A space was requested with no signals."""


class SpaceTooLarge(OpsemError):
    """Projected enumeration size exceeds the configured cap."""


class SpaceMismatch(OpsemError):
    """A meta-state does not belong to the given interpretation space."""


class ContradictoryEvidence(OpsemError):
    """An observation is inconsistent with every remaining candidate."""


class NoInformativeQuery(OpsemError):
    """No query can shrink the candidate set, yet it is not a singleton."""


class ScenarioError(OpsemError):
    """Base class for scenario-file problems."""


class ParseError(ScenarioError):
    """The scenario file is not well-formed JSON."""


class ValidationError(ScenarioError):
    """The scenario file is well-formed but violates the schema."""
