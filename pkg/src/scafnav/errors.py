"""Exception hierarchy shared across the package."""


class ScafnavError(Exception):
    """Base class for all domain errors."""


class SmilesError(ScafnavError):
    """Base class for SMILES parse failures."""


class SmilesSyntaxError(SmilesError):
    """Malformed SMILES text: bad token, unbalanced parenthesis, bad bracket atom."""


class UnclosedRingBond(SmilesError):
    """A ring-closure digit was opened but never closed."""


class UnsupportedElement(SmilesError):
    """Element outside the supported set."""


class ValenceError(SmilesError):
    """Bond-order sum exceeds the maximum allowed valence for an element."""


class EmptyGraph(ScafnavError):
    """Operation requires at least one atom."""


class MultiComponentInput(ScafnavError):
    """Operation requires a single connected component."""


class InvalidScaffold(ScafnavError):
    """Scaffold key is not a canonical scaffold fixpoint."""


class UnknownScaffold(ScafnavError):
    """Scaffold key not present in the index."""


class BudgetExceeded(ScafnavError):
    """A node-expansion budget was exhausted before the search completed."""


class EmptySubset(ScafnavError):
    """FBDD query resolved to an empty hit subset."""


class TooManyHits(ScafnavError):
    """FBDD subset enumeration bound exceeded."""


class UnknownKind(ScafnavError):
    """Unrecognized training-pair kind."""


class IndexSealed(ScafnavError):
    """Mutation attempted on a sealed index."""


class FormatVersionMismatch(ScafnavError):
    """Persisted index was written by an incompatible format version."""


class ChecksumMismatch(ScafnavError):
    """Persisted index file does not match its manifest checksum."""
