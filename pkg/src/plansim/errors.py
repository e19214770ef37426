"""Error types shared across the package."""


class PlansimError(Exception):
    """Base class for all data and configuration errors raised by plansim."""


class CorpusError(PlansimError):
    """Raised when documents cannot be loaded or are unusable for an analysis."""


class CatalogError(PlansimError):
    """Raised when a goal catalog file is malformed."""


class LexiconError(PlansimError):
    """Raised when an area lexicon file is malformed."""
