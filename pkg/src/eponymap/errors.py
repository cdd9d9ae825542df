"""Exception types shared across the package."""


class EponymapError(Exception):
    """Base class for all package errors."""


class SourceUnavailable(EponymapError):
    """A remote source could not be reached after bounded retries."""


class MalformedResponse(EponymapError):
    """A source answered with a document we cannot interpret."""


class NotAStreetPage(EponymapError):
    """The HTML document carries no recognizable street infobox."""


class SchemaMismatch(EponymapError):
    """An imported file is missing required columns."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(f"missing required columns: {', '.join(self.missing)}")


class EmptyFile(EponymapError):
    """An imported file contains no data rows."""


class TranslationFailed(EponymapError):
    """The configured translator raised; the record passes through untranslated."""


class EmptyGeometry(EponymapError):
    """A geometry operation received no coordinates."""


class InvalidSnapshot(EponymapError):
    """A feature collection violates record invariants.

    ``diagnostics`` holds one human-readable line per offending feature.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        head = self.diagnostics[0] if self.diagnostics else "invalid snapshot"
        super().__init__(f"{head} ({len(self.diagnostics)} problem(s))")


class UnknownCity(EponymapError):
    """A query referenced a city the snapshot does not know."""


class NoMatch(EponymapError):
    """A random draw was requested from an empty result set."""


class PipelineStageError(EponymapError):
    """A pipeline stage failed; carries the stage name for reporting."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")
