"""Exception hierarchy shared by every module.

All errors raised on bad user input derive from FakeReviewsError so the
CLI can map them to exit code 1; anything else escaping to the top level
is treated as an internal invariant violation (exit code 2).
"""


class FakeReviewsError(Exception):
    """Base class for all errors raised by this package."""


# --- data ingestion ---------------------------------------------------------

class MissingColumn(FakeReviewsError):
    pass


class MalformedRow(FakeReviewsError):
    pass


class BadLabel(FakeReviewsError):
    pass


class DegenerateSplit(FakeReviewsError):
    pass


# --- text pipeline ----------------------------------------------------------

class BadPipelineConfig(FakeReviewsError):
    pass


class StopwordFileMissing(FakeReviewsError):
    pass


class LemmaFileMissing(FakeReviewsError):
    pass


# --- vectorization ----------------------------------------------------------

class EmptyVocabulary(FakeReviewsError):
    pass


class BadHeader(FakeReviewsError):
    pass


class DimMismatch(FakeReviewsError):
    pass


class NonFiniteValue(FakeReviewsError):
    pass


class MissingId(FakeReviewsError):
    pass


class DuplicateId(FakeReviewsError):
    pass


# --- classifiers ------------------------------------------------------------

class NonFiniteFeature(FakeReviewsError):
    pass


class BadK(FakeReviewsError):
    pass


class SingleClassTraining(FakeReviewsError):
    pass


class NegativeFeatureForMultinomial(FakeReviewsError):
    pass


# --- ensembles and evaluation -----------------------------------------------

class BadEnsemble(FakeReviewsError):
    pass


class EmptyTestSet(FakeReviewsError):
    pass


# --- persistence ------------------------------------------------------------

class VersionMismatch(FakeReviewsError):
    pass


class CorruptBundle(FakeReviewsError):
    pass


class PathError(FakeReviewsError):
    pass
