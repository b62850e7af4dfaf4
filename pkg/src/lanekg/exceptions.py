"""Exception hierarchy. CLI handlers surface the class name as the error code."""


class LaneKgError(Exception):
    """Base class for all package errors."""


# ontology
class UnknownRelationError(LaneKgError):
    pass


class ObjectConceptMismatchError(LaneKgError):
    pass


class UnknownEntityError(LaneKgError):
    pass


class NoRelationForConceptError(LaneKgError):
    pass


class HypothesisNotIntentionError(LaneKgError):
    pass


# ingest
class NonPositiveGapError(LaneKgError):
    pass


class DanglingNeighborError(LaneKgError):
    pass


class InvalidRuleParamsError(LaneKgError):
    pass


# discretize
class DegenerateDistributionError(LaneKgError):
    pass


# kg_builder
class TooFewTracksError(LaneKgError):
    pass


class EmptyTestSetError(TooFewTracksError):
    pass


class InfeasibleSplitError(LaneKgError):
    pass


class MalformedRowError(LaneKgError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"{message} (line {line_number})")
        self.line_number = line_number


# kge
class IndexOutOfRangeError(LaneKgError):
    pass


class NonFiniteScoreError(LaneKgError):
    pass


class DivergenceDetectedError(LaneKgError):
    pass


class EmptyCorpusError(LaneKgError):
    pass


# bayes
class ZeroEvidenceMarginalError(LaneKgError):
    pass


class ZeroCountError(LaneKgError):
    pass


# eval
class EmptyHorizonSetError(LaneKgError):
    pass


class LengthMismatchError(LaneKgError):
    pass
