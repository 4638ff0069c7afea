"""Exception hierarchy shared by every module of the package."""


class SheafError(ValueError):
    """Base class for all input and validation errors raised by sheafext."""


# scenario
class ScenarioError(SheafError):
    pass


class EmptyCover(ScenarioError):
    pass


class UncoveredMeasurement(ScenarioError):
    def __init__(self, measurement):
        super().__init__(f"measurement {measurement!r} is not in any context of the cover")
        self.measurement = measurement


class UnknownLabel(ScenarioError):
    def __init__(self, label, where="cover"):
        super().__init__(f"unknown label {label!r} in {where}")
        self.label = label


class MismatchedMeasurementSets(ScenarioError):
    pass


class BadArity(ScenarioError):
    pass


class EmptySite(ScenarioError):
    pass


# model
class ModelError(SheafError):
    pass


class NotSubcontext(ModelError):
    pass


class NotInDownClosure(ModelError):
    pass


class MissingRow(ModelError):
    def __init__(self, context):
        super().__init__(f"no distribution given for maximal context {sorted(context)}")
        self.context = context


class UnexpectedRow(ModelError):
    def __init__(self, context):
        super().__init__(f"row {sorted(context)} is not a maximal context of the scenario")
        self.context = context


class NormalizationError(ModelError):
    def __init__(self, context, detail):
        super().__init__(f"row {list(context)}: {detail}")
        self.context = context


class IncompatibleRows(ModelError):
    def __init__(self, violation):
        super().__init__(f"rows are not compatible: {violation}")
        self.violation = violation


class EmptyInducedCover(ModelError):
    pass


class SemiringMismatch(ModelError):
    pass


# extension / bell / ks
class CoverNotLarger(SheafError):
    pass


class InstanceTooLarge(SheafError):
    pass


class NotAnExtension(SheafError):
    pass


class CoverNotPowerCover(SheafError):
    pass


class NotConstructedPair(SheafError):
    pass


class NonBinaryOutcome(SheafError):
    pass


# file format
class ParseError(SheafError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
