"""Exception hierarchy shared by every module of the package."""


class AlgdetError(Exception):
    """Base class for all errors raised by algdet."""


class SpecMismatchError(AlgdetError):
    """Two values or objects live over different fields."""


class AlgebraMismatchError(AlgdetError):
    """Arithmetic attempted between elements of different algebras."""


class AssociativityError(AlgdetError):
    def __init__(self, i, j, k, labels=None):
        self.witness = (i, j, k)
        names = (labels[i], labels[j], labels[k]) if labels else (i, j, k)
        super().__init__("structure table is not associative: (%s %s) %s != %s (%s %s)"
                         % (names + names))


class UnitError(AlgdetError):
    def __init__(self, i, labels=None):
        self.witness = i
        name = labels[i] if labels else i
        super().__init__("given unit does not act as identity on basis element %s" % (name,))


class NotAnIdealError(AlgdetError):
    """Quotient requested by a subspace that is not a two-sided ideal."""


class PreconditionError(AlgdetError):
    """An algorithm was called on input outside its domain."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class UnsupportedCharacteristicError(AlgdetError):
    """The generic radical method cannot run in this characteristic."""


class LiftingError(AlgdetError):
    """The Wedderburn-Malcev lifting system turned out inconsistent."""


class SizeGuardError(AlgdetError):
    """An exponential routine was asked to run beyond its configured size."""


class ParseError(AlgdetError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else "line %d: %s" % (line, message))


class GadgetError(AlgdetError):
    """A gadget failed its contract or could not be synthesised."""
