"""Exception hierarchy.  Input problems derive from :class:`InputError`."""


class QuiverExtError(Exception):
    pass


class InputError(QuiverExtError, ValueError):
    """Malformed or inconsistent user input."""


class ComplexBroken(QuiverExtError):
    """Two consecutive differentials do not compose to zero."""


class MissingTwistEntry(InputError):
    pass


class InhomogeneousRelation(InputError):
    pass


class NonParallelRelation(InputError):
    pass


class NotAdmissible(QuiverExtError):
    """No nilpotency index was found within the degree budget."""


class CutoffExceeded(QuiverExtError):
    pass


class ShapeMismatch(InputError):
    pass


class BlockInconsistency(InputError):
    pass


class SingularConnectingMap(QuiverExtError):
    pass


class HasRelations(QuiverExtError):
    pass


class UnsupportedRank(InputError):
    pass


class NotCommuting(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.field = field


class SchemaViolation(ParseError):
    pass
