"""Exception hierarchy shared by every module of the package."""


class AbtError(Exception):
    """Base class. ``path`` locates the offending subterm, when known."""

    def __init__(self, message, path=()):
        super().__init__(message)
        self.message = message
        self.path = tuple(path)


# signatures

class SignatureError(AbtError):
    pass


class DuplicateSort(SignatureError):
    def __init__(self, name):
        super().__init__(f"duplicate sort {name!r}")
        self.name = name


class DuplicateOperator(SignatureError):
    def __init__(self, name):
        super().__init__(f"duplicate operator {name!r}")
        self.name = name


class UnknownSort(SignatureError):
    def __init__(self, name):
        super().__init__(f"unknown sort {name!r}")
        self.name = name


class UnknownOperator(SignatureError):
    def __init__(self, name):
        super().__init__(f"unknown operator {name!r}")
        self.name = name


# contexts and renamings

class ContextError(AbtError):
    pass


class DuplicateName(ContextError):
    def __init__(self, name, kind="name"):
        super().__init__(f"duplicate {kind} {name!r}")
        self.name = name


class DuplicateSymbol(DuplicateName):
    def __init__(self, name):
        super().__init__(name, "symbol")


class NotFound(ContextError):
    def __init__(self, name):
        super().__init__(f"{name!r} not found in context")
        self.name = name


class NotInjective(ContextError):
    def __init__(self, first, second):
        super().__init__(f"renaming is not injective: {first!r} and {second!r} collide")
        self.names = (first, second)


class SortViolation(ContextError):
    def __init__(self, name):
        super().__init__(f"renaming does not preserve the sort of {name!r}")
        self.name = name


class IncompleteMap(ContextError):
    def __init__(self, name):
        super().__init__(f"renaming has no image for {name!r}")
        self.name = name


class ContextMismatch(ContextError):
    def __init__(self, message="codomain and domain do not match"):
        super().__init__(message)


class SymbolNotInDomain(ContextError):
    def __init__(self, name):
        super().__init__(f"symbol {name!r} is not in the domain of the renaming")
        self.name = name


# sorting

class SortingError(AbtError):
    pass


class UnboundVariable(SortingError):
    def __init__(self, name, path=()):
        super().__init__(f"unbound variable {name!r}", path)
        self.name = name


class UnboundMetavariable(SortingError):
    def __init__(self, name, path=()):
        super().__init__(f"unbound metavariable {name!r}", path)
        self.name = name


class UnboundSymbol(SortingError):
    def __init__(self, name, path=()):
        super().__init__(f"unbound symbol {name!r}", path)
        self.name = name


class SortMismatch(SortingError):
    def __init__(self, expected, found, path=(), subject=None):
        what = f" for {subject!r}" if subject is not None else ""
        super().__init__(f"sort mismatch{what}: expected {expected}, found {found}", path)
        self.expected = expected
        self.found = found
        self.subject = subject


class ArityMismatch(SortingError):
    def __init__(self, expected, found, path=(), what="arguments"):
        super().__init__(f"expected {expected} {what}, found {found}", path)
        self.expected = expected
        self.found = found


class ValenceMismatch(SortingError):
    def __init__(self, expected, found, path=()):
        super().__init__(f"valence mismatch: expected {expected}, found {found}", path)
        self.expected = expected
        self.found = found


# substitution and interpretation

class DuplicateTarget(AbtError):
    def __init__(self, name):
        super().__init__(f"variable {name!r} is substituted twice")
        self.name = name


class IncompleteEnvironment(AbtError):
    def __init__(self, name):
        super().__init__(f"environment has no entry for {name!r}")
        self.name = name


# sheaf checks

class NotASheaf(AbtError):
    pass


class ElementNotInFiber(AbtError):
    pass


# sequents

class PresuppositionFailure(AbtError):
    def __init__(self, cause):
        super().__init__(f"presupposition fails: {cause.message if isinstance(cause, AbtError) else cause}",
                         getattr(cause, "path", ()))
        self.cause = cause


# concrete syntax

class ParseError(AbtError):
    def __init__(self, message, span=None):
        super().__init__(message)
        self.span = span
