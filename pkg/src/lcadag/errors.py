"""Exception hierarchy.

Every input-validation failure derives from :class:`InputError` so the CLI can
map it to exit code 2 in one place.
"""


class LcaDagError(Exception):
    """Base class for all package errors."""


class InputError(LcaDagError, ValueError):
    """The caller supplied an object that violates a structural requirement."""


class EmptyGraphError(InputError):
    pass


class SelfLoopError(InputError):
    def __init__(self, vertex):
        super().__init__(f"self-loop on vertex {vertex!r}")
        self.vertex = vertex


class CyclicError(InputError):
    def __init__(self, cycle):
        super().__init__("directed cycle: " + " -> ".join(map(repr, cycle)))
        self.cycle = list(cycle)


class UnlabeledLeafError(InputError):
    def __init__(self, vertex):
        super().__init__(f"leaf {vertex!r} has no label")
        self.vertex = vertex


class LabeledInternalError(InputError):
    def __init__(self, vertex):
        super().__init__(f"internal vertex {vertex!r} carries a label")
        self.vertex = vertex


class DuplicateLabelError(InputError):
    def __init__(self, label, vertices):
        super().__init__(f"label {label!r} used by {sorted(map(repr, vertices))}")
        self.label = label
        self.vertices = tuple(vertices)


class UnknownVertexError(InputError, KeyError):
    def __init__(self, vertex):
        super().__init__(f"unknown vertex {vertex!r}")
        self.vertex = vertex

    def __str__(self):
        return self.args[0]


class UnknownLabelError(InputError, KeyError):
    def __init__(self, label):
        super().__init__(f"unknown leaf label {label!r}")
        self.label = label

    def __str__(self):
        return self.args[0]


class EmptySetError(InputError):
    pass


class RemovesEverythingError(InputError):
    pass


class NotGroundedError(InputError):
    pass


class NotPreIAryError(InputError):
    def __init__(self, witness):
        super().__init__(f"not pre-I-ary: {sorted(witness)} has no unique minimal superset")
        self.witness = witness


class NotIAryError(InputError):
    pass


class InfeasibleParamsError(InputError):
    pass


class DocumentSyntaxError(InputError):
    """Malformed input document; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotWellDefinedError(LcaDagError):
    """``lca(A)`` is undefined because ``LCA(A)`` is not a singleton."""

    def __init__(self, labels, lcas):
        super().__init__(f"lca of {sorted(labels)} is not well-defined: {len(lcas)} LCAs")
        self.labels = frozenset(labels)
        self.lcas = frozenset(lcas)


class ResourceLimitError(LcaDagError):
    def __init__(self, count, cap):
        super().__init__(f"enumeration of {count} subsets exceeds cap {cap}")
        self.count = count
        self.cap = cap


class ContractViolation(LcaDagError, AssertionError):
    """A guaranteed post-condition failed; indicates a bug, not bad input."""
