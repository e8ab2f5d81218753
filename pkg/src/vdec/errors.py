"""Exception hierarchy shared by every module."""


class VdecError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(VdecError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class NotConnected(GraphError):
    pass


class HasCycle(GraphError):
    pass


class TooSmall(GraphError):
    pass


class InvalidShape(GraphError):
    pass


class ParseError(VdecError):
    pass


class UncoloredEdge(VdecError):
    pass


class IndistinguishableByStructure(VdecError):
    """The graph has an isolated edge or two isolated vertices, so no vdec exists."""


class SolverError(VdecError):
    pass


class Infeasible(SolverError):
    pass


class BudgetExceeded(SolverError):
    pass


class StructurallyUncolorable(SolverError):
    pass


class HypothesisViolated(VdecError):
    pass


class InternalCaseExhaustion(VdecError):
    """No reduction case applies, or a structural claim used by a case failed."""


class RebalanceFailed(VdecError):
    pass


class NotSpanningTree(VdecError):
    pass


class IsTree(VdecError):
    pass


class NotFound(VdecError):
    pass
