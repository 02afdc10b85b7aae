"""Exception types shared across the package."""


class IfsLabError(Exception):
    """Base class for every error raised by this package."""


class GeometryValidationError(IfsLabError, ValueError):
    """A geometric object violates its construction invariants."""


class DimensionMismatchError(IfsLabError, ValueError):
    """Operands live in spaces of different dimension."""

    def __init__(self, expected, got, what="operand"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what}: expected dimension {expected}, got {got}")


class SymbolRangeError(IfsLabError, ValueError):
    """A symbol falls outside the alphabet 1..N."""

    def __init__(self, symbol, n_symbols):
        self.symbol = symbol
        self.n_symbols = n_symbols
        super().__init__(f"symbol {symbol} outside alphabet 1..{n_symbols}")


class DriverExhaustedError(IfsLabError, RuntimeError):
    """A finite custom driver ran out of symbols."""


class EmptyCloudError(IfsLabError, ValueError):
    """An operation that needs a nonempty point cloud received an empty one."""


class DegenerateTreeError(IfsLabError, RuntimeError):
    """Every sampled pair on the orbit tree coincides; no Lipschitz quotient exists."""

    def __init__(self, pairs_sampled):
        self.pairs_sampled = pairs_sampled
        super().__init__(
            f"degenerate tree: all {pairs_sampled} sampled pairs closer than 1e-12"
        )
