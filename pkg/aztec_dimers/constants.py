"""
Oct-2026

Aztec diamond dimers for Django - constants
"""


class TypeBase:
    @classmethod
    def all(self):
        """
        generate a list of all class variable values
        """
        return [
            getattr(self, value)
            for value in [attr for attr in dir(self) if not callable(getattr(self, attr)) and not attr.startswith("__")]
        ]


class DominoKinds(TypeBase):
    NORTH = "N"
    EAST = "E"
    SOUTH = "S"
    WEST = "W"


class DominoColors(TypeBase):
    NORTH = "red"
    EAST = "yellow"
    SOUTH = "green"
    WEST = "blue"


KIND_COLORS = {
    DominoKinds.NORTH: DominoColors.NORTH,
    DominoKinds.EAST: DominoColors.EAST,
    DominoKinds.SOUTH: DominoColors.SOUTH,
    DominoKinds.WEST: DominoColors.WEST,
}

# lattice directions in Kasteleyn coordinates
E1 = (1, 1)
E2 = (-1, 1)

# w - b for each domino kind
KIND_STEPS = {
    DominoKinds.NORTH: E1,
    DominoKinds.EAST: E2,
    DominoKinds.SOUTH: (-E1[0], -E1[1]),
    DominoKinds.WEST: (-E2[0], -E2[1]),
}


class Regimes(TypeBase):
    AUTO = "auto"
    EXACT = "exact"
    NUMERIC = "numeric"


class ExactQuantities(TypeBase):
    INVERSE = "inverse"
    EDGE_PROBABILITY = "edge-prob"
    LINE_KERNEL = "line-kernel"
    PARTITION = "partition"


class ValidationSuites(TypeBase):
    INVERSE = "inverse"
    FIVE_TERM = "fiveterm"
    PARTITION = "partition"
    SAMPLER = "sampler"
    ASYMPTOTICS = "asymptotics"


class GapModes(TypeBase):
    THINNED = "thinned"
    THICKENED = "thickened"


class Boundaries(TypeBase):
    NORTH = "north"
    SOUTH = "south"


class GibbsPrefactors(TypeBase):
    # r1^(-a1+b1) r2^(-b2+a2), the convention that matches finite n
    BALANCED = "balanced"
    # r1^(a1+b1) r2^(-b2+a2), the alternative printed convention
    SHIFTED = "shifted"


class ExitCodes(TypeBase):
    SUCCESS = 0
    FAILURE = 1
    USAGE = 2


TILING_FILE_MAGIC = "aztec-dimers-tiling"
TILING_FILE_FORMAT_VERSION = 1

# Airy function evaluation window
AIRY_DOMAIN = (-40.0, 40.0)

# significance level of every chi-square acceptance test
CHI_SQUARE_SIGNIFICANCE = 1e-3

KIND_ORDER = (DominoKinds.NORTH, DominoKinds.EAST, DominoKinds.SOUTH, DominoKinds.WEST)
