import os

AUDIT_CONFIG_FILEPATH: str = os.path.join("config", "audit.yaml")

# budget (overridable from config/audit.yaml and the environment)
MAX_FIELD_Q: int = 64
MAX_SPACE_Q: int = 16
MAX_POINTS: int = 40000
MAX_FIELD_Q_ENV: str = "AUDIT_MAX_FIELD_Q"
MAX_SPACE_Q_ENV: str = "AUDIT_MAX_SPACE_Q"
MAX_POINTS_ENV: str = "AUDIT_MAX_POINTS"

# catalog
HYPERBOLIC: str = "hyperbolic"
HERMITIAN: str = "hermitian"
FULLSPACE: str = "fullspace"
CATALOG_NAMES: tuple = (HYPERBOLIC, HERMITIAN, FULLSPACE)

# checks
CHECK_BOUNDS: str = "bounds"
CHECK_SECTIONS: str = "sections"
CHECK_LINES: str = "lines"
CHECK_TANGENCY: str = "tangency"
CHECK_ALTFORM: str = "altform"
CHECK_QUADRIC_CENSUS: str = "quadric_census"
CHECK_DEGREE_GATE: str = "degree_gate"
ALL_CHECKS: tuple = (
    CHECK_BOUNDS,
    CHECK_SECTIONS,
    CHECK_LINES,
    CHECK_TANGENCY,
    CHECK_ALTFORM,
    CHECK_QUADRIC_CENSUS,
    CHECK_DEGREE_GATE,
)

# quadric census is exhaustive over the projective space of quadric forms
QUADRIC_CENSUS_FIELDS: tuple = (2, 3)

# tangency census examines this many extremal-curve sections per surface
TANGENCY_SECTIONS_PER_SURFACE: int = 3

# random sampling
RANDOM_SEED: int = 42
RANDOM_SAMPLES: int = 200

# element and form syntax
FIELD_GENERATOR_NAME: str = "t"
QUATERNARY_VARIABLES: tuple = ("X0", "X1", "X2", "X3")
TERNARY_VARIABLES: tuple = ("U", "V", "W")
TERNARY_ALIASES: tuple = ("X", "Y", "Z")
