import os

# Integrator
DEFAULT_RTOL = float(os.getenv('CURVELOG_RTOL', 1e-10))
DEFAULT_ATOL = float(os.getenv('CURVELOG_ATOL', 1e-12))
DEFAULT_MAX_STEPS = int(os.getenv('CURVELOG_MAX_STEPS', 200000))
DEFAULT_WEIGHT = int(os.getenv('CURVELOG_WEIGHT', 6))
SAFETY_FACTOR = 0.9
MIN_STEP_FACTOR = 0.2
MAX_STEP_FACTOR = 5.0
INITIAL_STEPS_PER_SEGMENT = 8

# Pole guard: max(ABS, REL * min pairwise pole distance)
POLE_GUARD_ABS = 1e-8
POLE_GUARD_REL = 1e-3

# Paths
DETOUR_FRACTION = 0.25
CONTIGUITY_TOLERANCE = 1e-9

# Local expansions
DEFAULT_EXPANSION_ORDER = 40
EXPANSION_ORDER_SLACK = 4
MATCHING_CHECK_TOLERANCE = 1e-6
COEFFICIENT_CUTOFF = 1e-14

# Hyperlogarithms
MZV_POLES = ('0', '1')

# Basepoint search grid
BASEPOINT_GRID_STEP = '1/2'
BASEPOINT_GRID_MARGIN = 1

# Monodromy
UNIPOTENCE_TOLERANCE = 1e-8

LOGGER_NAME = 'curvelog'
