"""Default configuration values for ksjko runs.

Defines baseline values used when a run configuration omits a key, and
the tolerances shared by the solvers.
"""

# Model Defaults
DEFAULT_POTENTIAL = "quadratic"
DEFAULT_N_CELLS = 800
DEFAULT_N_QUANTILES = 400
DEFAULT_SEED = 0
HALF_WIDTH_FACTOR = 10.0  # R = HALF_WIDTH_FACTOR / sqrt(lambda0)

# Inner Solver Defaults (one JKO step)
DEFAULT_MAX_OUTER_ALTERNATIONS = 50
DEFAULT_MAX_NEWTON_ITERS = 40
DEFAULT_GRAD_TOL = 1e-9  # on N * max|grad F|
DEFAULT_ENERGY_DECREASE_TOL = 1e-12
DEFAULT_BACKTRACKING = 0.5
DEFAULT_ARMIJO = 1e-4
DEFAULT_MAX_BACKTRACKS = 30
DEFAULT_STALL_TOL = 1e-7

# Equilibrium Defaults
DEFAULT_PICARD_TOL = 1e-12
DEFAULT_PICARD_MAX_ITERS = 500
DEFAULT_PICARD_DAMPING = 1.0

# Finite-Difference Oracle Defaults
DEFAULT_FD_DT = 1e-3
DEFAULT_FD_SCHEME = "central"
DEFAULT_FD_RECORD_EVERY = 1

# Diagnostics Defaults
DEFAULT_FIT_UPPER_FRACTION = 0.5  # window starts when L < 0.5 L0
DEFAULT_FIT_LOWER_FRACTION = 1e-8  # window ends when L <= 1e-8 L0
DEFAULT_MIN_DECAY_FACTOR = 10.0
DEFAULT_ENVELOPE_DRIFT = 0.25  # late envelope constant may exceed the transient one by 25%
DEFAULT_INVARIANT_SAMPLES = 50

# Output Defaults
DEFAULT_OUTPUT_DIR = "ksjko-out"
DEFAULT_STRIDE = 10
DEFAULT_PLOTS = True

# Sweep Defaults
DEFAULT_SWEEP_CHI: list[float] = [0.0, 0.05, 0.1, 0.2]
THREADS_ENV_VAR = "KSJKO_THREADS"
