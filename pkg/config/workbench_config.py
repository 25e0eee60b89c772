"""
Workbench configuration parameters.
Defines output formats, search limits and truncation defaults for the CLI.
"""

# Output formats understood by every command (dot only where a graph exists)
OUTPUT_FORMATS = ("json", "dot", "table")
DEFAULT_FORMAT = "table"

# Exchange-graph search limits
DEFAULT_MAX_SEEDS = 1000
DEFAULT_MAX_DEPTH = 50

# Random mutation walks
DEFAULT_WALKS = 100
DEFAULT_WALK_LENGTH = 12
DEFAULT_PRNG_SEED = 0

# Truncation bound used when no certified bound exists: factor * deg(W~)
CYCLIC_BOUND_FACTOR = 3

# Worker processes for per-vertex certificate checks (1 = sequential)
MAX_WORKERS = 1

LOG_LEVEL = "WARNING"

# Coefficient systems for initial seeds
COEFFICIENT_SYSTEMS = ("polarised", "principal", "none")


class SessionConfig:
    """
    Configuration for one workbench invocation.
    Encapsulates the input, output format and all limits of a command.
    """

    def __init__(
        self,
        input_path: str = None,
        output_format: str = DEFAULT_FORMAT,
        bound: int = None,
        max_seeds: int = DEFAULT_MAX_SEEDS,
        max_depth: int = DEFAULT_MAX_DEPTH,
        walks: int = DEFAULT_WALKS,
        walk_length: int = DEFAULT_WALK_LENGTH,
        prng_seed: int = DEFAULT_PRNG_SEED,
        workers: int = MAX_WORKERS,
        coefficients: str = "polarised",
    ):
        """
        Initialize a session configuration.

        Args:
            input_path: Quiver (or seed) JSON file the command reads
            output_format: One of OUTPUT_FORMATS
            bound: Truncation degree override (None = certified or default bound)
            max_seeds: Exchange-graph node limit
            max_depth: Exchange-graph BFS depth limit
            walks: Number of random mutation walks
            walk_length: Length of each random walk
            prng_seed: Seed of the single PRNG used for walks
            workers: Worker processes for certificate checks
            coefficients: Coefficient system of initial seeds
        """
        self.input_path = input_path
        self.output_format = output_format
        self.bound = bound
        self.max_seeds = max_seeds
        self.max_depth = max_depth
        self.walks = walks
        self.walk_length = walk_length
        self.prng_seed = prng_seed
        self.workers = workers
        self.coefficients = coefficients

        self._validate()

    def _validate(self):
        """Validate that the configuration is internally consistent."""
        assert self.output_format in OUTPUT_FORMATS, \
            f"Output format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}"
        assert self.bound is None or self.bound >= 0, \
            "Truncation bound must be non-negative"
        assert self.max_seeds > 0 and self.max_depth > 0, \
            "Exchange-graph limits must be positive"
        assert self.walks >= 0 and self.walk_length > 0, \
            "Walk count must be non-negative and walk length positive"
        assert self.workers > 0, \
            "Need at least one worker"
        assert self.coefficients in COEFFICIENT_SYSTEMS, \
            f"Coefficients must be one of {COEFFICIENT_SYSTEMS}"

    def to_dict(self) -> dict:
        return dict(vars(self))
