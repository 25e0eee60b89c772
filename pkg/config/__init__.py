from .workbench_config import (
    OUTPUT_FORMATS, DEFAULT_FORMAT,
    DEFAULT_MAX_SEEDS, DEFAULT_MAX_DEPTH,
    DEFAULT_WALKS, DEFAULT_WALK_LENGTH, DEFAULT_PRNG_SEED,
    CYCLIC_BOUND_FACTOR, MAX_WORKERS, LOG_LEVEL,
    COEFFICIENT_SYSTEMS,
    SessionConfig
)
