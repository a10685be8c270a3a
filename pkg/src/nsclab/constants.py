"""Constants module."""
from pathlib import Path

import numpy as np

NSCLAB_CONFIG = "NSCLAB_CONFIG"

DEFAULT_CONFIGURATION_FILE = Path(__file__).parent / "resources" / "defaults.toml"

FOUR_PI_SQUARED = 4.0 * np.pi ** 2

# Tolerances
EXACT_TOLERANCE = 1e-12
PHYSICAL_TOLERANCE = 1e-10
REALITY_TOLERANCE = 1e-10
DIVERGENCE_TOLERANCE = 1e-8
CFL_NUMBER = 0.5
MINIMUM_XI_BOX = 20.0
MINIMUM_FIT_SAMPLES = 8

# Exit codes
EXIT_SUCCESS = 0
EXIT_NUMERICAL_ABORT = 1
EXIT_CONFIGURATION_ERROR = 2

# Checkpoint format
NSCF1_MAGIC = b"NSCF1\x00\x00\x00"
NSCF1_HEADER = "<IIIdddI"

# Configuration sections
RUN = "run"
GRID = "grid"
PHYSICS = "physics"
TIME = "time"
INIT = "init"
OUTPUT = "output"
BACKGROUND = "background"
SPLIT = "split"
MONITORS = "monitors"
STRICHARTZ = "strichartz"
KERNEL = "kernel"
RESCALED = "rescaled"
CONVERGENCE = "convergence"
ROSSBY_DECAY = "rossby_decay"
ENERGY_CHECK = "energy_check"

EXPERIMENT = "experiment"
OUTPUT_DIR = "output_dir"
SEED = "seed"

# Experiments
SIMULATE = "simulate"
STRICHARTZ_EXPERIMENT = "strichartz"
KERNEL_BOUND = "kernel-bound"
OSEEN_CONVERGENCE = "oseen-convergence"
ENERGY_CHECK_EXPERIMENT = "energy-check"
ROSSBY_DECAY_EXPERIMENT = "rossby-decay"
EXPERIMENTS = [
    SIMULATE,
    STRICHARTZ_EXPERIMENT,
    KERNEL_BOUND,
    OSEEN_CONVERGENCE,
    ENERGY_CHECK_EXPERIMENT,
    ROSSBY_DECAY_EXPERIMENT,
]

# Integrators
IFRK2 = "ifrk2"
IFRK4 = "ifrk4"
INTEGRATORS = [IFRK2, IFRK4]

# Background circulation handling
ANALYTIC = "analytic"
DROP_MEAN = "drop-mean"
BACKGROUND_MODES = [ANALYTIC, DROP_MEAN]

# Initial data recipes
ZERO = "zero"
OSEEN = "oseen"
OSEEN_PLUS_2D_PERTURBATION = "oseen_plus_2d_perturbation"
RANDOM_3D = "random_3d"
VERTICAL_SHEAR = "vertical_shear"
FILE = "file"
RECIPES = [ZERO, OSEEN, OSEEN_PLUS_2D_PERTURBATION, RANDOM_3D, VERTICAL_SHEAR, FILE]

# Norm names
L1 = "L1"
L2 = "L2"
L3 = "L3"
L4 = "L4"
LINF = "Linf"
HS = "Hs"
NORMS = [L1, L2, L3, L4, LINF, HS]

# Decay models
EXPONENTIAL = "exponential"
ALGEBRAIC = "algebraic"
DECAY_MODELS = [EXPONENTIAL, ALGEBRAIC]

# Output files
MANIFEST_FILE = "manifest.json"
MONITORS_FILE = "monitors.csv"
STRICHARTZ_FILE = "strichartz.csv"
KERNEL_FILE = "kernel_bound.csv"
CONVERGENCE_FILE = "convergence.csv"
ROSSBY_DECAY_FILE = "rossby_decay.csv"
SUMMARY_FILE = "summary.toml"
FOKKER_PLANCK_FILE = "fokker_planck.csv"
OMEGA_SCAN_FILE = "omega_scan.csv"
CHECKPOINT_PATTERN = "checkpoint-{index:05d}.nscf"
CHECKPOINT_GLOB = "checkpoint-*.nscf"
