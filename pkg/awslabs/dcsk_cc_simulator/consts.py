# Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# Constants

# Reference system (4-user MA systems, m=2, L=2, beta=32, distances 1:1:1)
DEFAULT_NUM_USERS = 4
DEFAULT_BETA = 32
DEFAULT_FADING_M = 2.0
DEFAULT_NUM_PATHS = 2
DEFAULT_DELAYS = (0, 1)  # in chips, (tau_1, tau_2) = (0, Ts)
DEFAULT_DISTANCE_SD = 1.0
DEFAULT_DISTANCE_SR = 1.0
DEFAULT_DISTANCE_RD = 1.0
DEFAULT_EB = 1.0  # energy per information bit per user
NAKAGAMI_MIN_M = 0.5

# Chaotic carrier
CHAOS_WARMUP_ITERATIONS = 64
CHAOS_MAX_ATTEMPTS = 8
CHAOS_MIN_BETA = 2

# Walsh codes
WALSH_MAX_EXPONENT = 16

# Analysis numerics
EQUAL_SCALE_RTOL = 1e-12
SERIES_TERM_RTOL = 1e-13
SERIES_CONSECUTIVE_SMALL_TERMS = 5
SERIES_MAX_TERMS = 100_000
SERIES_CHUNK = 512
NEGLIGIBLE_COMPONENT_RATIO = 1e-12
QUAD_EPSREL = 1e-10
QUAD_EPSABS = 1e-15
QUAD_LIMIT = 500
QUAD_TAIL_SIGMAS = 40.0
ROOT_BRACKET_DB = (-10.0, 80.0)

# Sweep defaults
DEFAULT_MIN_ERRORS = 100
MIN_MIN_ERRORS = 10
DEFAULT_MAX_BITS = 100_000_000
DEFAULT_BATCH_PERIODS = 256
DEFAULT_MASTER_SEED = 20121
DEFAULT_WORKERS = 1
PDF_VALIDATION_MIN_SAMPLES = 100_000
PDF_VALIDATION_TOLERANCE = 5e-3
PDF_VALIDATION_BINS_PER_SAMPLE = 4e-6
PDF_VALIDATION_MIN_BINS = 4
PDF_VALIDATION_MAX_BINS = 50
PDF_DENSITY_BINS = 100
PDF_DENSITY_TAIL = 1e-3
PDF_DENSITY_MAX_Z = 5.0
GRID_MATCH_TOLERANCE_DB = 1e-9

# Preset experiments
PRESET_SIM_MAX_BITS = 10_000_000
PRESET_SIM_GRID_DB = tuple(float(x) for x in range(0, 21, 2))
PRESET_FADING_GRID_DB = tuple(float(x) for x in range(0, 31, 2))
PRESET_FADING_M_VALUES = (1.0, 2.0, 3.0, 4.0)
PRESET_FADING_TARGET_BERS = (1e-4, 1e-5)

# Output
CSV_COLUMNS = ('eb_n0_db', 'system', 'ber', 'stderr', 'bits', 'errors', 'throughput', 'wall_ms')
CSV_SIGNIFICANT_DIGITS = 10

# Exit codes
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3
EXIT_IO_ERROR = 4

# Environment
LOG_LEVEL_ENV = 'DCSK_LOG_LEVEL'
WORKERS_ENV = 'DCSK_WORKERS'
DEFAULT_LOG_LEVEL = 'WARNING'
