import os

COMMANDS = [
    'eval',
    'mzv',
    'reduce',
    'kernel',
    'monodromy',
    'periods',
    'expand',
    'kz-check',
    'selftest',
]

CONFIG_PATH_ENV = 'CURVELOG_CONFIG'
CONFIG_PATH = os.getenv(CONFIG_PATH_ENV)
CONFIG_KEYS = ['rtol', 'atol', 'max_steps', 'weight']

DEFAULT_POLES = '0,1'
DEFAULT_SEED = 0
JSON_FILE_PREFIX = '@'
CSV_DELIMITER = ','

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_DOMAIN_ERROR = 2
EXIT_NUMERIC_FAILURE = 3

# Self-test sample sizes: the full acceptance counts, and the reduced set behind --quick
SELFTEST_SIZES = {
    'pairs': int(os.getenv('CURVELOG_SELFTEST_PAIRS', 50)),
    'tensors': int(os.getenv('CURVELOG_SELFTEST_TENSORS', 100)),
    'generators': int(os.getenv('CURVELOG_SELFTEST_GENERATORS', 100)),
    'sections': int(os.getenv('CURVELOG_SELFTEST_SECTIONS', 10)),
    'points': int(os.getenv('CURVELOG_SELFTEST_POINTS', 5)),
    'homotopy': int(os.getenv('CURVELOG_SELFTEST_HOMOTOPY', 20)),
    'expansion_weight': 3,
}
SELFTEST_QUICK_SIZES = {
    'pairs': 6,
    'tensors': 6,
    'generators': 6,
    'sections': 3,
    'points': 2,
    'homotopy': 4,
    'expansion_weight': 2,
}
ZETA_SERIES_TERMS = 10 ** 6
SELFTEST_RTOL = 1e-12
SELFTEST_ATOL = 1e-14

__all__ = [
    'COMMANDS',
    'CONFIG_KEYS',
    'CONFIG_PATH',
    'CONFIG_PATH_ENV',
    'CSV_DELIMITER',
    'DEFAULT_POLES',
    'DEFAULT_SEED',
    'EXIT_BAD_INPUT',
    'EXIT_DOMAIN_ERROR',
    'EXIT_NUMERIC_FAILURE',
    'EXIT_OK',
    'JSON_FILE_PREFIX',
    'SELFTEST_ATOL',
    'SELFTEST_QUICK_SIZES',
    'SELFTEST_RTOL',
    'SELFTEST_SIZES',
    'ZETA_SERIES_TERMS',
]
