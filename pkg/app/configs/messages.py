DESCRIPTION = (
    'Iterated integrals and hyperlogarithms on the punctured sphere: '
    'numeric evaluation, exact normal forms, monodromy and local expansions.'
)

MISSING_ARGUMENT_TEMPLATE = 'Command "{}" needs {}'
UNKNOWN_COMMAND_TEMPLATE = 'Unknown command {!r}, expected one of {}'
CONFIG_NOT_OBJECT_TEMPLATE = 'Config file {} must contain a JSON object'
CONFIG_UNKNOWN_KEYS_TEMPLATE = 'Config file {} has unknown keys {}'
BAD_INPUT_TEMPLATE = 'Malformed input: {}'
DOMAIN_ERROR_TEMPLATE = 'Domain error: {}'
NUMERIC_FAILURE_TEMPLATE = 'Numeric failure: {}'

COMMAND_STARTED_TEMPLATE = 'Command {} started'
COMMAND_FINISHED_TEMPLATE = 'Command {} finished in {:.3f}s with exit code {}'

CRITERION_TEMPLATE = 'Criterion {} ({}): {} in {:.2f}s'
CRITERION_ERROR_TEMPLATE = 'Criterion {} ({}) raised {!r}'

HELP_POLES = 'Finite poles, comma separated exact points (e.g. "0,1" or "0,1/2+i")'
HELP_WORD = 'Word of pole labels, comma separated; "1,0" is [h_1|h_0]'
HELP_TENSOR = 'Omega tensor as inline JSON, or @file'
HELP_POINT = 'Evaluation point (e.g. "1/2+i" or "0.3-0.2i")'
HELP_PATH = 'Path JSON ({"base": [re, im], "segments": [...]}), or @file'
HELP_POLE = 'Pole used by monodromy (loop center) and expand (expansion center)'
HELP_BASEPOINT = 'Exact basepoint x0 (default: grid point away from the poles)'
HELP_SECTION = 'Section JSON {"corrections": {label: rf}}, or @file; default sigma_0'
HELP_ORDER = 'Expansion order J'
HELP_LOG_DEGREE = 'Maximal log degree K (default: word weight)'
HELP_CSV = 'Emit the integration trace of eval as CSV'
HELP_SEED = 'Seed for the randomized self-test samples'
HELP_QUICK = 'Run the self-test on the reduced sample sizes'
HELP_CONFIG = 'JSON config file with rtol, atol, max_steps, weight (env CURVELOG_CONFIG)'
