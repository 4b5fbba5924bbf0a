import argparse
import json
import logging
import os
import sys

import pydantic

from app.configs import cli as config
from app.configs import messages
from app import jobs
from curvelog import common
from curvelog.integrator import IntegratorConfig

logger = logging.getLogger(__name__)


def _load_json_argument(text):
    """Inline JSON, or @path for a file."""
    if text is None:
        return None
    if text.startswith(config.JSON_FILE_PREFIX):
        with open(text[len(config.JSON_FILE_PREFIX):], encoding='utf8') as f:
            return json.load(f)
    return json.loads(text)


def load_config_file(path):
    if not path:
        return {}
    with open(path, encoding='utf8') as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(messages.CONFIG_NOT_OBJECT_TEMPLATE.format(path))
    unknown = sorted(set(data) - set(config.CONFIG_KEYS))
    if unknown:
        raise ValueError(messages.CONFIG_UNKNOWN_KEYS_TEMPLATE.format(path, unknown))
    return data


class CliArgumentParser(argparse.ArgumentParser):
    """Reports malformed arguments as ValueError instead of exiting with status 2."""

    def error(self, message):
        raise ValueError(f'{self.prog}: {message}')


def build_parser():
    parser = CliArgumentParser(prog='curvelog', description=messages.DESCRIPTION)
    parser.add_argument(dest='command', choices=config.COMMANDS)
    parser.add_argument('--poles', default=config.DEFAULT_POLES, help=messages.HELP_POLES)
    parser.add_argument('--word', help=messages.HELP_WORD)
    parser.add_argument('--tensor-json', dest='tensor', help=messages.HELP_TENSOR)
    parser.add_argument('--point', help=messages.HELP_POINT)
    parser.add_argument('--path-json', dest='path', help=messages.HELP_PATH)
    parser.add_argument('--pole', help=messages.HELP_POLE)
    parser.add_argument('--basepoint', help=messages.HELP_BASEPOINT)
    parser.add_argument('--section-json', dest='section', help=messages.HELP_SECTION)
    parser.add_argument('--order', type=int, help=messages.HELP_ORDER)
    parser.add_argument('--log-degree', dest='log_degree', type=int, help=messages.HELP_LOG_DEGREE)
    parser.add_argument('--weight', type=int)
    parser.add_argument('--rtol', type=float)
    parser.add_argument('--atol', type=float)
    parser.add_argument('--max-steps', dest='max_steps', type=int)
    parser.add_argument('--csv', action='store_true', help=messages.HELP_CSV)
    parser.add_argument('--seed', type=int, default=config.DEFAULT_SEED, help=messages.HELP_SEED)
    parser.add_argument('--quick', action='store_true', help=messages.HELP_QUICK)
    parser.add_argument('--config', default=config.CONFIG_PATH, help=messages.HELP_CONFIG)
    return parser


def job_from_args(args) -> jobs.JobSpec:
    """Flags override the config file, which overrides the defaults."""
    settings = load_config_file(args.config or os.getenv(config.CONFIG_PATH_ENV))
    integrator = IntegratorConfig(**settings).with_overrides(
        rtol=args.rtol, atol=args.atol, max_steps=args.max_steps, weight=args.weight,
    )
    fields = {
        'command': args.command,
        'poles': args.poles.split(','),
        'word': args.word,
        'tensor': _load_json_argument(args.tensor),
        'point': args.point,
        'path': _load_json_argument(args.path),
        'pole': args.pole,
        'basepoint': args.basepoint,
        'section': _load_json_argument(args.section),
        'log_degree': args.log_degree,
        'csv': args.csv,
        'seed': args.seed,
        'quick': args.quick,
        'integrator': integrator,
    }
    if args.order is not None:
        fields['order'] = args.order
    return jobs.JobSpec(**fields)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        job = job_from_args(args)
    except common.DomainError as exc:
        logger.error(messages.DOMAIN_ERROR_TEMPLATE.format(exc))
        print(common.dump_to_json({'error': type(exc).__name__, 'message': str(exc)}))
        return config.EXIT_DOMAIN_ERROR
    except (OSError, ValueError, pydantic.ValidationError) as exc:
        logger.error(messages.BAD_INPUT_TEMPLATE.format(exc))
        print(common.dump_to_json({'error': type(exc).__name__, 'message': str(exc)}))
        return config.EXIT_BAD_INPUT
    code, text = jobs.run(job)
    sys.stdout.write(text if text.endswith('\n') else text + '\n')
    return code
