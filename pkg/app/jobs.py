import csv
import io
import json
import logging
import math
import time
import typing

import numpy as np
import pydantic

from app.configs import cli as config
from app.configs import messages
from curvelog import common
from curvelog import config as curvelog_config
from curvelog import curve
from curvelog import exact
from curvelog import hyperlog
from curvelog import iterint
from curvelog import local_expansion
from curvelog import monodromy
from curvelog import paths
from curvelog import reduce
from curvelog import shuffle
from curvelog.integrator import IntegratorConfig

logger = logging.getLogger(__name__)


class JobSpec(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    command: str
    poles: typing.List[str] = pydantic.Field(default_factory=lambda: config.DEFAULT_POLES.split(','))
    word: typing.Optional[str] = None
    tensor: typing.Optional[dict] = None
    point: typing.Optional[str] = None
    path: typing.Optional[dict] = None
    pole: typing.Optional[str] = None
    basepoint: typing.Optional[str] = None
    section: typing.Optional[dict] = None
    order: int = curvelog_config.DEFAULT_EXPANSION_ORDER
    log_degree: typing.Optional[int] = None
    csv: bool = False
    seed: int = config.DEFAULT_SEED
    quick: bool = False
    integrator: IntegratorConfig = IntegratorConfig()

    @pydantic.field_validator('command')
    @classmethod
    def command_known(cls, value: str) -> str:
        if value not in config.COMMANDS:
            raise ValueError(messages.UNKNOWN_COMMAND_TEMPLATE.format(value, ', '.join(config.COMMANDS)))
        return value

    @pydantic.field_validator('poles')
    @classmethod
    def poles_parse(cls, value: typing.List[str]) -> typing.List[str]:
        curve.PoleSet.from_strings(value)
        return [item.strip() for item in value if item.strip()]

    @pydantic.field_validator('order')
    @classmethod
    def order_non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f'Expansion order must be >= 0, got {value}')
        return value

    @pydantic.model_validator(mode='after')
    def labels_declared(self) -> 'JobSpec':
        poles = self.pole_set
        if self.pole is not None:
            poles.parse_label(self.pole)
        if self.word is not None:
            curve.parse_word_labels(poles, self.word)
        return self

    @property
    def pole_set(self) -> curve.PoleSet:
        return curve.PoleSet.from_strings(self.poles)

    def require(self, *fields: str):
        missing = [name for name in fields if getattr(self, name) is None]
        if missing:
            raise ValueError(messages.MISSING_ARGUMENT_TEMPLATE.format(self.command, ', '.join(missing)))

    def sigma(self) -> curve.Section:
        if self.section is None:
            return curve.section_sigma0(self.pole_set)
        return curve.Section.from_json(self.section, self.pole_set)

    def x0(self):
        if self.basepoint is None:
            return reduce.default_basepoint(self.pole_set)
        return exact.coerce(self.basepoint)

    def omega_tensor(self) -> shuffle.ShuffleTensor:
        return shuffle.ShuffleTensor.from_json(self.tensor, self.pole_set.omega_alphabet)

    def parsed_path(self) -> typing.Optional[paths.Path]:
        return paths.Path.from_json(self.path) if self.path is not None else None

    def evaluation_point(self) -> complex:
        return complex(exact.coerce(self.point))


def _trace_csv(rows, labels) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=config.CSV_DELIMITER, lineterminator='\n')
    header = ['t']
    for label in labels:
        header.extend([f'{label}.re', f'{label}.im'])
    writer.writerow(header)
    for t, values in rows:
        row = [repr(t)]
        for value in values:
            row.extend([repr(value.real), repr(value.imag)])
        writer.writerow(row)
    return buffer.getvalue()


def handle_eval(job: JobSpec) -> typing.Union[dict, str]:
    job.require('point')
    poles = job.pole_set
    z = job.evaluation_point()
    path = job.parsed_path()
    cfg = job.integrator
    if job.word is not None:
        if job.csv:
            path = path or hyperlog.default_path_class(z, poles)
            words = [curve.parse_word_labels(poles, job.word).words()[0]]
            rows = iterint.trace(path, words, poles, cfg, letter_form=curve.section_sigma0(poles).apply)
            return _trace_csv(rows, [job.word.replace(',', '|')])
        return hyperlog.eval_L(job.word, z, poles, path, cfg).to_json(poles)

    job.require('tensor')
    tensor = job.omega_tensor()
    path = path or paths.straight_path(complex(job.x0()), z, poles.points)
    if job.csv:
        words = tensor.words()
        rows = iterint.trace(path, words, poles, cfg)
        return _trace_csv(rows, [f'w{i}' for i in range(len(words))])
    return {
        'value': common.complex_to_json(iterint.integrate_tensor(path, tensor, cfg)),
        'point': common.complex_to_json(z),
        'path': path.to_json(),
    }


def handle_mzv(job: JobSpec) -> dict:
    job.require('word')
    poles = curve.PoleSet.from_strings(list(curvelog_config.MZV_POLES))
    value = hyperlog.mzv(job.word, job.integrator)
    word = curve.parse_word_labels(poles, job.word).words()[0]
    return {'value': common.complex_to_json(value), 'word': [poles.label(s) for s in word]}


def handle_reduce(job: JobSpec) -> dict:
    job.require('tensor')
    return reduce.normal_form(job.omega_tensor(), job.sigma(), job.x0()).to_json()


def handle_kernel(job: JobSpec) -> dict:
    job.require('tensor')
    tensor = job.omega_tensor()
    sigma = job.sigma()
    x0 = job.x0()
    nf = reduce.normal_form(tensor, sigma, x0)
    result = {'member': nf.is_zero(), 'normal_form': nf.to_json()}
    if nf.is_zero():
        result['generators'] = len(reduce.kernel_witness(tensor, sigma, x0))
    return result


def handle_monodromy(job: JobSpec) -> dict:
    poles = job.pole_set
    sigma = job.sigma()
    x0 = job.x0()
    centers = [poles.parse_label(job.pole)] if job.pole is not None else list(poles)
    operators = []
    for s in centers:
        loop = monodromy.loop_around(s, x0, poles=poles)
        operator = monodromy.monodromy_operator(loop, sigma, job.integrator.weight, job.integrator)
        data = operator.to_json()
        data['unipotent'] = monodromy.unipotence_check(operator)
        operators.append(data)
    return {'basepoint': exact.to_string(exact.coerce(x0)), 'operators': operators}


def handle_periods(job: JobSpec) -> dict:
    poles = job.pole_set
    matrix = monodromy.period_matrix(poles, job.sigma(), job.integrator, job.x0())
    return {
        'poles': poles.labels(),
        'matrix': [[common.complex_to_json(value) for value in row] for row in matrix],
        'determinant': common.complex_to_json(complex(np.linalg.det(matrix))),
    }


def handle_expand(job: JobSpec) -> dict:
    job.require('word', 'pole')
    poles = job.pole_set
    expansion = local_expansion.expand_at(
        job.word, poles.parse_label(job.pole), poles,
        order=job.order,
        log_degree=job.log_degree,
        path=job.parsed_path(),
        cfg=job.integrator,
    )
    data = expansion.to_json()
    if job.point is not None:
        data['value'] = common.complex_to_json(local_expansion.evaluate_expansion(expansion, job.evaluation_point()))
    return data


def handle_kz_check(job: JobSpec) -> dict:
    points = job.pole_set.points
    return {'points': job.pole_set.labels(), 'holds': iterint.kz_specialization_check(points)}


def handle_selftest(job: JobSpec) -> dict:
    from app import selftest

    return selftest.run_suite(job.seed, job.quick)


HANDLERS = {
    'eval': handle_eval,
    'mzv': handle_mzv,
    'reduce': handle_reduce,
    'kernel': handle_kernel,
    'monodromy': handle_monodromy,
    'periods': handle_periods,
    'expand': handle_expand,
    'kz-check': handle_kz_check,
    'selftest': handle_selftest,
}


def exit_code_for(output) -> int:
    if isinstance(output, dict) and output.get('passed') is False:
        return config.EXIT_DOMAIN_ERROR
    return config.EXIT_OK


def run(job: JobSpec) -> typing.Tuple[int, str]:
    """Exit status and the text for standard output."""
    started = time.monotonic()
    logger.info(messages.COMMAND_STARTED_TEMPLATE.format(job.command))
    try:
        output = HANDLERS[job.command](job)
    except common.DomainError as exc:
        logger.error(messages.DOMAIN_ERROR_TEMPLATE.format(exc))
        code, text = config.EXIT_DOMAIN_ERROR, common.dump_to_json({'error': type(exc).__name__, 'message': str(exc)})
    except common.NumericFailure as exc:
        logger.error(messages.NUMERIC_FAILURE_TEMPLATE.format(exc))
        code, text = config.EXIT_NUMERIC_FAILURE, common.dump_to_json({'error': type(exc).__name__, 'message': str(exc)})
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        logger.error(messages.BAD_INPUT_TEMPLATE.format(exc))
        code, text = config.EXIT_BAD_INPUT, common.dump_to_json({'error': type(exc).__name__, 'message': str(exc)})
    else:
        code = exit_code_for(output)
        text = output if isinstance(output, str) else common.dump_to_json(_finite(output))
    logger.info(messages.COMMAND_FINISHED_TEMPLATE.format(job.command, time.monotonic() - started, code))
    return code, text


def _finite(data):
    """NaN and infinities have no JSON spelling; they become null."""
    if isinstance(data, float) and not math.isfinite(data):
        return None
    if isinstance(data, dict):
        return {key: _finite(value) for key, value in data.items()}
    if isinstance(data, list):
        return [_finite(value) for value in data]
    return data
