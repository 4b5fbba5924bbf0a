import cmath
import gzip
import json
import logging
import math

import pydantic
import pytest

from app import cli
from app import configs
from app import jobs
from app.configs import cli as config
from curvelog import curve
from curvelog import reduce
from curvelog import shuffle


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def as_complex(pair):
    return complex(pair[0], pair[1])


def test_mzv_command(capsys):
    code, data = run_json(capsys, 'mzv', '--word', '1,0')
    assert code == config.EXIT_OK
    assert data['word'] == ['1', '0']
    assert as_complex(data['value']) == pytest.approx(-math.pi ** 2 / 6, rel=1e-8)


def test_divergent_mzv_is_a_domain_error(capsys):
    code, data = run_json(capsys, 'mzv', '--word', '0,1')
    assert code == config.EXIT_DOMAIN_ERROR
    assert data['error'] == 'DivergentWord'


def test_eval_word(capsys):
    code, data = run_json(capsys, 'eval', '--word', '1', '--point', '1/2i')
    assert code == config.EXIT_OK
    assert as_complex(data['value']) == pytest.approx(cmath.log(1 - 0.5j), rel=1e-8)
    assert data['path'] == 'default'


def test_eval_trace_as_csv(capsys):
    code, out = run(capsys, 'eval', '--word', '1,0', '--point', '1/2i', '--csv')
    assert code == config.EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == 't,1|0.re,1|0.im'
    assert len(lines) > 2


@pytest.mark.parametrize('argv, expected', [
    (['eval', '--word', '1'], config.EXIT_BAD_INPUT),
    (['eval', '--word', '1', '--point', '1'], config.EXIT_DOMAIN_ERROR),
    (['eval', '--word', '2', '--point', '3'], config.EXIT_DOMAIN_ERROR),
    (['expand', '--word', '1'], config.EXIT_BAD_INPUT),
    (['mzv', '--word', '1,0', '--max-steps', '3'], config.EXIT_NUMERIC_FAILURE),
    (['kz-check', '--poles', '0,0'], config.EXIT_DOMAIN_ERROR),
])
def test_exit_codes(capsys, argv, expected):
    code, data = run_json(capsys, *argv)
    assert code == expected
    assert 'error' in data


def test_reduce_and_kernel_commands(capsys):
    poles = curve.PoleSet.from_strings('0,1')
    dz = curve.Differential.power(poles, 0)
    tensor = curve.omega_word(poles, [dz, curve.Differential.dlog(poles, 1)])
    code, data = run_json(capsys, 'reduce', '--tensor-json', json.dumps(tensor.to_json()), '--basepoint', '2')
    assert code == config.EXIT_OK
    assert data['basepoint'] == '2'
    assert reduce.NormalForm.from_json(data) == reduce.normal_form(tensor, curve.section_sigma0(poles), 2)

    generator = reduce.d_map(
        shuffle.ShuffleTensor.unit(poles.omega_alphabet), curve.RationalFunction.z(poles), tensor, 2,
    )
    code, data = run_json(capsys, 'kernel', '--tensor-json', json.dumps(generator.to_json()))
    assert code == config.EXIT_OK
    assert data['member'] is True
    assert data['generators'] >= 1


def test_tensor_from_file(capsys, tmp_path):
    poles = curve.PoleSet.from_strings('0')
    tensor = curve.omega_word(poles, [curve.Differential.pole(poles, 0, 2)])
    source = tmp_path / 'tensor.json'
    source.write_text(json.dumps(tensor.to_json()))
    code, data = run_json(capsys, 'reduce', '--poles', '0', '--tensor-json', f'@{source}')
    assert code == config.EXIT_OK
    assert data['basepoint'] == '1'


def test_periods_command(capsys):
    code, data = run_json(capsys, 'periods', '--poles', '0,1,1/2+i')
    assert code == config.EXIT_OK
    assert data['poles'] == ['0', '1', '1/2+i']
    for i, row in enumerate(data['matrix']):
        for j, entry in enumerate(row):
            expected = 2j * math.pi if i == j else 0
            assert as_complex(entry) == pytest.approx(expected, abs=1e-7)
    assert as_complex(data['determinant']) == pytest.approx((2j * math.pi) ** 3, rel=1e-7)


def test_monodromy_command(capsys):
    code, data = run_json(capsys, 'monodromy', '--pole', '0', '--weight', '2')
    assert code == config.EXIT_OK
    assert data['basepoint'] == '2'
    operator, = data['operators']
    assert operator['unipotent'] is True


def test_expand_command(capsys):
    code, data = run_json(capsys, 'expand', '--word', '1', '--pole', '0', '--order', '12', '--point', '1/10')
    assert code == config.EXIT_OK
    assert data['center'] == '0'
    assert as_complex(data['value']) == pytest.approx(math.log(0.9), abs=1e-9)


def test_kz_check_command(capsys):
    code, data = run_json(capsys, 'kz-check', '--poles', '0,1,2i')
    assert code == config.EXIT_OK
    assert data['holds'] is True


def test_config_file(capsys, tmp_path):
    good = tmp_path / 'good.json'
    good.write_text(json.dumps({'rtol': 1e-11, 'weight': 2}))
    code, _ = run_json(capsys, 'mzv', '--word', '1,0', '--config', str(good))
    assert code == config.EXIT_OK

    bad = tmp_path / 'bad.json'
    bad.write_text(json.dumps({'rtol': 1e-11, 'colour': 'red'}))
    code, data = run_json(capsys, 'mzv', '--word', '1,0', '--config', str(bad))
    assert code == config.EXIT_BAD_INPUT
    assert 'colour' in data['message']


def test_unknown_command_is_bad_input(capsys):
    code, out = run(capsys, 'integrate')
    assert code == config.EXIT_BAD_INPUT == 1
    assert json.loads(out)['error'] == 'ValueError'


@pytest.mark.parametrize('flags', [
    ['--weight', 'x'],
    ['--order', 'ten'],
    ['--rtol', 'tight'],
    ['--seed', '1.5'],
])
def test_non_numeric_flags_are_bad_input(capsys, flags):
    code, out = run(capsys, 'mzv', *flags)
    assert code == config.EXIT_BAD_INPUT
    assert 'curvelog' in json.loads(out)['message']


def test_help_still_exits_cleanly(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(['--help'])
    assert info.value.code == 0


def test_quick_flag_reaches_the_job():
    args = cli.build_parser().parse_args(['selftest', '--quick', '--seed', '3'])
    job = cli.job_from_args(args)
    assert job.quick and job.seed == 3
    assert not cli.job_from_args(cli.build_parser().parse_args(['selftest'])).quick


def test_job_spec_validation():
    with pytest.raises(pydantic.ValidationError):
        jobs.JobSpec(command='integrate')
    with pytest.raises(pydantic.ValidationError):
        jobs.JobSpec(command='expand', order=-1)
    job = jobs.JobSpec(command='reduce', poles=['0', ' 1 '])
    assert job.poles == ['0', '1']
    assert job.x0() == 2
    assert job.sigma().is_sigma0


def test_log_rotation_compresses(tmp_path):
    handler = configs.rotating_file_handler(str(tmp_path / 'logs' / 'curvelog.log'))
    handler.setFormatter(logging.Formatter(configs.LOG_FORMAT))
    handler.emit(logging.makeLogRecord({'msg': 'rotated line', 'levelname': 'INFO', 'name': 'curvelog'}))
    handler.doRollover()
    handler.close()
    archived = tmp_path / 'logs' / 'curvelog.log.1.gz'
    assert archived.exists()
    assert b'rotated line' in gzip.decompress(archived.read_bytes())
