""" The kgsa command line interface """

import json
import logging

import pytest

from kgsa import signals
from kgsa.cli import build_config, build_parser, main
from kgsa.deserializers import load_dataset


ANALYTIC = ['--benchmark', 'example1', '--estimator', 'analytic',
            '--output-kernel', 'linear', '--quiet']


def test_benchmark_writes_csv(tmp_path):

    out = str(tmp_path / 'bench.csv')

    assert main(['benchmark', '--benchmark', 'example2', '--n', '25',
                 '--seed', '4', '--out', out]) == 0

    data = load_dataset(out)
    assert (data.n_samples, data.n_inputs) == (25, 4)


def test_benchmark_to_stdout(capsys):

    assert main(['benchmark', '--benchmark', 'example1', '--n', '3']) == 0
    lines = capsys.readouterr().out.splitlines()

    assert lines[0] == 'x1,x2,x3,y1'
    assert len(lines) == 4


def test_estimate_prints_json(capsys):

    assert main(['estimate', '--order', '1'] + ANALYTIC) == 0
    report = json.loads(capsys.readouterr().out)

    assert [item['subset'] for item in report['indices']] == [[1], [2], [3]]
    assert report['ols'] is None


def test_estimate_csv_tables(tmp_path):

    out = tmp_path / 'tables'

    assert main(['ols', '--format', 'csv-tables', '--out', str(out)] +
                ANALYTIC) == 0
    assert (out / 'ols.csv').exists()
    assert (out / 'indices.csv').exists()


def test_anova_without_attestation():

    assert main(['anova'] + ANALYTIC) == 1


def test_anova_attested(capsys):

    assert main(['anova', '--independent'] + ANALYTIC) == 0
    assert json.loads(capsys.readouterr().out)['anova'] is not None


def test_missing_data_source():

    assert main(['estimate', '--estimator', 'NN-F', '--subsets', '1',
                 '--quiet']) == 1


def test_bad_csv_is_a_data_error(tmp_path):

    path = tmp_path / 'bad.csv'
    path.write_text('x1,y1\n1,2\n3,oops\n')

    assert main(['estimate', '--data', str(path), '--estimator', 'NN-F',
                 '--subsets', '1', '--quiet']) == 2


def test_undecodable_csv_is_a_data_error(tmp_path):

    path = tmp_path / 'latin.csv'
    path.write_bytes(b'x1,y1\n1,2\n\xff,3\n')

    assert main(['estimate', '--data', str(path), '--lambda', '0.1',
                 '--subsets', '1', '--quiet']) == 2


def test_constant_output_is_numerical(tmp_path):

    path = tmp_path / 'flat.csv'
    path.write_text('x1,y1\n' + ''.join('%s,1.0\n' % i for i in range(8)))

    assert main(['estimate', '--data', str(path), '--estimator', 'NN-F',
                 '--output-kernel', 'linear', '--subsets', '1',
                 '--quiet']) == 3


def test_isf_limits_the_subset_size():

    assert main(['isf', '--subsets', '(1,2,3)', '--lambda', '0.01',
                 '--benchmark', 'example1', '--quiet']) == 1


def test_usage_errors_are_config_errors(capsys):

    with pytest.raises(SystemExit) as exc:
        main(['estimate', '--estimator', 'bogus'])

    assert exc.value.code == 1
    assert 'usage: kgsa estimate' in capsys.readouterr().err

    with pytest.raises(SystemExit) as exc:
        main([])

    assert exc.value.code == 1


def test_crossval(capsys):

    assert main(['crossval', '--benchmark', 'example2', '--n', '40',
                 '--subsets', '3', '--folds', '3', '--quiet']) == 0
    out = json.loads(capsys.readouterr().out)

    assert len(out['results']) == 1
    assert out['results'][0]['aggregate']['lambda'] > 0


def test_progress_is_logged(caplog):

    with caplog.at_level(logging.DEBUG, logger='kgsa'):
        assert main(['crossval', '--benchmark', 'example2', '--n', '30',
                     '--subsets', '3', '--folds', '3']) == 0
        assert main(['estimate', '--benchmark', 'example2', '--n', '30',
                     '--subsets', '3', '--lambda', '0.01']) == 0

    assert 'CV loss of 3 at lambda' in caplog.text
    assert 'Replicate 0 with seed' in caplog.text
    assert 'beta3' in caplog.text

    for signal in (signals.post_fit, signals.post_estimate,
                   signals.cv_evaluated, signals.post_tune,
                   signals.replicate_started, signals.replicate_finished,
                   signals.report_emitted):
        assert signal.receivers


def test_config_file_and_flags(tmp_path):

    path = tmp_path / 'cfg.json'
    path.write_text(json.dumps({'benchmark': 'example2', 'n': 60,
                                'estimator': 'NN-F', 'replicates': 3}))

    args = build_parser().parse_args(
        ['shapley', '--config', str(path), '--n', '90', '--folds', '4'])
    cfg = build_config(args)

    assert cfg.n == 90
    assert cfg.replicates == 3
    assert cfg.estimator == 'NN-F'
    assert cfg.targets == ['shapley']
    assert cfg.cv.folds == 4
