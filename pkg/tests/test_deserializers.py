""" CSV data & JSON config deserializers """

import json
import logging

import numpy as np
import pytest

import kgsa

from kgsa.deserializers import load_config, load_dataset, load_report
from kgsa.exceptions import (InvalidConfig, InvalidCsv, MissingColumns,
                             TooFewSamples)


@pytest.fixture
def write(tmp_path):

    def _write(text, name='data.csv'):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def test_small_csv(write):

    data = load_dataset(write('x1,x2,y1\n1,2,3\n4,5,6\n\n7,8,9\n'))

    assert data.n_samples == 3
    assert data.inputs.tolist() == [[1, 2], [4, 5], [7, 8]]
    assert data.outputs.tolist() == [[3], [6], [9]]
    assert data.labels == ['x1', 'x2']


def test_non_finite_cell(write):

    with pytest.raises(InvalidCsv) as exc:
        load_dataset(write('x1,y1\n1,2\nnan,3\n'))

    assert exc.value.row == 3
    assert exc.value.column == 'x1'


def test_non_numeric_cell(write):

    with pytest.raises(InvalidCsv) as exc:
        load_dataset(write('x1,y1\n1,2\n3,abc\n'))

    assert exc.value.column == 'y1'


def test_ragged_row(write):

    with pytest.raises(InvalidCsv) as exc:
        load_dataset(write('x1,y1\n1,2\n3\n'))

    assert exc.value.row == 3


def test_empty_file(write):

    with pytest.raises(InvalidCsv):
        load_dataset(write(''))


def test_missing_columns(write):

    with pytest.raises(MissingColumns) as exc:
        load_dataset(write('x1,x2\n1,2\n3,4\n'))

    assert 'No output columns' in str(exc.value)


def test_too_few_rows(write):

    with pytest.raises(TooFewSamples):
        load_dataset(write('x1,y1\n1,2\n'))


def test_other_columns_ignored(write, caplog):

    with caplog.at_level(logging.WARNING):
        data = load_dataset(write('id,x1,y1\na,1,2\nb,3,4\n'))

    assert data.inputs.tolist() == [[1], [3]]
    assert 'id' in caplog.text


def test_ignored_columns_interleaved(write):

    data = load_dataset(write('y1,note,x2,x1\n5,n/a,1,2\n6,,3,4\n'))

    assert data.labels == ['x2', 'x1']
    assert data.inputs.tolist() == [[1, 2], [3, 4]]
    assert data.outputs.tolist() == [[5], [6]]


def test_invalid_utf8(tmp_path):

    path = tmp_path / 'latin.csv'
    path.write_bytes(b'x1,y1\n1,2\n\xff,3\n')

    with pytest.raises(InvalidCsv) as exc:
        load_dataset(str(path))

    assert exc.value.exit_code == 2


def test_wide_csv(write):

    rng = np.random.default_rng(0)
    values = rng.standard_normal((50, 19))
    header = ['x%s' % i for i in range(1, 19)] + ['y1']
    text = ','.join(header) + '\n' + '\n'.join(
        ','.join(repr(float(val)) for val in row) for row in values) + '\n'

    data = load_dataset(write(text))

    assert data.n_inputs == 18 and data.n_samples == 50
    assert np.array_equal(data.outputs[:, 0], values[:, 18])


def test_missing_file(tmp_path):

    with pytest.raises(InvalidConfig):
        load_dataset(str(tmp_path / 'nope.csv'))


def test_load_config(write):

    path = write(json.dumps({'benchmark': 'example1', 'n': 40,
                             'estimator': 'NN-F'}), 'cfg.json')
    cfg = load_config(path)

    assert cfg.n == 40
    assert cfg.estimator == 'NN-F'
    assert cfg.replicates == 1


def test_malformed_config(write):

    with pytest.raises(InvalidConfig):
        load_config(write('{"n": 40', 'cfg.json'))
    with pytest.raises(InvalidConfig):
        load_config(write('[1, 2]', 'cfg.json'))


def test_report_schema_version(write):

    path = write(json.dumps({'schema_version': '0.1'}), 'report.json')

    with pytest.raises(InvalidConfig) as exc:
        load_report(path)

    assert exc.value.source == 'schema_version'
    assert kgsa.config.SCHEMA_VERSION == '1.0'
