import csv
import dataclasses
import json
import sys
from contextlib import contextmanager

FORMATS = ('csv', 'json')


def as_dict(record) -> dict:
    if dataclasses.is_dataclass(record):
        return record.to_dict() if hasattr(record, 'to_dict') else dataclasses.asdict(record)
    return dict(record)


@contextmanager
def _open(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            yield f


def write_records(records, path=None, fmt: str = 'csv'):
    """ Writes records as CSV with a header row or as JSON lines, to `path` or stdout.

    Records are dataclasses with `to_dict` or plain mappings; the columns follow the keys of the first record.
    """
    if fmt not in FORMATS:
        raise ValueError(f'unknown output format {fmt!r}; expected one of {FORMATS}')
    rows = [as_dict(r) for r in records]
    with _open(path) as f:
        if fmt == 'json':
            for row in rows:
                f.write(json.dumps(row) + '\n')
            return
        if not rows:
            return
        writer = csv.DictWriter(f, fieldnames=list(rows[0]), lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})


def write_rows(header: list, rows, path=None, fmt: str = 'csv'):
    """ Plain table output for traces, orbits and profiles. """
    write_records([dict(zip(header, row)) for row in rows], path, fmt)


def write_object(obj: dict, path=None):
    """ A single report as one JSON document. """
    with _open(path) as f:
        f.write(json.dumps(obj, indent=2) + '\n')


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value)
    return value
