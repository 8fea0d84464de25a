import csv
import json
import pickle
from pathlib import Path

import lz4.frame
import numpy as np


def plain(obj):
    """Convert numpy scalars/arrays and tuples into JSON-native objects."""
    if isinstance(obj, dict):
        return {str(key): plain(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return [plain(value) for value in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def format_float(value):
    """17 significant digits, enough for an exact double round trip."""
    return format(float(value), ".17g")


class SerilizationBase:
    def to_pickle(self, data, name, *args, **kwargs):
        name = Path(name)
        name.parent.mkdir(parents=True, exist_ok=True)
        kwargs.setdefault("protocol", pickle.HIGHEST_PROTOCOL)
        with lz4.frame.open(name, "wb") as f:
            f.write(pickle.dumps(data, *args, **kwargs))

    def from_pickle(self, name, *args, **kwargs):
        with lz4.frame.open(name) as f:
            return pickle.load(f, *args, **kwargs)

    def to_json(self, data, name, *args, **kwargs):
        name = Path(name)
        name.parent.mkdir(parents=True, exist_ok=True)
        kwargs.setdefault("indent", 4)
        kwargs.setdefault("separators", (",", ": "))
        kwargs.setdefault("sort_keys", True)
        with open(name, "w") as f:
            json.dump(plain(data), f, *args, **kwargs)
            f.write("\n")

    def from_json(self, name, *args, **kwargs):
        with open(name) as f:
            return json.load(f, *args, **kwargs)

    def to_csv(self, rows, header, name):
        """
        Write rows to a CSV file, floats at 17 significant digits.

        Parameters
        ----------
        rows : iterable of sequences
            Data rows; float entries are formatted with ``format_float``.
        header : sequence of str
            Column names.
        name : str or Path
            Output path, parent directories are created.
        """
        name = Path(name)
        name.parent.mkdir(parents=True, exist_ok=True)
        with open(name, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow(
                    [
                        format_float(x) if isinstance(x, (float, np.floating)) else x
                        for x in row
                    ]
                )

    def from_csv(self, name):
        with open(name, newline="") as f:
            reader = csv.reader(f)
            header = next(reader)
            return header, [row for row in reader]


serial_base = SerilizationBase()
to_pickle = serial_base.to_pickle
from_pickle = serial_base.from_pickle
to_json = serial_base.to_json
from_json = serial_base.from_json
to_csv = serial_base.to_csv
from_csv = serial_base.from_csv
