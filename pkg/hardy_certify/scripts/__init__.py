# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import json
import os

from hardy_certify.scripts.data import SuiteBuilder, suite_template


def _get_lines(entries):
    for entry in entries:
        yield "    {"
        for key in sorted(entry):
            value = entry[key]
            if key == "weights":
                yield '        "weights": {'
                for name in sorted(value):
                    yield '            "{}": {},'.format(name, json.dumps(value[name], sort_keys=True))
                yield "        },"
            else:
                yield '        "{}": {},'.format(key, json.dumps(value, sort_keys=True))
        yield "    },"


def _get_suite_file_path():
    current_path = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))
    return os.path.join(current_path, "suite.py")


def render_suite():
    builder = SuiteBuilder()
    return suite_template.format(
        "\n".join(_get_lines(builder.main)),
        "\n".join(_get_lines(builder.monotone)),
    )


def generate_suite():
    file_content = render_suite()
    newline = os.linesep
    if newline != "\n":
        file_content = file_content.replace("\n", newline)
    file_path = _get_suite_file_path()
    with open(file_path, "wb") as f:
        f.write(file_content.encode("utf-8"))


if __name__ == "__main__":
    generate_suite()
