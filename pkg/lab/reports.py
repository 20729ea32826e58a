"""Run reports: what a command was asked, what it produced, and how exact it is."""
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict

from rest_framework.renderers import JSONRenderer

from .serializers import RunReportSerializer


@dataclass
class RunReport:
    command: str
    digest: str
    outputs: Dict[str, str] = field(default_factory=dict)
    exact: Dict[str, bool] = field(default_factory=dict)

    def add(self, key, value, exact=True):
        self.outputs[key] = str(value)
        self.exact[key] = bool(exact)

    def as_text(self):
        lines = [f'command: {self.command}', f'digest: {self.digest}']
        for key, value in self.outputs.items():
            flag = 'exact' if self.exact.get(key, True) else 'bound'
            lines.append(f'{key} = {value} [{flag}]')
        return '\n'.join(lines) + '\n'

    def as_json(self):
        data = RunReportSerializer(self).data
        return JSONRenderer().render(data).decode() + '\n'

    def render(self, fmt='text'):
        return self.as_json() if fmt == 'json' else self.as_text()


def inputs_digest(arguments, paths=()):
    """sha256 over the canonical argument text and the bytes of every input file."""
    digest = hashlib.sha256(arguments.encode())
    for path in paths:
        if path:
            digest.update(Path(path).read_bytes())
    return digest.hexdigest()
