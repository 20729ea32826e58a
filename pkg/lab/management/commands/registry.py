from pathlib import Path

from django.db import transaction

from lab.computers import ComputerKind
from lab.models import ComputerEntry
from lab.serializers import ComputerEntrySerializer
from lab.textio import read_manifest, read_table, table_text

from ._base import CommandResult, LabCommand


class Command(LabCommand):
    help = 'Manage the stored registry of computers'

    actions = ('add', 'list', 'load')

    def add_add_arguments(self, parser):
        parser.add_argument('--kind', choices=[k.value for k in ComputerKind if k is not ComputerKind.UNIVERSAL], required=True)
        parser.add_argument('--payload', type=str, required=True,
                            help='Program bits, a table file, or a native name such as numerals:2')
        parser.add_argument('--name', type=str, default='')

    def add_list_arguments(self, parser):
        pass

    def add_load_arguments(self, parser):
        parser.add_argument('--file', type=str, required=True, help='Registry manifest to load')
        parser.add_argument('--clear', action='store_true', help='Clear existing entries before loading')

    def _save(self, kind, payload, name, base_dir=None):
        if kind == ComputerKind.TABLE.value:
            path = Path(payload)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            payload = table_text(read_table(path))
            name = name or path.stem
        serializer = ComputerEntrySerializer(data={
            'index': ComputerEntry.objects.count() + 1,
            'kind': kind,
            'name': name,
            'payload': payload,
        })
        if not serializer.is_valid():
            raise ValueError(f'invalid entry: {dict(serializer.errors)}')
        return serializer.save()

    def handle_add(self, options):
        """Append one computer to the stored registry"""
        entry = self._save(options['kind'], options['payload'], options['name'])
        self.stdout.write(self.style.SUCCESS(f'✓ Registered {entry}'))
        report = self.report(options)
        report.add('index', entry.index)
        return CommandResult('entry.txt', '', report)

    def handle_list(self, options):
        """List the stored registry"""
        lines = [f'{entry.index} {entry.kind} {entry.name or entry.payload}' for entry in ComputerEntry.objects.all()]
        report = self.report(options)
        report.add('entries', len(lines))
        return CommandResult('registry.txt', ''.join(line + '\n' for line in lines), report)

    def handle_load(self, options):
        """Load a registry manifest into the stored registry"""
        manifest = options['file']
        self.stdout.write(self.style.SUCCESS('=' * 70))
        self.stdout.write(self.style.SUCCESS('Registry Loader'))
        self.stdout.write(self.style.SUCCESS('=' * 70))

        entries = read_manifest(manifest)
        with transaction.atomic():
            if options['clear']:
                count = ComputerEntry.objects.count()
                ComputerEntry.objects.all().delete()
                self.stdout.write(self.style.SUCCESS(f'✓ Deleted {count} existing entries'))
            for _, kind, payload in entries:
                self._save(kind.value, payload, '', Path(manifest).parent)

        self.stdout.write(self.style.SUCCESS(f'✓ Loaded {len(entries)} entries from {manifest}'))
        report = self.report(options, manifest)
        report.add('entries', ComputerEntry.objects.count())
        return CommandResult('registry.txt', '', report)
