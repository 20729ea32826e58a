from django.core.validators import MinValueValidator
from django.db import models

from .bits import decode_bits
from .computers import ComputerKind, ProgramComputer, Registry, TableComputer
from .textio import native_handle
from .vm import parse_program


# One registered computer of the persistent registry
class ComputerEntry(models.Model):
    KIND_CHOICES = [
        (ComputerKind.LPROGRAM.value, 'L-program'),
        (ComputerKind.TABLE.value, 'Finite table'),
        (ComputerKind.NATIVE.value, 'Native'),
    ]

    index = models.PositiveIntegerField(unique=True, validators=[MinValueValidator(1)])
    kind = models.CharField(max_length=20, choices=KIND_CHOICES)
    name = models.CharField(max_length=100, blank=True)
    # bits for L-programs, "<input> <output>" lines for tables, a catalog name for natives
    payload = models.TextField()
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['index']
        verbose_name = "Computer Entry"
        verbose_name_plural = "Computer Entries"

    def __str__(self):
        return f"{self.index} {self.kind}:{self.name or self.payload[:20]}"

    # Table payload as a dict
    def get_table(self):
        table = {}
        for line in self.payload.splitlines():
            fields = line.split()
            if len(fields) == 2:
                table[decode_bits(fields[0])] = decode_bits(fields[1])
        return table

    # Rebuilds the handle; natives may refer to entries registered before them
    def to_handle(self, registry=None):
        kind = ComputerKind(self.kind)
        if kind is ComputerKind.LPROGRAM:
            return ProgramComputer(parse_program(decode_bits(self.payload.strip())), name=self.name)
        if kind is ComputerKind.TABLE:
            return TableComputer(self.get_table(), name=self.name or 'table')
        return native_handle(self.payload.strip(), registry)


# Registry in index order from the stored entries
def stored_registry():
    registry = Registry()
    for entry in ComputerEntry.objects.order_by('index'):
        registry.register(entry.to_handle(registry))
    return registry

