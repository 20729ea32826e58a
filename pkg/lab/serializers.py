from rest_framework import serializers

from .bits import decode_bits, encode_bits, first_prefix_pair, is_bits
from .computers import ComputerKind
from .models import ComputerEntry


# Converts ComputerEntry objects to/from JSON
class ComputerEntrySerializer(serializers.ModelSerializer):
    class Meta:
        model = ComputerEntry
        fields = ['index', 'kind', 'name', 'payload', 'created_at']
        read_only_fields = ['created_at']

    # Entries are numbered 1, 2, 3, ... with no gaps
    def validate_index(self, value):
        expected = ComputerEntry.objects.count() + 1
        if self.instance is None and value != expected:
            raise serializers.ValidationError(f"Next index must be {expected}.")
        return value

    # Checks the payload against its kind
    def validate(self, data):
        kind = data.get('kind')
        payload = data.get('payload', '').strip()
        if kind == ComputerKind.LPROGRAM.value and not is_bits(payload):
            raise serializers.ValidationError({'payload': "L-program payload must be a bitstring."})
        if kind == ComputerKind.NATIVE.value:
            family, _, argument = payload.partition(':')
            if family not in ('numerals', 'history') or not argument.isdigit():
                raise serializers.ValidationError({'payload': "Native payload must be numerals:<width> or history:<index>."})
        if kind == ComputerKind.TABLE.value:
            keys = []
            for line in payload.splitlines():
                fields = line.split()
                if len(fields) != 2:
                    raise serializers.ValidationError({'payload': f"Bad table line {line!r}."})
                try:
                    keys.append(decode_bits(fields[0]))
                    decode_bits(fields[1])
                except ValueError as exc:
                    raise serializers.ValidationError({'payload': str(exc)})
            if len(set(keys)) != len(keys):
                raise serializers.ValidationError({'payload': "Table inputs must be distinct."})
            clash = first_prefix_pair(keys)
            if clash is not None:
                first, second = clash
                raise serializers.ValidationError(
                    {'payload': f"Table domain is not prefix-free: {encode_bits(first)} is a prefix of {second}."}
                )
        data['payload'] = payload
        return data


# Read-only rendering of a run report
class RunReportSerializer(serializers.Serializer):
    command = serializers.CharField()
    digest = serializers.CharField()
    outputs = serializers.DictField()
    exact = serializers.DictField(child=serializers.BooleanField())
