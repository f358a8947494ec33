"""
Serializers de automorfismos del árbol para los reportes JSON
"""

from rest_framework import serializers

from apps.core.exceptions import DomainError

from .automorphism import TreeAutomorphism, check_depth


class TreeAutomorphismSerializer(serializers.Serializer):
    """
    Serializer para TreeAutomorphism

    El campo `hex` es la forma canónica: byte de profundidad seguido de
    las paridades empaquetadas little-endian.
    """
    depth = serializers.IntegerField(min_value=1)
    hex = serializers.CharField(source='to_hex')
    set_bits = serializers.SerializerMethodField()

    def get_set_bits(self, obj):
        return obj.bits.bit_count()

    def validate_depth(self, value):
        try:
            check_depth(value)
        except DomainError as exc:
            raise serializers.ValidationError(str(exc))
        return value

    def create(self, validated_data):
        return TreeAutomorphism.from_hex(validated_data['to_hex'])

    def validate(self, attrs):
        try:
            raw = bytes.fromhex(attrs['to_hex'])
        except ValueError:
            raise serializers.ValidationError("hex inválido")
        if not raw or raw[0] != attrs['depth']:
            raise serializers.ValidationError("El byte de profundidad no coincide con 'depth'")
        return attrs
