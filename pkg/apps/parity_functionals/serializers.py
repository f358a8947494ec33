from rest_framework import serializers


class TruncatedResidueSerializer(serializers.Serializer):
    """{"value": v, "exp": e}"""
    value = serializers.IntegerField(min_value=1)
    exp = serializers.IntegerField(source='exponent', min_value=1)

    def validate(self, attrs):
        if attrs['value'] % 2 == 0 or attrs['value'] >= (1 << attrs['exponent']):
            raise serializers.ValidationError("El residuo debe ser impar y reducido módulo 2^exp")
        return attrs
