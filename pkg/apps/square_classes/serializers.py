"""
Serializer del veredicto {condition, rank, dependencies}
"""
from rest_framework import serializers


class VerdictSerializer(serializers.Serializer):
    condition = serializers.BooleanField()
    rank = serializers.IntegerField(min_value=0)
    dependencies = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0))
    )
    labels = serializers.ListField(child=serializers.CharField())
    values = serializers.SerializerMethodField()
    oracle_agrees = serializers.BooleanField(allow_null=True, required=False)

    def get_values(self, obj):
        return [str(value) for value in obj.values]

    def to_representation(self, instance):
        data = super().to_representation(instance)
        # certificados legibles: [['-1', 'D1'], ...]
        data['certificates'] = [
            [instance.labels[index] for index in dependency]
            for dependency in instance.dependencies
        ]
        return data
