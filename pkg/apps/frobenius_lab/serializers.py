"""
Serializers del árbol etiquetado
"""
from rest_framework import serializers

from apps.tree_core.automorphism import NodeAddress


class PcfParameterSerializer(serializers.Serializer):
    p = serializers.IntegerField()
    c = serializers.IntegerField()
    r = serializers.IntegerField()
    orbit = serializers.ListField(child=serializers.IntegerField(), read_only=True)


class LabeledPreimageTreeSerializer(serializers.Serializer):
    """
    Árbol completo: cada nodo como palabra → lista de coeficientes

    La raíz aparece con la palabra vacía.
    """
    parameter = PcfParameterSerializer()
    x0 = serializers.IntegerField()
    depth = serializers.IntegerField()
    k = serializers.SerializerMethodField()
    modulus = serializers.SerializerMethodField()
    labeled = serializers.BooleanField()
    swaps = serializers.IntegerField()
    tower = serializers.SerializerMethodField()
    nodes = serializers.SerializerMethodField()

    def get_k(self, obj):
        return obj.ctx.k

    def get_modulus(self, obj):
        return list(obj.ctx.modulus)

    def get_tower(self, obj):
        return [zeta.to_list() for zeta in obj.tower]

    def get_nodes(self, obj):
        return {
            NodeAddress(level, path).word: value.to_list()
            for level, row in enumerate(obj.levels)
            for path, value in enumerate(row)
        }
