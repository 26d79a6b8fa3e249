from __future__ import annotations

from typing import Any

from rest_framework import serializers

from aoforge.apps.graphs.structures import SimpleGraph


class GraphSerializer(serializers.Serializer):
    """Graph JSON: ``{"n": <int>, "edges": [[i, j], ...]}`` with 1-based endpoints."""

    n = serializers.IntegerField(min_value=1)
    edges = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(), min_length=2, max_length=2),
        allow_empty=True,
    )

    def validate(self, attrs: dict[str, Any]) -> dict[str, Any]:
        n = attrs["n"]
        seen: set[tuple[int, int]] = set()
        for i, j in attrs["edges"]:
            if i == j:
                raise serializers.ValidationError({"edges": f"loop at vertex {i}: [{i}, {j}]"})
            if not (1 <= i <= n and 1 <= j <= n):
                raise serializers.ValidationError({"edges": f"edge [{i}, {j}] has an endpoint outside 1..{n}"})
            edge = (min(i, j), max(i, j))
            if edge in seen:
                raise serializers.ValidationError({"edges": f"duplicate edge [{i}, {j}]"})
            seen.add(edge)
        return attrs

    def create(self, validated_data: dict[str, Any]) -> SimpleGraph:
        return SimpleGraph.from_edges(validated_data["n"], validated_data["edges"])

    def to_representation(self, instance: SimpleGraph) -> dict:
        return instance.as_dict()
