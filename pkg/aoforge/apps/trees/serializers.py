from __future__ import annotations

from typing import Any

from rest_framework import serializers

from aoforge.apps.trees.structures import NCChain, NCPartition, RootedSpanningTree
from aoforge.core.constants import ROOT_LABEL
from libraries.combinatorics.partitions import canonical_partition


class TreeSerializer(serializers.Serializer):
    """Tree JSON: ``{"parent": {"1": "2", "2": "r", ...}}``; needs ``context={"graph": G}``."""

    parent = serializers.DictField(child=serializers.CharField())

    def validate_parent(self, value: dict[str, str]) -> dict[int, int]:
        graph = self.context["graph"]
        n = graph.n
        parent = {}
        for child, target in value.items():
            try:
                vertex = int(child)
                parent[vertex] = n + 1 if target == ROOT_LABEL else int(target)
            except ValueError:
                raise serializers.ValidationError(f"bad parent entry {child!r}: {target!r}")
        if sorted(parent) != list(graph.vertices):
            raise serializers.ValidationError(f"parent map must cover vertices 1..{n}")
        return parent

    def create(self, validated_data: dict[str, Any]) -> RootedSpanningTree:
        return RootedSpanningTree.from_mapping(self.context["graph"], validated_data["parent"])


class ChainSerializer(serializers.Serializer):
    """Chain JSON: ``{"partitions": [[[0], [1]], [[0, 1]]]}``, one list of blocks per step."""

    partitions = serializers.ListField(
        child=serializers.ListField(child=serializers.ListField(child=serializers.IntegerField(min_value=0))),
        min_length=1,
    )

    def create(self, validated_data: dict[str, Any]) -> NCChain:
        return NCChain(
            tuple(
                NCPartition(canonical_partition([set(block) for block in blocks]))
                for blocks in validated_data["partitions"]
            )
        )
