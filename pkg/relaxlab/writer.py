from typing import Any, Dict, Sequence, TextIO

from relaxlab import distance
from relaxlab.adversary import AdversaryResult
from relaxlab.engine import ExecutionResult
from relaxlab.graph import Digraph, Instance
from relaxlab.hard import SparseHardGraph, SparseHardSample
from relaxlab.network import (
    ClosStructure,
    NetworkStructure,
    NonBlockingNetwork,
    RoutedPaths,
    TrimmedStructure,
)
from relaxlab.schedule import RelaxationSchedule
from relaxlab.serialization import step_count_to_json, write_document


class GraphWriter:
    """Produces graph JSON documents; the inverse of GraphReader"""

    def dump_instance(self, instance: Instance, f: TextIO) -> None:
        write_document(self.instance_to_json(instance), f)

    def instance_to_json(self, instance: Instance) -> Dict[str, Any]:
        digraph = instance.digraph
        return {
            "n": digraph.vertex_count,
            "source": instance.source,
            "edges": [
                [t, h, w] for (t, h), w in zip(digraph.edges, instance.weights)
            ],
        }

    def digraph_to_json(self, digraph: Digraph) -> Dict[str, Any]:
        return {
            "n": digraph.vertex_count,
            "edges": [[t, h] for t, h in digraph.edges],
        }


class ScheduleWriter:
    def dump(self, schedule: RelaxationSchedule, f: TextIO) -> None:
        write_document(
            {
                "graph_fingerprint": schedule.fingerprint,
                "steps": schedule.steps.tolist(),
            },
            f,
        )


class NetworkWriter:
    """Writes a network with its construction, recursively"""

    def dump(self, network: NonBlockingNetwork, f: TextIO) -> None:
        write_document(self.network_to_json(network), f)

    def network_to_json(self, network: NonBlockingNetwork) -> Dict[str, Any]:
        doc = GraphWriter().digraph_to_json(network.graph)
        doc["inputs"] = list(network.inputs)
        doc["outputs"] = list(network.outputs)
        doc["structure"] = self._structure_to_json(network.structure)
        return doc

    def _structure_to_json(self, structure: NetworkStructure) -> Dict[str, Any]:
        doc = {"kind": structure.kind}  # type: Dict[str, Any]
        if isinstance(structure, ClosStructure):
            doc["base_capacity"] = structure.base_capacity
            doc["subunit"] = self.network_to_json(structure.subunit)
            doc["input_maps"] = [list(m) for m in structure.input_maps]
            doc["middle_maps"] = [list(m) for m in structure.middle_maps]
            doc["output_maps"] = [list(m) for m in structure.output_maps]
        elif isinstance(structure, TrimmedStructure):
            doc["parent"] = self.network_to_json(structure.parent)
            doc["vertex_map"] = list(structure.vertex_map)
        return doc

    def dump_routes(self, routed: RoutedPaths, f: TextIO) -> None:
        write_document({"paths": [list(p) for p in routed]}, f)


class ResultWriter:
    def dump(self, result: ExecutionResult, f: TextIO) -> None:
        write_document(self.result_to_json(result), f)

    def result_to_json(self, result: ExecutionResult) -> Dict[str, Any]:
        return {
            "reduced_cost": step_count_to_json(result.reduced_cost),
            "final_distances": [distance.to_json(d) for d in result.final_distances],
            "correct_at_step": [
                step_count_to_json(s) for s in result.correct_at_step
            ],
        }


class AdversaryWriter:
    """Graph JSON of the adversary's weighting plus its path and milestones"""

    def dump(self, result: AdversaryResult, f: TextIO) -> None:
        doc = GraphWriter().instance_to_json(result.instance)
        doc["path"] = list(result.path)
        doc["milestones"] = list(result.milestones)
        write_document(doc, f)


_EDGE_CLASSES = ("network", "biregular", "padding")


class HardGraphWriter:
    """Graph JSON annotated with S, T and a class tag per edge"""

    def dump(self, graph: SparseHardGraph, f: TextIO) -> None:
        write_document(self.graph_to_json(graph), f)

    def graph_to_json(self, graph: SparseHardGraph) -> Dict[str, Any]:
        doc = GraphWriter().digraph_to_json(graph.digraph)
        doc["source"] = graph.source
        doc["S"] = list(graph.S)
        doc["T"] = list(graph.T)
        doc["degree"] = graph.degree
        doc["edge_classes"] = self._edge_classes(graph)
        return doc

    def _edge_classes(self, graph: SparseHardGraph) -> Sequence[str]:
        ranges = (graph.network_edges, graph.biregular_edges, graph.padding_edges)
        classes = []
        for name, edges in zip(_EDGE_CLASSES, ranges):
            classes.extend([name] * len(edges))
        return classes

    def dump_sample(
        self, graph: SparseHardGraph, sample: SparseHardSample, f: TextIO
    ) -> None:
        doc = GraphWriter().instance_to_json(sample.instance)
        doc["S"] = list(graph.S)
        doc["T"] = list(graph.T)
        doc["edge_classes"] = self._edge_classes(graph)
        doc["chosen_edges"] = list(sample.chosen_edges)
        doc["path"] = list(sample.assembled_path)
        write_document(doc, f)
