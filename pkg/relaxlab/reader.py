from typing import List, TextIO, Tuple

from relaxlab import distance
from relaxlab.engine import ExecutionResult
from relaxlab.errors import FormatError, InvalidGraphError
from relaxlab.graph import Digraph, Instance, WeightAssignment
from relaxlab.network import (
    BaseStructure,
    ClosStructure,
    NetworkStructure,
    NonBlockingNetwork,
    TrimmedStructure,
)
from relaxlab.schedule import RelaxationSchedule
from relaxlab.serialization import (
    JsonObjectReader,
    read_document,
    step_count_from_json,
)


class GraphReader:
    """Parses graph JSON: ``{"n", "source", "edges": [[tail, head, weight]]}``.

    Edge order in the file defines edge indices."""

    def load_instance(self, f: TextIO) -> Instance:
        return self.read_instance(read_document(f, "graph"))

    def load_digraph(self, f: TextIO) -> Digraph:
        return self.read_digraph(read_document(f, "graph"))

    def read_instance(self, doc: JsonObjectReader) -> Instance:
        digraph, weights = self._read_edges(doc, weighted=True)
        source = doc.read_int("source", minimum=0)
        try:
            return Instance(digraph, source, WeightAssignment(weights))
        except InvalidGraphError as exc:
            raise FormatError("{}: {}".format(doc.context, exc)) from exc

    def read_digraph(self, doc: JsonObjectReader) -> Digraph:
        digraph, _ = self._read_edges(doc, weighted=False)
        return digraph

    def _read_edges(
        self, doc: JsonObjectReader, weighted: bool
    ) -> Tuple[Digraph, List[int]]:
        n = doc.read_int("n", minimum=0)
        rows = doc.read_int_rows("edges", width=3 if weighted else None)
        edges, weights = [], []
        for row in rows:
            if len(row) not in (2, 3):
                raise FormatError(
                    "{}: edges must be [tail, head] or [tail, head, weight]".format(
                        doc.context
                    )
                )
            edges.append((row[0], row[1]))
            weights.append(row[2] if len(row) == 3 else 0)
        try:
            return Digraph(n, edges), weights
        except InvalidGraphError as exc:
            raise FormatError("{}: {}".format(doc.context, exc)) from exc


class ScheduleReader:
    """Parses ``{"graph_fingerprint", "steps"}`` against a known digraph"""

    def load(self, f: TextIO, digraph: Digraph) -> RelaxationSchedule:
        doc = read_document(f, "schedule")
        fingerprint = doc.read_str("graph_fingerprint")
        if fingerprint != digraph.fingerprint:
            raise FormatError(
                "schedule: fingerprint {} does not match graph {}".format(
                    fingerprint, digraph.fingerprint
                )
            )
        return RelaxationSchedule(doc.read_int_list("steps"), digraph)


class NetworkReader:
    """Parses network JSON, rebuilding the recursive structure so the
    loaded network can route requests"""

    def load(self, f: TextIO) -> NonBlockingNetwork:
        return self.read_network(read_document(f, "network"))

    def read_network(self, doc: JsonObjectReader) -> NonBlockingNetwork:
        graph = GraphReader().read_digraph(doc)
        structure = self._read_structure(doc.read_object("structure"))
        try:
            return NonBlockingNetwork(
                graph,
                doc.read_int_list("inputs"),
                doc.read_int_list("outputs"),
                structure,
            )
        except InvalidGraphError as exc:
            raise FormatError("{}: {}".format(doc.context, exc)) from exc

    def _read_structure(self, doc: JsonObjectReader) -> NetworkStructure:
        readers = {
            "base": self._read_base,
            "clos": self._read_clos,
            "trimmed": self._read_trimmed,
        }
        kind = doc.read_str("kind")
        if kind not in readers:
            raise FormatError("{}: unknown structure {!r}".format(doc.context, kind))
        return readers[kind](doc)

    def _read_base(self, doc: JsonObjectReader) -> NetworkStructure:
        return BaseStructure()

    def _read_clos(self, doc: JsonObjectReader) -> NetworkStructure:
        subunit = self.read_network(doc.read_object("subunit"))
        return ClosStructure(
            subunit,
            doc.read_int_rows("input_maps", width=subunit.vertex_count),
            doc.read_int_rows("middle_maps", width=subunit.vertex_count),
            doc.read_int_rows("output_maps", width=subunit.vertex_count),
        )

    def _read_trimmed(self, doc: JsonObjectReader) -> NetworkStructure:
        parent = self.read_network(doc.read_object("parent"))
        vertex_map = doc.read_int_list("vertex_map")
        if len(vertex_map) != parent.vertex_count:
            raise FormatError("{}: vertex_map length mismatch".format(doc.context))
        return TrimmedStructure(parent, vertex_map)


class ResultReader:
    """Parses the JSON written for an ExecutionResult"""

    def load(self, f: TextIO) -> ExecutionResult:
        doc = read_document(f, "result")
        final = doc.read_optional_int_list("final_distances")
        steps = [step_count_from_json(s) for s in doc.read_list("correct_at_step")]
        if len(steps) != len(final):
            raise FormatError("result: one step count per distance is required")
        final = [distance.from_json(d) for d in final]
        return ExecutionResult(final, steps)
