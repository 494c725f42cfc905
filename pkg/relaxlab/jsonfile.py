from typing import TextIO

from relaxlab.engine import ExecutionResult
from relaxlab.graph import Digraph, Instance
from relaxlab.network import NonBlockingNetwork
from relaxlab.reader import GraphReader, NetworkReader, ResultReader, ScheduleReader
from relaxlab.schedule import RelaxationSchedule
from relaxlab.writer import GraphWriter, NetworkWriter, ResultWriter, ScheduleWriter


def load_instance(f: TextIO) -> Instance:
    return GraphReader().load_instance(f)


def dump_instance(instance: Instance, f: TextIO) -> None:
    GraphWriter().dump_instance(instance, f)


def load_schedule(f: TextIO, digraph: Digraph) -> RelaxationSchedule:
    return ScheduleReader().load(f, digraph)


def dump_schedule(schedule: RelaxationSchedule, f: TextIO) -> None:
    ScheduleWriter().dump(schedule, f)


def load_network(f: TextIO) -> NonBlockingNetwork:
    return NetworkReader().load(f)


def dump_network(network: NonBlockingNetwork, f: TextIO) -> None:
    NetworkWriter().dump(network, f)


def load_result(f: TextIO) -> ExecutionResult:
    return ResultReader().load(f)


def dump_result(result: ExecutionResult, f: TextIO) -> None:
    ResultWriter().dump(result, f)
