from relaxlab.engine import ExecutionResult, execute_schedule
from relaxlab.graph import Digraph, Instance, WeightAssignment
from relaxlab.schedule import RelaxationSchedule
