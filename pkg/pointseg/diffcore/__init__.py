from pointseg.diffcore.value import Value
from pointseg.diffcore.pooled_value import PooledValue
from pointseg.diffcore.param import Param
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.mlp import Mlp
from pointseg.diffcore.ops import linear, relu, max_pool_rows, max_pool_groups, softmax_cross_entropy, add, \
    concat_columns, gather_rows, segment_mean, weighted_sum, sum_all
from pointseg.diffcore.optimizer_state import OptimizerState
from pointseg.diffcore.adam import optimizer_step
from pointseg.diffcore.grad_check import grad_check
from pointseg.diffcore.grad_check_report import GradCheckReport
