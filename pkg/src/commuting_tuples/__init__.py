"""Exact counts of commuting ell-tuples in S_n and their log-concavity in n."""

from .counts import NSeries, n_table, partition_table
from .logconcavity import delta
from .subgroup_growth import GSeries, g_table_by_recurrence

__version__ = "0.1.0"

__all__ = ["GSeries", "NSeries", "delta", "g_table_by_recurrence", "n_table", "partition_table"]
