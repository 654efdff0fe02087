from fhtlab.harness.consistency import ConsistencyReport, PairCheck, consistency_check
from fhtlab.harness.experiment import (
    BatchResult,
    ExperimentConfig,
    NPointResult,
    SummaryRow,
    bound_inputs,
    default_generation_cap,
    run_batch,
)
from fhtlab.harness.export import export_results, report_document
from fhtlab.harness.stats import pearson

__all__ = [
    "ConsistencyReport", "PairCheck", "consistency_check", "BatchResult",
    "ExperimentConfig", "NPointResult", "SummaryRow", "bound_inputs",
    "default_generation_cap", "run_batch", "export_results", "report_document",
    "pearson",
]
