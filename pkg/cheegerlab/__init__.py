from cheegerlab.exceptions import (
    CheegerLabError,
    ValidationError,
    GraphFormatError,
    GroupTableError,
    GeneratingSetError,
    FamilyError,
    SpectrumError,
    ConvergenceError,
    EnumerationLimitError,
    HypothesisError,
    ConsistencyError,
    CorpusError,
    collision_list,
    SettingNameCollisionException,
)
from cheegerlab.graph import (
    Graph,
    Cut,
    Provenance,
    parse_graph,
    format_graph,
    is_connected,
    is_bipartite,
)
from cheegerlab.families import make_family, parse_family
from cheegerlab.symmetry import Transitivity, verify_vertex_transitive
from cheegerlab.cayley import (
    GroupTable,
    GeneratingSet,
    parse_group,
    parse_generators,
    cyclic_group,
    dihedral_group,
    cayley_graph,
)
from cheegerlab.spectra import Spectrum, normalized_spectrum
from cheegerlab.expansion import (
    ExpansionProfile,
    cheeger_constant,
    vertex_expansion,
    expansion_profile,
)
from cheegerlab.verdict import Status, Verdict
from cheegerlab.verifier import BoundInputs, c_constant, proof_function
from cheegerlab.config import LabConfig
from cheegerlab.schema_factory import SchemaFactory
from cheegerlab.analysis import CHECKS, GraphRecord, analyze
from cheegerlab.report import RunReport, build_report, write_report
from cheegerlab.corpus import build_corpus, run_corpus
from cheegerlab.utils import read_json, get_example_paths


name = "cheegerlab"
__version__ = "0.1.0"

__all__ = [
    "CheegerLabError",
    "ValidationError",
    "GraphFormatError",
    "GroupTableError",
    "GeneratingSetError",
    "FamilyError",
    "SpectrumError",
    "ConvergenceError",
    "EnumerationLimitError",
    "HypothesisError",
    "ConsistencyError",
    "CorpusError",
    "collision_list",
    "SettingNameCollisionException",
    "Graph",
    "Cut",
    "Provenance",
    "parse_graph",
    "format_graph",
    "is_connected",
    "is_bipartite",
    "make_family",
    "parse_family",
    "Transitivity",
    "verify_vertex_transitive",
    "GroupTable",
    "GeneratingSet",
    "parse_group",
    "parse_generators",
    "cyclic_group",
    "dihedral_group",
    "cayley_graph",
    "Spectrum",
    "normalized_spectrum",
    "ExpansionProfile",
    "cheeger_constant",
    "vertex_expansion",
    "expansion_profile",
    "Status",
    "Verdict",
    "BoundInputs",
    "c_constant",
    "proof_function",
    "LabConfig",
    "SchemaFactory",
    "CHECKS",
    "GraphRecord",
    "analyze",
    "RunReport",
    "build_report",
    "write_report",
    "build_corpus",
    "run_corpus",
    "read_json",
    "get_example_paths",
]
