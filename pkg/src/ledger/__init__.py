from src.ledger.catalog import CATALOG, OPERATOR_IDS, VECTOR_IDS, InequalityId, parse_id
from src.ledger.engine import (
    Certificate,
    CertificateEngine,
    MatrixProfile,
    RelationCheck,
    RelationReport,
    Verdict,
    cross_relations,
    evaluate,
    evaluate_all,
    evaluate_vector,
)
from src.ledger.serialize import certificates_frame, write_certificates
