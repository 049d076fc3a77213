use thiserror::Error;

pub type Result<T> = std::result::Result<T, GbsError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbsError {
    #[error("label must be nonzero")]
    ZeroLabel,
    #[error("operands are factored over different prime bases")]
    BasisMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("graph presents an elementary group ({0})")]
    ElementaryGroup(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge path is not consecutive at step {0}")]
    BrokenPath(usize),
    #[error("invalid slide at step {step}: {reason}")]
    InvalidSlide { step: usize, reason: String },
    #[error("invalid induction: {0}")]
    InvalidInduction(String),
    #[error("invalid A-move: {0}")]
    InvalidAMove(String),
    #[error("invalid collapse: {0}")]
    InvalidCollapse(String),
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error("edge `{0}` is not mobile")]
    NotMobile(String),
    #[error("unsupported input class: {0}")]
    UnsupportedClass(String),
    #[error("signs cannot be made positive by admissible sign changes")]
    SignObstruction,
    #[error("slide sequence does not replay: {0}")]
    InvalidSequence(String),
    #[error("forbidden slide pattern ({0}) encountered; input is ascending")]
    ForbiddenEncountered(char),
    #[error("rewrite for case ({0}) did not reproduce the original graph")]
    RewriteFailed(char),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("invalid json: {0}")]
    Json(String),
}

impl GbsError {
    /// Stable snake_case name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            GbsError::ZeroLabel => "zero_label",
            GbsError::BasisMismatch => "basis_mismatch",
            GbsError::DimensionMismatch(_) => "dimension_mismatch",
            GbsError::Overflow(_) => "overflow",
            GbsError::Syntax { .. } => "syntax",
            GbsError::DisconnectedGraph => "disconnected_graph",
            GbsError::ElementaryGroup(_) => "elementary_group",
            GbsError::UnknownEdge(_) => "unknown_edge",
            GbsError::UnknownVertex(_) => "unknown_vertex",
            GbsError::BrokenPath(_) => "broken_path",
            GbsError::InvalidSlide { .. } => "invalid_slide",
            GbsError::InvalidInduction(_) => "invalid_induction",
            GbsError::InvalidAMove(_) => "invalid_a_move",
            GbsError::InvalidCollapse(_) => "invalid_collapse",
            GbsError::InvalidExpansion(_) => "invalid_expansion",
            GbsError::NotMobile(_) => "not_mobile",
            GbsError::UnsupportedClass(_) => "unsupported_class",
            GbsError::SignObstruction => "sign_obstruction",
            GbsError::InvalidSequence(_) => "invalid_sequence",
            GbsError::ForbiddenEncountered(_) => "forbidden_encountered",
            GbsError::RewriteFailed(_) => "rewrite_failed",
            GbsError::CertificateRejected(_) => "certificate_rejected",
            GbsError::Json(_) => "json",
        }
    }
}
