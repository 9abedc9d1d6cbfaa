use thiserror::Error;

/// Workbench-wide error type.
///
/// Law *verdicts* (a structure failing an axiom it was asked about) are not
/// errors; they come back inside reports. Errors are reserved for inputs that
/// break a precondition, searches that exceed their budget, and internal
/// theorem violations that indicate a bug.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a partial order: {reason}")]
    NotPoset { reason: String },
    #[error("not a lattice: elements {p} and {q} lack a {kind}")]
    NotLattice { p: usize, q: usize, kind: &'static str },
    #[error("poset has no bottom/top element")]
    NoBounds,
    #[error("carrier of {requested} elements exceeds the size limit of {limit}")]
    SizeLimit { requested: usize, limit: usize },
    #[error("carrier mismatch: expected {expected} elements, got {got}")]
    CarrierMismatch { expected: usize, got: usize },
    #[error("relation matrix is not symmetric at ({p},{q})")]
    AsymmetricRelation { p: usize, q: usize },
    #[error("structure violates the {axiom} axiom")]
    NotOverlapAlgebra { axiom: &'static str },
    #[error("element {p} has no pseudocomplement")]
    NoPseudocomplement { p: usize },
    #[error("no Heyting implication for ({p},{q}): residuation fails at {witness}")]
    NotHeyting { p: usize, q: usize, witness: usize },
    #[error("map is not monotone: {p} <= {q} but images are not ordered")]
    NotMonotone { p: usize, q: usize },
    #[error("map has no right adjoint (join preservation fails)")]
    NoRightAdjoint,
    #[error("map has no left adjoint (meet preservation fails)")]
    NoLeftAdjoint,
    #[error("map is not a frame map: {reason}")]
    NotFrameMap { reason: String },
    #[error("map is not an o-morphism: {condition} fails at ({p},{q})")]
    NotOMorphism {
        condition: &'static str,
        p: usize,
        q: usize,
    },
    #[error("the three o-morphism characterizations disagree (implementation bug)")]
    InconsistentCharacterizations,
    #[error("map shapes are not composable: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("map does not preserve joins")]
    NotJoinPreserving,
    #[error("structure is not atomic")]
    NotAtomic,
    #[error("search budget exceeded: {what}")]
    SearchBudgetExceeded { what: String },
    #[error("frame budget exceeded: more than {limit} saturated sets")]
    FrameBudgetExceeded { limit: usize },
    #[error("positivity law violated: {law}")]
    PositivityLawViolation { law: &'static str },
    #[error("machine-checked theorem violated: {theorem} (implementation bug)")]
    TheoremViolation { theorem: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Budgets bounding the brute-force loops.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Largest lattice carrier accepted at construction time.
    pub max_lattice_elements: usize,
    /// Largest base for the exhaustive overlap-relation search.
    pub overlap_base_limit: usize,
    /// Largest number of candidate tables for full map enumeration.
    pub map_enum_limit: usize,
    /// Largest number of saturated sets in a frame.
    pub frame_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_lattice_elements: 1 << 16,
            overlap_base_limit: 5,
            map_enum_limit: 1 << 20,
            frame_limit: 4096,
        }
    }
}

impl Budget {
    /// Uniformly scaled-down budget for quick runs.
    pub fn small() -> Self {
        Budget {
            max_lattice_elements: 1 << 10,
            overlap_base_limit: 4,
            map_enum_limit: 1 << 12,
            frame_limit: 256,
        }
    }

    /// Budget loosened for long runs.
    pub fn large() -> Self {
        Budget {
            max_lattice_elements: 1 << 16,
            overlap_base_limit: 6,
            map_enum_limit: 1 << 24,
            frame_limit: 1 << 14,
        }
    }
}
