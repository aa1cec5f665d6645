//! Mixed quantum/classical polynomial algebras: presentations, normal forms,
//! quantum tori and rational equivalence invariants.

pub mod coeff;
pub mod embed;
pub mod error;
pub mod lattice;
pub mod mixed;
pub mod presentation;
pub mod qweyl;
pub mod reduce;
pub mod rewrite;
pub mod scalar;
pub mod syntax;
pub mod torus;

pub use coeff::{CoeffRing, Coefficient};
pub use error::{Error, Result};
pub use embed::{GeneratorMap, HomCheck};
pub use lattice::IntMatrix;
pub use mixed::{CanonicalMixedAlgebra, Equivalence, MixedWeylField, Reason};
pub use qweyl::{QuantumWeylAlgebra, Localization};
pub use presentation::{AdmissibilityReport, Presentation, Relation, TriangleWitness};
pub use reduce::{reduce_to_canonical, ReductionCertificate, Step};
pub use rewrite::{Confluence, NCElement, ReductionSystem, Rule, Word};
pub use scalar::{Scalar, ScalarGroup, SubgroupDescription};
