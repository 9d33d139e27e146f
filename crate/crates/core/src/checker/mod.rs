//! Certificates for the local lemma's hypotheses.

mod certificate;
mod dependency;
mod econst;
mod induction;
mod ramsey;

pub use certificate::{
    check_general, check_symmetric, symmetric_fraction, CertificateMode, EventVerdict, GeneralOptions,
    LLLCertificate, SymmetricVariant,
};
pub use dependency::{dependency_degrees, DependencyMode, DependencyReport};
pub use econst::{EConstant, EDecision};
pub use induction::{induction_certificate, InductionReport, InductionRow};
pub use ramsey::{ramsey_condition, ramsey_decision};
