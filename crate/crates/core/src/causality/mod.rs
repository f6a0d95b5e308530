//! Titchmarsh-theorem machinery: Hilbert transforms, dispersion relations,
//! causality verdicts, and analytic continuation into the upper half-plane.

mod hilbert;
mod kk;
mod tail;
mod verdict;

pub use hilbert::{hilbert_transform, HilbertDirection, HilbertOutput, METHOD_DISAGREEMENT_LIMIT};
pub use kk::{
    kk_imag_from_real, kk_real_from_imag, subtracted_dispersion, KkOutput, SubtractionPoint,
    SubtractionSpec, TRUNCATION_DECAY,
};
pub use verdict::{
    analytic_continue, causality_verdict, causality_verdict_with, uhp_decay_profile,
    CausalityReport, UhpDecayProfile, UhpRow, Verdict, ANTICAUSAL_THRESHOLD, DEFAULT_LEAK_TOL,
};
