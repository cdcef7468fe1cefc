//! Highest weight modules of the centrally extended algebra: weights from
//! quasipolynomials, truncated Verma modules, singular vectors.

mod verma;
mod weight;

pub use verma::{
    act_verma, pbw_label, pbw_level, singular_vectors, verma_basis, weight_space_dims, Pbw, TruncVerma, VermaElem,
};
pub use weight::{h_from_phi, h_sequence, HWSpec, Quasipolynomial};
