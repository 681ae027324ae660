//! Steiner and circular symmetrization, and the exponential transform that
//! turns one into the other.

mod circular;
mod exp;
mod steiner;

pub use circular::{circular_symmetrize, circular_symmetrize_detailed, CircularSymmetrization};
pub use exp::exp_domain;
pub use steiner::{steiner_from_profile, steiner_symmetrize};
