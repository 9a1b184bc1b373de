//! Elliptic curves over Q: models and invariants, twists, minimal models,
//! Tate's algorithm, point counts mod primes and 2-division data.

mod counting;
mod isogeny;
mod minimal;
mod polymod;
mod tate;
mod torsion;
mod two_division;
mod weierstrass;

pub use counting::{
    count_points, count_points_bounded, is_anomalous, is_good_ordinary, trace_of_frobenius, ReductionCount,
    DEFAULT_COUNT_BOUND,
};
pub use isogeny::{kernel_real_points, twist_with_kernel, KernelRealPoints};
pub use minimal::{from_c4_c6, isomorphism, minimal_model, minimal_model_with_map, Isomorphism};
pub use tate::{bad_primes_data, conductor, tamagawa_product, tate_algorithm, Kodaira, LocalData, Reduction};
pub use torsion::{torsion_p_trivial, torsion_p_trivial_bounded, TorsionCertificate, DEFAULT_TORSION_SEARCH};
pub use two_division::{mod2_image, rational_two_torsion_count, two_division_frobenius_order, Mod2Image};
pub use weierstrass::{Invariants, WeierstrassCurve};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("singular Weierstrass model (discriminant 0)")]
    Singular,
    #[error("change of variables leaves the integers")]
    NonIntegral,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("prime {prime} exceeds the point-counting bound {bound}")]
    CountBound { prime: u64, bound: u64 },
    #[error("{0} ramifies in the 2-division field")]
    Ramified(u64),
    #[error("twist parameter {0} must be squarefree and different from 0 and 1")]
    InvalidTwist(i64),
    #[error("no 3-isogeny kernel data")]
    MissingIsogeny,
    #[error("{0}")]
    Parse(String),
}
