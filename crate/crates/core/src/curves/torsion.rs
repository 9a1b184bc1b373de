use serde::Serialize;

use super::counting::count_points;
use super::minimal::minimal_model;
use super::weierstrass::WeierstrassCurve;
use crate::arith::{mod_floor_u64, primes_below};

/// Search bound on the auxiliary prime used by [`torsion_p_trivial`].
pub const DEFAULT_TORSION_SEARCH: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TorsionCertificate {
    /// E(Q)[p] = 0, witnessed by a good prime ell with p not dividing #E(F_ell).
    CertifiedTrivial {
        ell: u64,
        count: u64,
    },
    Unknown,
}

impl TorsionCertificate {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TorsionCertificate::CertifiedTrivial { .. })
    }
}

/// One-sided check that E(Q) has no point of order p: prime-to-ell torsion
/// injects into E(F_ell) at good primes ell.
pub fn torsion_p_trivial(e: &WeierstrassCurve, p: u64) -> TorsionCertificate {
    torsion_p_trivial_bounded(e, p, DEFAULT_TORSION_SEARCH)
}

pub fn torsion_p_trivial_bounded(e: &WeierstrassCurve, p: u64, bound: u64) -> TorsionCertificate {
    let m = minimal_model(e);
    let disc = m.discriminant();
    for ell in primes_below(bound) {
        if ell == 2 || ell == p || mod_floor_u64(&disc, ell) == 0 {
            continue;
        }
        if let Ok(c) = count_points(&m, ell) {
            if c.count % p != 0 {
                return TorsionCertificate::CertifiedTrivial { ell, count: c.count };
            }
        }
    }
    TorsionCertificate::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_i64s(a).unwrap()
    }

    #[test]
    fn first_count_certifies() {
        // y^2 = x^3 + 216x - 54 has 9 points over F_5, prime to 11
        let e = curve([0, 0, 0, 216, -54]);
        assert_eq!(count_points(&e, 5).unwrap().count, 9);
        match torsion_p_trivial(&e, 11) {
            TorsionCertificate::CertifiedTrivial { ell, count } => {
                assert!(ell <= 5 && count % 11 != 0);
            }
            TorsionCertificate::Unknown => panic!("expected a certificate"),
        }
    }

    #[test]
    fn trivial_torsion_curve() {
        let e = curve([0, 0, 1, -1, 0]);
        for p in [3, 5, 7, 11, 13, 17, 37] {
            assert!(torsion_p_trivial(&e, p).is_trivial(), "p = {p}");
        }
    }

    #[test]
    fn rational_torsion_stays_unknown() {
        // 11a3 has a rational 5-torsion point; 14a1 has a 3-torsion point
        assert_eq!(torsion_p_trivial(&curve([0, -1, 1, 0, 0]), 5), TorsionCertificate::Unknown);
        assert_eq!(torsion_p_trivial(&curve([1, 0, 1, 4, -6]), 3), TorsionCertificate::Unknown);
    }
}
