//! Closed-form genera, Prym dimensions and polarization types of a simple
//! B_n-covering from its branching counts.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ramification_index;
use crate::error::{Error, Result};
use crate::lattice::PolType;
use crate::weyl::{reflection, OrbitKind, Root};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeBasis {
    /// Established for these parameters.
    Proved,
    /// Predicted by the open conjecture for n ≥ 4 with short branching.
    Conjectural,
    /// No formula is available for these parameters.
    Unknown,
}

/// A predicted polarization type as (divisor, multiplicity) blocks.
///
/// `chain` is present iff every multiplicity is nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedType {
    pub basis: TypeBasis,
    pub blocks: Vec<(u64, i64)>,
    pub in_regime: bool,
    pub chain: Option<PolType>,
}

impl PredictedType {
    fn new(basis: TypeBasis, blocks: Vec<(u64, i64)>) -> Self {
        let in_regime = blocks.iter().all(|&(_, m)| m >= 0);
        let chain = in_regime.then(|| {
            PolType(
                blocks
                    .iter()
                    .flat_map(|&(d, m)| std::iter::repeat_n(BigInt::from(d), m as usize))
                    .collect(),
            )
        });
        PredictedType {
            basis,
            blocks,
            in_regime,
            chain,
        }
    }

    fn unknown() -> Self {
        PredictedType {
            basis: TypeBasis::Unknown,
            blocks: Vec::new(),
            in_regime: false,
            chain: None,
        }
    }

    pub fn dim(&self) -> i64 {
        self.blocks.iter().map(|&(_, m)| m).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub n: usize,
    pub ds: usize,
    pub dl: usize,
    pub base_genus: usize,
    pub genus_c_prime: i64,
    pub genus_c: i64,
    pub genus_x: i64,
    pub genus_x_prime: i64,
    pub genus_ytilde: i64,
    pub dim_p_c_c_prime: i64,
    pub dim_p_x_x_prime: i64,
    pub dim_p_ytilde_y: i64,
    /// Type of the Prym variety P(C, C′).
    pub type_p_c_c_prime: PredictedType,
    /// Type of the Prym-Tyurin variety P(X, δ).
    pub type_p_x_delta: PredictedType,
}

/// Riemann–Hurwitz genus of a degree-d cover with `ds` short and `dl` long
/// simple branch points, from the ramification of sample reflections.
fn rh_genus(kind: OrbitKind, n: usize, ds: usize, dl: usize, g: usize) -> i64 {
    let r = |root| ramification_index(&kind.permutation(&reflection(root, n).expect("root")));
    let rs = r(Root::short(1)) as i64;
    let rl = r(Root::difference(1, 2)) as i64;
    let d = kind.size(n) as i64;
    1 - d * (1 - g as i64) + (ds as i64 * rs + dl as i64 * rl) / 2
}

pub fn predict(n: usize, ds: usize, dl: usize, g: usize) -> Result<Prediction> {
    if n < 2 {
        return Err(Error::Domain(format!("rank {n} < 2 has no long roots")));
    }
    if n > crate::weyl::MAX_RANK {
        return Err(Error::UnsupportedRank {
            rank: n,
            limit: crate::weyl::MAX_RANK,
        });
    }
    if !ds.is_multiple_of(2) || !dl.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "branch counts must be even, got |𝔇_s| = {ds}, |𝔇_ℓ| = {dl}"
        )));
    }
    let (ni, dsi, dli, gi) = (n as i64, ds as i64, dl as i64, g as i64);
    let p2 = |e: i64| 1i64 << e;

    let genus_c_prime = dli / 2 + ni * gi - ni + 1;
    let genus_c = dsi / 2 + dli + 2 * ni * gi - 2 * ni + 1;
    let genus_x = if n >= 3 {
        p2(ni - 2) * dsi + p2(ni - 3) * dli + p2(ni) * gi - p2(ni) + 1
    } else {
        rh_genus(OrbitKind::Spinor, n, ds, dl, g)
    };
    let genus_x_prime = rh_genus(OrbitKind::SpinorClass, n, ds, dl, g);
    let genus_ytilde = dsi / 2 + 2 * gi - 1;
    let dim_p_c_c_prime = (dsi + dli) / 2 + ni * gi - ni;

    let type_p_c_c_prime = if ds > 0 {
        PredictedType::new(
            TypeBasis::Proved,
            vec![(1, dsi / 2 - 1), (2, genus_c_prime)],
        )
    } else {
        PredictedType::new(TypeBasis::Proved, vec![(2, dim_p_c_c_prime)])
    };

    let type_p_x_delta = match (n, ds > 0, g) {
        (2, _, _) => PredictedType::new(
            TypeBasis::Proved,
            vec![(1, dli / 2 - 1), (2, dsi / 2 - 1 + 2 * gi)],
        ),
        (3, true, _) => PredictedType::new(
            TypeBasis::Proved,
            vec![(2, dli / 2 + 2 * gi - 2), (4, dsi / 2 - 1), (8, gi)],
        ),
        (3, false, _) => {
            PredictedType::new(TypeBasis::Proved, vec![(2, dli / 2 + 2 * gi - 3), (8, gi)])
        }
        (_, false, 0) => {
            PredictedType::new(TypeBasis::Proved, vec![(1u64 << (n - 2), dim_p_c_c_prime)])
        }
        (_, true, 0) => PredictedType::new(
            TypeBasis::Conjectural,
            vec![
                (1u64 << (n - 2), dli / 2 + 1 - ni),
                (1u64 << (n - 1), dsi / 2 - 1),
            ],
        ),
        _ => PredictedType::unknown(),
    };

    Ok(Prediction {
        n,
        ds,
        dl,
        base_genus: g,
        genus_c_prime,
        genus_c,
        genus_x,
        genus_x_prime,
        genus_ytilde,
        dim_p_c_c_prime,
        dim_p_x_x_prime: genus_x - genus_x_prime,
        dim_p_ytilde_y: genus_ytilde - gi,
        type_p_c_c_prime,
        type_p_x_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(t: &PredictedType) -> PolType {
        t.chain.clone().expect("in regime")
    }

    #[test]
    fn b3_lists() {
        let p = predict(3, 4, 6, 0).unwrap();
        assert_eq!(chain(&p.type_p_c_c_prime), PolType::from_i64(&[1, 2]));
        assert_eq!(chain(&p.type_p_x_delta), PolType::from_i64(&[2, 4]));
        assert_eq!((p.genus_c, p.genus_c_prime, p.genus_x), (3, 1, 7));
        let p = predict(3, 6, 6, 0).unwrap();
        assert_eq!(chain(&p.type_p_c_c_prime), PolType::from_i64(&[1, 1, 2]));
        assert_eq!(chain(&p.type_p_x_delta), PolType::from_i64(&[2, 4, 4]));
        let p = predict(3, 4, 8, 0).unwrap();
        assert_eq!(chain(&p.type_p_c_c_prime), PolType::from_i64(&[1, 2, 2]));
        assert_eq!(chain(&p.type_p_x_delta), PolType::from_i64(&[2, 2, 4]));
    }

    #[test]
    fn b2_types() {
        let p = predict(2, 4, 4, 0).unwrap();
        assert_eq!(chain(&p.type_p_c_c_prime), PolType::from_i64(&[1, 2]));
        assert_eq!(chain(&p.type_p_x_delta), PolType::from_i64(&[1, 2]));
    }

    #[test]
    fn conjectured_b4() {
        let p = predict(4, 4, 8, 0).unwrap();
        assert_eq!(p.type_p_x_delta.basis, TypeBasis::Conjectural);
        assert_eq!(chain(&p.type_p_x_delta), PolType::from_i64(&[4, 8]));
        assert_eq!(p.genus_x, 17);
        let p = predict(4, 2, 8, 0).unwrap();
        assert_eq!(chain(&p.type_p_x_delta), PolType::from_i64(&[4]));
    }

    #[test]
    fn etale_types() {
        let p = predict(3, 0, 10, 0).unwrap();
        assert_eq!(chain(&p.type_p_x_delta), PolType::from_i64(&[2, 2]));
        let p = predict(4, 0, 12, 0).unwrap();
        assert_eq!(chain(&p.type_p_x_delta), PolType::from_i64(&[4, 4]));
        assert_eq!(p.type_p_x_delta.basis, TypeBasis::Proved);
    }

    #[test]
    fn out_of_regime_is_flagged() {
        let p = predict(3, 4, 2, 0).unwrap();
        assert!(!p.type_p_x_delta.in_regime);
        assert!(p.type_p_x_delta.chain.is_none());
        assert!(predict(3, 3, 6, 0).is_err());
        assert!(predict(1, 2, 2, 0).is_err());
    }

    #[test]
    fn dimensions_agree_across_formulas() {
        for n in 2..=5 {
            for ds in (2..=8).step_by(2) {
                for dl in (2 * n..=2 * n + 6).step_by(2) {
                    for g in 0..=2 {
                        let p = predict(n, ds, dl, g).unwrap();
                        // Prym dimension from the tower genera.
                        assert_eq!(p.dim_p_c_c_prime, p.genus_c - p.genus_c_prime);
                        if p.type_p_x_delta.in_regime {
                            assert_eq!(p.type_p_x_delta.dim(), p.dim_p_c_c_prime);
                        }
                        assert_eq!(p.genus_x, rh_genus(OrbitKind::Spinor, n, ds, dl, g));
                        assert_eq!(p.genus_c, rh_genus(OrbitKind::Vector, n, ds, dl, g));
                        if n >= 3 {
                            assert_eq!(2 * p.dim_p_x_x_prime, p.genus_x - 1);
                        }
                        if n == 3 {
                            assert_eq!(p.dim_p_c_c_prime, p.dim_p_x_x_prime - p.dim_p_ytilde_y);
                        }
                    }
                }
            }
        }
    }
}
