//! Monodromy data, covers induced on W(B_n)-orbits, ramification and genera.

mod predict;
mod random;

pub use predict::{predict, PredictedType, Prediction, TypeBasis};
pub use random::{random_simple, MAX_REJECTIONS};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{OrbitKind, OrbitLabel, RootKind, SignedPerm};

/// Images of the standard generators of π₁(Y ∖ 𝔇) in W(B_n).
///
/// Relation: γ₁⋯γ_k = [α₁,β₁]⋯[α_g,β_g].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyDatum {
    pub n: usize,
    #[serde(default)]
    pub base_genus: usize,
    #[serde(rename = "generators")]
    pub gens: Vec<SignedPerm>,
    #[serde(default)]
    pub handles: Vec<(SignedPerm, SignedPerm)>,
}

impl MonodromyDatum {
    /// A datum over P¹.
    pub fn genus0(n: usize, gens: Vec<SignedPerm>) -> Self {
        MonodromyDatum {
            n,
            base_genus: 0,
            gens,
            handles: Vec::new(),
        }
    }

    pub fn branch_count(&self) -> usize {
        self.gens.len()
    }

    fn all_elements(&self) -> impl Iterator<Item = &SignedPerm> {
        self.gens
            .iter()
            .chain(self.handles.iter().flat_map(|(a, b)| [a, b]))
    }

    /// Checks shape, ranks and the product relation exactly.
    pub fn validate(&self) -> Result<()> {
        if self.handles.len() != self.base_genus {
            return Err(Error::Domain(format!(
                "base genus {} needs {} handle pairs, found {}",
                self.base_genus,
                self.base_genus,
                self.handles.len()
            )));
        }
        if self.gens.is_empty() && self.base_genus == 0 {
            return Err(Error::Domain(
                "a datum over P¹ needs at least one branch point".into(),
            ));
        }
        for w in self.all_elements() {
            if w.rank() != self.n {
                return Err(Error::RankMismatch {
                    expected: self.n,
                    found: w.rank(),
                });
            }
        }
        let id = SignedPerm::identity(self.n);
        let lhs = self.gens.iter().fold(id, |acc, g| acc * *g);
        let rhs = self
            .handles
            .iter()
            .fold(id, |acc, (a, b)| acc * SignedPerm::commutator(a, b));
        if lhs != rhs {
            return Err(Error::RelationViolated {
                product: format!("{}", rhs.inverse() * lhs),
            });
        }
        Ok(())
    }
}

/// A cover of the base induced by the action of the monodromy on a set of
/// orbit labels (or on one component of such a set).
///
/// `perms[i][x]` is the label position reached from position `x` by
/// generator `i`; handle permutations likewise. Positions index `labels`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverModel {
    pub datum: MonodromyDatum,
    pub orbit: OrbitKind,
    pub labels: Vec<OrbitLabel>,
    pub perms: Vec<Vec<usize>>,
    pub handle_perms: Vec<(Vec<usize>, Vec<usize>)>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        out[y] = x;
    }
    out
}

/// Lengths of the cycles of a permutation, longest first.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// d minus the number of cycles.
pub fn ramification_index(p: &[usize]) -> usize {
    p.len() - cycle_type(p).len()
}

/// Induced cover on the full orbit, labels in canonical order.
pub fn induce(datum: &MonodromyDatum, orbit: OrbitKind) -> Result<CoverModel> {
    datum.validate()?;
    let perm = |w: &SignedPerm| orbit.permutation(w);
    Ok(CoverModel {
        datum: datum.clone(),
        orbit,
        labels: orbit.labels(datum.n),
        perms: datum.gens.iter().map(perm).collect(),
        handle_perms: datum
            .handles
            .iter()
            .map(|(a, b)| (perm(a), perm(b)))
            .collect(),
    })
}

impl CoverModel {
    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    pub fn position(&self, label: &OrbitLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Whether the label permutations satisfy the surface-group relation.
    pub fn relation_holds(&self) -> bool {
        let id: Vec<usize> = (0..self.degree()).collect();
        let lhs = self
            .perms
            .iter()
            .fold(id.clone(), |acc, p| compose(&acc, p));
        let rhs = self.handle_perms.iter().fold(id, |acc, (a, b)| {
            let c = compose(&compose(a, b), &compose(&invert(a), &invert(b)));
            compose(&acc, &c)
        });
        lhs == rhs
    }

    /// Orbits of the generated permutation group, each sorted, ordered by
    /// least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut comp = vec![usize::MAX; d];
        let mut out = Vec::new();
        let all: Vec<&Vec<usize>> = self
            .perms
            .iter()
            .chain(self.handle_perms.iter().flat_map(|(a, b)| [a, b]))
            .collect();
        for start in 0..d {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for p in &all {
                    let y = p[x];
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Labels of each component, for error reporting.
    fn describe_components(&self) -> String {
        self.components()
            .iter()
            .map(|c| {
                let labels: Vec<String> = c.iter().map(|&i| self.labels[i].to_string()).collect();
                format!("{{{}}}", labels.join(" "))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn require_connected(&self) -> Result<()> {
        let count = self.components().len();
        if count == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected {
                count,
                components: self.describe_components(),
            })
        }
    }

    /// The sub-cover on a union of components (positions sorted ascending).
    pub fn restrict(&self, positions: &[usize]) -> Result<CoverModel> {
        let mut index = vec![usize::MAX; self.degree()];
        for (new, &old) in positions.iter().enumerate() {
            index[old] = new;
        }
        let remap = |p: &Vec<usize>| -> Result<Vec<usize>> {
            positions
                .iter()
                .map(|&x| {
                    let y = index[p[x]];
                    if y == usize::MAX {
                        Err(Error::Domain(
                            "positions are not a union of components".into(),
                        ))
                    } else {
                        Ok(y)
                    }
                })
                .collect()
        };
        Ok(CoverModel {
            datum: self.datum.clone(),
            orbit: self.orbit,
            labels: positions.iter().map(|&i| self.labels[i]).collect(),
            perms: self.perms.iter().map(remap).collect::<Result<_>>()?,
            handle_perms: self
                .handle_perms
                .iter()
                .map(|(a, b)| Ok((remap(a)?, remap(b)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// Total ramification Σ (d − #cycles) over branch points.
    pub fn total_ramification(&self) -> usize {
        self.perms.iter().map(|p| ramification_index(p)).sum()
    }

    /// Riemann–Hurwitz genus; refuses disconnected covers.
    pub fn genus(&self) -> Result<usize> {
        self.require_connected()?;
        let d = self.degree() as i64;
        let twice =
            2 - 2 * d + 2 * d * self.datum.base_genus as i64 + self.total_ramification() as i64;
        if twice % 2 != 0 || twice < 0 {
            return Err(Error::Internal(format!(
                "Riemann–Hurwitz gives non-integral genus (2g = {twice})"
            )));
        }
        Ok((twice / 2) as usize)
    }

    /// Genus of each component, in `components()` order.
    pub fn component_genera(&self) -> Result<Vec<usize>> {
        self.components()
            .iter()
            .map(|c| self.restrict(c)?.genus())
            .collect()
    }

    pub fn ramification(&self) -> Result<RamificationReport> {
        let n = self.datum.n;
        let mut points = Vec::with_capacity(self.perms.len());
        let mut short = Vec::new();
        let mut long = Vec::new();
        for (i, (g, p)) in self.datum.gens.iter().zip(&self.perms).enumerate() {
            let reflection = g.as_reflection().map(|r| r.kind());
            let ct = cycle_type(p);
            match reflection {
                Some(RootKind::Short) => short.push(i),
                Some(RootKind::Long) => long.push(i),
                None => {}
            }
            if self.orbit == OrbitKind::Spinor && self.degree() == 1 << n {
                let transpositions = ct.iter().filter(|&&c| c == 2).count();
                let expected = match reflection {
                    Some(RootKind::Short) => Some(1usize << (n - 1)),
                    Some(RootKind::Long) if n >= 2 => Some(1usize << (n - 2)),
                    _ => None,
                };
                if let Some(e) = expected {
                    if transpositions != e || ct.iter().any(|&c| c > 2) {
                        return Err(Error::Internal(format!(
                            "reflection at branch point {} acts on spinors with cycle type {ct:?}",
                            i + 1
                        )));
                    }
                }
            }
            points.push(BranchPoint {
                index: i + 1,
                cycle_type: ct,
                reflection,
            });
        }
        let simple = points.iter().all(|b| b.reflection.is_some());
        Ok(RamificationReport {
            points,
            short,
            long,
            simple,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchPoint {
    /// 1-based branch index.
    pub index: usize,
    pub cycle_type: Vec<usize>,
    pub reflection: Option<RootKind>,
}

/// Invariant: `short.len() + long.len()` is the number of reflection generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationReport {
    pub points: Vec<BranchPoint>,
    /// 0-based generator indices in 𝔇_s.
    pub short: Vec<usize>,
    /// 0-based generator indices in 𝔇_ℓ.
    pub long: Vec<usize>,
    pub simple: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{reflection, Root};
    use proptest::prelude::*;

    fn s(root: Root, n: usize) -> SignedPerm {
        reflection(root, n).unwrap()
    }

    #[test]
    fn validate_examples() {
        let e1 = s(Root::short(1), 2);
        assert!(MonodromyDatum::genus0(2, vec![e1, e1]).validate().is_ok());
        assert!(matches!(
            MonodromyDatum::genus0(2, vec![e1]).validate(),
            Err(Error::RelationViolated { .. })
        ));
        let w = s(Root::difference(1, 2), 3);
        let v = s(Root::short(3), 3);
        let commuting = MonodromyDatum {
            n: 3,
            base_genus: 1,
            gens: vec![],
            handles: vec![(w, v)],
        };
        assert!(commuting.validate().is_ok());
        let noncommuting = MonodromyDatum {
            handles: vec![(w, s(Root::short(1), 3))],
            ..commuting.clone()
        };
        assert!(noncommuting.validate().is_err());
        let mixed = MonodromyDatum::genus0(2, vec![e1, SignedPerm::identity(3)]);
        assert!(matches!(mixed.validate(), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn spinor_ramification_counts() {
        let n = 3;
        let d = MonodromyDatum::genus0(
            n,
            vec![
                s(Root::short(1), n),
                s(Root::short(1), n),
                s(Root::difference(1, 2), n),
                s(Root::difference(1, 2), n),
            ],
        );
        let cover = induce(&d, OrbitKind::Spinor).unwrap();
        let r = cover.ramification().unwrap();
        assert_eq!(r.points[0].cycle_type, vec![2, 2, 2, 2]);
        assert_eq!(r.points[2].cycle_type, vec![2, 2, 1, 1, 1, 1]);
        assert_eq!(r.short, vec![0, 1]);
        assert_eq!(r.long, vec![2, 3]);
        assert!(r.simple);
        let id = MonodromyDatum::genus0(n, vec![SignedPerm::identity(n)]);
        let cover = induce(&id, OrbitKind::Spinor).unwrap();
        let r = cover.ramification().unwrap();
        assert_eq!(r.points[0].cycle_type, vec![1; 8]);
        assert!(!r.simple);
    }

    #[test]
    fn components_of_trivial_datum() {
        let n = 3;
        let id = SignedPerm::identity(n);
        let d = MonodromyDatum {
            n,
            base_genus: 1,
            gens: vec![id],
            handles: vec![(id, id)],
        };
        let c = induce(&d, OrbitKind::Vector).unwrap();
        assert_eq!(c.components().len(), 2 * n);
        assert!(matches!(
            c.genus(),
            Err(Error::Disconnected { count: 6, .. })
        ));
        assert_eq!(c.component_genera().unwrap(), vec![1; 6]);
    }

    #[test]
    fn hyperelliptic_genus() {
        let e = s(Root::short(1), 1);
        let d = MonodromyDatum::genus0(1, vec![e; 6]);
        let c = induce(&d, OrbitKind::Vector).unwrap();
        assert_eq!(c.genus().unwrap(), 2);
    }

    #[test]
    fn b3_genera() {
        let d = random_simple(3, 4, 6, 7).unwrap();
        let g = |k| induce(&d, k).unwrap().genus().unwrap();
        assert_eq!(g(OrbitKind::Vector), 3);
        assert_eq!(g(OrbitKind::PairClass), 1);
        assert_eq!(g(OrbitKind::Spinor), 7);
        assert_eq!(g(OrbitKind::Parity), 1);
    }

    #[test]
    fn full_d_spinor_cover_splits() {
        for seed in 0..5 {
            let d = random_simple(3, 0, 10, seed).unwrap();
            let c = induce(&d, OrbitKind::Spinor).unwrap();
            let comps = c.components();
            assert_eq!(comps.len(), 2);
            assert!(comps.iter().all(|k| k.len() == 4));
        }
    }

    #[test]
    fn restrict_preserves_relation() {
        let d = random_simple(3, 0, 10, 3).unwrap();
        let c = induce(&d, OrbitKind::Spinor).unwrap();
        for comp in c.components() {
            let sub = c.restrict(&comp).unwrap();
            assert!(sub.relation_holds());
            assert!(sub.is_connected());
        }
        assert!(c.restrict(&[0]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn induced_relation_and_closed_form_genera(
            n in 2usize..5,
            half_s in 1usize..3,
            half_l in 1usize..4,
            seed in any::<u64>(),
        ) {
            let (ds, dl) = (2 * half_s, 2 * n - 2 + 2 * half_l);
            let d = random_simple(n, ds, dl, seed).unwrap();
            for kind in OrbitKind::ALL {
                let c = induce(&d, kind).unwrap();
                prop_assert!(c.relation_holds());
            }
            let x = induce(&d, OrbitKind::Spinor).unwrap();
            prop_assert!(x.is_connected());
            let p = predict(n, ds, dl, 0).unwrap();
            prop_assert_eq!(x.genus().unwrap() as i64, p.genus_x);
            let c = induce(&d, OrbitKind::Vector).unwrap();
            prop_assert_eq!(c.genus().unwrap() as i64, p.genus_c);
            let cp = induce(&d, OrbitKind::PairClass).unwrap();
            prop_assert_eq!(cp.genus().unwrap() as i64, p.genus_c_prime);
            let xp = induce(&d, OrbitKind::SpinorClass).unwrap();
            prop_assert_eq!(
                x.genus().unwrap() as i64 - xp.genus().unwrap() as i64,
                p.dim_p_x_x_prime
            );
            let y = induce(&d, OrbitKind::Parity).unwrap();
            prop_assert_eq!(y.genus().unwrap() as i64, p.dim_p_ytilde_y);
        }
    }
}
