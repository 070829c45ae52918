//! Prym and Prym-Tyurin lattices over P¹, the μ-isomorphism criterion, and
//! the named verification scenarios.
//!
//! Abelian subvarieties are modelled by saturated sublattices of H₁ with the
//! restricted intersection form. Over P¹ the norm kernel is the whole
//! Jacobian, so P = sat((1 − ε)·H₁) for the relevant endomorphism ε.

mod probe;
mod scenarios;

pub use probe::{conjecture_probe, probe_trial, ProbeReport, ProbeRow};
pub use scenarios::{scenario_spec, verify_scenario, ScenarioInput, ScenarioSpec, SCENARIOS};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::corr::{make_d, make_iota, make_s_family, make_sigma, FiberMatrix};
use crate::cover::TypeBasis;
use crate::cover::{induce, MonodromyDatum};
use crate::error::{Error, Result};
use crate::lattice::{
    coordinates, form_type, restrict_form, saturate, snf, PolType, PolarizedLattice,
};
use crate::matrix::IntMatrix;
use crate::surface::{induced_map, HomologyModel};
use crate::weyl::{classify_subgroup, GroupClass, OrbitKind};

/// Outcome of the μ criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MuCheck {
    /// (s₀)_* maps H₁(X) onto the Prym lattice of C.
    pub surjective: bool,
    /// E_X(ᵗs₀α, ᵗs₀β) = 2^{n−1} E_C(α, β) on the Prym lattice of C.
    pub scaling: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A computed polarization type with its prediction, if any.
///
/// Only rows with `basis == Proved` and a prediction enter the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeRow {
    pub variety: String,
    pub rank: usize,
    pub computed: PolType,
    pub predicted: Option<PolType>,
    pub basis: TypeBasis,
}

impl TypeRow {
    pub fn agrees(&self) -> Option<bool> {
        self.predicted.as_ref().map(|p| *p == self.computed)
    }

    fn asserted_ok(&self) -> bool {
        self.basis != TypeBasis::Proved || self.agrees().unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumSummary {
    pub n: usize,
    pub ds: usize,
    pub dl: usize,
    pub group: Option<GroupClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrymResult {
    pub scenario: String,
    pub datum: DatumSummary,
    pub types: Vec<TypeRow>,
    pub mu_surjective: Option<bool>,
    pub scaling_verified: Option<bool>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl PrymResult {
    fn new(scenario: &str, datum: DatumSummary) -> Self {
        PrymResult {
            scenario: scenario.to_string(),
            datum,
            types: Vec::new(),
            mu_surjective: None,
            scaling_verified: None,
            checks: Vec::new(),
            notes: vec![
                "lattice-level results hold over P¹ only; base genus ≥ 1 is covered by `predict`"
                    .into(),
            ],
            verdict: Verdict::Fail,
        }
    }

    fn row(
        &mut self,
        variety: &str,
        lattice: &PolarizedLattice,
        predicted: Option<PolType>,
        basis: TypeBasis,
    ) -> Result<PolType> {
        let computed = lattice_type(lattice)?;
        self.types.push(TypeRow {
            variety: variety.to_string(),
            rank: lattice.rank(),
            computed: computed.clone(),
            predicted,
            basis,
        });
        Ok(computed)
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn set_mu(&mut self, mu: MuCheck) {
        self.mu_surjective = Some(mu.surjective);
        self.scaling_verified = Some(mu.scaling);
    }

    fn finish(mut self) -> Self {
        let ok = self.types.iter().all(TypeRow::asserted_ok)
            && self.checks.iter().all(|c| c.passed)
            && self.mu_surjective != Some(false)
            && self.scaling_verified != Some(false);
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn type_of(&self, variety: &str) -> Option<&PolType> {
        self.types
            .iter()
            .find(|r| r.variety == variety)
            .map(|r| &r.computed)
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Type of a polarized lattice; the empty type for rank 0.
pub fn lattice_type(l: &PolarizedLattice) -> Result<PolType> {
    if l.rank() == 0 {
        return Ok(PolType(Vec::new()));
    }
    l.ptype()
}

/// Type of a polarized lattice whose form is divisible by `k`, after division.
pub fn scaled_type(l: &PolarizedLattice, k: i64) -> Result<Option<PolType>> {
    if l.rank() == 0 {
        return Ok(Some(PolType(Vec::new())));
    }
    match crate::lattice::exact_div(&l.form(), &BigInt::from(k)) {
        Some(f) => form_type(&f).map(Some),
        None => Ok(None),
    }
}

fn same(a: &IntMatrix, b: &IntMatrix) -> bool {
    crate::lattice::same_lattice(a, b)
}

fn on(h: &HomologyModel, m: &FiberMatrix) -> Result<IntMatrix> {
    induced_map(h, h, m)
}

/// sat((1 − ι_*)·H₁) for a fiber involution ι; any number of components.
fn anti_invariant(h: &HomologyModel, involution: &FiberMatrix) -> Result<PolarizedLattice> {
    if involution.src != involution.dst
        || involution.then(involution)?.entries != IntMatrix::identity(involution.entries.rows())
    {
        return Err(Error::Domain(
            "correspondence is not an involution on fibers".into(),
        ));
    }
    let i = on(h, involution)?;
    let e = IntMatrix::identity(h.rank());
    if &i * &i != e {
        return Err(Error::Internal(
            "induced involution does not square to the identity".into(),
        ));
    }
    Ok(PolarizedLattice::new(saturate(&(&e - &i)), h.gram.clone()))
}

/// Prym lattice sat((1 − ι_*)·H₁(C)) of a connected cover over P¹ with a
/// fiber involution.
pub fn prym_lattice(h: &HomologyModel, involution: &FiberMatrix) -> Result<PolarizedLattice> {
    h.cover.require_connected()?;
    anti_invariant(h, involution)
}

/// Whether (δ_* − 1)(δ_* + 2^{n−1} − 1) = 0 on H₁(X).
pub fn quadratic_relation(x: &HomologyModel) -> Result<bool> {
    let delta = on(x, &make_d(x.cover.datum.n))?;
    Ok(quadratic_holds(&delta, x.cover.datum.n))
}

fn quadratic_holds(delta: &IntMatrix, n: usize) -> bool {
    let e = IntMatrix::identity(delta.rows());
    let q = 1i64 << (n - 1);
    (&(delta - &e) * &(delta + &e.scale_i64(q - 1))).is_zero()
}

/// Prym-Tyurin lattice sat((1 − δ_*)·H₁(X)) of a spinor cover over P¹.
///
/// Disconnected spinor covers (monodromy in W(D_n)) are treated as the
/// direct sum of their components. A failed quadratic relation is an
/// internal error.
pub fn prym_tyurin_lattice(x: &HomologyModel) -> Result<PolarizedLattice> {
    if x.cover.orbit != OrbitKind::Spinor {
        return Err(Error::Domain(format!(
            "{:?} cover is not a spinor cover",
            x.cover.orbit
        )));
    }
    let n = x.cover.datum.n;
    let delta = on(x, &make_d(n))?;
    if !quadratic_holds(&delta, n) {
        return Err(Error::Internal(format!(
            "(δ − 1)(δ + {}) ≠ 0 on H₁(X)",
            (1i64 << (n - 1)) - 1
        )));
    }
    let e = IntMatrix::identity(x.rank());
    Ok(PolarizedLattice::new(
        saturate(&(&e - &delta)),
        x.gram.clone(),
    ))
}

/// The maps s₀ = (S₀)_* : H₁(X) → H₁(C) and ᵗs₀ : H₁(C) → H₁(X).
fn s0_pair(x: &HomologyModel, c: &HomologyModel) -> Result<(IntMatrix, IntMatrix)> {
    let s0 = make_s_family(x.cover.datum.n).s0;
    Ok((induced_map(x, c, &s0)?, induced_map(c, x, &s0.transpose())?))
}

/// Whether the columns of `m` generate the lattice with basis `basis`.
fn generates(basis: &IntMatrix, m: &IntMatrix) -> bool {
    match coordinates(basis, m) {
        Ok(coords) => {
            let s = snf(&coords);
            s.rank == basis.cols() && s.divisors().iter().all(|d| d.is_one())
        }
        Err(_) => false,
    }
}

fn mu_flags(x: &HomologyModel, c: &HomologyModel, prym_c: &PolarizedLattice) -> Result<MuCheck> {
    let n = x.cover.datum.n;
    let (s0, s0t) = s0_pair(x, c)?;
    let b = &prym_c.basis;
    let pushed = &s0t * b;
    let lhs = restrict_form(&pushed, &x.gram);
    let rhs = restrict_form(b, &c.gram).scale_i64(1 << (n - 1));
    Ok(MuCheck {
        surjective: generates(b, &s0),
        scaling: lhs == rhs,
    })
}

/// The μ criterion for the spinor cover `x` and vector cover `c` of one datum.
pub fn mu_check(x: &HomologyModel, c: &HomologyModel) -> Result<MuCheck> {
    x.cover.require_connected()?;
    c.cover.require_connected()?;
    if x.cover.orbit != OrbitKind::Spinor || c.cover.orbit != OrbitKind::Vector {
        return Err(Error::Domain(
            "mu_check needs the spinor and vector covers".into(),
        ));
    }
    let prym_c = prym_lattice(c, &make_iota(c.cover.datum.n))?;
    mu_flags(x, c, &prym_c)
}

/// (2^{n−1} / (d₁ d_p))·dual(t), if integral.
pub fn theorem1_type(n: usize, prym_c: &PolType) -> Option<PolType> {
    let p = prym_c.dim();
    if p == 0 {
        return Some(PolType(Vec::new()));
    }
    let q = BigInt::from(1u64 << (n - 1));
    let d1dp = &prym_c.0[0] * &prym_c.0[p - 1];
    let mut out = Vec::with_capacity(p);
    for e in prym_c.dual().0 {
        let num = &q * e;
        if (&num % &d1dp) != BigInt::from(0) {
            return None;
        }
        out.push(num / &d1dp);
    }
    Some(PolType(out))
}

/// The homology of one datum's vector and spinor covers over P¹.
struct Tower {
    n: usize,
    summary: DatumSummary,
    c: HomologyModel,
    x: HomologyModel,
}

impl Tower {
    fn new(datum: &MonodromyDatum) -> Result<Tower> {
        datum.validate()?;
        if datum.base_genus != 0 {
            return Err(Error::Unsupported(
                "homology over a base of genus ≥ 1 is not computed; use `predict`".into(),
            ));
        }
        let n = datum.n;
        if n < 2 {
            return Err(Error::Constraint(format!(
                "rank {n} < 2 has no spinor tower"
            )));
        }
        let vector = induce(datum, OrbitKind::Vector)?;
        vector.require_connected()?;
        let spinor = induce(datum, OrbitKind::Spinor)?;
        let ram = spinor.ramification()?;
        if !ram.simple {
            return Err(Error::Constraint(
                "every branch point must be a reflection".into(),
            ));
        }
        let group = if n <= crate::weyl::MAX_ENUMERATION_RANK {
            Some(classify_subgroup(&datum.gens)?)
        } else {
            None
        };
        Ok(Tower {
            n,
            summary: DatumSummary {
                n,
                ds: ram.short.len(),
                dl: ram.long.len(),
                group,
            },
            c: HomologyModel::build(&vector)?,
            x: HomologyModel::build_disjoint(&spinor)?,
        })
    }

    fn prym_c(&self) -> Result<PolarizedLattice> {
        prym_lattice(&self.c, &make_iota(self.n))
    }

    fn prym_x_prime(&self) -> Result<PolarizedLattice> {
        anti_invariant(&self.x, &make_sigma(self.n))
    }

    fn prym_delta(&self) -> Result<PolarizedLattice> {
        prym_tyurin_lattice(&self.x)
    }

    fn delta(&self) -> Result<IntMatrix> {
        on(&self.x, &make_d(self.n))
    }

    fn mu(&self, prym_c: &PolarizedLattice) -> Result<MuCheck> {
        mu_flags(&self.x, &self.c, prym_c)
    }

    fn prediction(&self) -> Result<crate::cover::Prediction> {
        crate::cover::predict(self.n, self.summary.ds, self.summary.dl, 0)
    }

    fn q(&self) -> i64 {
        1 << (self.n - 1)
    }
}

#[cfg(test)]
mod tests;
