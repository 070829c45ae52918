use serde::Serialize;

use super::{lattice_type, Tower};
use crate::cover::{random_simple, TypeBasis};
use crate::error::{Error, Result};
use crate::lattice::PolType;

/// One random datum of the probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRow {
    pub trial: usize,
    pub seed: u64,
    pub prym_c: PolType,
    pub computed: PolType,
    pub conjectured: Option<PolType>,
    pub basis: TypeBasis,
    /// `None` when no prediction exists.
    pub agrees: Option<bool>,
    pub mu_surjective: bool,
    pub scaling: bool,
    pub dims_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub ds: usize,
    pub dl: usize,
    pub seed: u64,
    pub basis: TypeBasis,
    pub rows: Vec<ProbeRow>,
    pub compared: usize,
    pub agreeing: usize,
    /// Percentage of compared rows that agree; a finding, never a gate.
    pub agreement: Option<f64>,
}

impl ProbeReport {
    pub fn from_rows(n: usize, ds: usize, dl: usize, seed: u64, mut rows: Vec<ProbeRow>) -> Self {
        rows.sort_by_key(|r| r.trial);
        let compared = rows.iter().filter(|r| r.agrees.is_some()).count();
        let agreeing = rows.iter().filter(|r| r.agrees == Some(true)).count();
        let basis = rows.first().map_or(TypeBasis::Unknown, |r| r.basis);
        ProbeReport {
            n,
            ds,
            dl,
            seed,
            basis,
            rows,
            compared,
            agreeing,
            agreement: (compared > 0).then(|| 100.0 * agreeing as f64 / compared as f64),
        }
    }

    /// Rows disagreeing with a proved type; these indicate a defect.
    pub fn proved_failures(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.basis == TypeBasis::Proved && r.agrees == Some(false))
            .count()
    }
}

/// Seed of trial `trial` under base seed `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

pub fn probe_trial(n: usize, ds: usize, dl: usize, seed: u64, trial: usize) -> Result<ProbeRow> {
    if n < 4 {
        return Err(Error::Constraint(format!(
            "the probe targets n ≥ 4, got {n}"
        )));
    }
    let s = trial_seed(seed, trial);
    let datum = random_simple(n, ds, dl, s)?;
    let t = Tower::new(&datum)?;
    let pc = t.prym_c()?;
    let pd = t.prym_delta()?;
    let mu = t.mu(&pc)?;
    let predicted = t.prediction()?.type_p_x_delta;
    let computed = lattice_type(&pd)?;
    Ok(ProbeRow {
        trial,
        seed: s,
        prym_c: lattice_type(&pc)?,
        agrees: predicted.chain.as_ref().map(|c| *c == computed),
        computed,
        conjectured: predicted.chain,
        basis: predicted.basis,
        mu_surjective: mu.surjective,
        scaling: mu.scaling,
        dims_equal: pd.rank() == pc.rank(),
    })
}

/// Computed against conjectured types of P(X,δ) on `trials` random data.
pub fn conjecture_probe(
    n: usize,
    ds: usize,
    dl: usize,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let rows = (0..trials)
        .map(|i| probe_trial(n, ds, dl, seed, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_rows(n, ds, dl, seed, rows))
}
