//! W-equivariant fiber correspondences between the spinor and vector
//! covers and exact verification of the identities they satisfy.
//!
//! A `FiberMatrix` M from orbit X to orbit Y sends the fiber point x_s to
//! Σ_t M[s][t] y_t. Doing A: X → Y and then B: Y → Z has matrix A·B, and
//! the induced maps on H₁ compose as induced(A·B) = induced(B)·induced(A).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cover::{induce, MonodromyDatum};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::surface::{induced_map, HomologyModel};
use crate::weyl::{act, b_generators, OrbitKind, OrbitLabel, SignedPerm, Subset};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct FiberMatrix {
    pub n: usize,
    pub src: OrbitKind,
    pub dst: OrbitKind,
    /// Rows indexed by `src` labels, columns by `dst` labels, canonical order.
    pub entries: IntMatrix,
}

impl fmt::Debug for FiberMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} → {:?} (n = {})", self.src, self.dst, self.n)?;
        write!(f, "{:?}", self.entries)
    }
}

impl FiberMatrix {
    pub fn new(n: usize, src: OrbitKind, dst: OrbitKind, entries: IntMatrix) -> Result<Self> {
        if entries.shape() != (src.size(n), dst.size(n)) {
            return Err(Error::Domain(format!(
                "{:?}→{:?} at n = {n} needs shape {}×{}, got {}×{}",
                src,
                dst,
                src.size(n),
                dst.size(n),
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(FiberMatrix {
            n,
            src,
            dst,
            entries,
        })
    }

    pub fn from_fn(
        n: usize,
        src: OrbitKind,
        dst: OrbitKind,
        f: impl Fn(&OrbitLabel, &OrbitLabel) -> i64,
    ) -> Self {
        let (ls, ld) = (src.labels(n), dst.labels(n));
        let entries = IntMatrix::from_fn(ls.len(), ld.len(), |i, j| f(&ls[i], &ld[j]));
        FiberMatrix {
            n,
            src,
            dst,
            entries,
        }
    }

    pub fn identity(n: usize, kind: OrbitKind) -> Self {
        FiberMatrix {
            n,
            src: kind,
            dst: kind,
            entries: IntMatrix::identity(kind.size(n)),
        }
    }

    /// All-ones correspondence.
    pub fn trace(n: usize, src: OrbitKind, dst: OrbitKind) -> Self {
        FiberMatrix {
            n,
            src,
            dst,
            entries: IntMatrix::filled(src.size(n), dst.size(n), 1),
        }
    }

    pub fn transpose(&self) -> Self {
        FiberMatrix {
            n: self.n,
            src: self.dst,
            dst: self.src,
            entries: self.entries.transpose(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FiberMatrix) -> Result<Self> {
        if self.dst != next.src || self.n != next.n {
            return Err(Error::Domain(format!(
                "cannot follow {:?}→{:?} by {:?}→{:?}",
                self.src, self.dst, next.src, next.dst
            )));
        }
        Ok(FiberMatrix {
            n: self.n,
            src: self.src,
            dst: next.dst,
            entries: &self.entries * &next.entries,
        })
    }

    fn same_shape(&self, other: &FiberMatrix) -> Result<()> {
        if (self.n, self.src, self.dst) != (other.n, other.src, other.dst) {
            return Err(Error::Domain(
                "fiber matrices live on different orbits".into(),
            ));
        }
        Ok(())
    }

    pub fn plus(&self, other: &FiberMatrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(FiberMatrix {
            entries: &self.entries + &other.entries,
            ..self.clone()
        })
    }

    pub fn minus(&self, other: &FiberMatrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(FiberMatrix {
            entries: &self.entries - &other.entries,
            ..self.clone()
        })
    }

    pub fn scaled(&self, k: i64) -> Self {
        FiberMatrix {
            entries: self.entries.scale_i64(k),
            ..self.clone()
        }
    }

    /// `self + k·E` for an endomorphism.
    pub fn shifted(&self, k: i64) -> Result<Self> {
        self.plus(&FiberMatrix::identity(self.n, self.src).scaled(k))
    }

    /// Whether M[s][t] = M[w s][w t] for all s, t.
    pub fn is_equivariant(&self, w: &SignedPerm) -> bool {
        let ps = self.src.permutation(w);
        let pd = self.dst.permutation(w);
        (0..self.entries.rows()).all(|s| {
            (0..self.entries.cols()).all(|t| self.entries[(s, t)] == self.entries[(ps[s], pd[t])])
        })
    }

    pub fn check_equivariant(&self, gens: &[SignedPerm]) -> Result<()> {
        for (i, w) in gens.iter().enumerate() {
            if !self.is_equivariant(w) {
                return Err(Error::NotEquivariant(format!(
                    "{:?}→{:?} fails at generator {} = {w}",
                    self.src,
                    self.dst,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Common row sum, if constant.
    pub fn degree(&self) -> Option<BigInt> {
        let sums = self.entries.row_sums();
        let first = sums.first()?.clone();
        sums.iter().all(|s| *s == first).then_some(first)
    }
}

fn spinor(l: &OrbitLabel) -> Subset {
    match l {
        OrbitLabel::Spinor(a) => *a,
        _ => unreachable!("spinor orbit label expected"),
    }
}

fn vector(l: &OrbitLabel) -> i64 {
    match l {
        OrbitLabel::Vector(j) => *j,
        _ => unreachable!("vector orbit label expected"),
    }
}

/// D(x_A) = Σ_{B ≠ A} (|A Δ B| − 1) x_B on the spinor fiber.
pub fn make_d(n: usize) -> FiberMatrix {
    FiberMatrix::from_fn(n, OrbitKind::Spinor, OrbitKind::Spinor, |a, b| {
        let (a, b) = (spinor(a), spinor(b));
        if a == b {
            0
        } else {
            a.symmetric_difference(&b).len() as i64 - 1
        }
    })
}

/// D_i(x_A) = Σ_{|A Δ B| = i + 1} x_B, so that D = Σ i·D_i.
pub fn make_di(n: usize, i: usize) -> Result<FiberMatrix> {
    if i >= n {
        return Err(Error::Domain(format!("D_{i} needs i < n = {n}")));
    }
    Ok(FiberMatrix::from_fn(
        n,
        OrbitKind::Spinor,
        OrbitKind::Spinor,
        |a, b| i64::from(spinor(a).symmetric_difference(&spinor(b)).len() == i + 1),
    ))
}

/// Complementation σ on the spinor fiber.
pub fn make_sigma(n: usize) -> FiberMatrix {
    FiberMatrix::from_fn(n, OrbitKind::Spinor, OrbitKind::Spinor, |a, b| {
        i64::from(spinor(b) == spinor(a).complement(n))
    })
}

/// The involution ι : x_j ↔ x_{−j} on the vector fiber.
pub fn make_iota(n: usize) -> FiberMatrix {
    FiberMatrix::from_fn(n, OrbitKind::Vector, OrbitKind::Vector, |a, b| {
        i64::from(vector(a) == -vector(b))
    })
}

/// The quotient map of fibers from `src` onto `dst`.
pub fn make_projection(n: usize, src: OrbitKind, dst: OrbitKind) -> Result<FiberMatrix> {
    use OrbitKind::*;
    let image = |l: &OrbitLabel| -> OrbitLabel {
        match (l, dst) {
            (OrbitLabel::Spinor(a), Parity) => OrbitLabel::Parity(a.parity()),
            (OrbitLabel::Spinor(a), SpinorClass) => OrbitLabel::spinor_class(*a, n),
            (OrbitLabel::Vector(j), PairClass) => OrbitLabel::PairClass(j.unsigned_abs() as usize),
            _ => unreachable!(),
        }
    };
    match (src, dst) {
        (Spinor, Parity) | (Spinor, SpinorClass) | (Vector, PairClass) => {
            Ok(FiberMatrix::from_fn(n, src, dst, |a, b| {
                i64::from(image(a) == *b)
            }))
        }
        _ => Err(Error::Domain(format!("no quotient map {src:?} → {dst:?}"))),
    }
}

/// The correspondences between the spinor fiber (e_A) and the vector fiber (f_{±j}).
#[derive(Clone, Debug)]
pub struct SFamily {
    pub s: FiberMatrix,
    pub s0: FiberMatrix,
    pub s1: FiberMatrix,
    pub t: FiberMatrix,
    pub t1: FiberMatrix,
    pub t2: FiberMatrix,
}

/// S₀(e_A) = Σ_{j∉A} f_{−j} + Σ_{j∈A} f_j, S₁ the opposite choice,
/// T all ones, S = 2S₀ + nT, T₁ and T₂ the trace correspondences.
pub fn make_s_family(n: usize) -> SFamily {
    use OrbitKind::{Spinor, Vector};
    let s0 = FiberMatrix::from_fn(n, Spinor, Vector, |a, f| {
        let (a, j) = (spinor(a), vector(f));
        let inside = a.contains(j.unsigned_abs() as usize);
        i64::from(inside == (j > 0))
    });
    let s1 = FiberMatrix::from_fn(n, Spinor, Vector, |a, f| {
        let (a, j) = (spinor(a), vector(f));
        let inside = a.contains(j.unsigned_abs() as usize);
        i64::from(inside != (j > 0))
    });
    let t = FiberMatrix::trace(n, Spinor, Vector);
    let s = s0.scaled(2).plus(&t.scaled(n as i64)).expect("same shape");
    SFamily {
        s,
        s0,
        s1,
        t,
        t1: FiberMatrix::trace(n, Spinor, Spinor),
        t2: FiberMatrix::trace(n, Vector, Vector),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    /// ω₁, orbit {±ε_j}.
    Omega1,
    /// ω_n, orbit {λ_A}.
    OmegaN,
}

/// Extended-orbit Gram matrix (ℓ_i, ℓ_j) = (λ_i | λ_j − λ_i) − 1 and exponent q.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitGram {
    pub weight: Weight,
    pub labels: Vec<OrbitLabel>,
    pub gram: IntMatrix,
    pub q: i64,
}

/// `scale` fixes the form (ε_j | ε_k) = scale · δ_jk.
pub fn orbit_gram(n: usize, weight: Weight, scale: i64) -> Result<OrbitGram> {
    let kind = match weight {
        Weight::Omega1 => OrbitKind::Vector,
        Weight::OmegaN => OrbitKind::Spinor,
    };
    let labels = kind.labels(n);
    // Weights doubled to integer coordinates.
    let twice: Vec<Vec<i64>> = labels
        .iter()
        .map(|l| match l {
            OrbitLabel::Vector(j) => (1..=n as i64)
                .map(|k| if k == j.abs() { 2 * j.signum() } else { 0 })
                .collect(),
            OrbitLabel::Spinor(a) => (1..=n)
                .map(|k| if a.contains(k) { -1 } else { 1 })
                .collect(),
            _ => unreachable!(),
        })
        .collect();
    // (x | y) = scale · Σ x_k y_k / 4 on doubled coordinates.
    let dot4 = |x: &[i64], y: &[i64]| scale * x.iter().zip(y).map(|(a, b)| a * b).sum::<i64>();
    let exact = |num: i64| -> Result<i64> {
        if num % 4 == 0 {
            Ok(num / 4)
        } else {
            Err(Error::Domain(format!(
                "form scale {scale} gives non-integral product {num}/4"
            )))
        }
    };
    let d = labels.len();
    let mut gram = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let diff: Vec<i64> = twice[j].iter().zip(&twice[i]).map(|(a, b)| a - b).collect();
            gram[(i, j)] = BigInt::from(exact(dot4(&twice[i], &diff))? - 1);
        }
    }
    // q = −d (λ | λ) / rk L with rk L = n.
    let norm4 = dot4(&twice[0], &twice[0]);
    let num = -(d as i64) * norm4;
    if num % (4 * n as i64) != 0 {
        return Err(Error::Domain(format!(
            "exponent {num}/{} is not integral",
            4 * n
        )));
    }
    Ok(OrbitGram {
        weight,
        labels,
        gram,
        q: num / (4 * n as i64),
    })
}

/// An entry of the identity catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub key: char,
    pub name: &'static str,
    pub statement: &'static str,
    /// Ranks at which the identity is asserted.
    pub ranks: &'static [usize],
}

pub const IDENTITIES: [IdentitySpec; 11] = [
    IdentitySpec {
        key: 'a',
        name: "trace_lemma",
        statement: "ᵗT∘S = ᵗS∘T = a·T₁ and S∘ᵗT = T∘ᵗS = b·T₂",
        ranks: &[2, 3, 4, 5, 6],
    },
    IdentitySpec {
        key: 'b',
        name: "s0_transpose_s0",
        statement: "ᵗS₀∘S₀ = E − D + (n−1)·T₁",
        ranks: &[2, 3, 4, 5, 6],
    },
    IdentitySpec {
        key: 'c',
        name: "s0_s0_transpose",
        statement: "S₀∘ᵗS₀ = 2^{n−2}(E − I) + 2^{n−2}·T₂",
        ranks: &[2, 3, 4, 5, 6],
    },
    IdentitySpec {
        key: 'd',
        name: "sigma_commutes_D",
        statement: "σ∘D = D∘σ",
        ranks: &[2, 3, 4, 5, 6],
    },
    IdentitySpec {
        key: 'e',
        name: "D_minus_one_sigma_orbit",
        statement: "(D − E)∘(E + σ) = (n−2)·T₁",
        ranks: &[2, 3, 4, 5, 6],
    },
    IdentitySpec {
        key: 'f',
        name: "quadratic_relation",
        statement: "(D − E)∘(D + (2^{n−1}−1)E) = m·T₁",
        ranks: &[2, 3, 4, 5, 6],
    },
    IdentitySpec {
        key: 'g',
        name: "parity_pushforward",
        statement: "Par∘(D − E) = M·J, M = Σ_{k even} C(n,k)(k−1)",
        ranks: &[3, 5],
    },
    IdentitySpec {
        key: 'h',
        name: "antidiagonal_pullback_d4",
        statement: "v = 1_even − 1_odd: (D + 7)v = 8v and (D − 1)v = 0",
        ranks: &[4],
    },
    IdentitySpec {
        key: 'i',
        name: "parity_pullback_d4",
        statement: "D(1_p) = 8·1 + 1_p for each parity p",
        ranks: &[4],
    },
    IdentitySpec {
        key: 'j',
        name: "delta0_product_d4",
        statement: "(D₀ + 2)(D₀ − 2)(E + σ) = 4·D₁",
        ranks: &[4],
    },
    IdentitySpec {
        key: 'k',
        name: "diagonal_annihilation_d3",
        statement: "D = T_even − E + 2σ and (D − E)(E + σ) = T₁",
        ranks: &[3],
    },
];

pub fn identity_spec(name: &str) -> Result<&'static IdentitySpec> {
    IDENTITIES
        .iter()
        .find(|s| s.name == name || (name.len() == 1 && name.starts_with(s.key)))
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub lhs: IntMatrix,
    pub rhs: IntMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub key: char,
    pub name: &'static str,
    pub n: usize,
    pub level: &'static str,
    pub passed: bool,
    /// Scalars solved from the matrices.
    pub scalars: Vec<(String, i64)>,
    /// Values the solved scalars must take.
    pub expected: Vec<(String, i64)>,
    pub witness: Option<Witness>,
}

struct Checker {
    passed: bool,
    scalars: Vec<(String, i64)>,
    expected: Vec<(String, i64)>,
    witness: Option<Witness>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            passed: true,
            scalars: Vec::new(),
            expected: Vec::new(),
            witness: None,
        }
    }

    fn equal(&mut self, lhs: &IntMatrix, rhs: &IntMatrix) {
        if lhs != rhs {
            self.passed = false;
            if self.witness.is_none() {
                self.witness = Some(Witness {
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                });
            }
        }
    }

    /// Solves lhs = k·unit from the first nonzero entry of `unit`, then checks.
    fn solve_multiple(&mut self, name: &str, lhs: &IntMatrix, unit: &IntMatrix) -> i64 {
        let k = lhs.multiple_of(unit).unwrap_or_else(|| {
            let p = (0..unit.rows())
                .flat_map(|i| (0..unit.cols()).map(move |j| (i, j)))
                .find(|&p| !unit[p].is_zero());
            p.map_or_else(BigInt::zero, |p| &lhs[p] / &unit[p])
        });
        let k = i64::try_from(&k).unwrap_or(i64::MAX);
        self.scalars.push((name.to_string(), k));
        self.equal(lhs, &unit.scale_i64(k));
        k
    }

    fn expect(&mut self, name: &str, solved: i64, value: i64) {
        self.expected.push((name.to_string(), value));
        if solved != value {
            self.passed = false;
        }
    }

    fn report(self, spec: &IdentitySpec, n: usize, level: &'static str) -> IdentityReport {
        IdentityReport {
            key: spec.key,
            name: spec.name,
            n,
            level,
            passed: self.passed,
            scalars: self.scalars,
            expected: self.expected,
            witness: self.witness,
        }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn parity_indicator(n: usize, even: bool) -> IntMatrix {
    IntMatrix::from_fn(1, 1 << n, |_, a| {
        i64::from((a.count_ones() % 2 == 0) == even)
    })
}

/// Checks an identity exactly on fiber matrices.
pub fn check_identity(name: &str, n: usize) -> Result<IdentityReport> {
    let spec = identity_spec(name)?;
    if !spec.ranks.contains(&n) {
        return Err(Error::Domain(format!(
            "identity {} applies at n ∈ {:?}, not n = {n}",
            spec.name, spec.ranks
        )));
    }
    let mut c = Checker::new();
    let fam = make_s_family(n);
    let d = make_d(n);
    let e = FiberMatrix::identity(n, OrbitKind::Spinor);
    let sigma = make_sigma(n);
    let d_minus = d.minus(&e)?;
    let e_plus_sigma = e.plus(&sigma)?;
    let t1 = &fam.t1.entries;
    match spec.key {
        'a' => {
            let ts_s = fam.s.then(&fam.t.transpose())?;
            let ts_t = fam.t.then(&fam.s.transpose())?;
            c.solve_multiple("a", &ts_s.entries, t1);
            c.equal(&ts_t.entries, &ts_s.entries);
            let s_tt = fam.t.transpose().then(&fam.s)?;
            let t_ts = fam.s.transpose().then(&fam.t)?;
            c.solve_multiple("b", &s_tt.entries, &fam.t2.entries);
            c.equal(&t_ts.entries, &s_tt.entries);
        }
        'b' => {
            let lhs = fam.s0.then(&fam.s0.transpose())?;
            let rest = lhs.minus(&e)?.plus(&d)?;
            let k = c.solve_multiple("n-1", &rest.entries, t1);
            c.expect("n-1", k, n as i64 - 1);
        }
        'c' => {
            let lhs = fam.s0.transpose().then(&fam.s0)?;
            let ev = FiberMatrix::identity(n, OrbitKind::Vector);
            let e_minus_i = ev.minus(&make_iota(n))?;
            // Entry (x₁, x₁) is α + β; entry (x₁, x₋₁) is β − α.
            let diag = i64::try_from(&lhs.entries[(0, 0)]).unwrap_or(0);
            let anti = i64::try_from(&lhs.entries[(0, 1)]).unwrap_or(0);
            let (alpha, beta) = ((diag - anti) / 2, (diag + anti) / 2);
            c.scalars.push(("alpha".into(), alpha));
            c.scalars.push(("beta".into(), beta));
            let rhs = &e_minus_i.entries.scale_i64(alpha) + &fam.t2.entries.scale_i64(beta);
            c.equal(&lhs.entries, &rhs);
            let p = 1i64 << (n - 2);
            c.expect("alpha", alpha, p);
            c.expect("beta", beta, p);
        }
        'd' => {
            c.equal(&sigma.then(&d)?.entries, &d.then(&sigma)?.entries);
        }
        'e' => {
            let lhs = e_plus_sigma.then(&d_minus)?;
            let k = c.solve_multiple("n-2", &lhs.entries, t1);
            c.expect("n-2", k, n as i64 - 2);
        }
        'f' => {
            let q = 1i64 << (n - 1);
            let lhs = d.shifted(q - 1)?.then(&d_minus)?;
            let m = c.solve_multiple("m", &lhs.entries, t1);
            // Row sums: (deg D − 1)(deg D + q − 1) = m·2ⁿ.
            let deg = i64::try_from(&d.degree().expect("regular")).unwrap_or(0);
            c.expect("m", m, ((deg - 1) * (deg + q - 1)) >> n);
        }
        'g' => {
            let par = make_projection(n, OrbitKind::Spinor, OrbitKind::Parity)?;
            let lhs = d_minus.then(&par)?;
            let j = IntMatrix::filled(1 << n, 2, 1);
            let m = c.solve_multiple("M", &lhs.entries, &j);
            let expected: i64 = (0..=n)
                .filter(|k| k % 2 == 0)
                .map(|k| binomial(n, k) * (k as i64 - 1))
                .sum();
            c.expect("M", m, expected);
            let odd: i64 = (0..=n)
                .filter(|k| k % 2 == 1)
                .map(|k| binomial(n, k) * (k as i64 - 1))
                .sum();
            c.expect("M_odd", m, odd);
        }
        'h' => {
            let v = &parity_indicator(n, true) - &parity_indicator(n, false);
            let q = 1i64 << (n - 1);
            let dv = &v * &d.entries;
            c.equal(&(&dv + &v.scale_i64(q - 1)), &v.scale_i64(q));
            c.equal(&(&dv - &v), &IntMatrix::zeros(1, 1 << n));
        }
        'i' => {
            let ones = IntMatrix::filled(1, 1 << n, 1);
            for even in [true, false] {
                let v = parity_indicator(n, even);
                let lhs = &v * &d.entries;
                let rest = &lhs - &v;
                let k = c.solve_multiple(if even { "even" } else { "odd" }, &rest, &ones);
                c.expect(if even { "even" } else { "odd" }, k, 8);
            }
        }
        'j' => {
            let d0 = make_di(n, 0)?;
            let d1 = make_di(n, 1)?;
            let lhs = e_plus_sigma.then(&d0.shifted(-2)?)?.then(&d0.shifted(2)?)?;
            let k = c.solve_multiple("4", &lhs.entries, &d1.entries);
            c.expect("4", k, 4);
        }
        'k' => {
            let same_parity =
                FiberMatrix::from_fn(n, OrbitKind::Spinor, OrbitKind::Spinor, |a, b| {
                    i64::from(
                        spinor(a)
                            .symmetric_difference(&spinor(b))
                            .len()
                            .is_multiple_of(2),
                    )
                });
            let rhs = same_parity.minus(&e)?.plus(&sigma.scaled(2))?;
            c.equal(&d.entries, &rhs.entries);
            let lhs = e_plus_sigma.then(&d_minus)?;
            let k = c.solve_multiple("1", &lhs.entries, t1);
            c.expect("1", k, 1);
        }
        _ => unreachable!(),
    }
    Ok(c.report(spec, n, "fiber"))
}

/// Checks every applicable identity at every listed rank.
pub fn check_all_identities() -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for spec in &IDENTITIES {
        for &n in spec.ranks {
            out.push(check_identity(spec.name, n)?);
        }
    }
    Ok(out)
}

/// Homology of the spinor and vector covers of a datum over P¹.
pub struct HomologyPair {
    pub x: HomologyModel,
    pub c: HomologyModel,
}

impl HomologyPair {
    pub fn build(datum: &MonodromyDatum) -> Result<Self> {
        Ok(HomologyPair {
            x: HomologyModel::build_disjoint(&induce(datum, OrbitKind::Spinor)?)?,
            c: HomologyModel::build_disjoint(&induce(datum, OrbitKind::Vector)?)?,
        })
    }

    pub fn on_x(&self, m: &FiberMatrix) -> Result<IntMatrix> {
        induced_map(&self.x, &self.x, m)
    }
}

/// Checks the homology shadow of an identity on the covers of `datum`.
///
/// Over P¹ the trace correspondences T, T₁, T₂ induce zero, so each
/// identity becomes a relation among δ = D_*, σ_*, s₀ = (S₀)_* and ι_*.
pub fn check_identity_homology(name: &str, datum: &MonodromyDatum) -> Result<IdentityReport> {
    let spec = identity_spec(name)?;
    let n = datum.n;
    if !spec.ranks.contains(&n) {
        return Err(Error::Domain(format!(
            "identity {} applies at n ∈ {:?}, not n = {n}",
            spec.name, spec.ranks
        )));
    }
    let gens = &datum.gens;
    let pair = HomologyPair::build(datum)?;
    let mut c = Checker::new();
    let fam = make_s_family(n);
    let d = make_d(n);
    d.check_equivariant(gens)?;
    let delta = pair.on_x(&d)?;
    let sigma = pair.on_x(&make_sigma(n))?;
    let rx = pair.x.rank();
    let ex = IntMatrix::identity(rx);
    let zero_x = IntMatrix::zeros(rx, rx);
    match spec.key {
        'a' => {
            let s = induced_map(&pair.x, &pair.c, &fam.s)?;
            let t = induced_map(&pair.x, &pair.c, &fam.t)?;
            let tt = induced_map(&pair.c, &pair.x, &fam.t.transpose())?;
            c.equal(&t, &IntMatrix::zeros(t.rows(), t.cols()));
            c.equal(&(&tt * &s), &zero_x);
        }
        'b' => {
            let s0 = induced_map(&pair.x, &pair.c, &fam.s0)?;
            let s0t = induced_map(&pair.c, &pair.x, &fam.s0.transpose())?;
            c.equal(&(&s0t * &s0), &(&ex - &delta));
        }
        'c' => {
            let s0 = induced_map(&pair.x, &pair.c, &fam.s0)?;
            let s0t = induced_map(&pair.c, &pair.x, &fam.s0.transpose())?;
            let iota = induced_map(&pair.c, &pair.c, &make_iota(n))?;
            let ec = IntMatrix::identity(pair.c.rank());
            c.equal(&(&s0 * &s0t), &(&ec - &iota).scale_i64(1 << (n - 2)));
        }
        'd' => c.equal(&(&sigma * &delta), &(&delta * &sigma)),
        'e' | 'k' => c.equal(&(&(&delta - &ex) * &(&ex + &sigma)), &zero_x),
        'f' => {
            let q = 1i64 << (n - 1);
            let lhs = &(&delta - &ex) * &(&delta + &ex.scale_i64(q - 1));
            c.equal(&lhs, &zero_x);
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "identity {} is checked at fiber level only",
                spec.name
            )))
        }
    }
    Ok(c.report(spec, n, "homology"))
}

/// Every catalog matrix at rank n, for equivariance checks.
pub fn catalog_matrices(n: usize) -> Vec<(&'static str, FiberMatrix)> {
    let fam = make_s_family(n);
    let mut out = vec![
        ("D", make_d(n)),
        ("sigma", make_sigma(n)),
        ("iota", make_iota(n)),
        ("S", fam.s),
        ("S0", fam.s0),
        ("S1", fam.s1),
        ("T", fam.t),
        ("T1", fam.t1),
        ("T2", fam.t2),
    ];
    for i in 0..n {
        out.push(("D_i", make_di(n, i).expect("i < n")));
    }
    out
}

/// Whether a matrix commutes with all of W(B_n).
pub fn is_w_equivariant(m: &FiberMatrix) -> bool {
    b_generators(m.n).iter().all(|w| m.is_equivariant(w))
}

/// Spinor label action, exposed for diagnostics.
pub fn spinor_image(w: &SignedPerm, a: Subset) -> Result<Subset> {
    match act(w, &OrbitLabel::Spinor(a))? {
        OrbitLabel::Spinor(b) => Ok(b),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::random_simple;
    use proptest::prelude::*;

    #[test]
    fn d_examples() {
        let d2 = make_d(2);
        assert_eq!(d2.entries, make_sigma(2).entries);
        assert_eq!(make_d(3).degree(), Some(5.into()));
        assert_eq!(make_d(4).degree(), Some(17.into()));
        for n in 2..=6 {
            assert_eq!(
                make_d(n).degree(),
                Some(BigInt::from((1i64 << (n - 1)) * (n as i64 - 2) + 1))
            );
        }
    }

    #[test]
    fn di_decomposition() {
        for n in 2..=5 {
            let mut sum = FiberMatrix::identity(n, OrbitKind::Spinor).scaled(0);
            for i in 0..n {
                sum = sum.plus(&make_di(n, i).unwrap().scaled(i as i64)).unwrap();
            }
            assert_eq!(sum, make_d(n));
        }
        assert_eq!(make_di(4, 3).unwrap(), make_sigma(4));
        let d0 = make_di(4, 0).unwrap();
        assert_eq!(d0.degree(), Some(4.into()));
    }

    #[test]
    fn s_family_examples() {
        let fam = make_s_family(2);
        // Row of A = ∅: f₋₁ + f₋₂ (vector order 1, −1, 2, −2).
        assert_eq!(
            fam.s0.entries.row(0),
            &[0.into(), 1.into(), 0.into(), 1.into()]
        );
        assert_eq!(fam.t.degree(), Some(4.into()));
        assert_eq!(fam.s, fam.s0.scaled(2).plus(&fam.t.scaled(2)).unwrap());
        assert_eq!(fam.s1.entries, &fam.t.entries - &fam.s0.entries);
    }

    #[test]
    fn catalog_matrices_are_equivariant() {
        for n in 2..=5 {
            for (name, m) in catalog_matrices(n) {
                assert!(is_w_equivariant(&m), "{name} at n = {n}");
            }
        }
    }

    #[test]
    fn orbit_gram_examples() {
        for n in 2..=5 {
            let g = orbit_gram(n, Weight::OmegaN, -2).unwrap();
            assert_eq!(g.q, 1 << (n - 1));
            let d_minus_e = make_d(n)
                .minus(&FiberMatrix::identity(n, OrbitKind::Spinor))
                .unwrap();
            assert_eq!(g.gram, d_minus_e.entries);
            let g1 = orbit_gram(n, Weight::Omega1, -2).unwrap();
            assert_eq!(g1.q, 4);
            let e = IntMatrix::identity(2 * n);
            let i = make_iota(n).entries;
            let expected = &(&i - &e).scale_i64(2) + &IntMatrix::filled(2 * n, 2 * n, 1);
            assert_eq!(g1.gram, expected);
        }
        assert!(orbit_gram(3, Weight::OmegaN, 1).is_err());
    }

    /// Oracle for the quadratic relation: the Gram matrix G = D − E of the
    /// extended orbit satisfies G(G + qE) = mT₁ with m from row sums.
    #[test]
    fn quadratic_relation_from_gram() {
        for n in 2..=5 {
            let g = orbit_gram(n, Weight::OmegaN, -2).unwrap();
            let q = g.q;
            let d = g.gram.rows();
            let prod = &g.gram * &(&g.gram + &IntMatrix::identity(d).scale_i64(q));
            assert!(prod.constant_value().is_some());
        }
    }

    #[test]
    fn full_catalog_passes() {
        for r in check_all_identities().unwrap() {
            assert!(r.passed, "{} n = {}: {:?}", r.name, r.n, r.scalars);
        }
    }

    #[test]
    fn solved_scalars() {
        let r = check_identity("s0_transpose_s0", 3).unwrap();
        assert_eq!(r.scalars, vec![("n-1".to_string(), 2)]);
        let r = check_identity("quadratic_relation", 2).unwrap();
        assert_eq!(r.scalars, vec![("m".to_string(), 0)]);
        let r = check_identity("c", 4).unwrap();
        assert_eq!(r.scalars[0].1, 4);
        assert!(check_identity("nope", 3).is_err());
        assert!(check_identity("delta0_product_d4", 3).is_err());
    }

    #[test]
    fn wrong_identity_fails_with_witness() {
        let mut c = Checker::new();
        c.equal(&IntMatrix::identity(2), &IntMatrix::zeros(2, 2));
        let r = c.report(&IDENTITIES[0], 2, "fiber");
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }

    #[test]
    fn homology_level_identities() {
        for (n, ds, dl) in [(2, 4, 4), (3, 4, 6)] {
            let d = random_simple(n, ds, dl, 2).unwrap();
            for name in ["a", "b", "c", "d", "e", "f"] {
                let r = check_identity_homology(name, &d).unwrap();
                assert!(r.passed, "{name} at n = {n}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(6))]
        #[test]
        fn functoriality_and_adjointness(seed in any::<u64>()) {
            let d = random_simple(2, 4, 4, seed).unwrap();
            let pair = HomologyPair::build(&d).unwrap();
            let fam = make_s_family(2);
            let dm = make_d(2);
            // induced(A·B) = induced(B)·induced(A)
            let a = fam.s0.clone();
            let b = fam.s0.transpose();
            let ab = a.then(&b).unwrap();
            let lhs = pair.on_x(&ab).unwrap();
            let ia = induced_map(&pair.x, &pair.c, &a).unwrap();
            let ib = induced_map(&pair.c, &pair.x, &b).unwrap();
            prop_assert_eq!(lhs, &ib * &ia);
            // Adjointness: S_indᵀ G_dst = G_src induced(Sᵀ).
            let s = induced_map(&pair.x, &pair.c, &fam.s0).unwrap();
            let st = induced_map(&pair.c, &pair.x, &fam.s0.transpose()).unwrap();
            prop_assert_eq!(&s.transpose() * &pair.c.gram, &pair.x.gram * &st);
            let delta = pair.on_x(&dm).unwrap();
            prop_assert_eq!(&delta.transpose() * &pair.x.gram, &pair.x.gram * &delta);
            // ι is an involution on H₁(C).
            let iota = induced_map(&pair.c, &pair.c, &make_iota(2)).unwrap();
            prop_assert!((&iota * &iota).is_identity());
        }
    }
}
