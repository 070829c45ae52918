//! Integer lattice toolkit: Smith normal form with transforms, saturation,
//! kernels, images, intersections, sums, coordinates and polarization types.
//!
//! A sublattice of Zᵐ is represented by an m × r matrix whose columns form
//! a basis. All arithmetic is exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Smith normal form `U · M · V = D` with `U`, `V` unimodular.
///
/// Invariants: `u * u_inv = I`; the first `rank` diagonal entries of `d`
/// are positive and each divides the next; all other entries are zero.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// Nonzero invariant factors d₁ | d₂ | ….
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            self.d.swap_rows(a, b);
            self.u.swap_rows(a, b);
            self.u_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            self.d.swap_cols(a, b);
            self.v.swap_cols(a, b);
        }
    }

    /// row dst += k · row src
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col dst += k · col src
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of a nonzero entry of least absolute value in the block t.., t...
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = self.d[(i, j)].abs();
                if x.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| x < *b) {
                    let done = x.is_one();
                    best = Some(((i, j), x));
                    if done {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = m.shape();
    let mut w = Work {
        d: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.smallest(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.d[(i, t)].is_zero() {
                    continue;
                }
                let q = w.d[(i, t)].div_floor(&w.d[(t, t)]);
                w.add_row(i, t, &-q);
                if !w.d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.d[(t, j)].is_zero() {
                    continue;
                }
                let q = w.d[(t, j)].div_floor(&w.d[(t, t)]);
                w.add_col(j, t, &-q);
                if !w.d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder is smaller than the pivot; move it into place.
                let mut best = (t, t);
                for i in t..rows {
                    let x = w.d[(i, t)].abs();
                    if !x.is_zero() && x < w.d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    let x = w.d[(t, j)].abs();
                    if !x.is_zero() && x < w.d[best].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // Row and column t are clear; enforce divisibility of the block.
            let pivot = w.d[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    Snf {
        u: w.u,
        u_inv: w.u_inv,
        d: w.d,
        v: w.v,
        rank: t,
    }
}

pub fn rank(m: &IntMatrix) -> usize {
    snf(m).rank
}

fn take_columns(m: &IntMatrix, range: std::ops::Range<usize>) -> IntMatrix {
    let cols: Vec<usize> = range.collect();
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.submatrix(&rows, &cols)
}

/// Basis of (span_Q M) ∩ Zᵐ.
pub fn saturate(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    take_columns(&s.u_inv, 0..s.rank)
}

/// Basis of the integer kernel {x : M x = 0}; always saturated.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    take_columns(&s.v, s.rank..m.cols())
}

/// Basis of the lattice spanned by the columns of M.
pub fn image(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let mut out = take_columns(&s.u_inv, 0..s.rank);
    for (j, d) in s.divisors().iter().enumerate() {
        for i in 0..out.rows() {
            out[(i, j)] = &out[(i, j)] * d;
        }
    }
    out
}

/// Basis of the sum of two lattices in the same ambient space.
pub fn sum(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    image(&a.hstack(b))
}

/// Basis of the intersection of two lattices in the same ambient space.
pub fn intersect(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let stacked = a.hstack(&-b);
    let k = kernel(&stacked);
    let rows: Vec<usize> = (0..a.cols()).collect();
    let cols: Vec<usize> = (0..k.cols()).collect();
    let x = k.submatrix(&rows, &cols);
    image(&(a * &x))
}

/// Whether the columns of `sub` lie in the lattice spanned by `basis`.
pub fn contains(basis: &IntMatrix, sub: &IntMatrix) -> bool {
    coordinates(basis, sub).is_ok()
}

/// Whether two bases span the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows() && contains(a, b) && contains(b, a)
}

/// Whether the lattice spanned by `m` is saturated in Zᵐ.
pub fn is_saturated(m: &IntMatrix) -> bool {
    snf(m).divisors().iter().all(|d| d.is_one())
}

/// Solves `basis · X = targets` over Z, column by column.
pub fn coordinates(basis: &IntMatrix, targets: &IntMatrix) -> Result<IntMatrix> {
    if basis.rows() != targets.rows() {
        return Err(Error::Domain(format!(
            "ambient dimensions differ: {} vs {}",
            basis.rows(),
            targets.rows()
        )));
    }
    let s = snf(basis);
    let y = &s.u * targets;
    let divisors = s.divisors();
    let mut z = IntMatrix::zeros(basis.cols(), targets.cols());
    for c in 0..targets.cols() {
        for i in 0..y.rows() {
            let yi = &y[(i, c)];
            if i < s.rank {
                let (q, r) = yi.div_rem(&divisors[i]);
                if !r.is_zero() {
                    return Err(Error::NotInLattice);
                }
                z[(i, c)] = q;
            } else if !yi.is_zero() {
                return Err(Error::NotInLattice);
            }
        }
    }
    // Columns of V past the rank span the kernel; coordinates are unique
    // only when the basis has full column rank.
    Ok(&s.v * &z)
}

/// Divides every entry by `k`, if exact.
pub fn exact_div(m: &IntMatrix, k: &BigInt) -> Option<IntMatrix> {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let (q, r) = m[(i, j)].div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out[(i, j)] = q;
        }
    }
    Some(out)
}

/// Type (d₁, …, d_p) of a nondegenerate alternating form, d₁ | … | d_p.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolType(#[serde(with = "crate::matrix::integers")] pub Vec<BigInt>);

impl PolType {
    pub fn from_i64(v: &[i64]) -> Self {
        PolType(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_principal(&self) -> bool {
        self.0.iter().all(|d| d.is_one())
    }

    /// Whether every entry equals `k`.
    pub fn is_uniform(&self, k: i64) -> bool {
        self.0.iter().all(|d| *d == BigInt::from(k))
    }

    /// (d, multiplicity) pairs in increasing order of d.
    pub fn multiplicities(&self) -> Vec<(BigInt, usize)> {
        let mut out: Vec<(BigInt, usize)> = Vec::new();
        for d in &self.0 {
            match out.last_mut() {
                Some((x, m)) if x == d => *m += 1,
                _ => out.push((d.clone(), 1)),
            }
        }
        out
    }

    /// Type of the dual polarization: e_i = d₁ d_p / d_{p+1−i}.
    pub fn dual(&self) -> PolType {
        let p = self.0.len();
        if p == 0 {
            return PolType(Vec::new());
        }
        let num = &self.0[0] * &self.0[p - 1];
        PolType((0..p).map(|i| &num / &self.0[p - 1 - i]).collect())
    }
}

impl fmt::Display for PolType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for PolType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn dual_type(t: &PolType) -> PolType {
    t.dual()
}

/// Type of the alternating form with Gram matrix `form`.
///
/// Errors with `Degenerate` if the form has a radical, `OddRank` on odd
/// size, and `Internal` if the invariant factors fail to pair up (which
/// cannot happen for an alternating form).
pub fn form_type(form: &IntMatrix) -> Result<PolType> {
    if !form.is_square() {
        return Err(Error::Domain("form is not square".into()));
    }
    if form != &-&form.transpose() {
        return Err(Error::Domain("form is not alternating".into()));
    }
    let s = snf(form);
    if s.rank < form.rows() {
        return Err(Error::Degenerate {
            radical_rank: form.rows() - s.rank,
        });
    }
    if form.rows() % 2 == 1 {
        return Err(Error::OddRank(form.rows()));
    }
    let d = s.divisors();
    let mut out = Vec::with_capacity(d.len() / 2);
    for pair in d.chunks(2) {
        if pair[0] != pair[1] {
            return Err(Error::Internal(format!(
                "invariant factors {d:?} of an alternating form do not pair"
            )));
        }
        out.push(pair[0].clone());
    }
    Ok(PolType(out))
}

/// Type of the restriction of `gram` to the lattice with basis `basis`.
pub fn ptype(basis: &IntMatrix, gram: &IntMatrix) -> Result<PolType> {
    form_type(&restrict_form(basis, gram))
}

/// Bᵀ G B.
pub fn restrict_form(basis: &IntMatrix, gram: &IntMatrix) -> IntMatrix {
    &(&basis.transpose() * gram) * basis
}

/// A sublattice of a lattice carrying an alternating form.
#[derive(Clone, Debug)]
pub struct PolarizedLattice {
    /// Columns are basis vectors in ambient coordinates.
    pub basis: IntMatrix,
    /// Ambient Gram matrix.
    pub gram: IntMatrix,
}

impl PolarizedLattice {
    pub fn new(basis: IntMatrix, gram: IntMatrix) -> Self {
        PolarizedLattice { basis, gram }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn form(&self) -> IntMatrix {
        restrict_form(&self.basis, &self.gram)
    }

    pub fn ptype(&self) -> Result<PolType> {
        form_type(&self.form())
    }
}
