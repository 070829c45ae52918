//! Signed-permutation model of the Weyl groups W(B_n) ⊃ W(D_n), their
//! permutation actions on weight orbits, and subgroup classification.
//!
//! An element of W(B_n) is a bijection of {±1, …, ±n} commuting with
//! negation. Only the images of 1..n are stored; the image of −j is −w(j).
//! Composition follows function notation: `(a * b)(x) = a(b(x))`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank supported by the signed-permutation types.
pub const MAX_RANK: usize = 8;
/// Largest rank for which subgroups are enumerated element by element.
pub const MAX_ENUMERATION_RANK: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", try_from = "Vec<i64>")]
pub struct SignedPerm {
    n: u8,
    images: [i8; MAX_RANK],
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&n), "rank {n} out of range");
        let mut images = [0i8; MAX_RANK];
        for (j, slot) in images.iter_mut().enumerate().take(n) {
            *slot = (j + 1) as i8;
        }
        SignedPerm { n: n as u8, images }
    }

    /// The central element −id.
    pub fn minus_identity(n: usize) -> Self {
        let mut w = Self::identity(n);
        for slot in w.images.iter_mut().take(n) {
            *slot = -*slot;
        }
        w
    }

    /// Builds an element from the images of 1..n.
    pub fn from_images(images: &[i64]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::UnsupportedRank {
                rank: n,
                limit: MAX_RANK,
            });
        }
        let mut seen = [false; MAX_RANK];
        let mut out = [0i8; MAX_RANK];
        for (j, &x) in images.iter().enumerate() {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n {
                return Err(Error::Domain(format!(
                    "image {x} of {} is outside ±1..±{n}",
                    j + 1
                )));
            }
            if seen[a - 1] {
                return Err(Error::Domain(format!(
                    "images {images:?} do not define a bijection of ±1..±{n}"
                )));
            }
            seen[a - 1] = true;
            out[j] = x as i8;
        }
        Ok(SignedPerm {
            n: n as u8,
            images: out,
        })
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    /// Image of a signed index in ±1..±n.
    pub fn apply(&self, x: i64) -> i64 {
        let a = x.unsigned_abs() as usize;
        debug_assert!(a >= 1 && a <= self.rank());
        let y = self.images[a - 1] as i64;
        if x > 0 {
            y
        } else {
            -y
        }
    }

    /// Images of 1..n.
    pub fn images(&self) -> Vec<i64> {
        self.images[..self.rank()]
            .iter()
            .map(|&x| x as i64)
            .collect()
    }

    pub fn inverse(&self) -> Self {
        let mut out = [0i8; MAX_RANK];
        for j in 0..self.rank() {
            let y = self.images[j];
            let a = y.unsigned_abs() as usize;
            out[a - 1] = if y > 0 {
                (j + 1) as i8
            } else {
                -((j + 1) as i8)
            };
        }
        SignedPerm {
            n: self.n,
            images: out,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// Number of j in 1..n with w(j) negative.
    pub fn sign_changes(&self) -> usize {
        self.images[..self.rank()]
            .iter()
            .filter(|&&x| x < 0)
            .count()
    }

    /// Whether the element lies in W(D_n) (an even number of sign changes).
    pub fn in_d(&self) -> bool {
        self.sign_changes().is_multiple_of(2)
    }

    /// Commutator `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &SignedPerm, b: &SignedPerm) -> SignedPerm {
        *a * *b * a.inverse() * b.inverse()
    }

    fn check_rank(&self, other: &SignedPerm) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &SignedPerm) -> Result<SignedPerm> {
        self.check_rank(other)?;
        Ok(*self * *other)
    }

    /// If this element is a reflection, the (positive-normalized) root it reflects in.
    pub fn as_reflection(&self) -> Option<Root> {
        let moved: Vec<usize> = (1..=self.rank())
            .filter(|&j| self.apply(j as i64) != j as i64)
            .collect();
        match moved.as_slice() {
            [j] if self.apply(*j as i64) == -(*j as i64) => Some(Root::Short(*j as i64)),
            [j, k] => {
                let (j, k) = (*j as i64, *k as i64);
                let wj = self.apply(j);
                // s_{ε_a+ε_b} maps a ↦ −b, b ↦ −a.
                if wj.abs() != k || self.apply(k) != wj.signum() * j {
                    return None;
                }
                Some(Root::Long(j, -wj))
            }
            _ => None,
        }
    }

    /// The orbit of the signed index set under `⟨self⟩` as cycles on ±1..±n.
    pub fn cycle_type_on_signed(&self) -> Vec<usize> {
        let n = self.rank() as i64;
        let mut seen = HashSet::new();
        let mut lengths = Vec::new();
        for start in (1..=n).flat_map(|j| [j, -j]) {
            if seen.contains(&start) {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while seen.insert(x) {
                len += 1;
                x = self.apply(x);
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

impl Mul for SignedPerm {
    type Output = SignedPerm;
    fn mul(self, rhs: SignedPerm) -> SignedPerm {
        assert_eq!(self.n, rhs.n, "rank mismatch in composition");
        let mut out = [0i8; MAX_RANK];
        for (j, slot) in out.iter_mut().enumerate().take(self.rank()) {
            *slot = self.apply(rhs.images[j] as i64) as i8;
        }
        SignedPerm {
            n: self.n,
            images: out,
        }
    }
}

impl From<SignedPerm> for Vec<i64> {
    fn from(w: SignedPerm) -> Vec<i64> {
        w.images()
    }
}

impl TryFrom<Vec<i64>> for SignedPerm {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        SignedPerm::from_images(&v)
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A root of B_n written with signed indices, `ε_{−j} = −ε_j`.
///
/// `Short(a)` is ε_a; `Long(a, b)` is ε_a + ε_b with |a| ≠ |b|.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Root {
    Short(i64),
    Long(i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Short,
    Long,
}

impl Root {
    /// ε_j − ε_k
    pub fn difference(j: usize, k: usize) -> Root {
        Root::Long(j as i64, -(k as i64))
    }

    /// ε_j + ε_k
    pub fn sum(j: usize, k: usize) -> Root {
        Root::Long(j as i64, k as i64)
    }

    pub fn short(j: usize) -> Root {
        Root::Short(j as i64)
    }

    pub fn kind(&self) -> RootKind {
        match self {
            Root::Short(_) => RootKind::Short,
            Root::Long(..) => RootKind::Long,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let ok = |a: i64| a != 0 && a.unsigned_abs() as usize <= n;
        let valid = match *self {
            Root::Short(a) => ok(a),
            Root::Long(a, b) => ok(a) && ok(b) && a.abs() != b.abs(),
        };
        if valid {
            Ok(())
        } else {
            Err(Error::Domain(format!("{self:?} is not a root of B_{n}")))
        }
    }

    /// All positive roots of B_n: ε_j, ε_j − ε_k, ε_j + ε_k (j < k).
    pub fn positive_roots(n: usize) -> Vec<Root> {
        let mut roots: Vec<Root> = (1..=n).map(Root::short).collect();
        for j in 1..=n {
            for k in j + 1..=n {
                roots.push(Root::difference(j, k));
                roots.push(Root::sum(j, k));
            }
        }
        roots
    }
}

/// The reflection s_α acting on ±1..±n.
pub fn reflection(root: Root, n: usize) -> Result<SignedPerm> {
    if n == 0 || n > MAX_RANK {
        return Err(Error::UnsupportedRank {
            rank: n,
            limit: MAX_RANK,
        });
    }
    root.validate(n)?;
    let mut images: Vec<i64> = (1..=n as i64).collect();
    let mut set = |x: i64, y: i64| {
        // record w(x) = y, with x possibly negative
        if x > 0 {
            images[(x - 1) as usize] = y;
        } else {
            images[(-x - 1) as usize] = -y;
        }
    };
    match root {
        Root::Short(a) => set(a, -a),
        Root::Long(a, b) => {
            set(a, -b);
            set(b, -a);
        }
    }
    SignedPerm::from_images(&images)
}

/// Standard generators of W(B_n): s_{ε_j − ε_{j+1}} and s_{ε_n}.
pub fn b_generators(n: usize) -> Vec<SignedPerm> {
    let mut gens: Vec<SignedPerm> = (1..n)
        .map(|j| reflection(Root::difference(j, j + 1), n).expect("valid root"))
        .collect();
    gens.push(reflection(Root::short(n), n).expect("valid root"));
    gens
}

/// A subset of {1, …, n}, stored as a bitmask (bit j−1 ⇔ j ∈ A).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Subset(pub u16);

impl Subset {
    pub fn empty() -> Self {
        Subset(0)
    }

    pub fn from_elements(elems: &[usize]) -> Self {
        Subset(elems.iter().fold(0u16, |m, &j| m | (1 << (j - 1))))
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0 & (1 << (j - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        (1..=16).filter(|&j| self.contains(j)).collect()
    }

    pub fn complement(&self, n: usize) -> Subset {
        Subset(!self.0 & ((1u16 << n) - 1))
    }

    pub fn symmetric_difference(&self, other: &Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn max_element(&self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    pub fn parity(&self) -> Parity {
        if self.len().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Vec<usize> {
        s.elements()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        if v.iter().any(|&j| j == 0 || j > MAX_RANK) {
            return Err(Error::Domain(format!("subset {v:?} out of range")));
        }
        Ok(Subset::from_elements(&v))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, j) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Which W(B_n)-set a cover is induced from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    /// W ε_1 = {±ε_j}, size 2n (the curve C).
    Vector,
    /// W ω_n = {λ_A}, size 2ⁿ (the curve X).
    Spinor,
    /// {±ε_j}/±, size n (the curve C′).
    PairClass,
    /// Even/odd spinor subsets, size 2 (the curve Ỹ).
    Parity,
    /// Spinor weights modulo complementation, size 2ⁿ⁻¹ (the curve X′).
    SpinorClass,
}

impl OrbitKind {
    pub const ALL: [OrbitKind; 5] = [
        OrbitKind::Vector,
        OrbitKind::Spinor,
        OrbitKind::PairClass,
        OrbitKind::Parity,
        OrbitKind::SpinorClass,
    ];

    pub fn size(&self, n: usize) -> usize {
        match self {
            OrbitKind::Vector => 2 * n,
            OrbitKind::Spinor => 1 << n,
            OrbitKind::PairClass => n,
            OrbitKind::Parity => 2,
            OrbitKind::SpinorClass => 1 << (n - 1),
        }
    }

    /// Labels in canonical order: Vector 1, −1, 2, −2, …; Spinor subsets in
    /// binary order; PairClass 1..n; Parity even, odd; SpinorClass the
    /// representatives not containing 1, in binary order.
    pub fn labels(&self, n: usize) -> Vec<OrbitLabel> {
        match self {
            OrbitKind::Vector => (1..=n as i64)
                .flat_map(|j| [OrbitLabel::Vector(j), OrbitLabel::Vector(-j)])
                .collect(),
            OrbitKind::Spinor => (0..1u16 << n)
                .map(|m| OrbitLabel::Spinor(Subset(m)))
                .collect(),
            OrbitKind::PairClass => (1..=n).map(OrbitLabel::PairClass).collect(),
            OrbitKind::Parity => vec![
                OrbitLabel::Parity(Parity::Even),
                OrbitLabel::Parity(Parity::Odd),
            ],
            OrbitKind::SpinorClass => (0..1u16 << n)
                .filter(|m| m & 1 == 0)
                .map(|m| OrbitLabel::SpinorClass(Subset(m)))
                .collect(),
        }
    }

    /// Position of a label in the canonical order.
    pub fn index_of(&self, label: &OrbitLabel, n: usize) -> Option<usize> {
        match (self, label) {
            (OrbitKind::Vector, OrbitLabel::Vector(j)) => {
                let a = j.unsigned_abs() as usize;
                (a >= 1 && a <= n).then(|| 2 * (a - 1) + usize::from(*j < 0))
            }
            (OrbitKind::Spinor, OrbitLabel::Spinor(s)) => {
                (s.max_element() <= n).then_some(s.0 as usize)
            }
            (OrbitKind::PairClass, OrbitLabel::PairClass(j)) => (*j >= 1 && *j <= n).then(|| j - 1),
            (OrbitKind::Parity, OrbitLabel::Parity(p)) => Some(match p {
                Parity::Even => 0,
                Parity::Odd => 1,
            }),
            (OrbitKind::SpinorClass, OrbitLabel::SpinorClass(s)) => {
                (s.max_element() <= n && !s.contains(1)).then_some((s.0 >> 1) as usize)
            }
            _ => None,
        }
    }

    /// The permutation of canonical label positions induced by `w`.
    pub fn permutation(&self, w: &SignedPerm) -> Vec<usize> {
        let n = w.rank();
        self.labels(n)
            .iter()
            .map(|l| {
                let image = act(w, l).expect("canonical labels match rank");
                self.index_of(&image, n).expect("image is canonical")
            })
            .collect()
    }
}

/// A point of one of the W(B_n)-sets the covers are built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitLabel {
    Vector(i64),
    Spinor(Subset),
    PairClass(usize),
    Parity(Parity),
    /// Stored by the representative of {A, Ā} that does not contain 1.
    SpinorClass(Subset),
}

impl OrbitLabel {
    pub fn kind(&self) -> OrbitKind {
        match self {
            OrbitLabel::Vector(_) => OrbitKind::Vector,
            OrbitLabel::Spinor(_) => OrbitKind::Spinor,
            OrbitLabel::PairClass(_) => OrbitKind::PairClass,
            OrbitLabel::Parity(_) => OrbitKind::Parity,
            OrbitLabel::SpinorClass(_) => OrbitKind::SpinorClass,
        }
    }

    /// Canonical spinor-class label of {A, Ā}.
    pub fn spinor_class(a: Subset, n: usize) -> OrbitLabel {
        if a.contains(1) {
            OrbitLabel::SpinorClass(a.complement(n))
        } else {
            OrbitLabel::SpinorClass(a)
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Vector(j) => write!(f, "x{j}"),
            OrbitLabel::Spinor(s) => write!(f, "x{s:?}"),
            OrbitLabel::PairClass(j) => write!(f, "a{j}"),
            OrbitLabel::Parity(p) => write!(f, "{p:?}"),
            OrbitLabel::SpinorClass(s) => write!(f, "[{s:?}]"),
        }
    }
}

fn spinor_image(w: &SignedPerm, a: Subset) -> Subset {
    // λ_A has coefficient −½ on ε_j for j ∈ A and +½ otherwise; ε_j ↦ ε_{w(j)}.
    let mut out = 0u16;
    for j in 1..=w.rank() {
        let coeff_neg = a.contains(j);
        let wj = w.apply(j as i64);
        let neg = coeff_neg != (wj < 0);
        if neg {
            out |= 1 << (wj.unsigned_abs() - 1);
        }
    }
    Subset(out)
}

fn check_label(w: &SignedPerm, x: &OrbitLabel) -> Result<()> {
    let n = w.rank();
    let in_range = match x {
        OrbitLabel::Vector(j) => *j != 0 && j.unsigned_abs() as usize <= n,
        OrbitLabel::Spinor(s) => s.max_element() <= n,
        OrbitLabel::PairClass(j) => *j >= 1 && *j <= n,
        OrbitLabel::Parity(_) => true,
        OrbitLabel::SpinorClass(s) => s.max_element() <= n && !s.contains(1),
    };
    if in_range {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "label {x} does not belong to rank {n}"
        )))
    }
}

/// The action of W(B_n) on orbit labels.
pub fn act(w: &SignedPerm, x: &OrbitLabel) -> Result<OrbitLabel> {
    check_label(w, x)?;
    let n = w.rank();
    Ok(match *x {
        OrbitLabel::Vector(j) => OrbitLabel::Vector(w.apply(j)),
        OrbitLabel::Spinor(a) => OrbitLabel::Spinor(spinor_image(w, a)),
        OrbitLabel::PairClass(j) => {
            OrbitLabel::PairClass(w.apply(j as i64).unsigned_abs() as usize)
        }
        OrbitLabel::Parity(p) => {
            if w.in_d() {
                OrbitLabel::Parity(p)
            } else {
                OrbitLabel::Parity(p.flip())
            }
        }
        OrbitLabel::SpinorClass(a) => OrbitLabel::spinor_class(spinor_image(w, a), n),
    })
}

/// Classification of a subgroup of W(B_n) along the lines of the
/// primitive-image alternatives: the whole group, W(D_n), a conjugate of
/// N(G₁) = G₁ ∪ G₁σ, a conjugate of G₁ ≅ S_n, or something else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupClass {
    FullB,
    FullD,
    NormalizerG1,
    G1Conjugate,
    Other,
    Intransitive,
}

/// All elements of the subgroup generated by `gens`.
pub fn closure(n: usize, gens: &[SignedPerm]) -> Result<HashSet<SignedPerm>> {
    for g in gens {
        if g.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: g.rank(),
            });
        }
    }
    let id = SignedPerm::identity(n);
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = *g * x;
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Orbits of the group on the signed indices ±1..±n.
pub fn signed_orbits(n: usize, gens: &[SignedPerm]) -> Vec<BTreeSet<i64>> {
    let mut seen = HashSet::new();
    let mut orbits = Vec::new();
    for start in (1..=n as i64).flat_map(|j| [j, -j]) {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = BTreeSet::from([start]);
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.apply(x);
                if seen.insert(y) {
                    orbit.insert(y);
                    stack.push(y);
                }
            }
        }
        orbits.push(orbit);
    }
    orbits
}

/// Sign vectors ε up to overall sign, as the sets Σ_ε = {ε_1·1, …, ε_n·n}.
fn half_sign_sets(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..1u32 << (n - 1)).map(move |mask| {
        (1..=n as i64)
            .map(|j| {
                // j = 1 always positive: Σ and −Σ give the same conjugate.
                if j > 1 && mask & (1 << (j - 2)) != 0 {
                    -j
                } else {
                    j
                }
            })
            .collect()
    })
}

/// Whether every element maps Σ onto Σ, or (if `allow_swap`) onto −Σ.
fn stabilizes(elements: &HashSet<SignedPerm>, sigma: &[i64], allow_swap: bool) -> bool {
    let set: HashSet<i64> = sigma.iter().copied().collect();
    elements.iter().all(|w| {
        let image: HashSet<i64> = sigma.iter().map(|&x| w.apply(x)).collect();
        image == set || (allow_swap && image.iter().all(|x| set.contains(&-x)))
    })
}

pub fn classify_subgroup(gens: &[SignedPerm]) -> Result<GroupClass> {
    let n = gens
        .first()
        .map(|g| g.rank())
        .ok_or_else(|| Error::Domain("empty generator list".into()))?;
    if n > MAX_ENUMERATION_RANK {
        return Err(Error::UnsupportedRank {
            rank: n,
            limit: MAX_ENUMERATION_RANK,
        });
    }
    let elements = closure(n, gens)?;
    let order = elements.len();
    let b_order = (1usize << n) * factorial(n);
    if order == b_order {
        return Ok(GroupClass::FullB);
    }
    if order * 2 == b_order && elements.iter().all(SignedPerm::in_d) {
        return Ok(GroupClass::FullD);
    }
    let transitive = signed_orbits(n, gens).len() == 1;
    if transitive
        && order == 2 * factorial(n)
        && half_sign_sets(n).any(|s| stabilizes(&elements, &s, true))
    {
        return Ok(GroupClass::NormalizerG1);
    }
    if order == factorial(n) && half_sign_sets(n).any(|s| stabilizes(&elements, &s, false)) {
        return Ok(GroupClass::G1Conjugate);
    }
    Ok(if transitive {
        GroupClass::Other
    } else {
        GroupClass::Intransitive
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(v: &[i64]) -> SignedPerm {
        SignedPerm::from_images(v).unwrap()
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(reflection(Root::short(1), 2).unwrap(), sp(&[-1, 2]));
        assert_eq!(reflection(Root::difference(1, 2), 2).unwrap(), sp(&[2, 1]));
        assert_eq!(reflection(Root::sum(1, 2), 3).unwrap(), sp(&[-2, -1, 3]));
    }

    #[test]
    fn reflection_rejects_bad_roots() {
        assert!(reflection(Root::Short(3), 2).is_err());
        assert!(reflection(Root::Long(1, -1), 2).is_err());
        assert!(reflection(Root::Short(0), 2).is_err());
    }

    #[test]
    fn reflections_are_involutions_and_recognized() {
        for n in 1..=5 {
            for root in Root::positive_roots(n) {
                let s = reflection(root, n).unwrap();
                assert!((s * s).is_identity());
                let r = s.as_reflection().expect("recognized");
                assert_eq!(reflection(r, n).unwrap(), s);
                assert_eq!(r.kind(), root.kind());
            }
        }
        assert_eq!(SignedPerm::minus_identity(3).as_reflection(), None);
        assert_eq!(sp(&[2, 3, 1]).as_reflection(), None);
    }

    #[test]
    fn from_images_validates() {
        assert!(SignedPerm::from_images(&[1, -1]).is_err());
        assert!(SignedPerm::from_images(&[3, 1]).is_err());
        assert!(SignedPerm::from_images(&[]).is_err());
    }

    #[test]
    fn spinor_action_examples() {
        let s1 = reflection(Root::short(1), 3).unwrap();
        let s12 = reflection(Root::difference(1, 2), 3).unwrap();
        assert_eq!(
            act(&s1, &OrbitLabel::Spinor(Subset::empty())).unwrap(),
            OrbitLabel::Spinor(Subset::from_elements(&[1]))
        );
        assert_eq!(
            act(&s12, &OrbitLabel::Spinor(Subset::from_elements(&[1]))).unwrap(),
            OrbitLabel::Spinor(Subset::from_elements(&[2]))
        );
        assert_eq!(
            act(&s1, &OrbitLabel::Parity(Parity::Even)).unwrap(),
            OrbitLabel::Parity(Parity::Odd)
        );
    }

    #[test]
    fn act_rejects_foreign_labels() {
        let w = SignedPerm::identity(2);
        assert!(act(&w, &OrbitLabel::Vector(3)).is_err());
        assert!(act(&w, &OrbitLabel::Spinor(Subset::from_elements(&[3]))).is_err());
    }

    #[test]
    fn canonical_labels_roundtrip() {
        for n in 1..=5 {
            for kind in OrbitKind::ALL {
                let labels = kind.labels(n);
                assert_eq!(labels.len(), kind.size(n));
                for (i, l) in labels.iter().enumerate() {
                    assert_eq!(kind.index_of(l, n), Some(i));
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let n = 3;
        let mut all = b_generators(n);
        all.extend(
            Root::positive_roots(n)
                .into_iter()
                .map(|r| reflection(r, n).unwrap()),
        );
        assert_eq!(classify_subgroup(&all).unwrap(), GroupClass::FullB);

        let long: Vec<_> = Root::positive_roots(n)
            .into_iter()
            .filter(|r| r.kind() == RootKind::Long)
            .map(|r| reflection(r, n).unwrap())
            .collect();
        assert_eq!(classify_subgroup(&long).unwrap(), GroupClass::FullD);

        let norm = vec![
            reflection(Root::difference(1, 2), n).unwrap(),
            reflection(Root::difference(2, 3), n).unwrap(),
            SignedPerm::minus_identity(n),
        ];
        assert_eq!(classify_subgroup(&norm).unwrap(), GroupClass::NormalizerG1);

        let g1 = &norm[..2];
        assert_eq!(classify_subgroup(g1).unwrap(), GroupClass::G1Conjugate);

        let small = vec![reflection(Root::short(1), n).unwrap()];
        assert_eq!(classify_subgroup(&small).unwrap(), GroupClass::Intransitive);
    }

    #[test]
    fn classification_refuses_large_rank() {
        let g = b_generators(7);
        assert!(matches!(
            classify_subgroup(&g),
            Err(Error::UnsupportedRank { rank: 7, .. })
        ));
    }

    #[test]
    fn group_orders() {
        for n in 1..=5 {
            let elems = closure(n, &b_generators(n)).unwrap();
            assert_eq!(elems.len(), (1 << n) * factorial(n));
        }
    }

    #[test]
    fn serde_text_form() {
        let w = sp(&[-1, 2, 3]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[-1,2,3]");
        let back: SignedPerm = serde_json::from_str("[-1, 2, 3]").unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<SignedPerm>("[1, 1]").is_err());
    }

    fn signed_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
        (
            Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(p, s)| {
                let images: Vec<i64> = p
                    .iter()
                    .zip(&s)
                    .map(|(&x, &neg)| if neg { -x } else { x })
                    .collect();
                SignedPerm::from_images(&images).unwrap()
            })
    }

    fn triple() -> impl Strategy<Value = (usize, SignedPerm, SignedPerm, usize, usize)> {
        (1usize..=6).prop_flat_map(|n| {
            (
                Just(n),
                signed_perm(n),
                signed_perm(n),
                0usize..5,
                0usize..64,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn action_is_a_left_action((n, a, b, k, i) in triple()) {
            let kind = OrbitKind::ALL[k];
            let labels = kind.labels(n);
            let x = labels[i % labels.len()];
            let lhs = act(&(a * b), &x).unwrap();
            let rhs = act(&a, &act(&b, &x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #[test]
        fn spinor_parity_flips_with_sign_changes((n, w, _, _, i) in triple()) {
            let a = Subset((i as u16) & ((1u16 << n) - 1));
            let b = match act(&w, &OrbitLabel::Spinor(a)).unwrap() {
                OrbitLabel::Spinor(b) => b,
                other => panic!("{other:?}"),
            };
            prop_assert_eq!(a.parity() == b.parity(), w.in_d());
        }

        #[test]
        fn conjugation_preserves_cycle_type((_, w, v, _, _) in triple()) {
            let c = v * w * v.inverse();
            let mut x = w.cycle_type_on_signed();
            let mut y = c.cycle_type_on_signed();
            x.sort_unstable();
            y.sort_unstable();
            prop_assert_eq!(x, y);
            prop_assert_eq!(w.in_d(), c.in_d());
        }

        #[test]
        fn conjugation_preserves_class(
            (n, v) in (2usize..=4).prop_flat_map(|n| (Just(n), signed_perm(n))),
            seed in any::<u64>(),
        ) {
            let d = crate::cover::random_simple(n, 2, 2 * n, seed).unwrap();
            let conj: Vec<SignedPerm> = d.gens.iter().map(|g| v * *g * v.inverse()).collect();
            prop_assert_eq!(classify_subgroup(&d.gens).unwrap(), classify_subgroup(&conj).unwrap());
        }
    }
}
