use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::MonodromyDatum;
use crate::error::{Error, Result};
use crate::weyl::{reflection, signed_orbits, Root, RootKind, SignedPerm};

/// Rejections allowed before `random_simple` gives up.
pub const MAX_REJECTIONS: u64 = 1_000_000;

/// A seeded simple datum over P¹: `count_s` short-root reflections followed
/// by `count_l` long-root reflections, product the identity, with a
/// connected vector cover.
///
/// All factors but the last are drawn uniformly; the attempt is accepted
/// iff the forced last factor is a reflection of the required kind and the
/// group is transitive on ±1..±n. Same seed, same datum.
pub fn random_simple(
    n: usize,
    count_s: usize,
    count_l: usize,
    seed: u64,
) -> Result<MonodromyDatum> {
    let k = count_s + count_l;
    if k < 2 {
        return Err(Error::Constraint(format!(
            "a simple datum over P¹ needs at least two branch points, got {k}"
        )));
    }
    if count_s % 2 == 1 {
        return Err(Error::Constraint(format!(
            "{count_s} short reflections cannot multiply to the identity (sign parity)"
        )));
    }
    if count_l > 0 && n < 2 {
        return Err(Error::Constraint("rank 1 has no long roots".into()));
    }
    // Transitivity on the n pairs {±j} forces g(C′) = |𝔇_ℓ|/2 − n + 1 ≥ 0.
    if n >= 2 && count_l + 2 < 2 * n {
        return Err(Error::Constraint(format!(
            "{count_l} long reflections cannot act transitively on {n} index pairs"
        )));
    }
    let roots = crate::weyl::Root::positive_roots(n);
    let pool = |kind: RootKind| -> Vec<SignedPerm> {
        roots
            .iter()
            .filter(|r| r.kind() == kind)
            .map(|&r| reflection(r, n).expect("positive root"))
            .collect()
    };
    let short = pool(RootKind::Short);
    let long = pool(RootKind::Long);
    let last_kind = if count_l > 0 {
        RootKind::Long
    } else {
        RootKind::Short
    };
    let mut rng = SplitMix64::seed_from_u64(seed);
    let id = SignedPerm::identity(n);
    for _ in 0..MAX_REJECTIONS {
        let mut gens = Vec::with_capacity(k);
        for i in 0..k - 1 {
            let p = if i < count_s { &short } else { &long };
            gens.push(p[rng.random_range(0..p.len())]);
        }
        let prod = gens.iter().fold(id, |acc, g| acc * *g);
        let last = prod.inverse();
        if last.as_reflection().map(|r: Root| r.kind()) != Some(last_kind) {
            continue;
        }
        gens.push(last);
        if signed_orbits(n, &gens).len() != 1 {
            continue;
        }
        return Ok(MonodromyDatum::genus0(n, gens));
    }
    Err(Error::GenerationFailure(MAX_REJECTIONS))
}
