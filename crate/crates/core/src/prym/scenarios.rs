use num_bigint::BigInt;
use serde::Serialize;

use super::{
    generates, lattice_type, on, s0_pair, same, scaled_type, theorem1_type, DatumSummary, MuCheck,
    PrymResult, Tower,
};
use crate::corr::{make_di, make_projection, make_s_family, make_sigma};
use crate::cover::{induce, random_simple, MonodromyDatum, TypeBasis};
use crate::error::{Error, Result};
use crate::lattice::{kernel, restrict_form, saturate, PolType, PolarizedLattice};
use crate::matrix::IntMatrix;
use crate::surface::{induced_map, HomologyModel};
use crate::weyl::{OrbitKind, OrbitLabel};

/// A named scenario with its default generation parameters.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScenarioSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub n: usize,
    pub ds: usize,
    pub dl: usize,
}

pub const SCENARIOS: [ScenarioSpec; 8] = [
    ScenarioSpec {
        name: "pantazis_b2",
        summary: "B₂ bigonal construction: types of P(C,C′) and P(X,X′), μ an isomorphism",
        n: 2,
        ds: 4,
        dl: 4,
    },
    ScenarioSpec {
        name: "theorem2_b3",
        summary: "simple B₃ covering: types of P(C,C′) and P(X,δ), P(X,δ) dual to P(C,C′)",
        n: 3,
        ds: 4,
        dl: 6,
    },
    ScenarioSpec {
        name: "hyperelliptic_4xi",
        summary: "hyperelliptic C over a rational C′: Θ_JX restricts to 4Ξ and (P(X,δ), Ξ) ≅ JC",
        n: 3,
        ds: 6,
        dl: 4,
    },
    ScenarioSpec {
        name: "recillas_a3",
        summary: "Recillas: degree-4 S₄ cover C and degree-6 cover X, JC ≅ (P(X,X′), form/2)",
        n: 3,
        ds: 0,
        dl: 8,
    },
    ScenarioSpec {
        name: "d3_antidiagonal",
        summary: "étale B₃ covering with W(D₃) monodromy: P(X,δ) is the antidiagonal of B×B",
        n: 3,
        ds: 0,
        dl: 10,
    },
    ScenarioSpec {
        name: "etale_dn",
        summary: "étale π: P(X,δ) has type (2^{n−2},…,2^{n−2}) with X = X₀ ⊔ X₁",
        n: 3,
        ds: 0,
        dl: 10,
    },
    ScenarioSpec {
        name: "b3_complement",
        summary: "B₃: P(X,δ) = ker Nm_g on P(X,X′) and (δ+3)P(X,X′) = g*P(Ỹ,Y)",
        n: 3,
        ds: 4,
        dl: 6,
    },
    ScenarioSpec {
        name: "b4_structure",
        summary: "B₄: P(X,δ) = (δ₀+2)P(X,X′) with complement (δ+7)P(X,X′) = (δ₀−2)P(X,X′)",
        n: 4,
        ds: 4,
        dl: 8,
    },
];

pub fn scenario_spec(name: &str) -> Result<&'static ScenarioSpec> {
    SCENARIOS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Where a scenario's datum comes from.
#[derive(Clone, Debug)]
pub enum ScenarioInput {
    Datum(MonodromyDatum),
    /// `random_simple(n, ds, dl, seed)`.
    Generate {
        n: usize,
        ds: usize,
        dl: usize,
        seed: u64,
    },
}

impl ScenarioSpec {
    pub fn default_input(&self, seed: u64) -> ScenarioInput {
        ScenarioInput::Generate {
            n: self.n,
            ds: self.ds,
            dl: self.dl,
            seed,
        }
    }
}

impl ScenarioInput {
    pub fn datum(&self) -> Result<MonodromyDatum> {
        match self {
            ScenarioInput::Datum(d) => Ok(d.clone()),
            &ScenarioInput::Generate { n, ds, dl, seed } => random_simple(n, ds, dl, seed),
        }
    }
}

pub fn verify_scenario(name: &str, input: &ScenarioInput) -> Result<PrymResult> {
    let spec = scenario_spec(name)?;
    let datum = input.datum()?;
    let tower = Tower::new(&datum)?;
    require(spec, &tower.summary)?;
    let mut r = PrymResult::new(spec.name, tower.summary.clone());
    match spec.name {
        "pantazis_b2" => pantazis(&tower, &mut r)?,
        "theorem2_b3" => theorem2(&tower, &mut r)?,
        "hyperelliptic_4xi" => hyperelliptic(&tower, &mut r)?,
        "recillas_a3" => recillas(&tower, &datum, &mut r)?,
        "d3_antidiagonal" => antidiagonal(&tower, &mut r)?,
        "etale_dn" => etale(&tower, &mut r)?,
        "b3_complement" => b3_complement(&tower, &datum, &mut r)?,
        "b4_structure" => b4_structure(&tower, &mut r)?,
        _ => unreachable!("catalog and dispatch agree"),
    }
    Ok(r.finish())
}

fn require(spec: &ScenarioSpec, s: &DatumSummary) -> Result<()> {
    let fail = |what: &str| Err(Error::Constraint(format!("{} requires {what}", spec.name)));
    let rank_ok = match spec.name {
        "etale_dn" => s.n >= 3,
        _ => s.n == spec.n,
    };
    if !rank_ok {
        return fail(&format!("rank {} (got {})", spec.n, s.n));
    }
    match spec.name {
        "pantazis_b2" | "theorem2_b3" | "b3_complement" | "b4_structure"
            if s.ds == 0 || s.dl == 0 =>
        {
            fail("nonempty 𝔇_s and 𝔇_ℓ")
        }
        "hyperelliptic_4xi" if s.dl != 4 || s.ds == 0 => fail("|𝔇_ℓ| = 4 and nonempty 𝔇_s"),
        "recillas_a3" | "d3_antidiagonal" | "etale_dn" if s.ds != 0 => fail("𝔇_s = ∅ (étale π)"),
        _ => Ok(()),
    }
}

fn chain(blocks: &[(i64, i64)]) -> PolType {
    PolType(
        blocks
            .iter()
            .flat_map(|&(d, m)| std::iter::repeat_n(BigInt::from(d), m.max(0) as usize))
            .collect(),
    )
}

fn whole(h: &HomologyModel) -> PolarizedLattice {
    PolarizedLattice::new(IntMatrix::identity(h.rank()), h.gram.clone())
}

fn columns(m: &IntMatrix, cols: &[usize]) -> IntMatrix {
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.submatrix(&rows, cols)
}

/// μ flags, the dual-type formula, the action of ᵗs₀s₀ on P(X,δ) and the
/// isogeny dimension count.
fn isogeny_checks(
    t: &Tower,
    r: &mut PrymResult,
    pc: &PolarizedLattice,
    pd: &PolarizedLattice,
) -> Result<MuCheck> {
    let mu = t.mu(pc)?;
    r.set_mu(mu);
    r.check(
        "dim P(X,delta) = dim P(C,C')",
        pd.rank() == pc.rank(),
        format!("ranks {} and {}", pd.rank(), pc.rank()),
    );
    let (s0, s0t) = s0_pair(&t.x, &t.c)?;
    let composite = &(&s0t * &s0) * &pd.basis;
    r.check(
        "ts0 s0 = 2^(n-1) on P(X,delta)",
        composite == pd.basis.scale_i64(t.q()),
        format!("q = {}", t.q()),
    );
    if mu.surjective && mu.scaling {
        let tp = lattice_type(pd)?;
        let tc = lattice_type(pc)?;
        let expected = theorem1_type(t.n, &tc);
        r.check(
            "theorem 1 type",
            expected.as_ref() == Some(&tp),
            format!("P(X,delta) {tp}, (2^(n-1)/(d1 dp))·dual {expected:?}"),
        );
    }
    Ok(mu)
}

fn quadratic_check(t: &Tower, r: &mut PrymResult, delta: &IntMatrix) {
    r.check(
        "quadratic relation",
        super::quadratic_holds(delta, t.n),
        format!(
            "(delta - 1)(delta + {}) = 0 on H1(X) of rank {}",
            t.q() - 1,
            t.x.rank()
        ),
    );
}

fn pantazis(t: &Tower, r: &mut PrymResult) -> Result<()> {
    let p = t.prediction()?;
    let (ds, dl) = (t.summary.ds as i64, t.summary.dl as i64);
    let pc = t.prym_c()?;
    let pxx = t.prym_x_prime()?;
    let pd = t.prym_delta()?;
    r.row(
        "P(C,C')",
        &pc,
        p.type_p_c_c_prime.chain.clone(),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(X,X')",
        &pxx,
        Some(chain(&[(1, dl / 2 - 1), (2, ds / 2 - 1)])),
        TypeBasis::Proved,
    )?;
    r.check(
        "P(X,delta) = P(X,X')",
        same(&pd.basis, &pxx.basis),
        "delta = sigma at rank 2",
    );
    isogeny_checks(t, r, &pc, &pd)?;
    Ok(())
}

fn theorem2(t: &Tower, r: &mut PrymResult) -> Result<()> {
    let p = t.prediction()?;
    let pc = t.prym_c()?;
    let pd = t.prym_delta()?;
    let pxx = t.prym_x_prime()?;
    let tc = r.row(
        "P(C,C')",
        &pc,
        p.type_p_c_c_prime.chain.clone(),
        TypeBasis::Proved,
    )?;
    let tp = r.row(
        "P(X,delta)",
        &pd,
        p.type_p_x_delta.chain.clone(),
        p.type_p_x_delta.basis,
    )?;
    r.row(
        "P(X,X')",
        &pxx,
        Some(chain(&[(2, p.dim_p_x_x_prime)])),
        TypeBasis::Proved,
    )?;
    quadratic_check(t, r, &t.delta()?);
    r.check(
        "P(X,delta) in P(X,X')",
        crate::lattice::contains(&pxx.basis, &pd.basis),
        "inclusion of lattices",
    );
    let mu = isogeny_checks(t, r, &pc, &pd)?;
    if mu.surjective {
        r.check(
            "P(X,delta) dual to P(C,C')",
            theorem1_type(t.n, &tc).as_ref() == Some(&tp),
            format!("{tp} vs dual of {tc}"),
        );
    }
    Ok(())
}

fn hyperelliptic(t: &Tower, r: &mut PrymResult) -> Result<()> {
    let p = t.prediction()?;
    let pc = t.prym_c()?;
    let pd = t.prym_delta()?;
    r.row(
        "JC",
        &pc,
        p.type_p_c_c_prime.chain.clone(),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(X,delta)",
        &pd,
        p.type_p_x_delta.chain.clone(),
        p.type_p_x_delta.basis,
    )?;
    quadratic_check(t, r, &t.delta()?);
    let iota = on(&t.c, &crate::corr::make_iota(t.n))?;
    r.check(
        "P(C,C') = JC",
        iota == -&IntMatrix::identity(t.c.rank()),
        "iota acts as -1 on H1(C) since C' is rational",
    );
    let xi = scaled_type(&pd, 4)?;
    r.check(
        "form/4 principal on P(X,delta)",
        xi.as_ref().is_some_and(PolType::is_principal),
        format!("Xi type {xi:?}"),
    );
    let (_, s0t) = s0_pair(&t.x, &t.c)?;
    let onto = same(&s0t, &pd.basis);
    let scaled = restrict_form(&s0t, &t.x.gram) == t.c.gram.scale_i64(4);
    r.check(
        "isometry JC -> (P(X,delta), form/4)",
        onto && scaled,
        format!("ts0 onto P: {onto}; ts0* E_X = 4 E_C: {scaled}"),
    );
    isogeny_checks(t, r, &pc, &pd)?;
    Ok(())
}

/// Positions of the component of `cover` holding the label at position 0.
fn first_component(cover: &crate::cover::CoverModel) -> Vec<usize> {
    cover
        .components()
        .into_iter()
        .find(|c| c.contains(&0))
        .expect("position 0 exists")
}

fn recillas(t: &Tower, datum: &MonodromyDatum, r: &mut PrymResult) -> Result<()> {
    // C: the semispinor component of even subsets; X: the vector cover.
    let spinor = induce(datum, OrbitKind::Spinor)?;
    let even = first_component(&spinor);
    let semispinor = spinor.restrict(&even)?;
    let all_even = semispinor
        .labels
        .iter()
        .all(|l| matches!(l, OrbitLabel::Spinor(a) if a.len() % 2 == 0));
    r.check(
        "C is the even semispinor cover of degree 4",
        all_even && semispinor.degree() == 4,
        format!("degree {}", semispinor.degree()),
    );
    let hz = HomologyModel::build(&semispinor)?;
    let g = hz.genus as i64;
    let jc = whole(&hz);
    let px = t.prym_c()?;
    r.row("JC", &jc, Some(chain(&[(1, g)])), TypeBasis::Proved)?;
    r.row("P(X,X')", &px, Some(chain(&[(2, g)])), TypeBasis::Proved)?;
    let phi = induced_map(&hz, &t.c, &make_s_family(t.n).s0)?;
    let onto = same(&phi, &px.basis);
    let scaled = restrict_form(&phi, &t.c.gram) == hz.gram.scale_i64(2);
    r.check(
        "isometry JC -> (P(X,X'), form/2)",
        onto && scaled,
        format!("S0 onto P(X,X'): {onto}; pullback of E_X = 2 E_C: {scaled}"),
    );
    Ok(())
}

fn antidiagonal(t: &Tower, r: &mut PrymResult) -> Result<()> {
    let p = t.prediction()?;
    let pc = t.prym_c()?;
    let pd = t.prym_delta()?;
    let x = &t.x;
    r.check(
        "X = X1 ⊔ X2",
        x.components == 2,
        format!("{} components", x.components),
    );
    let c0 = x.basis_component.first().copied().unwrap_or(0);
    let b: Vec<usize> = (0..x.rank())
        .filter(|&i| x.basis_component[i] == c0)
        .collect();
    let e = IntMatrix::identity(x.rank());
    let sigma = on(x, &make_sigma(t.n))?;
    let eb = columns(&e, &b);
    let sb = &sigma * &eb;
    let anti = &eb - &sb;
    let diag = &eb + &sb;
    let dz = b.len() as i64 / 2;
    r.row(
        "B",
        &PolarizedLattice::new(eb.clone(), x.gram.clone()),
        Some(chain(&[(1, dz)])),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(C,C')",
        &pc,
        p.type_p_c_c_prime.chain.clone(),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(X,delta)",
        &pd,
        Some(chain(&[(2, p.dim_p_c_c_prime)])),
        TypeBasis::Proved,
    )?;
    let delta = t.delta()?;
    quadratic_check(t, r, &delta);
    r.check(
        "P(X,delta) = antidiagonal of B x B",
        same(&pd.basis, &anti),
        format!("antidiagonal rank {}", anti.cols()),
    );
    r.check(
        "(1 - delta) kills the diagonal",
        (&(&e - &delta) * &diag).is_zero(),
        "diagonal of B x B",
    );
    r.check(
        "E_P = 2 E_B on the antidiagonal",
        restrict_form(&anti, &x.gram) == restrict_form(&eb, &x.gram).scale_i64(2),
        "restricted forms",
    );
    isogeny_checks(t, r, &pc, &pd)?;
    Ok(())
}

fn etale(t: &Tower, r: &mut PrymResult) -> Result<()> {
    let p = t.prediction()?;
    let pc = t.prym_c()?;
    let pd = t.prym_delta()?;
    r.row(
        "P(C,C')",
        &pc,
        p.type_p_c_c_prime.chain.clone(),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(X,delta)",
        &pd,
        p.type_p_x_delta.chain.clone(),
        p.type_p_x_delta.basis,
    )?;
    let x = &t.x;
    r.check(
        "X = X0 ⊔ X1",
        x.components == 2,
        format!("{} components", x.components),
    );
    quadratic_check(t, r, &t.delta()?);
    let (s0, _) = s0_pair(x, &t.c)?;
    let per_component: Vec<bool> = (0..x.components)
        .map(|k| {
            let cols: Vec<usize> = (0..x.rank())
                .filter(|&i| x.basis_component[i] == k)
                .collect();
            generates(&pc.basis, &columns(&s0, &cols))
        })
        .collect();
    r.check(
        "s0 on some X_i onto P(C,C')",
        per_component.iter().any(|&b| b),
        format!("per component {per_component:?}"),
    );
    isogeny_checks(t, r, &pc, &pd)?;
    Ok(())
}

fn b3_complement(t: &Tower, datum: &MonodromyDatum, r: &mut PrymResult) -> Result<()> {
    let p = t.prediction()?;
    let pc = t.prym_c()?;
    let pd = t.prym_delta()?;
    let pxx = t.prym_x_prime()?;
    let yt = HomologyModel::build(&induce(datum, OrbitKind::Parity)?)?;
    let proj = make_projection(t.n, OrbitKind::Spinor, OrbitKind::Parity)?;
    let push = induced_map(&t.x, &yt, &proj)?;
    let pull = induced_map(&yt, &t.x, &proj.transpose())?;
    let ds = t.summary.ds as i64;
    r.row(
        "P(C,C')",
        &pc,
        p.type_p_c_c_prime.chain.clone(),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(X,delta)",
        &pd,
        p.type_p_x_delta.chain.clone(),
        p.type_p_x_delta.basis,
    )?;
    r.row(
        "P(X,X')",
        &pxx,
        Some(chain(&[(2, p.dim_p_x_x_prime)])),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(Y~,Y)",
        &whole(&yt),
        Some(chain(&[(1, ds / 2 - 1)])),
        TypeBasis::Proved,
    )?;
    let delta = t.delta()?;
    quadratic_check(t, r, &delta);
    let k = &pxx.basis * &kernel(&(&push * &pxx.basis));
    r.check(
        "P(X,delta) = ker Nm_g on P(X,X')",
        same(&pd.basis, &k),
        format!("kernel rank {}", k.cols()),
    );
    let e = IntMatrix::identity(t.x.rank());
    let comp = saturate(&(&(&delta + &e.scale_i64(3)) * &pxx.basis));
    r.check(
        "(delta+3)P(X,X') = g*P(Y~,Y)",
        same(&comp, &saturate(&pull)),
        format!("rank {}", comp.cols()),
    );
    r.check(
        "complement is orthogonal",
        restrict_cross(&pd.basis, &comp, &t.x.gram).is_zero()
            && pd.rank() + comp.cols() == pxx.rank(),
        "in P(X,X')",
    );
    let comp_l = PolarizedLattice::new(comp, t.x.gram.clone());
    let xi_b = scaled_type(&comp_l, 2)?;
    let xi_p = scaled_type(&pd, 2)?;
    r.check(
        "Xi on (delta+3)P(X,X') has type (2,...,2)",
        xi_b.as_ref() == Some(&chain(&[(2, ds / 2 - 1)])),
        format!("{xi_b:?}"),
    );
    let nonunit = |t: &Option<PolType>| -> Option<Vec<BigInt>> {
        t.as_ref().map(|t| {
            t.0.iter()
                .filter(|d| **d != BigInt::from(1))
                .cloned()
                .collect()
        })
    };
    r.check(
        "K(Xi|P) = K(Xi|B)",
        nonunit(&xi_b).is_some() && nonunit(&xi_b) == nonunit(&xi_p),
        format!("Xi|P {xi_p:?}, Xi|B {xi_b:?}"),
    );
    Ok(())
}

fn restrict_cross(a: &IntMatrix, b: &IntMatrix, gram: &IntMatrix) -> IntMatrix {
    &(&a.transpose() * gram) * b
}

fn b4_structure(t: &Tower, r: &mut PrymResult) -> Result<()> {
    let p = t.prediction()?;
    let pc = t.prym_c()?;
    let pd = t.prym_delta()?;
    let pxx = t.prym_x_prime()?;
    r.row(
        "P(C,C')",
        &pc,
        p.type_p_c_c_prime.chain.clone(),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(X,X')",
        &pxx,
        Some(chain(&[(2, p.dim_p_x_x_prime)])),
        TypeBasis::Proved,
    )?;
    r.row(
        "P(X,delta)",
        &pd,
        p.type_p_x_delta.chain.clone(),
        p.type_p_x_delta.basis,
    )?;
    let x = &t.x;
    let delta = t.delta()?;
    quadratic_check(t, r, &delta);
    let d0 = on(x, &make_di(t.n, 0)?)?;
    let d1 = on(x, &make_di(t.n, 1)?)?;
    let sigma = on(x, &make_sigma(t.n))?;
    let e = IntMatrix::identity(x.rank());
    let b = &pxx.basis;
    let plus2 = &d0 + &e.scale_i64(2);
    let minus2 = &d0 - &e.scale_i64(2);
    r.check(
        "P(X,delta) = (delta0+2)P(X,X')",
        same(&pd.basis, &saturate(&(&plus2 * b))),
        "saturated images",
    );
    let comp = saturate(&(&(&delta + &e.scale_i64(7)) * b));
    r.check(
        "(delta+7)P(X,X') = (delta0-2)P(X,X')",
        same(&comp, &saturate(&(&minus2 * b))),
        format!("rank {}", comp.cols()),
    );
    r.check(
        "complement is orthogonal",
        restrict_cross(&pd.basis, &comp, &x.gram).is_zero()
            && pd.rank() + comp.cols() == pxx.rank(),
        "in P(X,X')",
    );
    r.check(
        "(delta0+2)(delta0-2)(1+sigma) = 4 delta1",
        &(&plus2 * &minus2) * &(&e + &sigma) == d1.scale_i64(4),
        "on H1(X)",
    );
    let mu = t.mu(&pc)?;
    r.check(
        "scaling E_X(ts0 a, ts0 b) = 8 E_C(a, b)",
        mu.scaling,
        "on P(C,C')",
    );
    r.notes.push(format!(
        "mu surjective: {} (open at n = 4; reported, not asserted)",
        mu.surjective
    ));
    Ok(())
}
