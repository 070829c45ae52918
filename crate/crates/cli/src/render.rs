//! Plain-text renderings of engine results.

use std::fmt::Write;

use prymlab::corr::IdentityReport;
use prymlab::cover::{PredictedType, Prediction, TypeBasis};
use prymlab::prym::{ProbeReport, ProbeRow, SCENARIOS};
use prymlab::{HomologyModel, OrbitKind, PrymResult};

use crate::CoverGenera;

const BASE_GENUS_NOTE: &str =
    "note: homology and lattice computations cover base genus 0 only; closed forms cover every base genus";

fn basis(b: TypeBasis) -> &'static str {
    match b {
        TypeBasis::Proved => "proved",
        TypeBasis::Conjectural => "conjectural",
        TypeBasis::Unknown => "unknown",
    }
}

fn predicted(t: &PredictedType) -> String {
    match (&t.chain, t.basis) {
        (_, TypeBasis::Unknown) => "unknown".to_string(),
        (Some(c), b) => format!("{c} [{}]", basis(b)),
        (None, b) => {
            let blocks: Vec<String> = t.blocks.iter().map(|(d, m)| format!("{d}^{m}")).collect();
            format!("out of regime: {} [{}]", blocks.join(" "), basis(b))
        }
    }
}

pub fn prediction(p: &Prediction) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, |D_s| = {}, |D_l| = {}, base genus {}",
        p.n, p.ds, p.dl, p.base_genus
    );
    let _ = writeln!(
        s,
        "genera: C' {}, C {}, X {}, X' {}, Y~ {}",
        p.genus_c_prime, p.genus_c, p.genus_x, p.genus_x_prime, p.genus_ytilde
    );
    let _ = writeln!(
        s,
        "dim P(C,C') = {}, dim P(X,X') = {}, dim P(Y~,Y) = {}",
        p.dim_p_c_c_prime, p.dim_p_x_x_prime, p.dim_p_ytilde_y
    );
    let _ = writeln!(s, "type P(C,C')    {}", predicted(&p.type_p_c_c_prime));
    let _ = writeln!(s, "type P(X,delta) {}", predicted(&p.type_p_x_delta));
    if p.base_genus > 0 {
        let _ = writeln!(s, "{BASE_GENUS_NOTE}");
    }
    s
}

pub fn genera(rows: &[CoverGenera]) -> String {
    let mut s = String::new();
    for r in rows {
        let g: Vec<String> = r.component_genera.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            "{:<13} degree {:>3}  genera [{}]",
            format!("{:?}", r.orbit),
            r.degree,
            g.join(", ")
        );
    }
    s
}

pub fn homology(orbit: &OrbitKind, h: &HomologyModel, gram: bool, chains: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{orbit:?} cover: degree {}, {} component(s), genus {}, rank {}",
        h.degree(),
        h.components,
        h.genus,
        h.rank()
    );
    if gram {
        let _ = writeln!(s, "intersection matrix:\n{}", h.gram);
    }
    if chains {
        for (i, z) in h.basis.iter().enumerate() {
            let support: Vec<String> = z
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, c)| format!("{c:+}e{e}"))
                .collect();
            let _ = writeln!(
                s,
                "  b{i} (component {}): {}",
                h.basis_component[i],
                support.join(" ")
            );
        }
    }
    s
}

pub fn scenario_list() -> String {
    let mut s = String::new();
    for spec in &SCENARIOS {
        let _ = writeln!(
            s,
            "{:<18} n = {}, default ({}, {})  {}",
            spec.name, spec.n, spec.ds, spec.dl, spec.summary
        );
    }
    s
}

pub fn prym_result(r: &PrymResult) -> String {
    let mut s = String::new();
    let d = &r.datum;
    let group = d.group.map_or("-".to_string(), |g| format!("{g:?}"));
    let _ = writeln!(
        s,
        "scenario {}: n = {}, |D_s| = {}, |D_l| = {}, group {group}",
        r.scenario, d.n, d.ds, d.dl
    );
    for row in &r.types {
        let pred = row
            .predicted
            .as_ref()
            .map_or("-".to_string(), |p| format!("{p} [{}]", basis(row.basis)));
        let _ = writeln!(
            s,
            "  {:<11} rank {:>3}  computed {:<14} predicted {pred}",
            row.variety,
            row.rank,
            row.computed.to_string()
        );
    }
    let flag = |f: Option<bool>| f.map_or("-".to_string(), |b| b.to_string());
    let _ = writeln!(
        s,
        "  mu surjective {}, scaling {}",
        flag(r.mu_surjective),
        flag(r.scaling_verified)
    );
    for c in &r.checks {
        let _ = writeln!(
            s,
            "  [{}] {}{}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            detail(&c.detail)
        );
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    let _ = writeln!(s, "verdict: {:?}", r.verdict);
    s
}

fn detail(d: &str) -> String {
    if d.is_empty() {
        String::new()
    } else {
        format!(": {d}")
    }
}

pub fn identities(reports: &[IdentityReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let scalars: Vec<String> = r
            .scalars
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        let _ = writeln!(
            s,
            "({}) {} n = {} [{}]: {}{}",
            r.key,
            r.name,
            r.n,
            r.level,
            if r.passed { "pass" } else { "FAIL" },
            detail(&scalars.join(", "))
        );
    }
    s
}

pub fn probe_header() -> String {
    "trial  seed                  computed        conjectured     agrees  mu".to_string()
}

pub fn probe_row(r: &ProbeRow) -> String {
    let conj = r
        .conjectured
        .as_ref()
        .map_or("-".to_string(), ToString::to_string);
    format!(
        "{:>5}  {:<20}  {:<14}  {:<14}  {:<6}  ({}, {})",
        r.trial,
        r.seed,
        r.computed.to_string(),
        conj,
        r.agrees.map_or("-".to_string(), |a| a.to_string()),
        r.mu_surjective,
        r.scaling
    )
}

pub fn probe_summary(r: &ProbeReport) -> String {
    let rate = r.agreement.map_or("-".to_string(), |a| format!("{a:.1}%"));
    format!(
        "{} trials, {} compared, {} agreeing, agreement {rate} [{}]\n",
        r.rows.len(),
        r.compared,
        r.agreeing,
        basis(r.basis)
    )
}
