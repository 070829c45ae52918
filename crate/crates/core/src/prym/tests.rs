use super::*;
use crate::cover::random_simple;
use crate::weyl::SignedPerm;

fn pt(v: &[i64]) -> PolType {
    PolType::from_i64(v)
}

fn run(name: &str, seed: u64) -> PrymResult {
    let spec = scenario_spec(name).unwrap();
    verify_scenario(name, &spec.default_input(seed)).unwrap()
}

#[test]
fn hyperelliptic_double_cover_is_principal() {
    // Six branch points of a double cover of P¹: genus 2 over a rational quotient.
    let minus = SignedPerm::from_images(&[-1]).unwrap();
    let datum = MonodromyDatum::genus0(1, vec![minus; 6]);
    let c = HomologyModel::build(&induce(&datum, OrbitKind::Vector).unwrap()).unwrap();
    let p = prym_lattice(&c, &make_iota(1)).unwrap();
    assert_eq!(p.rank(), 4);
    assert_eq!(lattice_type(&p).unwrap(), pt(&[1, 1]));
}

#[test]
fn b2_prym_lattice() {
    let datum = random_simple(2, 4, 4, 3).unwrap();
    let c = HomologyModel::build(&induce(&datum, OrbitKind::Vector).unwrap()).unwrap();
    let p = prym_lattice(&c, &make_iota(2)).unwrap();
    assert_eq!(lattice_type(&p).unwrap(), pt(&[1, 2]));
}

#[test]
fn non_involution_is_rejected() {
    let datum = random_simple(3, 4, 6, 0).unwrap();
    let x = HomologyModel::build(&induce(&datum, OrbitKind::Spinor).unwrap()).unwrap();
    assert!(matches!(
        prym_lattice(&x, &make_d(3)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn b3_prym_tyurin_type() {
    let datum = random_simple(3, 4, 6, 1).unwrap();
    let x = HomologyModel::build(&induce(&datum, OrbitKind::Spinor).unwrap()).unwrap();
    assert!(quadratic_relation(&x).unwrap());
    let p = prym_tyurin_lattice(&x).unwrap();
    assert_eq!(p.rank(), 4);
    assert_eq!(lattice_type(&p).unwrap(), pt(&[2, 4]));
}

#[test]
fn mu_refuses_disconnected() {
    let datum = random_simple(3, 0, 10, 2).unwrap();
    let x = HomologyModel::build_disjoint(&induce(&datum, OrbitKind::Spinor).unwrap()).unwrap();
    let c = HomologyModel::build(&induce(&datum, OrbitKind::Vector).unwrap()).unwrap();
    assert!(matches!(mu_check(&x, &c), Err(Error::Disconnected { .. })));
}

#[test]
fn mu_b2_and_b3() {
    for (n, ds, dl) in [(2, 4, 4), (2, 2, 6), (3, 4, 6), (3, 2, 6)] {
        let datum = random_simple(n, ds, dl, 7).unwrap();
        let x = HomologyModel::build(&induce(&datum, OrbitKind::Spinor).unwrap()).unwrap();
        let c = HomologyModel::build(&induce(&datum, OrbitKind::Vector).unwrap()).unwrap();
        let mu = mu_check(&x, &c).unwrap();
        assert!(mu.surjective && mu.scaling, "{n} {ds} {dl}: {mu:?}");
    }
}

#[test]
fn theorem1_formula() {
    assert_eq!(theorem1_type(3, &pt(&[1, 2])), Some(pt(&[2, 4])));
    assert_eq!(theorem1_type(3, &pt(&[1, 1, 2])), Some(pt(&[2, 4, 4])));
    assert_eq!(theorem1_type(2, &pt(&[1, 2])), Some(pt(&[1, 2])));
    assert_eq!(theorem1_type(4, &pt(&[2, 2])), Some(pt(&[4, 4])));
    assert_eq!(theorem1_type(2, &pt(&[1, 8])), None);
    assert_eq!(theorem1_type(3, &pt(&[])), Some(pt(&[])));
}

#[test]
fn every_scenario_passes_on_defaults() {
    for spec in &SCENARIOS {
        let r = verify_scenario(spec.name, &spec.default_input(0)).unwrap();
        assert!(r.passed(), "{}: {:#?}", spec.name, r);
    }
}

#[test]
fn theorem2_lists() {
    for (ds, dl, c, p) in [
        (4, 6, vec![1, 2], vec![2, 4]),
        (6, 6, vec![1, 1, 2], vec![2, 4, 4]),
        (4, 8, vec![1, 2, 2], vec![2, 2, 4]),
    ] {
        let input = ScenarioInput::Generate {
            n: 3,
            ds,
            dl,
            seed: 5,
        };
        let r = verify_scenario("theorem2_b3", &input).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.type_of("P(C,C')"), Some(&pt(&c)));
        assert_eq!(r.type_of("P(X,delta)"), Some(&pt(&p)));
    }
}

#[test]
fn scenario_constraints() {
    let bad = ScenarioInput::Generate {
        n: 3,
        ds: 4,
        dl: 6,
        seed: 0,
    };
    assert!(matches!(
        verify_scenario("pantazis_b2", &bad),
        Err(Error::Constraint(_))
    ));
    assert!(matches!(
        verify_scenario("recillas_a3", &bad),
        Err(Error::Constraint(_))
    ));
    assert!(matches!(
        verify_scenario("hyperelliptic_4xi", &bad),
        Err(Error::Constraint(_))
    ));
    assert!(matches!(
        verify_scenario("nope", &bad),
        Err(Error::UnknownName(_))
    ));
}

#[test]
fn recillas_types() {
    let r = run("recillas_a3", 4);
    assert!(r.passed(), "{r:#?}");
    assert_eq!(r.type_of("JC"), Some(&pt(&[1])));
    assert_eq!(r.type_of("P(X,X')"), Some(&pt(&[2])));
}

#[test]
fn probe_rows_report() {
    let rep = conjecture_probe(4, 2, 8, 2, 9).unwrap();
    assert_eq!(rep.rows.len(), 2);
    for row in &rep.rows {
        assert_eq!(row.conjectured, Some(pt(&[4])));
        assert!(row.scaling);
        assert!(row.dims_equal);
    }
    assert!(matches!(
        conjecture_probe(3, 2, 8, 1, 0),
        Err(Error::Constraint(_))
    ));
}
