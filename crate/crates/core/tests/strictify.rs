use std::sync::Arc;

use cosegal::chain::{betti_numbers, tensor_map, ChainComplex, ChainMap};
use cosegal::fixtures::{cylinder, random_reedy_functor, weak_strict, ReedyParams};
use cosegal::laxdiag::{is_cosegal, validate, Bundle, HomFunctor, LaxDiagram};
use cosegal::seqcat::{ObjectSet, SxShapes};
use cosegal::strictify::*;
use cosegal::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn trimmed(mut b: Vec<usize>) -> Vec<usize> {
    while b.last() == Some(&0) {
        b.pop();
    }
    b
}

fn ab() -> ObjectSet {
    ObjectSet::new(["A", "B"]).unwrap()
}

#[test]
fn small_algebras_are_associative() {
    let one = ObjectSet::new(["A"]).unwrap();
    for kind in [
        SmallAlgebra::Rationals,
        SmallAlgebra::TruncatedPolynomial,
        SmallAlgebra::Exterior,
        SmallAlgebra::Triangular,
        SmallAlgebra::Dga(2),
    ] {
        let d = algebra_category(&one, kind, CategoryPattern::Full).unwrap();
        assert!(d.is_associative().unwrap(), "{kind:?}");
        let units = homology_units(&d).unwrap();
        assert!(units[0].unit.is_some() && units[0].unique, "{kind:?}");
    }
}

#[test]
fn strictify_inflate_recovers_the_category() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let d = random_semicategory(&mut rng).unwrap();
        assert!(d.is_associative().unwrap());
        let f = inflate(&d, 3).unwrap();
        assert!(validate(&f).passed());
        assert!(is_cosegal(&f));
        let r = strictify(&f, 1).unwrap();
        assert_eq!(r.associativity, Some(true));
        let semi = r.semi().unwrap().expect("comparisons are isomorphisms");
        let n = d.objects().len();
        let iota = |a: usize, b: usize| r.levels[&1].colimits[a * n + b].cocone[0].clone();
        for a in 0..n {
            for b in 0..n {
                assert!(iota(a, b).is_iso());
                for c in 0..n {
                    let lhs = iota(a, c).compose(d.comp(a, b, c)).unwrap();
                    let rhs = semi.comp(a, b, c).compose(&tensor_map(&iota(a, b), &iota(b, c))).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert!(r.sigma_morphism(&f).unwrap().is_some());
    }
}

#[test]
fn cylinder_strictifies_to_rationals() {
    let f = cylinder(&ab(), 3).unwrap();
    let r = strictify(&f, 1).unwrap();
    assert_eq!(r.associativity, Some(true));
    assert!(r.sigma_is_we_proj());
    for d in &r.diagnostics {
        assert_eq!(trimmed(d.betti_full.clone()), vec![1]);
        assert_eq!(trimmed(d.betti_cut.clone()), vec![1]);
    }
    let h = r.homology_semi().unwrap().expect("comparisons are quasi-isomorphisms");
    for p in 0..2 {
        assert!(!h.comp(p, p, p).component(0).is_zero());
    }
    let units = homology_units(&h).unwrap();
    assert!(units.iter().all(|u| u.unit.is_some() && u.unique));
    let v = verify_quasi_strictification(&f, 1, Mode::Proj).unwrap();
    assert!(v.passed);
}

#[test]
fn zero_laxity_gives_zero_composition() {
    let f = cylinder(&ab(), 2).unwrap();
    let z = LaxDiagram::with_zero_laxity(f.bundle().clone()).unwrap();
    let r = strictify(&z, 1).unwrap();
    assert!(r.composition.iter().all(ChainMap::is_zero));
    assert_eq!(r.associativity, None);
}

#[test]
fn truncation_is_enforced() {
    let f = cylinder(&ab(), 3).unwrap();
    assert!(matches!(strictify(&f, 2), Err(Error::Truncation(_))));
}

#[test]
fn circle_coequalizer_verdict() {
    let d = circle_coequalizer().unwrap();
    let v = colimit_stability_check(&d, 0).unwrap();
    assert!(!v.initial_object);
    assert!(v.reedy_cofibrant);
    assert!(v.all_quasi_iso);
    assert!(!v.initial_to_colimit_quasi_iso);
    assert_eq!(v.object_betti, vec![vec![1], vec![1, 0]]);
    assert_eq!(v.colimit_betti, vec![1, 1]);
}

#[test]
fn stability_on_fixtures() {
    let one = ObjectSet::new(["A"]).unwrap();
    let shapes = SxShapes::new(&one, 3).unwrap();
    let constant = HomFunctor::constant(shapes.shape(0, 0).clone(), &ChainComplex::unit());
    let v = hom_stability_check(&constant).unwrap();
    assert!(v.initial_object && v.reedy_cofibrant && v.all_quasi_iso && v.initial_to_colimit_quasi_iso);
    let f = cylinder(&ab(), 3).unwrap();
    for c in f.bundle().components() {
        let v = hom_stability_check(c).unwrap();
        assert!(v.initial_object && v.reedy_cofibrant && v.all_quasi_iso && v.initial_to_colimit_quasi_iso);
    }
}

#[test]
fn random_cofibrant_components_are_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let shapes = Arc::new(SxShapes::new(&ab(), 3).unwrap());
    for i in 0..6 {
        let shape = shapes.shapes()[i % 4].clone();
        let f = random_reedy_functor(&mut rng, &shape, ReedyParams::default()).unwrap();
        let v = hom_stability_check(&f).unwrap();
        assert!(v.reedy_cofibrant && v.all_quasi_iso && v.initial_to_colimit_quasi_iso);
    }
}

#[test]
fn weak_strict_mode_ex() {
    let f = weak_strict(&ab(), 3).unwrap();
    assert!(validate(&f).passed());
    let v = verify_quasi_strictification(&f, 1, Mode::Ex).unwrap();
    assert!(v.passed);
    assert!(matches!(verify_quasi_strictification(&f, 1, Mode::Proj), Err(Error::Precondition(_))));
}

#[test]
fn ex_mode_rejects_non_cofibrant_off_diagonal() {
    let shapes = Arc::new(SxShapes::new(&ab(), 2).unwrap());
    let components = shapes
        .shapes()
        .iter()
        .map(|sh| HomFunctor::constant(sh.clone(), &ChainComplex::unit()))
        .collect();
    let mut bundle = Bundle::new(shapes.clone(), components).unwrap();
    // F(A,B) = ℚ, zero above: the latching map at (A,x,B) is not injective
    let sh = shapes.shape(0, 1).clone();
    let values: Vec<ChainComplex> = sh
        .sequences()
        .iter()
        .map(|s| if s.dim() == 1 { ChainComplex::unit() } else { ChainComplex::zero() })
        .collect();
    let maps = sh
        .arrows()
        .iter()
        .map(|a| {
            if a.is_identity() {
                ChainMap::identity(&values[a.to])
            } else {
                ChainMap::zero(&values[a.from], &values[a.to])
            }
        })
        .collect();
    *bundle.component_mut(0, 1) = HomFunctor::from_all(sh, values, maps).unwrap();
    let f = LaxDiagram::with_zero_laxity(bundle).unwrap();
    assert!(matches!(verify_quasi_strictification(&f, 1, Mode::Ex), Err(Error::Precondition(_))));
}

#[test]
fn units_absent_without_diagonal() {
    let homs = vec![ChainComplex::zero(), ChainComplex::unit(), ChainComplex::zero(), ChainComplex::unit()];
    let d = zero_composition(&ab(), homs).unwrap();
    let units = homology_units(&d).unwrap();
    assert!(units[0].unit.is_none());
    assert_eq!(betti_numbers(d.hom(0, 1)), vec![1]);
}
