use cosegal::chain::{betti_numbers, braiding, int, tensor, ChainComplex, ChainMap, QMatrix};
use cosegal::commutative::*;
use cosegal::fixtures::{constant_symmetric, symmetric_cylinder};
use cosegal::laxdiag::{is_cosegal, validate, ViolationKind};
use cosegal::seqcat::phi::{collapse, transposition};
use cosegal::seqcat::{enumerate_surjective_functions, ObjectSet, SurjectiveFunction};
use cosegal::strictify::{algebra_category, inflate, small_algebra, CategoryPattern, SmallAlgebra};
use cosegal::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn trimmed(mut b: Vec<usize>) -> Vec<usize> {
    while b.last() == Some(&0) {
        b.pop();
    }
    b
}

fn rationals(n: usize) -> SymLaxFunctor {
    let q = ChainComplex::unit();
    constant_symmetric(n, &q, &ChainMap::identity(&q)).unwrap()
}

#[test]
fn constant_rationals_validates() {
    for n in 1..=4 {
        assert!(validate_sym(&rationals(n)).passed());
    }
}

#[test]
fn negated_swap_fails_equivariance() {
    let c = rationals(2);
    let minus = ChainMap::identity(&ChainComplex::unit()).scale(&int(-1));
    let bad = c.with_generator(&transposition(2, 0), minus).unwrap();
    let report = validate_sym(&bad);
    assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Equivariance));
    // the swap no longer fixes the image of the collapse either
    assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Functoriality));
}

#[test]
fn symmetric_cylinder_validates() {
    let c = symmetric_cylinder(3).unwrap();
    assert_eq!(c.value(3).dims(), &[64, 192, 240, 160, 60, 12, 1]);
    assert!(validate_sym(&c).passed());
    assert!(is_cosegal_monoid(&c).unwrap());
}

#[test]
fn symmetric_group_actions_at_four_points() {
    // every permutation of four points, composed in every order
    let c = rationals(4);
    let perms = enumerate_surjective_functions(4, 4);
    assert_eq!(perms.len(), 24);
    for p in &perms {
        for q in &perms {
            let lhs = c.map(p).unwrap().compose(c.map(q).unwrap()).unwrap();
            assert_eq!(&lhs, c.map(&p.then(q).unwrap()).unwrap());
        }
    }
    let cyl = symmetric_cylinder(3).unwrap();
    let perms3 = enumerate_surjective_functions(3, 3);
    for p in &perms3 {
        for q in &perms3 {
            let lhs = cyl.map(p).unwrap().compose(cyl.map(q).unwrap()).unwrap();
            assert_eq!(&lhs, cyl.map(&p.then(q).unwrap()).unwrap());
        }
    }
}

#[test]
fn restriction_of_constant_rationals_is_the_unit_monoid() {
    let r = restrict_to_deltaepi(&rationals(3)).unwrap();
    assert!(validate(&r).passed());
    let one = ObjectSet::new(["*"]).unwrap();
    let unit = inflate(&algebra_category(&one, SmallAlgebra::Rationals, CategoryPattern::Full).unwrap(), 3).unwrap();
    let (a, b) = (r.bundle().component(0, 0), unit.bundle().component(0, 0));
    assert_eq!(a.values(), b.values());
    assert_eq!(a.maps(), b.maps());
    assert_eq!(r.laxity(), unit.laxity());
}

#[test]
fn cosegal_restriction_matches_monotone_maps() {
    let zero_collapse = rationals(2)
        .with_generator(&collapse(2, 0), ChainMap::zero(&ChainComplex::unit(), &ChainComplex::unit()))
        .unwrap();
    for c in [rationals(3), symmetric_cylinder(3).unwrap(), zero_collapse.clone()] {
        let r = restrict_to_deltaepi(&c).unwrap();
        let monotone_qi = c
            .shape()
            .functions()
            .iter()
            .filter(|f| f.is_monotone())
            .all(|f| cosegal::chain::is_quasi_iso(c.map(f).unwrap()));
        assert_eq!(is_cosegal(&r), monotone_qi);
    }
    assert!(validate_sym(&zero_collapse).passed());
    assert!(!is_cosegal_monoid(&zero_collapse).unwrap());
    assert!(is_cosegal_monoid(&rationals(3)).unwrap());
}

#[test]
fn restriction_preserves_validity_on_random_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let kinds = [
        SmallAlgebra::Rationals,
        SmallAlgebra::TruncatedPolynomial,
        SmallAlgebra::Exterior,
        SmallAlgebra::Triangular,
        SmallAlgebra::Dga(-1),
        SmallAlgebra::Dga(3),
    ];
    for (i, kind) in kinds.into_iter().enumerate() {
        let one = ObjectSet::new(["*"]).unwrap();
        let d = algebra_category(&one, kind, CategoryPattern::Full).unwrap().conjugate_randomly(&mut rng).unwrap();
        let c = constant_symmetric(3, d.hom(0, 0), d.comp(0, 0, 0)).unwrap();
        let sym = validate_sym(&c).passed();
        let restricted = validate(&restrict_to_deltaepi(&c).unwrap()).passed();
        assert!(restricted, "{kind:?}");
        // only the matrix algebra fails to be commutative
        assert_eq!(sym, kind != SmallAlgebra::Triangular, "{kind:?}");
        if i % 2 == 0 && sym {
            let mu = c.laxity(1, 1).unwrap();
            let bumped = mu.add(&mu).unwrap();
            let bad = c.with_laxity(1, 1, bumped).unwrap();
            let restricted_bad = validate(&restrict_to_deltaepi(&bad).unwrap()).passed();
            assert!(restricted_bad || !validate_sym(&bad).passed());
        }
    }
}

#[test]
fn constant_rationals_strictify_to_rationals() {
    let r = strictify_commutative(&rationals(3), 1).unwrap();
    assert_eq!(r.carrier(), &ChainComplex::unit());
    assert!(r.mult().is_iso());
    assert!(r.commutative);
    assert_eq!(r.associative(), Some(true));
    assert!(r.verdict().unwrap());
    let m = r.monoid().unwrap().expect("comparison is an isomorphism");
    assert!(is_commutative(&m).unwrap());
}

#[test]
fn symmetric_cylinder_strictifies() {
    let r = strictify_commutative(&symmetric_cylinder(3).unwrap(), 1).unwrap();
    assert_eq!(trimmed(r.diagnostics.betti_cut.clone()), vec![1]);
    assert_eq!(trimmed(r.diagnostics.betti_full.clone()), vec![1]);
    assert!(r.commutative);
    assert_eq!(r.associative(), Some(true));
    assert!(r.diagnostics.sigma_quasi_iso);
    assert!(r.diagnostics.monotone_comparison_quasi_iso);
    assert!(r.verdict().unwrap());
    let h = r.homology_monoid().unwrap().expect("comparison is a quasi-isomorphism");
    assert!(is_commutative(&h).unwrap());
    assert!(!h.comp(0, 0, 0).component(0).is_zero());
}

#[test]
fn truncation_and_preconditions() {
    assert!(matches!(strictify_commutative(&rationals(3), 2), Err(Error::Truncation(_))));
    let minus = ChainMap::identity(&ChainComplex::unit()).scale(&int(-1));
    let bad = rationals(2).with_generator(&transposition(2, 0), minus).unwrap();
    assert!(matches!(strictify_commutative(&bad, 1), Err(Error::Structure(_))));
    let zero_collapse = rationals(2)
        .with_generator(&collapse(2, 0), ChainMap::zero(&ChainComplex::unit(), &ChainComplex::unit()))
        .unwrap();
    let r = strictify_commutative(&zero_collapse, 1).unwrap();
    assert!(matches!(r.verdict(), Err(Error::Precondition(_))));
}

#[test]
fn braiding_sign_on_odd_classes() {
    let (r, mult) = small_algebra(SmallAlgebra::Exterior).unwrap();
    let c = constant_symmetric(2, &r, &mult).unwrap();
    let s = strictify_commutative(&c, 1).unwrap();
    assert!(s.commutative);
    // e ⊗ e sits in degree 2 of R ⊗ R and the braiding negates it
    let b = braiding(&r, &r);
    assert_eq!(b.component(2), QMatrix::from_i64(1, 1, &[-1]));
    // a square-nonzero odd generator is commutative only without the sign
    let sq = ChainComplex::new(vec![1, 1, 1], vec![QMatrix::zeros(1, 1), QMatrix::zeros(1, 1)]).unwrap();
    let rr = tensor(&sq, &sq);
    let comps = (0..rr.len())
        .map(|n| {
            let mut m = QMatrix::zeros(sq.dim(n), rr.dim(n));
            // 1·x = x·1 = x, and e·e = f
            match n {
                0 => m.set(0, 0, int(1)),
                1 => {
                    m.set(0, 0, int(1));
                    m.set(0, 1, int(1));
                }
                2 => {
                    for j in 0..rr.dim(2) {
                        m.set(0, j, int(1));
                    }
                }
                _ => {}
            }
            m
        })
        .collect();
    let square = ChainMap::new(rr, sq.clone(), comps).unwrap();
    let bad = constant_symmetric(2, &sq, &square).unwrap();
    let report = validate_sym(&bad);
    assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Equivariance));
    let unsigned = square.compose(&braiding(&sq, &sq)).unwrap();
    assert_ne!(unsigned, square);
}

#[test]
fn surjection_colimit_of_cylinder_pieces() {
    let c = symmetric_cylinder(3).unwrap();
    for k in 1..=3 {
        assert_eq!(trimmed(betti_numbers(&surjection_colimit(&c, k).unwrap().colim)), vec![1]);
    }
    let beta = block_transposition(1, 2);
    assert_eq!(beta, SurjectiveFunction::new(3, vec![1, 2, 0]).unwrap());
}
