//! Commutative strictification: colimits over all surjections up to a
//! cut, a multiplication induced by the laxity, and its exact commutativity.

use std::collections::BTreeMap;

use serde::Serialize;

use super::functor::{is_cosegal_monoid, is_latching_injective, restrict_to_deltaepi, validate_sym, SymLaxFunctor};
use crate::chain::{betti_numbers, braiding, finite_colimit, is_quasi_iso, regroup, tensor_map, ChainComplex, ChainMap, Colimit, DiagramArrow};
use crate::error::{Error, Result};
use crate::seqcat::ObjectSet;
use crate::strictify::semicat::SemiCategory;
use crate::strictify::tower::{induced_product, truncated_colimits, HomDiagnostics, Level, StrictificationResult};

/// The colimit of `C(1), ..., C(k)` along every surjection between them.
/// Summand `i` of the presentation is `C(i + 1)`.
pub fn surjection_colimit(c: &SymLaxFunctor, k: usize) -> Result<Colimit> {
    let shape = c.shape();
    let cat = shape.category();
    let arrows: Vec<DiagramArrow> = cat
        .generating()
        .iter()
        .filter(|&&g| shape.function(g).source() <= k)
        .map(|&g| {
            let m = cat.morphism(g);
            DiagramArrow { source: m.source, target: m.target, map: c.maps()[g].clone() }
        })
        .collect();
    finite_colimit(&c.values()[..k], &arrows)
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativeDiagnostics {
    pub betti_cut: Vec<usize>,
    pub betti_full: Vec<usize>,
    /// `C_K -> C_{2K}` is a quasi-isomorphism.
    pub comparison_quasi_iso: bool,
    /// Every cocone map `C(n) -> C_N` is a quasi-isomorphism.
    pub sigma_quasi_iso: bool,
    /// The map from the colimit over monotone surjections up to `K` is a
    /// quasi-isomorphism.
    pub monotone_comparison_quasi_iso: bool,
    pub cosegal: bool,
    /// Latching maps are injective up to the cut.
    pub latching_injective: bool,
    /// Latching maps are injective up to the truncation.
    pub latching_injective_full: bool,
}

#[derive(Clone, Debug)]
pub struct CommutativeMonoidResult {
    /// The one-object strictification built from the colimits over all
    /// surjections; its composition is the multiplication.
    pub strict: StrictificationResult,
    /// `mult ∘ braiding = mult` on `C_K ⊗ C_K -> C_{2K}`.
    pub commutative: bool,
    /// Colimit over monotone surjections up to `K`, into `C_K`.
    pub monotone_comparison: ChainMap,
    pub diagnostics: CommutativeDiagnostics,
}

impl CommutativeMonoidResult {
    pub fn carrier(&self) -> &ChainComplex {
        self.strict.hom(0, 0)
    }

    /// `C_K ⊗ C_K -> C_{2K}`.
    pub fn mult(&self) -> &ChainMap {
        &self.strict.composition[0]
    }

    /// Cocone maps `C(n) -> C_N`.
    pub fn sigma(&self) -> &[ChainMap] {
        &self.strict.sigma[0]
    }

    pub fn associative(&self) -> Option<bool> {
        self.strict.associativity
    }

    /// The monoid on `C_K` when `C_K -> C_{2K}` is an isomorphism.
    pub fn monoid(&self) -> Result<Option<SemiCategory>> {
        self.strict.semi()
    }

    /// The monoid on the homology of `C_K` when `C_K -> C_{2K}` is a
    /// quasi-isomorphism.
    pub fn homology_monoid(&self) -> Result<Option<SemiCategory>> {
        self.strict.homology_semi()
    }

    /// Commutative, associative, and every `σ` component a
    /// quasi-isomorphism. Fails with a precondition error unless the input
    /// is co-Segal with injective latching maps up to the cut.
    pub fn verdict(&self) -> Result<bool> {
        let d = &self.diagnostics;
        if !d.cosegal {
            return Err(Error::Precondition("the structure maps are not all quasi-isomorphisms".into()));
        }
        if !d.latching_injective {
            return Err(Error::Precondition(format!("a latching map up to {} is not injective", self.strict.cut)));
        }
        Ok(self.commutative && self.associative() != Some(false) && d.sigma_quasi_iso)
    }
}

/// `x ⊗ y ↦ xy` is symmetric with the Koszul sign, on a one-object monoid.
pub fn is_commutative(m: &SemiCategory) -> Result<bool> {
    let (a, comp) = (m.hom(0, 0), m.comp(0, 0, 0));
    Ok(&comp.compose(&braiding(a, a))? == comp)
}

fn level(k: usize, colim: Colimit) -> Level {
    Level { k, colimits: vec![colim] }
}

/// `⊗ C_{k_i} -> C_{Σ k_i}`, each block through iterated laxity and the
/// cocone.
fn product(c: &SymLaxFunctor, factors: &[&Level], target: &Level) -> Result<ChainMap> {
    let colimits: Vec<&Colimit> = factors.iter().map(|l| &l.colimits[0]).collect();
    let t = &target.colimits[0];
    let label = format!("{:?}", factors.iter().map(|l| l.k).collect::<Vec<_>>());
    induced_product(
        &colimits,
        &t.colim,
        |idx| {
            let sizes: Vec<usize> = idx.iter().map(|i| i + 1).collect();
            let total: usize = sizes.iter().sum();
            t.cocone[total - 1].compose(&c.laxity_iterated(&sizes)?)
        },
        &label,
    )
}

/// Rejects inputs that fail [`validate_sym`], then builds `C_K`, the
/// multiplication into `C_{2K}`, and checks it for commutativity and (when
/// `3K <= N`) associativity.
pub fn strictify_commutative(c: &SymLaxFunctor, cut: usize) -> Result<CommutativeMonoidResult> {
    let big_n = c.truncation();
    if cut == 0 || 2 * cut > big_n {
        return Err(Error::Truncation(format!("cut {cut} needs 1 <= 2K <= N = {big_n}")));
    }
    let report = validate_sym(c);
    if let Some(v) = report.violations.first() {
        return Err(Error::Structure(format!("not a symmetric lax functor: {v}")));
    }
    let mut levels = BTreeMap::new();
    for k in [cut, 2 * cut, 3 * cut, big_n] {
        if k <= big_n && !levels.contains_key(&k) {
            levels.insert(k, level(k, surjection_colimit(c, k)?));
        }
    }
    let (lk, l2k, ll) = (&levels[&cut], &levels[&(2 * cut)], &levels[&big_n]);
    let mult = product(c, &[lk, lk], l2k)?;
    let carrier = lk.colimits[0].colim.clone();
    let commutative = mult.compose(&braiding(&carrier, &carrier))? == mult;
    let associativity = match levels.get(&(3 * cut)) {
        Some(l3k) => {
            let g1 = product(c, &[l2k, lk], l3k)?.compose(&tensor_map(&mult, &ChainMap::identity(&carrier)))?;
            let g2 = product(c, &[lk, l2k], l3k)?
                .compose(&tensor_map(&ChainMap::identity(&carrier), &mult))?
                .compose(&regroup(&[carrier.clone(), carrier.clone(), carrier.clone()], &[1, 2])?)?;
            let g3 = product(c, &[lk, lk, lk], l3k)?;
            Some(g1 == g2 && g2 == g3)
        }
        None => None,
    };
    let into = |to: &Level| lk.colimits[0].induced(&to.colimits[0].colim, &to.colimits[0].cocone[..cut]);
    let comparison = into(l2k)?;
    let comparison_full = into(ll)?;
    let sigma = ll.colimits[0].cocone.clone();

    let restricted = restrict_to_deltaepi(c)?;
    let monotone = truncated_colimits(&restricted, cut)?;
    let monotone_comparison = monotone.colimits[0].induced(&carrier, &lk.colimits[0].cocone)?;

    let diagnostics = CommutativeDiagnostics {
        betti_cut: betti_numbers(&carrier),
        betti_full: betti_numbers(&ll.colimits[0].colim),
        comparison_quasi_iso: is_quasi_iso(&comparison),
        sigma_quasi_iso: sigma.iter().all(is_quasi_iso),
        monotone_comparison_quasi_iso: is_quasi_iso(&monotone_comparison),
        cosegal: is_cosegal_monoid(c)?,
        latching_injective: is_latching_injective(c, cut)?,
        latching_injective_full: is_latching_injective(c, big_n)?,
    };
    let hom = HomDiagnostics {
        source: "*".into(),
        target: "*".into(),
        betti_cut: diagnostics.betti_cut.clone(),
        betti_full: diagnostics.betti_full.clone(),
        comparison_quasi_iso: diagnostics.comparison_quasi_iso,
        sigma_quasi_iso: diagnostics.sigma_quasi_iso,
    };
    let strict = StrictificationResult {
        objects: ObjectSet::new(["*"])?,
        cut,
        truncation: big_n,
        levels,
        composition: vec![mult],
        comparison: vec![comparison],
        comparison_full: vec![comparison_full],
        sigma: vec![sigma],
        associativity,
        diagnostics: vec![hom],
    };
    Ok(CommutativeMonoidResult { strict, commutative, monotone_comparison, diagnostics })
}
