//! Normal lax functors on truncated sequence shapes, and icons between
//! them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::functor::{Bundle, BundleMorphism};
use crate::chain::{format_rational, regroup, tensor_map, ChainComplex, ChainMap, QMatrix};
use crate::error::{Error, Result};
use crate::seqcat::{LabeledSeq, SxShapes};

/// A bundle with laxity maps `φ_{s,t}: F(s) ⊗ F(t) -> F(s ⋆ t)` for every
/// concatenable pair within the truncation.
#[derive(Clone, Debug)]
pub struct LaxDiagram {
    bundle: Bundle,
    laxity: HashMap<(LabeledSeq, LabeledSeq), ChainMap>,
}

/// Every concatenable `(s, t)` with `dim s + dim t <= L`, in a fixed order.
pub fn laxity_pairs(shapes: &SxShapes) -> Vec<(LabeledSeq, LabeledSeq)> {
    let n = shapes.objects().len();
    let l = shapes.truncation();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for s in shapes.shape(a, b).sequences() {
                for c in 0..n {
                    for t in shapes.shape(b, c).sequences() {
                        if s.dim() + t.dim() <= l {
                            out.push((s.clone(), t.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

impl LaxDiagram {
    /// Checks that a laxity map is present with the right endpoints for
    /// every pair; the equations are checked by [`validate`].
    pub fn new(bundle: Bundle, laxity: HashMap<(LabeledSeq, LabeledSeq), ChainMap>) -> Result<Self> {
        for (s, t) in laxity_pairs(bundle.shapes()) {
            let phi = laxity.get(&(s.clone(), t.clone())).ok_or_else(|| {
                Error::Structure(format!("missing laxity map for ({s:?}, {t:?})"))
            })?;
            let src = crate::chain::tensor(bundle.value(&s)?, bundle.value(&t)?);
            let st = s.concat(&t)?;
            if phi.source() != &src || phi.target() != bundle.value(&st)? {
                return Err(Error::Structure(format!(
                    "laxity map for ({s:?}, {t:?}) has the wrong endpoints"
                )));
            }
        }
        Ok(LaxDiagram { bundle, laxity })
    }

    pub fn from_fn(bundle: Bundle, mut phi: impl FnMut(&LabeledSeq, &LabeledSeq) -> Result<ChainMap>) -> Result<Self> {
        let mut laxity = HashMap::new();
        for (s, t) in laxity_pairs(bundle.shapes()) {
            let m = phi(&s, &t)?;
            laxity.insert((s, t), m);
        }
        Self::new(bundle, laxity)
    }

    /// The diagram with every laxity map zero.
    pub fn with_zero_laxity(bundle: Bundle) -> Result<Self> {
        let b2 = bundle.clone();
        Self::from_fn(bundle, |s, t| {
            let src = crate::chain::tensor(b2.value(s)?, b2.value(t)?);
            Ok(ChainMap::zero(&src, b2.value(&s.concat(t)?)?))
        })
    }

    pub fn bundle(&self) -> &Bundle {
        &self.bundle
    }

    pub fn shapes(&self) -> &Arc<SxShapes> {
        self.bundle.shapes()
    }

    pub fn truncation(&self) -> usize {
        self.bundle.truncation()
    }

    pub fn value(&self, s: &LabeledSeq) -> Result<&ChainComplex> {
        self.bundle.value(s)
    }

    pub fn phi(&self, s: &LabeledSeq, t: &LabeledSeq) -> Result<&ChainMap> {
        self.laxity
            .get(&(s.clone(), t.clone()))
            .ok_or_else(|| Error::Truncation(format!("no laxity map for ({s:?}, {t:?})")))
    }

    pub fn laxity(&self) -> &HashMap<(LabeledSeq, LabeledSeq), ChainMap> {
        &self.laxity
    }

    /// Overwrites one laxity map; the result is not revalidated.
    pub fn replace_laxity(&mut self, s: &LabeledSeq, t: &LabeledSeq, m: ChainMap) {
        self.laxity.insert((s.clone(), t.clone()), m);
    }

    /// Left-nested iterate `⊗ F(w_i) -> F(w_1 ⋆ ... ⋆ w_l)`.
    pub fn phi_iterated(&self, ws: &[LabeledSeq]) -> Result<ChainMap> {
        let first = ws.first().ok_or_else(|| Error::Structure("empty product of sequences".into()))?;
        let mut acc = ChainMap::identity(self.value(first)?);
        let mut joined = first.clone();
        for w in &ws[1..] {
            let step = self.phi(&joined, w)?;
            acc = step.compose(&tensor_map(&acc, &ChainMap::identity(self.value(w)?)))?;
            joined = joined.concat(w)?;
        }
        Ok(acc)
    }

    /// The structure map of the arrow `u ⋆ v` for arrows into `s'` and `t'`.
    pub(crate) fn concat_map(&self, s: (usize, usize), t: (usize, usize)) -> Result<ChainMap> {
        let (pair, arrow) = concat_arrow(self.shapes(), s, t)?;
        Ok(self.bundle.components()[pair].map(arrow).clone())
    }
}

/// `(pair, arrow)` of `u ⋆ v` given `(pair, arrow)` of `u` and `v`.
pub(crate) fn concat_arrow(shapes: &SxShapes, u: (usize, usize), v: (usize, usize)) -> Result<(usize, usize)> {
    let (us, vs) = (&shapes.shapes()[u.0], &shapes.shapes()[v.0]);
    let (ua, va) = (us.arrow(u.1), vs.arrow(v.1));
    let to = us.seq(ua.to).concat(vs.seq(va.to))?;
    let surj = ua.surjection.concat(&va.surjection);
    let (p, zi) = shapes.locate(&to)?;
    let a = shapes.shapes()[p]
        .find_arrow(zi, &surj)
        .ok_or_else(|| Error::Structure("concatenated arrow missing".into()))?;
    Ok((p, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Complex,
    ChainMap,
    Functoriality,
    Naturality,
    Coherence,
    Icon,
    Equivariance,
}

/// One failed equation, with the two sides in the first degree where they
/// differ.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
    pub degree: Option<usize>,
    pub lhs: Option<Vec<Vec<String>>>,
    pub rhs: Option<Vec<Vec<String>>>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {}", self.kind, self.location)?;
        if let Some(d) = self.degree {
            write!(f, " (degree {d})")?;
        }
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, ": {l:?} != {r:?}")?;
        }
        Ok(())
    }
}

pub(crate) fn matrix_rows(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

pub(crate) fn compare(kind: ViolationKind, location: String, lhs: &ChainMap, rhs: &ChainMap) -> Option<Violation> {
    let len = lhs.components().len().max(rhs.components().len());
    for n in 0..len {
        let (a, b) = (lhs.component(n), rhs.component(n));
        if a != b {
            return Some(Violation {
                kind,
                location,
                degree: Some(n),
                lhs: Some(matrix_rows(&a)),
                rhs: Some(matrix_rows(&b)),
            });
        }
    }
    None
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Option<Violation>) {
        self.violations.extend(v);
    }
}

pub(crate) fn check_complex(c: &ChainComplex) -> Option<(usize, QMatrix)> {
    (1..c.len().saturating_sub(1)).find_map(|k| {
        let dd = &c.boundary(k) * &c.boundary(k + 1);
        (!dd.is_zero()).then_some((k, dd))
    })
}

pub(crate) fn check_square(location: String, f: &ChainMap) -> Option<Violation> {
    f.check_commutes().err().map(|_| {
        let n = (1..f.components().len())
            .find(|&n| &f.component(n - 1) * &f.source().boundary(n) != &f.target().boundary(n) * &f.component(n))
            .unwrap_or(1);
        Violation {
            kind: ViolationKind::ChainMap,
            location,
            degree: Some(n),
            lhs: Some(matrix_rows(&(&f.component(n - 1) * &f.source().boundary(n)))),
            rhs: Some(matrix_rows(&(&f.target().boundary(n) * &f.component(n)))),
        }
    })
}

/// Checks every defining equation of a normal lax functor.
pub fn validate(f: &LaxDiagram) -> ValidationReport {
    let mut report = ValidationReport::default();
    let shapes = f.shapes().clone();
    let names = shapes.objects().clone();
    let show = |s: &LabeledSeq| names.format_seq(s);
    validate_bundle_into(f.bundle(), &mut report);
    for ((s, t), phi) in f.laxity() {
        report.push(check_square(format!("laxity {}⊗{}", show(s), show(t)), phi));
    }
    if !report.passed() {
        return report;
    }
    // Naturality in each variable along elementary arrows.
    for (s, t) in laxity_pairs(&shapes) {
        let (ps, si) = shapes.locate(&s).expect("in shape");
        let (pt, ti) = shapes.locate(&t).expect("in shape");
        let phi = f.phi(&s, &t).expect("laxity present");
        let (hs, ht) = (&shapes.shapes()[ps], &shapes.shapes()[pt]);
        let comps = f.bundle().components();
        for u in hs.arrows_from(si) {
            let ua = hs.arrow(u);
            if !ua.is_elementary() || hs.seq(ua.to).dim() + t.dim() > shapes.truncation() {
                continue;
            }
            let s2 = hs.seq(ua.to);
            let lhs = f.phi(s2, &t).expect("laxity present").compose(&tensor_map(
                comps[ps].map(u),
                &ChainMap::identity(f.value(&t).expect("value")),
            ));
            let rhs = f
                .concat_map((ps, u), (pt, ht.identity_arrow(ti)))
                .and_then(|m| m.compose(phi));
            if let (Ok(l), Ok(r)) = (lhs, rhs) {
                report.push(compare(
                    ViolationKind::Naturality,
                    format!("laxity {}⊗{} along {} -> {} on the left", show(&s), show(&t), show(&s), show(s2)),
                    &l,
                    &r,
                ));
            }
        }
        for v in ht.arrows_from(ti) {
            let va = ht.arrow(v);
            if !va.is_elementary() || s.dim() + ht.seq(va.to).dim() > shapes.truncation() {
                continue;
            }
            let t2 = ht.seq(va.to);
            let lhs = f.phi(&s, t2).expect("laxity present").compose(&tensor_map(
                &ChainMap::identity(f.value(&s).expect("value")),
                comps[pt].map(v),
            ));
            let rhs = f
                .concat_map((ps, hs.identity_arrow(si)), (pt, v))
                .and_then(|m| m.compose(phi));
            if let (Ok(l), Ok(r)) = (lhs, rhs) {
                report.push(compare(
                    ViolationKind::Naturality,
                    format!("laxity {}⊗{} along {} -> {} on the right", show(&s), show(&t), show(&t), show(t2)),
                    &l,
                    &r,
                ));
            }
        }
    }
    // Associativity of the laxity maps.
    for (s, t) in laxity_pairs(&shapes) {
        let st = s.concat(&t).expect("concatenable");
        for (t2, u) in laxity_pairs(&shapes) {
            if t2 != t || st.dim() + u.dim() > shapes.truncation() {
                continue;
            }
            let fs = [
                f.value(&s).expect("value").clone(),
                f.value(&t).expect("value").clone(),
                f.value(&u).expect("value").clone(),
            ];
            let tu = t.concat(&u).expect("concatenable");
            let lhs = f.phi(&st, &u).expect("laxity").compose(&tensor_map(
                f.phi(&s, &t).expect("laxity"),
                &ChainMap::identity(&fs[2]),
            ));
            let rhs = regroup(&fs, &[1, 2]).and_then(|r| {
                let inner = tensor_map(&ChainMap::identity(&fs[0]), f.phi(&t, &u).expect("laxity"));
                f.phi(&s, &tu).expect("laxity").compose(&inner.compose(&r)?)
            });
            if let (Ok(l), Ok(r)) = (lhs, rhs) {
                report.push(compare(
                    ViolationKind::Coherence,
                    format!("laxity {}⊗{}⊗{}", show(&s), show(&t), show(&u)),
                    &l,
                    &r,
                ));
            }
        }
    }
    report
}

/// Complexes, chain-map squares and functoriality of a bundle.
pub fn validate_bundle(b: &Bundle) -> ValidationReport {
    let mut report = ValidationReport::default();
    validate_bundle_into(b, &mut report);
    report
}

fn validate_bundle_into(b: &Bundle, report: &mut ValidationReport) {
    let names = b.shapes().objects().clone();
    for comp in b.components() {
        let shape = comp.shape();
        for (i, c) in comp.values().iter().enumerate() {
            if let Some((k, dd)) = check_complex(c) {
                report.violations.push(Violation {
                    kind: ViolationKind::Complex,
                    location: format!("value at {}", names.format_seq(shape.seq(i))),
                    degree: Some(k),
                    lhs: Some(matrix_rows(&dd)),
                    rhs: None,
                });
            }
        }
        for &g in shape.generating_arrows() {
            let a = shape.arrow(g);
            let loc = format!(
                "structure map {} -> {}",
                names.format_seq(shape.seq(a.from)),
                names.format_seq(shape.seq(a.to))
            );
            report.push(check_square(loc, comp.map(g)));
        }
        for f in 0..shape.arrows().len() {
            for g in shape.arrows_from(shape.arrow(f).to) {
                if shape.arrow(f).is_identity() || shape.arrow(g).is_identity() {
                    continue;
                }
                let h = shape.compose(f, g).expect("composable");
                let Ok(lhs) = comp.map(g).compose(comp.map(f)) else { continue };
                let (af, ag) = (shape.arrow(f), shape.arrow(g));
                report.push(compare(
                    ViolationKind::Functoriality,
                    format!(
                        "{} -> {} -> {}",
                        names.format_seq(shape.seq(af.from)),
                        names.format_seq(shape.seq(af.to)),
                        names.format_seq(shape.seq(ag.to))
                    ),
                    &lhs,
                    comp.map(h),
                ));
            }
        }
    }
}

/// An icon: per-sequence maps commuting with structure and laxity maps.
#[derive(Clone, Debug)]
pub struct LaxMorphism {
    pub source: LaxDiagram,
    pub target: LaxDiagram,
    /// `components[pair][seq]`.
    pub components: Vec<Vec<ChainMap>>,
}

impl LaxMorphism {
    pub fn new(source: LaxDiagram, target: LaxDiagram, components: Vec<Vec<ChainMap>>) -> Result<Self> {
        let m = LaxMorphism { source, target, components };
        let report = m.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::NotChainMap(v.to_string()));
        }
        Ok(m)
    }

    pub fn new_unchecked(source: LaxDiagram, target: LaxDiagram, components: Vec<Vec<ChainMap>>) -> Self {
        LaxMorphism { source, target, components }
    }

    pub fn identity(f: &LaxDiagram) -> Self {
        let components = BundleMorphism::identity(f.bundle()).components;
        LaxMorphism { source: f.clone(), target: f.clone(), components }
    }

    pub fn underlying(&self) -> BundleMorphism {
        BundleMorphism {
            source: self.source.bundle().clone(),
            target: self.target.bundle().clone(),
            components: self.components.clone(),
        }
    }

    pub fn component(&self, s: &LabeledSeq) -> Result<&ChainMap> {
        let (p, i) = self.source.shapes().locate(s)?;
        Ok(&self.components[p][i])
    }

    pub fn maps(&self) -> impl Iterator<Item = &ChainMap> {
        self.components.iter().flatten()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if let Err(e) = self.underlying().check() {
            report.violations.push(Violation {
                kind: ViolationKind::Icon,
                location: e.to_string(),
                degree: None,
                lhs: None,
                rhs: None,
            });
            return report;
        }
        let names = self.source.shapes().objects().clone();
        for (s, t) in laxity_pairs(self.source.shapes()) {
            let st = s.concat(&t).expect("concatenable");
            let lhs = self
                .component(&st)
                .and_then(|c| c.compose(self.source.phi(&s, &t)?));
            let rhs = self.component(&s).and_then(|a| {
                let b = self.component(&t)?;
                self.target.phi(&s, &t)?.compose(&tensor_map(a, b))
            });
            if let (Ok(l), Ok(r)) = (lhs, rhs) {
                report.push(compare(
                    ViolationKind::Icon,
                    format!("laxity {}⊗{}", names.format_seq(&s), names.format_seq(&t)),
                    &l,
                    &r,
                ));
            }
        }
        report
    }

    pub fn compose(&self, inner: &LaxMorphism) -> Result<LaxMorphism> {
        let b = self.underlying().compose(&inner.underlying())?;
        Ok(LaxMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            components: b.components,
        })
    }
}
