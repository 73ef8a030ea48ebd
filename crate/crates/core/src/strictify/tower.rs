//! Strictification by truncated colimits.
//!
//! `C_k(a, b)` is the colimit of the `(a, b)` component over sequences of
//! dimension at most `k`. Laxity maps blocks of the presentations into
//! `C_{i+j}`, which gives `C_i ⊗ C_j -> C_{i+j}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::semicat::{graded_homology, inflate, lift_map, on_classes, SemiCategory};
use crate::chain::{
    betti_numbers, finite_colimit, induced_map, is_quasi_iso, regroup, tensor_all, tensor_all_maps, tensor_map,
    ChainComplex, ChainMap, Colimit, DiagramArrow, DirectSum, Homology,
};
use crate::error::{Error, Result};
use crate::laxdiag::{is_cosegal, is_excellent, is_reedy_cofibrant, is_u_cofibrant_off_diagonal, LaxDiagram, LaxMorphism};
use crate::seqcat::{LabeledSeq, ObjectSet, SxShapes};

/// The colimits `C_k(a, b)` for one `k`, by pair index. The presentation
/// of each lists the sequences of dimension at most `k` in shape order.
#[derive(Clone, Debug)]
pub struct Level {
    pub k: usize,
    pub colimits: Vec<Colimit>,
}

pub fn truncated_colimits(f: &LaxDiagram, k: usize) -> Result<Level> {
    let colimits = f
        .bundle()
        .components()
        .iter()
        .map(|c| {
            let shape = c.shape();
            let m = shape.sequences().iter().take_while(|s| s.dim() <= k).count();
            let arrows: Vec<DiagramArrow> = shape
                .generating_arrows()
                .iter()
                .filter(|&&g| shape.arrow(g).to < m)
                .map(|&g| DiagramArrow {
                    source: shape.arrow(g).from,
                    target: shape.arrow(g).to,
                    map: c.map(g).clone(),
                })
                .collect();
            finite_colimit(&c.values()[..m], &arrows)
        })
        .collect::<Result<_>>()?;
    Ok(Level { k, colimits })
}

/// `⊗ C_i -> target` from a map on each block `P_i1 ⊗ ... ⊗ P_ir` of the
/// product of presentations, after checking that the sum kills the
/// relations in every slot. `block` receives the summand index per slot.
pub(crate) fn induced_product(
    factors: &[&Colimit],
    target: &ChainComplex,
    mut block: impl FnMut(&[usize]) -> Result<ChainMap>,
    label: &str,
) -> Result<ChainMap> {
    let sums: Vec<&DirectSum> = factors.iter().map(|c| &c.presentation).collect();
    let source = tensor_all(&sums.iter().map(|s| s.total.clone()).collect::<Vec<_>>());
    let mut phi = ChainMap::zero(&source, target);
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for s in &sums {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..s.summands.len()).map(move |k| {
                    let mut t2 = t.clone();
                    t2.push(k);
                    t2
                })
            })
            .collect();
    }
    for t in tuples {
        let projections: Vec<ChainMap> = t.iter().zip(&sums).map(|(&k, s)| s.projection(k)).collect();
        phi = phi.add(&block(&t)?.compose(&tensor_all_maps(&projections))?)?;
    }
    for slot in 0..factors.len() {
        let maps: Vec<ChainMap> = factors
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == slot {
                    c.cokernel.relation().clone()
                } else {
                    ChainMap::identity(c.cokernel.relation().target())
                }
            })
            .collect();
        if !phi.compose(&tensor_all_maps(&maps))?.is_zero() {
            return Err(Error::IllDefined(format!(
                "product {label} does not vanish on the relations of factor {}",
                slot + 1
            )));
        }
    }
    let sections: Vec<ChainMap> = factors.iter().map(|c| c.cokernel.section()).collect();
    let m = phi.compose(&tensor_all_maps(&sections))?;
    ChainMap::new(m.source().clone(), m.target().clone(), m.components().to_vec())
}

/// The composite `⊗ C_{k_i}(a_i, a_{i+1}) -> C_{Σ k_i}(a_1, a_r)`: each
/// block `F(s_1) ⊗ ... ⊗ F(s_r)` goes through the iterated laxity and the
/// cocone at `s_1 ⋆ ... ⋆ s_r`.
fn quotient_product(f: &LaxDiagram, factors: &[(&Level, usize)], target: &Level, label: &str) -> Result<ChainMap> {
    let shapes = f.shapes();
    let n = shapes.objects().len();
    let (first, last) = (factors[0].1, factors[factors.len() - 1].1);
    let tcol = &target.colimits[shapes.pair_index(first / n, last % n)];
    let colimits: Vec<&Colimit> = factors.iter().map(|(l, p)| &l.colimits[*p]).collect();
    induced_product(
        &colimits,
        &tcol.colim,
        |t| {
            let seqs: Vec<LabeledSeq> = t
                .iter()
                .zip(factors)
                .map(|(&i, (_, p))| shapes.shapes()[*p].seq(i).clone())
                .collect();
            let mut joined = seqs[0].clone();
            for s in &seqs[1..] {
                joined = joined.concat(s)?;
            }
            let (_, ti) = shapes.locate(&joined)?;
            tcol.cocone[ti].compose(&f.phi_iterated(&seqs)?)
        },
        label,
    )
}

/// Betti numbers and verdicts for one hom.
#[derive(Clone, Debug, Serialize)]
pub struct HomDiagnostics {
    pub source: String,
    pub target: String,
    pub betti_cut: Vec<usize>,
    pub betti_full: Vec<usize>,
    /// `C_K -> C_{2K}` is a quasi-isomorphism.
    pub comparison_quasi_iso: bool,
    /// Every `σ` component into this hom is a quasi-isomorphism.
    pub sigma_quasi_iso: bool,
}

#[derive(Clone, Debug)]
pub struct StrictificationResult {
    pub objects: ObjectSet,
    pub cut: usize,
    pub truncation: usize,
    pub levels: BTreeMap<usize, Level>,
    /// `C_K(a, b) ⊗ C_K(b, c) -> C_{2K}(a, c)` by `(a * n + b) * n + c`.
    pub composition: Vec<ChainMap>,
    /// `C_K -> C_{2K}` by pair.
    pub comparison: Vec<ChainMap>,
    /// `C_K -> C_L` by pair.
    pub comparison_full: Vec<ChainMap>,
    /// Cocone maps `F(z) -> C_L(a, b)`, by pair and sequence.
    pub sigma: Vec<Vec<ChainMap>>,
    /// `γ_1 = γ_2 = γ_3` on every quadruple; checked when `3K <= L`.
    pub associativity: Option<bool>,
    pub diagnostics: Vec<HomDiagnostics>,
}

fn induced_between(from: &Level, to: &Level) -> Result<Vec<ChainMap>> {
    from.colimits
        .iter()
        .zip(&to.colimits)
        .map(|(a, b)| a.induced(&b.colim, &b.cocone[..a.cocone.len()]))
        .collect()
}

pub fn strictify(f: &LaxDiagram, cut: usize) -> Result<StrictificationResult> {
    let l = f.truncation();
    if cut == 0 || 2 * cut > l {
        return Err(Error::Truncation(format!("cut {cut} needs 1 <= 2K <= L = {l}")));
    }
    let shapes: &SxShapes = f.shapes();
    let objects = shapes.objects().clone();
    let n = objects.len();
    let mut levels = BTreeMap::new();
    for k in [cut, 2 * cut, 3 * cut, l] {
        if k <= l && !levels.contains_key(&k) {
            levels.insert(k, truncated_colimits(f, k)?);
        }
    }
    let (lk, l2k, ll) = (&levels[&cut], &levels[&(2 * cut)], &levels[&l]);
    let name = |a: usize, b: usize, c: usize| format!("{}{}{}", objects.name(a), objects.name(b), objects.name(c));

    let mut composition = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let factors = [(lk, a * n + b), (lk, b * n + c)];
                composition.push(quotient_product(f, &factors, l2k, &name(a, b, c))?);
            }
        }
    }

    let associativity = if 3 * cut <= l {
        let l3k = &levels[&(3 * cut)];
        let mut holds = true;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let label = format!("{}{}", name(a, b, c), objects.name(d));
                        let (ab, bc, cd) = (a * n + b, b * n + c, c * n + d);
                        let (x, y, z) = (&lk.colimits[ab].colim, &lk.colimits[bc].colim, &lk.colimits[cd].colim);
                        let left_outer = quotient_product(f, &[(l2k, a * n + c), (lk, cd)], l3k, &label)?;
                        let right_outer = quotient_product(f, &[(lk, ab), (l2k, b * n + d)], l3k, &label)?;
                        let g1 = left_outer.compose(&tensor_map(&composition[ab * n + c], &ChainMap::identity(z)))?;
                        let g2 = right_outer
                            .compose(&tensor_map(&ChainMap::identity(x), &composition[bc * n + d]))?
                            .compose(&regroup(&[x.clone(), y.clone(), z.clone()], &[1, 2])?)?;
                        let g3 = quotient_product(f, &[(lk, ab), (lk, bc), (lk, cd)], l3k, &label)?;
                        if g1 != g2 || g2 != g3 {
                            holds = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        Some(holds)
    } else {
        None
    };

    let comparison = induced_between(lk, l2k)?;
    let comparison_full = induced_between(lk, ll)?;
    let sigma: Vec<Vec<ChainMap>> = ll.colimits.iter().map(|c| c.cocone.clone()).collect();
    let diagnostics = (0..n * n)
        .map(|p| HomDiagnostics {
            source: objects.name(p / n).to_string(),
            target: objects.name(p % n).to_string(),
            betti_cut: betti_numbers(&lk.colimits[p].colim),
            betti_full: betti_numbers(&ll.colimits[p].colim),
            comparison_quasi_iso: is_quasi_iso(&comparison[p]),
            sigma_quasi_iso: sigma[p].iter().all(is_quasi_iso),
        })
        .collect();

    Ok(StrictificationResult {
        objects,
        cut,
        truncation: l,
        levels,
        composition,
        comparison,
        comparison_full,
        sigma,
        associativity,
        diagnostics,
    })
}

impl StrictificationResult {
    /// `C_K(a, b)`.
    pub fn hom(&self, a: usize, b: usize) -> &ChainComplex {
        &self.levels[&self.cut].colimits[a * self.objects.len() + b].colim
    }

    fn composition_through(&self, fix: impl Fn(&ChainMap) -> Result<ChainMap>) -> Result<Vec<ChainMap>> {
        let n = self.objects.len();
        let back: Vec<ChainMap> = self.comparison.iter().map(&fix).collect::<Result<_>>()?;
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    comp.push(back[a * n + c].compose(&self.composition[(a * n + b) * n + c])?);
                }
            }
        }
        Ok(comp)
    }

    /// The strict semi-category on `C_K`, when every `C_K -> C_{2K}` is an
    /// isomorphism.
    pub fn semi(&self) -> Result<Option<SemiCategory>> {
        if !self.comparison.iter().all(ChainMap::is_iso) {
            return Ok(None);
        }
        let comp = self.composition_through(|c| c.inverse().ok_or_else(|| Error::Structure("comparison not invertible".into())))?;
        let n = self.objects.len();
        let homs = (0..n * n).map(|p| self.hom(p / n, p % n).clone()).collect();
        SemiCategory::new(self.objects.clone(), homs, comp).map(Some)
    }

    /// The semi-category on the homology of `C_K`, when every
    /// `C_K -> C_{2K}` is a quasi-isomorphism.
    pub fn homology_semi(&self) -> Result<Option<SemiCategory>> {
        if !self.comparison.iter().all(is_quasi_iso) {
            return Ok(None);
        }
        let n = self.objects.len();
        let cut = &self.levels[&self.cut];
        let double = &self.levels[&(2 * self.cut)];
        let hk: Vec<Homology> = cut.colimits.iter().map(|c| Homology::of(&c.colim)).collect();
        let h2k: Vec<Homology> = double.colimits.iter().map(|c| Homology::of(&c.colim)).collect();
        let graded: Vec<ChainComplex> = hk.iter().map(graded_homology).collect();
        let graded2: Vec<ChainComplex> = h2k.iter().map(graded_homology).collect();
        let lifts: Vec<ChainMap> = (0..n * n)
            .map(|p| lift_map(&hk[p], &graded[p], &cut.colimits[p].colim))
            .collect::<Result<_>>()?;
        // H(C_{2K}) -> H(C_K), inverse of the comparison on classes
        let back: Vec<ChainMap> = (0..n * n)
            .map(|p| {
                let comps = (0..graded[p].len().max(graded2[p].len()))
                    .map(|d| {
                        induced_map(&self.comparison[p], &hk[p], &h2k[p], d)
                            .inverse()
                            .ok_or_else(|| Error::Structure("comparison not a quasi-isomorphism".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ChainMap::new_unchecked(graded2[p].clone(), graded[p].clone(), comps)
            })
            .collect::<Result<_>>()?;
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ab, bc, ac) = (a * n + b, b * n + c, a * n + c);
                    let on_cycles = self.composition[ab * n + c].compose(&tensor_map(&lifts[ab], &lifts[bc]))?;
                    let classes = on_classes(&on_cycles, &h2k[ac], &graded2[ac])?;
                    comp.push(back[ac].compose(&classes)?);
                }
            }
        }
        SemiCategory::new(self.objects.clone(), graded, comp).map(Some)
    }

    /// `σ` as a morphism `F -> inflate(semi)`, when `C_K -> C_L` and
    /// `C_K -> C_{2K}` are isomorphisms.
    pub fn sigma_morphism(&self, f: &LaxDiagram) -> Result<Option<LaxMorphism>> {
        let Some(semi) = self.semi()? else {
            return Ok(None);
        };
        let inverses: Option<Vec<ChainMap>> = self.comparison_full.iter().map(ChainMap::inverse).collect();
        let Some(inverses) = inverses else {
            return Ok(None);
        };
        let target = inflate(&semi, self.truncation)?;
        let components = self
            .sigma
            .iter()
            .zip(&inverses)
            .map(|(row, inv)| row.iter().map(|s| inv.compose(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        LaxMorphism::new(f.clone(), target, components).map(Some)
    }

    /// Every component of `σ` is a quasi-isomorphism.
    pub fn sigma_is_we_proj(&self) -> bool {
        self.diagnostics.iter().all(|d| d.sigma_quasi_iso)
    }

    /// Every component of `σ` between distinct objects is a
    /// quasi-isomorphism.
    pub fn sigma_is_we_ex(&self) -> bool {
        self.diagnostics.iter().filter(|d| d.source != d.target).all(|d| d.sigma_quasi_iso)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Weak equivalences on every hom.
    Proj,
    /// Weak equivalences on homs between distinct objects.
    Ex,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiStrictVerdict {
    pub mode: Mode,
    pub cut: usize,
    pub homs: Vec<HomDiagnostics>,
    /// Checked when `3K <= L`.
    pub associativity: Option<bool>,
    pub passed: bool,
}

fn first_failing_map(f: &LaxDiagram, off_diagonal_only: bool) -> Option<String> {
    let names = f.shapes().objects();
    for c in f.bundle().components() {
        let shape = c.shape();
        let (a, b) = shape.endpoints();
        if off_diagonal_only && a == b {
            continue;
        }
        for &g in shape.generating_arrows() {
            if !is_quasi_iso(c.map(g)) {
                let ar = shape.arrow(g);
                return Some(format!(
                    "{} -> {}",
                    names.format_seq(shape.seq(ar.from)),
                    names.format_seq(shape.seq(ar.to))
                ));
            }
        }
    }
    None
}

/// Fails with a precondition error naming the offending map or hom unless
/// `f` satisfies the hypotheses of `mode`.
pub fn check_quasi_strict_hypotheses(f: &LaxDiagram, mode: Mode) -> Result<()> {
    match mode {
        Mode::Proj => {
            if !is_excellent(f, None)? {
                return Err(Error::Precondition("the diagram is not U-cofibrant".into()));
            }
            if !is_cosegal(f) {
                let at = first_failing_map(f, false).unwrap_or_default();
                return Err(Error::Precondition(format!("not co-Segal: {at} is not a quasi-isomorphism")));
            }
        }
        Mode::Ex => {
            if let Some(at) = first_failing_map(f, true) {
                return Err(Error::Precondition(format!("{at} is not a quasi-isomorphism")));
            }
            if !is_u_cofibrant_off_diagonal(f)? {
                let names = f.shapes().objects();
                for c in f.bundle().components() {
                    let (a, b) = c.shape().endpoints();
                    if a != b && !is_reedy_cofibrant(c)? {
                        return Err(Error::Precondition(format!(
                            "the hom {}{} is not cofibrant",
                            names.name(a),
                            names.name(b)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

impl QuasiStrictVerdict {
    pub fn from_result(result: &StrictificationResult, mode: Mode) -> Self {
        let passed = match mode {
            Mode::Proj => result.sigma_is_we_proj(),
            Mode::Ex => result.sigma_is_we_ex(),
        };
        QuasiStrictVerdict {
            mode,
            cut: result.cut,
            homs: result.diagnostics.clone(),
            associativity: result.associativity,
            passed,
        }
    }
}

/// Checks the hypotheses for `mode`, strictifies, and reports whether `σ`
/// is a weak equivalence of that mode.
pub fn verify_quasi_strictification(f: &LaxDiagram, cut: usize, mode: Mode) -> Result<QuasiStrictVerdict> {
    check_quasi_strict_hypotheses(f, mode)?;
    Ok(QuasiStrictVerdict::from_result(&strictify(f, cut)?, mode))
}
