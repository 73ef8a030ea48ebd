//! Latching and lax-latching objects, and the predicates built on them.

use super::diagram::{LaxDiagram, LaxMorphism};
use super::functor::{Bundle, HomFunctor};
use crate::chain::{finite_colimit, is_quasi_iso, regroup, tensor_all, tensor_all_maps, ChainComplex, ChainMap, Colimit, DiagramArrow};
use crate::error::{Error, Result};
use crate::seqcat::{FiniteCategory, LabeledSeq, LaxLatchMorphism, LaxLatchingCategory};

/// The classical latching object of one hom functor at one sequence.
#[derive(Clone, Debug)]
pub struct Latching {
    pub base: LabeledSeq,
    pub colimit: Colimit,
    pub canonical: ChainMap,
}

/// The latching object at `z` of a diagram on a finite direct category,
/// given by its values and one map per morphism.
pub fn category_latching(cat: &FiniteCategory, values: &[ChainComplex], maps: &[ChainMap], z: usize) -> Result<(Colimit, ChainMap)> {
    let lat = cat.latching(z);
    let lat_values: Vec<ChainComplex> = lat.objects.iter().map(|&u| values[cat.morphism(u).source].clone()).collect();
    let arrows: Vec<DiagramArrow> = lat
        .morphisms
        .iter()
        .map(|m| DiagramArrow { source: m.from, target: m.to, map: maps[m.arrow].clone() })
        .collect();
    let colimit = finite_colimit(&lat_values, &arrows)?;
    let legs: Vec<ChainMap> = lat.objects.iter().map(|&u| maps[u].clone()).collect();
    let canonical = colimit.induced(&values[z], &legs)?;
    Ok((colimit, canonical))
}

pub fn hom_latching(f: &HomFunctor, z: usize) -> Result<Latching> {
    let shape = f.shape();
    shape.latching_category(z)?;
    let (colimit, canonical) = category_latching(shape.category(), f.values(), f.maps(), z)?;
    Ok(Latching { base: shape.seq(z).clone(), colimit, canonical })
}

pub fn bundle_latching(b: &Bundle, z: &LabeledSeq) -> Result<Latching> {
    let (p, zi) = b.shapes().locate(z)?;
    hom_latching(&b.components()[p], zi)
}

/// Latching and lax-latching objects of a lax diagram at `z`, with the
/// comparison `delta` between them.
#[derive(Clone, Debug)]
pub struct LatchingData {
    pub base: LabeledSeq,
    pub latch: ChainComplex,
    pub canonical_map: ChainMap,
    pub lax_latch: ChainComplex,
    pub delta: ChainMap,
    pub lax_canonical: ChainMap,
}

impl LatchingData {
    /// `lax_canonical ∘ delta == canonical_map`.
    pub fn factorization_holds(&self) -> bool {
        self.lax_canonical.compose(&self.delta).is_ok_and(|m| m == self.canonical_map)
    }
}

pub fn latching(f: &LaxDiagram, z: &LabeledSeq) -> Result<LatchingData> {
    let shapes = f.shapes();
    let classical = bundle_latching(f.bundle(), z)?;
    let cat = LaxLatchingCategory::new(z, shapes)?;
    let (zp, zi) = shapes.locate(z)?;
    let fz = f.value(z)?;

    // the sequences w_i of every object
    let sources: Vec<Vec<LabeledSeq>> = cat
        .objects
        .iter()
        .map(|o| {
            o.pieces
                .iter()
                .map(|ps| {
                    let sh = &shapes.shapes()[ps.pair];
                    sh.seq(sh.arrow(ps.arrow).from).clone()
                })
                .collect()
        })
        .collect();
    let factor_values = |ws: &[LabeledSeq]| -> Result<Vec<ChainComplex>> { ws.iter().map(|w| f.value(w).cloned()).collect() };
    let values = sources
        .iter()
        .map(|ws| factor_values(ws).map(|v| tensor_all(&v)))
        .collect::<Result<Vec<_>>>()?;

    let mut arrows = Vec::with_capacity(cat.morphisms.len());
    for m in &cat.morphisms {
        let map = match *m {
            LaxLatchMorphism::Slice { from, piece, arrow, .. } => {
                let pair = cat.objects[from].pieces[piece].pair;
                let maps: Vec<ChainMap> = sources[from]
                    .iter()
                    .enumerate()
                    .map(|(i, w)| {
                        if i == piece {
                            Ok(f.bundle().components()[pair].map(arrow).clone())
                        } else {
                            f.value(w).map(ChainMap::identity)
                        }
                    })
                    .collect::<Result<_>>()?;
                tensor_all_maps(&maps)
            }
            LaxLatchMorphism::Coarsen { from, cut, .. } => {
                let ws = &sources[from];
                let factors = factor_values(ws)?;
                let mut sizes = vec![1; ws.len() - 1];
                sizes[cut] = 2;
                let regrouped = regroup(&factors, &sizes)?;
                let mut maps = Vec::with_capacity(ws.len() - 1);
                for (i, w) in ws.iter().enumerate() {
                    if i == cut + 1 {
                        continue;
                    }
                    maps.push(if i == cut {
                        f.phi(w, &ws[cut + 1])?.clone()
                    } else {
                        ChainMap::identity(f.value(w)?)
                    });
                }
                tensor_all_maps(&maps).compose(&regrouped)?
            }
        };
        let (source, target) = m.endpoints();
        arrows.push(DiagramArrow { source, target, map });
    }
    let colimit = finite_colimit(&values, &arrows)?;

    let zshape = &shapes.shapes()[zp];
    let legs = (0..cat.objects.len())
        .map(|o| {
            let surj = cat.total_surjection(o, shapes);
            let a = zshape
                .find_arrow(zi, &surj)
                .ok_or_else(|| Error::Structure("total arrow of a lax-latching object missing".into()))?;
            f.bundle().components()[zp].map(a).compose(&f.phi_iterated(&sources[o])?)
        })
        .collect::<Result<Vec<_>>>()?;
    let lax_canonical = colimit.induced(fz, &legs)?;

    let trivial = cat.trivial_objects();
    let delta_legs: Vec<ChainMap> = trivial.iter().map(|&o| colimit.cocone[o].clone()).collect();
    let delta = classical.colimit.induced(&colimit.colim, &delta_legs)?;

    Ok(LatchingData {
        base: z.clone(),
        latch: classical.colimit.colim,
        canonical_map: classical.canonical,
        lax_latch: colimit.colim,
        delta,
        lax_canonical,
    })
}

/// Every latching map of the functor is a degreewise injection.
pub fn is_reedy_cofibrant(f: &HomFunctor) -> Result<bool> {
    for z in 0..f.shape().len() {
        if !hom_latching(f, z)?.canonical.is_degreewise_injective() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn components_cofibrant(b: &Bundle, off_diagonal_only: bool) -> Result<bool> {
    for c in b.components() {
        let (a, bb) = c.shape().endpoints();
        if off_diagonal_only && a == bb {
            continue;
        }
        if !is_reedy_cofibrant(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_bundle_cofibrant(b: &Bundle) -> Result<bool> {
    components_cofibrant(b, false)
}

pub fn is_u_cofibrant(f: &LaxDiagram) -> Result<bool> {
    components_cofibrant(f.bundle(), false)
}

/// Cofibrancy of the components with distinct endpoints.
pub fn is_u_cofibrant_off_diagonal(f: &LaxDiagram) -> Result<bool> {
    components_cofibrant(f.bundle(), true)
}

/// U-cofibrant, or weakly equivalent to a U-cofibrant diagram through the
/// supplied witness `σ: F -> G`.
pub fn is_excellent(f: &LaxDiagram, witness: Option<&LaxMorphism>) -> Result<bool> {
    if is_u_cofibrant(f)? {
        return Ok(true);
    }
    let Some(sigma) = witness else {
        return Ok(false);
    };
    let same_source = sigma.source.bundle().components().iter().zip(f.bundle().components()).all(|(a, b)| {
        a.values() == b.values() && a.maps() == b.maps()
    }) && sigma.source.laxity() == f.laxity();
    if !same_source {
        return Err(Error::Precondition("the witness does not start at the given diagram".into()));
    }
    let report = sigma.validate();
    if !report.passed() {
        let first = report.violations.first().map(ToString::to_string).unwrap_or_default();
        return Err(Error::Precondition(format!("the witness is not a lax morphism: {first}")));
    }
    Ok(is_we_proj(sigma) && is_u_cofibrant(&sigma.target)?)
}

pub fn is_bundle_cosegal(b: &Bundle) -> bool {
    b.components()
        .iter()
        .all(|c| c.shape().generating_arrows().iter().all(|&g| is_quasi_iso(c.map(g))))
}

/// Every structure map is a quasi-isomorphism.
pub fn is_cosegal(f: &LaxDiagram) -> bool {
    is_bundle_cosegal(f.bundle())
}

pub fn is_we_proj(sigma: &LaxMorphism) -> bool {
    sigma.maps().all(is_quasi_iso)
}

/// Quasi-isomorphism on every component with distinct endpoints.
pub fn is_we_ex(sigma: &LaxMorphism) -> bool {
    let shapes = sigma.source.shapes();
    sigma
        .components
        .iter()
        .zip(shapes.shapes())
        .filter(|(_, sh)| {
            let (a, b) = sh.endpoints();
            a != b
        })
        .all(|(row, _)| row.iter().all(is_quasi_iso))
}
