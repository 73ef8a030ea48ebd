//! The free lax diagram on a bundle.
//!
//! `ΓG(z)` is the direct sum, over all decompositions of `z` (the trivial
//! one first), of the tensor product of `G` on the pieces. Laxity glues
//! two decompositions along the new cut.

use std::sync::Arc;

use super::diagram::{LaxDiagram, LaxMorphism};
use super::functor::{dirac_map, free_at_map, Bundle, BundleMorphism, HomFunctor};
use crate::chain::{flatten, tensor_all, tensor_all_maps, tensor_map, ChainComplex, ChainMap, DirectSum};
use crate::error::{Error, Result};
use crate::seqcat::{enumerate_decompositions, Decomposition, LabeledSeq, Surjection, SxShapes};

/// Summand layout of `ΓG(z)`.
#[derive(Clone, Debug)]
pub struct GammaLayout {
    pub decompositions: Vec<Decomposition>,
    pub sum: DirectSum,
}

impl GammaLayout {
    pub fn summand_of(&self, cuts: &[usize]) -> usize {
        self.decompositions
            .iter()
            .position(|d| d.cuts == cuts)
            .expect("decomposition listed")
    }
}

#[derive(Clone, Debug)]
pub struct Gamma {
    pub diagram: LaxDiagram,
    pub generator: Bundle,
    /// `layouts[pair][seq]`.
    pub layouts: Vec<Vec<GammaLayout>>,
}

/// Splits a surjection at the given kept points.
fn split_at(f: &Surjection, cuts: &[usize]) -> Vec<Surjection> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut rest = f.clone();
    let mut offset = 0;
    for &c in cuts {
        let (l, r) = rest.split(c - offset).expect("cut at a kept point");
        out.push(l);
        rest = r;
        offset = c;
    }
    out.push(rest);
    out
}

fn piece_values(g: &Bundle, d: &Decomposition) -> Result<Vec<ChainComplex>> {
    d.pieces.iter().map(|p| g.value(p).cloned()).collect()
}

fn layouts_for(g: &Bundle) -> Result<Vec<Vec<GammaLayout>>> {
    g.shapes()
        .shapes()
        .iter()
        .map(|shape| {
            shape
                .sequences()
                .iter()
                .map(|z| {
                    let decompositions = enumerate_decompositions(z, false);
                    let summands = decompositions
                        .iter()
                        .map(|d| piece_values(g, d).map(|v| tensor_all(&v)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(GammaLayout { decompositions, sum: DirectSum::new(summands) })
                })
                .collect()
        })
        .collect()
}

/// For an arrow `w -> z` with surjection `f` and a decomposition of `w`,
/// the matching decomposition of `z` and the split arrows on the pieces.
fn lift_decomposition(
    shapes: &SxShapes,
    z: &LabeledSeq,
    f: &Surjection,
    dw: &Decomposition,
) -> Result<(Vec<usize>, Vec<(usize, usize)>)> {
    let z_cuts: Vec<usize> = f
        .kept_points()
        .into_iter()
        .filter(|&c| dw.cuts.contains(&f.point_image(c)))
        .collect();
    let dz = Decomposition::new(z, z_cuts.clone())?;
    let mut arrows = Vec::with_capacity(dz.len());
    for (piece, fi) in dz.pieces.iter().zip(split_at(f, &z_cuts)) {
        let (p, zi) = shapes.locate(piece)?;
        let a = shapes.shapes()[p]
            .find_arrow(zi, &fi)
            .ok_or_else(|| Error::Structure("piece arrow missing".into()))?;
        arrows.push((p, a));
    }
    Ok((z_cuts, arrows))
}

pub fn gamma(g: &Bundle) -> Result<Gamma> {
    let shapes = g.shapes().clone();
    let layouts = layouts_for(g)?;
    let mut components = Vec::with_capacity(shapes.shapes().len());
    for (p, shape) in shapes.shapes().iter().enumerate() {
        let values: Vec<ChainComplex> = layouts[p].iter().map(|l| l.sum.total.clone()).collect();
        let mut maps = Vec::with_capacity(shape.arrows().len());
        for a in shape.arrows() {
            let (lw, lz) = (&layouts[p][a.from], &layouts[p][a.to]);
            let z = shape.seq(a.to);
            let legs = lw
                .decompositions
                .iter()
                .map(|dw| {
                    let (z_cuts, arrows) = lift_decomposition(&shapes, z, &a.surjection, dw)?;
                    let per_piece: Vec<ChainMap> = arrows
                        .iter()
                        .map(|&(pp, ai)| g.components()[pp].map(ai).clone())
                        .collect();
                    lz.sum.injection(lz.summand_of(&z_cuts)).compose(&tensor_all_maps(&per_piece))
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(lw.sum.copair(&values[a.to], &legs)?);
        }
        components.push(HomFunctor::from_all(shape.clone(), values, maps)?);
    }
    let bundle = Bundle::new(shapes.clone(), components)?;
    let lay = layouts.clone();
    let diagram = LaxDiagram::from_fn(bundle, |s, t| {
        let (ps, si) = shapes.locate(s)?;
        let (pt, ti) = shapes.locate(t)?;
        let st = s.concat(t)?;
        let (pst, sti) = shapes.locate(&st)?;
        let (ls, lt, lst) = (&lay[ps][si], &lay[pt][ti], &lay[pst][sti]);
        let src = crate::chain::tensor(&ls.sum.total, &lt.sum.total);
        let mut acc = ChainMap::zero(&src, &lst.sum.total);
        for (i, d) in ls.decompositions.iter().enumerate() {
            for (j, e) in lt.decompositions.iter().enumerate() {
                let mut cuts = d.cuts.clone();
                cuts.push(s.dim());
                cuts.extend(e.cuts.iter().map(|c| c + s.dim()));
                let mut factors = piece_values(g, d)?;
                factors.extend(piece_values(g, e)?);
                let glue = flatten(&factors, &[d.len(), e.len()])?;
                let term = lst
                    .sum
                    .injection(lst.summand_of(&cuts))
                    .compose(&glue)?
                    .compose(&tensor_map(&ls.sum.projection(i), &lt.sum.projection(j)))?;
                acc = acc.add(&term)?;
            }
        }
        Ok(acc)
    })?;
    Ok(Gamma { diagram, generator: g.clone(), layouts })
}

impl Gamma {
    /// `G -> U ΓG`, the inclusion of the trivial summands.
    pub fn unit(&self) -> BundleMorphism {
        let components = self
            .layouts
            .iter()
            .map(|per| per.iter().map(|l| l.sum.injection(0)).collect())
            .collect();
        BundleMorphism {
            source: self.generator.clone(),
            target: self.diagram.bundle().clone(),
            components,
        }
    }
}

pub fn gamma_unit(g: &Bundle) -> Result<BundleMorphism> {
    Ok(gamma(g)?.unit())
}

/// `Γ U F -> F`, folding every summand through the iterated laxity.
pub fn gamma_counit(f: &LaxDiagram) -> Result<LaxMorphism> {
    let free = gamma(f.bundle())?;
    counit_from(&free, f)
}

pub(crate) fn counit_from(free: &Gamma, f: &LaxDiagram) -> Result<LaxMorphism> {
    let components = free
        .layouts
        .iter()
        .enumerate()
        .map(|(p, per)| {
            per.iter()
                .enumerate()
                .map(|(i, l)| {
                    let target = f.bundle().components()[p].value(i);
                    let legs = l
                        .decompositions
                        .iter()
                        .map(|d| f.phi_iterated(&d.pieces))
                        .collect::<Result<Vec<_>>>()?;
                    l.sum.copair(target, &legs)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaxMorphism::new_unchecked(free.diagram.clone(), f.clone(), components))
}

/// `Γσ` for a bundle morphism `σ: G -> G'`.
pub fn gamma_map(sigma: &BundleMorphism) -> Result<LaxMorphism> {
    let src = gamma(&sigma.source)?;
    let tgt = gamma(&sigma.target)?;
    gamma_map_between(&src, &tgt, sigma)
}

pub(crate) fn gamma_map_between(src: &Gamma, tgt: &Gamma, sigma: &BundleMorphism) -> Result<LaxMorphism> {
    let shapes = sigma.source.shapes().clone();
    let mut components = Vec::with_capacity(src.layouts.len());
    for (p, per) in src.layouts.iter().enumerate() {
        let mut row = Vec::with_capacity(per.len());
        for (i, l) in per.iter().enumerate() {
            let maps = l
                .decompositions
                .iter()
                .map(|d| {
                    let pieces = d
                        .pieces
                        .iter()
                        .map(|piece| {
                            let (pp, pi) = shapes.locate(piece)?;
                            Ok(sigma.components[pp][pi].clone())
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(tensor_all_maps(&pieces))
                })
                .collect::<Result<Vec<_>>>()?;
            row.push(l.sum.sum_map(&tgt.layouts[p][i].sum, &maps)?);
        }
        components.push(row);
    }
    Ok(LaxMorphism::new_unchecked(src.diagram.clone(), tgt.diagram.clone(), components))
}

/// Result of checking both triangle identities.
#[derive(Clone, Debug)]
pub struct TriangleCheck {
    /// `ε_{ΓG} ∘ Γη_G = id` on `ΓG`.
    pub free_side: bool,
    /// `Uε_F ∘ η_{UF} = id` on `UF`.
    pub forgetful_side: bool,
}

pub fn check_triangles(g: &Bundle, f: &LaxDiagram) -> Result<TriangleCheck> {
    let free = gamma(g)?;
    let eta = free.unit();
    let free_of_free = gamma(free.diagram.bundle())?;
    let gamma_eta = gamma_map_between(&free, &free_of_free, &eta)?;
    let eps = counit_from(&free_of_free, &free.diagram)?;
    let left = eps.compose(&gamma_eta)?;
    let free_side = left
        .maps()
        .zip(LaxMorphism::identity(&free.diagram).maps())
        .all(|(a, b)| a == b);

    let free_f = gamma(f.bundle())?;
    let eta_u = free_f.unit();
    let eps_f = counit_from(&free_f, f)?;
    let right = eps_f.underlying().compose(&eta_u)?;
    let forgetful_side = right
        .maps()
        .zip(BundleMorphism::identity(f.bundle()).maps())
        .all(|(a, b)| a == b);
    Ok(TriangleCheck { free_side, forgetful_side })
}

/// `Γ(δ_{AB}(free_at(s, S^{k-1} -> D^k)))`, a generating cofibration of
/// the structure where only off-diagonal homs are constrained.
pub fn generating_cofibration_ex(
    shapes: &Arc<SxShapes>,
    a: usize,
    b: usize,
    s: &LabeledSeq,
    k: usize,
) -> Result<LaxMorphism> {
    if a == b {
        return Err(Error::Precondition("generating cofibrations need distinct endpoints".into()));
    }
    if s.endpoints() != (a, b) {
        return Err(Error::Structure(format!("{s:?} does not run from {a} to {b}")));
    }
    let inc = ChainMap::sphere_inclusion(k)?;
    let free = free_at_map(shapes.shape(a, b), s, &inc)?;
    let delta = dirac_map(shapes, a, b, &free)?;
    gamma_map(&delta)
}
