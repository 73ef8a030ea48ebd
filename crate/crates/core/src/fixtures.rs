//! Ready-made diagrams and seeded random generators.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::chain::{flatten, int, permute_factors, tensor_all, tensor_all_maps, ChainComplex, ChainMap, DirectSum, QMatrix};
use crate::commutative::SymLaxFunctor;
use crate::error::Result;
use crate::laxdiag::{Bundle, HomFunctor, LaxDiagram};
use crate::seqcat::{HomShape, LabeledSeq, ObjectSet, SxShapes};

pub fn interval_power(k: usize) -> ChainComplex {
    tensor_all(&vec![ChainComplex::interval(); k])
}

/// `ℚ -> I` picking the vertex `v0`.
pub fn v0_inclusion() -> ChainMap {
    ChainMap::new_unchecked(ChainComplex::unit(), ChainComplex::interval(), vec![QMatrix::from_i64(2, 1, &[1, 0])])
        .expect("degree-0 map")
}

/// `I^{⊗k} -> I^{⊗n}` placing the factors at the `kept` positions (in
/// order) and `v0` everywhere else.
pub fn insert_v0(n: usize, kept: &[usize]) -> ChainMap {
    let maps: Vec<ChainMap> = (0..n)
        .map(|i| {
            if kept.contains(&i) {
                ChainMap::identity(&ChainComplex::interval())
            } else {
                v0_inclusion()
            }
        })
        .collect();
    tensor_all_maps(&maps)
}

fn cylinder_component(shape: &Arc<HomShape>) -> Result<HomFunctor> {
    let values = shape.sequences().iter().map(|s| interval_power(s.dim() - 1)).collect();
    let maps = shape
        .arrows()
        .iter()
        .map(|a| {
            let kept: Vec<usize> = a.surjection.kept_points().into_iter().map(|c| c - 1).collect();
            insert_v0(a.surjection.source_dim() - 1, &kept)
        })
        .collect();
    HomFunctor::from_all(shape.clone(), values, maps)
}

/// `x ⊗ y -> x ⊗ v0 ⊗ y`, the new cut getting the vertex `v0`.
pub fn cylinder_laxity(s: &LabeledSeq, t: &LabeledSeq) -> Result<ChainMap> {
    let (a, b) = (s.dim() - 1, t.dim() - 1);
    let glue = flatten(&vec![ChainComplex::interval(); a + b], &[a, b])?;
    let kept: Vec<usize> = (0..a + b + 1).filter(|&i| i != a).collect();
    insert_v0(a + b + 1, &kept).compose(&glue)
}

/// Values `I^{⊗(dim-1)}`, one interval factor per inner point. Arrows and
/// laxity insert `v0` at the new coordinates.
pub fn cylinder(objects: &ObjectSet, truncation: usize) -> Result<LaxDiagram> {
    let shapes = Arc::new(SxShapes::new(objects, truncation)?);
    let components = shapes.shapes().iter().map(cylinder_component).collect::<Result<_>>()?;
    let bundle = Bundle::new(shapes, components)?;
    LaxDiagram::from_fn(bundle, cylinder_laxity)
}

/// `ℚ` on the dimension-1 sequence and zero above, all maps zero.
fn point_component(shape: &Arc<HomShape>) -> Result<HomFunctor> {
    let values: Vec<ChainComplex> = shape
        .sequences()
        .iter()
        .map(|s| if s.dim() == 1 { ChainComplex::unit() } else { ChainComplex::zero() })
        .collect();
    let maps = shape
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
    HomFunctor::from_all(shape.clone(), values, maps)
}

/// The cylinder pattern on homs with distinct endpoints and a diagram
/// that is not co-Segal on the diagonal. Laxity touching a diagonal hom is
/// zero.
pub fn weak_strict(objects: &ObjectSet, truncation: usize) -> Result<LaxDiagram> {
    let shapes = Arc::new(SxShapes::new(objects, truncation)?);
    let components = shapes
        .shapes()
        .iter()
        .map(|sh| {
            let (a, b) = sh.endpoints();
            if a == b {
                point_component(sh)
            } else {
                cylinder_component(sh)
            }
        })
        .collect::<Result<_>>()?;
    let bundle = Bundle::new(shapes, components)?;
    let b2 = bundle.clone();
    LaxDiagram::from_fn(bundle, |s, t| {
        let st = s.concat(t)?;
        let off = |x: &LabeledSeq| x.source() != x.target();
        if off(s) && off(t) && off(&st) {
            cylinder_laxity(s, t)
        } else {
            Ok(ChainMap::zero(&crate::chain::tensor(b2.value(s)?, b2.value(t)?), b2.value(&st)?))
        }
    })
}

/// A random invertible integer matrix and its inverse.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> (QMatrix, QMatrix) {
    let mut u = QMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            u.set(i, j, int(rng.gen_range(-2..=2)));
        }
        if rng.gen_bool(0.5) {
            u.set(i, i, int(-1));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let m = u.select_rows(&perm);
    let inv = m.inverse().expect("unimodular");
    (m, inv)
}

/// Conjugates `c` by a random basis change; returns the new complex and
/// the isomorphism `c -> new`.
pub fn random_basis_change<R: Rng>(rng: &mut R, c: &ChainComplex) -> Result<(ChainComplex, ChainMap)> {
    let changes: Vec<(QMatrix, QMatrix)> = c.dims().iter().map(|&d| random_unimodular(rng, d)).collect();
    let boundaries = (1..c.len())
        .map(|n| &(&changes[n - 1].0 * &c.boundary(n)) * &changes[n].1)
        .collect();
    let new = ChainComplex::new(c.dims().to_vec(), boundaries)?;
    let iso = ChainMap::new(c.clone(), new.clone(), changes.into_iter().map(|(m, _)| m).collect())?;
    Ok((new, iso))
}

/// A direct sum of up to `max_pieces` spheres and disks with top degree
/// at most `max_degree`, in a random basis.
pub fn random_complex<R: Rng>(rng: &mut R, max_degree: usize, max_pieces: usize) -> Result<ChainComplex> {
    let pieces = rng.gen_range(0..=max_pieces);
    let summands = (0..pieces)
        .map(|_| {
            if max_degree > 0 && rng.gen_bool(0.4) {
                ChainComplex::disk(rng.gen_range(1..=max_degree))
            } else {
                Ok(ChainComplex::sphere(rng.gen_range(0..=max_degree)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(random_basis_change(rng, &DirectSum::new(summands).total)?.0)
}

/// A random acyclic complex: up to `max_pieces` disks.
pub fn random_acyclic<R: Rng>(rng: &mut R, max_degree: usize, max_pieces: usize) -> Result<ChainComplex> {
    if max_degree == 0 {
        return Ok(ChainComplex::zero());
    }
    let pieces = rng.gen_range(0..=max_pieces);
    let summands = (0..pieces)
        .map(|_| ChainComplex::disk(rng.gen_range(1..=max_degree)))
        .collect::<Result<Vec<_>>>()?;
    Ok(random_basis_change(rng, &DirectSum::new(summands).total)?.0)
}

/// Parameters for [`random_reedy_functor`].
#[derive(Clone, Copy, Debug)]
pub struct ReedyParams {
    pub max_degree: usize,
    pub max_pieces: usize,
    /// Extensions are acyclic, so every structure map is a quasi-iso.
    pub acyclic: bool,
    /// At least one sphere at the initial sequence.
    pub nonzero_base: bool,
}

impl Default for ReedyParams {
    fn default() -> Self {
        ReedyParams { max_degree: 2, max_pieces: 1, acyclic: true, nonzero_base: true }
    }
}

/// Builds values by increasing dimension: each value is its latching
/// object plus a random extension, in a random basis. Latching maps are
/// split injections.
pub fn random_reedy_functor<R: Rng>(rng: &mut R, shape: &Arc<HomShape>, params: ReedyParams) -> Result<HomFunctor> {
    use crate::chain::{finite_colimit, DiagramArrow};
    let n = shape.len();
    let mut values: Vec<ChainComplex> = Vec::with_capacity(n);
    let mut maps: Vec<Option<ChainMap>> = vec![None; shape.arrows().len()];
    for z in 0..n {
        let cat = shape.latching_category(z)?;
        let lat_values: Vec<ChainComplex> = cat.objects.iter().map(|&u| values[shape.arrow(u).from].clone()).collect();
        let arrows: Vec<DiagramArrow> = cat
            .morphisms
            .iter()
            .map(|m| DiagramArrow {
                source: m.from,
                target: m.to,
                map: maps[m.arrow].clone().expect("lower arrows are built first"),
            })
            .collect();
        let colim = finite_colimit(&lat_values, &arrows)?;
        let extension = if params.acyclic && z != shape.initial() {
            random_acyclic(rng, params.max_degree, params.max_pieces)?
        } else {
            let mut e = random_complex(rng, params.max_degree, params.max_pieces)?;
            if params.nonzero_base && z == shape.initial() && e.is_zero() {
                e = ChainComplex::sphere(rng.gen_range(0..=params.max_degree));
            }
            e
        };
        let sum = DirectSum::new(vec![colim.colim.clone(), extension]);
        let (value, iso) = random_basis_change(rng, &sum.total)?;
        let into = iso.compose(&sum.injection(0))?;
        for (k, &u) in cat.objects.iter().enumerate() {
            maps[u] = Some(into.compose(&colim.cocone[k])?);
        }
        maps[shape.identity_arrow(z)] = Some(ChainMap::identity(&value));
        values.push(value);
    }
    let maps = maps.into_iter().map(|m| m.expect("every arrow built")).collect();
    HomFunctor::from_all(shape.clone(), values, maps)
}

pub fn random_reedy_bundle<R: Rng>(rng: &mut R, shapes: &Arc<SxShapes>, params: ReedyParams) -> Result<Bundle> {
    let components = shapes
        .shapes()
        .iter()
        .map(|sh| random_reedy_functor(rng, sh, params))
        .collect::<Result<_>>()?;
    Bundle::new(shapes.clone(), components)
}

/// Proper nonempty subsets of `{0..n-1}` as bitmasks, increasing.
fn proper_subsets(n: usize) -> Vec<usize> {
    (1..(1usize << n) - 1).collect()
}

/// `I^{⊗k} -> I^{⊗total}` sending factor `j` to position `positions[j]`
/// with the Koszul sign of the reordering, and `v0` at the other positions.
pub fn place_intervals(total: usize, positions: &[usize]) -> Result<ChainMap> {
    let mut order: Vec<usize> = (0..positions.len()).collect();
    order.sort_by_key(|&j| positions[j]);
    let sorted: Vec<usize> = order.iter().map(|&j| positions[j]).collect();
    let perm = permute_factors(&vec![ChainComplex::interval(); positions.len()], &order)?;
    insert_v0(total, &sorted).compose(&perm)
}

/// The constant functor on a graded-commutative algebra: every value `r`,
/// structure maps identities, laxity the multiplication.
pub fn constant_symmetric(truncation: usize, r: &ChainComplex, mult: &ChainMap) -> Result<SymLaxFunctor> {
    SymLaxFunctor::from_fn(
        truncation,
        vec![r.clone(); truncation],
        |_| Ok(ChainMap::identity(r)),
        |_, _| Ok(mult.clone()),
    )
}

/// `C(n)` has one interval factor per proper nonempty subset of `n` points.
/// A surjection `f` sends the factor of `T` to the factor of `f⁻¹(T)` and
/// fills the remaining factors with `v0`; laxity places `S ⊂ n` and
/// `T ⊂ m` at `S` and `n + T`.
pub fn symmetric_cylinder(truncation: usize) -> Result<SymLaxFunctor> {
    let values = (1..=truncation).map(|n| interval_power(proper_subsets(n).len())).collect();
    let position = |n: usize, s: usize| proper_subsets(n).iter().position(|&x| x == s).expect("proper subset");
    SymLaxFunctor::from_fn(
        truncation,
        values,
        |f| {
            let (n, m) = (f.source(), f.target());
            let positions: Vec<usize> = proper_subsets(m)
                .into_iter()
                .map(|t| position(n, (0..n).filter(|&i| t >> f.values()[i] & 1 == 1).map(|i| 1 << i).sum()))
                .collect();
            place_intervals(proper_subsets(n).len(), &positions)
        },
        |n, m| {
            let (a, b) = (proper_subsets(n), proper_subsets(m));
            let glue = flatten(&vec![ChainComplex::interval(); a.len() + b.len()], &[a.len(), b.len()])?;
            let positions: Vec<usize> =
                a.iter().map(|&s| position(n + m, s)).chain(b.iter().map(|&t| position(n + m, t << n))).collect();
            place_intervals(proper_subsets(n + m).len(), &positions)?.compose(&glue)
        },
    )
}
