//! Functors on single hom shapes, bundles of them, and morphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap, DirectSum};
use crate::error::{Error, Result};
use crate::seqcat::{HomShape, LabeledSeq, SxShapes};

/// A functor from a truncated hom shape to complexes: one complex per
/// sequence and one map per arrow (identities included).
#[derive(Clone, Debug)]
pub struct HomFunctor {
    shape: Arc<HomShape>,
    values: Vec<ChainComplex>,
    maps: Vec<ChainMap>,
}

impl HomFunctor {
    /// Builds all arrow maps from maps on elementary arrows and checks that
    /// every factorization agrees.
    pub fn from_generators(
        shape: Arc<HomShape>,
        values: Vec<ChainComplex>,
        generators: &HashMap<usize, ChainMap>,
    ) -> Result<Self> {
        let f = Self::synthesize(shape, values, generators)?;
        f.check_functorial()?;
        Ok(f)
    }

    /// Like [`from_generators`](Self::from_generators) without the
    /// functoriality check, for callers that construct functorial data by
    /// design or run [`check_functorial`](Self::check_functorial) later.
    pub fn synthesize(
        shape: Arc<HomShape>,
        values: Vec<ChainComplex>,
        generators: &HashMap<usize, ChainMap>,
    ) -> Result<Self> {
        if values.len() != shape.len() {
            return Err(Error::Structure(format!(
                "{} values for a shape with {} sequences",
                values.len(),
                shape.len()
            )));
        }
        let mut maps = Vec::with_capacity(shape.arrows().len());
        for (i, a) in shape.arrows().iter().enumerate() {
            if a.is_identity() {
                maps.push(ChainMap::identity(&values[a.to]));
                continue;
            }
            let mut acc: Option<ChainMap> = None;
            for g in shape.elementary_factorization(i) {
                let m = generators.get(&g).ok_or_else(|| {
                    let ga = shape.arrow(g);
                    Error::Structure(format!(
                        "missing map for the arrow {:?} -> {:?}",
                        shape.seq(ga.from),
                        shape.seq(ga.to)
                    ))
                })?;
                let ga = shape.arrow(g);
                if m.source() != &values[ga.from] || m.target() != &values[ga.to] {
                    return Err(Error::Structure(format!(
                        "map on {:?} -> {:?} has the wrong endpoints",
                        shape.seq(ga.from),
                        shape.seq(ga.to)
                    )));
                }
                acc = Some(match acc {
                    None => m.clone(),
                    Some(prev) => m.compose(&prev)?,
                });
            }
            maps.push(acc.expect("non-identity arrow has a factorization"));
        }
        Ok(HomFunctor { shape, values, maps })
    }

    /// From a map on every arrow, identities included.
    pub fn from_all(shape: Arc<HomShape>, values: Vec<ChainComplex>, maps: Vec<ChainMap>) -> Result<Self> {
        if values.len() != shape.len() || maps.len() != shape.arrows().len() {
            return Err(Error::Structure("value or map count does not match the shape".into()));
        }
        Ok(HomFunctor { shape, values, maps })
    }

    /// The functor with value `c` everywhere and identity maps.
    pub fn constant(shape: Arc<HomShape>, c: &ChainComplex) -> Self {
        let values = vec![c.clone(); shape.len()];
        let maps = vec![ChainMap::identity(c); shape.arrows().len()];
        HomFunctor { shape, values, maps }
    }

    pub fn zero(shape: Arc<HomShape>) -> Self {
        Self::constant(shape, &ChainComplex::zero())
    }

    pub fn shape(&self) -> &Arc<HomShape> {
        &self.shape
    }

    pub fn values(&self) -> &[ChainComplex] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &ChainComplex {
        &self.values[i]
    }

    pub fn value_at(&self, s: &LabeledSeq) -> Result<&ChainComplex> {
        Ok(&self.values[self.shape.require(s)?])
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &ChainMap {
        &self.maps[arrow]
    }

    pub fn check_functorial(&self) -> Result<()> {
        for f in 0..self.maps.len() {
            for g in self.shape.arrows_from(self.shape.arrow(f).to) {
                let h = self.shape.compose(f, g).expect("composable");
                if self.maps[g].compose(&self.maps[f])? != self.maps[h] {
                    let s = |i: usize| format!("{:?}", self.shape.seq(i));
                    let (af, ag) = (self.shape.arrow(f), self.shape.arrow(g));
                    return Err(Error::Structure(format!(
                        "functoriality fails along {} -> {} -> {}",
                        s(af.from),
                        s(af.to),
                        s(ag.to)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(ChainComplex::is_zero)
    }
}

/// One hom functor per ordered pair of objects.
#[derive(Clone, Debug)]
pub struct Bundle {
    shapes: Arc<SxShapes>,
    components: Vec<HomFunctor>,
}

impl Bundle {
    pub fn new(shapes: Arc<SxShapes>, components: Vec<HomFunctor>) -> Result<Self> {
        if components.len() != shapes.shapes().len() {
            return Err(Error::Structure("one component per ordered pair of objects required".into()));
        }
        for (c, s) in components.iter().zip(shapes.shapes()) {
            if !Arc::ptr_eq(c.shape(), s) && c.shape().endpoints() != s.endpoints() {
                return Err(Error::Structure("component shape does not match its pair".into()));
            }
        }
        Ok(Bundle { shapes, components })
    }

    pub fn zero(shapes: Arc<SxShapes>) -> Self {
        let components = shapes.shapes().iter().map(|s| HomFunctor::zero(s.clone())).collect();
        Bundle { shapes, components }
    }

    pub fn shapes(&self) -> &Arc<SxShapes> {
        &self.shapes
    }

    pub fn components(&self) -> &[HomFunctor] {
        &self.components
    }

    pub fn component(&self, a: usize, b: usize) -> &HomFunctor {
        &self.components[self.shapes.pair_index(a, b)]
    }

    pub fn component_mut(&mut self, a: usize, b: usize) -> &mut HomFunctor {
        let i = self.shapes.pair_index(a, b);
        &mut self.components[i]
    }

    pub fn value(&self, s: &LabeledSeq) -> Result<&ChainComplex> {
        let (p, i) = self.shapes.locate(s)?;
        Ok(self.components[p].value(i))
    }

    pub fn truncation(&self) -> usize {
        self.shapes.truncation()
    }
}

/// Per-sequence maps between two bundles on the same shapes.
#[derive(Clone, Debug)]
pub struct BundleMorphism {
    pub source: Bundle,
    pub target: Bundle,
    /// `components[pair][seq]`.
    pub components: Vec<Vec<ChainMap>>,
}

impl BundleMorphism {
    pub fn new(source: Bundle, target: Bundle, components: Vec<Vec<ChainMap>>) -> Result<Self> {
        let m = BundleMorphism { source, target, components };
        m.check()?;
        Ok(m)
    }

    pub fn identity(b: &Bundle) -> Self {
        let components = b
            .components()
            .iter()
            .map(|c| c.values().iter().map(ChainMap::identity).collect())
            .collect();
        BundleMorphism { source: b.clone(), target: b.clone(), components }
    }

    /// Endpoints and naturality along every arrow.
    pub fn check(&self) -> Result<()> {
        let shapes = self.source.shapes().clone();
        if self.components.len() != shapes.shapes().len() {
            return Err(Error::Structure("bundle morphism needs one family per pair".into()));
        }
        for (p, shape) in shapes.shapes().iter().enumerate() {
            let (sf, tf) = (&self.source.components[p], &self.target.components[p]);
            let comps = &self.components[p];
            if comps.len() != shape.len() {
                return Err(Error::Structure("bundle morphism needs one map per sequence".into()));
            }
            for (i, c) in comps.iter().enumerate() {
                if c.source() != sf.value(i) || c.target() != tf.value(i) {
                    return Err(Error::Structure(format!(
                        "component at {:?} has the wrong endpoints",
                        shape.seq(i)
                    )));
                }
            }
            for &g in shape.generating_arrows() {
                let a = shape.arrow(g);
                let lhs = comps[a.to].compose(sf.map(g))?;
                let rhs = tf.map(g).compose(&comps[a.from])?;
                if lhs != rhs {
                    return Err(Error::NotChainMap(format!(
                        "bundle morphism is not natural along {:?} -> {:?}",
                        shape.seq(a.from),
                        shape.seq(a.to)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, inner: &BundleMorphism) -> Result<BundleMorphism> {
        let components = self
            .components
            .iter()
            .zip(&inner.components)
            .map(|(o, i)| o.iter().zip(i).map(|(a, b)| a.compose(b)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(BundleMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn maps(&self) -> impl Iterator<Item = &ChainMap> {
        self.components.iter().flatten()
    }
}

/// The bundle that is `g` at `(a, b)` and zero elsewhere.
pub fn dirac(shapes: &Arc<SxShapes>, a: usize, b: usize, g: &HomFunctor) -> Result<Bundle> {
    let mut bundle = Bundle::zero(shapes.clone());
    if g.shape().endpoints() != (a, b) || g.shape().truncation() != shapes.truncation() {
        return Err(Error::Structure("functor does not live on the requested hom shape".into()));
    }
    *bundle.component_mut(a, b) = g.clone();
    Ok(bundle)
}

/// Dirac mass of a morphism of single-hom functors.
pub fn dirac_map(shapes: &Arc<SxShapes>, a: usize, b: usize, sigma: &HomMorphism) -> Result<BundleMorphism> {
    let source = dirac(shapes, a, b, &sigma.source)?;
    let target = dirac(shapes, a, b, &sigma.target)?;
    let mut components: Vec<Vec<ChainMap>> = BundleMorphism::identity(&Bundle::zero(shapes.clone())).components;
    components[shapes.pair_index(a, b)] = sigma.components.clone();
    BundleMorphism::new(source, target, components)
}

/// The `(a, b)` component.
pub fn project(bundle: &Bundle, a: usize, b: usize) -> HomFunctor {
    bundle.component(a, b).clone()
}

/// A natural transformation between functors on one hom shape.
#[derive(Clone, Debug)]
pub struct HomMorphism {
    pub source: HomFunctor,
    pub target: HomFunctor,
    pub components: Vec<ChainMap>,
}

/// The functor freely generated by `v` at `s`: at `w`, one copy of `v`
/// per arrow `s -> w`.
pub fn free_at(shape: &Arc<HomShape>, s: &LabeledSeq, v: &ChainComplex) -> Result<HomFunctor> {
    Ok(free_at_map(shape, s, &ChainMap::identity(v))?.source)
}

/// `free_at` applied to a map `f: v -> v'`.
pub fn free_at_map(shape: &Arc<HomShape>, s: &LabeledSeq, f: &ChainMap) -> Result<HomMorphism> {
    let si = shape.require(s)?;
    let out = shape.arrows_from(si);
    // copies at w, listed by arrow index
    let copies: Vec<Vec<usize>> = (0..shape.len())
        .map(|w| out.iter().copied().filter(|&a| shape.arrow(a).to == w).collect())
        .collect();
    let build = |v: &ChainComplex| -> (Vec<DirectSum>, HomFunctor) {
        let sums: Vec<DirectSum> = copies.iter().map(|c| DirectSum::new(vec![v.clone(); c.len()])).collect();
        let values: Vec<ChainComplex> = sums.iter().map(|d| d.total.clone()).collect();
        let maps = shape
            .arrows()
            .iter()
            .enumerate()
            .map(|(g, ga)| {
                let legs: Vec<ChainMap> = copies[ga.from]
                    .iter()
                    .map(|&a| {
                        let moved = shape.compose(a, g).expect("composable");
                        let k = copies[ga.to].iter().position(|&c| c == moved).expect("copy exists");
                        sums[ga.to].injection(k)
                    })
                    .collect();
                sums[ga.from].copair(&values[ga.to], &legs).expect("copair endpoints")
            })
            .collect();
        let functor = HomFunctor { shape: shape.clone(), values, maps };
        (sums, functor)
    };
    let (ssums, source) = build(f.source());
    let (tsums, target) = build(f.target());
    let components = (0..shape.len())
        .map(|w| ssums[w].sum_map(&tsums[w], &vec![f.clone(); copies[w].len()]))
        .collect::<Result<_>>()?;
    Ok(HomMorphism { source, target, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcat::ObjectSet;

    fn shapes() -> Arc<SxShapes> {
        Arc::new(SxShapes::new(&ObjectSet::new(["A", "B"]).unwrap(), 3).unwrap())
    }

    #[test]
    fn free_at_counts() {
        let sh = shapes();
        let h = sh.shape(0, 1);
        let v = ChainComplex::interval();
        let ab = LabeledSeq::new(vec![0, 1]).unwrap();
        let f = free_at(h, &ab, &v).unwrap();
        f.check_functorial().unwrap();
        assert_eq!(f.value(0), &v);
        let axb = LabeledSeq::new(vec![0, 0, 1]).unwrap();
        assert_eq!(f.value_at(&axb).unwrap(), &v);
        let abab = LabeledSeq::new(vec![0, 1, 0, 1]).unwrap();
        // one arrow from (A,B) to every sequence
        assert_eq!(f.value_at(&abab).unwrap(), &v);
        let g = free_at(h, &axb, &v).unwrap();
        assert!(g.value(0).is_zero());
        assert_eq!(g.value_at(&axb).unwrap(), &v);
        // (A,A,B) -> (A,A,A,B) deletes point 1 or point 2
        let aaab = LabeledSeq::new(vec![0, 0, 0, 1]).unwrap();
        assert_eq!(g.value_at(&aaab).unwrap().dims(), &[4, 2]);
    }

    #[test]
    fn dirac_projections() {
        let sh = shapes();
        let g = HomFunctor::constant(sh.shape(0, 1).clone(), &ChainComplex::unit());
        let d = dirac(&sh, 0, 1, &g).unwrap();
        assert_eq!(project(&d, 0, 1).values(), g.values());
        assert!(project(&d, 1, 0).is_zero());
        assert!(project(&d, 0, 0).is_zero());
        assert!(dirac(&sh, 1, 0, &g).is_err());
    }
}
