//! Truncated hom shapes: sequences with fixed endpoints and the
//! surjections between them, arrows pointing from lower to higher
//! dimension.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FiniteCategory, LatchingCategory, Morphism};
use super::sequence::{enumerate_sequences, LabeledSeq, ObjectSet};
use super::surjection::{enumerate_surjections, Surjection};
use crate::error::{Error, Result};

/// An arrow `from -> to`: `to` collapses onto `from` along `surjection`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShapeArrow {
    pub from: usize,
    pub to: usize,
    pub surjection: Surjection,
}

impl ShapeArrow {
    pub fn is_identity(&self) -> bool {
        self.surjection.is_identity()
    }

    /// Elementary arrows delete a single point.
    pub fn is_elementary(&self) -> bool {
        self.surjection.source_dim() == self.surjection.target_dim() + 1
    }
}

#[derive(Clone, Debug)]
pub struct HomShape {
    endpoints: (usize, usize),
    truncation: usize,
    seqs: Vec<LabeledSeq>,
    index: HashMap<LabeledSeq, usize>,
    arrows: Vec<ShapeArrow>,
    arrow_index: HashMap<(usize, Surjection), usize>,
    category: FiniteCategory,
}

impl HomShape {
    pub fn new(x: &ObjectSet, a: usize, b: usize, truncation: usize) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::Truncation("truncation must be at least 1".into()));
        }
        let seqs = enumerate_sequences(x, a, b, truncation)?;
        let index: HashMap<LabeledSeq, usize> = seqs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut arrows = Vec::new();
        let mut arrow_index = HashMap::new();
        let mut identities = vec![0; seqs.len()];
        for (zi, z) in seqs.iter().enumerate() {
            for m in 1..=z.dim() {
                for f in enumerate_surjections(z.dim(), m) {
                    let w = z.collapse(&f)?;
                    let wi = index[&w];
                    if f.is_identity() {
                        identities[zi] = arrows.len();
                    }
                    arrow_index.insert((zi, f.clone()), arrows.len());
                    arrows.push(ShapeArrow {
                        from: wi,
                        to: zi,
                        surjection: f,
                    });
                }
            }
        }
        let mut compose = HashMap::new();
        for (f, af) in arrows.iter().enumerate() {
            for (g, ag) in arrows.iter().enumerate() {
                if af.to != ag.from {
                    continue;
                }
                let s = ag.surjection.then(&af.surjection)?;
                compose.insert((f, g), arrow_index[&(ag.to, s)]);
            }
        }
        let generating = (0..arrows.len()).filter(|&i| arrows[i].is_elementary()).collect();
        let morphisms = arrows.iter().map(|a| Morphism { source: a.from, target: a.to }).collect();
        let degrees = seqs.iter().map(LabeledSeq::dim).collect();
        let category = FiniteCategory::new(degrees, morphisms, identities, compose, generating)?;
        Ok(HomShape {
            endpoints: (a, b),
            truncation,
            seqs,
            index,
            arrows,
            arrow_index,
            category,
        })
    }

    pub fn endpoints(&self) -> (usize, usize) {
        self.endpoints
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn sequences(&self) -> &[LabeledSeq] {
        &self.seqs
    }

    pub fn seq(&self, i: usize) -> &LabeledSeq {
        &self.seqs[i]
    }

    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    pub fn index_of(&self, s: &LabeledSeq) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &LabeledSeq) -> Result<usize> {
        self.index_of(s).ok_or_else(|| {
            Error::Structure(format!(
                "{s:?} is not in the shape with endpoints {:?} truncated at {}",
                self.endpoints, self.truncation
            ))
        })
    }

    pub fn arrows(&self) -> &[ShapeArrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &ShapeArrow {
        &self.arrows[i]
    }

    pub fn find_arrow(&self, to: usize, surjection: &Surjection) -> Option<usize> {
        self.arrow_index.get(&(to, surjection.clone())).copied()
    }

    pub fn identity_arrow(&self, z: usize) -> usize {
        self.category.identity(z)
    }

    /// Every arrow into `z`, identity included.
    pub fn arrows_into(&self, z: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].to == z).collect()
    }

    pub fn arrows_from(&self, w: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].from == w).collect()
    }

    /// Elementary arrows only.
    pub fn generating_arrows(&self) -> &[usize] {
        self.category.generating()
    }

    /// `g ∘ f` for `f: w' -> w`, `g: w -> z`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.category.compose(f, g)
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn latching_category(&self, z: usize) -> Result<LatchingCategory> {
        if z >= self.seqs.len() {
            return Err(Error::Structure(format!("object {z} is not in the shape")));
        }
        Ok(self.category.latching(z))
    }

    /// The dimension-1 sequence, initial in every truncation.
    pub fn initial(&self) -> usize {
        0
    }

    /// Writes a non-elementary arrow as a chain of elementary ones, first
    /// applied first: deletes its points from the highest down.
    pub fn elementary_factorization(&self, arrow: usize) -> Vec<usize> {
        let a = &self.arrows[arrow];
        let z = &self.seqs[a.to];
        let mut out = Vec::new();
        let mut cur = a.to;
        let mut cur_seq = z.clone();
        for p in a.surjection.deleted_points().into_iter().rev() {
            let f = Surjection::deleting(cur_seq.dim(), &[p]).expect("inner point");
            let next_seq = cur_seq.collapse(&f).expect("collapse");
            out.push(self.arrow_index[&(cur, f)]);
            cur = self.index[&next_seq];
            cur_seq = next_seq;
        }
        out.reverse();
        out
    }
}

/// One hom shape per ordered pair of objects.
#[derive(Clone, Debug)]
pub struct SxShapes {
    objects: ObjectSet,
    truncation: usize,
    shapes: Vec<Arc<HomShape>>,
}

impl SxShapes {
    pub fn new(objects: &ObjectSet, truncation: usize) -> Result<Self> {
        let shapes = objects
            .pairs()
            .into_iter()
            .map(|(a, b)| HomShape::new(objects, a, b, truncation).map(Arc::new))
            .collect::<Result<_>>()?;
        Ok(SxShapes {
            objects: objects.clone(),
            truncation,
            shapes,
        })
    }

    pub fn objects(&self) -> &ObjectSet {
        &self.objects
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn pair_index(&self, a: usize, b: usize) -> usize {
        a * self.objects.len() + b
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.objects.pairs()
    }

    pub fn shape(&self, a: usize, b: usize) -> &Arc<HomShape> {
        &self.shapes[self.pair_index(a, b)]
    }

    pub fn shapes(&self) -> &[Arc<HomShape>] {
        &self.shapes
    }

    /// `(pair index, sequence index)` of `s`.
    pub fn locate(&self, s: &LabeledSeq) -> Result<(usize, usize)> {
        let p = self.pair_index(s.source(), s.target());
        Ok((p, self.shapes[p].require(s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_counts() {
        let x = ObjectSet::new(["A", "B"]).unwrap();
        let h = HomShape::new(&x, 0, 1, 3).unwrap();
        assert_eq!(h.len(), 7);
        // 2^(n-1) arrows into each dimension-n sequence
        assert_eq!(h.arrows().len(), 1 + 2 * 2 + 4 * 4);
        h.category().check_laws().unwrap();
        assert_eq!(h.category().initial_object(), Some(0));
    }

    #[test]
    fn latching_examples() {
        let x = ObjectSet::new(["A", "B"]).unwrap();
        let h = HomShape::new(&x, 0, 1, 3).unwrap();
        assert!(h.latching_category(0).unwrap().is_empty());
        let axb = h.index_of(&LabeledSeq::new(vec![0, 0, 1]).unwrap()).unwrap();
        let l = h.latching_category(axb).unwrap();
        assert_eq!(l.objects.len(), 1);
        assert!(l.morphisms.is_empty());
        let one = ObjectSet::new(["A"]).unwrap();
        let h1 = HomShape::new(&one, 0, 0, 3).unwrap();
        let aaa = h1.index_of(&LabeledSeq::new(vec![0, 0, 0]).unwrap()).unwrap();
        assert_eq!(h1.latching_category(aaa).unwrap().objects.len(), 1);
        let aaaa = h1.index_of(&LabeledSeq::new(vec![0, 0, 0, 0]).unwrap()).unwrap();
        let l3 = h1.latching_category(aaaa).unwrap();
        assert_eq!(l3.objects.len(), 3);
        assert_eq!(l3.morphisms.len(), 2);
    }

    #[test]
    fn factorization_recomposes() {
        let one = ObjectSet::new(["A"]).unwrap();
        let h = HomShape::new(&one, 0, 0, 4).unwrap();
        for (i, a) in h.arrows().iter().enumerate() {
            let chain = h.elementary_factorization(i);
            if a.is_identity() {
                assert!(chain.is_empty());
                continue;
            }
            let mut acc = chain[0];
            for &g in &chain[1..] {
                acc = h.compose(acc, g).unwrap();
            }
            assert_eq!(acc, i);
        }
    }
}
