//! The lax-latching category of a sequence: decompositions together with
//! slice objects over each piece.

use std::collections::HashMap;

use super::sequence::{enumerate_decompositions, Decomposition, LabeledSeq};
use super::shape::SxShapes;
use super::surjection::Surjection;
use crate::error::{Error, Result};

/// A slice object `w_i -> s_i` over one piece, as an arrow of the piece's
/// hom shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PieceSlice {
    pub pair: usize,
    pub arrow: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxLatchObject {
    pub decomposition: usize,
    pub pieces: Vec<PieceSlice>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaxLatchMorphism {
    /// Along an arrow `g: w_i -> w_i'` of piece `piece`'s shape.
    Slice {
        from: usize,
        to: usize,
        piece: usize,
        arrow: usize,
    },
    /// Merges pieces `cut` and `cut + 1`.
    Coarsen { from: usize, to: usize, cut: usize },
}

impl LaxLatchMorphism {
    pub fn endpoints(&self) -> (usize, usize) {
        match *self {
            LaxLatchMorphism::Slice { from, to, .. } | LaxLatchMorphism::Coarsen { from, to, .. } => (from, to),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LaxLatchingCategory {
    pub base: LabeledSeq,
    pub decompositions: Vec<Decomposition>,
    pub objects: Vec<LaxLatchObject>,
    pub morphisms: Vec<LaxLatchMorphism>,
}

impl LaxLatchingCategory {
    pub fn new(z: &LabeledSeq, shapes: &SxShapes) -> Result<Self> {
        if z.dim() > shapes.truncation() {
            return Err(Error::Truncation(format!(
                "{z:?} has dimension {} above the truncation {}",
                z.dim(),
                shapes.truncation()
            )));
        }
        shapes.locate(z)?;
        let decompositions = enumerate_decompositions(z, false);
        let mut objects = Vec::new();
        let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        for (d, dec) in decompositions.iter().enumerate() {
            let mut choices: Vec<Vec<PieceSlice>> = Vec::with_capacity(dec.len());
            for s in &dec.pieces {
                let (p, si) = shapes.locate(s)?;
                let shape = &shapes.shapes()[p];
                choices.push(shape.arrows_into(si).into_iter().map(|a| PieceSlice { pair: p, arrow: a }).collect());
            }
            for pick in cartesian(&choices) {
                if d == 0 && shapes.shapes()[pick[0].pair].arrow(pick[0].arrow).is_identity() {
                    continue;
                }
                index.insert((d, pick.iter().map(|p| p.arrow).collect()), objects.len());
                objects.push(LaxLatchObject {
                    decomposition: d,
                    pieces: pick,
                });
            }
        }
        let dec_index: HashMap<Vec<usize>, usize> = decompositions
            .iter()
            .enumerate()
            .map(|(i, d)| (d.cuts.clone(), i))
            .collect();
        let mut morphisms = Vec::new();
        for (o, obj) in objects.iter().enumerate() {
            let key: Vec<usize> = obj.pieces.iter().map(|p| p.arrow).collect();
            for (i, ps) in obj.pieces.iter().enumerate() {
                let shape = &shapes.shapes()[ps.pair];
                let u = ps.arrow;
                let w = shape.arrow(u).from;
                for g in shape.arrows_from(w) {
                    if shape.arrow(g).is_identity() {
                        continue;
                    }
                    let w2 = shape.arrow(g).to;
                    for v in shape.arrows_into(shape.arrow(u).to) {
                        if shape.arrow(v).from != w2 || shape.compose(g, v) != Some(u) {
                            continue;
                        }
                        let mut k2 = key.clone();
                        k2[i] = v;
                        if let Some(&to) = index.get(&(obj.decomposition, k2)) {
                            morphisms.push(LaxLatchMorphism::Slice { from: o, to, piece: i, arrow: g });
                        }
                    }
                }
            }
            let dec = &decompositions[obj.decomposition];
            for j in 0..dec.cuts.len() {
                let merged = dec.erase_cut(j);
                let d2 = dec_index[&merged.cuts];
                let (l, r) = (&obj.pieces[j], &obj.pieces[j + 1]);
                let (ls, rs) = (&shapes.shapes()[l.pair], &shapes.shapes()[r.pair]);
                let surj = ls.arrow(l.arrow).surjection.concat(&rs.arrow(r.arrow).surjection);
                let (mp, ms) = shapes.locate(&merged.pieces[j])?;
                let arrow = shapes.shapes()[mp]
                    .find_arrow(ms, &surj)
                    .expect("concatenated slice arrow exists");
                let mut k2: Vec<usize> = key[..j].to_vec();
                k2.push(arrow);
                k2.extend_from_slice(&key[j + 2..]);
                if let Some(&to) = index.get(&(d2, k2)) {
                    morphisms.push(LaxLatchMorphism::Coarsen { from: o, to, cut: j });
                }
            }
        }
        Ok(LaxLatchingCategory {
            base: z.clone(),
            decompositions,
            objects,
            morphisms,
        })
    }

    /// Objects over the trivial decomposition, in the order of the
    /// latching category's objects.
    pub fn trivial_objects(&self) -> Vec<usize> {
        (0..self.objects.len())
            .filter(|&o| self.objects[o].decomposition == 0)
            .collect()
    }

    /// The concatenated arrow `⋆ w_i -> z` of an object.
    pub fn total_surjection(&self, o: usize, shapes: &SxShapes) -> Surjection {
        let obj = &self.objects[o];
        let mut acc: Option<Surjection> = None;
        for p in &obj.pieces {
            let s = &shapes.shapes()[p.pair].arrow(p.arrow).surjection;
            acc = Some(match acc {
                None => s.clone(),
                Some(a) => a.concat(s),
            });
        }
        acc.expect("at least one piece")
    }
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for x in c {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

pub fn lax_latching_category(z: &LabeledSeq, shapes: &SxShapes) -> Result<LaxLatchingCategory> {
    LaxLatchingCategory::new(z, shapes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcat::sequence::ObjectSet;

    #[test]
    fn two_piece_example() {
        let x = ObjectSet::new(["A", "B"]).unwrap();
        let sh = SxShapes::new(&x, 3).unwrap();
        let z = LabeledSeq::new(vec![0, 1, 1]).unwrap();
        let c = LaxLatchingCategory::new(&z, &sh).unwrap();
        // one slice object over the trivial decomposition, one over the cut
        assert_eq!(c.objects.len(), 2);
        assert_eq!(c.trivial_objects().len(), 1);
        // merging the cut would give the excluded identity object
        assert!(c.morphisms.is_empty());
        let zero = LaxLatchingCategory::new(&LabeledSeq::new(vec![0, 1]).unwrap(), &sh).unwrap();
        assert!(zero.objects.is_empty());
    }

    #[test]
    fn contains_latching_category() {
        let x = ObjectSet::new(["A", "B"]).unwrap();
        let sh = SxShapes::new(&x, 3).unwrap();
        let h = sh.shape(0, 1);
        for zi in 0..h.len() {
            let z = h.seq(zi);
            let lax = LaxLatchingCategory::new(z, &sh).unwrap();
            let lat = h.latching_category(zi).unwrap();
            let triv = lax.trivial_objects();
            let arrows: Vec<usize> = triv.iter().map(|&o| lax.objects[o].pieces[0].arrow).collect();
            assert_eq!(arrows, lat.objects);
            let among: Vec<(usize, usize)> = lax
                .morphisms
                .iter()
                .map(LaxLatchMorphism::endpoints)
                .filter(|(f, t)| triv.contains(f) && triv.contains(t))
                .collect();
            assert_eq!(among.len(), lat.morphisms.len());
        }
    }

    #[test]
    fn truncation_error() {
        let x = ObjectSet::new(["A"]).unwrap();
        let sh = SxShapes::new(&x, 2).unwrap();
        let z = LabeledSeq::new(vec![0, 0, 0, 0]).unwrap();
        assert!(matches!(LaxLatchingCategory::new(&z, &sh), Err(Error::Truncation(_))));
    }
}
