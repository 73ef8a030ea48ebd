//! Cokernels and finite colimits of complexes.

use super::complex::{ChainComplex, ChainMap, DirectSum};
use super::matrix::QMatrix;
use crate::error::{Error, Result};

/// `S / im r` for a chain map `r: R -> S`.
///
/// The quotient basis is a set of standard basis vectors of `S` (see
/// [`QMatrix::cokernel`]); `section` embeds it back as a graded map, which
/// is generally not a chain map.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub quotient: ChainComplex,
    pub projection: ChainMap,
    relation: ChainMap,
    section: Vec<QMatrix>,
}

impl Cokernel {
    pub fn of(relation: &ChainMap) -> Self {
        let s = relation.target();
        let len = s.len();
        let mut proj = Vec::with_capacity(len);
        let mut sect = Vec::with_capacity(len);
        for n in 0..len {
            let (_, p, j) = relation.component(n).cokernel();
            sect.push(QMatrix::identity(s.dim(n)).select_columns(&j));
            proj.push(p);
        }
        let dims: Vec<usize> = proj.iter().map(QMatrix::rows).collect();
        let boundaries = (1..len)
            .map(|n| &(&proj[n - 1] * &s.boundary(n)) * &sect[n])
            .collect();
        let quotient = ChainComplex::new_unchecked(dims, boundaries);
        let projection = ChainMap::new_unchecked(s.clone(), quotient.clone(), proj).expect("projection shapes");
        Cokernel {
            quotient,
            projection,
            relation: relation.clone(),
            section: sect,
        }
    }

    /// The graded section `Q -> S`.
    pub fn section(&self) -> ChainMap {
        ChainMap::new_unchecked(self.quotient.clone(), self.relation.target().clone(), self.section.clone())
            .expect("section shapes")
    }

    /// The map `Q -> T` induced by `g: S -> T`; fails unless `g` kills the
    /// relations.
    pub fn descend(&self, g: &ChainMap) -> Result<ChainMap> {
        if g.source() != self.relation.target() {
            return Err(Error::Shape("descended map must start at the presented complex".into()));
        }
        if !g.compose(&self.relation)?.is_zero() {
            return Err(Error::IllDefined("map does not vanish on the relations".into()));
        }
        Ok(self.descend_unchecked(g))
    }

    pub(crate) fn descend_unchecked(&self, g: &ChainMap) -> ChainMap {
        let len = self.quotient.len().max(g.target().len());
        let comps = (0..len)
            .map(|n| match self.section.get(n) {
                Some(e) if n < self.quotient.len() => &g.component(n) * e,
                _ => QMatrix::zeros(g.target().dim(n), self.quotient.dim(n)),
            })
            .collect();
        ChainMap::new_unchecked(self.quotient.clone(), g.target().clone(), comps).expect("descended shapes")
    }

    pub fn relation(&self) -> &ChainMap {
        &self.relation
    }
}

#[derive(Clone, Debug)]
pub struct DiagramArrow {
    pub source: usize,
    pub target: usize,
    pub map: ChainMap,
}

/// A colimit presented as the cokernel of
/// `⊕_arrows F(src) -> ⊕_objects F(obj)`, `x ↦ ι_tgt F(a) x - ι_src x`.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub colim: ChainComplex,
    pub cocone: Vec<ChainMap>,
    pub presentation: DirectSum,
    pub cokernel: Cokernel,
}

pub fn finite_colimit(values: &[ChainComplex], arrows: &[DiagramArrow]) -> Result<Colimit> {
    for (k, a) in arrows.iter().enumerate() {
        let (Some(s), Some(t)) = (values.get(a.source), values.get(a.target)) else {
            return Err(Error::Structure(format!("arrow {k} refers to a missing object")));
        };
        if a.map.source() != s || a.map.target() != t {
            return Err(Error::Structure(format!(
                "arrow {k} ({} -> {}) carries a map {:?} -> {:?}",
                a.source,
                a.target,
                a.map.source(),
                a.map.target()
            )));
        }
    }
    let presentation = DirectSum::new(values.to_vec());
    let rel_src = DirectSum::new(arrows.iter().map(|a| a.map.source().clone()).collect());
    let legs: Vec<ChainMap> = arrows
        .iter()
        .map(|a| {
            let forward = presentation.injection(a.target).compose(&a.map)?;
            forward.sub(&presentation.injection(a.source))
        })
        .collect::<Result<_>>()?;
    let relation = rel_src.copair(&presentation.total, &legs)?;
    let cokernel = Cokernel::of(&relation);
    let cocone = (0..values.len())
        .map(|k| cokernel.projection.compose(&presentation.injection(k)))
        .collect::<Result<_>>()?;
    Ok(Colimit {
        colim: cokernel.quotient.clone(),
        cocone,
        presentation,
        cokernel,
    })
}

impl Colimit {
    /// The universal map to `target` determined by compatible `legs`.
    pub fn induced(&self, target: &ChainComplex, legs: &[ChainMap]) -> Result<ChainMap> {
        let g = self.presentation.copair(target, legs)?;
        self.cokernel.descend(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology::betti_numbers;

    fn endpoint(i: usize) -> ChainMap {
        let mut col = [0, 0];
        col[i] = 1;
        ChainMap::new(
            ChainComplex::unit(),
            ChainComplex::interval(),
            vec![QMatrix::from_i64(2, 1, &col)],
        )
        .unwrap()
    }

    #[test]
    fn single_object() {
        let c = ChainComplex::interval();
        let col = finite_colimit(std::slice::from_ref(&c), &[]).unwrap();
        assert_eq!(col.colim, c);
        assert_eq!(col.cocone[0], ChainMap::identity(&c));
    }

    #[test]
    fn circle_coequalizer() {
        let vals = [ChainComplex::unit(), ChainComplex::interval()];
        let arrows = [
            DiagramArrow { source: 0, target: 1, map: endpoint(0) },
            DiagramArrow { source: 0, target: 1, map: endpoint(1) },
        ];
        let col = finite_colimit(&vals, &arrows).unwrap();
        assert_eq!(betti_numbers(&col.colim), vec![1, 1]);
        for a in &arrows {
            assert_eq!(col.cocone[a.target].compose(&a.map).unwrap(), col.cocone[a.source]);
        }
    }

    #[test]
    fn trivial_pushout() {
        let u = ChainComplex::unit();
        let id = ChainMap::identity(&u);
        let arrows = [
            DiagramArrow { source: 0, target: 1, map: id.clone() },
            DiagramArrow { source: 0, target: 2, map: id },
        ];
        let col = finite_colimit(&[u.clone(), u.clone(), u.clone()], &arrows).unwrap();
        assert_eq!(col.colim, u);
    }

    #[test]
    fn induced_map_checks_compatibility() {
        let vals = [ChainComplex::unit(), ChainComplex::interval()];
        let arrows = [DiagramArrow { source: 0, target: 1, map: endpoint(0) }];
        let col = finite_colimit(&vals, &arrows).unwrap();
        let i = ChainComplex::interval();
        let ok = col.induced(&i, &[endpoint(0), ChainMap::identity(&i)]).unwrap();
        assert_eq!(ok.compose(&col.cocone[1]).unwrap(), ChainMap::identity(&i));
        assert!(col.induced(&i, &[endpoint(1), ChainMap::identity(&i)]).is_err());
    }
}
