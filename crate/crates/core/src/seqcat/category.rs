//! Finite categories with a degree function, and their latching slices.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
}

/// A finite category given by an explicit composition table.
///
/// Identities are ordinary morphisms listed in `identities`. `generating`
/// lists non-identity morphisms whose composites reach every morphism; a
/// colimit only needs relations along those.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    degrees: Vec<usize>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    generating: Vec<usize>,
}

impl FiniteCategory {
    /// `compose[(f, g)]` is `g ∘ f` for every composable pair.
    pub fn new(
        degrees: Vec<usize>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
        generating: Vec<usize>,
    ) -> Result<Self> {
        if identities.len() != degrees.len() {
            return Err(Error::Structure("one identity per object required".into()));
        }
        for (o, &i) in identities.iter().enumerate() {
            let m = morphisms.get(i).ok_or_else(|| Error::Structure("identity out of range".into()))?;
            if m.source != o || m.target != o {
                return Err(Error::Structure(format!("identity of {o} is not an endomorphism of {o}")));
            }
        }
        for (f, mf) in morphisms.iter().enumerate() {
            for (g, mg) in morphisms.iter().enumerate() {
                if mf.target != mg.source {
                    continue;
                }
                let h = *compose
                    .get(&(f, g))
                    .ok_or_else(|| Error::Structure(format!("missing composite of {f} then {g}")))?;
                if morphisms[h].source != mf.source || morphisms[h].target != mg.target {
                    return Err(Error::Structure(format!("composite of {f} then {g} has wrong endpoints")));
                }
            }
        }
        Ok(FiniteCategory {
            degrees,
            morphisms,
            identities,
            compose,
            generating,
        })
    }

    pub fn object_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, o: usize) -> usize {
        self.degrees[o]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> Morphism {
        self.morphisms[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    pub fn generating(&self) -> &[usize] {
        &self.generating
    }

    /// `g ∘ f`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == a && self.morphisms[f].target == b)
            .collect()
    }

    /// An object with exactly one morphism to every object.
    pub fn initial_object(&self) -> Option<usize> {
        (0..self.object_count()).find(|&e| (0..self.object_count()).all(|o| self.hom(e, o).len() == 1))
    }

    /// Morphisms into `z` from objects of strictly lower degree, with the
    /// slice morphisms between them.
    pub fn latching(&self, z: usize) -> LatchingCategory {
        let objects: Vec<usize> = (0..self.morphisms.len())
            .filter(|&u| {
                let m = self.morphisms[u];
                m.target == z && self.degrees[m.source] < self.degrees[z]
            })
            .collect();
        let mut morphisms = Vec::new();
        for (i, &u) in objects.iter().enumerate() {
            for (j, &v) in objects.iter().enumerate() {
                let (w, w2) = (self.morphisms[u].source, self.morphisms[v].source);
                for g in self.hom(w, w2) {
                    if self.is_identity(g) && i == j {
                        continue;
                    }
                    if self.compose(g, v) == Some(u) {
                        morphisms.push(SliceMorphism { from: i, to: j, arrow: g });
                    }
                }
            }
        }
        LatchingCategory {
            base: z,
            objects,
            morphisms,
        }
    }

    /// Checks associativity and the unit laws of the table.
    pub fn check_laws(&self) -> Result<()> {
        for f in 0..self.morphisms.len() {
            let Morphism { source, target } = self.morphisms[f];
            if self.compose(self.identities[source], f) != Some(f) || self.compose(f, self.identities[target]) != Some(f) {
                return Err(Error::Structure(format!("unit law fails at morphism {f}")));
            }
            for g in self.hom_from(target) {
                let gf = self.compose(f, g).expect("composable");
                for h in self.hom_from(self.morphisms[g].target) {
                    let hg = self.compose(g, h).expect("composable");
                    if self.compose(gf, h) != self.compose(f, hg) {
                        return Err(Error::Structure(format!("associativity fails at ({f}, {g}, {h})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn hom_from(&self, a: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].source == a).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceMorphism {
    pub from: usize,
    pub to: usize,
    /// The underlying morphism of the ambient category.
    pub arrow: usize,
}

/// The latching category at `base`: objects are morphisms `u: w -> base`
/// with `w` of strictly lower degree.
#[derive(Clone, Debug)]
pub struct LatchingCategory {
    pub base: usize,
    /// Ambient morphism index of each object.
    pub objects: Vec<usize>,
    pub morphisms: Vec<SliceMorphism>,
}

impl LatchingCategory {
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}
