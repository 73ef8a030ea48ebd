//! Comparing the value at a chosen object with the colimit of a diagram
//! on a finite direct category.

use std::collections::HashMap;

use serde::Serialize;

use crate::chain::{betti_numbers, finite_colimit, is_quasi_iso, ChainComplex, ChainMap, DiagramArrow};
use crate::error::{Error, Result};
use crate::laxdiag::{category_latching, HomFunctor};
use crate::seqcat::{FiniteCategory, Morphism};

/// Values and one map per morphism of a finite direct category.
#[derive(Clone, Debug)]
pub struct CategoryDiagram {
    pub category: FiniteCategory,
    pub values: Vec<ChainComplex>,
    pub maps: Vec<ChainMap>,
}

impl CategoryDiagram {
    pub fn new(category: FiniteCategory, values: Vec<ChainComplex>, maps: Vec<ChainMap>) -> Result<Self> {
        if values.len() != category.object_count() || maps.len() != category.morphisms().len() {
            return Err(Error::Structure("one value per object and one map per morphism required".into()));
        }
        for (f, m) in maps.iter().enumerate() {
            let Morphism { source, target } = category.morphism(f);
            if m.source() != &values[source] || m.target() != &values[target] {
                return Err(Error::Structure(format!("map {f} has the wrong endpoints")));
            }
        }
        Ok(CategoryDiagram { category, values, maps })
    }

    pub fn from_hom_functor(f: &HomFunctor) -> Self {
        CategoryDiagram {
            category: f.shape().category().clone(),
            values: f.values().to_vec(),
            maps: f.maps().to_vec(),
        }
    }
}

/// The two endpoint inclusions `ℚ ⇉ I`, whose colimit is a circle.
pub fn circle_coequalizer() -> Result<CategoryDiagram> {
    // morphisms: id_0, id_1, v0, v1
    let morphisms = vec![
        Morphism { source: 0, target: 0 },
        Morphism { source: 1, target: 1 },
        Morphism { source: 0, target: 1 },
        Morphism { source: 0, target: 1 },
    ];
    let mut compose = HashMap::new();
    compose.insert((0, 0), 0);
    compose.insert((1, 1), 1);
    for f in [2, 3] {
        compose.insert((0, f), f);
        compose.insert((f, 1), f);
    }
    let category = FiniteCategory::new(vec![0, 1], morphisms, vec![0, 1], compose, vec![2, 3])?;
    let (unit, interval) = (ChainComplex::unit(), ChainComplex::interval());
    let endpoint = |row: usize| {
        let mut m = crate::chain::QMatrix::zeros(2, 1);
        m.set(row, 0, crate::chain::int(1));
        ChainMap::new(unit.clone(), interval.clone(), vec![m])
    };
    let maps = vec![ChainMap::identity(&unit), ChainMap::identity(&interval), endpoint(0)?, endpoint(1)?];
    CategoryDiagram::new(category, vec![unit.clone(), interval.clone()], maps)
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityVerdict {
    /// The chosen object is initial in the indexing category.
    pub initial_object: bool,
    /// Every latching map is a degreewise injection.
    pub reedy_cofibrant: bool,
    pub all_quasi_iso: bool,
    /// The cocone map from the chosen object to the colimit is a
    /// quasi-isomorphism.
    pub initial_to_colimit_quasi_iso: bool,
    pub object_betti: Vec<Vec<usize>>,
    pub colimit_betti: Vec<usize>,
}

/// Compares `F(e)` with `colim F` for the given object `e`.
///
/// Panics if the category has `e` initial, the diagram is Reedy cofibrant
/// and all maps are quasi-isomorphisms, yet `F(e) -> colim F` is not.
pub fn colimit_stability_check(d: &CategoryDiagram, e: usize) -> Result<StabilityVerdict> {
    let cat = &d.category;
    let initial_object = (0..cat.object_count()).all(|o| cat.hom(e, o).len() == 1);
    let mut reedy_cofibrant = true;
    for z in 0..cat.object_count() {
        let (_, canonical) = category_latching(cat, &d.values, &d.maps, z)?;
        if !canonical.is_degreewise_injective() {
            reedy_cofibrant = false;
            break;
        }
    }
    let all_quasi_iso = cat.generating().iter().all(|&g| is_quasi_iso(&d.maps[g]));
    let arrows: Vec<DiagramArrow> = cat
        .generating()
        .iter()
        .map(|&g| {
            let m = cat.morphism(g);
            DiagramArrow { source: m.source, target: m.target, map: d.maps[g].clone() }
        })
        .collect();
    let colim = finite_colimit(&d.values, &arrows)?;
    let initial_to_colimit_quasi_iso = is_quasi_iso(&colim.cocone[e]);
    assert!(
        !(initial_object && reedy_cofibrant && all_quasi_iso) || initial_to_colimit_quasi_iso,
        "colimit of a Reedy cofibrant quasi-iso valued diagram with initial object is not equivalent to it"
    );
    Ok(StabilityVerdict {
        initial_object,
        reedy_cofibrant,
        all_quasi_iso,
        initial_to_colimit_quasi_iso,
        object_betti: d.values.iter().map(betti_numbers).collect(),
        colimit_betti: betti_numbers(&colim.colim),
    })
}

/// [`colimit_stability_check`] for a hom component at its dimension-1
/// sequence.
pub fn hom_stability_check(f: &HomFunctor) -> Result<StabilityVerdict> {
    colimit_stability_check(&CategoryDiagram::from_hom_functor(f), f.shape().initial())
}
