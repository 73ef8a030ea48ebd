//! The truncated opposite of finite sets and surjections.

use std::collections::HashMap;

use super::category::{FiniteCategory, Morphism};
use super::surjection::{enumerate_surjective_functions, Surjection, SurjectiveFunction};
use crate::error::Result;

/// Objects `1..=N` (object `k` stands for `k + 1` points). The arrow for
/// `f: n ->> m` goes from `m` to `n`.
#[derive(Clone, Debug)]
pub struct PhiShape {
    truncation: usize,
    functions: Vec<SurjectiveFunction>,
    index: HashMap<SurjectiveFunction, usize>,
    category: FiniteCategory,
}

impl PhiShape {
    pub fn new(truncation: usize) -> Result<Self> {
        let mut functions = Vec::new();
        for n in 1..=truncation {
            for m in 1..=n {
                functions.extend(enumerate_surjective_functions(n, m));
            }
        }
        let index: HashMap<SurjectiveFunction, usize> =
            functions.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let morphisms: Vec<Morphism> = functions
            .iter()
            .map(|f| Morphism { source: f.target() - 1, target: f.source() - 1 })
            .collect();
        let identities = (1..=truncation).map(|n| index[&SurjectiveFunction::identity(n)]).collect();
        let mut compose = HashMap::new();
        for (a, fa) in functions.iter().enumerate() {
            for (b, fb) in functions.iter().enumerate() {
                if morphisms[a].target == morphisms[b].source {
                    compose.insert((a, b), index[&fb.then(fa)?]);
                }
            }
        }
        let generating = (0..functions.len())
            .filter(|&i| is_generator(&functions[i]))
            .collect();
        let degrees = (1..=truncation).collect();
        let category = FiniteCategory::new(degrees, morphisms, identities, compose, generating)?;
        Ok(PhiShape { truncation, functions, index, category })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn functions(&self) -> &[SurjectiveFunction] {
        &self.functions
    }

    pub fn function(&self, arrow: usize) -> &SurjectiveFunction {
        &self.functions[arrow]
    }

    pub fn arrow_of(&self, f: &SurjectiveFunction) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }
}

/// Adjacent transpositions and single-point monotone collapses.
pub fn is_generator(f: &SurjectiveFunction) -> bool {
    adjacent_transposition(f).is_some() || elementary_collapse(f).is_some()
}

/// `Some(i)` when `f` swaps `i` and `i + 1` and fixes everything else.
pub fn adjacent_transposition(f: &SurjectiveFunction) -> Option<usize> {
    if !f.is_bijection() {
        return None;
    }
    let moved: Vec<usize> = (0..f.source()).filter(|&i| f.values()[i] != i).collect();
    match moved[..] {
        [i, j] if j == i + 1 && f.values()[i] == j => Some(i),
        _ => None,
    }
}

/// `Some(i)` when `f` is monotone and merges exactly `i` and `i + 1`.
pub fn elementary_collapse(f: &SurjectiveFunction) -> Option<usize> {
    if f.source() != f.target() + 1 || !f.is_monotone() {
        return None;
    }
    let s = f.to_monotone()?;
    s.deleted_points().first().map(|p| p - 1)
}

pub fn transposition(n: usize, i: usize) -> SurjectiveFunction {
    let mut v: Vec<usize> = (0..n).collect();
    v.swap(i, i + 1);
    SurjectiveFunction::new(n, v).expect("bijection")
}

pub fn collapse(n: usize, i: usize) -> SurjectiveFunction {
    SurjectiveFunction::from_monotone(&Surjection::deleting(n, &[i + 1]).expect("inner point"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_counts_and_laws() {
        let p = PhiShape::new(3).unwrap();
        assert_eq!(p.functions().len(), 1 + 1 + 2 + 1 + 6 + 6);
        p.category().check_laws().unwrap();
        // a single point maps onto by exactly one surjection from every set
        assert_eq!(p.category().initial_object(), Some(0));
        // generators: one swap and one collapse on 2, two of each on 3
        assert_eq!(p.category().generating().len(), 6);
    }

    #[test]
    fn generator_shapes() {
        assert_eq!(adjacent_transposition(&transposition(3, 1)), Some(1));
        assert_eq!(elementary_collapse(&collapse(3, 1)), Some(1));
        assert_eq!(collapse(3, 0).values(), &[0, 0, 1]);
    }
}
