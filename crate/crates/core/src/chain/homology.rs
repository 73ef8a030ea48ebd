//! Homology with chosen cycle representatives.

use super::complex::{ChainComplex, ChainMap};
use super::matrix::QMatrix;

/// Homology of a complex together with the bases used to compute it.
#[derive(Clone, Debug)]
pub struct Homology {
    /// `betti[n]` for `n < complex.len()`.
    pub betti: Vec<usize>,
    /// Columns are cycles whose classes form a basis of `H_n`.
    pub cycle_lifts: Vec<QMatrix>,
    /// Columns form a basis of the boundaries `B_n`.
    boundary_basis: Vec<QMatrix>,
}

impl Homology {
    pub fn of(c: &ChainComplex) -> Self {
        let len = c.len();
        let mut betti = Vec::with_capacity(len);
        let mut cycle_lifts = Vec::with_capacity(len);
        let mut boundary_basis = Vec::with_capacity(len);
        for n in 0..len {
            let cycles = if n == 0 {
                QMatrix::identity(c.dim(0))
            } else {
                c.boundary(n).kernel()
            };
            let b = if n + 1 < len {
                let d = c.boundary(n + 1);
                d.select_columns(&d.independent_columns())
            } else {
                QMatrix::zeros(c.dim(n), 0)
            };
            // cycles that become pivots after the boundaries are the lifts
            let (_, pivots) = b.hstack(&cycles).rref();
            let picked: Vec<usize> = pivots
                .iter()
                .filter(|&&p| p >= b.cols())
                .map(|p| p - b.cols())
                .collect();
            let lifts = cycles.select_columns(&picked);
            betti.push(lifts.cols());
            cycle_lifts.push(lifts);
            boundary_basis.push(b);
        }
        Homology {
            betti,
            cycle_lifts,
            boundary_basis,
        }
    }

    pub fn betti(&self, n: usize) -> usize {
        self.betti.get(n).copied().unwrap_or(0)
    }

    /// Coordinates (in the lift basis) of the classes of the cycle columns
    /// of `v`. Panics if a column is not a cycle.
    pub fn class_coordinates(&self, n: usize, v: &QMatrix) -> QMatrix {
        if n >= self.betti.len() {
            return QMatrix::zeros(0, v.cols());
        }
        let b = &self.boundary_basis[n];
        let basis = b.hstack(&self.cycle_lifts[n]);
        let x = basis
            .solve(v)
            .expect("class coordinates requested for a non-cycle");
        x.block(b.cols(), 0, self.betti[n], v.cols())
    }
}

pub fn homology(c: &ChainComplex) -> Homology {
    Homology::of(c)
}

pub fn betti_numbers(c: &ChainComplex) -> Vec<usize> {
    Homology::of(c).betti
}

/// Matrix of `H_n(f)` in the lift bases.
pub fn induced_map(f: &ChainMap, hs: &Homology, ht: &Homology, n: usize) -> QMatrix {
    if hs.betti(n) == 0 || ht.betti(n) == 0 {
        return QMatrix::zeros(ht.betti(n), hs.betti(n));
    }
    let images = &f.component(n) * &hs.cycle_lifts[n];
    ht.class_coordinates(n, &images)
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    let hs = Homology::of(f.source());
    let ht = Homology::of(f.target());
    let len = hs.betti.len().max(ht.betti.len());
    (0..len).all(|n| {
        hs.betti(n) == ht.betti(n) && induced_map(f, &hs, &ht, n).rank() == hs.betti(n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_homologies() {
        assert_eq!(betti_numbers(&ChainComplex::interval()), vec![1, 0]);
        assert_eq!(betti_numbers(&ChainComplex::circle()), vec![1, 1]);
        assert_eq!(betti_numbers(&ChainComplex::zero()), Vec::<usize>::new());
        assert_eq!(betti_numbers(&ChainComplex::disk(1).unwrap()), vec![0, 0]);
        assert_eq!(betti_numbers(&ChainComplex::sphere(0)), vec![1]);
    }

    #[test]
    fn quasi_iso_examples() {
        let i = ChainComplex::interval();
        assert!(is_quasi_iso(&ChainMap::identity(&i)));
        let v0 = ChainMap::new(
            ChainComplex::unit(),
            i.clone(),
            vec![QMatrix::from_i64(2, 1, &[1, 0])],
        )
        .unwrap();
        assert!(is_quasi_iso(&v0));
        let z = ChainMap::zero(&ChainComplex::zero(), &ChainComplex::circle());
        assert!(!is_quasi_iso(&z));
        // same betti numbers but the class goes to zero
        let c = ChainComplex::circle();
        assert!(!is_quasi_iso(&ChainMap::zero(&c, &c)));
    }
}
