//! Bounded, nonnegatively graded complexes of finite-dimensional rational
//! vector spaces, and chain maps between them.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::matrix::QMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(PartialEq, Eq, Hash)]
struct ComplexData {
    dims: Vec<usize>,
    /// `boundaries[k]` is `d_{k+1}`, a `dims[k] x dims[k+1]` matrix.
    boundaries: Vec<QMatrix>,
}

/// A chain complex `C_0 <- C_1 <- ... <- C_top`.
///
/// Cheap to clone. Trailing zero degrees are trimmed so equal complexes
/// compare equal; the zero complex has no degrees at all.
#[derive(Clone)]
pub struct ChainComplex(Arc<ComplexData>);

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for ChainComplex {}

impl std::hash::Hash for ChainComplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex{:?}", self.0.dims)
    }
}

impl ChainComplex {
    /// Checks shapes and `d∘d = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<QMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len() && !(dims.is_empty() && boundaries.is_empty()) {
            return Err(Error::Shape(format!(
                "{} degrees need {} boundaries, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.shape() != (dims[k], dims[k + 1]) {
                return Err(Error::Shape(format!(
                    "d_{} has shape {:?}, expected {:?}",
                    k + 1,
                    d.shape(),
                    (dims[k], dims[k + 1])
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !(&boundaries[k - 1] * &boundaries[k]).is_zero() {
                return Err(Error::NotComplex(format!("d_{} ∘ d_{} != 0", k, k + 1)));
            }
        }
        Ok(Self::trimmed(dims, boundaries))
    }

    pub(crate) fn new_unchecked(dims: Vec<usize>, boundaries: Vec<QMatrix>) -> Self {
        debug_assert_eq!(boundaries.len() + 1, dims.len().max(1));
        Self::trimmed(dims, boundaries)
    }

    fn trimmed(mut dims: Vec<usize>, mut boundaries: Vec<QMatrix>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
            boundaries.pop();
        }
        if dims.is_empty() {
            boundaries.clear();
        }
        ChainComplex(Arc::new(ComplexData { dims, boundaries }))
    }

    /// Builds a complex from per-degree dims and an entry function for
    /// `d_n` (`n >= 1`).
    pub fn from_boundaries(dims: Vec<usize>, boundaries: Vec<QMatrix>) -> Result<Self> {
        Self::new(dims, boundaries)
    }

    pub fn zero() -> Self {
        Self::trimmed(vec![], vec![])
    }

    /// The monoidal unit: ℚ in degree 0.
    pub fn unit() -> Self {
        Self::trimmed(vec![1], vec![])
    }

    /// The interval: vertices `v0`, `v1` in degree 0, edge `e` with
    /// `d(e) = v1 - v0`.
    pub fn interval() -> Self {
        Self::trimmed(vec![2, 1], vec![QMatrix::from_i64(2, 1, &[-1, 1])])
    }

    /// One vertex and one loop.
    pub fn circle() -> Self {
        Self::trimmed(vec![1, 1], vec![QMatrix::zeros(1, 1)])
    }

    /// ℚ concentrated in degree `k`.
    pub fn sphere(k: usize) -> Self {
        let mut dims = vec![0; k + 1];
        dims[k] = 1;
        let boundaries = (0..k)
            .map(|i| QMatrix::zeros(dims[i], dims[i + 1]))
            .collect();
        Self::trimmed(dims, boundaries)
    }

    /// ℚ in degrees `k` and `k-1` with identity boundary.
    pub fn disk(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Structure("disk(k) needs k >= 1".into()));
        }
        let mut dims = vec![0; k + 1];
        dims[k] = 1;
        dims[k - 1] = 1;
        let boundaries = (0..k)
            .map(|i| {
                if i == k - 1 {
                    QMatrix::identity(1)
                } else {
                    QMatrix::zeros(dims[i], dims[i + 1])
                }
            })
            .collect();
        Ok(Self::trimmed(dims, boundaries))
    }

    /// Dimensions of degrees `0..=top`; empty for the zero complex.
    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.0.dims.get(n).copied().unwrap_or(0)
    }

    /// Number of stored degrees (`top + 1`, or 0 for the zero complex).
    pub fn len(&self) -> usize {
        self.0.dims.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    /// `d_n : C_n -> C_{n-1}` as a `dim(n-1) x dim(n)` matrix (zero outside
    /// the stored range). Panics for `n = 0`.
    pub fn boundary(&self, n: usize) -> QMatrix {
        assert!(n >= 1, "d_0 is not defined");
        match self.0.boundaries.get(n - 1) {
            Some(d) => d.clone(),
            None => QMatrix::zeros(self.dim(n - 1), self.dim(n)),
        }
    }

    pub(crate) fn boundary_ref(&self, n: usize) -> Option<&QMatrix> {
        self.0.boundaries.get(n - 1)
    }

    /// Shifts degrees up by `k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut dims = vec![0; k];
        dims.extend_from_slice(self.dims());
        let mut boundaries: Vec<QMatrix> = (0..k).map(|i| QMatrix::zeros(dims[i], dims[i + 1])).collect();
        // Sign convention: the shifted differential is -d; only even shifts
        // are used where the sign would matter.
        for n in 1..self.len() {
            boundaries.push(self.boundary(n));
        }
        Self::trimmed(dims, boundaries)
    }
}

/// A degree-preserving map commuting with the boundaries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    /// One `target.dim(n) x source.dim(n)` block per degree
    /// `0..max(source.len(), target.len())`.
    components: Vec<QMatrix>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("components", &self.components)
            .finish()
    }
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<QMatrix>) -> Result<Self> {
        let map = Self::new_unchecked(source, target, components)?;
        map.check_commutes()?;
        Ok(map)
    }

    /// Checks shapes only. Used for graded linear maps (sections of
    /// quotients) that are not chain maps on their own.
    pub(crate) fn new_unchecked(
        source: ChainComplex,
        target: ChainComplex,
        mut components: Vec<QMatrix>,
    ) -> Result<Self> {
        let len = source.len().max(target.len());
        while components.len() > len {
            let c = components.pop().expect("nonempty");
            if !c.is_zero() || c.rows() != 0 && c.cols() != 0 {
                return Err(Error::Shape(format!(
                    "component beyond degree {} has shape {:?}",
                    len,
                    c.shape()
                )));
            }
        }
        while components.len() < len {
            let n = components.len();
            components.push(QMatrix::zeros(target.dim(n), source.dim(n)));
        }
        for (n, c) in components.iter().enumerate() {
            if c.shape() != (target.dim(n), source.dim(n)) {
                return Err(Error::Shape(format!(
                    "component f_{n} has shape {:?}, expected {:?}",
                    c.shape(),
                    (target.dim(n), source.dim(n))
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    /// Verifies `f_{n-1} ∘ d_n = d_n ∘ f_n` in every degree.
    pub fn check_commutes(&self) -> Result<()> {
        for n in 1..self.components.len() {
            let lhs = &self.components[n - 1] * &self.source.boundary(n);
            let rhs = &self.target.boundary(n) * &self.components[n];
            if lhs != rhs {
                return Err(Error::NotChainMap(format!(
                    "square at degree {n} fails: f_{} d_{n} = {:?}, d_{n} f_{n} = {:?}",
                    n - 1,
                    lhs,
                    rhs
                )));
            }
        }
        Ok(())
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c.dims().iter().map(|&d| QMatrix::identity(d)).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), vec![]).expect("zero map shapes")
    }

    /// `sphere(k-1) -> disk(k)`, identity in degree `k-1`.
    pub fn sphere_inclusion(k: usize) -> Result<Self> {
        let disk = ChainComplex::disk(k)?;
        let sphere = ChainComplex::sphere(k - 1);
        let mut comps: Vec<QMatrix> = (0..=k).map(|n| QMatrix::zeros(disk.dim(n), sphere.dim(n))).collect();
        comps[k - 1] = QMatrix::identity(1);
        Self::new(sphere, disk, comps)
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn components(&self) -> &[QMatrix] {
        &self.components
    }

    pub fn component(&self, n: usize) -> QMatrix {
        self.components
            .get(n)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.target.dim(n), self.source.dim(n)))
    }

    pub(crate) fn component_ref(&self, n: usize) -> Option<&QMatrix> {
        self.components.get(n)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        if inner.target != self.source {
            return Err(Error::Shape(format!(
                "cannot compose: inner target {:?} vs outer source {:?}",
                inner.target, self.source
            )));
        }
        let len = inner.source.len().max(self.target.len());
        let components = (0..len)
            .map(|n| &self.component(n) * &inner.component(n))
            .collect();
        Self::new_unchecked(inner.source.clone(), self.target.clone(), components)
    }

    fn zip_with(&self, other: &ChainMap, f: impl Fn(&QMatrix, &QMatrix) -> QMatrix) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("maps have different source or target".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a, b))
            .collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), components)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(QMatrix::is_zero)
    }

    /// Degreewise injectivity: the cofibrations of the projective structure.
    pub fn is_degreewise_injective(&self) -> bool {
        self.components.iter().all(QMatrix::is_injective)
    }

    pub fn is_iso(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.rows() == c.cols() && c.rank() == c.cols())
    }

    pub fn inverse(&self) -> Option<ChainMap> {
        let components = self
            .components
            .iter()
            .map(QMatrix::inverse)
            .collect::<Option<Vec<_>>>()?;
        Self::new_unchecked(self.target.clone(), self.source.clone(), components).ok()
    }
}

/// Direct sum `⊕ C_k` with its block layout.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub total: ChainComplex,
    pub summands: Vec<ChainComplex>,
    /// `offsets[n][k]`: first row of summand `k` in degree `n`.
    offsets: Vec<Vec<usize>>,
}

impl DirectSum {
    pub fn new(summands: Vec<ChainComplex>) -> Self {
        let len = summands.iter().map(ChainComplex::len).max().unwrap_or(0);
        let mut offsets = Vec::with_capacity(len);
        let mut dims = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = 0;
            let mut row = Vec::with_capacity(summands.len());
            for s in &summands {
                row.push(acc);
                acc += s.dim(n);
            }
            offsets.push(row);
            dims.push(acc);
        }
        let boundaries = (1..len)
            .map(|n| {
                let mut d = QMatrix::zeros(dims[n - 1], dims[n]);
                for (k, s) in summands.iter().enumerate() {
                    if let Some(b) = s.boundary_ref(n) {
                        d.put_block(offsets[n - 1][k], offsets[n][k], b);
                    }
                }
                d
            })
            .collect();
        DirectSum {
            total: ChainComplex::new_unchecked(dims, boundaries),
            summands,
            offsets,
        }
    }

    pub fn offset(&self, k: usize, n: usize) -> usize {
        self.offsets.get(n).map(|r| r[k]).unwrap_or(0)
    }

    /// `(summand, local index)` of basis vector `i` in degree `n`.
    pub fn locate(&self, n: usize, i: usize) -> (usize, usize) {
        let row = &self.offsets[n];
        let k = row.partition_point(|&o| o <= i) - 1;
        // skip empty summands that share an offset
        let mut k = k;
        while self.summands[k].dim(n) == 0 || i - row[k] >= self.summands[k].dim(n) {
            k += 1;
        }
        (k, i - row[k])
    }

    pub fn injection(&self, k: usize) -> ChainMap {
        let s = &self.summands[k];
        let comps = (0..self.total.len())
            .map(|n| {
                let mut m = QMatrix::zeros(self.total.dim(n), s.dim(n));
                for i in 0..s.dim(n) {
                    m.set(self.offset(k, n) + i, i, Rational::one());
                }
                m
            })
            .collect();
        ChainMap::new_unchecked(s.clone(), self.total.clone(), comps).expect("injection shapes")
    }

    pub fn projection(&self, k: usize) -> ChainMap {
        self.injection(k).transpose_graded(&self.total, &self.summands[k])
    }

    /// The map `⊕ C_k -> T` restricting to `maps[k]` on summand `k`.
    pub fn copair(&self, target: &ChainComplex, maps: &[ChainMap]) -> Result<ChainMap> {
        if maps.len() != self.summands.len() {
            return Err(Error::Shape("copair needs one map per summand".into()));
        }
        let len = self.total.len().max(target.len());
        let mut comps: Vec<QMatrix> = (0..len)
            .map(|n| QMatrix::zeros(target.dim(n), self.total.dim(n)))
            .collect();
        for (k, f) in maps.iter().enumerate() {
            if f.source() != &self.summands[k] || f.target() != target {
                return Err(Error::Shape(format!("copair component {k} has wrong endpoints")));
            }
            for (n, c) in comps.iter_mut().enumerate() {
                if let Some(fc) = f.component_ref(n) {
                    c.put_block(0, self.offset(k, n), fc);
                }
            }
        }
        ChainMap::new_unchecked(self.total.clone(), target.clone(), comps)
    }

    /// The map `S -> ⊕ C_k` with components `maps[k]`.
    pub fn pair(&self, source: &ChainComplex, maps: &[ChainMap]) -> Result<ChainMap> {
        let len = self.total.len().max(source.len());
        let mut comps: Vec<QMatrix> = (0..len)
            .map(|n| QMatrix::zeros(self.total.dim(n), source.dim(n)))
            .collect();
        for (k, f) in maps.iter().enumerate() {
            if f.target() != &self.summands[k] || f.source() != source {
                return Err(Error::Shape(format!("pair component {k} has wrong endpoints")));
            }
            for (n, c) in comps.iter_mut().enumerate() {
                if let Some(fc) = f.component_ref(n) {
                    c.put_block(self.offset(k, n), 0, fc);
                }
            }
        }
        ChainMap::new_unchecked(source.clone(), self.total.clone(), comps)
    }

    /// Block-diagonal map `⊕ f_k : ⊕ A_k -> ⊕ B_k`.
    pub fn sum_map(&self, target: &DirectSum, maps: &[ChainMap]) -> Result<ChainMap> {
        let moved: Vec<ChainMap> = maps
            .iter()
            .enumerate()
            .map(|(k, f)| target.injection(k).compose(f))
            .collect::<Result<_>>()?;
        self.copair(&target.total, &moved)
    }
}

impl ChainMap {
    fn transpose_graded(&self, src: &ChainComplex, tgt: &ChainComplex) -> ChainMap {
        let comps = self.components.iter().map(QMatrix::transpose).collect();
        ChainMap::new_unchecked(src.clone(), tgt.clone(), comps).expect("transpose shapes")
    }
}
