//! Normal symmetric lax functors on truncated finite sets and surjections.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chain::{braiding, is_quasi_iso, regroup, tensor, tensor_map, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::laxdiag::diagram::{check_complex, check_square, compare, matrix_rows};
use crate::laxdiag::{category_latching, is_cosegal, Bundle, HomFunctor, LaxDiagram, ValidationReport, Violation, ViolationKind};
use crate::seqcat::phi::{collapse, is_generator, transposition};
use crate::seqcat::{ObjectSet, PhiShape, SurjectiveFunction, SxShapes};

/// Values `C(1), ..., C(N)` (`C(0)` is the unit), a map `C(m) -> C(n)` for
/// every surjection `n ->> m`, and laxity `C(n) ⊗ C(m) -> C(n + m)`.
///
/// Only maps on generators are supplied; the rest are composed along a
/// fixed factorization, so functoriality is a property to check.
#[derive(Clone, Debug)]
pub struct SymLaxFunctor {
    shape: Arc<PhiShape>,
    values: Vec<ChainComplex>,
    generators: HashMap<SurjectiveFunction, ChainMap>,
    maps: Vec<ChainMap>,
    laxity: BTreeMap<(usize, usize), ChainMap>,
}

fn is_identity(f: &SurjectiveFunction) -> bool {
    f.values().iter().enumerate().all(|(i, &v)| i == v)
}

fn show(f: &SurjectiveFunction) -> String {
    format!("{:?}", f.values())
}

impl SymLaxFunctor {
    /// `values[n - 1] = C(n)`; `generators` holds a map for every adjacent
    /// transposition and elementary collapse; `laxity[(n, m)]` for every
    /// `n + m <= N`.
    pub fn new(
        shape: Arc<PhiShape>,
        values: Vec<ChainComplex>,
        generators: HashMap<SurjectiveFunction, ChainMap>,
        laxity: BTreeMap<(usize, usize), ChainMap>,
    ) -> Result<Self> {
        let big_n = shape.truncation();
        if values.len() != big_n {
            return Err(Error::Structure(format!("{} values for truncation {big_n}", values.len())));
        }
        for (f, m) in &generators {
            if !is_generator(f) || f.source() > big_n {
                return Err(Error::Structure(format!("{} is not a generator within truncation", show(f))));
            }
            if m.source() != &values[f.target() - 1] || m.target() != &values[f.source() - 1] {
                return Err(Error::Structure(format!("map on {} has the wrong endpoints", show(f))));
            }
        }
        for n in 1..big_n {
            for m in 1..=big_n - n {
                let mu = laxity
                    .get(&(n, m))
                    .ok_or_else(|| Error::Truncation(format!("no laxity map for ({n}, {m})")))?;
                if mu.source() != &tensor(&values[n - 1], &values[m - 1]) || mu.target() != &values[n + m - 1] {
                    return Err(Error::Structure(format!("laxity ({n}, {m}) has the wrong endpoints")));
                }
            }
        }
        let maps = shape
            .functions()
            .iter()
            .map(|f| synthesize(f, &values, &generators))
            .collect::<Result<_>>()?;
        Ok(SymLaxFunctor { shape, values, generators, maps, laxity })
    }

    /// Builds the generator maps and laxity from closures.
    pub fn from_fn(
        truncation: usize,
        values: Vec<ChainComplex>,
        mut structure: impl FnMut(&SurjectiveFunction) -> Result<ChainMap>,
        mut laxity: impl FnMut(usize, usize) -> Result<ChainMap>,
    ) -> Result<Self> {
        let shape = Arc::new(PhiShape::new(truncation)?);
        let mut generators = HashMap::new();
        for f in shape.functions() {
            if is_generator(f) {
                generators.insert(f.clone(), structure(f)?);
            }
        }
        let mut mu = BTreeMap::new();
        for n in 1..truncation {
            for m in 1..=truncation - n {
                mu.insert((n, m), laxity(n, m)?);
            }
        }
        Self::new(shape, values, generators, mu)
    }

    /// The same data with one generator map replaced.
    pub fn with_generator(&self, f: &SurjectiveFunction, m: ChainMap) -> Result<Self> {
        let mut generators = self.generators.clone();
        generators.insert(f.clone(), m);
        Self::new(self.shape.clone(), self.values.clone(), generators, self.laxity.clone())
    }

    /// The same data with one laxity map replaced.
    pub fn with_laxity(&self, n: usize, m: usize, mu: ChainMap) -> Result<Self> {
        let mut laxity = self.laxity.clone();
        laxity.insert((n, m), mu);
        Self::new(self.shape.clone(), self.values.clone(), self.generators.clone(), laxity)
    }

    pub fn shape(&self) -> &Arc<PhiShape> {
        &self.shape
    }

    pub fn truncation(&self) -> usize {
        self.shape.truncation()
    }

    pub fn values(&self) -> &[ChainComplex] {
        &self.values
    }

    /// `C(n)`; `C(0)` is the unit.
    pub fn value(&self, n: usize) -> ChainComplex {
        if n == 0 {
            ChainComplex::unit()
        } else {
            self.values[n - 1].clone()
        }
    }

    /// One map per arrow of [`shape`](Self::shape).
    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    /// `C(f): C(m) -> C(n)` for `f: n ->> m`.
    pub fn map(&self, f: &SurjectiveFunction) -> Result<&ChainMap> {
        let i = self
            .shape
            .arrow_of(f)
            .ok_or_else(|| Error::Truncation(format!("{} is outside the truncation", show(f))))?;
        Ok(&self.maps[i])
    }

    pub fn laxity(&self, n: usize, m: usize) -> Result<&ChainMap> {
        self.laxity
            .get(&(n, m))
            .ok_or_else(|| Error::Truncation(format!("no laxity map for ({n}, {m})")))
    }

    /// Left-nested iterate `C(n_1) ⊗ ... ⊗ C(n_r) -> C(Σ n_i)`.
    pub fn laxity_iterated(&self, sizes: &[usize]) -> Result<ChainMap> {
        let first = *sizes.first().ok_or_else(|| Error::Structure("empty product".into()))?;
        let mut acc = ChainMap::identity(&self.value(first));
        let mut total = first;
        for &n in &sizes[1..] {
            acc = self.laxity(total, n)?.compose(&tensor_map(&acc, &ChainMap::identity(&self.value(n))))?;
            total += n;
        }
        Ok(acc)
    }
}

/// `C(f)` along `f = rest ∘ generator` or `f = monotone ∘ permutation`.
fn synthesize(
    f: &SurjectiveFunction,
    values: &[ChainComplex],
    generators: &HashMap<SurjectiveFunction, ChainMap>,
) -> Result<ChainMap> {
    let n = f.source();
    if is_identity(f) {
        return Ok(ChainMap::identity(&values[n - 1]));
    }
    let generator = |g: &SurjectiveFunction| {
        generators
            .get(g)
            .cloned()
            .ok_or_else(|| Error::Structure(format!("missing map for the generator {}", show(g))))
    };
    if is_generator(f) {
        return generator(f);
    }
    let v = f.values();
    if f.is_bijection() {
        let i = (0..n - 1).find(|&i| v[i] > v[i + 1]).expect("non-identity permutation has a descent");
        let s = transposition(n, i);
        let rest = s.then(f)?;
        return generator(&s)?.compose(&synthesize(&rest, values, generators)?);
    }
    if f.is_monotone() {
        let i = (0..n - 1).find(|&i| v[i] == v[i + 1]).expect("non-injective");
        let mut rest = v.to_vec();
        rest.remove(i + 1);
        let rest = SurjectiveFunction::new(f.target(), rest)?;
        return generator(&collapse(n, i))?.compose(&synthesize(&rest, values, generators)?);
    }
    let (perm, mono) = f.factor();
    let mono = SurjectiveFunction::from_monotone(&mono);
    synthesize(&perm, values, generators)?.compose(&synthesize(&mono, values, generators)?)
}

/// The bijection `m + n ->> n + m` moving the first block behind the second,
/// so that `C(β)` takes `C(n + m)` to `C(m + n)`.
pub fn block_transposition(n: usize, m: usize) -> SurjectiveFunction {
    let values = (0..m).map(|i| n + i).chain(0..n).collect();
    SurjectiveFunction::new(n + m, values).expect("bijection")
}

/// Checks functoriality, naturality and associativity of the laxity, and
/// the signed equivariance square, as exact equalities.
pub fn validate_sym(c: &SymLaxFunctor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let big_n = c.truncation();
    for (i, v) in c.values.iter().enumerate() {
        if let Some((k, dd)) = check_complex(v) {
            report.violations.push(Violation {
                kind: ViolationKind::Complex,
                location: format!("C({})", i + 1),
                degree: Some(k),
                lhs: Some(matrix_rows(&dd)),
                rhs: None,
            });
        }
    }
    let mut gens: Vec<_> = c.generators.iter().collect();
    gens.sort_by(|a, b| a.0.cmp(b.0));
    for (f, m) in gens {
        report.push(check_square(format!("structure map {}", show(f)), m));
    }
    for ((n, m), mu) in &c.laxity {
        report.push(check_square(format!("laxity ({n}, {m})"), mu));
    }
    if !report.passed() {
        return report;
    }
    let functions = c.shape.functions();
    for (i, f) in functions.iter().enumerate() {
        for g in functions.iter().filter(|g| g.source() == f.target()) {
            if is_identity(f) || is_identity(g) {
                continue;
            }
            let gf = f.then(g).expect("composable");
            let Ok(lhs) = c.maps[i].compose(c.map(g).expect("in shape")) else { continue };
            report.push(compare(
                ViolationKind::Functoriality,
                format!("{} then {}", show(f), show(g)),
                &lhs,
                c.map(&gf).expect("in shape"),
            ));
        }
    }
    for n in 1..big_n {
        for m in 1..=big_n - n {
            let mu = c.laxity(n, m).expect("present");
            for f in functions.iter().filter(|f| f.source() == n) {
                for g in functions.iter().filter(|g| g.source() == m) {
                    if is_identity(f) && is_identity(g) {
                        continue;
                    }
                    let (n2, m2) = (f.target(), g.target());
                    let lhs = c.map(&f.concat(g)).expect("in shape").compose(c.laxity(n2, m2).expect("present"));
                    let rhs = mu.compose(&tensor_map(c.map(f).expect("in shape"), c.map(g).expect("in shape")));
                    if let (Ok(l), Ok(r)) = (lhs, rhs) {
                        report.push(compare(
                            ViolationKind::Naturality,
                            format!("laxity ({n}, {m}) along {} and {}", show(f), show(g)),
                            &l,
                            &r,
                        ));
                    }
                }
            }
            // μ_{m,n} ∘ braiding = C(β) ∘ μ_{n,m}
            let lhs = c.laxity(m, n).expect("present").compose(&braiding(&c.value(n), &c.value(m)));
            let rhs = c.map(&block_transposition(n, m)).expect("in shape").compose(mu);
            if let (Ok(l), Ok(r)) = (lhs, rhs) {
                report.push(compare(ViolationKind::Equivariance, format!("laxity ({n}, {m}) against ({m}, {n})"), &l, &r));
            }
            for k in 1..=big_n.saturating_sub(n + m) {
                let fs = [c.value(n), c.value(m), c.value(k)];
                let lhs = c
                    .laxity(n + m, k)
                    .expect("present")
                    .compose(&tensor_map(mu, &ChainMap::identity(&fs[2])));
                let rhs = regroup(&fs, &[1, 2]).and_then(|r| {
                    let inner = tensor_map(&ChainMap::identity(&fs[0]), c.laxity(m, k).expect("present"));
                    c.laxity(n, m + k).expect("present").compose(&inner.compose(&r)?)
                });
                if let (Ok(l), Ok(r)) = (lhs, rhs) {
                    report.push(compare(ViolationKind::Coherence, format!("laxity ({n}, {m}, {k})"), &l, &r));
                }
            }
        }
    }
    report
}

/// The one-object lax diagram seen by monotone surjections only.
pub fn restrict_to_deltaepi(c: &SymLaxFunctor) -> Result<LaxDiagram> {
    let objects = ObjectSet::new(["*"])?;
    let shapes = Arc::new(SxShapes::new(&objects, c.truncation())?);
    let shape = shapes.shape(0, 0).clone();
    let values = shape.sequences().iter().map(|s| c.value(s.dim())).collect();
    let maps = shape
        .arrows()
        .iter()
        .map(|a| c.map(&SurjectiveFunction::from_monotone(&a.surjection)).cloned())
        .collect::<Result<_>>()?;
    let bundle = Bundle::new(shapes, vec![HomFunctor::from_all(shape, values, maps)?])?;
    LaxDiagram::from_fn(bundle, |s, t| c.laxity(s.dim(), t.dim()).cloned())
}

/// Every structure map is a quasi-isomorphism and the restriction is
/// co-Segal.
pub fn is_cosegal_monoid(c: &SymLaxFunctor) -> Result<bool> {
    Ok(c.maps.iter().all(is_quasi_iso) && is_cosegal(&restrict_to_deltaepi(c)?))
}

/// Latching maps `L_n C -> C(n)` are injective for every `n <= up_to`.
pub fn is_latching_injective(c: &SymLaxFunctor, up_to: usize) -> Result<bool> {
    let cat = c.shape.category();
    for z in 0..up_to.min(c.truncation()) {
        let (_, canonical) = category_latching(cat, &c.values, &c.maps, z)?;
        if !canonical.is_degreewise_injective() {
            return Ok(false);
        }
    }
    Ok(true)
}
