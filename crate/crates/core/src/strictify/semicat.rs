//! Strict semi-categories enriched in complexes, their inflation to
//! constant lax diagrams, and units at the level of homology.

use std::sync::Arc;

use rand::Rng;

use crate::chain::{
    int, regroup, tensor, tensor_index, tensor_map, ChainComplex, ChainMap, Homology, QMatrix, Rational,
};
use crate::error::{Error, Result};
use crate::fixtures::random_basis_change;
use crate::laxdiag::{Bundle, HomFunctor, LaxDiagram};
use crate::seqcat::{ObjectSet, SxShapes};

/// Hom complexes and an associative composition
/// `hom(a, b) ⊗ hom(b, c) -> hom(a, c)`. No units are required.
#[derive(Clone, Debug)]
pub struct SemiCategory {
    objects: ObjectSet,
    homs: Vec<ChainComplex>,
    comp: Vec<ChainMap>,
}

impl SemiCategory {
    /// `homs` is indexed by `a * n + b`, `comp` by `(a * n + b) * n + c`.
    pub fn new(objects: ObjectSet, homs: Vec<ChainComplex>, comp: Vec<ChainMap>) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n || comp.len() != n * n * n {
            return Err(Error::Structure("one hom per pair and one composition per triple required".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let m = &comp[(a * n + b) * n + c];
                    if m.source() != &tensor(&homs[a * n + b], &homs[b * n + c]) || m.target() != &homs[a * n + c] {
                        return Err(Error::Structure(format!(
                            "composition {}{}{} has the wrong endpoints",
                            objects.name(a),
                            objects.name(b),
                            objects.name(c)
                        )));
                    }
                }
            }
        }
        Ok(SemiCategory { objects, homs, comp })
    }

    pub fn objects(&self) -> &ObjectSet {
        &self.objects
    }

    pub fn hom(&self, a: usize, b: usize) -> &ChainComplex {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn comp(&self, a: usize, b: usize, c: usize) -> &ChainMap {
        let n = self.objects.len();
        &self.comp[(a * n + b) * n + c]
    }

    /// Quadruples `(a, b, c, d)` where `(xy)z != x(yz)`.
    pub fn associativity_failures(&self) -> Result<Vec<(usize, usize, usize, usize)>> {
        let n = self.objects.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (x, y, z) = (self.hom(a, b), self.hom(b, c), self.hom(c, d));
                        let left = self
                            .comp(a, c, d)
                            .compose(&tensor_map(self.comp(a, b, c), &ChainMap::identity(z)))?;
                        let right = self
                            .comp(a, b, d)
                            .compose(&tensor_map(&ChainMap::identity(x), self.comp(b, c, d)))?
                            .compose(&regroup(&[x.clone(), y.clone(), z.clone()], &[1, 2])?)?;
                        if left != right {
                            out.push((a, b, c, d));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_associative(&self) -> Result<bool> {
        Ok(self.associativity_failures()?.is_empty())
    }

    /// Homology of every hom, as complexes with zero differential, with the
    /// composition induced on classes.
    pub fn homology(&self) -> Result<SemiCategory> {
        let hs: Vec<Homology> = self.homs.iter().map(Homology::of).collect();
        let homs: Vec<ChainComplex> = hs.iter().map(graded_homology).collect();
        let lifts: Vec<ChainMap> = hs
            .iter()
            .zip(&homs)
            .zip(&self.homs)
            .map(|((h, g), c)| lift_map(h, g, c))
            .collect::<Result<_>>()?;
        let n = self.objects.len();
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ab, bc, ac) = (a * n + b, b * n + c, a * n + c);
                    let on_cycles = self.comp(a, b, c).compose(&tensor_map(&lifts[ab], &lifts[bc]))?;
                    comp.push(on_classes(&on_cycles, &hs[ac], &homs[ac])?);
                }
            }
        }
        SemiCategory::new(self.objects.clone(), homs, comp)
    }

    /// Replaces every hom by an isomorphic copy in a random basis.
    pub fn conjugate_randomly<R: Rng>(&self, rng: &mut R) -> Result<SemiCategory> {
        let n = self.objects.len();
        let changed: Vec<(ChainComplex, ChainMap)> =
            self.homs.iter().map(|h| random_basis_change(rng, h)).collect::<Result<_>>()?;
        let inverses: Vec<ChainMap> = changed
            .iter()
            .map(|(_, m)| m.inverse().ok_or_else(|| Error::Structure("basis change not invertible".into())))
            .collect::<Result<_>>()?;
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let inner = tensor_map(&inverses[a * n + b], &inverses[b * n + c]);
                    comp.push(changed[a * n + c].1.compose(self.comp(a, b, c))?.compose(&inner)?);
                }
            }
        }
        SemiCategory::new(self.objects.clone(), changed.into_iter().map(|(c, _)| c).collect(), comp)
    }
}

/// The complex with the Betti numbers of `h` and zero differential.
pub(crate) fn graded_homology(h: &Homology) -> ChainComplex {
    let dims = h.betti.clone();
    let boundaries = (1..dims.len()).map(|k| QMatrix::zeros(dims[k - 1], dims[k])).collect();
    ChainComplex::new_unchecked(dims, boundaries)
}

/// The chain map `H -> C` sending each class to its chosen cycle.
pub(crate) fn lift_map(h: &Homology, graded: &ChainComplex, c: &ChainComplex) -> Result<ChainMap> {
    ChainMap::new_unchecked(graded.clone(), c.clone(), h.cycle_lifts.clone())
}

/// A chain map from a zero-differential complex into `C`, read on classes.
pub(crate) fn on_classes(f: &ChainMap, h: &Homology, graded: &ChainComplex) -> Result<ChainMap> {
    let comps = (0..f.source().len())
        .map(|n| h.class_coordinates(n, &f.component(n)))
        .collect();
    ChainMap::new_unchecked(f.source().clone(), graded.clone(), comps)
}

/// The locally constant diagram: every value `D(x_0, x_n)`, structure
/// maps identities, laxity the composition.
pub fn inflate(d: &SemiCategory, truncation: usize) -> Result<LaxDiagram> {
    let shapes = Arc::new(SxShapes::new(d.objects(), truncation)?);
    let components = shapes
        .shapes()
        .iter()
        .map(|sh| {
            let (a, b) = sh.endpoints();
            HomFunctor::constant(sh.clone(), d.hom(a, b))
        })
        .collect();
    let bundle = Bundle::new(shapes, components)?;
    LaxDiagram::from_fn(bundle, |s, t| Ok(d.comp(s.source(), s.target(), t.target()).clone()))
}

/// A candidate unit in degree 0 of `hom(a, a)`.
#[derive(Clone, Debug)]
pub struct UnitVerdict {
    pub object: usize,
    /// Coordinates of the unit class, when one exists.
    pub unit: Option<Vec<Rational>>,
    pub unique: bool,
}

/// Two-sided units of the composition on homology, one verdict per
/// object.
pub fn homology_units(d: &SemiCategory) -> Result<Vec<UnitVerdict>> {
    let h = d.homology()?;
    let n = h.objects().len();
    let mut out = Vec::with_capacity(n);
    for a in 0..n {
        let haa = h.hom(a, a);
        let m = haa.dim(0);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        for b in 0..n {
            // e · x = x for x in hom(a, b)
            let hab = h.hom(a, b);
            let left = h.comp(a, a, b);
            for deg in 0..hab.len() {
                let c = left.component(deg);
                for j in 0..hab.dim(deg) {
                    for k in 0..hab.dim(deg) {
                        rows.push((0..m).map(|i| c.get(k, tensor_index(haa, hab, 0, i, deg, j)).clone()).collect());
                        rhs.push(int(i64::from(j == k)));
                    }
                }
            }
            // y · e = y for y in hom(b, a)
            let hba = h.hom(b, a);
            let right = h.comp(b, a, a);
            for deg in 0..hba.len() {
                let c = right.component(deg);
                for j in 0..hba.dim(deg) {
                    for k in 0..hba.dim(deg) {
                        rows.push((0..m).map(|i| c.get(k, tensor_index(hba, haa, deg, j, 0, i)).clone()).collect());
                        rhs.push(int(i64::from(j == k)));
                    }
                }
            }
        }
        let r = rows.len();
        let entries: Vec<Rational> = rows.into_iter().flatten().collect();
        let system = QMatrix::from_entries(r, m, entries)?;
        let b = QMatrix::from_entries(r, 1, rhs)?;
        let unit = system.solve(&b).map(|x| x.column(0));
        let unique = unit.is_some() && system.rank() == m;
        out.push(UnitVerdict { object: a, unit, unique });
    }
    Ok(out)
}

/// Small differential graded algebras used to build test categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallAlgebra {
    Rationals,
    /// `ℚ[x]/x³` with `x` in degree 0.
    TruncatedPolynomial,
    /// `{1, e}` with `e` in degree 1 and `e² = 0`.
    Exterior,
    /// Upper-triangular 2×2 matrices.
    Triangular,
    /// `{1, a, b}` with `a` in degree 0, `b` in degree 1, `db = λa`, and
    /// all products of `a` and `b` zero.
    Dga(i64),
}

/// A basis element: `(degree, index)`.
type Basis = (usize, usize);

fn algebra_data(kind: SmallAlgebra) -> (Vec<usize>, Vec<QMatrix>, Vec<(Basis, Basis, Basis)>) {
    match kind {
        SmallAlgebra::Rationals => (vec![1], vec![], vec![((0, 0), (0, 0), (0, 0))]),
        SmallAlgebra::TruncatedPolynomial => {
            let mut t = Vec::new();
            for i in 0..3 {
                for j in 0..3 - i {
                    t.push(((0, i), (0, j), (0, i + j)));
                }
            }
            (vec![3], vec![], t)
        }
        SmallAlgebra::Exterior => (
            vec![1, 1],
            vec![QMatrix::zeros(1, 1)],
            vec![((0, 0), (0, 0), (0, 0)), ((0, 0), (1, 0), (1, 0)), ((1, 0), (0, 0), (1, 0))],
        ),
        SmallAlgebra::Triangular => (
            vec![3],
            vec![],
            vec![((0, 0), (0, 0), (0, 0)), ((0, 0), (0, 1), (0, 1)), ((0, 1), (0, 2), (0, 1)), ((0, 2), (0, 2), (0, 2))],
        ),
        SmallAlgebra::Dga(lambda) => (
            vec![2, 1],
            vec![QMatrix::from_i64(2, 1, &[0, lambda])],
            vec![
                ((0, 0), (0, 0), (0, 0)),
                ((0, 0), (0, 1), (0, 1)),
                ((0, 1), (0, 0), (0, 1)),
                ((0, 0), (1, 0), (1, 0)),
                ((1, 0), (0, 0), (1, 0)),
            ],
        ),
    }
}

/// The complex and multiplication `R ⊗ R -> R` of a small algebra.
pub fn small_algebra(kind: SmallAlgebra) -> Result<(ChainComplex, ChainMap)> {
    let (dims, boundaries, table) = algebra_data(kind);
    let r = ChainComplex::new(dims, boundaries)?;
    let rr = tensor(&r, &r);
    let mut comps: Vec<QMatrix> = (0..rr.len()).map(|n| QMatrix::zeros(r.dim(n), rr.dim(n))).collect();
    for ((p, i), (q, j), (deg, k)) in table {
        comps[deg].set(k, tensor_index(&r, &r, p, i, q, j), int(1));
    }
    let mult = ChainMap::new(rr, r.clone(), comps)?;
    Ok((r, mult))
}

/// How the homs of a test category are laid out over its objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CategoryPattern {
    /// Every hom is the algebra.
    Full,
    /// `hom(a, b)` is the algebra for `a <= b` and zero otherwise.
    UpperTriangular,
}

/// A semi-category whose nonzero homs are copies of one algebra, composed
/// by its multiplication.
pub fn algebra_category(objects: &ObjectSet, kind: SmallAlgebra, pattern: CategoryPattern) -> Result<SemiCategory> {
    let (r, mult) = small_algebra(kind)?;
    let n = objects.len();
    let present = |a: usize, b: usize| pattern == CategoryPattern::Full || a <= b;
    let homs: Vec<ChainComplex> = (0..n * n)
        .map(|p| if present(p / n, p % n) { r.clone() } else { ChainComplex::zero() })
        .collect();
    let mut comp = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let src = tensor(&homs[a * n + b], &homs[b * n + c]);
                comp.push(if present(a, b) && present(b, c) {
                    mult.clone()
                } else {
                    ChainMap::zero(&src, &homs[a * n + c])
                });
            }
        }
    }
    SemiCategory::new(objects.clone(), homs, comp)
}

/// A semi-category with the given homs and zero composition.
pub fn zero_composition(objects: &ObjectSet, homs: Vec<ChainComplex>) -> Result<SemiCategory> {
    let n = objects.len();
    let mut comp = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                comp.push(ChainMap::zero(&tensor(&homs[a * n + b], &homs[b * n + c]), &homs[a * n + c]));
            }
        }
    }
    SemiCategory::new(objects.clone(), homs, comp)
}

/// A random strict semi-category on one or two objects, in a random basis.
pub fn random_semicategory<R: Rng>(rng: &mut R) -> Result<SemiCategory> {
    let names: &[&str] = if rng.gen_bool(0.5) { &["A"] } else { &["A", "B"] };
    let objects = ObjectSet::new(names.iter().copied())?;
    let base = if rng.gen_ratio(1, 6) {
        let homs = (0..objects.len() * objects.len())
            .map(|_| crate::fixtures::random_complex(rng, 2, 2))
            .collect::<Result<_>>()?;
        zero_composition(&objects, homs)?
    } else {
        let kind = match rng.gen_range(0..5) {
            0 => SmallAlgebra::Rationals,
            1 => SmallAlgebra::TruncatedPolynomial,
            2 => SmallAlgebra::Exterior,
            3 => SmallAlgebra::Triangular,
            _ => SmallAlgebra::Dga(*[1, -1, 2, 3].get(rng.gen_range(0..4)).expect("in range")),
        };
        let pattern = if rng.gen_bool(0.5) { CategoryPattern::Full } else { CategoryPattern::UpperTriangular };
        algebra_category(&objects, kind, pattern)?
    };
    base.conjugate_randomly(rng)
}
