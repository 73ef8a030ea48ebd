//! Koszul tensor products, symmetry and reassociation of complexes.
//!
//! Basis convention for `A ⊗ B` in degree `n`: blocks `A_p ⊗ B_{n-p}` in
//! increasing `p`; inside a block, `a_i ⊗ b_j` sits at `i * dim B_{n-p} + j`.
//! Iterated products are always nested to the left.

use std::collections::HashMap;

use num_traits::One;

use super::complex::{ChainComplex, ChainMap, DirectSum};
use super::matrix::QMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `(p, offset)` pairs for each degree of `A ⊗ B`.
fn block_layout(a: &ChainComplex, b: &ChainComplex) -> Vec<Vec<(usize, usize)>> {
    if a.is_zero() || b.is_zero() {
        return vec![];
    }
    let top = a.len() + b.len() - 2;
    (0..=top)
        .map(|n| {
            let mut acc = 0;
            let mut row = Vec::new();
            for p in 0..=n.min(a.len() - 1) {
                let q = n - p;
                if q >= b.len() {
                    continue;
                }
                row.push((p, acc));
                acc += a.dim(p) * b.dim(q);
            }
            row
        })
        .collect()
}

fn block_offset(layout: &[Vec<(usize, usize)>], n: usize, p: usize) -> Option<usize> {
    layout
        .get(n)?
        .iter()
        .find(|&&(pp, _)| pp == p)
        .map(|&(_, o)| o)
}

pub fn tensor(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    if a.is_zero() || b.is_zero() {
        return ChainComplex::zero();
    }
    let layout = block_layout(a, b);
    let dims: Vec<usize> = (0..layout.len())
        .map(|n| (0..=n).map(|p| a.dim(p) * b.dim(n - p)).sum())
        .collect();
    let mut boundaries = Vec::with_capacity(dims.len().saturating_sub(1));
    for n in 1..dims.len() {
        let mut d = QMatrix::zeros(dims[n - 1], dims[n]);
        for &(p, col) in &layout[n] {
            let q = n - p;
            if p >= 1 {
                if let Some(row) = block_offset(&layout, n - 1, p - 1) {
                    let blk = a.boundary(p).kron(&QMatrix::identity(b.dim(q)));
                    d.put_block(row, col, &blk);
                }
            }
            if q >= 1 {
                if let Some(row) = block_offset(&layout, n - 1, p) {
                    let mut blk = QMatrix::identity(a.dim(p)).kron(&b.boundary(q));
                    if p % 2 == 1 {
                        blk = -&blk;
                    }
                    d.put_block(row, col, &blk);
                }
            }
        }
        boundaries.push(d);
    }
    ChainComplex::new_unchecked(dims, boundaries)
}

pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let src = tensor(f.source(), g.source());
    let tgt = tensor(f.target(), g.target());
    if src.is_zero() || tgt.is_zero() {
        return ChainMap::zero(&src, &tgt);
    }
    let sl = block_layout(f.source(), g.source());
    let tl = block_layout(f.target(), g.target());
    let len = src.len().max(tgt.len());
    let comps = (0..len)
        .map(|n| {
            let mut m = QMatrix::zeros(tgt.dim(n), src.dim(n));
            for p in 0..=n {
                let q = n - p;
                let (Some(r), Some(c)) = (block_offset(&tl, n, p), block_offset(&sl, n, p)) else {
                    continue;
                };
                let (fp, gq) = (f.component(p), g.component(q));
                if fp.is_zero() || gq.is_zero() {
                    continue;
                }
                m.put_block(r, c, &fp.kron(&gq));
            }
            m
        })
        .collect();
    ChainMap::new_unchecked(src, tgt, comps).expect("tensor map shapes")
}

/// `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x`.
pub fn braiding(a: &ChainComplex, b: &ChainComplex) -> ChainMap {
    permute_factors(&[a.clone(), b.clone()], &[1, 0]).expect("valid permutation")
}

/// Left-nested product; the empty product is the unit.
pub fn tensor_all(factors: &[ChainComplex]) -> ChainComplex {
    let mut acc = ChainComplex::unit();
    for f in factors {
        acc = tensor(&acc, f);
    }
    acc
}

pub fn tensor_all_maps(maps: &[ChainMap]) -> ChainMap {
    let mut acc = ChainMap::identity(&ChainComplex::unit());
    for f in maps {
        acc = tensor_map(&acc, f);
    }
    acc
}

/// A basis vector of an iterated product, as `(degree, index)` per factor.
type Label = Vec<(usize, usize)>;

/// Basis labels of `tensor_all(factors)`, per degree, in basis order.
fn product_labels(factors: &[ChainComplex]) -> Vec<Vec<Label>> {
    let mut acc: Vec<Vec<Label>> = vec![vec![vec![]]];
    for f in factors {
        acc = combine_labels(&acc, &atom_labels(f));
    }
    acc
}

fn atom_labels(c: &ChainComplex) -> Vec<Vec<Label>> {
    (0..c.len())
        .map(|d| (0..c.dim(d)).map(|i| vec![(d, i)]).collect())
        .collect()
}

fn combine_labels(left: &[Vec<Label>], right: &[Vec<Label>]) -> Vec<Vec<Label>> {
    let nonempty = |v: &[Vec<Label>]| v.iter().any(|d| !d.is_empty());
    if !nonempty(left) || !nonempty(right) {
        return vec![];
    }
    let top = left.len() + right.len() - 2;
    let mut out: Vec<Vec<Label>> = (0..=top)
        .map(|n| {
            let mut v = Vec::new();
            for p in 0..=n.min(left.len() - 1) {
                let q = n - p;
                if q >= right.len() {
                    continue;
                }
                for l in &left[p] {
                    for r in &right[q] {
                        let mut x = l.clone();
                        x.extend_from_slice(r);
                        v.push(x);
                    }
                }
            }
            v
        })
        .collect();
    while out.last().is_some_and(Vec::is_empty) {
        out.pop();
    }
    out
}

/// The reassociation `⊗(factors) -> ⊗_g ⊗(group g)`, where groups are
/// consecutive runs of `group_sizes[g]` factors. Signless.
pub fn regroup(factors: &[ChainComplex], group_sizes: &[usize]) -> Result<ChainMap> {
    if group_sizes.iter().sum::<usize>() != factors.len() {
        return Err(Error::Shape(format!(
            "group sizes {group_sizes:?} do not cover {} factors",
            factors.len()
        )));
    }
    let mut groups = Vec::with_capacity(group_sizes.len());
    let mut group_labels: Vec<Vec<Vec<Label>>> = Vec::with_capacity(group_sizes.len());
    let mut start = 0;
    for &g in group_sizes {
        let part = &factors[start..start + g];
        groups.push(tensor_all(part));
        group_labels.push(product_labels(part));
        start += g;
    }
    let mut target_labels: Vec<Vec<Label>> = vec![vec![vec![]]];
    for gl in &group_labels {
        target_labels = combine_labels(&target_labels, gl);
    }
    let source = tensor_all(factors);
    let target = tensor_all(&groups);
    let source_labels = product_labels(factors);
    relabel_map(&source, &target, &source_labels, &target_labels, |l| (l.clone(), false))
}

/// The inverse of [`regroup`].
pub fn flatten(factors: &[ChainComplex], group_sizes: &[usize]) -> Result<ChainMap> {
    let r = regroup(factors, group_sizes)?;
    let comps = r.components().iter().map(QMatrix::transpose).collect();
    ChainMap::new_unchecked(r.target().clone(), r.source().clone(), comps)
}

/// Reorders factors with the Koszul sign: output factor `k` is input factor
/// `perm[k]`.
pub fn permute_factors(factors: &[ChainComplex], perm: &[usize]) -> Result<ChainMap> {
    let r = factors.len();
    let mut seen = vec![false; r];
    if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Structure(format!("{perm:?} is not a permutation of {r} factors")));
    }
    let mut inv = vec![0; r];
    for (k, &p) in perm.iter().enumerate() {
        inv[p] = k;
    }
    let permuted: Vec<ChainComplex> = perm.iter().map(|&p| factors[p].clone()).collect();
    let source = tensor_all(factors);
    let target = tensor_all(&permuted);
    let source_labels = product_labels(factors);
    let target_labels = product_labels(&permuted);
    relabel_map(&source, &target, &source_labels, &target_labels, |l| {
        let out: Label = perm.iter().map(|&p| l[p]).collect();
        let mut odd = false;
        for i in 0..r {
            for j in i + 1..r {
                if inv[j] < inv[i] && l[i].0 % 2 == 1 && l[j].0 % 2 == 1 {
                    odd = !odd;
                }
            }
        }
        (out, odd)
    })
}

fn relabel_map(
    source: &ChainComplex,
    target: &ChainComplex,
    source_labels: &[Vec<Label>],
    target_labels: &[Vec<Label>],
    send: impl Fn(&Label) -> (Label, bool),
) -> Result<ChainMap> {
    let len = source.len().max(target.len());
    let mut comps = Vec::with_capacity(len);
    for n in 0..len {
        let mut m = QMatrix::zeros(target.dim(n), source.dim(n));
        let index: HashMap<&Label, usize> = target_labels
            .get(n)
            .map(|v| v.iter().enumerate().map(|(i, l)| (l, i)).collect())
            .unwrap_or_default();
        if let Some(ls) = source_labels.get(n) {
            for (c, l) in ls.iter().enumerate() {
                let (out, odd) = send(l);
                let r = *index
                    .get(&out)
                    .ok_or_else(|| Error::Shape("relabeling leaves the target basis".into()))?;
                let one = Rational::one();
                m.set(r, c, if odd { -one } else { one });
            }
        }
        comps.push(m);
    }
    ChainMap::new_unchecked(source.clone(), target.clone(), comps)
}

/// Position of `x_i ⊗ y_j` (with `x_i` in degree `p`, `y_j` in degree `q`)
/// in degree `p + q` of `a ⊗ b`.
pub fn tensor_index(a: &ChainComplex, b: &ChainComplex, p: usize, i: usize, q: usize, j: usize) -> usize {
    let n = p + q;
    let offset: usize = (0..p).map(|r| a.dim(r) * b.dim(n - r)).sum();
    offset + i * b.dim(q) + j
}

/// Distributes a product of direct sums: returns the sum over index tuples
/// (lexicographic, first factor slowest) of the products of summands, the
/// tuples themselves, and the isomorphism from that sum onto the product of
/// the totals.
pub fn distribute(sums: &[&DirectSum]) -> (DirectSum, Vec<Vec<usize>>, ChainMap) {
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for s in sums {
        let mut next = Vec::new();
        for t in &tuples {
            for k in 0..s.summands.len() {
                let mut t2 = t.clone();
                t2.push(k);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let pieces: Vec<ChainComplex> = tuples
        .iter()
        .map(|t| {
            let fs: Vec<ChainComplex> = t.iter().zip(sums).map(|(&k, s)| s.summands[k].clone()).collect();
            tensor_all(&fs)
        })
        .collect();
    let total = DirectSum::new(pieces);
    let target = tensor_all(&sums.iter().map(|s| s.total.clone()).collect::<Vec<_>>());
    let maps: Vec<ChainMap> = tuples
        .iter()
        .map(|t| {
            let inj: Vec<ChainMap> = t.iter().zip(sums).map(|(&k, s)| s.injection(k)).collect();
            tensor_all_maps(&inj)
        })
        .collect();
    let iso = total.copair(&target, &maps).expect("distributor endpoints");
    (total, tuples, iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::rational::int;

    #[test]
    fn interval_squared() {
        let i = ChainComplex::interval();
        let ii = tensor(&i, &i);
        assert_eq!(ii.dims(), &[4, 4, 1]);
        // e⊗e sits alone in degree 2; its boundary is (v1-v0)⊗e - e⊗(v1-v0).
        // Degree-1 basis: block p=0 (v0⊗e, v1⊗e), then p=1 (e⊗v0, e⊗v1).
        let d2 = ii.boundary(2);
        let col: Vec<_> = (0..4).map(|r| d2.get(r, 0).clone()).collect();
        assert_eq!(col, vec![int(-1), int(1), int(1), int(-1)]);
    }

    #[test]
    fn unit_is_strict() {
        let i = ChainComplex::interval();
        assert_eq!(tensor(&ChainComplex::unit(), &i), i);
        assert_eq!(tensor(&i, &ChainComplex::unit()), i);
        let f = braiding(&i, &i);
        let u = ChainMap::identity(&ChainComplex::unit());
        assert_eq!(tensor_map(&u, &f), f);
        assert_eq!(tensor_map(&f, &u), f);
    }

    #[test]
    fn braiding_sign_and_involution() {
        let i = ChainComplex::interval();
        let b = braiding(&i, &i);
        assert_eq!(b.component(2).get(0, 0), &int(-1));
        assert_eq!(b.compose(&b).unwrap(), ChainMap::identity(&tensor(&i, &i)));
        b.check_commutes().unwrap();
    }

    #[test]
    fn regroup_is_chain_iso() {
        let i = ChainComplex::interval();
        let c = ChainComplex::circle();
        let fs = [i.clone(), c.clone(), i.clone()];
        let r = regroup(&fs, &[1, 2]).unwrap();
        r.check_commutes().unwrap();
        assert!(r.is_iso());
        assert_eq!(r.target(), &tensor(&i, &tensor(&c, &i)));
        let back = flatten(&fs, &[1, 2]).unwrap();
        assert_eq!(back.compose(&r).unwrap(), ChainMap::identity(&tensor_all(&fs)));
    }

    #[test]
    fn permutation_is_chain_map() {
        let i = ChainComplex::interval();
        let c = ChainComplex::circle();
        let p = permute_factors(&[i.clone(), c.clone(), i.clone()], &[2, 0, 1]).unwrap();
        p.check_commutes().unwrap();
        assert!(p.is_iso());
    }

    #[test]
    fn distributor_is_iso() {
        let s = DirectSum::new(vec![ChainComplex::interval(), ChainComplex::unit()]);
        let t = DirectSum::new(vec![ChainComplex::circle(), ChainComplex::disk(1).unwrap()]);
        let (sum, tuples, iso) = distribute(&[&s, &t]);
        assert_eq!(tuples.len(), 4);
        assert_eq!(sum.summands.len(), 4);
        iso.check_commutes().unwrap();
        assert!(iso.is_iso());
    }
}
