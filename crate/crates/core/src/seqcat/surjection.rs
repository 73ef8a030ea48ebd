//! Monotone surjections between gap sets, and arbitrary surjective
//! functions between finite sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monotone surjection from `{0..n-1}` onto `{0..m-1}`.
///
/// A sequence of dimension `n` has `n` gaps between consecutive labels;
/// collapsing along `f` merges the gaps sent to the same value, which
/// deletes inner point `i` exactly when `f(i-1) == f(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surjection {
    source_dim: usize,
    target_dim: usize,
    values: Vec<usize>,
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}{:?}", self.source_dim, self.target_dim, self.values)
    }
}

impl Surjection {
    pub fn new(target_dim: usize, values: Vec<usize>) -> Result<Self> {
        let source_dim = values.len();
        let ok_start = values.first().is_none_or(|&v| v == 0);
        let ok_end = values.last().map_or(target_dim == 0, |&v| v + 1 == target_dim);
        let ok_steps = values.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
        if !(ok_start && ok_end && ok_steps) {
            return Err(Error::Structure(format!(
                "{values:?} is not a monotone surjection onto {target_dim} gaps"
            )));
        }
        Ok(Surjection {
            source_dim,
            target_dim,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Surjection {
            source_dim: n,
            target_dim: n,
            values: (0..n).collect(),
        }
    }

    /// The surjection deleting exactly the inner points in `deleted`
    /// (each in `1..n`).
    pub fn deleting(n: usize, deleted: &[usize]) -> Result<Self> {
        if deleted.iter().any(|&p| p == 0 || p >= n) {
            return Err(Error::Structure(format!(
                "inner points of a dimension-{n} sequence are 1..{}, got {deleted:?}",
                n.saturating_sub(1)
            )));
        }
        let mut values = Vec::with_capacity(n);
        let mut v = 0;
        for i in 0..n {
            if i > 0 && !deleted.contains(&i) {
                v += 1;
            }
            values.push(v);
        }
        Ok(Surjection {
            source_dim: n,
            target_dim: if n == 0 { 0 } else { v + 1 },
            values,
        })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim == self.target_dim
    }

    /// Inner points (in `1..n`) that are kept.
    pub fn kept_points(&self) -> Vec<usize> {
        (1..self.source_dim)
            .filter(|&i| self.values[i - 1] < self.values[i])
            .collect()
    }

    pub fn deleted_points(&self) -> Vec<usize> {
        (1..self.source_dim)
            .filter(|&i| self.values[i - 1] == self.values[i])
            .collect()
    }

    pub fn keeps_point(&self, c: usize) -> bool {
        c == 0 || c == self.source_dim || self.values[c - 1] < self.values[c]
    }

    /// Image of point `c` (in `0..=n`) of the source sequence.
    pub fn point_image(&self, c: usize) -> usize {
        if c == self.source_dim {
            self.target_dim
        } else {
            self.values[c]
        }
    }

    /// Gap composition `outer ∘ self`.
    pub fn then(&self, outer: &Surjection) -> Result<Surjection> {
        if self.target_dim != outer.source_dim {
            return Err(Error::Structure(format!(
                "cannot compose {self:?} with {outer:?}"
            )));
        }
        Ok(Surjection {
            source_dim: self.source_dim,
            target_dim: outer.target_dim,
            values: self.values.iter().map(|&v| outer.values[v]).collect(),
        })
    }

    /// Side-by-side sum, matching concatenation of sequences.
    pub fn concat(&self, other: &Surjection) -> Surjection {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|v| v + self.target_dim));
        Surjection {
            source_dim: self.source_dim + other.source_dim,
            target_dim: self.target_dim + other.target_dim,
            values,
        }
    }

    /// Splits at a kept source point `c` (`0 < c < n`).
    pub fn split(&self, c: usize) -> Result<(Surjection, Surjection)> {
        if c == 0 || c >= self.source_dim {
            return Err(Error::Structure(format!(
                "cut {c} is not an inner point of dimension {}",
                self.source_dim
            )));
        }
        if !self.keeps_point(c) {
            return Err(Error::Structure(format!("{self:?} deletes point {c}, so there is no cut there")));
        }
        let mid = self.values[c];
        let left = Surjection {
            source_dim: c,
            target_dim: mid,
            values: self.values[..c].to_vec(),
        };
        let right = Surjection {
            source_dim: self.source_dim - c,
            target_dim: self.target_dim - mid,
            values: self.values[c..].iter().map(|v| v - mid).collect(),
        };
        Ok((left, right))
    }
}

/// `compose(inner, outer)`: first `inner`, then `outer`.
pub fn compose(inner: &Surjection, outer: &Surjection) -> Result<Surjection> {
    inner.then(outer)
}

pub fn split_surjection(f: &Surjection, c: usize) -> Result<(Surjection, Surjection)> {
    f.split(c)
}

pub fn rejoin(left: &Surjection, right: &Surjection) -> Surjection {
    left.concat(right)
}

/// All monotone surjections `n ->> m`, ordered by value vector; there are
/// `binomial(n-1, m-1)` of them for `n, m >= 1`, and one for `n = m = 0`.
pub fn enumerate_surjections(n: usize, m: usize) -> Vec<Surjection> {
    if m > n || (m == 0) != (n == 0) {
        return vec![];
    }
    if n == 0 {
        return vec![Surjection::identity(0)];
    }
    // choose which of the n-1 inner points are kept: m-1 of them
    let mut out = Vec::new();
    let inner: Vec<usize> = (1..n).collect();
    for kept in combinations(&inner, m - 1) {
        let deleted: Vec<usize> = inner.iter().copied().filter(|p| !kept.contains(p)).collect();
        out.push(Surjection::deleting(n, &deleted).expect("inner points"));
    }
    out.sort();
    out
}

pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

/// A surjective function `{0..n-1} ->> {0..m-1}`, not necessarily monotone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SurjectiveFunction {
    target: usize,
    values: Vec<usize>,
}

impl SurjectiveFunction {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        let mut hit = vec![false; target];
        for &v in &values {
            if v >= target {
                return Err(Error::Structure(format!("{values:?} leaves {{0..{target}}}")));
            }
            hit[v] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::Structure(format!("{values:?} is not onto {target} points")));
        }
        Ok(SurjectiveFunction { target, values })
    }

    pub fn identity(n: usize) -> Self {
        SurjectiveFunction {
            target: n,
            values: (0..n).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_bijection(&self) -> bool {
        self.source() == self.target
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &SurjectiveFunction) -> Result<SurjectiveFunction> {
        if self.target != outer.source() {
            return Err(Error::Structure(format!("cannot compose {self:?} with {outer:?}")));
        }
        Ok(SurjectiveFunction {
            target: outer.target,
            values: self.values.iter().map(|&v| outer.values[v]).collect(),
        })
    }

    /// Disjoint union, first block then second.
    pub fn concat(&self, other: &SurjectiveFunction) -> SurjectiveFunction {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|v| v + self.target));
        SurjectiveFunction {
            target: self.target + other.target,
            values,
        }
    }

    pub fn from_monotone(s: &Surjection) -> Self {
        SurjectiveFunction {
            target: s.target_dim(),
            values: s.values().to_vec(),
        }
    }

    pub fn to_monotone(&self) -> Option<Surjection> {
        Surjection::new(self.target, self.values.clone()).ok()
    }

    /// `self = mono ∘ perm` with `perm` a bijection and `mono` monotone;
    /// `perm` sorts the source stably by value.
    pub fn factor(&self) -> (SurjectiveFunction, Surjection) {
        let n = self.source();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (self.values[i], i));
        // perm sends source i to its rank in `order`
        let mut perm = vec![0; n];
        for (rank, &i) in order.iter().enumerate() {
            perm[i] = rank;
        }
        let mono_values: Vec<usize> = order.iter().map(|&i| self.values[i]).collect();
        (
            SurjectiveFunction { target: n, values: perm },
            Surjection::new(self.target, mono_values).expect("sorted surjection is monotone"),
        )
    }
}

pub fn enumerate_surjective_functions(n: usize, m: usize) -> Vec<SurjectiveFunction> {
    if m > n || (m == 0 && n > 0) {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        if let Ok(f) = SurjectiveFunction::new(m, cur.clone()) {
            out.push(f);
        }
        // odometer over {0..m}^n
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < m {
                break;
            }
            cur[i] = 0;
        }
    }
}
