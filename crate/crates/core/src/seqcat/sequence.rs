//! Labeled sequences and their decompositions under concatenation.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::surjection::Surjection;
use crate::error::{Error, Result};

/// The finite object set `X`, with objects referred to by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObjectSet {
    names: Vec<String>,
}

impl ObjectSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Structure("object set is empty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Structure(format!("object {n:?} listed twice")));
            }
        }
        Ok(ObjectSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Structure(format!("unknown object {name:?}")))
    }

    /// All ordered pairs `(A, B)`, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    }

    pub fn format_seq(&self, s: &LabeledSeq) -> String {
        let parts: Vec<&str> = s.labels().iter().map(|&l| self.name(l)).collect();
        format!("({})", parts.join(","))
    }

    pub fn parse_seq(&self, labels: &[String]) -> Result<LabeledSeq> {
        let idx = labels.iter().map(|l| self.index(l)).collect::<Result<Vec<_>>>()?;
        LabeledSeq::new(idx)
    }
}

/// A sequence `(x_0, ..., x_n)` of objects, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledSeq {
    labels: Vec<usize>,
}

impl fmt::Debug for LabeledSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels)
    }
}

impl LabeledSeq {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::Structure(format!(
                "a sequence needs dimension at least 1, got labels {labels:?}"
            )));
        }
        Ok(LabeledSeq { labels })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn source(&self) -> usize {
        self.labels[0]
    }

    pub fn target(&self) -> usize {
        *self.labels.last().expect("nonempty")
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.source(), self.target())
    }

    /// Concatenation `self ⋆ other`; the shared endpoint appears once.
    pub fn concat(&self, other: &LabeledSeq) -> Result<LabeledSeq> {
        if self.target() != other.source() {
            return Err(Error::Structure(format!(
                "cannot concatenate {self:?} and {other:?}"
            )));
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels[1..]);
        Ok(LabeledSeq { labels })
    }

    /// The sequence obtained by deleting the points that `f` collapses.
    pub fn collapse(&self, f: &Surjection) -> Result<LabeledSeq> {
        if f.source_dim() != self.dim() {
            return Err(Error::Structure(format!(
                "{f:?} does not apply to dimension {}",
                self.dim()
            )));
        }
        let mut labels = vec![self.labels[0]];
        for c in f.kept_points() {
            labels.push(self.labels[c]);
        }
        labels.push(self.target());
        Ok(LabeledSeq { labels })
    }

    /// Sub-sequence between points `i < j`.
    pub fn slice(&self, i: usize, j: usize) -> LabeledSeq {
        LabeledSeq {
            labels: self.labels[i..=j].to_vec(),
        }
    }
}

/// A way of writing `z` as a concatenation of pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub seq: LabeledSeq,
    /// Increasing inner points of `seq` where it is cut.
    pub cuts: Vec<usize>,
    pub pieces: Vec<LabeledSeq>,
}

impl Decomposition {
    pub fn new(seq: &LabeledSeq, cuts: Vec<usize>) -> Result<Self> {
        if cuts.windows(2).any(|w| w[0] >= w[1]) || cuts.iter().any(|&c| c == 0 || c >= seq.dim()) {
            return Err(Error::Structure(format!(
                "{cuts:?} are not increasing inner points of {seq:?}"
            )));
        }
        let mut bounds = vec![0];
        bounds.extend_from_slice(&cuts);
        bounds.push(seq.dim());
        let pieces = bounds.windows(2).map(|w| seq.slice(w[0], w[1])).collect();
        Ok(Decomposition {
            seq: seq.clone(),
            cuts,
            pieces,
        })
    }

    pub fn is_proper(&self) -> bool {
        !self.cuts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn piece_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(LabeledSeq::dim).collect()
    }

    /// The decomposition with cut number `j` erased.
    pub fn erase_cut(&self, j: usize) -> Decomposition {
        let mut cuts = self.cuts.clone();
        cuts.remove(j);
        Decomposition::new(&self.seq, cuts).expect("still valid")
    }
}

/// Trivial decomposition first, then by number of cuts, then
/// lexicographically by cut set.
pub fn enumerate_decompositions(z: &LabeledSeq, proper_only: bool) -> Vec<Decomposition> {
    let inner: Vec<usize> = (1..z.dim()).collect();
    let mut out = Vec::new();
    let start = if proper_only { 1 } else { 0 };
    for k in start..=inner.len() {
        for cuts in super::surjection::combinations(&inner, k) {
            out.push(Decomposition::new(z, cuts).expect("inner cuts"));
        }
    }
    out
}

/// All sequences from `a` to `b` of dimension `1..=max_dim`, by dimension
/// then lexicographically.
pub fn enumerate_sequences(x: &ObjectSet, a: usize, b: usize, max_dim: usize) -> Result<Vec<LabeledSeq>> {
    if a >= x.len() || b >= x.len() {
        return Err(Error::Structure(format!("endpoints ({a}, {b}) are not objects")));
    }
    let mut out = Vec::new();
    for n in 1..=max_dim {
        let inner = n - 1;
        let count = x.len().pow(inner as u32);
        for code in 0..count {
            let mut labels = vec![a];
            let mut digits = vec![0; inner];
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = c % x.len();
                c /= x.len();
            }
            labels.extend(digits);
            labels.push(b);
            out.push(LabeledSeq { labels });
        }
    }
    Ok(out)
}
