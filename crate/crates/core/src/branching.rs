//! Branching matrices for the diagonal embeddings of signature `(n,0,0)`.
//!
//! Entries are stored with the smaller module on the row axis and the larger
//! one on the column axis: column `λ` lists the decomposition of the
//! restriction of `λ` to the diagonal subalgebra.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lr::{cap_c, cap_d, cap_e, cap_f, cap_g, lr_multi};
use crate::partitions::{pair_axis, parity_axis, partitions_of, Partition, PartitionPair};

/// Square matrix of non-negative integers, row-major.
pub type IntMatrix = Vec<Vec<u64>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
        }
    }

    /// Number of integer parameters (`d`, `(p,q)` or `p`).
    pub fn param_count(self) -> usize {
        if self == Family::C {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Axis label: a single partition (families A, B, D, E) or a pair (C).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Single(Partition),
    Pair(PartitionPair),
}

impl Label {
    /// `(|λ⁺|, |λ⁻|)`, with the second entry zero for single partitions.
    pub fn sizes(&self) -> (usize, usize) {
        match self {
            Label::Single(p) => (p.size(), 0),
            Label::Pair(p) => p.sizes(),
        }
    }

    /// Pair view; a single partition `λ` becomes `(λ, ())`.
    pub fn as_pair(&self) -> PartitionPair {
        match self {
            Label::Single(p) => PartitionPair::new(p.clone(), Partition::empty()),
            Label::Pair(p) => p.clone(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Single(p) => p.fmt(f),
            Label::Pair(p) => p.fmt(f),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which matrix to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixSpec {
    /// `A^n_d`, or `B^n_d` when `dual` is set (same entries).
    Type1 {
        n: usize,
        d: usize,
        dual: bool,
    },
    Type2 {
        n: usize,
        p: usize,
        q: usize,
    },
    Symplectic {
        n: usize,
        p: usize,
    },
    Orthogonal {
        n: usize,
        p: usize,
    },
}

impl MatrixSpec {
    /// Builds the spec from a family letter and its parameters.
    pub fn new(family: Family, n: usize, params: &[usize]) -> Result<Self> {
        if params.len() != family.param_count() {
            return Err(Error::InvalidParameter(format!(
                "family {family} takes {} parameter(s), got {}",
                family.param_count(),
                params.len()
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let spec = match family {
            Family::A | Family::B => MatrixSpec::Type1 {
                n,
                d: params[0],
                dual: family == Family::B,
            },
            Family::C => MatrixSpec::Type2 {
                n,
                p: params[0],
                q: params[1],
            },
            Family::D => MatrixSpec::Symplectic { n, p: params[0] },
            Family::E => MatrixSpec::Orthogonal { n, p: params[0] },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> Family {
        match *self {
            MatrixSpec::Type1 { dual: false, .. } => Family::A,
            MatrixSpec::Type1 { dual: true, .. } => Family::B,
            MatrixSpec::Type2 { .. } => Family::C,
            MatrixSpec::Symplectic { .. } => Family::D,
            MatrixSpec::Orthogonal { .. } => Family::E,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            MatrixSpec::Type1 { n, .. }
            | MatrixSpec::Type2 { n, .. }
            | MatrixSpec::Symplectic { n, .. }
            | MatrixSpec::Orthogonal { n, .. } => n,
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            MatrixSpec::Type1 { d, .. } => vec![d],
            MatrixSpec::Type2 { p, q, .. } => vec![p, q],
            MatrixSpec::Symplectic { p, .. } | MatrixSpec::Orthogonal { p, .. } => vec![p],
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        match *self {
            MatrixSpec::Type1 { .. } => Ok(()),
            MatrixSpec::Symplectic { n, .. } if n % 2 == 1 => Err(Error::OddSymplecticN(n)),
            _ if n < 2 => Err(Error::InvalidParameter(format!(
                "family {} needs n >= 2, got {n}",
                self.family()
            ))),
            _ => Ok(()),
        }
    }

    /// Canonical axis labels.
    pub fn labels(&self) -> Vec<Label> {
        match *self {
            MatrixSpec::Type1 { d, .. } => partitions_of(d).into_iter().map(Label::Single).collect(),
            MatrixSpec::Type2 { p, q, .. } => pair_axis(p, q).into_iter().map(Label::Pair).collect(),
            MatrixSpec::Symplectic { p, .. } | MatrixSpec::Orthogonal { p, .. } => {
                parity_axis(p).into_iter().map(Label::Single).collect()
            }
        }
    }

    /// Rough amount of work, used to decide whether to report progress.
    pub fn is_large(&self) -> bool {
        match *self {
            MatrixSpec::Type1 { d, .. } => d >= 6,
            MatrixSpec::Type2 { p, q, .. } => p + q >= 5,
            MatrixSpec::Symplectic { p, .. } | MatrixSpec::Orthogonal { p, .. } => p >= 6,
        }
    }

    pub fn build(&self) -> Result<BranchingMatrix> {
        self.build_with_progress(&mut |_, _| {})
    }

    /// Builds the matrix, calling `progress(done, total)` once per summand
    /// tuple of lower labels.
    pub fn build_with_progress(&self, progress: &mut dyn FnMut(usize, usize)) -> Result<BranchingMatrix> {
        self.validate()?;
        let labels = self.labels();
        let n = self.n();
        let entries = match *self {
            MatrixSpec::Type1 { n: 1, .. } => identity(labels.len()),
            MatrixSpec::Type1 { d, .. } => {
                let axis = singles(&labels);
                accumulate(&single_tuples(n, &[d]), progress, |beta| {
                    let v: Vec<u64> = axis.iter().map(|l| lr_multi(l, beta)).collect();
                    (v.clone(), v)
                })
            }
            MatrixSpec::Type2 { p, q, .. } => {
                let axis = pairs(&labels);
                accumulate(&pair_tuples(n, p, q), progress, |beta| {
                    let row: Vec<u64> = axis.iter().map(|t| cap_d(t, beta)).collect();
                    let col: Vec<u64> = axis.iter().map(|t| cap_c(t, beta)).collect();
                    (row, col)
                })
            }
            MatrixSpec::Symplectic { p, .. } | MatrixSpec::Orthogonal { p, .. } => {
                let axis = singles(&labels);
                let restrict = if matches!(self, MatrixSpec::Symplectic { .. }) {
                    cap_e
                } else {
                    cap_g
                };
                let totals: Vec<usize> = (0..=p).rev().step_by(2).collect();
                accumulate(&single_tuples(n, &totals), progress, |beta| {
                    let row: Vec<u64> = axis.iter().map(|l| cap_f(l, beta)).collect();
                    let col: Vec<u64> = axis.iter().map(|l| restrict(l, beta)).collect();
                    (row, col)
                })
            }
        };
        Ok(BranchingMatrix {
            spec: *self,
            labels,
            entries,
        })
    }
}

fn singles(labels: &[Label]) -> Vec<Partition> {
    labels
        .iter()
        .map(|l| match l {
            Label::Single(p) => p.clone(),
            Label::Pair(_) => unreachable!("single-partition axis"),
        })
        .collect()
}

fn pairs(labels: &[Label]) -> Vec<PartitionPair> {
    labels
        .iter()
        .map(|l| match l {
            Label::Pair(p) => p.clone(),
            Label::Single(_) => unreachable!("pair axis"),
        })
        .collect()
}

/// Sums the rank-one contributions `row(β) · col(β)ᵀ` over all tuples.
fn accumulate<T>(
    tuples: &[T],
    progress: &mut dyn FnMut(usize, usize),
    mut vectors: impl FnMut(&T) -> (Vec<u64>, Vec<u64>),
) -> IntMatrix {
    let mut entries: Option<IntMatrix> = None;
    for (i, beta) in tuples.iter().enumerate() {
        let (row, col) = vectors(beta);
        let m = entries.get_or_insert_with(|| vec![vec![0; col.len()]; row.len()]);
        for (r, &x) in row.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (c, &y) in col.iter().enumerate().filter(|(_, y)| **y != 0) {
                m[r][c] = x
                    .checked_mul(y)
                    .and_then(|v| m[r][c].checked_add(v))
                    .expect("branching matrix entry exceeds 64 bits");
            }
        }
        progress(i + 1, tuples.len());
    }
    entries.unwrap_or_default()
}

fn identity(size: usize) -> IntMatrix {
    (0..size)
        .map(|i| (0..size).map(|j| (i == j) as u64).collect())
        .collect()
}

/// Weak compositions of `total` into `parts` pieces.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All sequences choosing one element from each list.
fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![vec![]], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// `n`-tuples of partitions whose total size is one of `totals`.
fn single_tuples(n: usize, totals: &[usize]) -> Vec<Vec<Partition>> {
    let mut out = Vec::new();
    for &total in totals {
        for comp in compositions(total, n) {
            let lists: Vec<Vec<Partition>> = comp.iter().map(|&s| partitions_of(s)).collect();
            out.extend(product(&lists));
        }
    }
    out
}

/// `n`-tuples of pairs with `Σ|β⁺| = p - s` and `Σ|β⁻| = q - s`, `s ≥ 0`.
fn pair_tuples(n: usize, p: usize, q: usize) -> Vec<Vec<PartitionPair>> {
    let mut out = Vec::new();
    for s in 0..=p.min(q) {
        for plus in compositions(p - s, n) {
            for minus in compositions(q - s, n) {
                let lists: Vec<Vec<PartitionPair>> =
                    plus.iter().zip(&minus).map(|(&a, &b)| pair_axis_exact(a, b)).collect();
                out.extend(product(&lists));
            }
        }
    }
    out
}

fn pair_axis_exact(a: usize, b: usize) -> Vec<PartitionPair> {
    let minus = partitions_of(b);
    partitions_of(a)
        .into_iter()
        .flat_map(|x| minus.iter().map(move |y| PartitionPair::new(x.clone(), y.clone())))
        .collect()
}

/// A branching matrix together with its labeled axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingMatrix {
    pub spec: MatrixSpec,
    pub labels: Vec<Label>,
    pub entries: IntMatrix,
}

/// `A^n_d`.
pub fn type1(n: usize, d: usize) -> BranchingMatrix {
    MatrixSpec::Type1 {
        n: n.max(1),
        d,
        dual: false,
    }
    .build()
    .expect("type I parameters are always valid")
}

/// `C^n_{p,q}`.
pub fn type2(n: usize, p: usize, q: usize) -> Result<BranchingMatrix> {
    MatrixSpec::Type2 { n, p, q }.build()
}

/// `D^n_p`; `n` must be even.
pub fn sp_matrix(n: usize, p: usize) -> Result<BranchingMatrix> {
    MatrixSpec::Symplectic { n, p }.build()
}

/// `E^n_p`.
pub fn so_matrix(n: usize, p: usize) -> Result<BranchingMatrix> {
    MatrixSpec::Orthogonal { n, p }.build()
}

impl BranchingMatrix {
    pub fn family(&self) -> Family {
        self.spec.family()
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let m = &self.entries;
        (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
    }

    /// Index ranges of the diagonal blocks, largest labels first. Type I
    /// matrices consist of a single block.
    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let key = |l: &Label| l.sizes();
        let mut ranges: Vec<Range<usize>> = Vec::new();
        for (i, l) in self.labels.iter().enumerate() {
            match ranges.last_mut() {
                Some(r) if key(&self.labels[r.start]) == key(l) => r.end = i + 1,
                _ => ranges.push(i..i + 1),
            }
        }
        ranges
    }

    /// The square sub-matrix on diagonal block `index` (0 = largest labels).
    pub fn diagonal_block(&self, index: usize) -> Result<IntMatrix> {
        let ranges = self.block_ranges();
        let r = ranges.get(index).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "block index {index} out of range (matrix has {})",
                ranges.len()
            ))
        })?;
        Ok(self.entries[r.clone()]
            .iter()
            .map(|row| row[r.clone()].to_vec())
            .collect())
    }

    /// True when every entry above the diagonal blocks is zero.
    pub fn is_block_lower_triangular(&self) -> bool {
        let ranges = self.block_ranges();
        ranges.iter().enumerate().all(|(bi, rows)| {
            ranges[bi + 1..]
                .iter()
                .all(|cols| rows.clone().all(|r| cols.clone().all(|c| self.entries[r][c] == 0)))
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family().to_string(),
            "n": self.n(),
            "params": self.spec.params(),
            "labels": self.labels.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|row| row.iter().map(|&x| entry_json(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Reads the JSON produced by [`BranchingMatrix::to_json`].
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("branching matrix JSON: {what}"));
        let family: Family = value["family"].as_str().ok_or_else(|| bad("missing family"))?.parse()?;
        let n = value["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let params = value["params"]
            .as_array()
            .ok_or_else(|| bad("missing params"))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| bad("non-integer parameter"))
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = MatrixSpec::new(family, n, &params)?;
        let labels = spec.labels();
        let given: Vec<&str> = value["labels"]
            .as_array()
            .ok_or_else(|| bad("missing labels"))?
            .iter()
            .map(|v| v.as_str().ok_or_else(|| bad("label is not a string")))
            .collect::<Result<_>>()?;
        let canonical: Vec<String> = labels.iter().map(ToString::to_string).collect();
        if given != canonical {
            return Err(bad("labels are not in canonical order"));
        }
        let entries = value["entries"]
            .as_array()
            .ok_or_else(|| bad("missing entries"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("row is not an array"))?
                    .iter()
                    .map(|x| parse_entry(x).ok_or_else(|| bad("entry is not a non-negative integer")))
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<IntMatrix>>()?;
        if entries.len() != labels.len() || entries.iter().any(|r| r.len() != labels.len()) {
            return Err(bad("entries do not match the axis"));
        }
        Ok(BranchingMatrix { spec, labels, entries })
    }

    /// CSV with a header row of labels and the row label in the first column.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.labels.iter().map(ToString::to_string));
        w.write_record(&header).expect("in-memory write");
        for (label, row) in self.labels.iter().zip(&self.entries) {
            let mut rec = vec![label.to_string()];
            rec.extend(row.iter().map(u64::to_string));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    /// Plain aligned text, one row per line.
    pub fn to_text(&self) -> String {
        let names: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        let lw = names.iter().map(String::len).max().unwrap_or(0);
        let cw = self
            .entries
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = format!("{}^{}_{:?}\n", self.family(), self.n(), self.spec.params());
        for (name, row) in names.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>cw$}")).collect();
            out.push_str(&format!("{name:<lw$}  {}\n", cells.join(" ")));
        }
        out
    }
}

fn entry_json(x: u64) -> Value {
    if x > i64::MAX as u64 {
        Value::String(x.to_string())
    } else {
        json!(x)
    }
}

fn parse_entry(v: &Value) -> Option<u64> {
    match v {
        Value::Number(n) => n.as_u64(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Kronecker product, with the row index of `a` varying slowest.
pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let bc = b.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(a.len() * b.len());
    for arow in a {
        for brow in b {
            let mut row = Vec::with_capacity(arow.len() * bc);
            for &x in arow {
                row.extend(brow.iter().map(|&y| x * y));
            }
            out.push(row);
        }
    }
    out
}

/// Number of standard Young tableaux of shape `λ` (hook length formula).
pub fn syt_count(lambda: &Partition) -> u64 {
    let conj = lambda.conjugate();
    let mut num: u128 = 1;
    for k in 2..=lambda.size() as u128 {
        num *= k;
    }
    let mut hooks: u128 = 1;
    for (r, &row) in lambda.parts().iter().enumerate() {
        for c in 0..row {
            hooks *= (row - c - 1 + conj.part(c) - r - 1 + 1) as u128;
        }
    }
    (num / hooks) as u64
}
