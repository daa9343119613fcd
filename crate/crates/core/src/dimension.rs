//! Weyl dimension formulas for `gl(k)`, `sp(2k)` and `so(k)`, and the
//! dimension check of a branching matrix: restricting a module along the
//! diagonal embedding must preserve its dimension.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::branching::{BranchingMatrix, Family, Label};
use crate::error::{Error, Result};
use crate::partitions::{Partition, PartitionPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// `gl(k)`
    Gl,
    /// `sp(2k)`
    Sp,
    /// `so(k)`, dimensions of the `O(k)` module labelled by the partition.
    So,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Gl => "gl",
            Algebra::Sp => "sp",
            Algebra::So => "so",
        })
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gl" | "sl" => Ok(Algebra::Gl),
            "sp" => Ok(Algebra::Sp),
            "so" => Ok(Algebra::So),
            other => Err(Error::Parse(format!("unknown algebra {other:?}"))),
        }
    }
}

/// A module of `gl(k)`, `sp(2k)` or `so(k)` given by its rank parameter `k`
/// and partition data. Single partitions on `gl` mean `(λ, ())`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionQuery {
    pub algebra: Algebra,
    pub rank: usize,
    pub weight: Label,
}

impl DimensionQuery {
    pub fn new(algebra: Algebra, rank: usize, weight: Label) -> Self {
        DimensionQuery { algebra, rank, weight }
    }

    fn does_not_fit(&self) -> Error {
        Error::WeightDoesNotFit {
            algebra: self.algebra.to_string(),
            rank: self.rank,
            weight: self.weight.to_string(),
        }
    }
}

/// Dimension of the module described by `q`.
pub fn dim(q: &DimensionQuery) -> Result<BigUint> {
    match (q.algebra, &q.weight) {
        (Algebra::Gl, w) => gl_dim(q.rank, &w.as_pair()).ok_or_else(|| q.does_not_fit()),
        (_, Label::Pair(_)) => Err(Error::InvalidParameter(format!(
            "{} modules are labelled by single partitions",
            q.algebra
        ))),
        (Algebra::Sp, Label::Single(l)) => sp_dim(q.rank, l).ok_or_else(|| q.does_not_fit()),
        (Algebra::So, Label::Single(l)) => o_dim(q.rank, l).ok_or_else(|| q.does_not_fit()),
    }
}

/// `∏ num / ∏ den`, which is an integer for every Weyl product used here.
fn ratio(num: BigInt, den: BigInt) -> BigUint {
    let q = num / den;
    q.to_biguint().expect("Weyl dimension is positive")
}

fn gl_dim(k: usize, w: &PartitionPair) -> Option<BigUint> {
    let (lp, lm) = (w.plus.length(), w.minus.length());
    if lp + lm > k {
        return None;
    }
    // (λ₁,…,λ_p, 0,…,0, −μ_q,…,−μ₁)
    let weight: Vec<i64> = (0..k)
        .map(|i| {
            if i < lp {
                w.plus.part(i) as i64
            } else if i >= k - lm {
                -(w.minus.part(k - 1 - i) as i64)
            } else {
                0
            }
        })
        .collect();
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..k {
        for j in i + 1..k {
            num *= weight[i] - weight[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    Some(ratio(num, den))
}

fn sp_dim(k: usize, l: &Partition) -> Option<BigUint> {
    if l.length() > k {
        return None;
    }
    let rho: Vec<i64> = (0..k).map(|i| (k - i) as i64).collect();
    let shifted: Vec<i64> = (0..k).map(|i| l.part(i) as i64 + rho[i]).collect();
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..k {
        num *= shifted[i];
        den *= rho[i];
        for j in i + 1..k {
            num *= (shifted[i] - shifted[j]) * (shifted[i] + shifted[j]);
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
        }
    }
    Some(ratio(num, den))
}

/// Dimension of the `O(k)` module `λ` (first two columns of total length at
/// most `k`).
fn o_dim(k: usize, l: &Partition) -> Option<BigUint> {
    let cols = l.conjugate();
    if cols.part(0) + cols.part(1) > k {
        return None;
    }
    let m = k / 2;
    // λ and its associate (first column c replaced by k - c) differ by the
    // determinant; one of them has length at most m.
    let l = if l.length() > m {
        let mut assoc = cols.parts().to_vec();
        assoc[0] = k - cols.part(0);
        Partition::from_unsorted(assoc).conjugate()
    } else {
        l.clone()
    };
    if k % 2 == 1 {
        // B_m in doubled coordinates: ρ_i = m - i + 1/2.
        let rho: Vec<i64> = (0..m).map(|i| (2 * (m - i) - 1) as i64).collect();
        let shifted: Vec<i64> = (0..m).map(|i| 2 * l.part(i) as i64 + rho[i]).collect();
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        for i in 0..m {
            num *= shifted[i];
            den *= rho[i];
            for j in i + 1..m {
                num *= (shifted[i] - shifted[j]) * (shifted[i] + shifted[j]);
                den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
            }
        }
        Some(ratio(num, den))
    } else {
        // D_m, ρ_i = m - i; a full-length λ is the sum of two SO(k) modules
        // of equal dimension.
        let rho: Vec<i64> = (0..m).map(|i| (m - 1 - i) as i64).collect();
        let shifted: Vec<i64> = (0..m).map(|i| l.part(i) as i64 + rho[i]).collect();
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        for i in 0..m {
            for j in i + 1..m {
                num *= (shifted[i] - shifted[j]) * (shifted[i] + shifted[j]);
                den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
            }
        }
        let d = ratio(num, den);
        Some(if m > 0 && l.length() == m { d * 2u32 } else { d })
    }
}

/// Dimension identity for one column of a branching matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnCheck {
    pub label: Label,
    /// Dimension of the module of the large algebra.
    pub expected: BigUint,
    /// `Σ_rows entry · dim(row module of the small algebra)`.
    pub restricted: BigUint,
}

impl ColumnCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.restricted
    }
}

#[derive(Clone, Debug)]
pub struct DimCheckReport {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub big: (Algebra, usize),
    pub small: (Algebra, usize),
    pub columns: Vec<ColumnCheck>,
}

impl DimCheckReport {
    pub fn passed(&self) -> bool {
        self.columns.iter().all(ColumnCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ColumnCheck> {
        self.columns.iter().filter(|c| !c.passed())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}{} -> {}{} (k = {})\n",
            self.big.0, self.big.1, self.small.0, self.small.1, self.k
        );
        for c in &self.columns {
            out.push_str(&format!(
                "{} {}: {} = {}\n",
                if c.passed() { "PASS" } else { "FAIL" },
                c.label,
                c.expected,
                c.restricted
            ));
        }
        out
    }
}

/// Default rank for [`dim_check`]: twice the largest label size.
pub fn default_rank(m: &BranchingMatrix) -> usize {
    2 * m.spec.params().iter().sum::<usize>()
}

/// Algebras (with the parameter written in their name) at both ends of the
/// diagonal embedding, for rank parameter `k`.
fn algebras(family: Family, n: usize, k: usize) -> ((Algebra, usize), (Algebra, usize)) {
    match family {
        Family::A | Family::B | Family::C => ((Algebra::Gl, n * k), (Algebra::Gl, k)),
        Family::D => ((Algebra::Sp, n * k), (Algebra::Sp, k)),
        Family::E => ((Algebra::So, n * k), (Algebra::So, k)),
    }
}

/// For every column label `w`: `dim(big, w) = Σ_rows m[row][w] · dim(small, row)`.
pub fn dim_check(m: &BranchingMatrix, k: usize) -> Result<DimCheckReport> {
    let family = m.family();
    let (big, small) = algebras(family, m.n(), k);
    let label_for = |l: &Label| match (family, l) {
        (Family::B, Label::Single(p)) => Label::Pair(PartitionPair::new(Partition::empty(), p.clone())),
        _ => l.clone(),
    };
    let small_dims = m
        .labels
        .iter()
        .map(|l| dim(&DimensionQuery::new(small.0, small.1, label_for(l))))
        .collect::<Result<Vec<_>>>()?;
    let mut columns = Vec::with_capacity(m.size());
    for (j, label) in m.labels.iter().enumerate() {
        let expected = dim(&DimensionQuery::new(big.0, big.1, label_for(label)))?;
        let restricted = small_dims.iter().enumerate().map(|(i, d)| d * m.entries[i][j]).sum();
        columns.push(ColumnCheck {
            label: label.clone(),
            expected,
            restricted,
        });
    }
    Ok(DimCheckReport {
        family,
        n: m.n(),
        k,
        big,
        small,
        columns,
    })
}

/// Convenience for small values in tests and reports.
pub fn dim_u64(algebra: Algebra, rank: usize, weight: Label) -> Result<u64> {
    dim(&DimensionQuery::new(algebra, rank, weight)).map(|d| d.to_u64().expect("dimension fits in 64 bits"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::{sp_matrix, type1};

    fn single(s: &str) -> Label {
        Label::Single(s.parse().unwrap())
    }

    fn pair(s: &str) -> Label {
        Label::Pair(s.parse().unwrap())
    }

    #[test]
    fn gl_examples() {
        assert_eq!(dim_u64(Algebra::Gl, 2, pair("((1),())")).unwrap(), 2);
        assert_eq!(dim_u64(Algebra::Gl, 2, pair("((2),())")).unwrap(), 3);
        assert_eq!(dim_u64(Algebra::Gl, 3, pair("((1),(1))")).unwrap(), 8);
        assert_eq!(dim_u64(Algebra::Gl, 4, single("(2)")).unwrap(), 10);
        assert!(dim_u64(Algebra::Gl, 1, pair("((1),(1))")).is_err());
    }

    #[test]
    fn sp_examples() {
        assert_eq!(dim_u64(Algebra::Sp, 1, single("(1)")).unwrap(), 2);
        assert_eq!(dim_u64(Algebra::Sp, 2, single("(1,1)")).unwrap(), 5);
        assert_eq!(dim_u64(Algebra::Sp, 2, single("(2)")).unwrap(), 10);
        assert_eq!(dim_u64(Algebra::Sp, 3, single("(1,1,1)")).unwrap(), 14);
        assert!(dim_u64(Algebra::Sp, 1, single("(1,1)")).is_err());
    }

    #[test]
    fn orthogonal_examples() {
        assert_eq!(dim_u64(Algebra::So, 3, single("(1)")).unwrap(), 3);
        assert_eq!(dim_u64(Algebra::So, 4, single("(1,1)")).unwrap(), 6);
        assert_eq!(dim_u64(Algebra::So, 6, single("(1,1,1)")).unwrap(), 20);
        assert_eq!(dim_u64(Algebra::So, 5, single("(2)")).unwrap(), 14);
        assert_eq!(dim_u64(Algebra::So, 3, single("(1,1)")).unwrap(), 3);
        assert_eq!(dim_u64(Algebra::So, 2, single("(3)")).unwrap(), 2);
        assert_eq!(dim_u64(Algebra::So, 1, single("(1)")).unwrap(), 1);
        assert!(dim_u64(Algebra::So, 2, single("(2,1)")).is_err());
    }

    #[test]
    fn trivial_module_everywhere() {
        for k in 0..6 {
            assert_eq!(dim_u64(Algebra::Gl, k, single("()")).unwrap(), 1);
            assert_eq!(dim_u64(Algebra::Sp, k, single("()")).unwrap(), 1);
            assert_eq!(dim_u64(Algebra::So, k, single("()")).unwrap(), 1);
        }
    }

    #[test]
    fn small_checks() {
        let r = dim_check(&type1(2, 2), 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.columns[0].expected, BigUint::from(10u32));
        assert!(dim_check(&sp_matrix(2, 2).unwrap(), 2).unwrap().passed());
    }
}
