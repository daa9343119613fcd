//! Characters of the symmetric group and the exact diagonalization of the
//! Type I branching matrices by the character table.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::branching::{kronecker, syt_count, type1, BranchingMatrix, Family};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

/// Largest `d` accepted by [`character_table`].
pub const DEFAULT_CHARACTER_BOUND: usize = 10;

/// Number of cycles (fixed points included) of a permutation of this type.
pub fn cycle_count(class: &Partition) -> usize {
    class.length()
}

/// Centralizer order `z_μ = ∏ i^{m_i} m_i!`.
pub fn centralizer_order(class: &Partition) -> u128 {
    let mut z: u128 = 1;
    let mut parts = class.parts().iter().peekable();
    while let Some(&part) = parts.next() {
        let mut mult: u128 = 1;
        while parts.peek() == Some(&&part) {
            parts.next();
            mult += 1;
        }
        z *= (part as u128).pow(mult as u32) * (1..=mult).product::<u128>();
    }
    z
}

/// Size of the conjugacy class with the given cycle type.
pub fn class_size(class: &Partition) -> u128 {
    (1..=class.size() as u128).product::<u128>() / centralizer_order(class)
}

thread_local! {
    static CHI: RefCell<HashMap<(Partition, Vec<usize>), i64>> = RefCell::new(HashMap::new());
}

/// `χ_λ(σ)` for `σ` of cycle type `class`, by Murnaghan–Nakayama.
pub fn character(lambda: &Partition, class: &Partition) -> i64 {
    if lambda.size() != class.size() {
        return 0;
    }
    chi(lambda, class.parts())
}

fn chi(lambda: &Partition, cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let key = (lambda.clone(), cycles.to_vec());
    if let Some(v) = CHI.with(|c| c.borrow().get(&key).copied()) {
        return v;
    }
    // Beta-set of λ: removing a rim hook of length r moves one bead down by
    // r positions, with sign (-1)^(beads jumped over).
    let len = lambda.length();
    let beads: Vec<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beads.iter().enumerate() {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beads.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beads.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let shape = Partition::from_unsorted(moved.iter().enumerate().map(|(j, &x)| x - (len - 1 - j)).collect());
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * chi(&shape, rest);
    }
    CHI.with(|c| c.borrow_mut().insert(key, total));
    total
}

/// Character table of `S_d`. Rows are the irreducibles in reverse-lex order;
/// columns are the classes with the identity first (the reverse of the row
/// order), so the first column is the dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub d: usize,
    pub rows: Vec<Partition>,
    pub cols: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
    pub class_sizes: Vec<u128>,
}

pub fn character_table(d: usize) -> Result<CharacterTable> {
    character_table_bounded(d, DEFAULT_CHARACTER_BOUND)
}

pub fn character_table_bounded(d: usize, bound: usize) -> Result<CharacterTable> {
    if d > bound {
        return Err(Error::CharacterBound { d, bound });
    }
    let rows = partitions_of(d);
    let cols: Vec<Partition> = rows.iter().rev().cloned().collect();
    let values = rows
        .iter()
        .map(|l| cols.iter().map(|c| character(l, c)).collect())
        .collect();
    let class_sizes = cols.iter().map(class_size).collect();
    Ok(CharacterTable {
        d,
        rows,
        cols,
        values,
        class_sizes,
    })
}

impl CharacterTable {
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.values.iter().map(|row| row[j]).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.cols.iter().map(ToString::to_string));
        w.write_record(&header).expect("in-memory write");
        for (label, row) in self.rows.iter().zip(&self.values) {
            let mut rec = vec![label.to_string()];
            rec.extend(row.iter().map(i64::to_string));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    /// Checks `Σ_λ χ_λ(σ)χ_λ(τ) = z_σ δ_{στ}` for every pair of classes.
    pub fn columns_orthogonal(&self) -> bool {
        let k = self.cols.len();
        (0..k).all(|a| {
            (0..k).all(|b| {
                let dot: i128 = self.values.iter().map(|row| row[a] as i128 * row[b] as i128).sum();
                let expected = if a == b {
                    centralizer_order(&self.cols[a]) as i128
                } else {
                    0
                };
                dot == expected
            })
        })
    }

    pub fn determinant(&self) -> BigInt {
        let m: Vec<Vec<BigInt>> = self
            .values
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        determinant(m)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Evidence that the character table diagonalizes `A^n_d`.
#[derive(Clone, Debug)]
pub struct SpectralCertificate {
    pub n: usize,
    pub d: usize,
    /// Class cycle type, eigenvalue `n^{cycles}`, and the eigenvector
    /// (the class column of the character table).
    pub eigenpairs: Vec<(Partition, BigUint, Vec<i64>)>,
    /// Whether `A · X = X · D` holds exactly.
    pub identity_holds: bool,
    /// First class whose column fails the identity.
    pub offending_class: Option<Partition>,
    pub determinant: BigInt,
}

impl SpectralCertificate {
    pub fn valid(&self) -> bool {
        self.identity_holds && !self.determinant.is_zero()
    }

    /// Eigenvalues in column order.
    pub fn eigenvalues(&self) -> Vec<BigUint> {
        self.eigenpairs.iter().map(|(_, v, _)| v.clone()).collect()
    }
}

/// Verifies `A^n_d · X = X · D` with `D_σσ = n^{p(σ)}` over the integers.
pub fn spectral_verify(n: usize, d: usize) -> Result<SpectralCertificate> {
    let table = character_table(d)?;
    let a = type1(n, d);
    let size = table.rows.len();
    let mut eigenpairs = Vec::with_capacity(size);
    let mut offending_class = None;
    for (j, class) in table.cols.iter().enumerate() {
        let eigen = BigUint::from(n).pow(cycle_count(class) as u32);
        let col = table.column(j);
        let ok = (0..size).all(|i| {
            let lhs: BigInt = (0..size).map(|k| BigInt::from(a.entries[i][k]) * col[k]).sum();
            lhs == BigInt::from(col[i]) * BigInt::from(eigen.clone())
        });
        if !ok && offending_class.is_none() {
            offending_class = Some(class.clone());
        }
        eigenpairs.push((class.clone(), eigen, col));
    }
    Ok(SpectralCertificate {
        n,
        d,
        eigenpairs,
        identity_holds: offending_class.is_none(),
        offending_class,
        determinant: table.determinant(),
    })
}

/// Eigenvalues of one diagonal block of a block lower triangular matrix.
#[derive(Clone, Debug)]
pub struct BlockEigenvalues {
    pub index: usize,
    /// Degrees `(p', q')` of the Type I factors; `q' = 0` when the block is
    /// a single Type I matrix.
    pub degrees: (usize, usize),
    pub eigenvalues: Vec<BigUint>,
    /// The block equals the expected Type I matrix or Kronecker product
    /// and every factor passed [`spectral_verify`].
    pub verified: bool,
}

/// Spectrum of a branching matrix read off its diagonal blocks.
#[derive(Clone, Debug)]
pub struct BlockSpectrum {
    pub n: usize,
    pub triangular: bool,
    pub blocks: Vec<BlockEigenvalues>,
}

impl BlockSpectrum {
    pub fn verified(&self) -> bool {
        self.triangular && self.blocks.iter().all(|b| b.verified)
    }

    /// The eigenvalue multiset, largest first.
    pub fn eigenvalues(&self) -> Vec<BigUint> {
        let mut all: Vec<BigUint> = self.blocks.iter().flat_map(|b| b.eigenvalues.clone()).collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        all
    }
}

/// Eigenvalues of any branching matrix, as the union over its diagonal
/// blocks of Type I spectra (or products of two Type I spectra for pairs).
pub fn block_spectrum(m: &BranchingMatrix) -> Result<BlockSpectrum> {
    let n = m.n();
    let params = m.spec.params();
    let degrees: Vec<(usize, usize)> = match m.family() {
        Family::A | Family::B => vec![(params[0], 0)],
        Family::C => (0..=params[0].min(params[1]))
            .map(|i| (params[0] - i, params[1] - i))
            .collect(),
        Family::D | Family::E => (0..=params[0] / 2).map(|i| (params[0] - 2 * i, 0)).collect(),
    };
    let mut blocks = Vec::with_capacity(degrees.len());
    for (index, &(a, b)) in degrees.iter().enumerate() {
        let left = spectral_verify(n, a)?;
        let right = spectral_verify(n, b)?;
        let expected = kronecker(&type1(n, a).entries, &type1(n, b).entries);
        let eigenvalues = left
            .eigenvalues()
            .iter()
            .flat_map(|x| right.eigenvalues().into_iter().map(move |y| x * y))
            .collect();
        let verified = m.diagonal_block(index)? == expected && left.valid() && right.valid();
        blocks.push(BlockEigenvalues {
            index,
            degrees: (a, b),
            eigenvalues,
            verified,
        });
    }
    Ok(BlockSpectrum {
        n,
        triangular: m.is_block_lower_triangular(),
        blocks,
    })
}

/// `Σ` over weak compositions of `d` into `n` parts of the multinomial
/// coefficient, built as a product of binomials.
pub fn multinomial_sum(n: usize, d: usize) -> BigUint {
    fn binomial(n: usize, k: usize) -> BigUint {
        (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
    }
    fn go(parts: usize, remaining: usize) -> BigUint {
        if parts == 1 {
            return BigUint::one();
        }
        (0..=remaining)
            .map(|k| binomial(remaining, k) * go(parts - 1, remaining - k))
            .sum()
    }
    if n == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    go(n, d)
}

/// Checks that distributing `d` labelled elements into `n` subsets
/// accounts for all `n^d` functions.
pub fn multinomial_identity(n: usize, d: usize) -> bool {
    multinomial_sum(n, d) == BigUint::from(n).pow(d as u32)
}

/// First column of the table and the SYT counts coincide; used by tests and
/// the CLI `spectra` output.
pub fn dimension_vector(d: usize) -> Vec<u64> {
    partitions_of(d).iter().map(syt_count).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn cycle_counts_and_class_sizes() {
        assert_eq!(cycle_count(&p("(1,1,1)")), 3);
        assert_eq!(cycle_count(&p("(2,1)")), 2);
        assert_eq!(cycle_count(&p("(3)")), 1);
        assert_eq!(class_size(&p("(1,1)")), 1);
        assert_eq!(class_size(&p("(2)")), 1);
        assert_eq!(class_size(&p("(2,1)")), 3);
        assert_eq!(class_size(&p("(2,2)")), 3);
    }

    #[test]
    fn small_tables() {
        assert_eq!(character_table(1).unwrap().values, vec![vec![1]]);
        assert_eq!(character_table(2).unwrap().values, vec![vec![1, 1], vec![1, -1]]);
        let t = character_table(3).unwrap();
        assert_eq!(t.column(0), vec![1, 2, 1]);
        assert_eq!(t.column(1), vec![1, 0, -1]);
        assert_eq!(t.column(2), vec![1, -1, 1]);
        assert_eq!(character_table(0).unwrap().values, vec![vec![1]]);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            character_table(11),
            Err(Error::CharacterBound { d: 11, bound: 10 })
        ));
        assert!(character_table_bounded(11, 12).is_ok());
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for d in 0..=8 {
            let t = character_table(d).unwrap();
            let total: u128 = t.class_sizes.iter().sum();
            assert_eq!(total, (1..=d as u128).product::<u128>());
        }
    }

    #[test]
    fn bareiss_small() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        assert_eq!(determinant(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), BigInt::from(6));
        assert_eq!(determinant(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn spectral_small() {
        let c = spectral_verify(2, 3).unwrap();
        assert!(c.valid());
        let ev: Vec<BigUint> = c.eigenvalues();
        assert_eq!(ev, vec![8u32, 4, 2].into_iter().map(BigUint::from).collect::<Vec<_>>());
        let c = spectral_verify(5, 0).unwrap();
        assert_eq!(c.eigenvalues(), vec![BigUint::one()]);
    }

    #[test]
    fn block_spectra() {
        let c = crate::branching::type2(2, 1, 1).unwrap();
        let s = block_spectrum(&c).unwrap();
        assert!(s.verified());
        assert_eq!(s.eigenvalues(), vec![BigUint::from(4u32), BigUint::one()]);
        let d = crate::branching::sp_matrix(2, 2).unwrap();
        let s = block_spectrum(&d).unwrap();
        assert!(s.verified());
        assert_eq!(s.eigenvalues(), [4u32, 2, 1].map(BigUint::from).to_vec());
    }

    #[test]
    fn multinomial() {
        assert_eq!(multinomial_sum(2, 3), BigUint::from(8u32));
        assert_eq!(multinomial_sum(3, 2), BigUint::from(9u32));
        assert_eq!(multinomial_sum(4, 5), BigUint::from(1024u32));
        assert!(multinomial_identity(4, 5));
    }
}
