//! Stationary Bratteli diagrams and the ordered `K_0` group of their limit.
//!
//! A class at one stage maps to the next by `v ↦ Aᵀ v` (the block of the
//! larger algebra labelled `k` contains `A[j][k]` copies of block `j`).

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::branching::{syt_count, MatrixSpec};
use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// Default number of `A²` steps tried before giving up.
pub const DEFAULT_STAGE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    /// Matrix-block sizes at each stage, starting with the initial sizes.
    pub stages: Vec<Vec<BigUint>>,
    /// Edge multiplicities between consecutive stages (all equal to the
    /// arrow matrix for a stationary diagram).
    pub edge_multiplicities: Vec<Vec<Vec<u64>>>,
}

/// Unrolls a quiver into `stages` inclusion steps starting from
/// `initial_sizes`; the result has `stages + 1` size vectors.
pub fn unroll(q: &Quiver, initial_sizes: &[u64], stages: usize) -> Result<BratteliDiagram> {
    if initial_sizes.len() != q.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "expected {} initial sizes, got {}",
            q.vertex_count(),
            initial_sizes.len()
        )));
    }
    if initial_sizes.contains(&0) {
        return Err(Error::InvalidParameter("initial sizes must be positive".into()));
    }
    let mut sizes: Vec<Vec<BigUint>> = vec![initial_sizes.iter().map(|&s| BigUint::from(s)).collect()];
    for _ in 0..stages {
        let next = step_unsigned(q, sizes.last().unwrap());
        sizes.push(next);
    }
    Ok(BratteliDiagram {
        stages: sizes,
        edge_multiplicities: vec![q.arrows.clone(); stages],
    })
}

fn step_unsigned(q: &Quiver, v: &[BigUint]) -> Vec<BigUint> {
    let n = v.len();
    (0..n).map(|k| (0..n).map(|j| &v[j] * q.arrows[j][k]).sum()).collect()
}

fn step(q: &Quiver, v: &[BigInt]) -> Vec<BigInt> {
    let n = v.len();
    (0..n)
        .map(|k| (0..n).map(|j| &v[j] * BigInt::from(q.arrows[j][k])).sum())
        .collect()
}

/// A `K_0` class at some stage of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Class {
    pub stage: usize,
    pub vector: Vec<BigInt>,
}

impl K0Class {
    pub fn new(vector: Vec<BigInt>) -> Self {
        K0Class { stage: 0, vector }
    }

    pub fn from_i64(vector: &[i64]) -> Self {
        K0Class::new(vector.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(Zero::is_zero)
    }

    /// `a·self - b·other`.
    pub fn combine(&self, a: &BigInt, other: &K0Class, b: &BigInt) -> K0Class {
        K0Class {
            stage: self.stage,
            vector: self
                .vector
                .iter()
                .zip(&other.vector)
                .map(|(x, y)| a * x - b * y)
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    NotPositive,
    /// The iteration cap was reached without a decision.
    Indeterminate,
}

/// How a verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    /// Sign of the pairing with an exact Perron eigenvector.
    Perron { eigenvector: Vec<BigInt>, pairing: BigInt },
    /// Number of `A²` steps taken.
    Iteration { steps: usize },
}

#[derive(Clone, Debug)]
pub struct K0Verdict {
    pub verdict: Positivity,
    pub method: Method,
    /// The class followed by its images under `A²` (empty for Perron
    /// decisions beyond the class itself).
    pub trace: Vec<Vec<BigInt>>,
}

impl K0Verdict {
    pub fn is_positive(&self) -> bool {
        self.verdict == Positivity::Positive
    }
}

fn check_hypotheses(q: &Quiver) -> Result<()> {
    if !q.is_strongly_connected() {
        return Err(Error::Precondition("quiver is not strongly connected".into()));
    }
    if !q.is_primitive() {
        return Err(Error::Precondition("quiver is not primitive".into()));
    }
    if !q.is_symmetric() {
        return Err(Error::Precondition("arrow matrix is not symmetric".into()));
    }
    Ok(())
}

/// Exact positive eigenvector for Type I quivers: the standard Young
/// tableau counts, confirmed against the arrow matrix.
fn perron_vector(q: &Quiver) -> Option<Vec<BigInt>> {
    let (n, d) = match q.descriptor? {
        MatrixSpec::Type1 { n, d, .. } => (n, d),
        _ => return None,
    };
    let w: Vec<BigInt> = q
        .vertices
        .iter()
        .map(|v| match v {
            crate::branching::Label::Single(p) => Some(BigInt::from(syt_count(p))),
            crate::branching::Label::Pair(_) => None,
        })
        .collect::<Option<_>>()?;
    let eigen = BigInt::from(n).pow(d as u32);
    let confirmed = step(q, &w).iter().zip(&w).all(|(a, b)| *a == &eigen * b);
    confirmed.then_some(w)
}

fn sign_verdict(v: &[BigInt]) -> Option<Positivity> {
    if v.iter().all(|x| !x.is_negative()) {
        Some(Positivity::Positive)
    } else if v.iter().all(|x| !x.is_positive()) {
        Some(Positivity::NotPositive)
    } else {
        None
    }
}

/// Decides whether `u` lies in the positive cone of the limit group.
pub fn k0_positive(q: &Quiver, u: &K0Class) -> Result<K0Verdict> {
    k0_positive_with_cap(q, u, DEFAULT_STAGE_CAP)
}

pub fn k0_positive_with_cap(q: &Quiver, u: &K0Class, cap: usize) -> Result<K0Verdict> {
    check_hypotheses(q)?;
    if u.vector.len() != q.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "class has {} entries, quiver has {} vertices",
            u.vector.len(),
            q.vertex_count()
        )));
    }
    let trace = vec![u.vector.clone()];
    if let Some(w) = perron_vector(q) {
        let pairing: BigInt = u.vector.iter().zip(&w).map(|(a, b)| a * b).sum();
        // A nonzero class orthogonal to the Perron vector never becomes
        // non-negative; the matrix is invertible, so it never vanishes.
        let verdict = if u.is_zero() || pairing.is_positive() {
            Positivity::Positive
        } else {
            Positivity::NotPositive
        };
        return Ok(K0Verdict {
            verdict,
            method: Method::Perron {
                eigenvector: w,
                pairing,
            },
            trace,
        });
    }
    let mut trace = trace;
    for steps in 0..=cap {
        let v = trace.last().unwrap();
        // The zero vector counts as non-negative.
        if let Some(verdict) = sign_verdict(v) {
            return Ok(K0Verdict {
                verdict,
                method: Method::Iteration { steps },
                trace,
            });
        }
        if steps == cap {
            break;
        }
        let next = step(q, &step(q, v));
        trace.push(next);
    }
    Ok(K0Verdict {
        verdict: Positivity::Indeterminate,
        method: Method::Iteration { steps: cap },
        trace,
    })
}

/// Smallest `N ≥ 1` with `N·y - z` in the positive cone; `y` must be
/// positive and nonzero.
pub fn order_unit_witness(q: &Quiver, y: &K0Class, z: &K0Class) -> Result<u64> {
    let vy = k0_positive(q, y)?;
    if !vy.is_positive() || y.is_zero() {
        return Err(Error::Precondition("y is not a nonzero positive class".into()));
    }
    if z.vector.len() != y.vector.len() {
        return Err(Error::InvalidParameter("y and z have different lengths".into()));
    }
    if let Method::Perron {
        eigenvector,
        pairing: a,
    } = &vy.method
    {
        let b: BigInt = z.vector.iter().zip(eigenvector).map(|(x, w)| x * w).sum();
        // Positive pairing needs N > b / a; the only other positive class is
        // N·y = z itself.
        let floor = num_integer::Integer::div_floor(&b, a);
        let above = if floor.is_negative() { BigInt::zero() } else { floor + 1 };
        let bound = above.max(BigInt::from(1));
        let mut best = bound.clone();
        if b.is_positive() && (&b % a).is_zero() {
            let c = &b / a;
            if c < bound && y.combine(&c, z, &BigInt::from(1)).is_zero() {
                best = c;
            }
        }
        return best
            .try_into()
            .map_err(|_| Error::InvalidParameter("witness exceeds 64 bits".into()));
    }
    for n in 1u64..=1 << 20 {
        let class = y.combine(&BigInt::from(n), z, &BigInt::from(1));
        match k0_positive(q, &class)?.verdict {
            Positivity::Positive => return Ok(n),
            Positivity::NotPositive => continue,
            Positivity::Indeterminate => {
                return Err(Error::Precondition(format!(
                    "positivity of N·y - z undecided at N = {n}"
                )))
            }
        }
    }
    Err(Error::Precondition("no witness below 2^20".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::{type1, type2, Label};
    use crate::quiver::quiver_of;

    fn class(v: &[i64]) -> K0Class {
        K0Class::from_i64(v)
    }

    #[test]
    fn powers_of_two() {
        let q = quiver_of(&type1(2, 1));
        let b = unroll(&q, &[1], 4).unwrap();
        let sizes: Vec<BigUint> = b.stages.iter().map(|s| s[0].clone()).collect();
        assert_eq!(sizes, [1u32, 2, 4, 8, 16].map(BigUint::from).to_vec());
        assert_eq!(unroll(&q, &[1], 0).unwrap().stages.len(), 1);
    }

    #[test]
    fn two_vertex_sizes() {
        let q = quiver_of(&type1(2, 2));
        let b = unroll(&q, &[1, 1], 2).unwrap();
        assert_eq!(b.stages[1], vec![BigUint::from(4u32); 2]);
        assert_eq!(b.stages[2], vec![BigUint::from(16u32); 2]);
        assert!(unroll(&q, &[1], 2).is_err());
        assert!(unroll(&q, &[1, 0], 2).is_err());
    }

    #[test]
    fn sizes_follow_the_larger_algebra() {
        // Column k of the arrow matrix lists the blocks inside block k.
        let q = quiver_of(&type2(2, 1, 1).unwrap());
        let b = unroll(&q, &[1, 1], 1).unwrap();
        assert_eq!(b.stages[1], vec![BigUint::from(7u32), BigUint::from(1u32)]);
    }

    #[test]
    fn positivity_examples() {
        let q = quiver_of(&type1(2, 2));
        assert!(k0_positive(&q, &class(&[1, 1])).unwrap().is_positive());
        assert!(!k0_positive(&q, &class(&[1, -1])).unwrap().is_positive());
        assert!(k0_positive(&q, &class(&[2, -1])).unwrap().is_positive());
        assert!(k0_positive(&q, &class(&[0, 0])).unwrap().is_positive());
    }

    #[test]
    fn iteration_fallback() {
        let mut q = quiver_of(&type1(2, 2));
        q.descriptor = None;
        let v = k0_positive(&q, &class(&[2, -1])).unwrap();
        assert_eq!(v.verdict, Positivity::Positive);
        assert_eq!(v.method, Method::Iteration { steps: 1 });
        assert_eq!(v.trace[1], vec![BigInt::from(14), BigInt::from(2)]);
        let v = k0_positive(&q, &class(&[1, -1])).unwrap();
        assert_eq!(v.verdict, Positivity::Indeterminate);
        let v = k0_positive(&q, &class(&[-1, 0])).unwrap();
        assert_eq!(v.verdict, Positivity::NotPositive);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let q = quiver_of(&type2(2, 1, 1).unwrap());
        assert!(matches!(k0_positive(&q, &class(&[1, 1])), Err(Error::Precondition(_))));
        let q = Quiver::new(
            vec![
                Label::Single(Default::default()),
                Label::Single(crate::Partition::from_unsorted(vec![1])),
            ],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert!(matches!(k0_positive(&q, &class(&[1, 1])), Err(Error::Precondition(_))));
    }

    #[test]
    fn witnesses() {
        let q = quiver_of(&type1(2, 2));
        assert_eq!(order_unit_witness(&q, &class(&[1, 1]), &class(&[1, 1])).unwrap(), 1);
        assert_eq!(order_unit_witness(&q, &class(&[1, 1]), &class(&[3, 0])).unwrap(), 2);
        assert_eq!(order_unit_witness(&q, &class(&[2, 1]), &class(&[0, 0])).unwrap(), 1);
        assert_eq!(order_unit_witness(&q, &class(&[1, 0]), &class(&[3, 0])).unwrap(), 3);
        assert!(order_unit_witness(&q, &class(&[1, -1]), &class(&[0, 0])).is_err());
    }
}
