//! Weyl-dimension cross-checks of every matrix family.

use branchquiver::branching::{so_matrix, sp_matrix, type1, type2, MatrixSpec};
use branchquiver::dimension::{default_rank, dim_check};

#[test]
fn type1_dimensions_at_three_ranks() {
    for n in 1..=3 {
        for d in 0..=4 {
            let m = type1(n, d);
            for k in [d, d + 1, 2 * d] {
                let r = dim_check(&m, k).unwrap();
                assert!(r.passed(), "A^{n}_{d} at k={k}: {}", r.to_text());
            }
        }
    }
}

#[test]
fn dual_family_uses_dual_modules() {
    let m = MatrixSpec::Type1 { n: 2, d: 3, dual: true }.build().unwrap();
    assert!(dim_check(&m, 4).unwrap().passed());
}

#[test]
fn type2_dimensions() {
    for p in 0..=2 {
        for q in 0..=2 {
            let m = type2(2, p, q).unwrap();
            let r = dim_check(&m, default_rank(&m)).unwrap();
            assert!(r.passed(), "C^2_{p},{q}: {}", r.to_text());
            let r = dim_check(&m, 2 * (p + q) + 1).unwrap();
            assert!(r.passed(), "C^2_{p},{q}: {}", r.to_text());
        }
    }
}

#[test]
fn symplectic_and_orthogonal_dimensions() {
    for p in 0..=3 {
        let k = 2 * p;
        for m in [sp_matrix(2, p).unwrap(), so_matrix(2, p).unwrap()] {
            for rank in [k, k + 1] {
                let r = dim_check(&m, rank).unwrap();
                assert!(r.passed(), "{:?} at k={rank}: {}", m.spec, r.to_text());
            }
        }
    }
}

#[test]
fn printed_so_entry_fails_the_oracle() {
    // The computed E^2_4 passes; swapping the two entries of row () in the
    // columns (2) and (1,1) breaks the dimension identity for both columns.
    let mut m = so_matrix(2, 4).unwrap();
    assert!(dim_check(&m, 8).unwrap().passed());
    let last = m.size() - 1;
    m.entries[last].swap(5, 6);
    let r = dim_check(&m, 8).unwrap();
    let failed: Vec<String> = r.failures().map(|c| c.label.to_string()).collect();
    assert_eq!(failed, vec!["(2)", "(1,1)"]);
}

#[test]
fn too_small_rank_is_rejected() {
    assert!(dim_check(&type1(2, 3), 2).is_err());
}
