//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit status if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use branchquiver::branching::{kronecker, so_matrix, sp_matrix, type1, type2, BranchingMatrix, Family, MatrixSpec};
use branchquiver::characters::{block_spectrum, character_table, determinant, spectral_verify};
use branchquiver::dimension::dim_check;
use branchquiver::golden::{printed_tables, verify_appendix};
use branchquiver::ktheory::{k0_positive, order_unit_witness, unroll, K0Class, Positivity};
use branchquiver::points::{
    equivalent, is_point_representation, point_representation, wild_family, PointDataSequence, PointDatum,
    ProjectivePoint,
};
use branchquiver::quiver::{quiver_of, Quiver, Simplicity};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: branchquiver::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn appendix() -> Check {
    let expected: BTreeSet<String> = (0..=5)
        .map(|d| format!("A^2_{d}"))
        .chain(
            ["0,0", "1,1", "2,2", "1,0", "2,1", "3,1", "4,1"]
                .iter()
                .map(|pq| format!("C^2_{pq}")),
        )
        .chain((0..=4).map(|p| format!("D^2_{p}")))
        .chain((0..=4).map(|p| format!("E^2_{p}")))
        .collect();
    let report = lib(verify_appendix())?;
    let names: BTreeSet<String> = report.tables.iter().map(|t| t.name()).collect();
    ensure(names == expected, || format!("tables present: {names:?}"))?;
    ensure(lib(printed_tables())?.len() == expected.len(), || {
        "golden data has extra tables".into()
    })?;
    let mut detail = Vec::new();
    for t in report.tables.iter().filter(|t| !t.passed()) {
        for m in &t.mismatches {
            detail.push(format!(
                "{} row {} col {}: printed {}, computed {}",
                t.name(),
                m.row,
                m.col,
                m.printed,
                m.computed
            ));
        }
        if t.mismatches.is_empty() {
            detail.push(format!("{}: shape differs", t.name()));
        }
    }
    let summary = format!(
        "{} tables, {} entries, {} mismatches",
        report.tables.len(),
        report.entry_count(),
        report.mismatch_count()
    );
    if report.passed() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", detail.join("; ")))
    }
}

fn type1_spectra() -> Check {
    let mut count = 0;
    for n in 2..=4usize {
        for d in 0..=5usize {
            let cert = lib(spectral_verify(n, d))?;
            ensure(cert.valid(), || {
                format!("A^{n}_{d}: certificate invalid ({:?})", cert.offending_class)
            })?;
            // Recompute A·X = X·D from scratch.
            let a = type1(n, d);
            let table = lib(character_table(d))?;
            let size = table.rows.len();
            for (j, class) in table.cols.iter().enumerate() {
                let eig = BigInt::from(n).pow(class.length() as u32);
                for i in 0..size {
                    let lhs: BigInt = (0..size)
                        .map(|k| BigInt::from(a.entries[i][k]) * table.values[k][j])
                        .sum();
                    ensure(lhs == &eig * table.values[i][j], || {
                        format!("A^{n}_{d}: column {class} row {i}")
                    })?;
                }
            }
            let x: Vec<Vec<BigInt>> = table
                .values
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            ensure(determinant(x) != BigInt::from(0), || format!("A^{n}_{d}: det X = 0"))?;
            count += 1;
        }
    }
    Ok(format!("{count} matrices diagonalized exactly"))
}

fn type2_spectra() -> Check {
    let mut count = 0;
    for n in 2..=3usize {
        for p in 0..=2usize {
            for q in 0..=2usize {
                let m = lib(type2(n, p, q))?;
                let s = lib(block_spectrum(&m))?;
                ensure(s.verified(), || format!("C^{n}_{p},{q}: blocks not verified"))?;
                let eigs = s.eigenvalues();
                ensure(eigs.len() == m.size(), || {
                    format!("C^{n}_{p},{q}: {} eigenvalues for size {}", eigs.len(), m.size())
                })?;
                let allowed: Vec<BigUint> = (0..=p + q).map(|e| BigUint::from(n).pow(e as u32)).collect();
                ensure(eigs.iter().all(|e| allowed.contains(e)), || {
                    format!("C^{n}_{p},{q}: eigenvalue outside powers of n")
                })?;
                let top = &allowed[p + q];
                let mult = eigs.iter().filter(|e| *e == top).count();
                ensure(mult == 1, || {
                    format!("C^{n}_{p},{q}: top eigenvalue multiplicity {mult}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} Type II spectra checked"))
}

fn check_blocks(m: &BranchingMatrix, expected: &[Vec<Vec<u64>>], name: &str) -> Result<(), String> {
    ensure(m.is_block_lower_triangular(), || {
        format!("{name}: not block lower triangular")
    })?;
    ensure(m.block_ranges().len() == expected.len(), || {
        format!("{name}: block count")
    })?;
    for (i, e) in expected.iter().enumerate() {
        ensure(&lib(m.diagonal_block(i))? == e, || {
            format!("{name}: diagonal block {i}")
        })?;
    }
    Ok(())
}

fn block_structure() -> Check {
    let n = 2;
    let mut blocks = 0;
    for p in 0..=3usize {
        for q in 0..=3usize {
            let m = lib(type2(n, p, q))?;
            let expected: Vec<_> = (0..=p.min(q))
                .map(|i| kronecker(&type1(n, p - i).entries, &type1(n, q - i).entries))
                .collect();
            blocks += expected.len();
            check_blocks(&m, &expected, &format!("C^2_{p},{q}"))?;
        }
    }
    for p in 0..=4usize {
        let expected: Vec<_> = (0..=p / 2).map(|i| type1(n, p - 2 * i).entries).collect();
        blocks += 2 * expected.len();
        check_blocks(&lib(sp_matrix(n, p))?, &expected, &format!("D^2_{p}"))?;
        check_blocks(&lib(so_matrix(n, p))?, &expected, &format!("E^2_{p}"))?;
    }
    Ok(format!("{blocks} diagonal blocks match"))
}

fn dimension_oracle() -> Check {
    let mut columns = 0;
    let mut run = |m: &BranchingMatrix, k: usize| -> Result<(), String> {
        let r = lib(dim_check(m, k))?;
        columns += r.columns.len();
        ensure(r.passed(), || {
            let bad: Vec<String> = r
                .failures()
                .map(|c| format!("{}: {} vs {}", c.label, c.expected, c.restricted))
                .collect();
            format!(
                "{}^{}_{:?} at k = {k}: {}",
                m.family(),
                m.n(),
                m.spec.params(),
                bad.join(", ")
            )
        })
    };
    for n in 1..=3usize {
        for d in 0..=4usize {
            let m = type1(n, d);
            let ks: BTreeSet<usize> = [d, d + 1, 2 * d].into_iter().collect();
            for k in ks {
                run(&m, k)?;
            }
        }
    }
    for p in 0..=2usize {
        for q in 0..=2usize {
            run(&lib(type2(2, p, q))?, 2 * (p + q))?;
        }
    }
    for p in 0..=3usize {
        run(&lib(sp_matrix(2, p))?, 2 * p)?;
        run(&lib(so_matrix(2, p))?, 2 * p)?;
    }
    Ok(format!("{columns} column identities hold"))
}

fn simplicity() -> Check {
    let mut simple = 0;
    for family in [Family::A, Family::B] {
        for n in 2..=3usize {
            for d in 0..=4usize {
                let q = quiver_of(&lib(lib(MatrixSpec::new(family, n, &[d]))?.build())?);
                ensure(q.simplicity_certificate() == Simplicity::Simple, || {
                    format!("{family}^{n}_{d} not simple")
                })?;
                simple += 1;
            }
        }
    }
    for (name, m) in [
        ("C^2_1,1", lib(type2(2, 1, 1))?),
        ("D^2_2", lib(sp_matrix(2, 2))?),
        ("E^2_2", lib(so_matrix(2, 2))?),
    ] {
        let q = quiver_of(&m);
        ensure(!q.is_symmetric(), || format!("{name} unexpectedly symmetric"))?;
        ensure(q.simplicity_certificate() == Simplicity::Inconclusive, || {
            format!("{name} not inconclusive")
        })?;
    }
    Ok(format!(
        "{simple} Type I quivers simple, 3 asymmetric quivers inconclusive"
    ))
}

/// `u = 0` or `(Aᵀ)^j u` entrywise positive for some `j ≤ 64`.
fn ground_truth(q: &Quiver, u: &[i64]) -> bool {
    if u.iter().all(|&x| x == 0) {
        return true;
    }
    let n = u.len();
    let mut v: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
    for _ in 0..=64 {
        if v.iter().all(|x| *x > BigInt::from(0)) {
            return true;
        }
        v = (0..n).map(|k| (0..n).map(|j| &v[j] * q.arrows[j][k]).sum()).collect();
    }
    false
}

fn k0_tests() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let quivers = [
        quiver_of(&type1(2, 2)),
        quiver_of(&type1(2, 3)),
        quiver_of(&type1(3, 2)),
    ];
    let mut positives = 0;
    for q in &quivers {
        for case in 0..500 {
            let spread = if case % 2 == 0 { 3 } else { 20 };
            let u: Vec<i64> = (0..q.vertex_count()).map(|_| rng.gen_range(-spread..=spread)).collect();
            let verdict = lib(k0_positive(q, &K0Class::from_i64(&u)))?;
            let truth = ground_truth(q, &u);
            ensure(verdict.verdict != Positivity::Indeterminate, || {
                format!("{u:?}: indeterminate")
            })?;
            ensure(verdict.is_positive() == truth, || {
                format!(
                    "{:?} {u:?}: verdict {:?}, ground truth {truth}",
                    q.vertices, verdict.verdict
                )
            })?;
            positives += usize::from(truth);
        }
        for _ in 0..100 {
            let y: Vec<i64> = (0..q.vertex_count()).map(|_| rng.gen_range(1..=6)).collect();
            let z: Vec<i64> = (0..q.vertex_count()).map(|_| rng.gen_range(-30..=30)).collect();
            let (yc, zc) = (K0Class::from_i64(&y), K0Class::from_i64(&z));
            let n = lib(order_unit_witness(q, &yc, &zc))?;
            let at = |k: u64| lib(k0_positive(q, &yc.combine(&BigInt::from(k), &zc, &BigInt::from(1))));
            ensure(at(n)?.is_positive(), || {
                format!("witness {n} for y {y:?}, z {z:?} fails")
            })?;
            ensure(n == 1 || !at(n - 1)?.is_positive(), || {
                format!("witness {n} for y {y:?}, z {z:?} not minimal")
            })?;
        }
    }
    let diagram = lib(unroll(&quiver_of(&type1(2, 1)), &[1], 10))?;
    let sizes: Vec<BigUint> = diagram.stages.iter().map(|s| s[0].clone()).collect();
    let powers: Vec<BigUint> = (0..=10u32).map(|i| BigUint::from(2u32).pow(i)).collect();
    ensure(sizes == powers, || format!("Bratteli sizes {sizes:?}"))?;
    Ok(format!(
        "1500 verdicts ({positives} positive), 300 witnesses, sizes 1..1024"
    ))
}

fn rational(rng: &mut StdRng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-4i64..=4)),
        BigInt::from(rng.gen_range(1i64..=3)),
    )
}

fn nonzero_rational(rng: &mut StdRng) -> BigRational {
    loop {
        let r = rational(rng);
        if r != BigRational::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

fn point(rng: &mut StdRng, dim: usize) -> ProjectivePoint {
    loop {
        if let Ok(p) = ProjectivePoint::new((0..dim).map(|_| rational(rng)).collect()) {
            return p;
        }
    }
}

/// A random valid sequence: vertices first, then points sized by the arrows
/// between consecutive vertices (wrapping from the end of the period).
fn random_sequence(rng: &mut StdRng, q: &Quiver) -> PointDataSequence {
    let pre = rng.gen_range(0..=3);
    let per = rng.gen_range(1..=3);
    let vs: Vec<usize> = (0..pre + per).map(|_| rng.gen_range(0..q.vertex_count())).collect();
    let next = |k: usize| if k + 1 < vs.len() { vs[k + 1] } else { vs[pre] };
    let terms: Vec<PointDatum> = (0..vs.len())
        .map(|k| PointDatum {
            vertex: q.vertices[vs[k]].clone(),
            point: point(rng, q.arrow_count(vs[k], next(k)) as usize),
        })
        .collect();
    PointDataSequence::new(q.clone(), terms[..pre].to_vec(), terms[pre..].to_vec()).expect("valid by construction")
}

fn point_modules() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let quivers = [
        quiver_of(&type1(2, 1)),
        quiver_of(&type1(3, 1)),
        quiver_of(&type1(2, 2)),
    ];
    let mut cases = 0;
    for round in 0..400 {
        let q = &quivers[round % quivers.len()];
        let s = random_sequence(&mut rng, q);
        let t = random_sequence(&mut rng, q);
        let eq = |a: &PointDataSequence, b: &PointDataSequence| lib(equivalent(a, b));
        // Equivalence laws.
        ensure(eq(&s, &s)?, || "reflexivity".into())?;
        ensure(eq(&s, &t)? == eq(&t, &s)?, || "symmetry".into())?;
        let factors: Vec<BigRational> = (0..rng.gen_range(1..=4)).map(|_| nonzero_rational(&mut rng)).collect();
        let scaled = s.rescaled(&factors);
        let rotated = scaled.rotated();
        ensure(eq(&s, &scaled)? && eq(&scaled, &rotated)? && eq(&s, &rotated)?, || {
            "scaling/transitivity".into()
        })?;
        // Prefix invariance: replace the first terms with other valid data.
        let k = rng.gen_range(1..=3);
        let prefix: Vec<PointDatum> = (0..k)
            .map(|i| {
                let v = q.index_of(&s.term(i).vertex).unwrap();
                let w = q.index_of(&s.term(i + 1).vertex).unwrap();
                PointDatum {
                    vertex: s.term(i).vertex.clone(),
                    point: point(&mut rng, q.arrow_count(v, w) as usize),
                }
            })
            .collect();
        let changed = lib(s.with_prefix(prefix))?;
        ensure(eq(&s, &changed)?, || "prefix invariance".into())?;
        // Transitivity through an unrelated sequence.
        if eq(&s, &t)? {
            ensure(eq(&changed, &t)?, || "transitivity".into())?;
        }
        // Point representations.
        for seq in [&s, &t, &changed] {
            ensure(is_point_representation(&point_representation(seq), 50), || {
                "point representation check".into()
            })?;
        }
        ensure(
            point_representation(&s).tail_isomorphic(&point_representation(&changed)),
            || "equivalent sequences give non-isomorphic tails".into(),
        )?;
        cases += 1;
    }
    // Distinctness over P^1 and P^2.
    for round in 0..700 {
        let dim = 2 + round % 2;
        let len = rng.gen_range(1..=3);
        let xs: Vec<ProjectivePoint> = (0..len).map(|_| point(&mut rng, dim)).collect();
        let mut ys = xs.clone();
        let i = rng.gen_range(0..len);
        ys[i] = loop {
            let y = point(&mut rng, dim);
            if !y.same_point(&xs[i]) {
                break y;
            }
        };
        let a = lib(wild_family(dim, xs))?;
        let b = lib(wild_family(dim, ys))?;
        ensure(!lib(equivalent(&a, &b))?, || {
            "distinct periodic tuples judged equivalent".into()
        })?;
        ensure(
            !point_representation(&a).tail_isomorphic(&point_representation(&b)),
            || "distinct tuples give isomorphic tails".into(),
        )?;
        cases += 1;
    }
    Ok(format!("{cases} randomized cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("appendix reproduction", appendix),
        ("Type I spectral identity", type1_spectra),
        ("Type II spectra", type2_spectra),
        ("block structure", block_structure),
        ("dimension oracle", dimension_oracle),
        ("simplicity criterion", simplicity),
        ("K0 positivity and order units", k0_tests),
        ("point-module properties", point_modules),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
