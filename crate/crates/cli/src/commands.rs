use std::path::Path;

use branchquiver::branching::{BranchingMatrix, Family, MatrixSpec};
use branchquiver::characters::{block_spectrum, character_table_bounded, spectral_verify};
use branchquiver::dimension::{default_rank, dim_check};
use branchquiver::golden::verify_appendix;
use branchquiver::ktheory::{k0_positive_with_cap, order_unit_witness, unroll, K0Class, Method, Positivity};
use branchquiver::lr::CoefficientQuery;
use branchquiver::points::{equivalent, PointDataSequence};
use branchquiver::quiver::{quiver_of, Quiver, Simplicity};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::cli::{Cli, Command, Format, MatrixArgs};
use crate::Outcome;

type Res<T> = Result<T, Box<dyn std::error::Error>>;

pub fn run(cli: &Cli) -> Res<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Matrix(args) => matrix(args, fmt),
        Command::Coeff { family, labels } => coeff(family, labels, fmt),
        Command::Chartable { d, bound } => chartable(*d, *bound, fmt),
        Command::Spectra(args) => spectra(args, fmt),
        Command::Quiver { matrix, dot } => quiver(matrix, *dot, fmt),
        Command::Dimcheck { matrix, k } => dimcheck(matrix, *k, fmt),
        Command::Bratteli {
            matrix,
            stages,
            initial,
        } => bratteli(matrix, *stages, initial.as_deref(), fmt),
        Command::K0 {
            matrix,
            vector,
            unit,
            cap,
        } => k0(matrix, vector, unit.as_deref(), *cap, fmt),
        Command::PointsEquiv { a, b } => points_equiv(a, b, fmt),
        Command::VerifyAppendix => appendix(fmt),
    }
}

fn ok(text: String) -> Res<Outcome> {
    Ok(Outcome { text, ok: true })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

fn pick(fmt: Option<Format>, default: Format, allowed: &[Format], command: &str) -> Res<Format> {
    let f = fmt.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(format!("{command} does not support --format {f:?}")
            .to_lowercase()
            .into())
    }
}

/// Decimal number when it fits, string otherwise.
fn big_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) if v <= i64::MAX as u64 => json!(v),
        _ => Value::String(x.to_string()),
    }
}

fn signed_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn spec_of(args: &MatrixArgs) -> Res<MatrixSpec> {
    let family: Family = args.family.parse()?;
    let params = match family {
        Family::A | Family::B => {
            if args.p.is_some() || args.q.is_some() {
                return Err(format!("family {family} takes --d only").into());
            }
            vec![args.d.ok_or_else(|| format!("family {family} needs --d"))?]
        }
        Family::C => {
            if args.d.is_some() {
                return Err("family C takes --p and --q".into());
            }
            vec![args.p.ok_or("family C needs --p")?, args.q.ok_or("family C needs --q")?]
        }
        Family::D | Family::E => {
            if args.d.is_some() || args.q.is_some() {
                return Err(format!("family {family} takes --p only").into());
            }
            vec![args.p.ok_or_else(|| format!("family {family} needs --p"))?]
        }
    };
    Ok(MatrixSpec::new(family, args.n, &params)?)
}

/// Builds the matrix, reporting progress on stderr for large instances.
fn build(args: &MatrixArgs) -> Res<BranchingMatrix> {
    let spec = spec_of(args)?;
    if !spec.is_large() {
        return Ok(spec.build()?);
    }
    let mut last = usize::MAX;
    let m = spec.build_with_progress(&mut |done, total| {
        let pct = (done * 100).checked_div(total).unwrap_or(100);
        if pct / 10 != last / 10 || done == total {
            eprintln!(
                "building {}^{}_{}: {done}/{total}",
                spec.family(),
                spec.n(),
                join(&spec.params())
            );
            last = pct;
        }
    })?;
    Ok(m)
}

fn matrix(args: &MatrixArgs, fmt: Option<Format>) -> Res<Outcome> {
    let m = build(args)?;
    ok(
        match pick(fmt, Format::Text, &[Format::Json, Format::Csv, Format::Text], "matrix")? {
            Format::Json => pretty(&m.to_json()),
            Format::Csv => m.to_csv(),
            _ => m.to_text(),
        },
    )
}

fn coeff(family: &str, labels: &[String], fmt: Option<Format>) -> Res<Outcome> {
    if !CoefficientQuery::FAMILIES.contains(&family) {
        return Err(format!(
            "unknown coefficient family {family:?}; expected one of {}",
            CoefficientQuery::FAMILIES.join(", ")
        )
        .into());
    }
    let value = CoefficientQuery::parse(family, labels)?.evaluate();
    ok(match pick(fmt, Format::Text, &[Format::Json, Format::Text], "coeff")? {
        Format::Json => pretty(&json!({ "family": family, "labels": labels, "value": value })),
        _ => format!("{value}\n"),
    })
}

fn chartable(d: usize, bound: usize, fmt: Option<Format>) -> Res<Outcome> {
    let t = character_table_bounded(d, bound)?;
    ok(
        match pick(
            fmt,
            Format::Csv,
            &[Format::Json, Format::Csv, Format::Text],
            "chartable",
        )? {
            Format::Json => pretty(&json!({
                "d": d,
                "rows": t.rows.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "classes": t.cols.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "class_sizes": t.class_sizes.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "values": t.values,
            })),
            _ => t.to_csv(),
        },
    )
}

fn spectra(args: &MatrixArgs, fmt: Option<Format>) -> Res<Outcome> {
    let spec = spec_of(args)?;
    let f = pick(fmt, Format::Json, &[Format::Json, Format::Text], "spectra")?;
    let (value, eigenvalues, verified) = match spec {
        MatrixSpec::Type1 { n, d, .. } => {
            let cert = spectral_verify(n, d)?;
            let pairs: Vec<Value> = cert
                .eigenpairs
                .iter()
                .map(|(class, eig, vec)| json!({ "class": class.to_string(), "eigenvalue": big_json(eig), "eigenvector": vec }))
                .collect();
            let eigs = cert.eigenvalues();
            let v = json!({
                "family": spec.family().to_string(),
                "n": n,
                "params": spec.params(),
                "eigenvalues": eigs.iter().map(big_json).collect::<Vec<_>>(),
                "eigenpairs": pairs,
                "identity_holds": cert.identity_holds,
                "offending_class": cert.offending_class.as_ref().map(ToString::to_string),
                "determinant": signed_json(&cert.determinant),
                "verified": cert.valid(),
            });
            (v, eigs, cert.valid())
        }
        _ => {
            let m = build(args)?;
            let s = block_spectrum(&m)?;
            let blocks: Vec<Value> = s
                .blocks
                .iter()
                .map(|b| {
                    json!({
                        "index": b.index,
                        "degrees": [b.degrees.0, b.degrees.1],
                        "eigenvalues": b.eigenvalues.iter().map(big_json).collect::<Vec<_>>(),
                        "verified": b.verified,
                    })
                })
                .collect();
            let eigs = s.eigenvalues();
            let v = json!({
                "family": spec.family().to_string(),
                "n": spec.n(),
                "params": spec.params(),
                "eigenvalues": eigs.iter().map(big_json).collect::<Vec<_>>(),
                "block_lower_triangular": s.triangular,
                "blocks": blocks,
                "verified": s.verified(),
            });
            (v, eigs, s.verified())
        }
    };
    let text = match f {
        Format::Json => pretty(&value),
        _ => format!(
            "eigenvalues: {}\nverified: {}\n",
            join(&eigenvalues),
            if verified { "yes" } else { "no" }
        ),
    };
    Ok(Outcome { text, ok: verified })
}

fn quiver(args: &MatrixArgs, dot: bool, fmt: Option<Format>) -> Res<Outcome> {
    let q = quiver_of(&build(args)?);
    let f = if dot {
        Format::Dot
    } else {
        pick(fmt, Format::Json, &[Format::Json, Format::Dot, Format::Text], "quiver")?
    };
    let simple = q.simplicity_certificate() == Simplicity::Simple;
    ok(match f {
        Format::Dot => q.to_dot(),
        Format::Json => {
            let mut v = q.to_json();
            v["strongly_connected"] = json!(q.is_strongly_connected());
            v["cycle_gcd"] = json!(q.cycle_gcd());
            v["primitive"] = json!(q.is_primitive());
            v["symmetric"] = json!(q.is_symmetric());
            v["simplicity"] = json!(if simple { "simple" } else { "inconclusive" });
            pretty(&v)
        }
        _ => format!(
            "vertices: {}\nstrongly connected: {}\ncycle gcd: {}\nsymmetric: {}\nsimplicity: {}\n",
            q.vertex_count(),
            q.is_strongly_connected(),
            q.cycle_gcd().map_or("none".to_string(), |g| g.to_string()),
            q.is_symmetric(),
            if simple { "simple" } else { "inconclusive" },
        ),
    })
}

fn dimcheck(args: &MatrixArgs, k: Option<usize>, fmt: Option<Format>) -> Res<Outcome> {
    let m = build(args)?;
    let k = k.unwrap_or_else(|| default_rank(&m));
    let report = dim_check(&m, k)?;
    let text = match pick(fmt, Format::Text, &[Format::Json, Format::Text], "dimcheck")? {
        Format::Json => pretty(&json!({
            "family": report.family.to_string(),
            "n": report.n,
            "k": report.k,
            "big": format!("{}{}", report.big.0, report.big.1),
            "small": format!("{}{}", report.small.0, report.small.1),
            "columns": report.columns.iter().map(|c| json!({
                "label": c.label.to_string(),
                "expected": big_json(&c.expected),
                "restricted": big_json(&c.restricted),
                "passed": c.passed(),
            })).collect::<Vec<_>>(),
            "passed": report.passed(),
        })),
        _ => report.to_text(),
    };
    Ok(Outcome {
        text,
        ok: report.passed(),
    })
}

fn bratteli(args: &MatrixArgs, stages: usize, initial: Option<&[u64]>, fmt: Option<Format>) -> Res<Outcome> {
    let q = quiver_of(&build(args)?);
    let ones = vec![1; q.vertex_count()];
    let diagram = unroll(&q, initial.unwrap_or(&ones), stages)?;
    ok(
        match pick(fmt, Format::Json, &[Format::Json, Format::Text], "bratteli")? {
            Format::Json => pretty(&json!({
                "vertices": q.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "edge_multiplicities": q.arrows,
                "stages": diagram.stages.iter().map(|s| s.iter().map(big_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })),
            _ => diagram.stages.iter().map(|s| join(s) + "\n").collect(),
        },
    )
}

fn class_for(q: &Quiver, v: &[i64], what: &str) -> Res<K0Class> {
    if v.len() != q.vertex_count() {
        return Err(format!("{what} needs {} entries, got {}", q.vertex_count(), v.len()).into());
    }
    Ok(K0Class::from_i64(v))
}

fn k0(args: &MatrixArgs, vector: &[i64], unit: Option<&[i64]>, cap: usize, fmt: Option<Format>) -> Res<Outcome> {
    let q = quiver_of(&build(args)?);
    let f = pick(fmt, Format::Json, &[Format::Json, Format::Text], "k0")?;
    let z = class_for(&q, vector, "--vector")?;
    if let Some(y) = unit {
        let y = class_for(&q, y, "--unit")?;
        let n = order_unit_witness(&q, &y, &z)?;
        return ok(match f {
            Format::Json => pretty(
                &json!({ "unit": y.vector.iter().map(signed_json).collect::<Vec<_>>(), "vector": vector, "witness": n }),
            ),
            _ => format!("{n}\n"),
        });
    }
    let v = k0_positive_with_cap(&q, &z, cap)?;
    let verdict = match v.verdict {
        Positivity::Positive => "positive",
        Positivity::NotPositive => "not positive",
        Positivity::Indeterminate => "indeterminate",
    };
    let trace: Vec<Vec<Value>> = v.trace.iter().map(|t| t.iter().map(signed_json).collect()).collect();
    let text = match f {
        Format::Json => {
            let method = match &v.method {
                Method::Perron { eigenvector, pairing } => json!({
                    "perron": {
                        "eigenvector": eigenvector.iter().map(signed_json).collect::<Vec<_>>(),
                        "pairing": signed_json(pairing),
                    }
                }),
                Method::Iteration { steps } => json!({ "iteration": { "steps": steps } }),
            };
            pretty(&json!({ "vector": vector, "verdict": verdict, "method": method, "trace": trace }))
        }
        _ => {
            let mut s = format!("verdict: {verdict}\n");
            match &v.method {
                Method::Perron { pairing, .. } => s.push_str(&format!("method: perron pairing {pairing}\n")),
                Method::Iteration { steps } => s.push_str(&format!("method: iteration, {steps} step(s)\n")),
            }
            for t in &v.trace {
                s.push_str(&format!("  {}\n", join(t)));
            }
            s
        }
    };
    Ok(Outcome {
        text,
        ok: v.verdict != Positivity::Indeterminate,
    })
}

fn read_sequence(path: &Path) -> Res<PointDataSequence> {
    let raw = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&raw).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(PointDataSequence::from_json(&value)?)
}

fn points_equiv(a: &Path, b: &Path, fmt: Option<Format>) -> Res<Outcome> {
    let same = equivalent(&read_sequence(a)?, &read_sequence(b)?)?;
    let text = match pick(fmt, Format::Text, &[Format::Json, Format::Text], "points-equiv")? {
        Format::Json => pretty(&json!({ "equivalent": same })),
        _ => format!("{}\n", if same { "equivalent" } else { "not equivalent" }),
    };
    Ok(Outcome { text, ok: same })
}

fn appendix(fmt: Option<Format>) -> Res<Outcome> {
    let report = verify_appendix()?;
    let text = match pick(fmt, Format::Text, &[Format::Json, Format::Text], "verify-appendix")? {
        Format::Json => pretty(&json!({
            "tables": report.tables.iter().map(|t| json!({
                "name": t.name(),
                "passed": t.passed(),
                "mismatches": t.mismatches.iter().map(|m| json!({
                    "row": m.row, "col": m.col, "printed": m.printed, "computed": m.computed,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "entries": report.entry_count(),
            "mismatches": report.mismatch_count(),
            "passed": report.passed(),
        })),
        _ => {
            let mut s = String::new();
            for t in &report.tables {
                s.push_str(&format!("{} {}\n", if t.passed() { "PASS" } else { "FAIL" }, t.name()));
                for m in &t.mismatches {
                    s.push_str(&format!(
                        "  row {} col {}: printed {}, computed {}\n",
                        m.row, m.col, m.printed, m.computed
                    ));
                }
            }
            s.push_str(&format!(
                "{} tables, {} entries, {} mismatches\n",
                report.tables.len(),
                report.entry_count(),
                report.mismatch_count()
            ));
            s
        }
    };
    Ok(Outcome {
        text,
        ok: report.passed(),
    })
}
