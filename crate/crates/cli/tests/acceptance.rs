//! Acceptance checks, one PASS/FAIL line each. Every comparison is exact.
//!
//! Printed matrices are transcribed below by hand and compared entry by entry
//! against what the binary emits under `--format json`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

use ellfourier_core::fingroup::{make_cyclic, make_product, make_symmetric, make_trivial, Subgroup};
use ellfourier_core::padic::{classify_type_c_partition, partitions, verify, TypeCPartition};
use ellfourier_core::unipotent::{apply_ft, build_g2q, elliptic_basis, elliptic_projection};
use ellfourier_core::weyl::{elliptic_classes, elliptic_radical_check, weyl_a1, weyl_g2};
use ellfourier_core::{fourier_matrix, m_set, ClassFunction, CycMatrix, Cyclotomic, Rational};

const BUDGET: Duration = Duration::from_secs(10);

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ellfourier"))
        .args(args)
        .output()
        .expect("spawn ellfourier");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 stdout"))
}

fn cli_json(args: &[&str]) -> std::result::Result<Value, String> {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, text) = run_cli(&full);
    ensure(code == 0, || format!("`{}` exited with {code}", args.join(" ")))?;
    serde_json::from_str(&text).map_err(|e| format!("bad JSON from `{}`: {e}", args.join(" ")))
}

fn cli_matrix(args: &[&str]) -> std::result::Result<CycMatrix, String> {
    let v = cli_json(args)?;
    CycMatrix::parse_json(&v.to_string()).map_err(|e| e.to_string())
}

fn cyc(v: &Value) -> std::result::Result<Cyclotomic, String> {
    Cyclotomic::parse_json(&v.to_string()).map_err(|e| e.to_string())
}

fn q(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::from_frac(n, d)
}

fn z(n: i64) -> Cyclotomic {
    Cyclotomic::from_int(n)
}

/// `n / (d * sqrt(r))`.
fn over_sqrt(n: i64, d: i64, r: u64) -> Cyclotomic {
    Cyclotomic::sqrt_int(r).inv().unwrap().scale(&Rational::new(n.into(), d.into()))
}

/// `n * sqrt(r) / d`.
fn times_sqrt(n: i64, d: i64, r: u64) -> Cyclotomic {
    Cyclotomic::sqrt_int(r).scale(&Rational::new(n.into(), d.into()))
}

fn same(m: &CycMatrix, expected: &[Vec<Cyclotomic>], what: &str) -> Check {
    ensure(m.nrows() == expected.len(), || format!("{what}: {} rows", m.nrows()))?;
    for (i, row) in expected.iter().enumerate() {
        ensure(m.row(i).len() == row.len(), || format!("{what}: row {i} length"))?;
        for (j, e) in row.iter().enumerate() {
            ensure(&m.row(i)[j] == e, || format!("{what}: entry ({i},{j}) is {} not {e}", m.row(i)[j]))?;
        }
    }
    Ok(())
}

fn criterion_1() -> Check {
    let v = cli_json(&["chartab", "wg2"])?;
    let classes: Vec<String> = v["classes"]
        .as_array()
        .ok_or("no classes")?
        .iter()
        .map(|c| c["name"].as_str().unwrap_or_default().to_string())
        .collect();
    // Printed column order.
    let columns = ["1", "s1", "s2", "c", "c^2", "c^3"];
    let printed: [(&str, [i64; 6]); 6] = [
        ("phi(1,0)", [1, 1, 1, 1, 1, 1]),
        ("phi'(1,3)", [1, -1, 1, -1, 1, -1]),
        ("phi''(1,3)", [1, 1, -1, -1, 1, -1]),
        ("phi(1,6)", [1, -1, -1, 1, 1, 1]),
        ("phi(2,1)", [2, 0, 0, 1, -1, -2]),
        ("phi(2,2)", [2, 0, 0, -1, -1, 2]),
    ];
    let chars = v["characters"].as_array().ok_or("no characters")?;
    ensure(chars.len() == 6 && classes.len() == 6, || "table is not 6x6".into())?;
    let class_sizes = [("1", 1), ("s1", 3), ("s2", 3), ("c", 2), ("c^2", 2), ("c^3", 1)];
    for (name, size) in class_sizes {
        let c = v["classes"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .ok_or_else(|| format!("class {name} missing"))?;
        ensure(c["size"] == size, || format!("class {name} has size {}", c["size"]))?;
    }
    for (name, values) in printed {
        let row = chars
            .iter()
            .find(|c| c["name"] == name)
            .ok_or_else(|| format!("character {name} missing"))?;
        for (col, expected) in columns.iter().zip(values) {
            let j = classes
                .iter()
                .position(|c| c == col)
                .ok_or_else(|| format!("class {col} missing"))?;
            let got = cyc(&row["values"][j])?;
            ensure(got == z(expected), || format!("{name} at {col}: {got} != {expected}"))?;
        }
    }
    Ok(())
}

fn printed_s3() -> Vec<Vec<Cyclotomic>> {
    let rows: [[(i64, i64); 8]; 8] = [
        [(1, 6), (1, 3), (1, 6), (1, 2), (1, 2), (1, 3), (1, 3), (1, 3)],
        [(1, 3), (2, 3), (1, 3), (0, 1), (0, 1), (-1, 3), (-1, 3), (-1, 3)],
        [(1, 6), (1, 3), (1, 6), (-1, 2), (-1, 2), (1, 3), (1, 3), (1, 3)],
        [(1, 2), (0, 1), (-1, 2), (1, 2), (-1, 2), (0, 1), (0, 1), (0, 1)],
        [(1, 2), (0, 1), (-1, 2), (-1, 2), (1, 2), (0, 1), (0, 1), (0, 1)],
        [(1, 3), (-1, 3), (1, 3), (0, 1), (0, 1), (2, 3), (-1, 3), (-1, 3)],
        [(1, 3), (-1, 3), (1, 3), (0, 1), (0, 1), (-1, 3), (2, 3), (-1, 3)],
        [(1, 3), (-1, 3), (1, 3), (0, 1), (0, 1), (-1, 3), (-1, 3), (2, 3)],
    ];
    rows.iter().map(|r| r.iter().map(|&(n, d)| q(n, d)).collect()).collect()
}

fn criterion_2() -> Check {
    let m = cli_matrix(&["fourier", "s3"])?;
    let order = ["(1,1)", "(1,r)", "(1,eps)", "(g2,1)", "(g2,eps)", "(g3,1)", "(g3,theta)", "(g3,theta^2)"];
    ensure(m.row_labels() == order && m.col_labels() == order, || {
        format!("labels {:?}", m.row_labels())
    })?;
    same(&m, &printed_s3(), "S3 Fourier matrix")?;
    ensure(m.is_symmetric(), || "not symmetric".into())?;
    ensure(m.is_orthogonal(), || "not orthogonal".into())?;
    let sq = m.checked_mul(&m).map_err(|e| e.to_string())?;
    ensure(sq.is_identity(), || "square is not the identity".into())
}

fn criterion_3() -> Check {
    let v = cli_json(&["elliptic-basis", "g2q"])?;
    let labels: Vec<&str> = v["labels"].as_array().ok_or("no labels")?.iter().filter_map(Value::as_str).collect();
    let basis = v["basis"].as_array().ok_or("no basis")?;
    let weyl = ["phi(1,0)", "phi'(1,3)", "phi''(1,3)", "phi(1,6)", "phi(2,1)", "phi(2,2)"];
    // (name, scale, printed numerators over the printed denominator)
    let printed: [(&str, u64, i64, [i64; 6]); 3] = [
        ("sqrt(6)*rho[c]", 6, 6, [1, -1, -1, 1, 1, -1]),
        ("sqrt(6)*rho[c^2]", 6, 6, [1, 1, 1, 1, -1, -1]),
        ("sqrt(12)*rho[c^3]", 12, 12, [1, -1, -1, 1, -2, 2]),
    ];
    let mut vectors = Vec::new();
    for b in basis {
        let coords = b["coordinates"]
            .as_array()
            .ok_or("no coordinates")?
            .iter()
            .map(cyc)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        vectors.push(coords);
    }
    for (k, (name, scale, den, nums)) in printed.iter().enumerate() {
        ensure(basis[k]["name"] == *name, || format!("basis vector {k} is {}", basis[k]["name"]))?;
        let unscale = Cyclotomic::sqrt_int(*scale).inv().unwrap();
        for (label, n) in weyl.iter().zip(nums) {
            let j = labels.iter().position(|l| l == label).ok_or_else(|| format!("{label} missing"))?;
            let got = &vectors[k][j] * &unscale;
            ensure(got == q(*n, *den), || format!("{name} coefficient of {label} is {got}"))?;
        }
        for (j, label) in labels.iter().enumerate() {
            if !weyl.contains(label) {
                ensure(vectors[k][j].is_zero(), || format!("{name} has a {label} component"))?;
            }
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            let p = Cyclotomic::dot(vectors[a].iter().zip(&vectors[b].iter().map(Cyclotomic::conj).collect::<Vec<_>>()));
            let expected = if a == b { z(1) } else { z(0) };
            ensure(p == expected, || format!("pairing ({a},{b}) is {p}"))?;
        }
    }
    Ok(())
}

fn printed_ft_el() -> Vec<Vec<Cyclotomic>> {
    let s6 = || over_sqrt(1, 1, 6);
    let ms6 = || over_sqrt(-1, 1, 6);
    let ms3 = || over_sqrt(-1, 1, 3);
    vec![
        vec![q(1, 6), q(1, 2), times_sqrt(1, 3, 2), z(0), s6(), s6(), s6()],
        vec![q(1, 2), q(1, 2), z(0), s6(), z(0), ms6(), ms6()],
        vec![times_sqrt(1, 3, 2), z(0), q(1, 3), ms3(), ms3(), z(0), z(0)],
        vec![z(0), s6(), ms3(), q(1, 6), q(-1, 2), q(1, 3), q(1, 3)],
        vec![s6(), z(0), ms3(), q(-1, 2), q(1, 2), z(0), z(0)],
        vec![s6(), ms6(), z(0), q(1, 3), z(0), q(2, 3), q(-1, 3)],
        vec![s6(), ms6(), z(0), q(1, 3), z(0), q(-1, 3), q(2, 3)],
    ]
}

fn criterion_4() -> Check {
    let m = cli_matrix(&["ft-el", "g2q"])?;
    same(&m, &printed_ft_el(), "elliptic Fourier matrix")?;
    ensure(m.is_symmetric(), || "not symmetric".into())?;
    ensure(m.is_orthogonal(), || "not orthogonal".into())?;
    // Closure: the Fourier image of each elliptic basis vector equals its
    // own projection onto the elliptic span.
    let space = build_g2q().map_err(|e| e.to_string())?;
    for (name, v) in elliptic_basis(&space).map_err(|e| e.to_string())? {
        let image = apply_ft(&v).map_err(|e| e.to_string())?;
        let proj = elliptic_projection(&space, &image).map_err(|e| e.to_string())?;
        let residual = image.checked_sub(&proj).map_err(|e| e.to_string())?;
        ensure(residual.is_zero(), || format!("FT({name}) leaves the elliptic span"))?;
    }
    Ok(())
}

fn printed_res() -> Vec<Vec<Cyclotomic>> {
    let mut rows = vec![
        vec![over_sqrt(1, 1, 6), over_sqrt(2, 1, 6), over_sqrt(-1, 1, 6), z(0), z(0)],
        vec![over_sqrt(1, 1, 6), z(0), over_sqrt(1, 1, 6), over_sqrt(2, 1, 6), z(0)],
        vec![over_sqrt(1, 2, 3), over_sqrt(-1, 2, 3), over_sqrt(-1, 2, 3), z(0), times_sqrt(1, 2, 3)],
    ];
    for _ in 0..4 {
        rows.push(vec![z(0); 5]);
    }
    rows.push(vec![q(1, 2), q(-1, 2), q(-1, 2), z(0), q(-1, 2)]);
    rows.push(vec![over_sqrt(1, 1, 3), z(0), over_sqrt(1, 1, 3), over_sqrt(-1, 1, 3), z(0)]);
    for (i, row) in rows.iter_mut().enumerate() {
        for k in 0..4 {
            row.push(if i == 3 + k { z(1) } else { z(0) });
        }
    }
    rows
}

fn criterion_5() -> Check {
    let m = cli_matrix(&["res-matrix"])?;
    let cols: Vec<String> = (1..=9).map(|i| format!("v{i}")).collect();
    ensure(m.col_labels() == cols, || format!("columns {:?}", m.col_labels()))?;
    same(&m, &printed_res(), "restriction matrix")?;
    let mtm = m.transpose().checked_mul(&m).map_err(|e| e.to_string())?;
    ensure(mtm.is_identity(), || "M^T M is not the identity".into())?;
    let mmt = m.checked_mul(&m.transpose()).map_err(|e| e.to_string())?;
    ensure(mmt.is_identity(), || "M M^T is not the identity".into())
}

fn criterion_6() -> Check {
    let (code, _) = run_cli(&["verify"]);
    ensure(code == 0, || format!("verify exited with {code}"))?;
    let v = cli_json(&["verify"])?;
    ensure(v["commutes"] == true, || "commutes is false".into())?;
    ensure(v["ft_el_blocks"] == serde_json::json!([7, 1, 1]), || format!("FT_el blocks {}", v["ft_el_blocks"]))?;
    ensure(v["ft_dual_blocks"] == serde_json::json!([1, 8]), || format!("FT_dual blocks {}", v["ft_dual_blocks"]))?;
    let parse = |k: &str| CycMatrix::parse_json(&v[k].to_string()).map_err(|e| e.to_string());
    let (t, d, r, residual) = (parse("ft_el")?, parse("ft_dual")?, parse("res")?, parse("residual")?);
    ensure(residual.is_zero(), || "residual is nonzero".into())?;
    // Recompute from the reported matrices. With R mapping v-coordinates to
    // the elliptic basis, the square reads FT_el^T R = R FT_dual^T on column
    // vectors, and R^T FT_el R = FT_dual as a sandwich.
    let mul = |a: &CycMatrix, b: &CycMatrix| a.checked_mul(b).map_err(|e| e.to_string());
    let lhs = mul(&t.transpose(), &r)?;
    let rhs = mul(&r, &d.transpose())?;
    ensure(lhs.same_entries(&rhs), || "FT_el^T R != R FT_dual^T".into())?;
    ensure(mul(&mul(&r.transpose(), &t)?, &r)?.same_entries(&d), || "R^T FT_el R != FT_dual".into())?;
    same(&t, &block_diag_g2(), "reported FT_el")
}

fn block_diag_g2() -> Vec<Vec<Cyclotomic>> {
    let mut rows: Vec<Vec<Cyclotomic>> = printed_ft_el().into_iter().map(|mut r| {
        r.extend([z(0), z(0)]);
        r
    }).collect();
    // Both one-dimensional blocks are the identity.
    rows.push([vec![z(0); 7], vec![z(1), z(0)]].concat());
    rows.push([vec![z(0); 8], vec![z(1)]].concat());
    rows
}

fn cases(n: u32) -> Config {
    Config {
        failure_persistence: None,
        ..Config::with_cases(n)
    }
}

fn criterion_7() -> Check {
    // Field axioms on 10^4 random triples.
    let cyc_strategy = (1u64..=24).prop_flat_map(|n| {
        prop::collection::vec((0..n, -6i64..=6, 1i64..=4), 0..4).prop_map(move |terms| {
            terms
                .into_iter()
                .map(|(k, p, d)| Cyclotomic::root_of_unity(n, k as i64).scale(&Rational::new(p.into(), d.into())))
                .sum::<Cyclotomic>()
        })
    });
    let mut runner = TestRunner::new(cases(10_000));
    runner
        .run(&(cyc_strategy.clone(), cyc_strategy.clone(), cyc_strategy), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            Ok(())
        })
        .map_err(|e| format!("field axioms: {e}"))?;

    for n in 1..=50u64 {
        let s = Cyclotomic::sqrt_int(n);
        ensure(&s * &s == z(n as i64), || format!("sqrt({n})^2 != {n}"))?;
    }

    let z2 = make_cyclic(2).map_err(|e| e.to_string())?;
    let groups = [
        make_trivial(),
        z2.clone(),
        make_cyclic(3).map_err(|e| e.to_string())?,
        make_product(&z2, &z2).map_err(|e| e.to_string())?,
        make_symmetric(3).map_err(|e| e.to_string())?,
        make_symmetric(4).map_err(|e| e.to_string())?,
    ];
    for g in &groups {
        let m = fourier_matrix(&m_set(g).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())?;
        ensure(m.is_unitary(), || format!("Fourier matrix of {} is not unitary", g.name()))?;
    }

    for rep in [weyl_g2(), weyl_a1()] {
        let report = elliptic_radical_check(&rep).map_err(|e| e.to_string())?;
        let n_el = elliptic_classes(&rep).len();
        ensure(report.holds() && report.gram_rank == n_el, || {
            format!("elliptic radical check fails for {}", report.group)
        })?;
    }

    let s4 = make_symmetric(4).map_err(|e| e.to_string())?;
    let elems: Vec<_> = s4.elements().collect();
    let seeds = prop::collection::vec((-5i64..=5, -3i64..=3), 1..8);
    let mut runner = TestRunner::new(cases(64));
    runner
        .run(&(prop::collection::vec(0usize..24, 0..3), seeds.clone(), seeds), |(gens, fs, hs)| {
            let gens: Vec<_> = gens.iter().map(|&i| elems[i]).collect();
            let sub = Subgroup::generated_by(&s4, &gens).unwrap();
            let f = seeded(&s4, &fs);
            let psi = seeded(sub.group(), &hs);
            let lhs = psi.induce(&sub).unwrap().pairing(&f).unwrap();
            let rhs = psi.pairing(&f.restrict(&sub).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| format!("Frobenius reciprocity: {e}"))?;

    for two_n in (2..=12u64).step_by(2) {
        for parts in partitions(two_n) {
            let p = TypeCPartition::new(parts).map_err(|e| e.to_string())?;
            let c = classify_type_c_partition(&p);
            ensure(!c.is_distinguished || c.is_quasidistinguished, || format!("{p}: distinguished only"))?;
            ensure(!c.is_quasidistinguished || c.in_u_el, || format!("{p}: quasidistinguished outside U_el"))?;
            ensure(!c.in_u_el || c.is_unipotent_class, || format!("{p}: in U_el but not a class"))?;
        }
    }

    // Every single-entry perturbation of the restriction matrix breaks the diagram.
    let report = ellfourier_core::verify_diagram().map_err(|e| e.to_string())?;
    ensure(report.commutes, || "unperturbed diagram does not commute".into())?;
    for i in 0..9 {
        for j in 0..9 {
            let mut rows = report.res.rows().to_vec();
            rows[i][j] = &rows[i][j] + &z(1);
            let bumped = CycMatrix::new(report.res.row_labels().to_vec(), report.res.col_labels().to_vec(), rows)
                .map_err(|e| e.to_string())?;
            let r = verify(&report.ft_el, &report.ft_dual, &bumped).map_err(|e| e.to_string())?;
            ensure(!r.commutes, || format!("perturbing res entry ({i},{j}) keeps the diagram commutative"))?;
        }
    }
    Ok(())
}

fn seeded(g: &std::sync::Arc<ellfourier_core::FiniteGroup>, seeds: &[(i64, i64)]) -> ClassFunction {
    let z3 = Cyclotomic::root_of_unity(3, 1);
    let values = (0..g.num_classes())
        .map(|i| {
            let (a, b) = seeds[i % seeds.len()];
            &z(a) + &z3.scale(&Rational::from_integer(b.into()))
        })
        .collect();
    ClassFunction::new(g, values).unwrap()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("character table of W(G2)", criterion_1),
        ("S3 Fourier matrix", criterion_2),
        ("elliptic indicators of W(G2)", criterion_3),
        ("elliptic Fourier matrix of G2(q)", criterion_4),
        ("restriction matrix", criterion_5),
        ("commutative diagram for G2", criterion_6),
        ("property suites", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed < BUDGET, || format!("took {:.1}s", elapsed.as_secs_f64()))
        });
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({} ms)", k + 1, elapsed.as_millis()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
