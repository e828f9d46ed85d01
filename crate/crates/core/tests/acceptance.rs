//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use knc_core::exactcount::{count_table, f_closed, f_general, s_count_iso};
use knc_core::limitlaw::{
    distance_report, distribution, exact_to_asymptotic_ratio, ks_distance_row, limit_constants,
    llt_distance_row, pathological_row, rho_at, rho_derivatives, rho_derivatives_fd, roots_at,
    GaussianLaw, FD_STEP, PRECISION,
};
use knc_core::oracle::{count_matchings, histogram_by_arcs};
use knc_core::series::{parse_rational, verify_identity};
use rug::{Float, Integer};

const CONST_REL_TOL: f64 = 5e-5;
const GROWTH_TOL: f64 = 1e-12;
const ASYMPT_BAND: (f64, f64) = (0.9, 1.1);
const MEAN_TOL: f64 = 1.0;
const PATHOLOGICAL_LLT_FLOOR: f64 = 0.1;
const FD_REL_TOL: f64 = 1e-6;
const DESK_LENGTHS: [usize; 4] = [25, 50, 100, 200];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn fmt_seq(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    parts.join(" > ")
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn constants() -> Outcome {
    let c3 = limit_constants(3).map_err(|e| e.to_string())?;
    let c2 = limit_constants(2).map_err(|e| e.to_string())?;
    let (m3, s3) = (c3.mu.to_f64(), c3.sigma2.to_f64());
    let (m2, s2) = (c2.mu.to_f64(), c2.sigma2.to_f64());
    let ok = rel(m3, 0.39089) < CONST_REL_TOL
        && rel(s3, 0.041565) < CONST_REL_TOL
        && rel(m2, 0.27639) < CONST_REL_TOL
        && rel(s2, 0.04472) < CONST_REL_TOL;
    check(
        ok,
        format!("k=3 mu={m3:.6} sigma2={s3:.7}; k=2 mu={m2:.6} sigma2={s2:.7}"),
    )
}

fn growth_rate() -> Outcome {
    let rho = rho_at(3, 0.0).map_err(|e| e.to_string())?;
    let gamma = Float::with_val(PRECISION, rho.recip_ref());
    let expect = (Float::with_val(PRECISION, 21).sqrt() + 5u32) / 2u32;
    let gap = Float::with_val(PRECISION, &gamma - &expect).abs().to_f64();
    let data = roots_at(3, &Float::new(PRECISION)).map_err(|e| e.to_string())?;
    let product = Float::with_val(PRECISION, &rho * &data.roots[3].re);
    let prod_gap = (product.to_f64() - 1.0).abs();
    check(
        gap < GROWTH_TOL && prod_gap < GROWTH_TOL && data.roots[3].im == 0,
        format!("|1/rho - (5+sqrt21)/2| = {gap:.1e}; |rho*zeta4 - 1| = {prod_gap:.1e}"),
    )
}

fn oracle_equivalence() -> Outcome {
    for k in [2, 3, 4] {
        for n in 0..=12 {
            let brute = histogram_by_arcs(n, k).map_err(|e| e.to_string())?;
            let exact = count_table(k, n).map_err(|e| e.to_string())?;
            let same = brute.len() == exact.by_arcs().len()
                && brute.iter().zip(exact.by_arcs()).all(|(a, b)| *b == *a);
            if !same {
                return Err(format!("structures differ at k={k} n={n}"));
            }
        }
        for m in 0..=6 {
            let brute = count_matchings(2 * m, k).map_err(|e| e.to_string())?;
            let dp = f_general(k, 2 * m, 0).map_err(|e| e.to_string())?;
            if dp != brute {
                return Err(format!("matchings differ at k={k} 2m={}", 2 * m));
            }
        }
    }
    Ok("k in {2,3,4}, n <= 12 structures, 2m <= 12 matchings".into())
}

fn identity() -> Outcome {
    for k in [2, 3] {
        for w in ["1", "1/2", "2", "3/2"] {
            let w = parse_rational(w).map_err(|e| e.to_string())?;
            let check = verify_identity(k, &w, 30).map_err(|e| e.to_string())?;
            if let Some(m) = check.mismatch {
                return Err(format!(
                    "k={k} w={w}: x^{} lhs={} rhs={}",
                    m.index, m.lhs, m.rhs
                ));
            }
        }
    }
    Ok("k in {2,3}, w in {1, 1/2, 2, 3/2}, N = 30".into())
}

fn closed_vs_dp() -> Outcome {
    for k in [2, 3] {
        for n in 0..=40 {
            for ell in 0..=n {
                let a = f_closed(k, n, ell).map_err(|e| e.to_string())?;
                let b = f_general(k, n, ell).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("f_{k}({n},{ell}): closed {a} vs walks {b}"));
                }
            }
        }
    }
    Ok("k in {2,3}, n <= 40, all l".into())
}

fn asymptotics() -> Outcome {
    let r100 = exact_to_asymptotic_ratio(100)
        .map_err(|e| e.to_string())?
        .to_f64();
    let r200 = exact_to_asymptotic_ratio(200)
        .map_err(|e| e.to_string())?
        .to_f64();
    let in_band = (ASYMPT_BAND.0..=ASYMPT_BAND.1).contains(&r100);
    let trend = (r200 - 1.0).abs() < (r100 - 1.0).abs();
    check(
        in_band && trend,
        format!(
            "ratio(100) = {r100:.4} (band [{}, {}]: {}), ratio(200) = {r200:.4} (closer to 1: {})",
            ASYMPT_BAND.0,
            ASYMPT_BAND.1,
            if in_band { "in" } else { "out" },
            trend
        ),
    )
}

fn clt() -> Outcome {
    let m3 = distribution(100, 3)
        .map_err(|e| e.to_string())?
        .mean
        .to_f64();
    let m2 = distribution(100, 2)
        .map_err(|e| e.to_string())?
        .mean
        .to_f64();
    let mut ok = (m3 - 39.089).abs() <= MEAN_TOL && (m2 - 27.6393).abs() <= MEAN_TOL;
    let mut detail = format!("mean X_100: k=3 {m3:.3}, k=2 {m2:.3}");
    for k in [3, 2] {
        let ks: Vec<f64> = DESK_LENGTHS
            .iter()
            .map(|&n| distance_report(n, k).map(|r| r.ks_distance))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ok &= strictly_decreasing(&ks);
        detail.push_str(&format!("; ks k={k}: {}", fmt_seq(&ks)));
    }
    check(ok, detail)
}

fn llt() -> Outcome {
    let mut ok = true;
    let mut detail = String::new();
    for k in [3, 2] {
        let llt: Vec<f64> = DESK_LENGTHS
            .iter()
            .map(|&n| distance_report(n, k).map(|r| r.llt_distance))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ok &= strictly_decreasing(&llt);
        detail.push_str(&format!("llt k={k}: {}; ", fmt_seq(&llt)));
    }
    // a_{n,h} = (1 + 2(-1)^h) binom(n,h) has mean n/2 and variance n/4
    let half = Float::with_val(PRECISION, 0.5);
    let quarter = Float::with_val(PRECISION, 0.25);
    let mut ks = Vec::new();
    let mut local = Vec::new();
    for &n in &DESK_LENGTHS {
        let row = pathological_row(n);
        let law = GaussianLaw::scaled(n, &half, &quarter);
        ks.push(
            ks_distance_row(&row, &law)
                .map_err(|e| e.to_string())?
                .to_f64(),
        );
        local.push(
            llt_distance_row(&row, &law)
                .map_err(|e| e.to_string())?
                .0
                .to_f64(),
        );
    }
    ok &= strictly_decreasing(&ks) && local.iter().all(|&d| d > PATHOLOGICAL_LLT_FLOOR);
    detail.push_str(&format!(
        "pathological ks: {}, llt: {}",
        fmt_seq(&ks),
        local
            .iter()
            .map(|d| format!("{d:.4}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    check(ok, detail)
}

fn derivatives() -> Outcome {
    let step = Float::with_val(PRECISION, FD_STEP);
    let mut detail = Vec::new();
    let mut ok = true;
    for k in [2, 3] {
        let (d1, d2) = rho_derivatives(k).map_err(|e| e.to_string())?;
        let (f1, f2) = rho_derivatives_fd(k, &step).map_err(|e| e.to_string())?;
        let e1 = rel(f1.to_f64(), d1.to_f64());
        let e2 = rel(f2.to_f64(), d2.to_f64());
        ok &= e1 < FD_REL_TOL && e2 < FD_REL_TOL;
        detail.push(format!("k={k} rel err rho' {e1:.1e}, rho'' {e2:.1e}"));
    }
    check(ok, detail.join("; "))
}

fn normalization() -> Outcome {
    for k in [2, 3] {
        for n in 0..=200 {
            let t = count_table(k, n).map_err(|e| e.to_string())?;
            if t.by_arcs().iter().any(|c| *c < 0) {
                return Err(format!("negative entry at k={k} n={n}"));
            }
            if n >= 1 {
                let d = distribution(n, k).map_err(|e| e.to_string())?;
                if d.probability_sum() != 1 {
                    return Err(format!(
                        "probabilities at k={k} n={n} sum to {}",
                        d.probability_sum()
                    ));
                }
            }
        }
        for n in 0..=40 {
            for ell in (0..=n).filter(|ell| (n - ell) % 2 == 1) {
                let v = s_count_iso(k, n, ell).map_err(|e| e.to_string())?;
                if v != Integer::ZERO {
                    return Err(format!("S_{k}({n}, l={ell}) = {v} with n - l odd"));
                }
            }
        }
    }
    Ok("k in {2,3}: rows sum to 1 exactly and entries >= 0 for n <= 200; odd n - l vanish for n <= 40".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("limit constants", constants),
        ("growth rate", growth_rate),
        ("oracle equivalence", oracle_equivalence),
        ("functional equation", identity),
        ("closed form vs walks", closed_vs_dp),
        ("asymptotics", asymptotics),
        ("central limit trend", clt),
        ("local limit trend", llt),
        ("derivative checks", derivatives),
        ("normalization and parity", normalization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{:>2}] {name}: {detail} ({secs:.2}s)", i + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
