use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use cylbuckle_core::acceptance::{run_all, seed_from_env, AcceptanceConfig};
use cylbuckle_core::critical_load::{koiter_circle, lambda3_tilde, sweep, BucklingResult};
use cylbuckle_core::export::{
    write_field_csv, write_field_vtk, write_korn_csv, write_sweep_csv, KornRow,
};
use cylbuckle_core::modes::{quotient_ratio, synthesize, BucklingModeSpec, QuotientReport};
use cylbuckle_core::oracle::{
    ansatz_ratios, equivalence_scan, korn_mode_scan, AnsatzOptions, BumpProfile, KornEstimate,
    KornKind, ModeWindow,
};
use cylbuckle_core::quadrature::loglog_slope;

use crate::config::{FieldFormat, RunConfig};
use crate::error::{CliError, NumericalContext};

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>, CliError> {
    fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn write_json<T: Serialize + ?Sized>(dir: &Path, name: &str, value: &T) -> Result<String, CliError> {
    let text = serde_json::to_string_pretty(value).expect("results serialize") + "\n";
    let mut w = create(dir, name)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(text)
}

fn finish(mut w: BufWriter<File>) -> Result<(), CliError> {
    w.flush()?;
    Ok(())
}

fn slope_of(cfg: &RunConfig, ys: &[f64]) -> f64 {
    if cfg.h_list.len() < 2 {
        f64::NAN
    } else {
        loglog_slope(&cfg.h_list, ys)
    }
}

fn buckling_results(cfg: &RunConfig) -> Result<Vec<BucklingResult>, CliError> {
    cfg.h_list
        .iter()
        .map(|&h| sweep(&cfg.problem(h)?).numerical("CriticalLoadError"))
        .collect()
}

#[derive(Serialize)]
struct CriticalLoadReport {
    #[serde(flatten)]
    result: BucklingResult,
    ratio: f64,
}

pub fn critical_load(cfg: &RunConfig) -> Result<(), CliError> {
    let reports: Vec<CriticalLoadReport> = buckling_results(cfg)?
        .into_iter()
        .map(|result| CriticalLoadReport {
            ratio: result.ratio(),
            result,
        })
        .collect();
    let text = if reports.len() == 1 {
        write_json(&cfg.out, "critical_load.json", &reports[0])?
    } else {
        write_json(&cfg.out, "critical_load.json", &reports)?
    };
    print!("{text}");
    Ok(())
}

pub fn sweep_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let rows = buckling_results(cfg)?;
    let mut w = create(&cfg.out, "sweep.csv")?;
    write_sweep_csv(&mut w, &rows)?;
    finish(w)?;
    println!("{:>10} {:>5} {:>5} {:>14} {:>14} {:>10}", "h", "m", "n", "lambda", "lambda_star", "ratio");
    for r in &rows {
        println!(
            "{:>10} {:>5} {:>5} {:>14.6e} {:>14.6e} {:>10.6}",
            r.h, r.m, r.n, r.lambda, r.lambda_star, r.ratio()
        );
    }
    println!("wrote {}", cfg.out.join("sweep.csv").display());
    Ok(())
}

pub fn koiter(cfg: &RunConfig) -> Result<(), CliError> {
    let mut w = create(&cfg.out, "koiter.csv")?;
    writeln!(w, "h,m,n,m_hat,residual,lambda3_tilde")?;
    for &h in &cfg.h_list {
        let pr = cfg.problem(h)?;
        let points = koiter_circle(&pr, cfg.koiter_tol).numerical("CriticalLoadError")?;
        for p in &points {
            let v = lambda3_tilde(&pr, &p.wn).numerical("CriticalLoadError")?;
            writeln!(w, "{},{},{},{},{},{}", h, p.wn.m, p.wn.n, p.wn.m_hat, p.residual, v.value)?;
        }
        println!("h={h}: {} integer pairs within {} R of the circle", points.len(), cfg.koiter_tol);
    }
    finish(w)?;
    println!("wrote {}", cfg.out.join("koiter.csv").display());
    Ok(())
}

pub fn korn(cfg: &RunConfig) -> Result<(), CliError> {
    let disc = cfg.discretization()?;
    let mut estimates: Vec<KornEstimate> = Vec::new();
    for &h in &cfg.h_list {
        let pr = cfg.problem(h)?;
        let window = ModeWindow::koiter(pr.geom, pr.elastic, cfg.margin);
        estimates.extend(korn_mode_scan(&pr.geom, &pr.elastic, &disc, &window).numerical("OracleError")?);
    }
    let mut rows = Vec::new();
    for kind in KornKind::ALL {
        let of_kind: Vec<&KornEstimate> = estimates.iter().filter(|e| e.kind == kind).collect();
        let values: Vec<f64> = of_kind.iter().map(|e| e.value).collect();
        let slope = slope_of(cfg, &values);
        println!("{:>13}: slope {slope:.4} (expected {})", kind.name(), kind.expected_slope());
        rows.extend(of_kind.iter().map(|e| KornRow::new(e.h, kind, e.value, slope)));
    }
    let mut w = create(&cfg.out, "korn.csv")?;
    write_korn_csv(&mut w, &rows)?;
    finish(w)?;
    write_json(&cfg.out, "korn.json", &estimates)?;
    println!("wrote {}", cfg.out.join("korn.csv").display());
    Ok(())
}

pub fn ansatz(cfg: &RunConfig) -> Result<(), CliError> {
    let profile = BumpProfile::new(cfg.length);
    let opts = AnsatzOptions::default();
    let mut w = create(&cfg.out, "ansatz.csv")?;
    writeln!(w, "h,korn,theta_axial,radial_axial")?;
    let mut cols: [Vec<f64>; 3] = Default::default();
    for &h in &cfg.h_list {
        let r = ansatz_ratios(&cfg.geometry(h)?, &profile, &opts).numerical("OracleError")?;
        writeln!(w, "{},{},{},{}", r.h, r.korn, r.theta_axial, r.radial_axial)?;
        cols[0].push(r.korn);
        cols[1].push(r.theta_axial);
        cols[2].push(r.radial_axial);
    }
    finish(w)?;
    for (name, c) in ["korn", "theta_axial", "radial_axial"].iter().zip(&cols) {
        println!("{name:>13}: slope {:.4}", slope_of(cfg, c));
    }
    println!("wrote {}", cfg.out.join("ansatz.csv").display());
    Ok(())
}

pub fn equivalence(cfg: &RunConfig) -> Result<(), CliError> {
    let disc = cfg.discretization()?;
    let mut w = create(&cfg.out, "equivalence.csv")?;
    writeln!(w, "h,lambda_star,sup_full_vs_r1,inf_full_vs_r1,sup_r1_vs_r2,r2_constant")?;
    let mut scaled = Vec::new();
    for &h in &cfg.h_list {
        let pr = cfg.problem(h)?;
        let window = ModeWindow::koiter(pr.geom, pr.elastic, cfg.margin);
        let s = equivalence_scan(&pr.geom, &pr.elastic, &window, &disc).numerical("OracleError")?;
        writeln!(
            w,
            "{},{},{},{},{},{}",
            s.h, s.lambda_star, s.sup_full_vs_r1, s.inf_full_vs_r1, s.sup_r1_vs_r2, s.r2_constant
        )?;
        scaled.push(s.lambda_star * s.sup_full_vs_r1);
    }
    finish(w)?;
    println!("slope of lambda* sup|1/R - 1/R1|: {:.4}", slope_of(cfg, &scaled));
    println!("wrote {}", cfg.out.join("equivalence.csv").display());
    Ok(())
}

fn field_path(cfg: &RunConfig, h: f64) -> PathBuf {
    cfg.out
        .join(format!("mode_h{h}_alpha{}.{}", cfg.alpha, cfg.format.extension()))
}

pub fn mode(cfg: &RunConfig) -> Result<(), CliError> {
    let mut reports: Vec<QuotientReport> = Vec::new();
    for &h in &cfg.h_list {
        let pr = cfg.problem(h)?;
        let spec = BucklingModeSpec::with_margin(pr.geom, pr.elastic, cfg.alpha, cfg.margin)
            .numerical("ModesError")?;
        let field = synthesize(&spec);
        let path = field_path(cfg, h);
        fs::create_dir_all(&cfg.out)?;
        let mut w = BufWriter::new(File::create(&path)?);
        match cfg.format {
            FieldFormat::Vtk => write_field_vtk(&mut w, &field)?,
            FieldFormat::Csv => write_field_csv(&mut w, &field)?,
        }
        finish(w)?;
        let q = quotient_ratio(&spec);
        println!(
            "h={h}: (m, n) = ({}, {}), quotient ratio {:.6}, wrote {}",
            q.m,
            q.n,
            q.ratio,
            path.display()
        );
        reports.push(q);
    }
    write_json(&cfg.out, "mode.json", &reports)?;
    Ok(())
}

pub fn verify(cfg: &RunConfig) -> Result<(), CliError> {
    let acfg = AcceptanceConfig {
        nu: cfg.nu,
        length: cfg.length,
        seed: seed_from_env(),
        degree: cfg.degree,
        margin: cfg.margin,
    };
    let mut out = io::stdout().lock();
    writeln!(out, "seed = {}", acfg.seed)?;
    let outcomes = run_all(&acfg);
    for o in &outcomes {
        writeln!(out, "{o}")?;
    }
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed())
        .map(|o| o.id.to_string())
        .collect();
    writeln!(out, "{}/{} criteria passed", outcomes.len() - failed.len(), outcomes.len())?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical {
            name: "AcceptanceFailure".into(),
            message: format!("criteria {} failed", failed.join(", ")),
        })
    }
}
