//! Window scans: oracle minimum of a quotient, Korn-type constants and the
//! gaps between equivalent quotients.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pencil::{
    assemble_pencil, min_rayleigh, pencil_extremes, quad, DenominatorKind, FormKind,
    ModeOperators, RadialDiscretization,
};
use super::OracleError;
use crate::critical_load::CriticalLoadProblem;
use crate::material::IsotropicElasticity;
use crate::spectral_reduction::{ShellGeometry, WaveNumbers};

/// Wave numbers `1 <= m <= m_max`, `0 <= n <= n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeWindow {
    pub m_max: u32,
    pub n_max: u32,
}

impl ModeWindow {
    pub fn new(m_max: u32, n_max: u32) -> Result<Self, OracleError> {
        if m_max == 0 {
            return Err(OracleError::EmptyWindow);
        }
        Ok(Self { m_max, n_max })
    }

    /// The critical-load sweep window for the same shell.
    pub fn koiter(geom: ShellGeometry, elastic: IsotropicElasticity, margin: f64) -> Self {
        let problem = CriticalLoadProblem { geom, elastic, margin };
        let (m_max, n_max) = problem.window();
        Self { m_max, n_max }
    }

    /// Modes ordered by `m`, then `n`.
    pub fn modes(&self, length: f64) -> Vec<WaveNumbers> {
        (1..=self.m_max)
            .flat_map(|m| (0..=self.n_max).map(move |n| (m, n)))
            .map(|(m, n)| WaveNumbers::new(m, n, length).expect("m >= 1"))
            .collect()
    }
}

/// Oracle minimum of one quotient over a window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSweep {
    pub h: f64,
    pub value: f64,
    pub m: u32,
    pub n: u32,
    #[serde(skip)]
    pub per_mode: Vec<(WaveNumbers, f64)>,
}

pub fn oracle_sweep(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    window: &ModeWindow,
    denominator: DenominatorKind,
    disc: &RadialDiscretization,
) -> Result<OracleSweep, OracleError> {
    let modes = window.modes(geom.length());
    let per_mode: Result<Vec<(WaveNumbers, f64)>, OracleError> = modes
        .par_iter()
        .map(|&wn| {
            let p = assemble_pencil(geom, elastic, wn, denominator, disc)?;
            Ok((wn, min_rayleigh(&p)?))
        })
        .collect();
    let per_mode = per_mode?;
    let (wn, value) = per_mode
        .iter()
        .copied()
        .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
        .ok_or(OracleError::EmptyWindow)?;
    Ok(OracleSweep {
        h: geom.h(),
        value,
        m: wn.m,
        n: wn.n,
        per_mode,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KornKind {
    /// `min ||e||^2 / ||grad phi||^2` over the window: an upper bound for the
    /// Korn constant of the full space.
    Korn,
    /// `max ||phi_{theta,z}||^2 / ||e||^2`.
    ThetaAxial,
    /// `max ||phi_{r,z}||^2 / ||e||^2`.
    RadialAxial,
    /// `max ||grad phi||^2 / ((||phi_r|| / h + ||e||) ||e||)` over the
    /// extremal fields of the three pencils above.
    Weighted,
}

impl KornKind {
    pub const ALL: [KornKind; 4] = [
        KornKind::Korn,
        KornKind::ThetaAxial,
        KornKind::RadialAxial,
        KornKind::Weighted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KornKind::Korn => "korn",
            KornKind::ThetaAxial => "theta_axial",
            KornKind::RadialAxial => "radial_axial",
            KornKind::Weighted => "weighted",
        }
    }

    /// Power of `h` the constant follows.
    pub fn expected_slope(self) -> f64 {
        match self {
            KornKind::Korn => 1.5,
            KornKind::ThetaAxial => -0.5,
            KornKind::RadialAxial => -1.0,
            KornKind::Weighted => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KornEstimate {
    pub h: f64,
    pub kind: KornKind,
    pub value: f64,
    /// Mode attaining the extremum.
    pub m: u32,
    pub n: u32,
}

/// Per-mode values for all four kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ModeKorn {
    wn: WaveNumbers,
    korn: f64,
    theta_axial: f64,
    radial_axial: f64,
    weighted: f64,
}

fn mode_korn(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    wn: WaveNumbers,
    disc: &RadialDiscretization,
) -> Result<ModeKorn, OracleError> {
    let ops = ModeOperators::assemble(geom, elastic, wn, disc);
    let degenerate = OracleError::AssemblyDegenerate { m: wn.m, n: wn.n };
    let strain = ops.form(FormKind::StrainNorm);
    let grad = pencil_extremes(&strain, &ops.form(FormKind::GradNorm)).ok_or(degenerate.clone())?;
    let tz = pencil_extremes(&strain, &ops.form(FormKind::ThetaAxial)).ok_or(degenerate.clone())?;
    let rz = pencil_extremes(&strain, &ops.form(FormKind::RadialAxial)).ok_or(degenerate)?;

    let h = geom.h();
    let weighted = [&grad.x_max, &tz.x_max, &rz.x_max]
        .into_iter()
        .map(|x| {
            let g = ops.value(FormKind::GradNorm, x);
            let e = ops.value(FormKind::StrainNorm, x).sqrt();
            let r = ops.value(FormKind::RadialMass, x).sqrt();
            g / ((r / h + e) * e)
        })
        .fold(0.0, f64::max);
    Ok(ModeKorn {
        wn,
        korn: 1.0 / grad.mu_max,
        theta_axial: tz.mu_max.max(0.0),
        radial_axial: rz.mu_max,
        weighted,
    })
}

/// Korn-type constants aggregated over a window: minimum for
/// [`KornKind::Korn`], maximum for the other kinds.
pub fn korn_mode_scan(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    disc: &RadialDiscretization,
    window: &ModeWindow,
) -> Result<Vec<KornEstimate>, OracleError> {
    let modes = window.modes(geom.length());
    let per_mode: Result<Vec<ModeKorn>, OracleError> = modes
        .par_iter()
        .map(|&wn| mode_korn(geom, elastic, wn, disc))
        .collect();
    let per_mode = per_mode?;
    if per_mode.is_empty() {
        return Err(OracleError::EmptyWindow);
    }
    let h = geom.h();
    let pick = |kind: KornKind, get: fn(&ModeKorn) -> f64, minimize: bool| {
        let best = per_mode
            .iter()
            .reduce(|a, b| {
                let (va, vb) = (get(a), get(b));
                let take_b = if minimize { vb < va } else { vb > va };
                if take_b {
                    b
                } else {
                    a
                }
            })
            .expect("nonempty");
        KornEstimate {
            h,
            kind,
            value: get(best),
            m: best.wn.m,
            n: best.wn.n,
        }
    };
    Ok(vec![
        pick(KornKind::Korn, |k| k.korn, true),
        pick(KornKind::ThetaAxial, |k| k.theta_axial, false),
        pick(KornKind::RadialAxial, |k| k.radial_axial, false),
        pick(KornKind::Weighted, |k| k.weighted, false),
    ])
}

/// Worst-case gaps between reciprocal quotients on one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceGap {
    pub m: u32,
    pub n: u32,
    pub m_hat: f64,
    /// `sup (1/R - 1/R1)`, the extra compression terms over the stiffness.
    pub full_vs_r1: f64,
    /// `inf (1/R - 1/R1)`; never negative.
    pub full_vs_r1_min: f64,
    /// `sup |1/R1 - 1/R2|`.
    pub r1_vs_r2: f64,
}

pub fn equivalence_gap(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    wn: WaveNumbers,
    disc: &RadialDiscretization,
) -> Result<EquivalenceGap, OracleError> {
    let ops = ModeOperators::assemble(geom, elastic, wn, disc);
    let degenerate = OracleError::AssemblyDegenerate { m: wn.m, n: wn.n };
    let a = ops.form(FormKind::Energy);
    let extra = ops.form(FormKind::ThetaAxial) + ops.form(FormKind::AxialAxial);
    let diff = ops.form(FormKind::RadialAxial) - ops.form(FormKind::RadialAxialMid);
    let e1 = pencil_extremes(&a, &extra).ok_or(degenerate.clone())?;
    let e2 = pencil_extremes(&a, &diff).ok_or(degenerate)?;
    // the sign of a vector's gap is checked on the returned extremal field
    debug_assert!(quad(&extra, &e1.x_min) >= -1e-12 * extra.amax());
    Ok(EquivalenceGap {
        m: wn.m,
        n: wn.n,
        m_hat: wn.m_hat,
        full_vs_r1: e1.mu_max,
        full_vs_r1_min: e1.mu_min,
        r1_vs_r2: e2.mu_max.abs().max(e2.mu_min.abs()),
    })
}

/// Window aggregate of [`equivalence_gap`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceScan {
    pub h: f64,
    pub lambda_star: f64,
    pub sup_full_vs_r1: f64,
    pub inf_full_vs_r1: f64,
    pub sup_r1_vs_r2: f64,
    /// `max sup|1/R1 - 1/R2| / (m_hat sqrt(h))` over the window.
    pub r2_constant: f64,
    #[serde(skip)]
    pub per_mode: Vec<EquivalenceGap>,
}

pub fn equivalence_scan(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    window: &ModeWindow,
    disc: &RadialDiscretization,
) -> Result<EquivalenceScan, OracleError> {
    let modes = window.modes(geom.length());
    let per_mode: Result<Vec<EquivalenceGap>, OracleError> = modes
        .par_iter()
        .map(|&wn| equivalence_gap(geom, elastic, wn, disc))
        .collect();
    let per_mode = per_mode?;
    if per_mode.is_empty() {
        return Err(OracleError::EmptyWindow);
    }
    let sh = geom.h().sqrt();
    let fold = |f: &dyn Fn(&EquivalenceGap) -> f64, init: f64, op: fn(f64, f64) -> f64| {
        per_mode.iter().map(f).fold(init, op)
    };
    Ok(EquivalenceScan {
        h: geom.h(),
        lambda_star: crate::critical_load::lambda_star_closed(geom.h(), elastic.poisson()),
        sup_full_vs_r1: fold(&|g| g.full_vs_r1, f64::NEG_INFINITY, f64::max),
        inf_full_vs_r1: fold(&|g| g.full_vs_r1_min, f64::INFINITY, f64::min),
        sup_r1_vs_r2: fold(&|g| g.r1_vs_r2, f64::NEG_INFINITY, f64::max),
        r2_constant: fold(&|g| g.r1_vs_r2 / (g.m_hat * sh), f64::NEG_INFINITY, f64::max),
        per_mode,
    })
}
