//! Text writers for sweep tables, Korn tables and sampled mode fields.
//!
//! Floats use Rust's shortest round-trip formatting so reruns are
//! byte-identical.

use std::io::{self, Write};

use serde::Serialize;

use crate::critical_load::BucklingResult;
use crate::modes::DisplacementField;
use crate::oracle::KornKind;

pub const SWEEP_HEADER: &str =
    "h,m,n,m_hat,lambda3_tilde,lambda3_full,lambda_star,ratio,a_theta,a_z";
pub const KORN_HEADER: &str = "h,kind,value,fitted_slope";
pub const FIELD_CSV_HEADER: &str = "r,theta,z,phi_r,phi_theta,phi_z";

pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[BucklingResult]) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.h,
            r.m,
            r.n,
            r.m_hat,
            r.lambda,
            r.lambda_full,
            r.lambda_star,
            r.ratio(),
            r.a_theta,
            r.a_z
        )?;
    }
    Ok(())
}

/// One line of `korn.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KornRow {
    pub h: f64,
    pub kind: String,
    pub value: f64,
    pub fitted_slope: f64,
}

impl KornRow {
    pub fn new(h: f64, kind: KornKind, value: f64, fitted_slope: f64) -> Self {
        Self {
            h,
            kind: kind.name().to_string(),
            value,
            fitted_slope,
        }
    }
}

pub fn write_korn_csv<W: Write>(mut w: W, rows: &[KornRow]) -> io::Result<()> {
    writeln!(w, "{KORN_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{}", r.h, r.kind, r.value, r.fitted_slope)?;
    }
    Ok(())
}

pub fn write_field_csv<W: Write>(mut w: W, field: &DisplacementField) -> io::Result<()> {
    writeln!(w, "{FIELD_CSV_HEADER}")?;
    for (iz, z) in field.z.iter().enumerate() {
        for (it, t) in field.theta.iter().enumerate() {
            for (ir, r) in field.r.iter().enumerate() {
                let k = field.index(ir, it, iz);
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    r, t, z, field.phi_r[k], field.phi_theta[k], field.phi_z[k]
                )?;
            }
        }
    }
    Ok(())
}

/// Legacy VTK structured grid: Cartesian points and the three cylindrical
/// displacement components as point scalars.
pub fn write_field_vtk<W: Write>(mut w: W, field: &DisplacementField) -> io::Result<()> {
    let s = &field.spec;
    let (nr, nt, nz) = (field.r.len(), field.theta.len(), field.z.len());
    let npts = nr * nt * nz;
    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(
        w,
        "cylindrical shell buckling mode h={} nu={} alpha={} m={} n={}",
        s.geom.h(),
        s.elastic.poisson(),
        s.alpha,
        s.m,
        s.n
    )?;
    writeln!(w, "ASCII")?;
    writeln!(w, "DATASET STRUCTURED_GRID")?;
    writeln!(w, "DIMENSIONS {nr} {nt} {nz}")?;
    writeln!(w, "POINTS {npts} double")?;
    for z in &field.z {
        for t in &field.theta {
            let (st, ct) = t.sin_cos();
            for r in &field.r {
                writeln!(w, "{} {} {}", r * ct, r * st, z)?;
            }
        }
    }
    writeln!(w, "POINT_DATA {npts}")?;
    for (name, data) in [
        ("phi_r", &field.phi_r),
        ("phi_theta", &field.phi_theta),
        ("phi_z", &field.phi_z),
    ] {
        writeln!(w, "SCALARS {name} double 1")?;
        writeln!(w, "LOOKUP_TABLE default")?;
        for v in data.iter() {
            writeln!(w, "{v}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::IsotropicElasticity;
    use crate::modes::{synthesize_on, BucklingModeSpec, GridSpec};
    use crate::spectral_reduction::ShellGeometry;
    use std::f64::consts::PI;

    fn field() -> DisplacementField {
        let spec = BucklingModeSpec::new(
            ShellGeometry::new(0.01, PI).unwrap(),
            IsotropicElasticity::normalized(0.3).unwrap(),
            0.5,
        )
        .unwrap();
        synthesize_on(&spec, &GridSpec { nr: 2, ntheta: 5, nz: 3 }).unwrap()
    }

    #[test]
    fn vtk_layout() {
        let mut buf = Vec::new();
        write_field_vtk(&mut buf, &field()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# vtk DataFile Version 3.0");
        assert_eq!(lines[4], "DIMENSIONS 2 5 3");
        assert_eq!(lines[5], "POINTS 30 double");
        // header, points, point-data line, three scalar blocks of 2 + 30 lines
        assert_eq!(lines.len(), 6 + 30 + 1 + 3 * 32);
        assert!(text.contains("SCALARS phi_theta double 1"));
    }

    #[test]
    fn csv_rows_parse_back() {
        let f = field();
        let mut buf = Vec::new();
        write_field_csv(&mut buf, &f).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(FIELD_CSV_HEADER));
        let rows: Vec<Vec<f64>> = lines
            .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), f.len());
        let k = f.index(1, 2, 1);
        assert_eq!(rows[k][0], f.r[1]);
        assert_eq!(rows[k][3], f.phi_r[k]);
        assert_eq!(rows[k][5], f.phi_z[k]);
    }

    #[test]
    fn korn_table() {
        let mut buf = Vec::new();
        write_korn_csv(&mut buf, &[KornRow::new(0.01, KornKind::RadialAxial, 12.5, -1.0)]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "h,kind,value,fitted_slope\n0.01,radial_axial,12.5,-1\n");
    }
}
