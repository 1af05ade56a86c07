//! File export: Wavefront OBJ meshes, profile-sample CSV and JSON metadata.
//!
//! Outputs are byte-identical across runs for identical inputs: no
//! timestamps, no randomness, fixed float formatting.

use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::profile::ProfileSolution;
use crate::surface::SurfaceMesh;

/// 17-significant-digit float formatting used in CSV output.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the projected R³ copy of a mesh as `v x y z` lines followed by
/// 1-indexed quad faces `f i j k l`.
pub fn write_obj<W: Write>(mesh: &SurfaceMesh, mut w: W) -> Result<()> {
    for p in &mesh.projected {
        writeln!(w, "v {} {} {}", p[0], p[1], p[2])?;
    }
    for f in &mesh.faces {
        writeln!(w, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
    }
    Ok(())
}

pub fn write_obj_file(mesh: &SurfaceMesh, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_obj(mesh, std::io::BufWriter::new(file))
}

/// Writes `n` profile samples over the domain as CSV with columns t,r,psi,d.
pub fn write_profile_csv<W: Write>(profile: &ProfileSolution, n: usize, mut w: W) -> Result<()> {
    writeln!(w, "t,r,psi,d")?;
    let (lo, hi) = profile.domain();
    for i in 0..n {
        let t = lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64;
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(t),
            fmt_f64(profile.r(t)),
            fmt_f64(profile.psi(t)),
            fmt_f64(profile.d(t))
        )?;
    }
    Ok(())
}

pub fn write_profile_csv_file(profile: &ProfileSolution, n: usize, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_profile_csv(profile, n, std::io::BufWriter::new(file))
}

/// JSON sidecar describing a resolved profile.
#[derive(Debug, serde::Serialize)]
pub struct ProfileMetadata {
    pub regime: String,
    pub roots: (f64, f64),
    pub modulus_p: f64,
    pub scale_xi: f64,
    pub third_kind_k: Option<f64>,
    pub psi_linear: f64,
    pub domain: (f64, f64),
    pub spec: crate::profile::SurfaceSpec,
}

impl ProfileMetadata {
    pub fn from_profile(profile: &ProfileSolution) -> Self {
        Self {
            regime: profile.regime().tag.to_string(),
            roots: profile.roots(),
            modulus_p: profile.modulus().p(),
            scale_xi: profile.scale(),
            third_kind_k: profile.third_kind_k(),
            psi_linear: profile.psi_linear(),
            domain: profile.domain(),
            spec: *profile.spec(),
        }
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("metadata serializes");
        std::fs::write(path, json + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{solve_profile, SurfaceSpec};
    use crate::surface::{sample_mesh, Immersion, Projection};

    #[test]
    fn obj_layout_and_determinism() {
        let spec = SurfaceSpec::cmc_s3(0.0, 0.5).unwrap();
        let im = Immersion::new(solve_profile(&spec).unwrap()).unwrap();
        let mesh = sample_mesh(&im, 8, 5, None, None, Projection::Stereo).unwrap();
        let mut a = Vec::new();
        write_obj(&mesh, &mut a).unwrap();
        let mut b = Vec::new();
        write_obj(&mesh, &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        let v_lines = text.lines().filter(|l| l.starts_with("v ")).count();
        let f_lines = text.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!(v_lines, 40);
        assert_eq!(f_lines, 8 * 4);
        // 1-indexed faces
        for l in text.lines().filter(|l| l.starts_with("f ")) {
            for idx in l.split_whitespace().skip(1) {
                let i: usize = idx.parse().unwrap();
                assert!(i >= 1 && i <= v_lines);
            }
        }
    }

    #[test]
    fn csv_has_pinned_columns_and_17_digits() {
        let spec = SurfaceSpec::cmc_s3(2.0, -0.05).unwrap();
        let profile = solve_profile(&spec).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&profile, 10, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,r,psi,d");
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 4);
        // 16 digits after the decimal point in scientific notation
        let field = row.split(',').next().unwrap();
        let mantissa = field.split('e').next().unwrap();
        assert_eq!(mantissa.split('.').nth(1).unwrap().len(), 16);
        // round trip
        for f in row.split(',') {
            let x: f64 = f.parse().unwrap();
            assert!(x.is_finite());
        }
    }

    #[test]
    fn metadata_sidecar_fields() {
        let spec = SurfaceSpec::cmc_s3(2.0, -0.05).unwrap();
        let profile = solve_profile(&spec).unwrap();
        let meta = ProfileMetadata::from_profile(&profile);
        let json = serde_json::to_string(&meta).unwrap();
        assert!(json.contains("\"regime\":\"delaunay-type\""));
        assert!(json.contains("\"modulus_p\""));
        assert!(json.contains("\"scale_xi\""));
    }
}
