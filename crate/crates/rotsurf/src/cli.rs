//! Command implementations behind the `rotsurf` binary: mesh generation,
//! verification suites and the torus-closure solver.
//!
//! Configuration is accepted both as flags and as a JSON file (`--config`);
//! flags override file values. Exit codes: 0 ok, 1 verification failure,
//! 2 infeasible/invalid spec, 3 I/O failure, 4 no closure root.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::closure::{solve_torus, ClosureProblem, TorusSolution};
use crate::error::{Error, Result};
use crate::export::{write_obj_file, write_profile_csv_file, ProfileMetadata};
use crate::profile::{ProfileSolution, SurfaceClass, SurfaceSpec};
use crate::spaceform::RotationKind;
use crate::surface::{sample_mesh, Immersion, Projection};
use crate::verify::{
    default_grid, verify_curvature, verify_membership, verify_ode, verify_parallel,
    VerificationReport,
};

/// Job description shared by the subcommands. Every field is optional so a
/// JSON config and command-line flags can be merged field by field.
#[derive(Debug, Clone, Default, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub space: Option<String>,
    pub rotation: Option<String>,
    pub cmc: Option<f64>,
    pub chc: Option<f64>,
    #[serde(rename = "C")]
    pub c: Option<f64>,
    pub ntheta: Option<usize>,
    pub nt: Option<usize>,
    pub trange: Option<[f64; 2]>,
    pub thetarange: Option<[f64; 2]>,
    pub out: Option<PathBuf>,
    pub project: Option<String>,
    pub tol: BTreeMap<String, f64>,
    pub perturb_r: Option<f64>,
    pub name: Option<String>,
    /// Torus lobe counts: "5" or a range "5..7" (inclusive).
    pub n: Option<String>,
    pub bracket: Option<[f64; 2]>,
    pub export_meshes: Option<bool>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("bad config {}: {e}", path.display())))
    }

    /// Field-wise merge; values present in `overrides` win.
    pub fn merged_with(mut self, overrides: JobConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if overrides.$f.is_some() { self.$f = overrides.$f; } )* };
        }
        take!(
            space, rotation, cmc, chc, c, ntheta, nt, trange, thetarange, out, project,
            perturb_r, name, n, bracket, export_meshes
        );
        for (k, v) in overrides.tol {
            self.tol.insert(k, v);
        }
        self
    }

    pub fn surface_spec(&self) -> Result<SurfaceSpec> {
        let rotation = match self.rotation.as_deref().unwrap_or("elliptic") {
            "elliptic" => RotationKind::Elliptic,
            "hyperbolic" => RotationKind::Hyperbolic,
            "parabolic" => RotationKind::Parabolic,
            other => return Err(Error::Config(format!("unknown rotation '{other}'"))),
        };
        let class = match (self.cmc, self.chc) {
            (Some(h), None) => SurfaceClass::Cmc { h },
            (None, Some(hbar)) => SurfaceClass::Chc { hbar },
            (None, None) => {
                return Err(Error::Config("one of --cmc or --chc is required".into()))
            }
            (Some(_), Some(_)) => {
                return Err(Error::Config("--cmc and --chc are mutually exclusive".into()))
            }
        };
        let c = self
            .c
            .ok_or_else(|| Error::Config("the integration constant --C is required".into()))?;
        match self.space.as_deref().unwrap_or("s3") {
            "s3" => SurfaceSpec::new(crate::spaceform::SpaceForm::s3(), rotation, class, c),
            "h3" => {
                let sf = if rotation == RotationKind::Parabolic {
                    crate::spaceform::SpaceForm::h3_pseudo_orthonormal()
                } else {
                    crate::spaceform::SpaceForm::h3()
                };
                SurfaceSpec::new(sf, rotation, class, c)
            }
            other => Err(Error::Config(format!("unknown space '{other}' (use s3 or h3)"))),
        }
    }

    fn projection_for(&self, spec: &SurfaceSpec) -> Result<Projection> {
        Ok(match self.project.as_deref() {
            None => Projection::default_for(&spec.space_form),
            Some("stereo") => Projection::Stereo,
            Some("poincare") => Projection::Poincare,
            Some("none") => Projection::None,
            Some(other) => {
                return Err(Error::Config(format!(
                    "unknown projection '{other}' (stereo | poincare | none)"
                )))
            }
        })
    }

    fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("out"))
    }

    fn base_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "surface".into())
    }

    fn resolution(&self) -> (usize, usize) {
        (self.ntheta.unwrap_or(64), self.nt.unwrap_or(64))
    }

    fn profile(&self) -> Result<ProfileSolution> {
        let spec = self.surface_spec()?;
        let profile = ProfileSolution::for_spec(&spec)?;
        Ok(match self.perturb_r {
            Some(eps) => profile.with_radius_offset(eps),
            None => profile,
        })
    }
}

fn range_of(v: Option<[f64; 2]>) -> Option<(f64, f64)> {
    v.map(|[a, b]| (a, b))
}

/// Generates a mesh plus profile CSV and metadata sidecar; returns the paths
/// written.
pub fn cmd_generate(cfg: &JobConfig) -> Result<Vec<PathBuf>> {
    let spec = cfg.surface_spec()?;
    let profile = cfg.profile()?;
    let immersion = Immersion::new(profile.clone())?;
    let (ntheta, nt) = cfg.resolution();
    let mesh = sample_mesh(
        &immersion,
        ntheta,
        nt,
        range_of(cfg.thetarange),
        range_of(cfg.trange),
        cfg.projection_for(&spec)?,
    )?;
    let dir = cfg.out_dir();
    std::fs::create_dir_all(&dir)?;
    let base = cfg.base_name();
    let obj = dir.join(format!("{base}.obj"));
    let csv = dir.join(format!("{base}_profile.csv"));
    let meta = dir.join(format!("{base}.json"));
    write_obj_file(&mesh, &obj)?;
    write_profile_csv_file(&profile, nt.max(64), &csv)?;
    ProfileMetadata::from_profile(&profile).write_file(&meta)?;
    if mesh.clipped {
        eprintln!(
            "note: t-range clipped to the chart extent [{}, {}]",
            mesh.t_range.0, mesh.t_range.1
        );
    }
    Ok(vec![obj, csv, meta])
}

/// Runs the verification suites appropriate to the spec and writes the
/// report; exit 0 iff every check passes.
pub fn cmd_verify(cfg: &JobConfig) -> Result<(VerificationReport, Vec<PathBuf>)> {
    let spec = cfg.surface_spec()?;
    let profile = cfg.profile()?;
    let immersion = Immersion::new(profile.clone())?;

    let mut report = verify_ode(&profile, &default_grid(&profile, 400));
    let (ntheta, nt) = (cfg.ntheta.unwrap_or(24), cfg.nt.unwrap_or(24));
    // verification only needs some window of the boost parameter
    let theta_range = range_of(cfg.thetarange).or_else(|| {
        (spec.rotation == RotationKind::Hyperbolic).then_some((-1.5, 1.5))
    });
    let mesh = sample_mesh(
        &immersion,
        ntheta,
        nt,
        theta_range,
        range_of(cfg.trange),
        cfg.projection_for(&spec)?,
    )?;
    report.merge(verify_membership(&mesh, spec.space_form.kappa));
    report.merge(verify_curvature(&immersion, 20, 1e-4));
    let run_parallel = !spec.space_form.is_sphere()
        && matches!(spec.class, SurfaceClass::Cmc { h } if h < 1.0);
    if run_parallel {
        report.merge(verify_parallel(&immersion, &[0.0, 0.25]));
    }

    // tolerance overrides match checks by name prefix
    for check in &mut report.checks {
        for (key, tol) in &cfg.tol {
            if check.name.starts_with(key.as_str()) {
                check.tolerance = *tol;
                check.passed = check.max_residual <= *tol && check.samples > 0;
            }
        }
    }

    let dir = cfg.out_dir();
    std::fs::create_dir_all(&dir)?;
    let txt = dir.join("report.txt");
    let json = dir.join("report.json");
    std::fs::write(&txt, report.to_string())?;
    std::fs::write(&json, report.to_json() + "\n")?;
    Ok((report, vec![txt, json]))
}

/// Torus-closure run: one row per requested lobe count.
pub struct TorusRun {
    pub rows: Vec<TorusSolution>,
    pub paths: Vec<PathBuf>,
}

fn parse_lobes(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let lo: u32 = a
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad lobe range '{text}'")))?;
        let hi: u32 = b
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad lobe range '{text}'")))?;
        if lo == 0 || hi < lo {
            return Err(Error::Config(format!("bad lobe range '{text}'")));
        }
        Ok((lo..=hi).collect())
    } else {
        let n: u32 = text
            .parse()
            .map_err(|_| Error::Config(format!("bad lobe count '{text}'")))?;
        if n == 0 {
            return Err(Error::Config("lobe count must be positive".into()));
        }
        Ok(vec![n])
    }
}

/// Solves the closure condition for each requested lobe count. Errors with
/// [`Error::NoRoot`] only if every count comes up empty.
pub fn cmd_torus(cfg: &JobConfig) -> Result<TorusRun> {
    let h = cfg
        .cmc
        .ok_or_else(|| Error::Config("torus search needs --cmc H".into()))?;
    let lobes = parse_lobes(
        cfg.n
            .as_deref()
            .ok_or_else(|| Error::Config("torus search needs --n (e.g. 5 or 5..6)".into()))?,
    )?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for n in &lobes {
        let problem = ClosureProblem::new(h, *n, range_of(cfg.bracket))?;
        match solve_torus(&problem) {
            Ok(mut sols) => rows.append(&mut sols),
            Err(Error::NoRoot(msg)) => failures.push((*n, msg)),
            Err(other) => return Err(other),
        }
    }
    if rows.is_empty() {
        return Err(Error::NoRoot(format!(
            "no closure root for H = {h}, n in {lobes:?}"
        )));
    }

    let mut paths = Vec::new();
    if cfg.export_meshes.unwrap_or(false) {
        let dir = cfg.out_dir();
        std::fs::create_dir_all(&dir)?;
        let (ntheta, nt_per_period) = (cfg.ntheta.unwrap_or(64), cfg.nt.unwrap_or(32));
        for sol in &rows {
            let immersion = Immersion::new(sol.profile.clone())?;
            let nt = nt_per_period * sol.n as usize + 1;
            let mesh = sample_mesh(
                &immersion,
                ntheta,
                nt,
                None,
                Some((0.0, sol.n as f64 * sol.period)),
                Projection::Stereo,
            )?;
            let path = dir.join(format!("torus_n{}.obj", sol.n));
            write_obj_file(&mesh, &path)?;
            paths.push(path);
        }
    }
    Ok(TorusRun { rows, paths })
}

/// Maps error classes onto the documented process exit codes.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 3,
        Error::NoRoot(_) => 4,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::feasible_interval;

    #[test]
    fn lobe_parsing() {
        assert_eq!(parse_lobes("5").unwrap(), vec![5]);
        assert_eq!(parse_lobes("5..7").unwrap(), vec![5, 6, 7]);
        assert!(parse_lobes("x").is_err());
        assert!(parse_lobes("0").is_err());
        assert!(parse_lobes("7..5").is_err());
    }

    #[test]
    fn config_merge_precedence() {
        let file: JobConfig = serde_json::from_str(
            r#"{"space": "s3", "cmc": 2.0, "C": -0.05, "ntheta": 16}"#,
        )
        .unwrap();
        let flags = JobConfig { c: Some(0.3), ..Default::default() };
        let merged = file.merged_with(flags);
        assert_eq!(merged.c, Some(0.3));
        assert_eq!(merged.ntheta, Some(16));
        assert_eq!(merged.cmc, Some(2.0));
    }

    #[test]
    fn spec_resolution_errors() {
        let cfg = JobConfig {
            space: Some("s3".into()),
            rotation: Some("parabolic".into()),
            cmc: Some(2.0),
            c: Some(1.0),
            ..Default::default()
        };
        assert!(cfg.surface_spec().is_err());
        let cfg = JobConfig { cmc: Some(2.0), ..Default::default() };
        assert!(cfg.surface_spec().is_err(), "missing C must error");
    }

    #[test]
    fn feasibility_report_in_generate() {
        let cfg = JobConfig {
            space: Some("s3".into()),
            cmc: Some(2.0),
            c: Some(3.0),
            out: Some(std::env::temp_dir().join("rotsurf-test-gen")),
            ..Default::default()
        };
        match cmd_generate(&cfg) {
            Err(Error::Infeasible { feasible, .. }) => {
                let spec = cfg.surface_spec().unwrap();
                assert_eq!(feasible, feasible_interval(&spec).to_string());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }
}
