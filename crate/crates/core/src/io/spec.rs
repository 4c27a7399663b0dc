//! Surface specs and run configuration, both TOML files with flat sections.
//!
//! A spec has a `[surface]` section naming its `kind` and parameters and an
//! optional `[grid]` section with `nu`, `nv`:
//!
//! ```toml
//! [surface]
//! kind = "rotational-ode"
//! alpha = 1.0
//! beta = 2.0
//! f0 = 1.0
//! g0 = 0.5
//! theta0 = 0.5
//!
//! [grid]
//! nv = 128
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use thiserror::Error;
use toml::{Table, Value};

use super::table::{read_invariant_field, read_invariant_profile, Table as CsvTable};
use super::IoError;
use crate::catalog;
use crate::grid::{Grid1, Grid2, ScalarField, ScalarProfile};
use crate::rotational::{
    self, GeneratingCurve, MeridianProfile, MinimalProfile, ProfileForm, RotationalError,
};
use crate::surface::{Domain, ParametricSurface};
use crate::tol::{TolError, Tolerances};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Rotational(#[from] RotationalError),
    #[error(transparent)]
    Tolerance(#[from] TolError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecKind {
    Builtin,
    RotationalProfile,
    RotationalOde,
    InvariantField,
    InvariantProfile,
}

impl SpecKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "builtin" => SpecKind::Builtin,
            "rotational-profile" => SpecKind::RotationalProfile,
            "rotational-ode" => SpecKind::RotationalOde,
            "invariant-field" => SpecKind::InvariantField,
            "invariant-profile" => SpecKind::InvariantProfile,
            _ => return None,
        })
    }

    fn keys(self) -> &'static [&'static str] {
        const DOMAIN: [&str; 4] = ["u_min", "u_max", "v_min", "v_max"];
        match self {
            SpecKind::Builtin => &["name", "c", "alpha", "beta", DOMAIN[0], DOMAIN[1], DOMAIN[2], DOMAIN[3]],
            SpecKind::RotationalOde => &["alpha", "beta", "f0", "g0", "theta0", "length", "h_u", "v_max"],
            SpecKind::RotationalProfile => &["file", "alpha", "beta", "a", "b", "v_max"],
            SpecKind::InvariantField => &["file"],
            SpecKind::InvariantProfile => &["file", "v_extent", "v_nodes"],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    pub kind: SpecKind,
    pub params: BTreeMap<String, Value>,
    pub grid: Option<(usize, usize)>,
    /// Relative file paths resolve against this directory.
    pub base_dir: PathBuf,
    pub source: String,
}

fn sections(text: &str, source: &str) -> Result<Table, IoError> {
    text.parse::<Table>().map_err(|e| IoError::parse(source, e.message().to_string()))
}

fn section<'a>(t: &'a Table, name: &str, source: &str) -> Result<Option<&'a Table>, IoError> {
    match t.get(name) {
        None => Ok(None),
        Some(Value::Table(s)) => Ok(Some(s)),
        Some(_) => Err(IoError::parse(source, format!("`{name}` must be a section"))),
    }
}

fn as_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Float(x) => Some(*x),
        Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

fn grid_size(s: &Table, source: &str) -> Result<Option<(usize, usize)>, IoError> {
    let get = |k: &str| -> Result<Option<usize>, IoError> {
        match s.get(k) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= 2 => Ok(Some(*i as usize)),
            Some(_) => Err(IoError::parse(source, format!("grid.{k} must be an integer ≥ 2"))),
        }
    };
    if let Some(k) = s.keys().find(|k| *k != "nu" && *k != "nv") {
        return Err(IoError::parse(source, format!("unknown key grid.{k}")));
    }
    Ok(match (get("nu")?, get("nv")?) {
        (None, None) => None,
        (a, b) => Some((a.unwrap_or(0), b.unwrap_or(0))),
    })
}

impl SurfaceSpec {
    pub fn parse(text: &str, base_dir: &Path, source: &str) -> Result<Self, IoError> {
        let t = sections(text, source)?;
        if let Some(k) = t.keys().find(|k| *k != "surface" && *k != "grid") {
            return Err(IoError::parse(source, format!("unknown section `{k}`")));
        }
        let s = section(&t, "surface", source)?.ok_or_else(|| IoError::parse(source, "missing [surface] section"))?;
        let kind = match s.get("kind") {
            Some(Value::String(k)) => SpecKind::parse(k).ok_or_else(|| IoError::parse(source, format!("unknown kind `{k}`")))?,
            _ => return Err(IoError::parse(source, "surface.kind must be a string")),
        };
        let mut params = BTreeMap::new();
        for (k, v) in s {
            if k == "kind" {
                continue;
            }
            if !kind.keys().contains(&k.as_str()) {
                return Err(IoError::parse(source, format!("unknown key surface.{k}")));
            }
            params.insert(k.clone(), v.clone());
        }
        let grid = match section(&t, "grid", source)? {
            Some(g) => grid_size(g, source)?,
            None => None,
        };
        Ok(SurfaceSpec { kind, params, grid, base_dir: base_dir.to_path_buf(), source: source.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        let text = std::fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        SurfaceSpec::parse(&text, &dir, &path.display().to_string())
    }

    /// `builtin:NAME` shorthand or a spec file path.
    pub fn from_arg(arg: &str) -> Result<Self, IoError> {
        match arg.strip_prefix("builtin:") {
            Some(name) => {
                let mut params = BTreeMap::new();
                params.insert("name".to_string(), Value::String(name.to_string()));
                Ok(SurfaceSpec { kind: SpecKind::Builtin, params, grid: None, base_dir: PathBuf::new(), source: arg.to_string() })
            }
            None => SurfaceSpec::load(Path::new(arg)),
        }
    }

    fn num(&self, key: &str) -> Result<Option<f64>, IoError> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => as_f64(v)
                .filter(|x| x.is_finite())
                .map(Some)
                .ok_or_else(|| IoError::parse(&self.source, format!("surface.{key} must be a finite number"))),
        }
    }

    fn req(&self, key: &str) -> Result<f64, IoError> {
        self.num(key)?.ok_or_else(|| IoError::parse(&self.source, format!("missing surface.{key}")))
    }

    fn text(&self, key: &str) -> Result<String, IoError> {
        match self.params.get(key) {
            Some(Value::String(s)) => Ok(s.clone()),
            _ => Err(IoError::parse(&self.source, format!("surface.{key} must be a string"))),
        }
    }

    fn file(&self) -> Result<PathBuf, IoError> {
        let f = PathBuf::from(self.text("file")?);
        Ok(if f.is_absolute() { f } else { self.base_dir.join(f) })
    }
}

/// Rotational data kept alongside a chart of the family.
#[derive(Debug, Clone)]
pub struct RotationalInfo {
    pub alpha: f64,
    pub beta: f64,
    pub profile: MeridianProfile,
    pub minimal: Option<MinimalProfile>,
}

/// What a spec describes once built.
#[derive(Debug, Clone)]
pub enum Input {
    Chart { surface: ParametricSurface, grid: Grid2, rotational: Option<RotationalInfo> },
    Field { mu: ScalarField, nu: ScalarField },
    Profile { mu: ScalarProfile, nu: ScalarProfile, v_extent: f64, v_nodes: usize },
}

fn pick(over: Option<(usize, usize)>, spec: Option<(usize, usize)>, default: (usize, usize)) -> (usize, usize) {
    let choose = |a: usize, b: usize, d: usize| if a >= 2 { a } else if b >= 2 { b } else { d };
    let (o, s) = (over.unwrap_or((0, 0)), spec.unwrap_or((0, 0)));
    (choose(o.0, s.0, default.0), choose(o.1, s.1, default.1))
}

fn bad(source: &str, msg: impl Into<String>) -> SpecError {
    SpecError::Io(IoError::parse(source, msg))
}

/// Builds the chart, field or profile; `grid` overrides the spec's grid.
pub fn build(spec: &SurfaceSpec, grid: Option<(usize, usize)>) -> Result<Input, SpecError> {
    let src = spec.source.as_str();
    match spec.kind {
        SpecKind::Builtin => {
            let name = spec.text("name")?;
            let mut params = BTreeMap::new();
            for k in ["c", "alpha", "beta", "u_min", "u_max", "v_min", "v_max"] {
                if let Some(x) = spec.num(k)? {
                    params.insert(k.to_string(), x);
                }
            }
            let surface = catalog::builtin(&name, &params).ok_or_else(|| bad(src, format!("unknown builtin `{name}`")))?;
            let default = if name.starts_with("rotational") { (201, 128) } else { (101, 101) };
            let (nu, nv) = pick(grid, spec.grid, default);
            let g = surface.domain.grid(nu, nv);
            Ok(Input::Chart { surface, grid: g, rotational: None })
        }
        SpecKind::RotationalOde => {
            let (alpha, beta) = (spec.req("alpha")?, spec.req("beta")?);
            let length = spec.num("length")?.unwrap_or(1.0);
            let (nu, nv) = pick(grid, spec.grid, (201, 128));
            let h_u = match (grid.map(|g| g.0).filter(|n| *n >= 2), spec.num("h_u")?) {
                (Some(n), _) => length / (n - 1) as f64,
                (None, Some(h)) => h,
                (None, None) => length / (nu - 1) as f64,
            };
            if !(alpha > 0.0 && beta > 0.0 && length > 0.0 && h_u > 0.0) {
                return Err(bad(src, "alpha, beta, length and h_u must be positive"));
            }
            let mp = rotational::solve_minimal_profile(alpha, beta, spec.req("f0")?, spec.req("g0")?, spec.req("theta0")?, length, h_u)?;
            let surface = rotational::surface_from_profile(&mp.profile, alpha, beta)?;
            let v_max = spec.num("v_max")?.unwrap_or(std::f64::consts::TAU);
            let g = Grid2::spanning(0.0, mp.profile.grid.u_max(), mp.profile.grid.n, 0.0, v_max, nv)
                .map_err(|e| bad(src, e.to_string()))?;
            let surface = surface.with_domain(Domain::new(0.0, g.u_max(), 0.0, v_max).map_err(|e| bad(src, e.to_string()))?);
            let profile = mp.profile.clone();
            Ok(Input::Chart { surface, grid: g, rotational: Some(RotationalInfo { alpha, beta, profile, minimal: Some(mp) }) })
        }
        SpecKind::RotationalProfile => {
            let path = spec.file()?;
            let (header, rows) = CsvTable::read_numeric(&path)?;
            let form = match header.iter().map(String::as_str).collect::<Vec<_>>()[..] {
                ["u", "f", "g"] => ProfileForm::Fg,
                ["u", "A", "B"] => ProfileForm::Ab,
                _ => return Err(bad(&path.display().to_string(), "expected header u,f,g or u,A,B")),
            };
            if rows.len() < 5 {
                return Err(bad(src, "profile needs at least 5 rows"));
            }
            let h = (rows[rows.len() - 1][0] - rows[0][0]) / (rows.len() - 1) as f64;
            let g1 = Grid1::new(rows[0][0], h, rows.len()).map_err(|e| bad(src, e.to_string()))?;
            if rows.iter().enumerate().any(|(k, r)| (r[0] - g1.u(k)).abs() > 1e-9 * (1.0 + r[0].abs())) {
                return Err(bad(src, "profile u values must be uniformly spaced and increasing"));
            }
            let col = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<_>>();
            let profile = MeridianProfile::from_samples(form, g1, col(1), col(2))?;
            let (alpha, beta) = (spec.req("alpha")?, spec.req("beta")?);
            let surface = match form {
                ProfileForm::Fg => rotational::surface_from_profile(&profile, alpha, beta)?,
                ProfileForm::Ab => {
                    let curve = GeneratingCurve::new(spec.req("a")?, spec.req("b")?, alpha, beta)?;
                    rotational::surface_from_ab(&profile, &curve)?
                }
            };
            let (_, nv) = pick(grid, spec.grid, (201, 128));
            let v_max = spec.num("v_max")?.unwrap_or(std::f64::consts::TAU);
            let g = Grid2::spanning(g1.u0, g1.u_max(), g1.n, 0.0, v_max, nv).map_err(|e| bad(src, e.to_string()))?;
            let surface = surface.with_domain(Domain::new(g1.u0, g1.u_max(), 0.0, v_max).map_err(|e| bad(src, e.to_string()))?);
            Ok(Input::Chart { surface, grid: g, rotational: Some(RotationalInfo { alpha, beta, profile, minimal: None }) })
        }
        SpecKind::InvariantField => {
            let (mu, nu) = read_invariant_field(&spec.file()?)?;
            Ok(Input::Field { mu, nu })
        }
        SpecKind::InvariantProfile => {
            let (mu, nu) = read_invariant_profile(&spec.file()?)?;
            let v_extent = spec.req("v_extent")?;
            let v_nodes = match spec.num("v_nodes")? {
                Some(n) if n >= 5.0 && n.fract() == 0.0 => n as usize,
                Some(_) => return Err(bad(src, "surface.v_nodes must be an integer ≥ 5")),
                None => pick(grid, spec.grid, (0, 101)).1,
            };
            if !(v_extent > 0.0) {
                return Err(bad(src, "surface.v_extent must be positive"));
            }
            Ok(Input::Profile { mu, nu, v_extent, v_nodes })
        }
    }
}

/// Tolerance overrides, output directory and export toggles.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub out_dir: PathBuf,
    pub csv: bool,
    pub mesh: bool,
    pub summary: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { tolerances: Tolerances::default(), out_dir: PathBuf::from("out"), csv: true, mesh: true, summary: true }
    }
}

impl RunConfig {
    /// ```toml
    /// [tolerances]
    /// admit_tol = 1e-3
    ///
    /// [output]
    /// dir = "out"
    /// csv = true
    /// mesh = true
    /// summary = true
    /// ```
    pub fn parse(text: &str, source: &str) -> Result<Self, SpecError> {
        let t = sections(text, source)?;
        let mut cfg = RunConfig::default();
        if let Some(k) = t.keys().find(|k| *k != "tolerances" && *k != "output") {
            return Err(bad(source, format!("unknown section `{k}`")));
        }
        if let Some(tol) = section(&t, "tolerances", source)? {
            for (k, v) in tol {
                let x = as_f64(v).ok_or_else(|| bad(source, format!("tolerances.{k} must be a number")))?;
                cfg.tolerances.set(k, x)?;
            }
        }
        if let Some(out) = section(&t, "output", source)? {
            for (k, v) in out {
                match (k.as_str(), v) {
                    ("dir", Value::String(d)) => cfg.out_dir = PathBuf::from(d),
                    ("csv", Value::Boolean(b)) => cfg.csv = *b,
                    ("mesh", Value::Boolean(b)) => cfg.mesh = *b,
                    ("summary", Value::Boolean(b)) => cfg.summary = *b,
                    _ => return Err(bad(source, format!("bad output.{k}"))),
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
        RunConfig::parse(&text, &path.display().to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spec_and_config() {
        let s = SurfaceSpec::parse(
            "[surface]\nkind = \"builtin\"\nname = \"weierstrass\"\nc = -0.25\n[grid]\nnu = 11\nnv = 9\n",
            Path::new("."),
            "t",
        )
        .unwrap();
        assert_eq!(s.kind, SpecKind::Builtin);
        assert_eq!(s.grid, Some((11, 9)));
        match build(&s, None).unwrap() {
            Input::Chart { grid, .. } => assert_eq!((grid.nu, grid.nv), (11, 9)),
            _ => panic!(),
        }
        assert!(SurfaceSpec::parse("[surface]\nkind = \"nope\"\n", Path::new("."), "t").is_err());
        assert!(SurfaceSpec::parse("[surface]\nkind = \"builtin\"\nzzz = 1\n", Path::new("."), "t").is_err());
        let c = RunConfig::parse("[tolerances]\nadmit_tol = 0.5\n[output]\ndir = \"x\"\nmesh = false\n", "c").unwrap();
        assert_eq!(c.tolerances.admit_tol, 0.5);
        assert!(!c.mesh);
        assert!(RunConfig::parse("[tolerances]\nadmit_tol = -1\n", "c").is_err());
    }
}
