//! CSV tables: comma separated, one header row, LF line ends, floats in
//! shortest round-trip form.

use std::path::Path;

use super::IoError;
use crate::analysis::GridAnalysis;
use crate::canonical::InvariantField;
use crate::grid::{Grid1, Grid2, InteriorField, InteriorProfile, ScalarField, ScalarProfile};

/// Header and rows of numbers plus optional trailing text columns.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push_numbers(&mut self, values: &[f64]) {
        self.rows.push(values.iter().map(|v| format!("{v}")).collect());
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, IoError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| IoError::Invalid(e.to_string()))
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        let bytes = self.to_bytes()?;
        std::fs::write(path, bytes).map_err(|e| IoError::file(path, e))
    }

    /// Reads a numeric table; every cell must parse as a float.
    pub fn read_numeric(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>), IoError> {
        let name = path.display().to_string();
        let mut r = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| IoError::parse(&name, e.to_string()))?;
        let header: Vec<String> = r.headers().map_err(|e| IoError::parse(&name, e.to_string()))?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for (k, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| IoError::parse(&name, e.to_string()))?;
            let row = rec
                .iter()
                .map(|c| c.parse::<f64>().ok().filter(|x| x.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .ok_or_else(|| IoError::parse(&name, format!("row {}: non-numeric or non-finite cell", k + 1)))?;
            if row.len() != header.len() {
                return Err(IoError::parse(&name, format!("row {}: expected {} cells", k + 1, header.len())));
            }
            rows.push(row);
        }
        Ok((header, rows))
    }
}

/// `u,v,E,F,G,L,M,N,k,kappa,K,class`.
pub fn invariants_table(a: &GridAnalysis) -> Table {
    let mut t = Table::new(&["u", "v", "E", "F", "G", "L", "M", "N", "k", "kappa", "K", "class"]);
    for r in &a.records {
        let nums = [r.u, r.v, r.e, r.f, r.g, r.inv.l, r.inv.m, r.inv.n, r.inv.k, r.inv.kappa, r.inv.gauss];
        let mut row: Vec<String> = nums.iter().map(|v| format!("{v}")).collect();
        row.push(r.class.name().to_string());
        t.rows.push(row);
    }
    t
}

/// `u,v,nu,mu,gamma1,gamma2,beta1,beta2,E,G` and the residual columns.
pub fn frame_invariants_table(f: &InvariantField) -> Table {
    let mut t = Table::new(&[
        "u", "v", "nu", "mu", "gamma1", "gamma2", "beta1", "beta2", "E", "G", "codazzi1", "codazzi2", "codazzi3",
        "codazzi4", "codazzi5", "codazzi6", "normal_connection",
    ]);
    for (i, j) in f.grid.nodes() {
        let (u, v) = f.grid.node(i, j);
        let mut row = vec![
            u,
            v,
            f.nu.at(i, j),
            f.mu.at(i, j),
            f.gamma1.at(i, j),
            f.gamma2.at(i, j),
            f.beta1.at(i, j),
            f.beta2.at(i, j),
            f.e.at(i, j),
            f.g.at(i, j),
        ];
        row.extend(f.codazzi.iter().map(|c| c.at(i, j)));
        row.push(f.normal_connection.at(i, j));
        t.push_numbers(&row);
    }
    t
}

/// `u,v,r1,r2` over interior nodes.
pub fn residuals_table(r1: &InteriorField, r2: &InteriorField) -> Table {
    let mut t = Table::new(&["u", "v", "r1", "r2"]);
    for ((i, j, a), (_, _, b)) in r1.iter().zip(r2.iter()) {
        let (u, v) = r1.grid.node(i, j);
        t.push_numbers(&[u, v, a, b]);
    }
    t
}

pub fn profile_residuals_table(r1: &InteriorProfile, r2: &InteriorProfile) -> Table {
    let mut t = Table::new(&["u", "r1", "r2"]);
    for ((i, a), (_, b)) in r1.iter().zip(r2.iter()) {
        t.push_numbers(&[r1.grid.u(i), a, b]);
    }
    t
}

/// Two profiles sharing a lattice, e.g. `u,f,g` or `u,mu,nu`.
pub fn profile_table(names: [&str; 3], grid: Grid1, first: &[f64], second: &[f64]) -> Table {
    let mut t = Table::new(&names);
    for i in 0..grid.n {
        t.push_numbers(&[grid.u(i), first[i], second[i]]);
    }
    t
}

/// Uniform lattice through sorted, de-duplicated coordinates.
fn lattice(coords: &[f64], name: &str) -> Result<(f64, f64, usize), IoError> {
    let mut c: Vec<f64> = coords.to_vec();
    c.sort_by(f64::total_cmp);
    c.dedup();
    if c.len() < 2 {
        return Err(IoError::Invalid(format!("{name}: need at least two distinct values")));
    }
    let h = (c[c.len() - 1] - c[0]) / (c.len() - 1) as f64;
    for (k, x) in c.iter().enumerate() {
        if (x - (c[0] + k as f64 * h)).abs() > 1e-9 * (1.0 + x.abs()) {
            return Err(IoError::Invalid(format!("{name}: values are not uniformly spaced")));
        }
    }
    Ok((c[0], h, c.len()))
}

/// Reads `u,mu,nu` into two profiles.
pub fn read_invariant_profile(path: &Path) -> Result<(ScalarProfile, ScalarProfile), IoError> {
    let (header, rows) = Table::read_numeric(path)?;
    if header != ["u", "mu", "nu"] {
        return Err(IoError::parse(path.display().to_string(), "expected header u,mu,nu"));
    }
    let (u0, h, n) = lattice(&rows.iter().map(|r| r[0]).collect::<Vec<_>>(), "u")?;
    if n != rows.len() {
        return Err(IoError::Invalid("u values repeat".into()));
    }
    let grid = Grid1::new(u0, h, n).map_err(|e| IoError::Invalid(e.to_string()))?;
    let mut sorted = rows;
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let col = |k: usize| ScalarProfile::new(grid, sorted.iter().map(|r| r[k]).collect());
    Ok((
        col(1).map_err(|e| IoError::Invalid(e.to_string()))?,
        col(2).map_err(|e| IoError::Invalid(e.to_string()))?,
    ))
}

/// Reads `u,v,mu,nu` covering a full rectangular lattice.
pub fn read_invariant_field(path: &Path) -> Result<(ScalarField, ScalarField), IoError> {
    let (header, rows) = Table::read_numeric(path)?;
    if header != ["u", "v", "mu", "nu"] {
        return Err(IoError::parse(path.display().to_string(), "expected header u,v,mu,nu"));
    }
    let (u0, hu, nu) = lattice(&rows.iter().map(|r| r[0]).collect::<Vec<_>>(), "u")?;
    let (v0, hv, nv) = lattice(&rows.iter().map(|r| r[1]).collect::<Vec<_>>(), "v")?;
    if rows.len() != nu * nv {
        return Err(IoError::Invalid(format!("expected {} rows for a {nu}×{nv} lattice", nu * nv)));
    }
    let grid = Grid2::new(u0, hu, nu, v0, hv, nv).map_err(|e| IoError::Invalid(e.to_string()))?;
    let mut mu = vec![f64::NAN; grid.len()];
    let mut nuv = vec![f64::NAN; grid.len()];
    for r in &rows {
        let i = ((r[0] - u0) / hu).round() as usize;
        let j = ((r[1] - v0) / hv).round() as usize;
        mu[grid.index(i, j)] = r[2];
        nuv[grid.index(i, j)] = r[3];
    }
    let mu = ScalarField::new(grid, mu).map_err(|_| IoError::Invalid("lattice has missing nodes".into()))?;
    let nuf = ScalarField::new(grid, nuv).map_err(|_| IoError::Invalid("lattice has missing nodes".into()))?;
    Ok((mu, nuf))
}

/// Writes `u,v,mu,nu` for a field.
pub fn invariant_field_table(mu: &ScalarField, nu: &ScalarField) -> Table {
    let mut t = Table::new(&["u", "v", "mu", "nu"]);
    for (i, j) in mu.grid.nodes() {
        let (u, v) = mu.grid.node(i, j);
        t.push_numbers(&[u, v, mu.at(i, j), nu.at(i, j)]);
    }
    t
}
