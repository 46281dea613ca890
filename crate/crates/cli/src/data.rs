//! The embedded constants file and builders turning its strings into exact
//! objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use k3m20_core::linalg::Matrix;
use k3m20_core::numberfield::FieldError;
use k3m20_core::polyring::{parse_expr, parse_poly, MPoly, Monomial, ParseError, Ring};
use k3m20_core::projgeom::{ConicError, PlaneConic};
use k3m20_core::{fields, Field};
use serde::{Deserialize, Serialize};

pub const BUILTIN: &str = include_str!("../data/m20_k3.toml");

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("malformed data file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{context}: {error}")]
    Parse { context: String, error: ParseError },
    #[error("{0} is not a linear form")]
    NotLinear(String),
    #[error("matrix {0} is not square or has the wrong size")]
    BadMatrix(String),
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
}

impl From<DataError> for String {
    fn from(e: DataError) -> String {
        e.to_string()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Data {
    pub version: u32,
    pub lattice: LatticeData,
    pub cases: Vec<CaseData>,
    pub groups: BTreeMap<String, GroupData>,
    pub mukai: MukaiData,
    pub bh: BhData,
    pub kondo: KondoData,
    pub conics: BTreeMap<String, ConicData>,
    pub expected: Expected,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeData {
    pub anchor: String,
    pub gram: Vec<Vec<i64>>,
    pub rho1: Vec<Vec<i64>>,
    pub rho2: Vec<Vec<i64>>,
    pub norm4: Vec<Vec<i64>>,
    pub norm8: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseData {
    pub surface: String,
    pub n: i64,
    pub abc: [i64; 3],
    pub vector: Vec<i64>,
    pub tau1: [i64; 4],
    pub tau2: [i64; 4],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupData {
    #[serde(default)]
    pub anchor: String,
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default)]
    pub generators: Vec<NamedMatrix>,
    /// Generate by the diagonal matrices with a single `-1`.
    #[serde(default)]
    pub diagonal_signs: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MukaiData {
    pub field: String,
    pub vars: Vec<String>,
    pub f: String,
    pub mukai_form: String,
    pub first_substitution: Vec<String>,
    pub after_first: String,
    pub second_substitution: Vec<String>,
    pub final_divisor: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BhData {
    pub field: String,
    pub vars: Vec<String>,
    pub quadrics: Vec<String>,
    pub conjugate_quadrics: Vec<String>,
    pub quotient_vars: Vec<String>,
    pub quotient_system: Vec<String>,
    pub solved: Vec<String>,
    pub sextic: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KondoData {
    pub field: String,
    pub vars: Vec<String>,
    pub fermat: String,
    pub involution: Vec<Vec<String>>,
    pub inose_vars: Vec<String>,
    pub inose: Vec<String>,
    pub inose_substitution: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConicData {
    pub anchor: String,
    pub field: String,
    pub vars: Vec<String>,
    pub linear: Vec<String>,
    pub quadric: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Expected {
    pub mukai_order: usize,
    pub mukai_center: usize,
    pub mukai_projective: usize,
    pub mukai_derived_projective: usize,
    pub mukai_invariants_degree4: usize,
    pub bh_order: usize,
    pub bh_center: usize,
    pub bh_projective: usize,
    pub bh_derived_projective: usize,
    pub a_order: usize,
    pub n_order: usize,
    pub fermat_fixed_points: usize,
    pub ambient_singular_points: usize,
    pub cone_singular_points: usize,
    pub bh_orbit: usize,
    pub a_orbit: usize,
    pub bh_orbit2: usize,
    pub mukai_orbit: usize,
    pub a_max_disjoint: usize,
    pub bh2_max_disjoint: usize,
    pub mukai_max_disjoint: usize,
}

impl Data {
    pub fn builtin() -> Data {
        Data::from_toml(BUILTIN).expect("embedded data file parses")
    }

    pub fn from_toml(s: &str) -> Result<Data, DataError> {
        Ok(toml::from_str(s)?)
    }

    pub fn group(&self, name: &str) -> Result<&GroupData, DataError> {
        self.groups.get(name).ok_or_else(|| DataError::Unknown { kind: "group", name: name.into() })
    }

    pub fn conic(&self, name: &str) -> Result<&ConicData, DataError> {
        self.conics.get(name).ok_or_else(|| DataError::Unknown { kind: "conic", name: name.into() })
    }
}

pub fn field(name: &str) -> Result<Field, DataError> {
    Ok(fields::by_name(name)?)
}

pub fn ring(field: &Field, vars: &[String]) -> Arc<Ring> {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    Ring::new(field, &names)
}

pub fn poly(ring: &Arc<Ring>, s: &str) -> Result<MPoly, DataError> {
    parse_poly(ring, s).map_err(|error| DataError::Parse { context: format!("polynomial {s:?}"), error })
}

pub fn polys(ring: &Arc<Ring>, ss: &[String]) -> Result<Vec<MPoly>, DataError> {
    ss.iter().map(|s| poly(ring, s)).collect()
}

pub fn matrix(field: &Field, name: &str, rows: &[Vec<String>]) -> Result<Matrix, DataError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(DataError::BadMatrix(name.into()));
    }
    let entries = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| {
                    parse_expr(field, e)
                        .map_err(|error| DataError::Parse { context: format!("{name} entry {e:?}"), error })
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(Matrix::from_rows(field, entries))
}

/// Coefficient rows of linear forms on the ring's variables.
pub fn linear_rows(ring: &Arc<Ring>, forms: &[String]) -> Result<Matrix, DataError> {
    let n = ring.nvars();
    let basis: Vec<Monomial> = (0..n).map(|i| Monomial::var(n, i)).collect();
    let rows = forms
        .iter()
        .map(|s| poly(ring, s)?.coords_in(&basis).ok_or_else(|| DataError::NotLinear(s.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(ring.field(), rows))
}

impl GroupData {
    pub fn from_toml(s: &str) -> Result<GroupData, DataError> {
        Ok(toml::from_str(s)?)
    }

    pub fn default_field(&self) -> Result<Field, DataError> {
        field(&self.field)
    }

    /// Generators with entries read in `field`, which must name every
    /// element the entries use.
    pub fn matrices(&self, field: &Field) -> Result<Vec<Matrix>, DataError> {
        let n = self.vars.len();
        let mut out = Vec::new();
        if self.diagonal_signs {
            for k in 0..n {
                let entries: Vec<_> = (0..n).map(|i| field.from_int(if i == k { -1 } else { 1 })).collect();
                out.push(Matrix::diagonal(field, &entries));
            }
        }
        for g in &self.generators {
            let m = matrix(field, &g.name, &g.rows)?;
            if m.rows() != n {
                return Err(DataError::BadMatrix(g.name.clone()));
            }
            out.push(m);
        }
        Ok(out)
    }
}

impl ConicData {
    pub fn build(&self) -> Result<(Arc<Ring>, PlaneConic), DataError> {
        let k = field(&self.field)?;
        let r = ring(&k, &self.vars);
        let lin = linear_rows(&r, &self.linear)?;
        let q = poly(&r, &self.quadric)?;
        Ok((r, PlaneConic::new(&lin, &q)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses_and_builds() {
        let d = Data::builtin();
        for (name, g) in &d.groups {
            let k = g.default_field().unwrap();
            assert!(!g.matrices(&k).unwrap().is_empty(), "{name}");
        }
        for c in d.conics.values() {
            c.build().unwrap();
        }
        let k = field(&d.bh.field).unwrap();
        let r = ring(&k, &d.bh.vars);
        assert_eq!(polys(&r, &d.bh.quadrics).unwrap().len(), 3);
    }

    #[test]
    fn linear_rows_rejects_quadrics() {
        let r = ring(&Field::rationals(), &["x".into(), "y".into()]);
        assert!(matches!(linear_rows(&r, &["x*y".into()]), Err(DataError::NotLinear(_))));
        let m = linear_rows(&r, &["2*x - y".into()]).unwrap();
        assert_eq!(m.row(0)[0], Field::rationals().from_int(2));
    }
}
