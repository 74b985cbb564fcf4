//! The polytope JSON file format and the standard fixture families.
//!
//! ```json
//! {"ambient_dim": 2, "vertices": [[0, 0], [2, 0], [0, 1]], "name": "triangle"}
//! {"ambient_dim": 1, "inequalities": [{"normal": [-1], "offset": 0}, {"normal": [1], "offset": 2}]}
//! ```
//!
//! Exactly one of `vertices` and `inequalities` must be present; an
//! inequality means `normal · x ≤ offset`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::LatticeVector;
use crate::polytope::{FacetForm, Polytope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityRow {
    pub normal: Vec<i64>,
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<InequalityRow>>,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: PolytopeFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match (&file.vertices, &file.inequalities) {
            (Some(_), None) | (None, Some(_)) => Ok(file),
            (Some(_), Some(_)) => Err(Error::Parse(
                "give either \"vertices\" or \"inequalities\", not both".into(),
            )),
            (None, None) => Err(Error::Parse(
                "one of \"vertices\" or \"inequalities\" is required".into(),
            )),
        }
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let m = self.ambient_dim;
        let p = match (&self.vertices, &self.inequalities) {
            (Some(vs), None) => {
                let pts: Vec<LatticeVector> =
                    vs.iter().map(|v| LatticeVector::new(v.clone())).collect();
                Polytope::from_vertices(m, &pts)?
            }
            (None, Some(rows)) => {
                let rows: Vec<FacetForm> = rows
                    .iter()
                    .map(|r| FacetForm {
                        normal: LatticeVector::new(r.normal.clone()),
                        offset: r.offset,
                    })
                    .collect();
                Polytope::from_inequalities(m, &rows)?
            }
            _ => return Err(Error::Parse("ambiguous polytope description".into())),
        };
        Ok(match &self.name {
            Some(n) => p.with_name(n.clone()),
            None => p,
        })
    }

    /// Canonical vertex description of a polytope.
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeFile {
            ambient_dim: p.ambient_dim(),
            name: p.name().map(str::to_string),
            vertices: Some(p.vertices().iter().map(|v| v.coords().to_vec()).collect()),
            inequalities: None,
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("polytope files are plain data");
        serde_json::to_string_pretty(&value).expect("serializable")
    }
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    PolytopeFile::parse(text)?.to_polytope()
}

/// Fixture families.
pub mod family {
    use super::*;

    fn need(ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(what.into()))
        }
    }

    /// The simplex with vertices `0, 2e_1, e_2, ..., e_d`.
    pub fn example1_file(d: usize) -> Result<PolytopeFile> {
        need(d >= 1, "example1 needs d >= 1")?;
        let mut vs = vec![vec![0; d]];
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = if i == 0 { 2 } else { 1 };
            vs.push(e);
        }
        Ok(PolytopeFile {
            ambient_dim: d,
            name: Some(format!("example1-d{d}")),
            vertices: Some(vs),
            inequalities: None,
        })
    }

    /// `0 ≤ x_i ≤ 2 (i < d)`, `0 ≤ x_d ≤ d`, `x_1 + ... + x_d ≤ d + 1`.
    pub fn example2_file(d: usize) -> Result<PolytopeFile> {
        need(d >= 2, "example2 needs d >= 2")?;
        let mut rows = Vec::new();
        for i in 0..d {
            let upper = if i + 1 < d { 2 } else { d as i64 };
            let mut lo = vec![0; d];
            lo[i] = -1;
            rows.push(InequalityRow { normal: lo, offset: 0 });
            let mut hi = vec![0; d];
            hi[i] = 1;
            rows.push(InequalityRow { normal: hi, offset: upper });
        }
        rows.push(InequalityRow {
            normal: vec![1; d],
            offset: d as i64 + 1,
        });
        Ok(PolytopeFile {
            ambient_dim: d,
            name: Some(format!("example2-d{d}")),
            vertices: None,
            inequalities: Some(rows),
        })
    }

    /// The unimodular simplex `conv{0, e_1, ..., e_d}`.
    pub fn unit_file(d: usize) -> Result<PolytopeFile> {
        need(d >= 1, "unit needs d >= 1")?;
        let mut vs = vec![vec![0; d]];
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            vs.push(e);
        }
        Ok(PolytopeFile {
            ambient_dim: d,
            name: Some(format!("unit-d{d}")),
            vertices: Some(vs),
            inequalities: None,
        })
    }

    /// The empty tetrahedron `conv{0, e_1, e_2, (1, 1, q)}` of normalized
    /// volume `q`.
    pub fn reeve_file(q: i64) -> Result<PolytopeFile> {
        need(q >= 1, "reeve needs q >= 1")?;
        Ok(PolytopeFile {
            ambient_dim: 3,
            name: Some(format!("reeve-q{q}")),
            vertices: Some(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, q]]),
            inequalities: None,
        })
    }

    pub fn example1(d: usize) -> Result<Polytope> {
        example1_file(d)?.to_polytope()
    }

    pub fn example2(d: usize) -> Result<Polytope> {
        example2_file(d)?.to_polytope()
    }

    pub fn unit(d: usize) -> Result<Polytope> {
        unit_file(d)?.to_polytope()
    }

    pub fn reeve(q: i64) -> Result<Polytope> {
        reeve_file(q)?.to_polytope()
    }

    /// The interior points `(1, ..., 1, (i−1)d + i, i)`, `i = 1, ..., d−1`,
    /// of the second family's cone.
    pub fn example2_witnesses(d: usize) -> Vec<LatticeVector> {
        (1..d as i64)
            .map(|i| {
                let mut v = vec![1; d - 1];
                v.push((i - 1) * d as i64 + i);
                v.push(i);
                LatticeVector::new(v)
            })
            .collect()
    }
}
