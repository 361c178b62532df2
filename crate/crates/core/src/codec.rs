//! JSON forms of matrices, index sets, pair-sum instances and cycle
//! configurations.
//!
//! Elements are written as strings (decimal, or `p/q` for rationals). On
//! input plain JSON integers are accepted as well. Conversion errors carry
//! the path of the offending field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::invariance::{CycleConfig, OuterFactors, PairSumInstance};
use crate::matrix::ExactMatrix;
use crate::poly::Polynomial;
use crate::ring::{BaseRing, RingSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Text(String),
    Number(serde_json::Number),
}

impl ElemJson {
    fn text(&self) -> String {
        match self {
            ElemJson::Text(s) => s.clone(),
            ElemJson::Number(n) => n.to_string(),
        }
    }
}

fn at(path: &str, e: Error) -> Error {
    let msg = match e {
        Error::Parse(m) => m,
        other => other.to_string(),
    };
    Error::Parse(format!("{path}: {msg}"))
}

pub fn parse_elem<R: BaseRing>(ring: &R, e: &ElemJson, path: &str) -> Result<R::Elem> {
    ring.parse(&e.text()).map_err(|err| at(path, err))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub ring: RingSpec,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ElemJson>>,
}

pub fn matrix_to_json<R: BaseRing>(m: &ExactMatrix<R>) -> MatrixJson {
    let ring = m.ring();
    MatrixJson {
        ring: ring.spec(),
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| m.row(i).iter().map(|e| ElemJson::Text(ring.format(e))).collect())
            .collect(),
    }
}

pub fn matrix_from_json<R: BaseRing>(ring: &R, json: &MatrixJson, path: &str) -> Result<ExactMatrix<R>> {
    if json.ring != ring.spec() {
        return Err(Error::Parse(format!(
            "{path}.ring: matrix is over {} but {} was expected",
            json.ring,
            ring.spec()
        )));
    }
    if json.rows == 0 || json.cols == 0 {
        return Err(Error::Parse(format!("{path}: rows and cols must be positive")));
    }
    if json.entries.len() != json.rows {
        return Err(Error::Parse(format!(
            "{path}.entries: {} rows given, rows = {}",
            json.entries.len(),
            json.rows
        )));
    }
    let mut entries = Vec::with_capacity(json.rows * json.cols);
    for (i, row) in json.entries.iter().enumerate() {
        if row.len() != json.cols {
            return Err(Error::Parse(format!(
                "{path}.entries[{i}]: {} entries given, cols = {}",
                row.len(),
                json.cols
            )));
        }
        for (j, e) in row.iter().enumerate() {
            entries.push(parse_elem(ring, e, &format!("{path}.entries[{i}][{j}]"))?);
        }
    }
    ExactMatrix::new(ring.clone(), json.rows, json.cols, entries)
}

pub fn index_set_from_json(elems: &[usize], universe: usize, path: &str) -> Result<IndexSet> {
    IndexSet::new(elems.to_vec(), universe).map_err(|e| at(path, e))
}

/// Coefficients low-to-high as strings.
pub fn polynomial_to_json<R: BaseRing>(ring: &R, p: &Polynomial<R::Elem>) -> Vec<String> {
    p.coeffs().iter().map(|c| ring.format(c)).collect()
}

pub fn elems_to_json<R: BaseRing>(ring: &R, v: &[R::Elem]) -> Vec<String> {
    v.iter().map(|c| ring.format(c)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSumJson {
    pub ring: RingSpec,
    pub n: usize,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    #[serde(rename = "U")]
    pub u: Vec<usize>,
    #[serde(rename = "V")]
    pub v: Vec<usize>,
}

pub fn pair_sum_to_json<R: BaseRing>(inst: &PairSumInstance<R>) -> PairSumJson {
    PairSumJson {
        ring: inst.ring.spec(),
        n: inst.n,
        s: inst.s.elements().to_vec(),
        t: inst.t.elements().to_vec(),
        u: inst.u.elements().to_vec(),
        v: inst.v.elements().to_vec(),
    }
}

pub fn pair_sum_from_json<R: BaseRing>(ring: &R, json: &PairSumJson) -> Result<PairSumInstance<R>> {
    let set = |elems: &[usize], name: &str| index_set_from_json(elems, json.n, name);
    PairSumInstance::new(
        ring.clone(),
        json.n,
        set(&json.s, "S")?,
        set(&json.t, "T")?,
        set(&json.u, "U")?,
        set(&json.v, "V")?,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleMatricesJson {
    #[serde(rename = "A")]
    pub a: Vec<MatrixJson>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<MatrixJson>>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<MatrixJson>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<MatrixJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleIndexSetsJson {
    #[serde(rename = "X")]
    pub x: Vec<Vec<usize>>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<usize>>,
}

/// Serialized [`CycleConfig`]. `k` is redundant with the index sets and is
/// checked against them when present.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleConfigJson {
    pub ring: RingSpec,
    pub d: usize,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<usize>>,
    pub matrices: CycleMatricesJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_sets: Option<CycleIndexSetsJson>,
}

pub fn cycle_to_json<R: BaseRing>(cfg: &CycleConfig<R>) -> CycleConfigJson {
    let mats = |ms: &[ExactMatrix<R>]| ms.iter().map(matrix_to_json).collect::<Vec<_>>();
    let outer = cfg.outer();
    CycleConfigJson {
        ring: cfg.ring().spec(),
        d: cfg.len(),
        dims: cfg.dims().to_vec(),
        k: cfg.ks(),
        matrices: CycleMatricesJson {
            a: mats(cfg.a()),
            b: outer.map(|o| mats(&o.b)),
            c: outer.map(|o| mats(&o.c)),
            d: cfg.addends().map(mats),
        },
        index_sets: outer.map(|o| CycleIndexSetsJson {
            x: o.x.iter().map(|s| s.elements().to_vec()).collect(),
            y: o.y.iter().map(|s| s.elements().to_vec()).collect(),
        }),
    }
}

pub fn cycle_from_json<R: BaseRing>(ring: &R, json: &CycleConfigJson) -> Result<CycleConfig<R>> {
    if json.ring != ring.spec() {
        return Err(Error::Parse(format!("ring: expected {}, got {}", ring.spec(), json.ring)));
    }
    if json.dims.len() != json.d {
        return Err(Error::Parse(format!("dims: {} entries but d = {}", json.dims.len(), json.d)));
    }
    let mats = |ms: &[MatrixJson], name: &str| -> Result<Vec<ExactMatrix<R>>> {
        ms.iter()
            .enumerate()
            .map(|(j, m)| matrix_from_json(ring, m, &format!("matrices.{name}[{j}]")))
            .collect()
    };
    let a = mats(&json.matrices.a, "A")?;
    let mut cfg = CycleConfig::new(ring.clone(), json.dims.clone(), a).map_err(|e| at("matrices.A", e))?;
    match (&json.matrices.b, &json.matrices.c, &json.index_sets) {
        (Some(b), Some(c), Some(sets)) => {
            let b = mats(b, "B")?;
            let c = mats(c, "C")?;
            if sets.x.len() != b.len() || sets.y.len() != c.len() {
                return Err(Error::Parse("index_sets: need one X_j and one Y_j per block".into()));
            }
            let x = sets
                .x
                .iter()
                .zip(&b)
                .enumerate()
                .map(|(j, (s, m))| index_set_from_json(s, m.rows(), &format!("index_sets.X[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            let y = sets
                .y
                .iter()
                .zip(&c)
                .enumerate()
                .map(|(j, (s, m))| index_set_from_json(s, m.cols(), &format!("index_sets.Y[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            cfg = cfg.with_outer(OuterFactors { b, c, x, y }).map_err(|e| at("matrices", e))?;
            if let Some(k) = &json.k {
                if Some(k) != cfg.ks().as_ref() {
                    return Err(Error::Parse(format!(
                        "k: {k:?} does not match the index set sizes {:?}",
                        cfg.ks().unwrap_or_default()
                    )));
                }
            }
        }
        (None, None, None) => {}
        _ => {
            return Err(Error::Parse(
                "matrices.B, matrices.C and index_sets must be given together".into(),
            ))
        }
    }
    if let Some(d) = &json.matrices.d {
        let d = mats(d, "D")?;
        cfg = cfg.with_addends(d).map_err(|e| at("matrices.D", e))?;
    }
    Ok(cfg)
}
