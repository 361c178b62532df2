//! One-shot evaluation of a single operation on a JSON instance.

use minor_sums::codec::{
    cycle_from_json, elems_to_json, index_set_from_json, matrix_from_json, matrix_to_json, pair_sum_from_json,
    CycleConfigJson, MatrixJson, PairSumJson,
};
use minor_sums::groups::{EnumerationCaps, Permutation, SignVector};
use minor_sums::invariance::{
    build_m, charpoly_sum_brute, charpoly_sum_closed, perm_pair_sum_brute, perm_pair_sum_closed, r_stat, s_stat,
    tuple_product_sum_brute, tuple_product_sum_closed,
};
use minor_sums::matrix::{minor_of_product, minor_of_sum_expansion};
use minor_sums::poly::charpoly_coeffs;
use minor_sums::{with_ring, BaseRing, Error};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

pub const OPS: &[&str] = &[
    "determinant",
    "minor",
    "compound",
    "principal_minor_sum",
    "charpoly",
    "minor_of_product",
    "minor_of_sum_expansion",
    "perm_pair_sum_closed",
    "perm_pair_sum_brute",
    "tuple_product_sum_closed",
    "tuple_product_sum_brute",
    "charpoly_sum_closed",
    "charpoly_sum_brute",
    "build_M",
    "r_stat",
    "s_stat",
];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixInput {
    matrix: MatrixJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MinorInput {
    matrix: MatrixJson,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderInput {
    matrix: MatrixJson,
    k: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    a: MatrixJson,
    #[serde(alias = "d")]
    b: MatrixJson,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BuildMInput {
    config: CycleConfigJson,
    perms: Vec<Vec<usize>>,
    signs: Vec<Vec<i8>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RStatInput {
    t: usize,
    n: usize,
    #[serde(rename = "X")]
    x: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SStatInput {
    n: usize,
    #[serde(rename = "X")]
    x: Vec<usize>,
    #[serde(rename = "Y")]
    y: Vec<usize>,
}

/// Result of an evaluation: ring elements and integers print bare, everything
/// else as pretty JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Scalar(String),
    Json(Value),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Scalar(s) => format!("{s}\n"),
            Output::Json(v) => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        }
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))
}

fn json<T: serde::Serialize>(v: T) -> Output {
    Output::Json(serde_json::to_value(v).expect("serializable"))
}

fn scalar<R: BaseRing>(ring: &R, e: &R::Elem) -> Output {
    Output::Scalar(ring.format(e))
}

fn input_err(e: Error) -> CliError {
    CliError::Input(e.to_string())
}

pub fn evaluate(op: &str, text: &str, caps: &EnumerationCaps, jobs: usize) -> Result<Output, CliError> {
    match op {
        "determinant" | "charpoly" => {
            let inp: MatrixInput = parse(text)?;
            with_ring!(inp.matrix.ring, r => {
                let m = matrix_from_json(&r, &inp.matrix, "matrix").map_err(input_err)?;
                if op == "determinant" {
                    Ok(scalar(&r, &m.determinant()?))
                } else {
                    Ok(json(elems_to_json(&r, &charpoly_coeffs(&m)?.top_down_coeffs())))
                }
            })
        }
        "minor" => {
            let inp: MinorInput = parse(text)?;
            with_ring!(inp.matrix.ring, r => {
                let m = matrix_from_json(&r, &inp.matrix, "matrix").map_err(input_err)?;
                let s = index_set_from_json(&inp.rows, m.rows(), "rows").map_err(input_err)?;
                let t = index_set_from_json(&inp.cols, m.cols(), "cols").map_err(input_err)?;
                Ok(scalar(&r, &m.minor(&s, &t)?))
            })
        }
        "compound" | "principal_minor_sum" => {
            let inp: OrderInput = parse(text)?;
            with_ring!(inp.matrix.ring, r => {
                let m = matrix_from_json(&r, &inp.matrix, "matrix").map_err(input_err)?;
                if op == "compound" {
                    Ok(json(matrix_to_json(&m.compound(inp.k)?)))
                } else {
                    Ok(scalar(&r, &m.principal_minor_sum(inp.k)?))
                }
            })
        }
        "minor_of_product" | "minor_of_sum_expansion" => {
            let inp: PairInput = parse(text)?;
            with_ring!(inp.a.ring, r => {
                let a = matrix_from_json(&r, &inp.a, "a").map_err(input_err)?;
                let b = matrix_from_json(&r, &inp.b, "b").map_err(input_err)?;
                let s = index_set_from_json(&inp.rows, a.rows(), "rows").map_err(input_err)?;
                let t = index_set_from_json(&inp.cols, b.cols(), "cols").map_err(input_err)?;
                let v = if op == "minor_of_product" {
                    minor_of_product(&a, &b, &s, &t)?
                } else {
                    minor_of_sum_expansion(&a, &b, &s, &t)?
                };
                Ok(scalar(&r, &v))
            })
        }
        "perm_pair_sum_closed" | "perm_pair_sum_brute" => {
            let inp: PairSumJson = parse(text)?;
            with_ring!(inp.ring, r => {
                let inst = pair_sum_from_json(&r, &inp).map_err(input_err)?;
                let v = if op == "perm_pair_sum_closed" {
                    perm_pair_sum_closed(&inst)
                } else {
                    perm_pair_sum_brute(&inst, caps)?
                };
                Ok(scalar(&r, &v))
            })
        }
        "tuple_product_sum_closed" | "tuple_product_sum_brute" => {
            let inp: CycleConfigJson = parse(text)?;
            with_ring!(inp.ring, r => {
                let cfg = cycle_from_json(&r, &inp).map_err(input_err)?;
                let v = if op == "tuple_product_sum_closed" {
                    tuple_product_sum_closed(&cfg)?
                } else {
                    tuple_product_sum_brute(&cfg, caps, jobs)?
                };
                Ok(scalar(&r, &v))
            })
        }
        "charpoly_sum_closed" | "charpoly_sum_brute" => {
            let inp: CycleConfigJson = parse(text)?;
            with_ring!(inp.ring, r => {
                let cfg = cycle_from_json(&r, &inp).map_err(input_err)?;
                let v = if op == "charpoly_sum_closed" {
                    charpoly_sum_closed(&cfg)?
                } else {
                    charpoly_sum_brute(&cfg, caps, jobs)?
                };
                Ok(json(elems_to_json(&r, &v.top_down_coeffs())))
            })
        }
        "build_M" => {
            let inp: BuildMInput = parse(text)?;
            let perms = inp
                .perms
                .into_iter()
                .map(Permutation::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(input_err)?;
            let signs = inp
                .signs
                .into_iter()
                .map(SignVector::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(input_err)?;
            with_ring!(inp.config.ring, r => {
                let cfg = cycle_from_json(&r, &inp.config).map_err(input_err)?;
                Ok(json(matrix_to_json(&build_m(&cfg, &perms, &signs).map_err(input_err)?)))
            })
        }
        "r_stat" => {
            let inp: RStatInput = parse(text)?;
            let x = index_set_from_json(&inp.x, inp.n, "X").map_err(input_err)?;
            Ok(Output::Scalar(r_stat(inp.t, &x).map_err(input_err)?.to_string()))
        }
        "s_stat" => {
            let inp: SStatInput = parse(text)?;
            let x = index_set_from_json(&inp.x, inp.n, "X").map_err(input_err)?;
            let y = index_set_from_json(&inp.y, inp.n, "Y").map_err(input_err)?;
            Ok(Output::Scalar(s_stat(&x, &y).to_string()))
        }
        other => Err(CliError::Usage(format!("unknown op {other:?}; expected one of {}", OPS.join(", ")))),
    }
}
