//! JSON input files: a polytope, optional pieces and an optional point order.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use toric_degen::polytope::{HalfSpace, LatticePolytope, Point};
use toric_degen::PolytopeError;

use crate::error::CliError;

/// An integer written either as a JSON number or, when it does not fit in 64
/// bits, as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    pub fn to_bigint(&self) -> Result<BigInt, CliError> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.trim().parse().map_err(|_| CliError::validation(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        i64::try_from(v).map_or_else(|_| JsonInt::Big(v.to_string()), JsonInt::Small)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct HalfSpaceSpec {
    pub a: Vec<JsonInt>,
    pub b: JsonInt,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PolytopeSpec {
    pub dim: Option<usize>,
    pub vertices: Vec<Vec<JsonInt>>,
    #[serde(default)]
    pub halfspaces: Option<Vec<HalfSpaceSpec>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct InputFile {
    pub dim: usize,
    pub vertices: Vec<Vec<JsonInt>>,
    #[serde(default)]
    pub halfspaces: Option<Vec<HalfSpaceSpec>>,
    #[serde(default)]
    pub point_order: Option<Vec<Vec<JsonInt>>>,
    #[serde(default)]
    pub pieces: Option<Vec<PolytopeSpec>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PartitionFile {
    pub pieces: Vec<PolytopeSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum PointOrderFile {
    Bare(Vec<Vec<JsonInt>>),
    Wrapped { point_order: Vec<Vec<JsonInt>> },
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

pub fn read_input(path: &Path) -> Result<InputFile, CliError> {
    read_json(path)
}

pub fn read_partition(path: &Path) -> Result<Vec<PolytopeSpec>, CliError> {
    read_json::<PartitionFile>(path).map(|p| p.pieces)
}

pub fn read_point_order(path: &Path) -> Result<Vec<Vec<JsonInt>>, CliError> {
    Ok(match read_json::<PointOrderFile>(path)? {
        PointOrderFile::Bare(v) => v,
        PointOrderFile::Wrapped { point_order } => point_order,
    })
}

pub fn to_point(coords: &[JsonInt]) -> Result<Point, CliError> {
    coords.iter().map(JsonInt::to_bigint).collect()
}

pub fn to_points(list: &[Vec<JsonInt>]) -> Result<Vec<Point>, CliError> {
    list.iter().map(|p| to_point(p)).collect()
}

pub fn build_polytope(dim: usize, vertices: &[Vec<JsonInt>], halfspaces: Option<&[HalfSpaceSpec]>) -> Result<LatticePolytope, CliError> {
    let vs = to_points(vertices)?;
    let result = match halfspaces {
        Some(hs) => {
            let hs = hs
                .iter()
                .map(|h| Ok(HalfSpace { normal: to_point(&h.a)?, offset: h.b.to_bigint()? }))
                .collect::<Result<Vec<_>, CliError>>()?;
            LatticePolytope::from_vh(dim, vs, hs)
        }
        None => LatticePolytope::from_vertices(dim, vs),
    };
    result.map_err(CliError::from_polytope)
}

impl InputFile {
    pub fn polytope(&self) -> Result<LatticePolytope, CliError> {
        build_polytope(self.dim, &self.vertices, self.halfspaces.as_deref())
    }
}

impl PolytopeSpec {
    pub fn polytope(&self, parent_dim: usize) -> Result<LatticePolytope, CliError> {
        let dim = self.dim.unwrap_or(parent_dim);
        if dim != parent_dim {
            return Err(CliError::from_polytope(PolytopeError::InvalidPartition(format!(
                "piece has dimension {dim}, polytope has {parent_dim}"
            ))));
        }
        build_polytope(dim, &self.vertices, self.halfspaces.as_deref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let j = JsonInt::from(&big);
        assert_eq!(serde_json::to_string(&j).unwrap(), "\"123456789012345678901234567890\"");
        assert_eq!(j.to_bigint().unwrap(), big);
        assert_eq!(serde_json::from_str::<JsonInt>("-7").unwrap(), JsonInt::Small(-7));
        assert!(JsonInt::Big("seven".into()).to_bigint().is_err());
    }

    #[test]
    fn point_order_accepts_both_shapes() {
        let bare: PointOrderFile = serde_json::from_str("[[1],[0]]").unwrap();
        let wrapped: PointOrderFile = serde_json::from_str(r#"{"point_order": [[1],[0]]}"#).unwrap();
        assert!(matches!(bare, PointOrderFile::Bare(v) if v.len() == 2));
        assert!(matches!(wrapped, PointOrderFile::Wrapped { point_order } if point_order.len() == 2));
    }

    #[test]
    fn piece_dimension_must_match() {
        let spec: PolytopeSpec = serde_json::from_str(r#"{"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(spec.polytope(1).unwrap_err().code, crate::error::EXIT_VALIDATION);
        assert!(spec.polytope(2).is_ok());
    }
}
