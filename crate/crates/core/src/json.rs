//! JSON encodings. Rationals are strings (`"p/q"`, `"inf"` for the point at
//! infinity) and point indices are one based.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::configs::{Configuration, Param};
use crate::error::{Error, Result};
use crate::exactlin::{format_rat, parse_rat, Mat, Rat};
use crate::gitstab::{StabilityVerdict, Status, Wall};
use crate::trees::{Edge, Label, SpecialPoint, StableTree};

pub fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn mat(m: &Mat) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| rats(r)).collect()
}

pub fn parse_rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub d: usize,
    pub n: usize,
    /// One entry per point, `d+1` coordinates each.
    pub columns: Vec<Vec<String>>,
}

impl From<&Configuration> for ConfigJson {
    fn from(c: &Configuration) -> Self {
        ConfigJson {
            d: c.d(),
            n: c.n(),
            columns: c.matrix().columns().iter().map(|col| rats(col)).collect(),
        }
    }
}

impl ConfigJson {
    pub fn to_configuration(&self) -> Result<Configuration> {
        if self.columns.len() != self.n {
            return Err(Error::DimensionMismatch(format!("n = {} but {} columns", self.n, self.columns.len())));
        }
        let columns = self.columns.iter().map(|c| parse_rats(c)).collect::<Result<Vec<_>>>()?;
        let c = Configuration::new(Mat::from_columns(self.d + 1, &columns)?)?;
        Ok(c)
    }
}

pub fn parse_config(text: &str) -> Result<Configuration> {
    let j: ConfigJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_configuration()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    /// `mark:<i>` (one based) or `edge:<id>`.
    pub label: String,
    pub coord: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub points: Vec<PointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub vertices: Vec<VertexJson>,
    /// `[id, a, b]` with zero-based component indices.
    pub edges: Vec<(String, usize, usize)>,
}

fn parse_label(s: &str) -> Result<Label> {
    if let Some(i) = s.strip_prefix("mark:") {
        let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad mark label {s:?}")))?;
        if i == 0 {
            return Err(Error::Parse("marks are numbered from 1".into()));
        }
        Ok(Label::Mark(i - 1))
    } else if let Some(id) = s.strip_prefix("edge:") {
        Ok(Label::Edge(id.to_string()))
    } else {
        Err(Error::Parse(format!("label {s:?} is neither mark:<i> nor edge:<id>")))
    }
}

impl From<&StableTree> for TreeJson {
    fn from(t: &StableTree) -> Self {
        TreeJson {
            vertices: t
                .vertices()
                .iter()
                .map(|pts| VertexJson {
                    points: pts
                        .iter()
                        .map(|p| PointJson {
                            label: p.label.to_string(),
                            coord: p.coord.to_string(),
                        })
                        .collect(),
                })
                .collect(),
            edges: t.edges().iter().map(|e| (e.id.clone(), e.a, e.b)).collect(),
        }
    }
}

impl TreeJson {
    pub fn to_tree(&self) -> Result<StableTree> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.points
                    .iter()
                    .map(|p| {
                        Ok(SpecialPoint {
                            label: parse_label(&p.label)?,
                            coord: Param::parse(&p.coord)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges
            .iter()
            .map(|(id, a, b)| Edge {
                id: id.clone(),
                a: *a,
                b: *b,
            })
            .collect();
        StableTree::new(vertices, edges)
    }
}

pub fn parse_tree(text: &str) -> Result<StableTree> {
    let j: TreeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_tree()
}

pub fn tree_to_string(t: &StableTree) -> String {
    serde_json::to_string(&TreeJson::from(t)).expect("tree serializes")
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Stable => "Stable",
        Status::StrictlySemistable => "StrictlySemistable",
        Status::Unstable => "Unstable",
    }
}

pub fn verdict(v: &StabilityVerdict) -> Value {
    json!({
        "status": status_name(v.status),
        "witness": v.witness.as_ref().map(|w| json!({
            "subset": w.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "dim": w.dim,
            "weight": format_rat(&w.weight),
        })),
    })
}

pub fn wall(w: &Wall) -> Value {
    json!({
        "subset": w.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "k": w.k,
    })
}
