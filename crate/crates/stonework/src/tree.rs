//! The tree manifest written by `reparam`: neighbourhoods, partition-tree
//! nodes, piece tables of the involutions and the orbit table of `s_0`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use stonework_core::clopen::find_witness;
use stonework_core::finset::{subsets, FinSet};
use stonework_core::reparam::{alpha_elem, dyadic_action, InvolutionTower, DEFAULT_SCAN_CAP};

use crate::config::RunConfig;
use crate::report::{finset_json, suite_record, Summary, Suite, SuiteRecord, TREE_SCHEMA};

#[derive(Serialize)]
pub struct TreeNode {
    pub level: u32,
    /// `α_1 α_2 … α_p`.
    pub address: String,
    pub expr: String,
    /// First window point in the node, if any.
    pub witness: Option<Value>,
}

#[derive(Serialize)]
pub struct PieceRow {
    pub piece: String,
    #[serde(rename = "move")]
    pub mv: Value,
    pub points: Vec<Value>,
}

#[derive(Serialize)]
pub struct PieceTable {
    pub map: String,
    pub pieces: Vec<PieceRow>,
}

#[derive(Serialize)]
pub struct OrbitRow {
    pub address: String,
    pub element: Value,
    pub point: Value,
}

#[derive(Serialize)]
pub struct TreeManifest {
    pub schema: &'static str,
    pub config: RunConfig,
    pub neighborhoods: Vec<String>,
    pub nodes: Vec<TreeNode>,
    pub leaves: usize,
    pub involutions: Vec<PieceTable>,
    pub orbit: Vec<OrbitRow>,
    pub suites: Vec<SuiteRecord>,
    pub summary: Summary,
}

fn address(alpha: usize, p: u32) -> String {
    (0..p).map(|i| if alpha >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Window points of each piece of `h_j`, in order of first appearance.
fn piece_table(t: &InvolutionTower, j: u32, window: &[FinSet]) -> stonework_core::Result<PieceTable> {
    let h = t.h(j);
    let mut order: Vec<String> = Vec::new();
    let mut rows: BTreeMap<String, PieceRow> = BTreeMap::new();
    for k in window {
        let loc = h.locate(k, DEFAULT_SCAN_CAP)?;
        let id = loc.id.to_string();
        let row = rows.entry(id.clone()).or_insert_with(|| {
            order.push(id.clone());
            PieceRow { piece: id, mv: finset_json(loc.mv.support()), points: Vec::new() }
        });
        row.points.push(finset_json(k));
    }
    let pieces = order.iter().map(|id| rows.remove(id).expect("row recorded")).collect();
    Ok(PieceTable { map: h.label().to_string(), pieces })
}

pub fn manifest(config: &RunConfig, t: &InvolutionTower, suites: &[Suite]) -> stonework_core::Result<TreeManifest> {
    let n = t.n();
    let window: Vec<FinSet> = subsets(n).collect();
    let mut nodes = Vec::new();
    for p in 1..=n {
        for (alpha, e) in t.level(p).iter().enumerate() {
            nodes.push(TreeNode {
                level: p,
                address: address(alpha, p),
                expr: e.to_string(),
                witness: find_witness(e, n)?.as_ref().map(finset_json),
            });
        }
    }
    let involutions = (1..=n).map(|j| piece_table(t, j, &window)).collect::<stonework_core::Result<_>>()?;
    let orbit = (0..1usize << n)
        .map(|alpha| {
            let g = alpha_elem(alpha);
            Ok(OrbitRow { address: address(alpha, n), element: finset_json(g.support()), point: finset_json(&dyadic_action(t, &g, &FinSet::empty())?) })
        })
        .collect::<stonework_core::Result<_>>()?;
    Ok(TreeManifest {
        schema: TREE_SCHEMA,
        config: config.clone(),
        neighborhoods: t.neighborhoods().iter().map(|e| e.to_string()).collect(),
        nodes,
        leaves: t.level(n).len(),
        involutions,
        orbit,
        suites: suites.iter().map(suite_record).collect(),
        summary: Summary::of(suites),
    })
}
