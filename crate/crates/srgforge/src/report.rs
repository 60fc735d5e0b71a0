//! JSON report rows mirroring the subgroup and graph tables.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRow {
    pub group: String,
    pub subgroup_name: String,
    pub structure: String,
    pub order: u128,
    pub index: usize,
    pub rank: usize,
    pub primitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgRow {
    pub subgroup: String,
    pub index: usize,
    pub rank: usize,
    pub primitive: bool,
    /// Suborbit indices of the union, 0 being `{α}`.
    pub selection: Vec<usize>,
    pub params: [u64; 4],
    pub complement_params: [u64; 4],
    /// Hex digest of the invariant fingerprint.
    pub fingerprint: String,
    pub aut_order: Option<u128>,
    /// Other `(subgroup, selection)` pairs giving isomorphic graphs.
    pub isomorphic_selections: Vec<(String, Vec<usize>)>,
    pub file: Option<String>,
    /// Counts of cliques of `clique_size`, when requested.
    pub cliques: Option<u128>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub selections: u64,
    pub regular_only: u64,
    pub disconnected: u64,
    pub srg_selections: u64,
    pub isomorphism_tests: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseRow {
    pub name: String,
    pub source: String,
    pub source_params: [u64; 4],
    pub orbits: usize,
    pub orbit_length: u64,
    pub diagonal: u64,
    pub x: u64,
    pub y: u64,
    pub params: [u64; 4],
    pub predicted: [u64; 4],
    pub expected: [u64; 4],
    pub isomorphic_to: Option<String>,
    pub isomorphic: Option<bool>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub group: String,
    pub order: u128,
    pub max_degree: usize,
    pub subgroups: Vec<SubgroupRow>,
    pub srgs: Vec<SrgRow>,
    pub collapses: Vec<CollapseRow>,
    pub clique_size: Option<usize>,
    pub stats: Stats,
    /// Expected parameter multiset (restricted to the degree bound); empty
    /// when the input carries no expectations.
    pub expected_params: Vec<[u64; 4]>,
    pub golden_ok: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
