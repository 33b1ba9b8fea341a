//! Instance files and seeded instance generators.
//!
//! Every instance is a JSON object tagged by `"kind"`. Parsing validates the
//! same assumptions the constructors enforce; generators only emit instances
//! that satisfy them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bin_packing::BinPackInstance;
use crate::center_selection::MetricInstance;
use crate::error::{Error, Result};
use crate::id::{Id, IdSet};
use crate::independent_set::Graph;
use crate::load_balancing::LoadInstance;
use crate::metric::{manhattan_matrix, validate_metric};
use crate::oracles::OracleLimits;
use crate::rational::Rat;
use crate::set_cover::SetCoverInstance;
use crate::vertex_cover::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Problem {
    VertexCover,
    IndependentSet,
    LoadBalancing,
    CenterSelection,
    SetCover,
    BinPacking,
}

impl Problem {
    pub const ALL: [Problem; 6] = [
        Problem::VertexCover,
        Problem::IndependentSet,
        Problem::LoadBalancing,
        Problem::CenterSelection,
        Problem::SetCover,
        Problem::BinPacking,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Problem::VertexCover => "vc",
            Problem::IndependentSet => "mis",
            Problem::LoadBalancing => "lb",
            Problem::CenterSelection => "cs",
            Problem::SetCover => "sc",
            Problem::BinPacking => "bp",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Problem::ALL
            .into_iter()
            .find(|p| p.tag() == s)
            .ok_or_else(|| format!("unknown problem {s:?}; expected vc, mis, lb, cs, sc or bp"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Hypergraph(Hypergraph),
    Graph(Graph),
    LoadBalancing(LoadInstance),
    Metric { metric: MetricInstance, k: usize },
    SetCover(SetCoverInstance),
    BinPacking(BinPackInstance),
}

impl Instance {
    pub fn problem(&self) -> Problem {
        match self {
            Instance::Hypergraph(_) => Problem::VertexCover,
            Instance::Graph(_) => Problem::IndependentSet,
            Instance::LoadBalancing(_) => Problem::LoadBalancing,
            Instance::Metric { .. } => Problem::CenterSelection,
            Instance::SetCover(_) => Problem::SetCover,
            Instance::BinPacking(_) => Problem::BinPacking,
        }
    }
}

// Wire formats, one per kind.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphFile {
    k: usize,
    edges: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    edges: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LoadFile {
    machines: usize,
    loads: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricFile {
    n: usize,
    dist: Vec<Vec<Rat>>,
    k: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetCoverFile {
    universe: Vec<u64>,
    subsets: Vec<Vec<u64>>,
    weights: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BinPackingFile {
    capacity: Rat,
    weights: BTreeMap<u64, Rat>,
}

fn to_set(v: &[u64]) -> IdSet {
    v.iter().copied().map(Id).collect()
}

fn to_list(s: &IdSet) -> Vec<u64> {
    s.iter().map(|i| i.0).collect()
}

fn parse_error(path: impl Into<String>, message: impl fmt::Display) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.to_string(),
    }
}

fn body<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        parse_error(path, e.into_inner())
    })
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let mut value: Value = serde_json::from_slice(bytes).map_err(|e| parse_error(".", e))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| parse_error(".", "expected a JSON object"))?;
    let kind = match obj.remove("kind") {
        Some(Value::String(s)) => s,
        Some(_) => return Err(parse_error("kind", "expected a string")),
        None => return Err(parse_error("kind", "missing field")),
    };
    match kind.as_str() {
        "hypergraph" => {
            let f: HypergraphFile = body(value)?;
            Ok(Instance::Hypergraph(Hypergraph::new(
                f.k,
                f.edges.iter().map(|e| to_set(e)),
            )?))
        }
        "graph" => {
            let f: GraphFile = body(value)?;
            Ok(Instance::Graph(Graph::new(f.edges.iter().map(|e| to_set(e)))?))
        }
        "loadbalancing" => {
            let f: LoadFile = body(value)?;
            Ok(Instance::LoadBalancing(LoadInstance::new(f.machines, f.loads)?))
        }
        "metric" => {
            let f: MetricFile = body(value)?;
            validate_metric(&f.dist, f.n)?;
            let metric = MetricInstance::new(f.dist)?;
            if f.k == 0 || f.k > f.n {
                return Err(Error::BadK { k: f.k, n: f.n });
            }
            Ok(Instance::Metric { metric, k: f.k })
        }
        "setcover" => {
            let f: SetCoverFile = body(value)?;
            Ok(Instance::SetCover(SetCoverInstance::new(
                to_set(&f.universe),
                f.subsets.iter().map(|s| to_set(s)).collect(),
                f.weights,
            )?))
        }
        "binpacking" => {
            let f: BinPackingFile = body(value)?;
            let weights = f.weights.into_iter().map(|(u, w)| (Id(u), w)).collect();
            Ok(Instance::BinPacking(BinPackInstance::new(f.capacity, weights)?))
        }
        other => Err(parse_error("kind", format!("unknown kind {other:?}"))),
    }
}

fn tagged<T: Serialize>(kind: &str, f: &T) -> Value {
    let mut v = serde_json::to_value(f).expect("plain data");
    v.as_object_mut()
        .expect("struct")
        .insert("kind".into(), Value::String(kind.into()));
    v
}

pub fn to_value(inst: &Instance) -> Value {
    match inst {
        Instance::Hypergraph(h) => tagged(
            "hypergraph",
            &HypergraphFile {
                k: h.k(),
                edges: h.edges().iter().map(to_list).collect(),
            },
        ),
        Instance::Graph(g) => tagged(
            "graph",
            &GraphFile {
                edges: g.edges().iter().map(to_list).collect(),
            },
        ),
        Instance::LoadBalancing(i) => tagged(
            "loadbalancing",
            &LoadFile {
                machines: i.machines(),
                loads: i.loads().to_vec(),
            },
        ),
        Instance::Metric { metric, k } => tagged(
            "metric",
            &MetricFile {
                n: metric.n(),
                dist: metric.matrix().to_vec(),
                k: *k,
            },
        ),
        Instance::SetCover(i) => tagged(
            "setcover",
            &SetCoverFile {
                universe: to_list(i.universe()),
                subsets: i.subsets().iter().map(to_list).collect(),
                weights: i.weights().to_vec(),
            },
        ),
        Instance::BinPacking(i) => tagged(
            "binpacking",
            &BinPackingFile {
                capacity: i.capacity().clone(),
                weights: i.weights().iter().map(|(u, w)| (u.0, w.clone())).collect(),
            },
        ),
    }
}

pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string(&to_value(inst)).expect("plain data")
}

/// Size knobs for [`gen_instance`]. Each problem reads only its own knobs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub problem: Problem,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub rank: usize,
    pub jobs: usize,
    pub machines: usize,
    pub sites: usize,
    pub centers: usize,
    pub universe: usize,
    pub subsets: usize,
    pub objects: usize,
    /// Reject knobs that would exceed the default oracle caps.
    pub for_oracle: bool,
}

impl GenParams {
    pub fn new(problem: Problem, seed: u64) -> Self {
        GenParams {
            problem,
            seed,
            vertices: 8,
            edges: 8,
            rank: 2,
            jobs: 8,
            machines: 3,
            sites: 7,
            centers: 3,
            universe: 8,
            subsets: 7,
            objects: 8,
            for_oracle: false,
        }
    }
}

impl Serialize for Problem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

fn positive(knobs: &[(&str, usize)]) -> Result<()> {
    match knobs.iter().find(|(_, v)| *v == 0) {
        Some((name, _)) => Err(Error::BadParams(format!("{name} must be positive"))),
        None => Ok(()),
    }
}

fn within(name: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::BadParams(format!("{name} = {value} exceeds {limit}")))
    } else {
        Ok(())
    }
}

/// Side of the square grid the metric generator draws points from.
const GRID: i64 = 20;
/// Bin capacity used by the bin-packing generator.
const CAPACITY: i64 = 10;

pub fn gen_instance(p: &GenParams) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let caps = OracleLimits::default();
    match p.problem {
        Problem::VertexCover => {
            positive(&[("vertices", p.vertices), ("edges", p.edges), ("rank", p.rank)])?;
            within("rank", p.rank, p.vertices)?;
            if p.for_oracle {
                within("vertices", p.vertices, caps.cover_vertices)?;
            }
            let all: Vec<u64> = (1..=p.vertices as u64).collect();
            let edges: Vec<IdSet> = (0..p.edges)
                .map(|_| {
                    let size = rng.gen_range(1..=p.rank);
                    all.choose_multiple(&mut rng, size).copied().map(Id).collect()
                })
                .collect();
            Ok(Instance::Hypergraph(Hypergraph::new(p.rank, edges)?))
        }
        Problem::IndependentSet => {
            positive(&[("vertices", p.vertices), ("edges", p.edges)])?;
            if p.vertices < 2 {
                return Err(Error::BadParams("vertices must be at least 2".into()));
            }
            if p.for_oracle {
                within("vertices", p.vertices, caps.independent_vertices)?;
            }
            let n = p.vertices as u64;
            let max_edges = p.vertices * (p.vertices - 1) / 2;
            let mut edges: BTreeSet<IdSet> = BTreeSet::new();
            // pair off a shuffled vertex list so no vertex is isolated
            let mut order: Vec<u64> = (1..=n).collect();
            order.shuffle(&mut rng);
            for pair in order.chunks(2) {
                let other = if pair.len() == 2 {
                    pair[1]
                } else {
                    *order[..order.len() - 1].choose(&mut rng).expect("n ≥ 2")
                };
                edges.insert([Id(pair[0]), Id(other)].into_iter().collect());
            }
            while edges.len() < p.edges.min(max_edges) {
                let a = rng.gen_range(1..=n);
                let b = rng.gen_range(1..=n);
                if a != b {
                    edges.insert([Id(a), Id(b)].into_iter().collect());
                }
            }
            Ok(Instance::Graph(Graph::new(edges)?))
        }
        Problem::LoadBalancing => {
            positive(&[("jobs", p.jobs), ("machines", p.machines)])?;
            if p.for_oracle {
                within("jobs", p.jobs, caps.jobs)?;
                within("machines", p.machines, caps.machines)?;
            }
            let loads = (0..p.jobs).map(|_| rng.gen_range(1..=12)).collect();
            Ok(Instance::LoadBalancing(LoadInstance::new(p.machines, loads)?))
        }
        Problem::CenterSelection => {
            positive(&[("sites", p.sites), ("centers", p.centers)])?;
            within("centers", p.centers, p.sites)?;
            within("sites", p.sites, ((GRID + 1) * (GRID + 1)) as usize)?;
            if p.for_oracle {
                within("sites", p.sites, caps.sites)?;
            }
            let mut seen = BTreeSet::new();
            let mut points = Vec::with_capacity(p.sites);
            while points.len() < p.sites {
                let pt = (rng.gen_range(0..=GRID), rng.gen_range(0..=GRID));
                if seen.insert(pt) {
                    points.push(pt);
                }
            }
            let metric = MetricInstance::new(manhattan_matrix(&points))?;
            Ok(Instance::Metric { metric, k: p.centers })
        }
        Problem::SetCover => {
            positive(&[("universe", p.universe), ("subsets", p.subsets)])?;
            if p.for_oracle {
                // leave room for a patching subset
                within("subsets", p.subsets + 1, caps.subsets)?;
            }
            let universe: IdSet = (1..=p.universe as u64).map(Id).collect();
            let mut subsets: Vec<IdSet> = Vec::with_capacity(p.subsets + 1);
            let mut weights: Vec<Rat> = Vec::with_capacity(p.subsets + 1);
            for _ in 0..p.subsets {
                let density = rng.gen_range(0.2..0.6);
                let s: IdSet = universe.iter().copied().filter(|_| rng.gen_bool(density)).collect();
                // cheap per element when large, so greedy is tempted by big sets
                let w = Rat::new(rng.gen_range(1..=2 * s.len().max(1) as i64), rng.gen_range(1..=3));
                subsets.push(s);
                weights.push(w);
            }
            let covered: IdSet = subsets.iter().flatten().copied().collect();
            let missing: IdSet = universe.difference(&covered).copied().collect();
            if !missing.is_empty() {
                weights.push(Rat::from(missing.len()));
                subsets.push(missing);
            }
            Ok(Instance::SetCover(SetCoverInstance::new(universe, subsets, weights)?))
        }
        Problem::BinPacking => {
            positive(&[("objects", p.objects)])?;
            if p.for_oracle {
                within("objects", p.objects, caps.objects)?;
            }
            let weights: BTreeMap<Id, Rat> = (1..=p.objects as u64)
                .map(|u| {
                    // halves in (0, c], mostly within 2 of c/2
                    let halves = if rng.gen_bool(0.7) {
                        CAPACITY + rng.gen_range(-4..=4)
                    } else {
                        rng.gen_range(1..=2 * CAPACITY)
                    };
                    (Id(u), Rat::new(halves, 2))
                })
                .collect();
            Ok(Instance::BinPacking(BinPackInstance::new(Rat::from_int(CAPACITY), weights)?))
        }
    }
}
