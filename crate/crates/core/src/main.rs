use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use greedy_approx::bin_packing::{check_inv1 as bp_inv1, check_inv2 as bp_inv2, check_inv3, greedy_bp};
use greedy_approx::center_selection::{check_invar_cs, greedy_centers, radius};
use greedy_approx::independent_set::{check_inv_partition, check_inv_r, greedy_mis, greedy_mis_r};
use greedy_approx::iogen::{gen_instance, parse_instance, serialize_instance, GenParams, Instance, Problem};
use greedy_approx::load_balancing::{check_inv1, check_inv2, greedy_balance};
use greedy_approx::oracles::{schedule_witness, OracleLimits};
use greedy_approx::set_cover::{check_inv_sc, greedy_sc, harmonic};
use greedy_approx::trace::{replay_check, Report};
use greedy_approx::vertex_cover::{check_invar_vc, greedy_vc};
use greedy_approx::{Error, PickPolicy, Rat};

#[derive(Parser)]
#[command(name = "greedy-approx", version, about = "Greedy approximation algorithms with checked invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Run {
    #[arg(long)]
    problem: Problem,
    #[arg(long)]
    input: PathBuf,
    /// `min` or `random:SEED`
    #[arg(long, default_value = "min")]
    pick: PickPolicy,
    /// Schedule jobs in non-increasing order of length (load balancing).
    #[arg(long)]
    presort: bool,
    /// `r` also tracks the neighbourhood bound (independent set).
    #[arg(long)]
    variant: Option<Variant>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Variant {
    R,
}

#[derive(Args)]
struct Knobs {
    #[arg(long)]
    vertices: Option<usize>,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    machines: Option<usize>,
    #[arg(long)]
    sites: Option<usize>,
    #[arg(long)]
    centers: Option<usize>,
    #[arg(long)]
    universe: Option<usize>,
    #[arg(long)]
    subsets: Option<usize>,
    #[arg(long)]
    objects: Option<usize>,
}

impl Knobs {
    fn params(&self, problem: Problem, seed: u64) -> GenParams {
        let mut p = GenParams::new(problem, seed);
        let set = |slot: &mut usize, v: Option<usize>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut p.vertices, self.vertices);
        set(&mut p.edges, self.edges);
        set(&mut p.rank, self.rank);
        set(&mut p.jobs, self.jobs);
        set(&mut p.machines, self.machines);
        set(&mut p.sites, self.sites);
        set(&mut p.centers, self.centers);
        set(&mut p.universe, self.universe);
        set(&mut p.subsets, self.subsets);
        set(&mut p.objects, self.objects);
        p
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the greedy algorithm and print its solution.
    Solve {
        #[command(flatten)]
        run: Run,
        /// Include every loop snapshot.
        #[arg(long)]
        trace: bool,
    },
    /// Print an exact optimum and a witness.
    Oracle {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        input: PathBuf,
    },
    /// Replay the loop invariants over a greedy run.
    Check {
        #[command(flatten)]
        run: Run,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        knobs: Knobs,
        /// Refuse sizes beyond the oracle limits.
        #[arg(long)]
        for_oracle: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare greedy against the oracle on generated instances.
    Ratio {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "min")]
        pick: PickPolicy,
        #[arg(long)]
        presort: bool,
        #[arg(long)]
        variant: Option<Variant>,
        #[command(flatten)]
        knobs: Knobs,
    },
}

enum Failure {
    Usage(String),
    Violation(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(problem: Problem, path: &PathBuf) -> Result<Instance, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let inst = parse_instance(&bytes)?;
    if inst.problem() != problem {
        return Err(Failure::Usage(format!(
            "--problem {problem} does not match an instance for {}",
            inst.problem()
        )));
    }
    Ok(inst)
}

fn ids(s: &greedy_approx::IdSet) -> Vec<u64> {
    s.iter().map(|i| i.0).collect()
}

fn solve(inst: &Instance, run: &Run, with_trace: bool) -> Result<Value, Failure> {
    let mut out = match inst {
        Instance::Hypergraph(h) => {
            let r = greedy_vc(h, run.pick);
            let mut v = json!({ "cover": ids(&r.cover), "size": r.cover.len() });
            if with_trace {
                v["trace"] = serde_json::to_value(&r.trace).expect("serializable");
            }
            v
        }
        Instance::Graph(g) => {
            let r = if run.variant == Some(Variant::R) {
                greedy_mis_r(g, run.pick)?
            } else {
                greedy_mis(g, run.pick)
            };
            let mut v = json!({ "set": ids(&r.set), "size": r.set.len(), "delta": g.max_degree() });
            if let Some(k) = r.r {
                v["r"] = json!(k);
            }
            if with_trace {
                v["trace"] = serde_json::to_value(&r.trace).expect("serializable");
            }
            v
        }
        Instance::LoadBalancing(i) => {
            let r = greedy_balance(i, run.presort);
            let mut v = json!({
                "makespan": r.schedule.makespan(),
                "assignment": r.original_assignment(),
                "loads": r.schedule.loads,
                "order": r.order,
            });
            if with_trace {
                v["trace"] = serde_json::to_value(&r.trace).expect("serializable");
            }
            v
        }
        Instance::Metric { metric, k } => {
            let r = greedy_centers(metric, *k, run.pick)?;
            let mut v = json!({
                "centers": ids(&r.centers),
                "radius": radius(metric, &r.centers)?,
            });
            if with_trace {
                v["trace"] = serde_json::to_value(&r.trace).expect("serializable");
            }
            v
        }
        Instance::SetCover(i) => {
            let r = greedy_sc(i);
            let mut v = json!({
                "cover": r.cover,
                "weight": i.total_weight(&r.cover),
                "charge": r.charge,
            });
            if with_trace {
                v["trace"] = serde_json::to_value(&r.trace).expect("serializable");
            }
            v
        }
        Instance::BinPacking(i) => {
            let r = greedy_bp(i, run.pick);
            let packing: Vec<Vec<u64>> = r.packing.iter().map(ids).collect();
            let mut v = json!({ "packing": packing, "bins": r.packing.len() });
            if with_trace {
                v["trace"] = serde_json::to_value(&r.trace).expect("serializable");
            }
            v
        }
    };
    out["problem"] = json!(inst.problem().tag());
    Ok(out)
}

fn oracle(inst: &Instance) -> Result<Value, Failure> {
    let o = OracleLimits::default();
    Ok(match inst {
        Instance::Hypergraph(h) => {
            let (v, w) = o.opt_vertex_cover(h)?;
            json!({ "optimum": v, "witness": ids(&w) })
        }
        Instance::Graph(g) => {
            let (v, w) = o.opt_independent_set(g)?;
            json!({ "optimum": v, "witness": ids(&w) })
        }
        Instance::LoadBalancing(i) => {
            let (v, w) = o.opt_makespan(i, i.jobs())?;
            json!({ "optimum": v, "witness": schedule_witness(&w) })
        }
        Instance::Metric { metric, k } => {
            let (v, w) = o.opt_radius(metric, *k)?;
            json!({ "optimum": v, "witness": ids(&w) })
        }
        Instance::SetCover(i) => {
            let (v, w) = o.opt_set_cover(i)?;
            json!({ "optimum": v, "witness": w })
        }
        Instance::BinPacking(i) => {
            let (v, w) = o.opt_bins(i)?;
            let packing: Vec<Vec<u64>> = w.iter().map(ids).collect();
            json!({ "optimum": v, "witness": packing })
        }
    })
}

fn check(inst: &Instance, run: &Run) -> Result<Vec<(&'static str, Report)>, Failure> {
    let o = OracleLimits::default();
    Ok(match inst {
        Instance::Hypergraph(h) => {
            let r = greedy_vc(h, run.pick);
            vec![("invar", replay_check(&r.trace, |s| check_invar_vc(h, s)))]
        }
        Instance::Graph(g) => {
            if run.variant == Some(Variant::R) {
                let r = greedy_mis_r(g, run.pick)?;
                vec![("inv_r", replay_check(&r.trace, |s| check_inv_r(g, s)))]
            } else {
                let r = greedy_mis(g, run.pick);
                vec![("inv_partition", replay_check(&r.trace, |s| check_inv_partition(g, s)))]
            }
        }
        Instance::LoadBalancing(i) => {
            let r = greedy_balance(i, run.presort);
            let opt = o.prefix_optima(&r.instance)?;
            let report = if run.presort {
                ("inv2", replay_check(&r.trace, |s| check_inv2(&r.instance, s, opt[s.placed])))
            } else {
                ("inv1", replay_check(&r.trace, |s| check_inv1(&r.instance, s, opt[s.placed])))
            };
            vec![report]
        }
        Instance::Metric { metric, k } => {
            let r = greedy_centers(metric, *k, run.pick)?;
            let radii = o.candidate_radii(metric)?;
            vec![("invar", replay_check(&r.trace, |s| check_invar_cs(metric, *k, &s.centers, &radii)))]
        }
        Instance::SetCover(i) => {
            let r = greedy_sc(i);
            vec![("inv", replay_check(&r.trace, |s| check_inv_sc(i, s)))]
        }
        Instance::BinPacking(i) => {
            let r = greedy_bp(i, run.pick);
            vec![
                ("inv1", replay_check(&r.trace, |s| bp_inv1(i, s))),
                ("inv2", replay_check(&r.trace, |s| bp_inv2(i, s))),
                ("inv3", replay_check(&r.trace, |s| check_inv3(i, s))),
            ]
        }
    })
}

/// `a / b`, with `0 / 0` read as 1.
fn ratio(a: Rat, b: Rat) -> Option<Rat> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Some(Rat::one()),
        (false, true) => None,
        _ => Some(a / b),
    }
}

/// Greedy-to-optimum ratio and its guaranteed bound for one instance.
fn trial(inst: &Instance, pick: PickPolicy, presort: bool, variant: Option<Variant>) -> Result<(Option<Rat>, Rat), Failure> {
    let o = OracleLimits::default();
    Ok(match inst {
        Instance::Hypergraph(h) => {
            let greedy = greedy_vc(h, pick).cover.len();
            let (opt, _) = o.opt_vertex_cover(h)?;
            (ratio(greedy.into(), opt.into()), Rat::from(h.k()))
        }
        Instance::Graph(g) => {
            let r = if variant == Some(Variant::R) {
                greedy_mis_r(g, pick)?
            } else {
                greedy_mis(g, pick)
            };
            let (opt, _) = o.opt_independent_set(g)?;
            let bound = r.r.unwrap_or(g.max_degree());
            (ratio(opt.into(), r.set.len().into()), Rat::from(bound))
        }
        Instance::LoadBalancing(i) => {
            let greedy = greedy_balance(i, presort).schedule.makespan();
            let (opt, _) = o.opt_makespan(i, i.jobs())?;
            let bound = if presort { Rat::new(3, 2) } else { Rat::from_int(2) };
            (ratio(greedy.into(), opt.into()), bound)
        }
        Instance::Metric { metric, k } => {
            let greedy = radius(metric, &greedy_centers(metric, *k, pick)?.centers)?;
            let (opt, _) = o.opt_radius(metric, *k)?;
            (ratio(greedy, opt), Rat::from_int(2))
        }
        Instance::SetCover(i) => {
            let greedy = i.total_weight(&greedy_sc(i).cover);
            let (opt, _) = o.opt_set_cover(i)?;
            (ratio(greedy, opt), harmonic(i.max_subset_size()))
        }
        Instance::BinPacking(i) => {
            let greedy = greedy_bp(i, pick).packing.len();
            let (opt, _) = o.opt_bins(i)?;
            (ratio(greedy.into(), opt.into()), Rat::new(3, 2))
        }
    })
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { run, trace } => {
            let inst = load(run.problem, &run.input)?;
            print(&solve(&inst, &run, trace)?);
        }
        Command::Oracle { problem, input } => {
            let inst = load(problem, &input)?;
            print(&oracle(&inst)?);
        }
        Command::Check { run } => {
            let inst = load(run.problem, &run.input)?;
            let reports = check(&inst, &run)?;
            let ok = reports.iter().all(|(_, r)| r.ok);
            let body: serde_json::Map<String, Value> = reports
                .into_iter()
                .map(|(name, r)| (name.to_string(), serde_json::to_value(r).expect("serializable")))
                .collect();
            let out = json!({ "problem": run.problem.tag(), "ok": ok, "invariants": body });
            if !ok {
                return Err(Failure::Violation(out));
            }
            print(&out);
        }
        Command::Gen {
            problem,
            seed,
            knobs,
            for_oracle,
            output,
        } => {
            let mut params = knobs.params(problem, seed);
            params.for_oracle = for_oracle;
            let text = serialize_instance(&gen_instance(&params)?);
            match output {
                Some(path) => fs::write(&path, format!("{text}\n"))
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => println!("{text}"),
            }
        }
        Command::Ratio {
            problem,
            trials,
            seed,
            pick,
            presort,
            variant,
            knobs,
        } => {
            let mut worst: Option<Rat> = None;
            let mut violations = Vec::new();
            for t in 0..trials {
                let mut params = knobs.params(problem, seed.wrapping_add(t));
                params.for_oracle = true;
                let inst = gen_instance(&params)?;
                let (r, bound) = trial(&inst, pick, presort, variant)?;
                match r {
                    Some(r) => {
                        if r > bound {
                            violations.push(json!({ "seed": params.seed, "ratio": r, "bound": bound }));
                        }
                        if worst.as_ref().is_none_or(|w| r > *w) {
                            worst = Some(r);
                        }
                    }
                    None => violations.push(json!({ "seed": params.seed, "ratio": "unbounded" })),
                }
            }
            let out = json!({
                "problem": problem.tag(),
                "trials": trials,
                "worst_ratio": worst,
                "violations": violations,
            });
            if !violations.is_empty() {
                return Err(Failure::Violation(out));
            }
            print(&out);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(v)) => {
            print(&v);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
