//! One function per subcommand. Each returns the resolved configuration, the
//! result payload and the exit code; predicate commands exit with `2` when
//! the predicate is false.

use serde_json::{json, Value};
use snc_core::analysis::{
    check_consensus_cohesion, check_polarized_cohesion, check_stability, check_strict_cohesion,
    construct_consensus_equilibrium, field_box, is_indecomposable, CohesionReport, FieldBox,
    StabilityTier,
};
use snc_core::balance::find_balanced_partition;
use snc_core::dynamics::{simulate, SimulationConfig, Termination, TransitionGraph};
use snc_core::{caps, Action, GaugeVector, NodeSet, Profile, ProfileSet, Weight};

use crate::document::ResolvedGame;
use crate::report::{labels_json, link_json, mask_hex, per_node, profile_json};
use crate::CliError;

/// Outcome of a command before it is wrapped in a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub config: Value,
    pub result: Value,
    pub exit_code: i32,
    /// Replaces the JSON report when set (CSV trajectories).
    pub raw: Option<String>,
}

impl Outcome {
    fn new(config: Value, result: Value, ok: bool) -> Self {
        Outcome {
            config,
            result,
            exit_code: if ok { 0 } else { 2 },
            raw: None,
        }
    }
}

/// The game under analysis and the cap override, if any.
#[derive(Debug, Clone)]
pub struct Context {
    pub game: ResolvedGame,
    /// Where the document came from, echoed into the report.
    pub source: String,
    pub cap: Option<usize>,
}

impl Context {
    fn cap(&self, default: usize) -> usize {
        self.cap.unwrap_or(default)
    }

    fn base_config(&self) -> Value {
        json!({
            "game": self.source,
            "nodes": self.game.labels,
            "cap": self.cap,
        })
    }

    fn set_or_all(&self, name: Option<&str>) -> Result<NodeSet, CliError> {
        match name {
            Some(n) => self.game.set(n),
            None => Ok(NodeSet::full(self.game.node_count())),
        }
    }
}

fn extend(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

/// Chooses `τ` on `r` from a named profile, a uniform action, or neither.
#[derive(Debug, Clone, Default)]
pub struct TauChoice {
    pub profile: Option<String>,
    pub action: Option<Action>,
}

impl TauChoice {
    fn resolve(&self, g: &ResolvedGame, r: NodeSet) -> Result<Option<GaugeVector>, CliError> {
        match (&self.profile, self.action) {
            (Some(_), Some(_)) => Err(CliError::Usage("use either --tau or --a, not both".into())),
            (Some(name), None) => Ok(Some(g.gauge_on(name, r)?)),
            (None, Some(a)) => {
                let tau = GaugeVector::identity(r.len());
                Ok(Some(if a == Action::Plus {
                    tau
                } else {
                    tau.opposite()
                }))
            }
            (None, None) => Ok(None),
        }
    }

    fn echo(&self) -> Value {
        json!({"tau": self.profile, "a": self.action.map(Action::value)})
    }
}

fn gauge_json(g: &ResolvedGame, r: NodeSet, tau: &GaugeVector) -> Value {
    per_node(g, r, &tau.signs())
}

fn box_json(g: &ResolvedGame, r: NodeSet, b: &FieldBox) -> Value {
    json!({"minus": per_node(g, r, &b.minus), "plus": per_node(g, r, &b.plus)})
}

fn cohesion_json(g: &ResolvedGame, rep: &CohesionReport) -> Value {
    json!({
        "holds": rep.holds,
        "margins": per_node(g, rep.nodes, &rep.margins),
        "sign_violations": rep.sign_violations.iter().map(|&l| link_json(g, l)).collect::<Vec<_>>(),
    })
}

pub fn nash(ctx: &Context) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let cap = ctx.cap(caps::NASH);
    let set = g.game.enumerate_nash(cap)?;
    let equilibria: Vec<Value> = set
        .all
        .iter()
        .map(|&x| {
            let rep = g.game.strictness(x);
            extend(
                profile_json(g, x),
                json!({"strict": rep.strict, "indifferent": labels_json(g, rep.indifferent)}),
            )
        })
        .collect();
    let result = json!({
        "count": set.all.len(),
        "strict_count": set.strict.len(),
        "equilibria": equilibria,
    });
    Ok(Outcome::new(
        extend(ctx.base_config(), json!({"effective_cap": cap})),
        result,
        !set.all.is_empty(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct SimulateArgs {
    pub seed: u64,
    pub steps: u64,
    pub start: Option<String>,
    pub stop_at_nash: bool,
    pub format: TrajectoryFormat,
}

pub fn simulate_cmd(ctx: &Context, args: &SimulateArgs) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let n = g.node_count();
    let x0 = match &args.start {
        Some(name) => g.full_profile(name)?,
        None => Profile::consensus(n, Action::Minus),
    };
    let mut config = SimulationConfig::new(args.seed, args.steps);
    if args.stop_at_nash {
        let cap = ctx.cap(ProfileSet::MAX_NODES).min(ProfileSet::MAX_NODES);
        if n > cap {
            return Err(snc_core::Error::CapExceeded { n, cap }.into());
        }
        config.stop_set = Some(ProfileSet::from_predicate(n, |x| g.game.is_nash(x)));
    }
    let traj = simulate(&g.game, x0, &config)?;
    let echo = extend(
        ctx.base_config(),
        json!({
            "seed": args.seed,
            "steps": args.steps,
            "start": profile_json(g, x0),
            "stop_at_nash": args.stop_at_nash,
            "format": match args.format { TrajectoryFormat::Json => "json", TrajectoryFormat::Csv => "csv" },
        }),
    );
    let termination = match traj.termination {
        Termination::Absorbed => "absorbed",
        Termination::FixedPoint => "fixed_point",
        Termination::Budget => "budget",
    };
    let raw = match args.format {
        TrajectoryFormat::Json => None,
        TrajectoryFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["step", "deviator_label", "profile_bitmask_hex"])?;
            w.write_record(["0", "", &mask_hex(x0)])?;
            for e in &traj.events {
                w.write_record([
                    e.time.to_string(),
                    g.labels[e.deviator].clone(),
                    mask_hex(e.profile),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io {
                path: "<csv>".into(),
                source: e.into_error(),
            })?;
            Some(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
    };
    let result = json!({
        "termination": termination,
        "steps": traj.steps,
        "final": profile_json(g, traj.last()),
        "events": traj.events.iter().map(|e| json!({
            "step": e.time,
            "deviator": g.labels[e.deviator],
            "profile": mask_hex(e.profile),
        })).collect::<Vec<_>>(),
        "recent": traj.recent.as_ref().map(|r| r.iter().map(|&x| mask_hex(x)).collect::<Vec<_>>()),
    });
    let mut out = Outcome::new(echo, result, true);
    out.raw = raw;
    Ok(out)
}

pub fn balance(ctx: &Context, set: Option<&str>) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let nodes = ctx.set_or_all(set)?;
    let sub = g.game.network().subnetwork(nodes)?;
    let cert = find_balanced_partition(&sub.network);
    let lift = |local: NodeSet| {
        NodeSet::from_bits(local.iter().fold(0u64, |acc, k| acc | 1 << sub.original(k)))
    };
    let result = json!({
        "balanced": cert.balanced,
        "nodes": labels_json(g, nodes),
        "partition": cert.partition.map(|(v1, v2)| json!({
            "negative": labels_json(g, lift(v1)),
            "positive": labels_json(g, lift(v2)),
        })),
        "gauge": cert.gauge.as_ref().map(|t| gauge_json(g, nodes, t)),
        "witness": cert.witness.map(|w| w.links.iter()
            .map(|&(i, j)| link_json(g, (sub.original(i), sub.original(j))))
            .collect::<Vec<_>>()),
    });
    Ok(Outcome::new(
        extend(ctx.base_config(), json!({"set": set})),
        result,
        cert.balanced,
    ))
}

fn parse_weights(text: &str, flag: &str) -> Result<Vec<Weight>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<Weight>()
                .map_err(|e| CliError::Usage(format!("{flag}: {e}")))
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct IndecomposableArgs {
    pub set: Option<String>,
    pub tau: TauChoice,
    pub hplus: Option<String>,
    pub hminus: Option<String>,
}

pub fn indecomposable(ctx: &Context, args: &IndecomposableArgs) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let r = ctx.set_or_all(args.set.as_deref())?;
    let tau = args
        .tau
        .resolve(g, r)?
        .unwrap_or_else(|| GaugeVector::identity(r.len()));
    let fbox = match (&args.hplus, &args.hminus) {
        (Some(p), m) => {
            let plus = parse_weights(p, "--hplus")?;
            let minus = match m {
                Some(m) => parse_weights(m, "--hminus")?,
                None => plus.iter().map(|v| -v.clone()).collect(),
            };
            FieldBox::new(minus, plus)?
        }
        (None, Some(_)) => return Err(CliError::Usage("--hminus requires --hplus".into())),
        (None, None) => field_box(&g.game, r, &tau)?,
    };
    let network = g
        .game
        .network()
        .subnetwork(r)?
        .network
        .gauge_transform(&tau)?;
    let cap = ctx.cap(caps::INDECOMPOSABLE);
    let res = is_indecomposable(&network, &fbox, cap)?;
    let lift = |local: NodeSet| {
        NodeSet::from_bits(
            r.iter()
                .enumerate()
                .filter(|&(k, _)| local.contains(k))
                .fold(0u64, |acc, (_, i)| acc | 1 << i),
        )
    };
    let result = json!({
        "indecomposable": res.indecomposable,
        "witness": res.witness.map(|(p, m)| json!({
            "plus": labels_json(g, lift(p)),
            "minus": labels_json(g, lift(m)),
        })),
        "partitions_examined": res.partitions_examined,
        "box": box_json(g, r, &fbox),
        "gauge": gauge_json(g, r, &tau),
    });
    let config = extend(
        ctx.base_config(),
        extend(
            json!({"set": args.set, "hplus": args.hplus, "hminus": args.hminus, "effective_cap": cap}),
            args.tau.echo(),
        ),
    );
    Ok(Outcome::new(config, result, res.indecomposable))
}

#[derive(Debug, Clone, Default)]
pub struct CohesionArgs {
    pub set: String,
    pub tau: TauChoice,
    pub strict: bool,
}

pub fn cohesion(ctx: &Context, args: &CohesionArgs) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let r = g.set(&args.set)?;
    let (kind, rep) = if args.strict {
        ("strict", check_strict_cohesion(&g.game, r)?)
    } else if let Some(name) = &args.tau.profile {
        if args.tau.action.is_some() {
            return Err(CliError::Usage("use either --tau or --a, not both".into()));
        }
        (
            "polarized",
            check_polarized_cohesion(&g.game, r, &g.gauge_on(name, r)?)?,
        )
    } else {
        let a = args.tau.action.unwrap_or(Action::Plus);
        ("consensus", check_consensus_cohesion(&g.game, r, a)?)
    };
    let config = extend(
        ctx.base_config(),
        extend(
            json!({"set": args.set, "strict": args.strict}),
            args.tau.echo(),
        ),
    );
    let result = extend(json!({"kind": kind}), cohesion_json(g, &rep));
    Ok(Outcome::new(config, result, rep.holds))
}

pub fn existence(ctx: &Context, set: &str, tau: &TauChoice) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let r = g.set(set)?;
    let tau_v = tau.resolve(g, r)?;
    let cap = ctx.cap(caps::NASH);
    let cert = construct_consensus_equilibrium(&g.game, r, tau_v.as_ref(), cap)?;
    let result = json!({
        "equilibrium": cert.equilibrium.map(|x| profile_json(g, x)),
        "failure": cert.failure,
        "r_balanced": cert.r_balanced,
        "tau": cert.tau.as_ref().map(|t| gauge_json(g, r, t)),
        "tau_source": cert.tau_source,
        "cohesion": cert.cohesion.as_ref().map(|c| cohesion_json(g, c)),
        "s_balanced": cert.s_balanced,
        "s_undirected": cert.s_undirected,
        "s_method": cert.solution.map(|s| s.method),
    });
    let config = extend(
        ctx.base_config(),
        extend(json!({"set": set, "effective_cap": cap}), tau.echo()),
    );
    Ok(Outcome::new(config, result, cert.equilibrium.is_some()))
}

pub fn stability(
    ctx: &Context,
    set: &str,
    tau: &TauChoice,
    empirical: bool,
) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let r = g.set(set)?;
    let tau_v = tau.resolve(g, r)?;
    let cap = ctx.cap(caps::TRANSITION_GRAPH);
    let cert = check_stability(&g.game, r, tau_v.as_ref(), empirical, cap)?;
    let masks = |v: &[Profile]| v.iter().map(|&x| profile_json(g, x)).collect::<Vec<_>>();
    let result = json!({
        "tier": cert.tier,
        "tau": cert.tau.as_ref().map(|t| gauge_json(g, r, t)),
        "gauge_unsigned": cert.gauge_unsigned,
        "sign_violations": cert.sign_violations.iter().map(|&l| link_json(g, l)).collect::<Vec<_>>(),
        "strict_cohesion": cohesion_json(g, &cert.strict_cohesion),
        "field_box": cert.field_box.as_ref().map(|b| box_json(g, r, b)),
        "indecomposability": cert.indecomposability.as_ref().map(|i| json!({
            "indecomposable": i.indecomposable,
            "witness": i.witness.map(|(p, m)| json!({
                "plus": labels_json(g, NodeSet::from_bits(lift_bits(r, p))),
                "minus": labels_json(g, NodeSet::from_bits(lift_bits(r, m))),
            })),
            "partitions_examined": i.partitions_examined,
        })),
        "s_structure": cert.s_structure,
        "frozen_checks": cert.frozen_checks.iter().map(|c| json!({
            "frozen": profile_json(g, c.frozen),
            "equilibria": c.equilibria,
            "reachable": c.reachable,
            "stable_subset": c.stable_subset,
        })).collect::<Vec<_>>(),
        "empirical": cert.empirical.as_ref().map(|e| json!({
            "target": masks(&e.target),
            "target_reachable": e.target_reachable,
            "invariant_core": masks(&e.invariant_core),
            "stable_subset_found": e.stable_subset_found,
            "nash_set_stable": e.nash_set_stable,
            "other_equilibria": masks(&e.other_equilibria),
            "consistent": e.consistent,
        })),
    });
    let ok = cert.tier != StabilityTier::HypothesesFailed
        && cert.empirical.as_ref().is_none_or(|e| e.consistent);
    let config = extend(
        ctx.base_config(),
        extend(
            json!({"set": set, "empirical": empirical, "effective_cap": cap}),
            tau.echo(),
        ),
    );
    Ok(Outcome::new(config, result, ok))
}

fn lift_bits(r: NodeSet, local: NodeSet) -> u64 {
    r.iter()
        .enumerate()
        .filter(|&(k, _)| local.contains(k))
        .fold(0, |acc, (_, i)| acc | 1 << i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReachTarget {
    Nash,
    Strict,
    Consensus,
    Profile,
}

#[derive(Debug, Clone)]
pub struct ReachArgs {
    pub target: ReachTarget,
    pub profile: Option<String>,
    pub from: Option<String>,
}

pub fn reach(ctx: &Context, args: &ReachArgs) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let n = g.node_count();
    let cap = ctx.cap(caps::TRANSITION_GRAPH);
    let graph = TransitionGraph::build(&g.game, cap)?;
    let target = match args.target {
        ReachTarget::Nash => ProfileSet::from_predicate(n, |x| g.game.is_nash(x)),
        ReachTarget::Strict => graph.sinks(),
        ReachTarget::Consensus => ProfileSet::from_profiles(
            n,
            [
                Profile::consensus(n, Action::Plus),
                Profile::consensus(n, Action::Minus),
            ],
        ),
        ReachTarget::Profile => {
            let name = args
                .profile
                .as_deref()
                .ok_or_else(|| CliError::Usage("--target profile requires --profile".into()))?;
            ProfileSet::from_profiles(n, [g.full_profile(name)?])
        }
    };
    let reachable = graph.is_globally_br_reachable(&target)?;
    let violation = graph.invariance_violation(&target)?;
    let core = graph.max_invariant_subset(&target)?;
    let path = match &args.from {
        Some(name) => {
            let from = g.full_profile(name)?;
            Some(graph.shortest_path(from, &target)?.map(|p| json!({
                "length": p.len(),
                "profiles": p.profiles.iter().map(|&x| mask_hex(x)).collect::<Vec<_>>(),
                "deviators": p.deviators.iter().map(|&i| g.labels[i].clone()).collect::<Vec<_>>(),
            })))
        }
        None => None,
    };
    let result = json!({
        "target_size": target.len(),
        "target": target.iter().take(64).map(mask_hex).collect::<Vec<_>>(),
        "globally_reachable": reachable,
        "invariant": violation.is_none(),
        "violation": violation.map(|e| json!({
            "from": mask_hex(e.from),
            "deviator": g.labels[e.deviator],
            "to": mask_hex(e.to),
        })),
        "globally_stable": reachable && violation.is_none(),
        "max_invariant_subset_size": core.len(),
        "max_invariant_subset_reachable": graph.is_globally_br_reachable(&core)?,
        "path": path,
    });
    let config = extend(
        ctx.base_config(),
        json!({
            "target": format!("{:?}", args.target).to_lowercase(),
            "profile": args.profile,
            "from": args.from,
            "effective_cap": cap,
        }),
    );
    Ok(Outcome::new(config, result, reachable))
}

pub fn potential(ctx: &Context, profile: Option<&str>) -> Result<Outcome, CliError> {
    let g = &ctx.game;
    let n = g.node_count();
    let config = extend(ctx.base_config(), json!({"profile": profile}));
    if let Some(ob) = g.game.potential_obstruction() {
        let result = json!({
            "undirected": false,
            "obstruction": {
                "i": g.labels[ob.i],
                "j": g.labels[ob.j],
                "cycle": ob.cycle.iter().map(|&x| mask_hex(x)).collect::<Vec<_>>(),
                "cycle_sum": ob.cycle_sum,
            },
        });
        return Ok(Outcome::new(config, result, false));
    }
    let value = match profile {
        Some(name) => Some(g.game.potential(g.full_profile(name)?)?),
        None => None,
    };
    let cap = ctx.cap(caps::NASH);
    if n > cap {
        return Err(snc_core::Error::CapExceeded { n, cap }.into());
    }
    let mut best: Option<(Weight, Profile)> = None;
    for m in 0..1u64 << n {
        let x = Profile::from_bits(m);
        let phi = g.game.potential(x)?;
        if best.as_ref().is_none_or(|(b, _)| phi > *b) {
            best = Some((phi, x));
        }
    }
    let (max, argmax) = best.expect("at least one profile");
    let result = json!({
        "undirected": true,
        "value": value,
        "maximum": max,
        "argmax": profile_json(g, argmax),
        "argmax_is_nash": g.game.is_nash(argmax),
    });
    Ok(Outcome::new(config, result, true))
}
