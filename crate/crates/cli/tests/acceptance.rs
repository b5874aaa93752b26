//! One PASS/FAIL line per acceptance criterion, run against the bundled
//! fixtures.

use snc_cli::document::{parse_document, ResolvedGame};
use snc_cli::fixtures::fixture_text;
use snc_core::analysis::{
    check_stability, check_strict_cohesion, construct_consensus_equilibrium, field_box,
    is_indecomposable, FieldBox, StabilityTier,
};
use snc_core::balance::find_balanced_partition;
use snc_core::dynamics::TransitionGraph;
use snc_core::game::SncGame;
use snc_core::{caps, Action, GaugeVector, NodeSet, Profile, ProfileSet, Weight};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn load(name: &str) -> ResolvedGame {
    ResolvedGame::new(parse_document(&fixture_text(name).unwrap()).unwrap()).unwrap()
}

fn w(v: &[i64]) -> Vec<Weight> {
    v.iter().map(|&x| Weight::from(x)).collect()
}

fn nodes(g: &ResolvedGame, labels: &[&str]) -> NodeSet {
    let mut s = NodeSet::empty();
    for l in labels {
        s.insert(g.index_of(l).unwrap());
    }
    s
}

fn profile(signs: &[i64]) -> Profile {
    Profile::from_signs(signs).unwrap()
}

/// `u_i(x)` evaluated from the dense weight matrix.
fn utility(game: &SncGame, i: usize, x: Profile) -> Weight {
    let m = game.network().to_matrix();
    let mut inner = game.field()[i].clone();
    for (j, wij) in m[i].iter().enumerate() {
        inner += &(wij * &Weight::from(x.sign(j) as i64));
    }
    Weight::from(x.sign(i) as i64) * inner
}

fn nash_by_search(game: &SncGame) -> Vec<Profile> {
    let n = game.node_count();
    (0..1u64 << n)
        .map(Profile::from_bits)
        .filter(|&x| (0..n).all(|i| utility(game, i, x) >= utility(game, i, x.flipped(i))))
        .collect()
}

fn gap_is_zero(game: &SncGame, i: usize, x: Profile) -> bool {
    utility(game, i, x) == utility(game, i, x.flipped(i))
}

fn criterion_1() -> Check {
    let g = load("fig2a").game;
    let nash = g.enumerate_nash(caps::NASH).map_err(|e| e.to_string())?;
    ensure(nash.all.is_empty(), || format!("Nash set {:?}", nash.all))?;
    let tg = TransitionGraph::build(&g, caps::TRANSITION_GRAPH).unwrap();
    ensure(tg.sinks().is_empty(), || {
        "transition graph has a sink".into()
    })?;
    ensure(tg.edge_count() == 4, || {
        format!("{} edges", tg.edge_count())
    })?;
    for m in 0..4 {
        let x = Profile::from_bits(m);
        ensure(tg.successors(x).count() == 1, || {
            format!("{x:?} out-degree != 1")
        })?;
    }
    let start = ProfileSet::from_profiles(2, [Profile::from_bits(0)]);
    let orbit = tg.forward_closure(&start).unwrap();
    ensure(orbit.is_full(), || {
        "edges do not form a single 4-cycle".into()
    })
}

fn criterion_2() -> Check {
    let g = load("fig2b").game;
    let nash = g.enumerate_nash(caps::NASH).map_err(|e| e.to_string())?;
    ensure(nash.all.is_empty(), || format!("Nash set {:?}", nash.all))
}

fn criterion_3() -> Check {
    let minus = Profile::consensus(2, Action::Minus);
    let plus = Profile::consensus(2, Action::Plus);
    for (alpha, expected) in [
        ("-1", vec![minus]),
        ("0", vec![minus, plus]),
        ("1", vec![plus]),
    ] {
        let g = load(&format!("example4({alpha})")).game;
        let nash = g.enumerate_nash(2).unwrap().all;
        ensure(nash == expected, || {
            format!("alpha={alpha}: Nash set {nash:?}")
        })?;
        let tg = TransitionGraph::build(&g, 2).unwrap();
        let set = ProfileSet::from_profiles(2, nash.iter().copied());
        if alpha != "0" {
            ensure(tg.is_globally_br_stable(&set).unwrap(), || {
                format!("alpha={alpha}: singleton not globally BR-stable")
            })?;
        } else {
            ensure(tg.is_globally_br_reachable(&set).unwrap(), || {
                "N not reachable".into()
            })?;
            ensure(!tg.is_br_invariant(&set).unwrap(), || {
                "N unexpectedly invariant".into()
            })?;
            // The whole profile space is globally BR-stable by definition;
            // every other nonempty subset must fail.
            for bits in 1..16u64 {
                let candidate = ProfileSet::from_predicate(2, |x| bits >> x.bits() & 1 == 1);
                let stable = tg.is_globally_br_stable(&candidate).unwrap();
                ensure(stable == candidate.is_full(), || {
                    format!("subset {bits:#06b}: globally BR-stable = {stable}")
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let rg = load("fig3");
    let g = &rg.game;
    let xstar = profile(&[1, 1, 1, 1, 1, 1, 1, -1]);
    let mut expected = vec![xstar, xstar.negated(8)];
    expected.sort();
    let nash = g.enumerate_nash(caps::NASH).unwrap().all;
    ensure(nash == expected, || format!("Nash set {nash:?}"))?;
    ensure(nash == nash_by_search(g), || {
        "enumeration disagrees with search".into()
    })?;
    let tg = TransitionGraph::build(g, caps::TRANSITION_GRAPH).unwrap();
    let set = ProfileSet::from_profiles(8, nash.iter().copied());
    ensure(!tg.is_globally_br_reachable(&set).unwrap(), || {
        "N reachable".into()
    })?;
    let trap = ProfileSet::from_predicate(8, |y| {
        let s = |k: usize| y.sign(k - 1);
        s(1) == s(2) && s(2) == s(3) && s(3) == -s(5) && s(5) == s(6) && s(6) == s(7)
    });
    ensure(tg.is_br_invariant(&trap).unwrap(), || {
        "trap set not invariant".into()
    })
}

fn criterion_5() -> Check {
    let rg = load("fig1");
    let g = &rg.game;
    let r = rg.set("R").unwrap();
    let nash = nash_by_search(g);
    for a in [Action::Plus, Action::Minus] {
        let tau = if a == Action::Plus {
            GaugeVector::identity(r.len())
        } else {
            GaugeVector::identity(r.len()).opposite()
        };
        let cert = construct_consensus_equilibrium(g, r, Some(&tau), caps::NASH).unwrap();
        let x = cert
            .equilibrium
            .ok_or_else(|| format!("no equilibrium for a={a:?}: {:?}", cert.failure))?;
        ensure(x.is_consensus_on(r, a), || {
            format!("{x:?} not at consensus {a:?} on R")
        })?;
        ensure(nash.contains(&x), || {
            format!("{x:?} rejected by brute force")
        })?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let rg = load("fig4");
    let g = &rg.game;
    let r = rg.set("R").unwrap();
    let sub = g.network().subnetwork(r).unwrap();
    let cert = find_balanced_partition(&sub.network);
    let (v1, v2) = cert.partition.ok_or("G_R not balanced")?;
    let halves = [v1.bits(), v2.bits()];
    ensure(halves.contains(&0b1001) && halves.contains(&0b0110), || {
        format!("partition {v1:?}/{v2:?}")
    })?;

    let sigma = GaugeVector::from_signs(&[1, -1, -1, 1, 1, 1]).unwrap();
    let gauged = g.network().gauge_transform(&sigma).unwrap().to_matrix();
    let printed = [[0, 2, 0, 2], [2, 0, 1, 0], [1, 1, 0, 2], [2, 1, 0, 0]];
    for (i, row) in printed.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            ensure(gauged[i][j] == Weight::from(v), || {
                format!(
                    "gauged W[{}][{}] = {}, printed {v}",
                    i + 1,
                    j + 1,
                    gauged[i][j]
                )
            })?;
        }
    }

    let xstar = profile(&[1, -1, -1, 1, -1, 1]);
    ensure(g.is_nash(xstar), || "x* is not Nash".into())?;
    ensure(nash_by_search(g).contains(&xstar), || {
        "x* rejected by brute force".into()
    })?;

    let tau = GaugeVector::from_signs(&[1, -1, -1, 1]).unwrap();
    let st = check_stability(g, r, Some(&tau), true, caps::TRANSITION_GRAPH).unwrap();
    ensure(st.tier == StabilityTier::StableSubset, || {
        format!("tier {:?}", st.tier)
    })?;
    let emp = st.empirical.ok_or("no empirical outcome")?;
    ensure(emp.stable_subset_found && emp.consistent, || {
        format!("empirical {emp:?}")
    })
}

fn criterion_7() -> Check {
    let net = load("fig5").game.network().clone();
    let yes = is_indecomposable(&net, &FieldBox::symmetric(w(&[3, 2, 0, 2])).unwrap(), 4).unwrap();
    ensure(yes.indecomposable, || format!("(3,2,0,2) box: {yes:?}"))?;
    let no = is_indecomposable(&net, &FieldBox::symmetric(w(&[1, 1, 1, 1])).unwrap(), 4).unwrap();
    ensure(!no.indecomposable, || {
        "unit box reported indecomposable".into()
    })?;
    let (plus, minus) = no.witness.ok_or("no witness")?;
    ensure(plus.bits() == 0b1001 && minus.bits() == 0b0110, || {
        format!("witness {plus:?}/{minus:?}")
    })
}

fn criterion_8() -> Check {
    let rg = load("fig6");
    let g = &rg.game;
    let r = rg.set("R").unwrap();
    let s = rg.set("S").unwrap();
    let net = g.network();
    ensure(net.out_degrees(r, r) == w(&[4, 3, 3, 3]), || "w^R".into())?;
    ensure(net.out_degrees(r, s) == w(&[2, 2, 0, 1]), || "w^S".into())?;
    let coh = check_strict_cohesion(g, r).unwrap();
    ensure(coh.holds && coh.margins == w(&[2, 1, 3, 2]), || {
        format!("{coh:?}")
    })?;
    let sub = net.subnetwork(r).unwrap().network;
    let ind = is_indecomposable(&sub, &FieldBox::symmetric(w(&[2, 2, 0, 1])).unwrap(), 4).unwrap();
    ensure(ind.indecomposable, || format!("{ind:?}"))?;
    let st = check_stability(g, r, Some(&GaugeVector::identity(4)), false, 6).unwrap();
    ensure(st.tier == StabilityTier::Reachable, || {
        format!("tier {:?}", st.tier)
    })?;

    let nash = g.enumerate_nash(6).unwrap().all;
    ensure(nash == nash_by_search(g), || {
        "enumeration disagrees with search".into()
    })?;
    let tg = TransitionGraph::build(g, 6).unwrap();
    let consensus = ProfileSet::from_predicate(6, |x| {
        nash.contains(&x)
            && (x.is_consensus_on(r, Action::Plus) || x.is_consensus_on(r, Action::Minus))
    });
    ensure(tg.is_globally_br_reachable(&consensus).unwrap(), || {
        "consensus part not reachable".into()
    })?;
    let all = ProfileSet::from_profiles(6, nash.iter().copied());
    ensure(!tg.is_globally_br_stable(&all).unwrap(), || {
        "N globally BR-stable".into()
    })?;
    let edge = tg
        .invariance_violation(&all)
        .unwrap()
        .ok_or("no exiting edge")?;
    ensure(gap_is_zero(g, edge.deviator, edge.from), || {
        format!("exiting deviator {} is not indifferent", edge.deviator + 1)
    })
}

fn criterion_9() -> Check {
    let rg = load("fig7");
    let g = &rg.game;
    let r = rg.set("R").unwrap();
    let s = rg.set("S").unwrap();
    let tau = GaugeVector::identity(4);
    let fb = field_box(g, r, &tau).unwrap();
    ensure(
        fb.plus == w(&[3, 2, 0, 0]) && fb.minus == w(&[1, -2, 0, -2]),
        || format!("{fb:?}"),
    )?;
    let net = g.network();
    let inner: Vec<Weight> = net
        .out_degrees(r, r)
        .iter()
        .zip(r.iter())
        .map(|(d, i)| d - &g.field()[i].abs())
        .collect();
    ensure(inner == w(&[2, 3, 3, 2]), || {
        format!("w^R - |h| = {inner:?}")
    })?;
    ensure(net.out_degrees(r, s) == w(&[1, 2, 0, 1]), || "w^S".into())?;
    ensure(st_margins(g, r) == w(&[1, 1, 3, 1]), || {
        "strict margins".into()
    })?;
    let st = check_stability(g, r, Some(&tau), true, caps::TRANSITION_GRAPH).unwrap();
    ensure(st.strict_cohesion.holds, || "strict cohesion fails".into())?;
    ensure(st.tier == StabilityTier::StableSubset, || {
        format!("tier {:?}", st.tier)
    })?;
    let emp = st.empirical.ok_or("no empirical outcome")?;
    ensure(emp.stable_subset_found && emp.consistent, || {
        format!("empirical {emp:?}")
    })?;
    ensure(
        emp.invariant_core
            .iter()
            .all(|x| x.is_consensus_on(r, Action::Plus) || x.is_consensus_on(r, Action::Minus)),
        || "stable subset leaves consensus on R".into(),
    )
}

fn st_margins(g: &SncGame, r: NodeSet) -> Vec<Weight> {
    check_strict_cohesion(g, r).unwrap().margins
}

fn criterion_10() -> Check {
    let rg = load("fig8");
    let g = &rg.game;
    let r = rg.set("R").unwrap();
    let tau = GaugeVector::identity(4);
    let fb = field_box(g, r, &tau).unwrap();
    ensure(fb.plus == w(&[1, 1, 1, 1]), || format!("{fb:?}"))?;
    let sub = g.network().subnetwork(r).unwrap().network;
    let ind = is_indecomposable(&sub, &fb, 4).unwrap();
    ensure(!ind.indecomposable, || "indecomposable".into())?;
    ensure(
        ind.witness == Some((NodeSet::from_bits(0b1001), NodeSet::from_bits(0b0110))),
        || format!("witness {:?}", ind.witness),
    )?;
    let st = check_stability(g, r, Some(&tau), false, 8).unwrap();
    ensure(st.tier == StabilityTier::HypothesesFailed, || {
        format!("tier {:?}", st.tier)
    })?;
    let core = nodes(&rg, &["1", "2", "3", "4"]);
    let polar = profile(&[1, -1, -1, 1]);
    let found: Vec<Profile> = nash_by_search(g)
        .into_iter()
        .filter(|x| x.restrict(core) == polar.restrict(core))
        .collect();
    ensure(!found.is_empty(), || {
        "no Nash profile with x_R = (1,-1,-1,1)".into()
    })?;
    let xstar = rg.full_profile("xstar").unwrap();
    ensure(found.contains(&xstar), || {
        "x* missing from brute force".into()
    })?;
    let strict_by_search = (0..8).all(|i| utility(g, i, xstar) > utility(g, i, xstar.flipped(i)));
    let report = g.strictness(xstar);
    ensure(report.strict == strict_by_search, || {
        "strictness disagrees with search".into()
    })?;
    ensure(report.indifferent == nodes(&rg, &["2", "3"]), || {
        format!(
            "indifferent players {:?}",
            rg.set_labels(report.indifferent)
        )
    })
}

fn criterion_11() -> Check {
    let status = std::process::Command::new(env!("CARGO"))
        .args(["test", "-p", "snc-core", "--tests", "--quiet"])
        .env("CARGO_TARGET_DIR", env!("CARGO_TARGET_TMPDIR"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || {
        let tail = |bytes: &[u8]| {
            let text = String::from_utf8_lossy(bytes);
            let lines: Vec<_> = text.lines().collect();
            lines[lines.len().saturating_sub(20)..].join("\n")
        };
        format!("{}\n{}", tail(&status.stdout), tail(&status.stderr))
    })
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        (
            "discoordination has no equilibrium and a 4-cycle",
            criterion_1,
        ),
        (
            "directed anti-coordination ring has no equilibrium",
            criterion_2,
        ),
        ("two-player follower game across field values", criterion_3),
        (
            "two equilibria, unreachable, invariant trap set",
            criterion_4,
        ),
        ("consensus equilibria for both signs on R", criterion_5),
        ("balanced core, gauged matrix, stable subset", criterion_6),
        ("indecomposability against two field boxes", criterion_7),
        ("strict cohesion and reachability of consensus", criterion_8),
        (
            "field box, margins and stable subset with a field",
            criterion_9,
        ),
        (
            "decomposable core with a polarized equilibrium",
            criterion_10,
        ),
        ("core property suites", criterion_11),
    ];
    let mut failed = Vec::new();
    for (k, (what, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS criterion {}: {what}", k + 1),
            Err(why) => {
                println!("FAIL criterion {}: {what}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
