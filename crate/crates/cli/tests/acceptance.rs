//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 7, 8 and 9 take hours and only run with `--include-ignored` (or
//! `--ignored` for those alone). Positional arguments filter by name.
//! `SGMPCS_ACCEPTANCE_SCALE` multiplies their time limits for smoke runs; a
//! scaled run reports the factor and does not count as the real check.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sgmpcs_core::engine::{luby, search, Clock, FailLimitSchedule, LimitSequence, SearchParams, Traversal};
use sgmpcs_core::instance::{
    enumerate_optimal, generate_batch, generate_workflow, parse_instance, parse_orlib, to_orlib, BestKnown, Bounds,
    Orientation, WorkflowParams,
};
use sgmpcs_core::metrics::{hamming, mean_pairwise_diversity, mre, RunRecord};
use sgmpcs_core::sgmpcs::{BoundPolicy, Diversity, EliteSet, StartContext};
use sgmpcs_core::{run_baseline, run_sgmpcs, BaselineKind, EngineConfig, Instance, Solution, Time};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

struct Criterion {
    number: u32,
    name: &'static str,
    long: bool,
    check: fn() -> Verdict,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        name: "luby_exactness",
        long: false,
        check: luby_exactness,
    },
    Criterion {
        number: 2,
        name: "poly_schedule",
        long: false,
        check: poly_schedule,
    },
    Criterion {
        number: 3,
        name: "oracle_equivalence",
        long: false,
        check: oracle_equivalence,
    },
    Criterion {
        number: 4,
        name: "guided_reproduction",
        long: false,
        check: guided_reproduction,
    },
    Criterion {
        number: 5,
        name: "restart_equivalence",
        long: false,
        check: restart_equivalence,
    },
    Criterion {
        number: 6,
        name: "replacement_matrix",
        long: false,
        check: replacement_matrix,
    },
    Criterion {
        number: 7,
        name: "diversity_ordering",
        long: true,
        check: diversity_ordering,
    },
    Criterion {
        number: 8,
        name: "taillard_direction",
        long: true,
        check: taillard_direction,
    },
    Criterion {
        number: 9,
        name: "parameter_direction",
        long: true,
        check: parameter_direction,
    },
    Criterion {
        number: 10,
        name: "mre_exactness",
        long: false,
        check: mre_exactness,
    },
    Criterion {
        number: 11,
        name: "metric_properties",
        long: false,
        check: metric_properties,
    },
    Criterion {
        number: 12,
        name: "determinism",
        long: false,
        check: determinism,
    },
];

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let flag = |f: &str| args.iter().any(|a| a == f);
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    let selected = CRITERIA
        .iter()
        .filter(|c| filters.is_empty() || filters.iter().any(|f| c.name.contains(f.as_str())));
    if flag("--list") {
        for c in selected {
            println!("criterion_{:02}_{}: test", c.number, c.name);
        }
        return;
    }
    let (include_long, only_long) = (flag("--include-ignored") || flag("--ignored"), flag("--ignored"));

    let mut failed = 0;
    for c in selected {
        if only_long && !c.long {
            continue;
        }
        if c.long && !include_long {
            println!(
                "criterion {:>2} {}: SKIPPED (long; run with --include-ignored)",
                c.number, c.name
            );
            continue;
        }
        let start = Instant::now();
        let v = panic::catch_unwind(AssertUnwindSafe(c.check))
            .unwrap_or_else(|e| verdict(false, format!("panicked: {}", panic_message(&e))));
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {}: {status} ({}; {:.1} s)",
            c.number,
            c.name,
            v.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!v.pass);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default()
}

fn random_instance(rng: &mut ChaCha8Rng, jobs: usize, machines: usize) -> Instance {
    let routings: Vec<Vec<(usize, Time)>> = (0..jobs)
        .map(|_| {
            let mut order: Vec<usize> = (0..machines).collect();
            order.shuffle(rng);
            order.into_iter().map(|k| (k, rng.random_range(1..=20))).collect()
        })
        .collect();
    Instance::new("random", &routings).unwrap()
}

/// A schedule from a random operation sequence; always acyclic.
fn random_solution(rng: &mut ChaCha8Rng, instance: &Instance) -> Solution {
    let (n, m) = (instance.job_count(), instance.machine_count());
    let mut sequence: Vec<usize> = (0..n).flat_map(|j| std::iter::repeat_n(j, m)).collect();
    sequence.shuffle(rng);
    let mut seen = vec![0; n];
    let mut rank = vec![0; instance.activity_count()];
    for (step, &job) in sequence.iter().enumerate() {
        rank[instance.activity_id(job, seen[job])] = step;
        seen[job] += 1;
    }
    let orientations = instance
        .pairs()
        .iter()
        .map(|p| {
            if rank[p.first] < rank[p.second] {
                Orientation::FirstBeforeSecond
            } else {
                Orientation::SecondBeforeFirst
            }
        })
        .collect();
    Solution::new(instance, orientations).unwrap()
}

fn luby_exactness() -> Verdict {
    let expected = [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8];
    let start = Instant::now();
    let mut schedule = FailLimitSchedule::new(LimitSequence::Luby);
    let emitted: Vec<u64> = (0..15).map(|_| schedule.next_limit(false)).collect();
    let took = start.elapsed();
    let direct: Vec<u64> = (1..=15).map(luby).collect();
    verdict(
        emitted == expected && direct == expected && took.as_secs_f64() < 1e-3,
        format!("{emitted:?} in {} us", took.as_micros()),
    )
}

fn poly_schedule() -> Verdict {
    let mut schedule = FailLimitSchedule::new(LimitSequence::Poly);
    let limits = [
        schedule.next_limit(false),
        schedule.next_limit(false),
        schedule.next_limit(false),
        schedule.next_limit(true),
        schedule.next_limit(false),
    ];
    verdict(limits == [32, 64, 96, 32, 64], format!("{limits:?}"))
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let diversities = [Diversity::Low, Diversity::Medium, Diversity::High];
    let mut mismatches = Vec::new();
    for i in 0..50usize {
        let (n, m) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let inst = random_instance(&mut rng, n, m);
        let (optimum, _) = enumerate_optimal(&inst).unwrap();
        let generous = EngineConfig {
            time_limit: 30.0,
            seed: i as u64,
            ..EngineConfig::default()
        };
        let sgmpcs = EngineConfig {
            diversity: diversities[i % 3],
            sequence: [LimitSequence::Luby, LimitSequence::Poly][i / 3 % 2],
            bound_policy: [BoundPolicy::Global, BoundPolicy::Local][i / 6 % 2],
            traversal: [Traversal::Chron, Traversal::Lds][i / 12 % 2],
            elite_size: [1, 4, 8][i % 3],
            p: [0.0, 0.25, 0.5, 1.0][i % 4],
            ..generous.clone()
        };
        let results = [
            ("chron", run_baseline(&inst, BaselineKind::Chron, &generous).unwrap()),
            ("lds", run_baseline(&inst, BaselineKind::Lds, &generous).unwrap()),
            ("sgmpcs", run_sgmpcs(&inst, &sgmpcs).unwrap()),
        ];
        for (name, r) in results {
            if r.incumbent.best != optimum || !r.incumbent.proved {
                mismatches.push(format!("#{i} {name}: {} vs {optimum}", r.incumbent.best));
            }
        }
    }
    let took = start.elapsed().as_secs_f64();
    verdict(
        mismatches.is_empty() && took < 60.0,
        format!(
            "50 instances x 3 algorithms, {} mismatches {:?}",
            mismatches.len(),
            mismatches
        ),
    )
}

fn guided_reproduction() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut bad = Vec::new();
    for i in 0..20 {
        let (n, m) = (rng.random_range(2..=8), rng.random_range(2..=6));
        let inst = random_instance(&mut rng, n, m);
        let reference = random_solution(&mut rng, &inst);
        let params = SearchParams::new(inst.horizon())
            .reference(Some(&reference))
            .first_solution_only();
        let out = search(&inst, &params, &mut rng, &mut Clock::work(), &mut ());
        let found = out.best.as_ref().map(Solution::makespan);
        if out.fails != 0 || found.is_none_or(|c| c > reference.makespan()) {
            bad.push(format!(
                "#{i}: fails {} found {found:?} ref {}",
                out.fails,
                reference.makespan()
            ));
        }
    }
    verdict(bad.is_empty(), format!("20 fixtures, {} violations {bad:?}", bad.len()))
}

fn restart_equivalence() -> Verdict {
    let mut problems = Vec::new();
    for seed in 0..5 {
        let inst = generate_workflow(&WorkflowParams::new(8, 6), seed).unwrap();
        let config = EngineConfig {
            p: 1.0,
            time_limit: 1.0,
            seed,
            trace: true,
            ..EngineConfig::default()
        };
        let a = run_sgmpcs(&inst, &config).unwrap().record;
        let b = run_baseline(&inst, BaselineKind::Restart, &config).unwrap().record;
        let same = a.trace == b.trace
            && a.cost_trajectory == b.cost_trajectory
            && a.diversity_trajectory == b.diversity_trajectory
            && a.best_makespan == b.best_makespan
            && a.searches == b.searches;
        if a.guided_starts != 0 || !same || a.searches == 0 {
            problems.push(format!("seed {seed}: guided {} same {same}", a.guided_starts));
        }
    }
    verdict(problems.is_empty(), format!("5 seeds, {problems:?}"))
}

fn oracle_closest(members: &[Solution], candidate: &Solution) -> usize {
    let distance = |m: &Solution| {
        m.orientations()
            .iter()
            .zip(candidate.orientations())
            .filter(|(a, b)| a != b)
            .count()
    };
    let mut best = 0;
    for i in 1..members.len() {
        if distance(&members[i]) < distance(&members[best]) {
            best = i;
        }
    }
    best
}

fn replacement_matrix() -> Verdict {
    let inst = parse_orlib("3 2\n0 4 1 2\n1 3 0 5\n0 2 1 6").unwrap();
    let pairs = inst.pair_count();
    let all: Vec<Solution> = (0u32..1 << pairs)
        .filter_map(|mask| {
            let v = (0..pairs)
                .map(|b| {
                    if mask >> b & 1 == 0 {
                        Orientation::FirstBeforeSecond
                    } else {
                        Orientation::SecondBeforeFirst
                    }
                })
                .collect();
            Solution::new(&inst, v).ok()
        })
        .collect();

    // Members a < b < c by cost, and an improving candidate whose closest
    // member is not the worst so that low and high diversity disagree.
    let mut fixture = None;
    'search: for a in &all {
        for b in all.iter().filter(|b| b.makespan() > a.makespan()) {
            for c in all.iter().filter(|c| c.makespan() > b.makespan()) {
                let members = [a.clone(), b.clone(), c.clone()];
                for x in all.iter().filter(|x| x.makespan() < b.makespan()) {
                    if oracle_closest(&members, x) != 2 {
                        fixture = Some((members, x.clone()));
                        break 'search;
                    }
                }
            }
        }
    }
    let Some((members, improving)) = fixture else {
        return verdict(false, "no fixture with three distinct costs");
    };
    let tie_worst = members[2].clone();
    let between = members[1].clone();
    let closest = oracle_closest(&members, &improving);

    use Diversity::*;
    use StartContext::*;
    let cases: [(Diversity, StartContext, &Solution, Option<usize>); 9] = [
        (Low, Empty, &improving, Some(2)),
        (Low, Guided(1), &improving, Some(2)),
        (Low, Empty, &tie_worst, None),
        (Medium, Empty, &improving, Some(2)),
        (Medium, Guided(1), &improving, Some(1)),
        (Medium, Guided(0), &between, None),
        (High, Empty, &improving, Some(closest)),
        (High, Guided(1), &improving, Some(1)),
        (High, Empty, &tie_worst, None),
    ];
    let mut wrong = Vec::new();
    for (i, (policy, context, candidate, expected)) in cases.iter().enumerate() {
        let mut elite = EliteSet::from_members(members.to_vec(), *policy);
        let got = elite.replace((*candidate).clone(), *context);
        let mut after = members.to_vec();
        if let Some(slot) = expected {
            after[*slot] = (*candidate).clone();
        }
        if got != *expected || elite.members() != after.as_slice() {
            wrong.push(format!(
                "case {i}: {policy:?} {context:?} got {got:?} want {expected:?}"
            ));
        }
    }
    verdict(wrong.is_empty(), format!("9 cases, {} wrong {wrong:?}", wrong.len()))
}

fn mean_diversity(records: &[RunRecord]) -> f64 {
    let values: Vec<f64> = records
        .iter()
        .map(|r| r.mean_diversity_since(r.elapsed / 2.0).unwrap_or(0.0))
        .collect();
    values.iter().sum::<f64>() / values.len() as f64
}

fn diversity_ordering() -> Verdict {
    let instances = generate_batch(&WorkflowParams::new(10, 10), 7, 5).unwrap();
    let levels = [Diversity::Low, Diversity::Medium, Diversity::High];
    let jobs: Vec<(Diversity, &Instance, u64)> = levels
        .iter()
        .flat_map(|&d| instances.iter().flat_map(move |i| (0..5).map(move |s| (d, i, s))))
        .collect();
    let records: Vec<(Diversity, RunRecord)> = jobs
        .par_iter()
        .map(|&(diversity, inst, seed)| {
            let config = EngineConfig {
                elite_size: 8,
                p: 0.25,
                diversity,
                time_limit: long_limit(120.0),
                seed,
                ..EngineConfig::default()
            };
            (diversity, run_sgmpcs(inst, &config).unwrap().record)
        })
        .collect();
    let means: Vec<f64> = levels
        .iter()
        .map(|&d| {
            let group: Vec<RunRecord> = records.iter().filter(|r| r.0 == d).map(|r| r.1.clone()).collect();
            mean_diversity(&group)
        })
        .collect();
    verdict(
        means[0] < means[1] && means[1] < means[2],
        format!(
            "low {:.3} med {:.3} high {:.3}{}",
            means[0],
            means[1],
            means[2],
            scale_note()
        ),
    )
}

/// Time limit of a long criterion after applying the smoke-run scale.
fn long_limit(seconds: f64) -> f64 {
    seconds * scale()
}

fn scale() -> f64 {
    std::env::var("SGMPCS_ACCEPTANCE_SCALE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0)
}

fn scale_note() -> String {
    let s = scale();
    if s == 1.0 {
        String::new()
    } else {
        format!(", time scaled by {s}")
    }
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/taillard")
}

fn taillard_direction() -> Verdict {
    let dir = data_dir();
    let known = BestKnown::load(dir.join("bounds.csv")).unwrap();
    let instances: Vec<Instance> = (11..=20)
        .map(|k| {
            let text = fs::read_to_string(dir.join(format!("ta{k}.txt"))).unwrap();
            parse_instance(&text, None).unwrap().with_name(format!("ta{k}"))
        })
        .collect();
    let kinds: [Option<BaselineKind>; 4] = [
        None,
        Some(BaselineKind::Restart),
        Some(BaselineKind::Chron),
        Some(BaselineKind::Lds),
    ];
    let jobs: Vec<(usize, &Instance, u64)> = (0..kinds.len())
        .flat_map(|k| instances.iter().flat_map(move |i| (0..3).map(move |s| (k, i, s))))
        .collect();
    let records: Vec<(usize, RunRecord)> = jobs
        .par_iter()
        .map(|&(k, inst, seed)| {
            let config = EngineConfig {
                time_limit: long_limit(120.0),
                seed,
                known_optimum: known.optimum(inst.name()),
                ..EngineConfig::default()
            };
            let result = match kinds[k] {
                None => run_sgmpcs(inst, &config),
                Some(kind) => run_baseline(inst, kind, &config),
            };
            (k, result.unwrap().record)
        })
        .collect();
    let mres: Vec<f64> = (0..kinds.len())
        .map(|k| mre(records.iter().filter(|r| r.0 == k).map(|r| &r.1), &known).unwrap())
        .collect();
    verdict(
        mres[1..].iter().all(|&b| mres[0] < b),
        format!(
            "mre sgmpcs {:.4} restart {:.4} chron {:.4} lds {:.4}{}",
            mres[0],
            mres[1],
            mres[2],
            mres[3],
            scale_note()
        ),
    )
}

fn parameter_direction() -> Verdict {
    let instances = generate_batch(&WorkflowParams::new(10, 10), 9, 5).unwrap();
    let ps = [0.25, 1.0];
    let jobs: Vec<(usize, &Instance, u64)> = (0..ps.len())
        .flat_map(|k| instances.iter().flat_map(move |i| (0..5).map(move |s| (k, i, s))))
        .collect();
    let records: Vec<(usize, RunRecord)> = jobs
        .par_iter()
        .map(|&(k, inst, seed)| {
            let config = EngineConfig {
                p: ps[k],
                time_limit: long_limit(60.0),
                seed,
                ..EngineConfig::default()
            };
            (k, run_sgmpcs(inst, &config).unwrap().record)
        })
        .collect();
    // Best known is the best cost observed by either setting.
    let mut known = BestKnown::default();
    for inst in &instances {
        let best = records
            .iter()
            .filter(|r| r.1.instance == inst.name())
            .map(|r| r.1.best_makespan)
            .min()
            .unwrap();
        known
            .insert(
                inst.name(),
                Bounds {
                    lower: best,
                    upper: best,
                    optimal: false,
                },
            )
            .unwrap();
    }
    let mres: Vec<f64> = (0..ps.len())
        .map(|k| mre(records.iter().filter(|r| r.0 == k).map(|r| &r.1), &known).unwrap())
        .collect();
    verdict(
        mres[0] < mres[1] && mres[0] * 1.5 <= mres[1],
        format!("mre p=0.25 {:.5} p=1.0 {:.5}{}", mres[0], mres[1], scale_note()),
    )
}

fn mre_exactness() -> Verdict {
    let mut known = BestKnown::default();
    known
        .insert(
            "x",
            Bounds {
                lower: 100,
                upper: 100,
                optimal: true,
            },
        )
        .unwrap();
    let records: Vec<RunRecord> = [110, 100]
        .iter()
        .map(|&c| {
            let mut r = RunRecord::new("sgmpcs", "x", 0);
            r.best_makespan = c;
            r
        })
        .collect();
    let value = mre(&records, &known).unwrap();
    verdict((value - 0.05).abs() <= 1e-12, format!("mre {value}"))
}

fn metric_properties() -> Verdict {
    let inst = generate_workflow(&WorkflowParams::new(6, 4), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut violations = 0;
    for _ in 0..10_000 {
        let a = random_solution(&mut rng, &inst);
        let b = random_solution(&mut rng, &inst);
        let c = random_solution(&mut rng, &inst);
        let d = |x: &Solution, y: &Solution| hamming(x, y).unwrap();
        let ok = d(&a, &a) == 0
            && d(&a, &b) == d(&b, &a)
            && (d(&a, &b) == 0) == (a.orientations() == b.orientations())
            && d(&a, &c) <= d(&a, &b) + d(&b, &c);
        violations += usize::from(!ok);
    }
    let single = mean_pairwise_diversity(&[random_solution(&mut rng, &inst)]);
    verdict(
        violations == 0 && single == 0.0,
        format!("10000 triples, {violations} violations, singleton diversity {single}"),
    )
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate_workflow(&WorkflowParams::new(10, 10), 5).unwrap();
    let path = dir.path().join("wf.jss");
    fs::write(&path, to_orlib(&inst)).unwrap();
    let mut compared = 0;
    for algorithm in ["sgmpcs", "chron", "lds", "restart"] {
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            let out = dir.path().join(format!("{algorithm}_{attempt}"));
            let run = Command::new(env!("CARGO_BIN_EXE_sgmpcs"))
                .args([
                    "solve",
                    "--algorithm",
                    algorithm,
                    "--time-limit",
                    "1",
                    "--runs",
                    "2",
                    "--seed",
                    "3",
                    "--trace",
                ])
                .arg("--instance")
                .arg(&path)
                .arg("--output")
                .arg(&out)
                .env_remove("SGMPCS_SEED")
                .output()
                .unwrap();
            assert!(run.status.success());
            let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(&out)
                .unwrap()
                .map(|e| {
                    let p = e.unwrap().path();
                    (
                        p.file_name().unwrap().to_string_lossy().into_owned(),
                        fs::read(&p).unwrap(),
                    )
                })
                .collect();
            files.sort();
            outputs.push(files);
        }
        if outputs[0] != outputs[1] || outputs[0].len() != 2 {
            return verdict(false, format!("{algorithm} records differ"));
        }
        compared += outputs[0].len();
    }
    verdict(true, format!("{compared} record pairs byte-identical"))
}
